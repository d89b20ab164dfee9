//! Seeded constructions of test graphs and update streams.

mod families;
mod plr;
mod stream;

pub use families::{gen_subdivided_clique, gen_subdivided_hypercube};
pub use plr::{gen_plr, plr_degree_counts, PlrError, PlrParams};
pub use stream::{gen_op_stream, OpMix, StreamError};
