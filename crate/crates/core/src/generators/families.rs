use crate::graph::{DynamicGraph, VertexId};

/// K'_n: the complete graph on `n` vertices with every edge subdivided.
///
/// Originals are `0..n`; the vertex subdividing `{i, j}` (i < j) gets the
/// next free id in lexicographic pair order. Returns the graph and the
/// originals, which form an independent set.
pub fn gen_subdivided_clique(n: usize) -> (DynamicGraph, Vec<VertexId>) {
    assert!(n >= 3, "K'_n needs n >= 3, got {n}");
    let n = n as VertexId;
    let mut g = DynamicGraph::edgeless(0..n);
    let mut next = n;
    for i in 0..n {
        for j in i + 1..n {
            g.insert_edge(i, next).expect("fresh subdivision vertex");
            g.insert_edge(j, next).expect("fresh subdivision vertex");
            next += 1;
        }
    }
    (g, (0..n).collect())
}

/// Q'_n: the `n`-dimensional hypercube with every edge subdivided.
///
/// Originals are `0..2^n`, adjacent in Q_n when their ids differ in one
/// bit; subdivision vertices are numbered from `2^n` in order of
/// `(u, bit)` with `u < u ^ (1 << bit)`.
pub fn gen_subdivided_hypercube(n: u32) -> (DynamicGraph, Vec<VertexId>) {
    assert!((2..=20).contains(&n), "Q'_n needs 2 <= n <= 20, got {n}");
    let size: VertexId = 1 << n;
    let mut g = DynamicGraph::edgeless(0..size);
    let mut next = size;
    for u in 0..size {
        for bit in 0..n {
            let v = u ^ (1 << bit);
            if u < v {
                g.insert_edge(u, next).expect("fresh subdivision vertex");
                g.insert_edge(v, next).expect("fresh subdivision vertex");
                next += 1;
            }
        }
    }
    (g, (0..size).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_force_alpha;

    #[test]
    fn clique_sizes() {
        let (g, seed) = gen_subdivided_clique(4);
        assert_eq!((g.num_vertices(), g.num_edges(), seed.len()), (10, 12, 4));
        let (g, _) = gen_subdivided_clique(3);
        assert_eq!((g.num_vertices(), g.num_edges()), (6, 6));
        assert!(g.vertices().all(|v| g.degree(v) == 2));
    }

    #[test]
    fn clique_alpha() {
        let (g, seed) = gen_subdivided_clique(5);
        assert!(g.is_independent(&seed));
        assert_eq!(brute_force_alpha(&g, 64).unwrap().0, 10);
    }

    #[test]
    fn hypercube_sizes() {
        let (g, seed) = gen_subdivided_hypercube(4);
        assert_eq!((g.num_vertices(), g.num_edges()), (48, 64));
        assert!(g.is_independent(&seed));
        assert_eq!(g.max_degree(), 4);
    }

    #[test]
    fn hypercube_alpha() {
        let (g, _) = gen_subdivided_hypercube(3);
        assert_eq!(brute_force_alpha(&g, 64).unwrap().0, 12);
    }
}
