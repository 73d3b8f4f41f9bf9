//! Graph corpora for the equivalence sweeps: all connected graphs on few
//! vertices up to isomorphism, and seeded random graphs.

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bitset::ElementSet;

use super::Graph;

/// Adjacency rows of a graph on at most 8 vertices.
type Rows = Vec<u8>;

fn code_of(rows: &[u8], perm: &[usize]) -> u64 {
    let n = perm.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            code <<= 1;
            if (rows[perm[i]] >> perm[j]) & 1 == 1 {
                code |= 1;
            }
        }
    }
    code
}

/// Canonical code: the largest adjacency code over vertex orders that
/// list vertices by decreasing degree.
fn canonical_code(rows: &[u8]) -> u64 {
    let n = rows.len();
    let mut verts: Vec<usize> = (0..n).collect();
    verts.sort_by_key(|&v| std::cmp::Reverse(rows[v].count_ones()));
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for k in 1..=n {
        if k == n || rows[verts[k]].count_ones() != rows[verts[start]].count_ones() {
            blocks.push((start, k));
            start = k;
        }
    }
    let mut best = 0u64;
    permute_blocks(rows, &mut verts, &blocks, 0, &mut best);
    best
}

fn permute_blocks(rows: &[u8], perm: &mut Vec<usize>, blocks: &[(usize, usize)], b: usize, best: &mut u64) {
    if b == blocks.len() {
        *best = (*best).max(code_of(rows, perm));
        return;
    }
    let (lo, hi) = blocks[b];
    heap_permute(rows, perm, blocks, b, lo, hi - lo, best);
}

fn heap_permute(
    rows: &[u8],
    perm: &mut Vec<usize>,
    blocks: &[(usize, usize)],
    b: usize,
    lo: usize,
    k: usize,
    best: &mut u64,
) {
    if k <= 1 {
        permute_blocks(rows, perm, blocks, b + 1, best);
        return;
    }
    heap_permute(rows, perm, blocks, b, lo, k - 1, best);
    for i in 0..k - 1 {
        if k % 2 == 0 {
            perm.swap(lo + i, lo + k - 1);
        } else {
            perm.swap(lo, lo + k - 1);
        }
        heap_permute(rows, perm, blocks, b, lo, k - 1, best);
    }
}

fn to_graph(rows: &[u8]) -> Graph {
    let n = rows.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if (rows[u] >> v) & 1 == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("corpus graph")
}

/// All graphs on `n` vertices up to isomorphism (`n <= 8`), each as
/// adjacency rows.
fn all_graphs(n: usize) -> Vec<Rows> {
    assert!(n <= 8, "exhaustive corpus is limited to 8 vertices");
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut seen: HashSet<u64> = HashSet::new();
    for base in all_graphs(n - 1) {
        for mask in 0u16..(1 << (n - 1)) {
            let mut rows = base.clone();
            rows.push(mask as u8);
            for (v, row) in rows.iter_mut().enumerate().take(n - 1) {
                if (mask >> v) & 1 == 1 {
                    *row |= 1 << (n - 1);
                }
            }
            if seen.insert(canonical_code(&rows)) {
                out.push(rows);
            }
        }
    }
    out
}

/// All connected graphs with `1..=max_n` vertices, up to isomorphism.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(all_graphs(n).iter().map(|r| to_graph(r)).filter(|g| g.is_connected()));
    }
    out
}

/// `count` connected random graphs on 8 or 9 vertices. Half are
/// Erdős–Rényi graphs with edge density in `[0.25, 0.6]`; the other half
/// are grown by attaching each new vertex to a random clique, so they are
/// chordal, plus an occasional extra edge.
pub fn random_graphs(count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(8..=9);
        let g = if out.len() % 2 == 0 {
            let p: f64 = rng.gen_range(0.25..0.6);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(n, &edges).unwrap()
        } else {
            let mut g = Graph::new(1, &[]).unwrap();
            let mut edges: Vec<(usize, usize)> = Vec::new();
            for v in 1..n {
                let anchor = rng.gen_range(0..v);
                let mut clique = ElementSet::singleton(anchor);
                for u in g.neighbors(anchor).iter() {
                    if rng.gen_bool(0.6) && clique.is_subset(g.neighbors(u)) {
                        clique.insert(u);
                    }
                }
                edges.extend(clique.iter().map(|u| (u, v)));
                g = Graph::new(v + 1, &edges).unwrap();
            }
            if rng.gen_bool(0.3) {
                let u = rng.gen_range(0..n);
                let v = rng.gen_range(0..n);
                if u != v {
                    edges.push((u, v));
                }
            }
            Graph::new(n, &edges).unwrap()
        };
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_counts_match_known_sequence() {
        // numbers of graphs on n unlabeled vertices: 1, 2, 4, 11, 34, 156
        let counts: Vec<usize> = (1..=6).map(|n| all_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
        // connected: 1, 1, 2, 6, 21, 112
        let connected: Vec<usize> = (1..=6)
            .map(|n| all_graphs(n).iter().filter(|r| to_graph(r).is_connected()).count())
            .collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn random_corpus_is_deterministic() {
        let a = random_graphs(20, 7);
        let b = random_graphs(20, 7);
        assert_eq!(a, b);
        assert!(a.iter().all(|g| g.is_connected() && (8..=9).contains(&g.vertex_count())));
    }
}
