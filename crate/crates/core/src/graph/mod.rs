//! Simple graphs on at most 64 vertices, chordality and strong chordality,
//! trampolines, MAT-labelings and strong edge elimination orders.

mod chordal;
pub mod corpus;
mod mat;
mod strong;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};

pub use chordal::{is_chordal, is_perfect_elimination_order, Chordality};
pub use mat::{
    mat_labeling, strong_edge_elimination_order, verify_mat_labeling, verify_seeo, MatLabeling,
    MatViolation, SeeoCheck,
};
pub use strong::{
    find_induced_trampoline, is_simple_vertex, is_strong_elimination_order, is_strongly_chordal,
    simple_vertices, strong_elimination_order,
    TrampolineSearch, TRAMPOLINE_SEARCH_CAP,
};

pub const MAX_VERTICES: usize = 64;

/// A simple undirected graph. Edge ids are positions in the edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
}

/// JSON form `{"vertices": n, "edges": [[u, v], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    /// Builds a graph, normalizing each edge to `(min, max)` and dropping
    /// repeated edges. Loops are rejected.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if vertex_count > MAX_VERTICES {
            return Err(Error::SizeLimit(format!(
                "{vertex_count} vertices exceeds {MAX_VERTICES}"
            )));
        }
        let mut g = Graph {
            vertex_count,
            edges: Vec::with_capacity(edges.len()),
            adj: vec![0; vertex_count],
        };
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::BadArgument(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::BadArgument(format!("loop at vertex {u}")));
            }
            if g.adjacent(u, v) {
                continue;
            }
            g.edges.push((u.min(v), u.max(v)));
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        let edges: Vec<(usize, usize)> = json.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::new(json.vertices, &edges)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.vertex_count,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::new(n, &edges).expect("complete graph")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::new(n, &edges).expect("path graph")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Self::new(n, &edges).expect("cycle graph")
    }

    /// The `n`-trampoline: clique `v_1..v_n` (ids `0..n`) and `w_i` (id
    /// `n + i - 1`) adjacent to `v_i` and `v_{i+1}`, indices mod `n`.
    ///
    /// Edges: clique edges in lexicographic order, then `w_i v_i`, `w_i v_{i+1}`.
    pub fn trampoline(n: usize) -> Result<Self> {
        Self::trampoline_impl(n, false)
    }

    /// The trampoline with `w_n` removed.
    pub fn broken_trampoline(n: usize) -> Result<Self> {
        Self::trampoline_impl(n, true)
    }

    fn trampoline_impl(n: usize, broken: bool) -> Result<Self> {
        if n < 3 {
            return Err(Error::BadArgument(format!("trampolines need n >= 3, got {n}")));
        }
        let ws = if broken { n - 1 } else { n };
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        for i in 0..ws {
            edges.push((n + i, i));
            edges.push((n + i, (i + 1) % n));
        }
        Self::new(n + ws, &edges)
    }

    /// Four-cycle 1-2-3-4 with chord 1-3, as vertices 0..3.
    /// Edges a..e: 12, 23, 13, 14, 43.
    pub fn example21() -> Self {
        Self::new(4, &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 2)]).expect("example graph")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.iter().position(|&e| e == key)
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        (self.adj[u] >> v) & 1 == 1
    }

    /// Open neighbourhood as a vertex bitmask.
    #[inline]
    pub fn neighbors(&self, v: usize) -> ElementSet {
        ElementSet(self.adj[v])
    }

    /// Closed neighbourhood `N[v]`.
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> ElementSet {
        ElementSet(self.adj[v]).with(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn is_clique(&self, set: ElementSet) -> bool {
        set.iter().all(|v| set.without(v).is_subset(self.neighbors(v)))
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut seen = ElementSet::singleton(0);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = ElementSet::EMPTY;
            for v in frontier.iter() {
                next = next.union(self.neighbors(v));
            }
            frontier = next.difference(seen);
            seen = seen.union(next);
        }
        seen.len() == self.vertex_count
    }

    /// Induced subgraph on `keep`, relabelled in increasing vertex order.
    /// Edges keep their relative order.
    pub fn induced(&self, keep: ElementSet) -> Graph {
        let verts = keep.to_vec();
        let idx = |v: usize| verts.binary_search(&v).unwrap();
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|(u, v)| keep.contains(*u) && keep.contains(*v))
            .map(|&(u, v)| (idx(u), idx(v)))
            .collect();
        Graph::new(verts.len(), &edges).expect("induced subgraph")
    }

    /// Edge-id bitmask of the edges with both ends in `verts`.
    pub fn edges_within(&self, verts: ElementSet) -> ElementSet {
        ElementSet::from_elements(
            self.edges
                .iter()
                .enumerate()
                .filter(|(_, (u, v))| verts.contains(*u) && verts.contains(*v))
                .map(|(k, _)| k),
        )
    }

    /// Edge sets of all cycles (the circuits of the cycle matroid).
    pub fn cycle_edge_sets(&self) -> Vec<ElementSet> {
        let n = self.vertex_count;
        let mut eid = vec![usize::MAX; n * n];
        for (k, &(u, v)) in self.edges.iter().enumerate() {
            eid[u * n + v] = k;
            eid[v * n + u] = k;
        }
        let mut found: HashSet<u64> = HashSet::new();
        // Each cycle is rooted at its smallest vertex and walked through
        // larger vertices only; both orientations are found, hence the set.
        for s in 0..n {
            // (current vertex, visited vertices, edge mask)
            let mut stack: Vec<(usize, u64, u64)> = Vec::new();
            let allowed = !((1u64 << s) | ((1u64 << s) - 1));
            let start_visited = 1u64 << s;
            for v in ElementSet(self.adj[s] & allowed).iter() {
                let e = 1u64 << eid[s * n + v];
                stack.push((v, start_visited | (1 << v), e));
            }
            while let Some((v, visited, emask)) = stack.pop() {
                if visited.count_ones() >= 3 && (self.adj[v] >> s) & 1 == 1 {
                    found.insert(emask | (1u64 << eid[v * n + s]));
                }
                for w in ElementSet(self.adj[v] & allowed & !visited).iter() {
                    stack.push((w, visited | (1 << w), emask | (1u64 << eid[v * n + w])));
                }
            }
        }
        let mut out: Vec<ElementSet> = found.into_iter().map(ElementSet).collect();
        out.sort_by_key(|s| (s.len(), s.bits()));
        out
    }

    /// Vertices touched by an edge set.
    pub fn vertices_of(&self, edge_set: ElementSet) -> ElementSet {
        let mut vs = ElementSet::EMPTY;
        for k in edge_set.iter() {
            let (u, v) = self.edges[k];
            vs.insert(u);
            vs.insert(v);
        }
        vs
    }

    /// Ids of the three edges of each triangle, triangles in lex vertex order.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for (k, &(u, v)) in self.edges.iter().enumerate() {
            let common = self.adj[u] & self.adj[v] & !((1u64 << (v + 1)) - 1);
            for w in ElementSet(common).iter() {
                let a = self.edge_id(u, w).unwrap();
                let b = self.edge_id(v, w).unwrap();
                out.push([k, a, b]);
            }
        }
        out
    }

    /// Size of a largest clique.
    pub fn clique_number(&self) -> usize {
        self.maximal_cliques().iter().map(|c| c.len()).max().unwrap_or(0)
    }

    /// All maximal cliques (Bron-Kerbosch with pivoting).
    pub fn maximal_cliques(&self) -> Vec<ElementSet> {
        let mut out = Vec::new();
        self.bron_kerbosch(0, ElementSet::full(self.vertex_count).bits(), 0, &mut out);
        out.sort_by_key(|s| s.bits());
        out
    }

    fn bron_kerbosch(&self, r: u64, p: u64, x: u64, out: &mut Vec<ElementSet>) {
        if p == 0 {
            if x == 0 && r != 0 {
                out.push(ElementSet(r));
            }
            return;
        }
        let pivot = ElementSet(p | x)
            .iter()
            .max_by_key(|&u| (p & self.adj[u]).count_ones())
            .unwrap();
        let (mut p, mut x) = (p, x);
        for v in ElementSet(p & !self.adj[pivot]).iter() {
            self.bron_kerbosch(r | (1 << v), p & self.adj[v], x & self.adj[v], out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trampoline_sizes() {
        let t4 = Graph::trampoline(4).unwrap();
        assert_eq!((t4.vertex_count(), t4.edge_count()), (8, 14));
        let b3 = Graph::broken_trampoline(3).unwrap();
        assert_eq!((b3.vertex_count(), b3.edge_count()), (5, 7));
        assert_eq!(Graph::trampoline(3).unwrap().edge_count(), 9);
        assert!(Graph::trampoline(2).is_err());
    }

    #[test]
    fn example21_cycles() {
        let g = Graph::example21();
        let cycles = g.cycle_edge_sets();
        let set = |v: &[usize]| ElementSet::from_elements(v.iter().copied());
        assert_eq!(cycles, vec![set(&[0, 1, 2]), set(&[2, 3, 4]), set(&[0, 1, 3, 4])]);
    }

    #[test]
    fn cycle_counts_of_complete_graphs() {
        // sum over k >= 3 of C(n,k) (k-1)!/2
        assert_eq!(Graph::complete(4).cycle_edge_sets().len(), 7);
        assert_eq!(Graph::complete(5).cycle_edge_sets().len(), 37);
        assert_eq!(Graph::complete(6).cycle_edge_sets().len(), 197);
        assert!(Graph::path(5).cycle_edge_sets().is_empty());
    }

    #[test]
    fn json_round_trip_and_dedup() {
        let g = Graph::new(3, &[(0, 1), (1, 0), (2, 1)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        let j = serde_json::to_string(&g.to_json()).unwrap();
        let back: GraphJson = serde_json::from_str(&j).unwrap();
        assert_eq!(Graph::from_json(&back).unwrap(), g);
        assert!(Graph::new(2, &[(1, 1)]).is_err());
    }

    #[test]
    fn cliques_of_trampoline() {
        let t = Graph::trampoline(4).unwrap();
        assert_eq!(t.clique_number(), 4);
        // the hub and four triangles
        assert_eq!(t.maximal_cliques().len(), 5);
        assert_eq!(t.triangles().len(), 4 + 4);
    }
}
