use crate::bitset::ElementSet;
use crate::error::{Error, Result};

use super::Graph;

/// Induced-trampoline search is exhaustive up to this many vertices.
pub const TRAMPOLINE_SEARCH_CAP: usize = 16;

/// Whether `v` is simple inside the induced subgraph on `alive`: the
/// distinct closed neighbourhoods of its closed neighbours form a chain.
pub(crate) fn is_simple_within(g: &Graph, alive: ElementSet, v: usize) -> bool {
    let nbhd = |u: usize| g.closed_neighbors(u).intersection(alive);
    let mut sets: Vec<ElementSet> = nbhd(v).iter().map(nbhd).collect();
    sets.sort_by_key(|s| s.len());
    sets.windows(2).all(|w| w[0].is_subset(w[1]))
}

pub fn is_simple_vertex(g: &Graph, v: usize) -> bool {
    is_simple_within(g, ElementSet::full(g.vertex_count()), v)
}

pub fn simple_vertices(g: &Graph) -> Vec<usize> {
    (0..g.vertex_count()).filter(|&v| is_simple_vertex(g, v)).collect()
}

/// A simple elimination order, found by repeatedly deleting the
/// lowest-numbered simple vertex. Any simple vertex may be deleted, so the
/// greedy choice never fails on a strongly chordal graph.
pub fn is_strongly_chordal(g: &Graph) -> Option<Vec<usize>> {
    let mut alive = ElementSet::full(g.vertex_count());
    let mut order = Vec::with_capacity(g.vertex_count());
    while !alive.is_empty() {
        let v = alive.iter().find(|&v| is_simple_within(g, alive, v))?;
        order.push(v);
        alive.remove(v);
    }
    Some(order)
}

/// A strong elimination order: a vertex order in which the closed
/// neighbourhood matrix has no submatrix `[[1, 1], [1, 0]]` (rows `i < j`,
/// columns `k < l`).
///
/// Built greedily: the next vertex is the lowest-numbered simple vertex
/// not forced behind a remaining vertex, where deleting `v` forces, for
/// neighbours `x, y` of `v` with `N[x]` strictly inside `N[y]`, `x` before
/// `y`. The result is checked; the row and column orders of a doubly
/// lexical ordering are tried next.
pub fn strong_elimination_order(g: &Graph) -> Option<Vec<usize>> {
    let greedy = greedy_strong_order(g);
    let (rows, cols) = doubly_lexical(g);
    greedy
        .into_iter()
        .chain([rows, cols])
        .find(|order| is_strong_elimination_order(g, order))
}

fn greedy_strong_order(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut alive = ElementSet::full(n);
    let mut before = vec![ElementSet::EMPTY; n];
    let mut order = Vec::with_capacity(n);
    while !alive.is_empty() {
        let v = alive
            .iter()
            .find(|&v| before[v].is_disjoint(alive) && is_simple_within(g, alive, v))?;
        let nbhd = |u: usize| g.closed_neighbors(u).intersection(alive);
        let around = g.neighbors(v).intersection(alive);
        for x in around.iter() {
            for y in around.iter() {
                if x != y && nbhd(x).is_subset(nbhd(y)) && nbhd(x) != nbhd(y) {
                    before[y].insert(x);
                }
            }
        }
        order.push(v);
        alive.remove(v);
    }
    Some(order)
}

/// Row and column orders of the closed neighbourhood matrix, each sorted
/// lexicographically against the other (last position most significant),
/// ties kept in the other's order.
fn doubly_lexical(g: &Graph) -> (Vec<usize>, Vec<usize>) {
    let n = g.vertex_count();
    // key of `v`: bit p set when the p-th entry of `other` is in N[v]
    let key = |v: usize, other: &[usize]| -> u64 {
        other
            .iter()
            .enumerate()
            .filter(|&(_, &u)| g.closed_neighbors(v).contains(u))
            .fold(0u64, |acc, (p, _)| acc | (1u64 << p))
    };
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols = rows.clone();
    for _ in 0..4 * n * n + 4 {
        let mut next_rows = cols.clone();
        next_rows.sort_by_key(|&v| key(v, &cols));
        let mut next_cols = next_rows.clone();
        next_cols.sort_by_key(|&v| key(v, &next_rows));
        if next_rows == rows && next_cols == cols {
            break;
        }
        rows = next_rows;
        cols = next_cols;
    }
    (rows, cols)
}

/// Checks the `[[1, 1], [1, 0]]`-freeness of the closed neighbourhood
/// matrix under `order`.
pub fn is_strong_elimination_order(g: &Graph, order: &[usize]) -> bool {
    let n = g.vertex_count();
    if order.len() != n || ElementSet::from_elements(order.iter().copied()) != ElementSet::full(n) {
        return false;
    }
    // closed neighbourhoods in position coordinates
    let mut position = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    let rows: Vec<ElementSet> = order
        .iter()
        .map(|&v| ElementSet::from_elements(g.closed_neighbors(v).iter().map(|u| position[u])))
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            let Some(k) = rows[i].intersection(rows[j]).first() else {
                continue;
            };
            let tail = rows[i].difference(ElementSet::full(k + 1));
            if !tail.is_subset(rows[j]) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrampolineSearch {
    /// `vertices = [v_1, .., v_n, w_1, .., w_n]`, `w_i` adjacent to `v_i`, `v_{i+1}`.
    Found { n: usize, vertices: Vec<usize> },
    None,
}

/// Searches for an induced `n`-trampoline (`n >= 3`).
///
/// The hub `v_1, v_2, ..` is grown as a clique with `v_1` its smallest
/// vertex, interleaved with the `w`s, checking induced adjacency at every
/// step. Exhaustive for graphs up to [`TRAMPOLINE_SEARCH_CAP`] vertices.
pub fn find_induced_trampoline(g: &Graph) -> Result<TrampolineSearch> {
    if g.vertex_count() > TRAMPOLINE_SEARCH_CAP {
        return Err(Error::SizeLimit(format!(
            "induced trampoline search is capped at {TRAMPOLINE_SEARCH_CAP} vertices"
        )));
    }
    for n in 3..=g.vertex_count() / 2 {
        for v1 in 0..g.vertex_count() {
            let mut vs = vec![v1];
            let mut ws = Vec::new();
            if extend(g, n, &mut vs, &mut ws) {
                let mut vertices = vs;
                vertices.extend(ws);
                return Ok(TrampolineSearch::Found { n, vertices });
            }
        }
    }
    Ok(TrampolineSearch::None)
}

/// Depth-first extension in the order `v_1, v_2, w_1, v_3, w_2, .., v_n,
/// w_{n-1}, w_n`.
fn extend(g: &Graph, n: usize, vs: &mut Vec<usize>, ws: &mut Vec<usize>) -> bool {
    if ws.len() == n {
        return true;
    }
    let used = ElementSet::from_elements(vs.iter().chain(ws.iter()).copied());
    if vs.len() == ws.len() + 1 && vs.len() < n {
        let vset = ElementSet::from_elements(vs.iter().copied());
        for v in vs[0] + 1..g.vertex_count() {
            if used.contains(v) || g.neighbors(v).intersection(used) != vset {
                continue;
            }
            vs.push(v);
            if extend(g, n, vs, ws) {
                return true;
            }
            vs.pop();
        }
        return false;
    }
    let k = ws.len();
    let want = ElementSet::from_elements([vs[k], vs[(k + 1) % n]]);
    for w in 0..g.vertex_count() {
        if used.contains(w) || g.neighbors(w).intersection(used) != want {
            continue;
        }
        ws.push(w);
        if extend(g, n, vs, ws) {
            return true;
        }
        ws.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trampoline_has_no_simple_vertex() {
        for n in 3..=5 {
            let t = Graph::trampoline(n).unwrap();
            assert!(simple_vertices(&t).is_empty());
            assert!(is_strongly_chordal(&t).is_none());
        }
    }

    #[test]
    fn induced_trampoline_search() {
        let t = Graph::trampoline(3).unwrap();
        assert_eq!(
            find_induced_trampoline(&t).unwrap(),
            TrampolineSearch::Found { n: 3, vertices: (0..6).collect() }
        );
        let t4 = Graph::trampoline(4).unwrap();
        assert!(matches!(
            find_induced_trampoline(&t4).unwrap(),
            TrampolineSearch::Found { n: 4, .. }
        ));
        let b5 = Graph::broken_trampoline(5).unwrap();
        assert_eq!(find_induced_trampoline(&b5).unwrap(), TrampolineSearch::None);
        assert_eq!(find_induced_trampoline(&Graph::complete(4)).unwrap(), TrampolineSearch::None);
        assert!(find_induced_trampoline(&Graph::path(17)).is_err());
    }

    #[test]
    fn broken_trampoline_is_strongly_chordal() {
        let b = Graph::broken_trampoline(4).unwrap();
        // w_1 has id 4
        assert!(simple_vertices(&b).contains(&4));
        let order = is_strongly_chordal(&b).unwrap();
        assert_eq!(order.len(), 7);
        assert!(is_strongly_chordal(&Graph::path(6)).is_some());
        let single = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(simple_vertices(&single), vec![0, 1]);
    }

    #[test]
    fn strong_orders() {
        for n in 3..=6 {
            let b = Graph::broken_trampoline(n).unwrap();
            let order = strong_elimination_order(&b).unwrap();
            assert!(is_strong_elimination_order(&b, &order));
            assert!(strong_elimination_order(&Graph::trampoline(n).unwrap()).is_none());
        }
        // a path read from the middle breaks the chain condition
        let p = Graph::path(3);
        assert!(is_strong_elimination_order(&p, &[0, 2, 1]));
        assert!(!is_strong_elimination_order(&p, &[1, 0, 2]));
        assert!(!is_strong_elimination_order(&p, &[0, 1]));
    }
}
