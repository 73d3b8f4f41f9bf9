use std::collections::VecDeque;

use crate::bitset::ElementSet;

use super::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chordality {
    /// A perfect elimination order: each vertex's later neighbours form a clique.
    Chordal(Vec<usize>),
    /// A chordless cycle of length at least four, as a vertex sequence.
    NotChordal(Vec<usize>),
}

impl Chordality {
    pub fn order(&self) -> Option<&[usize]> {
        match self {
            Chordality::Chordal(o) => Some(o),
            Chordality::NotChordal(_) => None,
        }
    }

    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal(_))
    }
}

/// Maximum cardinality search; returns the visit order. Ties go to the
/// lowest vertex id.
fn max_cardinality_search(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut weight = vec![0usize; n];
    let mut numbered = ElementSet::EMPTY;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !numbered.contains(v))
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .unwrap();
        numbered.insert(v);
        order.push(v);
        for u in g.neighbors(v).difference(numbered).iter() {
            weight[u] += 1;
        }
    }
    order
}

pub fn is_perfect_elimination_order(g: &Graph, order: &[usize]) -> bool {
    if order.len() != g.vertex_count() {
        return false;
    }
    let mut later = ElementSet::full(g.vertex_count());
    for &v in order {
        if !later.contains(v) {
            return false;
        }
        later.remove(v);
        if !g.is_clique(g.neighbors(v).intersection(later)) {
            return false;
        }
    }
    true
}

/// Recognizes chordal graphs by maximum cardinality search. The reverse
/// of the search order is a perfect elimination order exactly when the
/// graph is chordal.
pub fn is_chordal(g: &Graph) -> Chordality {
    let mut order = max_cardinality_search(g);
    order.reverse();
    if is_perfect_elimination_order(g, &order) {
        Chordality::Chordal(order)
    } else {
        Chordality::NotChordal(chordless_cycle(g).expect("non-chordal graph has a chordless cycle"))
    }
}

/// Finds a chordless cycle of length at least four: for a vertex `v` with
/// non-adjacent neighbours `x`, `y`, a shortest `x`-`y` path avoiding the
/// rest of `N[v]` closes one.
fn chordless_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    for v in 0..n {
        let nb = g.neighbors(v).to_vec();
        for (i, &x) in nb.iter().enumerate() {
            for &y in &nb[i + 1..] {
                if g.adjacent(x, y) {
                    continue;
                }
                let banned = g.closed_neighbors(v).without(x).without(y);
                if let Some(path) = shortest_path(g, x, y, banned) {
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    return Some(cycle);
                }
            }
        }
    }
    None
}

fn shortest_path(g: &Graph, from: usize, to: usize, banned: ElementSet) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut seen = banned.with(from);
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for w in g.neighbors(u).difference(seen).iter() {
            seen.insert(w);
            parent[w] = u;
            queue.push_back(w);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_chordless_cycle(g: &Graph, cycle: &[usize]) -> bool {
        let k = cycle.len();
        if k < 4 {
            return false;
        }
        for i in 0..k {
            for j in i + 1..k {
                let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                if g.adjacent(cycle[i], cycle[j]) != consecutive {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn four_cycle_is_not_chordal() {
        let g = Graph::cycle(4);
        match is_chordal(&g) {
            Chordality::NotChordal(c) => {
                assert_eq!(c.len(), 4);
                assert!(is_chordless_cycle(&g, &c));
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn trampolines_and_cliques_are_chordal() {
        for n in 3..=6 {
            let g = Graph::trampoline(n).unwrap();
            let order = is_chordal(&g).order().unwrap().to_vec();
            assert!(is_perfect_elimination_order(&g, &order));
            // the w vertices are eliminated first
            let mut first: Vec<usize> = order[..n].to_vec();
            first.sort_unstable();
            assert_eq!(first, (n..2 * n).collect::<Vec<_>>());
        }
        assert!(is_chordal(&Graph::complete(5)).is_chordal());
    }

    #[test]
    fn long_cycle_witness() {
        // 6-cycle with a pendant triangle
        let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        edges.extend([(0, 6), (1, 6)]);
        let g = Graph::new(7, &edges).unwrap();
        match is_chordal(&g) {
            Chordality::NotChordal(c) => assert!(is_chordless_cycle(&g, &c)),
            other => panic!("expected witness, got {other:?}"),
        }
    }
}
