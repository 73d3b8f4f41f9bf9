//! MAT-labelings and strong edge elimination orders.

use std::collections::HashSet;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::groebner::{is_mat_circuit_at, ElementOrder};
use crate::matroid::Matroid;

use super::strong::{is_simple_within, strong_elimination_order};
use super::{is_chordal, is_strongly_chordal, Chordality, Graph};

/// Edge labels indexed by edge id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatLabeling {
    pub labels: Vec<usize>,
}

#[derive(Serialize)]
pub struct LabelJson {
    pub edge: [usize; 2],
    pub label: usize,
}

impl MatLabeling {
    pub fn to_json(&self, g: &Graph) -> Vec<LabelJson> {
        self.labels
            .iter()
            .enumerate()
            .map(|(k, &label)| {
                let (u, v) = g.edge(k);
                LabelJson { edge: [u, v], label }
            })
            .collect()
    }

    pub fn max_label(&self) -> usize {
        self.labels.iter().copied().max().unwrap_or(0)
    }

    /// Edge ids carrying label `k`.
    pub fn level(&self, k: usize) -> ElementSet {
        ElementSet::from_elements(
            self.labels
                .iter()
                .enumerate()
                .filter(|(_, &l)| l == k)
                .map(|(e, _)| e),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatViolation {
    WrongLength { expected: usize, found: usize },
    NonPositive { edge: usize },
    /// A level set contains a cycle.
    NotForest { level: usize, cycle: ElementSet },
    /// An edge of a lower level lies in the closure of a level set.
    ClosureMeetsLower { level: usize, edge: usize },
    /// An edge has the wrong number of triangles with lower levels.
    TriangleCount { edge: usize, expected: usize, found: usize },
}

/// Checks the three MAT-labeling conditions. Returns the first violation.
pub fn verify_mat_labeling(g: &Graph, labeling: &MatLabeling) -> Result<(), MatViolation> {
    let labels = &labeling.labels;
    if labels.len() != g.edge_count() {
        return Err(MatViolation::WrongLength {
            expected: g.edge_count(),
            found: labels.len(),
        });
    }
    if let Some(edge) = labels.iter().position(|&l| l == 0) {
        return Err(MatViolation::NonPositive { edge });
    }
    let mut lower = ElementSet::EMPTY;
    for k in 1..=labeling.max_label() {
        let level = labeling.level(k);
        // union-find over the level: forest test and closure
        let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
        for e in level.iter() {
            let (u, v) = g.edge(e);
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                let cycle = cycle_through(g, level, e);
                return Err(MatViolation::NotForest { level: k, cycle });
            }
            parent[ru] = rv;
        }
        for e in level.iter() {
            let (u, v) = g.edge(e);
            let found = g
                .neighbors(u)
                .intersection(g.neighbors(v))
                .iter()
                .filter(|&w| {
                    lower.contains(g.edge_id(u, w).unwrap()) && lower.contains(g.edge_id(v, w).unwrap())
                })
                .count();
            if found != k - 1 {
                return Err(MatViolation::TriangleCount {
                    edge: e,
                    expected: k - 1,
                    found,
                });
            }
        }
        let closed = lower.iter().find(|&e| {
            let (u, v) = g.edge(e);
            find(&mut parent, u) == find(&mut parent, v)
        });
        if let Some(edge) = closed {
            return Err(MatViolation::ClosureMeetsLower { level: k, edge });
        }
        lower = lower.union(level);
    }
    Ok(())
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Edges of a cycle in `level` through `e`, whose endpoints are already
/// joined by the other edges of `level`.
fn cycle_through(g: &Graph, level: ElementSet, e: usize) -> ElementSet {
    let (s, t) = g.edge(e);
    let mut prev: Vec<Option<usize>> = vec![None; g.vertex_count()];
    let mut queue = std::collections::VecDeque::from([s]);
    let mut seen = ElementSet::singleton(s);
    while let Some(x) = queue.pop_front() {
        for f in level.without(e).iter() {
            let (a, b) = g.edge(f);
            let y = if a == x { b } else if b == x { a } else { continue };
            if !seen.contains(y) {
                seen.insert(y);
                prev[y] = Some(f);
                queue.push_back(y);
            }
        }
    }
    let mut cycle = ElementSet::singleton(e);
    let mut y = t;
    while let Some(f) = prev[y] {
        cycle.insert(f);
        let (a, b) = g.edge(f);
        y = if a == y { b } else { a };
    }
    cycle
}

/// Builds a MAT-labeling of a strongly chordal graph.
///
/// Vertices are added in the reverse of a strong elimination order, each
/// one MAT-simplicial when it arrives (conditions MS1-MS3): the new vertex
/// `w` labels its edges to the earlier neighbours `x_1, .., x_m` by
/// position, so `λ(w x_j) = j`, and the order must keep `λ(x_i x_j) < j`
/// for `i < j`. Every later neighbour `s` of `w` will see the set of its
/// own earlier neighbours that came before `w`; these sets form a chain
/// and are placed first, smallest first, so that they stay MAT-labeled.
/// Slots inside one layer of the chain are filled from the back.
///
/// If that fails, a backtracking peel over simple vertices is used. The
/// result is always checked with [`verify_mat_labeling`].
pub fn mat_labeling(g: &Graph) -> Option<MatLabeling> {
    is_strongly_chordal(g)?;
    let labels = strong_elimination_order(g)
        .and_then(|order| label_along(g, &order))
        .filter(|labels| verify_mat_labeling(g, &MatLabeling { labels: labels.clone() }).is_ok())
        .or_else(|| peel_search(g))?;
    let labeling = MatLabeling { labels };
    verify_mat_labeling(g, &labeling).ok()?;
    Some(labeling)
}

fn label_along(g: &Graph, order: &[usize]) -> Option<Vec<usize>> {
    let mut position = vec![0; g.vertex_count()];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    let mut labels = vec![0; g.edge_count()];
    let label = |labels: &[usize], u: usize, v: usize| labels[g.edge_id(u, v).unwrap()];
    let mut after = ElementSet::EMPTY;
    for &w in order.iter().rev() {
        let earlier = g.neighbors(w).intersection(after);
        let mut chain: Vec<ElementSet> = g
            .neighbors(w)
            .difference(after)
            .iter()
            .map(|s| g.neighbors(s).intersection(after))
            .chain([earlier])
            .collect();
        chain.sort_by_key(|d| (d.len(), d.bits()));
        chain.dedup();
        if chain.windows(2).any(|p| !p[0].is_subset(p[1])) {
            return None;
        }
        let mut seq: Vec<usize> = Vec::with_capacity(earlier.len());
        let mut placed = ElementSet::EMPTY;
        for demand in chain {
            let mut rest: Vec<usize> = demand.difference(placed).to_vec();
            rest.sort_by_key(|&v| position[v]);
            let mut tail = Vec::with_capacity(rest.len());
            if !fill_from_back(&|x, y| label(&labels, x, y), placed, &mut rest, &mut tail) {
                return None;
            }
            seq.extend(tail.into_iter().rev());
            placed = demand;
        }
        for (j, &x) in seq.iter().enumerate() {
            labels[g.edge_id(w, x).unwrap()] = j + 1;
        }
        after.insert(w);
    }
    Some(labels)
}

/// Orders `rest` into the slots after `placed` so that every pair meets
/// `max(slot) > label`, filling the last slot first; `tail` collects the
/// choices from the back.
fn fill_from_back(
    label: &dyn Fn(usize, usize) -> usize,
    placed: ElementSet,
    rest: &mut Vec<usize>,
    tail: &mut Vec<usize>,
) -> bool {
    if rest.is_empty() {
        return true;
    }
    let slot = placed.len() + rest.len();
    let mut candidates: Vec<(usize, usize)> = Vec::new();
    for (k, &x) in rest.iter().enumerate() {
        let highest = placed.iter().chain(rest.iter().copied()).filter(|&y| y != x).map(|y| label(x, y)).max();
        if highest.unwrap_or(0) < slot {
            candidates.push((k, highest.unwrap_or(0)));
        }
    }
    // the edges with the largest labels need the latest slots
    candidates.sort_by_key(|&(k, highest)| (std::cmp::Reverse(highest), k));
    for (k, _) in candidates {
        let x = rest.remove(k);
        tail.push(x);
        if fill_from_back(label, placed, rest, tail) {
            return true;
        }
        tail.pop();
        rest.insert(k, x);
    }
    false
}

fn peel_search(g: &Graph) -> Option<Vec<usize>> {
    let mut search = Peeling {
        g,
        labels: vec![0; g.edge_count()],
        bounds: vec![usize::MAX; g.edge_count()],
        failed: HashSet::new(),
    };
    search.peel(ElementSet::full(g.vertex_count())).then_some(search.labels)
}

struct Peeling<'a> {
    g: &'a Graph,
    labels: Vec<usize>,
    bounds: Vec<usize>,
    failed: HashSet<(ElementSet, Vec<usize>)>,
}

impl Peeling<'_> {
    fn state(&self, alive: ElementSet) -> (ElementSet, Vec<usize>) {
        let inside = self.g.edges_within(alive);
        (alive, inside.iter().map(|e| self.bounds[e]).collect())
    }

    fn peel(&mut self, alive: ElementSet) -> bool {
        if alive.is_empty() {
            return true;
        }
        let key = self.state(alive);
        if self.failed.contains(&key) {
            return false;
        }
        let g = self.g;
        let mut candidates: Vec<usize> = alive.iter().filter(|&w| is_simple_within(g, alive, w)).collect();
        candidates.sort_by_key(|&w| (g.neighbors(w).intersection(alive).len(), w));
        for w in candidates {
            let mut clique = g.neighbors(w).intersection(alive).to_vec();
            let size = |x: usize| g.closed_neighbors(x).intersection(alive).len();
            clique.sort_by_key(|&x| (self.bounds[g.edge_id(w, x).unwrap()], std::cmp::Reverse(size(x)), x));
            let mut seq = Vec::with_capacity(clique.len());
            let mut used = vec![false; clique.len()];
            if self.order_clique(alive, w, &clique, &mut used, &mut seq) {
                return true;
            }
        }
        self.failed.insert(key);
        false
    }

    /// Extends `seq` to an ordering of `clique`, then peels the rest.
    fn order_clique(&mut self, alive: ElementSet, w: usize, clique: &[usize], used: &mut [bool], seq: &mut Vec<usize>) -> bool {
        if seq.len() == clique.len() {
            return self.peel(alive.without(w));
        }
        let g = self.g;
        let j = seq.len() + 1;
        for k in 0..clique.len() {
            let x = clique[k];
            if used[k] || self.bounds[g.edge_id(w, x).unwrap()] < j {
                continue;
            }
            // edges to earlier members get labels below j
            let saved: Vec<(usize, usize)> = seq
                .iter()
                .map(|&y| {
                    let e = g.edge_id(x, y).unwrap();
                    (e, self.bounds[e])
                })
                .collect();
            for &(e, b) in &saved {
                self.bounds[e] = b.min(j - 1);
            }
            used[k] = true;
            seq.push(x);
            self.labels[g.edge_id(w, x).unwrap()] = j;
            if self.order_clique(alive, w, clique, used, seq) {
                return true;
            }
            seq.pop();
            used[k] = false;
            for &(e, b) in &saved {
                self.bounds[e] = b;
            }
        }
        false
    }
}

/// An edge order refining "larger label first", ties by edge id. Returns
/// edge ids, earliest first.
pub fn strong_edge_elimination_order(g: &Graph) -> Option<Vec<usize>> {
    let labeling = mat_labeling(g)?;
    let mut edges: Vec<usize> = (0..g.edge_count()).collect();
    edges.sort_by_key(|&e| (std::cmp::Reverse(labeling.labels[e]), e));
    Some(edges)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeeoCheck {
    pub ok: bool,
    /// A cycle (edge ids) that is chordless or not a MAT-circuit.
    pub violating_cycle: Option<ElementSet>,
}

/// Checks that `order` (edge ids, earliest first) is a strong edge
/// elimination order.
///
/// By default the graph must be chordal and every 4-cycle a MAT-circuit;
/// with `all_cycles` every cycle of length at least four is checked
/// directly instead.
pub fn verify_seeo(g: &Graph, order: &[usize], all_cycles: bool) -> SeeoCheck {
    let order = match ElementOrder::new(order.to_vec()) {
        Ok(o) if o.len() == g.edge_count() => o,
        _ => {
            return SeeoCheck {
                ok: false,
                violating_cycle: None,
            }
        }
    };
    if !all_cycles {
        if let Chordality::NotChordal(cycle) = is_chordal(g) {
            let edges = ElementSet::from_elements(
                (0..cycle.len()).map(|i| g.edge_id(cycle[i], cycle[(i + 1) % cycle.len()]).unwrap()),
            );
            return SeeoCheck {
                ok: false,
                violating_cycle: Some(edges),
            };
        }
    }
    let m = Matroid::from_graph(g).expect("graph fits in a matroid");
    let triangles: Vec<ElementSet> = m.circuits().iter().copied().filter(|c| c.len() == 3).collect();
    let bad = m
        .circuits()
        .iter()
        .filter(|c| if all_cycles { c.len() >= 4 } else { c.len() == 4 })
        .find(|&&c| !is_mat_circuit_at(&triangles, c, order.positions()));
    SeeoCheck {
        ok: bad.is_none(),
        violating_cycle: bad.copied(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Broken 4-trampoline with the published labeling. Returns graph and
    /// labeling in our edge ids.
    fn broken4_with_reference_labels() -> (Graph, MatLabeling) {
        let g = Graph::broken_trampoline(4).unwrap();
        // v1..v4 = 0..3, w1..w3 = 4..6
        let spec = [
            ((0, 1), 1),
            ((1, 2), 1),
            ((3, 2), 1),
            ((0, 3), 3),
            ((1, 3), 2),
            ((0, 2), 2),
            ((4, 0), 1),
            ((4, 1), 2),
            ((5, 1), 1),
            ((5, 2), 2),
            ((6, 2), 1),
            ((6, 3), 2),
        ];
        let mut labels = vec![0; g.edge_count()];
        for ((u, v), l) in spec {
            labels[g.edge_id(u, v).unwrap()] = l;
        }
        (g, MatLabeling { labels })
    }

    #[test]
    fn reference_labeling_verifies_and_perturbation_fails() {
        let (g, lab) = broken4_with_reference_labels();
        assert_eq!(verify_mat_labeling(&g, &lab), Ok(()));
        // a spoke lowered from 2 to 1 closes a triangle in level 1
        let mut bad = lab.clone();
        bad.labels[g.edge_id(4, 1).unwrap()] = 1;
        assert!(matches!(
            verify_mat_labeling(&g, &bad),
            Err(MatViolation::NotForest { level: 1, .. })
        ));
        // a spoke raised from 1 to 2 has no triangle below it
        let mut bad = lab.clone();
        bad.labels[g.edge_id(4, 0).unwrap()] = 2;
        assert!(matches!(
            verify_mat_labeling(&g, &bad),
            Err(MatViolation::TriangleCount { expected: 1, found: 0, .. })
        ));
        let empty = Graph::new(0, &[]).unwrap();
        assert_eq!(verify_mat_labeling(&empty, &MatLabeling { labels: vec![] }), Ok(()));
    }

    #[test]
    fn constructed_labeling_matches_level_sizes() {
        let (g, reference) = broken4_with_reference_labels();
        let ours = mat_labeling(&g).unwrap();
        for k in 1..=3 {
            assert_eq!(ours.level(k).len(), reference.level(k).len());
        }
    }

    #[test]
    fn triangle_labeling_and_order() {
        let g = Graph::complete(3);
        let lab = mat_labeling(&g).unwrap();
        let mut sorted = lab.labels.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 1, 2]);
        let order = strong_edge_elimination_order(&g).unwrap();
        assert_eq!(lab.labels[order[0]], 2);
        assert!(mat_labeling(&Graph::cycle(4)).is_none());
        assert!(strong_edge_elimination_order(&Graph::trampoline(3).unwrap()).is_none());
    }

    #[test]
    fn listed_edge_order_is_strong() {
        let g = Graph::broken_trampoline(4).unwrap();
        let pairs = [
            (0, 3),
            (1, 3),
            (0, 2),
            (4, 1),
            (5, 2),
            (6, 3),
            (0, 1),
            (1, 2),
            (3, 2),
            (4, 0),
            (5, 1),
            (6, 2),
        ];
        let order: Vec<usize> = pairs.iter().map(|&(u, v)| g.edge_id(u, v).unwrap()).collect();
        assert!(verify_seeo(&g, &order, false).ok);
        assert!(verify_seeo(&g, &order, true).ok);
        let ours = strong_edge_elimination_order(&g).unwrap();
        assert!(verify_seeo(&g, &ours, true).ok);
        // the three label-3 and label-2 hub edges come first
        let first: ElementSet = ElementSet::from_elements(ours[..1].iter().copied());
        assert_eq!(first, ElementSet::singleton(g.edge_id(0, 3).unwrap()));
    }

    #[test]
    fn forest_accepts_any_order() {
        let g = Graph::path(5);
        assert!(verify_seeo(&g, &[3, 1, 0, 2], false).ok);
    }

    #[test]
    fn labels_large_cliques_and_trampolines() {
        for n in 3..=10 {
            let g = Graph::broken_trampoline(n).unwrap();
            let lab = mat_labeling(&g).unwrap();
            assert_eq!(lab.max_label(), n - 1);
            assert!(mat_labeling(&Graph::trampoline(n).unwrap()).is_none());
        }
        let k11 = Graph::complete(11);
        assert_eq!(mat_labeling(&k11).unwrap().max_label(), 10);
    }

    #[test]
    fn layer_fill_needs_lookahead() {
        // the last slot must go to the vertex on the higher-labelled edge
        let edges = [
            (0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (0, 4), (2, 4), (1, 5), (2, 5), (4, 6),
            (0, 7), (1, 7), (2, 7), (3, 7), (0, 8), (1, 8), (2, 8), (3, 8), (7, 8), (0, 9), (1, 9),
            (2, 9), (3, 9), (7, 9), (8, 9), (0, 10), (1, 10), (2, 10), (7, 10), (8, 10), (9, 10),
            (0, 11), (1, 11), (2, 11), (3, 11), (7, 11), (8, 11), (9, 11), (5, 12), (0, 13), (1, 13),
            (2, 13), (3, 13), (8, 13), (1, 14), (8, 14), (13, 14),
        ];
        let g = Graph::new(15, &edges).unwrap();
        let order = strong_elimination_order(&g).unwrap();
        let labels = label_along(&g, &order).unwrap();
        assert_eq!(verify_mat_labeling(&g, &MatLabeling { labels }), Ok(()));
    }

    #[test]
    fn fan_graph_is_labeled() {
        let g = Graph::new(5, &[(0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
        let lab = mat_labeling(&g).unwrap();
        assert_eq!(verify_mat_labeling(&g, &lab), Ok(()));
    }
}
