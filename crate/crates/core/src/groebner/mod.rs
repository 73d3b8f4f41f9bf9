//! Lex initial ideals of the defining ideal, MAT-circuits and strong
//! elimination orders.
//!
//! Order convention: `u ≺ v` (u earlier) means `y_u > y_v` as variables.

mod buchberger;
mod search;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::Matroid;

pub use buchberger::{buchberger_oracle, BUCHBERGER_MAX_ELEMENTS};
pub use search::{
    search_strong_elimination_order, SearchOptions, SearchOutcome, SearchReport, Strategy,
    EXHAUSTIVE_MAX_ELEMENTS,
};

/// A total order on the ground set, stored both as the sequence of
/// elements (earliest first) and as positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementOrder {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl ElementOrder {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (p, &e) in order.iter().enumerate() {
            if e >= n || position[e] != usize::MAX {
                return Err(Error::BadArgument(format!(
                    "{order:?} is not a permutation of 0..{n}"
                )));
            }
            position[e] = p;
        }
        Ok(ElementOrder { order, position })
    }

    pub fn identity(n: usize) -> Self {
        ElementOrder {
            order: (0..n).collect(),
            position: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Elements, earliest (largest variable) first.
    pub fn elements(&self) -> &[usize] {
        &self.order
    }

    pub fn positions(&self) -> &[usize] {
        &self.position
    }

    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.position[a] < self.position[b]
    }

    /// Earliest element of a nonempty set.
    pub fn min_of(&self, set: ElementSet) -> usize {
        min_at(set, &self.position)
    }
}

#[inline]
fn min_at(set: ElementSet, position: &[usize]) -> usize {
    set.iter().min_by_key(|&e| position[e]).expect("nonempty set")
}

/// Minimal generators of a monomial ideal generated by the squares of all
/// variables and some squarefree monomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialIdealSummary {
    pub variables: usize,
    /// Minimal squarefree generators, sorted by `(degree, mask)`.
    pub squarefree: Vec<ElementSet>,
}

impl MonomialIdealSummary {
    /// Histogram of minimal generator degrees, squares included.
    pub fn degree_histogram(&self) -> Vec<usize> {
        let top = self.squarefree.iter().map(|s| s.len()).max().unwrap_or(0).max(2);
        let mut h = vec![0usize; top + 1];
        h[2] += self.variables;
        for s in &self.squarefree {
            h[s.len()] += 1;
        }
        h
    }

    pub fn max_degree(&self) -> usize {
        self.degree_histogram().len() - 1
    }

    pub fn is_quadratic(&self) -> bool {
        self.max_degree() <= 2
    }

    pub fn contains(&self, monomial: ElementSet) -> bool {
        self.squarefree.iter().any(|g| g.is_subset(monomial))
    }
}

/// Initial ideal of the defining ideal under the lex order induced by
/// `order`: the squares and `y_{C \ i}` for circuits `C` and `i ≠ min C`,
/// minimalized by divisibility.
pub fn lex_initial_ideal(m: &Matroid, order: &ElementOrder) -> MonomialIdealSummary {
    let mut gens: Vec<ElementSet> = Vec::new();
    for &c in m.circuits() {
        let mn = order.min_of(c);
        for i in c.iter().filter(|&i| i != mn) {
            gens.push(c.without(i));
        }
    }
    gens.sort_by_key(|s| (s.len(), s.bits()));
    gens.dedup();
    let mut minimal: Vec<ElementSet> = Vec::new();
    for g in gens {
        if !minimal.iter().any(|k| k.is_subset(g)) {
            minimal.push(g);
        }
    }
    MonomialIdealSummary {
        variables: m.ground_size(),
        squarefree: minimal,
    }
}

/// Whether `set` has a MAT-triple: `u, v ∈ set` and `w` with `{u, v, w}` a
/// circuit and `w ≻ min(u, v)`. For `set` inside a larger circuit, this is a
/// 3-circuit meeting `set` in two elements whose earliest element is in `set`.
#[inline]
pub fn has_mat_triple(triangles: &[ElementSet], set: ElementSet, position: &[usize]) -> bool {
    triangles.iter().any(|&t| {
        let meet = t.intersection(set);
        (meet.len() == 2 && meet.contains(min_at(t, position))) || meet.len() == 3
    })
}

/// MAT-circuit test against a precomputed list of 3-circuits.
pub fn is_mat_circuit_at(triangles: &[ElementSet], circuit: ElementSet, position: &[usize]) -> bool {
    let mn = min_at(circuit, position);
    circuit
        .iter()
        .filter(|&i| i != mn)
        .all(|i| has_mat_triple(triangles, circuit.without(i), position))
}

pub fn triangles_of(m: &Matroid) -> Vec<ElementSet> {
    m.circuits().iter().copied().filter(|c| c.len() == 3).collect()
}

pub fn is_mat_circuit(m: &Matroid, circuit: ElementSet, order: &ElementOrder) -> Result<bool> {
    if !m.circuits().contains(&circuit) {
        return Err(Error::BadArgument(format!("{circuit} is not a circuit")));
    }
    if circuit.len() < 4 {
        return Err(Error::BadArgument(format!(
            "{circuit} has fewer than four elements"
        )));
    }
    Ok(is_mat_circuit_at(&triangles_of(m), circuit, order.positions()))
}

/// First circuit of size at least four that is not a MAT-circuit.
pub fn first_non_mat_circuit(m: &Matroid, order: &ElementOrder) -> Option<ElementSet> {
    let triangles = triangles_of(m);
    m.circuits()
        .iter()
        .copied()
        .filter(|c| c.len() >= 4)
        .find(|&c| !is_mat_circuit_at(&triangles, c, order.positions()))
}

/// Whether `order` is a strong elimination order. The MAT-circuit test and
/// quadraticity of the lex initial ideal are computed independently and
/// must agree.
pub fn certify_order(m: &Matroid, order: &ElementOrder) -> Result<bool> {
    m.require_simple()?;
    if order.len() != m.ground_size() {
        return Err(Error::BadArgument(format!(
            "order has {} elements, ground set has {}",
            order.len(),
            m.ground_size()
        )));
    }
    let by_circuits = first_non_mat_circuit(m, order).is_none();
    let by_ideal = lex_initial_ideal(m, order).is_quadratic();
    if by_circuits != by_ideal {
        return Err(Error::MismatchBug(format!(
            "MAT-circuit test says {by_circuits}, initial ideal says {by_ideal} for order {:?}",
            order.elements()
        )));
    }
    Ok(by_circuits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::NamedMatroid;

    fn set(v: &[usize]) -> ElementSet {
        ElementSet::from_elements(v.iter().copied())
    }

    #[test]
    fn u23_initial_ideal() {
        let m = Matroid::uniform(2, 3).unwrap();
        let ideal = lex_initial_ideal(&m, &ElementOrder::identity(3));
        // y0 > y1 > y2: y_{C\1} = y0 y2 and y_{C\2} = y0 y1 lead
        assert_eq!(ideal.squarefree, vec![set(&[0, 1]), set(&[0, 2])]);
        assert_eq!(ideal.degree_histogram(), vec![0, 0, 5]);
    }

    #[test]
    fn broken_trampoline3_orders() {
        let m = NamedMatroid::BrokenTrampoline(3).build().unwrap();
        let g = NamedMatroid::BrokenTrampoline(3).graph().unwrap();
        // edges a..g of the figure
        let pairs = [(0, 2), (0, 1), (1, 2), (0, 3), (3, 1), (4, 1), (4, 2)];
        let ids: Vec<usize> = pairs.iter().map(|&(u, v)| g.edge_id(u, v).unwrap()).collect();
        let alphabetical = ElementOrder::new(ids.clone()).unwrap();
        // a < b < ... < g leaves y_a y_d y_e as a cubic generator
        let ideal = lex_initial_ideal(&m, &alphabetical);
        assert!(ideal.squarefree.contains(&set(&[ids[0], ids[3], ids[4]])));
        assert!(!certify_order(&m, &alphabetical).unwrap());
        let strong = crate::graph::strong_edge_elimination_order(&g).unwrap();
        let strong = ElementOrder::new(strong).unwrap();
        assert!(lex_initial_ideal(&m, &strong).is_quadratic());
        assert!(certify_order(&m, &strong).unwrap());
    }

    #[test]
    fn trampoline3_identity_has_cubic_generator() {
        let m = NamedMatroid::Trampoline(3).build().unwrap();
        let ideal = lex_initial_ideal(&m, &ElementOrder::identity(9));
        assert!(ideal.max_degree() >= 3);
        assert!(!certify_order(&m, &ElementOrder::identity(9)).unwrap());
    }

    #[test]
    fn fano_listed_order_is_strong() {
        let m = NamedMatroid::Fano.build().unwrap();
        let order = ElementOrder::identity(7);
        assert!(certify_order(&m, &order).unwrap());
        // complement of the line {100, 010, 110} is a 4-circuit
        let c = set(&[2, 3, 4, 6]);
        assert!(is_mat_circuit(&m, c, &order).unwrap());
        assert!(is_mat_circuit(&m, set(&[0, 1, 5]), &order).is_err());
    }

    #[test]
    fn no_triangles_means_no_mat_circuit() {
        let m = Matroid::uniform(3, 5).unwrap();
        let c = set(&[0, 1, 2, 3]);
        assert!(!is_mat_circuit(&m, c, &ElementOrder::identity(5)).unwrap());
    }

    #[test]
    fn rank_two_orders_are_vacuous() {
        let m = Matroid::uniform(2, 5).unwrap();
        assert!(certify_order(&m, &ElementOrder::new(vec![4, 2, 0, 1, 3]).unwrap()).unwrap());
    }

    #[test]
    fn bad_orders_rejected() {
        assert!(ElementOrder::new(vec![0, 0, 1]).is_err());
        assert!(ElementOrder::new(vec![0, 3, 1]).is_err());
    }
}
