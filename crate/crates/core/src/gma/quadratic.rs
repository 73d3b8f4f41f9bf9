//! Deciding whether the defining ideal is generated in degree two.
//!
//! Modulo the squares, the degree-two part of `Q` is spanned by the
//! 3-circuit binomials, and the ideal they generate is spanned in each
//! degree by binomials `y_B - y_B'` with `B' = B - x + y` for a 3-circuit
//! `{x, y, z}` with `z ∈ B - x` (a *move*), together with monomials of
//! dependent sets. Moves preserve independence and closure, so for
//! independent sets `I, I'` the binomial `y_I - y_I'` lies in that ideal
//! exactly when `I` and `I'` are joined by a chain of moves. `Q` is then
//! quadratic iff for every circuit `C` with `|C| ≥ 4` all sets `C \ i` are
//! connected by moves.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use crate::bitset::ElementSet;
use crate::error::Result;
use crate::field::{PrimeField, Rationals};
use crate::matroid::Matroid;

use super::presentation::{presentation, SliceSpace};

/// Whether the graded Möbius algebra of `m` is quadratic.
pub fn is_quadratic(m: &Matroid) -> Result<bool> {
    Ok(first_non_quadratic_circuit(m)?.is_none())
}

/// A circuit `C` whose binomials `y_{C \ i} - y_{C \ j}` are not in the
/// ideal generated by the quadrics, if any. Circuits are tried by
/// increasing closure size.
pub fn first_non_quadratic_circuit(m: &Matroid) -> Result<Option<ElementSet>> {
    m.require_simple()?;
    let n = m.ground_size();
    let mut through: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for t in m.circuits().iter().filter(|c| c.len() == 3) {
        let v = t.to_vec();
        for k in 0..3 {
            through[v[k]].push((v[(k + 1) % 3], v[(k + 2) % 3]));
        }
    }
    let mut big: Vec<(usize, ElementSet)> = m
        .circuits()
        .iter()
        .filter(|c| c.len() >= 4)
        .map(|&c| (m.closure(c).len(), c))
        .collect();
    big.sort_by_key(|&(cl, c)| (cl, c.len(), c.bits()));
    for (_, c) in big {
        if !circuit_connected(c, &through) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

fn circuit_connected(c: ElementSet, through: &[Vec<(usize, usize)>]) -> bool {
    let elems = c.to_vec();
    let source = c.without(elems[0]);
    let mut reached: HashSet<ElementSet> = HashSet::new();
    reached.insert(source);
    for &i in &elems[1..] {
        let target = c.without(i);
        if reached.contains(&target) {
            continue;
        }
        match search(target, source, &reached, through) {
            Some(visited) => reached.extend(visited),
            None => return false,
        }
    }
    true
}

/// Best-first search from `start` until a set in `goal` is met, guided by
/// the distance to `toward`. Returns all sets visited on success.
fn search(
    start: ElementSet,
    toward: ElementSet,
    goal: &HashSet<ElementSet>,
    through: &[Vec<(usize, usize)>],
) -> Option<Vec<ElementSet>> {
    let mut visited: HashSet<ElementSet> = HashSet::new();
    let mut heap = BinaryHeap::new();
    visited.insert(start);
    heap.push(Reverse((start.difference(toward).len(), start.bits())));
    while let Some(Reverse((_, bits))) = heap.pop() {
        let b = ElementSet(bits);
        if goal.contains(&b) {
            return Some(visited.into_iter().collect());
        }
        for x in b.iter() {
            for &(y, z) in &through[x] {
                let next = match (b.contains(y), b.contains(z)) {
                    (false, true) => b.without(x).with(y),
                    (true, false) => b.without(x).with(z),
                    _ => continue,
                };
                if visited.insert(next) {
                    heap.push(Reverse((next.difference(toward).len(), next.bits())));
                }
            }
        }
    }
    None
}

/// Slice-based decision: compares, in each degree `3..=rank`, the part of
/// the ideal generated by the quadrics with the full ideal `Q`, by rank
/// over GF(32003), or over the rationals when `exact` is set.
pub fn is_quadratic_by_slices(m: &Matroid, exact: bool) -> Result<bool> {
    let p = presentation(m)?;
    let quadrics = p.quadratic_polys();
    let all = p.circuit_polys();
    for d in 3..=m.rank() {
        let space = SliceSpace::new(m.ground_size(), d)?;
        let equal = if exact {
            space.rank(&Rationals, &quadrics) == space.rank(&Rationals, &all)
        } else {
            let f = PrimeField::default();
            space.rank(&f, &quadrics) == space.rank(&f, &all)
        };
        if !equal {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::matroid::NamedMatroid;

    #[test]
    fn named_instances() {
        assert!(!is_quadratic(&NamedMatroid::L23.build().unwrap()).unwrap());
        assert!(is_quadratic(&NamedMatroid::BetsyRoss.build().unwrap()).unwrap());
        assert!(is_quadratic(&NamedMatroid::Fano.build().unwrap()).unwrap());
        assert!(is_quadratic(&NamedMatroid::Trampoline(3).build().unwrap()).unwrap());
        assert!(!is_quadratic(&Matroid::uniform(3, 5).unwrap()).unwrap());
        assert!(is_quadratic(&Matroid::uniform(2, 5).unwrap()).unwrap());
    }

    #[test]
    fn graphs() {
        let c4 = Matroid::from_graph(&Graph::cycle(4)).unwrap();
        assert!(!is_quadratic(&c4).unwrap());
        let k5 = Matroid::from_graph(&Graph::complete(5)).unwrap();
        assert!(is_quadratic(&k5).unwrap());
    }

    #[test]
    fn agrees_with_slices() {
        for named in [
            NamedMatroid::L23,
            NamedMatroid::Whirl3,
            NamedMatroid::Fano,
            NamedMatroid::Example21,
            NamedMatroid::BrokenTrampoline(3),
            NamedMatroid::Uniform(3, 5),
            NamedMatroid::CycleMatroid(Graph::cycle(5)),
        ] {
            let m = named.build().unwrap();
            let by_moves = is_quadratic(&m).unwrap();
            assert_eq!(by_moves, is_quadratic_by_slices(&m, false).unwrap(), "{named}");
            if m.ground_size() <= 8 {
                assert_eq!(by_moves, is_quadratic_by_slices(&m, true).unwrap(), "{named}");
            }
        }
    }
}
