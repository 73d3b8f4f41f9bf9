//! Chordality conditions for matroids: C-chordal, T-chordal and
//! line-closed.

use std::collections::{HashSet, VecDeque};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::Matroid;

/// Cap on the number of line-closed sets enumerated.
pub const LINE_CLOSED_CAP: usize = 1 << 20;

pub fn is_c_chordal(m: &Matroid) -> Result<bool> {
    Ok(first_non_c_chordal_circuit(m)?.is_none())
}

/// A circuit `C` with `|C| ≥ 4` admitting no `e ∉ C` and split
/// `C = C1 ⊔ C2` with `C1 + e` and `C2 + e` both circuits.
pub fn first_non_c_chordal_circuit(m: &Matroid) -> Result<Option<ElementSet>> {
    m.require_simple()?;
    let circuits: HashSet<ElementSet> = m.circuits().iter().copied().collect();
    for &c in m.circuits().iter().filter(|c| c.len() >= 4) {
        let split = m.ground_set().difference(c).iter().any(|e| {
            m.circuits_containing(e).any(|a| {
                let part = a.without(e);
                part.is_subset(c) && part != c && circuits.contains(&c.difference(part).with(e))
            })
        });
        if !split {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

pub fn is_t_chordal(m: &Matroid) -> Result<bool> {
    Ok(first_non_t_chordal_circuit(m)?.is_none())
}

/// A circuit `C` with `|C| ≥ 4` meeting no 3-circuit in exactly two
/// elements.
pub fn first_non_t_chordal_circuit(m: &Matroid) -> Result<Option<ElementSet>> {
    m.require_simple()?;
    let triangles: Vec<ElementSet> = m.circuits().iter().copied().filter(|c| c.len() == 3).collect();
    Ok(m
        .circuits()
        .iter()
        .copied()
        .filter(|c| c.len() >= 4)
        .find(|&c| !triangles.iter().any(|t| t.intersection(c).len() == 2)))
}

/// Whether every set closed under `X ↦ X ∪ cl(i, j)` for `i, j ∈ X` is a
/// flat. Closed sets are enumerated breadth-first from the empty set.
pub fn is_line_closed(m: &Matroid, cap: usize) -> Result<bool> {
    m.require_simple()?;
    let n = m.ground_size();
    let mut lines = vec![ElementSet::EMPTY; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let l = m.closure(ElementSet::from_elements([i, j]));
            lines[i * n + j] = l;
            lines[j * n + i] = l;
        }
    }
    let close = |mut x: ElementSet| loop {
        let mut y = x;
        for i in x.iter() {
            for j in x.iter().filter(|&j| j > i) {
                y = y.union(lines[i * n + j]);
            }
        }
        if y == x {
            return x;
        }
        x = y;
    };
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(ElementSet::EMPTY);
    queue.push_back(ElementSet::EMPTY);
    while let Some(x) = queue.pop_front() {
        if !m.is_flat(x) {
            return Ok(false);
        }
        for e in m.ground_set().difference(x).iter() {
            let y = close(x.with(e));
            if seen.insert(y) {
                if seen.len() > cap {
                    return Err(Error::SizeLimit(format!("more than {cap} line-closed sets")));
                }
                queue.push_back(y);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::matroid::NamedMatroid;

    fn build(n: NamedMatroid) -> Matroid {
        n.build().unwrap()
    }

    #[test]
    fn golden_predicates() {
        let w = build(NamedMatroid::Whirl3);
        assert!(is_t_chordal(&w).unwrap());
        assert!(!is_line_closed(&w, LINE_CLOSED_CAP).unwrap());
        let b = build(NamedMatroid::BetsyRoss);
        assert!(!is_c_chordal(&b).unwrap());
        let l = build(NamedMatroid::L23);
        assert!(is_t_chordal(&l).unwrap());
        assert!(!is_c_chordal(&l).unwrap());
    }

    #[test]
    fn graphs() {
        let k4 = Matroid::from_graph(&Graph::complete(4)).unwrap();
        assert!(is_c_chordal(&k4).unwrap());
        assert!(is_line_closed(&k4, LINE_CLOSED_CAP).unwrap());
        let c5 = Matroid::from_graph(&Graph::cycle(5)).unwrap();
        assert!(!is_t_chordal(&c5).unwrap());
        assert!(!is_c_chordal(&c5).unwrap());
        let path = Matroid::from_graph(&Graph::path(4)).unwrap();
        assert!(is_c_chordal(&path).unwrap() && is_t_chordal(&path).unwrap());
    }

    #[test]
    fn ag23_is_c_chordal() {
        assert!(is_c_chordal(&build(NamedMatroid::AG23)).unwrap());
    }
}
