//! The defining ideal `Q` of the GMA inside `k[y_e | e ∈ E]`, in its
//! circuit-binomial form and in its Stanley-Reisner plus closure-binomial
//! form, with graded slices for linear-algebra checks.
//!
//! Slices are taken modulo the squares `y_e^2`, which lie in `Q`: a slice
//! of degree `d` is a subspace of the span of squarefree monomials.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::bitset::{k_subsets, ElementSet};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, SparseVec};
use crate::matroid::Matroid;

/// Largest slice dimension handled.
pub const SLICE_MAX_MONOMIALS: usize = 1 << 21;

/// Squarefree polynomial with integer coefficients, read modulo squares.
pub type Poly = Vec<(ElementSet, i64)>;

/// `y_{C \ i} - y_{C \ j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircuitBinomial {
    pub circuit: ElementSet,
    pub i: usize,
    pub j: usize,
}

impl CircuitBinomial {
    pub fn poly(&self) -> Poly {
        vec![(self.circuit.without(self.i), 1), (self.circuit.without(self.j), -1)]
    }
}

#[derive(Clone, Debug)]
pub struct PresentationIdeal {
    pub variables: usize,
    /// `y_{C \ i} - y_{C \ min C}` for every circuit and `i ≠ min C`.
    pub circuit_binomials: Vec<CircuitBinomial>,
    /// Minimal generators of the Stanley-Reisner part: the circuits.
    pub stanley_reisner: Vec<ElementSet>,
    matroid: Matroid,
}

#[derive(Serialize)]
struct PresentationJson<'a> {
    squares: Vec<usize>,
    circuit_binomials: &'a [CircuitBinomial],
}

pub fn presentation(m: &Matroid) -> Result<PresentationIdeal> {
    m.require_simple()?;
    let mut circuit_binomials = Vec::new();
    for &c in m.circuits() {
        let j = c.first().expect("nonempty circuit");
        for i in c.iter().filter(|&i| i != j) {
            circuit_binomials.push(CircuitBinomial { circuit: c, i, j });
        }
    }
    Ok(PresentationIdeal {
        variables: m.ground_size(),
        circuit_binomials,
        stanley_reisner: m.circuits().to_vec(),
        matroid: m.clone(),
    })
}

fn monomial_text(s: ElementSet) -> String {
    let parts: Vec<String> = s.iter().map(|e| format!("y{e}")).collect();
    parts.join("*")
}

impl PresentationIdeal {
    /// Circuit binomials as polynomials (the squares are implicit).
    pub fn circuit_polys(&self) -> Vec<Poly> {
        self.circuit_binomials.iter().map(|b| b.poly()).collect()
    }

    /// The degree-two binomials, coming from 3-circuits.
    pub fn quadratic_polys(&self) -> Vec<Poly> {
        self.circuit_binomials
            .iter()
            .filter(|b| b.circuit.len() == 3)
            .map(|b| b.poly())
            .collect()
    }

    /// Generators `y_D` for circuits `D` and `y_I - y_{I'}` for independent
    /// sets with equal closure. Pairs are formed against the
    /// lexicographically first basis of each flat, which spans the same
    /// space as all pairs.
    pub fn stanley_reisner_polys(&self, cap: usize) -> Result<Vec<Poly>> {
        let m = &self.matroid;
        let mut out: Vec<Poly> = self.stanley_reisner.iter().map(|&d| vec![(d, 1)]).collect();
        let lattice = m.flats()?;
        for flat in lattice.flats() {
            let first = m.basis_of(flat.elements);
            for s in flat.elements.subsets() {
                if s.len() == flat.rank && s != first && m.is_independent(s) {
                    out.push(vec![(s, 1), (first, -1)]);
                    if out.len() > cap {
                        return Err(Error::SizeLimit(format!(
                            "more than {cap} Stanley-Reisner and closure generators"
                        )));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Dimensions of `(S/Q)_d` for `d = 0..=max_degree`, by linear algebra
    /// on the circuit-binomial generators.
    pub fn hilbert_function<F: Field>(&self, field: &F, max_degree: usize) -> Result<Vec<usize>> {
        let gens = self.circuit_polys();
        (0..=max_degree)
            .map(|d| {
                let space = SliceSpace::new(self.variables, d)?;
                Ok(space.len() - space.rank(field, &gens))
            })
            .collect()
    }

    /// Membership of a homogeneous polynomial in `Q`.
    pub fn contains<F: Field>(&self, field: &F, poly: &Poly) -> Result<bool> {
        let Some(&(first, _)) = poly.first() else {
            return Ok(true);
        };
        let space = SliceSpace::new(self.variables, first.len())?;
        let mut e = space.echelon(field, &self.circuit_polys());
        Ok(e.contains(&space.row(field, poly, ElementSet::EMPTY)))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let squares: Vec<String> = (0..self.variables).map(|e| format!("y{e}^2")).collect();
        let _ = writeln!(s, "squares: {}", squares.join(", "));
        let _ = writeln!(s, "circuit binomials:");
        for b in &self.circuit_binomials {
            let _ = writeln!(
                s,
                "  {} - {}",
                monomial_text(b.circuit.without(b.i)),
                monomial_text(b.circuit.without(b.j))
            );
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PresentationJson {
            squares: (0..self.variables).collect(),
            circuit_binomials: &self.circuit_binomials,
        })
        .expect("serializable")
    }
}

/// Coordinates on the squarefree monomials of degree `d`.
#[derive(Clone, Debug)]
pub struct SliceSpace {
    n: usize,
    d: usize,
    index: HashMap<ElementSet, u32>,
}

impl SliceSpace {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        let count = binomial(n, d);
        if count > SLICE_MAX_MONOMIALS as u128 {
            return Err(Error::SizeLimit(format!(
                "degree-{d} slice in {n} variables has {count} monomials"
            )));
        }
        let index = k_subsets(n, d).enumerate().map(|(k, s)| (s, k as u32)).collect();
        Ok(SliceSpace { n, d, index })
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    /// Coordinates of `y_mult * poly` modulo squares.
    pub fn row<F: Field>(&self, field: &F, poly: &Poly, mult: ElementSet) -> SparseVec<F::Elem> {
        let mut row: Vec<(u32, F::Elem)> = Vec::with_capacity(poly.len());
        for &(mono, c) in poly {
            if !mono.is_disjoint(mult) {
                continue;
            }
            if let Some(&k) = self.index.get(&mono.union(mult)) {
                row.push((k, field.from_i64(c)));
            }
        }
        row.sort_by_key(|t| t.0);
        let mut out: SparseVec<F::Elem> = Vec::with_capacity(row.len());
        for (k, v) in row {
            match out.last_mut() {
                Some(last) if last.0 == k => last.1 = field.add(&last.1, &v),
                _ => out.push((k, v)),
            }
        }
        out.retain(|t| !field.is_zero(&t.1));
        out
    }

    /// Echelon form of the degree-`d` part of the ideal generated by
    /// `gens` (and the squares).
    pub fn echelon<F: Field>(&self, field: &F, gens: &[Poly]) -> Echelon<F> {
        let mut e = Echelon::new(field.clone(), self.len());
        for g in gens {
            let Some(&(first, _)) = g.first() else { continue };
            let k = first.len();
            if k > self.d {
                continue;
            }
            for mult in k_subsets(self.n, self.d - k) {
                if g.iter().all(|t| !t.0.is_disjoint(mult)) {
                    continue;
                }
                let row = self.row(field, g, mult);
                if !row.is_empty() {
                    e.insert(&row);
                }
            }
        }
        e
    }

    pub fn rank<F: Field>(&self, field: &F, gens: &[Poly]) -> usize {
        self.echelon(field, gens).rank()
    }
}

/// Rank of the degree-`d` part of the ideal generated by the quadratic
/// circuit binomials.
pub fn quadratic_part_slice_rank<F: Field>(field: &F, p: &PresentationIdeal, d: usize) -> Result<usize> {
    let space = SliceSpace::new(p.variables, d)?;
    Ok(space.rank(field, &p.quadratic_polys()))
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::matroid::NamedMatroid;

    #[test]
    fn hilbert_function_matches_whitney_numbers() {
        let f = PrimeField::default();
        for named in [
            NamedMatroid::Example21,
            NamedMatroid::Fano,
            NamedMatroid::Whirl3,
            NamedMatroid::L23,
            NamedMatroid::BrokenTrampoline(3),
            NamedMatroid::Uniform(3, 6),
        ] {
            let m = named.build().unwrap();
            let p = presentation(&m).unwrap();
            let w = m.flats().unwrap().whitney_numbers();
            assert_eq!(p.hilbert_function(&f, m.rank()).unwrap(), w, "{named}");
        }
    }

    #[test]
    fn two_presentations_agree() {
        let q = Rationals;
        for named in [NamedMatroid::Example21, NamedMatroid::Fano, NamedMatroid::L23] {
            let m = named.build().unwrap();
            let p = presentation(&m).unwrap();
            let sr = p.stanley_reisner_polys(1 << 16).unwrap();
            let circ = p.circuit_polys();
            for d in 1..=4 {
                let space = SliceSpace::new(m.ground_size(), d).unwrap();
                let a = space.rank(&q, &sr);
                let b = space.rank(&q, &circ);
                let mut both = sr.clone();
                both.extend(circ.iter().cloned());
                assert_eq!(a, b, "{named} degree {d}");
                assert_eq!(space.rank(&q, &both), a);
            }
        }
    }

    #[test]
    fn free_matroid_has_no_binomials() {
        let m = Matroid::from_circuits(4, vec![]).unwrap();
        let p = presentation(&m).unwrap();
        assert!(p.circuit_binomials.is_empty());
        assert!(p.to_text().contains("y3^2"));
        let json = p.to_json();
        assert_eq!(json["squares"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn json_shape() {
        let m = Matroid::uniform(2, 3).unwrap();
        let p = presentation(&m).unwrap();
        let json = p.to_json();
        assert_eq!(json["circuit_binomials"][0]["j"], 0);
        assert_eq!(p.circuit_binomials.len(), 2);
        assert!(p.to_text().contains("y0*y2 - y1*y2"));
    }
}
