//! The graded Möbius algebra of a simple matroid: basis indexed by flats,
//! `y_F y_G = y_{F ∨ G}` when ranks add and `0` otherwise.

mod colon;
mod predicates;
mod presentation;
mod quadratic;

use crate::bitset::ElementSet;
use crate::error::Result;
use crate::matroid::{FlatLattice, Matroid};

pub use colon::{colon_ideal_basis, quotient_by_colon, ColonIdeal};
pub use predicates::{
    first_non_c_chordal_circuit, first_non_t_chordal_circuit, is_c_chordal, is_line_closed,
    is_t_chordal, LINE_CLOSED_CAP,
};
pub use presentation::{
    presentation, quadratic_part_slice_rank, CircuitBinomial, Poly, PresentationIdeal, SliceSpace,
    SLICE_MAX_MONOMIALS,
};
pub use quadratic::{first_non_quadratic_circuit, is_quadratic, is_quadratic_by_slices};

/// An element of a GMA as `(flat id, coefficient)` pairs.
pub type GmaElement = Vec<(usize, i64)>;

#[derive(Clone, Debug)]
pub struct GmaAlgebra {
    matroid: Matroid,
    lattice: FlatLattice,
    /// Lexicographically first basis of each flat, by element id.
    monomials: Vec<ElementSet>,
}

/// Builds the graded Möbius algebra of a simple matroid.
pub fn build_gma(m: &Matroid) -> Result<GmaAlgebra> {
    GmaAlgebra::new(m)
}

/// Dimensions of the graded pieces: the Whitney numbers.
pub fn hilbert_function(g: &GmaAlgebra) -> Vec<usize> {
    g.lattice.whitney_numbers()
}

impl GmaAlgebra {
    pub fn new(m: &Matroid) -> Result<Self> {
        m.require_simple()?;
        let lattice = m.flats()?;
        let monomials = lattice.flats().iter().map(|f| m.basis_of(f.elements)).collect();
        Ok(GmaAlgebra {
            matroid: m.clone(),
            lattice,
            monomials,
        })
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn lattice(&self) -> &FlatLattice {
        &self.lattice
    }

    pub fn dim(&self) -> usize {
        self.lattice.len()
    }

    pub fn top_degree(&self) -> usize {
        self.lattice.rank()
    }

    pub fn degree(&self, flat: usize) -> usize {
        self.lattice.flat(flat).rank
    }

    /// Flat ids of degree `d`.
    pub fn basis_of_degree(&self, d: usize) -> std::ops::Range<usize> {
        self.lattice.of_rank(d)
    }

    /// Canonical monomial `y_I` for the flat: `I` is its lexicographically
    /// first basis.
    pub fn monomial_of(&self, flat: usize) -> ElementSet {
        self.monomials[flat]
    }

    /// The variable `y_e` as a basis element.
    pub fn generator(&self, e: usize) -> usize {
        self.lattice.atom(e)
    }

    /// Product of basis elements.
    #[inline]
    pub fn product(&self, a: usize, b: usize) -> Option<usize> {
        let (ra, rb) = (self.degree(a), self.degree(b));
        if ra + rb > self.lattice.rank() {
            return None;
        }
        let (small, big) = if ra <= rb { (a, b) } else { (b, a) };
        let mut acc = big;
        for e in self.monomials[small].iter() {
            let next = self.lattice.atom_join(acc, e);
            if next == acc {
                return None;
            }
            acc = next;
        }
        Some(acc)
    }

    /// Value of the squarefree monomial `y_X`: the flat `cl(X)` when `X`
    /// is independent, zero otherwise.
    pub fn monomial_value(&self, set: ElementSet) -> Option<usize> {
        let mut acc = self.lattice.bottom();
        for e in set.iter() {
            let next = self.lattice.atom_join(acc, e);
            if next == acc {
                return None;
            }
            acc = next;
        }
        Some(acc)
    }

    /// Product of two elements.
    pub fn multiply(&self, x: &[(usize, i64)], y: &[(usize, i64)]) -> GmaElement {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for &(a, ca) in x {
            for &(b, cb) in y {
                if let Some(p) = self.product(a, b) {
                    out.push((p, ca * cb));
                }
            }
        }
        normalize(out)
    }
}

/// Sorts by flat and merges coefficients, dropping zeros.
pub fn normalize(mut v: Vec<(usize, i64)>) -> GmaElement {
    v.sort_unstable_by_key(|t| t.0);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(v.len());
    for (k, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == k => last.1 += c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|t| t.1 != 0);
    out
}
