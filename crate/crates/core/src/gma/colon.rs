//! Annihilators `(0 : y_a)` and the quotients `B(M)/(0 : y_a)`.

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::{kernel, Echelon, SparseVec};

use super::{build_gma, hilbert_function, is_c_chordal, normalize, GmaAlgebra, GmaElement};

#[derive(Clone, Debug, Serialize)]
pub struct ColonIdeal {
    pub element: usize,
    /// `dims[d] = dim (0 : y_a)_d`.
    pub dims: Vec<usize>,
    /// Minimal homogeneous generators, as combinations of flats.
    pub generators: Vec<GmaElement>,
    /// Whether the linear-form description for C-chordal matroids was
    /// also checked.
    pub linear_description_checked: bool,
}

fn to_sparse(f: &PrimeField, x: &[(usize, i64)]) -> SparseVec<u32> {
    normalize(x.to_vec())
        .into_iter()
        .map(|(k, c)| (k as u32, f.from_i64(c)))
        .filter(|t| t.1 != 0)
        .collect()
}

fn to_element(f: &PrimeField, x: &SparseVec<u32>) -> GmaElement {
    let p = f.modulus() as i64;
    x.iter()
        .map(|&(k, c)| {
            let c = c as i64;
            (k as usize, if c > p / 2 { c - p } else { c })
        })
        .collect()
}

/// Degree-`d` part of the ideal generated by `gens`, as an echelon form in
/// flat coordinates, together with a basis.
fn ideal_part(g: &GmaAlgebra, f: &PrimeField, gens: &[GmaElement], d: usize) -> (Echelon<PrimeField>, Vec<SparseVec<u32>>) {
    let mut e = Echelon::new(*f, g.dim());
    let mut basis = Vec::new();
    for x in gens {
        let Some(&(first, _)) = x.first() else { continue };
        let k = g.degree(first);
        if k > d {
            continue;
        }
        for b in g.basis_of_degree(d - k) {
            let row = to_sparse(f, &g.multiply(&[(b, 1)], x));
            if !row.is_empty() && e.insert(&row) {
                basis.push(row);
            }
        }
    }
    (e, basis)
}

/// `(0 : y_a)` computed as the kernel of multiplication by `y_a` and as
/// the ideal generated by `y_a` and the binomials `y_{C \ i} - y_{C \ j}`
/// for circuits `C` of `M/a`; the two must agree degree by degree. For
/// C-chordal matroids the description by `y_a` and the linear forms
/// `y_i - y_j` for 3-circuits `{a, i, j}` is checked too.
pub fn colon_ideal_basis(g: &GmaAlgebra, a: usize) -> Result<ColonIdeal> {
    let m = g.matroid();
    if a >= m.ground_size() {
        return Err(Error::BadArgument(format!("{a} is not an element")));
    }
    let f = PrimeField::default();
    let ya = g.generator(a);
    let top = g.top_degree();

    let contracted = m.contraction(ElementSet::singleton(a));
    let mut lemma_gens: Vec<GmaElement> = vec![vec![(ya, 1)]];
    for &c in contracted.matroid.circuits() {
        let c: ElementSet = ElementSet::from_elements(c.iter().map(|k| contracted.elements[k]));
        let elems = c.to_vec();
        for (k, &i) in elems.iter().enumerate() {
            for &j in &elems[k + 1..] {
                let mut x = Vec::new();
                if let Some(p) = g.monomial_value(c.without(i)) {
                    x.push((p, 1));
                }
                if let Some(p) = g.monomial_value(c.without(j)) {
                    x.push((p, -1));
                }
                let x = normalize(x);
                if !x.is_empty() {
                    lemma_gens.push(x);
                }
            }
        }
    }
    let c_chordal = is_c_chordal(m)?;
    let mut linear_gens: Vec<GmaElement> = vec![vec![(ya, 1)]];
    for t in m.circuits_containing(a).filter(|t| t.len() == 3) {
        let v = t.without(a).to_vec();
        linear_gens.push(normalize(vec![(g.generator(v[0]), 1), (g.generator(v[1]), -1)]));
    }

    let mut dims = Vec::with_capacity(top + 1);
    let mut generators = Vec::new();
    let mut previous: Vec<SparseVec<u32>> = Vec::new();
    for d in 0..=top {
        // kernel of y_a on degree d
        let flats: Vec<usize> = g.basis_of_degree(d).collect();
        let images: Vec<SparseVec<u32>> = flats
            .iter()
            .map(|&fl| match g.product(fl, ya) {
                Some(p) => vec![(p as u32, 1)],
                None => Vec::new(),
            })
            .collect();
        let ker: Vec<SparseVec<u32>> = kernel(&f, g.dim(), &images)
            .into_iter()
            .map(|rel| rel.into_iter().map(|(k, c)| (flats[k as usize] as u32, c)).collect())
            .collect();

        let (mut span, _) = ideal_part(g, &f, &lemma_gens, d);
        let consistent = span.rank() == ker.len() && ker.iter().all(|v| span.contains(v));
        if !consistent {
            return Err(Error::MismatchBug(format!(
                "annihilator of y{a} in degree {d}: kernel has dimension {}, generated part {}",
                ker.len(),
                span.rank()
            )));
        }
        if c_chordal {
            let (linear, _) = ideal_part(g, &f, &linear_gens, d);
            if linear.rank() != ker.len() {
                return Err(Error::MismatchBug(format!(
                    "linear description of the annihilator of y{a} fails in degree {d}"
                )));
            }
        }
        dims.push(ker.len());

        // minimal generators: kernel modulo the variables times the previous degree
        let mut lower = Echelon::new(f, g.dim());
        for v in &previous {
            for e in 0..m.ground_size() {
                let x = g.multiply(&[(g.generator(e), 1)], &to_element(&f, v));
                let row = to_sparse(&f, &x);
                if !row.is_empty() {
                    lower.insert(&row);
                }
            }
        }
        for v in &ker {
            if lower.insert(v) {
                generators.push(to_element(&f, v));
            }
        }
        previous = ker;
    }
    Ok(ColonIdeal {
        element: a,
        dims,
        generators,
        linear_description_checked: c_chordal,
    })
}

/// `B(M)/(0 : y_a)`, returned as `B(si(M/a))` after checking that the two
/// have the same Hilbert function.
pub fn quotient_by_colon(g: &GmaAlgebra, a: usize) -> Result<GmaAlgebra> {
    let colon = colon_ideal_basis(g, a)?;
    let quotient_dims: Vec<usize> = hilbert_function(g)
        .iter()
        .zip(&colon.dims)
        .map(|(w, k)| w - k)
        .collect();
    let contracted = g.matroid().contraction(ElementSet::singleton(a));
    let n = contracted.matroid.simplification().matroid;
    let target = build_gma(&n)?;
    let mut expected = hilbert_function(&target);
    expected.resize(quotient_dims.len(), 0);
    if expected != quotient_dims {
        return Err(Error::MismatchBug(format!(
            "quotient by the annihilator of y{a} has dimensions {quotient_dims:?}, si(M/a) gives {expected:?}"
        )));
    }
    Ok(target)
}
