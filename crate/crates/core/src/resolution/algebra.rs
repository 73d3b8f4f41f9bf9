//! Finite-dimensional standard graded algebras given by a graded basis and
//! structure constants.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::gma::GmaAlgebra;
use crate::linalg::Echelon;

const NONE: u32 = u32::MAX;

/// Largest dimension for which product and join tables are cached.
const TABLE_LIMIT: usize = 4096;

#[derive(Clone, Debug)]
enum Products {
    /// Products of basis elements are basis elements or zero.
    Monomial(MonomialProducts),
    /// General structure constants, `dim * dim` entries.
    Table(Vec<Vec<(u32, i64)>>),
}

#[derive(Clone, Debug)]
enum MonomialProducts {
    Cached { product: Vec<u32>, join: Vec<u32> },
    Gma(Box<GmaAlgebra>),
}

/// A graded algebra `A` with `A_0` the field, basis elements sorted by
/// degree and basis element 0 the unit.
///
/// For graded Möbius algebras the basis is indexed by flats and the
/// algebra is also graded by the lattice of flats under join; that finer
/// grading splits every linear-algebra problem into independent blocks.
#[derive(Clone, Debug)]
pub struct StructuredAlgebra {
    degrees: Vec<usize>,
    starts: Vec<usize>,
    products: Products,
    lattice_graded: bool,
}

impl StructuredAlgebra {
    pub fn from_gma(g: &GmaAlgebra) -> Self {
        Self::from_gma_cached(g, g.dim() <= TABLE_LIMIT)
    }

    fn from_gma_cached(g: &GmaAlgebra, cache: bool) -> Self {
        let dim = g.dim();
        let degrees: Vec<usize> = (0..dim).map(|b| g.degree(b)).collect();
        let starts = (0..=g.top_degree() + 1)
            .map(|d| if d > g.top_degree() { dim } else { g.basis_of_degree(d).start })
            .collect();
        let products = if cache {
            let mut product = vec![NONE; dim * dim];
            let mut join = vec![0u32; dim * dim];
            for a in 0..dim {
                for b in 0..dim {
                    if let Some(p) = g.product(a, b) {
                        product[a * dim + b] = p as u32;
                    }
                    join[a * dim + b] = g.lattice().join(a, b) as u32;
                }
            }
            MonomialProducts::Cached { product, join }
        } else {
            MonomialProducts::Gma(Box::new(g.clone()))
        };
        StructuredAlgebra {
            degrees,
            starts,
            products: Products::Monomial(products),
            lattice_graded: true,
        }
    }

    /// Algebra from structure constants: `degrees[b]` for each basis
    /// element (nondecreasing, basis element 0 of degree 0 is the unit) and
    /// the nonzero products `b_x b_y` for `x ≤ y` of positive degree.
    /// Checks gradedness, commutativity is assumed, associativity and
    /// generation in degree one are verified.
    pub fn from_table(degrees: Vec<usize>, products: &[((usize, usize), Vec<(usize, i64)>)]) -> Result<Self> {
        let dim = degrees.len();
        if dim == 0 || degrees[0] != 0 || degrees[1..].iter().any(|&d| d == 0) {
            return Err(Error::BadArgument("basis must start with the unit, the only element of degree 0".into()));
        }
        if degrees.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::BadArgument("basis must be sorted by degree".into()));
        }
        let top = *degrees.last().unwrap();
        let mut starts = vec![0; top + 2];
        for d in 0..=top + 1 {
            starts[d] = degrees.iter().position(|&x| x >= d).unwrap_or(dim);
        }
        let mut table = vec![Vec::new(); dim * dim];
        for b in 0..dim {
            table[b] = vec![(b as u32, 1)];
            table[b * dim] = vec![(b as u32, 1)];
        }
        let mut seen: HashMap<(usize, usize), ()> = HashMap::new();
        for ((x, y), value) in products {
            let (x, y) = (*x.min(y), *x.max(y));
            if y >= dim || x == 0 || seen.insert((x, y), ()).is_some() {
                return Err(Error::BadArgument(format!("bad or repeated product entry ({x}, {y})")));
            }
            let mut v: Vec<(u32, i64)> = Vec::new();
            for &(k, c) in value {
                if k >= dim || degrees[k] != degrees[x] + degrees[y] {
                    return Err(Error::BadArgument(format!(
                        "product of {x} and {y} is not homogeneous of degree {}",
                        degrees[x] + degrees[y]
                    )));
                }
                if c != 0 {
                    v.push((k as u32, c));
                }
            }
            v.sort_unstable();
            table[x * dim + y] = v.clone();
            table[y * dim + x] = v;
        }
        let alg = StructuredAlgebra {
            degrees,
            starts,
            products: Products::Table(table),
            lattice_graded: false,
        };
        alg.check_associative()?;
        alg.check_generated_in_degree_one()?;
        Ok(alg)
    }

    /// `k[y]/(y^2)`.
    pub fn dual_numbers() -> Self {
        Self::from_table(vec![0, 1], &[]).expect("valid table")
    }

    /// The same algebra with the lattice grading forgotten.
    pub fn coarse(&self) -> Self {
        let mut a = self.clone();
        a.lattice_graded = false;
        a
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn top_degree(&self) -> usize {
        self.starts.len() - 2
    }

    pub fn degree(&self, b: usize) -> usize {
        self.degrees[b]
    }

    /// Basis elements of degree `d` (empty beyond the top degree).
    pub fn basis_of_degree(&self, d: usize) -> std::ops::Range<usize> {
        if d + 1 >= self.starts.len() {
            return self.dim()..self.dim();
        }
        self.starts[d]..self.starts[d + 1]
    }

    pub fn hilbert_function(&self) -> Vec<usize> {
        (0..=self.top_degree()).map(|d| self.basis_of_degree(d).len()).collect()
    }

    pub fn is_lattice_graded(&self) -> bool {
        self.lattice_graded
    }

    /// Number of grading classes: flats for lattice-graded algebras, one
    /// otherwise.
    pub fn class_count(&self) -> usize {
        if self.lattice_graded {
            self.dim()
        } else {
            1
        }
    }

    /// Class of a basis element.
    #[inline]
    pub fn class_of(&self, b: usize) -> u32 {
        if self.lattice_graded {
            b as u32
        } else {
            0
        }
    }

    /// Join of classes.
    #[inline]
    pub fn class_join(&self, c: u32, d: u32) -> u32 {
        if !self.lattice_graded {
            return 0;
        }
        match &self.products {
            Products::Monomial(MonomialProducts::Cached { join, .. }) => join[c as usize * self.dim() + d as usize],
            Products::Monomial(MonomialProducts::Gma(g)) => g.lattice().join(c as usize, d as usize) as u32,
            Products::Table(_) => unreachable!("tables are not lattice graded"),
        }
    }

    /// Calls `f(basis, coefficient)` for each term of `b_x b_y`.
    #[inline]
    pub fn for_product(&self, x: usize, y: usize, mut f: impl FnMut(usize, i64)) {
        match &self.products {
            Products::Monomial(MonomialProducts::Cached { product, .. }) => {
                let p = product[x * self.dim() + y];
                if p != NONE {
                    f(p as usize, 1);
                }
            }
            Products::Monomial(MonomialProducts::Gma(g)) => {
                if let Some(p) = g.product(x, y) {
                    f(p, 1);
                }
            }
            Products::Table(t) => {
                for &(k, c) in &t[x * self.dim() + y] {
                    f(k as usize, c);
                }
            }
        }
    }

    /// `b_x b_y` as a list of terms.
    pub fn product(&self, x: usize, y: usize) -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        self.for_product(x, y, |k, c| out.push((k, c)));
        out
    }

    fn check_associative(&self) -> Result<()> {
        let dim = self.dim();
        for x in 1..dim {
            for y in 1..dim {
                for z in 1..dim {
                    if self.degrees[x] + self.degrees[y] + self.degrees[z] > self.top_degree() {
                        continue;
                    }
                    let mut left: HashMap<usize, i64> = HashMap::new();
                    for (p, c) in self.product(x, y) {
                        for (q, e) in self.product(p, z) {
                            *left.entry(q).or_default() += c * e;
                        }
                    }
                    let mut right: HashMap<usize, i64> = HashMap::new();
                    for (p, c) in self.product(y, z) {
                        for (q, e) in self.product(x, p) {
                            *right.entry(q).or_default() += c * e;
                        }
                    }
                    left.retain(|_, v| *v != 0);
                    right.retain(|_, v| *v != 0);
                    if left != right {
                        return Err(Error::BadArgument(format!("product is not associative at ({x}, {y}, {z})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that `A_1^d` spans `A_d` for every `d`, over the rationals.
    fn check_generated_in_degree_one(&self) -> Result<()> {
        let q = Rationals;
        for d in 2..=self.top_degree() {
            let mut e = Echelon::new(q, self.dim());
            for x in self.basis_of_degree(1) {
                for y in self.basis_of_degree(d - 1) {
                    let mut row: Vec<(u32, _)> = self
                        .product(x, y)
                        .into_iter()
                        .map(|(k, c)| (k as u32, q.from_i64(c)))
                        .collect();
                    row.sort_by_key(|t| t.0);
                    if !row.is_empty() {
                        e.insert(&row);
                    }
                }
            }
            if e.rank() != self.basis_of_degree(d).len() {
                return Err(Error::BadArgument(format!("algebra is not generated in degree 1 (degree {d})")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gma::build_gma;
    use crate::matroid::Matroid;

    #[test]
    fn gma_products() {
        let g = build_gma(&Matroid::uniform(2, 3).unwrap()).unwrap();
        let a = StructuredAlgebra::from_gma(&g);
        assert_eq!(a.hilbert_function(), vec![1, 3, 1]);
        assert_eq!(a.product(1, 2), vec![(4, 1)]);
        assert!(a.product(1, 1).is_empty());
        assert_eq!(a.class_join(1, 2), 4);
        assert_eq!(a.coarse().class_join(1, 2), 0);
    }

    #[test]
    fn uncached_products_agree() {
        let g = build_gma(&crate::matroid::NamedMatroid::Trampoline(3).build().unwrap()).unwrap();
        let (a, b) = (StructuredAlgebra::from_gma(&g), StructuredAlgebra::from_gma_cached(&g, false));
        for x in 0..a.dim() {
            for y in 0..a.dim() {
                assert_eq!(a.product(x, y), b.product(x, y));
                assert_eq!(a.class_join(x as u32, y as u32), b.class_join(x as u32, y as u32));
            }
        }
    }

    #[test]
    fn table_checks() {
        let a = StructuredAlgebra::dual_numbers();
        assert_eq!(a.hilbert_function(), vec![1, 1]);
        // k[x]/(x^3) with x^2 as basis element 2
        let b = StructuredAlgebra::from_table(vec![0, 1, 2], &[((1, 1), vec![(2, 1)])]).unwrap();
        assert_eq!(b.product(1, 1), vec![(2, 1)]);
        // degree 2 element not reachable from degree 1
        assert!(StructuredAlgebra::from_table(vec![0, 1, 2], &[]).is_err());
        assert!(StructuredAlgebra::from_table(vec![0, 1, 2], &[((1, 1), vec![(1, 1)])]).is_err());
    }
}
