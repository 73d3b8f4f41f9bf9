//! Betti tables of the residue field and of cyclic quotients, Hilbert and
//! Poincaré series, and the identities relating them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::gma::build_gma;
use crate::graph::Graph;
use crate::matroid::Matroid;

use super::algebra::StructuredAlgebra;
use super::engine::{Resolution, DEFAULT_SIZE_LIMIT};
use super::table::BettiTable;

/// Power series in `s, t` with coefficients of `s^j t^i` for
/// `i ≤ max_i`, `j ≤ max_j`. Keys are `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedBiSeries {
    coeffs: BTreeMap<(usize, usize), i64>,
    pub max_i: usize,
    pub max_j: usize,
}

impl TruncatedBiSeries {
    pub fn zero(max_i: usize, max_j: usize) -> Self {
        TruncatedBiSeries {
            coeffs: BTreeMap::new(),
            max_i,
            max_j,
        }
    }

    pub fn one(max_i: usize, max_j: usize) -> Self {
        let mut s = Self::zero(max_i, max_j);
        s.add_term(0, 0, 1);
        s
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: i64) {
        if i > self.max_i || j > self.max_j || c == 0 {
            return;
        }
        let e = self.coeffs.entry((i, j)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&(i, j));
        }
    }

    /// Coefficient of `s^j t^i`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.coeffs.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.coeffs.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), c) in other.terms() {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), c) in other.terms() {
            out.add_term(i, j, -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.max_i.min(other.max_i), self.max_j.min(other.max_j));
        for ((i, j), c) in self.terms() {
            for ((k, l), d) in other.terms() {
                out.add_term(i + k, j + l, c * d);
            }
        }
        out
    }

    /// Multiplies by `s^a t^b`.
    pub fn shift(&self, b: usize, a: usize) -> Self {
        let mut out = Self::zero(self.max_i, self.max_j);
        for ((i, j), c) in self.terms() {
            out.add_term(i + b, j + a, c);
        }
        out
    }

    /// Coefficients of `t^0..=t^max_i` after setting `s = 1`.
    pub fn at_s_one(&self) -> Vec<i64> {
        let mut v = vec![0; self.max_i + 1];
        for ((i, _), c) in self.terms() {
            v[i] += c;
        }
        v
    }
}

/// `P(s, t) = Σ β_{i,j} s^j t^i` within the bounds of the table.
pub fn poincare_series(table: &BettiTable) -> TruncatedBiSeries {
    let mut p = TruncatedBiSeries::zero(table.max_step, table.max_degree);
    for ((i, j), b) in table.entries() {
        p.add_term(i, j, b as i64);
    }
    p
}

/// `HS(t) = Σ dim A_d t^d`, stored with `s`-exponent 0.
pub fn hilbert_series(alg: &StructuredAlgebra) -> TruncatedBiSeries {
    let h = alg.hilbert_function();
    let mut s = TruncatedBiSeries::zero(h.len() - 1, 0);
    for (d, &w) in h.iter().enumerate() {
        s.add_term(d, 0, w as i64);
    }
    s
}

fn resolve_with<F: Field>(
    alg: &StructuredAlgebra,
    field: &F,
    ideal: &[Vec<(usize, i64)>],
    max_step: usize,
    max_degree: usize,
) -> Result<BettiTable> {
    let res = Resolution::compute(alg, field, ideal, max_step, max_degree, DEFAULT_SIZE_LIMIT)?;
    res.verify(alg)?;
    Ok(BettiTable::from_resolution(&res))
}

/// Resolution of `A/I` over GF(p), or over the rationals for `p = 0`.
fn resolve(
    alg: &StructuredAlgebra,
    characteristic: u32,
    ideal: &[Vec<(usize, i64)>],
    max_step: usize,
    max_degree: usize,
) -> Result<BettiTable> {
    if characteristic == 0 {
        resolve_with(alg, &Rationals, ideal, max_step, max_degree)
    } else {
        resolve_with(alg, &PrimeField::new(characteristic)?, ideal, max_step, max_degree)
    }
}

fn maximal_ideal(alg: &StructuredAlgebra) -> Vec<Vec<(usize, i64)>> {
    alg.basis_of_degree(1).map(|b| vec![(b, 1)]).collect()
}

/// Betti table of the residue field through homological degree
/// `max_step` and internal degree `max_degree`.
pub fn betti_table_of_k(alg: &StructuredAlgebra, characteristic: u32, max_step: usize, max_degree: usize) -> Result<BettiTable> {
    resolve(alg, characteristic, &maximal_ideal(alg), max_step, max_degree)
}

/// Betti table of `A/(gens)` as an `A`-module.
pub fn betti_table_of_cyclic_quotient(
    alg: &StructuredAlgebra,
    gens: &[Vec<(usize, i64)>],
    characteristic: u32,
    max_step: usize,
    max_degree: usize,
) -> Result<BettiTable> {
    let homogeneous = gens.iter().all(|x| x.iter().filter(|t| t.1 != 0).count() <= 1);
    if let Some(x) = gens.iter().flatten().find(|t| t.0 >= alg.dim()) {
        return Err(Error::BadArgument(format!("{} is not a basis element", x.0)));
    }
    for x in gens {
        let degrees: Vec<usize> = x.iter().filter(|t| t.1 != 0).map(|t| alg.degree(t.0)).collect();
        if degrees.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::BadArgument("ideal generators must be homogeneous".into()));
        }
    }
    if alg.is_lattice_graded() && !homogeneous {
        resolve(&alg.coarse(), characteristic, gens, max_step, max_degree)
    } else {
        resolve(alg, characteristic, gens, max_step, max_degree)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KoszulProbe {
    /// Largest `i` with `β_{k,j} = 0` for all `k ≤ i` and `j ≠ k` in range.
    pub linear_through: usize,
    pub first_nonlinear: Option<(usize, usize)>,
    pub max_step: usize,
    pub max_degree: usize,
    #[serde(skip)]
    pub table: BettiTable,
}

/// Looks for nonlinear entries `β_{i,j}`, `j ≤ i + strands`, through
/// `max_step`.
pub fn koszul_probe(alg: &StructuredAlgebra, characteristic: u32, max_step: usize, strands: usize) -> Result<KoszulProbe> {
    let max_degree = max_step + strands;
    let table = betti_table_of_k(alg, characteristic, max_step, max_degree)?;
    let first_nonlinear = table.entries().map(|(k, _)| k).find(|&(i, j)| j != i);
    let mut limit = match table.stopped_at {
        Some((s, _)) => s.saturating_sub(1),
        None => max_step,
    };
    if let Some((i, _)) = first_nonlinear {
        limit = limit.min(i.saturating_sub(1));
    }
    Ok(KoszulProbe {
        linear_through: limit,
        first_nonlinear,
        max_step,
        max_degree,
        table,
    })
}

/// Coefficients of `HS_A(t) · P^A(-t) - 1` for `t^0..=t^max_step`, where
/// `P^A(t)` has the total Betti numbers of the residue field (counted
/// for internal degrees up to `max_step + 2`). Zero for Koszul algebras.
pub fn check_hs_poincare_identity(alg: &StructuredAlgebra, characteristic: u32, max_step: usize) -> Result<Vec<i64>> {
    let table = betti_table_of_k(alg, characteristic, max_step, max_step + 2)?;
    if let Some((i, j)) = table.stopped_at {
        return Err(Error::SizeLimit(format!("resolution stopped at step {i}, degree {j}")));
    }
    Ok(hs_poincare_residual(alg, &table))
}

/// The residual of [`check_hs_poincare_identity`] for an already computed
/// Betti table of the residue field.
pub fn hs_poincare_residual(alg: &StructuredAlgebra, table: &BettiTable) -> Vec<i64> {
    let h = alg.hilbert_function();
    let p = table.totals();
    (0..=table.max_step)
        .map(|k| {
            let v: i64 = (0..=k)
                .map(|i| {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    h.get(k - i).copied().unwrap_or(0) as i64 * sign * p[i] as i64
                })
                .sum();
            v - i64::from(k == 0)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctionalEquationReport {
    pub n: usize,
    pub max_step: usize,
    pub max_degree: usize,
    /// Nonzero coefficients of `P^T (1 - st(1 + P^B_{B/(y_a)})) - P^B`.
    pub residual: Vec<((usize, usize), i64)>,
    pub trampoline: Vec<((usize, usize), u64)>,
    pub broken: Vec<((usize, usize), u64)>,
    pub quotient: Vec<((usize, usize), u64)>,
}

impl FunctionalEquationReport {
    pub fn holds(&self) -> bool {
        self.residual.is_empty()
    }
}

/// Compares the Poincaré series of the `n`-trampoline `T`, the broken
/// `n`-trampoline `B` and of `B/(y_a)` over `B`, `a = v_1 v_n`, through
/// homological degree `max_step` and internal degree `max_step + 2`.
pub fn check_trampoline_functional_equation(n: usize, characteristic: u32, max_step: usize) -> Result<FunctionalEquationReport> {
    let max_degree = max_step + 2;
    let t = Graph::trampoline(n)?;
    let b = Graph::broken_trampoline(n)?;
    let alg_t = StructuredAlgebra::from_gma(&build_gma(&Matroid::from_graph(&t)?)?);
    let gma_b = build_gma(&Matroid::from_graph(&b)?)?;
    let alg_b = StructuredAlgebra::from_gma(&gma_b);
    let a = b
        .edge_id(0, n - 1)
        .ok_or_else(|| Error::MismatchBug("broken trampoline has no edge v1 vn".into()))?;

    let pt = betti_table_of_k(&alg_t, characteristic, max_step, max_degree)?;
    let pb = betti_table_of_k(&alg_b, characteristic, max_step, max_degree)?;
    let pm = betti_table_of_cyclic_quotient(&alg_b, &[vec![(gma_b.generator(a), 1)]], characteristic, max_step, max_degree)?;
    for table in [&pt, &pb, &pm] {
        if let Some((i, j)) = table.stopped_at {
            return Err(Error::SizeLimit(format!("resolution stopped at step {i}, degree {j}")));
        }
    }
    let (st, sb, sm) = (poincare_series(&pt), poincare_series(&pb), poincare_series(&pm));
    let one = TruncatedBiSeries::one(max_step, max_degree);
    let denominator = one.sub(&one.add(&sm).shift(1, 1));
    let residual = st.mul(&denominator).sub(&sb);
    Ok(FunctionalEquationReport {
        n,
        max_step,
        max_degree,
        residual: residual.terms().collect(),
        trampoline: pt.entries().collect(),
        broken: pb.entries().collect(),
        quotient: pm.entries().collect(),
    })
}

/// Whether the Betti tables of the residue field agree over the given
/// prime fields, with internal degrees up to `max_step + 2`.
pub fn cross_characteristic_check(alg: &StructuredAlgebra, primes: &[u32], max_step: usize) -> Result<bool> {
    if primes.len() < 2 {
        log::warn!("cross-characteristic check with fewer than two primes is vacuous");
        return Ok(true);
    }
    let tables = primes
        .iter()
        .map(|&p| betti_table_of_k(alg, p, max_step, max_step + 2))
        .collect::<Result<Vec<_>>>()?;
    Ok(tables.windows(2).all(|w| w[0].same_numbers(&w[1])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::NamedMatroid;

    fn named(n: NamedMatroid) -> StructuredAlgebra {
        StructuredAlgebra::from_gma(&build_gma(&n.build().unwrap()).unwrap())
    }

    #[test]
    fn dual_numbers() {
        let a = StructuredAlgebra::dual_numbers();
        let t = betti_table_of_k(&a, 32003, 5, 7).unwrap();
        assert_eq!(t.row(0), vec![1; 6]);
        assert_eq!(t.entries().count(), 6);
        assert!(check_hs_poincare_identity(&a, 32003, 6).unwrap().iter().all(|&c| c == 0));
    }

    #[test]
    fn u23_is_linear() {
        let a = StructuredAlgebra::from_gma(&build_gma(&Matroid::uniform(2, 3).unwrap()).unwrap());
        let t = betti_table_of_k(&a, 32003, 3, 5).unwrap();
        assert_eq!(t.get(1, 1), 3);
        // 1 / HS(-t) = 1 / (1 - 3t + t^2)
        assert_eq!(t.row(0), vec![1, 3, 8, 21]);
        assert!(t.entries().all(|((i, j), _)| i == j));
        let q = betti_table_of_k(&a, 0, 3, 5).unwrap();
        assert!(q.same_numbers(&t));
        let probe = koszul_probe(&a, 32003, 4, 2).unwrap();
        assert_eq!((probe.linear_through, probe.first_nonlinear), (4, None));
    }

    #[test]
    fn trivial_quotients() {
        let a = named(NamedMatroid::Example21);
        let zero = betti_table_of_cyclic_quotient(&a, &[], 32003, 3, 5).unwrap();
        assert_eq!(zero.entries().collect::<Vec<_>>(), vec![((0, 0), 1)]);
        let m = maximal_ideal(&a);
        let by_m = betti_table_of_cyclic_quotient(&a, &m, 32003, 3, 5).unwrap();
        assert!(by_m.same_numbers(&betti_table_of_k(&a, 32003, 3, 5).unwrap()));
    }

    #[test]
    fn trampoline3() {
        let a = named(NamedMatroid::Trampoline(3));
        let t = betti_table_of_k(&a, 32003, 4, 6).unwrap();
        println!("{}", t.to_text());
        assert_eq!(t.row(0), vec![1, 9, 53, 260, 1156]);
        assert_eq!(t.get(4, 5), 1);
        assert_eq!(t.entries().count(), 6);
    }

    #[test]
    fn rational_oracle_agrees() {
        for n in [NamedMatroid::Example21, NamedMatroid::Uniform(2, 4), NamedMatroid::BrokenTrampoline(3), NamedMatroid::Fano] {
            let a = named(n.clone());
            assert!(a.dim() <= 40);
            let p = betti_table_of_k(&a, 32003, 4, 6).unwrap();
            let q = betti_table_of_k(&a, 0, 4, 6).unwrap();
            assert!(p.same_numbers(&q), "{n}");
        }
    }

    #[test]
    fn coarse_grading_agrees() {
        let a = named(NamedMatroid::Trampoline(3));
        let fine = betti_table_of_k(&a, 32003, 3, 5).unwrap();
        let coarse = betti_table_of_k(&a.coarse(), 32003, 3, 5).unwrap();
        assert!(fine.same_numbers(&coarse));
    }

    #[test]
    fn truncation_is_stable() {
        let a = named(NamedMatroid::BrokenTrampoline(3));
        let small = betti_table_of_k(&a, 32003, 3, 4).unwrap();
        let big = betti_table_of_k(&a, 32003, 3, 6).unwrap();
        for ((i, j), v) in big.entries() {
            if small.is_known(i, j) {
                assert_eq!(small.get(i, j), v);
            }
        }
    }

    #[test]
    fn series_identities() {
        let b = named(NamedMatroid::BrokenTrampoline(3));
        assert_eq!(check_hs_poincare_identity(&b, 32003, 4).unwrap(), vec![0; 5]);
        let t = named(NamedMatroid::Trampoline(3));
        let r = check_hs_poincare_identity(&t, 32003, 5).unwrap();
        assert!(r.iter().any(|&c| c != 0));
        let report = check_trampoline_functional_equation(3, 32003, 4).unwrap();
        assert!(report.holds(), "{:?}", report.residual);
    }

    #[test]
    fn euler_characteristic() {
        // Σ (-1)^i β_{i,j} t^j times HS(t) is 1 in degrees covered by all steps
        let a = named(NamedMatroid::Trampoline(3));
        let t = betti_table_of_k(&a, 32003, 5, 5).unwrap();
        let h = a.hilbert_function();
        for d in 0..=5usize {
            let v: i64 = (0..=d)
                .map(|j| {
                    let chi: i64 = (0..=j).map(|i| if i % 2 == 0 { 1 } else { -1 } * t.get(i, j) as i64).sum();
                    chi * h.get(d - j).copied().unwrap_or(0) as i64
                })
                .sum();
            assert_eq!(v, i64::from(d == 0), "degree {d}");
        }
    }

    #[test]
    fn characteristics() {
        let u = named(NamedMatroid::Uniform(2, 4));
        assert!(cross_characteristic_check(&u, &[2, 3, 5], 4).unwrap());
        assert!(cross_characteristic_check(&u, &[7], 4).unwrap());
        let t = named(NamedMatroid::Trampoline(3));
        assert!(cross_characteristic_check(&t, &[2, 32003], 4).unwrap());
    }

    #[test]
    fn hilbert_series_of_example() {
        let a = named(NamedMatroid::Example21);
        assert_eq!(hilbert_series(&a).at_s_one(), vec![1, 5, 6, 1]);
    }

    #[test]
    fn non_monomial_quotient() {
        // over the 3-trampoline, (0 : y_b) = (y_b, y_a - y_c)
        let g = Graph::trampoline(3).unwrap();
        let gma = build_gma(&Matroid::from_graph(&g).unwrap()).unwrap();
        let a = StructuredAlgebra::from_gma(&gma);
        let (ea, eb, ec) = (g.edge_id(0, 2).unwrap(), g.edge_id(0, 5).unwrap(), g.edge_id(2, 5).unwrap());
        let gens = vec![vec![(gma.generator(eb), 1)], vec![(gma.generator(ea), 1), (gma.generator(ec), -1)]];
        assert!(Resolution::compute(&a, &PrimeField::default(), &gens, 2, 4, DEFAULT_SIZE_LIMIT).is_err());
        let t = betti_table_of_cyclic_quotient(&a, &gens, 32003, 2, 4).unwrap();
        assert_eq!(t.get(0, 0), 1);
        assert_eq!(t.get(1, 1), 2);
    }
}
