//! Independent Gröbner basis check for small matroids: Buchberger's
//! S-pair criterion on the squares + Stanley-Reisner + closure-binomial
//! generators, with exact rational arithmetic.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::Matroid;

use super::ElementOrder;

pub const BUCHBERGER_MAX_ELEMENTS: usize = 8;

/// Exponent vector packed one byte per variable, the largest variable in
/// the highest byte, so integer comparison is the lex order.
type Mono = u64;

fn byte(m: Mono, k: usize) -> u64 {
    (m >> (8 * (7 - k))) & 0xff
}

fn degree(m: Mono) -> u64 {
    (0..8).map(|k| byte(m, k)).sum()
}

fn divides(a: Mono, b: Mono) -> bool {
    (0..8).all(|k| byte(a, k) <= byte(b, k))
}

fn lcm(a: Mono, b: Mono) -> Mono {
    (0..8).fold(0, |acc, k| acc | (byte(a, k).max(byte(b, k)) << (8 * (7 - k))))
}

fn coprime(a: Mono, b: Mono) -> bool {
    (0..8).all(|k| byte(a, k) == 0 || byte(b, k) == 0)
}

/// `b / a`, assuming `a | b`.
fn quotient(b: Mono, a: Mono) -> Mono {
    b - a
}

/// Terms sorted by decreasing monomial, no zero coefficients.
type Poly = Vec<(Mono, BigRational)>;

fn sub_scaled(p: &Poly, q: &Poly, c: &BigRational, shift: Mono) -> Poly {
    let mut out = Vec::with_capacity(p.len() + q.len());
    let (mut i, mut j) = (0, 0);
    while i < p.len() || j < q.len() {
        let qm = q.get(j).map(|t| t.0 + shift);
        match (p.get(i), qm) {
            (Some(a), Some(b)) if a.0 == b => {
                let v = &a.1 - c * &q[j].1;
                if !v.is_zero() {
                    out.push((a.0, v));
                }
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a.0 > b => {
                out.push(a.clone());
                i += 1;
            }
            (Some(_), Some(b)) | (None, Some(b)) => {
                out.push((b, -(c * &q[j].1)));
                j += 1;
            }
            (Some(a), None) => {
                out.push(a.clone());
                i += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Top-reduces `p` by `basis`; true when it reaches zero.
fn reduces_to_zero(mut p: Poly, basis: &[Poly]) -> bool {
    while let Some((lm, lc)) = p.first().cloned() {
        let Some(g) = basis.iter().find(|g| divides(g[0].0, lm)) else {
            return false;
        };
        let c = lc / &g[0].1;
        p = sub_scaled(&p, g, &c, quotient(lm, g[0].0));
    }
    true
}

fn monomial(set: ElementSet, var_of: &[usize]) -> Mono {
    set.iter().map(|e| 1u64 << (8 * (7 - var_of[e]))).sum()
}

/// Checks Buchberger's criterion for the generating set
/// `y_i^2`, `y_C` (circuits) and `y_I - y_I'` (independent sets with equal
/// closure) under the lex order of `order`, for all S-pairs whose lcm has
/// degree at most `degree_cap`.
pub fn buchberger_oracle(m: &Matroid, order: &ElementOrder, degree_cap: usize) -> Result<bool> {
    let n = m.ground_size();
    if n > BUCHBERGER_MAX_ELEMENTS {
        return Err(Error::SizeLimit(format!(
            "Buchberger oracle is limited to {BUCHBERGER_MAX_ELEMENTS} elements"
        )));
    }
    if order.len() != n {
        return Err(Error::BadArgument("order does not match ground set".into()));
    }
    m.require_simple()?;
    let var_of = order.positions();
    let one = BigRational::one();
    let mut basis: Vec<Poly> = Vec::new();
    for e in 0..n {
        basis.push(vec![(2u64 << (8 * (7 - var_of[e])), one.clone())]);
    }
    for &c in m.circuits() {
        basis.push(vec![(monomial(c, var_of), one.clone())]);
    }
    let lattice = m.flats()?;
    for flat in lattice.flats() {
        let bases: Vec<ElementSet> = flat
            .elements
            .subsets()
            .filter(|s| s.len() == flat.rank && m.is_independent(*s))
            .collect();
        for (k, &a) in bases.iter().enumerate() {
            for &b in &bases[k + 1..] {
                let (ma, mb) = (monomial(a, var_of), monomial(b, var_of));
                let (hi, lo) = if ma > mb { (ma, mb) } else { (mb, ma) };
                basis.push(vec![(hi, one.clone()), (lo, -one.clone())]);
            }
        }
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (f, g) = (&basis[i], &basis[j]);
            let (a, b) = (f[0].0, g[0].0);
            if coprime(a, b) {
                continue;
            }
            let l = lcm(a, b);
            if degree(l) as usize > degree_cap {
                continue;
            }
            // S = (l/a) f / lc(f) - (l/b) g / lc(g)
            let fa: Poly = f
                .iter()
                .map(|(mm, c)| (mm + quotient(l, a), c / &f[0].1))
                .collect();
            let s = sub_scaled(&fa, g, &(BigRational::one() / &g[0].1), quotient(l, b));
            if !reduces_to_zero(s, &basis) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::NamedMatroid;

    #[test]
    fn small_instances_pass() {
        let m = NamedMatroid::Example21.build().unwrap();
        assert!(buchberger_oracle(&m, &ElementOrder::identity(5), 4).unwrap());
        let u = Matroid::uniform(2, 3).unwrap();
        assert!(buchberger_oracle(&u, &ElementOrder::new(vec![2, 0, 1]).unwrap(), 4).unwrap());
        let b = NamedMatroid::BrokenTrampoline(3).build().unwrap();
        assert!(buchberger_oracle(&b, &ElementOrder::identity(7), 4).unwrap());
    }

    #[test]
    fn incomplete_generating_set_is_detected() {
        // (x^2 - y z, x y) under lex is not a Gröbner basis
        let one = BigRational::one();
        let x2 = 2u64 << 56;
        let yz = (1u64 << 48) | (1u64 << 40);
        let xy = (1u64 << 56) | (1u64 << 48);
        let f: Poly = vec![(x2, one.clone()), (yz, -one.clone())];
        let g: Poly = vec![(xy, one.clone())];
        let l = lcm(x2, xy);
        let fa: Poly = f.iter().map(|(mm, c)| (mm + quotient(l, x2), c.clone())).collect();
        let s = sub_scaled(&fa, &g, &one, quotient(l, xy));
        assert!(!reduces_to_zero(s, &[f, g]));
    }

    #[test]
    fn size_cap() {
        let m = NamedMatroid::AG23.build().unwrap();
        assert!(buchberger_oracle(&m, &ElementOrder::identity(9), 4).is_err());
    }
}
