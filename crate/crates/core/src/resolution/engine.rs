//! Minimal graded free resolutions of cyclic modules `A/I`, built degree
//! by degree.
//!
//! Step `i` finds the generators of `F_i` in each internal degree `j`: the
//! kernel of `∂_{i-1}` in degree `j` has dimension given by the alternating
//! sum of the dimensions of `F_{i-1}, F_{i-2}, ...` (the complex is exact
//! where it is already complete), the part of it reached by generators of
//! lower degree is an explicit image, and the difference is the number of
//! new generators. Explicit kernel vectors are only computed when new
//! generators have to be written down.
//!
//! Generators of degree `j` map into `m F_{i-1}`, so only generators of
//! degree `< j` ever appear in degree-`j` computations.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, SparseVec};

use super::algebra::StructuredAlgebra;

/// Largest number of free-module basis vectors handled in one internal
/// degree.
pub const DEFAULT_SIZE_LIMIT: usize = 40_000_000;

#[derive(Clone, Debug)]
pub struct Generator<E> {
    pub degree: usize,
    pub class: u32,
    /// `∂(g) = Σ c · b · g'` as `(g', b, c)`.
    pub image: Vec<(u32, u32, E)>,
}

#[derive(Clone, Debug)]
pub struct FreeModule<E> {
    /// Generators written down explicitly, by nondecreasing degree.
    pub gens: Vec<Generator<E>>,
    /// Number of generators per `(degree, class)`, including those of the
    /// top degree that are only counted.
    pub counts: BTreeMap<(usize, u32), usize>,
}

impl<E> FreeModule<E> {
    fn new() -> Self {
        FreeModule {
            gens: Vec::new(),
            counts: BTreeMap::new(),
        }
    }

    /// Number of generators of degree `j`.
    pub fn betti(&self, j: usize) -> usize {
        self.counts.range((j, 0)..=(j, u32::MAX)).map(|(_, &n)| n).sum()
    }
}

/// Where a computation hit its size limit: entries `β_{i,j}` are known
/// for `i < step`, and for `i = step, j < degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stop {
    pub step: usize,
    pub degree: usize,
    pub reason: String,
}

/// Truncated minimal free resolution of `A/I`.
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    pub field: F,
    pub modules: Vec<FreeModule<F::Elem>>,
    pub max_step: usize,
    pub max_degree: usize,
    /// Set when a size limit stopped the computation early.
    pub stopped: Option<Stop>,
    ideal_basis: Vec<HashMap<u32, Vec<SparseVec<F::Elem>>>>,
    lattice_graded: bool,
}

/// Free-module basis vectors `(g, b)` with `deg g < j`, grouped by class.
struct Layout {
    offsets: Vec<u32>,
    local: Vec<u32>,
    blocks: HashMap<u32, Vec<(u32, u32)>>,
    total: usize,
}

impl Layout {
    fn new<E>(alg: &StructuredAlgebra, module: &FreeModule<E>, j: usize) -> Self {
        let mut offsets = vec![u32::MAX; module.gens.len()];
        let mut local = Vec::new();
        let mut blocks: HashMap<u32, Vec<(u32, u32)>> = HashMap::new();
        for (gi, g) in module.gens.iter().enumerate() {
            if g.degree >= j {
                break;
            }
            offsets[gi] = local.len() as u32;
            for b in alg.basis_of_degree(j - g.degree) {
                let c = alg.class_join(g.class, alg.class_of(b));
                let block = blocks.entry(c).or_default();
                local.push(block.len() as u32);
                block.push((gi as u32, b as u32));
            }
        }
        let total = local.len();
        Layout {
            offsets,
            local,
            blocks,
            total,
        }
    }

    #[inline]
    fn index<E>(&self, alg: &StructuredAlgebra, module: &FreeModule<E>, j: usize, g: u32, b: usize) -> u32 {
        let d = module.gens[g as usize].degree;
        let start = alg.basis_of_degree(j - d).start;
        self.local[self.offsets[g as usize] as usize + b - start]
    }

    fn block_len(&self, c: u32) -> usize {
        self.blocks.get(&c).map_or(0, |b| b.len())
    }
}

/// `b · ∂(g)` in the coordinates of `layout` (degree `j` of `target`).
fn multiply_image<F: Field>(
    field: &F,
    alg: &StructuredAlgebra,
    target: &FreeModule<F::Elem>,
    layout: &Layout,
    j: usize,
    b: usize,
    image: &[(u32, u32, F::Elem)],
) -> SparseVec<F::Elem> {
    let mut row: Vec<(u32, F::Elem)> = Vec::with_capacity(image.len());
    for (g2, b2, c) in image {
        alg.for_product(b, *b2 as usize, |p, k| {
            let col = layout.index(alg, target, j, *g2, p);
            let v = if k == 1 { c.clone() } else { field.mul(c, &field.from_i64(k)) };
            row.push((col, v));
        });
    }
    merge(field, row)
}

fn merge<F: Field>(field: &F, mut row: Vec<(u32, F::Elem)>) -> SparseVec<F::Elem> {
    row.sort_unstable_by_key(|t| t.0);
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

/// Dimensions per class of the degree-`j` part of a free module.
fn module_dims<E>(alg: &StructuredAlgebra, module: &FreeModule<E>, j: usize) -> HashMap<u32, i64> {
    let mut out: HashMap<u32, i64> = HashMap::new();
    for (&(d, c), &n) in module.counts.range(..=(j, u32::MAX)) {
        for b in alg.basis_of_degree(j - d) {
            *out.entry(alg.class_join(c, alg.class_of(b))).or_default() += n as i64;
        }
    }
    out
}

impl<F: Field> Resolution<F> {
    /// Resolves `A/I` where `I` is generated by `ideal` (elements as
    /// `(basis, coefficient)` lists), through homological degree
    /// `max_step` and internal degree `max_degree`.
    ///
    /// With a lattice-graded algebra every ideal generator must be a
    /// single basis element; use [`StructuredAlgebra::coarse`] otherwise.
    pub fn compute(
        alg: &StructuredAlgebra,
        field: &F,
        ideal: &[Vec<(usize, i64)>],
        max_step: usize,
        max_degree: usize,
        size_limit: usize,
    ) -> Result<Self> {
        if alg.is_lattice_graded() && ideal.iter().any(|x| x.iter().filter(|t| t.1 != 0).count() > 1) {
            return Err(Error::BadArgument(
                "ideal generators must be basis elements for a lattice-graded algebra".into(),
            ));
        }
        let mut res = Resolution {
            field: field.clone(),
            modules: Vec::new(),
            max_step,
            max_degree,
            stopped: None,
            ideal_basis: Vec::new(),
            lattice_graded: alg.is_lattice_graded(),
        };
        let mut f0 = FreeModule::new();
        f0.gens.push(Generator {
            degree: 0,
            class: alg.class_of(0),
            image: Vec::new(),
        });
        f0.counts.insert((0, alg.class_of(0)), 1);
        res.modules.push(f0);
        res.ideal_basis = (0..=max_degree).map(|j| res.ideal_part(alg, ideal, j)).collect();

        for i in 1..=max_step {
            res.modules.push(FreeModule::new());
            for j in i..=max_degree {
                if let Err(e) = res.step(alg, i, j, size_limit) {
                    match e {
                        Error::SizeLimit(msg) => {
                            res.stopped = Some(Stop { step: i, degree: j, reason: msg });
                            return Ok(res);
                        }
                        e => return Err(e),
                    }
                }
            }
        }
        Ok(res)
    }

    /// Basis of `I_j` per class, in the coordinates of the degree-`j`
    /// layout of `F_0`.
    fn ideal_part(&self, alg: &StructuredAlgebra, ideal: &[Vec<(usize, i64)>], j: usize) -> HashMap<u32, Vec<SparseVec<F::Elem>>> {
        let f = &self.field;
        let f0 = &self.modules[0];
        if j == 0 {
            return HashMap::new();
        }
        let layout = Layout::new(alg, f0, j);
        let mut echelons: BTreeMap<u32, (Echelon<F>, Vec<SparseVec<F::Elem>>)> = BTreeMap::new();
        for x in ideal {
            let x: Vec<(usize, i64)> = x.iter().copied().filter(|t| t.1 != 0).collect();
            let Some(&(first, _)) = x.first() else { continue };
            let d = alg.degree(first);
            if d > j || d == 0 {
                continue;
            }
            let image: Vec<(u32, u32, F::Elem)> = x.iter().map(|&(k, c)| (0, k as u32, f.from_i64(c))).collect();
            for b in alg.basis_of_degree(j - d) {
                let row = multiply_image(f, alg, f0, &layout, j, b, &image);
                if row.is_empty() {
                    continue;
                }
                let c = alg.class_join(alg.class_of(b), alg.class_of(first));
                let (e, basis) = echelons
                    .entry(c)
                    .or_insert_with(|| (Echelon::new(f.clone(), layout.block_len(c)), Vec::new()));
                if e.insert(&row) {
                    basis.push(row);
                }
            }
        }
        echelons.into_iter().map(|(c, (_, basis))| (c, basis)).collect()
    }

    fn kernel_dims(&self, alg: &StructuredAlgebra, i: usize, j: usize) -> HashMap<u32, i64> {
        let mut ker: HashMap<u32, i64> = self.ideal_basis[j].iter().map(|(&c, b)| (c, b.len() as i64)).collect();
        for k in 1..i {
            let dims = module_dims(alg, &self.modules[k], j);
            let mut next = dims;
            for (c, v) in &ker {
                *next.entry(*c).or_default() -= v;
            }
            ker = next;
        }
        ker.retain(|_, v| *v != 0);
        ker
    }

    /// Generators of `F_i` in degree `j`.
    fn step(&mut self, alg: &StructuredAlgebra, i: usize, j: usize, size_limit: usize) -> Result<()> {
        let f = &self.field;
        let ker = self.kernel_dims(alg, i, j);
        if let Some((c, v)) = ker.iter().find(|(_, v)| **v < 0) {
            return Err(Error::MismatchBug(format!(
                "negative kernel dimension {v} at step {i}, degree {j}, class {c}"
            )));
        }
        if ker.is_empty() {
            return Ok(());
        }
        let explicit = j < self.max_degree;
        let (cur, prev) = (&self.modules[i], &self.modules[i - 1]);
        let rows = Layout::new(alg, cur, j);
        let cols = Layout::new(alg, prev, j);
        if rows.total > size_limit || cols.total > size_limit {
            return Err(Error::SizeLimit(format!(
                "{} and {} basis vectors in degree {j}",
                rows.total, cols.total
            )));
        }
        let mut classes: Vec<(u32, i64)> = ker.into_iter().collect();
        classes.sort_unstable();

        let old: Vec<(u32, usize, Option<Echelon<F>>)> = classes
            .par_iter()
            .map(|&(c, dk)| {
                let mut e = Echelon::new(f.clone(), cols.block_len(c));
                if let Some(pairs) = rows.blocks.get(&c) {
                    for &(g, b) in pairs {
                        let row = multiply_image(f, alg, prev, &cols, j, b as usize, &cur.gens[g as usize].image);
                        if !row.is_empty() {
                            e.insert(&row);
                        }
                    }
                }
                let new = dk as usize - e.rank().min(dk as usize);
                if e.rank() > dk as usize {
                    return Err(Error::MismatchBug(format!(
                        "image of rank {} exceeds kernel dimension {dk} at step {i}, degree {j}",
                        e.rank()
                    )));
                }
                Ok((c, new, (new > 0 && explicit).then_some(e)))
            })
            .collect::<Result<_>>()?;

        let needs_kernel = old.iter().any(|t| t.2.is_some());
        let below = (needs_kernel && i >= 2).then(|| Layout::new(alg, &self.modules[i - 2], j));
        if let Some(l) = &below {
            if l.total > size_limit {
                return Err(Error::SizeLimit(format!("{} basis vectors in degree {j}", l.total)));
            }
        }
        let found: Vec<(u32, usize, Vec<Generator<F::Elem>>)> = old
            .into_par_iter()
            .map(|(c, new, e)| {
                let Some(mut e) = e else { return Ok((c, new, Vec::new())) };
                let pairs = cols.blocks.get(&c).map(|v| v.as_slice()).unwrap_or(&[]);
                let kernel: Vec<SparseVec<F::Elem>> = if i == 1 {
                    self.ideal_basis[j].get(&c).cloned().unwrap_or_default()
                } else {
                    let l = below.as_ref().expect("layout below");
                    let pp = &self.modules[i - 2];
                    let mut t = Echelon::tracking(f.clone(), l.block_len(c));
                    let mut kernel = Vec::new();
                    for &(g, b) in pairs {
                        let row = multiply_image(f, alg, pp, l, j, b as usize, &prev.gens[g as usize].image);
                        if let Some(rel) = t.push(&row) {
                            kernel.push(rel);
                        }
                    }
                    kernel
                };
                let mut gens = Vec::with_capacity(new);
                for v in kernel {
                    if gens.len() == new {
                        break;
                    }
                    if e.insert(&v) {
                        let image = v.into_iter().map(|(k, x)| (pairs[k as usize].0, pairs[k as usize].1, x)).collect();
                        gens.push(Generator { degree: j, class: c, image });
                    }
                }
                if gens.len() != new {
                    return Err(Error::MismatchBug(format!(
                        "found {} of {new} new generators at step {i}, degree {j}",
                        gens.len()
                    )));
                }
                Ok((c, new, gens))
            })
            .collect::<Result<_>>()?;

        let module = &mut self.modules[i];
        for (c, new, gens) in found {
            if new > 0 {
                module.counts.insert((j, c), new);
            }
            module.gens.extend(gens);
        }
        Ok(())
    }

    pub fn betti(&self, i: usize, j: usize) -> usize {
        self.modules.get(i).map_or(0, |m| m.betti(j))
    }

    /// Checks `∂∂ = 0` on every explicit generator, that `∂(F_1)` lies in
    /// `I`, and minimality: no image uses a degree-0 coefficient.
    pub fn verify(&self, alg: &StructuredAlgebra) -> Result<()> {
        let f = &self.field;
        for (i, module) in self.modules.iter().enumerate().skip(1) {
            for (gi, g) in module.gens.iter().enumerate() {
                if g.image.iter().any(|t| alg.degree(t.1 as usize) == 0) {
                    return Err(Error::MismatchBug(format!("generator {gi} of F_{i} is not minimal")));
                }
                if i == 1 {
                    let layout = Layout::new(alg, &self.modules[0], g.degree);
                    let row: SparseVec<F::Elem> = merge(
                        f,
                        g.image
                            .iter()
                            .map(|(g2, b, x)| (layout.index(alg, &self.modules[0], g.degree, *g2, *b as usize), x.clone()))
                            .collect(),
                    );
                    let basis = self.ideal_basis[g.degree].get(&g.class).cloned().unwrap_or_default();
                    let mut e = Echelon::new(f.clone(), layout.block_len(g.class));
                    for v in &basis {
                        e.insert(v);
                    }
                    if !e.contains(&row) {
                        return Err(Error::MismatchBug(format!("image of generator {gi} of F_1 is not in the ideal")));
                    }
                    continue;
                }
                let mut acc: HashMap<(u32, u32), F::Elem> = HashMap::new();
                for (g2, b, x) in &g.image {
                    for (g3, b2, y) in &module_gen(&self.modules[i - 1], *g2).image {
                        alg.for_product(*b as usize, *b2 as usize, |p, k| {
                            let v = f.mul(&f.mul(x, y), &f.from_i64(k));
                            let e = acc.entry((*g3, p as u32)).or_insert_with(|| f.zero());
                            *e = f.add(e, &v);
                        });
                    }
                }
                if acc.values().any(|v| !f.is_zero(v)) {
                    return Err(Error::MismatchBug(format!("∂∂ is nonzero on generator {gi} of F_{i}")));
                }
            }
        }
        Ok(())
    }

    pub fn is_lattice_graded(&self) -> bool {
        self.lattice_graded
    }
}

fn module_gen<E>(m: &FreeModule<E>, g: u32) -> &Generator<E> {
    &m.gens[g as usize]
}
