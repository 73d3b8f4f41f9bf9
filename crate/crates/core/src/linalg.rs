//! Sparse row echelon forms over a [`Field`], with optional tracking of
//! row combinations for kernels.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::field::Field;

/// Sparse vector: `(index, value)` pairs, indices increasing, no zeros.
pub type SparseVec<E> = Vec<(u32, E)>;

const NONE: u32 = u32::MAX;

/// Rows in semi-echelon form: every row has a distinct leading column,
/// leading coefficient one. Rows are reduced only at the leading term.
#[derive(Debug)]
pub struct Echelon<F: Field> {
    field: F,
    pivot_row: Vec<u32>,
    rows: Vec<SparseVec<F::Elem>>,
    /// Combination of inserted vectors producing each row, when tracking.
    combos: Option<Vec<SparseVec<F::Elem>>>,
    inserted: usize,
    vals: Vec<F::Elem>,
    queued: Vec<bool>,
    heap: BinaryHeap<Reverse<u32>>,
    tvals: Vec<F::Elem>,
    ttouched: Vec<u32>,
}

enum Outcome<E> {
    Independent,
    Dependent(SparseVec<E>),
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Self::build(field, ncols, false)
    }

    /// Keeps track of combinations, so that [`Echelon::push`] can return
    /// kernel vectors.
    pub fn tracking(field: F, ncols: usize) -> Self {
        Self::build(field, ncols, true)
    }

    fn build(field: F, ncols: usize, track: bool) -> Self {
        let zero = field.zero();
        Echelon {
            pivot_row: vec![NONE; ncols],
            rows: Vec::new(),
            combos: track.then(Vec::new),
            inserted: 0,
            vals: vec![zero; ncols],
            queued: vec![false; ncols],
            heap: BinaryHeap::new(),
            tvals: Vec::new(),
            ttouched: Vec::new(),
            field,
        }
    }

    pub fn ncols(&self) -> usize {
        self.pivot_row.len()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; true if it was independent of the previous ones.
    pub fn insert(&mut self, row: &[(u32, F::Elem)]) -> bool {
        matches!(self.reduce(row), Outcome::Independent)
    }

    /// Adds the `k`-th vector (k counts all pushes); returns the
    /// coefficients of a linear relation among pushed vectors if it was
    /// dependent.
    pub fn push(&mut self, row: &[(u32, F::Elem)]) -> Option<SparseVec<F::Elem>> {
        match self.reduce(row) {
            Outcome::Independent => None,
            Outcome::Dependent(v) => Some(v),
        }
    }

    /// Whether `row` is in the row space, without modifying it.
    pub fn contains(&mut self, row: &[(u32, F::Elem)]) -> bool {
        let saved = self.combos.take();
        let lead = self.reduce_to_lead(row, false);
        self.combos = saved;
        let independent = lead.is_some();
        self.drain();
        !independent
    }

    fn reduce(&mut self, row: &[(u32, F::Elem)]) -> Outcome<F::Elem> {
        let track = self.combos.is_some();
        let src = self.inserted;
        self.inserted += 1;
        if track {
            if self.tvals.len() <= src {
                self.tvals.resize(src + 1, self.field.zero());
            }
            self.tvals[src] = self.field.one();
            self.ttouched.push(src as u32);
        }
        match self.reduce_to_lead(row, track) {
            Some(c) => {
                let inv = self.field.inv(&self.vals[c as usize]);
                let mut out = self.drain();
                for (_, v) in out.iter_mut() {
                    *v = self.field.mul(v, &inv);
                }
                debug_assert_eq!(out[0].0, c);
                if track {
                    let mut combo = self.drain_tracked();
                    for (_, v) in combo.iter_mut() {
                        *v = self.field.mul(v, &inv);
                    }
                    self.combos.as_mut().unwrap().push(combo);
                }
                self.pivot_row[c as usize] = self.rows.len() as u32;
                self.rows.push(out);
                Outcome::Independent
            }
            None => {
                self.drain();
                let combo = if track { self.drain_tracked() } else { Vec::new() };
                Outcome::Dependent(combo)
            }
        }
    }

    /// Loads `row` and eliminates leading terms until one has no pivot.
    /// Leaves the remainder in the accumulator.
    fn reduce_to_lead(&mut self, row: &[(u32, F::Elem)], track: bool) -> Option<u32> {
        let f = &self.field;
        for (c, v) in row {
            let c = *c as usize;
            self.vals[c] = f.add(&self.vals[c], v);
            if !self.queued[c] {
                self.queued[c] = true;
                self.heap.push(Reverse(c as u32));
            }
        }
        while let Some(&Reverse(c)) = self.heap.peek() {
            let cu = c as usize;
            if f.is_zero(&self.vals[cu]) {
                self.heap.pop();
                self.queued[cu] = false;
                continue;
            }
            let r = self.pivot_row[cu];
            if r == NONE {
                return Some(c);
            }
            self.heap.pop();
            self.queued[cu] = false;
            let factor = std::mem::replace(&mut self.vals[cu], f.zero());
            let prow = &self.rows[r as usize];
            for (j, x) in &prow[1..] {
                let ju = *j as usize;
                self.vals[ju] = f.sub_mul(&self.vals[ju], &factor, x);
                if !self.queued[ju] {
                    self.queued[ju] = true;
                    self.heap.push(Reverse(*j));
                }
            }
            if track {
                let combo = &self.combos.as_ref().unwrap()[r as usize];
                for (k, x) in combo {
                    let ku = *k as usize;
                    if f.is_zero(&self.tvals[ku]) {
                        self.ttouched.push(*k);
                    }
                    self.tvals[ku] = f.sub_mul(&self.tvals[ku], &factor, x);
                }
            }
        }
        None
    }

    /// Empties the accumulator, returning its nonzero entries in order.
    fn drain(&mut self) -> SparseVec<F::Elem> {
        let mut out = Vec::with_capacity(self.heap.len());
        let zero = self.field.zero();
        while let Some(Reverse(c)) = self.heap.pop() {
            let cu = c as usize;
            self.queued[cu] = false;
            let v = std::mem::replace(&mut self.vals[cu], zero.clone());
            if !self.field.is_zero(&v) {
                out.push((c, v));
            }
        }
        out
    }

    fn drain_tracked(&mut self) -> SparseVec<F::Elem> {
        let zero = self.field.zero();
        let mut touched = std::mem::take(&mut self.ttouched);
        touched.sort_unstable();
        touched.dedup();
        let mut out = Vec::with_capacity(touched.len());
        for k in touched {
            let v = std::mem::replace(&mut self.tvals[k as usize], zero.clone());
            if !self.field.is_zero(&v) {
                out.push((k, v));
            }
        }
        out
    }
}

/// Rank of a list of sparse rows.
pub fn rank<F: Field>(field: &F, ncols: usize, rows: &[SparseVec<F::Elem>]) -> usize {
    let mut e = Echelon::new(field.clone(), ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// A basis of the linear relations among `vectors`, each relation given
/// by its coefficients indexed by vector position.
pub fn kernel<F: Field>(field: &F, ncols: usize, vectors: &[SparseVec<F::Elem>]) -> Vec<SparseVec<F::Elem>> {
    let mut e = Echelon::tracking(field.clone(), ncols);
    vectors.iter().filter_map(|v| e.push(v)).collect()
}

/// Dense vector to sparse form.
pub fn sparse_from_dense<F: Field>(field: &F, dense: &[F::Elem]) -> SparseVec<F::Elem> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !field.is_zero(v))
        .map(|(k, v)| (k as u32, v.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn sv(f: &PrimeField, d: &[i64]) -> SparseVec<u32> {
        let dense: Vec<u32> = d.iter().map(|&x| f.from_i64(x)).collect();
        sparse_from_dense(f, &dense)
    }

    #[test]
    fn rank_and_kernel() {
        let f = PrimeField::default();
        let rows = vec![
            sv(&f, &[1, 2, 0, 1]),
            sv(&f, &[0, 1, 1, 0]),
            sv(&f, &[1, 3, 1, 1]),
            sv(&f, &[2, 4, 0, 2]),
            sv(&f, &[0, 0, 0, 0]),
        ];
        assert_eq!(rank(&f, 4, &rows), 2);
        let ker = kernel(&f, 4, &rows);
        assert_eq!(ker.len(), 3);
        for rel in &ker {
            let mut acc = vec![0u32; 4];
            for (k, c) in rel {
                for (j, x) in &rows[*k as usize] {
                    acc[*j as usize] = f.add(&acc[*j as usize], &f.mul(c, x));
                }
            }
            assert!(acc.iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn contains_does_not_modify() {
        let f = PrimeField::default();
        let mut e = Echelon::new(f, 3);
        e.insert(&sv(&f, &[1, 1, 0]));
        assert!(e.contains(&sv(&f, &[2, 2, 0])));
        assert!(!e.contains(&sv(&f, &[0, 1, 0])));
        assert_eq!(e.rank(), 1);
        assert!(e.insert(&sv(&f, &[0, 1, 0])));
    }

    #[test]
    fn characteristic_two_differs() {
        // rows (1,1), (1,-1) are dependent only in characteristic 2
        let two = PrimeField::new(2).unwrap();
        let big = PrimeField::default();
        let rows2 = vec![sv(&two, &[1, 1]), sv(&two, &[1, -1])];
        let rowsb = vec![sv(&big, &[1, 1]), sv(&big, &[1, -1])];
        assert_eq!(rank(&two, 2, &rows2), 1);
        assert_eq!(rank(&big, 2, &rowsb), 2);
        let q = Rationals;
        let rq = vec![vec![(0, q.one()), (1, q.one())], vec![(0, q.one()), (1, q.from_i64(-1))]];
        assert_eq!(rank(&q, 2, &rq), 2);
    }
}
