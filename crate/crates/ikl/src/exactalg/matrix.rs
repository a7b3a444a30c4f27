use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use super::{Coeff, Laurent};

/// Sparse vector: basis index to nonzero coefficient.
pub type SparseVec<C> = BTreeMap<usize, Laurent<C>>;

pub fn vec_axpy<C: Coeff>(acc: &mut SparseVec<C>, a: &Laurent<C>, x: &SparseVec<C>) {
    if a.is_zero() {
        return;
    }
    for (i, v) in x {
        let t = a * v;
        add_entry(acc, *i, &t);
    }
}

pub fn add_entry<C: Coeff>(acc: &mut SparseVec<C>, i: usize, v: &Laurent<C>) {
    if v.is_zero() {
        return;
    }
    let slot = acc.entry(i).or_default();
    *slot += v;
    if slot.is_zero() {
        acc.remove(&i);
    }
}

pub fn vec_bar<C: Coeff>(x: &SparseVec<C>) -> SparseVec<C> {
    x.iter().map(|(i, v)| (*i, v.bar())).collect()
}

/// Sparse matrix over `Z[q, q^-1]`, stored by columns.
///
/// Column `j` is the image of basis vector `j`, so composition `a * b`
/// means "apply `b` first".
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat<C: Coeff> {
    nrows: usize,
    cols: Vec<SparseVec<C>>,
}

impl<C: Coeff> Mat<C> {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Mat {
            nrows,
            cols: vec![BTreeMap::new(); ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for (j, c) in m.cols.iter_mut().enumerate() {
            c.insert(j, Laurent::one());
        }
        m
    }

    pub fn from_cols(nrows: usize, cols: Vec<SparseVec<C>>) -> Self {
        let cols = cols
            .into_iter()
            .map(|c| c.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Mat { nrows, cols }
    }

    /// Diagonal matrix.
    pub fn diag(d: Vec<Laurent<C>>) -> Self {
        let n = d.len();
        let cols = d
            .into_iter()
            .enumerate()
            .map(|(j, v)| {
                let mut c = BTreeMap::new();
                if !v.is_zero() {
                    c.insert(j, v);
                }
                c
            })
            .collect();
        Mat { nrows: n, cols }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &SparseVec<C> {
        &self.cols[j]
    }

    pub fn cols(&self) -> &[SparseVec<C>] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Laurent<C> {
        self.cols[j].get(&i).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: Laurent<C>) {
        if v.is_zero() {
            self.cols[j].remove(&i);
        } else {
            self.cols[j].insert(i, v);
        }
    }

    /// Nonzero entries as (row, col, value), column-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Laurent<C>)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn apply(&self, x: &SparseVec<C>) -> SparseVec<C> {
        let mut out = BTreeMap::new();
        for (j, a) in x {
            vec_axpy(&mut out, a, &self.cols[*j]);
        }
        out
    }

    pub fn scale(&self, a: &Laurent<C>) -> Self {
        Mat {
            nrows: self.nrows,
            cols: self
                .cols
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|(i, v)| (*i, a * v))
                        .filter(|(_, v)| !v.is_zero())
                        .collect()
                })
                .collect(),
        }
    }

    /// Entrywise `q -> q^-1`.
    pub fn bar(&self) -> Self {
        Mat {
            nrows: self.nrows,
            cols: self.cols.iter().map(vec_bar).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.ncols(), self.nrows);
        for (i, j, v) in self.entries() {
            t.cols[i].insert(j, v.clone());
        }
        t
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::identity(self.ncols());
        for _ in 0..n {
            out = self * &out;
        }
        out
    }

    /// Submatrix on the given row and column index lists.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> Self {
        let pos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(a, r)| (*r, a)).collect();
        let cs = cols
            .iter()
            .map(|j| {
                self.cols[*j]
                    .iter()
                    .filter_map(|(i, v)| pos.get(i).map(|a| (*a, v.clone())))
                    .collect()
            })
            .collect();
        Mat {
            nrows: rows.len(),
            cols: cs,
        }
    }

    /// The entry of largest absolute exponent, as a witness for nonzero matrices.
    pub fn max_degree_entry(&self) -> Option<(usize, usize, Laurent<C>)> {
        self.entries()
            .max_by_key(|(i, j, v)| (v.degree_span(), std::cmp::Reverse((*j, *i))))
            .map(|(i, j, v)| (i, j, v.clone()))
    }

    /// Kronecker product with explicit index map `(i, j) -> index`.
    pub fn kron_with<F: Fn(usize, usize) -> usize>(&self, other: &Self, dim: usize, idx: F) -> Self {
        let mut out = Self::zero(dim, dim);
        for (j1, c1) in self.cols.iter().enumerate() {
            for (j2, c2) in other.cols.iter().enumerate() {
                let col = &mut out.cols[idx(j1, j2)];
                for (i1, v1) in c1 {
                    for (i2, v2) in c2 {
                        add_entry(col, idx(*i1, *i2), &(v1 * v2));
                    }
                }
            }
        }
        out
    }

    /// Inverse of a unitriangular matrix whose support is acyclic.
    /// `order` lists indices so that every column `j` is supported on rows
    /// appearing no later than `j` in `order`.
    pub fn unitriangular_inverse(&self, order: &[usize]) -> Option<Self> {
        let n = self.ncols();
        let pos: BTreeMap<usize, usize> = order.iter().enumerate().map(|(a, i)| (*i, a)).collect();
        let mut inv = Self::zero(n, n);
        // solve self * x_j = e_j, column by column, back-substituting from j down
        for &j in order {
            let mut rhs: SparseVec<C> = BTreeMap::new();
            rhs.insert(j, Laurent::one());
            let mut x: SparseVec<C> = BTreeMap::new();
            while let Some((&i, _)) = rhs.iter().max_by_key(|(i, _)| pos[*i]) {
                let v = rhs.remove(&i).unwrap();
                if !self.get(i, i).is_one() {
                    return None;
                }
                for (r, a) in &self.cols[i] {
                    if *r != i {
                        if pos[r] > pos[&i] {
                            return None;
                        }
                        add_entry(&mut rhs, *r, &-(&v * a));
                    }
                }
                add_entry(&mut x, i, &v);
            }
            inv.cols[j] = x;
        }
        Some(inv)
    }
}

impl<'a, C: Coeff> Mul<&'a Mat<C>> for &'a Mat<C> {
    type Output = Mat<C>;
    fn mul(self, b: &Mat<C>) -> Mat<C> {
        assert_eq!(self.ncols(), b.nrows, "dimension mismatch");
        Mat {
            nrows: self.nrows,
            cols: b.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }
}

impl<'a, C: Coeff> Add<&'a Mat<C>> for &'a Mat<C> {
    type Output = Mat<C>;
    fn add(self, b: &Mat<C>) -> Mat<C> {
        assert_eq!((self.nrows, self.ncols()), (b.nrows, b.ncols()));
        let mut out = self.clone();
        for (j, c) in b.cols.iter().enumerate() {
            for (i, v) in c {
                add_entry(&mut out.cols[j], *i, v);
            }
        }
        out
    }
}

impl<'a, C: Coeff> Sub<&'a Mat<C>> for &'a Mat<C> {
    type Output = Mat<C>;
    fn sub(self, b: &Mat<C>) -> Mat<C> {
        self + &b.scale(&Laurent::from_i64(-1))
    }
}

/// Commutator `ab - ba`.
pub fn commutator<C: Coeff>(a: &Mat<C>, b: &Mat<C>) -> Mat<C> {
    &(a * b) - &(b * a)
}
