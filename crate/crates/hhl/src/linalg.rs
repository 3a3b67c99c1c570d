//! Dense exact linear algebra over the working field.
//!
//! Everything downstream (rank certificates, kernels, signatures) reduces
//! to row reduction over [`AlgebraicReal`]; no floating point anywhere.

use std::sync::Arc;

use crate::numfield::{AlgebraicReal, FieldSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub spec: Arc<FieldSpec>,
    data: Vec<AlgebraicReal>,
}

impl Mat {
    pub fn zeros(spec: &Arc<FieldSpec>, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            spec: Arc::clone(spec),
            data: vec![spec.zero(); rows * cols],
        }
    }

    pub fn identity(spec: &Arc<FieldSpec>, n: usize) -> Self {
        let mut m = Self::zeros(spec, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = spec.one();
        }
        m
    }

    pub fn from_rows(spec: &Arc<FieldSpec>, rows: Vec<Vec<AlgebraicReal>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Self { rows: r, cols: c, spec: Arc::clone(spec), data }
    }

    pub fn at(&self, i: usize, j: usize) -> &AlgebraicReal {
        &self.data[i * self.cols + j]
    }

    /// Row-major entries (used as an equality fingerprint key).
    pub fn row_major(&self) -> &[AlgebraicReal] {
        &self.data
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut AlgebraicReal {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[AlgebraicReal] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<AlgebraicReal> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.spec, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Self { rows: self.rows, cols: self.cols, spec: Arc::clone(&self.spec), data }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Self { rows: self.rows, cols: self.cols, spec: Arc::clone(&self.spec), data }
    }

    pub fn scale(&self, c: &AlgebraicReal) -> Self {
        let data = self.data.iter().map(|a| a * c).collect();
        Self { rows: self.rows, cols: self.cols, spec: Arc::clone(&self.spec), data }
    }

    pub fn matmul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = Self::zeros(&self.spec, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    let cell = out.at_mut(i, j);
                    *cell = &*cell + &t;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[AlgebraicReal]) -> Vec<AlgebraicReal> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.spec.zero();
                for j in 0..self.cols {
                    let a = self.at(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc = &acc + &(a * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: usize) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = Self::identity(&self.spec, self.rows);
        for _ in 0..e {
            acc = acc.matmul(self);
        }
        acc
    }

    /// Reduced row echelon form; returns (rref, pivot column per pivot row).
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let a = m.at(p, j).clone();
                    let b = m.at(r, j).clone();
                    *m.at_mut(p, j) = b;
                    *m.at_mut(r, j) = a;
                }
            }
            let inv = m.at(r, c).inv();
            for j in c..m.cols {
                let v = m.at(r, j) * &inv;
                *m.at_mut(r, j) = v;
            }
            for i in 0..m.rows {
                if i == r || m.at(i, c).is_zero() {
                    continue;
                }
                let f = m.at(i, c).clone();
                for j in c..m.cols {
                    let t = &f * m.at(r, j);
                    let cell = m.at_mut(i, j);
                    *cell = &*cell - &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, as columns gathered into a matrix
    /// (cols = nullity). Deterministic: free columns in increasing order.
    pub fn kernel_basis(&self) -> Mat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(&self.spec, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            *out.at_mut(fc, k) = self.spec.one();
            for (prow, &pc) in pivots.iter().enumerate() {
                *out.at_mut(pc, k) = -r.at(prow, fc);
            }
        }
        out
    }

    /// Solves `self * x = b`; `None` if inconsistent.
    pub fn solve(&self, b: &[AlgebraicReal]) -> Option<Vec<AlgebraicReal>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zeros(&self.spec, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![self.spec.zero(); self.cols];
        for (prow, &pc) in pivots.iter().enumerate() {
            x[pc] = r.at(prow, self.cols).clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(&self.spec, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = self.spec.one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut out = Self::zeros(&self.spec, n, n);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(i, j) = r.at(i, n + j).clone();
            }
        }
        Some(out)
    }

    /// Exact signature (positive, negative, zero inertia) of a symmetric
    /// matrix, by congruence diagonalization with exact sign decisions.
    pub fn signature(&self) -> (usize, usize, usize) {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        debug_assert!((0..n).all(|i| (0..n).all(|j| a.at(i, j) == a.at(j, i))));
        let mut pos = 0;
        let mut neg = 0;
        let mut zero = 0;
        let mut active: Vec<usize> = (0..n).collect();
        while let Some(&first) = active.first() {
            // Find a nonzero diagonal pivot among active indices.
            let pivot = active.iter().copied().find(|&i| !a.at(i, i).is_zero());
            let p = match pivot {
                Some(p) => p,
                None => {
                    // All active diagonal entries vanish. If some off-diagonal
                    // entry is nonzero, symmetrize it onto the diagonal;
                    // otherwise the active block is zero.
                    let mut found = None;
                    'search: for (ii, &i) in active.iter().enumerate() {
                        for &j in &active[ii + 1..] {
                            if !a.at(i, j).is_zero() {
                                found = Some((i, j));
                                break 'search;
                            }
                        }
                    }
                    match found {
                        None => {
                            zero += active.len();
                            break;
                        }
                        Some((i, j)) => {
                            // row_i += row_j; col_i += col_j makes a_ii = 2 a_ij != 0
                            for k in 0..n {
                                let t = a.at(j, k).clone();
                                let cell = a.at_mut(i, k);
                                *cell = &*cell + &t;
                            }
                            for k in 0..n {
                                let t = a.at(k, j).clone();
                                let cell = a.at_mut(k, i);
                                *cell = &*cell + &t;
                            }
                            i
                        }
                    }
                }
            };
            let _ = first;
            let d = a.at(p, p).clone();
            match d.sign() {
                1 => pos += 1,
                -1 => neg += 1,
                _ => unreachable!("pivot is nonzero"),
            }
            let dinv = d.inv();
            let others: Vec<usize> = active.iter().copied().filter(|&i| i != p).collect();
            for &i in &others {
                if a.at(i, p).is_zero() {
                    continue;
                }
                let f = &a.at(i, p).clone() * &dinv;
                for &j in &others {
                    let t = &f * a.at(p, j);
                    let cell = a.at_mut(i, j);
                    *cell = &*cell - &t;
                }
                *a.at_mut(i, p) = self.spec.zero();
                *a.at_mut(p, i) = self.spec.zero();
            }
            active = others;
        }
        (pos, neg, zero)
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows);
        let mut out = Self::zeros(&self.spec, self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
            for j in 0..o.cols {
                *out.at_mut(i, self.cols + j) = o.at(i, j).clone();
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Self { rows: self.rows + o.rows, cols: self.cols, spec: Arc::clone(&self.spec), data }
    }
}

/// Incrementally built row space with normalized pivot rows, for rank
/// growth tests and reduced normal forms.
#[derive(Clone, Debug)]
pub struct RowSpan {
    pub spec: Arc<FieldSpec>,
    pub ncols: usize,
    rows: Vec<Vec<AlgebraicReal>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    pub fn new(spec: &Arc<FieldSpec>, ncols: usize) -> Self {
        Self { spec: Arc::clone(spec), ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce(&self, v: &mut [AlgebraicReal]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&f * r);
                }
            }
        }
    }

    /// Inserts a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &[AlgebraicReal]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv();
        for x in &mut v {
            *x = &*x * &inv;
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &[AlgebraicReal]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(|x| x.is_zero())
    }

    /// Back-substitutes to reduced echelon form and returns
    /// (rows, pivot columns) sorted by pivot.
    pub fn into_rref(mut self) -> (Vec<Vec<AlgebraicReal>>, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let rows: Vec<Vec<AlgebraicReal>> = order.iter().map(|&i| self.rows[i].clone()).collect();
        let pivots: Vec<usize> = order.iter().map(|&i| self.pivots[i]).collect();
        self.rows = rows;
        self.pivots = pivots;
        // eliminate above each pivot
        for i in (0..self.rows.len()).rev() {
            let p = self.pivots[i];
            let lower = self.rows[i].clone();
            for j in 0..i {
                if self.rows[j][p].is_zero() {
                    continue;
                }
                let f = self.rows[j][p].clone();
                for (x, r) in self.rows[j].iter_mut().zip(&lower) {
                    if !r.is_zero() {
                        *x = &*x - &(&f * r);
                    }
                }
            }
        }
        (self.rows, self.pivots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{rat_int, FieldSpec};

    fn qq() -> Arc<FieldSpec> {
        FieldSpec::for_conductor(1)
    }

    fn m(spec: &Arc<FieldSpec>, rows: &[&[i64]]) -> Mat {
        Mat::from_rows(
            spec,
            rows.iter()
                .map(|r| r.iter().map(|&x| spec.from_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_kernel_solve() {
        let spec = qq();
        let a = m(&spec, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel_basis();
        assert_eq!(k.cols, 1);
        let v = k.col(0);
        assert!(a.matvec(&v).iter().all(|x| x.is_zero()));

        let b = vec![spec.from_int(6), spec.from_int(12), spec.from_int(2)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.matvec(&x), b);
    }

    #[test]
    fn inverse_roundtrip() {
        let spec = FieldSpec::for_conductor(5);
        let c = spec.generator();
        let mut a = Mat::identity(&spec, 2);
        *a.at_mut(0, 1) = c.clone();
        *a.at_mut(1, 0) = spec.from_int(3);
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv), Mat::identity(&spec, 2));
        let singular = m(&qq(), &[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn signatures() {
        let spec = qq();
        let a = m(&spec, &[&[2, 0], &[0, -3]]);
        assert_eq!(a.signature(), (1, 1, 0));
        // zero diagonal, hyperbolic plane: signature (1,1)
        let h = m(&spec, &[&[0, 1], &[1, 0]]);
        assert_eq!(h.signature(), (1, 1, 0));
        let z = m(&spec, &[&[0, 0], &[0, 0]]);
        assert_eq!(z.signature(), (0, 0, 2));
        let pd = m(&spec, &[&[2, 1], &[1, 2]]);
        assert_eq!(pd.signature(), (2, 0, 0));
        let _ = rat_int(0);
    }
}
