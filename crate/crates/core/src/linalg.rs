//! Dense matrices over exact cyclotomic numbers or complex floats.

use std::fmt::Debug;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};

/// Relative singular-value threshold for numerical rank.
pub const RANK_TOL: f64 = 1e-8;

pub trait Scalar: Clone + Debug + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse of a nonzero element.
    fn inv(&self) -> Self;
    fn conj(&self) -> Self;
    fn to_c64(&self) -> Complex64;
    /// Rank: exact elimination or thresholded SVD.
    fn rank(m: &Mat<Self>) -> Result<usize>;
    fn is_exact() -> bool;
}

impl Scalar for CycNum {
    fn zero() -> Self {
        CycNum::zero()
    }
    fn one() -> Self {
        CycNum::one()
    }
    fn from_i64(v: i64) -> Self {
        CycNum::from_int(v)
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self.add_ref(o)
    }
    fn sub(&self, o: &Self) -> Self {
        self.sub_ref(o)
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn inv(&self) -> Self {
        CycNum::inv(self)
    }
    fn conj(&self) -> Self {
        CycNum::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        CycNum::to_c64(self)
    }
    fn rank(m: &Mat<Self>) -> Result<usize> {
        Ok(m.rank_exact())
    }
    fn is_exact() -> bool {
        true
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        Complex64::new(1.0, 0.0) / self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn rank(m: &Mat<Self>) -> Result<usize> {
        svd_rank(&m.to_nalgebra(), RANK_TOL)
    }
    fn is_exact() -> bool {
        false
    }
}

/// Numerical rank: singular values below `tol · σ_max` count as zero; any
/// singular value within a factor 10 of the threshold is ambiguous.
pub fn svd_rank(m: &DMatrix<Complex64>, tol: f64) -> Result<usize> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(0);
    }
    let sv = m.clone().svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return Ok(0);
    }
    let thr = tol * smax;
    for &s in sv.iter() {
        if s > thr / 10.0 && s < thr * 10.0 {
            return Err(Error::ToleranceAmbiguous {
                value: s / smax,
                tol,
            });
        }
    }
    Ok(sv.iter().filter(|&&s| s >= thr).count())
}

/// Orthonormal basis of the numerical kernel, with the same threshold and
/// ambiguity band as [`svd_rank`].
pub fn svd_nullspace(m: &DMatrix<Complex64>, tol: f64) -> Result<Vec<DVector<Complex64>>> {
    let (r, c) = m.shape();
    if c == 0 {
        return Ok(Vec::new());
    }
    // pad with zero rows so that the SVD returns a full right basis
    let mut a = DMatrix::zeros(r.max(c), c);
    a.view_mut((0, 0), (r, c)).copy_from(m);
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return Ok((0..c)
            .map(|i| {
                DVector::from_fn(c, |j, _| {
                    if i == j {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
            })
            .collect());
    }
    let thr = tol * smax;
    let mut out = Vec::new();
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s > thr / 10.0 && s < thr * 10.0 {
            return Err(Error::ToleranceAmbiguous {
                value: s / smax,
                tol,
            });
        }
        if s < thr {
            out.push(v_t.row(i).adjoint());
        }
    }
    Ok(out)
}

/// Minimum-norm least-squares solution of `a x = b` by the SVD
/// pseudo-inverse, cutting singular values below `tol · σ_max`.
pub fn lstsq(a: &DMatrix<Complex64>, b: &DVector<Complex64>, tol: f64) -> DVector<Complex64> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return DVector::zeros(a.ncols());
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    svd.solve(b, tol * smax.max(f64::MIN_POSITIVE))
        .expect("both factors computed")
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data: Vec<T> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn diag(d: &[T]) -> Self {
        Self::from_fn(d.len(), d.len(), |i, j| {
            if i == j {
                d[i].clone()
            } else {
                T::zero()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(s)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        *self.get(i, j) == T::one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_c64(&self) -> Mat<Complex64> {
        self.map(|x| x.to_c64())
    }

    pub fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).to_c64())
    }

    /// Copy `block` into `self` with top-left corner at `(r, c)`.
    pub fn set_block(&mut self, r: usize, c: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r: usize, c: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self.get(r + i, c + j).clone())
    }

    pub fn vstack(blocks: &[Self]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        Mat { rows, cols, data }
    }

    pub fn hstack(blocks: &[Self]) -> Self {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            out.set_block(0, c, b);
            c += b.cols;
        }
        out
    }

    /// Reduced row echelon form with pivot columns, by Gauss–Jordan
    /// elimination; exact for exact scalars.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..a.cols {
                    a.data.swap(p * a.cols + j, r * a.cols + j);
                }
            }
            let inv = a.get(r, c).inv();
            for j in c..a.cols {
                let v = a.get(r, j).mul(&inv);
                a.set(r, j, v);
            }
            let pivot_row: Vec<T> = a.row(r).to_vec();
            for i in 0..a.rows {
                if i == r {
                    continue;
                }
                let f = a.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..a.cols {
                    if pivot_row[j].is_zero() {
                        continue;
                    }
                    let v = a.get(i, j).sub(&f.mul(&pivot_row[j]));
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    /// Rank by forward elimination (no back substitution).
    pub fn rank_exact(&self) -> usize {
        let mut a = self.clone();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..a.cols {
                    a.data.swap(p * a.cols + j, r * a.cols + j);
                }
            }
            let inv = a.get(r, c).inv();
            let pivot_row: Vec<T> = a.row(r).iter().map(|x| x.mul(&inv)).collect();
            for i in r + 1..a.rows {
                let f = a.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..a.cols {
                    if pivot_row[j].is_zero() {
                        continue;
                    }
                    let v = a.get(i, j).sub(&f.mul(&pivot_row[j]));
                    a.set(i, j, v);
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the right kernel `{v : A v = 0}` (exact).
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = r.get(i, f).neg();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Self::hstack(&[self.clone(), Self::identity(n)]);
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let mut a = self.clone();
        let n = self.rows;
        let mut d = T::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
                return T::zero();
            };
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                d = d.neg();
            }
            let piv = a.get(c, c).clone();
            d = d.mul(&piv);
            let inv = piv.inv();
            for i in c + 1..n {
                let f = a.get(i, c).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = a.get(i, j).sub(&f.mul(a.get(c, j)));
                    a.set(i, j, v);
                }
            }
        }
        d
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 {
            self.inverse()
                .expect("singular matrix has no negative powers")
        } else {
            self.clone()
        };
        let mut acc = Self::identity(self.rows);
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Characteristic polynomial `det(xI - A)`, constant term first, by the
    /// Faddeev–LeVerrier recursion.
    pub fn charpoly(&self) -> Vec<T> {
        let n = self.rows;
        let mut c = vec![T::zero(); n + 1];
        c[n] = T::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&m);
            for i in 0..n {
                let v = next.get(i, i).add(&c[n - k + 1]);
                next.set(i, i, v);
            }
            m = next;
            let am = self.mul(&m);
            let tr = am.trace();
            c[n - k] = tr.neg().mul(&T::from_i64(k as i64).inv());
        }
        c
    }
}

impl Mat<Complex64> {
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn from_nalgebra(m: &DMatrix<Complex64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Polynomial helpers over a field, constant term first.
pub mod poly {
    use super::Scalar;

    pub fn trim<T: Scalar>(mut p: Vec<T>) -> Vec<T> {
        while p.len() > 1 && p.last().unwrap().is_zero() {
            p.pop();
        }
        p
    }

    pub fn is_zero<T: Scalar>(p: &[T]) -> bool {
        p.iter().all(|c| c.is_zero())
    }

    pub fn rem<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        let db = b.len() - 1;
        let inv = b[db].inv();
        while r.len() > db && !is_zero(&r) {
            let shift = r.len() - 1 - db;
            let c = r.last().unwrap().mul(&inv);
            for (j, bj) in b.iter().enumerate() {
                r[shift + j] = r[shift + j].sub(&c.mul(bj));
            }
            r.pop();
            r = trim(r);
            if db == 0 {
                return vec![T::zero()];
            }
        }
        r
    }

    pub fn gcd<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !is_zero(&y) {
            let r = rem(&x, &y);
            x = y;
            y = r;
        }
        x
    }

    pub fn derivative<T: Scalar>(p: &[T]) -> Vec<T> {
        if p.len() <= 1 {
            return vec![T::zero()];
        }
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul(&T::from_i64(k as i64)))
            .collect()
    }

    pub fn degree<T: Scalar>(p: &[T]) -> usize {
        trim(p.to_vec()).len() - 1
    }
}
