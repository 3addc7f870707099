//! Dense exact linear algebra: reduced row echelon form, span membership,
//! intersection of row spaces, kernels.
//!
//! Elimination runs on primitive integer rows: each incoming row has its
//! denominators cleared and its content divided out, so intermediate
//! entries stay as small as fraction-free elimination allows. Rational
//! entries only reappear when the reduced form is normalized to unit pivots.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    /// Build from row vectors; `cols` is needed when `rows` is empty.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_integer(v.into())).collect())
                .collect(),
        )
        .expect("ragged rows")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "cannot stack widths {} and {}",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn rank(&self) -> usize {
        Echelon::from_rows(self.cols, self.row_iter()).rank()
    }

    /// Reduced row echelon form (same shape, zero rows last) and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let ech = Echelon::from_rows(self.cols, self.row_iter());
        let pivots = ech.pivots();
        let mut reduced = ech.into_reduced();
        reduced.rows = self.rows;
        reduced
            .data
            .resize(self.rows * self.cols, Scalar::zero());
        (reduced, pivots)
    }

    /// Nonzero rows of the reduced row echelon form.
    pub fn row_basis(&self) -> Matrix {
        Echelon::from_rows(self.cols, self.row_iter()).into_reduced()
    }

    /// Basis (as rows) of `{ x : self * x = 0 }`.
    pub fn nullspace(&self) -> Matrix {
        let ech = Echelon::from_rows(self.cols, self.row_iter());
        let pivots = ech.pivots();
        let r = ech.into_reduced();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                let e = r.get(i, free);
                if !e.is_zero() {
                    v[p] = -e.clone();
                }
            }
            basis.push(v);
        }
        Matrix::from_rows(self.cols, basis).expect("consistent widths")
    }

    /// Basis (as rows) of `{ y : y * self = 0 }`.
    pub fn left_kernel(&self) -> Matrix {
        self.transpose().nullspace()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Determinant by exact elimination.
    pub fn determinant(&self) -> Option<Scalar> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r * n + c].is_zero()) else {
                return Some(Scalar::zero());
            };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = a[c * n + c].clone();
            det *= &piv;
            for r in c + 1..n {
                let f = &a[r * n + c] / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let sub = &f * &a[c * n + j];
                    a[r * n + j] -= sub;
                }
            }
        }
        Some(det)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in self.row_iter() {
            let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    m.rref()
}

/// Whether `v` lies in the row space of `m`.
pub fn membership(v: &[Scalar], m: &Matrix) -> Result<bool> {
    if v.len() != m.ncols() {
        return Err(Error::Dimension(format!(
            "vector of length {} against width {}",
            v.len(),
            m.ncols()
        )));
    }
    let ech = Echelon::from_rows(m.ncols(), m.row_iter());
    Ok(ech.contains(v))
}

/// Row basis (reduced) of the intersection of the row spaces of `a` and `b`.
pub fn intersect(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let stacked = a.vstack(b)?;
    let kernel = stacked.left_kernel();
    let mut rows = Vec::with_capacity(kernel.nrows());
    for k in kernel.row_iter() {
        let mut v = vec![Scalar::zero(); a.ncols()];
        for (i, coef) in k[..a.nrows()].iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (dst, src) in v.iter_mut().zip(a.row(i)) {
                if !src.is_zero() {
                    *dst += coef * src;
                }
            }
        }
        rows.push(v);
    }
    Ok(Matrix::from_rows(a.ncols(), rows)?.row_basis())
}

/// Row basis of the intersection of the row space of `m` with the
/// coordinate subspace spanned by the columns in `support`.
///
/// Eliminates the columns outside `support` first; the echelon rows whose
/// pivot falls inside `support` span the intersection.
pub fn restrict_to_support(m: &Matrix, support: &[usize]) -> Result<Matrix> {
    let cols = m.ncols();
    let mut inside = vec![false; cols];
    for &c in support {
        if c >= cols {
            return Err(Error::Dimension(format!("column {c} outside width {cols}")));
        }
        inside[c] = true;
    }
    // permuted position -> original column
    let order: Vec<usize> = (0..cols)
        .filter(|&c| !inside[c])
        .chain((0..cols).filter(|&c| inside[c]))
        .collect();
    let split = cols - order.iter().filter(|&&c| inside[c]).count();
    let permuted: Vec<Vec<Scalar>> = m
        .row_iter()
        .map(|r| order.iter().map(|&c| r[c].clone()).collect())
        .collect();
    let ech = Echelon::from_rows(cols, permuted.iter().map(Vec::as_slice));
    let reduced = ech.into_reduced();
    let mut rows = Vec::new();
    for r in reduced.row_iter() {
        if r[..split].iter().all(Zero::is_zero) {
            let mut v = vec![Scalar::zero(); cols];
            for (pos, &c) in order.iter().enumerate() {
                v[c] = r[pos].clone();
            }
            rows.push(v);
        }
    }
    Ok(Matrix::from_rows(cols, rows)?.row_basis())
}

/// Pivot columns of the echelon form of `m` over `Z/p`, for `p` prime.
///
/// Returns `None` when some denominator vanishes mod `p`. Agrees with the
/// rational pivots except on a thin set of unlucky primes.
pub fn pivot_columns_mod_p(m: &Matrix, p: u64) -> Option<Vec<usize>> {
    let cols = m.ncols();
    let pb = BigInt::from(p);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(m.nrows());
    for r in m.row_iter() {
        let mut out = Vec::with_capacity(cols);
        for v in r {
            let den = v.denom().mod_floor(&pb);
            if den.is_zero() {
                return None;
            }
            let num = v.numer().mod_floor(&pb);
            let num: u64 = num.try_into().ok()?;
            let den: u64 = den.try_into().ok()?;
            out.push(mul_mod(num, inv_mod(den, p), p));
        }
        rows.push(out);
    }
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..cols {
        let Some(pr) = (top..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(top, pr);
        let inv = inv_mod(rows[top][c], p);
        for j in c..cols {
            rows[top][j] = mul_mod(rows[top][j], inv, p);
        }
        for r in top + 1..rows.len() {
            let f = rows[r][c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let sub = mul_mod(f, rows[top][j], p);
                rows[r][j] = (rows[r][j] + p - sub) % p;
            }
        }
        pivots.push(c);
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    Some(pivots)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Incremental row echelon form over primitive integer rows.
///
/// Rows are kept sorted by pivot column, each with a positive leading entry
/// and unit content. The form is only semi-reduced (zeros below pivots);
/// [`Echelon::into_reduced`] back-substitutes.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows<'a>(cols: usize, rows: impl IntoIterator<Item = &'a [Scalar]>) -> Self {
        let mut e = Echelon::new(cols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let a = &row[*p];
            let b = v[*p].clone();
            let g = a.gcd(&b);
            let (a, b) = (a / &g, &b / &g);
            let a_is_one = a.is_one();
            for (x, y) in v.iter_mut().zip(row) {
                // row is zero before its pivot
                if y.is_zero() {
                    if !a_is_one && !x.is_zero() {
                        *x *= &a;
                    }
                } else if a_is_one {
                    *x -= &b * y;
                } else {
                    *x = &a * &*x - &b * y;
                }
            }
        }
        make_primitive(&mut v);
        v
    }

    /// Reduce `v` against the current rows; returns true if `v` was
    /// independent and has been added.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.cols, "row width mismatch");
        let v = self.reduce(clear_denominators(v));
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, v));
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(clear_denominators(v)).iter().all(Zero::is_zero)
    }

    /// Fully reduced echelon form with unit pivots, nonzero rows only.
    pub fn into_reduced(mut self) -> Matrix {
        let n = self.rows.len();
        for i in (0..n).rev() {
            let (p, _) = self.rows[i];
            let (upper, lower) = self.rows.split_at_mut(i);
            let pivot_row = &lower[0].1;
            for (_, row) in upper.iter_mut() {
                if row[p].is_zero() {
                    continue;
                }
                let a = &pivot_row[p];
                let b = row[p].clone();
                let g = a.gcd(&b);
                let (a, b) = (a / &g, &b / &g);
                let a_is_one = a.is_one();
                for (x, y) in row.iter_mut().zip(pivot_row) {
                    if y.is_zero() {
                        if !a_is_one && !x.is_zero() {
                            *x *= &a;
                        }
                    } else if a_is_one {
                        *x -= &b * y;
                    } else {
                        *x = &a * &*x - &b * y;
                    }
                }
                make_primitive(row);
            }
        }
        let cols = self.cols;
        let mut data = Vec::with_capacity(n * cols);
        for (p, row) in self.rows {
            let lead = row[p].clone();
            data.extend(row.into_iter().map(|x| Scalar::new(x, lead.clone())));
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }
}

fn clear_denominators(v: &[Scalar]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in v {
        if !x.denom().is_one() {
            l = l.lcm(x.denom());
        }
    }
    let mut out: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() {
        return;
    }
    let lead_negative = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    if lead_negative {
        g = -g;
    }
    if !g.is_one() {
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x / &g;
            }
        }
    }
}
