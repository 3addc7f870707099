//! Invertible linear changes of coordinates.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polynomial::Polynomial;
use crate::scalar::Scalar;

const MAX_ATTEMPTS: usize = 100;

/// An invertible `n x n` matrix acting on the variables: row `i` holds the
/// coefficients of the linear form that replaces `x_{i+1}`.
///
/// Substituting `g` and then `g.inverse()` is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange {
    matrix: Matrix,
    inverse: Matrix,
}

impl LinearChange {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::Dimension(format!(
                "{}x{} is not square",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let inverse = matrix.inverse().ok_or(Error::SingularChange)?;
        debug_assert_eq!(
            matrix.mul(&inverse).ok(),
            Some(Matrix::identity(matrix.nrows()))
        );
        Ok(LinearChange { matrix, inverse })
    }

    pub fn identity(n: usize) -> Self {
        LinearChange {
            matrix: Matrix::identity(n),
            inverse: Matrix::identity(n),
        }
    }

    /// From the images of `x1, ..., xn`, which must be linear forms.
    pub fn from_images(images: Vec<Polynomial>) -> Result<Self> {
        let n = images.len();
        let mut rows = Vec::with_capacity(n);
        for f in &images {
            if f.nvars() != n || (!f.is_zero() && f.degree() != 1) {
                return Err(Error::Invalid(format!("{f} is not a linear form in {n} variables")));
            }
            rows.push(linear_coefficients(f));
        }
        LinearChange::new(Matrix::from_rows(n, rows)?)
    }

    /// Entries uniform in `[-range, range]`, resampled until invertible.
    /// Deterministic in `seed`.
    pub fn random(n: usize, seed: u64, range: u64) -> Result<Self> {
        if range < 1 {
            return Err(Error::Invalid("coefficient range must be positive".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = range as i64;
        for _ in 0..MAX_ATTEMPTS {
            let data = (0..n * n)
                .map(|_| Scalar::from_integer(rng.gen_range(-r..=r).into()))
                .collect();
            let m = Matrix::new(n, n, data)?;
            if let Ok(g) = LinearChange::new(m) {
                return Ok(g);
            }
        }
        Err(Error::Randomness(MAX_ATTEMPTS))
    }

    /// A change whose substitution sends `x_n` to the nonzero linear form
    /// `h`. Other variables map to themselves, except that when `h` has no
    /// `x_n` term the variable `x_k` carrying `h`'s last nonzero coefficient
    /// is sent to `x_n`.
    pub fn sending_last_to(h: &Polynomial) -> Result<Self> {
        let n = h.nvars();
        if h.is_zero() || h.degree() != 1 {
            return Err(Error::Invalid(format!("{h} is not a nonzero linear form")));
        }
        let coeffs = linear_coefficients(h);
        let k = coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .expect("nonzero form");
        let mut m = Matrix::identity(n);
        if k != n - 1 {
            m.set(k, k, Scalar::zero());
            m.set(k, n - 1, Scalar::one());
        }
        for (j, c) in coeffs.into_iter().enumerate() {
            m.set(n - 1, j, c);
        }
        LinearChange::new(m)
    }

    pub fn nvars(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse(&self) -> LinearChange {
        LinearChange {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    /// The linear forms replacing `x1, ..., xn`.
    pub fn images(&self) -> Vec<Polynomial> {
        self.matrix
            .row_iter()
            .map(|r| Polynomial::linear(r))
            .collect()
    }
}

/// Coefficient vector of a linear form.
pub fn linear_coefficients(f: &Polynomial) -> Vec<Scalar> {
    let n = f.nvars();
    (1..=n)
        .map(|i| f.coefficient(&crate::monomial::Monomial::var(n, i)))
        .collect()
}

/// A random linear form with coefficients in `[-range, range]`, never zero.
pub fn random_linear_form(n: usize, rng: &mut impl Rng, range: u64) -> Polynomial {
    let r = range.max(1) as i64;
    loop {
        let coeffs: Vec<Scalar> = (0..n)
            .map(|_| Scalar::from_integer(rng.gen_range(-r..=r).into()))
            .collect();
        if coeffs.iter().any(|c| !c.is_zero()) {
            return Polynomial::linear(&coeffs);
        }
    }
}

/// A random form of degree `d` with every monomial coefficient drawn from
/// `[-range, range]`.
pub fn random_form(n: usize, d: u32, rng: &mut impl Rng, range: u64) -> Polynomial {
    let r = range.max(1) as i64;
    loop {
        let p = Polynomial::from_terms(
            n,
            crate::monomial::monomials_of_degree(n, d)
                .into_iter()
                .map(|m| (m, Scalar::from_integer(rng.gen_range(-r..=r).into()))),
        )
        .expect("homogeneous by construction");
        if !p.is_zero() {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn random_is_deterministic() {
        let a = LinearChange::random(3, 7, 1000).unwrap();
        let b = LinearChange::random(3, 7, 1000).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, LinearChange::random(3, 8, 1000).unwrap());
    }

    #[test]
    fn one_variable() {
        let g = LinearChange::random(1, 3, 2).unwrap();
        assert!(!g.matrix().get(0, 0).is_zero());
    }

    #[test]
    fn always_invertible() {
        for seed in 0..1000 {
            let g = LinearChange::random(3, seed, 2).unwrap();
            let det = g.matrix().determinant().unwrap();
            assert!(!det.is_zero(), "seed {seed}");
        }
    }

    #[test]
    fn singular_rejected() {
        let m = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(LinearChange::new(m), Err(Error::SingularChange));
    }

    #[test]
    fn last_variable_goes_to_h() {
        let h = Polynomial::linear(&[int(1), int(2), int(0)]);
        let psi = LinearChange::sending_last_to(&h).unwrap();
        let x3 = Polynomial::var(3, 3);
        assert_eq!(x3.substitute_linear(&psi).unwrap(), h);
        assert_eq!(h.substitute_linear(&psi.inverse()).unwrap(), x3);
    }
}
