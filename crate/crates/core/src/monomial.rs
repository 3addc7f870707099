//! Monomials and the reverse lexicographic order.
//!
//! Variables are 1-based: `x1` is the revlex-largest variable and `xn` the
//! smallest. The [`Ord`] impl on [`Monomial`] *is* the revlex order, so
//! `a > b` reads "a is revlex-larger than b".

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exponent vector with its total degree cached.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<u32>", into = "Vec<u32>")]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl From<Vec<u32>> for Monomial {
    fn from(exps: Vec<u32>) -> Self {
        Monomial::new(exps)
    }
}

impl From<Monomial> for Vec<u32> {
    fn from(m: Monomial) -> Self {
        m.exps
    }
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    /// The constant monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial {
            exps: vec![0; n],
            degree: 0,
        }
    }

    /// The variable `x_i` (1-based) in `n` variables.
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "variable index {i} out of range 1..={n}");
        let mut exps = vec![0; n];
        exps[i - 1] = 1;
        Monomial { exps, degree: 1 }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent of `x_i`, 1-based.
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i - 1]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    /// Multiply by `x_i` (1-based).
    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i - 1] += 1;
        Monomial {
            exps,
            degree: self.degree + 1,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.nvars() == other.nvars() && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
            degree: self.degree - other.degree,
        })
    }

    /// Setting the top `r` variables to zero: `None` if the monomial involves
    /// any of them, otherwise the same monomial in `n - r` variables.
    pub fn restrict(&self, r: usize) -> Option<Monomial> {
        let keep = self.nvars().checked_sub(r)?;
        if self.exps[keep..].iter().any(|&e| e > 0) {
            return None;
        }
        Some(Monomial {
            exps: self.exps[..keep].to_vec(),
            degree: self.degree,
        })
    }

    /// The same monomial viewed in `n + extra` variables.
    pub fn extend(&self, extra: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.extend(std::iter::repeat(0).take(extra));
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    /// All exchanges `x_i * m / x_j` with `i < j` and `x_j | m`.
    pub fn borel_moves(&self) -> impl Iterator<Item = Monomial> + '_ {
        let n = self.nvars();
        (2..=n)
            .filter(move |&j| self.exps[j - 1] > 0)
            .flat_map(move |j| {
                (1..j).map(move |i| {
                    let mut exps = self.exps.clone();
                    exps[j - 1] -= 1;
                    exps[i - 1] += 1;
                    Monomial {
                        exps,
                        degree: self.degree,
                    }
                })
            })
    }

    /// Indices (1-based) of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i + 1)
    }
}

/// Compare two monomials in revlex, failing on mismatched variable counts.
pub fn revlex_compare(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(Error::Dimension(format!(
            "cannot compare monomials in {} and {} variables",
            a.nvars(),
            b.nvars()
        )));
    }
    Ok(revlex(a, b))
}

fn revlex(a: &Monomial, b: &Monomial) -> Ordering {
    // lower degree is larger
    match b.degree.cmp(&a.degree) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // at the last differing index, the smaller exponent is larger
    for (x, y) in a.exps.iter().zip(&b.exps).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nvars()
            .cmp(&other.nvars())
            .then_with(|| revlex(self, other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of degree `d` in `n` variables, revlex-descending.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    let mut exps = vec![0u32; n];
    fill(&mut exps, 0, d, &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn fill(exps: &mut [u32], pos: usize, left: u32, out: &mut Vec<Monomial>) {
    if pos + 1 == exps.len() {
        exps[pos] = left;
        out.push(Monomial::new(exps.to_vec()));
        return;
    }
    for e in 0..=left {
        exps[pos] = e;
        fill(exps, pos + 1, left - e, out);
    }
    exps[pos] = 0;
}

/// Number of monomials of degree `d` in `n` variables.
pub fn count_of_degree(n: usize, d: u32) -> u64 {
    if n == 0 {
        return u64::from(d == 0);
    }
    // binomial(d + n - 1, n - 1)
    let k = (n - 1) as u64;
    let mut acc: u64 = 1;
    for i in 1..=k {
        acc = acc * (u64::from(d) + i) / i;
    }
    acc
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
