//! Sparse homogeneous polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::change::LinearChange;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::scalar::Scalar;

/// A homogeneous form. Terms are keyed by monomial; no stored coefficient is
/// zero. The zero polynomial keeps a nominal degree so that it can stand in
/// for "the zero form of degree d".
#[derive(Clone)]
pub struct Polynomial {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars
            && self.terms == other.terms
            && (self.terms.is_empty() || self.degree == other.degree)
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        Polynomial {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Polynomial::term(Monomial::one(nvars), c)
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        let (nvars, degree) = (m.nvars(), m.degree());
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            nvars,
            degree,
            terms,
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Polynomial::term(m, Scalar::one())
    }

    /// The variable `x_i` (1-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        Polynomial::monomial(Monomial::var(nvars, i))
    }

    /// Sum of terms; like terms are combined and zeros dropped. Fails if the
    /// terms have different degrees or variable counts.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self> {
        let mut out: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        let mut degree = None;
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::Dimension(format!(
                    "monomial {m} has {} variables, expected {nvars}",
                    m.nvars()
                )));
            }
            match degree {
                None => degree = Some(m.degree()),
                Some(d) if d != m.degree() => return Err(Error::Inhomogeneous(d, m.degree())),
                _ => {}
            }
            *out.entry(m).or_insert_with(Scalar::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(Polynomial {
            nvars,
            degree: degree.unwrap_or(0),
            terms: out,
        })
    }

    /// Linear form `sum coeffs[i] * x_{i+1}`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        Polynomial::from_terms(
            n,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i + 1), c.clone())),
        )
        .map(|mut p| {
            p.degree = 1;
            p
        })
        .expect("linear terms are homogeneous")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Terms in revlex-descending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    /// The revlex-greatest monomial with nonzero coefficient.
    pub fn leading_monomial(&self) -> Result<&Monomial> {
        self.terms
            .keys()
            .next_back()
            .ok_or_else(|| Error::Empty("zero polynomial has no leading monomial".into()))
    }

    pub fn leading_term(&self) -> Result<(&Monomial, &Scalar)> {
        self.terms
            .iter()
            .next_back()
            .ok_or_else(|| Error::Empty("zero polynomial has no leading term".into()))
    }

    fn check_same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension(format!(
                "polynomials in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::Inhomogeneous(self.degree, other.degree));
        }
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert_with(Scalar::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        Ok(Polynomial {
            nvars: self.nvars,
            degree: self.degree,
            terms,
        })
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Scalar::one())
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars, self.degree);
        }
        Polynomial {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            degree: self.degree + m.degree(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                *terms.entry(a.mul(b)).or_insert_with(Scalar::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Polynomial {
            nvars: self.nvars,
            degree: self.degree + other.degree,
            terms,
        })
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.nvars, Scalar::one());
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Replace each `x_i` by `forms[i-1]`. All forms must live in one ring
    /// and share a degree; the result has degree `deg(self) * deg(form)`.
    pub fn substitute(&self, forms: &[Polynomial]) -> Result<Polynomial> {
        if forms.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "{} forms substituted into {} variables",
                forms.len(),
                self.nvars
            )));
        }
        let Some(first) = forms.first() else {
            return Ok(self.clone());
        };
        let target = first.nvars();
        let fdeg = first.degree();
        if let Some(bad) = forms.iter().find(|f| f.nvars() != target) {
            return Err(Error::Dimension(format!(
                "substituted forms in {} and {} variables",
                target,
                bad.nvars()
            )));
        }
        let max_exp = self.terms.keys().flat_map(|m| m.exponents().iter().copied()).max();
        let max_exp = max_exp.unwrap_or(0);
        // powers[i][k] = forms[i]^k
        let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(forms.len());
        for f in forms {
            let mut ps = vec![Polynomial::constant(target, Scalar::one())];
            for k in 1..=max_exp as usize {
                let next = ps[k - 1].mul(f)?;
                ps.push(next);
            }
            powers.push(ps);
        }
        let mut acc = Polynomial::zero(target, self.degree * fdeg);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[i][e as usize])?;
                }
            }
            acc = acc.add(&t)?;
        }
        acc.degree = self.degree * fdeg;
        Ok(acc)
    }

    /// Apply a linear change of coordinates: `x_i` becomes the i-th linear
    /// form of `g`.
    pub fn substitute_linear(&self, g: &LinearChange) -> Result<Polynomial> {
        if g.nvars() != self.nvars {
            return Err(Error::Dimension(format!(
                "change on {} variables applied to a form in {}",
                g.nvars(),
                self.nvars
            )));
        }
        self.substitute(&g.images())
    }

    /// Exact division by a single divisor. `Ok(None)` if `p` does not divide
    /// `self`.
    pub fn exact_divide(&self, p: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_same_ring(p)?;
        let (lm_p, lc_p) = match p.leading_term() {
            Ok(t) => t,
            Err(_) => return Err(Error::DivisionByZero),
        };
        if self.is_zero() {
            return Ok(Some(Polynomial::zero(
                self.nvars,
                self.degree.saturating_sub(p.degree),
            )));
        }
        if self.degree < p.degree {
            return Ok(None);
        }
        let mut rem = self.clone();
        let mut quotient = Polynomial::zero(self.nvars, self.degree - p.degree);
        while let Ok((m, c)) = rem.leading_term() {
            let Some(qm) = m.div(lm_p) else {
                return Ok(None);
            };
            let t = Polynomial::term(qm, c / lc_p);
            rem = rem.sub(&t.mul(p)?)?;
            quotient = quotient.add(&t)?;
        }
        Ok(Some(quotient))
    }

    /// Set the top `r` variables to zero, landing in `n - r` variables.
    pub fn restrict(&self, r: usize) -> Result<Polynomial> {
        if r > self.nvars {
            return Err(Error::Dimension(format!(
                "cannot drop {r} of {} variables",
                self.nvars
            )));
        }
        Ok(Polynomial {
            nvars: self.nvars - r,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| m.restrict(r).map(|m| (m, c.clone())))
                .collect(),
        })
    }

    /// The same form viewed in `n + extra` variables.
    pub fn extend(&self, extra: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars + extra,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.extend(extra), c.clone()))
                .collect(),
        }
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "point of length {} for {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }
}

/// Group the terms of a polynomial in x- and t-variables by their t-part.
///
/// `p` lives in `nvars = x_vars + m` variables: `x1..x_{x_vars}` are the
/// x-variables and `t_block` must list exactly the remaining indices. Keys
/// of the result are t-monomials (in `m` variables, ordered as in
/// `t_block`); values are forms in the x-variables.
pub fn expand_t_coefficients(
    p: &Polynomial,
    x_vars: usize,
    t_block: &[usize],
) -> Result<BTreeMap<Monomial, Polynomial>> {
    let n = p.nvars();
    let mut seen = vec![false; n + 1];
    for &t in t_block {
        if t == 0 || t > n {
            return Err(Error::Index(format!("t-index {t} outside 1..={n}")));
        }
        if t <= x_vars {
            return Err(Error::Index(format!("t-index {t} overlaps the x-variables")));
        }
        if seen[t] {
            return Err(Error::Index(format!("t-index {t} repeated")));
        }
        seen[t] = true;
    }
    if x_vars + t_block.len() != n {
        return Err(Error::Index(format!(
            "{x_vars} x-variables and {} t-variables do not cover {n}",
            t_block.len()
        )));
    }
    let mut groups: BTreeMap<Monomial, Vec<(Monomial, Scalar)>> = BTreeMap::new();
    for (m, c) in &p.terms {
        let e = m.exponents();
        let tm = Monomial::new(t_block.iter().map(|&t| e[t - 1]).collect());
        let xm = Monomial::new(e[..x_vars].to_vec());
        groups.entry(tm).or_default().push((xm, c.clone()));
    }
    groups
        .into_iter()
        .map(|(tm, terms)| Ok((tm, Polynomial::from_terms(x_vars, terms)?)))
        .collect()
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn poly(n: usize, terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_terms(n, terms.iter().map(|(c, e)| (mono(e), int(*c)))).unwrap()
    }

    #[test]
    fn homogeneity_enforced() {
        let err = Polynomial::from_terms(2, [(mono(&[1, 0]), int(1)), (mono(&[2, 0]), int(1))]);
        assert_eq!(err, Err(Error::Inhomogeneous(1, 2)));
    }

    #[test]
    fn like_terms_cancel() {
        let p = poly(2, &[(1, &[1, 1]), (-1, &[1, 1])]);
        assert!(p.is_zero());
    }

    #[test]
    fn leading_monomials() {
        let p = poly(3, &[(1, &[2, 1, 0]), (1, &[1, 2, 0])]);
        assert_eq!(p.leading_monomial().unwrap(), &mono(&[2, 1, 0]));
        let q = poly(3, &[(5, &[0, 0, 4])]);
        assert_eq!(q.leading_monomial().unwrap(), &mono(&[0, 0, 4]));
        let r = poly(3, &[(1, &[0, 3, 0]), (1, &[1, 1, 1])]);
        assert_eq!(r.leading_monomial().unwrap(), &mono(&[0, 3, 0]));
        assert!(matches!(
            Polynomial::zero(3, 2).leading_monomial(),
            Err(Error::Empty(_))
        ));
    }

    #[test]
    fn binomial_substitution() {
        let p = poly(3, &[(1, &[2, 0, 0])]);
        let g = LinearChange::from_images(vec![
            poly(3, &[(1, &[1, 0, 0]), (1, &[0, 1, 0])]),
            Polynomial::var(3, 2),
            Polynomial::var(3, 3),
        ])
        .unwrap();
        let expected = poly(3, &[(1, &[2, 0, 0]), (2, &[1, 1, 0]), (1, &[0, 2, 0])]);
        assert_eq!(p.substitute_linear(&g).unwrap(), expected);
        let back = expected.substitute_linear(&g.inverse()).unwrap();
        assert_eq!(back, p);
        let x1 = Polynomial::var(3, 1);
        assert_eq!(x1.substitute_linear(&LinearChange::identity(3)).unwrap(), x1);
    }

    #[test]
    fn division() {
        let f = poly(3, &[(1, &[2, 1, 0]), (1, &[1, 2, 0])]);
        let p = poly(3, &[(1, &[1, 1, 0])]);
        let q = f.exact_divide(&p).unwrap().unwrap();
        assert_eq!(q, poly(3, &[(1, &[1, 0, 0]), (1, &[0, 1, 0])]));
        assert_eq!(q.mul(&p).unwrap(), f);

        let one = f.exact_divide(&f).unwrap().unwrap();
        assert_eq!(one, Polynomial::constant(3, int(1)));
        assert_eq!(one.degree(), 0);

        let g = poly(3, &[(1, &[3, 0, 0]), (1, &[0, 3, 0])]);
        assert_eq!(g.exact_divide(&Polynomial::var(3, 1)).unwrap(), None);
        assert_eq!(g.exact_divide(&Polynomial::zero(3, 1)), Err(Error::DivisionByZero));
    }

    #[test]
    fn t_coefficients_read_off() {
        // (t1 x1 + t2 x2) * x1 with x1, x2 and t1, t2 at indices 3, 4
        let p = poly(4, &[(1, &[2, 0, 1, 0]), (1, &[1, 1, 0, 1])]);
        let map = expand_t_coefficients(&p, 2, &[3, 4]).unwrap();
        assert_eq!(map.len(), 2);
        assert_eq!(map[&mono(&[1, 0])], poly(2, &[(1, &[2, 0])]));
        assert_eq!(map[&mono(&[0, 1])], poly(2, &[(1, &[1, 1])]));

        let x = poly(2, &[(1, &[1, 1])]).extend(2);
        let map = expand_t_coefficients(&x, 2, &[3, 4]).unwrap();
        assert_eq!(map.len(), 1);
        assert_eq!(map[&Monomial::one(2)], poly(2, &[(1, &[1, 1])]));

        assert!(matches!(expand_t_coefficients(&p, 2, &[2, 4]), Err(Error::Index(_))));
        assert!(matches!(expand_t_coefficients(&p, 2, &[3]), Err(Error::Index(_))));
    }

    #[test]
    fn evaluation() {
        let p = poly(3, &[(1, &[1, 1, 1]), (2, &[3, 0, 0])]);
        assert_eq!(p.evaluate(&[int(1), int(0), int(0)]).unwrap(), int(2));
        assert_eq!(p.evaluate(&[int(1), int(1), int(1)]).unwrap(), int(3));
    }

    #[test]
    fn display() {
        let p = poly(3, &[(1, &[2, 0, 1]), (3, &[0, 1, 2]), (-1, &[0, 0, 3])]);
        assert_eq!(p.to_string(), "x1^2*x3 + 3*x2*x3^2 - x3^3");
        assert_eq!(Polynomial::constant(2, int(-4)).to_string(), "-4");
    }
}
