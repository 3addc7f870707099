//! Vector spaces of forms of one degree, held canonically.
//!
//! A [`FormSpace`] stores the reduced row echelon form of its basis against
//! the degree-`d` monomials sorted revlex-descending. With that column
//! order the pivot of every basis row is its leading monomial, so the
//! initial space is just the set of pivot monomials, and two spaces are
//! equal exactly when their matrices are.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use rayon::prelude::*;

use crate::change::LinearChange;
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Matrix};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::polynomial::Polynomial;
use crate::scalar::Scalar;
use crate::stable::MonomialSpace;

/// Degree-`d` monomials in `n` variables with their column positions.
#[derive(Debug)]
pub struct Columns {
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Columns {
    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

/// Shared column layout for `(n, d)`.
pub fn columns(n: usize, d: u32) -> Arc<Columns> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Arc<Columns>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("column cache");
    guard
        .entry((n, d))
        .or_insert_with(|| {
            let monomials = monomials_of_degree(n, d);
            let index = monomials
                .iter()
                .enumerate()
                .map(|(i, m)| (m.clone(), i))
                .collect();
            Arc::new(Columns { monomials, index })
        })
        .clone()
}

fn dense_row(p: &Polynomial, cols: &Columns) -> Vec<Scalar> {
    let mut row = vec![Scalar::zero(); cols.len()];
    for (m, c) in p.terms() {
        let at = cols.position(m).expect("monomial of the column degree");
        row[at] = c.clone();
    }
    row
}

fn row_polynomial(row: &[Scalar], n: usize, cols: &Columns) -> Polynomial {
    Polynomial::from_terms(
        n,
        row.iter()
            .zip(&cols.monomials)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, m)| (m.clone(), c.clone())),
    )
    .expect("columns share a degree")
}

#[derive(Clone)]
pub struct FormSpace {
    nvars: usize,
    degree: u32,
    columns: Arc<Columns>,
    basis: Matrix,
}

impl PartialEq for FormSpace {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.degree == other.degree && self.basis == other.basis
    }
}

impl Eq for FormSpace {}

impl std::fmt::Debug for FormSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FormSpace")
            .field("nvars", &self.nvars)
            .field("degree", &self.degree)
            .field("basis", &self.basis_polynomials())
            .finish()
    }
}

impl FormSpace {
    /// Span of `polys`, all of which must be forms of degree `degree` in
    /// `nvars` variables (zero forms are allowed and ignored).
    pub fn from_polynomials(nvars: usize, degree: u32, polys: &[Polynomial]) -> Result<Self> {
        let cols = columns(nvars, degree);
        let mut ech = Echelon::new(cols.len());
        for p in polys {
            if p.nvars() != nvars {
                return Err(Error::Dimension(format!(
                    "{p} is not in {nvars} variables"
                )));
            }
            if p.is_zero() {
                continue;
            }
            if p.degree() != degree {
                return Err(Error::Inhomogeneous(degree, p.degree()));
            }
            ech.insert(&dense_row(p, &cols));
        }
        Ok(FormSpace {
            nvars,
            degree,
            columns: cols,
            basis: ech.into_reduced(),
        })
    }

    /// Span of a nonempty list of forms, reading `n` and `d` off the first
    /// nonzero one.
    pub fn span(polys: &[Polynomial]) -> Result<Self> {
        let first = polys
            .iter()
            .find(|p| !p.is_zero())
            .or(polys.first())
            .ok_or_else(|| Error::Empty("no forms to span".into()))?;
        FormSpace::from_polynomials(first.nvars(), first.degree(), polys)
    }

    fn from_rows(nvars: usize, degree: u32, rows: &Matrix) -> Self {
        FormSpace {
            nvars,
            degree,
            columns: columns(nvars, degree),
            basis: rows.row_basis(),
        }
    }

    pub fn zero(nvars: usize, degree: u32) -> Self {
        let cols = columns(nvars, degree);
        let width = cols.len();
        FormSpace {
            nvars,
            degree,
            columns: cols,
            basis: Matrix::zeros(0, width),
        }
    }

    /// All of `S_d`.
    pub fn full(nvars: usize, degree: u32) -> Self {
        let cols = columns(nvars, degree);
        let width = cols.len();
        FormSpace {
            nvars,
            degree,
            columns: cols,
            basis: Matrix::identity(width),
        }
    }

    /// The space spanned by a set of monomials.
    pub fn from_monomials(t: &MonomialSpace) -> Self {
        let polys: Vec<Polynomial> = t.iter().cloned().map(Polynomial::monomial).collect();
        FormSpace::from_polynomials(t.nvars(), t.degree(), &polys).expect("monomials of one degree")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Reduced echelon basis matrix; columns are [`FormSpace::column_monomials`].
    pub fn basis_matrix(&self) -> &Matrix {
        &self.basis
    }

    pub fn column_monomials(&self) -> &[Monomial] {
        &self.columns.monomials
    }

    /// Canonical basis as forms, leading monomials revlex-descending.
    pub fn basis_polynomials(&self) -> Vec<Polynomial> {
        self.basis
            .row_iter()
            .map(|r| row_polynomial(r, self.nvars, &self.columns))
            .collect()
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        if p.is_zero() && p.nvars() == self.nvars {
            return Ok(true);
        }
        if p.nvars() != self.nvars || p.degree() != self.degree {
            return Err(Error::Dimension(format!(
                "{p} is not a form of degree {} in {} variables",
                self.degree, self.nvars
            )));
        }
        linalg::membership(&dense_row(p, &self.columns), &self.basis)
    }

    fn check_same_shape(&self, other: &FormSpace) -> Result<()> {
        if self.nvars != other.nvars || self.degree != other.degree {
            return Err(Error::Dimension(format!(
                "spaces of degree {} in {} variables and degree {} in {}",
                self.degree, self.nvars, other.degree, other.nvars
            )));
        }
        Ok(())
    }

    pub fn is_subspace_of(&self, other: &FormSpace) -> Result<bool> {
        self.check_same_shape(other)?;
        let ech = Echelon::from_rows(other.basis.ncols(), other.basis.row_iter());
        Ok(self.basis.row_iter().all(|r| ech.contains(r)))
    }

    pub fn sum(&self, other: &FormSpace) -> Result<FormSpace> {
        self.check_same_shape(other)?;
        Ok(FormSpace::from_rows(
            self.nvars,
            self.degree,
            &self.basis.vstack(&other.basis)?,
        ))
    }

    pub fn intersect(&self, other: &FormSpace) -> Result<FormSpace> {
        self.check_same_shape(other)?;
        Ok(FormSpace {
            nvars: self.nvars,
            degree: self.degree,
            columns: self.columns.clone(),
            basis: linalg::intersect(&self.basis, &other.basis)?,
        })
    }

    /// `in(V)`: the pivot monomials of the echelon basis.
    pub fn initial_space(&self) -> MonomialSpace {
        let monomials = self.basis.row_iter().map(|r| {
            let p = r.iter().position(|c| !c.is_zero()).expect("nonzero row");
            self.columns.monomials[p].clone()
        });
        MonomialSpace::new(self.nvars, self.degree, monomials).expect("columns share a degree")
    }

    /// `V : m = { q : q * m in V }`, a space of degree `d - deg m`.
    pub fn colon_monomial(&self, m: &Monomial) -> Result<FormSpace> {
        if m.nvars() != self.nvars {
            return Err(Error::Dimension(format!("{m} is not in {} variables", self.nvars)));
        }
        if m.degree() > self.degree {
            return Err(Error::Degree(format!(
                "colon by {m} of degree {} exceeds {}",
                m.degree(),
                self.degree
            )));
        }
        let target = self.degree - m.degree();
        let divisible: Vec<usize> = self
            .columns
            .monomials
            .iter()
            .enumerate()
            .filter(|(_, c)| m.divides(c))
            .map(|(i, _)| i)
            .collect();
        let inter = linalg::restrict_to_support(&self.basis, &divisible)?;
        let out_cols = columns(self.nvars, target);
        let mut rows = Vec::with_capacity(inter.nrows());
        for r in inter.row_iter() {
            let mut v = vec![Scalar::zero(); out_cols.len()];
            for &c in &divisible {
                if !r[c].is_zero() {
                    let q = self.columns.monomials[c].div(m).expect("divisible column");
                    v[out_cols.position(&q).expect("quotient degree")] = r[c].clone();
                }
            }
            rows.push(v);
        }
        Ok(FormSpace::from_rows(
            self.nvars,
            target,
            &Matrix::from_rows(out_cols.len(), rows)?,
        ))
    }

    /// `V : x_n^r` as a single system.
    pub fn colon_last_power(&self, r: u32) -> Result<FormSpace> {
        let mut e = vec![0; self.nvars];
        if let Some(last) = e.last_mut() {
            *last = r;
        }
        self.colon_monomial(&Monomial::new(e))
    }

    /// `V : x_n^r` as `r` successive colons by `x_n`.
    pub fn colon_last_iterated(&self, r: u32) -> Result<FormSpace> {
        let xn = Monomial::var(self.nvars, self.nvars);
        let mut v = self.clone();
        for _ in 0..r {
            v = v.colon_monomial(&xn)?;
        }
        Ok(v)
    }

    /// `V : h` for a nonzero linear form `h`, through a change of
    /// coordinates sending `h` to `x_n`.
    pub fn colon_form(&self, h: &Polynomial) -> Result<FormSpace> {
        if h.nvars() != self.nvars {
            return Err(Error::Dimension(format!("{h} is not in {} variables", self.nvars)));
        }
        if h.is_zero() || h.degree() != 1 {
            return Err(Error::Invalid(format!("{h} is not a nonzero linear form")));
        }
        if self.degree == 0 {
            return Err(Error::Degree("colon by a linear form of a degree-0 space".into()));
        }
        // psi(x_n) = h, so phi = psi^{-1} sends h to x_n
        let psi = LinearChange::sending_last_to(h)?;
        let moved = self.substitute(&psi.inverse())?;
        moved.colon_last_power(1)?.substitute(&psi)
    }

    /// `V : f` for any nonzero form `f`, solved directly as the kernel of
    /// `(q, v) -> q * f - v`.
    pub fn colon_polynomial(&self, f: &Polynomial) -> Result<FormSpace> {
        if f.nvars() != self.nvars {
            return Err(Error::Dimension(format!("{f} is not in {} variables", self.nvars)));
        }
        if f.is_zero() {
            return Err(Error::Invalid("colon by the zero form".into()));
        }
        if f.degree() > self.degree {
            return Err(Error::Degree(format!(
                "colon by a form of degree {} exceeds {}",
                f.degree(),
                self.degree
            )));
        }
        let target = self.degree - f.degree();
        let qcols = columns(self.nvars, target);
        let products: Vec<Vec<Scalar>> = qcols
            .monomials
            .iter()
            .map(|u| dense_row(&f.mul_monomial(u), &self.columns))
            .collect();
        let mult = Matrix::from_rows(self.columns.len(), products)?;
        let kernel = mult.vstack(&self.basis)?.left_kernel();
        let rows: Vec<Vec<Scalar>> = kernel
            .row_iter()
            .map(|k| k[..qcols.len()].to_vec())
            .collect();
        Ok(FormSpace::from_rows(
            self.nvars,
            target,
            &Matrix::from_rows(qcols.len(), rows)?,
        ))
    }

    /// Image of `V` after setting the top `r` variables to zero.
    pub fn restrict(&self, r: usize) -> Result<FormSpace> {
        if r >= self.nvars {
            return Err(Error::Dimension(format!(
                "cannot drop {r} of {} variables",
                self.nvars
            )));
        }
        let polys = self
            .basis_polynomials()
            .iter()
            .map(|p| p.restrict(r))
            .collect::<Result<Vec<_>>>()?;
        FormSpace::from_polynomials(self.nvars - r, self.degree, &polys)
    }

    /// `g . V`: substitute the change into every element.
    pub fn substitute(&self, g: &LinearChange) -> Result<FormSpace> {
        let polys = self
            .basis_polynomials()
            .iter()
            .map(|p| p.substitute_linear(g))
            .collect::<Result<Vec<_>>>()?;
        FormSpace::from_polynomials(self.nvars, self.degree, &polys)
    }

    /// `V * <x1, ..., xn>`, the degree `d + 1` piece of the ideal it
    /// generates.
    pub fn times_variables(&self) -> FormSpace {
        if self.dim() == self.columns.len() {
            return FormSpace::full(self.nvars, self.degree + 1);
        }
        let next = columns(self.nvars, self.degree + 1);
        let mut ech = Echelon::new(next.len());
        for p in self.basis_polynomials() {
            for i in 1..=self.nvars {
                if ech.rank() == next.len() {
                    break;
                }
                let shifted = p.mul_monomial(&Monomial::var(self.nvars, i));
                ech.insert(&dense_row(&shifted, &next));
            }
        }
        FormSpace {
            nvars: self.nvars,
            degree: self.degree + 1,
            columns: next,
            basis: ech.into_reduced(),
        }
    }

    /// Degree-`e` piece of the ideal generated by `V`.
    pub fn ideal_piece(&self, e: u32) -> Result<FormSpace> {
        if e < self.degree {
            return Err(Error::Degree(format!(
                "ideal piece in degree {e} below the generating degree {}",
                self.degree
            )));
        }
        let mut piece = self.clone();
        while piece.degree < e {
            piece = piece.times_variables();
        }
        Ok(piece)
    }
}

/// Degree-`e` piece of the ideal generated by forms of possibly different
/// degrees.
pub fn ideal_piece_of(nvars: usize, gens: &[Polynomial], e: u32) -> Result<FormSpace> {
    let mut acc = FormSpace::zero(nvars, e);
    let mut by_degree: BTreeMap<u32, Vec<Polynomial>> = BTreeMap::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        if g.nvars() != nvars {
            return Err(Error::Dimension(format!("{g} is not in {nvars} variables")));
        }
        by_degree.entry(g.degree()).or_default().push(g.clone());
    }
    for (d, polys) in by_degree.range(..=e) {
        let piece = FormSpace::from_polynomials(nvars, *d, polys)?.ideal_piece(e)?;
        acc = acc.sum(&piece)?;
    }
    Ok(acc)
}

/// Pieces in degrees `0..=top` of the ideal generated by forms of possibly
/// different degrees, each built from the one below.
pub fn ideal_pieces_of(nvars: usize, gens: &[Polynomial], top: u32) -> Result<BTreeMap<u32, FormSpace>> {
    let mut by_degree: BTreeMap<u32, Vec<Polynomial>> = BTreeMap::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        if g.nvars() != nvars {
            return Err(Error::Dimension(format!("{g} is not in {nvars} variables")));
        }
        by_degree.entry(g.degree()).or_default().push(g.clone());
    }
    let mut pieces = BTreeMap::new();
    let mut cur = FormSpace::zero(nvars, 0);
    for e in 0..=top {
        if e > 0 {
            cur = cur.times_variables();
        }
        if let Some(polys) = by_degree.get(&e) {
            cur = cur.sum(&FormSpace::from_polynomials(nvars, e, polys)?)?;
        }
        pieces.insert(e, cur.clone());
    }
    Ok(pieces)
}

/// The ideal generated by a space `V` of degree `d`, held in degrees
/// `d..=max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIdealSlice {
    pub generator: FormSpace,
    pub pieces: BTreeMap<u32, FormSpace>,
}

impl GradedIdealSlice {
    pub fn new(generator: FormSpace, max_degree: u32) -> Self {
        let mut pieces = BTreeMap::new();
        let mut cur = generator.clone();
        pieces.insert(cur.degree(), cur.clone());
        while cur.degree() < max_degree {
            cur = cur.times_variables();
            pieces.insert(cur.degree(), cur.clone());
        }
        GradedIdealSlice { generator, pieces }
    }

    pub fn hilbert_values(&self, quotient: bool) -> BTreeMap<u32, u64> {
        let n = self.generator.nvars();
        self.pieces
            .iter()
            .map(|(&e, p)| {
                let dim = p.dim() as u64;
                let v = if quotient {
                    crate::monomial::count_of_degree(n, e) - dim
                } else {
                    dim
                };
                (e, v)
            })
            .collect()
    }
}

/// The graded family in `n - 1` variables obtained from `V` by colons with
/// powers of `x_n` below degree `d`, and the restricted ideal of `V` from
/// degree `d` on:
///
/// - degree `e < d`: `(V : x_n^{d-e})` with `x_n` set to zero,
/// - degree `e >= d`: the degree-`e` piece of the ideal generated by `V`,
///   with `x_n` set to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColonIdeal {
    pub source_degree: u32,
    pub pieces: BTreeMap<u32, FormSpace>,
}

impl ColonIdeal {
    pub fn nvars(&self) -> usize {
        self.pieces.values().next().map_or(0, FormSpace::nvars)
    }

    /// Each piece times every variable lands in the next piece.
    pub fn is_closed_under_variables(&self) -> bool {
        self.pieces.iter().all(|(e, p)| match self.pieces.get(&(e + 1)) {
            Some(next) => p.times_variables().is_subspace_of(next).unwrap_or(false),
            None => true,
        })
    }

    pub fn initial_pieces(&self) -> BTreeMap<u32, MonomialSpace> {
        self.pieces
            .iter()
            .map(|(&e, p)| (e, p.initial_space()))
            .collect()
    }
}

/// Build the colon family of `V` in degrees `0..=max_degree`. Pieces are
/// computed independently per degree.
pub fn build_colon_ideal(v: &FormSpace, max_degree: u32) -> Result<ColonIdeal> {
    if v.nvars() < 2 {
        return Err(Error::Dimension("needs at least two variables".into()));
    }
    let d = v.degree();
    let restricted = v.restrict(1)?;
    let pieces: Result<BTreeMap<u32, FormSpace>> = (0..=max_degree.max(d))
        .into_par_iter()
        .map(|e| {
            let piece = if e < d {
                v.colon_last_power(d - e)?.restrict(1)?
            } else {
                restricted.ideal_piece(e)?
            };
            Ok((e, piece))
        })
        .collect();
    Ok(ColonIdeal {
        source_degree: d,
        pieces: pieces?,
    })
}
