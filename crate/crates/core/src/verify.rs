//! Executable checks relating a space of forms, its initial space, and the
//! ideal it generates.
//!
//! Every pipeline is a pure function of its inputs and seed; reports embed
//! the seed and serialize to JSON.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::change::{random_form, random_linear_form};
use crate::error::{Error, Result};
use crate::formspace::{FormSpace, GradedIdealSlice};
use crate::gin::{gin, random_change, trial_seed, GinConfig, DEFAULT_RANGE};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::polynomial::{expand_t_coefficients, Polynomial};
use crate::scalar::{int, Scalar};
use crate::stable::{borel_closure, build_j, MonomialSpace};

/// Default number of degrees past the generating degree to examine.
pub const DEFAULT_WINDOW: u32 = 4;
/// Equal trailing values needed before a nonzero Hilbert tail is trusted.
pub const DEFAULT_CONFIRM: usize = 3;
/// Largest `a + b` accepted by the common-factor scenario.
pub const DEFAULT_DEGREE_CAP: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Process exit code: 0 pass, 2 failure, 3 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 2,
            Verdict::Inconclusive => 3,
        }
    }

    fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
            _ => Verdict::Pass,
        }
    }
}

/// Comparison of `in((I_W)|x_m)` with `J(in W)_{x_m}` degree by degree,
/// where `W` is `V` with its top `depth` variables set to zero and `x_m` is
/// the last variable of `W`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    pub nvars: usize,
    pub degree: u32,
    pub depth: usize,
    pub initial_space: MonomialSpace,
    /// `(in(W) : x_m) * <x1..xm> = in(W)`.
    pub hypothesis_holds: bool,
    pub j_generators: Vec<Monomial>,
    pub j_has_generator_in_degree: bool,
    pub degrees_checked: [u32; 2],
    pub per_degree_match: BTreeMap<u32, bool>,
    pub expected: BTreeMap<u32, MonomialSpace>,
    pub observed: BTreeMap<u32, MonomialSpace>,
    /// For `depth > 0`: `in(W)` equals `in(V)` with the same variables dropped.
    pub restriction_cross_check: Option<bool>,
    /// The hypothesis holds but some degree disagrees.
    pub counterexample: bool,
    pub verdict: Verdict,
}

fn restriction_report(v: &FormSpace, depth: usize, max_degree: u32) -> Result<RestrictionReport> {
    let n = v.nvars();
    let d = v.degree();
    let (w, cross) = if depth == 0 {
        (v.clone(), None)
    } else {
        if depth + 2 > n {
            return Err(Error::Precondition(format!(
                "restriction depth {depth} needs at least {} variables, have {n}",
                depth + 2
            )));
        }
        let w = v.restrict(depth)?;
        let cross = w.initial_space() == v.initial_space().restrict(depth)?;
        (w, Some(cross))
    };
    if w.nvars() < 2 {
        return Err(Error::Dimension("needs at least two variables".into()));
    }
    let in_w = w.initial_space();
    let m = w.nvars();
    let hypothesis_holds = in_w.colon(&Monomial::var(m, m))?.times_variables() == in_w;
    let j = build_j(&in_w).map_err(|e| match e {
        Error::Precondition(_) => Error::Precondition(format!(
            "initial space {in_w} is not strongly stable; place the space in general coordinates first"
        )),
        other => other,
    })?;
    let j_has_generator_in_degree = j.has_generator_in_source_degree();

    let slice = GradedIdealSlice::new(w.restrict(1)?, max_degree.max(d));
    let mut expected = BTreeMap::new();
    let mut observed = BTreeMap::new();
    let mut per_degree_match = BTreeMap::new();
    for e in d..=max_degree.max(d) {
        let exp = j.piece(e);
        let obs = slice.pieces[&e].initial_space();
        per_degree_match.insert(e, exp == obs);
        expected.insert(e, exp);
        observed.insert(e, obs);
    }
    let all_match = per_degree_match.values().all(|&b| b);
    let counterexample = hypothesis_holds && !all_match;
    let cross_ok = cross.unwrap_or(true);
    let verdict = if hypothesis_holds {
        Verdict::from_bool(all_match && cross_ok)
    } else {
        Verdict::from_bool(cross_ok).and(Verdict::Fail)
    };
    Ok(RestrictionReport {
        nvars: n,
        degree: d,
        depth,
        initial_space: in_w,
        hypothesis_holds,
        j_generators: j.ideal.generators(),
        j_has_generator_in_degree,
        degrees_checked: [d, max_degree.max(d)],
        per_degree_match,
        expected,
        observed,
        restriction_cross_check: cross,
        counterexample,
        verdict,
    })
}

/// For `V` in general coordinates: when `in(V)` satisfies
/// `(in(V) : x_n) * <x1..xn> = in(V)`, the initial ideal of the ideal
/// generated by `V` with `x_n = 0` agrees with `J(in V)_{x_n}` in every
/// degree from `d` to `max_degree`.
///
/// The verdict is `Fail` when the hypothesis does not hold; the per-degree
/// comparison is still reported.
pub fn check_restricted_ideal(v: &FormSpace, max_degree: u32) -> Result<RestrictionReport> {
    restriction_report(v, 0, max_degree)
}

/// The same comparison after first setting the top `depth` variables to
/// zero (`1 <= depth <= n - 2`).
pub fn check_restricted_ideal_at_depth(
    v: &FormSpace,
    depth: usize,
    max_degree: u32,
) -> Result<RestrictionReport> {
    if depth == 0 {
        return Err(Error::Precondition("depth must be at least 1".into()));
    }
    restriction_report(v, depth, max_degree)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LocusStatus {
    /// The quotient vanishes: the projective vanishing locus is empty.
    Empty,
    /// Constant tail: finitely many points, counted with multiplicity.
    Points { count: u64 },
    /// The `dimension`-th difference is constant with value `degree`.
    Positive { dimension: usize, degree: u64 },
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessCheck {
    pub point: Vec<String>,
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocusReport {
    pub quotient_hilbert: BTreeMap<u32, u64>,
    pub status: LocusStatus,
    /// `-1` for the empty locus.
    pub projective_dimension: Option<i64>,
    /// Final value of a constant tail.
    pub stabilized_value: Option<u64>,
    /// First degree from which the values stay at the final value.
    pub stable_from: Option<u32>,
    pub witnesses: Vec<WitnessCheck>,
    pub verdict: Verdict,
}

fn differences(values: &[i128]) -> Vec<i128> {
    values.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Read the dimension off a window of quotient Hilbert values.
fn classify_tail(values: &[u64], max_dim: usize, confirm: usize) -> LocusStatus {
    if values.iter().any(|&v| v == 0) {
        // S_e inside the ideal forces every later piece to be full
        return LocusStatus::Empty;
    }
    let mut seq: Vec<i128> = values.iter().map(|&v| v as i128).collect();
    for dim in 0..=max_dim {
        if seq.len() >= confirm.max(1) {
            let tail = &seq[seq.len() - confirm.max(1)..];
            if tail.iter().all(|&x| x == tail[0]) && tail[0] > 0 {
                return if dim == 0 {
                    LocusStatus::Points {
                        count: tail[0] as u64,
                    }
                } else {
                    LocusStatus::Positive {
                        dimension: dim,
                        degree: tail[0] as u64,
                    }
                };
            }
        }
        seq = differences(&seq);
    }
    LocusStatus::Inconclusive
}

/// Quotient Hilbert values of the ideal generated by `V` in degrees
/// `d..=max_degree`, the shape of the vanishing locus they indicate, and an
/// exact evaluation of each witness point on a basis of `V`.
pub fn analyze_locus(v: &FormSpace, max_degree: u32, witnesses: &[Vec<Scalar>]) -> Result<LocusReport> {
    analyze_locus_with(v, max_degree, witnesses, DEFAULT_CONFIRM)
}

pub fn analyze_locus_with(
    v: &FormSpace,
    max_degree: u32,
    witnesses: &[Vec<Scalar>],
    confirm: usize,
) -> Result<LocusReport> {
    if v.is_zero() {
        return Err(Error::Invalid("the zero space vanishes everywhere".into()));
    }
    let n = v.nvars();
    let slice = GradedIdealSlice::new(v.clone(), max_degree.max(v.degree()));
    let quotient_hilbert = slice.hilbert_values(true);
    let values: Vec<u64> = quotient_hilbert.values().copied().collect();
    let status = classify_tail(&values, n.saturating_sub(1), confirm);
    let projective_dimension = match &status {
        LocusStatus::Empty => Some(-1),
        LocusStatus::Points { .. } => Some(0),
        LocusStatus::Positive { dimension, .. } => Some(*dimension as i64),
        LocusStatus::Inconclusive => None,
    };
    let last = *values.last().expect("at least one degree");
    let stable_from = quotient_hilbert
        .iter()
        .rev()
        .take_while(|(_, &h)| h == last)
        .last()
        .map(|(&e, _)| e);
    let stabilized_value = match status {
        LocusStatus::Empty => Some(0),
        LocusStatus::Points { count } => Some(count),
        _ => None,
    };
    let basis = v.basis_polynomials();
    let mut checks = Vec::with_capacity(witnesses.len());
    for w in witnesses {
        let mut vanishes = true;
        for b in &basis {
            if !b.evaluate(w)?.is_zero() {
                vanishes = false;
            }
        }
        checks.push(WitnessCheck {
            point: w.iter().map(|x| x.to_string()).collect(),
            vanishes,
        });
    }
    let verdict = if status == LocusStatus::Inconclusive {
        Verdict::Inconclusive
    } else {
        Verdict::from_bool(checks.iter().all(|c| c.vanishes))
    };
    Ok(LocusReport {
        quotient_hilbert,
        status,
        projective_dimension,
        stabilized_value,
        stable_from,
        witnesses: checks,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodimensionReport {
    pub depth: usize,
    pub hypothesis_holds: bool,
    pub j_generators: Vec<Monomial>,
    /// Codimension of `J`; `None` for the unit ideal.
    pub c_j: Option<usize>,
    /// Codimension in `P^{n-1}` of the vanishing locus of `V`, from the
    /// Hilbert tail (`n` for the empty locus).
    pub c_locus: Option<usize>,
    pub applies: bool,
    pub locus: LocusReport,
    pub verdict: Verdict,
}

/// For `V` in general coordinates: when the restriction hypothesis holds at
/// `depth` and `J` has codimension `c <= n - depth - 2`, the vanishing locus
/// of `V` has codimension `c`. Outside that range nothing is asserted and
/// the verdict is `Pass` with `applies = false`.
pub fn check_locus_codimension(v: &FormSpace, depth: usize, max_degree: u32) -> Result<CodimensionReport> {
    if v.is_zero() {
        return Err(Error::Invalid("codimension of the zero space is undefined".into()));
    }
    let n = v.nvars();
    let restriction = restriction_report(v, depth, v.degree())?;
    let j_ideal = crate::stable::MonomialIdeal::new(n - depth - 1, restriction.j_generators.clone())?;
    let c_j = j_ideal.codimension().ok();
    let locus = analyze_locus(v, max_degree, &[])?;
    let c_locus = locus
        .projective_dimension
        .map(|dim| ((n as i64 - 1) - dim) as usize);
    let applies = restriction.hypothesis_holds && c_j.is_some_and(|c| c + depth + 2 <= n);
    let verdict = if !applies {
        Verdict::Pass
    } else if c_locus.is_none() {
        Verdict::Inconclusive
    } else {
        Verdict::from_bool(c_j == c_locus)
    };
    Ok(CodimensionReport {
        depth,
        hypothesis_holds: restriction.hypothesis_holds,
        j_generators: restriction.j_generators,
        c_j,
        c_locus,
        applies,
        locus,
        verdict,
    })
}

/// Whether `p` divides every element of `V` (checked on the canonical basis).
pub fn has_common_factor(v: &FormSpace, p: &Polynomial) -> Result<bool> {
    if p.nvars() != v.nvars() {
        return Err(Error::Dimension(format!("{p} is not in {} variables", v.nvars())));
    }
    if !p.is_zero() && p.degree() > v.degree() {
        return Err(Error::Degree(format!(
            "candidate of degree {} exceeds {}",
            p.degree(),
            v.degree()
        )));
    }
    for b in v.basis_polynomials() {
        if b.exact_divide(p)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn poly(n: usize, terms: &[(i64, &[u32])]) -> Polynomial {
    Polynomial::from_terms(
        n,
        terms
            .iter()
            .map(|(c, e)| (Monomial::new(e.to_vec()), int(*c))),
    )
    .expect("homogeneous literal")
}

/// The degree-3 staircase generated by `x1^2 x3` and `x1 x2^2`.
pub fn cubic_staircase() -> MonomialSpace {
    borel_closure(3, [Monomial::new(vec![2, 0, 1]), Monomial::new(vec![1, 2, 0])])
        .expect("three variables")
        .piece(3)
}

/// `<x1 q, x2 q, x3 q, p>` for a quadric `q` and a cubic `p`.
pub fn quadric_multiples_plus_cubic(q: &Polynomial, p: &Polynomial) -> Result<FormSpace> {
    if q.nvars() != 3 || q.degree() != 2 || p.nvars() != 3 || p.degree() != 3 {
        return Err(Error::Invalid("expected a ternary quadric and a ternary cubic".into()));
    }
    let mut gens: Vec<Polynomial> = (1..=3)
        .map(|i| q.mul(&Polynomial::var(3, i)))
        .collect::<Result<_>>()?;
    gens.push(p.clone());
    FormSpace::from_polynomials(3, 3, &gens)
}

/// Default quadric and cubic for the first example: coprime, so the locus
/// is their complete intersection of 6 points.
pub fn default_quadric_and_cubic() -> (Polynomial, Polynomial) {
    let q = poly(3, &[(1, &[2, 0, 0]), (1, &[0, 2, 0]), (1, &[0, 0, 2])]);
    let p = poly(3, &[(1, &[3, 0, 0])]);
    (q, p)
}

/// `<x1(x2^2+x3^2), x2(x1^2+x3^2), x3(x1^2+x2^2), x1 x2 x3>`.
pub fn coordinate_points_space() -> FormSpace {
    FormSpace::from_polynomials(
        3,
        3,
        &[
            poly(3, &[(1, &[1, 2, 0]), (1, &[1, 0, 2])]),
            poly(3, &[(1, &[2, 1, 0]), (1, &[0, 1, 2])]),
            poly(3, &[(1, &[2, 0, 1]), (1, &[0, 2, 1])]),
            poly(3, &[(1, &[1, 1, 1])]),
        ],
    )
    .expect("cubics")
}

/// `<x1^3+x2^3+x3^3, x1^2x2+x2^2x3+x3^2x1, x1x2^2+x2x3^2+x3x1^2, x1x2x3>`.
pub fn empty_locus_space() -> FormSpace {
    FormSpace::from_polynomials(
        3,
        3,
        &[
            poly(3, &[(1, &[3, 0, 0]), (1, &[0, 3, 0]), (1, &[0, 0, 3])]),
            poly(3, &[(1, &[2, 1, 0]), (1, &[0, 2, 1]), (1, &[1, 0, 2])]),
            poly(3, &[(1, &[1, 2, 0]), (1, &[0, 1, 2]), (1, &[2, 0, 1])]),
            poly(3, &[(1, &[1, 1, 1])]),
        ],
    )
    .expect("cubics")
}

/// Span of the t-coefficients of `p * h` with `h = t1 x1 + t2 x2 + t3 x3`,
/// for `p` given in the six variables `x1, x2, x3, t1, t2, t3`.
pub fn t_coefficient_span(p: &Polynomial) -> Result<FormSpace> {
    if p.nvars() != 6 {
        return Err(Error::Dimension("expected a form in x1..x3, t1..t3".into()));
    }
    let h = poly(6, &[(1, &[1, 0, 0, 1, 0, 0]), (1, &[0, 1, 0, 0, 1, 0]), (1, &[0, 0, 1, 0, 0, 1])]);
    let ph = p.mul(&h)?;
    let coeffs = expand_t_coefficients(&ph, 3, &[4, 5, 6])?;
    let forms: Vec<Polynomial> = coeffs.into_values().collect();
    FormSpace::span(&forms)
}

/// `p = t1 p1 + t2 p2 + t3 p3` with the 2x2 minors `p1 = x2 x3`,
/// `p2 = x1 x3`, `p3 = x1 x2` of the linear syzygy matrix
/// `[[x1, x2, 0], [0, x2, x3]]` (up to sign).
pub fn syzygy_minor_form() -> Polynomial {
    poly(
        6,
        &[(1, &[0, 1, 1, 1, 0, 0]), (1, &[1, 0, 1, 0, 1, 0]), (1, &[1, 1, 0, 0, 0, 1])],
    )
}

/// `(t1 x2 + t2 x3 + t3 x1)(t1 x3 + t2 x1 + t3 x2)`.
pub fn cyclic_quadratic_form() -> Polynomial {
    let a = poly(6, &[(1, &[0, 1, 0, 1, 0, 0]), (1, &[0, 0, 1, 0, 1, 0]), (1, &[1, 0, 0, 0, 0, 1])]);
    let b = poly(6, &[(1, &[0, 0, 1, 1, 0, 0]), (1, &[1, 0, 0, 0, 1, 0]), (1, &[0, 1, 0, 0, 0, 1])]);
    a.mul(&b).expect("same ring")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleCase {
    pub name: String,
    pub generators: Vec<String>,
    pub dim: usize,
    pub gin: MonomialSpace,
    pub gin_matches: bool,
    pub gin_seed: u64,
    pub locus: LocusReport,
    pub expected_tail: Option<u64>,
    pub tail_matches: Option<bool>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanCheck {
    pub name: String,
    pub dim: usize,
    pub equals_target: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StaircaseExamplesReport {
    pub target: MonomialSpace,
    pub seed: u64,
    pub cases: Vec<ExampleCase>,
    pub span_checks: Vec<SpanCheck>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct StaircaseExamplesConfig {
    pub seed: u64,
    pub trials: usize,
    pub max_degree: u32,
    /// Quadric and cubic for the first case.
    pub quadric: Polynomial,
    pub cubic: Polynomial,
    /// Expected tail of the first case; `None` skips the comparison.
    pub expected_tail_a: Option<u64>,
}

impl Default for StaircaseExamplesConfig {
    fn default() -> Self {
        let (quadric, cubic) = default_quadric_and_cubic();
        StaircaseExamplesConfig {
            seed: 0,
            trials: 5,
            max_degree: 8,
            quadric,
            cubic,
            expected_tail_a: Some(6),
        }
    }
}

/// Three 4-dimensional spaces of ternary cubics sharing the generic initial
/// space generated by `x1^2 x3` and `x1 x2^2`, with vanishing loci of 6
/// points (coprime `q`, `p`), the 3 coordinate points, and nothing.
/// Also rebuilds the second and third spaces from t-coefficient expansions.
pub fn check_staircase_examples(config: &StaircaseExamplesConfig) -> Result<StaircaseExamplesReport> {
    let target = cubic_staircase();
    let mut cfg = GinConfig::with_seed(config.seed).trials(config.trials);
    cfg.range = DEFAULT_RANGE;
    let q = &config.quadric;
    let p = &config.cubic;
    let unit = |i: usize| -> Vec<Scalar> { (0..3).map(|j| int(i64::from(i == j))).collect() };
    let specs: Vec<(&str, FormSpace, Option<u64>, Vec<Vec<Scalar>>)> = vec![
        (
            "a",
            quadric_multiples_plus_cubic(q, p)?,
            config.expected_tail_a,
            vec![],
        ),
        ("b", coordinate_points_space(), Some(3), vec![unit(0), unit(1), unit(2)]),
        ("c", empty_locus_space(), Some(0), vec![]),
    ];
    let mut cases = Vec::new();
    for (k, (name, v, expected_tail, witnesses)) in specs.into_iter().enumerate() {
        let case_cfg = GinConfig {
            seed: trial_seed(config.seed, 1000 + k as u64),
            ..cfg.clone()
        };
        let g = gin(&v, &case_cfg)?;
        let locus = analyze_locus(&v, config.max_degree, &witnesses)?;
        let tail_matches = expected_tail.map(|t| locus.stabilized_value == Some(t));
        let gin_matches = g.monomials == target;
        let pass = gin_matches
            && v.dim() == 4
            && tail_matches.unwrap_or(true)
            && locus.witnesses.iter().all(|w| w.vanishes);
        cases.push(ExampleCase {
            name: name.to_string(),
            generators: v.basis_polynomials().iter().map(|b| b.to_string()).collect(),
            dim: v.dim(),
            gin: g.monomials,
            gin_matches,
            gin_seed: case_cfg.seed,
            locus,
            expected_tail,
            tail_matches,
            pass,
        });
    }
    let mut span_checks = Vec::new();
    for (name, form, target_space) in [
        ("syzygy_minors", syzygy_minor_form(), coordinate_points_space()),
        ("cyclic_product", cyclic_quadratic_form(), empty_locus_space()),
    ] {
        let span = t_coefficient_span(&form)?;
        let equals_target = span == target_space;
        span_checks.push(SpanCheck {
            name: name.to_string(),
            dim: span.dim(),
            equals_target,
            pass: equals_target && span.dim() == 4,
        });
    }
    let ok = cases.iter().all(|c| c.pass) && span_checks.iter().all(|c| c.pass);
    Ok(StaircaseExamplesReport {
        target,
        seed: config.seed,
        cases,
        span_checks,
        verdict: Verdict::from_bool(ok),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuarticColonReport {
    pub seed: u64,
    /// `in(V : x3)`.
    pub initial_colon_last: MonomialSpace,
    pub colon_square_dim: usize,
    /// `V : h^2 != 0` for a random linear `h`.
    pub colon_square_nonzero: bool,
    pub colon_product_dim: usize,
    /// `V : h1 h2 != 0` for independent random linear `h1`, `h2`.
    pub colon_product_nonzero: bool,
}

/// Colon data of a 7-dimensional space of ternary quartics in general
/// coordinates. Reports all three quantities without relating them.
pub fn explore_quartic_colons(v: &FormSpace, seed: u64) -> Result<QuarticColonReport> {
    if v.nvars() != 3 || v.degree() != 4 || v.dim() != 7 {
        return Err(Error::Precondition(format!(
            "expected a 7-dimensional space of quartics in 3 variables, got dimension {} in degree {} with {} variables",
            v.dim(),
            v.degree(),
            v.nvars()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = random_linear_form(3, &mut rng, DEFAULT_RANGE);
    let h1 = random_linear_form(3, &mut rng, DEFAULT_RANGE);
    let h2 = random_linear_form(3, &mut rng, DEFAULT_RANGE);
    let initial_colon_last = v.colon_last_power(1)?.initial_space();
    let square = v.colon_polynomial(&h.pow(2))?;
    let product = v.colon_polynomial(&h1.mul(&h2)?)?;
    Ok(QuarticColonReport {
        seed,
        initial_colon_last,
        colon_square_dim: square.dim(),
        colon_square_nonzero: !square.is_zero(),
        colon_product_dim: product.dim(),
        colon_product_nonzero: !product.is_zero(),
    })
}

/// `g . (p * S_2 + <q>)` for a random quadric `p`, random quartic `q` and
/// random change `g`, all drawn from `seed`.
pub fn quadric_multiples_plus_quartic(seed: u64) -> Result<(FormSpace, Polynomial)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = random_form(3, 2, &mut rng, DEFAULT_RANGE);
    let q = random_form(3, 4, &mut rng, DEFAULT_RANGE);
    let mut gens: Vec<Polynomial> = monomials_of_degree(3, 2)
        .into_iter()
        .map(|m| p.mul_monomial(&m))
        .collect();
    gens.push(q);
    let v = FormSpace::from_polynomials(3, 4, &gens)?;
    let g = random_change(3, trial_seed(seed, 7), DEFAULT_RANGE)?;
    let moved = v.substitute(&g)?;
    let p_moved = p.substitute_linear(&g)?;
    Ok((moved, p_moved))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuarticExampleReport {
    pub seed: u64,
    pub dim: usize,
    pub gin: MonomialSpace,
    pub expected_gin: MonomialSpace,
    pub gin_matches: bool,
    pub expected_initial_colon: MonomialSpace,
    pub initial_colon_matches: bool,
    pub colons: QuarticColonReport,
    pub verdict: Verdict,
}

/// Degree-4 staircase generated by `x1^2 x3^2` and `x1 x2^3`.
pub fn quartic_staircase() -> MonomialSpace {
    borel_closure(3, [Monomial::new(vec![2, 0, 2]), Monomial::new(vec![1, 3, 0])])
        .expect("three variables")
        .piece(4)
}

/// Build `g . (p * S_2 + <q>)` from `seed` and check that its generic
/// initial space is [`quartic_staircase`] and that `in(V : x3)` is spanned
/// by `x1^3, x1^2 x2, x1^2 x3`. The colon bits are reported as found.
pub fn check_quartic_example(seed: u64) -> Result<QuarticExampleReport> {
    let (v, _) = quadric_multiples_plus_quartic(seed)?;
    let g = gin(&v, &GinConfig::with_seed(trial_seed(seed, 3)))?;
    let expected_gin = quartic_staircase();
    let expected_initial_colon = MonomialSpace::new(
        3,
        3,
        [vec![3, 0, 0], vec![2, 1, 0], vec![2, 0, 1]].map(Monomial::new),
    )?;
    let colons = explore_quartic_colons(&v, seed)?;
    let gin_matches = g.monomials == expected_gin;
    let initial_colon_matches = colons.initial_colon_last == expected_initial_colon;
    Ok(QuarticExampleReport {
        seed,
        dim: v.dim(),
        gin: g.monomials,
        expected_gin,
        gin_matches,
        expected_initial_colon,
        initial_colon_matches,
        verdict: Verdict::from_bool(gin_matches && initial_colon_matches),
        colons,
    })
}

/// `p * W` where `W` is a random change applied to all degree-`b`
/// monomials in `x1..xm` and `p` is a random form of degree `a`, in `n`
/// variables.
pub fn factor_times_monomial_power(a: u32, b: u32, m: usize, n: usize, seed: u64) -> Result<(FormSpace, Polynomial)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = random_form(n, a, &mut rng, DEFAULT_RANGE);
    let g = random_change(n, trial_seed(seed, 1), DEFAULT_RANGE)?;
    let gens = monomials_of_degree(m, b)
        .into_iter()
        .map(|mono| {
            let w = Polynomial::monomial(mono.extend(n - m)).substitute_linear(&g)?;
            p.mul(&w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((FormSpace::from_polynomials(n, a + b, &gens)?, p))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommonFactorScenarioReport {
    pub a: u32,
    pub b: u32,
    pub m: usize,
    pub n: usize,
    pub seed: u64,
    pub factor: String,
    pub gin: MonomialSpace,
    pub expected_gin: MonomialSpace,
    pub gin_matches: bool,
    pub factor_divides: bool,
    pub restriction: RestrictionReport,
    pub codimension: CodimensionReport,
    pub verdict: Verdict,
}

/// Build `V = p * g(<x1..xm>^b)`, check `gin(V) = x1^a * <x1..xm>^b`, that
/// `p` divides every element, and that the restriction comparison at depth
/// `n - m` holds with `J` of codimension one.
pub fn check_common_factor_scenario(
    a: u32,
    b: u32,
    m: usize,
    n: usize,
    seed: u64,
    degree_cap: u32,
) -> Result<CommonFactorScenarioReport> {
    if m < 3 || m > n {
        return Err(Error::Precondition(format!("need 3 <= m <= n, got m = {m}, n = {n}")));
    }
    if b == 0 {
        return Err(Error::Precondition("b must be positive".into()));
    }
    if a + b > degree_cap {
        return Err(Error::Size(format!("degree {} exceeds the cap {degree_cap}", a + b)));
    }
    let (v, p) = factor_times_monomial_power(a, b, m, n, seed)?;
    let g = gin(&v, &GinConfig::with_seed(trial_seed(seed, 2)))?;
    let lead = Monomial::new({
        let mut e = vec![0; n];
        e[0] = a;
        e
    });
    let expected_gin = MonomialSpace::new(
        n,
        a + b,
        monomials_of_degree(m, b)
            .into_iter()
            .map(|mono| mono.extend(n - m).mul(&lead)),
    )?;
    let gin_matches = g.monomials == expected_gin;
    let factor_divides = has_common_factor(&v, &p)?;
    let depth = n - m;
    let window = a + b + 2;
    let restriction = restriction_report(&v, depth, window)?;
    let codimension = check_locus_codimension(&v, depth, a + b + DEFAULT_WINDOW)?;
    let ok = gin_matches
        && factor_divides
        && restriction.verdict == Verdict::Pass
        && codimension.c_j == Some(1);
    let verdict = Verdict::from_bool(ok).and(codimension.verdict);
    Ok(CommonFactorScenarioReport {
        a,
        b,
        m,
        n,
        seed,
        factor: p.to_string(),
        gin: g.monomials,
        expected_gin,
        gin_matches,
        factor_divides,
        restriction,
        codimension,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_classification() {
        assert_eq!(classify_tail(&[6, 4, 3, 3, 3], 2, 3), LocusStatus::Points { count: 3 });
        assert_eq!(classify_tail(&[6, 4, 1, 0, 0], 2, 3), LocusStatus::Empty);
        assert_eq!(
            classify_tail(&[4, 5, 6, 7, 8], 2, 3),
            LocusStatus::Positive {
                dimension: 1,
                degree: 1
            }
        );
        assert_eq!(classify_tail(&[9, 7, 5], 2, 3), LocusStatus::Inconclusive);
    }

    #[test]
    fn staircase_literal() {
        let s = cubic_staircase();
        let got: Vec<Vec<u32>> = s.iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(got, vec![vec![3, 0, 0], vec![2, 1, 0], vec![1, 2, 0], vec![2, 0, 1]]);
    }

    #[test]
    fn common_factor_candidates() {
        let (q, p) = default_quadric_and_cubic();
        let v = quadric_multiples_plus_cubic(&q, &p).unwrap();
        assert!(!has_common_factor(&v, &q).unwrap());
        assert!(has_common_factor(&v, &Polynomial::constant(3, int(1))).unwrap());
        let w = FormSpace::span(
            &(1..=3)
                .map(|i| q.mul(&Polynomial::var(3, i)).unwrap())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(has_common_factor(&w, &q).unwrap());
    }

    #[test]
    fn quartic_explorer_rejects_wrong_shape() {
        assert!(matches!(
            explore_quartic_colons(&FormSpace::full(3, 3), 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn depth_bounds() {
        let v = FormSpace::full(3, 2);
        assert!(check_restricted_ideal_at_depth(&v, 2, 4).is_err());
        assert!(check_restricted_ideal_at_depth(&v, 0, 4).is_err());
    }

    #[test]
    fn staircase_examples_suite_passes() {
        let r = check_staircase_examples(&StaircaseExamplesConfig::default()).unwrap();
        for c in &r.cases {
            assert!(c.pass, "case {} failed: {:?}", c.name, c);
        }
        for c in &r.span_checks {
            assert!(c.pass, "span {} failed: {:?}", c.name, c);
        }
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn quartic_example_matches() {
        let r = check_quartic_example(0).unwrap();
        assert_eq!(r.dim, 7);
        assert!(r.gin_matches, "{}", r.gin);
        assert!(r.initial_colon_matches, "{}", r.colons.initial_colon_last);
        assert!(r.colons.colon_square_nonzero);
    }

    #[test]
    fn common_factor_scenarios() {
        for (a, b, m, n) in [(1, 2, 3, 3), (1, 1, 3, 4)] {
            let r = check_common_factor_scenario(a, b, m, n, 5, DEFAULT_DEGREE_CAP).unwrap();
            assert!(r.gin_matches && r.factor_divides, "{r:?}");
            assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        }
        assert!(matches!(
            check_common_factor_scenario(4, 5, 3, 3, 0, DEFAULT_DEGREE_CAP),
            Err(Error::Size(_))
        ));
    }

    #[test]
    fn zero_space_has_no_codimension() {
        assert!(check_locus_codimension(&FormSpace::zero(3, 2), 0, 6).is_err());
    }
}
