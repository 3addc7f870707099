//! Generic initial spaces by random coordinate changes.
//!
//! `gin(V)` is the initial space of `g . V` for `g` in a dense open set of
//! coordinate changes. We draw `g` at random, discard any trial whose
//! initial space is not strongly stable (a generic result always is), and
//! certify by agreement of independent trials. Every result carries the
//! master seed it was computed from.

use rayon::prelude::*;
use serde::Serialize;

use crate::change::LinearChange;
use crate::error::{Error, Result};
use crate::formspace::{columns, FormSpace};
use crate::linalg::{pivot_columns_mod_p, Matrix};
use crate::stable::MonomialSpace;

pub const DEFAULT_TRIALS: usize = 3;
pub const DEFAULT_RANGE: u64 = 1000;
pub const DEFAULT_PRIME: u64 = 32003;
pub const DEFAULT_ROUNDS: usize = 3;

/// Field used for the per-trial elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Arithmetic {
    /// Exact rationals (characteristic zero).
    Rational,
    /// Pivots computed over `Z/p`. Faster, but a probabilistic shortcut:
    /// an unlucky prime can change the staircase.
    Prime(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GinConfig {
    pub trials: usize,
    pub seed: u64,
    pub range: u64,
    pub arithmetic: Arithmetic,
    /// Rounds of `trials` attempts before giving up on agreement.
    pub rounds: usize,
}

impl Default for GinConfig {
    fn default() -> Self {
        GinConfig {
            trials: DEFAULT_TRIALS,
            seed: 0,
            range: DEFAULT_RANGE,
            arithmetic: Arithmetic::Rational,
            rounds: DEFAULT_ROUNDS,
        }
    }
}

impl GinConfig {
    pub fn with_seed(seed: u64) -> Self {
        GinConfig {
            seed,
            ..GinConfig::default()
        }
    }

    pub fn trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GinResult {
    pub monomials: MonomialSpace,
    /// Retained (strongly stable) trials in the deciding round.
    pub trials: usize,
    /// Trials discarded for failing strong stability.
    pub discarded: usize,
    pub agreed: bool,
    pub seed: u64,
    /// Every distinct retained staircase seen, in order of appearance.
    pub staircases: Vec<MonomialSpace>,
}

/// Random invertible change with entries in `[-range, range]`.
pub fn random_change(n: usize, seed: u64, range: u64) -> Result<LinearChange> {
    if range < 2 {
        return Err(Error::Invalid("coefficient range must be at least 2".into()));
    }
    LinearChange::random(n, seed, range)
}

/// Seed for trial `k` of a run with master seed `master` (splitmix64).
pub fn trial_seed(master: u64, k: u64) -> u64 {
    let mut z = master.wrapping_add(k.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `in(g . V)` for one change `g`.
pub fn initial_after_change(v: &FormSpace, g: &LinearChange, arithmetic: Arithmetic) -> Result<MonomialSpace> {
    match arithmetic {
        Arithmetic::Rational => Ok(v.substitute(g)?.initial_space()),
        Arithmetic::Prime(p) => {
            let cols = columns(v.nvars(), v.degree());
            let mut rows = Vec::with_capacity(v.dim());
            for b in v.basis_polynomials() {
                let moved = b.substitute_linear(g)?;
                let mut row = vec![crate::scalar::zero(); cols.len()];
                for (m, c) in moved.terms() {
                    row[cols.position(m).expect("same degree")] = c.clone();
                }
                rows.push(row);
            }
            let m = Matrix::from_rows(cols.len(), rows)?;
            match pivot_columns_mod_p(&m, p) {
                Some(pivots) => MonomialSpace::new(
                    v.nvars(),
                    v.degree(),
                    pivots.into_iter().map(|c| cols.monomials[c].clone()),
                ),
                None => Ok(v.substitute(g)?.initial_space()),
            }
        }
    }
}

fn run_round(v: &FormSpace, config: &GinConfig, round: usize) -> Result<(Vec<MonomialSpace>, usize)> {
    let base = (round * config.trials) as u64;
    let outcomes: Result<Vec<MonomialSpace>> = (0..config.trials as u64)
        .into_par_iter()
        .map(|k| {
            let g = random_change(v.nvars(), trial_seed(config.seed, base + k), config.range)?;
            initial_after_change(v, &g, config.arithmetic)
        })
        .collect();
    let outcomes = outcomes?;
    let total = outcomes.len();
    let retained: Vec<MonomialSpace> = outcomes
        .into_iter()
        .filter(MonomialSpace::is_strongly_stable)
        .collect();
    let discarded = total - retained.len();
    Ok((retained, discarded))
}

fn distinct(seen: &mut Vec<MonomialSpace>, found: &[MonomialSpace]) {
    for s in found {
        if !seen.contains(s) {
            seen.push(s.clone());
        }
    }
}

/// One round of trials, reporting whether the retained ones agree.
pub fn gin_trials(v: &FormSpace, config: &GinConfig) -> Result<GinResult> {
    if config.trials == 0 {
        return Err(Error::Invalid("at least one trial is required".into()));
    }
    let (retained, discarded) = run_round(v, config, 0)?;
    let mut staircases = Vec::new();
    distinct(&mut staircases, &retained);
    let agreed = staircases.len() == 1;
    let monomials = staircases
        .first()
        .cloned()
        .unwrap_or_else(|| MonomialSpace::empty(v.nvars(), v.degree()));
    Ok(GinResult {
        monomials,
        trials: retained.len(),
        discarded,
        agreed,
        seed: config.seed,
        staircases,
    })
}

/// Generic initial space, certified by agreement of independent trials.
/// Retries up to `config.rounds` rounds; fails with every staircase seen if
/// no round agrees.
pub fn gin(v: &FormSpace, config: &GinConfig) -> Result<GinResult> {
    if config.trials == 0 {
        return Err(Error::Invalid("at least one trial is required".into()));
    }
    let mut seen = Vec::new();
    let mut discarded_total = 0;
    for round in 0..config.rounds.max(1) {
        let (retained, discarded) = run_round(v, config, round)?;
        discarded_total += discarded;
        distinct(&mut seen, &retained);
        if !retained.is_empty() && retained.iter().all(|s| s == &retained[0]) {
            return Ok(GinResult {
                monomials: retained[0].clone(),
                trials: retained.len(),
                discarded: discarded_total,
                agreed: true,
                seed: config.seed,
                staircases: seen,
            });
        }
    }
    Err(Error::NonGeneric {
        staircases: seen.iter().map(MonomialSpace::to_vec).collect(),
    })
}

/// `g . V` for one random change drawn from `seed`.
pub fn generify(v: &FormSpace, seed: u64) -> Result<FormSpace> {
    generify_with_range(v, seed, DEFAULT_RANGE)
}

pub fn generify_with_range(v: &FormSpace, seed: u64, range: u64) -> Result<FormSpace> {
    let g = random_change(v.nvars(), seed, range)?;
    v.substitute(&g)
}
