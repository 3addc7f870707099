//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ginspace::change::random_form;
use ginspace::monomial::monomials_of_degree;
use ginspace::{FormSpace, Monomial, MonomialSpace, Polynomial, Scalar};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(v.into())
}

/// A sparse form: a few random monomials of degree `d` with small nonzero
/// coefficients. Sparse forms give a varied mix of initial spaces.
pub fn sparse_form(n: usize, d: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let all = monomials_of_degree(n, d);
    let terms = rng.gen_range(1..=4);
    let picked = (0..terms).map(|_| {
        let m = all[rng.gen_range(0..all.len())].clone();
        let mut c = rng.gen_range(-3i64..=3);
        if c == 0 {
            c = 1;
        }
        (m, int(c))
    });
    Polynomial::from_terms(n, picked).unwrap()
}

/// Span of `k` sparse forms; may have dimension below `k`.
pub fn sparse_space(n: usize, d: u32, k: usize, rng: &mut ChaCha8Rng) -> FormSpace {
    let forms: Vec<Polynomial> = (0..k).map(|_| sparse_form(n, d, rng)).collect();
    FormSpace::from_polynomials(n, d, &forms).unwrap()
}

/// Random (n, d, space) with n in {3, 4}, d in {2, 3}, 1..=6 sparse
/// generators, never the zero space.
pub fn random_small_space(rng: &mut ChaCha8Rng) -> FormSpace {
    loop {
        let n = rng.gen_range(3..=4);
        let d = rng.gen_range(2..=3);
        let k = rng.gen_range(1..=6);
        let v = sparse_space(n, d, k, rng);
        if !v.is_zero() {
            return v;
        }
    }
}

/// `p * S_b` for a random dense `p` of degree `a`.
pub fn divisor_space(n: usize, a: u32, b: u32, rng: &mut ChaCha8Rng) -> (FormSpace, Polynomial) {
    let p = random_form(n, a, rng, 50);
    let gens: Vec<Polynomial> = monomials_of_degree(n, b)
        .into_iter()
        .map(|m| p.mul_monomial(&m))
        .collect();
    (FormSpace::from_polynomials(n, a + b, &gens).unwrap(), p)
}

/// Rank by plain Gaussian elimination over the rationals, written without
/// any of the library's elimination code.
pub fn naive_rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone() / pivot.clone();
                for k in c..cols {
                    let sub = m[rank][k].clone() * f.clone();
                    m[r][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Coefficient row of `p` against all monomials of its degree.
pub fn coefficient_row(p: &Polynomial, n: usize, e: u32) -> Vec<Scalar> {
    monomials_of_degree(n, e)
        .iter()
        .map(|m| p.coefficient(m))
        .collect()
}

/// `dim (I_V)_e` by listing every product `m * b` (m a monomial of degree
/// `e - d`, b a basis element) and taking the naive rank.
pub fn brute_ideal_dim(v: &FormSpace, e: u32) -> usize {
    let n = v.nvars();
    if e < v.degree() {
        return 0;
    }
    let rows: Vec<Vec<Scalar>> = monomials_of_degree(n, e - v.degree())
        .iter()
        .flat_map(|m| v.basis_polynomials().into_iter().map(move |b| b.mul_monomial(m)))
        .map(|p| coefficient_row(&p, n, e))
        .collect();
    if rows.is_empty() {
        0
    } else {
        naive_rank(&rows)
    }
}

/// Count of degree-`e` monomials divisible by some generator.
pub fn brute_monomial_ideal_dim(gens: &[Monomial], n: usize, e: u32) -> usize {
    monomials_of_degree(n, e)
        .iter()
        .filter(|m| gens.iter().any(|g| g.divides(m)))
        .count()
}

/// Every strongly stable subset of the degree-`d` monomials in `n`
/// variables, by exhaustive enumeration.
pub fn all_stable_spaces(n: usize, d: u32) -> Vec<MonomialSpace> {
    let all = monomials_of_degree(n, d);
    assert!(all.len() <= 20, "enumeration too large");
    (0u32..(1 << all.len()))
        .map(|mask| {
            MonomialSpace::new(
                n,
                d,
                all.iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, m)| m.clone()),
            )
            .unwrap()
        })
        .filter(MonomialSpace::is_strongly_stable)
        .collect()
}

/// Minimal generators by degree, read off explicit pieces: a monomial of
/// degree `e` is a generator when no variable divides it into the
/// previous piece.
pub fn generators_from_pieces(pieces: &BTreeMap<u32, MonomialSpace>) -> BTreeMap<u32, Vec<Monomial>> {
    let mut out = BTreeMap::new();
    for (&e, piece) in pieces {
        let below = e.checked_sub(1).and_then(|b| pieces.get(&b));
        let gens: Vec<Monomial> = piece
            .iter()
            .filter(|m| {
                let n = m.nvars();
                !(1..=n).any(|i| {
                    m.exponent(i) > 0
                        && below.is_some_and(|b| {
                            b.contains(&m.div(&Monomial::var(n, i)).expect("divisible"))
                        })
                })
            })
            .cloned()
            .collect();
        out.insert(e, gens);
    }
    out
}

pub fn one() -> Scalar {
    Scalar::one()
}
