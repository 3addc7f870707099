mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::Rng;

use common::*;
use ginspace::change::random_form;
use ginspace::formspace::ideal_pieces_of;
use ginspace::gin::{gin, generify, trial_seed, GinConfig};
use ginspace::io::{parse, parse_polynomial, print_document};
use ginspace::linalg::pivot_columns_mod_p;
use ginspace::monomial::monomials_of_degree;
use ginspace::stable::minimal_generators;
use ginspace::verify::has_common_factor;
use ginspace::{
    borel_closure, build_j, expand_t_coefficients, green_predicate, FormSpace, LinearChange, Matrix, Monomial,
    MonomialIdeal, MonomialSpace, Polynomial,
};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn random_matrix(seed: u64) -> Matrix {
    let mut r = rng(seed);
    let rows = r.gen_range(1..=6);
    let cols = r.gen_range(1..=7);
    let data: Vec<Vec<_>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    // mostly zeros and small integers, some fractions
                    match r.gen_range(0..10) {
                        0..=3 => int(0),
                        4..=8 => int(r.gen_range(-4..=4)),
                        _ => int(r.gen_range(-5..=5)) / int(r.gen_range(1..=4)),
                    }
                })
                .collect()
        })
        .collect();
    // repeat a row now and then to force dependencies
    let mut data = data;
    if rows > 1 && r.gen_bool(0.5) {
        let combo: Vec<_> = data[0].iter().zip(&data[1]).map(|(a, b)| a * int(2) - b).collect();
        data.push(combo);
    }
    Matrix::from_rows(cols, data).unwrap()
}

proptest! {
    #![proptest_config(config(96))]

    #[test]
    fn rank_agrees_with_naive_elimination(seed in any::<u64>()) {
        let m = random_matrix(seed);
        let rows: Vec<Vec<_>> = m.row_iter().map(<[_]>::to_vec).collect();
        prop_assert_eq!(m.rank(), naive_rank(&rows));
    }

    #[test]
    fn rank_plus_nullity(seed in any::<u64>()) {
        let m = random_matrix(seed);
        let k = m.nullspace();
        prop_assert_eq!(m.rank() + k.nrows(), m.ncols());
        if k.nrows() > 0 {
            prop_assert!(m.mul(&k.transpose()).unwrap().is_zero());
        }
    }

    #[test]
    fn rref_is_idempotent(seed in any::<u64>()) {
        let m = random_matrix(seed);
        let (r, pivots) = m.rref();
        let (rr, pivots2) = r.rref();
        prop_assert_eq!(r, rr);
        prop_assert_eq!(pivots, pivots2);
    }

    #[test]
    fn rank_mod_p_never_exceeds_rational_rank(seed in any::<u64>()) {
        let m = random_matrix(seed);
        if let Some(p) = pivot_columns_mod_p(&m, 7) {
            prop_assert!(p.len() <= m.rank());
        }
    }

    #[test]
    fn grassmann_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=4);
        let d = r.gen_range(1..=3);
        let ka = r.gen_range(1..=5);
        let kb = r.gen_range(1..=5);
        let a = sparse_space(n, d, ka, &mut r);
        let b = sparse_space(n, d, kb, &mut r);
        let sum = a.sum(&b).unwrap();
        let meet = a.intersect(&b).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), a.dim() + b.dim());
        prop_assert!(meet.is_subspace_of(&a).unwrap() && meet.is_subspace_of(&b).unwrap());
    }

    #[test]
    fn substitution_is_a_ring_map(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=4);
        let p = random_form(n, r.gen_range(0..=3), &mut r, 5);
        let q = random_form(n, r.gen_range(0..=2), &mut r, 5);
        let s = random_form(n, p.degree(), &mut r, 5);
        let g = LinearChange::random(n, seed, 5).unwrap();
        let pg = p.substitute_linear(&g).unwrap();
        prop_assert_eq!(p.mul(&q).unwrap().substitute_linear(&g).unwrap(), pg.mul(&q.substitute_linear(&g).unwrap()).unwrap());
        prop_assert_eq!(p.add(&s).unwrap().substitute_linear(&g).unwrap(), pg.add(&s.substitute_linear(&g).unwrap()).unwrap());
        prop_assert_eq!(pg.substitute_linear(&g.inverse()).unwrap(), p);
    }

    #[test]
    fn exact_division_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=4);
        let p = random_form(n, r.gen_range(0..=2), &mut r, 6);
        let q = random_form(n, r.gen_range(0..=2), &mut r, 6);
        prop_assume!(!p.is_zero() && !q.is_zero());
        let f = p.mul(&q).unwrap();
        prop_assert_eq!(f.exact_divide(&p).unwrap(), Some(q.clone()));
        // adding a term outside p's multiples breaks divisibility
        let stray = f.add(&Polynomial::monomial(Monomial::var(n, n)).pow(f.degree())).unwrap();
        if let Some(quot) = stray.exact_divide(&p).unwrap() {
            prop_assert_eq!(quot.mul(&p).unwrap(), stray);
        }
    }

    #[test]
    fn t_coefficients_reassemble(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_form(5, r.gen_range(1..=3), &mut r, 4);
        let parts = expand_t_coefficients(&p, 3, &[4, 5]).unwrap();
        let mut total = Polynomial::zero(5, p.degree());
        for (t, x) in parts {
            prop_assert_eq!(x.nvars(), 3);
            for (xm, c) in x.terms() {
                let mut e = xm.exponents().to_vec();
                e.extend_from_slice(t.exponents());
                let term = Polynomial::from_terms(5, [(Monomial::new(e), c.clone())]).unwrap();
                total = total.add(&term).unwrap();
            }
        }
        prop_assert_eq!(total, p);
    }

    #[test]
    fn borel_closure_is_smallest_stable_superset(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=4);
        let d = r.gen_range(1..=4);
        let all = monomials_of_degree(n, d);
        let picked: Vec<Monomial> = (0..r.gen_range(1..=3)).map(|_| all[r.gen_range(0..all.len())].clone()).collect();
        let s = MonomialSpace::new(n, d, picked.clone()).unwrap();
        let c = s.borel_closure();
        prop_assert!(c.is_strongly_stable());
        prop_assert!(s.is_subset(&c));
        prop_assert_eq!(c.borel_closure(), c.clone());
        // every stable space containing s contains c
        prop_assert!(c.is_subset(&MonomialSpace::full(n, d)));
        prop_assert_eq!(borel_closure(n, picked).unwrap().piece(d), c);
    }

    #[test]
    fn colon_times_monomial_lands_in_space(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=4);
        let d = r.gen_range(2..=3);
        let v = sparse_space(n, d, r.gen_range(1..=6), &mut r);
        let m = monomials_of_degree(n, r.gen_range(1..=d))[0].clone();
        let m = Monomial::new(m.exponents().iter().rev().cloned().collect());
        let colon = v.colon_monomial(&m).unwrap();
        for q in colon.basis_polynomials() {
            prop_assert!(v.contains(&q.mul_monomial(&m)).unwrap());
        }
        // independent route through the left kernel
        prop_assert_eq!(colon, v.colon_polynomial(&Polynomial::monomial(m)).unwrap());
    }

    #[test]
    fn ideal_pieces_match_brute_force(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=3);
        let d = r.gen_range(1..=3);
        let v = sparse_space(n, d, r.gen_range(1..=4), &mut r);
        for e in d..=d + 2 {
            let piece = v.ideal_piece(e).unwrap();
            prop_assert_eq!(piece.dim(), brute_ideal_dim(&v, e));
            for b in v.basis_polynomials() {
                for m in monomials_of_degree(n, e - d) {
                    prop_assert!(piece.contains(&b.mul_monomial(&m)).unwrap());
                }
            }
        }
        let pieces = ideal_pieces_of(n, &v.basis_polynomials(), d + 2).unwrap();
        prop_assert_eq!(&pieces[&(d + 2)], &v.ideal_piece(d + 2).unwrap());
    }

    #[test]
    fn parse_print_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=5);
        let forms: Vec<Polynomial> = (0..r.gen_range(1..=4))
            .map(|_| {
                let p = random_form(n, 2, &mut r, 9);
                p.scale(&(int(r.gen_range(1..=5)) / int(r.gen_range(1..=7))))
            })
            .filter(|p| !p.is_zero())
            .collect();
        for p in &forms {
            prop_assert_eq!(&parse_polynomial(&p.to_string(), n).unwrap(), p);
        }
        let doc = parse(&print_document(n, &forms)).unwrap();
        prop_assert_eq!(doc.nvars, n);
        prop_assert_eq!(doc.polynomials, forms);
    }

    #[test]
    fn common_factor_is_detected(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=4);
        let a = r.gen_range(1..=2);
        let b = r.gen_range(1..=2);
        let (v, p) = divisor_space(n, a, b, &mut r);
        prop_assert!(has_common_factor(&v, &p).unwrap());
        prop_assert!(has_common_factor(&v, &Polynomial::constant(n, one())).unwrap());
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn gin_is_invariant_under_coordinate_change(seed in any::<u64>()) {
        let mut r = rng(seed);
        let v = random_small_space(&mut r);
        let g1 = gin(&v, &GinConfig::with_seed(seed)).unwrap();
        let moved = generify(&v, trial_seed(seed, 99)).unwrap();
        let g2 = gin(&moved, &GinConfig::with_seed(seed ^ 1)).unwrap();
        prop_assert_eq!(g1.monomials.clone(), g2.monomials);
        prop_assert!(g1.monomials.is_strongly_stable());
        prop_assert_eq!(g1.monomials.len(), v.dim());
    }

    #[test]
    fn gin_is_deterministic(seed in any::<u64>()) {
        let mut r = rng(seed);
        let v = random_small_space(&mut r);
        prop_assert_eq!(gin(&v, &GinConfig::with_seed(seed)).unwrap(), gin(&v, &GinConfig::with_seed(seed)).unwrap());
    }
}

#[test]
fn initial_space_of_restriction_and_colon() {
    let mut r = rng(1);
    for _ in 0..100 {
        let v = random_small_space(&mut r);
        let n = v.nvars();
        let in_v = v.initial_space();
        assert_eq!(v.restrict(1).unwrap().initial_space(), in_v.restrict(1).unwrap());
        assert_eq!(
            v.colon_last_power(1).unwrap().initial_space(),
            in_v.colon(&Monomial::var(n, n)).unwrap()
        );
        assert_eq!(v.colon_last_power(2).unwrap(), v.colon_last_iterated(2).unwrap());
    }
}

#[test]
fn stable_spaces_are_their_own_gin() {
    let spaces = all_stable_spaces(3, 3);
    assert!(spaces.len() > 10);
    for (k, t) in spaces.iter().enumerate() {
        let v = FormSpace::from_monomials(t);
        let g = gin(&v, &GinConfig::with_seed(k as u64)).unwrap();
        assert_eq!(&g.monomials, t);
    }
}

#[test]
fn hilbert_function_matches_enumeration() {
    for d in 1..=4 {
        for t in all_stable_spaces(3, d) {
            let ideal = MonomialIdeal::new(3, t.iter().cloned()).unwrap();
            for e in d..=d + 3 {
                let brute = brute_monomial_ideal_dim(&t.to_vec(), 3, e) as u64;
                assert_eq!(ideal.hilbert_function(e, false), brute, "{t} in degree {e}");
                assert_eq!(
                    ideal.hilbert_function(e, true),
                    monomials_of_degree(3, e).len() as u64 - brute
                );
            }
        }
    }
}

#[test]
fn colon_then_restrict_chain_is_ideal_like() {
    for d in 1..=4 {
        for t in all_stable_spaces(3, d) {
            for r in 1..=d {
                let upper = t.colon_last_power(r).unwrap().restrict(1).unwrap();
                let lower = t.colon_last_power(r - 1).unwrap().restrict(1).unwrap();
                assert!(upper.is_strongly_stable() || upper.is_empty());
                assert!(upper.times_variables().is_subset(&lower), "{t}, r = {r}");
            }
            let j = build_j(&t).unwrap();
            // pieces at and above d are those of the restricted ideal
            let restricted = MonomialIdeal::new(2, t.restrict(1).unwrap().iter().cloned()).unwrap();
            for e in d..=d + 3 {
                assert_eq!(j.piece(e), restricted.piece(e), "{t}, degree {e}");
            }
        }
    }
}

#[test]
fn monomial_green_predicate() {
    // strongly stable ideals given by Borel generators of degree < d
    let mut r = rng(3);
    for _ in 0..50 {
        let n = r.gen_range(3..=4);
        let d = r.gen_range(2..=4);
        let gens: Vec<Monomial> = (0..r.gen_range(1..=3))
            .map(|_| {
                let all = monomials_of_degree(n, r.gen_range(1..d));
                all[r.gen_range(0..all.len())].clone()
            })
            .collect();
        let ideal = borel_closure(n, gens).unwrap();
        let pieces: BTreeMap<u32, MonomialSpace> = (0..=d + 3).map(|e| (e, ideal.piece(e))).collect();
        assert!(green_predicate(&pieces, d).unwrap());
        let rebuilt = minimal_generators(&pieces).unwrap();
        assert_eq!(rebuilt, ideal);
        let by_degree = generators_from_pieces(&pieces);
        for e in d..=d + 3 {
            assert!(by_degree[&e].is_empty());
        }
    }
}
