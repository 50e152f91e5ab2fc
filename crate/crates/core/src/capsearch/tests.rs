use super::*;
use crate::exactmath::{is_prime, PolyModP};
use crate::kummerfrob::{check_conditions, residue_character, QuadInteger, SearchParams};
use crate::quadfield::{aug_unit_mod_m, Modulus, QuadraticField, RayClassGroup};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn period_polynomials() {
    assert_eq!(gaussian_period_min_poly(5, 2).unwrap(), ints(&[-1, 1, 1]));
    assert_eq!(gaussian_period_min_poly(7, 3).unwrap(), ints(&[-1, -2, 1, 1]));
    assert_eq!(gaussian_period_min_poly(13, 1).unwrap(), ints(&[1, 1]));
    // quadratic subfield of Q(zeta_13) is Q(sqrt 13): x^2 + x - 3
    assert_eq!(gaussian_period_min_poly(13, 2).unwrap(), ints(&[-3, 1, 1]));
    assert!(gaussian_period_min_poly(13, 5).is_err());
    assert!(gaussian_period_min_poly(15, 2).is_err());
}

#[test]
fn char_poly_small() {
    let m = vec![ints(&[2, 1]), ints(&[1, 3])];
    // x^2 - 5x + 5
    assert_eq!(char_poly(&m), ints(&[5, -5, 1]));
}

#[test]
fn period_roots_are_totally_real() {
    // sign changes of the polynomial over a fine grid account for every root
    for (p, m) in [(17u64, 4u64), (41, 4), (37, 9), (97, 8)] {
        let f = gaussian_period_min_poly(p, m).unwrap();
        let c: Vec<f64> = f.iter().map(|x| x.to_string().parse().unwrap()).collect();
        let ev = |x: f64| c.iter().rev().fold(0.0, |a, &b| a * x + b);
        let bound = (p as f64).sqrt() + 1.0;
        let steps = 200_000;
        let mut changes = 0;
        let mut prev = ev(-bound);
        for i in 1..=steps {
            let x = -bound + 2.0 * bound * i as f64 / steps as f64;
            let v = ev(x);
            if v == 0.0 || (v < 0.0) != (prev < 0.0) {
                changes += 1;
            }
            prev = v;
        }
        assert_eq!(changes, m as usize, "p = {p}, m = {m}");
    }
}

#[test]
fn factor_degrees_match_characters() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 50 {
        let (ell, n) = if rng.gen_bool(0.5) { (2u64, rng.gen_range(1..4u32)) } else { (3u64, rng.gen_range(1..3u32)) };
        let m = ell.pow(n);
        let p = loop {
            let p = rng.gen_range(3..3000u64);
            if is_prime(p) && (p - 1) % m == 0 {
                break p;
            }
        };
        let q = loop {
            let q = rng.gen_range(2..500u64);
            if is_prime(q) && q != p {
                break q;
            }
        };
        let f = PolyModP::from_integers(&gaussian_period_min_poly(p, m).unwrap(), q).unwrap();
        if !f.is_squarefree() {
            continue;
        }
        let chi = residue_character(1, &QuadInteger::rational(q as i64), p, ell, n, 1).unwrap();
        let degs = f.factor_degrees();
        assert!(degs.iter().all(|&d| d as u64 == chi.order), "p = {p}, q = {q}, m = {m}: {degs:?} vs {}", chi.order);
        assert_eq!(chi.order, coset_order(q, p, m));
        checked += 1;
    }
}

#[test]
fn hints() {
    let h = power_adjustment_hint(2, 1).unwrap();
    assert_eq!((h.conductor, h.degree), (8, 2));
    let h = power_adjustment_hint(2, 2).unwrap();
    assert_eq!((h.conductor, h.degree), (16, 4));
    let h = power_adjustment_hint(3, 1).unwrap();
    assert_eq!((h.conductor, h.degree), (9, 3));
}

fn setup(d: i64) -> (QuadraticField, RayClassGroup, crate::quadfield::QuadUnit) {
    let k = QuadraticField::new(d).unwrap();
    let rcg = RayClassGroup::compute(&k, Modulus::trivial()).unwrap();
    let (eps, _) = aug_unit_mod_m(&k, &rcg.modulus).unwrap();
    (k, rcg, eps)
}

#[test]
fn search_q_sqrt34() {
    let (k, rcg, eps) = setup(34);
    let params = SearchParams::new(2, 1, 0, 2, 1_000_000).unwrap();
    let out = find_principalizing_prime(&k, &rcg, &[1], &eps, &params, 4).unwrap();
    let SearchOutcome::Found { certificate, field, stats } = out else { panic!("{out:?}") };
    assert!(certificate.checks.all());
    assert_eq!(field.degree, 2);
    assert_eq!(field.p, certificate.p);
    let again = check_conditions(&k, &rcg, &[1], &eps, certificate.p, &params).unwrap().unwrap();
    assert!(again.checks.all());
    assert!(stats.examined >= 1);
    // monotone in the bound and independent of the thread count
    let small = SearchParams::new(2, 1, 0, 2, certificate.p).unwrap();
    let out2 = find_principalizing_prime(&k, &rcg, &[1], &eps, &small, 1).unwrap();
    let SearchOutcome::Found { certificate: c2, .. } = out2 else { panic!() };
    assert_eq!(c2.p, certificate.p);
}

#[test]
fn search_trivial_target_and_small_bound() {
    // h(3) = 1 and 2 + sqrt 3 = (1 + sqrt 3)^2 / 2, so p = 13 is the first prime
    let (k3, rcg3, eps3) = setup(3);
    let params = SearchParams::new(2, 1, 0, 1, 10_000).unwrap();
    match find_principalizing_prime(&k3, &rcg3, &[], &eps3, &params, 2).unwrap() {
        SearchOutcome::Found { certificate, .. } => assert_eq!(certificate.p, 13),
        other => panic!("{other:?}"),
    }
    let (k, rcg, eps) = setup(34);
    let tiny = SearchParams::new(2, 1, 0, 2, 4).unwrap();
    match find_principalizing_prime(&k, &rcg, &[1], &eps, &tiny, 2).unwrap() {
        SearchOutcome::NotFound { stats } => {
            assert_eq!(stats.bound, 4);
            assert_eq!(stats.examined + stats.excluded, 1);
        }
        other => panic!("{other:?}"),
    }
    // h = 1 asks for a square class in Z/2
    let blocked = SearchParams::new(2, 2, 1, 2, 1000).unwrap();
    assert!(matches!(
        find_principalizing_prime(&k, &rcg, &[1], &eps, &blocked, 1).unwrap(),
        SearchOutcome::PowerBlocked { .. }
    ));
    assert!(find_principalizing_prime(&k, &rcg, &[1], &eps, &SearchParams::new(3, 1, 0, 0, 100).unwrap(), 1).is_err());
}

#[test]
fn trivial_class_forces_square_unit_in_q_sqrt34() {
    // 35 + 6 sqrt 34 = (6 + sqrt 34)^2 / 2: for p ≡ 1 mod 4 the prime p_K is
    // principal exactly when eps is a square mod p_K
    let (k, rcg, eps) = setup(34);
    let params = SearchParams::new(2, 1, 0, 2, 20_000).unwrap();
    match find_principalizing_prime(&k, &rcg, &[0], &eps, &params, 2).unwrap() {
        SearchOutcome::NotFound { stats } => {
            assert_eq!(stats.rejections.get(&crate::kummerfrob::Rejection::Power), None);
            assert!(stats.rejections[&crate::kummerfrob::Rejection::Character] > 0);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn totally_real_level_congruence() {
    // the degree l^n field is real iff (p - 1) / l^n is even
    let (k, rcg, eps) = setup(34);
    let params = SearchParams::new(2, 1, 0, 2, 1_000_000).unwrap();
    let SearchOutcome::Found { certificate, .. } = find_principalizing_prime(&k, &rcg, &[1], &eps, &params, 2).unwrap() else { panic!() };
    assert_eq!((certificate.p - 1) / 2 % 2, 0);
}
