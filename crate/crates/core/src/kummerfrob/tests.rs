use super::*;
use crate::exactmath::{pow_mod, primes_in_progression};
use crate::nf::NumberField;
use crate::quadfield::{aug_unit_mod_m, Modulus};
use proptest::prelude::*;

fn minus_one_is_power(p: u64, m: u64) -> bool {
    (1..p).any(|x| pow_mod(x, m, p) == p - 1)
}

#[test]
fn cyclotomic_examples() {
    assert!(is_split_cyclotomic(17, 2, 3, false));
    assert!(is_split_cyclotomic(7, 3, 1, false));
    assert!(!is_split_cyclotomic(7, 2, 2, false));
    // 3^8 = -1 mod 17, so -1 is an 8th power
    assert_eq!(is_split_cyclotomic(17, 2, 3, true), minus_one_is_power(17, 8));
    assert!(is_split_cyclotomic(17, 2, 3, true));
}

#[test]
fn unit_radical_matches_brute_force() {
    for p in primes_in_progression(1, 1, 1500).unwrap().filter(|&p| p > 2) {
        for n in 1..4u32 {
            let m = 1u64 << n;
            if is_split_cyclotomic(p, 2, n, false) {
                assert_eq!(is_split_cyclotomic(p, 2, n, true), minus_one_is_power(p, m), "p = {p}, n = {n}");
            }
        }
    }
}

#[test]
fn character_examples() {
    let one = residue_character(8, &QuadInteger::rational(1), 17, 2, 3, 5).unwrap();
    assert_eq!(one.order, 1);
    let r = standard_root(8, 17).unwrap();
    let two = residue_character(8, &QuadInteger::rational(2), 17, 2, 3, r).unwrap();
    assert_eq!(two.value, 4);
    assert_eq!(two.order, 4);
    assert_eq!(pow_mod(4, 2, 17), 16);
    // 3 + 2 sqrt 2 = (6 + 2 sqrt 8) / 2
    let eps = QuadInteger { x: BigInt::from(6), y: BigInt::from(2) };
    let r = standard_root(8, 41).unwrap();
    let a = residue_character(8, &eps, 41, 2, 3, r).unwrap();
    let b = residue_character(8, &eps, 41, 2, 3, 41 - r).unwrap();
    assert_eq!(a.order, b.order);
    assert_eq!(mul_mod(a.value, b.value, 41), 1);
}

#[test]
fn character_errors() {
    assert!(residue_character(8, &QuadInteger::rational(2), 11, 2, 1, 1).is_err());
    assert!(residue_character(8, &QuadInteger::rational(17), 17, 2, 3, 5).is_err());
    assert!(residue_character(8, &QuadInteger::rational(2), 17, 2, 3, 6).is_err());
}

#[test]
fn order_counts_exact() {
    for p in primes_in_progression(1, 1, 500).unwrap().filter(|&p| p > 2) {
        for (ell, n) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2)] {
            let ln = ell.pow(n);
            if (p - 1) % ln != 0 {
                continue;
            }
            let count = (1..p)
                .filter(|&a| residue_character(1, &QuadInteger::rational(a as i64), p, ell, n, 1).unwrap().order == ln)
                .count() as u64;
            let phi = ln - ln / ell;
            assert_eq!(count, phi * (p - 1) / ln, "p = {p}, l^n = {ln}");
        }
    }
}

proptest! {
    #[test]
    fn character_is_multiplicative(x1 in -500i64..500, y1 in -500i64..500, x2 in -500i64..500, y2 in -500i64..500) {
        let disc = 8;
        let (p, ell, n) = (257u64, 2u64, 4u32);
        let a = QuadInteger { x: BigInt::from(2 * x1), y: BigInt::from(y1) };
        let b = QuadInteger { x: BigInt::from(2 * x2), y: BigInt::from(y2) };
        let pb = BigInt::from(p);
        prop_assume!(!a.norm(disc).is_multiple_of(&pb) && !b.norm(disc).is_multiple_of(&pb));
        let r = standard_root(disc, p).unwrap();
        let ca = residue_character(disc, &a, p, ell, n, r).unwrap();
        let cb = residue_character(disc, &b, p, ell, n, r).unwrap();
        let cab = residue_character(disc, &a.mul(&b, disc), p, ell, n, r).unwrap();
        prop_assert_eq!(cab.value, mul_mod(ca.value, cb.value, p));
        prop_assert_eq!(cab.exponent, (ca.exponent + cb.exponent) % 16);
        // order by repeated squaring
        let mut v = ca.value;
        let mut ord = 1;
        while v != 1 {
            v = mul_mod(v, v, p);
            ord *= 2;
        }
        prop_assert_eq!(ord, ca.order);
    }
}

use num_integer::Integer;

#[test]
fn h_k_values() {
    let k = QuadraticField::new(5).unwrap();
    assert_eq!(h_k_constant(&k, 3).unwrap().m_k, 0);
    assert_eq!(h_k_constant(&k, 2).unwrap().m_k, 1);
    let k34 = QuadraticField::new(34).unwrap();
    let c = h_k_constant(&k34, 2).unwrap();
    assert_eq!((c.m_k, c.layer, c.h_k), (1, 1, 2));
    assert!(h_k_constant(&k34, 5).is_err());
    assert_eq!(h_k_constant(&QuadraticField::new(-3).unwrap(), 3).unwrap().m_k, 1);
    assert_eq!(h_k_constant(&QuadraticField::new(-1).unwrap(), 2).unwrap().m_k, 2);
}

#[test]
fn sqrt2_layer_matches_biquadratic_discriminant() {
    for d in (3..80i64).filter(|&d| crate::exactmath::is_squarefree(d)) {
        let l = NumberField::biquadratic(d, 2).unwrap();
        let dk = BigInt::from(QuadraticField::new(d).unwrap().disc());
        assert_eq!(sqrt2_layer_unramified(d), *l.discriminant() == &dk * &dk, "d = {d}");
    }
}

#[test]
fn rejection_order() {
    let k = QuadraticField::new(34).unwrap();
    let rcg = RayClassGroup::compute(&k, Modulus::trivial()).unwrap();
    let (eps, _) = aug_unit_mod_m(&k, &rcg.modulus).unwrap();
    let params = SearchParams::new(2, 1, 0, 2, 1000).unwrap();
    let params2 = SearchParams::new(2, 2, 0, 2, 1000).unwrap();
    // (34/7) = -1 but 7 ≢ 1 mod 4 fails first
    assert_eq!(check_conditions(&k, &rcg, &[1], &eps, 7, &params2).unwrap(), Err(Rejection::Cyclotomic));
    // 11 splits in K but -1 is not a square mod 11
    assert_eq!(check_conditions(&k, &rcg, &[1], &eps, 11, &params).unwrap(), Err(Rejection::UnitRadical));
    let p = (5..200).find(|&p| is_prime(p) && p % 4 == 1 && kronecker_prime(136, p) == -1).unwrap();
    assert_eq!(check_conditions(&k, &rcg, &[1], &eps, p, &params).unwrap(), Err(Rejection::NotSplit));
    assert!(check_conditions(&k, &rcg, &[1], &eps, 17, &params).is_err());
}

#[test]
fn scan_finds_certificate_for_q_sqrt34() {
    let k = QuadraticField::new(34).unwrap();
    let rcg = RayClassGroup::compute(&k, Modulus::trivial()).unwrap();
    assert_eq!(rcg.group.invariants(), &[2]);
    let (eps, _) = aug_unit_mod_m(&k, &rcg.modulus).unwrap();
    let params = SearchParams::new(2, 1, 0, 2, 1_000_000).unwrap();
    let cert = primes_in_progression(1, 4, params.bound)
        .unwrap()
        .filter(|&p| p != 17)
        .find_map(|p| check_conditions(&k, &rcg, &[1], &eps, p, &params).unwrap().ok())
        .expect("certificate below 10^6");
    assert!(cert.checks.all());
    assert_eq!(cert.p % 4, 1);
    assert_eq!(cert.char_eps.order, 2);
    assert_eq!(cert.char_minus_one.order, 1);
    let again = check_conditions(&k, &rcg, &[1], &eps, cert.p, &params).unwrap().unwrap();
    assert_eq!(serde_json::to_vec(&cert).unwrap(), serde_json::to_vec(&again).unwrap());
}
