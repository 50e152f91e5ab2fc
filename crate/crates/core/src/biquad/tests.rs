use super::*;
use crate::capsearch::{find_principalizing_prime, SearchOutcome};
use crate::exactmath::{is_prime, kronecker_prime, primes_in_progression};
use crate::kummerfrob::SearchParams;
use crate::nf::{unit_equivalent, Ideal, UnitGroup};
use crate::quadfield::{aug_unit_mod_m, Modulus, QuadraticField, RayClassGroup};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

#[test]
fn construction() {
    let l = make_biquadratic(2, 5).unwrap();
    assert!(l.field().from_radical(&[q(1, 2), q(0, 1), q(1, 2), q(0, 1)]).is_some());
    assert!(l.field().from_radical(&[q(0, 1), q(1, 1), q(0, 1), q(0, 1)]).is_some());
    assert!(l.field().from_radical(&[q(0, 1), q(1, 2), q(0, 1), q(0, 1)]).is_none());
    assert!(make_biquadratic(2, 2).is_err());
    assert!(make_biquadratic(2, 8).is_err());
    let l = make_biquadratic(34, 5).unwrap();
    assert!(l.field().is_real());
    assert_eq!(l.field().places(), 4);
}

#[test]
fn conductor_discriminant() {
    for (a, b) in [(2, 5), (34, 5), (3, 13), (6, 17), (10, 13), (15, 29), (21, 37)] {
        let l = BiquadField::new(a, b).unwrap();
        assert_eq!(l.field().discriminant(), &l.conductor_discriminant(), "({a}, {b})");
    }
}

#[test]
fn prime_decomposition() {
    let l = make_biquadratic(34, 5).unwrap();
    for p in primes_in_progression(1, 1, 400).unwrap() {
        let mut total = 0;
        for pr in crate::nf::primes_above(l.field(), p) {
            total += pr.e * pr.f;
        }
        let count = crate::nf::primes_above(l.field(), p).len() as u32;
        assert_eq!(total, 4, "p = {p}");
        // no prime is inert: the Galois group is not cyclic
        assert!(crate::nf::primes_above(l.field(), p).iter().all(|pr| pr.f < 4));
        let split_all = [34i64, 5, 170].iter().all(|&c| kronecker_prime(QuadraticField::new(c).unwrap().disc(), p) == 1);
        if split_all {
            assert_eq!(count, 4);
        }
        for (i, k) in l.subfields().iter().enumerate() {
            for pk in k.factor_prime(p).primes {
                let fac = l.extend_and_factor(i, &pk.ideal);
                let s: u32 = fac.iter().map(|f| f.e * f.prime.f / pk.f).sum();
                assert_eq!(s, 2, "p = {p}");
            }
        }
    }
}

#[test]
fn unit_groups() {
    for (a, b) in [(2, 5), (34, 5), (3, 13), (6, 17), (10, 13), (3, 7), (5, 13)] {
        let l = BiquadField::new(a, b).unwrap();
        let u = l.units();
        for g in &u.group().fundamental {
            assert!(l.field().norm(g).abs().is_one());
        }
        assert!(u.regulator() > 0.0);
        assert!([1, 2, 4, 8].contains(&u.index()));
        let sub = UnitGroup::new(l.field(), 2, l.field().from_int(&BigInt::from(-1)), u.subfield_units.clone());
        let ratio = sub.regulator() / u.regulator();
        assert!((ratio - u.index() as f64).abs() < 1e-6 * ratio, "({a}, {b}): {ratio} vs {}", u.index());
        for c in &u.square_classes {
            let mut x = l.field().one();
            for i in 0..3 {
                if c[i + 1] == 1 {
                    x = l.field().mul(&x, &u.subfield_units[i]);
                }
            }
            if c[0] == 1 {
                x = l.field().neg(&x);
            }
            let s = l.field().sqrt(&x).unwrap();
            assert_eq!(l.field().mul(&s, &s), x);
        }
    }
}

#[test]
fn principal_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (a, b) in [(2, 5), (34, 5), (3, 13)] {
        let l = BiquadField::new(a, b).unwrap();
        for _ in 0..10 {
            let x: Vec<BigInt> = (0..4).map(|_| BigInt::from(rng.gen_range(-6i64..7))).collect();
            if l.field().norm(&x) == BigInt::from(0) {
                continue;
            }
            let i = Ideal::principal(l.field(), &x);
            let g = l.is_principal(&i, DEFAULT_BUDGET).unwrap().expect("principal");
            assert!(unit_equivalent(l.field(), &g, &x));
        }
    }
}

fn certificate(d: i64, m: u64) -> (QuadraticField, RayClassGroup, crate::kummerfrob::CandidateCertificate) {
    let k = QuadraticField::new(d).unwrap();
    let rcg = RayClassGroup::compute(&k, Modulus::from_rational(&k, m, Some(2)).unwrap()).unwrap();
    let (eps, _) = aug_unit_mod_m(&k, &rcg.modulus).unwrap();
    let target: Vec<u64> = rcg.group.invariants().iter().map(|&x| x / 2).collect();
    let params = SearchParams::new(2, 1, 0, 1, 1_000_000).unwrap();
    let out = find_principalizing_prime(&k, &rcg, &target, &eps, &params, 2).unwrap();
    let SearchOutcome::Found { certificate, .. } = out else {
        panic!("no certificate for d = {d}: {:?} {out:?}", rcg.group.invariants())
    };
    (k, rcg, certificate)
}

#[test]
fn q_sqrt34_capitulates() {
    let (k, rcg, cert) = certificate(34, 1);
    let rep = capitulates(&k, &rcg, &cert.target, &cert, DEFAULT_BUDGET).unwrap();
    assert_eq!(rep.status, VerifyStatus::Success, "{rep:?}");
    assert_eq!(rep.q_l_principal, Some(false));
    assert_eq!(rep.ramification, Some(2));
    assert!(rep.generator.is_some());
    let mut bad = cert.clone();
    bad.p = (cert.p + 1..).find(|&p| is_prime(p) && p % 4 == 1).unwrap();
    let rep = capitulates(&k, &rcg, &bad.target, &bad, DEFAULT_BUDGET).unwrap();
    assert_eq!(rep.status, VerifyStatus::Fail);
    let mut four = cert.clone();
    four.n = 2;
    let rep = capitulates(&k, &rcg, &four.target, &four, DEFAULT_BUDGET).unwrap();
    assert_eq!(rep.status, VerifyStatus::UnverifiedComposite);
}

#[test]
fn capitulation_with_modulus() {
    for (d, m, p, norms) in [(3, 23, 229, vec![529, 529]), (23, 7, 13, vec![49, 49])] {
        let (k, rcg, cert) = certificate(d, m);
        assert_eq!(cert.p, p);
        let rep = capitulates(&k, &rcg, &cert.target, &cert, DEFAULT_BUDGET).unwrap();
        assert_eq!(rep.status, VerifyStatus::Success, "{rep:?} {:?}", rcg.group.invariants());
        assert_eq!(rep.modulus_l, norms);
    }
}
