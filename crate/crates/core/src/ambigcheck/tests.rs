use super::*;
use crate::exactmath::gcd_u64;
use std::collections::BTreeMap;

fn order_histogram_brute(m: u64) -> BTreeMap<u64, u64> {
    // classes of (Z/m)^* / ±1 and their orders
    let mut seen = std::collections::BTreeSet::new();
    let mut hist = BTreeMap::new();
    for a in 1..m.max(2) {
        if gcd_u64(a, m) != 1 {
            continue;
        }
        let rep = a.min(m - a) % m.max(1);
        if !seen.insert(rep) {
            continue;
        }
        let mut k = 1;
        let mut x = a % m;
        while x != 1 % m && x != m - 1 {
            x = x * a % m;
            k += 1;
        }
        *hist.entry(k).or_insert(0) += 1;
    }
    if m <= 2 {
        hist = BTreeMap::from([(1, 1)]);
    }
    hist
}

#[test]
fn ray_class_of_q() {
    assert_eq!(rayclass_q(1).unwrap().order(), 1);
    assert_eq!(rayclass_q(5).unwrap().invariants(), &[2]);
    assert_eq!(rayclass_q(12).unwrap().invariants(), &[2]);
    for m in (1..=100u64).filter(|&m| is_squarefree(m as i64)) {
        let g = rayclass_q(m).unwrap();
        let mut hist = BTreeMap::new();
        for e in g.elements() {
            *hist.entry(g.element_order(&e)).or_insert(0u64) += 1;
        }
        assert_eq!(hist, order_histogram_brute(m), "m = {m}");
    }
}

#[test]
fn rayclass_q_dlog_is_homomorphic() {
    for m in [15u64, 21, 35, 77, 16, 24] {
        let g = rayclass_q(m).unwrap();
        for a in (1..m).filter(|&a| gcd_u64(a, m) == 1) {
            for b in (1..m).filter(|&b| gcd_u64(b, m) == 1) {
                let ab = rayclass_q_dlog(&g, m, a * b % m).unwrap();
                let s = g.add(&rayclass_q_dlog(&g, m, a).unwrap(), &rayclass_q_dlog(&g, m, b).unwrap());
                assert_eq!(ab, s);
            }
            assert_eq!(rayclass_q_dlog(&g, m, a).unwrap(), rayclass_q_dlog(&g, m, m - a).unwrap());
        }
    }
}

#[test]
fn unit_indices() {
    assert_eq!(norm_index_units(AmbigCase::Quadratic { d: 2 }, 1).unwrap(), 1);
    assert_eq!(norm_index_units(AmbigCase::Quadratic { d: 3 }, 1).unwrap(), 2);
    assert_eq!(norm_index_units(AmbigCase::Quadratic { d: -1 }, 5).unwrap(), 1);
}

#[test]
fn formula_examples() {
    let r = ambiguous_report(AmbigCase::Quadratic { d: 2 }, 1).unwrap();
    assert_eq!((r.ray_order_k, r.infinite_degrees.clone(), r.ramified.clone(), r.formula), (1, vec![1], vec![2], 1));
    assert_eq!(r.direct, 1);
    let r = ambiguous_report(AmbigCase::Quadratic { d: -1 }, 5).unwrap();
    assert_eq!((r.ray_order_k, r.infinite_degrees.clone(), r.ramified.clone(), r.unit_index, r.formula), (2, vec![2], vec![2], 1, 4));
    assert_eq!(r.direct, 4);
    let r = ambiguous_report(AmbigCase::Quadratic { d: -5 }, 1).unwrap();
    assert_eq!((r.formula, r.direct), (2, 2));
    let r = ambiguous_report(AmbigCase::Degenerate { d: Some(-23) }, 5).unwrap();
    assert_eq!(r.formula, r.direct);
    assert_eq!(r.formula, 3 * 24 / 2);
    assert_eq!(ambiguous_report(AmbigCase::Degenerate { d: None }, 15).unwrap().formula, 4);
}

#[test]
fn small_quadratic_sweep() {
    let mut cases = Vec::new();
    for d in -60i64..=60 {
        if d != 0 && d != 1 && is_squarefree(d) {
            cases.push((AmbigCase::Quadratic { d }, 1));
            if fundamental_disc(d) % 7 != 0 {
                cases.push((AmbigCase::Quadratic { d }, 7));
            }
        }
    }
    let reps = ambig_sweep(&cases, 4).unwrap();
    for r in &reps {
        assert!(r.equal, "{r:?}");
    }
    let again = ambig_sweep(&cases[..10], 1).unwrap();
    assert_eq!(serde_json::to_string(&reps[..10]).unwrap(), serde_json::to_string(&again).unwrap());
}

#[test]
fn biquadratic_case() {
    let r = ambiguous_report(AmbigCase::Biquadratic { d: 34, p: 5 }, 1).unwrap();
    assert!(r.equal, "{r:?}");
}
