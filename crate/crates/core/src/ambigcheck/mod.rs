//! Both sides of the ambiguous ray class number formula for quadratic
//! extensions `L / K` with `K = Q` or `K` real quadratic.

mod direct;
mod rayq;
mod units;

pub use rayq::{rayclass_q, rayclass_q_dlog};
pub use direct::{ray_principal, subgroup_order_by_relations};
pub use units::{congruence_kernel, lattice_det, norm_image, unit_coords};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::biquad::{make_biquadratic, BiquadField, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::exactmath::{factor_u64, is_squarefree};
use crate::nf::{primes_above, Elem, Ideal, UnitsMod};
use crate::quadfield::{Modulus, QuadraticField, RayClassGroup};

/// An extension `L / K` of degree at most 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum AmbigCase {
    /// `L = Q(sqrt d)` over `Q`.
    Quadratic { d: i64 },
    /// `L = Q(sqrt d, sqrt p)` over `K = Q(sqrt d)`, both real.
    Biquadratic { d: i64, p: i64 },
    /// `L = K`, with `K = Q` when `d` is `None`.
    Degenerate { d: Option<i64> },
}

impl std::fmt::Display for AmbigCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AmbigCase::Quadratic { d } => write!(f, "Q(sqrt {d})/Q"),
            AmbigCase::Biquadratic { d, p } => write!(f, "Q(sqrt {d}, sqrt {p})/Q(sqrt {d})"),
            AmbigCase::Degenerate { d: None } => write!(f, "Q/Q"),
            AmbigCase::Degenerate { d: Some(d) } => write!(f, "Q(sqrt {d})/Q(sqrt {d})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbigReport {
    pub case: AmbigCase,
    pub label: String,
    /// Squarefree rational integer; the modulus is every prime above it.
    pub m: u64,
    pub ray_order_k: u64,
    /// Local degree at each infinite place of `K`.
    pub infinite_degrees: Vec<u32>,
    /// Ramification index of each finite prime of `K` prime to `m` ramified in `L`.
    pub ramified: Vec<u32>,
    pub degree: u32,
    pub unit_index: u64,
    pub formula: u64,
    pub direct: u64,
    pub equal: bool,
}

struct FormulaParts {
    ray_order_k: u64,
    infinite_degrees: Vec<u32>,
    ramified: Vec<u32>,
    degree: u32,
    unit_index: u64,
}

impl FormulaParts {
    fn value(&self) -> Result<u64> {
        let num: u64 = self.ray_order_k
            * self.infinite_degrees.iter().map(|&x| x as u64).product::<u64>()
            * self.ramified.iter().map(|&x| x as u64).product::<u64>();
        let den = self.degree as u64 * self.unit_index;
        if !num.is_multiple_of(den) {
            return Err(Error::Inconsistent(format!("formula value {num}/{den} is not integral")));
        }
        Ok(num / den)
    }
}

fn to_u64(x: u128) -> Result<u64> {
    x.to_u64().ok_or_else(|| Error::OutOfRange("group order".into()))
}

fn quadratic_case(d: i64, m: u64) -> Result<(FormulaParts, u64)> {
    let l = QuadraticField::new(d)?;
    let disc = l.disc();
    let gq = rayclass_q(m)?;
    let modulus = Modulus::from_rational(&l, m, None)?;
    let um = UnitsMod::new(l.field(), modulus.primes.clone());
    // E_Q^m is {±1} when -1 ≡ 1 mod m, else trivial
    let eq: Vec<Vec<BigInt>> = if m <= 2 { vec![vec![BigInt::from(1)]] } else { vec![] };
    let kernel = congruence_kernel(l.units(), &um)?;
    let coords: Vec<Vec<BigInt>> = l
        .units()
        .generators()
        .iter()
        .map(|g| unit_coords(None, &l.field().from_int(&l.field().norm(g)), l.field()))
        .collect::<Result<_>>()?;
    let image = norm_image(&coords, &kernel, 1);
    let index = lattice_det(&image, 1)? / lattice_det(&eq, 1)?;
    let ram: Vec<u64> = factor_u64(disc.unsigned_abs()).into_iter().map(|pp| pp.p).filter(|p| !m.is_multiple_of(*p)).collect();
    let parts = FormulaParts {
        ray_order_k: to_u64(gq.order())?,
        infinite_degrees: vec![if d < 0 { 2 } else { 1 }],
        ramified: vec![2; ram.len()],
        degree: 2,
        unit_index: index.to_u64().unwrap(),
    };
    // direct side: ramified primes and generators of Cl^m_Q, inside Cl^m_L
    let rcg = RayClassGroup::compute(&l, modulus)?;
    let mut elems = Vec::new();
    for p in &ram {
        for q in primes_above(l.field(), *p) {
            elems.push(rcg.dlog(&l, &q.ideal)?);
        }
    }
    let mut sub_q = Vec::new();
    let mut r = 2u64;
    while gq.subgroup_order(&sub_q) < gq.order() {
        r += 1;
        if !crate::exactmath::is_prime(r) || m.is_multiple_of(r) || disc % r as i64 == 0 {
            continue;
        }
        sub_q.push(rayclass_q_dlog(&gq, m, r)?);
        elems.push(rcg.dlog(&l, &Ideal::from_int(l.field(), &BigInt::from(r)))?);
    }
    Ok((parts, to_u64(rcg.group.subgroup_order(&elems))?))
}

/// Element of `K` from an element of `L` fixed by `Gal(L / K)`.
fn descend(l: &BiquadField, x: &Elem) -> Result<Elem> {
    let r = l.field().to_radical(x);
    if !(num_traits::Zero::is_zero(&r[2]) && num_traits::Zero::is_zero(&r[3])) {
        return Err(Error::Inconsistent("relative norm is not in K".into()));
    }
    l.subfields()[0]
        .field()
        .from_radical(&r[..2])
        .ok_or_else(|| Error::Inconsistent("relative norm is not integral".into()))
}

fn biquadratic_case(d: i64, p: i64, m: u64, budget: u64) -> Result<(FormulaParts, u64)> {
    let l = make_biquadratic(d, p)?;
    let k = &l.subfields()[0];
    let mk = Modulus::from_rational(k, m, None)?;
    let rcg = RayClassGroup::compute(k, mk.clone())?;
    let um_k = UnitsMod::new(k.field(), mk.primes.clone());
    let eq = congruence_kernel(k.units(), &um_k)?;
    let ml: Vec<_> = mk.primes.iter().flat_map(|q| l.extend_and_factor(0, &q.ideal)).map(|f| f.prime).collect();
    let um_l = UnitsMod::new(l.field(), ml);
    let kernel = congruence_kernel(l.units().group(), &um_l)?;
    let coords: Vec<Vec<BigInt>> = l
        .units()
        .group()
        .generators()
        .iter()
        .map(|g| {
            // sqrt p is negated by the automorphism with mask 2
            let n = l.field().mul(g, &l.field().conj(g, 2));
            unit_coords(Some(k), &descend(&l, &n)?, k.field())
        })
        .collect::<Result<_>>()?;
    let image = norm_image(&coords, &kernel, 2);
    let (di, de) = (lattice_det(&image, 2)?, lattice_det(&eq, 2)?);
    if !di.is_multiple_of(&de) {
        return Err(Error::Inconsistent("norm image is not inside E_K^m".into()));
    }
    let index = (di / de).to_u64().unwrap();
    // primes of K prime to m ramified in L
    let mut ram_primes = Vec::new();
    for q in factor_u64(l.field().discriminant().magnitude().to_u64().ok_or_else(|| Error::OutOfRange("disc".into()))?) {
        if m.is_multiple_of(q.p) {
            continue;
        }
        for qk in primes_above(k.field(), q.p) {
            let fac = l.extend_and_factor(0, &qk.ideal);
            if fac.iter().any(|f| f.e == 2) {
                ram_primes.push((qk, fac));
            }
        }
    }
    let parts = FormulaParts {
        ray_order_k: to_u64(rcg.order())?,
        infinite_degrees: vec![1, 1],
        ramified: vec![2; ram_primes.len()],
        degree: 2,
        unit_index: index,
    };
    let mut gens = Vec::new();
    let mut bounds = Vec::new();
    for (qk, fac) in &ram_primes {
        let o = rcg.group.element_order(&rcg.dlog(k, &qk.ideal)?);
        for f in fac {
            gens.push(f.prime.ideal.clone());
            bounds.push(2 * o);
        }
    }
    for g in rcg.generator_ideals(k)? {
        let o = rcg.group.element_order(&rcg.dlog(k, &g.ideal)?);
        gens.push(l.extend(0, &g.ideal));
        bounds.push(o);
    }
    let direct = subgroup_order_by_relations(&l, &um_l, &gens, &bounds, budget)?;
    Ok((parts, direct))
}

/// Formula and direct sides for one case.
pub fn ambiguous_report(case: AmbigCase, m: u64) -> Result<AmbigReport> {
    ambiguous_report_with_budget(case, m, DEFAULT_BUDGET)
}

pub fn ambiguous_report_with_budget(case: AmbigCase, m: u64, budget: u64) -> Result<AmbigReport> {
    let (parts, direct) = match case {
        AmbigCase::Quadratic { d } => quadratic_case(d, m)?,
        AmbigCase::Biquadratic { d, p } => biquadratic_case(d, p, m, budget)?,
        AmbigCase::Degenerate { d } => {
            let order = match d {
                None => to_u64(rayclass_q(m)?.order())?,
                Some(d) => {
                    let k = QuadraticField::new(d)?;
                    to_u64(RayClassGroup::compute(&k, Modulus::from_rational(&k, m, None)?)?.order())?
                }
            };
            let parts = FormulaParts { ray_order_k: order, infinite_degrees: vec![], ramified: vec![], degree: 1, unit_index: 1 };
            (parts, order)
        }
    };
    let formula = parts.value()?;
    Ok(AmbigReport {
        case,
        label: case.to_string(),
        m,
        ray_order_k: parts.ray_order_k,
        infinite_degrees: parts.infinite_degrees,
        ramified: parts.ramified,
        degree: parts.degree,
        unit_index: parts.unit_index,
        formula,
        direct,
        equal: formula == direct,
    })
}

/// `|Cl^m_K| * prod d_inf * prod e / ([L:K] (E_K^m : N E_L^m))`.
pub fn ambiguous_count_formula(case: AmbigCase, m: u64) -> Result<u64> {
    Ok(ambiguous_report(case, m)?.formula)
}

/// Order of the subgroup of `Cl^m_L` generated by ambiguous ideals.
pub fn ambiguous_count_direct(case: AmbigCase, m: u64) -> Result<u64> {
    Ok(ambiguous_report(case, m)?.direct)
}

/// `(E_K^m : N_{L/K} E_L^m)`.
pub fn norm_index_units(case: AmbigCase, m: u64) -> Result<u64> {
    Ok(ambiguous_report(case, m)?.unit_index)
}

/// Fundamental discriminant of `Q(sqrt d)`.
pub fn fundamental_disc(d: i64) -> i64 {
    if d.rem_euclid(4) == 1 { d } else { 4 * d }
}

/// The regression corpus: every quadratic field with `|D| <= 200` and
/// `m = 1`; quadratic fields with moduli of norm at most 50 prime to `D`;
/// and a few biquadratic extensions of real quadratic fields.
pub fn default_corpus() -> Vec<(AmbigCase, u64)> {
    let mut out = Vec::new();
    for d in -200i64..=200 {
        if d == 0 || d == 1 || !is_squarefree(d) || fundamental_disc(d).abs() > 200 {
            continue;
        }
        out.push((AmbigCase::Quadratic { d }, 1));
    }
    let mut pairs = 0;
    for d in [-1i64, -2, -3, -5, -6, -7, -11, -15, -23, 2, 3, 5, 6, 7, 10, 13, 15, 17] {
        let disc = fundamental_disc(d);
        for m in [3u64, 5, 7, 11, 13, 15, 21, 35] {
            if disc.gcd(&(m as i64)) == 1 {
                out.push((AmbigCase::Quadratic { d }, m));
                pairs += 1;
            }
        }
    }
    debug_assert!(pairs >= 50);
    for (d, p, m) in [(34, 5, 1), (15, 13, 1), (6, 5, 1), (3, 13, 1), (10, 13, 1), (2, 17, 1), (34, 13, 3)] {
        out.push((AmbigCase::Biquadratic { d, p }, m));
    }
    out.push((AmbigCase::Degenerate { d: None }, 15));
    out.push((AmbigCase::Degenerate { d: Some(-23) }, 5));
    out
}

/// Reports for every case, in input order; fails on the first error.
pub fn ambig_sweep(cases: &[(AmbigCase, u64)], jobs: usize) -> Result<Vec<AmbigReport>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Inconsistent(e.to_string()))?;
    pool.install(|| cases.par_iter().map(|&(c, m)| ambiguous_report(c, m)).collect())
}

#[cfg(test)]
mod tests;
