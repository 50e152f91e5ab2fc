use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::hint::{power_adjustment_hint, PowerHint};
use super::period::CyclicFieldDesc;
use crate::abgroup::is_ell_group;
use crate::error::{invalid, Error, Result};
use crate::exactmath::{is_prime, pow_mod};
use crate::kummerfrob::{check_conditions, CandidateCertificate, Rejection, SearchParams};
use crate::quadfield::{QuadUnit, QuadraticField, RayClassGroup};

const CHUNK: usize = 2048;

/// Rejection counts of an exhausted search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub bound: u64,
    pub examined: u64,
    /// Primes dividing `2 l disc(K) N(m)`.
    pub excluded: u64,
    pub rejections: BTreeMap<Rejection, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found { certificate: CandidateCertificate, field: CyclicFieldDesc, stats: SearchStats },
    NotFound { stats: SearchStats },
    /// The power condition fails for every `p`.
    PowerBlocked { hint: PowerHint },
}

enum ChunkResult {
    Hit(CandidateCertificate, SearchStats),
    Miss(SearchStats),
}

fn merge(into: &mut SearchStats, s: &SearchStats) {
    into.examined += s.examined;
    into.excluded += s.excluded;
    for (r, c) in &s.rejections {
        *into.rejections.entry(*r).or_default() += c;
    }
}

fn odd_primes(bound: u64) -> Vec<u64> {
    let n = bound as usize + 1;
    let mut sieve = vec![true; n.max(2)];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            (i * i..n).step_by(i).for_each(|j| sieve[j] = false);
        }
        i += 1;
    }
    (3..n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

/// Smallest prime `p <= bound` satisfying all four conditions.
pub fn find_principalizing_prime(
    k: &QuadraticField,
    rcg: &RayClassGroup,
    target: &[u64],
    eps: &QuadUnit,
    params: &SearchParams,
    jobs: usize,
) -> Result<SearchOutcome> {
    if !k.is_real() {
        return invalid("capitulation search needs a real quadratic field");
    }
    let ord = rcg.group.element_order(target);
    if !is_ell_group(&crate::abgroup::FiniteAbelianGroup::from_invariants(&[ord])?, params.ell) {
        return invalid(format!("target order {ord} is not a power of {}", params.ell));
    }
    if !rcg.group.power_subgroup_contains(target, params.ell.pow(params.h)) {
        return Ok(SearchOutcome::PowerBlocked { hint: power_adjustment_hint(params.ell, params.h)? });
    }
    let bad: Vec<u64> = rcg.modulus.rational_primes();
    let disc = k.disc();
    let primes = odd_primes(params.bound);
    let scan = |chunk: &[u64]| -> Result<ChunkResult> {
        let mut st = SearchStats { bound: params.bound, examined: 0, excluded: 0, rejections: BTreeMap::new() };
        for &p in chunk {
            if p == params.ell || disc % p as i64 == 0 || bad.contains(&p) {
                st.excluded += 1;
                continue;
            }
            st.examined += 1;
            match check_conditions(k, rcg, target, eps, p, params)? {
                Ok(c) => return Ok(ChunkResult::Hit(c, st)),
                Err(r) => *st.rejections.entry(r).or_default() += 1,
            }
        }
        Ok(ChunkResult::Miss(st))
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Inconsistent(e.to_string()))?;
    let mut total = SearchStats { bound: params.bound, examined: 0, excluded: 0, rejections: BTreeMap::new() };
    let chunks: Vec<&[u64]> = primes.chunks(CHUNK).collect();
    for batch in chunks.chunks(jobs.max(1)) {
        let results: Vec<Result<ChunkResult>> = pool.install(|| batch.par_iter().map(|c| scan(c)).collect());
        for r in results {
            match r? {
                ChunkResult::Miss(s) => merge(&mut total, &s),
                ChunkResult::Hit(mut cert, s) => {
                    merge(&mut total, &s);
                    cert.bound = Some(params.bound);
                    let field = CyclicFieldDesc::new(cert.p, params.level())?;
                    return Ok(SearchOutcome::Found { certificate: cert, field, stats: total });
                }
            }
        }
    }
    Ok(SearchOutcome::NotFound { stats: total })
}

/// Degree of every irreducible factor of the period polynomial mod `q`:
/// the order of `q` in `(Z/p)^* / H` with `[(Z/p)^* : H] = m`.
pub fn coset_order(q: u64, p: u64, m: u64) -> u64 {
    let f = (p - 1) / m;
    let chi = pow_mod(q % p, f, p);
    let mut t = 1;
    let mut v = chi;
    while v != 1 {
        v = crate::exactmath::mul_mod(v, chi, p);
        t += 1;
    }
    debug_assert!(is_prime(p));
    t
}
