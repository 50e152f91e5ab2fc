use serde::{Deserialize, Serialize};

use super::field::{make_biquadratic, BiquadField};
use crate::error::{invalid, Error, Result};
use crate::kummerfrob::{check_conditions, prime_above, CandidateCertificate, SearchParams};
use crate::nf::ray::unit_adjust;
use crate::nf::{Ideal, PrimeIdeal, UnitsMod};
use crate::quadfield::{aug_unit_mod_m, QuadraticField, RayClassGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyStatus {
    Success,
    Fail,
    Budget,
    /// `l^n > 2`: the composite is not built.
    UnverifiedComposite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub status: VerifyStatus,
    pub reason: Option<String>,
    pub d: i64,
    pub p: u64,
    pub ell: u64,
    pub n: u32,
    /// Norms of the primes of `L` above the modulus.
    pub modulus_l: Vec<u64>,
    /// Ramification index of `p_K` in `L / K`.
    pub ramification: Option<u32>,
    /// Generator `alpha ≡ 1 mod^× m_L` of `p_K O_L`, radical coordinates.
    pub generator: Option<Vec<String>>,
    pub basis_labels: Vec<String>,
    /// Whether the prime `q_L` with `q_L^2 = p_K O_L` is itself principal.
    pub q_l_principal: Option<bool>,
    pub unit_index: Option<u64>,
}

impl VerificationReport {
    fn new(cert: &CandidateCertificate, status: VerifyStatus, reason: Option<String>) -> Self {
        VerificationReport {
            status,
            reason,
            d: cert.d,
            p: cert.p,
            ell: cert.ell,
            n: cert.n,
            modulus_l: vec![],
            ramification: None,
            generator: None,
            basis_labels: vec![],
            q_l_principal: None,
            unit_index: None,
        }
    }

    fn fail(cert: &CandidateCertificate, reason: impl Into<String>) -> Self {
        Self::new(cert, VerifyStatus::Fail, Some(reason.into()))
    }
}

/// Re-derive the certificate from scratch; `Some(reason)` on mismatch.
pub fn recheck(k: &QuadraticField, rcg: &RayClassGroup, cert: &CandidateCertificate) -> Result<Option<String>> {
    let (eps, _) = aug_unit_mod_m(k, &rcg.modulus)?;
    if eps != cert.eps {
        return Ok(Some("unit does not match the augmentation unit of K".into()));
    }
    let params = SearchParams::new(cert.ell, cert.n, cert.h, cert.h_k, cert.bound.unwrap_or(cert.p))?;
    let fresh = match check_conditions(k, rcg, &cert.target, &cert.eps, cert.p, &params) {
        Err(e) => return Ok(Some(format!("condition re-check: {e}"))),
        Ok(Err(r)) => return Ok(Some(format!("condition re-check: rejected at {r:?}"))),
        Ok(Ok(c)) => c,
    };
    let mut stamped = fresh;
    stamped.bound = cert.bound;
    if &stamped != cert {
        return Ok(Some("condition re-check: recorded data differ".into()));
    }
    Ok(None)
}

/// Decide whether the target ray class capitulates in `L = K(sqrt p)`.
pub fn capitulates(
    k: &QuadraticField,
    rcg: &RayClassGroup,
    target: &[u64],
    cert: &CandidateCertificate,
    budget: u64,
) -> Result<VerificationReport> {
    let modulus: Vec<_> = rcg.modulus.primes.iter().map(|q| k.standard_form(&q.ideal)).collect();
    if cert.d != k.d() || cert.modulus != modulus || cert.target != target {
        return invalid("certificate does not match the field, modulus or target");
    }
    if cert.ell.checked_pow(cert.n) != Some(2) {
        return Ok(VerificationReport::new(cert, VerifyStatus::UnverifiedComposite, Some(format!("l^n = {}^{}", cert.ell, cert.n))));
    }
    if let Some(reason) = recheck(k, rcg, cert)? {
        return Ok(VerificationReport::fail(cert, reason));
    }
    let l: BiquadField = make_biquadratic(k.d(), cert.p as i64)?;
    let mut rep = VerificationReport::new(cert, VerifyStatus::Fail, None);
    rep.basis_labels = l.radical_labels().to_vec();
    rep.unit_index = Some(l.units().index());

    let pk = prime_above(k, cert.p, cert.root);
    let fac = l.extend_and_factor(0, &pk.ideal);
    if fac.len() != 1 || fac[0].e != 2 {
        rep.reason = Some("p_K is not ramified in L / K".into());
        return Ok(rep);
    }
    rep.ramification = Some(fac[0].e);
    let q_l = &fac[0].prime;

    let m_l: Vec<PrimeIdeal> = rcg.modulus.primes.iter().flat_map(|q| l.extend_and_factor(0, &q.ideal)).map(|f| f.prime).collect();
    rep.modulus_l = m_l.iter().map(|q| q.norm()).collect();
    let um = UnitsMod::new(l.field(), m_l);

    let target_ideal: Ideal = l.extend(0, &pk.ideal);
    let gen = match l.is_principal(&target_ideal, budget) {
        Err(Error::Budget(c)) => {
            rep.status = VerifyStatus::Budget;
            rep.reason = Some(format!("principality search needs {c} cells"));
            return Ok(rep);
        }
        Err(e) => return Err(e),
        Ok(None) => {
            rep.reason = Some("p_K O_L is not principal".into());
            return Ok(rep);
        }
        Ok(Some(g)) => g,
    };
    let Some(alpha) = unit_adjust(l.field(), l.units().group(), &um, &gen)? else {
        rep.reason = Some("no generator of p_K O_L is ≡ 1 mod^× m_L".into());
        return Ok(rep);
    };
    if Ideal::principal(l.field(), &alpha) != target_ideal || !um.is_one(&alpha) {
        return Err(Error::Inconsistent("generator failed exact re-verification".into()));
    }
    rep.q_l_principal = Some(l.is_principal(&q_l.ideal, budget)?.is_some());
    rep.generator = Some(l.radical_strings(&alpha));
    rep.status = VerifyStatus::Success;
    Ok(rep)
}
