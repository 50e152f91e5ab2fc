use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    cache::Cache, certfile::CertificateFile, error_code, Output, EXIT_BUDGET, EXIT_FAIL, EXIT_NOT_FOUND, EXIT_OK,
    EXIT_POWER_BLOCKED, EXIT_UNVERIFIED, SCHEMA,
};
use crate::abgroup::{FiniteAbelianGroup, GroupElement};
use crate::ambigcheck::{ambig_sweep, default_corpus, rayclass_q, rayclass_q_dlog, AmbigCase, AmbigReport};
use crate::biquad::{capitulates, VerificationReport, VerifyStatus};
use crate::capsearch::{find_principalizing_prime, SearchOutcome};
use crate::error::{invalid, Error, Result};
use crate::exactmath::{factor_u64, gcd_u64, is_prime, is_squarefree};
use crate::kummerfrob::{h_k_constant, SearchParams};
use crate::quadfield::{aug_unit_mod_m, Modulus, QuadraticField, RayClassGroup};

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("report serializes")
}

fn group_label(invariants: &[u64]) -> String {
    if invariants.is_empty() {
        "trivial".into()
    } else {
        invariants.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
    }
}

fn check_modulus(m: u64) -> Result<()> {
    if m == 0 || !is_squarefree(m as i64) {
        return invalid(format!("modulus {m} is not a squarefree positive integer"));
    }
    Ok(())
}

fn cached<T, F>(cache: Option<&Cache>, op: &str, key: &impl Serialize, compute: F) -> Result<T>
where
    T: Serialize + for<'de> Deserialize<'de>,
    F: FnOnce() -> Result<T>,
{
    let key = Cache::key(op, key);
    if let Some(hit) = cache.and_then(|c| c.get(&key)) {
        if let Ok(v) = serde_json::from_str(&hit) {
            return Ok(v);
        }
    }
    let v = compute()?;
    if let Some(c) = cache {
        c.put(&key, &to_json(&v)).map_err(|e| Error::InvalidInput(format!("cache write: {e}")))?;
    }
    Ok(v)
}

/// Base field of a `rayclass` request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldSel {
    Rationals,
    Quadratic(i64),
}

impl FieldSel {
    pub fn parse(field: Option<&str>, d: Option<i64>) -> Result<Self> {
        match (field, d) {
            (Some(f), None) if f.eq_ignore_ascii_case("q") => Ok(FieldSel::Rationals),
            (Some(f), None) => invalid(format!("unknown field {f}")),
            (None, Some(d)) => Ok(FieldSel::Quadratic(d)),
            _ => invalid("give exactly one of --field Q and --d"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub ray_order: u64,
    pub class_number: u64,
    pub residue_order: u64,
    pub unit_image_order: u64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayClassReport {
    pub schema: String,
    pub field: String,
    pub m: u64,
    pub invariants: Vec<u64>,
    pub order: u64,
    /// Ideals whose classes are the invariant-factor generators.
    pub generators: Vec<String>,
    pub identity: IdentityReport,
}

impl RayClassReport {
    fn text(&self) -> String {
        let i = &self.identity;
        format!(
            "Cl^m of {} with m = {}: {} (order {})\ngenerators: {}\n|Cl| * |(O/m)^*| / |units| = {} * {} / {} = {} [{}]",
            self.field,
            self.m,
            group_label(&self.invariants),
            self.order,
            if self.generators.is_empty() { "none".into() } else { self.generators.join(", ") },
            i.class_number,
            i.residue_order,
            i.unit_image_order,
            i.ray_order,
            if i.holds { "ok" } else { "MISMATCH" }
        )
    }
}

fn euler_phi(m: u64) -> u64 {
    factor_u64(m).iter().fold(m, |acc, pp| acc / pp.p * (pp.p - 1))
}

fn rayclass_q_report(m: u64) -> Result<RayClassReport> {
    let g = rayclass_q(m)?;
    let mut generators = Vec::new();
    for i in 0..g.rank() {
        let q = (2..)
            .filter(|&q| is_prime(q) && gcd_u64(q, m) == 1)
            .find(|&q| {
                rayclass_q_dlog(&g, m, q % m)
                    .map(|v| v.iter().enumerate().all(|(j, &x)| x == u64::from(i == j)))
                    .unwrap_or(false)
            })
            .expect("Dirichlet: every class contains a prime");
        generators.push(format!("({q})"));
    }
    let residue_order = euler_phi(m);
    let unit_image_order = if m <= 2 { 1 } else { 2 };
    let order = g.order() as u64;
    Ok(RayClassReport {
        schema: SCHEMA.into(),
        field: "Q".into(),
        m,
        invariants: g.invariants().to_vec(),
        order,
        generators,
        identity: IdentityReport {
            ray_order: order,
            class_number: 1,
            residue_order,
            unit_image_order,
            holds: order * unit_image_order == residue_order,
        },
    })
}

fn rayclass_k_report(d: i64, m: u64) -> Result<RayClassReport> {
    let k = QuadraticField::new(d)?;
    let rcg = RayClassGroup::compute(&k, Modulus::from_rational(&k, m, None)?)?;
    let generators = rcg.generator_ideals(&k)?.iter().map(|q| k.standard_form(&q.ideal).to_string()).collect();
    let id = rcg.order_identity();
    Ok(RayClassReport {
        schema: SCHEMA.into(),
        field: format!("Q(sqrt {d})"),
        m,
        invariants: rcg.group.invariants().to_vec(),
        order: rcg.order() as u64,
        generators,
        identity: IdentityReport {
            ray_order: id.ray_order as u64,
            class_number: id.class_number as u64,
            residue_order: id.residue_order as u64,
            unit_image_order: id.unit_image_order as u64,
            holds: id.holds(),
        },
    })
}

/// `rayclass`: invariants, generators and the order identity.
pub fn rayclass(field: FieldSel, m: u64, cache: Option<&Cache>) -> Result<Output> {
    check_modulus(m)?;
    let rep = cached(cache, "rayclass", &(field, m), || match field {
        FieldSel::Rationals => rayclass_q_report(m),
        FieldSel::Quadratic(d) => rayclass_k_report(d, m),
    })?;
    Ok(Output { code: EXIT_OK, json: to_json(&rep), text: rep.text() })
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    /// Squarefree `d > 1` of the real quadratic base field.
    #[arg(long, allow_hyphen_values = true)]
    pub d: i64,
    /// Squarefree positive integer; the modulus is every prime above it.
    #[arg(long = "mod", default_value_t = 1)]
    pub modulus: u64,
    /// Target class: `trivial`, `auto-K` (first class of order K, preferring
    /// non-squares), or comma-separated coordinates.
    #[arg(long, default_value = "auto-2")]
    pub class: String,
    /// Prime `l` (2 or 3).
    #[arg(long = "l", default_value_t = 2)]
    pub ell: u64,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// Power parameter; defaults to `min(h_K, n - 1)`.
    #[arg(long)]
    pub h: Option<u32>,
    #[arg(long, default_value_t = 1_000_000)]
    pub bound: u64,
    /// Write the certificate file here when a prime is found.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn select_target(g: &FiniteAbelianGroup, sel: &str) -> Result<GroupElement> {
    let sel = sel.trim();
    if sel == "trivial" {
        return Ok(g.zero());
    }
    if let Some(k) = sel.strip_prefix("auto") {
        let k: u64 = match k.strip_prefix('-') {
            Some(s) => s.parse().map_err(|_| Error::InvalidInput(format!("bad class selector {sel}")))?,
            None if k.is_empty() => 2,
            None => return invalid(format!("bad class selector {sel}")),
        };
        let of_order: Vec<GroupElement> = g.elements().filter(|e| g.element_order(e) == k).collect();
        return of_order
            .iter()
            .find(|e| !g.power_subgroup_contains(e, k))
            .or(of_order.first())
            .cloned()
            .ok_or_else(|| Error::InvalidInput(format!("no class of order {k} in {}", group_label(g.invariants()))));
    }
    let coords: Vec<i64> = sel
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidInput(format!("bad class selector {sel}")))?;
    if coords.len() != g.rank() {
        return invalid(format!("class needs {} coordinates", g.rank()));
    }
    Ok(g.normalize_i64(&coords))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub schema: String,
    pub d: i64,
    pub m: u64,
    pub invariants: Vec<u64>,
    pub target: GroupElement,
    pub outcome: SearchOutcome,
}

impl SearchReport {
    fn code(&self) -> i32 {
        match self.outcome {
            SearchOutcome::Found { .. } => EXIT_OK,
            SearchOutcome::NotFound { .. } => EXIT_NOT_FOUND,
            SearchOutcome::PowerBlocked { .. } => EXIT_POWER_BLOCKED,
        }
    }

    fn text(&self) -> String {
        let head = format!("K = Q(sqrt {}), m = {}, Cl^m = {}, target {:?}", self.d, self.m, group_label(&self.invariants), self.target);
        match &self.outcome {
            SearchOutcome::Found { certificate: c, field, stats } => format!(
                "{head}\nfound p = {} after {} primes; prime {}; chi(eps) = {}, chi(-1) = {}\nF: degree {} subfield of Q(zeta_{})",
                c.p, stats.examined, c.prime, c.char_eps.value, c.char_minus_one.value, field.degree, field.p
            ),
            SearchOutcome::NotFound { stats } => {
                let rej: Vec<String> = stats.rejections.iter().map(|(r, n)| format!("{r:?}: {n}")).collect();
                format!("{head}\nno prime up to {} ({} examined); rejections: {}", stats.bound, stats.examined, rej.join(", "))
            }
            SearchOutcome::PowerBlocked { hint } => format!("{head}\npower condition fails for every prime\nhint: {}", hint.requirement),
        }
    }
}

/// Run a search without touching the cache or the filesystem.
pub fn search_report(a: &SearchArgs, jobs: usize) -> Result<SearchReport> {
    check_modulus(a.modulus)?;
    let k = QuadraticField::new(a.d)?;
    if !k.is_real() {
        return invalid("capitulation search needs a real quadratic field");
    }
    let rcg = RayClassGroup::compute(&k, Modulus::from_rational(&k, a.modulus, Some(a.ell))?)?;
    let target = select_target(&rcg.group, &a.class)?;
    let h_k = h_k_constant(&k, a.ell)?.h_k;
    let params = match a.h {
        Some(h) => SearchParams::new(a.ell, a.n, h, h_k, a.bound)?,
        None => SearchParams::with_default_h(a.ell, a.n, h_k, a.bound)?,
    };
    let (eps, _) = aug_unit_mod_m(&k, &rcg.modulus)?;
    let outcome = find_principalizing_prime(&k, &rcg, &target, &eps, &params, jobs)?;
    Ok(SearchReport { schema: SCHEMA.into(), d: a.d, m: a.modulus, invariants: rcg.group.invariants().to_vec(), target, outcome })
}

/// `search`: smallest principalizing prime; writes the certificate when found.
pub fn search(a: &SearchArgs, jobs: usize, cache: Option<&Cache>) -> Result<Output> {
    let key = (a.d, a.modulus, &a.class, a.ell, a.n, a.h, a.bound);
    let rep: SearchReport = cached(cache, "search", &key, || search_report(a, jobs))?;
    let mut text = rep.text();
    if let (Some(path), SearchOutcome::Found { certificate, field, .. }) = (&a.out, &rep.outcome) {
        let file = CertificateFile::new(certificate.clone(), Some(field.clone()));
        fs::write(path, file.to_json()).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        text.push_str(&format!("\ncertificate written to {}", path.display()));
    }
    Ok(Output { code: rep.code(), json: to_json(&rep), text })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub schema: String,
    pub hash_ok: bool,
    pub report: Option<VerificationReport>,
    /// Failure before a report could be produced.
    pub reason: Option<String>,
}

impl VerifyOutput {
    fn code(&self) -> i32 {
        match (&self.report, self.hash_ok) {
            (None, _) | (_, false) => EXIT_FAIL,
            (Some(r), true) => match r.status {
                VerifyStatus::Success => EXIT_OK,
                VerifyStatus::Fail => EXIT_FAIL,
                VerifyStatus::Budget => EXIT_BUDGET,
                VerifyStatus::UnverifiedComposite => EXIT_UNVERIFIED,
            },
        }
    }

    fn text(&self) -> String {
        let mut lines = Vec::new();
        if !self.hash_ok {
            lines.push("hash stamp mismatch".to_string());
        }
        if let Some(r) = &self.reason {
            lines.push(format!("failed: {r}"));
        }
        if let Some(r) = &self.report {
            lines.push(format!("K = Q(sqrt {}), p = {}, l^n = {}^{}: {:?}", r.d, r.p, r.ell, r.n, r.status));
            if let Some(why) = &r.reason {
                lines.push(format!("reason: {why}"));
            }
            if let Some(g) = &r.generator {
                let terms: Vec<String> = g.iter().zip(&r.basis_labels).map(|(c, l)| format!("({c}){l}")).collect();
                lines.push(format!("alpha = {}", terms.join(" + ")));
            }
            if let Some(q) = r.q_l_principal {
                lines.push(format!("q_L principal: {q}"));
            }
        }
        lines.join("\n")
    }
}

/// Rebuild the field and ray class group of a certificate file and decide capitulation.
pub fn verify_certificate(file: &CertificateFile, budget: u64) -> std::result::Result<VerificationReport, Error> {
    let (k, rcg) = file.rebuild()?;
    capitulates(&k, &rcg, &file.certificate.target, &file.certificate, budget)
}

/// `verify`: re-check a certificate file and decide capitulation.
pub fn verify(path: &Path, budget: u64, update: bool) -> Result<Output> {
    let s = fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let mut file = CertificateFile::from_json(&s)?;
    let hash_ok = file.stamp_ok();
    let out = match verify_certificate(&file, budget) {
        Ok(r) => VerifyOutput { schema: SCHEMA.into(), hash_ok, report: Some(r), reason: None },
        Err(e) if error_code(&e) == EXIT_BUDGET => return Err(e),
        Err(e) => VerifyOutput { schema: SCHEMA.into(), hash_ok, report: None, reason: Some(e.to_string()) },
    };
    if update && hash_ok {
        if let Some(r) = &out.report {
            file.verification = Some(r.clone());
            file.stamp();
            fs::write(path, file.to_json()).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        }
    }
    Ok(Output { code: out.code(), json: to_json(&out), text: out.text() })
}

#[derive(Debug, Clone, Args)]
pub struct AmbigArgs {
    /// Fundamental discriminant of a quadratic `L` over `Q`.
    #[arg(long = "L-disc", allow_hyphen_values = true)]
    pub l_disc: Option<i64>,
    /// `d,p` for `L = Q(sqrt d, sqrt p)` over `Q(sqrt d)`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub biquad: Option<Vec<i64>>,
    /// Squarefree positive integer; the modulus is every prime above it.
    #[arg(long = "mod", default_value_t = 1)]
    pub modulus: u64,
    /// Named corpus; only `default` is defined.
    #[arg(long)]
    pub sweep: Option<String>,
}

fn disc_to_d(disc: i64) -> Result<i64> {
    let d = if disc.rem_euclid(4) == 1 {
        disc
    } else if disc % 4 == 0 && matches!((disc / 4).rem_euclid(4), 2 | 3) {
        disc / 4
    } else {
        return invalid(format!("{disc} is not a fundamental discriminant"));
    };
    if d == 1 || !is_squarefree(d) {
        return invalid(format!("{disc} is not a fundamental discriminant"));
    }
    Ok(d)
}

fn ambig_cases(a: &AmbigArgs) -> Result<Vec<(AmbigCase, u64)>> {
    match (&a.sweep, a.l_disc, &a.biquad) {
        (Some(s), None, None) if s == "default" => Ok(default_corpus()),
        (Some(s), None, None) => invalid(format!("unknown corpus {s}")),
        (None, Some(disc), None) => {
            check_modulus(a.modulus)?;
            Ok(vec![(AmbigCase::Quadratic { d: disc_to_d(disc)? }, a.modulus)])
        }
        (None, None, Some(v)) if v.len() == 2 => {
            check_modulus(a.modulus)?;
            Ok(vec![(AmbigCase::Biquadratic { d: v[0], p: v[1] }, a.modulus)])
        }
        _ => invalid("give exactly one of --sweep, --L-disc and --biquad"),
    }
}

/// `ambig`: one JSON line per case; fails iff some case mismatches.
pub fn ambig(a: &AmbigArgs, jobs: usize, cache: Option<&Cache>) -> Result<Output> {
    let cases = ambig_cases(a)?;
    let reports: Vec<AmbigReport> = cached(cache, "ambig", &cases, || ambig_sweep(&cases, jobs))?;
    let json = reports.iter().map(to_json).collect::<Vec<_>>().join("\n");
    let mut text: Vec<String> = reports
        .iter()
        .map(|r| format!("{} m = {}: formula {} direct {} {}", r.label, r.m, r.formula, r.direct, if r.equal { "equal" } else { "MISMATCH" }))
        .collect();
    let bad = reports.iter().filter(|r| !r.equal).count();
    if reports.len() > 1 {
        text.push(format!("{} cases, {} mismatches", reports.len(), bad));
    }
    Ok(Output { code: if bad == 0 { EXIT_OK } else { EXIT_FAIL }, json, text: text.join("\n") })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestCheck {
    pub name: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub schema: String,
    pub seed: u64,
    pub checks: Vec<SelftestCheck>,
}

fn sampled_identity_checks(seed: u64, count: usize) -> Result<Vec<SelftestCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let d: i64 = rng.gen_range(-100..=100);
        let m: u64 = [1, 3, 5, 7, 15][rng.gen_range(0..5)];
        if d == 0 || d == 1 || !is_squarefree(d) {
            continue;
        }
        let k = QuadraticField::new(d)?;
        if gcd_u64(k.disc().unsigned_abs(), m) != 1 {
            continue;
        }
        let rcg = RayClassGroup::compute(&k, Modulus::from_rational(&k, m, None)?)?;
        out.push(SelftestCheck { name: format!("order identity d={d} m={m}"), pass: rcg.order_identity().holds() });
    }
    Ok(out)
}

/// `selftest`: fixed examples plus seeded order-identity samples.
pub fn selftest(seed: u64, jobs: usize) -> Result<Output> {
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool| checks.push(SelftestCheck { name: name.into(), pass });
    push("Cl^5 of Q is Z/2", rayclass_q_report(5)?.invariants == [2]);
    push("Cl^3 of Q(i) is Z/2", rayclass_k_report(-1, 3)?.invariants == [2]);
    push("Cl^1 of Q(sqrt 2) is trivial", rayclass_k_report(2, 1)?.invariants.is_empty());
    let amb = ambig_sweep(&[(AmbigCase::Quadratic { d: -5 }, 3), (AmbigCase::Quadratic { d: 2 }, 1)], jobs)?;
    push("ambiguous formula, two cases", amb.iter().all(|r| r.equal));
    let args = SearchArgs {
        d: 34,
        modulus: 1,
        class: "auto-2".into(),
        ell: 2,
        n: 1,
        h: None,
        bound: 1000,
        out: None,
    };
    let rep = search_report(&args, jobs)?;
    let verified = match &rep.outcome {
        SearchOutcome::Found { certificate, field, .. } => {
            let file = CertificateFile::new(certificate.clone(), Some(field.clone()));
            verify_certificate(&file, crate::biquad::DEFAULT_BUDGET).map(|r| r.status == VerifyStatus::Success).unwrap_or(false)
        }
        _ => false,
    };
    push("Q(sqrt 34) certificate verifies", verified);
    checks.extend(sampled_identity_checks(seed, 5)?);
    let rep = SelftestReport { schema: SCHEMA.into(), seed, checks };
    let text = rep.checks.iter().map(|c| format!("{} {}", if c.pass { "pass" } else { "FAIL" }, c.name)).collect::<Vec<_>>().join("\n");
    let code = if rep.checks.iter().all(|c| c.pass) { EXIT_OK } else { EXIT_FAIL };
    Ok(Output { code, json: to_json(&rep), text })
}
