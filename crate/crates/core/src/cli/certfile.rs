use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::cache::sha256_hex;
use super::SCHEMA;
use crate::biquad::VerificationReport;
use crate::capsearch::CyclicFieldDesc;
use crate::error::{invalid, Error, Result};
use crate::exactmath::factor_u64;
use crate::kummerfrob::CandidateCertificate;
use crate::nf::primes_above;
use crate::quadfield::{Modulus, QuadraticField, RayClassGroup};

/// Build environment recorded in every certificate file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Toolchain {
    pub package: String,
    pub version: String,
    pub rustc: String,
    pub target: String,
}

impl Toolchain {
    pub fn current() -> Self {
        Toolchain {
            package: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            rustc: env!("RAYCAP_RUSTC").into(),
            target: format!("{}-{}", std::env::consts::ARCH, std::env::consts::OS),
        }
    }
}

/// Persisted certificate, stamped with the SHA-256 of its own JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub schema: String,
    pub certificate: CandidateCertificate,
    pub field: Option<CyclicFieldDesc>,
    pub verification: Option<VerificationReport>,
    pub toolchain: Toolchain,
    /// Hex SHA-256 of the file serialized with an empty `hash`.
    pub hash: String,
}

impl CertificateFile {
    pub fn new(certificate: CandidateCertificate, field: Option<CyclicFieldDesc>) -> Self {
        let mut f = CertificateFile {
            schema: SCHEMA.into(),
            certificate,
            field,
            verification: None,
            toolchain: Toolchain::current(),
            hash: String::new(),
        };
        f.stamp();
        f
    }

    fn digest(&self) -> String {
        let mut blank = self.clone();
        blank.hash.clear();
        sha256_hex(serde_json::to_string(&blank).expect("certificate serializes").as_bytes())
    }

    pub fn stamp(&mut self) {
        self.hash = self.digest();
    }

    pub fn stamp_ok(&self) -> bool {
        self.hash == self.digest()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: CertificateFile = serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("certificate file: {e}")))?;
        if f.schema != SCHEMA {
            return invalid(format!("unsupported schema {}", f.schema));
        }
        Ok(f)
    }

    /// Field and ray class group the certificate refers to.
    pub fn rebuild(&self) -> Result<(QuadraticField, RayClassGroup)> {
        let c = &self.certificate;
        let k = QuadraticField::new(c.d)?;
        let mut primes = Vec::new();
        for q in &c.modulus {
            let ideal = k.from_standard_form(q)?;
            let norm = q.norm().to_u64().ok_or_else(|| Error::InvalidInput("modulus norm out of range".into()))?;
            let p = factor_u64(norm).first().map(|pp| pp.p).ok_or_else(|| Error::InvalidInput("unit ideal in modulus".into()))?;
            let prime = primes_above(k.field(), p)
                .into_iter()
                .find(|pr| pr.ideal == ideal)
                .ok_or_else(|| Error::InvalidInput("modulus ideal is not prime".into()))?;
            primes.push(prime);
        }
        let rcg = RayClassGroup::compute(&k, Modulus::new(primes, Some(c.ell))?)?;
        if rcg.group.invariants() != c.invariants.as_slice() {
            return invalid("recorded invariants differ from the recomputed ray class group");
        }
        Ok((k, rcg))
    }
}
