use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Auxiliary cyclic layer `F_0` of degree `l^h` inside a real cyclotomic field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerHint {
    pub ell: u64,
    pub h: u32,
    /// `F_0` is the degree-`l^h` subfield of `Q(zeta_conductor)^+`.
    pub conductor: u64,
    pub degree: u64,
    pub requirement: String,
}

pub fn power_adjustment_hint(ell: u64, h: u32) -> Result<PowerHint> {
    if ell != 2 && ell != 3 {
        return invalid(format!("unsupported prime l = {ell}"));
    }
    let degree = ell.pow(h);
    let conductor = if ell == 2 { 1 << (h + 2) } else { ell.pow(h + 1) };
    let requirement = format!(
        "compose K with F_0 of degree {degree} in Q(zeta_{conductor})^+, totally ramified at an auxiliary prime q \
         split completely in K(zeta_{conductor}) and prime to 2 l m"
    );
    Ok(PowerHint { ell, h, conductor, degree, requirement })
}
