use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::quadfield::QuadraticField;

/// `l^{h_K} = [H_K ∩ K_∞ : K] * l^{m_K}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HkConstant {
    pub ell: u64,
    /// `l^{m_K}` is the `l`-part of the roots of unity of `K`.
    pub m_k: u32,
    /// Exponent of `[H_K ∩ K_∞ : K]`.
    pub layer: u32,
    pub h_k: u32,
}

fn fundamental_disc(d: i64) -> i64 {
    if d.rem_euclid(4) == 1 { d } else { 4 * d }
}

fn squarefree_part(mut n: i64) -> i64 {
    let mut f = 2i64;
    while f * f <= n.abs() {
        while n % (f * f) == 0 {
            n /= f * f;
        }
        f += 1;
    }
    n
}

/// Whether `K(sqrt 2) / K` is unramified at every finite prime.
///
/// The relative discriminant is trivial iff `disc(K(sqrt 2)) = disc(K)^2`,
/// and the biquadratic discriminant is the product of its three quadratic ones.
pub fn sqrt2_layer_unramified(d: i64) -> bool {
    if d == 2 {
        return false;
    }
    let dk = fundamental_disc(d) as i128;
    let d2d = fundamental_disc(squarefree_part(2 * d)) as i128;
    dk * 8 * d2d == dk * dk
}

pub fn h_k_constant(k: &QuadraticField, ell: u64) -> Result<HkConstant> {
    let d = k.d();
    let mu = match d {
        -1 => 4,
        -3 => 6,
        _ => 2,
    };
    let (m_k, layer) = match ell {
        2 => {
            let m = if mu == 4 { 2 } else { 1 };
            (m, u32::from(sqrt2_layer_unramified(d)))
        }
        // the first cubic layer is totally ramified at 3 over Q, hence over K
        3 => (u32::from(mu == 6), 0),
        _ => return invalid(format!("unsupported prime l = {ell}")),
    };
    Ok(HkConstant { ell, m_k, layer, h_k: m_k + layer })
}
