//! Unit groups and principal generator search.
//!
//! A generator of `I` is unique up to units, so some generator has its
//! normalized log vector in the fundamental parallelotope `F` of the unit
//! log lattice. `F` is covered by cells of sup-radius `rho`; inside a cell
//! centred at `v` every such generator satisfies
//! `sum_i e^{-2 v_i} sigma_i(x)^2 <= n N(I)^{2/n} e^{2 rho}`, which is a
//! Fincke–Pohst query on the rescaled ideal lattice. Candidates are
//! accepted only after the exact check `|N(x)| = N(I)`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::field::{Elem, NumberField};
use super::ideal::Ideal;
use super::lattice::ScaledLattice;
use crate::error::{Error, Result};
use crate::exactmath::bigint_ln;

/// Units: torsion plus a system of independent units of full rank.
#[derive(Debug, Clone)]
pub struct UnitGroup {
    pub torsion_order: u64,
    pub torsion_gen: Elem,
    pub fundamental: Vec<Elem>,
    pub logs: Vec<Vec<f64>>,
}

impl UnitGroup {
    pub fn new(field: &NumberField, torsion_order: u64, torsion_gen: Elem, fundamental: Vec<Elem>) -> Self {
        let logs = fundamental.iter().map(|u| field.abs_logs(u)).collect();
        UnitGroup { torsion_order, torsion_gen, fundamental, logs }
    }

    pub fn rank(&self) -> usize {
        self.fundamental.len()
    }

    /// Torsion generator followed by the free generators.
    pub fn generators(&self) -> Vec<Elem> {
        let mut g = vec![self.torsion_gen.clone()];
        g.extend(self.fundamental.iter().cloned());
        g
    }

    /// Regulator of the free part (absolute value of a maximal minor).
    pub fn regulator(&self) -> f64 {
        let r = self.rank();
        let m: Vec<Vec<f64>> = self.logs.iter().map(|l| l[..r].to_vec()).collect();
        det_f64(m).abs()
    }
}

fn det_f64(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).unwrap();
        if m[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                m[r][k] -= f * m[c][k];
            }
        }
    }
    det
}

/// Inverse of a unit.
pub fn unit_inverse(field: &NumberField, u: &Elem) -> Elem {
    let c = field.conj_product(u);
    if field.norm(u).is_negative() { field.neg(&c) } else { c }
}

/// `u^k` for a unit and any integer exponent.
pub fn unit_pow(field: &NumberField, u: &Elem, k: i64) -> Elem {
    let p = field.pow(u, k.unsigned_abs());
    if k < 0 { unit_inverse(field, &p) } else { p }
}

fn ball_volume(n: usize) -> f64 {
    match n {
        1 => 2.0,
        2 => std::f64::consts::PI,
        3 => 4.0 / 3.0 * std::f64::consts::PI,
        _ => std::f64::consts::PI.powi(2) / 2.0,
    }
}

/// Plan for covering the fundamental domain.
struct Cover {
    rho: f64,
    steps: Vec<u64>,
}

fn plan(field: &NumberField, units: &UnitGroup) -> Cover {
    let n = field.degree() as f64;
    let r = units.rank();
    let sd = bigint_ln(&field.discriminant().abs()) / 2.0;
    let mut best: Option<(f64, Cover)> = None;
    for rho in [0.25, 0.4, 0.6, 0.8, 1.0, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0] {
        let steps: Vec<u64> = units
            .logs
            .iter()
            .map(|l| {
                let sup = l.iter().fold(0.0f64, |a, x| a.max(x.abs()));
                ((r as f64 * sup / (2.0 * rho)).ceil() as u64).max(1)
            })
            .collect();
        let cells: f64 = steps.iter().map(|&s| s as f64).product();
        let expected = (ball_volume(field.degree()).ln() + n / 2.0 * n.ln() + n * rho * 1.01 - sd).exp();
        let cost = cells * (40.0 + expected);
        if best.as_ref().is_none_or(|(c, _)| cost < *c) {
            best = Some((cost, Cover { rho, steps }));
        }
    }
    best.unwrap().1
}

/// Estimated enumeration work for a principality test in `field`.
pub fn search_cost(field: &NumberField, units: &UnitGroup) -> f64 {
    if units.rank() == 0 {
        return 1.0;
    }
    let c = plan(field, units);
    c.steps.iter().map(|&s| s as f64).product()
}

/// A generator of `ideal`, `None` if it is not principal, or `Budget` when
/// the search would exceed `budget` cells.
pub fn find_generator(field: &NumberField, units: &UnitGroup, ideal: &Ideal, budget: u64) -> Result<Option<Elem>> {
    let norm = ideal.norm();
    if norm == BigInt::from(1) {
        return Ok(Some(field.one()));
    }
    let n = field.degree();
    let ln_n = bigint_ln(&norm);
    let accept = |x: &Elem| field.norm(x).abs() == norm;
    if units.rank() == 0 {
        let mut lat = ScaledLattice::new(field, ideal.basis(), vec![1.0; 2]);
        lat.lll();
        let bound = ln_n.exp() * (1.0 + 1e-9) + 1e-9;
        return Ok(lat.enumerate(bound, usize::MAX).into_iter().find(|x| accept(x)));
    }
    let cover = plan(field, units);
    let cells: u64 = cover.steps.iter().product();
    if cells > budget {
        return Err(Error::Budget(cells));
    }
    let rho = cover.rho * 1.01 + 1e-9;
    let bound_log = 2.0 * ln_n / n as f64 + 2.0 * rho + (n as f64).ln();
    let mut lat = ScaledLattice::new(field, ideal.basis(), vec![1.0; n]);
    lat.lll();
    let r = units.rank();
    let mut idx = vec![0u64; r];
    loop {
        let mut v = vec![0.0; n];
        for j in 0..r {
            let t = (idx[j] as f64 + 0.5) / cover.steps[j] as f64;
            for (vi, li) in v.iter_mut().zip(&units.logs[j]) {
                *vi += t * li;
            }
        }
        // normalize so the largest scaled coordinate bound is e^0
        let scale: Vec<f64> = v.iter().map(|x| (-x - ln_n / n as f64).exp()).collect();
        lat.set_scale(scale);
        lat.lll();
        let bound = (bound_log - 2.0 * ln_n / n as f64).exp() * (1.0 + 1e-6);
        if let Some(x) = lat.enumerate(bound, 1 << 20).into_iter().find(|x| accept(x)) {
            return Ok(Some(x));
        }
        let mut j = 0;
        loop {
            if j == r {
                return Ok(None);
            }
            idx[j] += 1;
            if idx[j] < cover.steps[j] {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Whether `x` is a unit times `y`.
pub fn unit_equivalent(field: &NumberField, x: &Elem, y: &Elem) -> bool {
    field.div(x, y).is_some() && field.div(y, x).is_some()
}

/// `|N(x)|` as `u64` when it fits.
pub fn abs_norm_u64(field: &NumberField, x: &Elem) -> Option<u64> {
    field.norm(x).abs().to_u64()
}
