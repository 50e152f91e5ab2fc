//! LLL reduction and Fincke–Pohst enumeration for ideal lattices under a
//! diagonally scaled Minkowski form.
//!
//! Basis vectors are kept as exact integral elements; their float images
//! are recomputed from the exact coordinates after every change, so
//! rounding never accumulates across reduction steps.

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Zero};

use super::field::{Elem, NumberField};

/// Ideal lattice with the quadratic form `sum_i (scale_i * x_i)^2` on the
/// Minkowski coordinates `x_i`.
pub struct ScaledLattice<'a> {
    field: &'a NumberField,
    scale: Vec<f64>,
    pub basis: Vec<Elem>,
    images: Vec<Vec<f64>>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl<'a> ScaledLattice<'a> {
    pub fn new(field: &'a NumberField, basis: Vec<Elem>, scale: Vec<f64>) -> Self {
        let mut l = ScaledLattice { field, scale, images: Vec::new(), basis };
        l.images = l.basis.iter().map(|b| l.image(b)).collect();
        l
    }

    pub fn image(&self, x: &Elem) -> Vec<f64> {
        self.field.minkowski(x).iter().zip(&self.scale).map(|(v, s)| v * s).collect()
    }

    pub fn set_scale(&mut self, scale: Vec<f64>) {
        self.scale = scale;
        self.images = self.basis.iter().map(|b| self.image(b)).collect();
    }

    fn gram_schmidt(&self) -> (Vec<Vec<f64>>, Vec<f64>) {
        let n = self.basis.len();
        let mut mu = vec![vec![0.0; n]; n];
        let mut bstar: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut norms = vec![0.0; n];
        for i in 0..n {
            let mut v = self.images[i].clone();
            for j in 0..i {
                mu[i][j] = if norms[j] > 0.0 { dot(&self.images[i], &bstar[j]) / norms[j] } else { 0.0 };
                for (x, y) in v.iter_mut().zip(&bstar[j]) {
                    *x -= mu[i][j] * y;
                }
            }
            norms[i] = dot(&v, &v);
            bstar.push(v);
        }
        (mu, norms)
    }

    fn size_reduce(&mut self, k: usize) {
        for _ in 0..64 {
            let (mu, _) = self.gram_schmidt();
            let mut changed = false;
            for j in (0..k).rev() {
                let m = mu[k][j];
                if m.abs() > 0.51 {
                    let q = BigInt::from_f64(m.round()).unwrap_or_else(BigInt::zero);
                    if q.is_zero() {
                        continue;
                    }
                    let t = self.field.scale(&self.basis[j], &q);
                    self.basis[k] = self.field.sub(&self.basis[k], &t);
                    changed = true;
                    break;
                }
            }
            if !changed {
                break;
            }
            self.images[k] = self.image(&self.basis[k]);
        }
    }

    /// LLL with parameter 0.99.
    pub fn lll(&mut self) {
        let n = self.basis.len();
        let mut k = 1;
        let mut guard = 0usize;
        while k < n && guard < 100_000 {
            guard += 1;
            self.size_reduce(k);
            let (mu, norms) = self.gram_schmidt();
            if norms[k] < (0.99 - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1] {
                self.basis.swap(k, k - 1);
                self.images.swap(k, k - 1);
                k = k.saturating_sub(1).max(1);
            } else {
                k += 1;
            }
        }
    }

    /// All nonzero lattice vectors with form value `<= bound`, one of each
    /// `±` pair, in deterministic order. Stops after `limit` vectors.
    pub fn enumerate(&self, bound: f64, limit: usize) -> Vec<Elem> {
        let n = self.basis.len();
        let (mu, norms) = self.gram_schmidt();
        let mut out = Vec::new();
        let mut x = vec![0i64; n];
        let mut center = vec![0.0f64; n];
        enum_rec(n, &mu, &norms, bound, &mut x, &mut center, 0.0, &mut |coef: &[i64]| {
            if out.len() >= limit {
                return false;
            }
            // keep the representative whose last nonzero coefficient is positive
            let lead = coef.iter().rev().find(|&&c| c != 0).copied().unwrap_or(0);
            if lead > 0 {
                let mut v = self.field.zero();
                for (c, b) in coef.iter().zip(&self.basis) {
                    if *c != 0 {
                        v = self.field.add(&v, &self.field.scale(b, &BigInt::from(*c)));
                    }
                }
                out.push(v);
            }
            true
        });
        out
    }
}

#[allow(clippy::too_many_arguments)]
fn enum_rec(
    level: usize,
    mu: &[Vec<f64>],
    norms: &[f64],
    bound: f64,
    x: &mut [i64],
    center: &mut [f64],
    partial: f64,
    visit: &mut dyn FnMut(&[i64]) -> bool,
) -> bool {
    if level == 0 {
        if x.iter().any(|&c| c != 0) {
            return visit(x);
        }
        return true;
    }
    let i = level - 1;
    let n = x.len();
    let c: f64 = -(i + 1..n).map(|j| x[j] as f64 * mu[j][i]).sum::<f64>();
    center[i] = c;
    if norms[i] <= 0.0 {
        return true;
    }
    let rem = (bound - partial).max(0.0);
    let r = (rem / norms[i]).sqrt();
    let lo = (c - r).ceil() as i64;
    let hi = (c + r).floor() as i64;
    for v in lo..=hi {
        let d = v as f64 - c;
        let p = partial + d * d * norms[i];
        if p > bound {
            continue;
        }
        x[i] = v;
        if !enum_rec(i, mu, norms, bound, x, center, p, visit) {
            x[i] = 0;
            return false;
        }
    }
    x[i] = 0;
    true
}
