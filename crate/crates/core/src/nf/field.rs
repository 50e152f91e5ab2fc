//! Multiquadratic number fields `Q(sqrt a)` and `Q(sqrt a, sqrt b)` with an
//! integral basis, structure constants and Galois action.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::hnf::{hnf_lower, solve_lower};
use crate::error::{invalid, Result};
use crate::exactmath::{bigint_ln, is_squarefree, isqrt};

/// Integral element as coordinates on the integral basis.
pub type Elem = Vec<BigInt>;

const SQRT_PREC: u64 = 4096;

/// Degree `2^t` field generated by square roots of `t` radicands.
///
/// The radical basis is `r_S = prod_{i in S} sqrt(a_i)` for bit masks `S`.
/// Automorphisms and (for totally real fields) embeddings are indexed by
/// masks `tau`, acting by `r_S -> (-1)^{|S & tau|} r_S`.
#[derive(Debug, Clone)]
pub struct NumberField {
    radicands: Vec<i64>,
    n: usize,
    basis: Vec<Vec<BigRational>>,
    basis_num: Vec<Vec<BigInt>>,
    basis_den: BigInt,
    mult: Vec<Vec<Elem>>,
    galois: Vec<Vec<Elem>>,
    disc: BigInt,
    sqrt_fixed: Vec<BigInt>,
}

fn rad_prod(a: &[i64], s: usize, t: usize) -> (BigInt, usize) {
    let mut c = BigInt::one();
    for (i, &ai) in a.iter().enumerate() {
        if s & t & (1 << i) != 0 {
            c *= ai;
        }
    }
    (c, s ^ t)
}

fn abs_radical(a: &[i64], s: usize) -> BigInt {
    a.iter()
        .enumerate()
        .filter(|(i, _)| s & (1 << i) != 0)
        .fold(BigInt::one(), |acc, (_, &x)| acc * BigInt::from(x.unsigned_abs()))
}

fn rad_mul(a: &[i64], x: &[BigRational], y: &[BigRational]) -> Vec<BigRational> {
    let n = x.len();
    let mut out = vec![BigRational::zero(); n];
    for s in 0..n {
        if x[s].is_zero() {
            continue;
        }
        for t in 0..n {
            if y[t].is_zero() {
                continue;
            }
            let (c, u) = rad_prod(a, s, t);
            out[u] += &x[s] * &y[t] * BigRational::from_integer(c);
        }
    }
    out
}

fn is_integral_rad(a: &[i64], x: &[BigRational]) -> bool {
    let n = x.len();
    let nn = BigRational::from_integer(BigInt::from(n));
    let mut pw = x.to_vec();
    let mut p = Vec::with_capacity(n);
    for k in 0..n {
        if k > 0 {
            pw = rad_mul(a, &pw, x);
        }
        p.push(&pw[0] * &nn);
    }
    let mut e = vec![BigRational::one()];
    for k in 1..=n {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let ek = acc / BigRational::from_integer(BigInt::from(k));
        if !ek.is_integer() {
            return false;
        }
        e.push(ek);
    }
    true
}

impl NumberField {
    /// Quadratic field `Q(sqrt d)`.
    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree(d) {
            return invalid(format!("{d} is not a squarefree integer other than 0, 1"));
        }
        Self::build(vec![d])
    }

    /// Real biquadratic field `Q(sqrt a, sqrt b)`.
    pub fn biquadratic(a: i64, b: i64) -> Result<Self> {
        for x in [a, b] {
            if x <= 1 || !is_squarefree(x) {
                return invalid(format!("{x} is not a squarefree integer > 1"));
            }
        }
        let g = a.gcd(&b);
        if a == b || (a / g) * (b / g) == 1 {
            return invalid("radicands generate the same quadratic field");
        }
        Self::build(vec![a, b])
    }

    fn build(radicands: Vec<i64>) -> Result<Self> {
        let t = radicands.len();
        let n = 1usize << t;
        let a = &radicands;
        // order generators r_S / g_S with (r_S / g_S)^2 integral and squarefree
        let mut gens: Vec<Vec<BigRational>> = Vec::new();
        for s in 0..n {
            let mut v = vec![BigRational::zero(); n];
            let mut g = BigInt::one();
            if s.count_ones() == 2 {
                g = BigInt::from(a[0].gcd(&a[1]));
            }
            v[s] = BigRational::new(BigInt::one(), g);
            gens.push(v);
        }
        let mut all = gens.clone();
        let total = 4usize.pow(n as u32);
        for idx in 1..total {
            let mut v = vec![BigRational::zero(); n];
            let mut k = idx;
            for g in &gens {
                let c = (k % 4) as i64;
                k /= 4;
                if c != 0 {
                    for (x, y) in v.iter_mut().zip(g) {
                        *x += y * BigRational::new(BigInt::from(c), BigInt::from(4));
                    }
                }
            }
            if is_integral_rad(a, &v) {
                all.push(v);
            }
        }
        let den = all
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scaled: Vec<Vec<BigInt>> = all
            .iter()
            .map(|v| v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect())
            .collect();
        let h = hnf_lower(&scaled, n, None).expect("order has full rank");
        let basis: Vec<Vec<BigRational>> = h
            .iter()
            .map(|r| r.iter().map(|x| BigRational::new(x.clone(), den.clone())).collect())
            .collect();
        let basis_den = basis.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let basis_num: Vec<Vec<BigInt>> = basis
            .iter()
            .map(|r| r.iter().map(|x| (x * BigRational::from_integer(basis_den.clone())).to_integer()).collect())
            .collect();
        let sqrt_fixed = (0..n)
            .map(|s| isqrt(&(abs_radical(a, s) << (2 * SQRT_PREC))))
            .collect();
        let mut f = NumberField {
            radicands,
            n,
            basis,
            basis_num,
            basis_den,
            mult: Vec::new(),
            galois: Vec::new(),
            disc: BigInt::zero(),
            sqrt_fixed,
        };
        let mut mult = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let p = rad_mul(&f.radicands, &f.basis[i], &f.basis[j]);
                mult[i][j] = f.from_radical(&p).expect("basis is a ring");
            }
        }
        f.mult = mult;
        let mut galois = Vec::with_capacity(n);
        for tau in 0..n {
            let rows = (0..n)
                .map(|k| {
                    let img: Vec<BigRational> = (0..n)
                        .map(|s| {
                            let x = f.basis[k][s].clone();
                            if (s & tau).count_ones() % 2 == 1 { -x } else { x }
                        })
                        .collect();
                    f.from_radical(&img).expect("automorphism preserves the ring")
                })
                .collect();
            galois.push(rows);
        }
        f.galois = galois;
        let mut tr = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                tr[i][j] = f.trace(&f.mult[i][j].clone());
            }
        }
        f.disc = crate::abgroup::IntMatrix::from_rows(&tr).det();
        Ok(f)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn radicands(&self) -> &[i64] {
        &self.radicands
    }

    /// Totally real (every radicand positive).
    pub fn is_real(&self) -> bool {
        self.radicands.iter().all(|&a| a > 0)
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    /// Integral basis in radical coordinates.
    pub fn basis(&self) -> &[Vec<BigRational>] {
        &self.basis
    }

    pub fn zero(&self) -> Elem {
        vec![BigInt::zero(); self.n]
    }

    pub fn one(&self) -> Elem {
        self.from_int(&BigInt::one())
    }

    pub fn from_int(&self, k: &BigInt) -> Elem {
        let mut e = self.zero();
        e[0] = k.clone();
        e
    }

    /// Rational integer value, if `x` lies in `Z`.
    pub fn as_int(&self, x: &Elem) -> Option<BigInt> {
        x[1..].iter().all(Zero::is_zero).then(|| x[0].clone())
    }

    pub fn to_radical(&self, x: &[BigInt]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.n];
        for (k, xk) in x.iter().enumerate() {
            if xk.is_zero() {
                continue;
            }
            for s in 0..self.n {
                out[s] += BigRational::from_integer(xk.clone()) * &self.basis[k][s];
            }
        }
        out
    }

    /// Integral coordinates of a radical-basis element; `None` if not in `O`.
    pub fn from_radical(&self, v: &[BigRational]) -> Option<Elem> {
        let den = v.iter().fold(self.basis_den.clone(), |acc, x| acc.lcm(x.denom()));
        let scale = &den / &self.basis_den;
        let target: Vec<BigInt> = v
            .iter()
            .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let b: Vec<Vec<BigInt>> = self.basis_num.iter().map(|r| r.iter().map(|y| y * &scale).collect()).collect();
        solve_lower(&b, &target)
    }

    pub fn add(&self, x: &[BigInt], y: &[BigInt]) -> Elem {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    pub fn sub(&self, x: &[BigInt], y: &[BigInt]) -> Elem {
        x.iter().zip(y).map(|(a, b)| a - b).collect()
    }

    pub fn neg(&self, x: &[BigInt]) -> Elem {
        x.iter().map(|a| -a).collect()
    }

    pub fn scale(&self, x: &[BigInt], k: &BigInt) -> Elem {
        x.iter().map(|a| a * k).collect()
    }

    pub fn mul(&self, x: &[BigInt], y: &[BigInt]) -> Elem {
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, m) in out.iter_mut().zip(&self.mult[i][j]) {
                    if !m.is_zero() {
                        *o += &c * m;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[BigInt], mut e: u64) -> Elem {
        let mut base = x.to_vec();
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        r
    }

    /// Exact quotient `x / y`, when it is integral.
    pub fn div(&self, x: &[BigInt], y: &[BigInt]) -> Option<Elem> {
        let nb = self.norm(y);
        if nb.is_zero() {
            return None;
        }
        let num = self.mul(x, &self.conj_product(y));
        num.iter()
            .map(|c| {
                let (q, r) = c.div_rem(&nb);
                r.is_zero().then_some(q)
            })
            .collect()
    }

    /// Image under the automorphism indexed by `tau`.
    pub fn conj(&self, x: &[BigInt], tau: usize) -> Elem {
        let mut out = self.zero();
        for (k, xk) in x.iter().enumerate() {
            if xk.is_zero() {
                continue;
            }
            for (o, g) in out.iter_mut().zip(&self.galois[tau][k]) {
                *o += xk * g;
            }
        }
        out
    }

    /// Product of the nontrivial conjugates, so `x * conj_product(x) = N(x)`.
    pub fn conj_product(&self, x: &[BigInt]) -> Elem {
        (1..self.n).fold(self.one(), |acc, t| self.mul(&acc, &self.conj(x, t)))
    }

    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        let p = self.mul(x, &self.conj_product(x));
        p[0].clone()
    }

    pub fn trace(&self, x: &[BigInt]) -> BigInt {
        let r = self.to_radical(x);
        (&r[0] * BigRational::from_integer(BigInt::from(self.n))).to_integer()
    }

    /// Number of Minkowski coordinates (`n` for real fields, 2 for imaginary quadratic).
    pub fn places(&self) -> usize {
        if self.is_real() { self.n } else { 1 }
    }

    fn sqrt_at(&self, s: usize, prec: u64) -> BigInt {
        if prec <= SQRT_PREC {
            &self.sqrt_fixed[s] >> (SQRT_PREC - prec)
        } else {
            isqrt(&(abs_radical(&self.radicands, s) << (2 * prec)))
        }
    }

    /// Precision (bits) adequate for the embeddings of `x`.
    pub fn precision_for(&self, x: &[BigInt]) -> u64 {
        let bits = x.iter().map(|c| c.bits()).max().unwrap_or(0);
        96 + self.n as u64 * (bits + 8)
    }

    /// Fixed-point Minkowski coordinates scaled by `2^prec`: the real
    /// embeddings for totally real fields, `(Re, Im)` for an imaginary
    /// quadratic field.
    pub fn minkowski_fixed(&self, x: &[BigInt], prec: u64) -> Vec<BigInt> {
        let nums: Vec<BigInt> = (0..self.n)
            .map(|s| x.iter().zip(&self.basis_num).map(|(xk, b)| xk * &b[s]).sum())
            .collect();
        let terms: Vec<BigInt> = (0..self.n).map(|s| &nums[s] * self.sqrt_at(s, prec)).collect();
        let div = |v: BigInt| v.div_floor(&self.basis_den);
        if self.is_real() {
            (0..self.n)
                .map(|tau| {
                    let mut acc = BigInt::zero();
                    for (s, t) in terms.iter().enumerate() {
                        if (s & tau).count_ones() % 2 == 1 {
                            acc -= t;
                        } else {
                            acc += t;
                        }
                    }
                    div(acc)
                })
                .collect()
        } else {
            vec![div(terms[0].clone()), div(terms[1].clone())]
        }
    }

    pub fn minkowski(&self, x: &[BigInt]) -> Vec<f64> {
        let prec = self.precision_for(x);
        self.minkowski_fixed(x, prec).iter().map(|v| fixed_to_f64(v, prec)).collect()
    }

    /// `log |sigma(x)|` per infinite place (one value for imaginary quadratic).
    pub fn abs_logs(&self, x: &[BigInt]) -> Vec<f64> {
        let prec = self.precision_for(x);
        let m = self.minkowski_fixed(x, prec);
        let shift = prec as f64 * std::f64::consts::LN_2;
        if self.is_real() {
            m.iter().map(|v| bigint_ln(&v.abs()) - shift).collect()
        } else {
            let sq = &m[0] * &m[0] + &m[1] * &m[1];
            vec![0.5 * bigint_ln(&sq) - shift]
        }
    }

    /// Signs of the real embeddings.
    pub fn signs(&self, x: &[BigInt]) -> Vec<i8> {
        let prec = self.precision_for(x);
        self.minkowski_fixed(x, prec)
            .iter()
            .map(|v| if v.is_negative() { -1 } else { 1 })
            .collect()
    }

    /// Exact square root in `O`, if `x` is a square.
    pub fn sqrt(&self, x: &[BigInt]) -> Option<Elem> {
        if !self.is_real() {
            return self.sqrt_imag(x);
        }
        let prec = self.precision_for(x) + 64;
        let m = self.minkowski_fixed(x, prec);
        if m.iter().any(|v| v.is_negative()) {
            return None;
        }
        let roots: Vec<BigInt> = m.iter().map(|v| isqrt(&(v << prec))).collect();
        for signs in 0..(1usize << (self.n - 1)) {
            let vals: Vec<BigInt> = roots
                .iter()
                .enumerate()
                .map(|(i, r)| if i > 0 && signs & (1 << (i - 1)) != 0 { -r } else { r.clone() })
                .collect();
            if let Some(y) = self.from_embeddings(&vals, prec) {
                if self.mul(&y, &y) == x {
                    return Some(y);
                }
            }
        }
        None
    }

    fn sqrt_imag(&self, x: &[BigInt]) -> Option<Elem> {
        // y = u + v sqrt(d) in radical coordinates, solve by norms
        let r = self.to_radical(x);
        let d = BigRational::from_integer(BigInt::from(self.radicands[0]));
        let nx = &r[0] * &r[0] - &d * &r[1] * &r[1];
        let nxi = nx.to_integer();
        if !nx.is_integer() || nxi.is_negative() {
            return None;
        }
        let s = isqrt(&nxi);
        if &s * &s != nxi {
            return None;
        }
        for sg in [BigRational::from_integer(s.clone()), -BigRational::from_integer(s.clone())] {
            let u2 = (&r[0] + &sg) / BigRational::from_integer(BigInt::from(2));
            for den in [1i64, 2] {
                let scaled = &u2 * BigRational::from_integer(BigInt::from(den * den));
                if !scaled.is_integer() || scaled.is_negative() {
                    continue;
                }
                let q = scaled.to_integer();
                let u = isqrt(&q);
                if &u * &u != q {
                    continue;
                }
                let u = BigRational::new(u, BigInt::from(den));
                if u.is_zero() {
                    continue;
                }
                let v = &r[1] / (BigRational::from_integer(BigInt::from(2)) * &u);
                if let Some(y) = self.from_radical(&[u, v]) {
                    if self.mul(&y, &y) == x {
                        return Some(y);
                    }
                }
            }
        }
        if r[0].is_zero() && r[1].is_zero() {
            return Some(self.zero());
        }
        None
    }

    /// Reconstruct an element from fixed-point real embeddings (rounding).
    fn from_embeddings(&self, vals: &[BigInt], prec: u64) -> Option<Elem> {
        let n = self.n;
        let mut rad = Vec::with_capacity(n);
        for s in 0..n {
            let mut w = BigInt::zero();
            for (tau, v) in vals.iter().enumerate() {
                if (s & tau).count_ones() % 2 == 1 {
                    w -= v;
                } else {
                    w += v;
                }
            }
            // c_S sqrt(A_S) = w / n, so c_S = w sqrt(A_S) / (n A_S)
            let a_s = abs_radical(&self.radicands, s);
            let num = &w * self.sqrt_at(s, prec) * &self.basis_den;
            let den = (BigInt::from(n) * &a_s) << (2 * prec);
            let c = round_div(&num, &den);
            rad.push(BigRational::new(c, self.basis_den.clone()));
        }
        self.from_radical(&rad)
    }
}

fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    (a * BigInt::from(2) + b).div_floor(&(b * BigInt::from(2)))
}

/// Convert a fixed-point integer `v / 2^prec` to `f64`.
pub fn fixed_to_f64(v: &BigInt, prec: u64) -> f64 {
    let b = v.bits();
    if b <= 1000 {
        return v.to_f64().unwrap() * 2f64.powi(-(prec as i32));
    }
    let sh = b - 60;
    (v >> sh).to_f64().unwrap() * 2f64.powi(sh as i32 - prec as i32)
}
