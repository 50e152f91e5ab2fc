//! Dense univariate polynomials over a prime field `F_p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::primes::{inv_mod, is_prime, mul_mod};
use crate::error::{invalid, Result};

/// Polynomial with coefficients in `F_p`, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyModP {
    coeffs: Vec<u64>,
    p: u64,
}

impl PolyModP {
    pub fn new(coeffs: Vec<u64>, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        Ok(Self::raw(coeffs.into_iter().map(|c| c % p).collect(), p))
    }

    /// Reduce an integer polynomial modulo `p`.
    pub fn from_integers(coeffs: &[BigInt], p: u64) -> Result<Self> {
        let pb = BigInt::from(p);
        let c = coeffs
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect();
        Self::new(c, p)
    }

    fn raw(mut coeffs: Vec<u64>, p: u64) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyModP { coeffs, p }
    }

    pub fn zero(p: u64) -> Self {
        Self::raw(vec![], p)
    }

    pub fn one(p: u64) -> Self {
        Self::raw(vec![1], p)
    }

    /// The monomial `x`.
    pub fn x(p: u64) -> Self {
        Self::raw(vec![0, 1 % p], p)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let x = x % self.p;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                (self.coeffs.get(i).copied().unwrap_or(0) + o.coeffs.get(i).copied().unwrap_or(0))
                    % self.p
            })
            .collect();
        Self::raw(c, self.p)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = o.coeffs.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        Self::raw(c, self.p)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        Self::raw(acc.into_iter().map(|c| c as u64).collect(), self.p)
    }

    fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = inv_mod(lc, self.p).unwrap();
                Self::raw(self.coeffs.iter().map(|&c| mul_mod(c, inv, self.p)).collect(), self.p)
            }
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = inv_mod(*d.coeffs.last().unwrap(), self.p).unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(self.p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mul_mod(r[k + dd], inv, self.p);
            q[k] = c;
            if c != 0 {
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    let t = mul_mod(c, dc, self.p);
                    r[k + j] = (r[k + j] + self.p - t) % self.p;
                }
            }
        }
        r.truncate(dd);
        (Self::raw(q, self.p), Self::raw(r, self.p))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut r = Self::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        r
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
            .collect();
        Self::raw(c, self.p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Distinct-degree factorization of a squarefree polynomial:
    /// pairs `(d, g_d)` where `g_d` is the product of all irreducible
    /// factors of degree `d`.
    pub fn distinct_degree(&self) -> Vec<(usize, Self)> {
        let p = self.p;
        let mut f = self.monic();
        let mut out = Vec::new();
        let x = Self::x(p);
        let mut h = x.rem(&f);
        let mut d = 0usize;
        while let Some(deg) = f.degree() {
            if deg == 0 {
                break;
            }
            d += 1;
            if 2 * d > deg {
                out.push((deg, f.clone()));
                break;
            }
            h = h.pow_mod(p as u128, &f);
            let g = f.gcd(&h.sub(&x));
            if g.degree().unwrap() > 0 {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((d, g));
            }
        }
        out
    }

    /// Degrees of the irreducible factors of a squarefree polynomial, ascending.
    pub fn factor_degrees(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (d, g) in self.distinct_degree() {
            let count = g.degree().unwrap() / d;
            out.extend(std::iter::repeat_n(d, count));
        }
        out
    }

    /// Split a product of distinct linear factors into its roots.
    fn split_linear(&self, out: &mut Vec<u64>) {
        let p = self.p;
        match self.degree() {
            None | Some(0) => return,
            Some(1) => {
                let inv = inv_mod(self.coeffs[1], p).unwrap();
                out.push(mul_mod(p - self.coeffs[0], inv, p));
                return;
            }
            _ => {}
        }
        // deterministic shifts a = 0, 1, 2, ... of (x + a)^((p-1)/2) - 1
        for a in 0..p {
            let shifted = Self::raw(vec![a, 1], p);
            let w = shifted
                .pow_mod(((p - 1) / 2) as u128, self)
                .sub(&Self::one(p));
            let g = self.gcd(&w);
            let gd = g.degree().unwrap_or(0);
            if gd > 0 && gd < self.degree().unwrap() {
                g.split_linear(out);
                self.div_rem(&g).0.monic().split_linear(out);
                return;
            }
        }
        unreachable!("shift search always splits for odd p");
    }

    /// All roots in `[0, p)`, ascending, each listed once.
    pub fn roots(&self) -> Result<Vec<u64>> {
        if self.is_zero() {
            return invalid("zero polynomial has every element as a root");
        }
        let p = self.p;
        let mut out = Vec::new();
        if p == 2 {
            out.extend((0..2).filter(|&x| self.eval(x) == 0));
            return Ok(out);
        }
        let x = Self::x(p);
        let xp = x.pow_mod(p as u128, self);
        let g = self.gcd(&xp.sub(&x));
        g.split_linear(&mut out);
        out.sort_unstable();
        Ok(out)
    }
}

/// Roots of `f` modulo its prime.
pub fn roots_mod_p(f: &PolyModP) -> Result<Vec<u64>> {
    f.roots()
}
