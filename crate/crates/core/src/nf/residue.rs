//! Residue fields `O/P` and the unit group of `O/m` for squarefree `m`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::field::{Elem, NumberField};
use super::ideal::PrimeIdeal;
use crate::abgroup::{FiniteAbelianGroup, IntMatrix};
use crate::error::{Error, Result};
use crate::exactmath::{factor_u64, isqrt_u64, mul_mod};

/// `O/P` as `F_p^f`, coordinates on the basis positions where the Hermite
/// basis of `P` has diagonal `p`.
#[derive(Debug, Clone)]
pub struct ResidueField {
    p: u64,
    hnf: Vec<Vec<BigInt>>,
    free: Vec<usize>,
    table: Vec<Vec<Vec<u64>>>,
    one: Vec<u64>,
    generator: Vec<u64>,
    baby: HashMap<Vec<u64>, u64>,
    giant_step: u64,
}

impl ResidueField {
    pub fn new(field: &NumberField, prime: &PrimeIdeal) -> Self {
        let hnf = prime.ideal.rows().to_vec();
        let p = prime.p;
        let free: Vec<usize> = (0..hnf.len()).filter(|&i| hnf[i][i] != BigInt::from(1)).collect();
        let mut rf = ResidueField {
            p,
            hnf,
            free,
            table: Vec::new(),
            one: Vec::new(),
            generator: Vec::new(),
            baby: HashMap::new(),
            giant_step: 1,
        };
        let unit = |i: usize| {
            let mut w = field.zero();
            w[i] = BigInt::from(1);
            w
        };
        rf.table = rf
            .free
            .iter()
            .map(|&a| rf.free.iter().map(|&b| rf.reduce(&field.mul(&unit(a), &unit(b)))).collect())
            .collect();
        rf.one = rf.reduce(&field.one());
        rf.generator = rf.find_generator();
        let order = rf.order() - 1;
        let m = isqrt_u64(order) + 1;
        let mut cur = rf.one.clone();
        for j in 0..m {
            rf.baby.entry(cur.clone()).or_insert(j);
            cur = rf.mul(&cur, &rf.generator);
        }
        rf.giant_step = m;
        rf
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.free.len()
    }

    /// Number of elements `p^f`.
    pub fn order(&self) -> u64 {
        self.p.pow(self.free.len() as u32)
    }

    pub fn reduce(&self, x: &[BigInt]) -> Vec<u64> {
        let mut v = x.to_vec();
        for c in (0..self.hnf.len()).rev() {
            let q = v[c].div_floor(&self.hnf[c][c]);
            if !q.is_zero() {
                for j in 0..=c {
                    let t = &q * &self.hnf[c][j];
                    v[j] -= t;
                }
            }
        }
        self.free.iter().map(|&i| v[i].to_u64().unwrap()).collect()
    }

    pub fn is_zero(&self, u: &[u64]) -> bool {
        u.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, u: &[u64], v: &[u64]) -> Vec<u64> {
        let f = self.free.len();
        let mut out = vec![0u64; f];
        for i in 0..f {
            if u[i] == 0 {
                continue;
            }
            for j in 0..f {
                if v[j] == 0 {
                    continue;
                }
                let c = mul_mod(u[i], v[j], self.p);
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    *o = (*o + mul_mod(c, *t, self.p)) % self.p;
                }
            }
        }
        out
    }

    pub fn pow(&self, u: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = u.to_vec();
        let mut r = self.one.clone();
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

    fn element(&self, idx: u64) -> Vec<u64> {
        let mut k = idx;
        (0..self.free.len())
            .map(|_| {
                let d = k % self.p;
                k /= self.p;
                d
            })
            .collect()
    }

    fn find_generator(&self) -> Vec<u64> {
        let q1 = self.order() - 1;
        let factors = factor_u64(q1);
        (1..self.order())
            .map(|i| self.element(i))
            .find(|g| !self.is_zero(g) && factors.iter().all(|pp| self.pow(g, q1 / pp.p) != self.one))
            .expect("multiplicative group of a finite field is cyclic")
    }

    /// Fixed generator of the multiplicative group.
    pub fn generator(&self) -> &[u64] {
        &self.generator
    }

    /// Exponent `k` in `[0, p^f - 1)` with `g^k = u`.
    pub fn dlog(&self, u: &[u64]) -> Result<u64> {
        if self.is_zero(u) {
            return Err(Error::NotCoprime);
        }
        let order = self.order() - 1;
        let m = self.giant_step;
        let step = self.pow(&self.generator, order - (m % order));
        let mut cur = u.to_vec();
        for i in 0..=m {
            if let Some(&j) = self.baby.get(&cur) {
                return Ok((i * m + j) % order);
            }
            cur = self.mul(&cur, &step);
        }
        unreachable!("baby-step giant-step covers the group")
    }

    pub fn dlog_elem(&self, x: &[BigInt]) -> Result<u64> {
        self.dlog(&self.reduce(x))
    }
}

/// `(O/m)^*` for a squarefree product of distinct primes.
#[derive(Debug, Clone)]
pub struct UnitsMod {
    pub primes: Vec<PrimeIdeal>,
    pub fields: Vec<ResidueField>,
}

impl UnitsMod {
    pub fn new(field: &NumberField, primes: Vec<PrimeIdeal>) -> Self {
        let fields = primes.iter().map(|q| ResidueField::new(field, q)).collect();
        UnitsMod { primes, fields }
    }

    /// Orders `N(q) - 1` of the cyclic factors.
    pub fn orders(&self) -> Vec<u64> {
        self.fields.iter().map(|r| r.order() - 1).collect()
    }

    /// Product of the orders.
    pub fn order(&self) -> u128 {
        self.orders().iter().map(|&x| x as u128).product()
    }

    /// Discrete logarithms, one per prime; `NotCoprime` if `x` lies in some prime.
    pub fn dlog(&self, x: &Elem) -> Result<Vec<u64>> {
        self.fields.iter().map(|r| r.dlog_elem(x)).collect()
    }

    /// Logarithms of the rational integer `k`.
    pub fn dlog_int(&self, field: &NumberField, k: &BigInt) -> Result<Vec<u64>> {
        self.dlog(&field.from_int(k))
    }

    /// Whether `x ≡ 1` modulo every prime.
    pub fn is_one(&self, x: &Elem) -> bool {
        self.fields.iter().all(|r| r.reduce(x) == r.pow(r.generator(), 0))
    }

    /// The group as an abstract presentation on the cyclic factors.
    pub fn group(&self) -> FiniteAbelianGroup {
        let k = self.fields.len();
        let mut m = IntMatrix::zeros(k, k);
        for (i, o) in self.orders().iter().enumerate() {
            m[(i, i)] = BigInt::from(*o);
        }
        let labels = self.primes.iter().map(|q| format!("g mod P{}", q.p)).collect();
        FiniteAbelianGroup::from_relations(labels, &m).expect("finite")
    }
}
