//! Integral ideals as lower-triangular Hermite bases over the integral basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::field::{Elem, NumberField};
use super::hnf::{hnf_lower, solve_lower, triangular_det};
use crate::exactmath::{factor_u64, PolyModP};

/// Nonzero integral ideal; `rows[i]` vanishes after column `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ideal {
    rows: Vec<Vec<BigInt>>,
}

impl Ideal {
    pub fn unit(f: &NumberField) -> Self {
        let n = f.degree();
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![BigInt::zero(); n];
                r[i] = BigInt::one();
                r
            })
            .collect();
        Ideal { rows }
    }

    /// Ideal generated by `gens` (not all zero).
    pub fn from_gens(f: &NumberField, gens: &[Elem]) -> Self {
        let n = f.degree();
        let mut modulus: Option<BigInt> = None;
        let mut rows = Vec::new();
        for g in gens {
            if g.iter().all(Zero::is_zero) {
                continue;
            }
            let nm = f.norm(g).abs();
            if modulus.as_ref().is_none_or(|m| &nm < m) {
                modulus = Some(nm);
            }
            for k in 0..n {
                let mut w = f.zero();
                w[k] = BigInt::one();
                rows.push(f.mul(g, &w));
            }
        }
        let m = modulus.expect("ideal needs a nonzero generator");
        Ideal { rows: hnf_lower(&rows, n, Some(&m)).expect("nonzero ideal has full rank") }
    }

    pub fn principal(f: &NumberField, x: &Elem) -> Self {
        Self::from_gens(f, std::slice::from_ref(x))
    }

    /// `(k)` for a nonzero rational integer.
    pub fn from_int(f: &NumberField, k: &BigInt) -> Self {
        let n = f.degree();
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![BigInt::zero(); n];
                r[i] = k.abs();
                r
            })
            .collect();
        Ideal { rows }
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Hermite basis elements.
    pub fn basis(&self) -> Vec<Elem> {
        self.rows.clone()
    }

    pub fn norm(&self) -> BigInt {
        triangular_det(&self.rows)
    }

    /// Positive generator of `I ∩ Z`.
    pub fn min_int(&self) -> &BigInt {
        &self.rows[0][0]
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        solve_lower(&self.rows, x).is_some()
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn mul(&self, f: &NumberField, o: &Ideal) -> Ideal {
        let n = f.degree();
        let mut gens = Vec::with_capacity(n * n);
        for a in &self.rows {
            for b in &o.rows {
                gens.push(f.mul(a, b));
            }
        }
        let m = self.min_int() * o.min_int();
        Ideal { rows: hnf_lower(&gens, n, Some(&m)).unwrap() }
    }

    pub fn add(&self, f: &NumberField, o: &Ideal) -> Ideal {
        let m = self.min_int().gcd(o.min_int());
        let gens: Vec<Elem> = self.rows.iter().chain(&o.rows).cloned().collect();
        Ideal { rows: hnf_lower(&gens, f.degree(), Some(&m)).unwrap() }
    }

    pub fn pow(&self, f: &NumberField, mut e: u64) -> Ideal {
        let mut base = self.clone();
        let mut r = Ideal::unit(f);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(f, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(f, &base);
            }
        }
        r
    }

    pub fn conj(&self, f: &NumberField, tau: usize) -> Ideal {
        let gens: Vec<Elem> = self.rows.iter().map(|r| f.conj(r, tau)).collect();
        Ideal { rows: hnf_lower(&gens, f.degree(), Some(self.min_int())).unwrap() }
    }

    /// Product of the nontrivial conjugates: `I * conj_product(I) = (N(I))`.
    pub fn conj_product(&self, f: &NumberField) -> Ideal {
        (1..f.degree()).fold(Ideal::unit(f), |acc, t| acc.mul(f, &self.conj(f, t)))
    }

    /// `I / k` when every element of `I` is divisible by `k`.
    pub fn div_int(&self, k: &BigInt) -> Option<Ideal> {
        let mut rows = self.rows.clone();
        for r in rows.iter_mut() {
            for x in r.iter_mut() {
                let (q, rem) = x.div_rem(k);
                if !rem.is_zero() {
                    return None;
                }
                *x = q;
            }
        }
        Some(Ideal { rows })
    }

    /// `I * J^{-1}` when integral.
    pub fn div(&self, f: &NumberField, j: &Ideal) -> Option<Ideal> {
        self.mul(f, &j.conj_product(f)).div_int(&j.norm())
    }

    pub fn is_coprime(&self, f: &NumberField, o: &Ideal) -> bool {
        self.add(f, o).is_unit()
    }

    /// Multiplicity of the prime `p` in `self`.
    pub fn valuation(&self, f: &NumberField, p: &Ideal) -> u32 {
        let mut k = 0;
        let mut cur = self.clone();
        while cur.is_subset(p) {
            match cur.div(f, p) {
                Some(q) => {
                    cur = q;
                    k += 1;
                }
                None => break,
            }
        }
        k
    }
}

/// Prime ideal with its residue characteristic and local degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeIdeal {
    pub ideal: Ideal,
    pub p: u64,
    pub e: u32,
    pub f: u32,
}

impl PrimeIdeal {
    pub fn norm(&self) -> u64 {
        self.p.pow(self.f)
    }
}

fn canonical(p: u64, v: &[BigInt]) -> Vec<u64> {
    let pb = BigInt::from(p);
    v.iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect()
}

fn finish(f: &NumberField, p: u64, mut ideals: Vec<Ideal>) -> Vec<PrimeIdeal> {
    ideals.sort();
    ideals.dedup();
    let n = f.degree() as u32;
    let g = ideals.len() as u32;
    let out: Vec<PrimeIdeal> = ideals
        .into_iter()
        .map(|ideal| {
            let nm = ideal.norm().to_u64().expect("prime norm fits");
            let mut fdeg = 0;
            let mut t = 1u64;
            while t < nm {
                t *= p;
                fdeg += 1;
            }
            assert_eq!(t, nm, "norm of a prime above {p} is a power of {p}");
            PrimeIdeal { ideal, p, e: n / (fdeg * g), f: fdeg }
        })
        .collect();
    for q in &out {
        assert_eq!(q.e * q.f * g, n, "inconsistent decomposition of {p}");
    }
    out
}

/// Primes above a rational prime `p`, sorted by Hermite basis.
pub fn primes_above(f: &NumberField, p: u64) -> Vec<PrimeIdeal> {
    let n = f.degree();
    let pb = BigInt::from(p);
    let pe = f.from_int(&pb);
    if n == 2 {
        // O = Z[w] with w the second basis element
        let w = {
            let mut w = f.zero();
            w[1] = BigInt::one();
            w
        };
        let tr = f.trace(&w);
        let nm = f.norm(&w);
        let poly = PolyModP::from_integers(&[nm, -tr, BigInt::one()], p).unwrap();
        let roots = poly.roots().unwrap();
        let ideals = match roots.len() {
            0 => vec![Ideal::from_int(f, &pb)],
            _ => roots
                .iter()
                .map(|&r| Ideal::from_gens(f, &[pe.clone(), f.sub(&w, &f.from_int(&BigInt::from(r)))]))
                .collect(),
        };
        return finish(f, p, ideals);
    }
    if p.checked_pow(n as u32).is_some_and(|q| q <= 2401) {
        // every ideal over p is (p, x) for some x in O / pO
        let total = p.pow(n as u32);
        let mut seen: Vec<Ideal> = Vec::new();
        for idx in 1..total {
            let mut x = f.zero();
            let mut k = idx;
            for c in x.iter_mut() {
                *c = BigInt::from(k % p);
                k /= p;
            }
            let j = Ideal::from_gens(f, &[pe.clone(), x]);
            if !j.is_unit() && !seen.contains(&j) {
                seen.push(j);
            }
        }
        let maximal: Vec<Ideal> = seen
            .iter()
            .filter(|j| !seen.iter().any(|k| k != *j && j.is_subset(k)))
            .cloned()
            .collect();
        return finish(f, p, maximal);
    }
    // odd p: intersect primes of the three quadratic subfields Q(theta_s)
    let a = f.radicands();
    let g = a[0].gcd(&a[1]);
    let mut options: Vec<Vec<Elem>> = Vec::new();
    for s in 1..n {
        let (c, gs) = match s {
            1 => (BigInt::from(a[0]), 1),
            2 => (BigInt::from(a[1]), 1),
            _ => (BigInt::from(a[0] / g) * BigInt::from(a[1] / g), g),
        };
        let mut rad = vec![num_rational::BigRational::zero(); n];
        rad[s] = num_rational::BigRational::new(BigInt::one(), BigInt::from(gs));
        let theta = f.from_radical(&rad).unwrap();
        let poly = PolyModP::from_integers(&[-c, BigInt::zero(), BigInt::one()], p).unwrap();
        let roots = poly.roots().unwrap();
        let opts = if roots.is_empty() {
            vec![f.zero()]
        } else {
            roots.iter().map(|&r| f.sub(&theta, &f.from_int(&BigInt::from(r)))).collect()
        };
        options.push(opts);
    }
    let mut ideals = Vec::new();
    for x1 in &options[0] {
        for x2 in &options[1] {
            for x3 in &options[2] {
                let j = Ideal::from_gens(f, &[pe.clone(), x1.clone(), x2.clone(), x3.clone()]);
                if !j.is_unit() {
                    ideals.push(j);
                }
            }
        }
    }
    finish(f, p, ideals)
}

/// Factorization of an integral ideal into primes with multiplicities.
pub fn factor_ideal(f: &NumberField, i: &Ideal) -> Vec<(PrimeIdeal, u32)> {
    let nm = i.norm().to_u64().expect("norm fits in u64 for factorization");
    let mut out = Vec::new();
    for pp in factor_u64(nm) {
        for q in primes_above(f, pp.p) {
            let v = i.valuation(f, &q.ideal);
            if v > 0 {
                out.push((q, v));
            }
        }
    }
    out
}

/// Residues of `x` modulo `p` on the integral basis.
pub fn reduce_mod(p: u64, x: &[BigInt]) -> Vec<u64> {
    canonical(p, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_primes() {
        let k = NumberField::quadratic(-1).unwrap();
        let ps = primes_above(&k, 5);
        assert_eq!(ps.len(), 2);
        assert!(ps.iter().all(|q| q.e == 1 && q.f == 1));
        let prod = ps[0].ideal.mul(&k, &ps[1].ideal);
        assert_eq!(prod, Ideal::from_int(&k, &BigInt::from(5)));
        let ps = primes_above(&k, 7);
        assert_eq!((ps.len(), ps[0].f), (1, 2));
        let ps = primes_above(&k, 2);
        assert_eq!((ps.len(), ps[0].e), (1, 2));
    }

    #[test]
    fn biquadratic_decompositions() {
        let l = NumberField::biquadratic(2, 5).unwrap();
        for p in [2u64, 3, 5, 7, 11, 13, 29, 31, 41, 59, 61, 79, 89, 101] {
            let ps = primes_above(&l, p);
            let mut prod = Ideal::unit(&l);
            for q in &ps {
                prod = prod.mul(&l, &q.ideal.pow(&l, q.e as u64));
            }
            assert_eq!(prod, Ideal::from_int(&l, &BigInt::from(p)), "p = {p}");
            // Galois group is not cyclic: no inert primes
            assert!(ps.len() > 1 || ps[0].e > 1, "p = {p}");
        }
        // 2 is ramified in Q(sqrt 2) and Q(sqrt 10), 5 in Q(sqrt 5)
        assert_eq!(primes_above(&l, 2)[0].e, 2);
        assert_eq!(primes_above(&l, 5)[0].e, 2);
        let l = NumberField::biquadratic(3, 2).unwrap();
        let ps = primes_above(&l, 2);
        assert_eq!((ps.len(), ps[0].e), (1, 4));
    }

    #[test]
    fn ideal_division_and_valuation() {
        let k = NumberField::quadratic(-5).unwrap();
        let p2 = primes_above(&k, 2).remove(0);
        assert_eq!(p2.e, 2);
        let sq = p2.ideal.pow(&k, 2);
        assert_eq!(sq, Ideal::from_int(&k, &BigInt::from(2)));
        assert_eq!(sq.valuation(&k, &p2.ideal), 2);
        let six = Ideal::from_int(&k, &BigInt::from(6));
        let f = factor_ideal(&k, &six);
        assert_eq!(f.iter().map(|(q, v)| q.f * v).sum::<u32>(), 4);
        assert_eq!(six.div(&k, &p2.ideal).unwrap().norm(), BigInt::from(18));
    }
}
