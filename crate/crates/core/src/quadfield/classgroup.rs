use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::QuadraticField;
use crate::abgroup::{FiniteAbelianGroup, GroupElement, IntMatrix};
use crate::error::{Error, Result};
use crate::nf::ray::reduce_ideal;
use crate::nf::{Ideal, PrimeIdeal};

/// Largest `|D|` accepted by [`ClassGroup::compute`].
pub const DISC_BOUND: u64 = 10_000_000;

/// Wide ideal class group with one small representative per class.
#[derive(Debug, Clone)]
pub struct ClassGroup {
    pub group: FiniteAbelianGroup,
    /// Every class, as `(small ideal, class vector)`.
    pub classes: Vec<(Ideal, GroupElement)>,
    /// A prime ideal in the class of each invariant-factor generator.
    pub rep_primes: Vec<PrimeIdeal>,
}

/// A small ideal in the class of `x`.
pub(crate) fn small_rep(k: &QuadraticField, x: &Ideal) -> Ideal {
    let f = k.field();
    reduce_ideal(f, &x.conj_product(f), &[]).1
}

impl ClassGroup {
    pub fn compute(k: &QuadraticField) -> Result<Self> {
        if k.disc().unsigned_abs() > DISC_BOUND {
            return Err(Error::OutOfRange(format!("|D| = {} exceeds {DISC_BOUND}", k.disc().unsigned_abs())));
        }
        let f = k.field();
        let bound = k.minkowski_bound().floor() as u64;
        let mut gens: Vec<PrimeIdeal> = Vec::new();
        for q in k.primes_up_to(bound, &[]) {
            if q.f == 1 && !gens.iter().any(|g| g.p == q.p) {
                gens.push(q);
            }
        }
        let g = gens.len();
        let mut elems: Vec<(Ideal, Vec<i64>)> = vec![(Ideal::unit(f), vec![0; g])];
        let mut rels = IntMatrix::with_cols(g);
        let mut head = 0;
        while head < elems.len() {
            for (j, pj) in gens.iter().enumerate() {
                let x = small_rep(k, &elems[head].0.mul(f, &pj.ideal));
                let mut v = elems[head].1.clone();
                v[j] += 1;
                let mut hit = None;
                for (idx, (e, _)) in elems.iter().enumerate() {
                    if k.principal_generator(&x.mul(f, &e.conj_product(f)))?.is_some() {
                        hit = Some(idx);
                        break;
                    }
                }
                match hit {
                    Some(idx) => {
                        let row = v.iter().zip(&elems[idx].1).map(|(a, b)| BigInt::from(a - b)).collect();
                        rels.push_row(row);
                    }
                    None => elems.push((x, v)),
                }
            }
            head += 1;
        }
        let labels = gens.iter().map(|q| format!("P{}", q.p)).collect();
        let group = if g == 0 { FiniteAbelianGroup::trivial() } else { FiniteAbelianGroup::from_relations(labels, &rels)? };
        let classes = elems
            .into_iter()
            .map(|(i, v)| {
                let e = group.dlog_i64(&v).unwrap_or_default();
                (i, e)
            })
            .collect();
        let mut cg = ClassGroup { group, classes, rep_primes: Vec::new() };
        cg.rep_primes = (0..cg.group.rank()).map(|i| cg.rep_prime(k, i, &[])).collect::<Result<_>>()?;
        Ok(cg)
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }

    /// Class of a small ideal by matching against the stored representatives.
    fn match_class(&self, k: &QuadraticField, j: &Ideal) -> Result<GroupElement> {
        let f = k.field();
        for (e, v) in &self.classes {
            if k.principal_generator(&j.mul(f, &e.conj_product(f)))?.is_some() {
                return Ok(v.clone());
            }
        }
        Err(Error::Inconsistent("ideal matches no class representative".into()))
    }

    /// Class vector of an integral ideal.
    pub fn dlog(&self, k: &QuadraticField, i: &Ideal) -> Result<GroupElement> {
        if self.group.rank() == 0 {
            return Ok(vec![]);
        }
        self.match_class(k, &small_rep(k, i))
    }

    /// Smallest-norm prime in the class of generator `i`, avoiding the
    /// rational primes in `avoid`.
    pub fn rep_prime(&self, k: &QuadraticField, i: usize, avoid: &[u64]) -> Result<PrimeIdeal> {
        let mut target = self.group.zero();
        target[i] = 1;
        let mut bound = 64u64;
        loop {
            for q in k.primes_up_to(bound, avoid) {
                if q.norm() <= bound / 4 && bound > 64 {
                    continue;
                }
                if self.dlog(k, &q.ideal)? == target {
                    return Ok(q);
                }
            }
            bound = bound.checked_mul(4).ok_or_else(|| Error::OutOfRange("no representative prime".into()))?;
            if bound.to_f64().unwrap() > 1e12 {
                return Err(Error::OutOfRange("no representative prime".into()));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Number of reduced primitive forms of discriminant `d < 0`.
    fn form_count(d: i64) -> u64 {
        let mut h = 0;
        let mut a = 1i64;
        while 3 * a * a <= -d {
            for b in -a + 1..=a {
                if (b * b - d) % (4 * a) != 0 {
                    continue;
                }
                let c = (b * b - d) / (4 * a);
                if c < a || (c == a && b < 0) {
                    continue;
                }
                if num_integer::gcd(num_integer::gcd(a, b.abs()), c) != 1 {
                    continue;
                }
                h += 1;
            }
            a += 1;
        }
        h
    }

    #[test]
    fn examples() {
        let cg = ClassGroup::compute(&QuadraticField::new(-23).unwrap()).unwrap();
        assert_eq!(cg.group.invariants(), &[3]);
        let cg = ClassGroup::compute(&QuadraticField::new(2).unwrap()).unwrap();
        assert_eq!(cg.order(), 1);
        let k = QuadraticField::new(34).unwrap();
        let cg = ClassGroup::compute(&k).unwrap();
        assert_eq!(cg.group.invariants(), &[2]);
        let r = &cg.rep_primes[0];
        assert!(k.principal_generator(&r.ideal).unwrap().is_none());
        let cg = ClassGroup::compute(&QuadraticField::new(-5).unwrap()).unwrap();
        assert_eq!(cg.group.invariants(), &[2]);
        let cg = ClassGroup::compute(&QuadraticField::new(-21).unwrap()).unwrap();
        assert_eq!(cg.group.invariants(), &[2, 2]);
    }

    #[test]
    fn imaginary_class_numbers_match_forms() {
        for n in 1..=500i64 {
            let d = -n;
            let sf = crate::exactmath::is_squarefree(d);
            if !sf {
                continue;
            }
            let k = QuadraticField::new(d).unwrap();
            let cg = ClassGroup::compute(&k).unwrap();
            assert_eq!(cg.order() as u64, form_count(k.disc()), "d = {d}");
        }
    }

    #[test]
    fn dlog_is_homomorphic() {
        let k = QuadraticField::new(-47).unwrap();
        let cg = ClassGroup::compute(&k).unwrap();
        assert_eq!(cg.order(), 5);
        let ps = k.primes_up_to(60, &[]);
        for a in &ps {
            for b in &ps {
                let ab = a.ideal.mul(k.field(), &b.ideal);
                let lhs = cg.dlog(&k, &ab).unwrap();
                let rhs = cg.group.add(&cg.dlog(&k, &a.ideal).unwrap(), &cg.dlog(&k, &b.ideal).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }
}
