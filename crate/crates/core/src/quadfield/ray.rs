use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::classgroup::ClassGroup;
use super::{QuadUnit, QuadraticField};
use crate::abgroup::{signed_vec, FiniteAbelianGroup, GroupElement, IntMatrix};
use crate::error::{invalid, Error, Result};
use crate::exactmath::{factor_u64, is_squarefree};
use crate::nf::ray::{reduce_ideal, unit_adjust};
use crate::nf::{primes_above, Elem, Ideal, PrimeIdeal, UnitsMod};

/// Squarefree product of distinct finite primes, none above `ell`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Modulus {
    pub primes: Vec<PrimeIdeal>,
    pub ell: Option<u64>,
}

impl Modulus {
    pub fn trivial() -> Self {
        Modulus { primes: vec![], ell: None }
    }

    pub fn new(primes: Vec<PrimeIdeal>, ell: Option<u64>) -> Result<Self> {
        for (i, q) in primes.iter().enumerate() {
            if primes[..i].iter().any(|r| r.ideal == q.ideal) {
                return invalid("modulus primes must be distinct");
            }
            if Some(q.p) == ell {
                return invalid(format!("modulus is not tame: prime above {}", q.p));
            }
        }
        Ok(Modulus { primes, ell })
    }

    /// All primes of `k` above the prime divisors of a squarefree `m`.
    pub fn from_rational(k: &QuadraticField, m: u64, ell: Option<u64>) -> Result<Self> {
        if m == 0 || !is_squarefree(m as i64) {
            return invalid(format!("modulus {m} is not a squarefree positive integer"));
        }
        let primes = factor_u64(m).iter().flat_map(|pp| primes_above(k.field(), pp.p)).collect();
        Self::new(primes, ell)
    }

    pub fn is_trivial(&self) -> bool {
        self.primes.is_empty()
    }

    /// Rational primes below the support, ascending.
    pub fn rational_primes(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.primes.iter().map(|q| q.p).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn norm(&self) -> u128 {
        self.primes.iter().map(|q| q.norm() as u128).product()
    }

    pub fn ideals(&self) -> Vec<Ideal> {
        self.primes.iter().map(|q| q.ideal.clone()).collect()
    }
}

/// Ray class group `Cl^m` presented on class-group representatives and
/// the cyclic factors of `(O/m)^*`.
#[derive(Debug)]
pub struct RayClassGroup {
    pub group: FiniteAbelianGroup,
    pub modulus: Modulus,
    pub class_group: ClassGroup,
    /// Prime ideal coprime to `m` for each class-group generator.
    pub class_reps: Vec<PrimeIdeal>,
    pub residues: UnitsMod,
    /// `(O/m)^*` logarithms of the torsion and fundamental units.
    pub unit_images: Vec<Vec<u64>>,
    pub unit_image_order: u128,
    classes: Vec<(Ideal, Vec<u64>)>,
    cache: Mutex<HashMap<Ideal, Vec<BigInt>>>,
    generators: OnceLock<Vec<PrimeIdeal>>,
}

/// Outcome of a ray principality test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RayPrincipal {
    /// Generator `x` with `x ≡ 1 mod^× m`.
    Generator(Elem),
    /// Nonzero class vector witnessing non-principality.
    NotPrincipal(GroupElement),
}

/// Components of `|Cl^m| = h * |(O/m)^*| / |image of units|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderIdentity {
    pub ray_order: u128,
    pub class_number: u128,
    pub residue_order: u128,
    pub unit_image_order: u128,
}

impl OrderIdentity {
    pub fn holds(&self) -> bool {
        self.ray_order * self.unit_image_order == self.class_number * self.residue_order
    }
}

impl RayClassGroup {
    pub fn compute(k: &QuadraticField, modulus: Modulus) -> Result<Self> {
        Self::with_class_group(k, modulus, ClassGroup::compute(k)?)
    }

    pub fn with_class_group(k: &QuadraticField, modulus: Modulus, class_group: ClassGroup) -> Result<Self> {
        let f = k.field();
        let avoid = modulus.rational_primes();
        let s = class_group.group.rank();
        let class_reps: Vec<PrimeIdeal> = (0..s).map(|i| class_group.rep_prime(k, i, &avoid)).collect::<Result<_>>()?;
        let residues = UnitsMod::new(f, modulus.primes.clone());
        let t = modulus.primes.len();
        let gens = k.units().generators();
        let unit_images: Vec<Vec<u64>> = gens.iter().map(|u| residues.dlog(u)).collect::<Result<_>>()?;
        let rg = residues.group();
        let img: Vec<GroupElement> = unit_images.iter().map(|v| rg.dlog(&signed_vec(v))).collect::<Result<_>>()?;
        let unit_image_order = rg.subgroup_order(&img);

        let mut rels = IntMatrix::with_cols(s + t);
        let inv = class_group.group.invariants().to_vec();
        for i in 0..s {
            let power = class_reps[i].ideal.pow(f, inv[i]);
            let alpha = k
                .principal_generator(&power)?
                .ok_or_else(|| Error::Inconsistent("class representative power is not principal".into()))?;
            let z = residues.dlog(&alpha)?;
            let mut row = vec![BigInt::zero(); s + t];
            row[i] = BigInt::from(inv[i]);
            for (j, zj) in z.iter().enumerate() {
                row[s + j] = -BigInt::from(*zj);
            }
            rels.push_row(row);
        }
        for (j, o) in residues.orders().iter().enumerate() {
            let mut row = vec![BigInt::zero(); s + t];
            row[s + j] = BigInt::from(*o);
            rels.push_row(row);
        }
        for v in &unit_images {
            let mut row = vec![BigInt::zero(); s + t];
            for (j, x) in v.iter().enumerate() {
                row[s + j] = BigInt::from(*x);
            }
            rels.push_row(row);
        }
        let mut labels: Vec<String> = class_reps.iter().map(|q| format!("[P{}]", q.p)).collect();
        labels.extend(modulus.primes.iter().map(|q| format!("z{}", q.p)));
        let group = if s + t == 0 { FiniteAbelianGroup::trivial() } else { FiniteAbelianGroup::from_relations(labels, &rels)? };

        let mut classes = Vec::new();
        for c in class_group.group.elements() {
            let mut a = Ideal::unit(f);
            for (i, &ci) in c.iter().enumerate() {
                a = a.mul(f, &class_reps[i].ideal.pow(f, ci));
            }
            classes.push((a, c));
        }
        Ok(RayClassGroup {
            group,
            modulus,
            class_group,
            class_reps,
            residues,
            unit_images,
            unit_image_order,
            classes,
            cache: Mutex::new(HashMap::new()),
            generators: OnceLock::new(),
        })
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn order_identity(&self) -> OrderIdentity {
        OrderIdentity {
            ray_order: self.order(),
            class_number: self.class_group.order(),
            residue_order: self.residues.order(),
            unit_image_order: self.unit_image_order,
        }
    }

    fn coprime(&self, k: &QuadraticField, i: &Ideal) -> bool {
        self.modulus.primes.iter().all(|q| i.is_coprime(k.field(), &q.ideal))
    }

    fn ambient_small(&self, k: &QuadraticField, j: &Ideal) -> Result<Vec<BigInt>> {
        if let Some(v) = self.cache.lock().unwrap().get(j) {
            return Ok(v.clone());
        }
        let f = k.field();
        let s = self.class_group.group.rank();
        for (a, c) in &self.classes {
            let x = j.mul(f, &a.conj_product(f));
            if let Some(delta) = k.principal_generator(&x)? {
                let zd = self.residues.dlog(&delta)?;
                let zn = self.residues.dlog(&f.from_int(&a.norm()))?;
                let mut v: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
                v.extend(zd.iter().zip(&zn).map(|(x, y)| BigInt::from(*x) - BigInt::from(*y)));
                debug_assert_eq!(v.len(), s + self.modulus.primes.len());
                self.cache.lock().unwrap().insert(j.clone(), v.clone());
                return Ok(v);
            }
        }
        Err(Error::Inconsistent("small ideal matches no class".into()))
    }

    /// Coordinates of `[I]` on the presentation generators.
    fn ambient(&self, k: &QuadraticField, i: &Ideal) -> Result<Vec<BigInt>> {
        if !self.coprime(k, i) {
            return Err(Error::NotCoprime);
        }
        if i.norm() < BigInt::from(1000) {
            return self.ambient_small(k, i);
        }
        let (beta, j) = reduce_ideal(k.field(), i, &self.modulus.ideals());
        let zb = self.residues.dlog(&beta)?;
        let vj = self.ambient_small(k, &j)?;
        let s = self.class_group.group.rank();
        Ok(vj
            .iter()
            .enumerate()
            .map(|(idx, x)| if idx < s { -x } else { BigInt::from(zb[idx - s]) - x })
            .collect())
    }

    /// Ray class of an ideal coprime to the modulus.
    pub fn dlog(&self, k: &QuadraticField, i: &Ideal) -> Result<GroupElement> {
        self.group.dlog(&self.ambient(k, i)?)
    }

    /// Ray class of a principal ideal `(x)`, `x` coprime to the modulus.
    pub fn dlog_elem(&self, x: &Elem) -> Result<GroupElement> {
        let s = self.class_group.group.rank();
        let z = self.residues.dlog(x)?;
        let mut v = vec![BigInt::zero(); s];
        v.extend(z.iter().map(|&a| BigInt::from(a)));
        self.group.dlog(&v)
    }

    /// Generator `≡ 1 mod^× m` when `I` is ray-principal.
    pub fn is_ray_principal(&self, k: &QuadraticField, i: &Ideal) -> Result<RayPrincipal> {
        let v = self.dlog(k, i)?;
        if !self.group.is_zero(&v) {
            return Ok(RayPrincipal::NotPrincipal(v));
        }
        let alpha = k
            .principal_generator(i)?
            .ok_or_else(|| Error::Inconsistent("trivial ray class without generator".into()))?;
        let x = unit_adjust(k.field(), k.units(), &self.residues, &alpha)?
            .ok_or_else(|| Error::Inconsistent("trivial ray class without adjusted generator".into()))?;
        Ok(RayPrincipal::Generator(x))
    }

    /// Small prime ideals representing the invariant-factor generators.
    pub fn generator_ideals(&self, k: &QuadraticField) -> Result<Vec<PrimeIdeal>> {
        if let Some(g) = self.generators.get() {
            return Ok(g.clone());
        }
        let avoid = self.modulus.rational_primes();
        let mut found: Vec<Option<PrimeIdeal>> = vec![None; self.group.rank()];
        let mut bound = 64u64;
        while found.iter().any(Option::is_none) {
            for q in k.primes_up_to(bound, &avoid) {
                if q.norm() * 4 <= bound && bound > 64 {
                    continue;
                }
                let v = self.dlog(k, &q.ideal)?;
                for (i, slot) in found.iter_mut().enumerate() {
                    if slot.is_none() && v.iter().enumerate().all(|(j, &x)| x == u64::from(i == j)) {
                        *slot = Some(q.clone());
                    }
                }
            }
            bound *= 4;
            if bound > 1 << 30 {
                return Err(Error::OutOfRange("generator search exhausted".into()));
            }
        }
        let g: Vec<PrimeIdeal> = found.into_iter().map(Option::unwrap).collect();
        let _ = self.generators.set(g.clone());
        Ok(g)
    }
}

/// Smallest power `u^k` of the fundamental unit with norm `+1` and
/// `u^k ≡ 1 mod^× m`; returns the unit and `k`.
pub fn aug_unit_mod_m(k: &QuadraticField, modulus: &Modulus) -> Result<(QuadUnit, u64)> {
    let fu = k.fundamental_unit()?;
    let u = k.unit_to_elem(&fu);
    let um = UnitsMod::new(k.field(), modulus.primes.clone());
    let mut ord = 1u64;
    for (r, z) in um.fields.iter().zip(um.dlog(&u)?) {
        let q1 = r.order() - 1;
        ord = ord.lcm(&(q1 / q1.gcd(&z)));
    }
    if fu.norm(k.disc()).is_negative() {
        ord = ord.lcm(&2);
    }
    let eps = k.field().pow(&u, ord);
    debug_assert!(k.field().norm(&eps).is_one());
    Ok((k.elem_to_unit(&eps), ord))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn gaussian_mod_three() {
        let k = QuadraticField::new(-1).unwrap();
        let rcg = RayClassGroup::compute(&k, Modulus::from_rational(&k, 3, None).unwrap()).unwrap();
        assert_eq!(rcg.group.invariants(), &[2]);
        assert!(rcg.order_identity().holds());
        let one_plus_i = Ideal::principal(k.field(), &vec![b(1), b(1)]);
        // no unit multiple of 1 + i is ≡ 1 mod 3
        let v = rcg.dlog(&k, &one_plus_i).unwrap();
        let units: Vec<Elem> = (0..4).map(|e| k.field().pow(&[b(0), b(1)], e)).collect();
        let any_one = units.iter().any(|u| rcg.residues.is_one(&k.field().mul(u, &[b(1), b(1)])));
        assert_eq!(rcg.group.is_zero(&v), any_one);
        assert!(!any_one);
    }

    #[test]
    fn real_quadratic_mod_split_prime() {
        let k = QuadraticField::new(2).unwrap();
        let q7 = k.factor_prime(7).primes[0].clone();
        let rcg = RayClassGroup::compute(&k, Modulus::new(vec![q7], None).unwrap()).unwrap();
        // (O/q7)^* = F_7^*, units generated by -1 and 1 + sqrt 2
        let u = k.unit_to_elem(&k.fundamental_unit().unwrap());
        let rf = &rcg.residues.fields[0];
        let lu = rf.dlog_elem(&u).unwrap();
        let lm = rf.dlog_elem(&k.field().from_int(&b(-1))).unwrap();
        let img = 6 / num_integer::gcd(num_integer::gcd(lu, lm), 6);
        assert_eq!(rcg.order(), (6 / img) as u128);
        assert!(rcg.order_identity().holds());
    }

    #[test]
    fn principal_with_congruence_is_trivial() {
        let k = QuadraticField::new(-5).unwrap();
        let m = Modulus::from_rational(&k, 7, None).unwrap();
        let rcg = RayClassGroup::compute(&k, m).unwrap();
        assert!(rcg.order_identity().holds());
        // 8 + 7 sqrt(-5) ≡ 1 mod 7
        let x = k.field().from_radical(&[num_rational::BigRational::from_integer(b(8)), num_rational::BigRational::from_integer(b(7))]).unwrap();
        let i = Ideal::principal(k.field(), &x);
        assert!(rcg.group.is_zero(&rcg.dlog(&k, &i).unwrap()));
        match rcg.is_ray_principal(&k, &i).unwrap() {
            RayPrincipal::Generator(g) => {
                assert!(rcg.residues.is_one(&g));
                assert_eq!(Ideal::principal(k.field(), &g), i);
            }
            other => panic!("{other:?}"),
        }
        let p2 = &k.factor_prime(2).primes[0];
        assert!(matches!(rcg.is_ray_principal(&k, &p2.ideal).unwrap(), RayPrincipal::NotPrincipal(_)));
    }

    #[test]
    fn ray_dlog_is_homomorphic() {
        for (d, m) in [(-23i64, 5u64), (34, 3), (-1, 15), (10, 7)] {
            let k = QuadraticField::new(d).unwrap();
            let rcg = RayClassGroup::compute(&k, Modulus::from_rational(&k, m, None).unwrap()).unwrap();
            assert!(rcg.order_identity().holds());
            let ps = k.primes_up_to(80, &rcg.modulus.rational_primes());
            for a in ps.iter().take(8) {
                for c in ps.iter().take(8) {
                    let ac = a.ideal.mul(k.field(), &c.ideal);
                    let lhs = rcg.dlog(&k, &ac).unwrap();
                    let rhs = rcg.group.add(&rcg.dlog(&k, &a.ideal).unwrap(), &rcg.dlog(&k, &c.ideal).unwrap());
                    assert_eq!(lhs, rhs, "d = {d}, m = {m}");
                }
            }
            for g in rcg.generator_ideals(&k).unwrap() {
                assert!(!g.ideal.is_unit());
            }
        }
    }

    #[test]
    fn aug_units() {
        let k = QuadraticField::new(2).unwrap();
        let (e, n) = aug_unit_mod_m(&k, &Modulus::trivial()).unwrap();
        assert_eq!((e, n), (QuadUnit { x: b(6), y: b(2) }, 2));
        let k34 = QuadraticField::new(34).unwrap();
        let (e, n) = aug_unit_mod_m(&k34, &Modulus::trivial()).unwrap();
        assert_eq!((e, n), (QuadUnit { x: b(70), y: b(6) }, 1));
        let m7 = Modulus::from_rational(&k, 7, None).unwrap();
        let (e, n) = aug_unit_mod_m(&k, &m7).unwrap();
        let um = UnitsMod::new(k.field(), m7.primes.clone());
        let x = k.unit_to_elem(&e);
        assert!(um.is_one(&x));
        assert_eq!(k.field().norm(&x), BigInt::one());
        assert!(n % 2 == 0);
        // minimality: no smaller even power works
        let u = k.unit_to_elem(&k.fundamental_unit().unwrap());
        for j in (2..n).step_by(2) {
            assert!(!um.is_one(&k.field().pow(&u, j)));
        }
    }
}
