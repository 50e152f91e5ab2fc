//! Quadratic fields `Q(sqrt d)`: ideals in standard form, units, class
//! groups and tame ray class groups.

mod classgroup;
mod ray;

pub use classgroup::{ClassGroup, DISC_BOUND};
pub use ray::{aug_unit_mod_m, Modulus, OrderIdentity, RayClassGroup, RayPrincipal};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exactmath::isqrt;
use crate::nf::{primes_above, Elem, Ideal, NumberField, PrimeIdeal, UnitGroup};

/// Quadratic field with its unit group.
#[derive(Debug, Clone)]
pub struct QuadraticField {
    d: i64,
    disc: i64,
    field: NumberField,
    units: UnitGroup,
    fundamental: Option<QuadUnit>,
}

/// Unit `(x + y sqrt D) / 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadUnit {
    #[serde(with = "crate::bigstr")]
    pub x: BigInt,
    #[serde(with = "crate::bigstr")]
    pub y: BigInt,
}

/// Ideal `content * (a, b + w)` with `0 <= b < a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QIdeal {
    #[serde(with = "crate::bigstr")]
    pub a: BigInt,
    #[serde(with = "crate::bigstr")]
    pub b: BigInt,
    #[serde(with = "crate::bigstr")]
    pub content: BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
}

/// Decomposition of a rational prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Splitting {
    pub kind: SplitType,
    pub primes: Vec<PrimeIdeal>,
}

impl QuadUnit {
    pub fn norm(&self, disc: i64) -> BigInt {
        (&self.x * &self.x - BigInt::from(disc) * &self.y * &self.y) / 4
    }
}

impl QIdeal {
    pub fn norm(&self) -> BigInt {
        &self.a * &self.content * &self.content
    }
}

impl std::fmt::Display for QIdeal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.content.is_one() {
            write!(f, "({}, {} + w)", self.a, self.b)
        } else {
            write!(f, "{}*({}, {} + w)", self.content, self.a, self.b)
        }
    }
}

fn fundamental_unit_cf(field: &NumberField, d: i64) -> Elem {
    // continued fraction of xi = (P0 + sqrt d) / Q0, where xi is the basis element w
    let (mut p_, mut q_) = if d.rem_euclid(4) == 1 { (BigInt::one(), BigInt::from(2)) } else { (BigInt::zero(), BigInt::one()) };
    let db = BigInt::from(d);
    let s = isqrt(&db);
    let (mut pm1, mut pm2) = (BigInt::one(), BigInt::zero());
    let (mut qm1, mut qm2) = (BigInt::zero(), BigInt::one());
    loop {
        let a = (&p_ + &s).div_floor(&q_);
        let pk = &a * &pm1 + &pm2;
        let qk = &a * &qm1 + &qm2;
        let cand: Elem = vec![pk.clone(), -qk.clone()];
        if field.norm(&cand).abs().is_one() {
            return field.conj(&cand, 1);
        }
        pm2 = std::mem::replace(&mut pm1, pk);
        qm2 = std::mem::replace(&mut qm1, qk);
        let pn = &a * &q_ - &p_;
        let qn = (&db - &pn * &pn) / &q_;
        p_ = pn;
        q_ = qn;
    }
}

impl QuadraticField {
    pub fn new(d: i64) -> Result<Self> {
        let field = NumberField::quadratic(d)?;
        let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        let w: Elem = vec![BigInt::zero(), BigInt::one()];
        let (units, fundamental) = if d > 0 {
            let eps = fundamental_unit_cf(&field, d);
            let fu = elem_to_unit(&field, disc, &eps);
            (UnitGroup::new(&field, 2, field.from_int(&BigInt::from(-1)), vec![eps]), Some(fu))
        } else if d == -1 {
            (UnitGroup::new(&field, 4, w, vec![]), None)
        } else if d == -3 {
            (UnitGroup::new(&field, 6, w, vec![]), None)
        } else {
            (UnitGroup::new(&field, 2, field.from_int(&BigInt::from(-1)), vec![]), None)
        };
        Ok(QuadraticField { d, disc, field, units, fundamental })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// Fundamental discriminant.
    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn is_real(&self) -> bool {
        self.d > 0
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn units(&self) -> &UnitGroup {
        &self.units
    }

    /// The standard generator `w`.
    pub fn omega(&self) -> Elem {
        vec![BigInt::zero(), BigInt::one()]
    }

    /// Smallest unit `> 1` under the embedding `sqrt d > 0`.
    pub fn fundamental_unit(&self) -> Result<QuadUnit> {
        match &self.fundamental {
            Some(u) => Ok(u.clone()),
            None => invalid("imaginary quadratic fields have no fundamental unit"),
        }
    }

    pub fn unit_to_elem(&self, u: &QuadUnit) -> Elem {
        let (r0, r1) = if self.disc == self.d {
            (BigRational::new(u.x.clone(), BigInt::from(2)), BigRational::new(u.y.clone(), BigInt::from(2)))
        } else {
            (BigRational::new(u.x.clone(), BigInt::from(2)), BigRational::from_integer(u.y.clone()))
        };
        self.field.from_radical(&[r0, r1]).expect("unit is integral")
    }

    pub fn elem_to_unit(&self, x: &Elem) -> QuadUnit {
        elem_to_unit(&self.field, self.disc, x)
    }

    pub fn factor_prime(&self, p: u64) -> Splitting {
        let primes = primes_above(&self.field, p);
        let kind = if primes.len() == 2 {
            SplitType::Split
        } else if primes[0].e == 2 {
            SplitType::Ramified
        } else {
            SplitType::Inert
        };
        Splitting { kind, primes }
    }

    /// Standard form of an ideal.
    pub fn standard_form(&self, i: &Ideal) -> QIdeal {
        let r = i.rows();
        let c = r[1][1].clone();
        QIdeal { a: &r[0][0] / &c, b: &r[1][0] / &c, content: c }
    }

    pub fn from_standard_form(&self, q: &QIdeal) -> Result<Ideal> {
        let gen = vec![q.b.clone(), BigInt::one()];
        let nb = self.field.norm(&gen);
        if q.a <= BigInt::zero() || !nb.is_multiple_of(&q.a) {
            return invalid("a must divide N(b + w)");
        }
        let base = Ideal::from_gens(&self.field, &[self.field.from_int(&q.a), gen]);
        Ok(base.mul(&self.field, &Ideal::from_int(&self.field, &q.content)))
    }

    /// Minkowski bound for ideal class representatives.
    pub fn minkowski_bound(&self) -> f64 {
        let s = (self.disc.unsigned_abs() as f64).sqrt();
        if self.d > 0 { s / 2.0 } else { 2.0 / std::f64::consts::PI * s }
    }

    /// A generator of `i`, if principal.
    pub fn principal_generator(&self, i: &Ideal) -> Result<Option<Elem>> {
        crate::nf::find_generator(&self.field, &self.units, i, u64::MAX)
    }

    /// Prime ideals in increasing norm up to `bound`, excluding those above `avoid`.
    pub fn primes_up_to(&self, bound: u64, avoid: &[u64]) -> Vec<PrimeIdeal> {
        let mut out: Vec<PrimeIdeal> = crate::exactmath::primes_in_progression(1, 1, bound)
            .expect("trivial progression")
            .filter(|p| !avoid.contains(p))
            .flat_map(|p| primes_above(&self.field, p))
            .filter(|q| q.norm() <= bound)
            .collect();
        out.sort_by_key(|q| (q.norm(), q.ideal.clone()));
        out
    }
}

fn elem_to_unit(field: &NumberField, disc: i64, x: &Elem) -> QuadUnit {
    let r = field.to_radical(x);
    let two = BigRational::from_integer(BigInt::from(2));
    let xx = (&r[0] * &two).to_integer();
    let yy = if disc == field.radicands()[0] { (&r[1] * &two).to_integer() } else { r[1].to_integer() };
    QuadUnit { x: xx, y: yy }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(x: i64, y: i64) -> QuadUnit {
        QuadUnit { x: BigInt::from(x), y: BigInt::from(y) }
    }

    #[test]
    fn fundamental_units() {
        let k = QuadraticField::new(2).unwrap();
        assert_eq!(k.fundamental_unit().unwrap(), u(2, 1));
        assert_eq!(k.fundamental_unit().unwrap().norm(8), BigInt::from(-1));
        let k = QuadraticField::new(5).unwrap();
        assert_eq!(k.fundamental_unit().unwrap(), u(1, 1));
        let k = QuadraticField::new(34).unwrap();
        assert_eq!(k.fundamental_unit().unwrap(), u(70, 6));
        assert_eq!(k.fundamental_unit().unwrap().norm(136), BigInt::one());
        let k = QuadraticField::new(3).unwrap();
        assert_eq!(k.fundamental_unit().unwrap(), u(4, 1));
        let k = QuadraticField::new(94).unwrap();
        assert_eq!(k.fundamental_unit().unwrap(), u(2 * 2143295, 221064));
        assert!(QuadraticField::new(-5).unwrap().fundamental_unit().is_err());
    }

    #[test]
    fn splitting_examples() {
        let k = QuadraticField::new(-1).unwrap();
        let s = k.factor_prime(5);
        assert_eq!(s.kind, SplitType::Split);
        let forms: Vec<String> = s.primes.iter().map(|q| k.standard_form(&q.ideal).to_string()).collect();
        assert_eq!(forms, vec!["(5, 2 + w)", "(5, 3 + w)"]);
        assert_eq!(k.factor_prime(7).kind, SplitType::Inert);
        assert_eq!(k.factor_prime(2).kind, SplitType::Ramified);
        let k = QuadraticField::new(34).unwrap();
        assert_eq!(k.factor_prime(17).kind, SplitType::Ramified);
        assert_eq!(k.factor_prime(2).kind, SplitType::Ramified);
    }

    #[test]
    fn standard_form_roundtrip() {
        let k = QuadraticField::new(-23).unwrap();
        for q in k.primes_up_to(60, &[]) {
            let sf = k.standard_form(&q.ideal);
            assert_eq!(k.from_standard_form(&sf).unwrap(), q.ideal);
            assert!(k.field().norm(&[sf.b.clone(), BigInt::one()]).is_multiple_of(&sf.a));
        }
        let i = Ideal::from_int(k.field(), &BigInt::from(3));
        let sf = k.standard_form(&i);
        assert_eq!((sf.a.clone(), sf.content.clone()), (BigInt::one(), BigInt::from(3)));
        assert_eq!(sf.norm(), BigInt::from(9));
    }

    #[test]
    fn principality() {
        let k = QuadraticField::new(2).unwrap();
        let x: Elem = vec![BigInt::from(5), BigInt::from(1)];
        let i = Ideal::principal(k.field(), &x);
        let g = k.principal_generator(&i).unwrap().unwrap();
        assert!(crate::nf::unit_equivalent(k.field(), &g, &x));
        let k = QuadraticField::new(-23).unwrap();
        let p2 = &k.factor_prime(2).primes[0];
        assert!(k.principal_generator(&p2.ideal).unwrap().is_none());
        assert!(k.principal_generator(&p2.ideal.pow(k.field(), 3)).unwrap().is_some());
    }
}
