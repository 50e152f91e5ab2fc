use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::units::BqUnitGroup;
use crate::error::{invalid, Result};
use crate::exactmath::is_prime;
use crate::nf::{factor_ideal, find_generator, Elem, Ideal, NumberField, PrimeIdeal};
use crate::quadfield::QuadraticField;

/// Default cell budget for principality searches.
pub const DEFAULT_BUDGET: u64 = 200_000;

/// Real biquadratic field `L = Q(sqrt d, sqrt p)`.
#[derive(Debug, Clone)]
pub struct BiquadField {
    d: i64,
    p: i64,
    field: NumberField,
    /// `Q(sqrt d)`, `Q(sqrt p)`, `Q(sqrt(d p / g^2))`, at radical masks 1, 2, 3.
    subfields: [QuadraticField; 3],
    units: BqUnitGroup,
}

/// A prime of `L` with its ramification index in an extension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BqFactor {
    pub prime: PrimeIdeal,
    pub e: u32,
}

pub(super) fn embed_into(field: &NumberField, subfields: &[QuadraticField; 3], g: i64, i: usize, x: &Elem) -> Elem {
    let r = subfields[i].field().to_radical(x);
    let mask = i + 1;
    let mut v = vec![BigRational::zero(); 4];
    v[0] = r[0].clone();
    // sqrt(c) = r_3 / g for the third subfield
    let g = if mask == 3 { BigInt::from(g) } else { BigInt::one() };
    v[mask] = &r[1] / BigRational::from_integer(g);
    field.from_radical(&v).expect("subfield integers are integral in L")
}

/// `Q(sqrt d, sqrt p)` with `p` prime.
pub fn make_biquadratic(d: i64, p: i64) -> Result<BiquadField> {
    if p < 2 || !is_prime(p as u64) {
        return invalid(format!("{p} is not prime"));
    }
    BiquadField::new(d, p)
}

impl BiquadField {
    /// Any two distinct real quadratic fields.
    pub fn new(a: i64, b: i64) -> Result<Self> {
        let field = NumberField::biquadratic(a, b)?;
        let g = a.gcd(&b);
        let c = (a / g) * (b / g);
        let subfields = [QuadraticField::new(a)?, QuadraticField::new(b)?, QuadraticField::new(c)?];
        let units = BqUnitGroup::compute(&field, &subfields, g)?;
        Ok(BiquadField { d: a, p: b, field, subfields, units })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn subfields(&self) -> &[QuadraticField; 3] {
        &self.subfields
    }

    pub fn units(&self) -> &BqUnitGroup {
        &self.units
    }

    /// Product of the three subfield discriminants.
    pub fn conductor_discriminant(&self) -> BigInt {
        self.subfields.iter().map(|k| BigInt::from(k.disc())).product()
    }

    /// Image of an element of subfield `i` in `L`.
    pub fn embed(&self, i: usize, x: &Elem) -> Elem {
        embed_into(&self.field, &self.subfields, self.d.gcd(&self.p), i, x)
    }

    /// Extension of an ideal of subfield `i` to `L`.
    pub fn extend(&self, i: usize, ideal: &Ideal) -> Ideal {
        let gens: Vec<Elem> = ideal.basis().iter().map(|b| self.embed(i, b)).collect();
        Ideal::from_gens(&self.field, &gens)
    }

    /// Factorization of `q O_L` for an ideal `q` of subfield `i`.
    pub fn extend_and_factor(&self, i: usize, q: &Ideal) -> Vec<BqFactor> {
        factor_ideal(&self.field, &self.extend(i, q))
            .into_iter()
            .map(|(prime, e)| BqFactor { prime, e })
            .collect()
    }

    /// Generator of `I`; `Err(Budget)` when the search exceeds `budget` cells.
    pub fn is_principal(&self, i: &Ideal, budget: u64) -> Result<Option<Elem>> {
        find_generator(&self.field, self.units.group(), i, budget)
    }

    /// Radical coordinates as strings, on `1, sqrt a, sqrt b, sqrt(ab)`.
    pub fn radical_strings(&self, x: &Elem) -> Vec<String> {
        self.field.to_radical(x).iter().map(|c| c.to_string()).collect()
    }

    pub fn radical_labels(&self) -> [String; 4] {
        let (a, b) = (self.d, self.p);
        ["1".into(), format!("sqrt({a})"), format!("sqrt({b})"), format!("sqrt({})", a * b)]
    }

    /// Whether `x` is a unit.
    pub fn is_unit(&self, x: &Elem) -> bool {
        self.field.norm(x).abs().is_one()
    }
}
