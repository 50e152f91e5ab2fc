use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::field::embed_into;
use crate::error::{Error, Result};
use crate::nf::hnf::hnf_lower;
use crate::nf::{unit_pow, Elem, NumberField, UnitGroup};
use crate::quadfield::QuadraticField;

/// Units of a real biquadratic field.
#[derive(Debug, Clone)]
pub struct BqUnitGroup {
    group: UnitGroup,
    /// Fundamental units of the three quadratic subfields, embedded in `L`.
    pub subfield_units: Vec<Elem>,
    /// Sign and subfield-unit exponents (mod 2) of the products that are squares in `L`.
    pub square_classes: Vec<[u8; 4]>,
    /// Exponents, in halves, of the fundamental units on the subfield units.
    pub half_exponents: Vec<Vec<i64>>,
}

/// Summary for reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitSummary {
    pub index: u64,
    pub regulator: f64,
    pub square_classes: Vec<[u8; 4]>,
}

fn product(field: &NumberField, units: &[Elem], exps: &[i64]) -> Elem {
    let mut x = field.one();
    for (u, &e) in units.iter().zip(exps) {
        x = field.mul(&x, &unit_pow(field, u, e));
    }
    x
}

impl BqUnitGroup {
    pub(super) fn compute(f: &NumberField, subfields: &[QuadraticField; 3], g: i64) -> Result<Self> {
        let mut us = Vec::new();
        for (i, k) in subfields.iter().enumerate() {
            let u = k.unit_to_elem(&k.fundamental_unit()?);
            us.push(embed_into(f, subfields, g, i, &u));
        }
        // E_L^2 lies in <-1, u_1, u_2, u_3>, so E_L is spanned by square roots
        let mut square_classes = Vec::new();
        let mut rows: Vec<Vec<BigInt>> = (0..3)
            .map(|i| (0..3).map(|j| BigInt::from(if i == j { 2 } else { 0 })).collect())
            .collect();
        for mask in 1u8..16 {
            let sign = mask & 1;
            let e: Vec<i64> = (0..3).map(|i| ((mask >> (i + 1)) & 1) as i64).collect();
            let mut x = product(f, &us, &e);
            if sign == 1 {
                x = f.neg(&x);
            }
            if f.sqrt(&x).is_some() {
                square_classes.push([sign, e[0] as u8, e[1] as u8, e[2] as u8]);
                rows.push(e.iter().map(|&v| BigInt::from(v)).collect());
            }
        }
        let h = hnf_lower(&rows, 3, None).ok_or_else(|| Error::Inconsistent("unit lattice".into()))?;
        let mut fundamental = Vec::new();
        let mut half_exponents = Vec::new();
        for r in h.iter().filter(|r| r.iter().any(|x| x != &BigInt::from(0))) {
            let b: Vec<i64> = r.iter().map(|x| i64::try_from(x).unwrap()).collect();
            let eta = if b.iter().all(|x| x % 2 == 0) {
                let half: Vec<i64> = b.iter().map(|x| x / 2).collect();
                product(f, &us, &half)
            } else {
                let y = product(f, &us, &b);
                f.sqrt(&y)
                    .or_else(|| f.sqrt(&f.neg(&y)))
                    .ok_or_else(|| Error::Inconsistent("square class without square root".into()))?
            };
            fundamental.push(eta);
            half_exponents.push(b);
        }
        if fundamental.len() != 3 {
            return Err(Error::Inconsistent("unit rank of a real biquadratic field is 3".into()));
        }
        let group = UnitGroup::new(f, 2, f.from_int(&BigInt::from(-1)), fundamental);
        Ok(BqUnitGroup { group, subfield_units: us, square_classes, half_exponents })
    }

    pub fn group(&self) -> &UnitGroup {
        &self.group
    }

    /// `[E_L : <-1, u_1, u_2, u_3>]`.
    pub fn index(&self) -> u64 {
        self.square_classes.len() as u64 + 1
    }

    pub fn regulator(&self) -> f64 {
        self.group.regulator()
    }

    pub fn summary(&self) -> UnitSummary {
        UnitSummary { index: self.index(), regulator: self.regulator(), square_classes: self.square_classes.clone() }
    }
}
