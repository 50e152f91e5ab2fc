use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::snf::{smith, IntMatrix};
use crate::error::{invalid, Error, Result};

/// Exponent vector `(e_1, ..., e_r)` with `0 <= e_i < d_i`.
pub type GroupElement = Vec<u64>;

/// Finite abelian group `Z/d_1 + ... + Z/d_r` with `d_1 | d_2 | ... | d_r`,
/// presented as a quotient of `Z^n` on labeled generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    invariants: Vec<u64>,
    labels: Vec<String>,
    /// `n x r`: row `j` is the image of ambient generator `j`.
    projection: Vec<Vec<BigInt>>,
    /// `r x n`: invariant-factor generator `i` in ambient coordinates.
    generators: Vec<Vec<BigInt>>,
}

impl FiniteAbelianGroup {
    /// The trivial group on no generators.
    pub fn trivial() -> Self {
        FiniteAbelianGroup { invariants: vec![], labels: vec![], projection: vec![], generators: vec![] }
    }

    /// Group with the given invariants and its own generators as ambient basis.
    pub fn from_invariants(invariants: &[u64]) -> Result<Self> {
        let n = invariants.len();
        let mut rel = IntMatrix::zeros(n, n);
        for (i, &d) in invariants.iter().enumerate() {
            rel[(i, i)] = BigInt::from(d);
        }
        let labels = (0..n).map(|i| format!("g{i}")).collect();
        Self::from_relations(labels, &rel)
    }

    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    pub fn order(&self) -> u128 {
        self.invariants.iter().map(|&d| d as u128).product()
    }

    /// Invariant-factor generator `i` expressed on the ambient generators.
    pub fn generator_in_ambient(&self, i: usize) -> &[BigInt] {
        &self.generators[i]
    }

    /// Cokernel of the relation rows acting on the labeled generators.
    pub fn from_relations(labels: Vec<String>, relations: &IntMatrix) -> Result<Self> {
        let n = labels.len();
        if relations.cols() != n {
            return invalid("relation width does not match generator count");
        }
        let sm = smith(relations);
        let diag = sm.diagonal();
        if sm.rank < n {
            return Err(Error::InfiniteGroup);
        }
        let mut invariants = Vec::new();
        let mut keep = Vec::new();
        for (i, d) in diag.iter().enumerate().take(n) {
            if !d.is_one() {
                invariants.push(d.to_u64().ok_or_else(|| Error::OutOfRange(d.to_string()))?);
                keep.push(i);
            }
        }
        // x (ambient row) -> x V gives invariant coordinates
        let projection = (0..n)
            .map(|j| {
                keep.iter()
                    .zip(&invariants)
                    .map(|(&i, &d)| sm.v[(j, i)].mod_floor(&BigInt::from(d)))
                    .collect()
            })
            .collect();
        let generators = keep.iter().map(|&i| sm.v_inv.row(i).to_vec()).collect();
        Ok(FiniteAbelianGroup { invariants, labels, projection, generators })
    }

    pub fn zero(&self) -> GroupElement {
        vec![0; self.rank()]
    }

    pub fn normalize(&self, v: &[BigInt]) -> GroupElement {
        assert_eq!(v.len(), self.rank());
        v.iter()
            .zip(&self.invariants)
            .map(|(x, &d)| x.mod_floor(&BigInt::from(d)).to_u64().unwrap())
            .collect()
    }

    pub fn normalize_i64(&self, v: &[i64]) -> GroupElement {
        v.iter()
            .zip(&self.invariants)
            .map(|(&x, &d)| x.rem_euclid(d as i64) as u64)
            .collect()
    }

    /// Image of an ambient exponent vector (one entry per labeled generator).
    pub fn dlog(&self, ambient: &[BigInt]) -> Result<GroupElement> {
        if ambient.len() != self.labels.len() {
            return invalid("ambient vector has the wrong length");
        }
        let mut acc = vec![BigInt::zero(); self.rank()];
        for (x, row) in ambient.iter().zip(&self.projection) {
            if x.is_zero() {
                continue;
            }
            for (a, r) in acc.iter_mut().zip(row) {
                *a += x * r;
            }
        }
        Ok(self.normalize(&acc))
    }

    pub fn dlog_i64(&self, ambient: &[i64]) -> Result<GroupElement> {
        let v: Vec<BigInt> = ambient.iter().map(|&x| BigInt::from(x)).collect();
        self.dlog(&v)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> GroupElement {
        a.iter()
            .zip(b)
            .zip(&self.invariants)
            .map(|((&x, &y), &d)| ((x as u128 + y as u128) % d as u128) as u64)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> GroupElement {
        a.iter().zip(&self.invariants).map(|(&x, &d)| (d - x) % d).collect()
    }

    pub fn scale(&self, a: &[u64], k: i64) -> GroupElement {
        a.iter()
            .zip(&self.invariants)
            .map(|(&x, &d)| ((x as i128 * k as i128).rem_euclid(d as i128)) as u64)
            .collect()
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn element_order(&self, a: &[u64]) -> u64 {
        a.iter()
            .zip(&self.invariants)
            .map(|(&x, &d)| d / x.gcd(&d))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// All elements in lexicographic order of exponent vectors.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let total = self.order();
        (0..total).map(move |mut k| {
            let mut v = vec![0u64; self.rank()];
            for i in (0..self.rank()).rev() {
                let d = self.invariants[i] as u128;
                v[i] = (k % d) as u64;
                k /= d;
            }
            v
        })
    }

    /// `x in k A`?
    pub fn power_subgroup_contains(&self, x: &[u64], k: u64) -> bool {
        x.iter()
            .zip(&self.invariants)
            .all(|(&xi, &d)| xi % k.gcd(&d) == 0)
    }

    fn relation_block(&self) -> IntMatrix {
        let r = self.rank();
        let mut m = IntMatrix::zeros(r, r);
        for (i, &d) in self.invariants.iter().enumerate() {
            m[(i, i)] = BigInt::from(d);
        }
        m
    }

    /// Quotient `A / <elems>` with the invariant-factor generators of `A` as ambient basis.
    pub fn quotient(&self, elems: &[GroupElement]) -> Result<FiniteAbelianGroup> {
        let mut m = self.relation_block();
        for e in elems {
            m.push_row(e.iter().map(|&x| BigInt::from(x)).collect());
        }
        let labels = (0..self.rank()).map(|i| format!("g{i}")).collect();
        FiniteAbelianGroup::from_relations(labels, &m)
    }

    /// Order of the subgroup generated by `elems`.
    pub fn subgroup_order(&self, elems: &[GroupElement]) -> u128 {
        self.order() / self.quotient(elems).unwrap().order()
    }

    /// Coefficients `c` with `sum c_j gens_j = x`, or `NotInSubgroup`.
    pub fn subgroup_dlog(&self, gens: &[GroupElement], x: &[u64]) -> Result<Vec<i64>> {
        let r = self.rank();
        let mut m = IntMatrix::with_cols(r);
        for g in gens {
            m.push_row(g.iter().map(|&v| BigInt::from(v)).collect());
        }
        for (i, &d) in self.invariants.iter().enumerate() {
            let mut row = vec![BigInt::zero(); r];
            row[i] = BigInt::from(d);
            m.push_row(row);
        }
        let sm = smith(&m);
        // c M = x  <=>  (c U^{-1}) S = x V
        let xv: Vec<BigInt> = {
            let xb: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
            sm.v.left_mul_vec(&xb)
        };
        let k = m.rows();
        let mut z = vec![BigInt::zero(); k];
        for i in 0..r {
            let s = &sm.s[(i, i)];
            if s.is_zero() {
                if !xv[i].is_zero() {
                    return Err(Error::NotInSubgroup);
                }
                continue;
            }
            if !xv[i].is_multiple_of(s) {
                return Err(Error::NotInSubgroup);
            }
            z[i] = &xv[i] / s;
        }
        let c = sm.u.left_mul_vec(&z);
        c[..gens.len()]
            .iter()
            .map(|v| v.to_i64().ok_or_else(|| Error::OutOfRange(v.to_string())))
            .collect::<Result<_>>()
    }
}

/// Helper for callers holding signed exponent vectors.
pub fn signed_vec(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// `true` iff every invariant is a power of `ell`.
pub fn is_ell_group(g: &FiniteAbelianGroup, ell: u64) -> bool {
    g.invariants().iter().all(|&d| {
        let mut d = d;
        while d % ell == 0 {
            d /= ell;
        }
        d == 1
    })
}
