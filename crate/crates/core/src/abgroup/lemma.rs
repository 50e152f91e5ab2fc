use super::group::{is_ell_group, FiniteAbelianGroup, GroupElement};
use crate::error::{invalid, Result};

/// Subgroup given by generators inside a fixed ambient group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub generators: Vec<GroupElement>,
}

fn valuation(mut x: u64, ell: u64) -> u32 {
    let mut v = 0;
    while x.is_multiple_of(ell) {
        x /= ell;
        v += 1;
    }
    v
}

/// Complement `B` of the cyclic subgroup `C = <c>` in the `ell`-group `A`:
/// `B ∩ C = 0`, `A / B` cyclic, and `C` maps isomorphically into `A / B`.
///
/// Writing `c = sum c_i a_i` with `a_i` of order `ell^{n_i}` and
/// `m_i = v_ell(c_i)` (`m_i = n_i` when `c_i = 0`), the component `i0`
/// maximizing `n_i - m_i` carries the full order of `c`; `B` is spanned by
/// the other basis vectors. Ties go to the smallest index.
pub fn cyclic_complement(a: &FiniteAbelianGroup, c: &[u64], ell: u64) -> Result<Subgroup> {
    if !is_ell_group(a, ell) {
        return invalid(format!("group is not an {ell}-group"));
    }
    if c.len() != a.rank() {
        return invalid("element has the wrong length");
    }
    if a.is_zero(c) {
        return invalid("the cyclic subgroup must be nontrivial");
    }
    let mut best: Option<(usize, u32)> = None;
    for (i, (&ci, &d)) in c.iter().zip(a.invariants()).enumerate() {
        let n = valuation(d, ell);
        let m = if ci == 0 { n } else { valuation(ci, ell) };
        let gap = n - m;
        if best.is_none_or(|(_, g)| gap > g) {
            best = Some((i, gap));
        }
    }
    let (i0, _) = best.expect("nonzero element has a component");
    let generators = (0..a.rank())
        .filter(|&i| i != i0)
        .map(|i| {
            let mut e = a.zero();
            e[i] = 1;
            e
        })
        .collect();
    Ok(Subgroup { generators })
}
