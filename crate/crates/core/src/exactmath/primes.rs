//! Word-sized prime arithmetic: deterministic primality, factorization,
//! residue symbols and roots modulo primes.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A prime power `p^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimePower {
    pub p: u64,
    pub k: u32,
}

impl PrimePower {
    pub fn value(&self) -> u128 {
        (self.p as u128).pow(self.k)
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin, exact for every `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// Factorization of a nonzero machine integer into strictly increasing prime powers.
pub fn factor_u64(n: u64) -> Vec<PrimePower> {
    let mut n = n;
    let mut primes = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while n.is_multiple_of(p) {
            primes.push(p);
            n /= p;
        }
    }
    factor_into(n, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<PrimePower> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some(last) if last.p == p => last.k += 1,
            _ => out.push(PrimePower { p, k: 1 }),
        }
    }
    out
}

/// Factor `|n|`. Zero is rejected, as are values of magnitude `>= 2^64`.
pub fn factor(n: &BigInt) -> Result<Vec<PrimePower>> {
    if n.is_zero() {
        return invalid("cannot factor zero");
    }
    let m = n
        .abs()
        .to_u64()
        .ok_or_else(|| Error::OutOfRange(n.to_string()))?;
    Ok(factor_u64(m))
}

/// Distinct prime divisors of `n`.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor_u64(n).into_iter().map(|pp| pp.p).collect()
}

/// Primes `p ≡ a (mod m)` with `p <= limit`, ascending.
pub fn primes_in_progression(a: u64, m: u64, limit: u64) -> Result<impl Iterator<Item = u64>> {
    if m == 0 {
        return invalid("modulus must be positive");
    }
    if gcd_u64(a % m, m) != 1 {
        return invalid(format!("gcd({a}, {m}) != 1"));
    }
    let start = a % m;
    Ok((0u64..)
        .map(move |k| start + k * m)
        .take_while(move |&x| x <= limit)
        .filter(|&x| is_prime(x)))
}

/// Jacobi symbol `(a / n)` for odd positive `n`.
pub fn jacobi(a: i64, n: u64) -> i32 {
    assert!(n % 2 == 1, "jacobi needs odd modulus");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol `(D / p)` for a prime `p` (including `p = 2`).
pub fn kronecker_prime(d: i64, p: u64) -> i32 {
    if p == 2 {
        if d % 2 == 0 {
            0
        } else if d.rem_euclid(8) == 1 || d.rem_euclid(8) == 7 {
            1
        } else {
            -1
        }
    } else {
        jacobi(d, p)
    }
}

/// A square root of `a` modulo the odd prime `p` (Tonelli-Shanks), if one exists.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if p == 2 || a == 0 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Multiplicative order of `a` modulo `m` (requires `gcd(a, m) = 1`), given
/// the factorization of the group exponent candidate `n` with `a^n = 1`.
pub fn order_dividing(a: u64, n: u64, m: u64) -> u64 {
    let mut ord = n;
    for pp in factor_u64(n) {
        for _ in 0..pp.k {
            if pow_mod(a, ord / pp.p, m) == 1 {
                ord /= pp.p;
            } else {
                break;
            }
        }
    }
    ord
}

/// Smallest primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let qs = prime_divisors(p - 1);
    (2..p)
        .find(|&g| qs.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime has a primitive root")
}

/// Integer square root of a nonnegative machine integer.
pub fn isqrt_u64(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Squarefree test for nonzero integers.
pub fn is_squarefree(n: i64) -> bool {
    n != 0 && factor_u64(n.unsigned_abs()).iter().all(|pp| pp.k == 1)
}

/// Baby-step giant-step discrete logarithm: `e` with `g^e = x (mod p)`.
pub fn discrete_log(g: u64, x: u64, p: u64) -> Option<u64> {
    let n = p - 1;
    let m = isqrt_u64(n) + 1;
    let mut table = std::collections::HashMap::with_capacity(m as usize);
    let mut cur = 1u64;
    for j in 0..m {
        table.entry(cur).or_insert(j);
        cur = mul_mod(cur, g, p);
    }
    let factor = pow_mod(inv_mod(g, p)?, m, p);
    let mut gamma = x % p;
    for i in 0..m {
        if let Some(&j) = table.get(&gamma) {
            return Some(i * m + j);
        }
        gamma = mul_mod(gamma, factor, p);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sieve(limit: u64) -> Vec<bool> {
        let mut s = vec![true; limit as usize + 1];
        s[0] = false;
        if limit >= 1 {
            s[1] = false;
        }
        let mut i = 2;
        while i * i <= limit as usize {
            if s[i] {
                let mut j = i * i;
                while j <= limit as usize {
                    s[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        s
    }

    #[test]
    fn primality_matches_sieve() {
        let s = sieve(100_000);
        for n in 0..=100_000u64 {
            assert_eq!(is_prime(n), s[n as usize], "n = {n}");
        }
        assert!(is_prime(2_147_483_647));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn factor_examples() {
        assert!(factor(&BigInt::from(1)).unwrap().is_empty());
        assert_eq!(
            factor(&BigInt::from(360)).unwrap(),
            vec![
                PrimePower { p: 2, k: 3 },
                PrimePower { p: 3, k: 2 },
                PrimePower { p: 5, k: 1 }
            ]
        );
        assert_eq!(
            factor(&BigInt::from(2_147_483_647u64)).unwrap(),
            vec![PrimePower { p: 2_147_483_647, k: 1 }]
        );
        assert!(factor(&BigInt::from(0)).is_err());
        assert!(matches!(
            factor(&(BigInt::from(1u8) << 70)),
            Err(Error::OutOfRange(_))
        ));
        assert_eq!(factor(&BigInt::from(-12)).unwrap().len(), 2);
    }

    #[test]
    fn progression_examples() {
        let v: Vec<u64> = primes_in_progression(1, 4, 30).unwrap().collect();
        assert_eq!(v, vec![5, 13, 17, 29]);
        let v: Vec<u64> = primes_in_progression(1, 8, 100).unwrap().collect();
        assert_eq!(v, vec![17, 41, 73, 89, 97]);
        assert!(primes_in_progression(2, 4, 100).is_err());
    }

    #[test]
    fn progression_matches_sieve() {
        let s = sieve(5000);
        for m in [3u64, 5, 8, 12, 16] {
            for a in 0..m {
                if gcd_u64(a, m) != 1 {
                    continue;
                }
                let got: Vec<u64> = primes_in_progression(a, m, 5000).unwrap().collect();
                let want: Vec<u64> = (0..=5000u64).filter(|&x| s[x as usize] && x % m == a).collect();
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn sqrt_and_symbols() {
        for p in [3u64, 5, 7, 13, 17, 41, 97, 65537] {
            for a in 1..p.min(300) {
                let leg = jacobi(a as i64, p);
                match sqrt_mod(a, p) {
                    Some(r) => {
                        assert_eq!(mul_mod(r, r, p), a);
                        assert_eq!(leg, 1);
                    }
                    None => assert_eq!(leg, -1),
                }
            }
        }
        assert_eq!(kronecker_prime(-1, 5), 1);
        assert_eq!(kronecker_prime(-1, 7), -1);
        assert_eq!(kronecker_prime(5, 2), -1);
        assert_eq!(kronecker_prime(17, 2), 1);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(5), 2);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(17), 3);
        assert_eq!(order_dividing(4, 4, 5), 2);
    }
}
