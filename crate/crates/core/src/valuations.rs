//! `l`-adic valuations of the integers that appear in character degrees.
//!
//! Nothing here forms a large integer. Factorials go through Legendre's
//! formula and every `q^m - 1` term goes through the 2-adic lifting-the-exponent
//! identity, so valuations of Green degrees stay cheap for large `n`.

use crate::arith::require_prime;
use crate::partitions::Partition;
use crate::{Error, Result};

/// Largest `r` with `ell^r | m`.
pub fn v_int(ell: u64, m: i128) -> Result<u32> {
    require_prime(ell)?;
    if m == 0 {
        return Err(Error::InvalidArgument("valuation of 0 is undefined".into()));
    }
    let ell = ell as i128;
    let mut m = m;
    let mut r = 0;
    while m % ell == 0 {
        m /= ell;
        r += 1;
    }
    Ok(r)
}

/// Sum of the base-`ell` digits of `n`.
pub fn digit_sum(ell: u64, mut n: u64) -> u64 {
    let mut s = 0;
    while n > 0 {
        s += n % ell;
        n /= ell;
    }
    s
}

/// `v_ell(n!) = (n - a_ell(n)) / (ell - 1)`.
pub fn v_factorial(ell: u64, n: u64) -> Result<u64> {
    require_prime(ell)?;
    Ok((n - digit_sum(ell, n)) / (ell - 1))
}

/// `v_ell((n)_k)` for the falling factorial `n (n-1) ... (n-k+1)`.
pub fn v_falling(ell: u64, n: u64, k: u64) -> Result<u64> {
    require_prime(ell)?;
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "falling factorial (n)_k needs k <= n, got n = {n}, k = {k}"
        )));
    }
    Ok((k + digit_sum(ell, n - k) - digit_sum(ell, n)) / (ell - 1))
}

fn v2_u64(m: u64) -> u32 {
    m.trailing_zeros()
}

fn require_odd(q: u64) -> Result<()> {
    if q.is_multiple_of(2) || q < 3 {
        Err(Error::InvalidArgument(format!("q must be odd and >= 3, got {q}")))
    } else {
        Ok(())
    }
}

/// `v_2(q^m - 1)` for odd `q`:
/// `v_2(q-1)` when `m` is odd, `v_2(q-1) + v_2(q+1) + v_2(m) - 1` when `m` is even.
pub fn v2_qpow_minus_one(q: u64, m: u64) -> Result<u32> {
    require_odd(q)?;
    if m == 0 {
        return Err(Error::InvalidArgument("exponent must be >= 1".into()));
    }
    Ok(v2_qpow_unchecked(q, m))
}

#[inline]
pub(crate) fn v2_qpow_unchecked(q: u64, m: u64) -> u32 {
    if m % 2 == 1 {
        v2_u64(q - 1)
    } else {
        v2_u64(q - 1) + v2_u64(q + 1) + v2_u64(m) - 1
    }
}

/// `v_ell(q^m - 1)` for any prime `ell` and odd prime power `q`.
/// For odd `ell` not dividing `q` this is `v_ell(q^o - 1) + v_ell(m / o)` when the
/// order `o` of `q` mod `ell` divides `m`, and 0 otherwise.
pub fn v_qpow_minus_one(ell: u64, q: u64, m: u64) -> Result<u64> {
    require_prime(ell)?;
    require_odd(q)?;
    if m == 0 {
        return Err(Error::InvalidArgument("exponent must be >= 1".into()));
    }
    if ell == 2 {
        return Ok(v2_qpow_unchecked(q, m) as u64);
    }
    if q.is_multiple_of(ell) {
        return Ok(0);
    }
    let mut o = 1u64;
    let mut x = q % ell;
    while x != 1 {
        x = x * (q % ell) % ell;
        o += 1;
    }
    if !m.is_multiple_of(o) {
        return Ok(0);
    }
    // v_ell(q^o - 1) by testing q^o = 1 modulo growing powers of ell.
    let pow_mod = |modulus: u128| (0..o).fold(1u128, |acc, _| acc * (q as u128 % modulus) % modulus);
    let mut v = 0u64;
    let mut modulus = ell as u128;
    while pow_mod(modulus) == 1 {
        v += 1;
        modulus *= ell as u128;
        if modulus > u64::MAX as u128 {
            return Err(Error::Overflow("v_ell(q^o - 1)".into()));
        }
    }
    Ok(v + v_int(ell, (m / o) as i128)? as u64)
}

/// `v_2(psi_n(q))` where `psi_n(q) = prod_{i=1}^n (q^i - 1)`.
pub fn v2_psi(q: u64, n: u64) -> Result<u64> {
    require_odd(q)?;
    Ok((1..=n).map(|i| v2_qpow_unchecked(q, i) as u64).sum())
}

/// 2-adic valuation of the denominator `prod_h (q^{d|h|} - 1)` of `H(lambda, q^d)`.
/// The numerator is a power of the odd number `q` and contributes nothing.
pub fn v2_h_denominator(lambda: &Partition, q: u64, d: u64) -> Result<u64> {
    require_odd(q)?;
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be >= 1".into()));
    }
    Ok(lambda
        .hooks()
        .lengths()
        .iter()
        .map(|&h| v2_qpow_unchecked(q, d * h as u64) as u64)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    fn v2_big(x: &BigInt) -> u32 {
        assert!(!x.is_zero());
        x.trailing_zeros().unwrap() as u32
    }

    #[test]
    fn v_int_examples() {
        assert_eq!(v_int(2, 1).unwrap(), 0);
        assert_eq!(v_int(2, 8).unwrap(), 3);
        assert_eq!(v_int(3, -18).unwrap(), 2);
        assert!(v_int(2, 0).is_err());
        assert!(v_int(4, 8).is_err());
    }

    #[test]
    fn factorial_examples() {
        assert_eq!(v_factorial(2, 0).unwrap(), 0);
        assert_eq!(v_factorial(2, 10).unwrap(), 8);
        assert_eq!(v_factorial(3, 9).unwrap(), 4);
    }

    #[test]
    fn falling_examples() {
        assert_eq!(v_falling(2, 7, 0).unwrap(), 0);
        assert_eq!(v_falling(2, 10, 3).unwrap(), 4);
        assert_eq!(v_falling(2, 8, 1).unwrap(), 3);
        assert!(v_falling(2, 3, 4).is_err());
    }

    #[test]
    fn qpow_examples() {
        assert_eq!(v2_qpow_minus_one(3, 1).unwrap(), 1);
        assert_eq!(v2_qpow_minus_one(3, 2).unwrap(), 3);
        assert_eq!(v2_qpow_minus_one(7, 4).unwrap(), 5);
        // 3^6 - 1 = 728 = 8 * 91
        assert_eq!(v2_qpow_minus_one(3, 6).unwrap(), 3);
        assert!(v2_qpow_minus_one(4, 2).is_err());
    }

    #[test]
    fn psi_examples() {
        assert_eq!(v2_psi(3, 0).unwrap(), 0);
        assert_eq!(v2_psi(3, 2).unwrap(), 4);
        // 4 * 24 * 124
        assert_eq!(v2_psi(5, 3).unwrap(), 7);
    }

    #[test]
    fn h_denominator_examples() {
        assert_eq!(v2_h_denominator(&Partition::empty(), 3, 1).unwrap(), 0);
        assert_eq!(v2_h_denominator(&Partition::row(1), 3, 1).unwrap(), 1);
        assert_eq!(v2_h_denominator(&Partition::row(2), 3, 1).unwrap(), 4);
    }

    #[test]
    fn legendre_agrees_with_floor_sum() {
        for ell in [2u64, 3, 5] {
            for n in 0..=200u64 {
                let mut s = 0;
                let mut pk = ell;
                while pk <= n {
                    s += n / pk;
                    pk *= ell;
                }
                assert_eq!(v_factorial(ell, n).unwrap(), s, "ell={ell} n={n}");
            }
        }
    }

    #[test]
    fn falling_is_difference_of_factorials() {
        for ell in [2u64, 3, 5, 7] {
            for n in 0..=60u64 {
                for k in 0..=n {
                    let direct: u64 = (0..k).map(|i| v_int(ell, (n - i) as i128).unwrap() as u64).sum();
                    let via = v_factorial(ell, n).unwrap() - v_factorial(ell, n - k).unwrap();
                    assert_eq!(v_falling(ell, n, k).unwrap(), via);
                    assert_eq!(via, direct);
                }
            }
        }
    }

    #[test]
    fn lte_matches_big_integers() {
        for q in (3..=27u64).step_by(2) {
            let qb = BigInt::from(q);
            let mut pow = BigInt::one();
            for m in 1..=30u64 {
                pow *= &qb;
                let exact = v2_big(&(&pow - 1));
                assert_eq!(v2_qpow_minus_one(q, m).unwrap(), exact, "q={q} m={m}");
            }
        }
    }

    #[test]
    fn odd_ell_lte_matches_big_integers() {
        for ell in [2u64, 3, 5, 7] {
            for q in [3u64, 5, 7, 9, 11, 13, 25] {
                let qb = BigInt::from(q);
                let mut pow = BigInt::one();
                for m in 1..=24u64 {
                    pow *= &qb;
                    let mut x: BigInt = &pow - 1;
                    let mut exact = 0;
                    while (&x % ell).is_zero() {
                        x /= ell;
                        exact += 1;
                    }
                    assert_eq!(v_qpow_minus_one(ell, q, m).unwrap(), exact, "ell={ell} q={q} m={m}");
                }
            }
        }
    }

    #[test]
    fn psi_matches_big_product() {
        for q in [3u64, 5, 7, 9, 11] {
            let qb = BigInt::from(q);
            let mut prod = BigInt::one();
            for n in 1..=20u64 {
                prod *= qb.pow(n as u32) - 1;
                assert_eq!(v2_psi(q, n).unwrap(), v2_big(&prod) as u64);
            }
        }
    }
}
