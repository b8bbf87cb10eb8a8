//! Exact arithmetic in `Z[zeta_N]`.
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^{phi(N)-1}`,
//! i.e. reduced modulo the `N`-th cyclotomic polynomial. That basis is a
//! `Z`-basis, so equality is coefficientwise and an element is a rational
//! integer iff all non-constant coefficients vanish.

use std::sync::Arc;

use crate::arith::divisors;
use crate::{Error, Result};

/// The ring `Z[zeta_N]` with `zeta^k` precomputed in the power basis.
#[derive(Debug)]
pub struct CyclotomicRing {
    n: usize,
    /// `Phi_N`, monic, low degree first.
    phi: Vec<i128>,
    powers: Vec<Vec<i128>>,
}

impl CyclotomicRing {
    pub fn new(n: usize) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(Error::InvalidArgument("cyclotomic order must be >= 1".into()));
        }
        let phi = cyclotomic_polynomial(n as u64);
        let deg = phi.len() - 1;
        let mut powers = Vec::with_capacity(n);
        let mut cur = vec![0i128; deg];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // Multiply by zeta: shift up, then fold the top coefficient.
            let top = cur[deg - 1];
            for i in (1..deg).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            for i in 0..deg {
                cur[i] -= top * phi[i];
            }
        }
        Ok(Arc::new(CyclotomicRing { n, phi, powers }))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `phi(N)`, the rank over `Z`.
    pub fn rank(&self) -> usize {
        self.phi.len() - 1
    }
}

/// `Phi_n` with integer coefficients, low degree first, from
/// `x^n - 1 = prod_{d | n} Phi_d`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i128> {
    let mut num = vec![0i128; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        num = exact_poly_div(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn exact_poly_div(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i128; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db];
        q[k] = c;
        for i in 0..=db {
            r[k + i] -= c * b[i];
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// An element of `Z[zeta_N]`.
#[derive(Clone, Debug)]
pub struct Cyc {
    ring: Arc<CyclotomicRing>,
    coeffs: Vec<i128>,
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        self.ring.n == other.ring.n && self.coeffs == other.coeffs
    }
}

impl Eq for Cyc {}

impl Cyc {
    pub fn zero(ring: &Arc<CyclotomicRing>) -> Self {
        Cyc { ring: ring.clone(), coeffs: vec![0; ring.rank()] }
    }

    pub fn from_int(ring: &Arc<CyclotomicRing>, k: i128) -> Self {
        let mut c = Self::zero(ring);
        c.coeffs[0] = k;
        c
    }

    /// `zeta_N^k`.
    pub fn root(ring: &Arc<CyclotomicRing>, k: i64) -> Self {
        let n = ring.n as i64;
        Cyc { ring: ring.clone(), coeffs: ring.powers[k.rem_euclid(n) as usize].clone() }
    }

    /// `sum_k counts[k] zeta_N^k`.
    pub fn from_root_counts(ring: &Arc<CyclotomicRing>, counts: &[i64]) -> Self {
        let mut out = Self::zero(ring);
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                for (o, p) in out.coeffs.iter_mut().zip(&ring.powers[k % ring.n]) {
                    *o += c as i128 * p;
                }
            }
        }
        out
    }

    pub fn ring(&self) -> &Arc<CyclotomicRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The value as a rational integer, if it is one.
    pub fn to_integer(&self) -> Option<i128> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }

    pub fn add(&self, other: &Cyc) -> Cyc {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Cyc { ring: self.ring.clone(), coeffs }
    }

    pub fn sub(&self, other: &Cyc) -> Cyc {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Cyc { ring: self.ring.clone(), coeffs }
    }

    pub fn neg(&self) -> Cyc {
        Cyc { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: i128) -> Cyc {
        Cyc { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    /// Division by an integer that must divide every coefficient.
    pub fn div_exact(&self, k: i128) -> Result<Cyc> {
        if k == 0 || self.coeffs.iter().any(|c| c % k != 0) {
            return Err(Error::Inconsistent(format!("cyclotomic element not divisible by {k}")));
        }
        Ok(Cyc { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|a| a / k).collect() })
    }

    pub fn mul(&self, other: &Cyc) -> Cyc {
        let deg = self.ring.rank();
        let mut prod = vec![0i128; 2 * deg - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        let phi = &self.ring.phi;
        for k in (deg..prod.len()).rev() {
            let c = prod[k];
            if c != 0 {
                for i in 0..=deg {
                    prod[k - deg + i] -= c * phi[i];
                }
            }
        }
        prod.truncate(deg);
        Cyc { ring: self.ring.clone(), coeffs: prod }
    }

    /// Complex conjugation `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Cyc {
        let mut out = Self::zero(&self.ring);
        let n = self.ring.n;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                for (o, p) in out.coeffs.iter_mut().zip(&self.ring.powers[(n - k) % n]) {
                    *o += c * p;
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomial_examples() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity_behave() {
        for n in [1usize, 2, 3, 8, 24, 120, 336] {
            let r = CyclotomicRing::new(n).unwrap();
            let one = Cyc::from_int(&r, 1);
            assert_eq!(Cyc::root(&r, n as i64), one);
            assert_eq!(Cyc::root(&r, 0), one);
            for a in (0..n as i64).step_by(7.min(n)) {
                for b in (0..n as i64).step_by(5.min(n)) {
                    assert_eq!(Cyc::root(&r, a).mul(&Cyc::root(&r, b)), Cyc::root(&r, a + b));
                }
                assert_eq!(Cyc::root(&r, a).conj(), Cyc::root(&r, -a));
            }
            // The N-th roots of unity sum to zero for N > 1.
            let all = Cyc::from_root_counts(&r, &vec![1; n]);
            assert_eq!(all.to_integer(), Some(if n == 1 { 1 } else { 0 }));
        }
    }

    #[test]
    fn gauss_sum_squares() {
        // g = sum_x zeta_p^{x^2}; g conj(g) = p.
        for p in [3i64, 5, 7] {
            let r = CyclotomicRing::new(p as usize).unwrap();
            let mut counts = vec![0i64; p as usize];
            for x in 0..p {
                counts[((x * x) % p) as usize] += 1;
            }
            let g = Cyc::from_root_counts(&r, &counts);
            assert_eq!(g.mul(&g.conj()).to_integer(), Some(p as i128));
        }
    }
}
