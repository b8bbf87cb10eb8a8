//! Integer partitions and symmetric-group character combinatorics.
//!
//! Partitions are always enumerated in decreasing lexicographic order, so any
//! statistic streamed over them is reproducible. Characters are evaluated with
//! a memoised Murnaghan-Nakayama recursion on beta-sets.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::arith::require_prime;
use crate::valuations::{v_factorial, v_falling};
use crate::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
    size: u32,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(format!("partition parts must be positive: {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("partition parts must be weakly decreasing: {parts:?}")));
        }
        Ok(Self::from_parts_unchecked(parts))
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<u32>) -> Self {
        let size = parts.iter().sum();
        Partition { parts, size }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The one-row partition `(n)`; empty when `n = 0`.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self::from_parts_unchecked(vec![n])
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: u32) -> Self {
        Self::from_parts_unchecked(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Number of parts, `l(lambda)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        Partition::from_parts_unchecked(conjugate_parts(&self.parts))
    }

    /// Hook lengths of every cell, largest first.
    pub fn hooks(&self) -> HookMultiset {
        let conj = conjugate_parts(&self.parts);
        let mut lengths = Vec::with_capacity(self.size as usize);
        for (i, &row) in self.parts.iter().enumerate() {
            for (j, &col) in conj.iter().take(row as usize).enumerate() {
                lengths.push(hook_length(row, col, i, j));
            }
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        HookMultiset { lengths }
    }

    /// `alpha(lambda) = sum_i (i - 1) lambda_i`, rows indexed from 1.
    pub fn alpha(&self) -> u64 {
        self.parts.iter().enumerate().map(|(i, &p)| i as u64 * p as u64).sum()
    }

    /// Dimension of the Specht module, `|lambda|! / prod h`.
    pub fn specht_dimension(&self) -> BigUint {
        let mut num = factorial(self.size as u64);
        let mut den = BigUint::one();
        for h in self.hooks().lengths {
            den *= h;
        }
        let (quo, rem) = num.div_rem(&den);
        debug_assert!(rem.is_zero());
        num = quo;
        num
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `(3,1,1)`, `3,1,1` or `()`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidArgument(format!("bad partition {s:?}: {e}")))?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[inline]
fn hook_length(row_len: u32, col_len: u32, i: usize, j: usize) -> u32 {
    row_len - j as u32 + col_len - i as u32 - 1
}

fn conjugate_parts(parts: &[u32]) -> Vec<u32> {
    let mut conj = Vec::new();
    conjugate_into(parts, &mut conj);
    conj
}

fn conjugate_into(parts: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let Some(&first) = parts.first() else { return };
    out.resize(first as usize, 0);
    for &p in parts {
        for c in out.iter_mut().take(p as usize) {
            *c += 1;
        }
    }
}

/// Multiset of hook lengths of a Young diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookMultiset {
    lengths: Vec<u32>,
}

impl HookMultiset {
    /// Hook lengths, largest first.
    pub fn lengths(&self) -> &[u32] {
        &self.lengths
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn max(&self) -> Option<u32> {
        self.lengths.first().copied()
    }
}

/// The cycle type `(mu_1, ..., mu_m, 1^{n-k})` of a permutation in `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleType {
    mu: Partition,
    ambient_n: u32,
}

impl CycleType {
    pub fn new(mu: Partition, ambient_n: u32) -> Result<Self> {
        if mu.size() > ambient_n {
            return Err(Error::InvalidArgument(format!(
                "cycle type {mu} does not fit in S_{ambient_n}"
            )));
        }
        Ok(CycleType { mu, ambient_n })
    }

    pub fn identity(n: u32) -> Self {
        CycleType { mu: Partition::empty(), ambient_n: n }
    }

    pub fn transposition(n: u32) -> Result<Self> {
        CycleType::new(Partition::row(2), n)
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    pub fn ambient_n(&self) -> u32 {
        self.ambient_n
    }

    /// All cycle lengths including fixed points.
    pub fn full_cycle_lengths(&self) -> Vec<u32> {
        let fixed = (self.ambient_n - self.mu.size()) as usize;
        let mut out = self.mu.parts().to_vec();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out.extend(std::iter::repeat_n(1, fixed));
        out
    }

    /// `(-1)^{n - number of cycles}`.
    pub fn sign(&self) -> i32 {
        let cycles = self.full_cycle_lengths().len() as u32;
        if (self.ambient_n - cycles).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

// ---------------------------------------------------------------------------
// Enumeration

/// Iterator over the partitions of `n` (with an optional largest-part bound),
/// in decreasing lexicographic order.
pub struct PartitionIter {
    current: Option<Vec<u32>>,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let mut succ = cur.clone();
        if advance(&mut succ) {
            self.current = Some(succ);
        }
        Some(Partition::from_parts_unchecked(cur))
    }
}

pub fn enumerate_partitions(n: u32) -> PartitionIter {
    partitions_with_max_part(n, n)
}

/// Partitions of `n` whose parts are all at most `max_part`.
pub fn partitions_with_max_part(n: u32, max_part: u32) -> PartitionIter {
    PartitionIter { current: first_partition(n, max_part) }
}

fn first_partition(n: u32, max_part: u32) -> Option<Vec<u32>> {
    if n == 0 {
        return Some(Vec::new());
    }
    if max_part == 0 {
        return None;
    }
    let m = max_part.min(n);
    let mut p = vec![m; (n / m) as usize];
    if !n.is_multiple_of(m) {
        p.push(n % m);
    }
    Some(p)
}

/// Replaces `p` by its successor in decreasing lexicographic order.
/// Returns `false` when `p` was the last partition (all ones).
fn advance(p: &mut Vec<u32>) -> bool {
    let mut ones = 0;
    while p.last() == Some(&1) {
        p.pop();
        ones += 1;
    }
    let Some(last) = p.pop() else {
        return false;
    };
    let k = last - 1;
    let mut rem = ones + 1;
    p.push(k);
    while rem > 0 {
        let t = rem.min(k);
        p.push(t);
        rem -= t;
    }
    true
}

/// Calls `f` on every partition of `n` with parts `<= max_part` without
/// allocating per partition.
pub fn for_each_partition<F: FnMut(&[u32])>(n: u32, max_part: u32, mut f: F) {
    let Some(mut p) = first_partition(n, max_part) else { return };
    loop {
        f(&p);
        if !advance(&mut p) {
            break;
        }
    }
}

/// `p(n)` by the pentagonal-number recurrence.
pub fn partition_count(n: u32) -> BigUint {
    partition_counts(n).pop().unwrap_or_else(BigUint::one)
}

/// `[p(0), p(1), ..., p(n)]`.
pub fn partition_counts(n: u32) -> Vec<BigUint> {
    let n = n as usize;
    let mut table: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    table[0] = BigInt::one();
    for i in 1..=n {
        let mut acc = BigInt::zero();
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = table[i - g1].clone();
            if g2 <= i {
                term += &table[i - g2];
            }
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
            k += 1;
        }
        table[i] = acc;
    }
    table.into_iter().map(|x| x.to_biguint().expect("p(n) is positive")).collect()
}

/// `[p(0), ..., p(n)]` as machine integers; fails once `p(k)` leaves `u128`.
pub fn partition_counts_u128(n: u32) -> Result<Vec<u128>> {
    partition_counts(n)
        .into_iter()
        .map(|x| x.to_u128().ok_or_else(|| Error::Overflow("partition count".into())))
        .collect()
}

pub(crate) fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

// ---------------------------------------------------------------------------
// Murnaghan-Nakayama

/// Murnaghan-Nakayama evaluator. The cache is keyed by the remaining shape and
/// the remaining non-trivial cycles, so it can be shared across shapes and
/// cycle types.
#[derive(Default)]
pub struct MnEvaluator {
    cache: HashMap<(Vec<u32>, Vec<u32>), BigInt>,
}

impl MnEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn character(&mut self, lambda: &Partition, ct: &CycleType) -> Result<BigInt> {
        if ct.ambient_n() != lambda.size() {
            return Err(Error::SizeMismatch {
                expected: lambda.size() as u64,
                found: ct.ambient_n() as u64,
            });
        }
        let mut cycles: Vec<u32> = ct.mu().parts().iter().copied().filter(|&c| c > 1).collect();
        cycles.sort_unstable_by(|a, b| b.cmp(a));
        Ok(self.eval(lambda.parts(), &cycles))
    }

    fn eval(&mut self, shape: &[u32], cycles: &[u32]) -> BigInt {
        if cycles.is_empty() {
            return BigInt::from(Partition::from_parts_unchecked(shape.to_vec()).specht_dimension());
        }
        let key = (shape.to_vec(), cycles.to_vec());
        if let Some(v) = self.cache.get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for (sub, sign) in rim_hook_removals(shape, cycles[0]) {
            let v = self.eval(&sub, &cycles[1..]);
            if sign > 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        self.cache.insert(key, total.clone());
        total
    }
}

/// Every way to remove a rim hook of length `r`, with its sign `(-1)^{height}`.
fn rim_hook_removals(shape: &[u32], r: u32) -> Vec<(Vec<u32>, i32)> {
    let len = shape.len();
    let betas: Vec<u32> = shape.iter().enumerate().map(|(i, &p)| p + (len - 1 - i) as u32).collect();
    let mut out = Vec::new();
    for (i, &b) in betas.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if betas.contains(&target) {
            continue;
        }
        let between = betas.iter().filter(|&&x| x > target && x < b).count();
        let mut next = betas.clone();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<u32> = next
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (len - 1 - j) as u32)
            .filter(|&p| p > 0)
            .collect();
        out.push((parts, if between % 2 == 0 { 1 } else { -1 }));
    }
    out
}

/// Value of the irreducible character `chi^lambda` at the given cycle type.
pub fn mn_character(lambda: &Partition, ct: &CycleType) -> Result<BigInt> {
    MnEvaluator::new().character(lambda, ct)
}

/// `A_mu^lambda = chi_mu^lambda (n)_k / f_lambda`, which is always an integer.
pub fn lassalle_coefficient(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    lassalle_with(&mut MnEvaluator::new(), lambda, mu)
}

pub fn lassalle_with(eval: &mut MnEvaluator, lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    let n = lambda.size() as u64;
    let k = mu.size() as u64;
    let ct = CycleType::new(mu.clone(), lambda.size())?;
    let chi = eval.character(lambda, &ct)?;
    let falling: BigUint = ((n - k + 1)..=n).fold(BigUint::one(), |acc, i| acc * i);
    let f = BigInt::from(lambda.specht_dimension());
    let num = chi * BigInt::from(falling);
    let (quo, rem) = num.div_rem(&f);
    if !rem.is_zero() {
        return Err(Error::Inconsistent(format!(
            "A_mu^lambda not integral for lambda = {lambda}, mu = {mu}"
        )));
    }
    Ok(quo)
}

// ---------------------------------------------------------------------------
// Chiral counts

/// Closed form for the number of irreducible characters of `S_n` whose
/// determinant is the sign character. Writing
/// `n = eps + 2^{k_1} + ... + 2^{k_r}` with `0 < k_1 < ... < k_r`,
/// `b(n) = 2^{k_2+...+k_r} (2^{k_1-1} + sum_{v=1}^{k_1-1} 2^{(v+1)(k_1-2) - C(v,2)} + eps 2^{C(k_1,2)})`.
pub fn chiral_count_closed_form(n: u64) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("b(n) needs n >= 2, got {n}")));
    }
    let eps = n & 1;
    let ks: Vec<u64> = (1..64).filter(|&b| (n >> b) & 1 == 1).collect();
    let k1 = ks[0];
    let outer: u64 = ks[1..].iter().sum();
    let choose2 = |v: u64| v * v.saturating_sub(1) / 2;
    let two = BigUint::from(2u32);
    let mut inner = two.pow((k1 - 1) as u32);
    for v in 1..k1 {
        let e = (v + 1) as i64 * (k1 as i64 - 2) - choose2(v) as i64;
        if e < 0 {
            return Err(Error::Inconsistent(format!("negative exponent in b({n})")));
        }
        inner += two.pow(e as u32);
    }
    if eps == 1 {
        inner += two.pow(choose2(k1) as u32);
    }
    Ok(two.pow(outer as u32) * inner)
}

/// Counts `lambda |- n` with `(f_lambda - chi_lambda(transposition)) / 2` odd,
/// i.e. `det pi_lambda` equal to the sign character.
pub fn chiral_count_brute(n: u32) -> Result<BigUint> {
    if !(2..=40).contains(&n) {
        return Err(Error::Regime(format!("chiral_count_brute needs 2 <= n <= 40, got {n}")));
    }
    let ct = CycleType::transposition(n)?;
    let mut eval = MnEvaluator::new();
    let mut count = BigUint::zero();
    let two = BigInt::from(2);
    for lambda in enumerate_partitions(n) {
        let f = BigInt::from(lambda.specht_dimension());
        let chi = eval.character(&lambda, &ct)?;
        let m = (f - chi) / &two;
        if m.is_odd() {
            count += 1u32;
        }
    }
    Ok(count)
}

// ---------------------------------------------------------------------------
// Valuation statistics

/// Upper bound used by [`valuation_statistic`]; a partition is counted when
/// `v_ell(f_lambda)` is strictly below it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threshold {
    /// A fixed rational bound.
    Value(Ratio<i64>),
    /// `r + log_ell(n)`, compared exactly as `ell^{v - r} < n`.
    LogShift { r: i64 },
}

impl Threshold {
    pub fn is_below(&self, v: u64, ell: u64, n: u64) -> bool {
        match *self {
            Threshold::Value(t) => Ratio::from_integer(v as i64) < t,
            Threshold::LogShift { r } => {
                let e = v as i64 - r;
                if e < 0 {
                    return true;
                }
                match ell.checked_pow(e as u32) {
                    Some(p) => p < n,
                    None => false,
                }
            }
        }
    }
}

/// `v_ell(f_lambda)` computed as `v_ell(n!) - sum_h v_ell(h)`.
pub fn specht_valuation(lambda: &Partition, ell: u64) -> Result<u64> {
    require_prime(ell)?;
    let mut conj = Vec::new();
    Ok(specht_valuation_raw(lambda.parts(), ell, v_factorial(ell, lambda.size() as u64)?, &mut conj))
}

fn specht_valuation_raw(parts: &[u32], ell: u64, v_nfact: u64, conj: &mut Vec<u32>) -> u64 {
    conjugate_into(parts, conj);
    let mut hooks_v = 0u64;
    for (i, &row) in parts.iter().enumerate() {
        for (j, &col) in conj.iter().enumerate().take(row as usize) {
            let mut h = hook_length(row, col, i, j);
            if ell == 2 {
                hooks_v += h.trailing_zeros() as u64;
            } else {
                while h.is_multiple_of(ell as u32) {
                    h /= ell as u32;
                    hooks_v += 1;
                }
            }
        }
    }
    v_nfact - hooks_v
}

/// Histogram `v -> #{lambda |- n : v_ell(f_lambda) = v}`. Work is split by the
/// largest part and merged in key order.
pub fn valuation_histogram(n: u32, ell: u64) -> Result<BTreeMap<u64, u64>> {
    require_prime(ell)?;
    let v_nfact = v_factorial(ell, n as u64)?;
    if n == 0 {
        return Ok(BTreeMap::from([(0, 1)]));
    }
    let chunks: Vec<BTreeMap<u64, u64>> = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut hist = BTreeMap::new();
            let mut buf = vec![first];
            let mut conj = Vec::new();
            for_each_partition(n - first, first, |rest| {
                buf.truncate(1);
                buf.extend_from_slice(rest);
                let v = specht_valuation_raw(&buf, ell, v_nfact, &mut conj);
                *hist.entry(v).or_insert(0) += 1;
            });
            hist
        })
        .collect();
    let mut total = BTreeMap::new();
    for h in chunks {
        for (v, c) in h {
            *total.entry(v).or_insert(0) += c;
        }
    }
    Ok(total)
}

/// `(#{lambda |- n : v_ell(f_lambda) < threshold}, p(n))`.
pub fn valuation_statistic(n: u32, ell: u64, threshold: Threshold) -> Result<(u64, u64)> {
    let hist = valuation_histogram(n, ell)?;
    Ok(count_below(&hist, ell, n as u64, threshold))
}

pub fn count_below(hist: &BTreeMap<u64, u64>, ell: u64, n: u64, threshold: Threshold) -> (u64, u64) {
    let total = hist.values().sum();
    let below = hist
        .iter()
        .filter(|(&v, _)| threshold.is_below(v, ell, n))
        .map(|(_, &c)| c)
        .sum();
    (below, total)
}

/// `v_ell((n)_k)`, re-exported here for the Lassalle bound.
pub fn falling_valuation(ell: u64, n: u64, k: u64) -> Result<u64> {
    v_falling(ell, n, k)
}
