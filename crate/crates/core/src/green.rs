//! Green's parametrisation of the irreducible characters of `GL_n(F_q)`.
//!
//! A label is a map `mu` from monic irreducibles `f != x` to partitions with
//! `sum_f d(f) |mu(f)| = n`. Duality is `mu'(f) = mu(f*)`; the self-dual labels
//! index the orthogonal irreducibles. Degrees are
//! `d_mu = psi_n(q) prod_f H(mu(f), q^{d(f)})`, and 2-adic valuations of
//! degrees are computed term by term without forming `d_mu`.
//!
//! Labels are enumerated through their type functions `F(f) = |mu(f)|`: first
//! the sizes, then the fiber of partitions over each size. For larger `n` the
//! same factorisation gives generating functions whose coefficients are the
//! valuation histograms, so statistics do not need the labels themselves.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::fqpoly::{irreducible_count, irreducibles, reciprocal, self_reciprocal_count, Field, FqPoly};
use crate::partitions::{enumerate_partitions, for_each_partition, specht_valuation, Partition};
use crate::valuations::{v2_psi, v2_qpow_unchecked, v_factorial, v_falling, v_qpow_minus_one};
use crate::{Error, Result};

/// Largest `n` for which exact degrees are computed alongside valuations.
pub const EXACT_DEGREE_MAX_N: u32 = 6;

/// Default cap on the number of labels an enumeration may visit.
pub const DEFAULT_LABEL_BUDGET: u128 = 5_000_000;

/// The irreducibles `f != x` of degree at most `n_max`, ordered by degree and
/// then by coefficients, with the reciprocal pairing precomputed.
#[derive(Clone, Debug)]
pub struct Alphabet {
    field: Field,
    n_max: u32,
    polys: Vec<FqPoly>,
    degrees: Vec<u32>,
    dual: Vec<usize>,
    index: HashMap<FqPoly, usize>,
}

impl Alphabet {
    pub fn new(q: u64, n_max: u32, poly_budget: u128) -> Result<Self> {
        Self::from_field(Field::new(q)?, n_max, poly_budget)
    }

    pub fn from_field(field: Field, n_max: u32, poly_budget: u128) -> Result<Self> {
        let mut polys = Vec::new();
        let mut degrees = Vec::new();
        for d in 1..=n_max {
            for f in irreducibles(&field, d, poly_budget)? {
                polys.push(f);
                degrees.push(d);
            }
        }
        let index: HashMap<FqPoly, usize> = polys.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let dual = polys
            .iter()
            .map(|f| {
                let g = reciprocal(&field, f)?;
                index.get(&g).copied().ok_or_else(|| Error::Inconsistent(format!("reciprocal of {f} missing")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Alphabet { field, n_max, polys, degrees, dual, index })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.size()
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn poly(&self, i: usize) -> &FqPoly {
        &self.polys[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    /// Index of `f*`.
    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn index_of(&self, f: &FqPoly) -> Option<usize> {
        self.index.get(f).copied()
    }

    fn check_n(&self, n: u32) -> Result<()> {
        if n > self.n_max {
            Err(Error::InvalidArgument(format!("alphabet built for n <= {}, asked for {n}", self.n_max)))
        } else {
            Ok(())
        }
    }
}

/// An element of `X_n`: nonempty partitions attached to alphabet indices,
/// sorted by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GreenLabel {
    q: u64,
    n: u32,
    entries: Vec<(usize, Partition)>,
}

impl GreenLabel {
    pub fn new(alphabet: &Alphabet, assignment: Vec<(FqPoly, Partition)>) -> Result<Self> {
        let mut entries = Vec::with_capacity(assignment.len());
        for (f, lambda) in assignment {
            let i = alphabet
                .index_of(&f)
                .ok_or_else(|| Error::InvalidArgument(format!("{f} is not an irreducible of degree <= {} other than x", alphabet.n_max)))?;
            if lambda.is_empty() {
                continue;
            }
            entries.push((i, lambda));
        }
        entries.sort();
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidArgument("a polynomial is assigned twice".into()));
        }
        Ok(Self::from_entries(alphabet, entries))
    }

    fn from_entries(alphabet: &Alphabet, entries: Vec<(usize, Partition)>) -> Self {
        let n = entries.iter().map(|(i, l)| alphabet.degree(*i) * l.size()).sum();
        GreenLabel { q: alphabet.q(), n, entries }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `(alphabet index, partition)` pairs in index order.
    pub fn entries(&self) -> &[(usize, Partition)] {
        &self.entries
    }

    pub fn partition_at(&self, i: usize) -> Option<&Partition> {
        self.entries.iter().find(|(j, _)| *j == i).map(|(_, l)| l)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> LabelDisplay<'a> {
        LabelDisplay { label: self, alphabet }
    }
}

pub struct LabelDisplay<'a> {
    label: &'a GreenLabel,
    alphabet: &'a Alphabet,
}

impl fmt::Display for LabelDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (i, lambda)) in self.label.entries.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{} -> {}", self.alphabet.poly(*i), lambda)?;
        }
        write!(f, "}}")
    }
}

/// `mu'(f) = mu(f*)`.
pub fn dual_label(alphabet: &Alphabet, mu: &GreenLabel) -> GreenLabel {
    let mut entries: Vec<_> = mu.entries.iter().map(|(i, l)| (alphabet.dual(*i), l.clone())).collect();
    entries.sort();
    GreenLabel { q: mu.q, n: mu.n, entries }
}

pub fn is_self_dual(alphabet: &Alphabet, mu: &GreenLabel) -> bool {
    mu.entries.iter().all(|(i, l)| mu.partition_at(alphabet.dual(*i)) == Some(l))
}

// ---------------------------------------------------------------------------
// Type functions and fibers

/// The sizes `F(f) = |mu(f)|` of a label, listed by alphabet index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeFunction {
    n: u32,
    self_dual: bool,
    sizes: Vec<(usize, u32)>,
}

impl TypeFunction {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Whether `F(f) = F(f*)` was imposed.
    pub fn is_self_dual(&self) -> bool {
        self.self_dual
    }

    pub fn sizes(&self) -> &[(usize, u32)] {
        &self.sizes
    }
}

/// The blocks a type function assigns sizes to: single polynomials, or
/// `{f, f*}` orbits when self-duality is imposed.
struct Unit {
    members: Vec<usize>,
    weight: u32,
}

fn units(alphabet: &Alphabet, n: u32, self_dual: bool) -> Vec<Unit> {
    let mut out: Vec<Unit> = (0..alphabet.len())
        .filter(|&i| alphabet.degree(i) <= n)
        .filter_map(|i| {
            let d = alphabet.degree(i);
            if !self_dual {
                return Some(Unit { members: vec![i], weight: d });
            }
            let j = alphabet.dual(i);
            match i.cmp(&j) {
                std::cmp::Ordering::Equal => Some(Unit { members: vec![i], weight: d }),
                std::cmp::Ordering::Less => Some(Unit { members: vec![i, j], weight: 2 * d }),
                std::cmp::Ordering::Greater => None,
            }
        })
        .collect();
    out.sort_by_key(|u| (u.weight, u.members[0]));
    out
}

fn for_each_unit_sizes<F: FnMut(&[(usize, u32)])>(units: &[Unit], n: u32, f: &mut F) {
    fn rec<F: FnMut(&[(usize, u32)])>(units: &[Unit], start: usize, remaining: u32, cur: &mut Vec<(usize, u32)>, f: &mut F) {
        if remaining == 0 {
            f(cur);
            return;
        }
        for u in start..units.len() {
            let w = units[u].weight;
            if w > remaining {
                break;
            }
            for s in 1..=remaining / w {
                cur.push((u, s));
                rec(units, u + 1, remaining - s * w, cur, f);
                cur.pop();
            }
        }
    }
    rec(units, 0, n, &mut Vec::new(), f);
}

fn type_from_unit_sizes(units: &[Unit], n: u32, self_dual: bool, sizes: &[(usize, u32)]) -> TypeFunction {
    let mut out: Vec<(usize, u32)> = sizes
        .iter()
        .flat_map(|&(u, s)| units[u].members.iter().map(move |&m| (m, s)))
        .collect();
    out.sort();
    TypeFunction { n, self_dual, sizes: out }
}

/// All type functions of total weight `n`, in a fixed order.
pub fn enumerate_type_functions(alphabet: &Alphabet, n: u32, self_dual: bool) -> Result<Vec<TypeFunction>> {
    alphabet.check_n(n)?;
    let us = units(alphabet, n, self_dual);
    let mut out = Vec::new();
    for_each_unit_sizes(&us, n, &mut |sizes| out.push(type_from_unit_sizes(&us, n, self_dual, sizes)));
    Ok(out)
}

/// The labels with the given type function; for a self-dual type the two
/// members of every `{f, f*}` orbit carry the same partition.
pub fn for_each_in_fiber<F: FnMut(GreenLabel)>(alphabet: &Alphabet, tf: &TypeFunction, mut f: F) {
    let blocks: Vec<(Vec<usize>, u32)> = tf
        .sizes
        .iter()
        .filter(|&&(i, _)| !tf.self_dual || i <= alphabet.dual(i))
        .map(|&(i, s)| {
            let j = alphabet.dual(i);
            let members = if tf.self_dual && j != i { vec![i, j] } else { vec![i] };
            (members, s)
        })
        .collect();
    let choices: Vec<Vec<Partition>> = blocks.iter().map(|(_, s)| enumerate_partitions(*s).collect()).collect();
    let mut pick = vec![0usize; blocks.len()];
    loop {
        let mut entries: Vec<(usize, Partition)> = Vec::with_capacity(tf.sizes.len());
        for (b, (members, _)) in blocks.iter().enumerate() {
            for &m in members {
                entries.push((m, choices[b][pick[b]].clone()));
            }
        }
        entries.sort();
        f(GreenLabel { q: alphabet.q(), n: tf.n, entries });
        let mut k = 0;
        loop {
            if k == blocks.len() {
                return;
            }
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

pub fn fiber(alphabet: &Alphabet, tf: &TypeFunction) -> Vec<GreenLabel> {
    let mut out = Vec::new();
    for_each_in_fiber(alphabet, tf, |l| out.push(l));
    out
}

fn check_budget(what: &str, needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::BudgetExceeded { what: what.into(), needed, budget })
    } else {
        Ok(())
    }
}

fn visit_labels<F: FnMut(GreenLabel)>(alphabet: &Alphabet, n: u32, self_dual: bool, budget: u128, mut f: F) -> Result<()> {
    alphabet.check_n(n)?;
    let count = if self_dual { self_dual_count(alphabet.q(), n)? } else { label_count(alphabet.q(), n)? };
    let what = if self_dual { "self-dual labels" } else { "labels" };
    check_budget(what, count, budget)?;
    let us = units(alphabet, n, self_dual);
    for_each_unit_sizes(&us, n, &mut |sizes| {
        let tf = type_from_unit_sizes(&us, n, self_dual, sizes);
        for_each_in_fiber(alphabet, &tf, &mut f);
    });
    Ok(())
}

/// Calls `f` on every element of `X_n`.
pub fn for_each_label<F: FnMut(GreenLabel)>(alphabet: &Alphabet, n: u32, budget: u128, f: F) -> Result<()> {
    visit_labels(alphabet, n, false, budget, f)
}

pub fn enumerate_labels(alphabet: &Alphabet, n: u32, budget: u128) -> Result<Vec<GreenLabel>> {
    let mut out = Vec::new();
    for_each_label(alphabet, n, budget, |l| out.push(l))?;
    Ok(out)
}

/// Calls `f` on every element of `Y_n`, fiber by fiber over self-dual types.
pub fn for_each_self_dual<F: FnMut(GreenLabel)>(alphabet: &Alphabet, n: u32, budget: u128, f: F) -> Result<()> {
    visit_labels(alphabet, n, true, budget, f)
}

pub fn enumerate_self_dual(alphabet: &Alphabet, n: u32, budget: u128) -> Result<Vec<GreenLabel>> {
    let mut out = Vec::new();
    for_each_self_dual(alphabet, n, budget, |l| out.push(l))?;
    Ok(out)
}

// ---------------------------------------------------------------------------
// Degrees

/// `v_2(d_mu)` with the exact degree alongside when `n <= 6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeValuation {
    pub v2: u64,
    pub exact_degree: Option<BigUint>,
}

/// `v_2(d_mu) = v_2(psi_n(q)) - sum_f sum_h v_2(q^{d(f)|h|} - 1)`.
pub fn degree_v2(alphabet: &Alphabet, mu: &GreenLabel) -> u64 {
    let q = alphabet.q();
    let psi = v2_psi(q, mu.n as u64).expect("odd q");
    let den: u64 = mu
        .entries
        .iter()
        .map(|(i, l)| {
            let d = alphabet.degree(*i) as u64;
            l.hooks().lengths().iter().map(|&h| v2_qpow_unchecked(q, d * h as u64) as u64).sum::<u64>()
        })
        .sum();
    psi - den
}

pub fn degree_valuation(alphabet: &Alphabet, mu: &GreenLabel) -> Result<DegreeValuation> {
    let v2 = degree_v2(alphabet, mu);
    let exact_degree = if mu.n <= EXACT_DEGREE_MAX_N {
        let d = exact_degree(alphabet, mu)?;
        let exact_v2 = d.trailing_zeros().unwrap_or(0);
        if exact_v2 != v2 {
            return Err(Error::Inconsistent(format!(
                "v_2 of {} is {v2} by valuations but {exact_v2} exactly",
                mu.display(alphabet)
            )));
        }
        Some(d)
    } else {
        None
    };
    Ok(DegreeValuation { v2, exact_degree })
}

fn big_pow(q: u64, e: u64) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

fn psi_big(x: &BigUint, n: u64) -> BigUint {
    let mut acc = BigUint::one();
    let mut p = BigUint::one();
    for _ in 0..n {
        p *= x;
        acc *= &p - 1u32;
    }
    acc
}

fn exact_div(num: BigUint, den: &BigUint, what: &str) -> Result<BigUint> {
    let (quo, rem) = (&num / den, &num % den);
    if !rem.is_zero() {
        return Err(Error::Inconsistent(format!("{what} is not an integer")));
    }
    Ok(quo)
}

/// `d_lambda(x) = x^{alpha(lambda)} psi_{|lambda|}(x) / prod_h (x^{|h|} - 1)`.
pub fn unipotent_degree(lambda: &Partition, x: &BigUint) -> Result<BigUint> {
    let mut den = BigUint::one();
    for &h in lambda.hooks().lengths() {
        den *= x.pow(h) - 1u32;
    }
    let num = x.pow(lambda.alpha() as u32) * psi_big(x, lambda.size() as u64);
    exact_div(num, &den, "unipotent degree")
}

/// `d_mu` as an exact integer.
pub fn exact_degree(alphabet: &Alphabet, mu: &GreenLabel) -> Result<BigUint> {
    let q = alphabet.q();
    let mut num = psi_big(&BigUint::from(q), mu.n as u64);
    let mut den = BigUint::one();
    for (i, l) in &mu.entries {
        let d = alphabet.degree(*i) as u64;
        num *= big_pow(q, d * l.alpha());
        for &h in l.hooks().lengths() {
            den *= big_pow(q, d * h as u64) - 1u32;
        }
    }
    exact_div(num, &den, "d_mu")
}

/// `(a_mu, b_mu)` with `a_mu = psi_n(q) / prod_f prod_{i <= |mu(f)|} (q^{d(f) i} - 1)`
/// and `b_mu = prod_f d_{mu(f)}(q^{d(f)})`.
pub fn degree_split(alphabet: &Alphabet, mu: &GreenLabel) -> Result<(BigUint, BigUint)> {
    if mu.n > EXACT_DEGREE_MAX_N {
        return Err(Error::Regime(format!("degree_split needs n <= {EXACT_DEGREE_MAX_N}, got {}", mu.n)));
    }
    let q = alphabet.q();
    let mut den = BigUint::one();
    let mut b = BigUint::one();
    for (i, l) in &mu.entries {
        let x = big_pow(q, alphabet.degree(*i) as u64);
        den *= psi_big(&x, l.size() as u64);
        b *= unipotent_degree(l, &x)?;
    }
    let a = exact_div(psi_big(&BigUint::from(q), mu.n as u64), &den, "a_mu")?;
    Ok((a, b))
}

/// `|GL_n(F_q)| = prod_{i=0}^{n-1} (q^n - q^i)`.
pub fn gl_order(q: u64, n: u32) -> BigUint {
    let qn = big_pow(q, n as u64);
    (0..n).fold(BigUint::one(), |acc, i| acc * (&qn - big_pow(q, i as u64)))
}

/// `v_ell(d_mu)` for any prime `ell`. For `ell = p` only the powers of `q`
/// contribute.
pub fn degree_valuation_ell(alphabet: &Alphabet, mu: &GreenLabel, ell: u64) -> Result<u64> {
    let q = alphabet.q();
    let field = alphabet.field();
    if ell == field.characteristic() {
        let e = field.degree() as u64;
        return Ok(mu.entries.iter().map(|(i, l)| e * alphabet.degree(*i) as u64 * l.alpha()).sum());
    }
    let mut v = 0u64;
    for i in 1..=mu.n as u64 {
        v += v_qpow_minus_one(ell, q, i)?;
    }
    for (i, l) in &mu.entries {
        let d = alphabet.degree(*i) as u64;
        for &h in l.hooks().lengths() {
            v -= v_qpow_minus_one(ell, q, d * h as u64)?;
        }
    }
    Ok(v)
}

/// Both sides of `v_ell(d_mu) >= v_ell(n! / prod |mu(f)|!) + sum_f v_ell(f_{mu(f)})`.
pub fn ell_adic_degree_bound_sides(alphabet: &Alphabet, mu: &GreenLabel, ell: u64) -> Result<(u64, u64)> {
    let lhs = degree_valuation_ell(alphabet, mu, ell)?;
    let mut rhs = v_factorial(ell, mu.n as u64)?;
    for (_, l) in &mu.entries {
        rhs -= v_factorial(ell, l.size() as u64)?;
        rhs += specht_valuation(l, ell)?;
    }
    Ok((lhs, rhs))
}

pub fn ell_adic_degree_bound_holds(alphabet: &Alphabet, mu: &GreenLabel, ell: u64) -> Result<bool> {
    let (lhs, rhs) = ell_adic_degree_bound_sides(alphabet, mu, ell)?;
    Ok(lhs >= rhs)
}

// ---------------------------------------------------------------------------
// Counts and valuation histograms by generating functions

/// Coefficients indexed by weight, each a histogram over the summed hook
/// valuations.
type Gf = Vec<BTreeMap<u64, BigUint>>;

fn gf_one(n: usize) -> Gf {
    let mut g = vec![BTreeMap::new(); n + 1];
    g[0].insert(0, BigUint::one());
    g
}

fn gf_mul(a: &Gf, b: &Gf, n: usize) -> Gf {
    let mut out: Gf = vec![BTreeMap::new(); n + 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate().take(n + 1 - i) {
            for (va, ca) in ai {
                for (vb, cb) in bj {
                    *out[i + j].entry(va + vb).or_insert_with(BigUint::zero) += ca * cb;
                }
            }
        }
    }
    out
}

fn gf_add_scaled(acc: &mut Gf, g: &Gf, c: &BigUint) {
    for (a, b) in acc.iter_mut().zip(g) {
        for (v, x) in b {
            *a.entry(*v).or_insert_with(BigUint::zero) += x * c;
        }
    }
}

/// `v -> #{lambda |- s : sum_h v_2(q^{d|h|} - 1) = v}`.
fn hook_histogram(q: u64, d: u64, s: u32) -> BTreeMap<u64, u64> {
    let mut hist = BTreeMap::new();
    for_each_partition(s, s, |parts| {
        let l = Partition::from_parts_unchecked(parts.to_vec());
        let v: u64 = l.hooks().lengths().iter().map(|&h| v2_qpow_unchecked(q, d * h as u64) as u64).sum();
        *hist.entry(v).or_insert(0) += 1;
    });
    hist
}

/// Histogram `v -> #{mu : v_2(d_mu) = v}` over `X_n` or `Y_n`, from the product
/// over orbit blocks of `sum_k C(N, k) A^k`, where `A` is the series of one
/// block and `N` the number of blocks of each degree and shape.
pub fn valuation_histogram_gf(q: u64, n: u32, self_dual: bool) -> Result<BTreeMap<u64, BigUint>> {
    crate::arith::odd_prime_power(q)?;
    let nn = n as usize;
    let mut total = gf_one(nn);
    for d in 1..=n {
        let all = irreducible_count(q, d)?;
        let groups: Vec<(u128, u32, u64)> = if self_dual {
            let fixed = self_reciprocal_count(q, d)?;
            vec![(fixed, d, 1), ((all - fixed) / 2, 2 * d, 2)]
        } else {
            vec![(all, d, 1)]
        };
        for (count, w, c) in groups {
            if count == 0 || w > n {
                continue;
            }
            let mut block: Gf = vec![BTreeMap::new(); nn + 1];
            for s in 1..=n / w {
                for (v, m) in hook_histogram(q, d as u64, s) {
                    *block[(s * w) as usize].entry(c * v).or_insert_with(BigUint::zero) += m;
                }
            }
            let mut factor = gf_one(nn);
            let mut power = gf_one(nn);
            let mut binom = BigUint::one();
            let count_big = BigUint::from(count);
            for k in 1..=(n / w) as u64 {
                if (k as u128) > count {
                    break;
                }
                power = gf_mul(&power, &block, nn);
                binom = binom * (&count_big - (k - 1)) / k;
                gf_add_scaled(&mut factor, &power, &binom);
            }
            total = gf_mul(&total, &factor, nn);
        }
    }
    let psi = v2_psi(q, n as u64)?;
    let mut out = BTreeMap::new();
    for (vh, c) in std::mem::take(&mut total[nn]) {
        let v = psi
            .checked_sub(vh)
            .ok_or_else(|| Error::Inconsistent("hook valuation exceeds v_2(psi_n)".into()))?;
        out.insert(v, c);
    }
    Ok(out)
}

fn hist_total(h: &BTreeMap<u64, BigUint>) -> BigUint {
    h.values().sum()
}

fn to_u128(x: BigUint, what: &str) -> Result<u128> {
    x.to_u128().ok_or_else(|| Error::Overflow(what.into()))
}

/// `|X_n|`, the number of conjugacy classes of `GL_n(F_q)`.
pub fn label_count(q: u64, n: u32) -> Result<u128> {
    to_u128(hist_total(&valuation_histogram_gf(q, n, false)?), "label count")
}

/// `|Y_n|`.
pub fn self_dual_count(q: u64, n: u32) -> Result<u128> {
    to_u128(hist_total(&valuation_histogram_gf(q, n, true)?), "self-dual count")
}

/// Histogram of `v_2(d_mu)` over `Y_n` by enumeration.
pub fn self_dual_histogram_enum(alphabet: &Alphabet, n: u32, budget: u128) -> Result<BTreeMap<u64, BigUint>> {
    let mut hist: BTreeMap<u64, BigUint> = BTreeMap::new();
    for_each_self_dual(alphabet, n, budget, |mu| {
        *hist.entry(degree_v2(alphabet, &mu)).or_insert_with(BigUint::zero) += 1u32;
    })?;
    Ok(hist)
}

/// `#{v < threshold} / total` from a histogram.
pub fn proportion_below(hist: &BTreeMap<u64, BigUint>, threshold: u64) -> BigRational {
    let below: BigUint = hist.range(..threshold).map(|(_, c)| c).sum();
    BigRational::new(BigInt::from(below), BigInt::from(hist_total(hist)))
}

/// `(#{v >= threshold}, total)` from a histogram.
pub fn count_at_least(hist: &BTreeMap<u64, BigUint>, threshold: u64) -> (BigUint, BigUint) {
    (hist.range(threshold..).map(|(_, c)| c).sum(), hist_total(hist))
}

/// `#{mu in Y_n : v_2(d_mu) < v_2((n)_k)} / |Y_n|`, by enumeration.
pub fn divisibility_proportion(q: u64, n: u32, k: u32, budget: u128) -> Result<BigRational> {
    let alphabet = Alphabet::new(q, n, crate::fqpoly::DEFAULT_POLY_BUDGET)?;
    let hist = self_dual_histogram_enum(&alphabet, n, budget)?;
    Ok(proportion_below(&hist, v_falling(2, n as u64, k as u64)?))
}

/// The same proportion from the generating function, for `n` beyond enumeration.
pub fn divisibility_proportion_gf(q: u64, n: u32, k: u32) -> Result<BigRational> {
    let hist = valuation_histogram_gf(q, n, true)?;
    Ok(proportion_below(&hist, v_falling(2, n as u64, k as u64)?))
}

/// `r + v_2(prod_{i=0}^{n0-1} (q^{n-i} - 1))`.
pub fn character_divisibility_threshold(q: u64, n: u32, n0: u32, r: u64) -> Result<u64> {
    if n0 > n {
        return Err(Error::InvalidArgument(format!("need n0 <= n, got n0 = {n0}, n = {n}")));
    }
    crate::arith::odd_prime_power(q)?;
    Ok(r + (0..n0).map(|i| v2_qpow_unchecked(q, (n - i) as u64) as u64).sum::<u64>())
}

/// The valuation condition constrains every prime dividing `2^r`, so it is
/// vacuous for `r = 0`.
fn guaranteed_count(hist: &BTreeMap<u64, BigUint>, threshold: u64, r: u64) -> (BigUint, BigUint) {
    if r == 0 {
        let t = hist_total(hist);
        (t.clone(), t)
    } else {
        count_at_least(hist, threshold)
    }
}

/// `(#{mu in Y_n : v_2(d_mu) >= threshold}, |Y_n|)`: labels for which
/// `2^r | chi_mu(g)` for every `g in GL_{n0}` follows from the degree alone.
pub fn character_divisibility_bound(q: u64, n: u32, n0: u32, r: u64, budget: u128) -> Result<(BigUint, BigUint)> {
    let threshold = character_divisibility_threshold(q, n, n0, r)?;
    let alphabet = Alphabet::new(q, n, crate::fqpoly::DEFAULT_POLY_BUDGET)?;
    Ok(guaranteed_count(&self_dual_histogram_enum(&alphabet, n, budget)?, threshold, r))
}

pub fn character_divisibility_bound_gf(q: u64, n: u32, n0: u32, r: u64) -> Result<(BigUint, BigUint)> {
    let threshold = character_divisibility_threshold(q, n, n0, r)?;
    Ok(guaranteed_count(&valuation_histogram_gf(q, n, true)?, threshold, r))
}

/// How a statistic was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Enumeration,
    GeneratingFunction,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Enumeration => "enumeration",
            Method::GeneratingFunction => "generating-function",
        })
    }
}

/// One row of `GL_n` statistics.
#[derive(Clone, Debug)]
pub struct GlnStats {
    pub q: u64,
    pub n: u32,
    pub k: u32,
    pub n0: u32,
    pub r: u64,
    pub method: Method,
    pub labels: BigUint,
    pub self_dual: BigUint,
    pub histogram_all: BTreeMap<u64, BigUint>,
    pub histogram_self_dual: BTreeMap<u64, BigUint>,
    pub proportion: BigRational,
    pub guaranteed: BigUint,
}

/// Statistics for `(q, n)`; labels are enumerated when `|X_n|` fits the
/// budget and counted by generating functions otherwise.
pub fn gln_stats(q: u64, n: u32, k: u32, n0: u32, r: u64, budget: u128) -> Result<GlnStats> {
    if k > n {
        return Err(Error::InvalidArgument(format!("need k <= n, got k = {k}, n = {n}")));
    }
    let threshold = character_divisibility_threshold(q, n, n0, r)?;
    let falling = v_falling(2, n as u64, k as u64)?;
    let gf_all = valuation_histogram_gf(q, n, false)?;
    let enumerable = hist_total(&gf_all) <= BigUint::from(budget);
    let (method, histogram_all, histogram_self_dual) = if enumerable {
        let alphabet = Alphabet::new(q, n, crate::fqpoly::DEFAULT_POLY_BUDGET)?;
        let mut all: BTreeMap<u64, BigUint> = BTreeMap::new();
        let mut sd: BTreeMap<u64, BigUint> = BTreeMap::new();
        for_each_label(&alphabet, n, budget, |mu| {
            let v = degree_v2(&alphabet, &mu);
            *all.entry(v).or_insert_with(BigUint::zero) += 1u32;
            if is_self_dual(&alphabet, &mu) {
                *sd.entry(v).or_insert_with(BigUint::zero) += 1u32;
            }
        })?;
        (Method::Enumeration, all, sd)
    } else {
        (Method::GeneratingFunction, gf_all, valuation_histogram_gf(q, n, true)?)
    };
    let (guaranteed, _) = guaranteed_count(&histogram_self_dual, threshold, r);
    Ok(GlnStats {
        q,
        n,
        k,
        n0,
        r,
        method,
        labels: hist_total(&histogram_all),
        self_dual: hist_total(&histogram_self_dual),
        proportion: proportion_below(&histogram_self_dual, falling),
        guaranteed,
        histogram_all,
        histogram_self_dual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fqpoly::DEFAULT_POLY_BUDGET;

    fn alphabet(q: u64, n: u32) -> Alphabet {
        Alphabet::new(q, n, DEFAULT_POLY_BUDGET).unwrap()
    }

    fn lin(a: &Alphabet, root: i64) -> FqPoly {
        FqPoly::linear(a.field(), a.field().from_int(root))
    }

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn label_counts() {
        for q in [3u64, 5, 7] {
            assert_eq!(enumerate_labels(&alphabet(q, 1), 1, DEFAULT_LABEL_BUDGET).unwrap().len() as u64, q - 1);
        }
        assert_eq!(enumerate_labels(&alphabet(3, 2), 2, DEFAULT_LABEL_BUDGET).unwrap().len(), 8);
        assert_eq!(enumerate_labels(&alphabet(5, 2), 2, DEFAULT_LABEL_BUDGET).unwrap().len(), 24);
        // GL_3(F_q) has q^3 - q classes.
        assert_eq!(enumerate_labels(&alphabet(3, 3), 3, DEFAULT_LABEL_BUDGET).unwrap().len(), 24);
        for q in [3u64, 5, 7, 9] {
            assert_eq!(label_count(q, 2).unwrap(), (q * q - 1) as u128);
            assert_eq!(label_count(q, 3).unwrap(), (q * q * q - q) as u128);
        }
    }

    #[test]
    fn enumeration_matches_generating_function() {
        for (q, n) in [(3u64, 4u32), (3, 5), (5, 3), (5, 4), (7, 3), (9, 3)] {
            let a = alphabet(q, n);
            let mut all: BTreeMap<u64, BigUint> = BTreeMap::new();
            let mut sd: BTreeMap<u64, BigUint> = BTreeMap::new();
            for_each_label(&a, n, DEFAULT_LABEL_BUDGET, |mu| {
                let v = degree_v2(&a, &mu);
                *all.entry(v).or_default() += 1u32;
                if is_self_dual(&a, &mu) {
                    *sd.entry(v).or_default() += 1u32;
                }
            })
            .unwrap();
            assert_eq!(all, valuation_histogram_gf(q, n, false).unwrap(), "q={q} n={n}");
            assert_eq!(sd, valuation_histogram_gf(q, n, true).unwrap(), "q={q} n={n}");
            assert_eq!(sd, self_dual_histogram_enum(&a, n, DEFAULT_LABEL_BUDGET).unwrap());
        }
    }

    #[test]
    fn dual_examples() {
        let a = alphabet(5, 2);
        let mu = GreenLabel::new(&a, vec![(lin(&a, 2), p(&[1]))]).unwrap();
        let expected = GreenLabel::new(&a, vec![(lin(&a, 3), p(&[1]))]).unwrap();
        assert_eq!(dual_label(&a, &mu), expected);
        let unip = GreenLabel::new(&a, vec![(lin(&a, 1), p(&[2]))]).unwrap();
        assert!(is_self_dual(&a, &unip));
        let pair = GreenLabel::new(&a, vec![(lin(&a, 2), p(&[1])), (lin(&a, 3), p(&[1]))]).unwrap();
        assert!(is_self_dual(&a, &pair));
        let not = GreenLabel::new(&a, vec![(lin(&a, 2), p(&[1])), (lin(&a, 4), p(&[1]))]).unwrap();
        assert!(!is_self_dual(&a, &not));
        assert!(GreenLabel::new(&a, vec![(FqPoly::x(), p(&[1]))]).is_err());
    }

    #[test]
    fn duality_is_an_involution_preserving_degrees() {
        let a = alphabet(3, 3);
        for mu in enumerate_labels(&a, 3, DEFAULT_LABEL_BUDGET).unwrap() {
            let nu = dual_label(&a, &mu);
            assert_eq!(dual_label(&a, &nu), mu);
            assert_eq!(degree_valuation(&a, &mu).unwrap(), degree_valuation(&a, &nu).unwrap());
            assert_eq!(is_self_dual(&a, &nu), is_self_dual(&a, &mu));
        }
    }

    #[test]
    fn self_dual_examples() {
        assert_eq!(enumerate_self_dual(&alphabet(5, 2), 2, DEFAULT_LABEL_BUDGET).unwrap().len(), 8);
        assert_eq!(enumerate_self_dual(&alphabet(3, 2), 2, DEFAULT_LABEL_BUDGET).unwrap().len(), 6);
        assert_eq!(enumerate_self_dual(&alphabet(7, 1), 1, DEFAULT_LABEL_BUDGET).unwrap().len(), 2);
        for q in [3u64, 5, 7, 9, 11, 13] {
            let a = alphabet(q, 2);
            let sd = enumerate_self_dual(&a, 2, DEFAULT_LABEL_BUDGET).unwrap();
            assert_eq!(sd.len() as u64, q + 3);
            let filtered = enumerate_labels(&a, 2, DEFAULT_LABEL_BUDGET)
                .unwrap()
                .into_iter()
                .filter(|mu| is_self_dual(&a, mu))
                .count();
            assert_eq!(filtered as u64, q + 3);
        }
    }

    #[test]
    fn type_functions_partition_the_self_dual_locus() {
        let a = alphabet(3, 4);
        let mut total = 0;
        for tf in enumerate_type_functions(&a, 4, true).unwrap() {
            for &(i, s) in tf.sizes() {
                let j = a.dual(i);
                assert_eq!(tf.sizes().iter().find(|(k, _)| *k == j).map(|x| x.1), Some(s));
            }
            for mu in fiber(&a, &tf) {
                assert!(is_self_dual(&a, &mu));
                total += 1;
            }
        }
        assert_eq!(total as u128, self_dual_count(3, 4).unwrap());
    }

    #[test]
    fn degree_examples() {
        let a = alphabet(3, 2);
        let triv = GreenLabel::new(&a, vec![(lin(&a, 1), p(&[2]))]).unwrap();
        let dv = degree_valuation(&a, &triv).unwrap();
        assert_eq!((dv.v2, dv.exact_degree), (0, Some(BigUint::one())));
        let st = GreenLabel::new(&a, vec![(lin(&a, 1), p(&[1, 1]))]).unwrap();
        let dv = degree_valuation(&a, &st).unwrap();
        assert_eq!((dv.v2, dv.exact_degree), (0, Some(BigUint::from(3u32))));
        let quad = (0..a.len()).find(|&i| a.degree(i) == 2 && a.dual(i) == i).unwrap();
        let cusp = GreenLabel::new(&a, vec![(a.poly(quad).clone(), p(&[1]))]).unwrap();
        let dv = degree_valuation(&a, &cusp).unwrap();
        assert_eq!((dv.v2, dv.exact_degree), (1, Some(BigUint::from(2u32))));
    }

    #[test]
    fn degree_split_examples() {
        let a = alphabet(5, 2);
        let unip = GreenLabel::new(&a, vec![(lin(&a, 1), p(&[1, 1]))]).unwrap();
        assert_eq!(degree_split(&a, &unip).unwrap(), (BigUint::one(), BigUint::from(5u32)));
        let quad = (0..a.len()).find(|&i| a.degree(i) == 2).unwrap();
        let cusp = GreenLabel::new(&a, vec![(a.poly(quad).clone(), p(&[1]))]).unwrap();
        assert_eq!(degree_split(&a, &cusp).unwrap(), (BigUint::from(4u32), BigUint::one()));
        for (q, n) in [(3u64, 2u32), (3, 3), (5, 2)] {
            let a = alphabet(q, n);
            for mu in enumerate_labels(&a, n, DEFAULT_LABEL_BUDGET).unwrap() {
                let (x, y) = degree_split(&a, &mu).unwrap();
                assert_eq!(x * y, exact_degree(&a, &mu).unwrap());
            }
        }
    }

    #[test]
    fn degrees_square_sum_to_group_order() {
        for (q, n) in [(3u64, 2u32), (5, 2), (3, 3), (3, 4)] {
            let a = alphabet(q, n);
            let s: BigUint = enumerate_labels(&a, n, DEFAULT_LABEL_BUDGET)
                .unwrap()
                .iter()
                .map(|mu| exact_degree(&a, mu).unwrap().pow(2))
                .sum();
            assert_eq!(s, gl_order(q, n), "q={q} n={n}");
        }
    }

    #[test]
    fn valuations_match_exact_degrees() {
        for (q, n) in [(3u64, 5u32), (5, 4), (9, 3)] {
            let a = alphabet(q, n);
            for mu in enumerate_labels(&a, n, DEFAULT_LABEL_BUDGET).unwrap() {
                let d = exact_degree(&a, &mu).unwrap();
                for ell in [2u64, 3, 5] {
                    let mut x = d.clone();
                    let mut v = 0;
                    while (&x % ell).is_zero() {
                        x /= ell;
                        v += 1;
                    }
                    assert_eq!(degree_valuation_ell(&a, &mu, ell).unwrap(), v);
                }
            }
        }
    }

    #[test]
    fn degree_bound_holds_when_ell_divides_q_minus_one() {
        for (q, n, ell) in [(3u64, 4u32, 2u64), (5, 4, 2), (7, 4, 3), (13, 3, 3)] {
            let a = alphabet(q, n);
            let unip = GreenLabel::new(&a, vec![(lin(&a, 1), p(&[n]))]).unwrap();
            assert_eq!(ell_adic_degree_bound_sides(&a, &unip, ell).unwrap(), (0, 0));
            for mu in enumerate_labels(&a, n, DEFAULT_LABEL_BUDGET).unwrap() {
                assert!(ell_adic_degree_bound_holds(&a, &mu, ell).unwrap(), "{}", mu.display(&a));
            }
        }
    }

    #[test]
    fn degree_bound_fails_when_ell_does_not_divide_q_minus_one() {
        // Over F_5 the label {x + 1 -> (1), x + 2 -> (2)} has degree
        // [GL_3 : P_{1,2}] = 31, while v_3(3! / (1! 2!)) = 1.
        let a = alphabet(5, 3);
        let mu = GreenLabel::new(&a, vec![(lin(&a, 4), p(&[1])), (lin(&a, 3), p(&[2]))]).unwrap();
        assert_eq!(exact_degree(&a, &mu).unwrap(), BigUint::from(31u32));
        assert_eq!(ell_adic_degree_bound_sides(&a, &mu, 3).unwrap(), (0, 1));
        assert!(!ell_adic_degree_bound_holds(&a, &mu, 3).unwrap());
    }

    #[test]
    fn proportion_and_bound_examples() {
        assert!(divisibility_proportion(3, 4, 0, DEFAULT_LABEL_BUDGET).unwrap().is_zero());
        let x = divisibility_proportion(3, 6, 1, DEFAULT_LABEL_BUDGET).unwrap();
        assert!(x >= BigRational::zero() && x <= BigRational::one());
        assert_eq!(x, divisibility_proportion_gf(3, 6, 1).unwrap());
        let (g, t) = character_divisibility_bound(3, 6, 1, 0, DEFAULT_LABEL_BUDGET).unwrap();
        assert_eq!(g, t);
        assert_eq!(character_divisibility_threshold(3, 6, 1, 0).unwrap(), 3);
        assert_eq!(
            character_divisibility_bound(3, 6, 1, 1, DEFAULT_LABEL_BUDGET).unwrap(),
            character_divisibility_bound_gf(3, 6, 1, 1).unwrap()
        );
        assert!(character_divisibility_threshold(3, 2, 3, 0).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let a = alphabet(3, 4);
        assert!(matches!(enumerate_labels(&a, 4, 10), Err(Error::BudgetExceeded { .. })));
        assert!(enumerate_labels(&a, 5, DEFAULT_LABEL_BUDGET).is_err());
    }
}
