//! Finite fields `F_q` (q an odd prime power), monic polynomials over them,
//! and the reciprocal involution `f -> f*` on monic irreducibles other than `x`.
//!
//! `F_{p^e}` is realised as `F_p[a]/(m(a))` where `m` is the least monic
//! irreducible of degree `e` in the order used throughout this module. An
//! element is encoded by the integer `c_0 + c_1 p + ... + c_{e-1} p^{e-1}` of its
//! coordinate vector, so the encoding of `F_p` is the usual residue.

use std::cmp::Ordering;
use std::fmt;

use crate::arith::{divisors, mobius, odd_prime_power, checked_pow_u128};
use crate::{Error, Result};

/// Largest field size for which log/exp tables are built.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// Default cap on the number of candidate polynomials scanned per degree.
pub const DEFAULT_POLY_BUDGET: u128 = 50_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem(u32);

impl FqElem {
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field `F_q` with its log/exp tables against the least primitive element.
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus over `F_p`, low degree first; `[0, 1]` when `e = 1`.
    modulus: Vec<u32>,
    generator: FqElem,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Field {
    pub fn new(q: u64) -> Result<Self> {
        let (p, e) = odd_prime_power(q)?;
        if q > MAX_FIELD_SIZE {
            return Err(Error::BudgetExceeded {
                what: "field size".into(),
                needed: q as u128,
                budget: MAX_FIELD_SIZE as u128,
            });
        }
        let p = p as u32;
        let modulus = if e == 1 { vec![0, 1] } else { least_irreducible_over_prime(p, e) };
        let mut field = Field { p, e, q: q as u32, modulus, generator: FqElem(0), exp: Vec::new(), log: Vec::new() };
        field.build_tables()?;
        Ok(field)
    }

    fn build_tables(&mut self) -> Result<()> {
        let order = self.q - 1;
        for g in 2..self.q {
            let mut exp = Vec::with_capacity(order as usize);
            let mut x = 1u32;
            let mut primitive = true;
            for k in 0..order {
                if k > 0 && x == 1 {
                    primitive = false;
                    break;
                }
                exp.push(x);
                x = self.mul_raw(x, g);
            }
            if primitive && x == 1 {
                let mut log = vec![u32::MAX; self.q as usize];
                for (k, &v) in exp.iter().enumerate() {
                    log[v as usize] = k as u32;
                }
                self.generator = FqElem(g);
                self.exp = exp;
                self.log = log;
                return Ok(());
            }
        }
        Err(Error::Inconsistent(format!("no primitive element found in F_{}", self.q)))
    }

    fn digits(&self, mut x: u32) -> Vec<u32> {
        let mut d = vec![0; self.e as usize];
        for c in d.iter_mut() {
            *c = x % self.p;
            x /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let p = self.p as u64;
        let e = self.e as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * e - 1];
        for i in 0..e {
            for j in 0..e {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        for k in (e..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..e {
                let sub = c * self.modulus[i] as u64 % p;
                prod[k - e + i] = (prod[k - e + i] + p - sub) % p;
            }
        }
        let out: Vec<u32> = prod[..e].iter().map(|&c| c as u32).collect();
        self.undigits(&out)
    }

    pub fn size(&self) -> u64 {
        self.q as u64
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Coefficients of the defining modulus over `F_p`, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> FqElem {
        self.generator
    }

    pub fn zero(&self) -> FqElem {
        FqElem(0)
    }

    pub fn one(&self) -> FqElem {
        FqElem(1)
    }

    /// The image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_index(&self, k: u32) -> Result<FqElem> {
        if k < self.q {
            Ok(FqElem(k))
        } else {
            Err(Error::InvalidArgument(format!("{k} is not an element index of F_{}", self.q)))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(FqElem)
    }

    pub fn units(&self) -> impl Iterator<Item = FqElem> {
        (1..self.q).map(FqElem)
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.e == 1 {
            return FqElem((a.0 + b.0) % self.p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.e {
            out += ((x % self.p + y % self.p) % self.p) * scale;
            x /= self.p;
            y /= self.p;
            scale *= self.p;
        }
        FqElem(out)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.e == 1 {
            return FqElem((self.p - a.0) % self.p);
        }
        let d: Vec<u32> = self.digits(a.0).iter().map(|&c| (self.p - c) % self.p).collect();
        FqElem(self.undigits(&d))
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.0 == 0 || b.0 == 0 {
            return FqElem(0);
        }
        let k = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % (self.q as u64 - 1);
        FqElem(self.exp[k as usize])
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.0 == 0 {
            return Err(Error::InvalidArgument("0 has no inverse".into()));
        }
        let k = self.log[a.0 as usize];
        Ok(FqElem(self.exp[((self.q - 1 - k) % (self.q - 1)) as usize]))
    }

    pub fn pow(&self, a: FqElem, k: u64) -> FqElem {
        if k == 0 {
            return FqElem(1);
        }
        if a.0 == 0 {
            return FqElem(0);
        }
        let e = (self.log[a.0 as usize] as u128 * k as u128) % (self.q as u128 - 1);
        FqElem(self.exp[e as usize])
    }

    /// Discrete logarithm against [`Field::generator`]; `None` for zero.
    pub fn log(&self, a: FqElem) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// `g^k` for the fixed generator `g`.
    pub fn exp(&self, k: u64) -> FqElem {
        FqElem(self.exp[(k % (self.q as u64 - 1)) as usize])
    }

    pub fn is_square(&self, a: FqElem) -> bool {
        a.0 == 0 || self.log[a.0 as usize].is_multiple_of(2)
    }

    /// Multiplicative order of a unit.
    pub fn order(&self, a: FqElem) -> Result<u64> {
        let k = self.log(a).ok_or_else(|| Error::InvalidArgument("0 has no multiplicative order".into()))?;
        let n = self.q as u64 - 1;
        Ok(n / num_integer::gcd(n, k as u64))
    }
}

/// The least monic irreducible of degree `e` over `F_p`, low degree first.
fn least_irreducible_over_prime(p: u32, e: u32) -> Vec<u32> {
    let mut prime = Field { p, e: 1, q: p, modulus: vec![0, 1], generator: FqElem(0), exp: Vec::new(), log: Vec::new() };
    prime.build_tables().expect("prime fields have primitive roots");
    let total = (p as u64).pow(e);
    for idx in 0..total {
        let f = poly_from_index(&prime, e, idx);
        if is_irreducible(&prime, &f) {
            return f.coeffs.iter().map(|c| c.0).collect();
        }
    }
    unreachable!("irreducibles of every degree exist")
}

fn poly_from_index(field: &Field, d: u32, mut idx: u64) -> FqPoly {
    let q = field.size();
    let mut coeffs = vec![FqElem(0); d as usize + 1];
    for c in coeffs.iter_mut().take(d as usize) {
        *c = FqElem((idx % q) as u32);
        idx /= q;
    }
    coeffs[d as usize] = FqElem(1);
    FqPoly { coeffs }
}

/// A monic polynomial, coefficients stored low degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqPoly {
    coeffs: Vec<FqElem>,
}

impl FqPoly {
    /// Builds a monic polynomial from coefficients listed low degree first.
    pub fn monic(coeffs: Vec<FqElem>) -> Result<Self> {
        match coeffs.last() {
            Some(c) if c.0 == 1 && coeffs.len() >= 2 => Ok(FqPoly { coeffs }),
            _ => Err(Error::InvalidArgument("polynomial must be monic of degree >= 1".into())),
        }
    }

    /// `x - a`.
    pub fn linear(field: &Field, a: FqElem) -> Self {
        FqPoly { coeffs: vec![field.neg(a), field.one()] }
    }

    pub fn x() -> Self {
        FqPoly { coeffs: vec![FqElem(0), FqElem(1)] }
    }

    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> FqElem {
        self.coeffs[0]
    }

    /// Root of a linear polynomial.
    pub fn linear_root(&self, field: &Field) -> Option<FqElem> {
        (self.degree() == 1).then(|| field.neg(self.coeffs[0]))
    }
}

impl Ord for FqPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for FqPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.0 == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if c.0 == 1 && k > 0 { String::new() } else { c.0.to_string() };
            match k {
                0 => write!(f, "{}", c.0)?,
                1 => write!(f, "{coeff}x")?,
                _ => write!(f, "{coeff}x^{k}")?,
            }
        }
        Ok(())
    }
}

// Dense polynomial helpers over `field`; vectors are low degree first and may
// carry trailing zeros until trimmed.

fn trim(v: &mut Vec<FqElem>) {
    while v.len() > 1 && v.last() == Some(&FqElem(0)) {
        v.pop();
    }
}

fn poly_mul(field: &Field, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
    let mut out = vec![FqElem(0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.0 == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Remainder modulo a polynomial whose leading coefficient is a unit.
fn poly_rem(field: &Field, a: &[FqElem], m: &[FqElem]) -> Vec<FqElem> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = field.inv(m[dm]).expect("nonzero leading coefficient");
    while r.len() > dm && !(r.len() == 1 && r[0].0 == 0) {
        let k = r.len() - 1;
        let c = field.mul(r[k], lead_inv);
        if c.0 != 0 {
            for i in 0..=dm {
                r[k - dm + i] = field.sub(r[k - dm + i], field.mul(c, m[i]));
            }
        }
        r.pop();
        trim(&mut r);
    }
    if r.is_empty() {
        r.push(FqElem(0));
    }
    r
}

fn is_zero_poly(a: &[FqElem]) -> bool {
    a.iter().all(|c| c.0 == 0)
}

fn poly_gcd(field: &Field, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !is_zero_poly(&b) {
        let r = poly_rem(field, &a, &b);
        a = b;
        b = r;
    }
    a
}

fn poly_pow_mod(field: &Field, base: &[FqElem], mut k: u64, m: &[FqElem]) -> Vec<FqElem> {
    let mut result = vec![FqElem(1)];
    let mut b = poly_rem(field, base, m);
    while k > 0 {
        if k & 1 == 1 {
            result = poly_rem(field, &poly_mul(field, &result, &b), m);
        }
        b = poly_rem(field, &poly_mul(field, &b, &b), m);
        k >>= 1;
    }
    result
}

/// Distinct-degree test: a monic `f` of degree `d` is irreducible iff
/// `gcd(x^{q^i} - x, f) = 1` for every `1 <= i <= d/2`.
pub fn is_irreducible(field: &Field, f: &FqPoly) -> bool {
    let d = f.degree();
    if d == 1 {
        return true;
    }
    let m = &f.coeffs;
    let x = vec![FqElem(0), FqElem(1)];
    let mut h = x.clone();
    for _ in 1..=d / 2 {
        h = poly_pow_mod(field, &h, field.size(), m);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), FqElem(0));
        diff[1] = field.sub(diff[1], FqElem(1));
        trim(&mut diff);
        if is_zero_poly(&diff) {
            return false;
        }
        let g = poly_gcd(field, &diff, m);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Every monic irreducible of degree `d` other than `x`, in increasing order.
/// The scan covers `q^d` candidates and fails beyond `budget`.
pub fn irreducibles(field: &Field, d: u32, budget: u128) -> Result<Vec<FqPoly>> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be >= 1".into()));
    }
    let q = field.size();
    let total = checked_pow_u128(q, d, "candidate polynomials")?;
    if total > budget {
        return Err(Error::BudgetExceeded { what: format!("irreducibles of degree {d} over F_{q}"), needed: total, budget });
    }
    let mut out = Vec::new();
    for idx in 0..total as u64 {
        if idx % q == 0 {
            continue;
        }
        let f = poly_from_index(field, d, idx);
        if is_irreducible(field, &f) {
            out.push(f);
        }
    }
    Ok(out)
}

/// Number of monic irreducibles of degree `d` over `F_q`, excluding `x`.
pub fn irreducible_count(q: u64, d: u32) -> Result<u128> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be >= 1".into()));
    }
    let mut acc: i128 = 0;
    for e in divisors(d as u64) {
        let mu = mobius(e);
        if mu != 0 {
            let term = checked_pow_u128(q, (d as u64 / e) as u32, "irreducible count")? as i128;
            acc += mu as i128 * term;
        }
    }
    let n = (acc / d as i128) as u128;
    Ok(if d == 1 { n - 1 } else { n })
}

/// Number of self-reciprocal monic irreducibles of degree `d` over `F_q`, q odd:
/// 2 for `d = 1`, 0 for odd `d > 1`, and
/// `(1/2m) sum_{e | m, e odd} mu(e) (q^{m/e} - 1)` for `d = 2m`.
pub fn self_reciprocal_count(q: u64, d: u32) -> Result<u128> {
    match d {
        0 => Err(Error::InvalidArgument("degree must be >= 1".into())),
        1 => Ok(2),
        d if d % 2 == 1 => Ok(0),
        d => {
            let m = d as u64 / 2;
            let mut acc: i128 = 0;
            for e in divisors(m).into_iter().filter(|e| e % 2 == 1) {
                let mu = mobius(e);
                if mu != 0 {
                    let term = checked_pow_u128(q, (m / e) as u32, "self-reciprocal count")? as i128 - 1;
                    acc += mu as i128 * term;
                }
            }
            Ok((acc / (2 * m as i128)) as u128)
        }
    }
}

/// `f*`: the monic normalisation of `T^{deg f} f(1/T)`.
pub fn reciprocal(field: &Field, f: &FqPoly) -> Result<FqPoly> {
    let c0 = f.constant_term();
    let inv = field.inv(c0).map_err(|_| Error::InvalidArgument(format!("reciprocal of {f} needs f(0) != 0")))?;
    let coeffs = f.coeffs.iter().rev().map(|&c| field.mul(c, inv)).collect();
    Ok(FqPoly { coeffs })
}

/// An orbit `{f, f*}`; `rep` is the smaller member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyOrbit {
    pub rep: FqPoly,
    pub partner: FqPoly,
}

impl PolyOrbit {
    pub fn size(&self) -> u32 {
        if self.rep == self.partner {
            1
        } else {
            2
        }
    }

    pub fn is_fixed(&self) -> bool {
        self.rep == self.partner
    }
}

/// The `{f, f*}` orbits on degree-`d` irreducibles, ordered by representative.
pub fn orbits(field: &Field, d: u32, budget: u128) -> Result<Vec<PolyOrbit>> {
    let mut out = Vec::new();
    for f in irreducibles(field, d, budget)? {
        let g = reciprocal(field, &f)?;
        if f <= g {
            out.push(PolyOrbit { rep: f, partner: g });
        }
    }
    Ok(out)
}

/// `F_{q^2} = F_q[y]/(y^2 + c_1 y + c_0)` for the least irreducible quadratic,
/// with a discrete-log table against its least primitive element.
#[derive(Clone, Debug)]
pub struct QuadraticExtension {
    base: Field,
    c0: FqElem,
    c1: FqElem,
    generator: (FqElem, FqElem),
    exp: Vec<(FqElem, FqElem)>,
    log: Vec<u32>,
}

impl QuadraticExtension {
    pub fn new(base: &Field) -> Result<Self> {
        let q = base.size();
        if q * q > MAX_FIELD_SIZE {
            return Err(Error::BudgetExceeded { what: "quadratic extension size".into(), needed: (q * q) as u128, budget: MAX_FIELD_SIZE as u128 });
        }
        let m = irreducibles(base, 2, DEFAULT_POLY_BUDGET)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::Inconsistent("no irreducible quadratic".into()))?;
        let mut ext = QuadraticExtension {
            base: base.clone(),
            c0: m.coeffs[0],
            c1: m.coeffs[1],
            generator: (FqElem(0), FqElem(0)),
            exp: Vec::new(),
            log: Vec::new(),
        };
        let order = (q * q - 1) as usize;
        for idx in 1..(q * q) as u32 {
            let g = ext.pair_at(idx);
            let mut exp = Vec::with_capacity(order);
            let mut x = (base.one(), base.zero());
            let mut ok = true;
            for k in 0..order {
                if k > 0 && x == (base.one(), base.zero()) {
                    ok = false;
                    break;
                }
                exp.push(x);
                x = ext.mul(x, g);
            }
            if ok {
                let mut log = vec![u32::MAX; (q * q) as usize];
                for (k, &v) in exp.iter().enumerate() {
                    log[ext.flat(v) as usize] = k as u32;
                }
                ext.generator = g;
                ext.exp = exp;
                ext.log = log;
                return Ok(ext);
            }
        }
        Err(Error::Inconsistent("no primitive element in F_{q^2}".into()))
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    /// `(c_0, c_1)` of the modulus `y^2 + c_1 y + c_0`.
    pub fn modulus(&self) -> (FqElem, FqElem) {
        (self.c0, self.c1)
    }

    pub fn generator(&self) -> (FqElem, FqElem) {
        self.generator
    }

    fn flat(&self, x: (FqElem, FqElem)) -> u32 {
        x.0 .0 + x.1 .0 * self.base.size() as u32
    }

    fn pair_at(&self, k: u32) -> (FqElem, FqElem) {
        let q = self.base.size() as u32;
        (FqElem(k % q), FqElem(k / q))
    }

    /// `(a + b y)(c + d y)` reduced by `y^2 = -c_1 y - c_0`.
    pub fn mul(&self, x: (FqElem, FqElem), y: (FqElem, FqElem)) -> (FqElem, FqElem) {
        let f = &self.base;
        let (a, b) = x;
        let (c, d) = y;
        let bd = f.mul(b, d);
        let re = f.sub(f.mul(a, c), f.mul(bd, self.c0));
        let im = f.sub(f.add(f.mul(a, d), f.mul(b, c)), f.mul(bd, self.c1));
        (re, im)
    }

    pub fn log(&self, x: (FqElem, FqElem)) -> Option<u32> {
        let l = self.log[self.flat(x) as usize];
        (l != u32::MAX).then_some(l)
    }

    pub fn exp(&self, k: u64) -> (FqElem, FqElem) {
        self.exp[(k % self.exp.len() as u64) as usize]
    }

    /// Nonzero elements in the order of their flat encoding `a + b q`.
    pub fn units(&self) -> impl Iterator<Item = (FqElem, FqElem)> + '_ {
        let q = self.base.size() as u32;
        (1..q * q).map(move |k| self.pair_at(k))
    }

    /// Discrete logarithms of the two roots of a monic irreducible quadratic.
    pub fn root_logs(&self, f: &FqPoly) -> Result<(u32, u32)> {
        if f.degree() != 2 {
            return Err(Error::InvalidArgument(format!("{f} is not quadratic")));
        }
        let fb = &self.base;
        let mut roots = Vec::new();
        for x in self.units() {
            let x2 = self.mul(x, x);
            let lin = (fb.mul(f.coeffs[1], x.0), fb.mul(f.coeffs[1], x.1));
            let val = (fb.add(fb.add(x2.0, lin.0), f.coeffs[0]), fb.add(x2.1, lin.1));
            if val == (fb.zero(), fb.zero()) {
                roots.push(self.log(x).expect("unit"));
            }
        }
        match roots.as_slice() {
            [a, b] => Ok((*a.min(b), *a.max(b))),
            _ => Err(Error::InvalidArgument(format!("{f} is not an irreducible quadratic"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> Field {
        Field::new(q).unwrap()
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(Field::new(4).is_err());
        assert!(Field::new(6).is_err());
        assert!(Field::new(1).is_err());
    }

    #[test]
    fn field_axioms_small() {
        for q in [3u64, 5, 7, 9, 25, 27] {
            let f = field(q);
            assert_eq!(f.order(f.generator()).unwrap(), q - 1);
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements().step_by(3) {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn prime_power_modulus_is_least() {
        // x^2 + 1 is the least monic irreducible quadratic over F_3.
        assert_eq!(field(9).modulus(), &[1, 0, 1]);
        assert_eq!(field(9).generator().index(), 4);
    }

    #[test]
    fn irreducible_examples() {
        let f3 = field(3);
        let lin = irreducibles(&f3, 1, DEFAULT_POLY_BUDGET).unwrap();
        assert_eq!(lin, vec![FqPoly::linear(&f3, f3.from_int(2)), FqPoly::linear(&f3, f3.from_int(1))]);
        assert_eq!(irreducibles(&f3, 2, DEFAULT_POLY_BUDGET).unwrap().len(), 3);
        assert_eq!(irreducibles(&field(5), 2, DEFAULT_POLY_BUDGET).unwrap().len(), 10);
        assert_eq!(irreducible_count(7, 1).unwrap(), 6);
        assert_eq!(irreducible_count(3, 2).unwrap(), 3);
        assert_eq!(irreducible_count(3, 3).unwrap(), 8);
        assert!(matches!(irreducibles(&f3, 10, 1000), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn reciprocal_examples() {
        let f5 = field(5);
        let one = f5.one();
        assert_eq!(reciprocal(&f5, &FqPoly::linear(&f5, one)).unwrap(), FqPoly::linear(&f5, one));
        for a in f5.units() {
            let r = reciprocal(&f5, &FqPoly::linear(&f5, a)).unwrap();
            assert_eq!(r, FqPoly::linear(&f5, f5.inv(a).unwrap()));
        }
        for b in f5.elements() {
            let g = FqPoly::monic(vec![one, f5.neg(b), one]).unwrap();
            assert_eq!(reciprocal(&f5, &g).unwrap(), g);
        }
        assert!(reciprocal(&f5, &FqPoly::x()).is_err());
    }

    #[test]
    fn orbit_examples() {
        let o = orbits(&field(5), 1, DEFAULT_POLY_BUDGET).unwrap();
        assert_eq!(o.iter().filter(|x| x.is_fixed()).count(), 2);
        assert_eq!(o.iter().filter(|x| !x.is_fixed()).count(), 1);
        let o = orbits(&field(3), 2, DEFAULT_POLY_BUDGET).unwrap();
        assert_eq!(o.len(), 2);
        assert_eq!(o.iter().filter(|x| x.is_fixed()).count(), 1);
        for q in [3u64, 5, 7, 9] {
            let fixed = orbits(&field(q), 2, DEFAULT_POLY_BUDGET).unwrap().iter().filter(|x| x.is_fixed()).count();
            assert_eq!(fixed as u64, (q - 1) / 2);
        }
    }

    #[test]
    fn reciprocal_is_involution_and_counts_agree() {
        for q in [3u64, 5, 7, 9] {
            let f = field(q);
            for d in 1..=4u32 {
                let irr = irreducibles(&f, d, DEFAULT_POLY_BUDGET).unwrap();
                assert_eq!(irr.len() as u128, irreducible_count(q, d).unwrap(), "q={q} d={d}");
                for g in &irr {
                    let r = reciprocal(&f, g).unwrap();
                    assert!(irr.contains(&r));
                    assert_eq!(reciprocal(&f, &r).unwrap(), *g);
                }
                let orb = orbits(&f, d, DEFAULT_POLY_BUDGET).unwrap();
                let total: u32 = orb.iter().map(|o| o.size()).sum();
                assert_eq!(total as usize, irr.len());
                let fixed = orb.iter().filter(|o| o.is_fixed()).count() as u128;
                assert_eq!(fixed, self_reciprocal_count(q, d).unwrap(), "q={q} d={d}");
            }
        }
    }

    #[test]
    fn self_reciprocal_count_matches_enumeration_higher_degree() {
        for (q, d) in [(3u64, 6u32), (3, 8), (5, 6), (3, 5)] {
            let orb = orbits(&field(q), d, DEFAULT_POLY_BUDGET).unwrap();
            let fixed = orb.iter().filter(|o| o.is_fixed()).count() as u128;
            assert_eq!(fixed, self_reciprocal_count(q, d).unwrap(), "q={q} d={d}");
        }
    }

    #[test]
    fn necklace_identity() {
        for q in [3u64, 5, 7, 9] {
            for big_d in 1..=4u32 {
                let total: u128 = divisors(big_d as u64)
                    .into_iter()
                    .map(|d| {
                        let with_x = irreducible_count(q, d as u32).unwrap() + u128::from(d == 1);
                        d as u128 * with_x
                    })
                    .sum();
                assert_eq!(total, (q as u128).pow(big_d));
            }
        }
    }

    #[test]
    fn quadratic_extension_is_a_field() {
        for q in [3u64, 5, 7, 9] {
            let ext = QuadraticExtension::new(&field(q)).unwrap();
            let n = q * q - 1;
            let g = ext.generator();
            let mut seen = std::collections::HashSet::new();
            let mut x = ext.exp(0);
            for _ in 0..n {
                assert!(seen.insert(x));
                x = ext.mul(x, g);
            }
            assert_eq!(x, ext.exp(0));
            for f in irreducibles(ext.base(), 2, DEFAULT_POLY_BUDGET).unwrap() {
                let (a, b) = ext.root_logs(&f).unwrap();
                // The roots are Frobenius conjugates.
                assert!((a as u64 * q) % n == b as u64 || (b as u64 * q) % n == a as u64);
            }
        }
    }
}
