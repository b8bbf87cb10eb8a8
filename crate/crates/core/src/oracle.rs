//! Brute-force character theory of `GL_2(F_q)` for small `q`.
//!
//! Characters are built from scratch as induced characters with values in
//! `Z[zeta_N]`, `N = p (q^2 - 1)`, and are used to check the closed forms in
//! [`crate::gl2`]: degrees, values at the involutions, self-duality,
//! Frobenius-Schur indicators, determinants and Stiefel-Whitney classes of
//! the restriction to the 2-part of the diagonal torus.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::cyclotomic::{Cyc, CyclotomicRing};
use crate::fqpoly::{Field, FqElem, QuadraticExtension};
use crate::gl2::{self, Gl2Kind, Gl2Rep, SwDecision, W1Status, W4Status};
use crate::{Error, Result};

/// Largest `q` the oracle accepts; `|GL_2(F_9)| = 5760`.
pub const MAX_ORACLE_Q: u64 = 9;

/// `[[a, b], [c, d]]`.
type Mat = [FqElem; 4];

/// A class function, indexed by conjugacy class.
pub type ClassFunction = Vec<Cyc>;

/// A linear character of a subgroup: `exps[g] = Some(k)` means `g` is in the
/// subgroup with value `zeta_N^k`.
struct LinearChar {
    exps: Vec<Option<u64>>,
    order: u64,
}

pub struct Oracle {
    field: Field,
    ext: QuadraticExtension,
    q: u64,
    ring: Arc<CyclotomicRing>,
    elems: Vec<Mat>,
    index: Vec<u32>,
    inverse: Vec<u32>,
    class_of: Vec<u32>,
    class_reps: Vec<u32>,
    class_sizes: Vec<u64>,
}

impl Oracle {
    pub fn new(q: u64) -> Result<Self> {
        if q > MAX_ORACLE_Q {
            return Err(Error::BudgetExceeded { what: "oracle field size".into(), needed: q as u128, budget: MAX_ORACLE_Q as u128 });
        }
        let field = Field::new(q)?;
        let ext = QuadraticExtension::new(&field)?;
        let p = field.characteristic();
        let ring = CyclotomicRing::new((p * (q * q - 1)) as usize)?;
        let qs = q as u32;
        let all: Vec<FqElem> = field.elements().collect();
        let mut elems = Vec::new();
        let mut index = vec![u32::MAX; (qs * qs * qs * qs) as usize];
        for &a in &all {
            for &b in &all {
                for &c in &all {
                    for &d in &all {
                        let m = [a, b, c, d];
                        if !det(&field, &m).is_zero() {
                            index[code(q, &m)] = elems.len() as u32;
                            elems.push(m);
                        }
                    }
                }
            }
        }
        let mut oracle = Oracle {
            field,
            ext,
            q,
            ring,
            elems,
            index,
            inverse: Vec::new(),
            class_of: Vec::new(),
            class_reps: Vec::new(),
            class_sizes: Vec::new(),
        };
        oracle.inverse = (0..oracle.elems.len()).map(|i| oracle.idx(&oracle.inv_mat(&oracle.elems[i]))).collect();
        oracle.build_classes();
        Ok(oracle)
    }

    fn idx(&self, m: &Mat) -> u32 {
        self.index[code(self.q, m)]
    }

    fn mul_mat(&self, x: &Mat, y: &Mat) -> Mat {
        let f = &self.field;
        let dot = |a: FqElem, b: FqElem, c: FqElem, d: FqElem| f.add(f.mul(a, b), f.mul(c, d));
        [dot(x[0], y[0], x[1], y[2]), dot(x[0], y[1], x[1], y[3]), dot(x[2], y[0], x[3], y[2]), dot(x[2], y[1], x[3], y[3])]
    }

    fn inv_mat(&self, x: &Mat) -> Mat {
        let f = &self.field;
        let di = f.inv(det(f, x)).expect("invertible");
        [f.mul(di, x[3]), f.neg(f.mul(di, x[1])), f.neg(f.mul(di, x[2])), f.mul(di, x[0])]
    }

    fn mul(&self, i: u32, j: u32) -> u32 {
        self.idx(&self.mul_mat(&self.elems[i as usize], &self.elems[j as usize]))
    }

    fn build_classes(&mut self) {
        let n = self.elems.len();
        let mut class_of = vec![u32::MAX; n];
        for g in 0..n as u32 {
            if class_of[g as usize] != u32::MAX {
                continue;
            }
            let c = self.class_reps.len() as u32;
            let mut size = 0u64;
            for x in 0..n as u32 {
                let h = self.mul(self.mul(x, g), self.inverse[x as usize]);
                if class_of[h as usize] == u32::MAX {
                    class_of[h as usize] = c;
                    size += 1;
                }
            }
            self.class_reps.push(g);
            self.class_sizes.push(size);
        }
        self.class_of = class_of;
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn group_order(&self) -> u64 {
        self.elems.len() as u64
    }

    pub fn class_count(&self) -> usize {
        self.class_reps.len()
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }

    fn n(&self) -> u64 {
        self.ring.order() as u64
    }

    fn class_of_mat(&self, m: &Mat) -> usize {
        self.class_of[self.idx(m) as usize] as usize
    }

    fn diag(&self, a: FqElem, d: FqElem) -> Mat {
        [a, self.field.zero(), self.field.zero(), d]
    }

    /// `zeta_N`-exponent of `chi_k(a)`, `a` in `F_q^x`.
    fn base_exp(&self, k: u64, a: FqElem) -> u64 {
        let m = self.q - 1;
        let l = self.field.log(a).expect("unit") as u64;
        (k % m) * l % m * (self.n() / m)
    }

    /// `zeta_N`-exponent of `theta_j(alpha)`, `alpha` in `F_{q^2}^x`.
    fn ext_exp(&self, j: u64, alpha: (FqElem, FqElem)) -> u64 {
        let m = self.q * self.q - 1;
        let l = self.ext.log(alpha).expect("unit") as u64;
        (j % m) * l % m * (self.n() / m)
    }

    /// `zeta_N`-exponent of `psi(x) = zeta_p^{Tr x}`.
    fn additive_exp(&self, x: FqElem) -> u64 {
        let f = &self.field;
        let p = f.characteristic();
        let mut t = f.zero();
        let mut y = x;
        for _ in 0..f.degree() {
            t = f.add(t, y);
            y = f.pow(y, p);
        }
        debug_assert!((t.index() as u64) < p);
        t.index() as u64 * (self.n() / p)
    }

    fn subgroup(&self, member: impl Fn(&Mat) -> Option<u64>) -> LinearChar {
        let exps: Vec<Option<u64>> = self.elems.iter().map(member).collect();
        let order = exps.iter().filter(|e| e.is_some()).count() as u64;
        LinearChar { exps, order }
    }

    /// `chi_1 (x) chi_2` on the upper triangular Borel subgroup.
    fn borel_char(&self, k1: u64, k2: u64) -> LinearChar {
        let n = self.n();
        self.subgroup(|m| m[2].is_zero().then(|| (self.base_exp(k1, m[0]) + self.base_exp(k2, m[3])) % n))
    }

    /// `theta|_Z (x) psi` on `ZU = {[[a, b], [0, a]]}`.
    fn zu_char(&self, j: u64) -> LinearChar {
        let f = &self.field;
        let n = self.n();
        self.subgroup(|m| {
            (m[2].is_zero() && m[0] == m[3]).then(|| {
                let b_over_a = f.mul(m[1], f.inv(m[0]).expect("unit"));
                (self.ext_exp(j, (m[0], f.zero())) + self.additive_exp(b_over_a)) % n
            })
        })
    }

    /// Embeds `a + b y` as multiplication on the basis `1, y`.
    fn ext_matrix(&self, alpha: (FqElem, FqElem)) -> Mat {
        let f = &self.field;
        let (c0, c1) = self.ext.modulus();
        let (a, b) = alpha;
        [a, f.neg(f.mul(b, c0)), b, f.sub(a, f.mul(b, c1))]
    }

    /// `theta` on the nonsplit torus `F_{q^2}^x`.
    fn nonsplit_char(&self, j: u64) -> LinearChar {
        let mut exps = vec![None; self.elems.len()];
        for alpha in self.ext.units() {
            exps[self.idx(&self.ext_matrix(alpha)) as usize] = Some(self.ext_exp(j, alpha));
        }
        let order = self.q * self.q - 1;
        LinearChar { exps, order }
    }

    fn induce(&self, sigma: &LinearChar) -> Result<ClassFunction> {
        let n = self.n() as usize;
        let mut counts = vec![vec![0i64; n]; self.class_count()];
        for (g, e) in sigma.exps.iter().enumerate() {
            if let Some(e) = e {
                counts[self.class_of[g] as usize][*e as usize] += 1;
            }
        }
        let g_order = self.group_order() as i128;
        counts
            .iter()
            .zip(&self.class_sizes)
            .map(|(c, &size)| Cyc::from_root_counts(&self.ring, c).scale(g_order / size as i128).div_exact(sigma.order as i128))
            .collect()
    }

    fn linear(&self, psi: u64) -> ClassFunction {
        self.class_reps
            .iter()
            .map(|&g| Cyc::root(&self.ring, self.base_exp(psi, det(&self.field, &self.elems[g as usize])) as i64))
            .collect()
    }

    /// The character of `rep`, built by induction.
    pub fn character(&self, rep: &Gl2Rep) -> Result<ClassFunction> {
        self.check_q(rep)?;
        Ok(match rep.kind() {
            Gl2Kind::OneDim { psi } => self.linear(psi),
            Gl2Kind::PrincipalSeries { chi1, chi2 } => self.induce(&self.borel_char(chi1, chi2))?,
            Gl2Kind::SteinbergTwist { psi } => sub(&self.induce(&self.borel_char(psi, psi))?, &self.linear(psi)),
            Gl2Kind::Cuspidal { theta } => sub(&self.induce(&self.zu_char(theta))?, &self.induce(&self.nonsplit_char(theta))?),
        })
    }

    fn check_q(&self, rep: &Gl2Rep) -> Result<()> {
        if rep.q() != self.q {
            return Err(Error::SizeMismatch { expected: self.q, found: rep.q() });
        }
        Ok(())
    }

    /// `<a, b>`, required to be an integer.
    pub fn inner(&self, a: &ClassFunction, b: &ClassFunction) -> Result<i128> {
        let mut s = Cyc::zero(&self.ring);
        for ((x, y), &size) in a.iter().zip(b).zip(&self.class_sizes) {
            s = s.add(&x.mul(&y.conj()).scale(size as i128));
        }
        s.div_exact(self.group_order() as i128)?
            .to_integer()
            .ok_or_else(|| Error::Inconsistent("inner product is not rational".into()))
    }

    /// `(1/|G|) sum_g chi(g^2)`.
    pub fn frobenius_schur(&self, chi: &ClassFunction) -> Result<i128> {
        let mut s = Cyc::zero(&self.ring);
        for (c, &g) in self.class_reps.iter().enumerate() {
            let sq = self.class_of[self.mul(g, g) as usize] as usize;
            s = s.add(&chi[sq].scale(self.class_sizes[c] as i128));
        }
        s.div_exact(self.group_order() as i128)?
            .to_integer()
            .ok_or_else(|| Error::Inconsistent("indicator is not rational".into()))
    }

    /// `chi(diag(-1, 1))` and `chi(-I)`.
    pub fn involution_values(&self, chi: &ClassFunction) -> Result<(i64, i64)> {
        let f = &self.field;
        let (m1, one) = (f.neg(f.one()), f.one());
        let h1 = self.class_of_mat(&self.diag(m1, one));
        let h2 = self.class_of_mat(&self.diag(m1, m1));
        let int = |c: &Cyc| c.to_integer().map(|v| v as i64).ok_or_else(|| Error::Inconsistent("non-integral value at an involution".into()));
        Ok((int(&chi[h1])?, int(&chi[h2])?))
    }

    pub fn degree(&self, chi: &ClassFunction) -> Result<i128> {
        let id = self.class_of_mat(&self.diag(self.field.one(), self.field.one()));
        chi[id].to_integer().ok_or_else(|| Error::Inconsistent("degree is not an integer".into()))
    }

    /// `nu` with `det rho = chi_nu o det`, from eigenvalue multiplicities of
    /// `rho(t)` for `t = diag(gamma, 1)`, `gamma` the field generator.
    pub fn det_exponent_eigen(&self, chi: &ClassFunction) -> Result<u64> {
        let f = &self.field;
        let o = self.q - 1;
        let step = self.n() / o;
        let mut total = 0i128;
        for k in 0..o {
            let mut s = Cyc::zero(&self.ring);
            for i in 0..o {
                let t = self.diag(f.exp(i), f.one());
                let twist = Cyc::root(&self.ring, -((k * i % o * step) as i64));
                s = s.add(&chi[self.class_of_mat(&t)].mul(&twist));
            }
            let mult = s.div_exact(o as i128)?.to_integer().ok_or_else(|| Error::Inconsistent("eigenvalue multiplicity is not an integer".into()))?;
            total += mult * k as i128;
        }
        Ok(total.rem_euclid(o as i128) as u64)
    }

    /// `det Ind_H(sigma)` at `t`, as a `zeta_N` exponent, from the monomial
    /// matrix: `sgn(perm) * prod sigma(h_i)` with `t x_i = x_{perm i} h_i`.
    fn induced_det_exp(&self, sigma: &LinearChar, t: u32) -> u64 {
        let n = self.n();
        let g = self.elems.len();
        let mut coset = vec![u32::MAX; g];
        let mut reps = Vec::new();
        for x in 0..g as u32 {
            if coset[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            for (h, e) in sigma.exps.iter().enumerate() {
                if e.is_some() {
                    coset[self.mul(x, h as u32) as usize] = id;
                }
            }
            reps.push(x);
        }
        let mut perm = Vec::with_capacity(reps.len());
        let mut exp = 0u64;
        for &x in &reps {
            let y = self.mul(t, x);
            let j = coset[y as usize];
            let h = self.mul(self.inverse[reps[j as usize] as usize], y);
            exp = (exp + sigma.exps[h as usize].expect("coset representative")) % n;
            perm.push(j as usize);
        }
        let mut seen = vec![false; perm.len()];
        let mut cycles = 0;
        for i in 0..perm.len() {
            if !seen[i] {
                cycles += 1;
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    j = perm[j];
                }
            }
        }
        if (perm.len() - cycles) % 2 == 1 {
            exp = (exp + n / 2) % n;
        }
        exp
    }

    /// `nu` with `det rho = chi_nu o det`, from monomial matrices of the
    /// induced representations.
    pub fn det_exponent_monomial(&self, rep: &Gl2Rep) -> Result<u64> {
        self.check_q(rep)?;
        let f = &self.field;
        let o = self.q - 1;
        let step = self.n() / o;
        let t = self.idx(&self.diag(f.generator(), f.one()));
        let exp = |sigma: LinearChar| -> Result<i128> {
            let e = self.induced_det_exp(&sigma, t);
            if !e.is_multiple_of(step) {
                return Err(Error::Inconsistent("determinant is not a character of F_q^x".into()));
            }
            Ok((e / step) as i128)
        };
        let nu = match rep.kind() {
            Gl2Kind::OneDim { psi } => psi as i128,
            Gl2Kind::PrincipalSeries { chi1, chi2 } => exp(self.borel_char(chi1, chi2))?,
            Gl2Kind::SteinbergTwist { psi } => exp(self.borel_char(psi, psi))? - psi as i128,
            Gl2Kind::Cuspidal { theta } => exp(self.zu_char(theta))? - exp(self.nonsplit_char(theta))?,
        };
        Ok(nu.rem_euclid(o as i128) as u64)
    }

    /// Stiefel-Whitney classes of the restriction to `D`, the 2-part of the
    /// diagonal torus.
    pub fn sw_restriction(&self, chi: &ClassFunction) -> Result<SwRestriction> {
        let f = &self.field;
        let two_part = 1u64 << (self.q - 1).trailing_zeros();
        let s = (self.q - 1) / two_part;
        let step = self.n() / two_part;
        let d_order = (two_part * two_part) as i128;
        let mut mults = BTreeMap::new();
        for a1 in 0..two_part {
            for a2 in 0..two_part {
                let mut acc = Cyc::zero(&self.ring);
                for i in 0..two_part {
                    for j in 0..two_part {
                        let d = self.diag(f.exp(s * i), f.exp(s * j));
                        let twist = Cyc::root(&self.ring, -(((a1 * i + a2 * j) % two_part * step) as i64));
                        acc = acc.add(&chi[self.class_of_mat(&d)].mul(&twist));
                    }
                }
                let m = acc.div_exact(d_order)?.to_integer().ok_or_else(|| Error::Inconsistent("restriction multiplicity is not an integer".into()))?;
                if m < 0 {
                    return Err(Error::Inconsistent("restriction of a character has a negative multiplicity".into()));
                }
                if m > 0 {
                    mults.insert((a1, a2), m as u64);
                }
            }
        }
        SwRestriction::from_multiplicities(two_part, &mults)
    }

    /// [`gl2::sw_decision`] with the cuspidal w_1 filled in by the monomial
    /// determinant.
    pub fn decide(&self, rep: &Gl2Rep) -> Result<SwDecision> {
        let mut d = gl2::sw_decision(rep)?;
        if d.w1 == W1Status::Unknown {
            d.w1 = if self.det_exponent_monomial(rep)? == 0 { W1Status::Trivial } else { W1Status::Nontrivial };
        }
        Ok(d)
    }

    /// Runs every cross-check for every irreducible at this `q`.
    pub fn verify(&self, pairwise: bool) -> Result<OracleReport> {
        let reps = gl2::enumerate_all_reps(self.q)?;
        let mut chars = BTreeMap::new();
        for rep in &reps {
            chars.insert(*rep, self.character(rep)?);
        }
        let mut report = OracleReport { q: self.q, reps: reps.len(), mismatches: Vec::new(), self_dual: Vec::new(), pairwise_checked: pairwise };
        let mut fail = |msg: String| report.mismatches.push(msg);
        for rep in &reps {
            let chi = &chars[rep];
            if self.degree(chi)? != rep.dim() as i128 {
                fail(format!("{rep}: degree"));
            }
            if self.inner(chi, chi)? != 1 {
                fail(format!("{rep}: not irreducible"));
            }
            if self.involution_values(chi)? != rep.char_at_involutions() {
                fail(format!("{rep}: involution values {:?} vs {:?}", self.involution_values(chi)?, rep.char_at_involutions()));
            }
            let conj: ClassFunction = chi.iter().map(Cyc::conj).collect();
            if conj != chars[&rep.dual()] {
                fail(format!("{rep}: conjugate is not the character of {}", rep.dual()));
            }
            let nu_eigen = self.det_exponent_eigen(chi)?;
            let nu_mono = self.det_exponent_monomial(rep)?;
            if nu_eigen != nu_mono {
                fail(format!("{rep}: det exponents {nu_eigen} (eigenvalues) vs {nu_mono} (monomial)"));
            }
            if let Some(nu) = rep.det_exponent() {
                if nu != nu_mono {
                    fail(format!("{rep}: closed-form det exponent {nu} vs {nu_mono}"));
                }
            }
        }
        if pairwise {
            let list: Vec<_> = reps.iter().collect();
            for (i, a) in list.iter().enumerate() {
                for b in &list[i + 1..] {
                    if self.inner(&chars[a], &chars[b])? != 0 {
                        fail(format!("{a} and {b} are not orthogonal"));
                    }
                }
            }
        }
        let expected: BTreeSet<Gl2Rep> = gl2::enumerate_self_dual_reps(self.q)?.into_iter().collect();
        for rep in &reps {
            let chi = &chars[rep];
            let real = chi.iter().all(|c| *c == c.conj());
            if real != expected.contains(rep) {
                fail(format!("{rep}: self-duality"));
            }
            if !real {
                continue;
            }
            let fs = self.frobenius_schur(chi)?;
            if fs != 1 {
                fail(format!("{rep}: Frobenius-Schur indicator {fs}"));
            }
            let decision = self.decide(rep)?;
            let restricted = self.sw_restriction(chi)?;
            if restricted.w2_zero != decision.w2_trivial {
                fail(format!("{rep}: w_2 of the torus restriction is {} zero, decision says {}", if restricted.w2_zero { "" } else { "not" }, decision.w2_trivial));
            }
            if decision.w4 != W4Status::NotApplicable && restricted.w4_zero != (decision.w4 == W4Status::Trivial) {
                fail(format!("{rep}: w_4 of the torus restriction disagrees with the decision"));
            }
            report.self_dual.push(SelfDualCheck { rep: rep.to_string(), kind: rep.kind(), decision, restricted, frobenius_schur: fs });
        }
        Ok(report)
    }
}

fn code(q: u64, m: &Mat) -> usize {
    let q = q as usize;
    ((m[0].index() as usize * q + m[1].index() as usize) * q + m[2].index() as usize) * q + m[3].index() as usize
}

fn det(f: &Field, m: &Mat) -> FqElem {
    f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2]))
}

fn sub(a: &ClassFunction, b: &ClassFunction) -> ClassFunction {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

/// Total Stiefel-Whitney class of a real representation of
/// `D = C_{2^a} x C_{2^a}`, truncated to degree 4.
///
/// `H^*(C_2; F_2) = F_2[v]` with `|v| = 1`; for `2^a >= 4`,
/// `H^*(C_{2^a}; F_2) = F_2[u, t]/(u^2)` with `|u| = 1`, `|t| = 2`.
/// A real character contributes `1 + u`-terms, a pair `{lambda, lambda-bar}`
/// contributes `1 + c_1(lambda) mod 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwRestriction {
    pub two_part: u64,
    pub w1_zero: bool,
    pub w2_zero: bool,
    pub w4_zero: bool,
}

/// Monomial `u_1^e0 u_2^e1 t_1^e2 t_2^e3`.
type Monomial = [u8; 4];

fn mono_degree(m: &Monomial) -> u8 {
    m[0] + m[1] + 2 * m[2] + 2 * m[3]
}

fn poly_mul(a: &BTreeSet<Monomial>, b: &BTreeSet<Monomial>, u_squared_zero: bool) -> BTreeSet<Monomial> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            let m = [x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]];
            if mono_degree(&m) > 4 || (u_squared_zero && (m[0] > 1 || m[1] > 1)) {
                continue;
            }
            if !out.insert(m) {
                out.remove(&m);
            }
        }
    }
    out
}

impl SwRestriction {
    fn from_multiplicities(two_part: u64, mults: &BTreeMap<(u64, u64), u64>) -> Result<Self> {
        let neg = |a: u64| (two_part - a) % two_part;
        let u_squared_zero = two_part >= 4;
        let half = two_part / 2;
        let mut total: BTreeSet<Monomial> = [[0, 0, 0, 0]].into();
        for (&(a1, a2), &m) in mults {
            let dual = (neg(a1), neg(a2));
            if mults.get(&dual) != Some(&m) {
                return Err(Error::Inconsistent("restriction is not self-dual".into()));
            }
            let mut factor: BTreeSet<Monomial> = [[0, 0, 0, 0]].into();
            if dual == (a1, a2) {
                for (var, a) in [(0, a1), (1, a2)] {
                    if a == half && half > 0 {
                        let mut v = [0u8; 4];
                        v[var] = 1;
                        factor.insert(v);
                    }
                }
            } else if (a1, a2) < dual {
                for (var, a) in [(2, a1), (3, a2)] {
                    if a % 2 == 1 {
                        let mut v = [0u8; 4];
                        v[var] = 1;
                        factor.insert(v);
                    }
                }
            } else {
                continue;
            }
            for _ in 0..m {
                total = poly_mul(&total, &factor, u_squared_zero);
            }
        }
        let zero_in = |d: u8| !total.iter().any(|m| mono_degree(m) == d);
        Ok(SwRestriction { two_part, w1_zero: zero_in(1), w2_zero: zero_in(2), w4_zero: zero_in(4) })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SelfDualCheck {
    pub rep: String,
    pub kind: Gl2Kind,
    pub decision: SwDecision,
    pub restricted: SwRestriction,
    pub frobenius_schur: i128,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub q: u64,
    pub reps: usize,
    pub mismatches: Vec<String>,
    pub self_dual: Vec<SelfDualCheck>,
    pub pairwise_checked: bool,
}

impl OracleReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}
