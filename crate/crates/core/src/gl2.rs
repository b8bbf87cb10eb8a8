//! Irreducible representations of `GL_2(F_q)`, q odd, and the Stiefel-Whitney
//! vanishing decisions for the self-dual ones.
//!
//! Characters of `F_q^x` and `F_{q^2}^x` are exponents against fixed
//! generators, so `chi(-1) = (-1)^k` for `chi = k` and `theta(-1) = (-1)^j`.
//! The w_2 / w_4 decisions use only `m = (dim - chi(h_1)) / 2` and
//! `chi(h_2)`, with `h_1 = diag(-1, 1)` and `h_2 = -I`:
//!
//! - q = 1 mod 4: w_2 = 0 iff m = 0 mod 4; w_4 = 0 iff C(m/2, 2) and
//!   (dim - chi(h_2))/8 are both even.
//! - q = 3 mod 4: w_2 = 0 iff C(m, 2) is even; w_4 is not decided.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{is_prime, odd_prime_power, prime_power};
use crate::fqpoly::QuadraticExtension;
use crate::green::{Alphabet, GreenLabel};
use crate::partitions::Partition;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Gl2Kind {
    /// `psi o det`.
    OneDim { psi: u64 },
    /// `Ind_B(chi_1 (x) chi_2)`, `chi_1 < chi_2`.
    PrincipalSeries { chi1: u64, chi2: u64 },
    /// `St (x) (psi o det)`.
    SteinbergTwist { psi: u64 },
    /// `pi_theta` for regular `theta`, stored as the smaller of `theta`, `q theta`.
    Cuspidal { theta: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gl2Rep {
    q: u64,
    kind: Gl2Kind,
}

fn sign(k: u64) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl Gl2Rep {
    fn check_q(q: u64) -> Result<()> {
        odd_prime_power(q).map(|_| ()).map_err(|_| Error::InvalidFieldSize(q))
    }

    pub fn one_dim(q: u64, psi: u64) -> Result<Self> {
        Self::check_q(q)?;
        Ok(Gl2Rep { q, kind: Gl2Kind::OneDim { psi: psi % (q - 1) } })
    }

    pub fn principal_series(q: u64, a: u64, b: u64) -> Result<Self> {
        Self::check_q(q)?;
        let (a, b) = (a % (q - 1), b % (q - 1));
        if a == b {
            return Err(Error::InvalidArgument(format!("principal series needs chi_1 != chi_2, got {a} twice")));
        }
        Ok(Self::ps_unchecked(q, a, b))
    }

    fn ps_unchecked(q: u64, a: u64, b: u64) -> Self {
        Gl2Rep { q, kind: Gl2Kind::PrincipalSeries { chi1: a.min(b), chi2: a.max(b) } }
    }

    pub fn steinberg(q: u64, psi: u64) -> Result<Self> {
        Self::check_q(q)?;
        Ok(Gl2Rep { q, kind: Gl2Kind::SteinbergTwist { psi: psi % (q - 1) } })
    }

    pub fn cuspidal(q: u64, theta: u64) -> Result<Self> {
        Self::check_q(q)?;
        let n = q * q - 1;
        let t = theta % n;
        if t.is_multiple_of(q + 1) {
            return Err(Error::InvalidArgument(format!("theta = {t} is not regular (theta = theta^q)")));
        }
        Ok(Self::cusp_unchecked(q, t))
    }

    fn cusp_unchecked(q: u64, t: u64) -> Self {
        let tq = (t as u128 * q as u128 % (q * q - 1) as u128) as u64;
        Gl2Rep { q, kind: Gl2Kind::Cuspidal { theta: t.min(tq) } }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn kind(&self) -> Gl2Kind {
        self.kind
    }

    pub fn dim(&self) -> u64 {
        match self.kind {
            Gl2Kind::OneDim { .. } => 1,
            Gl2Kind::PrincipalSeries { .. } => self.q + 1,
            Gl2Kind::SteinbergTwist { .. } => self.q,
            Gl2Kind::Cuspidal { .. } => self.q - 1,
        }
    }

    /// The contragredient.
    pub fn dual(&self) -> Gl2Rep {
        let q = self.q;
        let m = q - 1;
        let neg = |k: u64| (m - k % m) % m;
        match self.kind {
            Gl2Kind::OneDim { psi } => Gl2Rep { q, kind: Gl2Kind::OneDim { psi: neg(psi) } },
            Gl2Kind::PrincipalSeries { chi1, chi2 } => Self::ps_unchecked(q, neg(chi1), neg(chi2)),
            Gl2Kind::SteinbergTwist { psi } => Gl2Rep { q, kind: Gl2Kind::SteinbergTwist { psi: neg(psi) } },
            Gl2Kind::Cuspidal { theta } => {
                let n = q * q - 1;
                Self::cusp_unchecked(q, (n - theta) % n)
            }
        }
    }

    pub fn is_self_dual(&self) -> bool {
        self.dual() == *self
    }

    /// `(chi(h_1), chi(h_2))`.
    pub fn char_at_involutions(&self) -> (i64, i64) {
        let q = self.q as i64;
        match self.kind {
            Gl2Kind::OneDim { psi } => (sign(psi), 1),
            Gl2Kind::PrincipalSeries { chi1, chi2 } => (sign(chi1) + sign(chi2), (q + 1) * sign(chi1) * sign(chi2)),
            // The Steinberg character is 1 on the split regular element h_1.
            Gl2Kind::SteinbergTwist { psi } => (sign(psi), q),
            Gl2Kind::Cuspidal { theta } => (0, (q - 1) * sign(theta)),
        }
    }

    /// Exponent `nu` with `det pi = nu o det`, where it is known in closed form:
    /// `psi` for `psi o det`, `mu chi_1 chi_2` for principal series and `mu psi`
    /// for Steinberg twists, with `mu` the quadratic character.
    pub fn det_exponent(&self) -> Option<u64> {
        let m = self.q - 1;
        let mu = m / 2;
        match self.kind {
            Gl2Kind::OneDim { psi } => Some(psi),
            Gl2Kind::PrincipalSeries { chi1, chi2 } => Some((mu + chi1 + chi2) % m),
            Gl2Kind::SteinbergTwist { psi } => Some((mu + psi) % m),
            Gl2Kind::Cuspidal { .. } => None,
        }
    }

    pub fn family(&self) -> Family {
        match self.kind {
            Gl2Kind::OneDim { .. } => Family::OneDim,
            Gl2Kind::PrincipalSeries { .. } => Family::PrincipalSeries,
            Gl2Kind::SteinbergTwist { .. } => Family::Steinberg,
            Gl2Kind::Cuspidal { .. } => Family::Cuspidal,
        }
    }

    /// Row of the summary table a self-dual representation belongs to.
    pub fn subcase(&self) -> Result<Subcase> {
        if !self.is_self_dual() {
            return Err(Error::InvalidArgument(format!("{self} is not self-dual")));
        }
        let mu = (self.q - 1) / 2;
        Ok(match self.kind {
            Gl2Kind::OneDim { .. } => Subcase::OneDim,
            Gl2Kind::PrincipalSeries { chi1, chi2 } if chi1 == 0 && chi2 == mu => Subcase::PsTrivialQuadratic,
            Gl2Kind::PrincipalSeries { chi1, .. } if sign(chi1) == 1 => Subcase::PsInversePlus,
            Gl2Kind::PrincipalSeries { .. } => Subcase::PsInverseMinus,
            Gl2Kind::SteinbergTwist { psi: 0 } => Subcase::SteinbergPlain,
            Gl2Kind::SteinbergTwist { .. } => Subcase::SteinbergQuadratic,
            Gl2Kind::Cuspidal { .. } => Subcase::Cuspidal,
        })
    }
}

impl fmt::Display for Gl2Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Gl2Kind::OneDim { psi } => write!(f, "chi_{psi} o det"),
            Gl2Kind::PrincipalSeries { chi1, chi2 } => write!(f, "Ind(chi_{chi1} x chi_{chi2})"),
            Gl2Kind::SteinbergTwist { psi } => write!(f, "St x chi_{psi}"),
            Gl2Kind::Cuspidal { theta } => write!(f, "pi_theta_{theta}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    OneDim,
    PrincipalSeries,
    Steinberg,
    Cuspidal,
}

/// Rows of the summary table, plus the self-dual cases it leaves out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Subcase {
    OneDim,
    /// `{chi, chi^-1}` with `chi(-1) = 1`.
    PsInversePlus,
    /// `{chi, chi^-1}` with `chi(-1) = -1`.
    PsInverseMinus,
    /// `{1, mu}`.
    PsTrivialQuadratic,
    SteinbergPlain,
    SteinbergQuadratic,
    Cuspidal,
}

impl Subcase {
    pub const ALL: [Subcase; 7] = [
        Subcase::OneDim,
        Subcase::PsInversePlus,
        Subcase::PsInverseMinus,
        Subcase::PsTrivialQuadratic,
        Subcase::SteinbergPlain,
        Subcase::SteinbergQuadratic,
        Subcase::Cuspidal,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Subcase::OneDim => "1-dim",
            Subcase::PsInversePlus => "PS {chi,chi^-1}, chi(-1)=1",
            Subcase::PsInverseMinus => "PS {chi,chi^-1}, chi(-1)=-1",
            Subcase::PsTrivialQuadratic => "PS {1,mu}",
            Subcase::SteinbergPlain => "Steinberg",
            Subcase::SteinbergQuadratic => "Steinberg x mu",
            Subcase::Cuspidal => "Cuspidal",
        }
    }
}

/// Every irreducible of `GL_2(F_q)`: `q^2 - 1` of them.
pub fn enumerate_all_reps(q: u64) -> Result<Vec<Gl2Rep>> {
    Gl2Rep::check_q(q)?;
    let m = q - 1;
    let n = q * q - 1;
    let mut out = Vec::new();
    for psi in 0..m {
        out.push(Gl2Rep { q, kind: Gl2Kind::OneDim { psi } });
    }
    for a in 0..m {
        for b in a + 1..m {
            out.push(Gl2Rep { q, kind: Gl2Kind::PrincipalSeries { chi1: a, chi2: b } });
        }
    }
    for psi in 0..m {
        out.push(Gl2Rep { q, kind: Gl2Kind::SteinbergTwist { psi } });
    }
    for t in 0..n {
        if t % (q + 1) != 0 && t < t * q % n {
            out.push(Gl2Rep { q, kind: Gl2Kind::Cuspidal { theta: t } });
        }
    }
    Ok(out)
}

/// The self-dual irreducibles, generated directly: 2 one-dimensional,
/// `(q-3)/2` inverse-pair principal series, the pair `{1, mu}`, 2 Steinberg
/// twists and `(q-1)/2` cuspidals with `theta^{q+1} = 1`.
pub fn enumerate_self_dual_reps(q: u64) -> Result<Vec<Gl2Rep>> {
    Gl2Rep::check_q(q)?;
    let m = q - 1;
    let mu = m / 2;
    let rep = |kind| Gl2Rep { q, kind };
    let mut out = Vec::with_capacity(q as usize + 3);
    out.push(rep(Gl2Kind::OneDim { psi: 0 }));
    out.push(rep(Gl2Kind::OneDim { psi: mu }));
    for k in 1..mu {
        out.push(Gl2Rep::ps_unchecked(q, k, m - k));
    }
    out.push(Gl2Rep::ps_unchecked(q, 0, mu));
    out.push(rep(Gl2Kind::SteinbergTwist { psi: 0 }));
    out.push(rep(Gl2Kind::SteinbergTwist { psi: mu }));
    for j in 1..=(q - 1) / 2 {
        out.push(Gl2Rep::cusp_unchecked(q, j * (q - 1)));
    }
    Ok(out)
}

/// The representation with Green label `mu` at `n = 2`: `x - a -> (2)` is
/// `chi o det`, `x - a -> (1,1)` is `St (x) chi`, `{x - a, x - b} -> (1), (1)` is
/// `Ind(chi_a (x) chi_b)`, and an irreducible quadratic with root `alpha` is
/// `pi_theta`, with `a -> chi_{log a}` and `alpha -> theta_{log alpha}`.
pub fn label_to_rep(alphabet: &Alphabet, ext: &QuadraticExtension, mu: &GreenLabel) -> Result<Gl2Rep> {
    if mu.n() != 2 {
        return Err(Error::InvalidArgument(format!("label has n = {}, expected 2", mu.n())));
    }
    let q = alphabet.q();
    let field = alphabet.field();
    let log_root = |i: usize| -> u64 {
        let root = alphabet.poly(i).linear_root(field).expect("linear");
        field.log(root).expect("nonzero root") as u64
    };
    let two = Partition::row(2);
    match mu.entries() {
        [(i, l)] if alphabet.degree(*i) == 1 && *l == two => Gl2Rep::one_dim(q, log_root(*i)),
        [(i, _)] if alphabet.degree(*i) == 1 => Gl2Rep::steinberg(q, log_root(*i)),
        [(i, _)] => Gl2Rep::cuspidal(q, ext.root_logs(alphabet.poly(*i))?.0 as u64),
        [(i, _), (j, _)] => Gl2Rep::principal_series(q, log_root(*i), log_root(*j)),
        _ => Err(Error::Inconsistent("malformed label".into())),
    }
}

// ---------------------------------------------------------------------------
// Stiefel-Whitney decisions

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum W1Status {
    Trivial,
    Nontrivial,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum W4Status {
    Trivial,
    Nontrivial,
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SwDecision {
    pub w1: W1Status,
    pub w2_trivial: bool,
    pub w4: W4Status,
    pub m_pi: u64,
    pub chi_h1: i64,
    pub chi_h2: i64,
}

fn choose2(m: u64) -> u64 {
    m * m.saturating_sub(1) / 2
}

/// The w_1 / w_2 / w_4 decision for a self-dual representation. Cuspidal w_1
/// is `Unknown` here; see [`crate::oracle`] for the brute-force value.
pub fn sw_decision(rep: &Gl2Rep) -> Result<SwDecision> {
    if !rep.is_self_dual() {
        return Err(Error::InvalidArgument(format!("{rep} is not self-dual")));
    }
    let q = rep.q;
    let dim = rep.dim() as i64;
    let (chi_h1, chi_h2) = rep.char_at_involutions();
    let twice_m = dim - chi_h1;
    if twice_m < 0 || twice_m % 2 != 0 {
        return Err(Error::Inconsistent(format!("m_pi is not a nonnegative integer for {rep}")));
    }
    let m = (twice_m / 2) as u64;
    let (w2_trivial, w4) = if q % 4 == 1 {
        if !m.is_multiple_of(2) {
            return Err(Error::Inconsistent(format!("m_pi = {m} is odd for {rep} with q = 1 mod 4")));
        }
        let top = dim - chi_h2;
        if top != 0 {
            return Err(Error::Inconsistent(format!("dim - chi(h_2) = {top} for {rep}")));
        }
        let w4_trivial = choose2(m / 2).is_multiple_of(2) && (top / 8) % 2 == 0;
        (m.is_multiple_of(4), if w4_trivial { W4Status::Trivial } else { W4Status::Nontrivial })
    } else {
        (choose2(m).is_multiple_of(2), W4Status::NotApplicable)
    };
    let w1 = match rep.det_exponent() {
        Some(0) => W1Status::Trivial,
        Some(_) => W1Status::Nontrivial,
        None => W1Status::Unknown,
    };
    Ok(SwDecision { w1, w2_trivial, w4, m_pi: m, chi_h1, chi_h2 })
}

// ---------------------------------------------------------------------------
// The summary table

/// A cell of the reference table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TableCell {
    Yes,
    No,
    /// Marked `--`: no statement for `q = 3 mod 4`.
    Dash,
    /// The table has no row for this case.
    NotCovered,
}

impl TableCell {
    fn from_bool(b: bool) -> Self {
        if b {
            TableCell::Yes
        } else {
            TableCell::No
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            TableCell::Yes => "Yes",
            TableCell::No => "No",
            TableCell::Dash => "--",
            TableCell::NotCovered => "not in table",
        }
    }
}

/// The published `(w_2 = 0, w_4 = 0)` cells for a subcase at `q`.
pub fn reference_cells(q: u64, subcase: Subcase) -> (TableCell, TableCell) {
    use Subcase::*;
    use TableCell::*;
    let m8 = q % 8;
    let m16 = q % 16;
    if q % 4 == 1 {
        match subcase {
            OneDim => (Yes, Yes),
            PsInversePlus => (TableCell::from_bool(m8 == 1), TableCell::from_bool(m16 == 1)),
            PsInverseMinus => (TableCell::from_bool(m8 == 5), TableCell::from_bool(m16 == 13)),
            SteinbergPlain | SteinbergQuadratic | Cuspidal => (TableCell::from_bool(m8 == 1), TableCell::from_bool(m16 == 1)),
            PsTrivialQuadratic => (NotCovered, NotCovered),
        }
    } else {
        match subcase {
            OneDim => (Yes, Dash),
            PsInversePlus => (TableCell::from_bool(m8 == 3), Dash),
            PsInverseMinus => (TableCell::from_bool(m8 == 7), Dash),
            SteinbergQuadratic => (TableCell::from_bool(m8 == 7), Dash),
            Cuspidal => (No, Dash),
            SteinbergPlain | PsTrivialQuadratic => (NotCovered, NotCovered),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub q: u64,
    pub subcase: Subcase,
    pub count: u64,
    /// Distinct values of `m_pi` in the subcase; empty when the subcase is
    /// empty at this `q`.
    pub m_values: Vec<u64>,
    pub w2_trivial: Option<bool>,
    pub w4: Option<W4Status>,
    pub table_w2: TableCell,
    pub table_w4: TableCell,
}

impl TableRow {
    pub fn in_table(&self) -> bool {
        self.table_w2 != TableCell::NotCovered
    }

    /// `Some(true)` when both computed verdicts match the published cells,
    /// `None` when there is nothing to compare.
    pub fn agrees(&self) -> Option<bool> {
        if !self.in_table() {
            return None;
        }
        let w2 = self.w2_trivial?;
        let w2_ok = TableCell::from_bool(w2) == self.table_w2;
        let w4_ok = matches!(
            (self.w4?, self.table_w4),
            (W4Status::NotApplicable, TableCell::Dash) | (W4Status::Trivial, TableCell::Yes) | (W4Status::Nontrivial, TableCell::No)
        );
        Some(w2_ok && w4_ok)
    }
}

/// One row per subcase, with the decisions and the published cells.
pub fn summary_table(q: u64) -> Result<Vec<TableRow>> {
    let mut by_case: BTreeMap<Subcase, Vec<SwDecision>> = BTreeMap::new();
    for rep in enumerate_self_dual_reps(q)? {
        by_case.entry(rep.subcase()?).or_default().push(sw_decision(&rep)?);
    }
    let mut rows = Vec::new();
    for sc in Subcase::ALL {
        let decisions = by_case.remove(&sc).unwrap_or_default();
        if decisions.windows(2).any(|w| (w[0].w2_trivial, w[0].w4) != (w[1].w2_trivial, w[1].w4)) {
            return Err(Error::Inconsistent(format!("subcase {} is not uniform at q = {q}", sc.label())));
        }
        let (table_w2, table_w4) = reference_cells(q, sc);
        let first = decisions.first();
        let mut m_values: Vec<u64> = decisions.iter().map(|d| d.m_pi).collect();
        m_values.sort_unstable();
        m_values.dedup();
        rows.push(TableRow {
            q,
            subcase: sc,
            count: decisions.len() as u64,
            m_values,
            w2_trivial: first.map(|d| d.w2_trivial),
            w4: first.map(|d| d.w4),
            table_w2,
            table_w4,
        });
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// Densities

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityRecord {
    pub q: u64,
    pub residue_mod8: u64,
    /// `#{pi self-dual : w_2(pi) = 0}` by enumeration.
    pub count_w2_zero: u64,
    /// `|O_q|` by enumeration; always `q + 3`.
    pub total_orthogonal: u64,
    /// The same count from the closed forms of [`w2_zero_closed_form`].
    pub closed_form_count: u64,
    /// The count the published case analysis gives; `None` where it only
    /// says `O(1)`.
    pub published_count: Option<u64>,
    /// `(q-3)/2 + (q-1)/2 + 2 + 2`, the family census as published.
    pub published_total: u64,
}

/// `#{w_2 = 0}` from the m_pi criterion in closed form:
/// `(3q+13)/4`, `(3q+7)/4`, `(q+7)/4`, `(q+13)/4` for `q = 1, 3, 5, 7 mod 8`.
pub fn w2_zero_closed_form(q: u64) -> u64 {
    match q % 8 {
        1 => (3 * q + 13) / 4,
        3 => (3 * q + 7) / 4,
        5 => (q + 7) / 4,
        _ => (q + 13) / 4,
    }
}

/// `q`, `(q-1)/4`, `(q+5)/4`, or nothing, for `q = 1, 5, 3, 7 mod 8`.
pub fn published_w2_zero_count(q: u64) -> Option<u64> {
    match q % 8 {
        1 => Some(q + 2),
        5 => Some((q - 1) / 4),
        3 => Some((q + 5) / 4),
        _ => None,
    }
}

pub fn density(q: u64) -> Result<DensityRecord> {
    let reps = enumerate_self_dual_reps(q)?;
    let mut count = 0u64;
    for rep in &reps {
        if sw_decision(rep)?.w2_trivial {
            count += 1;
        }
    }
    Ok(DensityRecord {
        q,
        residue_mod8: q % 8,
        count_w2_zero: count,
        total_orthogonal: reps.len() as u64,
        closed_form_count: w2_zero_closed_form(q),
        published_count: published_w2_zero_count(q),
        published_total: (q - 3) / 2 + (q - 1) / 2 + 4,
    })
}

/// Odd prime powers `<= x`, ascending, optionally restricted to one class mod 8.
pub fn prime_powers(x: u64, residue_mod8: Option<u64>) -> Result<Vec<u64>> {
    if x < 3 {
        return Err(Error::InvalidArgument(format!("need X >= 3, got {x}")));
    }
    let n = x as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        let mut m = p * p;
        while m <= n {
            composite[m] = true;
            m += p;
        }
        if p == 2 {
            continue;
        }
        let mut pk = p as u64;
        while pk <= x {
            out.push(pk);
            pk = match pk.checked_mul(p as u64) {
                Some(v) => v,
                None => break,
            };
        }
    }
    out.sort_unstable();
    debug_assert!(out.iter().all(|&q| prime_power(q).is_some() && (q > 2)));
    debug_assert!(out.iter().filter(|&&q| is_prime(q)).count() <= out.len());
    Ok(match residue_mod8 {
        Some(a) => out.into_iter().filter(|q| q % 8 == a).collect(),
        None => out,
    })
}

/// Summed counts over a set of `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityAggregate {
    pub residue_mod8: Option<u64>,
    pub fields: u64,
    pub count_w2_zero: u64,
    pub total_orthogonal: u64,
}

impl DensityAggregate {
    pub fn ratio(&self) -> Ratio<u64> {
        Ratio::new(self.count_w2_zero, self.total_orthogonal.max(1))
    }
}

/// Per-q records and the aggregates for the classes 1, 3, 5, 7 mod 8 and
/// overall. Work is split over `jobs` threads; the result does not depend on
/// `jobs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlobalAverage {
    pub x: u64,
    pub records: Vec<DensityRecord>,
    pub classes: Vec<DensityAggregate>,
    pub global: DensityAggregate,
}

pub fn global_average(x: u64, jobs: usize) -> Result<GlobalAverage> {
    let qs = prime_powers(x, None)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let records: Vec<DensityRecord> = pool.install(|| qs.par_iter().map(|&q| density(q)).collect::<Result<Vec<_>>>())?;
    let aggregate = |residue: Option<u64>| {
        let sel: Vec<&DensityRecord> = records.iter().filter(|r| residue.is_none_or(|a| r.residue_mod8 == a)).collect();
        DensityAggregate {
            residue_mod8: residue,
            fields: sel.len() as u64,
            count_w2_zero: sel.iter().map(|r| r.count_w2_zero).sum(),
            total_orthogonal: sel.iter().map(|r| r.total_orthogonal).sum(),
        }
    };
    let classes = [1, 3, 5, 7].into_iter().map(|a| aggregate(Some(a))).collect();
    let global = aggregate(None);
    Ok(GlobalAverage { x, records, classes, global })
}

/// The limits as published: 1, 1/4, 1/4, 0 for `a = 1, 3, 5, 7`, and 3/8.
pub fn published_limits() -> ([(u64, Ratio<u64>); 4], Ratio<u64>) {
    (
        [(1, Ratio::new(1, 1)), (3, Ratio::new(1, 4)), (5, Ratio::new(1, 4)), (7, Ratio::new(0, 1))],
        Ratio::new(3, 8),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fqpoly::{Field, DEFAULT_POLY_BUDGET};
    use crate::green::{enumerate_labels, is_self_dual, DEFAULT_LABEL_BUDGET};
    use std::collections::BTreeSet;

    fn small_qs() -> Vec<u64> {
        prime_powers(50, None).unwrap()
    }

    #[test]
    fn census() {
        for q in small_qs() {
            let all = enumerate_all_reps(q).unwrap();
            assert_eq!(all.len() as u64, q * q - 1);
            let sd = enumerate_self_dual_reps(q).unwrap();
            assert_eq!(sd.len() as u64, q + 3);
            let filtered: BTreeSet<_> = all.iter().filter(|r| r.is_self_dual()).copied().collect();
            assert_eq!(filtered, sd.iter().copied().collect());
            let count = |sc: Subcase| sd.iter().filter(|r| r.subcase().unwrap() == sc).count() as u64;
            assert_eq!(count(Subcase::PsInversePlus) + count(Subcase::PsInverseMinus), (q - 3) / 2);
            assert_eq!(count(Subcase::Cuspidal), (q - 1) / 2);
            assert_eq!(count(Subcase::PsTrivialQuadratic), 1);
        }
        assert!(enumerate_self_dual_reps(4).is_err());
        assert!(matches!(enumerate_self_dual_reps(6), Err(Error::InvalidFieldSize(6))));
    }

    #[test]
    fn q5_examples() {
        let sd = enumerate_self_dual_reps(5).unwrap();
        assert_eq!(sd.len(), 8);
        let ps_inverse = sd.iter().filter(|r| matches!(r.subcase().unwrap(), Subcase::PsInversePlus | Subcase::PsInverseMinus)).count();
        assert_eq!(ps_inverse, 1);
        assert_eq!(sd.iter().filter(|r| r.family() == Family::Cuspidal).count(), 2);
        let ps = Gl2Rep::principal_series(5, 1, 3).unwrap();
        assert_eq!(ps.char_at_involutions(), (-2, 6));
        assert_eq!(Gl2Rep::one_dim(5, 0).unwrap().char_at_involutions(), (1, 1));
    }

    #[test]
    fn square_sum_and_count() {
        for q in prime_powers(13, None).unwrap() {
            let all = enumerate_all_reps(q).unwrap();
            let s: u64 = all.iter().map(|r| r.dim() * r.dim()).sum();
            assert_eq!(s, (q * q - 1) * (q * q - q));
            let formula = (q - 1) + (q - 1) * (q - 2) / 2 * (q + 1) * (q + 1) + (q - 1) * q * q + q * (q - 1) / 2 * (q - 1) * (q - 1);
            assert_eq!(s, formula);
        }
    }

    #[test]
    fn m_pi_even_and_top_term_zero_for_q_1_mod_4() {
        for q in small_qs().into_iter().filter(|q| q % 4 == 1) {
            for rep in enumerate_self_dual_reps(q).unwrap() {
                let d = sw_decision(&rep).unwrap();
                assert_eq!(d.m_pi % 2, 0);
                assert_eq!(rep.dim() as i64 - d.chi_h2, 0);
            }
        }
    }

    #[test]
    fn cross_term_even_for_q_3_mod_4() {
        // The v_1 v_2 coefficient (dim - chi(h_2))/4 of w_2 restricted to the
        // Klein four-group is even, so C(m, 2) decides w_2 alone.
        for q in small_qs().into_iter().filter(|q| q % 4 == 3) {
            for rep in enumerate_self_dual_reps(q).unwrap() {
                let (_, h2) = rep.char_at_involutions();
                let top = rep.dim() as i64 - h2;
                assert_eq!(top % 8, 0, "{rep} at q={q}");
            }
        }
    }

    #[test]
    fn decision_examples() {
        let pt = Gl2Rep::principal_series(7, 0, 3).unwrap();
        let d = sw_decision(&pt).unwrap();
        assert_eq!(d.m_pi, 4);
        assert!(d.w2_trivial);
        assert_eq!(d.w1, W1Status::Trivial);
        let cusp = Gl2Rep::cuspidal(7, 6).unwrap();
        assert!(!sw_decision(&cusp).unwrap().w2_trivial);
        assert_eq!(sw_decision(&cusp).unwrap().w1, W1Status::Unknown);
        // The m_pi criterion at q = 17 leaves w_2 != 0 for chi(-1) = -1.
        let minus = Gl2Rep::principal_series(17, 1, 15).unwrap();
        assert!(!sw_decision(&minus).unwrap().w2_trivial);
        let plus = Gl2Rep::principal_series(17, 2, 14).unwrap();
        assert!(sw_decision(&plus).unwrap().w2_trivial);
        assert!(sw_decision(&Gl2Rep::one_dim(7, 1).unwrap()).is_err());
        assert_eq!(sw_decision(&Gl2Rep::steinberg(7, 3).unwrap()).unwrap().w1, W1Status::Trivial);
        assert_eq!(sw_decision(&Gl2Rep::steinberg(7, 0).unwrap()).unwrap().w1, W1Status::Nontrivial);
    }

    #[test]
    fn table_examples() {
        let row = |q: u64, sc: Subcase| summary_table(q).unwrap().into_iter().find(|r| r.subcase == sc).unwrap();
        let st = row(17, Subcase::SteinbergPlain);
        assert_eq!((st.w2_trivial, st.w4), (Some(true), Some(W4Status::Trivial)));
        assert_eq!(st.agrees(), Some(true));
        let ps = row(13, Subcase::PsInverseMinus);
        assert_eq!((ps.w2_trivial, ps.w4), (Some(true), Some(W4Status::Trivial)));
        assert_eq!(ps.agrees(), Some(true));
        let cusp = row(7, Subcase::Cuspidal);
        assert_eq!(cusp.w2_trivial, Some(false));
        assert_eq!(cusp.agrees(), Some(true));
        let extra = row(7, Subcase::PsTrivialQuadratic);
        assert!(!extra.in_table());
        assert_eq!(extra.w2_trivial, Some(true));
        // At q = 5 there is no inverse pair with chi(-1) = 1.
        assert_eq!(row(5, Subcase::PsInversePlus).w2_trivial, None);
    }

    #[test]
    fn density_closed_forms() {
        for q in prime_powers(2000, None).unwrap() {
            let r = density(q).unwrap();
            assert_eq!(r.count_w2_zero, r.closed_form_count, "q={q}");
            assert_eq!(r.total_orthogonal, q + 3);
            assert_eq!(r.published_total, q + 2);
        }
        // Enumeration against the published case counts at 17, 13, 11.
        assert_eq!(density(17).unwrap().count_w2_zero, 16);
        assert_eq!(density(17).unwrap().published_count, Some(19));
        assert_eq!(density(11).unwrap().count_w2_zero, 10);
        assert_eq!(density(13).unwrap().count_w2_zero, 5);
        assert_eq!(density(13).unwrap().published_count, Some(3));
        assert_eq!(density(11).unwrap().published_count, Some(4));
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(prime_powers(30, None).unwrap(), vec![3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29]);
        assert_eq!(prime_powers(10, Some(1)).unwrap(), vec![9]);
        assert_eq!(prime_powers(3, None).unwrap(), vec![3]);
        assert!(prime_powers(2, None).is_err());
    }

    #[test]
    fn global_average_is_job_independent() {
        let a = global_average(500, 1).unwrap();
        let b = global_average(500, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.global.fields, prime_powers(500, None).unwrap().len() as u64);
    }

    #[test]
    fn labels_biject_with_representations() {
        for q in [3u64, 5, 7, 9, 11, 13] {
            let field = Field::new(q).unwrap();
            let ext = QuadraticExtension::new(&field).unwrap();
            let alphabet = Alphabet::from_field(field, 2, DEFAULT_POLY_BUDGET).unwrap();
            let labels = enumerate_labels(&alphabet, 2, DEFAULT_LABEL_BUDGET).unwrap();
            let mut images = BTreeSet::new();
            let mut self_dual = BTreeSet::new();
            for mu in &labels {
                let rep = label_to_rep(&alphabet, &ext, mu).unwrap();
                assert_eq!(num_bigint::BigUint::from(rep.dim()), crate::green::exact_degree(&alphabet, mu).unwrap());
                assert_eq!(is_self_dual(&alphabet, mu), rep.is_self_dual());
                images.insert(rep);
                if rep.is_self_dual() {
                    self_dual.insert(rep);
                }
            }
            assert_eq!(images, enumerate_all_reps(q).unwrap().into_iter().collect());
            assert_eq!(self_dual, enumerate_self_dual_reps(q).unwrap().into_iter().collect());
        }
    }
}
