//! End-to-end acceptance checks, one function per criterion. Tolerances and
//! time limits live in [`Tolerances`]; nothing here is adjusted to make a
//! check pass.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::commands::{self, density_verdicts, DensityTolerances};
use crate::fqpoly::DEFAULT_POLY_BUDGET;
use crate::gl2::{self, Gl2Kind, Subcase};
use crate::green::{self, Alphabet, DEFAULT_LABEL_BUDGET};
use crate::oracle::Oracle;
use crate::partitions::{
    chiral_count_brute, chiral_count_closed_form, enumerate_partitions, valuation_statistic, MnEvaluator, Threshold,
};
use crate::report::Format;
use crate::valuations::v2_qpow_minus_one;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub density: DensityTolerances,
    pub density_x: u64,
    /// Second density run when the first misses; `None` disables it.
    pub density_fallback_x: Option<u64>,
    pub census_per_q: Duration,
    pub square_sum: Duration,
    pub oracle_q7: Duration,
    pub density_time: Duration,
    pub determinism_x: u64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            density: DensityTolerances::default(),
            density_x: 10_000,
            density_fallback_x: Some(100_000),
            census_per_q: Duration::from_secs(1),
            square_sum: Duration::from_secs(10),
            oracle_q7: Duration::from_secs(120),
            density_time: Duration::from_secs(60),
            determinism_x: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {:>2} {}: {}", if self.pass { "PASS" } else { "FAIL" }, self.id, self.name, self.detail)
    }
}

fn result(id: u8, name: &'static str, pass: bool, detail: impl Into<String>) -> CriterionResult {
    CriterionResult { id, name, pass, detail: detail.into() }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

/// `|X_2| = q^2 - 1` by enumeration.
pub fn irreducible_census(tol: &Tolerances) -> Result<CriterionResult> {
    let mut fails = Vec::new();
    let mut slowest = Duration::ZERO;
    for q in [3u64, 5, 7, 9, 13] {
        let t = Instant::now();
        let alphabet = Alphabet::new(q, 2, DEFAULT_POLY_BUDGET)?;
        let count = green::enumerate_labels(&alphabet, 2, DEFAULT_LABEL_BUDGET)?.len() as u64;
        let el = t.elapsed();
        slowest = slowest.max(el);
        if count != q * q - 1 || el > tol.census_per_q {
            fails.push(format!("q={q}: {count} labels in {}", secs(el)));
        }
    }
    let detail = if fails.is_empty() { format!("q in {{3,5,7,9,13}}, slowest {}", secs(slowest)) } else { fails.join("; ") };
    Ok(result(1, "irreducible census", fails.is_empty(), detail))
}

/// `sum d_mu^2 = |GL_n(F_q)|` with exact degrees.
pub fn sum_of_squares(tol: &Tolerances) -> Result<CriterionResult> {
    let t = Instant::now();
    let mut fails = Vec::new();
    for (q, n) in [(3u64, 2u32), (5, 2), (3, 3)] {
        let alphabet = Alphabet::new(q, n, DEFAULT_POLY_BUDGET)?;
        let mut total = BigUint::zero();
        for mu in green::enumerate_labels(&alphabet, n, DEFAULT_LABEL_BUDGET)? {
            let d = green::exact_degree(&alphabet, &mu)?;
            total += &d * &d;
        }
        if total != green::gl_order(q, n) {
            fails.push(format!("(q,n)=({q},{n}): {total} vs {}", green::gl_order(q, n)));
        }
    }
    let el = t.elapsed();
    let pass = fails.is_empty() && el <= tol.square_sum;
    let detail = if fails.is_empty() { format!("(3,2), (5,2), (3,3) exact in {}", secs(el)) } else { fails.join("; ") };
    Ok(result(2, "sum of squared degrees", pass, detail))
}

/// `|Y_2| = |self-dual reps| = q + 3` with the family breakdown.
pub fn self_dual_census() -> Result<CriterionResult> {
    let mut fails = Vec::new();
    for q in [3u64, 5, 7, 9, 11, 13] {
        let alphabet = Alphabet::new(q, 2, DEFAULT_POLY_BUDGET)?;
        let labels = green::enumerate_self_dual(&alphabet, 2, DEFAULT_LABEL_BUDGET)?.len() as u64;
        let reps = gl2::enumerate_self_dual_reps(q)?;
        let count = |f: &dyn Fn(Subcase) -> bool| reps.iter().filter(|r| f(r.subcase().expect("self-dual"))).count() as u64;
        let inverse = count(&|s| matches!(s, Subcase::PsInversePlus | Subcase::PsInverseMinus));
        let extra = count(&|s| s == Subcase::PsTrivialQuadratic);
        let cusp = count(&|s| s == Subcase::Cuspidal);
        let rest = count(&|s| matches!(s, Subcase::OneDim | Subcase::SteinbergPlain | Subcase::SteinbergQuadratic));
        let ok = labels == q + 3
            && reps.len() as u64 == q + 3
            && inverse == (q - 3) / 2
            && extra == 1
            && cusp == (q - 1) / 2
            && rest == 4;
        if !ok {
            fails.push(format!("q={q}: labels {labels}, reps {}, breakdown {inverse}+{extra}+{cusp}+{rest}", reps.len()));
        }
    }
    let detail = if fails.is_empty() {
        "q in {3,...,13}: q + 3 = (q-3)/2 + 1 + (q-1)/2 + 4 from both parametrizations".to_string()
    } else {
        fails.join("; ")
    };
    Ok(result(3, "self-dual census", fails.is_empty(), detail))
}

/// Involution values from brute-force induced characters.
pub fn oracle_agreement(tol: &Tolerances) -> Result<CriterionResult> {
    let mut fails = Vec::new();
    let mut time_q7 = Duration::ZERO;
    for q in [3u64, 5, 7] {
        let t = Instant::now();
        let oracle = Oracle::new(q)?;
        for rep in gl2::enumerate_all_reps(q)? {
            let chi = oracle.character(&rep)?;
            let got = oracle.involution_values(&chi)?;
            let want = rep.char_at_involutions();
            if got != want {
                fails.push(format!("q={q} {rep}: oracle {got:?}, closed form {want:?}"));
            }
            if let Gl2Kind::Cuspidal { theta } = rep.kind() {
                let theta_minus_one = if theta % 2 == 0 { 1 } else { -1 };
                if got != (0, (q as i64 - 1) * theta_minus_one) {
                    fails.push(format!("q={q} {rep}: cuspidal values {got:?}"));
                }
            }
        }
        if q == 7 {
            time_q7 = t.elapsed();
        }
    }
    let pass = fails.is_empty() && time_q7 <= tol.oracle_q7;
    let detail = if fails.is_empty() { format!("all irreducibles at q in {{3,5,7}}; q=7 in {}", secs(time_q7)) } else { fails.join("; ") };
    Ok(result(4, "oracle agreement at involutions", pass, detail))
}

pub fn frobenius_schur() -> Result<CriterionResult> {
    let mut fails = Vec::new();
    let mut checked = 0;
    for q in [3u64, 5] {
        let oracle = Oracle::new(q)?;
        for rep in gl2::enumerate_self_dual_reps(q)? {
            let ind = oracle.frobenius_schur(&oracle.character(&rep)?)?;
            checked += 1;
            if ind != 1 {
                fails.push(format!("q={q} {rep}: indicator {ind}"));
            }
        }
    }
    let detail = if fails.is_empty() { format!("{checked} self-dual irreducibles at q in {{3,5}} have indicator +1") } else { fails.join("; ") };
    Ok(result(5, "Frobenius-Schur indicators", fails.is_empty(), detail))
}

/// Decided verdicts against every populated cell of the published table.
pub fn sw_table() -> Result<CriterionResult> {
    let mut fails = Vec::new();
    for q in [3u64, 5, 7, 11, 13, 17, 29] {
        for row in gl2::summary_table(q)? {
            if row.agrees() == Some(false) {
                let w2 = row.w2_trivial.map(|b| if b { "Yes" } else { "No" }).unwrap_or("n/a");
                let w4 = match row.w4 {
                    Some(gl2::W4Status::Trivial) => "Yes",
                    Some(gl2::W4Status::Nontrivial) => "No",
                    _ => "--",
                };
                fails.push(format!(
                    "q={q} {} (m={:?}): w2 {w2}/{}, w4 {w4}/{}",
                    row.subcase.label(),
                    row.m_values,
                    row.table_w2.as_str(),
                    row.table_w4.as_str()
                ));
            }
        }
    }
    let detail = if fails.is_empty() { "all cells for q in {3,5,7,11,13,17,29}".to_string() } else { format!("computed/published differ: {}", fails.join("; ")) };
    Ok(result(6, "Stiefel-Whitney table", fails.is_empty(), detail))
}

pub fn density_limits(tol: &Tolerances, jobs: usize) -> Result<CriterionResult> {
    let misses = |x: u64| -> Result<Vec<String>> {
        let avg = gl2::global_average(x, jobs)?;
        Ok(density_verdicts(&avg, &tol.density).into_iter().filter(|v| !v.pass).map(|v| format!("{} {}", v.name, v.detail)).collect())
    };
    let t = Instant::now();
    let first = misses(tol.density_x)?;
    let el = t.elapsed();
    let mut pass = first.is_empty() && el <= tol.density_time;
    let mut detail = if first.is_empty() {
        format!("X = {} in {}", tol.density_x, secs(el))
    } else {
        format!("X = {}: {}", tol.density_x, first.join("; "))
    };
    if !first.is_empty() {
        if let Some(x) = tol.density_fallback_x {
            let second = misses(x)?;
            pass = second.is_empty();
            detail = format!("{detail} | X = {x}: {}", if pass { "all within tolerance".to_string() } else { second.join("; ") });
        }
    }
    Ok(result(7, "density limits", pass, detail))
}

fn v2_big(n: &BigUint) -> u64 {
    n.trailing_zeros().unwrap_or(0)
}

pub fn valuation_oracle() -> Result<CriterionResult> {
    let mut fails = Vec::new();
    for q in (3u64..=27).step_by(2) {
        for m in 1..=30u64 {
            let exact = v2_big(&(BigUint::from(q).pow(m as u32) - 1u32));
            if v2_qpow_minus_one(q, m)? as u64 != exact {
                fails.push(format!("v2({q}^{m} - 1)"));
            }
        }
    }
    let mut labels = 0u64;
    for q in [3u64, 5] {
        let alphabet = Alphabet::new(q, 5, DEFAULT_POLY_BUDGET)?;
        for n in 1..=5 {
            green::for_each_label(&alphabet, n, DEFAULT_LABEL_BUDGET, |mu| {
                labels += 1;
                let exact = green::exact_degree(&alphabet, &mu).expect("n <= 6");
                if green::degree_v2(&alphabet, &mu) != v2_big(&exact) {
                    fails.push(format!("q={q} {}", mu.display(&alphabet)));
                }
            })?;
        }
    }
    let detail = if fails.is_empty() {
        format!("LTE for odd q <= 27, m <= 30; v2(d_mu) for {labels} labels with n <= 5, q in {{3,5}}")
    } else {
        fails.join("; ")
    };
    Ok(result(8, "valuation oracle", fails.is_empty(), detail))
}

pub fn ell_adic_degree_bound() -> Result<CriterionResult> {
    let mut parts = Vec::new();
    let mut pass = true;
    for q in [3u64, 5] {
        let alphabet = Alphabet::new(q, 5, DEFAULT_POLY_BUDGET)?;
        for ell in [2u64, 3] {
            let (mut bad, mut total) = (0u64, 0u64);
            let mut err = None;
            for n in 1..=5 {
                green::for_each_label(&alphabet, n, DEFAULT_LABEL_BUDGET, |mu| {
                    total += 1;
                    match green::ell_adic_degree_bound_holds(&alphabet, &mu, ell) {
                        Ok(true) => {}
                        Ok(false) => bad += 1,
                        Err(e) => err = Some(e),
                    }
                })?;
            }
            if let Some(e) = err {
                return Err(e);
            }
            pass &= bad == 0;
            parts.push(format!("(q,l)=({q},{ell}): {bad}/{total} violate"));
        }
    }
    Ok(result(9, "l-adic degree lower bound", pass, parts.join("; ")))
}

pub fn symmetric_group_suite() -> Result<CriterionResult> {
    let mut fails = Vec::new();
    for n in 2..=12u32 {
        let (c, b) = (chiral_count_closed_form(n as u64)?, chiral_count_brute(n)?);
        if c != b {
            fails.push(format!("b({n}): {c} vs {b}"));
        }
    }
    let mut eval = MnEvaluator::new();
    let mut lassalle = 0u64;
    for n in 1..=10u32 {
        let lambdas: Vec<_> = enumerate_partitions(n).collect();
        for k in 1..=n {
            for mu in enumerate_partitions(k) {
                for lambda in &lambdas {
                    lassalle += 1;
                    if let Err(e) = crate::partitions::lassalle_with(&mut eval, lambda, &mu) {
                        fails.push(e.to_string());
                    }
                }
            }
        }
    }
    let mut fact = BigUint::one();
    for n in 1..=12u32 {
        fact *= n;
        let s: BigUint = enumerate_partitions(n).map(|l| {
            let f = l.specht_dimension();
            &f * &f
        }).sum();
        if s != fact {
            fails.push(format!("sum f^2 at n={n}"));
        }
    }
    let detail = if fails.is_empty() {
        format!("b(n) for 2 <= n <= 12; {lassalle} Lassalle coefficients integral for n <= 10; sum f^2 = n! for n <= 12")
    } else {
        fails.join("; ")
    };
    Ok(result(10, "symmetric-group suite", fails.is_empty(), detail))
}

pub fn large_n_trends() -> Result<CriterionResult> {
    let mut props = Vec::new();
    for n in [20u32, 40, 60, 80] {
        let (below, total) = valuation_statistic(n, 2, Threshold::LogShift { r: 1 })?;
        props.push(num_rational::Ratio::new(below as u128, total as u128));
    }
    let strictly = props.windows(2).all(|w| w[1] < w[0]);
    let mut divs = Vec::new();
    for n in [4u32, 6, 8] {
        divs.push(green::divisibility_proportion(3, n, 1, DEFAULT_LABEL_BUDGET)?);
    }
    let non_inc = divs.windows(2).all(|w| w[1] <= w[0]);
    let fmt_props = props.iter().map(|r| format!("{:.4}", r.to_f64().unwrap_or(f64::NAN))).collect::<Vec<_>>().join(", ");
    let fmt_divs = divs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ");
    Ok(result(
        11,
        "large-n trends",
        strictly && non_inc,
        format!("S_n proportions at n=20,40,60,80: {fmt_props} (strictly decreasing: {strictly}); GL_n(F_3) at n=4,6,8: {fmt_divs} (non-increasing: {non_inc})"),
    ))
}

/// The density report rendered with 1 and with 8 threads.
pub fn determinism(tol: &Tolerances) -> Result<CriterionResult> {
    let config = |jobs: usize| BTreeMap::from([("X".to_string(), tol.determinism_x.to_string()), ("jobs".to_string(), jobs.to_string())]);
    let render = |jobs: usize| -> Result<(String, String)> {
        let mut rep = commands::gl2_density(config(jobs), tol.determinism_x, jobs, &tol.density)?;
        // The thread count is part of the configuration, not of the data.
        rep.config.remove("jobs");
        Ok((rep.render(Format::Csv)?, rep.render(Format::Json)?))
    };
    let a = render(1)?;
    let b = render(8)?;
    let pass = a == b;
    Ok(result(12, "determinism", pass, format!("density report at X = {} with 1 vs 8 threads: csv and json {}", tol.determinism_x, if pass { "identical" } else { "differ" })))
}

/// Runs all criteria in order.
pub fn run_all(tol: &Tolerances, jobs: usize) -> Result<Vec<CriterionResult>> {
    Ok(vec![
        irreducible_census(tol)?,
        sum_of_squares(tol)?,
        self_dual_census()?,
        oracle_agreement(tol)?,
        frobenius_schur()?,
        sw_table()?,
        density_limits(tol, jobs)?,
        valuation_oracle()?,
        ell_adic_degree_bound()?,
        symmetric_group_suite()?,
        large_n_trends()?,
        determinism(tol)?,
    ])
}
