//! Registry of named identity checks. Each check evaluates both sides of an
//! identity by unrelated routes and records the outcome in a [`CheckReport`].

mod background;
mod characters;
mod theorems;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

use crate::arith::{is_prime, odd_prime_powers, Rational};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::ff::{FqCtx, FqElem};

pub use background::{carlitz, chapman, square_product, sun_square, sun_shifted, digit_sums};
pub use characters::{difference_matrix, jacobi_aggregate_identities, quadratic_eigenvalues, shift_circulant_eigen};
pub use theorems::{legendre_corollary, legendre_corollary_m_n, m_n_theorem, small_m_theorem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
        })
    }
}

/// A value together with the domain it lives in. Integers and rationals are
/// kept as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tagged {
    pub domain: String,
    pub value: String,
}

impl Tagged {
    pub fn new(domain: impl Into<String>, value: impl ToString) -> Self {
        Tagged { domain: domain.into(), value: value.to_string() }
    }

    pub fn residue(p: u64, v: u64) -> Self {
        Self::new(format!("F_{p}"), v)
    }

    pub fn fq(field: &FqCtx, v: &FqElem) -> Self {
        if field.f() == 1 {
            Self::residue(field.p(), v.coeffs()[0])
        } else {
            Self::new(format!("F_{}", field.q()), v)
        }
    }

    pub fn integer(v: &BigInt) -> Self {
        Self::new("Z", v)
    }

    pub fn rational(v: &Rational) -> Self {
        Self::new("Q", v)
    }

    pub fn symbol(v: i64) -> Self {
        Self::new("{-1,0,1}", v)
    }

    pub fn cyclotomic(v: &CycNum) -> Self {
        let coeffs: Vec<String> = v.coeffs().iter().map(ToString::to_string).collect();
        Self::new(format!("Q(zeta_{})", v.m()), format!("[{}]", coeffs.join(",")))
    }

    pub fn complex(v: Complex64) -> Self {
        Self::new("C", format!("{:.12e}{:+.12e}i", v.re, v.im))
    }

    pub fn count(v: usize) -> Self {
        Self::new("count", v)
    }

    pub fn none() -> Self {
        Self::new("none", "")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub params: BTreeMap<String, Json>,
    pub lhs: Tagged,
    pub rhs: Tagged,
    pub verdict: Verdict,
    /// How each side was computed.
    pub engine: String,
    pub elapsed_secs: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    /// One JSON object, no trailing newline.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }

    pub const CSV_HEADER: &'static str = "check_id,params,verdict,lhs_domain,lhs,rhs_domain,rhs,engine,elapsed_secs,reason";

    pub fn to_csv_row(&self) -> String {
        let params = serde_json::to_string(&self.params).expect("params serialize");
        let fields = [
            self.check_id.clone(),
            params,
            self.verdict.to_string(),
            self.lhs.domain.clone(),
            self.lhs.value.clone(),
            self.rhs.domain.clone(),
            self.rhs.value.clone(),
            self.engine.clone(),
            format!("{:.6}", self.elapsed_secs),
            self.reason.clone().unwrap_or_default(),
        ];
        fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Builder used by the individual checks.
pub(crate) struct Draft {
    id: CheckId,
    params: BTreeMap<String, Json>,
    start: Instant,
}

impl Draft {
    pub(crate) fn new(id: CheckId) -> Self {
        Draft { id, params: BTreeMap::new(), start: Instant::now() }
    }

    pub(crate) fn param(mut self, key: &str, value: impl Into<Json>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    fn finish(self, lhs: Tagged, rhs: Tagged, verdict: Verdict, engine: &str, reason: Option<String>) -> CheckReport {
        CheckReport {
            check_id: self.id.as_str().to_string(),
            params: self.params,
            lhs,
            rhs,
            verdict,
            engine: engine.to_string(),
            elapsed_secs: self.start.elapsed().as_secs_f64(),
            reason,
        }
    }

    /// Pass iff `lhs == rhs` as tagged values.
    pub(crate) fn compare(self, lhs: Tagged, rhs: Tagged, engine: &str) -> CheckReport {
        let ok = lhs == rhs;
        self.decide(lhs, rhs, ok, engine, None)
    }

    pub(crate) fn decide(self, lhs: Tagged, rhs: Tagged, ok: bool, engine: &str, reason: Option<String>) -> CheckReport {
        let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        self.finish(lhs, rhs, verdict, engine, reason)
    }

    pub(crate) fn skip(self, reason: impl Into<String>) -> CheckReport {
        self.finish(Tagged::none(), Tagged::none(), Verdict::Skipped, "none", Some(reason.into()))
    }

    pub(crate) fn error(self, err: &Error) -> CheckReport {
        self.finish(Tagged::none(), Tagged::none(), Verdict::Fail, "none", Some(format!("error: {err}")))
    }

    /// Aggregate of several sub-identities; the first failure becomes the reason.
    pub(crate) fn tally(self, tally: Tally, engine: &str) -> CheckReport {
        let ok = tally.failures.is_empty() && tally.checked > 0;
        let reason = tally.failures.first().cloned();
        self.decide(Tagged::count(tally.checked - tally.failures.len()), Tagged::count(tally.checked), ok, engine, reason)
    }
}

/// Running count of sub-identities in an aggregate check.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    pub(crate) fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// `|a - b| ≤ tol · scale`.
pub(crate) fn close(a: Complex64, b: Complex64, scale: f64, tol: f64) -> bool {
    (a - b).norm() <= tol * scale
}

/// Relative tolerance of the floating-point checks.
pub const COMPLEX_TOLERANCE: f64 = 1e-6;

/// Every registered check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CheckId {
    T1a,
    T1b,
    C1,
    T2,
    C2,
    T5,
    L51,
    L52,
    L41,
    CarlitzMinus,
    CarlitzPlus,
    Chapman3,
    SunSq,
    Sun24,
    SquareProduct,
    DigitSums,
}

impl CheckId {
    pub const ALL: [CheckId; 16] = [
        CheckId::T1a,
        CheckId::T1b,
        CheckId::C1,
        CheckId::T2,
        CheckId::C2,
        CheckId::T5,
        CheckId::L51,
        CheckId::L52,
        CheckId::L41,
        CheckId::CarlitzMinus,
        CheckId::CarlitzPlus,
        CheckId::Chapman3,
        CheckId::SunSq,
        CheckId::Sun24,
        CheckId::SquareProduct,
        CheckId::DigitSums,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::T1a => "T1a",
            CheckId::T1b => "T1b",
            CheckId::C1 => "C1",
            CheckId::T2 => "T2",
            CheckId::C2 => "C2",
            CheckId::T5 => "T5",
            CheckId::L51 => "L51",
            CheckId::L52 => "L52",
            CheckId::L41 => "L41",
            CheckId::CarlitzMinus => "CARLITZ-",
            CheckId::CarlitzPlus => "CARLITZ+",
            CheckId::Chapman3 => "CHAPMAN3",
            CheckId::SunSq => "SUN-SQ",
            CheckId::Sun24 => "SUN-24",
            CheckId::SquareProduct => "SQUARE-PRODUCT",
            CheckId::DigitSums => "DIGIT-SUMS",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            CheckId::T1a => "det B_q(n-1): closed form with a_p for primes, zero for f >= 2",
            CheckId::T1b => "det B_q(n-2): nonzero closed form for primes, zero for f >= 2",
            CheckId::C1 => "Legendre symbols of det B_p(n-1) and det B_p(n-2)",
            CheckId::T2 => "det B_q(n): closed form with b_p, and the circulant eigenvalue route",
            CheckId::C2 => "Legendre symbol of det B_p(n) against (-2 b_p / p)",
            CheckId::T5 => "det D_q^-(psi) and det D_q^+(psi) against Gauss-sum formulas",
            CheckId::L51 => "product and reciprocal sums of Jacobi sums, finite-field Sury sum",
            CheckId::L52 => "eigenpairs of the circulants psi(g^(j-i) -+ 1)",
            CheckId::L41 => "eigenvalues lambda_r of the quadratic shift circulant and their reductions",
            CheckId::CarlitzMinus => "det [psi(j - i)] against the Gauss-sum formula",
            CheckId::CarlitzPlus => "det [psi(j + i)] against the Gauss-sum formula",
            CheckId::Chapman3 => "Legendre Hankel matrices for p = 3 (mod 4)",
            CheckId::SunSq => "-det [((i^2 + j^2)/p)] is a nonzero square mod p",
            CheckId::Sun24 => "det [(i^2 + j^2)^(p-3)] mod p for p = 3 (mod 4)",
            CheckId::SquareProduct => "sign-twisted product of squared differences of squares",
            CheckId::DigitSums => "digit-sum formula and s(n) + s(n+r) > s(r)",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unsupported(format!("unknown check {s:?}")))
    }
}

/// Parameter ranges of a suite run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    /// Upper end of the exact prime-power checks.
    pub q_max: u64,
    /// Upper end of the all-characters checks.
    pub complex_q_max: u64,
    /// Upper end of the prime-only Legendre and Sun checks.
    pub p_max: u64,
    /// Upper end of the Carlitz and Chapman checks.
    pub background_p_max: u64,
    /// Upper end of the digit-sum checks.
    pub digit_q_max: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { q_max: 121, complex_q_max: 49, p_max: 200, background_p_max: 31, digit_q_max: 2187 }
    }
}

/// One unit of work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Job {
    Q(CheckId, u64),
    Char(CheckId, u64, u64),
}

fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&p| is_prime(p)).collect()
}

fn prime_powers(lo: u64, hi: u64) -> Vec<u64> {
    odd_prime_powers(lo, hi).iter().map(|c| c.q()).collect()
}

/// The canonical job list of a check under `cfg`.
pub fn jobs_for(id: CheckId, cfg: &SuiteConfig) -> Vec<Job> {
    let q_jobs = |qs: Vec<u64>| qs.into_iter().map(|q| Job::Q(id, q)).collect::<Vec<_>>();
    let char_jobs = |qs: Vec<u64>| {
        qs.into_iter()
            .flat_map(|q| (1..q - 1).map(move |k| Job::Char(id, q, k)))
            .collect::<Vec<_>>()
    };
    match id {
        CheckId::T1a | CheckId::T1b | CheckId::T2 | CheckId::SquareProduct | CheckId::L41 => {
            q_jobs(prime_powers(7, cfg.q_max))
        }
        CheckId::C1 => q_jobs(primes_in(7, cfg.p_max)),
        CheckId::C2 => q_jobs(primes_in(7, cfg.q_max)),
        // T5 runs the exact quadratic-character check per q plus a complex
        // check for every nontrivial character.
        CheckId::T5 => {
            let mut jobs = q_jobs(prime_powers(3, cfg.q_max));
            jobs.extend(char_jobs(prime_powers(3, cfg.complex_q_max)));
            jobs
        }
        CheckId::L51 | CheckId::L52 => char_jobs(prime_powers(3, cfg.complex_q_max)),
        CheckId::CarlitzMinus | CheckId::CarlitzPlus => char_jobs(primes_in(3, cfg.background_p_max)),
        CheckId::Chapman3 => q_jobs(primes_in(7, cfg.background_p_max)),
        CheckId::SunSq | CheckId::Sun24 => q_jobs(primes_in(3, cfg.p_max)),
        CheckId::DigitSums => q_jobs(prime_powers(3, cfg.digit_q_max)),
    }
}

/// Runs one job, producing one or more reports.
pub fn run_job(job: Job) -> Vec<CheckReport> {
    match job {
        Job::Q(id, q) => match id {
            CheckId::T1a => vec![small_m_theorem(q, 1)],
            CheckId::T1b => vec![small_m_theorem(q, 2)],
            CheckId::C1 => legendre_corollary(q),
            CheckId::T2 => vec![m_n_theorem(q)],
            CheckId::C2 => vec![legendre_corollary_m_n(q)],
            CheckId::T5 => difference_matrix::quadratic(q),
            CheckId::L41 => vec![quadratic_eigenvalues(q)],
            CheckId::Chapman3 => chapman(q),
            CheckId::SunSq => vec![sun_square(q)],
            CheckId::Sun24 => vec![sun_shifted(q)],
            CheckId::SquareProduct => vec![square_product(q)],
            CheckId::DigitSums => vec![digit_sums(q)],
            _ => unreachable!("{id} has no per-q job"),
        },
        Job::Char(id, q, k) => match id {
            CheckId::T5 => difference_matrix::complex(q, k),
            CheckId::L51 => vec![jacobi_aggregate_identities(q, k)],
            CheckId::L52 => vec![shift_circulant_eigen(q, k)],
            CheckId::CarlitzMinus => vec![carlitz(q, k, crate::linalg::Sign::Minus)],
            CheckId::CarlitzPlus => vec![carlitz(q, k, crate::linalg::Sign::Plus)],
            _ => unreachable!("{id} has no per-character job"),
        },
    }
}

/// Runs the selected checks on `jobs` worker threads (0: all cores) and
/// returns the reports in canonical order: by check, then by parameters.
pub fn run_suite(ids: &[CheckId], cfg: &SuiteConfig, jobs: usize) -> Result<Vec<CheckReport>> {
    let mut work: Vec<Job> = ids.iter().flat_map(|&id| jobs_for(id, cfg)).collect();
    work.sort();
    work.dedup();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Unsupported(e.to_string()))?;
    let reports: Vec<Vec<CheckReport>> = pool.install(|| work.par_iter().map(|&j| run_job(j)).collect());
    Ok(reports.into_iter().flatten().collect())
}

/// Summary counts of a run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

pub fn summarize(reports: &[CheckReport]) -> Summary {
    let mut s = Summary::default();
    for r in reports {
        match r.verdict {
            Verdict::Pass => s.pass += 1,
            Verdict::Fail => s.fail += 1,
            Verdict::Skipped => s.skipped += 1,
        }
    }
    s
}

pub(crate) fn field_or_report(q: u64, draft: Draft) -> std::result::Result<(FqCtx, Draft), CheckReport> {
    match FqCtx::from_q(q) {
        Ok(f) => Ok((f, draft)),
        Err(e) => Err(draft.error(&e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_parse_case_insensitively() {
        for id in CheckId::ALL {
            assert_eq!(id.as_str().parse::<CheckId>().unwrap(), id);
            assert_eq!(id.as_str().to_lowercase().parse::<CheckId>().unwrap(), id);
        }
        assert!("nosuch".parse::<CheckId>().is_err());
    }

    #[test]
    fn report_json_round_trip() {
        let r = small_m_theorem(7, 1);
        let line = r.to_json_line();
        let back: CheckReport = serde_json::from_str(&line).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json_line(), line);
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"x\""), "\"say \"\"x\"\"\"");
        assert_eq!(csv_field("plain"), "plain");
    }

    #[test]
    fn suite_order_is_canonical() {
        let cfg = SuiteConfig { q_max: 13, complex_q_max: 7, p_max: 13, background_p_max: 7, digit_q_max: 9 };
        let a = run_suite(&[CheckId::T2, CheckId::T1a], &cfg, 1).unwrap();
        let b = run_suite(&[CheckId::T1a, CheckId::T2], &cfg, 3).unwrap();
        let strip = |v: &[CheckReport]| v.iter().map(|r| (r.check_id.clone(), r.params.clone(), r.verdict)).collect::<Vec<_>>();
        assert_eq!(strip(&a), strip(&b));
        assert_eq!(a[0].check_id, "T1a");
    }
}
