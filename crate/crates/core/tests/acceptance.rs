//! The acceptance suite: one line per criterion.
//!
//! A criterion prints PASS when it holds as stated. A criterion that fails
//! in exactly the documented way prints FAIL with the note "known". Any other
//! outcome, including an unexpected pass, makes the process exit nonzero.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::*;
use cyclodet::arith::is_prime;
use cyclodet::linalg::domain::Integers;
use cyclodet::linalg::{build_bq, det_exact, det_fq, det_gsz, det_linear_kernel_formula};
use cyclodet::pell::b_p;
use cyclodet::search::{search, Predicate};
use cyclodet::verify::{difference_matrix, run_suite, CheckId, SuiteConfig};
use cyclodet::{CheckReport, FqCtx, Matrix, Verdict};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

enum Status {
    Pass,
    /// Fails the stated criterion, but in the way recorded as a conflict.
    Known,
    Fail,
}

struct Outcome {
    status: Status,
    detail: String,
}

impl Outcome {
    fn new(ok: bool, detail: String) -> Self {
        Outcome { status: if ok { Status::Pass } else { Status::Fail }, detail }
    }

    /// `ok` is the criterion; `known` says the failure matches its documented signature.
    fn with_known(ok: bool, known: bool, detail: String) -> Self {
        let status = match (ok, known) {
            (true, _) => Status::Pass,
            (false, true) => Status::Known,
            (false, false) => Status::Fail,
        };
        Outcome { status, detail }
    }
}

fn failures(reports: &[CheckReport]) -> Vec<&CheckReport> {
    reports.iter().filter(|r| r.verdict == Verdict::Fail).collect()
}

fn describe(reports: &[&CheckReport]) -> String {
    reports
        .iter()
        .map(|r| format!("{} {} lhs={} rhs={}", r.check_id, serde_json::to_string(&r.params).unwrap(), r.lhs.value, r.rhs.value))
        .collect::<Vec<_>>()
        .join("; ")
}

fn suite(ids: &[CheckId], cfg: SuiteConfig) -> Vec<CheckReport> {
    run_suite(ids, &cfg, 0).expect("suite runs")
}

fn param(r: &CheckReport, key: &str) -> u64 {
    r.params[key].as_u64().unwrap()
}

fn criterion_1() -> Outcome {
    let r = search(Predicate::Qp2, 7, 1_000_000, 0).unwrap();
    Outcome::new(r.hits == [13, 31], format!("qp2 hits {:?}, {} primes in {:.2}s", r.hits, r.scanned, r.elapsed_secs))
}

fn criterion_2() -> Outcome {
    let r = search(Predicate::Pp2, 7, 1_000_000, 0).unwrap();
    let ok = r.interior_hits() == [29] && r.boundary_hit == Some(7);
    let known = r.interior_hits() == [11, 16651] && r.boundary_hit == Some(7);
    Outcome::with_known(
        ok,
        known,
        format!("pp2 hits {:?} (boundary {:?}), expected {{29}} above 7", r.hits, r.boundary_hit),
    )
}

fn criterion_3() -> Outcome {
    let reports = suite(&[CheckId::T1a, CheckId::T1b], SuiteConfig::default());
    let bad = failures(&reports);
    let known = bad.len() == 1 && bad[0].check_id == "T1b" && param(bad[0], "q") == 9 && bad[0].lhs.value == "[2, 0]";
    Outcome::with_known(bad.is_empty(), known, format!("{} reports, failing: [{}]", reports.len(), describe(&bad)))
}

fn criterion_4() -> Outcome {
    let reports = suite(&[CheckId::T2, CheckId::C2], SuiteConfig::default());
    let bad = failures(&reports);
    let q13 = reports.iter().any(|r| r.check_id == "T2" && param(r, "q") == 13 && r.passed());
    let f29 = FqCtx::from_q(29).unwrap();
    let det29 = det_fq(&f29, &build_bq(&f29, 14).unwrap()).unwrap();
    let b29 = b_p(29).unwrap();
    let singular29 = det29.is_zero() && b29 == 0;
    let known = bad.len() == 1
        && bad[0].check_id == "T2"
        && param(bad[0], "q") == 9
        && q13
        && det29.coeffs() == [28]
        && b29 == 27;
    Outcome::with_known(
        bad.is_empty() && q13 && singular29,
        known,
        format!(
            "{} reports, failing: [{}]; q = 13 passes: {q13}; det B_29(14) = {}, b_29 = {b29}",
            reports.len(),
            describe(&bad),
            det29.coeffs()[0]
        ),
    )
}

fn criterion_5() -> Outcome {
    let reports = suite(&[CheckId::C1], SuiteConfig::default());
    let bad = failures(&reports);
    let want: Vec<u64> = (7..=200).filter(|&p| p % 4 == 3 && is_prime(p)).collect();
    let got: Vec<u64> = reports
        .iter()
        .filter(|r| r.params["part"] == "i" && r.engine.contains("class number"))
        .map(|r| param(r, "p"))
        .collect();
    Outcome::new(
        bad.is_empty() && got == want,
        format!("{} reports, {} failing, class number used for {} of {} primes = 3 (mod 4)", reports.len(), bad.len(), got.len(), want.len()),
    )
}

fn criterion_6() -> Outcome {
    let mut exact = Vec::new();
    for q in [3u64, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31] {
        exact.extend(difference_matrix::quadratic(q));
    }
    let named: Vec<u64> = exact.iter().filter(|r| r.params["sign"] == "-" && r.passed()).map(|r| param(r, "q")).collect();
    let covers = [5u64, 9, 13, 17, 25, 29, 3, 7, 11, 19, 23, 27, 31].iter().all(|q| named.contains(q));
    let complex = suite(&[CheckId::T5], SuiteConfig { q_max: 31, ..SuiteConfig::default() });
    let bad: Vec<_> = exact.iter().filter(|r| r.verdict == Verdict::Fail).chain(failures(&complex)).collect();
    Outcome::new(
        bad.is_empty() && covers,
        format!("{} exact and {} suite reports, failing: [{}]", exact.len(), complex.len(), describe(&bad)),
    )
}

fn criterion_7() -> Outcome {
    let reports = suite(&[CheckId::L51], SuiteConfig::default());
    let bad = failures(&reports);
    Outcome::new(bad.is_empty() && reports.len() > 300, format!("{} characters, failing: [{}]", reports.len(), describe(&bad)))
}

fn criterion_8() -> Outcome {
    let reports = suite(&[CheckId::L41], SuiteConfig::default());
    let bad = failures(&reports);
    Outcome::new(bad.is_empty(), format!("{} fields up to q = 121, failing: [{}]", reports.len(), describe(&bad)))
}

fn random_vec(rng: &mut StdRng, len: usize, bound: i64) -> Vec<BigInt> {
    (0..len).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect()
}

fn criterion_9() -> Outcome {
    let reports = suite(&[CheckId::SquareProduct], SuiteConfig::default());
    let bad = failures(&reports);
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut mismatches = 0;
    for _ in 0..200 {
        let l = rng.gen_range(1..=6);
        let (x, y) = (random_vec(&mut rng, l, 25), random_vec(&mut rng, l, 25));
        let h = random_vec(&mut rng, l, 9);
        let power = Matrix::from_fn(l, l, |i, j| (&x[i] + &y[j]).pow(l as u32));
        let kernel = Matrix::from_fn(l, l, |i, j| {
            let t = &x[i] + &y[j];
            h.iter().rev().fold(BigInt::from(0), |acc, c| acc * &t + c)
        });
        if det_gsz(&Integers, &x, &y).unwrap() != det_exact(&power).unwrap() {
            mismatches += 1;
        }
        if det_linear_kernel_formula(&Integers, &x, &y, &h).unwrap() != det_exact(&kernel).unwrap() {
            mismatches += 1;
        }
    }
    Outcome::new(
        bad.is_empty() && mismatches == 0,
        format!("{} fields, {} failing; 200 random instances, {mismatches} formula mismatches", reports.len(), bad.len()),
    )
}

fn criterion_10() -> Outcome {
    let a = q_against_p_failures(10_000);
    let b = reciprocal_power_sum_failures(500);
    let c = power_sum_cubed_failures(50);
    let d = power_sum_squared_failures(500);
    Outcome::new(
        a.is_empty() && b.is_empty() && c.is_empty() && d.is_empty(),
        format!("failing primes: mod p^2 to 10^4 {a:?}; mod p to 500 {b:?}; mod p^3 to 50 {c:?}; mod p^2 to 500 {d:?}"),
    )
}

fn criterion_11() -> Outcome {
    let reports = suite(&[CheckId::DigitSums], SuiteConfig::default());
    let bad = failures(&reports);
    Outcome::new(bad.is_empty(), format!("{} prime powers up to 2187, failing: [{}]", reports.len(), describe(&bad)))
}

fn criterion_12() -> Outcome {
    let fe = functional_equation_failures(&[5, 7, 13], 2000);
    let mut rng = StdRng::seed_from_u64(12);
    let mut bad_pairs = Vec::new();
    for _ in 0..100 {
        let p = [5u64, 7, 11, 13][rng.gen_range(0..4)];
        let n = rng.gen_range(1..=3u32);
        let m = p.pow(n);
        let x = rng.gen_range(1..=1_000_000u64);
        let y = x % m + rng.gen_range(0..1_000_000 / m) * m;
        if y == 0 {
            continue;
        }
        if gamma(x, p, n) != gamma(y, p, n) {
            bad_pairs.push((p, n, x, y));
        }
    }
    Outcome::new(
        fe.is_empty() && bad_pairs.is_empty(),
        format!("functional equation failures {fe:?}; continuity failures {bad_pairs:?}"),
    )
}

fn criterion_13() -> Outcome {
    let cfg = SuiteConfig { p_max: 100, ..SuiteConfig::default() };
    let reports = suite(
        &[CheckId::Chapman3, CheckId::CarlitzMinus, CheckId::CarlitzPlus, CheckId::SunSq, CheckId::Sun24],
        cfg,
    );
    let bad = failures(&reports);
    let chapman_primes: Vec<u64> = (7..=31).filter(|&p| p % 4 == 3 && is_prime(p)).collect();
    let known = bad.len() == chapman_primes.len()
        && bad.iter().zip(&chapman_primes).all(|(r, &p)| {
            r.check_id == "CHAPMAN3"
                && param(r, "p") == p
                && param(r, "variant") == 0
                && r.lhs.value == (BigInt::from(1) << ((p - 1) / 2)).to_string()
        });
    Outcome::with_known(bad.is_empty(), known, format!("{} reports, failing: [{}]", reports.len(), describe(&bad)))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("qp2 search on [7, 10^6] returns {13, 31}", criterion_1),
        ("pp2 search on (7, 10^6] returns {29}, 7 flagged", criterion_2),
        ("det B_q(n-1), det B_q(n-2) closed forms, 7 <= q <= 121", criterion_3),
        ("det B_q(n) closed form and its Legendre symbol, 7 <= q <= 121", criterion_4),
        ("Legendre symbols of det B_p(n-1), det B_p(n-2), p <= 200", criterion_5),
        ("difference matrices D_q^-(phi), D_q^+(psi)", criterion_6),
        ("product and reciprocal sums of Jacobi sums, q <= 49", criterion_7),
        ("eigenvalues lambda_r and their reductions", criterion_8),
        ("squared-difference product and determinant formulas", criterion_9),
        ("Pell congruences mod p, p^2, p^3", criterion_10),
        ("digit sums for q <= 2187", criterion_11),
        ("p-adic Gamma functional equation and continuity", criterion_12),
        ("Chapman, Carlitz and Sun background values", criterion_13),
    ];
    let mut unexpected = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let tag = match out.status {
            Status::Pass => "PASS",
            Status::Known => "FAIL (known)",
            Status::Fail => {
                unexpected += 1;
                "FAIL"
            }
        };
        println!("criterion {:>2}: {tag}: {name} [{:.1}s] {}", i + 1, start.elapsed().as_secs_f64(), out.detail);
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed outside the documented conflicts");
        ExitCode::FAILURE
    }
}
