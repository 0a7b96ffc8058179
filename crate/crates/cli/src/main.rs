use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cyclodet::linalg::domain::Cyclotomic;
use cyclodet::linalg::{
    build_bq, build_carlitz, build_carlitz_complex, build_chapman, build_dq, build_dq_complex,
    build_dq_quadratic, build_sun, build_sun_legendre, det_complex, det_exact, det_field, det_fq,
    det_mod_p, ChapmanVariant, Sign,
};
use cyclodet::padic::{gamma_p, GammaArg};
use cyclodet::pell::pell_pair_mod;
use cyclodet::search::{max_searchable, search, Predicate};
use cyclodet::verify::{run_suite, summarize, CheckId, SuiteConfig, Tagged};
use cyclodet::{Character, CheckReport, FqCtx, Matrix, ModRing};
use num_complex::Complex64;
use serde_json::json;

const DEFAULT_SEARCH_MAX: u64 = 1_000_000;

#[derive(Parser)]
#[command(name = "cyclodet", version, about = "Determinants of cyclotomic matrices over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification checks and stream one report per line.
    Verify {
        /// A check id such as T1a or CARLITZ-, or "all".
        #[arg(long, default_value = "all")]
        check: String,
        #[arg(long)]
        q_max: Option<u64>,
        #[arg(long)]
        complex_q_max: Option<u64>,
        #[arg(long)]
        p_max: Option<u64>,
        /// Worker threads; 0 uses every core.
        #[arg(long, env = "CYCLODET_JOBS", default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan primes for a Pell congruence modulo p².
    Search {
        #[arg(value_enum)]
        predicate: PredicateArg,
        #[arg(long, default_value_t = 7)]
        min: u64,
        #[arg(long, default_value_t = DEFAULT_SEARCH_MAX)]
        max: u64,
        #[arg(long, env = "CYCLODET_JOBS", default_value_t = 0)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Build one matrix and print its determinant.
    Det {
        #[arg(long, value_enum)]
        matrix: MatrixKind,
        /// Field size, or the prime for Carlitz, Chapman and Sun matrices.
        #[arg(long)]
        q: u64,
        /// Exponent for bq and sun.
        #[arg(long)]
        m: Option<u64>,
        /// "quadratic" or a character exponent k (ψ = χ^k).
        #[arg(long = "char")]
        character: Option<String>,
        #[arg(long, value_enum)]
        engine: Option<Engine>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Print P_i and Q_i modulo m.
    Pell {
        #[arg(long)]
        index: u64,
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// Print Γ_p(x) modulo p^N; x is an integer or a fraction a/b with b | p - 1.
    GammaP {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 1)]
        precision: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PredicateArg {
    Qp2,
    Pp2,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixKind {
    Bq,
    #[value(name = "dq+")]
    DqPlus,
    #[value(name = "dq-")]
    DqMinus,
    #[value(name = "carlitz+")]
    CarlitzPlus,
    #[value(name = "carlitz-")]
    CarlitzMinus,
    Chapman0,
    Chapman1,
    Sun,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    /// Fraction-free or cyclotomic elimination.
    Exact,
    /// Elimination over F_q.
    Modular,
    /// Partial-pivot LU in double precision.
    Complex,
}

/// A failure to report with exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { check, q_max, complex_q_max, p_max, jobs, format, out } => {
            cmd_verify(&check, q_max, complex_q_max, p_max, jobs, format, out)
        }
        Command::Search { predicate, min, max, jobs, format } => cmd_search(predicate, min, max, jobs, format),
        Command::Det { matrix, q, m, character, engine, format } => {
            cmd_det(matrix, q, m, character.as_deref(), engine, format)
        }
        Command::Pell { index, modulus } => cmd_pell(index, modulus),
        Command::GammaP { p, x, precision } => cmd_gamma(p, &x, precision),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn cmd_verify(
    check: &str,
    q_max: Option<u64>,
    complex_q_max: Option<u64>,
    p_max: Option<u64>,
    jobs: usize,
    format: ReportFormat,
    out: Option<PathBuf>,
) -> Result<ExitCode, UsageError> {
    let ids: Vec<CheckId> = if check.eq_ignore_ascii_case("all") {
        CheckId::ALL.to_vec()
    } else {
        check.split(',').map(|s| s.trim().parse()).collect::<Result<_, _>>()?
    };
    let mut cfg = SuiteConfig::default();
    cfg.q_max = q_max.unwrap_or(cfg.q_max);
    cfg.complex_q_max = complex_q_max.unwrap_or(cfg.complex_q_max);
    cfg.p_max = p_max.unwrap_or(cfg.p_max);
    let reports = run_suite(&ids, &cfg, jobs)?;

    let mut sink: Box<dyn Write> = match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    write_reports(&mut sink, &reports, format)?;
    sink.flush()?;

    let s = summarize(&reports);
    eprintln!("pass {}, fail {}, skipped {}", s.pass, s.fail, s.skipped);
    Ok(if s.fail == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn write_reports(w: &mut dyn Write, reports: &[CheckReport], format: ReportFormat) -> io::Result<()> {
    match format {
        ReportFormat::Json => {
            for r in reports {
                writeln!(w, "{}", r.to_json_line())?;
            }
        }
        ReportFormat::Csv => {
            writeln!(w, "{}", CheckReport::CSV_HEADER)?;
            for r in reports {
                writeln!(w, "{}", r.to_csv_row())?;
            }
        }
    }
    Ok(())
}

fn cmd_search(pred: PredicateArg, min: u64, max: u64, jobs: usize, format: OutputFormat) -> Result<ExitCode, UsageError> {
    if max > max_searchable() {
        return Err(UsageError(format!("--max {max} exceeds the limit {}", max_searchable())));
    }
    let pred = match pred {
        PredicateArg::Qp2 => Predicate::Qp2,
        PredicateArg::Pp2 => Predicate::Pp2,
    };
    let r = search(pred, min, max, jobs)?;
    match format {
        OutputFormat::Json => println!("{}", serde_json::to_string(&r)?),
        OutputFormat::Text => {
            let hits: Vec<String> = r.hits.iter().map(u64::to_string).collect();
            println!("{} on [{}, {}]: {{{}}}", r.predicate.name(), min, max, hits.join(", "));
            if let Some(p) = r.boundary_hit {
                println!("boundary hit: {p} (the lower end of the range)");
            }
            println!("{} primes scanned in {:.3}s", r.scanned, r.elapsed_secs);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_character<'f>(field: &'f FqCtx, spec: Option<&str>) -> Result<Character<'f>, UsageError> {
    match spec {
        None | Some("quadratic") => Ok(Character::quadratic(field)),
        Some(s) => {
            let k: i64 = s.parse().map_err(|_| UsageError(format!("--char expects \"quadratic\" or an integer, got {s:?}")))?;
            let psi = Character::new(field, k);
            if psi.is_trivial() {
                return Err(UsageError("the trivial character is not allowed".into()));
            }
            Ok(psi)
        }
    }
}

fn mismatch(matrix: &str, engine: Engine) -> UsageError {
    let name = match engine {
        Engine::Exact => "exact",
        Engine::Modular => "modular",
        Engine::Complex => "complex",
    };
    UsageError(format!("engine {name} is not available for {matrix}"))
}

fn complex_tag(m: &Matrix<Complex64>) -> Result<(Tagged, Option<bool>), UsageError> {
    let d = det_complex(m)?;
    Ok((Tagged::complex(d.value), Some(d.numerically_singular)))
}

fn cmd_det(
    matrix: MatrixKind,
    q: u64,
    m: Option<u64>,
    character: Option<&str>,
    engine: Option<Engine>,
    format: OutputFormat,
) -> Result<ExitCode, UsageError> {
    let (name, value, singular, engine_used) = match matrix {
        MatrixKind::Bq => {
            let engine = engine.unwrap_or(Engine::Modular);
            if engine != Engine::Modular {
                return Err(mismatch("bq", engine));
            }
            let m = m.ok_or_else(|| UsageError("bq needs --m".into()))?;
            let field = FqCtx::from_q(q)?;
            let d = det_fq(&field, &build_bq(&field, m)?)?;
            ("bq", Tagged::fq(&field, &d), None, engine)
        }
        MatrixKind::DqPlus | MatrixKind::DqMinus => {
            let (name, sign) = match matrix {
                MatrixKind::DqPlus => ("dq+", Sign::Plus),
                _ => ("dq-", Sign::Minus),
            };
            let field = FqCtx::from_q(q)?;
            let quadratic = matches!(character, None | Some("quadratic"));
            let psi = parse_character(&field, character)?;
            let engine = engine.unwrap_or(if quadratic { Engine::Exact } else { Engine::Complex });
            match engine {
                Engine::Exact if quadratic => {
                    (name, Tagged::integer(&det_exact(&build_dq_quadratic(&field, sign))?), None, engine)
                }
                Engine::Exact => {
                    let d = det_field(&Cyclotomic { m: field.order() }, &build_dq(&field, &psi, sign)?)?;
                    (name, Tagged::cyclotomic(&d), None, engine)
                }
                Engine::Complex => {
                    let (t, s) = complex_tag(&build_dq_complex(&field, &psi, sign)?)?;
                    (name, t, s, engine)
                }
                Engine::Modular => return Err(mismatch(name, engine)),
            }
        }
        MatrixKind::CarlitzPlus | MatrixKind::CarlitzMinus => {
            let (name, sign) = match matrix {
                MatrixKind::CarlitzPlus => ("carlitz+", Sign::Plus),
                _ => ("carlitz-", Sign::Minus),
            };
            let field = FqCtx::from_q(q)?;
            let psi = parse_character(&field, character)?;
            match engine.unwrap_or(Engine::Complex) {
                Engine::Complex => {
                    let (t, s) = complex_tag(&build_carlitz_complex(&field, &psi, sign)?)?;
                    (name, t, s, Engine::Complex)
                }
                Engine::Exact => {
                    let d = det_field(&Cyclotomic { m: field.order() }, &build_carlitz(&field, &psi, sign)?)?;
                    (name, Tagged::cyclotomic(&d), None, Engine::Exact)
                }
                e => return Err(mismatch(name, e)),
            }
        }
        MatrixKind::Chapman0 | MatrixKind::Chapman1 => {
            let (name, variant) = match matrix {
                MatrixKind::Chapman0 => ("chapman0", ChapmanVariant::Zero),
                _ => ("chapman1", ChapmanVariant::One),
            };
            let engine = engine.unwrap_or(Engine::Exact);
            if engine != Engine::Exact {
                return Err(mismatch(name, engine));
            }
            (name, Tagged::integer(&det_exact(&build_chapman(q, variant)?)?), None, engine)
        }
        MatrixKind::Sun => match (m, engine) {
            (Some(m), None | Some(Engine::Modular)) => {
                let d = det_mod_p(&build_sun(q, m)?, q)?;
                ("sun", Tagged::residue(q, d), None, Engine::Modular)
            }
            (None, None | Some(Engine::Exact)) => {
                ("sun", Tagged::integer(&det_exact(&build_sun_legendre(q)?)?), None, Engine::Exact)
            }
            (Some(_), Some(e)) => return Err(mismatch("sun with --m", e)),
            (None, Some(e)) => return Err(mismatch("sun without --m", e)),
        },
    };
    let engine_name = match engine_used {
        Engine::Exact => "exact",
        Engine::Modular => "modular",
        Engine::Complex => "complex",
    };
    match format {
        OutputFormat::Json => {
            let mut v = json!({
                "matrix": name,
                "q": q,
                "m": m,
                "char": character,
                "engine": engine_name,
                "domain": value.domain,
                "value": value.value,
            });
            if let Some(s) = singular {
                v["numerically_singular"] = json!(s);
            }
            println!("{v}");
        }
        OutputFormat::Text => {
            let note = if singular == Some(true) { " (numerically singular)" } else { "" };
            println!("{} in {}{note}", value.value, value.domain);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_pell(index: u64, modulus: u64) -> Result<ExitCode, UsageError> {
    let pair = pell_pair_mod(index, &ModRing::new(modulus)?);
    println!("P={} Q={} (mod {})", pair.p, pair.q, modulus);
    Ok(ExitCode::SUCCESS)
}

fn parse_gamma_arg(x: &str) -> Result<GammaArg, UsageError> {
    match x.split_once('/') {
        Some((a, b)) => Ok(GammaArg::Ratio {
            num: a.trim().parse()?,
            den: b.trim().parse()?,
        }),
        None => Ok(GammaArg::Int(x.trim().parse()?)),
    }
}

fn cmd_gamma(p: u64, x: &str, precision: u32) -> Result<ExitCode, UsageError> {
    let v = gamma_p(parse_gamma_arg(x)?, p, precision)?;
    println!("{} (mod {}^{})", v.value, p, precision);
    Ok(ExitCode::SUCCESS)
}
