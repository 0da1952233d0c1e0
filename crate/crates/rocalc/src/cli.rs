//! Command-line frontend: parse degree specs, run computations and
//! verification suites, emit tables and JSON.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 size
//! guard. Output is deterministic for identical flags and seed regardless of
//! worker parallelism.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::charlattice::{Character, SplittingConvention};
use crate::phiring::{dim_degree, enumerate_basis};
use crate::series::{expand, n2_series, phi_poincare, suspension_poincare, RationalSeries};
use crate::sscomplex::{coefficients, verify_suite_seeded, DEFAULT_SAMPLES, DEFAULT_SEED, SUITES};
use crate::Error;

#[derive(Parser)]
#[command(name = "rocalc", version, allow_negative_numbers = true, about = "Exact RO(G)-graded coefficients of ordinary mod-2 cohomology for G = (Z/2)^n")]
struct Cli {
    /// Emit JSON instead of tables
    #[arg(long, global = true)]
    json: bool,
    /// Suppress informational detail lines
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Coefficient group dimensions over a range of integer degrees
    Compute(ComputeArgs),
    /// Closed-form Poincare series (positive cone at any n, or any m at n=2)
    Series(SeriesArgs),
    /// Standard monomial basis of the fixed-point ring in one degree
    Basis(BasisArgs),
    /// Run a named verification suite
    Verify(VerifyArgs),
    /// Dimension table of the fixed-point ring
    PhiDims(PhiDimsArgs),
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long)]
    n: u8,
    /// Multiplicities, e.g. "101:2,011:-1"; unlisted characters are 0
    #[arg(long, default_value = "")]
    m: String,
    #[arg(long, allow_hyphen_values = true)]
    t_min: i64,
    #[arg(long, allow_hyphen_values = true)]
    t_max: i64,
    /// Show the filtration breakdown per degree
    #[arg(long)]
    breakdown: bool,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long)]
    n: u8,
    /// Multiplicities, e.g. "10:-2,01:-2"; unlisted characters are 0
    #[arg(long, default_value = "")]
    m: String,
    /// Print the Poincare series of the fixed-point ring instead
    #[arg(long)]
    phi: bool,
    /// Also print expansion coefficients on [t-min, t-max]
    #[arg(long, allow_hyphen_values = true)]
    t_min: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    t_max: Option<i64>,
}

#[derive(Args)]
struct BasisArgs {
    #[arg(long)]
    n: u8,
    #[arg(long)]
    degree: u32,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: positive-cone, negative-cone, quadrants, gap-remark, tensor,
    /// splitting, d2zero, euler, l1
    #[arg(long)]
    suite: String,
    #[arg(long)]
    n: u8,
    /// Number of sampled degrees for the sampled suites
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Seed for the deterministic sampler
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct PhiDimsArgs {
    #[arg(long)]
    n: u8,
    #[arg(long, default_value_t = 12)]
    max_degree: u32,
}

/// Parses the "101:2,011:-1" multiplicity syntax; unlisted characters are 0.
pub fn parse_m(spec: &str, n: u8) -> crate::Result<BTreeMap<Character, i64>> {
    let mut m = BTreeMap::new();
    for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
        let (cs, vs) = part
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected \"chars:int\", got \"{part}\"")))?;
        let c = Character::parse(cs.trim(), n)?;
        if c.is_zero() {
            return Err(Error::Parse(format!("zero character \"{cs}\" not allowed")));
        }
        let v: i64 = vs
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad multiplicity \"{vs}\"")))?;
        if m.insert(c, v).is_some() {
            return Err(Error::Parse(format!("duplicate character \"{cs}\"")));
        }
    }
    Ok(m)
}

fn exit_for(e: &Error) -> ExitCode {
    match e {
        Error::SizeLimit(_) => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

/// Parse arguments and run; the binary's whole main.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    let r = match &cli.cmd {
        Cmd::Compute(a) => cmd_compute(&cli, a),
        Cmd::Series(a) => cmd_series(&cli, a),
        Cmd::Basis(a) => cmd_basis(&cli, a),
        Cmd::Verify(a) => cmd_verify(&cli, a),
        Cmd::PhiDims(a) => cmd_phi_dims(&cli, a),
    };
    match r {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}

/// The per-degree JSON rows emitted by `compute --json`.
pub fn compute_rows_json(
    c: &crate::sscomplex::Coefficients,
    t_min: i64,
    t_max: i64,
) -> serde_json::Value {
    let rows: Vec<serde_json::Value> = (t_min..=t_max)
        .map(|t| {
            let by_f: serde_json::Map<String, serde_json::Value> = c
                .by_t
                .get(&t)
                .into_iter()
                .flatten()
                .map(|(&k, &h)| ((-(k as i64)).to_string(), serde_json::Value::from(h)))
                .collect();
            serde_json::json!({ "t": t, "total": c.total(t), "by_filtration": by_f })
        })
        .collect();
    serde_json::Value::from(rows)
}

fn cmd_compute(cli: &Cli, a: &ComputeArgs) -> crate::Result<ExitCode> {
    let m = parse_m(&a.m, a.n)?;
    if a.t_min > a.t_max {
        return Err(Error::Parse("t-min must be <= t-max".into()));
    }
    let c = coefficients(a.n, &m, a.t_min, a.t_max, SplittingConvention::Pivot)?;
    if cli.json {
        println!("{}", compute_rows_json(&c, a.t_min, a.t_max));
    } else {
        for t in a.t_min..=a.t_max {
            let total = c.total(t);
            if a.breakdown {
                let parts: Vec<String> = c
                    .by_t
                    .get(&t)
                    .into_iter()
                    .flatten()
                    .map(|(&k, &h)| format!("filtration {}: {}", -(k as i64), h))
                    .collect();
                println!("t={t}: total {total}  [{}]", parts.join(", "));
            } else {
                println!("t={t}: total {total}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// The closed form for `series`, or a usage error outside its range.
fn series_for(n: u8, m: &BTreeMap<Character, i64>) -> crate::Result<RationalSeries> {
    if m.values().all(|&v| v >= 0) {
        return suspension_poincare(n, m);
    }
    if n == 2 {
        let get = |s: &str| m.get(&Character::parse(s, 2).unwrap()).copied().unwrap_or(0);
        let (total, _) = n2_series(get("10"), get("01"), get("11"));
        return Ok(total);
    }
    Err(Error::Parse(
        "no closed form for mixed/negative multiplicities at n != 2; use `compute`".into(),
    ))
}

fn cmd_series(cli: &Cli, a: &SeriesArgs) -> crate::Result<ExitCode> {
    let m = parse_m(&a.m, a.n)?;
    let s = if a.phi {
        if !m.is_empty() {
            return Err(Error::Parse("--phi does not take multiplicities".into()));
        }
        phi_poincare(a.n)
    } else {
        series_for(a.n, &m)?
    };
    if cli.json {
        println!("{}", s.to_json());
    } else {
        println!("{s}");
    }
    if let (Some(lo), Some(hi)) = (a.t_min, a.t_max) {
        let coeffs = expand(&s, lo, hi);
        if cli.json {
            let rows: Vec<serde_json::Value> = (lo..=hi)
                .zip(&coeffs)
                .map(|(t, c)| serde_json::json!({ "t": t, "coeff": c.to_string() }))
                .collect();
            println!("{}", serde_json::Value::from(rows));
        } else {
            for (t, c) in (lo..=hi).zip(&coeffs) {
                println!("t={t}: {c}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_basis(cli: &Cli, a: &BasisArgs) -> crate::Result<ExitCode> {
    if a.n == 0 || a.n > 4 {
        return Err(Error::SizeLimit(format!("n must be 1..=4, got {}", a.n)));
    }
    let basis = enumerate_basis(a.n, a.degree);
    debug_assert_eq!(basis.len() as u64, dim_degree(a.n, a.degree));
    if cli.json {
        let rows: Vec<String> = basis.iter().map(|b| b.to_string()).collect();
        println!("{}", serde_json::json!({ "n": a.n, "degree": a.degree, "basis": rows }));
    } else {
        if !cli.quiet {
            println!("# {} standard monomials in degree {}", basis.len(), a.degree);
        }
        for b in &basis {
            println!("{b}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs) -> crate::Result<ExitCode> {
    if !SUITES.contains(&a.suite.as_str()) {
        return Err(Error::Parse(format!(
            "unknown suite \"{}\"; available: {}",
            a.suite,
            SUITES.join(", ")
        )));
    }
    let rep = verify_suite_seeded(&a.suite, a.n, a.samples, a.seed)?;
    if cli.json {
        println!(
            "{}",
            serde_json::json!({ "suite": rep.name, "pass": rep.pass, "details": rep.details })
        );
    } else {
        println!("suite {}: {}", rep.name, if rep.pass { "pass" } else { "FAIL" });
        if !cli.quiet || !rep.pass {
            for d in &rep.details {
                println!("  {d}");
            }
        }
    }
    Ok(if rep.pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_phi_dims(cli: &Cli, a: &PhiDimsArgs) -> crate::Result<ExitCode> {
    if a.n == 0 || a.n > 8 {
        return Err(Error::SizeLimit(format!("n must be 1..=8, got {}", a.n)));
    }
    let dims: Vec<u64> = (0..=a.max_degree).map(|d| dim_degree(a.n, d)).collect();
    if cli.json {
        let map: serde_json::Map<String, serde_json::Value> = (0..=a.max_degree)
            .zip(&dims)
            .map(|(d, &v)| (d.to_string(), serde_json::Value::from(v)))
            .collect();
        println!("{}", serde_json::json!({ "n": a.n, "dims": map }));
    } else {
        for (d, v) in (0..=a.max_degree).zip(&dims) {
            println!("d={d}: {v}");
        }
    }
    Ok(ExitCode::SUCCESS)
}
