//! `schatten-lab`: orthogonality and parallelism predicates on matrix files,
//! and the seeded verification suites.
//!
//! Exit codes: 0 the predicate holds / everything passed, 1 it fails,
//! 2 usage, parse or parameter errors.

mod matrix_file;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use schatten_lab::cmatrix::{Matrix, C64};
use schatten_lab::laws::{self, EnsembleKind, Fixture, SuiteId, SuiteReport};
use schatten_lab::norms::{schatten_norm, NormSpec, INF};
use schatten_lab::ortho::{bj_definitional, disjoint_supports, isosceles, semi_inner_product};
use schatten_lab::parallel::parallel_definitional;
use schatten_lab::DEFAULT_TOL;

use matrix_file::MatrixFile;

#[derive(Parser)]
#[command(
    name = "schatten-lab",
    version,
    about = "Birkhoff–James orthogonality and norm-parallelism for complex matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide one predicate for the matrices in two JSON files.
    Check(CheckArgs),
    /// Run verification suites (S1..S15, or `all`).
    Verify(VerifyArgs),
    /// List or run the example fixtures.
    Fixtures(FixturesArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    /// A ⊥ B: ‖A + γB‖ >= ‖A‖ for all γ.
    Bj,
    /// ‖A + B‖ = ‖A - B‖ (and with iB unless --real).
    Isosceles,
    /// ‖A + λB‖ = ‖A‖ + ‖B‖ for some unimodular λ.
    Parallel,
    /// AB* = 0 and A*B = 0.
    Supports,
    /// The semi-inner product [B, A]; holds when it vanishes.
    Sip,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NormKind {
    Schatten,
    Induced,
    Max,
}

#[derive(clap::Args)]
struct CheckArgs {
    kind: CheckKind,
    a: PathBuf,
    b: PathBuf,
    #[arg(long, value_enum, default_value = "schatten")]
    norm: NormKind,
    /// Exponent; accepts `inf`.
    #[arg(long, default_value = "2", value_parser = parse_exponent)]
    p: f64,
    /// Relative predicate tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Isosceles test with real scalars only.
    #[arg(long)]
    real: bool,
    /// Print the result as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(required = true)]
    suites: Vec<String>,
    #[arg(long, env = "SCHATTEN_LAB_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    dim: Option<usize>,
    /// Ensemble kind, e.g. psd or ginibre; defaults per suite.
    #[arg(long)]
    kind: Option<String>,
    /// Directory receiving one `<suite>.json` report per suite.
    #[arg(long, value_name = "DIR")]
    json: Option<PathBuf>,
    /// Re-run a single trial and print everything it checked.
    #[arg(long, value_name = "OFFSET")]
    replay: Option<usize>,
}

#[derive(clap::Args)]
struct FixturesArgs {
    #[arg(long)]
    run: bool,
    /// Read the fixture list from a JSON file instead of the built-in one.
    #[arg(long, value_name = "FILE")]
    registry: Option<PathBuf>,
    /// Write the built-in fixture list as JSON and exit.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["run", "registry"])]
    export: Option<PathBuf>,
}

fn parse_exponent(s: &str) -> Result<f64, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "inf" | "infinity" | "∞" => Ok(INF),
        t => match t.parse::<f64>() {
            Ok(p) if p > 0.0 => Ok(p),
            _ => Err(format!("`{s}` is not a positive exponent")),
        },
    }
}

fn fmt_p(p: f64) -> String {
    if p.is_infinite() {
        "∞".into()
    } else {
        format!("{p}")
    }
}

fn fmt_c(z: C64) -> String {
    format!("{:+.9e}{:+.9e}i", z.re, z.im)
}

/// Failure that maps to exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check(args) => check(&args),
        Command::Verify(args) => verify(&args),
        Command::Fixtures(args) => fixtures(&args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<(String, Matrix), Usage> {
    let f = MatrixFile::load(path)?;
    Ok((f.label(path), f.to_matrix()))
}

fn spec_of(args: &CheckArgs) -> NormSpec {
    match args.norm {
        NormKind::Schatten => NormSpec::Schatten(args.p),
        NormKind::Induced => NormSpec::InducedLp(args.p),
        NormKind::Max => NormSpec::VectorMax,
    }
}

fn spec_label(spec: NormSpec) -> String {
    match spec {
        NormSpec::Schatten(p) => format!("schatten p={}", fmt_p(p)),
        NormSpec::InducedLp(p) => format!("induced p={}", fmt_p(p)),
        NormSpec::VectorLp(p) => format!("entrywise p={}", fmt_p(p)),
        NormSpec::VectorMax => "max".into(),
    }
}

fn schatten_only(args: &CheckArgs) -> Result<f64, Usage> {
    if args.norm != NormKind::Schatten {
        return Err(Usage(
            "this check is defined for Schatten norms only".into(),
        ));
    }
    Ok(args.p)
}

fn check(args: &CheckArgs) -> Result<bool, Usage> {
    if !(args.tol >= 0.0 && args.tol.is_finite()) {
        return Err(Usage(format!("invalid tolerance {}", args.tol)));
    }
    let (na, a) = load(&args.a)?;
    let (nb, b) = load(&args.b)?;
    let spec = spec_of(args);
    let mut out = String::new();
    let mut json = serde_json::Map::new();
    let holds = match args.kind {
        CheckKind::Bj => {
            let v = bj_definitional(&a, &b, spec, args.tol)?;
            writeln!(out, "{na} ⊥ {nb} [{}]", spec_label(spec)).ok();
            writeln!(out, "verdict: {}", if v.holds { "holds" } else { "fails" }).ok();
            writeln!(out, "extremal scalar γ: {}", fmt_c(v.extremal_scalar)).ok();
            writeln!(out, "gap: {:.9e}", v.gap).ok();
            writeln!(out, "tolerance: {:.3e}", v.tolerance).ok();
            json.insert("verdict".into(), serde_json::to_value(v)?);
            v.holds
        }
        CheckKind::Isosceles => {
            let p = schatten_only(args)?;
            let v = isosceles(&a, &b, p, !args.real, args.tol)?;
            writeln!(
                out,
                "{na} ⊥_I {nb} [schatten p={}, {} scalars]",
                fmt_p(p),
                if args.real { "real" } else { "complex" }
            )
            .ok();
            writeln!(out, "verdict: {}", if v.holds { "holds" } else { "fails" }).ok();
            writeln!(out, "worst direction: {}", fmt_c(v.extremal_scalar)).ok();
            writeln!(out, "gap: {:.9e}", v.gap).ok();
            writeln!(out, "tolerance: {:.3e}", v.tolerance).ok();
            json.insert("verdict".into(), serde_json::to_value(v)?);
            v.holds
        }
        CheckKind::Parallel => {
            let v = parallel_definitional(&a, &b, spec, args.tol)?;
            writeln!(out, "{na} ∥ {nb} [{}]", spec_label(spec)).ok();
            writeln!(out, "verdict: {}", if v.holds { "holds" } else { "fails" }).ok();
            writeln!(out, "extremal scalar λ: {}", fmt_c(v.lambda_star)).ok();
            writeln!(out, "achieved: {:.12}", v.achieved).ok();
            writeln!(out, "target: {:.12}", v.target).ok();
            writeln!(out, "gap: {:.9e}", v.gap()).ok();
            writeln!(out, "tolerance: {:.3e}", v.tolerance).ok();
            json.insert("verdict".into(), serde_json::to_value(v)?);
            v.holds
        }
        CheckKind::Supports => {
            let r = disjoint_supports(&a, &b)?;
            let both = r.right_disjoint && r.left_disjoint;
            writeln!(out, "supports of {na} and {nb}").ok();
            writeln!(
                out,
                "verdict: {}",
                if both { "disjoint" } else { "not disjoint" }
            )
            .ok();
            writeln!(
                out,
                "‖AB*‖: {:.9e} ({})",
                r.right_residual,
                if r.right_disjoint { "zero" } else { "nonzero" }
            )
            .ok();
            writeln!(
                out,
                "‖A*B‖: {:.9e} ({})",
                r.left_residual,
                if r.left_disjoint { "zero" } else { "nonzero" }
            )
            .ok();
            json.insert("report".into(), serde_json::to_value(r)?);
            both
        }
        CheckKind::Sip => {
            let p = schatten_only(args)?;
            let s = semi_inner_product(&b, &a, p)?;
            let bound = args.tol * schatten_norm(&a, p)? * schatten_norm(&b, p)?;
            let holds = s.norm() <= bound;
            writeln!(out, "[{nb}, {na}] [schatten p={}]", fmt_p(p)).ok();
            writeln!(
                out,
                "verdict: {}",
                if holds { "vanishes" } else { "nonzero" }
            )
            .ok();
            writeln!(out, "value: {}", fmt_c(s)).ok();
            writeln!(out, "modulus: {:.9e}", s.norm()).ok();
            writeln!(out, "tolerance: {:.3e}", bound).ok();
            json.insert("value".into(), serde_json::json!([s.re, s.im]));
            json.insert("tolerance".into(), bound.into());
            holds
        }
    };
    if args.json {
        json.insert("holds".into(), holds.into());
        println!("{}", serde_json::to_string_pretty(&json)?);
    } else {
        print!("{out}");
    }
    Ok(holds)
}

fn parse_suites(names: &[String]) -> Result<Vec<SuiteId>, Usage> {
    let mut ids = Vec::new();
    for name in names {
        if name.eq_ignore_ascii_case("all") {
            ids.extend(SuiteId::ALL);
        } else {
            ids.push(name.parse::<SuiteId>()?);
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    ids.retain(|id| seen.insert(*id));
    Ok(ids)
}

fn config_for(id: SuiteId, args: &VerifyArgs) -> Result<laws::EnsembleConfig, Usage> {
    let mut c = id.default_config(args.seed);
    if let Some(t) = args.trials {
        c.trials = t;
    }
    if let Some(d) = args.dim {
        c.dimension = d;
    }
    if let Some(k) = &args.kind {
        c.kind = EnsembleKind::parse(k).ok_or_else(|| {
            let names: Vec<&str> = EnsembleKind::ALL.iter().map(|k| k.name()).collect();
            Usage(format!(
                "unknown ensemble `{k}` (one of {})",
                names.join(", ")
            ))
        })?;
    }
    Ok(c)
}

fn replay_command(r: &SuiteReport, offset: usize) -> String {
    let c = &r.config;
    format!(
        "schatten-lab verify {} --seed {} --trials {} --dim {} --kind {} --replay {offset}",
        r.suite_id,
        c.seed,
        c.trials,
        c.dimension,
        c.kind.name()
    )
}

fn print_report(r: &SuiteReport) {
    let c = &r.config;
    println!(
        "{:<4} {}  {}/{}  kind={} dim={} seed={}  {}",
        r.suite_id.to_string(),
        if r.passed() { "PASS" } else { "FAIL" },
        r.passes,
        r.trials,
        c.kind.name(),
        c.dimension,
        c.seed,
        r.title
    );
    for f in &r.failures {
        let gap = f.gap.map_or("-".into(), |g| format!("{g:.3e}"));
        println!(
            "     offset {} [{}] {} (gap {gap}) digest {}",
            f.offset,
            f.leg,
            f.check,
            &f.digest[..16]
        );
        println!("       replay: {}", replay_command(r, f.offset));
    }
    for d in &r.details {
        println!("     trial {} [{}] digest {}", d.offset, d.leg, d.digest);
        for m in &d.inputs {
            println!(
                "       input {} ({}x{})",
                m.name,
                m.matrix.rows(),
                m.matrix.cols()
            );
        }
        for c in &d.checks {
            let gap = c.gap.map_or("-".into(), |g| format!("{g:.3e}"));
            println!(
                "       {} {} (gap {gap})",
                if c.passed { "ok  " } else { "FAIL" },
                c.name
            );
        }
        if let Some(e) = &d.error {
            println!("       error: {e}");
        }
    }
}

fn write_report(dir: &Path, r: &SuiteReport) -> Result<(), Usage> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("{}.json", r.suite_id));
    std::fs::write(&path, serde_json::to_string_pretty(r)? + "\n")
        .map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn verify(args: &VerifyArgs) -> Result<bool, Usage> {
    let ids = parse_suites(&args.suites)?;
    // validate everything before running anything
    let configs = ids
        .iter()
        .map(|&id| config_for(id, args))
        .collect::<Result<Vec<_>, _>>()?;
    if args.replay.is_some() && ids.len() != 1 {
        return Err(Usage("--replay needs exactly one suite".into()));
    }
    let mut all = true;
    for (&id, config) in ids.iter().zip(&configs) {
        let report = match args.replay {
            Some(offset) => laws::replay_failure(id, config, offset)?,
            None => laws::run_suite(id, config)?,
        };
        print_report(&report);
        if let Some(dir) = &args.json {
            write_report(dir, &report)?;
        }
        all &= report.passed();
    }
    if ids.len() > 1 {
        println!(
            "{}",
            if all {
                "all suites passed"
            } else {
                "some suites failed"
            }
        );
    }
    Ok(all)
}

fn fixtures(args: &FixturesArgs) -> Result<bool, Usage> {
    if let Some(path) = &args.export {
        std::fs::write(
            path,
            serde_json::to_string_pretty(&laws::fixtures())? + "\n",
        )?;
        return Ok(true);
    }
    let list: Vec<Fixture> = match &args.registry {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Usage(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| {
                Usage(format!(
                    "{}:{}:{}: {e}",
                    path.display(),
                    e.line(),
                    e.column()
                ))
            })?
        }
        None => laws::fixtures(),
    };
    if !args.run {
        let width = list.iter().map(|f| f.name.len()).max().unwrap_or(0);
        for f in &list {
            println!(
                "{:<width$}  {:>2} checks  {}",
                f.name,
                f.expectations.len(),
                f.anchor
            );
        }
        println!("{} fixtures", list.len());
        return Ok(true);
    }
    let mut failed = Vec::new();
    for f in &list {
        let o = f.run();
        println!("{} {}", if o.passed { "PASS" } else { "FAIL" }, o.name);
        for c in o.checks.iter().filter(|c| !c.passed) {
            println!(
                "     {}: expected {:?}, observed {:?}",
                c.description, c.expected, c.observed
            );
        }
        if !o.passed {
            failed.push(o.name);
        }
    }
    if failed.is_empty() {
        println!("all {} fixtures reproduced", list.len());
    } else {
        println!("failing fixtures: {}", failed.join(", "));
    }
    Ok(failed.is_empty())
}
