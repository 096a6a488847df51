//! `jspairs`: equivariant stable-pair invariants of local curves and
//! wall-crossing checks for generating series.
//!
//! Exit codes: 0 success, 1 mathematical mismatch, 2 usage or input error,
//! 3 internal error.

mod checkpoint;
mod series_cmd;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jspairs::equivariant::SplitGeometry;
use jspairs::localcurve::{
    conjectured_value, js_invariant_closed_form, js_invariant_enumerated, residue_vanishing_check,
    verify_cases, CaseReport, ConjectureStatus, InvariantResult, Orientation, VerifyMode,
};
use jspairs::ratfun::RatFun;
use jspairs::Error;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "jspairs", version, about = "Stable-pair invariants of local curves and wall-crossing series checks")]
struct Cli {
    /// Worker threads (default: $JSPAIRS_JOBS, else all cores).
    #[arg(long, global = true, env = "JSPAIRS_JOBS")]
    jobs: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Report elapsed_ms as 0 so JSON output is reproducible byte for byte.
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Joyce-Song pair invariant P_{n,d} of a local curve.
    Js(JsArgs),
    /// Sweep the conjectured values over 1 <= d <= d_max, 1 <= n/d <= ratio_max.
    Verify(VerifyArgs),
    /// Pole and residue analysis of the n = 2d case.
    Residue(ResidueArgs),
    /// Generating-series computations from GV tables.
    #[command(subcommand)]
    Series(series_cmd::SeriesCommand),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Sum over torus-fixed pairs.
    Enumerate,
    /// The closed product formula.
    Closed,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OrientationArg {
    Formula,
    Lemma,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Literal,
    UpToOrientation,
}

#[derive(Args, Debug)]
struct JsArgs {
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    #[arg(long, allow_negative_numbers = true)]
    d: i64,
    #[arg(long, allow_negative_numbers = true, requires_all = ["l2", "l3"])]
    l1: Option<i64>,
    #[arg(long, allow_negative_numbers = true, requires_all = ["l1", "l3"])]
    l2: Option<i64>,
    #[arg(long, allow_negative_numbers = true, requires_all = ["l1", "l2"])]
    l3: Option<i64>,
    #[arg(long, value_enum, default_value_t = Method::Enumerate)]
    method: Method,
    #[arg(long, value_enum, default_value_t = OrientationArg::Formula)]
    orientation: OrientationArg,
    /// Also print each fixed point's contribution.
    #[arg(long)]
    audit: bool,
    /// Compare the printed value with the contents of this file.
    #[arg(long)]
    golden: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    d_max: i64,
    #[arg(long)]
    ratio_max: i64,
    #[arg(long, value_enum, default_value_t = ModeArg::Literal)]
    mode: ModeArg,
    /// Append each finished case to this JSON-lines file and skip cases already in it.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ResidueArgs {
    #[arg(long)]
    d: i64,
    /// Check every degree from 1 to d.
    #[arg(long)]
    all: bool,
}

/// Failure classes mapped onto exit codes.
#[derive(Debug)]
pub enum Failure {
    Mismatch(String),
    Usage(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Mismatch(m) | Failure::Usage(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotCalabiYau { .. }
            | Error::UnsupportedGeometry { .. }
            | Error::NonPositiveDegree(_)
            | Error::NotDivisible { .. }
            | Error::OnWall { .. }
            | Error::MissingNMin(_)
            | Error::Parse(_)
            | Error::Invalid(_) => Failure::Usage(e.to_string()),
            Error::HigherOrderPole { .. } => Failure::Mismatch(e.to_string()),
            Error::ArityMismatch { .. }
            | Error::GcdOfZeros
            | Error::DivisionByZero
            | Error::VanishingDenominator
            | Error::TrivialWeight { .. } => Failure::Internal(e.to_string()),
        }
    }
}

pub type CmdResult = Result<String, Failure>;

pub struct Ctx {
    pub format: Format,
    pub timing: bool,
}

impl Ctx {
    fn elapsed(&self, start: Instant) -> u64 {
        if self.timing {
            start.elapsed().as_millis() as u64
        } else {
            0
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = match cli.jobs {
        Some(0) => {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        Some(j) => j,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
        eprintln!("error: cannot start worker pool: {e}");
        return ExitCode::from(3);
    }
    let ctx = Ctx {
        format: cli.format,
        timing: !cli.no_timing,
    };
    let result = match cli.command {
        Command::Js(a) => cmd_js(&ctx, a),
        Command::Verify(a) => cmd_verify(&ctx, a),
        Command::Residue(a) => cmd_residue(&ctx, a),
        Command::Series(s) => series_cmd::run(&ctx, s),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn status_for(r: &InvariantResult) -> ConjectureStatus {
    if r.geometry != SplitGeometry::RESOLVED_CONIFOLD_TIMES_LINE || r.d < 1 {
        ConjectureStatus::NotApplicable
    } else if r.value == conjectured_value(r.n, r.d) {
        ConjectureStatus::Match
    } else {
        ConjectureStatus::Counterexample
    }
}

fn cmd_js(ctx: &Ctx, a: JsArgs) -> CmdResult {
    let geom = match (a.l1, a.l2, a.l3) {
        (Some(l1), Some(l2), Some(l3)) => SplitGeometry::new(l1, l2, l3)?,
        _ => SplitGeometry::RESOLVED_CONIFOLD_TIMES_LINE,
    };
    let orientation = match a.orientation {
        OrientationArg::Formula => Orientation::Formula,
        OrientationArg::Lemma => Orientation::Lemma,
    };
    let start = Instant::now();
    let r = match a.method {
        Method::Enumerate => js_invariant_enumerated(a.n, a.d, &geom, orientation, a.audit)?,
        Method::Closed => {
            if geom != SplitGeometry::RESOLVED_CONIFOLD_TIMES_LINE {
                return Err(Failure::Usage("the closed formula covers only (-1,-1,0)".into()));
            }
            js_invariant_closed_form(a.n, a.d)?
        }
    };
    let elapsed_ms = ctx.elapsed(start);
    let value = r.value.to_string();
    if let Some(path) = &a.golden {
        check_golden(path, &r.value)?;
    }
    let out = match ctx.format {
        Format::Text => {
            let mut s = String::new();
            if let Some(parts) = &r.contributions {
                for p in parts {
                    s.push_str(&format!("{} {}\n", p.label, p.value));
                }
            }
            s.push_str(&value);
            s.push('\n');
            s
        }
        Format::Json => {
            let mut j = json!({
                "n": r.n,
                "d": r.d,
                "geometry": geom.tag(),
                "value": value,
                "fixed_point_count": r.fixed_point_count,
                "elapsed_ms": elapsed_ms,
                "conjecture_status": status_for(&r),
            });
            if let Some(parts) = &r.contributions {
                j["contributions"] = parts
                    .iter()
                    .map(|p| json!({"point": p.label, "sign": p.sign, "value": p.value.to_string()}))
                    .collect();
            }
            format!("{j}\n")
        }
    };
    Ok(out)
}

fn check_golden(path: &PathBuf, value: &RatFun) -> Result<(), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read golden file {}: {e}", path.display())))?;
    let expect: RatFun = text
        .trim()
        .parse()
        .map_err(|e| Failure::Usage(format!("golden file {}: {e}", path.display())))?;
    if expect != *value {
        return Err(Failure::Mismatch(format!(
            "value {value} differs from golden {}",
            expect
        )));
    }
    Ok(())
}

fn case_line(c: &CaseReport) -> String {
    format!(
        "n={} d={} count={} value={} status={}",
        c.n, c.d, c.fixed_point_count, c.value, c.conjecture_status
    )
}

fn cmd_verify(ctx: &Ctx, a: VerifyArgs) -> CmdResult {
    if a.d_max < 1 || a.ratio_max < 1 {
        return Err(Failure::Usage("--d-max and --ratio-max must be at least 1".into()));
    }
    let mode = match a.mode {
        ModeArg::Literal => VerifyMode::Literal,
        ModeArg::UpToOrientation => VerifyMode::UpToOrientation,
    };
    let mut store = match &a.checkpoint {
        Some(p) => Some(checkpoint::Checkpoint::open(p, mode)?),
        None => None,
    };
    let mut reports = Vec::new();
    for d in 1..=a.d_max {
        for ratio in 1..=a.ratio_max {
            let n = d * ratio;
            if let Some(done) = store.as_ref().and_then(|s| s.get(n, d)) {
                reports.push(done.clone());
                continue;
            }
            let mut r = verify_cases(&[(n, d)], mode)?.remove(0);
            if !ctx.timing {
                r.elapsed_ms = 0;
            }
            if let Some(s) = store.as_mut() {
                s.append(&r)?;
            }
            reports.push(r);
        }
    }
    let mut out = String::new();
    for r in &reports {
        match ctx.format {
            Format::Text => out.push_str(&case_line(r)),
            Format::Json => out.push_str(&serde_json::to_string(r).expect("serializable")),
        }
        out.push('\n');
    }
    let first = reports
        .iter()
        .find(|r| r.conjecture_status == ConjectureStatus::Counterexample);
    match first {
        None => Ok(out),
        Some(c) => {
            print!("{out}");
            Err(Failure::Mismatch(format!(
                "counterexample at (n,d) = ({},{}): value {}, conjectured {}",
                c.n,
                c.d,
                c.value,
                conjectured_value(c.n, c.d)
            )))
        }
    }
}

fn cmd_residue(ctx: &Ctx, a: ResidueArgs) -> CmdResult {
    if a.d < 1 {
        return Err(Failure::Usage("--d must be at least 1".into()));
    }
    let degrees: Vec<i64> = if a.all { (1..=a.d).collect() } else { vec![a.d] };
    let mut out = String::new();
    let mut failed = None;
    for d in degrees {
        let r = residue_vanishing_check(d)?;
        match ctx.format {
            Format::Text => out.push_str(&format!(
                "d={} poles={} simple={} residues_vanish={} phi_zero={} {}\n",
                d,
                r.poles.len(),
                r.all_simple(),
                r.residues_vanish(),
                r.phi_is_zero,
                if r.passed() { "ok" } else { "FAIL" }
            )),
            Format::Json => {
                let poles: Vec<_> = r
                    .poles
                    .iter()
                    .map(|p| {
                        json!({
                            "m": p.m,
                            "summand_order": p.max_summand_order,
                            "total_order": p.total_order,
                            "residue": p.residue.to_string(),
                            "hand_residue": p.paper_residue.to_string(),
                            "summands_agree": p.summands_agree,
                        })
                    })
                    .collect();
                let j = json!({
                    "d": d,
                    "phi_is_zero": r.phi_is_zero,
                    "all_simple": r.all_simple(),
                    "residues_vanish": r.residues_vanish(),
                    "poles": poles,
                });
                out.push_str(&format!("{j}\n"));
            }
        }
        if !r.passed() && failed.is_none() {
            failed = Some(d);
        }
    }
    match failed {
        None => Ok(out),
        Some(d) => {
            print!("{out}");
            Err(Failure::Mismatch(format!("residue check failed for d = {d}")))
        }
    }
}
