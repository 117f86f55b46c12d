//! `steerq`: evaluate entropic steering criteria from the command line.
//!
//! Point evaluations print JSON by default; tabular commands (`figure1`,
//! `mc`) print CSV. Exit codes: 0 success, 2 invalid input, 1 I/O or
//! internal failure.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use steerq::analysis::{
    classify_ensemble, classify_ensemble_par, critical_alpha, figure1_table, one_way_window,
    verify_one_way_threshold, EnsembleReport, Figure1Row,
};
use steerq::criteria::{
    bound_tsallis, isotropic_lhs_closed_form, isotropic_lhs_shannon, select_bound,
    two_qubit_general_lhs, two_qubit_pauli_q2, CriterionResult, CANONICAL_AXES,
};
use steerq::measure::{check_mub, mub_overlap_deviation, mub_prime};
use steerq::states::{make_two_qubit, BlochForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "steerq",
    version,
    about = "Entropic steering detection: criteria, thresholds and Monte-Carlo classification",
    after_help = "Outputs are deterministic for deterministic inputs; rerunning a seeded \
                  command reproduces its bytes."
)]
struct Cli {
    /// Output format; `figure1` and `mc` default to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the closed-form isotropic-state criterion at one point.
    Iso(IsoArgs),
    /// Find the critical white-noise level alpha for the isotropic family.
    IsoThreshold(IsoThresholdArgs),
    /// Critical-alpha comparison table across dimensions (complete MUB sets).
    Figure1(Figure1Args),
    /// Evaluate the two-qubit Pauli-measurement criterion in Bloch form.
    Twoqubit(TwoQubitArgs),
    /// Classify Hilbert-Schmidt random two-qubit states against three criteria.
    Mc(McArgs),
    /// Detection window of the one-way steerable family, or a point check.
    Oneway(OnewayArgs),
    /// Construct mutually unbiased bases in prime dimension and verify them.
    Mubs(MubsArgs),
}

#[derive(Debug, Args)]
struct IsoArgs {
    /// Local dimension.
    #[arg(long)]
    d: usize,
    /// Number of mutually unbiased bases.
    #[arg(long)]
    m: usize,
    /// Entropic index; 1 selects the Shannon criterion.
    #[arg(long, default_value_t = 2.0)]
    q: f64,
    /// White-noise level in [0, 1].
    #[arg(long)]
    alpha: f64,
}

#[derive(Debug, Args)]
struct IsoThresholdArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 2.0)]
    q: f64,
    /// Bisection tolerance on alpha.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Debug, Args)]
struct Figure1Args {
    /// Comma-separated dimensions.
    #[arg(long, value_delimiter = ',', default_value = "2,3,5,7,11,13")]
    dims: Vec<usize>,
}

#[derive(Debug, Args)]
struct TwoQubitArgs {
    /// Alice's Bloch vector, comma-separated.
    #[arg(long, value_parser = parse_vec3, default_value = "0,0,0")]
    a: [f64; 3],
    /// Bob's Bloch vector, comma-separated.
    #[arg(long, value_parser = parse_vec3, default_value = "0,0,0")]
    b: [f64; 3],
    /// Diagonal correlations, comma-separated.
    #[arg(long, value_parser = parse_vec3)]
    c: [f64; 3],
    /// Entropic index in (1, 2].
    #[arg(long, default_value_t = 2.0)]
    q: f64,
}

#[derive(Debug, Args)]
struct McArgs {
    /// Number of Hilbert-Schmidt draws.
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    /// Ensemble seed.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Worker threads; 1 runs serially, 0 uses all cores. The counts are
    /// identical either way.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Debug, Args)]
struct OnewayArgs {
    /// Family angle in radians, inside (0, pi/4).
    #[arg(long)]
    theta: f64,
    /// Optional mixing weight; when given, the criterion is evaluated on the
    /// constructed state and reported next to the window membership.
    #[arg(long)]
    beta: Option<f64>,
}

#[derive(Debug, Args)]
struct MubsArgs {
    /// Prime dimension.
    #[arg(long)]
    d: usize,
    /// Number of bases; defaults to the complete set d + 1.
    #[arg(long)]
    m: Option<usize>,
}

fn parse_vec3(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated reals, got '{s}'"));
    }
    let mut v = [0.0; 3];
    for (slot, part) in v.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("bad component '{part}': {e}"))?;
    }
    Ok(v)
}

enum AppError {
    /// Bad parameters or an unanswerable request: exit 2.
    Input(String),
    /// I/O or other internal failure: exit 1.
    Internal(String),
}

impl From<steerq::Error> for AppError {
    fn from(e: steerq::Error) -> Self {
        AppError::Input(e.to_string())
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Internal(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    let rendered = match &cli.command {
        Command::Iso(args) => render_iso(args, cli.format)?,
        Command::IsoThreshold(args) => render_threshold(args, cli.format)?,
        Command::Figure1(args) => render_figure1(args, cli.format)?,
        Command::Twoqubit(args) => render_twoqubit(args, cli.format)?,
        Command::Mc(args) => render_mc(args, cli.format)?,
        Command::Oneway(args) => render_oneway(args, cli.format)?,
        Command::Mubs(args) => render_mubs(args, cli.format)?,
    };
    emit(&cli.out, &rendered)
}

fn effective(format: Option<Format>, default: Format) -> Format {
    format.unwrap_or(default)
}

fn emit(out: &Option<PathBuf>, body: &str) -> Result<(), AppError> {
    let mut text = body.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => fs::write(path, text)?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String, AppError> {
    serde_json::to_string_pretty(value).map_err(|e| AppError::Internal(e.to_string()))
}

#[derive(Serialize)]
struct IsoEval {
    d: usize,
    m: usize,
    q: f64,
    alpha: f64,
    lhs: f64,
    bound: f64,
    violated: bool,
    margin: f64,
}

fn render_iso(args: &IsoArgs, format: Option<Format>) -> Result<String, AppError> {
    let lhs = if args.q == 1.0 {
        isotropic_lhs_shannon(args.d, args.m, args.alpha)?
    } else {
        isotropic_lhs_closed_form(args.d, args.m, args.q, args.alpha)?
    };
    let bound = select_bound(args.d, args.m, args.q)?.value;
    let r = CriterionResult::from_lower_bound(lhs, bound);
    let eval = IsoEval {
        d: args.d,
        m: args.m,
        q: args.q,
        alpha: args.alpha,
        lhs: r.lhs,
        bound: r.bound,
        violated: r.violated,
        margin: r.margin,
    };
    Ok(match effective(format, Format::Json) {
        Format::Json => to_json(&eval)?,
        Format::Csv => format!(
            "d,m,q,alpha,lhs,bound,violated,margin\n{},{},{},{},{},{},{},{}",
            eval.d, eval.m, eval.q, eval.alpha, eval.lhs, eval.bound, eval.violated, eval.margin
        ),
    })
}

fn render_threshold(args: &IsoThresholdArgs, format: Option<Format>) -> Result<String, AppError> {
    let t = critical_alpha(args.d, args.m, args.q, args.tol)?;
    Ok(match effective(format, Format::Json) {
        Format::Json => to_json(&t)?,
        Format::Csv => format!(
            "d,m,q,alpha_crit,iterations\n{},{},{},{},{}",
            t.d, t.m, t.q, t.alpha_crit, t.iterations
        ),
    })
}

fn figure1_csv(rows: &[Figure1Row]) -> String {
    let mut out = String::from("d,alpha_q1,alpha_q2,alpha_cavalcanti\n");
    let cell = |v: Option<f64>| v.map(|x| format!("{x:.9}")).unwrap_or_default();
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{:.9}\n",
            row.d,
            cell(row.alpha_q1),
            cell(row.alpha_q2),
            row.alpha_cavalcanti
        ));
    }
    out
}

fn render_figure1(args: &Figure1Args, format: Option<Format>) -> Result<String, AppError> {
    if args.dims.is_empty() {
        return Err(AppError::Input("no dimensions given".into()));
    }
    let rows = figure1_table(&args.dims)?;
    Ok(match effective(format, Format::Csv) {
        Format::Json => to_json(&rows)?,
        Format::Csv => figure1_csv(&rows),
    })
}

#[derive(Serialize)]
struct TwoQubitEval {
    a: [f64; 3],
    b: [f64; 3],
    c: [f64; 3],
    q: f64,
    lhs: f64,
    bound: f64,
    violated: bool,
    margin: f64,
    alice_marginal_pure: bool,
}

fn render_twoqubit(args: &TwoQubitArgs, format: Option<Format>) -> Result<String, AppError> {
    let bloch = BlochForm::new(args.a, args.b, args.c)?;
    // Reject parameter combinations that are not physical states.
    make_two_qubit(&bloch)?;
    let r = if args.q == 2.0 {
        two_qubit_pauli_q2(&bloch)
    } else {
        let lhs = two_qubit_general_lhs(&bloch, &CANONICAL_AXES, &CANONICAL_AXES, args.q)?;
        CriterionResult::from_lower_bound(lhs, bound_tsallis(2, 3, args.q)?.value)
    };
    let eval = TwoQubitEval {
        a: args.a,
        b: args.b,
        c: args.c,
        q: args.q,
        lhs: r.lhs,
        bound: r.bound,
        violated: r.violated,
        margin: r.margin,
        alice_marginal_pure: r.alice_marginal_pure,
    };
    Ok(match effective(format, Format::Json) {
        Format::Json => to_json(&eval)?,
        Format::Csv => format!(
            "q,lhs,bound,violated,margin,alice_marginal_pure\n{},{},{},{},{},{}",
            eval.q, eval.lhs, eval.bound, eval.violated, eval.margin, eval.alice_marginal_pure
        ),
    })
}

fn mc_csv(report: &EnsembleReport) -> String {
    let rows = [
        ("none", report.counts.none, report.fractions.none),
        (
            "all_three",
            report.counts.all_three,
            report.fractions.all_three,
        ),
        (
            "only_eq21",
            report.counts.only_eq21,
            report.fractions.only_eq21,
        ),
        (
            "only_linear",
            report.counts.only_linear,
            report.fractions.only_linear,
        ),
        (
            "overflow",
            report.counts.overflow,
            report.fractions.overflow,
        ),
    ];
    let mut out = String::from("category,count,fraction\n");
    for (label, count, fraction) in rows {
        out.push_str(&format!("{label},{count},{fraction}\n"));
    }
    out
}

fn render_mc(args: &McArgs, format: Option<Format>) -> Result<String, AppError> {
    if args.samples == 0 {
        return Err(AppError::Input("need at least one sample".into()));
    }
    let report = match args.threads {
        1 => classify_ensemble(args.samples, args.seed),
        0 => classify_ensemble_par(args.samples, args.seed),
        n => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| AppError::Internal(e.to_string()))?;
            pool.install(|| classify_ensemble_par(args.samples, args.seed))
        }
    };
    Ok(match effective(format, Format::Csv) {
        Format::Json => to_json(&report)?,
        Format::Csv => mc_csv(&report),
    })
}

fn render_oneway(args: &OnewayArgs, format: Option<Format>) -> Result<String, AppError> {
    match args.beta {
        None => {
            let w = one_way_window(args.theta)?;
            Ok(match effective(format, Format::Json) {
                Format::Json => to_json(&w)?,
                Format::Csv => format!(
                    "theta,lower,beta_max,bob_to_alice_unsteerable\n{},{},{},{}",
                    w.theta, w.lower, w.beta_max, w.bob_to_alice_unsteerable_check
                ),
            })
        }
        Some(beta) => {
            let r = verify_one_way_threshold(args.theta, beta)?;
            Ok(match effective(format, Format::Json) {
                Format::Json => to_json(&r)?,
                Format::Csv => format!(
                    "theta,beta,lower,beta_max,inside_window,lhs,bound,violated\n\
                     {},{},{},{},{},{},{},{}",
                    r.theta,
                    r.beta,
                    r.lower,
                    r.beta_max,
                    r.inside_window,
                    r.criterion.lhs,
                    r.criterion.bound,
                    r.criterion.violated
                ),
            })
        }
    }
}

#[derive(Serialize)]
struct MubReport {
    d: usize,
    m: usize,
    mub_ok: bool,
    max_overlap_deviation: f64,
    /// Basis vectors as [re, im] component pairs.
    bases: Vec<Vec<Vec<[f64; 2]>>>,
}

fn render_mubs(args: &MubsArgs, format: Option<Format>) -> Result<String, AppError> {
    let m = args.m.unwrap_or(args.d + 1);
    let bases = mub_prime(args.d, m)?;
    let report = MubReport {
        d: args.d,
        m,
        mub_ok: check_mub(&bases),
        max_overlap_deviation: mub_overlap_deviation(&bases),
        bases: bases
            .iter()
            .map(|b| {
                b.vectors()
                    .iter()
                    .map(|v| v.iter().map(|z| [z.re, z.im]).collect())
                    .collect()
            })
            .collect(),
    };
    Ok(match effective(format, Format::Json) {
        Format::Json => to_json(&report)?,
        Format::Csv => {
            let mut out = String::from("basis,vector,component,re,im\n");
            for (bi, basis) in report.bases.iter().enumerate() {
                for (vi, vector) in basis.iter().enumerate() {
                    for (ci, comp) in vector.iter().enumerate() {
                        out.push_str(&format!("{bi},{vi},{ci},{},{}\n", comp[0], comp[1]));
                    }
                }
            }
            out
        }
    })
}
