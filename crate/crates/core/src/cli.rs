//! Command-line front end. `main.rs` only calls [`run`].
//!
//! Exit codes: 0 when every selected claim passes (a `PASS_WINDOW` also exits
//! 0 but prints a warning), 1 when a claim fails, 2 for invalid input, and 3
//! for a `PASS_PROBABILISTIC` result without `--allow-probabilistic`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::liealg::{self, AlgebraBasis, AlgebraElement};
use crate::modcomp::ComponentBasis;
use crate::rep::{self, RepParams};
use crate::superpoly::{format_poly, parse_poly};
use crate::theorems::{self, ClaimReport, Selection, Selector, Status, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PROBABILISTIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "strange-reps", version, about = "Oscillator representations of the strange Lie superalgebras P(n-1) and Q(n-1)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply one algebra element to a super polynomial.
    Apply(ApplyArgs),
    /// Run structural checks and report PASS / FAIL per claim.
    Verify(VerifyArgs),
    /// Print the dimension of a component and optionally its weight spaces.
    Dims(DimsArgs),
}

#[derive(Debug, Args)]
pub struct ApplyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub r: usize,
    /// Reject inputs whose coefficients are not in Q(sqrt(d)).
    #[arg(long)]
    pub d: Option<u64>,
    /// `"E a b"` for a matrix unit, or `P:i`, `Q:i`, `GL:i` for a basis element.
    pub element: String,
    /// Polynomial text, e.g. `x1^2*t3 - 1/2*t1*t2`.
    pub poly: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    #[value(name = "+")]
    Plus,
    #[value(name = "-")]
    Minus,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// thm1, thm2, lemma2.2, lemma2.4, lemma2.6, lemma3.1, basis3.7, characters or all.
    pub claim: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long, value_enum)]
    pub sign: Option<SignArg>,
    #[arg(long, env = "STRANGE_DEG_CAP", default_value_t = 8)]
    pub deg_cap: u32,
    #[arg(long, default_value_t = 4)]
    pub buffer: u32,
    #[arg(long, env = "STRANGE_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Bosonic degree bound for the character comparison.
    #[arg(long, default_value_t = 4)]
    pub trunc: u32,
    /// Write JSON instead of text; to stdout, or to the given path.
    #[arg(long, num_args = 0..=1, default_missing_value = "-")]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub allow_probabilistic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgebraArg {
    P,
    Q,
}

#[derive(Debug, Args)]
pub struct DimsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub r: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub k: i64,
    /// Restrict to monomials with this many fermions.
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long, env = "STRANGE_DEG_CAP", default_value_t = 8)]
    pub deg_cap: u32,
    /// Also list the weight-space dimensions.
    #[arg(long)]
    pub weights: bool,
    #[arg(long, value_enum, default_value_t = AlgebraArg::P)]
    pub algebra: AlgebraArg,
}

/// Parses `"E a b"` or `NAME:i` into an algebra element.
pub fn parse_element(n: usize, spec: &str) -> Result<AlgebraElement> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix('E') {
        let parts: Vec<&str> = rest.split_whitespace().collect();
        let [a, b] = parts.as_slice() else {
            bail!("matrix unit must look like \"E a b\", got {spec:?}");
        };
        let a: usize = a.parse().with_context(|| format!("row index {a:?}"))?;
        let b: usize = b.parse().with_context(|| format!("column index {b:?}"))?;
        return Ok(AlgebraElement::unit(n, a, b)?);
    }
    let (name, idx) = spec
        .split_once(':')
        .ok_or_else(|| anyhow!("unknown element {spec:?}; expected \"E a b\", P:i, Q:i or GL:i"))?;
    let idx: usize = idx.trim().parse().with_context(|| format!("basis index {idx:?}"))?;
    let basis: AlgebraBasis = match name.trim().to_ascii_uppercase().as_str() {
        "P" => liealg::basis_p(n)?,
        "Q" => liealg::basis_q(n)?,
        "GL" => liealg::basis_gl(n),
        other => bail!("unknown basis {other:?}; expected P, Q or GL"),
    };
    basis
        .elements
        .get(idx)
        .cloned()
        .ok_or_else(|| anyhow!("basis index {idx} out of range; {} has {} elements", name, basis.len()))
}

pub fn cmd_apply(args: &ApplyArgs) -> Result<String> {
    let params = RepParams::new(args.n, args.r)?;
    let x = parse_element(args.n, &args.element)?;
    let f = parse_poly(&args.poly, args.n)?;
    if let Some(d) = args.d {
        let field = f.field().map_err(|e| anyhow!("{e}"))?;
        if field != 1 && field != d {
            bail!("input lives in Q(sqrt({field})), not Q(sqrt({d}))");
        }
    }
    Ok(format_poly(&rep::apply_element(params, &x, &f)?))
}

pub fn cmd_dims(args: &DimsArgs) -> Result<String> {
    let params = RepParams::new(args.n, args.r)?;
    let cap = (0 < args.r && args.r < args.n).then_some(args.deg_cap);
    let comp = match args.t {
        Some(t) => ComponentBasis::with_fermions(params, args.k, t, cap)?,
        None => ComponentBasis::new(params, args.k, cap)?,
    };
    let mut out = match cap {
        Some(c) => format!("{} (window |alpha| <= {c})\n", comp.dim()),
        None => format!("{}\n", comp.dim()),
    };
    if args.weights {
        let cartan = match args.algebra {
            AlgebraArg::P => liealg::cartan_p(args.n)?,
            AlgebraArg::Q => liealg::cartan_q(args.n)?,
        };
        let mut table: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        for w in comp.weights(&cartan).into_iter().skip(comp.interior_start()) {
            *table.entry(w).or_insert(0) += 1;
        }
        for (w, d) in table {
            out.push_str(&format!("{w:?}\t{d}\n"));
        }
    }
    Ok(out)
}

fn selection(args: &VerifyArgs) -> Selection {
    Selection {
        r: args.r,
        k: args.k,
        l: args.l,
        t: args.t,
        positive: args.sign.map(|s| s == SignArg::Plus),
    }
}

/// Runs the selected claims. Parameter errors are returned as `Err`.
pub fn run_verify(args: &VerifyArgs) -> Result<Vec<ClaimReport>> {
    let sel: Selector = args.claim.parse()?;
    let opts = VerifyOptions {
        deg_cap: args.deg_cap,
        buffer: args.buffer,
        seed: args.seed,
        trunc: args.trunc,
        ..VerifyOptions::default()
    };
    if args.buffer > args.deg_cap {
        bail!("--buffer {} exceeds --deg-cap {}", args.buffer, args.deg_cap);
    }
    let jobs = theorems::jobs(args.n, sel, &selection(args));
    if jobs.is_empty() {
        bail!("no claims match the given parameters");
    }
    let mut reports = Vec::new();
    for r in theorems::run_jobs(args.n, &jobs, &opts) {
        match r {
            Ok(rep) => reports.push(rep),
            Err((job, e)) => bail!("{job:?}: {e}"),
        }
    }
    Ok(reports)
}

/// The exit code for a set of reports under the exit-code contract.
pub fn exit_code(reports: &[ClaimReport], allow_probabilistic: bool) -> i32 {
    let worst = reports.iter().fold(Status::Pass, |acc, r| acc.combine(r.status));
    match worst {
        Status::Fail => EXIT_FAIL,
        Status::PassProbabilistic if !allow_probabilistic => EXIT_PROBABILISTIC,
        _ => EXIT_OK,
    }
}

/// Text rendering: one line per claim and one indented line per check.
pub fn render_text(reports: &[ClaimReport]) -> String {
    let mut out = String::new();
    for rep in reports {
        out.push_str(&format!("{:<18} {}\n", rep.status.label(), rep.claim));
        for c in &rep.checks {
            out.push_str(&format!("  {:<18} {}: {}\n", c.status.label(), c.name, c.detail));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  {:<18} witness: {w}\n", ""));
            }
        }
        if !rep.dimensions.is_empty() {
            let dims: Vec<String> = rep.dimensions.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!("  dimensions: {}\n", dims.join(", ")));
        }
    }
    out
}

/// JSON rendering: an object for one report, an array otherwise.
pub fn render_json(reports: &[ClaimReport]) -> Result<String> {
    let s = match reports {
        [one] => serde_json::to_string_pretty(one)?,
        many => serde_json::to_string_pretty(many)?,
    };
    Ok(s + "\n")
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let reports = run_verify(args)?;
    match &args.json {
        Some(path) if path.as_os_str() == "-" => print!("{}", render_json(&reports)?),
        Some(path) => {
            std::fs::write(path, render_json(&reports)?).with_context(|| format!("writing {}", path.display()))?;
            print!("{}", render_text(&reports));
        }
        None => print!("{}", render_text(&reports)),
    }
    for rep in &reports {
        match rep.status {
            Status::PassWindow => eprintln!(
                "warning: {} holds only inside the window |alpha| <= {}",
                rep.claim,
                rep.params.deg_cap.unwrap_or(args.deg_cap)
            ),
            Status::PassProbabilistic => eprintln!(
                "warning: {} relies on {} seeded random samples (seed {})",
                rep.claim, VerifyOptions::default().samples, rep.seed
            ),
            _ => {}
        }
    }
    let code = exit_code(&reports, args.allow_probabilistic);
    if code == EXIT_PROBABILISTIC {
        eprintln!("probabilistic verdicts need --allow-probabilistic to exit 0");
    }
    Ok(code)
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Apply(a) => cmd_apply(a).map(|s| {
            println!("{s}");
            EXIT_OK
        }),
        Command::Dims(a) => cmd_dims(a).map(|s| {
            print!("{s}");
            EXIT_OK
        }),
        Command::Verify(a) => cmd_verify(a),
    };
    let _ = std::io::stdout().flush();
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        EXIT_USAGE
    })
}
