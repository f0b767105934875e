//! `padic-eq`: certify p-adic equiangular configurations, evaluate bounds and
//! run lattice searches.
//!
//! Exit codes: 0 success, 1 input error, 2 configuration not certified,
//! 3 some bound fails, 4 search found a counterexample.

mod job;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use padic_equiangular::equiangular::{
    bound_classical_gerzon, bound_classical_relative, bound_ga_relative, bound_padic_relative,
};
use padic_equiangular::search::{frontier_table, run_sweep, SearchOptions, SearchResult, SearchSpec};
use padic_equiangular::{certify, BoundReport, Configuration, PadicAbs, Prime, Rational};

use job::{BoundParams, Job, JobFile};

const EXIT_INPUT: u8 = 1;
const EXIT_NOT_CERTIFIED: u8 = 2;
const EXIT_BOUND_FAILS: u8 = 3;
const EXIT_COUNTEREXAMPLE: u8 = 4;

#[derive(Parser)]
#[command(name = "padic-eq", about = "Exact p-adic equiangular lines certifier", disable_version_flag = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify a configuration JSON file and print its certificate.
    Certify { path: PathBuf },
    /// Evaluate the relative bounds for given parameters.
    Bound(BoundArgs),
    /// Run the search job in a TOML or JSON job file and print the frontier table.
    Search(SearchArgs),
    /// Run any job file, dispatching on its `mode`.
    Run {
        path: PathBuf,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Print the version.
    Version,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    d: u64,
    /// Common angle, "0" or "p^e" with the same p as --p.
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    /// Diagonal value <tau_j, tau_j>; selects the (gamma, a) form.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Evaluate the classical (real) bounds instead; needs --gamma2.
    #[arg(long)]
    classical: bool,
    /// Classical squared angle, a rational in [0, 1].
    #[arg(long)]
    gamma2: Option<String>,
}

#[derive(Args)]
struct SearchArgs {
    path: PathBuf,
    #[command(flatten)]
    flags: SearchFlags,
}

#[derive(Args, Clone, Default)]
struct SearchFlags {
    /// Worker threads; output does not depend on this.
    #[arg(long)]
    workers: Option<usize>,
    /// Write the search result JSON here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Also write the frontier table here.
    #[arg(long)]
    table: Option<PathBuf>,
    #[arg(long, hide = true)]
    inject_counterexample: bool,
}

/// Writes to stdout; a closed pipe (`| head`) ends the process quietly.
fn out(text: &str) {
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing output: {e}");
        std::process::exit(EXIT_INPUT as i32);
    }
}

macro_rules! outln {
    ($($arg:tt)*) => { out(&(format!($($arg)*) + "\n")) };
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match cli.command {
        Command::Certify { path } => cmd_certify(&path),
        Command::Bound(args) => cmd_bound(&BoundParams {
            p: args.p,
            n: args.n,
            d: args.d,
            gamma: args.gamma,
            a: args.a,
            classical: args.classical,
            gamma2: args.gamma2,
        }),
        Command::Search(args) => cmd_search(&args.path, &args.flags),
        Command::Run { path, search } => cmd_run(&path, &search),
        Command::Version => {
            outln!("padic-eq {}", env!("CARGO_PKG_VERSION"));
            Ok(0)
        }
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn cmd_run(path: &Path, flags: &SearchFlags) -> Result<u8> {
    match JobFile::load(path)? {
        Job::Certify(repr) => certify_and_print(repr.into_configuration()?),
        Job::Bound(params) => cmd_bound(&params),
        Job::Search(spec) => search_and_print(&spec, flags),
    }
}

fn cmd_certify(path: &Path) -> Result<u8> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    certify_and_print(Configuration::from_json(&text)?)
}

fn certify_and_print(cfg: Configuration) -> Result<u8> {
    let cert = certify(&cfg)?;
    outln!("{}", cert.to_json());
    Ok(if cert.is_certified() { 0 } else { EXIT_NOT_CERTIFIED })
}

fn print_report(r: &BoundReport) {
    let mut line = format!(
        "{}\tlhs={}\trhs={}\tholds={}",
        r.name,
        r.render_lhs(),
        r.render_rhs(),
        r.holds
    );
    if r.is_tight() {
        line.push_str("\tequality");
    }
    if let Some(case) = &r.case {
        line.push_str(&format!("\tcase={case}"));
    }
    outln!("{line}");
}

fn cmd_bound(params: &BoundParams) -> Result<u8> {
    let mut reports = Vec::new();
    if let Some(p) = params.p {
        let p = Prime::new(p).context("--p")?;
        let text = params.gamma.as_deref().ok_or_else(|| anyhow!("--gamma is required with --p"))?;
        let gamma = PadicAbs::parse(text, p).context("--gamma")?;
        let a: Option<Rational> = params.a.as_deref().map(str::parse).transpose().context("--a")?;
        match a {
            Some(a) if !a.is_one() => reports.push(bound_ga_relative(params.n, params.d, gamma, &a, p).context("--a")?),
            Some(a) => {
                reports.push(bound_padic_relative(params.n, params.d, gamma, p));
                reports.push(bound_ga_relative(params.n, params.d, gamma, &a, p)?);
            }
            None => reports.push(bound_padic_relative(params.n, params.d, gamma, p)),
        }
    } else if params.gamma.is_some() || params.a.is_some() {
        bail!("--gamma and --a need --p");
    }
    if params.classical {
        let text = params.gamma2.as_deref().ok_or_else(|| anyhow!("--classical needs --gamma2"))?;
        let g2: Rational = text.parse().context("--gamma2")?;
        reports.push(bound_classical_relative(params.n, params.d, &g2).context("--gamma2")?);
        reports.push(bound_classical_gerzon(params.n, params.d));
    } else if params.gamma2.is_some() {
        bail!("--gamma2 needs --classical");
    }
    if reports.is_empty() {
        bail!("nothing to evaluate: give --p and --gamma, or --classical and --gamma2");
    }
    for r in &reports {
        print_report(r);
    }
    Ok(if reports.iter().all(|r| r.holds) { 0 } else { EXIT_BOUND_FAILS })
}

fn cmd_search(path: &Path, flags: &SearchFlags) -> Result<u8> {
    match JobFile::load(path)? {
        Job::Search(spec) => search_and_print(&spec, flags),
        _ => bail!("{}: not a search job", path.display()),
    }
}

fn search_and_print(spec: &SearchSpec, flags: &SearchFlags) -> Result<u8> {
    let spaces = spec.spaces()?;
    let opts = SearchOptions {
        workers: flags.workers,
        inject_counterexample: flags.inject_counterexample,
        ..Default::default()
    };
    let results = run_sweep(&spaces, &opts)?;
    let table = frontier_table(&results);
    out(&table);
    if let Some(path) = &flags.table {
        std::fs::write(path, &table).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &flags.json {
        let reprs: Vec<_> = results.iter().map(SearchResult::to_repr).collect();
        let json = serde_json::to_string_pretty(&reprs)? + "\n";
        std::fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
    }
    for r in &results {
        for note in &r.notes {
            eprintln!("note: p={} d={}: {note}", r.p, r.d);
        }
        if r.truncated {
            eprintln!("warning: p={} d={}: search truncated, frontier is a lower bound", r.p, r.d);
        }
    }
    let bad: Vec<_> = results.iter().flat_map(|r| &r.counterexamples).collect();
    if bad.is_empty() {
        return Ok(0);
    }
    eprintln!("{}", "!".repeat(72));
    let (noun, verb) = if bad.len() == 1 { ("family", "violates") } else { ("families", "violate") };
    eprintln!("!!! COUNTEREXAMPLE: {} certified {noun} {verb} a p-adic bound", bad.len());
    for f in &bad {
        let c = &f.certificate;
        eprintln!("!!!   p={} d={} n={} gamma={}", c.p, c.d, c.n, f.gamma.render(c.p));
        eprintln!("!!!   {}", f.configuration.to_json());
        for b in c.violated_bounds() {
            eprintln!("!!!   {} reported failing: lhs={} rhs={}", b.name, b.render_lhs(), b.render_rhs());
        }
        for note in &c.notes {
            eprintln!("!!!   note: {note}");
        }
    }
    eprintln!("{}", "!".repeat(72));
    Ok(EXIT_COUNTEREXAMPLE)
}
