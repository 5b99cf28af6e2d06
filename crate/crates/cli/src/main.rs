//! Batch verification driver for the interpolating quantum-group kernel.
//!
//! Subcommands: `verify` (all suites over a parameter grid), `dual`
//! (specialization and dual action for one (g, n)), `coeffs` (PBW
//! coefficient tables), `chars` (characters and character duality).
//!
//! Exit codes: 0 = all checks pass, 1 = at least one verification failure,
//! 2 = configuration or I/O error.

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::process::ExitCode;

use uhh_core::langlands::{build_dual_setup, decompose_dual, dual_character};
use uhh_core::modules::default_window;
use uhh_core::report::{CheckRecord, Report};
use uhh_core::suites;

#[derive(Parser)]
#[command(name = "uhh", about = "Exact verification of the rank-1 interpolating quantum groups", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Comma-separated list of interpolation parameters g.
    #[arg(long, value_name = "LIST")]
    g: Option<String>,
    /// Series truncation order N.
    #[arg(long)]
    order: Option<u32>,
    /// Verma window size J (default max(2n+4, 4g+4)).
    #[arg(long)]
    window: Option<usize>,
    /// Write the structured JSON report to this path.
    #[arg(long)]
    out: Option<String>,
    /// Number of worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Key-value config file supplying defaults for the flags above.
    #[arg(long)]
    config: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every verification suite over a parameter grid.
    Verify {
        #[command(flatten)]
        common: CommonOpts,
        /// Largest highest weight n to test.
        #[arg(long)]
        nmax: Option<i64>,
    },
    /// Specialize one module at Q = eps and verify its dual action.
    Dual {
        #[command(flatten)]
        common: CommonOpts,
        /// Highest weight n (must be divisible by g).
        #[arg(long)]
        n: Option<i64>,
        /// Use a windowed Verma module instead of the finite module.
        #[arg(long)]
        verma: bool,
    },
    /// Print the PBW coefficient tables of the commutator and the Casimir.
    Coeffs {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Characters and character-level duality.
    Chars {
        #[command(flatten)]
        common: CommonOpts,
        /// Largest highest weight n to test.
        #[arg(long)]
        nmax: Option<i64>,
    },
}

/// Configuration error with the message shown to the user.
struct ConfigError(String);

fn parse_config_file(path: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read config file {}: {}", path, e)))?;
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line.split_once('=') {
            Some((k, v)) => {
                map.insert(k.trim().to_string(), v.trim().to_string());
            }
            None => {
                return Err(ConfigError(format!(
                    "{}:{}: expected key=value, got {:?}",
                    path,
                    lineno + 1,
                    line
                )))
            }
        }
    }
    Ok(map)
}

/// Resolved options after merging flags over config-file defaults.
struct Resolved {
    g_list: Vec<u32>,
    order: u32,
    window: Option<usize>,
    out: Option<String>,
    jobs: Option<usize>,
    nmax: i64,
    n: Option<i64>,
}

fn resolve(common: &CommonOpts, nmax: Option<i64>, n: Option<i64>) -> Result<Resolved, ConfigError> {
    let file = match &common.config {
        Some(p) => parse_config_file(p)?,
        None => BTreeMap::new(),
    };
    let pick = |flag: Option<String>, key: &str| flag.or_else(|| file.get(key).cloned());
    let g_text = pick(common.g.clone(), "g").unwrap_or_else(|| "1,2,3,4".into());
    let mut g_list = Vec::new();
    for part in g_text.split(',') {
        let v: u32 = part
            .trim()
            .parse()
            .map_err(|_| ConfigError(format!("invalid g value {:?}", part.trim())))?;
        if v == 0 {
            return Err(ConfigError("g must be at least 1".into()));
        }
        g_list.push(v);
    }
    let parse_num = |text: Option<String>, key: &str| -> Result<Option<i64>, ConfigError> {
        match text {
            None => Ok(None),
            Some(t) => t
                .parse()
                .map(Some)
                .map_err(|_| ConfigError(format!("invalid value {:?} for {}", t, key))),
        }
    };
    let order = match pick(common.order.map(|v| v.to_string()), "order") {
        Some(t) => t
            .parse()
            .map_err(|_| ConfigError(format!("invalid order {:?}", t)))?,
        None => 5,
    };
    let window = parse_num(pick(common.window.map(|v| v.to_string()), "window"), "window")?
        .map(|v| v as usize);
    let jobs = parse_num(pick(common.jobs.map(|v| v.to_string()), "jobs"), "jobs")?
        .map(|v| v as usize);
    let out = pick(common.out.clone(), "out");
    let nmax = parse_num(pick(nmax.map(|v| v.to_string()), "nmax"), "nmax")?.unwrap_or(6);
    let n = parse_num(pick(n.map(|v| v.to_string()), "n"), "n")?;
    if let (Some(w), Some(&g)) = (window, g_list.iter().max()) {
        if w < 4 * g as usize + 4 {
            return Err(ConfigError(format!(
                "window {} is below the minimum 4g+4 = {}",
                w,
                4 * g + 4
            )));
        }
    }
    Ok(Resolved {
        g_list,
        order,
        window,
        out,
        jobs,
        nmax,
        n,
    })
}

fn window_for(r: &Resolved, n: i64, g: u32) -> usize {
    r.window.unwrap_or_else(|| default_window(n, g))
}

/// A unit of schedulable work; results are merged in deterministic order by
/// the report, so parallel scheduling never changes output.
type Task = Box<dyn Fn() -> Vec<CheckRecord> + Send + Sync>;

fn run_tasks(tasks: Vec<Task>, jobs: Option<usize>) -> Report {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .expect("thread pool construction");
    let records: Vec<CheckRecord> = pool.install(|| {
        tasks
            .par_iter()
            .flat_map_iter(|t| t())
            .collect()
    });
    Report::new(records)
}

fn verify_tasks(r: &Resolved) -> Vec<Task> {
    let mut tasks: Vec<Task> = Vec::new();
    let order = r.order;
    let nmax = r.nmax;
    for &g in &r.g_list {
        tasks.push(Box::new(move || suites::suite_interp_poly(g)));
        tasks.push(Box::new(move || suites::suite_qnum_routes(g, 10, order)));
        tasks.push(Box::new(move || suites::suite_defining_relations(g, order)));
        tasks.push(Box::new(move || suites::suite_harish_chandra(g, order)));
        tasks.push(Box::new(move || suites::suite_coefficient_tables(g, order)));
        if g == 1 {
            tasks.push(Box::new(move || suites::suite_g1_closed_form(order)));
        }
        for n in 0..=nmax {
            tasks.push(Box::new(move || suites::suite_module_relations(g, n, order, true)));
        }
        for n in -nmax..=nmax {
            tasks.push(Box::new(move || suites::suite_module_relations(g, n, order, false)));
        }
        for n in (0..=nmax).filter(|n| n % g as i64 == 0) {
            tasks.push(Box::new(move || suites::suite_specialization(g, n, order, true)));
            tasks.push(Box::new(move || suites::suite_characters(g, n)));
        }
        let dual_ns: Vec<i64> = (0..=nmax.max(g as i64)).filter(|n| n % g as i64 == 0).collect();
        for n in dual_ns {
            let win = r.window.unwrap_or_else(|| default_window(n, g)) + 2 * g as usize;
            tasks.push(Box::new(move || suites::suite_duality(g, n, order, true, 0)));
            tasks.push(Box::new(move || suites::suite_duality(g, n, order, false, win)));
            tasks.push(Box::new(move || suites::suite_decomposition(g, n, order, true, 0)));
        }
    }
    tasks
}

fn emit(report: &Report, out: Option<&String>) -> Result<(), ConfigError> {
    print!("{}", report.summary());
    if let Some(path) = out {
        std::fs::write(path, report.to_json())
            .map_err(|e| ConfigError(format!("cannot write report to {}: {}", path, e)))?;
    }
    Ok(())
}

fn finish(report: Report, out: Option<&String>) -> ExitCode {
    match emit(&report, out) {
        Err(ConfigError(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Ok(()) => {
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn cmd_verify(common: CommonOpts, nmax: Option<i64>) -> ExitCode {
    let r = match resolve(&common, nmax, None) {
        Ok(r) => r,
        Err(ConfigError(msg)) => {
            eprintln!("error: {}", msg);
            return ExitCode::from(2);
        }
    };
    let report = run_tasks(verify_tasks(&r), r.jobs);
    finish(report, r.out.as_ref())
}

fn cmd_dual(common: CommonOpts, n: Option<i64>, verma: bool) -> ExitCode {
    let r = match resolve(&common, None, n) {
        Ok(r) => r,
        Err(ConfigError(msg)) => {
            eprintln!("error: {}", msg);
            return ExitCode::from(2);
        }
    };
    let g = r.g_list[0];
    let n = match r.n {
        Some(n) => n,
        None => {
            eprintln!("error: --n is required for the dual subcommand");
            return ExitCode::from(2);
        }
    };
    if n % g as i64 != 0 {
        eprintln!("error: n = {} is not divisible by g = {}", n, g);
        return ExitCode::from(2);
    }
    let order = if r.order == 5 { 6 } else { r.order };
    let finite = !verma;
    let window = if finite { 0 } else { window_for(&r, n, g) + 2 * g as usize };
    // Informational header, derived from an explicit build of the chain.
    match build_dual_setup(g, n, order, finite, window) {
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(1);
        }
        Ok(setup) => {
            println!("dual rank: {}", setup.dual.dim);
            println!("dual weights: {:?}", setup.dual.weights);
            if finite {
                if let Ok(pieces) = decompose_dual(&setup.dual) {
                    let highs: Vec<i64> = pieces.iter().map(|p| p.highest).collect();
                    println!("highest weights: {:?}", highs);
                }
                let ch = dual_character(&setup.dual);
                let items: Vec<String> = ch.iter().map(|(w, m)| format!("{}:{}", w, m)).collect();
                println!("dual character: {{{}}}", items.join(", "));
            }
        }
    }
    let mut records = suites::suite_duality(g, n, order, finite, window);
    records.extend(suites::suite_decomposition(g, n, order, finite, window));
    if finite {
        records.extend(suites::suite_specialization(g, n, order, true));
    }
    finish(Report::new(records), r.out.as_ref())
}

fn cmd_coeffs(common: CommonOpts) -> ExitCode {
    let r = match resolve(&common, None, None) {
        Ok(r) => r,
        Err(ConfigError(msg)) => {
            eprintln!("error: {}", msg);
            return ExitCode::from(2);
        }
    };
    let mut tasks: Vec<Task> = Vec::new();
    for &g in &r.g_list {
        let order = r.order;
        tasks.push(Box::new(move || suites::suite_coefficient_tables(g, order)));
        tasks.push(Box::new(move || suites::suite_harish_chandra(g, order)));
    }
    let report = run_tasks(tasks, r.jobs);
    finish(report, r.out.as_ref())
}

fn cmd_chars(common: CommonOpts, nmax: Option<i64>) -> ExitCode {
    let r = match resolve(&common, nmax, None) {
        Ok(r) => r,
        Err(ConfigError(msg)) => {
            eprintln!("error: {}", msg);
            return ExitCode::from(2);
        }
    };
    let mut tasks: Vec<Task> = Vec::new();
    for &g in &r.g_list {
        let order = r.order;
        for n in (0..=r.nmax.max(g as i64)).filter(|n| n % g as i64 == 0) {
            tasks.push(Box::new(move || suites::suite_characters(g, n)));
            tasks.push(Box::new(move || suites::suite_decomposition(g, n, order, true, 0)));
        }
    }
    let report = run_tasks(tasks, r.jobs);
    finish(report, r.out.as_ref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { common, nmax } => cmd_verify(common, nmax),
        Command::Dual { common, n, verma } => cmd_dual(common, n, verma),
        Command::Coeffs { common } => cmd_coeffs(common),
        Command::Chars { common, nmax } => cmd_chars(common, nmax),
    }
}
