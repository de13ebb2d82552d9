//! Command-line front end. Exit codes: 0 success, 1 invalid input, 2 oracle
//! mismatch.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::assignment::Strategy;
use crate::error::{DofError, Result};
use crate::formulas::{
    zf_bound_thm4, zf_bound_thm4_normalized, zf_bound_thm5, zf_bound_thm5_normalized, CURVES,
    NORMALIZED_CURVES,
};
use crate::montecarlo::{
    compare_m1_m2, estimate_with, parse_grid, sweep_fraction, write_estimates_csv, CompareRow,
    Engine, Evaluator, SweepRow,
};
use crate::network::{derive_seed, sample_realization, NetworkTopology};
use crate::oracles::{random_suite, sandwich_suite, SuiteReport};
use crate::partition::partition_atomic;
use crate::zf::schedule_atomic;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "dofsim",
    version,
    about = "DoF simulator for linear interference networks with link erasures"
)]
pub struct Cli {
    /// Worker threads (default: available parallelism). Results do not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output file (parent directories are created). Defaults to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SeedArg {
    #[arg(long, env = "DOFSIM_SEED", default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form curves on a grid of erasure probabilities.
    Formulas {
        #[arg(long = "p-grid", default_value = "0:1:0.001")]
        p_grid: String,
        /// Also emit every curve divided by 1 - p.
        #[arg(long)]
        normalized: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Monte Carlo estimate for one strategy and one erasure probability.
    Simulate {
        /// Strategy as inline JSON or a path to a JSON file.
        #[arg(long)]
        strategy: String,
        #[arg(long = "K")]
        k: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 2000)]
        trials: usize,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value = "zf")]
        engine: String,
        /// Skip the per-trial beam check that debug builds run.
        #[arg(long)]
        no_verify: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Fraction-family grid over (p, f) with the best f per p.
    Sweep {
        #[arg(long = "K", default_value_t = 100)]
        k: usize,
        #[arg(long = "p-grid", default_value = "0:1:0.05")]
        p_grid: String,
        #[arg(long = "f-grid", default_value = "0:1:0.01")]
        f_grid: String,
        #[arg(long, default_value_t = 6000)]
        trials: usize,
        #[command(flatten)]
        seed: SeedArg,
        /// Where to write the best-f table. Defaults to `<out>_summary.<ext>`
        /// next to `--out`, or stdout after the grid.
        #[arg(long)]
        summary: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Exhaustive and randomized checks of the scheduler against the oracles.
    OracleCheck {
        /// Largest subnetwork size of the exhaustive sweep (at most 5).
        #[arg(long = "max-n", default_value_t = 5)]
        max_n: usize,
        /// Random draws for the greedy versus brute-force suite.
        #[arg(long, default_value_t = 100_000)]
        random: usize,
        #[arg(long = "random-max-n", default_value_t = 10)]
        random_max_n: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Atomic subnetworks and schedules of one sampled realization.
    Partition {
        #[arg(long)]
        strategy: String,
        #[arg(long = "K")]
        k: usize,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        seed: SeedArg,
        /// Trial index within a `simulate` run with the same seed.
        #[arg(long, default_value_t = 0)]
        trial: u64,
    },
    /// Best cell-association value against the best cooperative value per p.
    Compare {
        #[arg(long = "K", default_value_t = 100)]
        k: usize,
        #[arg(long = "p-grid", default_value = "0:0.9:0.1")]
        p_grid: String,
        #[arg(long = "f-grid", default_value = "0:1:0.02")]
        f_grid: String,
        #[arg(long, default_value_t = 2000)]
        trials: usize,
        #[command(flatten)]
        seed: SeedArg,
        #[command(flatten)]
        output: Output,
    },
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let _ = e.print();
            return code;
        }
    };
    if cli.workers == Some(0) {
        eprintln!("error: invalid value for `workers`: must be at least 1");
        return EXIT_INVALID;
    }
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start workers: {e}");
            return EXIT_INVALID;
        }
    };
    match pool.install(|| execute(cli.command)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INVALID
        }
    }
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::Formulas {
            p_grid,
            normalized,
            output,
        } => cmd_formulas(&parse_grid(&p_grid, "p-grid")?, normalized, &output),
        Command::Simulate {
            strategy,
            k,
            p,
            trials,
            seed,
            engine,
            no_verify,
            output,
        } => {
            let strategy = load_strategy(&strategy)?;
            let engine: Engine = engine.parse()?;
            check_common(k, trials)?;
            check_p(p)?;
            let mut ev = Evaluator::new(&strategy, k, engine)?;
            if no_verify {
                ev = ev.verify_beams(false);
            }
            let e = estimate_with(&ev, &strategy, p, trials, seed.seed)?;
            let mut w = open_out(output.out.as_deref())?;
            match output.format {
                Format::Csv => write_estimates_csv(&mut w, &[(f64::NAN, &e)])?,
                Format::Json => write_json(&mut w, &e)?,
            }
            if output.out.is_some() {
                println!(
                    "{} engine={} K={} p={} trials={}: mean {:.6} stderr {:.6}",
                    e.strategy, e.engine, e.k, e.p, e.trials, e.mean, e.stderr
                );
            }
            Ok(EXIT_OK)
        }
        Command::Sweep {
            k,
            p_grid,
            f_grid,
            trials,
            seed,
            summary,
            output,
        } => {
            check_common(k, trials)?;
            let p_grid = parse_grid(&p_grid, "p-grid")?;
            let f_grid = parse_grid(&f_grid, "f-grid")?;
            let rows = sweep_fraction(k, trials, &p_grid, &f_grid, seed.seed)?;
            cmd_sweep_output(&rows, summary, &output)?;
            Ok(EXIT_OK)
        }
        Command::OracleCheck {
            max_n,
            random,
            random_max_n,
            seed,
        } => {
            if !(1..=5).contains(&max_n) {
                return Err(DofError::config("max-n", "must be between 1 and 5"));
            }
            if !(1..=crate::oracles::BRUTE_FORCE_LIMIT).contains(&random_max_n) {
                return Err(DofError::config(
                    "random-max-n",
                    format!(
                        "must be between 1 and {}",
                        crate::oracles::BRUTE_FORCE_LIMIT
                    ),
                ));
            }
            let exhaustive = sandwich_suite(max_n, seed.seed);
            print_report(&format!("exhaustive N <= {max_n}"), &exhaustive);
            let randomized = random_suite(random, random_max_n, seed.seed);
            print_report(&format!("random N <= {random_max_n}"), &randomized);
            Ok(if exhaustive.passed() && randomized.passed() {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            })
        }
        Command::Partition {
            strategy,
            k,
            p,
            seed,
            trial,
        } => {
            let strategy = load_strategy(&strategy)?;
            check_common(k, 1)?;
            check_p(p)?;
            let a = strategy.build(k)?;
            let r = sample_realization(
                NetworkTopology::with_last_tx_deactivated(k),
                p,
                derive_seed(seed.seed, trial),
            );
            let part = partition_atomic(&r, &a);
            let absent: Vec<String> = (0..r.topology().num_links())
                .filter(|&i| !r.present_at(i))
                .map(|i| {
                    let (rx, tx) = r.topology().link_at(i);
                    format!("({rx},{tx})")
                })
                .collect();
            println!("erased links: {}", absent.join(" "));
            println!("inactive users: {:?}", part.inactive);
            let mut total = 0;
            for sub in &part.subnets {
                let s = schedule_atomic(sub);
                total += s.dof();
                println!("{sub} sets={:?} dof={}", sub.local_sets(), s.dof());
                print!("{}", s.dump());
            }
            println!("total dof: {total}");
            Ok(EXIT_OK)
        }
        Command::Compare {
            k,
            p_grid,
            f_grid,
            trials,
            seed,
            output,
        } => {
            check_common(k, trials)?;
            let p_grid = parse_grid(&p_grid, "p-grid")?;
            let f_grid = parse_grid(&f_grid, "f-grid")?;
            let rows = compare_m1_m2(k, trials, &p_grid, &f_grid, seed.seed)?;
            let mut w = open_out(output.out.as_deref())?;
            match output.format {
                Format::Csv => write_compare_csv(&mut w, &rows)?,
                Format::Json => write_json(&mut w, &rows)?,
            }
            Ok(EXIT_OK)
        }
    }
}

fn check_common(k: usize, trials: usize) -> Result<()> {
    if k == 0 {
        return Err(DofError::config("K", "must be at least 1"));
    }
    if trials == 0 {
        return Err(DofError::config("trials", "must be at least 1"));
    }
    Ok(())
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(DofError::config("p", format!("{p} is outside [0, 1]")));
    }
    Ok(())
}

/// Inline JSON when the argument starts with `{`, a file path otherwise.
pub fn load_strategy(arg: &str) -> Result<Strategy> {
    if arg.trim_start().starts_with('{') {
        return Strategy::from_json(arg);
    }
    let text = fs::read_to_string(arg)
        .map_err(|e| DofError::config("strategy", format!("cannot read `{arg}`: {e}")))?;
    Strategy::from_json(&text)
}

fn io_err(e: impl std::fmt::Display) -> DofError {
    DofError::config("out", e.to_string())
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    match path {
        None => Ok(Box::new(io::stdout().lock())),
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(|e| {
                    DofError::config("out", format!("cannot create `{}`: {e}", dir.display()))
                })?;
            }
            let f = File::create(path).map_err(|e| {
                DofError::config("out", format!("cannot create `{}`: {e}", path.display()))
            })?;
            Ok(Box::new(BufWriter::new(f)))
        }
    }
}

fn write_json<W: Write, T: Serialize + ?Sized>(w: &mut W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *w, value).map_err(io_err)?;
    writeln!(w).map_err(io_err)?;
    w.flush().map_err(io_err)
}

/// Column names of the formula table.
pub fn formula_header(normalized: bool) -> Vec<&'static str> {
    let mut h = vec!["p"];
    h.extend(CURVES.iter().map(|(name, _)| *name));
    h.push("zf_max");
    if normalized {
        h.extend(NORMALIZED_CURVES.iter().map(|(name, _)| *name));
        h.push("zf_max_norm");
    }
    h
}

/// One row of the formula table, in [`formula_header`] order.
pub fn formula_row(p: f64, normalized: bool) -> Vec<f64> {
    let mut row = vec![p];
    row.extend(CURVES.iter().map(|(_, f)| f(p)));
    let zf_max = zf_bound_thm4(p).max(zf_bound_thm5(p));
    row.push(zf_max);
    if normalized {
        row.extend(NORMALIZED_CURVES.iter().map(|(_, f)| f(p)));
        row.push(zf_bound_thm4_normalized(p).max(zf_bound_thm5_normalized(p)));
    }
    row
}

fn cmd_formulas(grid: &[f64], normalized: bool, output: &Output) -> Result<i32> {
    let header = formula_header(normalized);
    let mut w = open_out(output.out.as_deref())?;
    match output.format {
        Format::Csv => {
            let mut c = csv::Writer::from_writer(&mut w);
            c.write_record(&header).map_err(io_err)?;
            for &p in grid {
                c.write_record(formula_row(p, normalized).iter().map(|v| v.to_string()))
                    .map_err(io_err)?;
            }
            c.flush().map_err(io_err)?;
        }
        Format::Json => {
            let rows: Vec<serde_json::Map<String, serde_json::Value>> = grid
                .iter()
                .map(|&p| {
                    header
                        .iter()
                        .zip(formula_row(p, normalized))
                        .map(|(h, v)| (h.to_string(), serde_json::Value::from(v)))
                        .collect()
                })
                .collect();
            write_json(&mut w, &rows)?;
        }
    }
    w.flush().map_err(io_err)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SummaryRow {
    p: f64,
    best_f: f64,
    strategy: String,
    mean: f64,
    stderr: f64,
    ties: Vec<f64>,
}

fn summary_rows(rows: &[SweepRow]) -> Vec<SummaryRow> {
    rows.iter()
        .map(|r| {
            let b = r.best_cell();
            SummaryRow {
                p: r.p,
                best_f: b.f,
                strategy: b.estimate.strategy.clone(),
                mean: b.estimate.mean,
                stderr: b.estimate.stderr,
                ties: r.ties.clone(),
            }
        })
        .collect()
}

fn summary_path(out: &Path, format: Format) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    out.with_file_name(format!("{stem}_summary.{ext}"))
}

fn cmd_sweep_output(rows: &[SweepRow], summary: Option<PathBuf>, output: &Output) -> Result<()> {
    let summary_target = summary.or_else(|| {
        output
            .out
            .as_deref()
            .map(|o| summary_path(o, output.format))
    });
    {
        let mut w = open_out(output.out.as_deref())?;
        match output.format {
            Format::Csv => {
                let flat: Vec<(f64, &crate::montecarlo::DofEstimate)> = rows
                    .iter()
                    .flat_map(|r| r.cells.iter().map(|c| (c.f, &c.estimate)))
                    .collect();
                write_estimates_csv(&mut w, &flat)?;
            }
            Format::Json => write_json(&mut w, rows)?,
        }
    }
    let summary = summary_rows(rows);
    let mut w = open_out(summary_target.as_deref())?;
    match output.format {
        Format::Csv => {
            let mut c = csv::Writer::from_writer(&mut w);
            c.write_record(["p", "best_f", "strategy", "mean", "stderr", "ties"])
                .map_err(io_err)?;
            for s in &summary {
                let ties: Vec<String> = s.ties.iter().map(f64::to_string).collect();
                c.write_record([
                    s.p.to_string(),
                    s.best_f.to_string(),
                    s.strategy.clone(),
                    format!("{:.8}", s.mean),
                    format!("{:.8}", s.stderr),
                    ties.join(";"),
                ])
                .map_err(io_err)?;
            }
            c.flush().map_err(io_err)?;
        }
        Format::Json => write_json(&mut w, &summary)?,
    }
    w.flush().map_err(io_err)
}

fn write_compare_csv<W: Write>(w: &mut W, rows: &[CompareRow]) -> Result<()> {
    let mut c = csv::Writer::from_writer(w);
    c.write_record([
        "p",
        "tau_m1",
        "m1_mean",
        "m1_stderr",
        "m1_strategy",
        "m2_mean",
        "m2_stderr",
        "m2_strategy",
        "K",
        "trials",
    ])
    .map_err(io_err)?;
    for r in rows {
        c.write_record([
            r.p.to_string(),
            format!("{:.8}", r.tau_m1),
            format!("{:.8}", r.m1_best.mean),
            format!("{:.8}", r.m1_best.stderr),
            r.m1_best.strategy.clone(),
            format!("{:.8}", r.m2_best.mean),
            format!("{:.8}", r.m2_best.stderr),
            r.m2_best.strategy.clone(),
            r.m2_best.k.to_string(),
            r.m2_best.trials.to_string(),
        ])
        .map_err(io_err)?;
    }
    c.flush().map_err(io_err)
}

fn print_report(name: &str, r: &SuiteReport) {
    println!("{name}: {} cases, {} mismatches", r.cases, r.mismatches);
    if r.converse_checked > 0 || r.converse_loose > 0 {
        println!(
            "  converse: {} tight cases checked, {} valid but loose outside the two-transmitter class",
            r.converse_checked, r.converse_loose
        );
    }
    if let Some(ce) = &r.first_counterexample {
        println!("  first counterexample:\n{ce}");
    }
}
