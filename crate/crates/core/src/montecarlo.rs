//! Monte Carlo estimates of the average per-user DoF.
//!
//! Trial `i` of a run with master seed `s` uses the realization drawn from
//! `derive_seed(s, i)`, so results do not depend on the number of worker
//! threads. All simulations switch off the last transmitter.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::assignment::{MessageAssignment, Strategy};
use crate::error::{DofError, Result};
use crate::formulas::tau_m1;
use crate::network::{
    derive_seed, sample_coefficients, sample_realization, NetworkRealization, NetworkTopology,
};
use crate::oracles::{lemma2_4_scheme_dof, tdma_optimal};
use crate::zf::{zf_dof, zf_dof_verified};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Greedy zero-forcing per atomic subnetwork.
    Zf,
    /// Optimal TDMA (cell association only).
    Tdma,
    /// Explicit priority scheme of the matching cell-association strategy.
    Lemma,
}

impl FromStr for Engine {
    type Err = DofError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zf" => Ok(Engine::Zf),
            "tdma" => Ok(Engine::Tdma),
            "lemma" | "lemma-scheme" => Ok(Engine::Lemma),
            other => Err(DofError::config(
                "engine",
                format!("unknown engine `{other}`"),
            )),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Zf => "zf",
            Engine::Tdma => "tdma",
            Engine::Lemma => "lemma",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DofEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub p: f64,
    pub strategy: String,
    pub engine: Engine,
    pub seed: u64,
}

/// A strategy bound to an engine for one network size, ready to evaluate.
pub struct Evaluator {
    assignment: MessageAssignment,
    engine: Engine,
    lemma: u8,
    verify: bool,
}

impl Evaluator {
    pub fn new(strategy: &Strategy, k: usize, engine: Engine) -> Result<Self> {
        if k == 0 {
            return Err(DofError::config("K", "must be at least 1"));
        }
        let assignment = strategy.build(k)?;
        let m = assignment.cooperation_order();
        let lemma = match engine {
            Engine::Zf => {
                if m > 2 {
                    return Err(DofError::UnsupportedCooperation { found: m, max: 2 });
                }
                assignment.check_local_shape()?;
                0
            }
            Engine::Tdma => {
                if m != 1 {
                    return Err(DofError::UnsupportedCooperation { found: m, max: 1 });
                }
                0
            }
            Engine::Lemma => match strategy {
                Strategy::Ternary { s } if s == &[1] => 1,
                Strategy::Ternary { s } if s == &[2, 1, 0] => 2,
                Strategy::Ternary { s } if s == &[1, 2, 1, 0] => 3,
                _ => {
                    return Err(DofError::SchemeMismatch(format!(
                        "{strategy} (the lemma engine covers (1), (2,1,0) and (1,2,1,0))"
                    )))
                }
            },
        };
        Ok(Evaluator {
            assignment,
            engine,
            lemma,
            verify: cfg!(debug_assertions),
        })
    }

    /// Also build and check the zero-forcing beams on every trial (zf engine).
    pub fn verify_beams(mut self, on: bool) -> Self {
        self.verify = on;
        self
    }

    pub fn assignment(&self) -> &MessageAssignment {
        &self.assignment
    }

    /// Delivered messages in one realization.
    pub fn dof(&self, r: &NetworkRealization, coeff_seed: u64) -> Result<usize> {
        match self.engine {
            Engine::Zf if self.verify => {
                zf_dof_verified(r, &self.assignment, &sample_coefficients(r, coeff_seed))
            }
            Engine::Zf => zf_dof(r, &self.assignment),
            Engine::Tdma => tdma_optimal(r, &self.assignment),
            Engine::Lemma => lemma2_4_scheme_dof(r, &self.assignment, self.lemma),
        }
    }

    /// Per-user DoF of each trial, in trial order.
    pub fn per_trial(&self, p: f64, trials: usize, seed: u64) -> Result<Vec<f64>> {
        let k = self.assignment.k();
        let topo = NetworkTopology::with_last_tx_deactivated(k);
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let s = derive_seed(seed, i as u64);
                let r = sample_realization(topo, p, s);
                self.dof(&r, derive_seed(s, u64::MAX))
                    .map(|d| d as f64 / k as f64)
            })
            .collect()
    }
}

fn check_inputs(p: f64, trials: usize) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(DofError::config("p", format!("{p} is outside [0, 1]")));
    }
    if trials == 0 {
        return Err(DofError::config("trials", "must be at least 1"));
    }
    Ok(())
}

/// Sample mean and standard error of the mean.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

pub fn estimate(
    strategy: &Strategy,
    k: usize,
    p: f64,
    trials: usize,
    seed: u64,
    engine: Engine,
) -> Result<DofEstimate> {
    check_inputs(p, trials)?;
    let ev = Evaluator::new(strategy, k, engine)?;
    estimate_with(&ev, strategy, p, trials, seed)
}

pub fn estimate_with(
    ev: &Evaluator,
    strategy: &Strategy,
    p: f64,
    trials: usize,
    seed: u64,
) -> Result<DofEstimate> {
    check_inputs(p, trials)?;
    let xs = ev.per_trial(p, trials, seed)?;
    let (mean, stderr) = mean_stderr(&xs);
    Ok(DofEstimate {
        mean,
        stderr,
        trials,
        k: ev.assignment.k(),
        p,
        strategy: strategy.to_string(),
        engine: ev.engine,
        seed,
    })
}

/// Two estimates are tied when their means are within this many combined
/// standard errors.
pub const TIE_Z: f64 = 2.0;

pub fn tied(a: &DofEstimate, b: &DofEstimate) -> bool {
    (a.mean - b.mean).abs() <= TIE_Z * (a.stderr.powi(2) + b.stderr.powi(2)).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepCell {
    pub f: f64,
    pub estimate: DofEstimate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub p: f64,
    pub cells: Vec<SweepCell>,
    /// Index of the largest mean (first one on exact equality).
    pub best: usize,
    /// Every `f` statistically tied with the best, including it.
    pub ties: Vec<f64>,
}

impl SweepRow {
    pub fn best_cell(&self) -> &SweepCell {
        &self.cells[self.best]
    }
}

fn argmax(cells: &[SweepCell]) -> (usize, Vec<f64>) {
    let mut best = 0;
    for (i, c) in cells.iter().enumerate() {
        if c.estimate.mean > cells[best].estimate.mean {
            best = i;
        }
    }
    let ties = cells
        .iter()
        .filter(|c| tied(&c.estimate, &cells[best].estimate))
        .map(|c| c.f)
        .collect();
    (best, ties)
}

/// Member of the simulated `M = 2` family for forward fraction `f`.
///
/// The piecewise rule of [`crate::assignment::fraction_assignment`] does not
/// reach the five-user block pattern at `f = 3/5`, although that pattern is
/// the family's named `3/5` member, so that grid point uses it directly.
pub fn family_member(f: f64) -> Strategy {
    if (f - 0.6).abs() < 1e-9 {
        Strategy::Theorem4
    } else {
        Strategy::Fraction { f }
    }
}

/// Evaluates the fraction family on a `(p, f)` grid with the zf engine.
/// Cell `(i, j)` uses the master seed mixed with `i * |f_grid| + j`.
pub fn sweep_fraction(
    k: usize,
    trials: usize,
    p_grid: &[f64],
    f_grid: &[f64],
    seed: u64,
) -> Result<Vec<SweepRow>> {
    for &p in p_grid {
        check_inputs(p, trials)?;
    }
    let strategies: Vec<Strategy> = f_grid.iter().map(|&f| family_member(f)).collect();
    let evaluators: Vec<Evaluator> = strategies
        .iter()
        .map(|s| Evaluator::new(s, k, Engine::Zf))
        .collect::<Result<_>>()?;
    p_grid
        .iter()
        .enumerate()
        .map(|(pi, &p)| {
            let cells = f_grid
                .iter()
                .enumerate()
                .map(|(fi, &f)| {
                    let cell_seed = derive_seed(seed, (pi * f_grid.len() + fi) as u64);
                    let estimate =
                        estimate_with(&evaluators[fi], &strategies[fi], p, trials, cell_seed)?;
                    Ok(SweepCell { f, estimate })
                })
                .collect::<Result<Vec<_>>>()?;
            let (best, ties) = argmax(&cells);
            Ok(SweepRow {
                p,
                cells,
                best,
                ties,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareRow {
    pub p: f64,
    pub tau_m1: f64,
    pub m1_best: DofEstimate,
    pub m2_best: DofEstimate,
}

/// Cell-association strategies whose formulas make up the best `M = 1` curve.
pub fn m1_strategies() -> [Strategy; 3] {
    [
        Strategy::Ternary { s: vec![1] },
        Strategy::Ternary { s: vec![2, 1, 0] },
        Strategy::Ternary {
            s: vec![1, 2, 1, 0],
        },
    ]
}

/// Per `p`: the closed-form best cell-association value, the best simulated
/// cell-association strategy (tdma engine) and the best simulated fraction
/// strategy over `f_grid` (zf engine).
pub fn compare_m1_m2(
    k: usize,
    trials: usize,
    p_grid: &[f64],
    f_grid: &[f64],
    seed: u64,
) -> Result<Vec<CompareRow>> {
    let m1 = m1_strategies();
    let m1_eval: Vec<Evaluator> = m1
        .iter()
        .map(|s| Evaluator::new(s, k, Engine::Tdma))
        .collect::<Result<_>>()?;
    let sweep = sweep_fraction(k, trials, p_grid, f_grid, derive_seed(seed, 1))?;
    p_grid
        .iter()
        .zip(sweep)
        .enumerate()
        .map(|(pi, (&p, row))| {
            let mut best: Option<DofEstimate> = None;
            for (si, (s, ev)) in m1.iter().zip(&m1_eval).enumerate() {
                let cell_seed = derive_seed(derive_seed(seed, 0), (pi * m1.len() + si) as u64);
                let e = estimate_with(ev, s, p, trials, cell_seed)?;
                if best.as_ref().map_or(true, |b| e.mean > b.mean) {
                    best = Some(e);
                }
            }
            Ok(CompareRow {
                p,
                tau_m1: tau_m1(p),
                m1_best: best.expect("three strategies"),
                m2_best: row.best_cell().estimate.clone(),
            })
        })
        .collect()
}

/// Parses `start:stop:step` (inclusive of `stop` up to rounding) or a single value.
pub fn parse_grid(text: &str, field: &str) -> Result<Vec<f64>> {
    let bad = |why: &str| DofError::config(field, format!("`{text}`: {why}"));
    let nums: Vec<f64> = text
        .split(':')
        .map(|x| x.trim().parse::<f64>().map_err(|_| bad("not a number")))
        .collect::<Result<_>>()?;
    let grid = match nums[..] {
        [v] => vec![v],
        [start, stop, step] => {
            if !(step > 0.0) || stop < start {
                return Err(bad("need step > 0 and stop >= start"));
            }
            let n = ((stop - start) / step + 1e-9).floor() as usize;
            (0..=n)
                .map(|i| {
                    let v = start + step * i as f64;
                    (v * 1e9).round() / 1e9
                })
                .collect()
        }
        _ => return Err(bad("expected start:stop:step")),
    };
    if grid.iter().any(|v| !(0.0..=1.0).contains(v)) {
        return Err(bad("values must lie in [0, 1]"));
    }
    Ok(grid)
}

pub fn write_estimates_csv<W: Write>(out: W, rows: &[(f64, &DofEstimate)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| DofError::config("out", e.to_string());
    w.write_record(["p", "f", "K", "trials", "mean", "stderr", "seed"])
        .map_err(io)?;
    for (f, e) in rows {
        w.write_record([
            e.p.to_string(),
            if f.is_nan() {
                String::new()
            } else {
                f.to_string()
            },
            e.k.to_string(),
            e.trials.to_string(),
            format!("{:.8}", e.mean),
            format!("{:.8}", e.stderr),
            e.seed.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush()
        .map_err(|e| DofError::config("out", e.to_string()))?;
    Ok(())
}
