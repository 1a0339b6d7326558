//! Benchmark harness: budget grids, the sweep protocol, and CSV emission.
//!
//! A run covers every (shape, theta, seed, budget, algorithm) cell:
//! generate the instance, solve, validate, and record the reward as a
//! fraction of the instance's total reward. Aggregation reduces the seeds
//! of each (shape, theta, budget, algorithm) group to a mean and a normal
//! 95% confidence half-width. Runs are pure functions of their config:
//! instance seeds are derived deterministically and the emitted CSV files
//! are byte-identical across executions (per-solve runtimes are kept in
//! memory only, since wall-clock times would break that).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::algo::Algorithm;
use crate::graph::validate_tour;
use crate::instances::{gen_zipf, GenConfig};
use crate::Error;

/// Sweep protocol parameters.
#[derive(Debug, Clone)]
pub struct BenchmarkConfig {
    /// Graph shapes as `(m, n)` pairs.
    pub shapes: Vec<(usize, usize)>,
    pub thetas: Vec<f64>,
    pub seeds_per_cell: usize,
    pub budget_steps: usize,
    pub algorithms: Vec<Algorithm>,
    /// Directory receiving `raw.csv` and `aggregate.csv`.
    pub output: PathBuf,
}

impl Default for BenchmarkConfig {
    fn default() -> BenchmarkConfig {
        BenchmarkConfig {
            shapes: vec![(100, 50), (50, 100)],
            thetas: vec![0.0, 0.8, 1.9, 2.7],
            seeds_per_cell: 30,
            budget_steps: 20,
            algorithms: vec![
                Algorithm::Ofr,
                Algorithm::Osc,
                Algorithm::Hgc,
                Algorithm::Gfr,
                Algorithm::Gpr,
            ],
            output: PathBuf::from("bench_out"),
        }
    }
}

impl BenchmarkConfig {
    /// Parses the `key=value` config format. Unset keys keep their
    /// defaults; unknown keys are rejected.
    ///
    /// ```text
    /// shapes = 100x50,50x100
    /// thetas = 0,0.8,1.9,2.7
    /// seeds_per_cell = 30
    /// budget_steps = 20
    /// algorithms = ofr,osc,hgc,gfr,gpr
    /// output = bench_out
    /// ```
    pub fn parse(text: &str) -> Result<BenchmarkConfig, Error> {
        let mut cfg = BenchmarkConfig::default();
        for (line_no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!(
                    "line {}: expected key=value, got {line:?}",
                    line_no + 1
                ))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "shapes" => {
                    cfg.shapes = value
                        .split(',')
                        .map(|token| {
                            let token = token.trim();
                            let (m, n) = token.split_once('x').ok_or_else(|| {
                                Error::Config(format!("shape {token:?} is not MxN"))
                            })?;
                            let m = m.parse().map_err(|_| {
                                Error::Config(format!("bad row count in shape {token:?}"))
                            })?;
                            let n = n.parse().map_err(|_| {
                                Error::Config(format!("bad column count in shape {token:?}"))
                            })?;
                            Ok((m, n))
                        })
                        .collect::<Result<_, Error>>()?;
                }
                "thetas" => {
                    cfg.thetas = value
                        .split(',')
                        .map(|t| {
                            t.trim()
                                .parse()
                                .map_err(|_| Error::Config(format!("bad theta {t:?}")))
                        })
                        .collect::<Result<_, Error>>()?;
                }
                "seeds_per_cell" => {
                    cfg.seeds_per_cell = value
                        .parse()
                        .map_err(|_| Error::Config(format!("bad seeds_per_cell {value:?}")))?;
                }
                "budget_steps" => {
                    cfg.budget_steps = value
                        .parse()
                        .map_err(|_| Error::Config(format!("bad budget_steps {value:?}")))?;
                }
                "algorithms" => {
                    cfg.algorithms = value
                        .split(',')
                        .map(|a| a.trim().parse())
                        .collect::<Result<_, Error>>()?;
                }
                "output" => {
                    cfg.output = PathBuf::from(value);
                }
                other => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key {other:?}",
                        line_no + 1
                    )));
                }
            }
        }
        if cfg.budget_steps < 2 {
            return Err(Error::Config("budget_steps must be at least 2".into()));
        }
        if cfg.seeds_per_cell < 1 {
            return Err(Error::Config("seeds_per_cell must be at least 1".into()));
        }
        if cfg.shapes.is_empty() || cfg.thetas.is_empty() || cfg.algorithms.is_empty() {
            return Err(Error::Config(
                "shapes, thetas, and algorithms must be non-empty".into(),
            ));
        }
        Ok(cfg)
    }
}

/// One solved benchmark cell.
#[derive(Debug, Clone)]
pub struct ResultRecord {
    pub shape: String,
    pub theta: f64,
    pub seed: u64,
    pub algorithm: String,
    pub budget: usize,
    /// Budget as a fraction of the shape's trivial-coverage budget.
    pub budget_fraction: f64,
    pub reward: f64,
    pub total_reward: f64,
    pub reward_fraction: f64,
    /// Wall-clock solve time; in-memory only, never written to the CSVs.
    pub runtime_microseconds: u128,
    pub tour_valid: bool,
}

/// Smallest budget that admits any full row, and the budget at which the
/// whole graph can be covered.
pub fn budget_bounds(m: usize, n: usize) -> (usize, usize) {
    (2 * (n + 1), (n + 1) * m + 2 * (m - 1))
}

/// `steps` budgets linearly spaced over the closed interval from the
/// minimum sensible budget to the trivial-coverage budget, rounded to
/// integers and deduplicated.
pub fn budget_grid(m: usize, n: usize, steps: usize) -> Vec<usize> {
    assert!(steps >= 2, "a grid needs at least its two endpoints");
    let (lo, hi) = budget_bounds(m, n);
    let span = hi as f64 - lo as f64;
    let mut grid = Vec::with_capacity(steps);
    for idx in 0..steps {
        let frac = idx as f64 / (steps - 1) as f64;
        let budget = (lo as f64 + frac * span).round() as usize;
        if grid.last() != Some(&budget) {
            grid.push(budget);
        }
    }
    grid
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Instance seed for one (shape, theta, seed-index) cell, independent of
/// budget and algorithm.
fn cell_seed(m: usize, n: usize, theta: f64, index: u64) -> u64 {
    let mut h = splitmix64(m as u64);
    h = splitmix64(h ^ (n as u64));
    h = splitmix64(h ^ theta.to_bits());
    splitmix64(h ^ index)
}

/// Runs the full sweep. Any solver emitting an invalid tour aborts the
/// run with the offending cell named; that is a correctness tripwire, not
/// an expected outcome.
pub fn run_benchmark(cfg: &BenchmarkConfig) -> Result<Vec<ResultRecord>, Error> {
    let mut records = Vec::new();
    for &(m, n) in &cfg.shapes {
        let shape = format!("{m}x{n}");
        let (_, b_max) = budget_bounds(m, n);
        let grid = budget_grid(m, n, cfg.budget_steps);
        for &theta in &cfg.thetas {
            for seed_index in 0..cfg.seeds_per_cell as u64 {
                let seed = cell_seed(m, n, theta, seed_index);
                let g = gen_zipf(&GenConfig::new(m, n, theta, seed));
                let total_reward = g.total_reward();
                for &budget in &grid {
                    for &algorithm in &cfg.algorithms {
                        let started = Instant::now();
                        let result = algorithm.solve(&g, budget)?;
                        let runtime = started.elapsed().as_micros();
                        let report = validate_tour(&g, result.tour.vertices(), budget);
                        if !report.passed() {
                            return Err(Error::InvalidResult {
                                cell: format!(
                                    "shape={shape} theta={theta} seed={seed_index} \
                                     budget={budget} algorithm={algorithm}"
                                ),
                                detail: report.violations().join("; "),
                            });
                        }
                        let reward_fraction = if total_reward > 0.0 {
                            result.reward / total_reward
                        } else {
                            0.0
                        };
                        records.push(ResultRecord {
                            shape: shape.clone(),
                            theta,
                            seed: seed_index,
                            algorithm: algorithm.name().to_string(),
                            budget,
                            budget_fraction: budget as f64 / b_max as f64,
                            reward: result.reward,
                            total_reward,
                            reward_fraction,
                            runtime_microseconds: runtime,
                            tour_valid: true,
                        });
                    }
                }
            }
        }
    }
    Ok(records)
}

/// One aggregated (shape, theta, budget, algorithm) group.
#[derive(Debug, Clone)]
pub struct AggregateRow {
    pub shape: String,
    pub theta: f64,
    pub budget: usize,
    pub budget_fraction: f64,
    pub algorithm: String,
    pub mean: f64,
    pub ci95: f64,
}

/// Mean reward fraction and normal-approximation 95% half-width per
/// (shape, theta, budget, algorithm) group, in stable sorted order.
pub fn aggregate(records: &[ResultRecord]) -> Vec<AggregateRow> {
    let mut sorted: Vec<&ResultRecord> = records.iter().collect();
    sorted.sort_by(|a, b| {
        a.shape
            .cmp(&b.shape)
            .then(a.theta.total_cmp(&b.theta))
            .then(a.budget.cmp(&b.budget))
            .then(a.algorithm.cmp(&b.algorithm))
            .then(a.seed.cmp(&b.seed))
    });

    let mut out: Vec<AggregateRow> = Vec::new();
    let mut group: Vec<&ResultRecord> = Vec::new();
    let flush = |group: &mut Vec<&ResultRecord>, out: &mut Vec<AggregateRow>| {
        if group.is_empty() {
            return;
        }
        let k = group.len() as f64;
        let mean = group.iter().map(|r| r.reward_fraction).sum::<f64>() / k;
        let ci95 = if group.len() > 1 {
            let var = group
                .iter()
                .map(|r| (r.reward_fraction - mean).powi(2))
                .sum::<f64>()
                / (k - 1.0);
            1.96 * (var / k).sqrt()
        } else {
            0.0
        };
        let first = group[0];
        out.push(AggregateRow {
            shape: first.shape.clone(),
            theta: first.theta,
            budget: first.budget,
            budget_fraction: first.budget_fraction,
            algorithm: first.algorithm.clone(),
            mean,
            ci95,
        });
        group.clear();
    };

    for record in sorted {
        if let Some(last) = group.last() {
            let same = last.shape == record.shape
                && last.theta == record.theta
                && last.budget == record.budget
                && last.algorithm == record.algorithm;
            if !same {
                flush(&mut group, &mut out);
            }
        }
        group.push(record);
    }
    flush(&mut group, &mut out);
    out
}

/// Writes `raw.csv` and `aggregate.csv` under `dir`. Both files are
/// stable-sorted and byte-deterministic for identical records.
pub fn emit_results(records: &[ResultRecord], dir: &Path) -> Result<(PathBuf, PathBuf), Error> {
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;

    let mut sorted: Vec<&ResultRecord> = records.iter().collect();
    sorted.sort_by(|a, b| {
        a.shape
            .cmp(&b.shape)
            .then(a.theta.total_cmp(&b.theta))
            .then(a.seed.cmp(&b.seed))
            .then(a.budget.cmp(&b.budget))
            .then(a.algorithm.cmp(&b.algorithm))
    });

    let mut raw = String::new();
    raw.push_str(
        "shape,theta,seed,algorithm,budget,budget_fraction,reward,total_reward,reward_fraction,tour_valid\n",
    );
    for r in &sorted {
        writeln!(
            raw,
            "{},{},{},{},{},{:.6},{},{},{:.6},{}",
            r.shape,
            r.theta,
            r.seed,
            r.algorithm,
            r.budget,
            r.budget_fraction,
            r.reward,
            r.total_reward,
            r.reward_fraction,
            r.tour_valid
        )
        .expect("writing to a string cannot fail");
    }
    let raw_path = dir.join("raw.csv");
    fs::write(&raw_path, raw).map_err(|source| Error::Io {
        path: raw_path.clone(),
        source,
    })?;

    let mut agg = String::new();
    agg.push_str("shape,theta,budget_fraction,algorithm,mean,ci95\n");
    for row in aggregate(records) {
        writeln!(
            agg,
            "{},{},{:.6},{},{:.6},{:.6}",
            row.shape, row.theta, row.budget_fraction, row.algorithm, row.mean, row.ci95
        )
        .expect("writing to a string cannot fail");
    }
    let agg_path = dir.join("aggregate.csv");
    fs::write(&agg_path, agg).map_err(|source| Error::Io {
        path: agg_path.clone(),
        source,
    })?;

    Ok((raw_path, agg_path))
}
