//! Instance generation and file I/O.
//!
//! Synthetic instances draw block rewards from a Zipf-like distribution:
//! `ceil(m/block) * ceil(n/block)` integers in `[0, value_range)` are drawn
//! with probability proportional to `(v+1)^-theta` and tiled over
//! `block x block` sub-grids (clipped at the boundary). `theta = 0` is the
//! uniform case; larger `theta` makes low rewards more frequent.
//!
//! The adversarial family concentrates almost all reward on the left part
//! of column 2 plus a single expensive deep vertex, which separates the
//! single-column optimum from full-row and greedy strategies.

use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{AisleGraph, Variant};
use crate::Error;

/// Parameters for the Zipf block generator.
#[derive(Debug, Clone)]
pub struct GenConfig {
    pub m: usize,
    pub n: usize,
    /// Skew of the reward distribution; must be >= 0.
    pub theta: f64,
    /// Side of the square blocks that share one drawn value.
    pub block: usize,
    pub seed: u64,
    /// Rewards are integers in `[0, value_range)`.
    pub value_range: usize,
}

impl GenConfig {
    pub fn new(m: usize, n: usize, theta: f64, seed: u64) -> GenConfig {
        GenConfig {
            m,
            n,
            theta,
            block: 5,
            seed,
            value_range: 100,
        }
    }
}

/// Probability mass function over rewards `0..value_range`, proportional to
/// `(v+1)^-theta`. Exactly uniform at `theta = 0` and non-increasing in `v`
/// for `theta > 0`.
pub fn zipf_pmf(theta: f64, value_range: usize) -> Vec<f64> {
    assert!(theta >= 0.0, "theta must be non-negative");
    assert!(value_range >= 1);
    let weights: Vec<f64> = (0..value_range)
        .map(|v| ((v + 1) as f64).powf(-theta))
        .collect();
    let total: f64 = weights.iter().sum();
    weights.into_iter().map(|w| w / total).collect()
}

fn sample_inverse_cdf(pmf: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    for (v, &p) in pmf.iter().enumerate() {
        acc += p;
        if u < acc {
            return v;
        }
    }
    pmf.len() - 1
}

/// Generates a two-sided instance with Zipf-distributed block rewards.
/// Deterministic: the same config always yields the same graph.
pub fn gen_zipf(cfg: &GenConfig) -> AisleGraph {
    assert!(cfg.theta >= 0.0, "theta must be non-negative");
    assert!(cfg.block >= 1, "block side must be at least 1");
    let pmf = zipf_pmf(cfg.theta, cfg.value_range);
    let blocks_m = cfg.m.div_ceil(cfg.block);
    let blocks_n = cfg.n.div_ceil(cfg.block);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rewards = vec![0.0; cfg.m * cfg.n];
    for bi in 0..blocks_m {
        for bj in 0..blocks_n {
            let value = sample_inverse_cdf(&pmf, rng.gen::<f64>()) as f64;
            for i in bi * cfg.block..((bi + 1) * cfg.block).min(cfg.m) {
                for j in bj * cfg.block..((bj + 1) * cfg.block).min(cfg.n) {
                    rewards[i * cfg.n + j] = value;
                }
            }
        }
    }
    AisleGraph::from_flat(cfg.m, cfg.n, Variant::TwoSided, rewards)
        .expect("generated rewards are valid")
}

/// Square two-sided instance (`n = m`) with `r(i, 2) = 2i - epsilon` for
/// `i = 1..m-1` and a single apex reward at `(m, m-2)`; all other rewards
/// are zero. Pass `None` for the default apex `3m - 5`.
pub fn gen_adversarial(
    m: usize,
    epsilon: f64,
    apex_reward: Option<f64>,
) -> Result<AisleGraph, Error> {
    if m < 4 {
        return Err(Error::InvalidInstance(format!(
            "adversarial family needs m >= 4, got {m}"
        )));
    }
    if !(epsilon > 0.0 && epsilon < 2.0) {
        return Err(Error::InvalidInstance(format!(
            "adversarial epsilon must lie in (0, 2), got {epsilon}"
        )));
    }
    let n = m;
    let apex = apex_reward.unwrap_or((3 * m - 5) as f64);
    if !(apex.is_finite() && apex >= 0.0) {
        return Err(Error::InvalidInstance(format!(
            "apex reward must be finite and non-negative, got {apex}"
        )));
    }
    let mut rewards = vec![0.0; m * n];
    for i in 1..m {
        rewards[(i - 1) * n + 1] = 2.0 * i as f64 - epsilon;
    }
    rewards[(m - 1) * n + (m - 2 - 1)] = apex;
    AisleGraph::from_flat(m, n, Variant::TwoSided, rewards)
}

/// Budget paired with the adversarial family: vertical travel to the last
/// row plus the out-and-back to the apex column.
pub fn adversarial_budget(m: usize) -> usize {
    2 * (m - 2) + 2 * (m - 1)
}

/// Parses the line-oriented instance format: a `m n variant` header, then
/// `m` lines of `n` whitespace-separated rewards.
pub fn parse_instance(text: &str, path: &str) -> Result<AisleGraph, Error> {
    let err = |line: usize, msg: String| Error::Parse {
        path: path.to_string(),
        line,
        msg,
    };
    let mut lines = text.lines().enumerate();
    let (header_no, header) = lines
        .next()
        .ok_or_else(|| err(1, "empty instance file".to_string()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(err(
            header_no + 1,
            format!("header must be `m n variant`, got {header:?}"),
        ));
    }
    let m: usize = fields[0]
        .parse()
        .map_err(|_| err(header_no + 1, format!("bad row count {:?}", fields[0])))?;
    let n: usize = fields[1]
        .parse()
        .map_err(|_| err(header_no + 1, format!("bad column count {:?}", fields[1])))?;
    let variant = Variant::from_keyword(fields[2]).ok_or_else(|| {
        err(
            header_no + 1,
            format!(
                "unknown variant {:?}; expected two_sided or left_only",
                fields[2]
            ),
        )
    })?;
    if m == 0 || n == 0 {
        return Err(err(header_no + 1, format!("dimensions {m}x{n} are empty")));
    }

    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(m);
    for (line_no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        if rows.len() == m {
            return Err(err(
                line_no + 1,
                format!("unexpected extra data after {m} reward rows"),
            ));
        }
        let mut row = Vec::with_capacity(n);
        for token in line.split_whitespace() {
            let value: f64 = token
                .parse()
                .map_err(|_| err(line_no + 1, format!("bad reward value {token:?}")))?;
            if !value.is_finite() || value < 0.0 {
                return Err(err(
                    line_no + 1,
                    format!("reward {value} is not a non-negative finite number"),
                ));
            }
            row.push(value);
        }
        if row.len() != n {
            return Err(err(
                line_no + 1,
                format!("expected {n} rewards, got {}", row.len()),
            ));
        }
        rows.push(row);
    }
    if rows.len() != m {
        return Err(err(
            text.lines().count(),
            format!("expected {m} reward rows, got {}", rows.len()),
        ));
    }
    AisleGraph::new(m, n, variant, rows)
}

/// Renders a graph in the instance file format.
pub fn format_instance(g: &AisleGraph) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {} {}\n", g.m(), g.n(), g.variant().keyword()));
    for i in 1..=g.m() {
        let row: Vec<String> = (1..=g.n())
            .map(|j| format!("{}", g.inner_reward(i, j)))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn load_instance(path: &Path) -> Result<AisleGraph, Error> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_instance(&text, &path.display().to_string())
}

pub fn save_instance(g: &AisleGraph, path: &Path) -> Result<(), Error> {
    fs::write(path, format_instance(g)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
