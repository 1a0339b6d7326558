//! Dynamic program for the single-column restriction.
//!
//! With only the left interconnect available, a tour descends column 0,
//! enters each row to some depth, backtracks, and climbs home, so every
//! edge is paid twice and only even total costs are reachable. The program
//! therefore works in half-budget units `b`: `R[i][b]` is the best reward
//! of a walk reaching row `i` with half-budget `b`, and `S[i][b]` the row
//! depth realizing it. A single fill answers every half-budget at once.

use crate::graph::{AisleGraph, SolveResult, Tour, Variant, VertexId};
use crate::Error;

/// Per-row prefix sums of the inner rewards: `T[i][j]` is the reward of
/// entering row `i` to depth `j`.
#[derive(Debug, Clone)]
pub struct PrefixTable {
    t: Vec<Vec<f64>>,
}

impl PrefixTable {
    /// `T[row][depth]`, 1-based row, depth `0..=n`.
    pub fn get(&self, row: usize, depth: usize) -> f64 {
        self.t[row - 1][depth]
    }

    pub fn n(&self) -> usize {
        self.t[0].len() - 1
    }

    pub fn m(&self) -> usize {
        self.t.len()
    }
}

/// Prefix rewards of every row, taken from the left side.
pub fn prefix_table(g: &AisleGraph) -> PrefixTable {
    let mut t = Vec::with_capacity(g.m());
    for i in 1..=g.m() {
        let mut row = Vec::with_capacity(g.n() + 1);
        let mut acc = 0.0;
        row.push(acc);
        for j in 1..=g.n() {
            acc += g.inner_reward(i, j);
            row.push(acc);
        }
        t.push(row);
    }
    PrefixTable { t }
}

/// The filled reward and traceback tables. A cell holds `None` where the
/// half-budget cannot even reach the row along column 0.
#[derive(Debug, Clone)]
pub struct DpTables {
    half_budget: usize,
    r: Vec<Vec<Option<f64>>>,
    s: Vec<Vec<usize>>,
}

impl DpTables {
    /// Effective half-budget (capped at whole-graph coverage).
    pub fn half_budget(&self) -> usize {
        self.half_budget
    }

    pub fn rows(&self) -> usize {
        self.r.len()
    }

    /// `R[row][b]`: best reward reaching `row` with half-budget `b`, or
    /// `None` when unreachable.
    pub fn reward(&self, row: usize, b: usize) -> Option<f64> {
        self.r[row - 1][b]
    }

    /// `S[row][b]`: the depth chosen for `row` at half-budget `b`.
    pub fn depth(&self, row: usize, b: usize) -> usize {
        self.s[row - 1][b]
    }

    /// Best reward over all rows at one half-budget.
    pub fn best_at(&self, b: usize) -> f64 {
        self.r.iter().filter_map(|row| row[b]).fold(0.0, f64::max)
    }

    /// Smallest row index achieving `best_at(b)`.
    fn best_row_at(&self, b: usize) -> usize {
        let mut best = f64::NEG_INFINITY;
        let mut row = 1;
        for (idx, cells) in self.r.iter().enumerate() {
            if let Some(v) = cells[b] {
                if v > best {
                    best = v;
                    row = idx + 1;
                }
            }
        }
        row
    }
}

fn fill_tables(t: &PrefixTable, half_budget: usize) -> DpTables {
    let m = t.m();
    let n = t.n();
    let mut r: Vec<Vec<Option<f64>>> = Vec::with_capacity(m);
    let mut s: Vec<Vec<usize>> = Vec::with_capacity(m);

    // Row 1: spend everything on the row itself; the recorded depth is the
    // smallest one achieving the prefix maximum.
    let mut first_r = Vec::with_capacity(half_budget + 1);
    let mut first_s = Vec::with_capacity(half_budget + 1);
    let mut shallowest = vec![0usize; n + 1];
    for j in 1..=n {
        shallowest[j] = if t.get(1, j) > t.get(1, j - 1) {
            j
        } else {
            shallowest[j - 1]
        };
    }
    for b in 0..=half_budget {
        let depth = b.min(n);
        first_r.push(Some(t.get(1, depth)));
        first_s.push(shallowest[depth]);
    }
    r.push(first_r);
    s.push(first_s);

    for i in 2..=m {
        let mut row_r = vec![None; half_budget + 1];
        let mut row_s = vec![0usize; half_budget + 1];
        for b in 0..=half_budget {
            if b < i - 1 {
                continue;
            }
            // One half-unit goes to the row change, so depth j pairs with
            // the row above at half-budget b-j-1, which must be at least
            // that row's reach cost i-2. Depth b-i+1 against the bare
            // reach (reward 0) is a legal, sometimes optimal, pairing.
            let mut best = f64::NEG_INFINITY;
            let mut best_depth = 0;
            for j in 0..=(b - (i - 1)).min(n) {
                let prev = r[i - 2][b - j - 1].expect("recurrence stays within defined cells");
                let cand = prev + t.get(i, j);
                if cand > best {
                    best = cand;
                    best_depth = j;
                }
            }
            row_r[b] = Some(best);
            row_s[b] = best_depth;
        }
        r.push(row_r);
        s.push(row_s);
    }
    DpTables { half_budget, r, s }
}

/// Depths selected for rows `1..=furthest` by the traceback at the last
/// table column, plus the realized walk on `g`'s coordinates.
pub fn osc_traceback(tables: &DpTables, g: &AisleGraph) -> Result<(Vec<usize>, Tour), Error> {
    let t = prefix_table(g);
    if t.m() != tables.rows() {
        return Err(Error::InconsistentTables(format!(
            "tables cover {} rows but the graph has {}",
            tables.rows(),
            t.m()
        )));
    }
    let b_max = tables.half_budget();
    let target = tables.best_at(b_max);
    let furthest = tables.best_row_at(b_max);

    let mut depths = vec![0usize; furthest];
    let mut b = b_max;
    for i in (1..=furthest).rev() {
        if tables.reward(i, b).is_none() {
            return Err(Error::InconsistentTables(format!(
                "traceback reached an unreachable cell at row {i}, half-budget {b}"
            )));
        }
        let d = tables.depth(i, b);
        if d > g.n() || (i > 1 && d + 1 > b) {
            return Err(Error::InconsistentTables(format!(
                "depth {d} at row {i} does not fit half-budget {b}"
            )));
        }
        depths[i - 1] = d;
        if i > 1 {
            b -= d + 1;
        }
    }

    // Re-add the prefix gains in ascending row order, mirroring the fill's
    // association, so the comparison against the table optimum is exact.
    let mut reward = 0.0;
    for (idx, &d) in depths.iter().enumerate() {
        reward += t.get(idx + 1, d);
    }
    if reward != target {
        return Err(Error::InconsistentTables(format!(
            "traceback reward {reward} differs from table optimum {target}"
        )));
    }

    let mut vs = vec![VertexId::new(1, 0)];
    for (idx, &d) in depths.iter().enumerate() {
        let row = idx + 1;
        if row > 1 {
            vs.push(VertexId::new(row, 0));
        }
        for j in 1..=d {
            vs.push(VertexId::new(row, j));
        }
        for j in (0..d).rev() {
            vs.push(VertexId::new(row, j));
        }
    }
    for row in (1..furthest).rev() {
        vs.push(VertexId::new(row, 0));
    }
    Ok((depths, Tour::new(g, vs)))
}

/// Best reward per half-budget: `profile[b] = max_i R[i][b]`.
pub fn osc_reward_profile(tables: &DpTables) -> Vec<f64> {
    (0..=tables.half_budget())
        .map(|b| tables.best_at(b))
        .collect()
}

/// Optimal single-column solver.
///
/// On a two-sided graph the left restriction is solved; the emitted tour
/// never touches column `n+1` and is valid in the original graph. With
/// `mirrored` set (two-sided only) the instance is reflected left-to-right
/// first and the walk is reflected back, so it is anchored at `1:n+1`;
/// this is the right-side analysis pass used by the composite heuristics.
pub fn solve_osc(g: &AisleGraph, budget: usize, mirrored: bool) -> (SolveResult, DpTables) {
    let base = if mirrored {
        g.mirrored_left_only()
    } else {
        match g.variant() {
            Variant::LeftOnly => g.clone(),
            Variant::TwoSided => g.to_left_only(),
        }
    };
    let tables = osc_tables(&base, budget);
    let (_, tour) = osc_traceback(&tables, &base).expect("fresh tables are consistent");
    let tour = if mirrored {
        let reflected: Vec<VertexId> = tour
            .vertices()
            .iter()
            .map(|v| VertexId::new(v.row, g.n() + 1 - v.col))
            .collect();
        Tour::new(g, reflected)
    } else {
        Tour::new(g, tour.vertices().to_vec())
    };
    (SolveResult::new("osc", tour, budget), tables)
}

/// Fills the tables for the left side of `g` with the half-budget capped
/// at whole-graph coverage.
pub(crate) fn osc_tables(g: &AisleGraph, budget: usize) -> DpTables {
    let half = (budget / 2).min(g.n() * g.m() + g.m() - 1);
    fill_tables(&prefix_table(g), half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_tour;
    use crate::instances::{gen_zipf, GenConfig};
    use crate::oracle::{oracle_cop_sc, oracle_cop_sc_profile};

    fn two_rows() -> AisleGraph {
        AisleGraph::new(
            2,
            2,
            Variant::LeftOnly,
            vec![vec![1.0, 1.0], vec![5.0, 5.0]],
        )
        .unwrap()
    }

    #[test]
    fn prefix_table_examples() {
        let g = AisleGraph::new(1, 2, Variant::LeftOnly, vec![vec![3.0, 4.0]]).unwrap();
        let t = prefix_table(&g);
        assert_eq!(t.get(1, 0), 0.0);
        assert_eq!(t.get(1, 1), 3.0);
        assert_eq!(t.get(1, 2), 7.0);

        let z = AisleGraph::zeros(1, 3, Variant::LeftOnly);
        let tz = prefix_table(&z);
        assert_eq!(tz.get(1, 3), 0.0);

        let g2 = two_rows();
        let t2 = prefix_table(&g2);
        assert_eq!(t2.get(1, 2), g2.row_cum(1));
        assert_eq!(t2.get(2, 2), g2.row_cum(2));
    }

    #[test]
    fn single_row_full_prefix() {
        let g = AisleGraph::new(1, 2, Variant::LeftOnly, vec![vec![3.0, 4.0]]).unwrap();
        let (res, _) = solve_osc(&g, 4, false);
        assert_eq!(res.reward, 7.0);
        assert!(res.tour.vertices().contains(&VertexId::new(1, 2)));
        assert!(validate_tour(&g, res.tour.vertices(), 4).passed());
    }

    #[test]
    fn two_row_example_with_tables() {
        let g = two_rows();
        let (res, tables) = solve_osc(&g, 10, false);
        assert_eq!(res.reward, 12.0);
        assert_eq!(res.budget_used, 10);
        assert_eq!(tables.reward(2, 5), Some(12.0));
        let (depths, tour) = osc_traceback(&tables, &g).unwrap();
        assert_eq!(depths, vec![2, 2]);
        assert_eq!(tour.reward(), 12.0);
        assert_eq!(oracle_cop_sc(&g, 10).unwrap(), 12.0);
    }

    #[test]
    fn reaching_a_row_exactly_gains_nothing() {
        let g = gen_zipf(&GenConfig {
            block: 1,
            ..GenConfig::new(5, 3, 0.8, 2)
        })
        .to_left_only();
        let tables = osc_tables(&g, 40);
        for i in 2..=5 {
            assert_eq!(tables.reward(i, i - 1), Some(0.0));
            if i >= 3 {
                assert_eq!(tables.reward(i, i - 2), None);
            }
        }
        // Row 1 follows the prefix of its own rewards.
        for b in 0..=10 {
            assert_eq!(tables.reward(1, b), Some(prefix_table(&g).get(1, b.min(3))));
        }
    }

    #[test]
    fn all_zero_rewards_yield_a_minimal_tour() {
        let g = AisleGraph::zeros(4, 3, Variant::LeftOnly);
        let (res, tables) = solve_osc(&g, 20, false);
        assert_eq!(res.reward, 0.0);
        let (depths, tour) = osc_traceback(&tables, &g).unwrap();
        assert!(depths.iter().all(|&d| d == 0));
        assert_eq!(tour.reward(), 0.0);
        assert!(validate_tour(&g, tour.vertices(), 20).passed());
    }

    #[test]
    fn zero_budget_traceback_stays_home() {
        let g = two_rows();
        let (res, tables) = solve_osc(&g, 0, false);
        assert_eq!(res.reward, 0.0);
        let (depths, tour) = osc_traceback(&tables, &g).unwrap();
        assert_eq!(depths, vec![0]);
        assert_eq!(tour.vertices(), &[VertexId::new(1, 0)]);
    }

    #[test]
    fn odd_budgets_match_the_even_budget_below() {
        let g = gen_zipf(&GenConfig {
            block: 1,
            ..GenConfig::new(4, 4, 1.9, 8)
        })
        .to_left_only();
        for b in (1..40).step_by(2) {
            let odd = solve_osc(&g, b, false).0;
            let even = solve_osc(&g, b - 1, false).0;
            assert_eq!(odd.reward, even.reward);
            assert_eq!(odd.budget_used % 2, 0);
        }
    }

    #[test]
    fn full_coverage_at_the_whole_graph_bound() {
        let g = gen_zipf(&GenConfig {
            block: 2,
            ..GenConfig::new(4, 3, 0.0, 77)
        })
        .to_left_only();
        let bound = 2 * g.n() * g.m() + 2 * (g.m() - 1);
        let (res, _) = solve_osc(&g, bound, false);
        assert_eq!(res.reward, g.total_reward());
    }

    #[test]
    fn profile_is_monotone_and_matches_the_oracle() {
        for seed in 0..15 {
            let g = gen_zipf(&GenConfig {
                block: 1,
                ..GenConfig::new(2 + (seed as usize % 5), 1 + (seed as usize % 4), 1.2, seed)
            })
            .to_left_only();
            let bound = 2 * g.n() * g.m() + 2 * (g.m() - 1);
            let tables = osc_tables(&g, bound);
            let profile = osc_reward_profile(&tables);
            let oracle = oracle_cop_sc_profile(&g, tables.half_budget()).unwrap();
            assert_eq!(profile.len(), oracle.len());
            for (b, (got, want)) in profile.iter().zip(oracle.iter()).enumerate() {
                assert_eq!(got, want, "seed {seed}, half-budget {b}");
            }
            for w in profile.windows(2) {
                assert!(w[0] <= w[1]);
            }
            assert_eq!(profile[0], 0.0);
            assert_eq!(
                *profile.last().unwrap(),
                tables.best_at(tables.half_budget())
            );
        }
    }

    #[test]
    fn traceback_visits_each_row_at_most_once() {
        let g = gen_zipf(&GenConfig {
            block: 1,
            ..GenConfig::new(6, 4, 0.8, 31)
        })
        .to_left_only();
        let (res, _) = solve_osc(&g, 30, false);
        // Count maximal interior excursions per row.
        let mut excursions = vec![0usize; g.m() + 1];
        let mut inside = 0usize;
        for v in res.tour.vertices() {
            if v.col >= 1 {
                if inside != v.row {
                    excursions[v.row] += 1;
                }
                inside = v.row;
            } else {
                inside = 0;
            }
        }
        assert!(excursions.iter().all(|&c| c <= 1));
    }

    #[test]
    fn mirrored_solve_reflects_the_tour() {
        let g = AisleGraph::new(
            2,
            3,
            Variant::TwoSided,
            vec![vec![0.0, 0.0, 9.0], vec![0.0, 0.0, 0.0]],
        )
        .unwrap();
        let (res, _) = solve_osc(&g, 4, true);
        // The reward sits next to the right column, one step away.
        assert_eq!(res.reward, 9.0);
        assert_eq!(res.tour.vertices().first(), Some(&VertexId::new(1, 4)));
        assert_eq!(res.tour.vertices().last(), Some(&VertexId::new(1, 4)));
        assert!(res.tour.vertices().contains(&VertexId::new(1, 3)));
    }

    #[test]
    fn left_solve_on_two_sided_ignores_the_right_column() {
        let g = AisleGraph::new(1, 3, Variant::TwoSided, vec![vec![1.0, 0.0, 9.0]]).unwrap();
        let (res, _) = solve_osc(&g, 2, false);
        assert_eq!(res.reward, 1.0);
        assert!(res.tour.vertices().iter().all(|v| v.col <= g.n()));
    }
}
