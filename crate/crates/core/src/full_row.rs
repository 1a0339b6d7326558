//! Optimal solvers for the full-row restriction.
//!
//! A full-row solution is a multiset of rows, each traversed side to side
//! (cost `n+1` per traversal), plus the vertical travel to the furthest
//! selected row and back (cost `2(furthest-1)`). The traversal count must
//! be even or the walk would strand on the right side, so an odd selection
//! doubles one row.
//!
//! Both solvers sweep the furthest row `m'`: after reserving the vertical
//! budget, `k(m') = 2 * floor((B - 2(m'-1)) / (2(n+1)))` full traversals
//! are affordable, and the best choice takes the highest-reward rows that
//! fit. [`solve_ofr`] rescans the sorted rows for every `m'`; the
//! equivalent [`solve_ofr_i`] sweeps `m'` downward and maintains the
//! selection incrementally, so its scan pointer over the sorted rows never
//! moves backward and the whole second phase touches at most `m` entries.

use crate::graph::{AisleGraph, SolveResult, Tour, TourAnnotation, VertexId};
use crate::Error;

/// Per-row cumulative rewards plus a stable non-increasing ordering.
#[derive(Debug, Clone)]
pub struct RowProfile {
    cum: Vec<f64>,
    order: Vec<usize>,
}

impl RowProfile {
    /// Cumulative reward of a row (1-based).
    pub fn cum(&self, row: usize) -> f64 {
        self.cum[row - 1]
    }

    /// Row indices sorted by cumulative reward, highest first; ties keep
    /// the smaller row index first.
    pub fn order(&self) -> &[usize] {
        &self.order
    }
}

/// Computes cumulative row rewards and their non-increasing ordering.
pub fn row_profile(g: &AisleGraph) -> RowProfile {
    let cum: Vec<f64> = (1..=g.m()).map(|i| g.row_cum(i)).collect();
    let mut order: Vec<usize> = (1..=g.m()).collect();
    order.sort_by(|&a, &b| cum[b - 1].partial_cmp(&cum[a - 1]).unwrap());
    RowProfile { cum, order }
}

/// Even number of full traversals affordable once the vertical travel to
/// row `m_prime` is reserved: `2 * floor(B' / (2(n+1)))` with
/// `B' = B - 2(m_prime - 1)`, or 0 when no residual budget remains.
pub fn permitted_rows(budget: usize, n: usize, m_prime: usize) -> usize {
    let vertical = 2 * (m_prime - 1);
    if budget <= vertical {
        return 0;
    }
    2 * ((budget - vertical) / (2 * (n + 1)))
}

/// A full-row solution: traversed rows in ascending order (at most one row
/// doubled, and then adjacent in the list) up to the furthest row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullRowPlan {
    furthest: usize,
    rows: Vec<usize>,
}

impl FullRowPlan {
    /// Normalizes a row multiset into a plan; the furthest row is the
    /// largest selected one (1 for the empty plan).
    pub fn new(mut rows: Vec<usize>) -> FullRowPlan {
        rows.sort_unstable();
        let furthest = rows.last().copied().unwrap_or(1);
        FullRowPlan { furthest, rows }
    }

    pub fn empty() -> FullRowPlan {
        FullRowPlan::new(Vec::new())
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn furthest(&self) -> usize {
        self.furthest
    }

    /// `2(furthest-1) + traversals * (n+1)`; 0 for the empty plan.
    pub fn cost(&self, n: usize) -> usize {
        if self.rows.is_empty() {
            0
        } else {
            2 * (self.furthest - 1) + self.rows.len() * (n + 1)
        }
    }
}

/// Builds the alternating walk realizing a plan: rows in ascending order,
/// traversed left-to-right then right-to-left in turn, with vertical moves
/// on whichever side column the walk currently occupies.
pub fn build_full_row_tour(
    g: &AisleGraph,
    plan: &FullRowPlan,
) -> Result<(Tour, TourAnnotation), Error> {
    if !g.is_two_sided() {
        return Err(Error::InfeasiblePlan(
            "full-row tours need a two_sided graph".to_string(),
        ));
    }
    if plan.rows.len() % 2 != 0 {
        return Err(Error::InfeasiblePlan(format!(
            "traversal count {} is odd",
            plan.rows.len()
        )));
    }
    let mut doubled = 0;
    for pair in plan.rows.windows(2) {
        if pair[0] == pair[1] {
            doubled += 1;
        }
    }
    if doubled > 1 || plan.rows.iter().any(|&r| r < 1 || r > g.m()) {
        return Err(Error::InfeasiblePlan(format!(
            "rows {:?} are not a valid selection for m={}",
            plan.rows,
            g.m()
        )));
    }

    let n = g.n();
    let right = n + 1;
    let mut vs = vec![g.home()];
    let mut row = 1usize;
    let mut col = 0usize;
    for &target in &plan.rows {
        while row < target {
            row += 1;
            vs.push(VertexId::new(row, col));
        }
        if col == 0 {
            for j in 1..=right {
                vs.push(VertexId::new(row, j));
            }
            col = right;
        } else {
            for j in (0..=n).rev() {
                vs.push(VertexId::new(row, j));
            }
            col = 0;
        }
    }
    debug_assert_eq!(col, 0, "even traversal counts return to the left side");
    while row > 1 {
        row -= 1;
        vs.push(VertexId::new(row, 0));
    }
    let tour = Tour::new(g, vs);
    debug_assert_eq!(tour.cost(), plan.cost(n));
    let annotation = TourAnnotation::from_tour(g, &tour);
    Ok((tour, annotation))
}

fn emit(g: &AisleGraph, plan: &FullRowPlan, budget: usize, name: &str) -> SolveResult {
    let (tour, _) = build_full_row_tour(g, plan).expect("solver plans are feasible");
    SolveResult::new(name, tour, budget)
}

/// Turns a set of selected rows into a plan, doubling the furthest
/// selected row when the count is odd.
fn plan_from_selection(rows: Vec<usize>) -> FullRowPlan {
    let mut rows = rows;
    if rows.len() % 2 == 1 {
        let max = *rows.iter().max().expect("selection is non-empty");
        rows.push(max);
    }
    FullRowPlan::new(rows)
}

/// Optimal full-row solver; quadratic row-selection phase.
pub fn solve_ofr(g: &AisleGraph, budget: usize) -> SolveResult {
    assert!(g.is_two_sided(), "the full-row problem is two-sided");
    let profile = row_profile(g);
    let mut prefix = vec![0.0; g.m() + 1];
    for i in 1..=g.m() {
        prefix[i] = prefix[i - 1] + profile.cum(i);
    }

    let mut best: Option<(f64, FullRowPlan)> = None;
    for m_prime in 1..=g.m() {
        let k = permitted_rows(budget, g.n(), m_prime);
        if k < 2 {
            // A solution whose furthest row is m_prime needs at least one
            // affordable traversal pair.
            continue;
        }
        let (val, rows) = if k >= m_prime {
            (prefix[m_prime], (1..=m_prime).collect::<Vec<_>>())
        } else {
            // Row m_prime plus the k-1 best rows strictly above it.
            let mut rows = vec![m_prime];
            let mut val = profile.cum(m_prime);
            let mut taken = 0;
            for &r in profile.order() {
                if taken == k - 1 {
                    break;
                }
                if r < m_prime {
                    rows.push(r);
                    val += profile.cum(r);
                    taken += 1;
                }
            }
            (val, rows)
        };
        if best.as_ref().is_none_or(|(b, _)| val > *b) {
            best = Some((val, plan_from_selection(rows)));
        }
    }

    match best {
        Some((_, plan)) => emit(g, &plan, budget, "ofr"),
        None => SolveResult::new("ofr", Tour::home(g), budget),
    }
}

/// Counters exposed by the incremental sweep, used to check its linear
/// second phase.
#[derive(Debug, Clone, Copy, Default)]
pub struct OfrIStats {
    /// Total positions of the sorted row list consumed across the sweep.
    pub scan_steps: usize,
}

/// Optimal full-row solver with the incremental descending sweep; returns
/// the same reward as [`solve_ofr`] on every input.
pub fn solve_ofr_i(g: &AisleGraph, budget: usize) -> SolveResult {
    solve_ofr_i_with_stats(g, budget).0
}

pub fn solve_ofr_i_with_stats(g: &AisleGraph, budget: usize) -> (SolveResult, OfrIStats) {
    assert!(g.is_two_sided(), "the full-row problem is two-sided");
    let m = g.m();
    let n = g.n();
    let profile = row_profile(g);
    let order = profile.order();

    let mut selected = vec![false; m + 2];
    let mut val = 0.0f64;
    let mut scan = 0usize; // next unread position in `order`
    let mut old_k = 0usize;
    let mut stats = OfrIStats::default();

    // Best candidate: reward, furthest row of its sweep iteration, and
    // whether it was the take-all-rows terminal case.
    let mut best: Option<(f64, usize, bool)> = None;
    fn consider(best: &mut Option<(f64, usize, bool)>, val: f64, m_prime: usize, terminal: bool) {
        // `>=` so the later (smaller) m_prime wins ties.
        if best.is_none_or(|(b, _, _)| val >= b) {
            *best = Some((val, m_prime, terminal));
        }
    }

    for m_prime in (1..=m).rev() {
        let k = permitted_rows(budget, n, m_prime);
        if m_prime == m {
            while scan < order.len() && scan < k {
                let row = order[scan];
                selected[row] = true;
                val += profile.cum(row);
                scan += 1;
                stats.scan_steps += 1;
            }
            old_k = k;
            if k >= 2 {
                consider(&mut best, val, m_prime, false);
            }
        } else if k > m_prime {
            // Every remaining iteration selects a prefix of the rows; the
            // largest prefix is this one, so the sweep can stop.
            let val: f64 = (1..=m_prime).map(|i| profile.cum(i)).sum();
            consider(&mut best, val, m_prime, true);
            break;
        } else {
            let mut need = 0;
            if k != old_k {
                need += 2;
            }
            if selected[m_prime + 1] {
                selected[m_prime + 1] = false;
                val -= profile.cum(m_prime + 1);
                need += 1;
            }
            let mut added = 0;
            while added < need && scan < order.len() {
                let row = order[scan];
                scan += 1;
                stats.scan_steps += 1;
                if row <= m_prime {
                    selected[row] = true;
                    val += profile.cum(row);
                    added += 1;
                }
            }
            old_k = k;
            if k >= 2 {
                consider(&mut best, val, m_prime, false);
            }
        }
    }

    let result = match best {
        Some((_, m_prime, terminal)) => {
            let rows: Vec<usize> = if terminal {
                (1..=m_prime).collect()
            } else {
                // The selection at iteration m_prime is exactly the best
                // k(m_prime) rows among 1..=m_prime in the stable order.
                let k = permitted_rows(budget, n, m_prime);
                order
                    .iter()
                    .copied()
                    .filter(|&r| r <= m_prime)
                    .take(k)
                    .collect()
            };
            if rows.is_empty() {
                SolveResult::new("ofr_i", Tour::home(g), budget)
            } else {
                emit(g, &plan_from_selection(rows), budget, "ofr_i")
            }
        }
        None => SolveResult::new("ofr_i", Tour::home(g), budget),
    };
    (result, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{validate_tour, Variant};
    use crate::instances::{gen_zipf, GenConfig};
    use crate::oracle::oracle_cop_fr;

    fn two_by_two() -> AisleGraph {
        AisleGraph::new(
            2,
            2,
            Variant::TwoSided,
            vec![vec![1.0, 1.0], vec![5.0, 5.0]],
        )
        .unwrap()
    }

    #[test]
    fn row_profile_orders_by_cumulative_reward() {
        let p = row_profile(&two_by_two());
        assert_eq!(p.cum(1), 2.0);
        assert_eq!(p.cum(2), 10.0);
        assert_eq!(p.order(), &[2, 1]);
    }

    #[test]
    fn row_profile_breaks_ties_by_smaller_index() {
        let g = AisleGraph::zeros(3, 2, Variant::TwoSided);
        assert_eq!(row_profile(&g).order(), &[1, 2, 3]);

        let g = AisleGraph::new(
            3,
            1,
            Variant::TwoSided,
            vec![vec![7.0], vec![7.0], vec![3.0]],
        )
        .unwrap();
        assert_eq!(row_profile(&g).order(), &[1, 2, 3]);
    }

    #[test]
    fn permitted_rows_examples() {
        assert_eq!(permitted_rows(20, 4, 2), 2);
        // Exactly one out-and-back at the minimum sensible budget.
        assert_eq!(permitted_rows(2 * (4 + 1), 4, 1), 2);
        // Budget consumed entirely by vertical travel.
        assert_eq!(permitted_rows(2 * (7 - 1), 9, 7), 0);
        assert_eq!(permitted_rows(3, 9, 7), 0);
    }

    #[test]
    fn permitted_rows_is_always_even() {
        for budget in 0..200 {
            for n in 1..6 {
                for m_prime in 1..8 {
                    assert_eq!(permitted_rows(budget, n, m_prime) % 2, 0);
                }
            }
        }
    }

    #[test]
    fn build_tour_for_both_rows() {
        let g = two_by_two();
        let plan = FullRowPlan::new(vec![1, 2]);
        let (tour, ann) = build_full_row_tour(&g, &plan).unwrap();
        assert_eq!(tour.cost(), 8);
        assert_eq!(tour.reward(), 12.0);
        assert!(validate_tour(&g, tour.vertices(), 8).passed());
        // The walk comes back up the left column, so both rows see both sides.
        assert!(ann.left_col_on_tour(1) && ann.left_col_on_tour(2));
        assert!(ann.right_col_on_tour(1) && ann.right_col_on_tour(2));
        assert!(ann.row_fully_traversed(1) && ann.row_fully_traversed(2));
    }

    #[test]
    fn build_tour_doubles_a_row() {
        let g = two_by_two();
        let plan = FullRowPlan::new(vec![1, 1]);
        let (tour, _) = build_full_row_tour(&g, &plan).unwrap();
        assert_eq!(tour.cost(), 2 * (g.n() + 1));
        assert_eq!(tour.reward(), 2.0);
        assert!(validate_tour(&g, tour.vertices(), 6).passed());
    }

    #[test]
    fn build_tour_for_the_empty_plan() {
        let g = two_by_two();
        let (tour, _) = build_full_row_tour(&g, &FullRowPlan::empty()).unwrap();
        assert_eq!(tour.cost(), 0);
        assert_eq!(tour.vertices(), &[g.home()]);
    }

    #[test]
    fn build_tour_rejects_bad_plans() {
        let g = two_by_two();
        assert!(build_full_row_tour(&g, &FullRowPlan::new(vec![1])).is_err());
        assert!(build_full_row_tour(&g, &FullRowPlan::new(vec![1, 3])).is_err());
        assert!(build_full_row_tour(&g, &FullRowPlan::new(vec![1, 1, 2, 2])).is_err());
        let gl = AisleGraph::zeros(2, 2, Variant::LeftOnly);
        assert!(build_full_row_tour(&gl, &FullRowPlan::new(vec![1, 2])).is_err());
    }

    #[test]
    fn ofr_two_by_two() {
        let g = two_by_two();
        assert_eq!(solve_ofr(&g, 8).reward, 12.0);
        assert_eq!(oracle_cop_fr(&g, 8).unwrap(), 12.0);
        // Row 2 needs budget 8; at 6 the best is row 1 twice.
        assert_eq!(solve_ofr(&g, 6).reward, 2.0);
        assert_eq!(oracle_cop_fr(&g, 6).unwrap(), 2.0);
    }

    #[test]
    fn ofr_below_threshold_stays_home() {
        let g = two_by_two();
        let res = solve_ofr(&g, 2 * (g.n() + 1) - 1);
        assert_eq!(res.reward, 0.0);
        assert_eq!(res.budget_used, 0);
        assert_eq!(res.tour.vertices(), &[g.home()]);
    }

    #[test]
    fn ofr_i_matches_ofr_and_the_oracle() {
        for seed in 0..40 {
            let m = 2 + (seed as usize * 7) % 9; // 2..=10
            let n = 1 + (seed as usize * 3) % 6; // 1..=6
            let g = gen_zipf(&GenConfig {
                block: 2,
                ..GenConfig::new(m, n, if seed % 2 == 0 { 0.0 } else { 1.9 }, seed)
            });
            let b_max = (n + 1) * m + 2 * (m - 1);
            for budget in [0, 3, b_max / 4, b_max / 2, b_max - 1, b_max, b_max + 5] {
                let a = solve_ofr(&g, budget);
                let (b, stats) = solve_ofr_i_with_stats(&g, budget);
                assert_eq!(a.reward, b.reward, "m={m} n={n} seed={seed} B={budget}");
                assert_eq!(
                    a.reward,
                    oracle_cop_fr(&g, budget).unwrap(),
                    "m={m} n={n} seed={seed} B={budget}"
                );
                assert!(stats.scan_steps <= m);
                assert!(validate_tour(&g, a.tour.vertices(), budget).passed());
                assert!(validate_tour(&g, b.tour.vertices(), budget).passed());
            }
        }
    }

    #[test]
    fn ofr_reward_is_monotone_in_budget() {
        let g = gen_zipf(&GenConfig {
            block: 2,
            ..GenConfig::new(6, 4, 1.9, 5)
        });
        let mut last = 0.0;
        for budget in 0..60 {
            let r = solve_ofr(&g, budget).reward;
            assert!(r >= last, "budget {budget}");
            last = r;
        }
    }

    #[test]
    fn emitted_tours_only_contain_full_traversals() {
        let g = gen_zipf(&GenConfig {
            block: 3,
            ..GenConfig::new(7, 5, 0.8, 9)
        });
        for budget in [12, 25, 40, 80] {
            for res in [solve_ofr(&g, budget), solve_ofr_i(&g, budget)] {
                assert_row_segments_full(&g, res.tour.vertices());
            }
        }
    }

    /// Every maximal same-row run that touches the interior must be a
    /// sequence of complete sweeps: endpoints on side columns and
    /// direction changes only at side columns (a doubled row sweeps out
    /// and straight back).
    fn assert_row_segments_full(g: &AisleGraph, vs: &[VertexId]) {
        let side = |col: usize| col == 0 || col == g.n() + 1;
        let mut start = 0;
        for idx in 1..=vs.len() {
            if idx == vs.len() || vs[idx].row != vs[start].row {
                let seg = &vs[start..idx];
                if seg.iter().any(|v| v.col >= 1 && v.col <= g.n()) {
                    assert!(
                        side(seg.first().unwrap().col) && side(seg.last().unwrap().col),
                        "row {} run does not end on side columns",
                        vs[start].row
                    );
                    for w in seg.windows(3) {
                        let before = w[1].col as i64 - w[0].col as i64;
                        let after = w[2].col as i64 - w[1].col as i64;
                        assert!(
                            before == after || side(w[1].col),
                            "row {} turns around mid-row at column {}",
                            w[1].row,
                            w[1].col
                        );
                    }
                }
                start = idx;
            }
        }
    }

    #[test]
    fn ofr_i_scan_counter_stays_linear_on_large_inputs() {
        let g = gen_zipf(&GenConfig::new(1000, 10, 1.9, 21));
        for budget in [500, 5000, 11000] {
            let (_, stats) = solve_ofr_i_with_stats(&g, budget);
            assert!(stats.scan_steps <= 1000);
        }
    }

    #[test]
    fn ofr_i_matches_ofr_on_larger_instances() {
        // The incremental sweep's eviction/growth interplay needs many
        // distinct k-jump patterns to be exercised; sweep a dense budget
        // range on mid-sized graphs.
        for seed in 0..8 {
            let m = 40 + 23 * seed as usize; // up to 201
            let n = 3 + (seed as usize % 5);
            let g = gen_zipf(&GenConfig {
                block: 3,
                ..GenConfig::new(m, n, [0.0, 1.9, 2.7][seed as usize % 3], seed)
            });
            let b_max = (n + 1) * m + 2 * (m - 1);
            let mut budget = 0;
            while budget <= b_max + 3 {
                let a = solve_ofr(&g, budget);
                let (b, stats) = solve_ofr_i_with_stats(&g, budget);
                assert_eq!(a.reward, b.reward, "m={m} n={n} seed={seed} B={budget}");
                assert!(stats.scan_steps <= m);
                budget += 7;
            }
        }
    }
}
