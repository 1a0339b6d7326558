//! Aisle-graph model shared by every solver: vertices, adjacency, tours,
//! and tour validation.
//!
//! An aisle graph has `m` reward-bearing rows and `n` inner columns. Rows
//! are connected to each other only through the reward-free side columns
//! (column `0` on the left and, in the two-sided variant, column `n+1` on
//! the right), so a walk can change row only at a row end. The home vertex
//! is `1:0`; every tour starts and ends there. Edge traversals cost one
//! unit each and a vertex's reward is collected at most once no matter how
//! often the vertex is revisited.
//!
//! Everything here is immutable after construction and safe to share
//! across threads.

use std::fmt;

use crate::Error;

/// Which side columns interconnect the rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Columns `0` and `n+1` both connect the rows.
    TwoSided,
    /// Only column `0` connects the rows; every row dead-ends at column `n`.
    LeftOnly,
}

impl Variant {
    pub fn keyword(self) -> &'static str {
        match self {
            Variant::TwoSided => "two_sided",
            Variant::LeftOnly => "left_only",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Variant> {
        match s {
            "two_sided" => Some(Variant::TwoSided),
            "left_only" => Some(Variant::LeftOnly),
            _ => None,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// A vertex `row:col`. Rows are 1-based; columns run `0..=n+1` (two-sided)
/// or `0..=n` (left-only), with the side columns carrying no reward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId {
    pub row: usize,
    pub col: usize,
}

impl VertexId {
    pub fn new(row: usize, col: usize) -> VertexId {
        VertexId { row, col }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.row, self.col)
    }
}

/// Grid of `m` reward rows with `n` inner columns, joined only at the side
/// columns.
#[derive(Debug, Clone, PartialEq)]
pub struct AisleGraph {
    m: usize,
    n: usize,
    variant: Variant,
    /// Inner rewards, row-major, `(row-1) * n + (col-1)`.
    rewards: Vec<f64>,
}

impl AisleGraph {
    /// Builds a graph from per-row reward vectors. Every row must have
    /// exactly `n` non-negative finite entries.
    pub fn new(
        m: usize,
        n: usize,
        variant: Variant,
        rows: Vec<Vec<f64>>,
    ) -> Result<AisleGraph, Error> {
        if rows.len() != m {
            return Err(Error::InvalidInstance(format!(
                "expected {m} reward rows, got {}",
                rows.len()
            )));
        }
        let mut flat = Vec::with_capacity(m * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::InvalidInstance(format!(
                    "expected {n} rewards per row, got {}",
                    row.len()
                )));
            }
            flat.extend_from_slice(row);
        }
        AisleGraph::from_flat(m, n, variant, flat)
    }

    /// Builds a graph from a row-major reward slice of length `m * n`.
    pub fn from_flat(
        m: usize,
        n: usize,
        variant: Variant,
        rewards: Vec<f64>,
    ) -> Result<AisleGraph, Error> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidInstance(format!(
                "dimensions must be at least 1x1, got {m}x{n}"
            )));
        }
        if rewards.len() != m * n {
            return Err(Error::InvalidInstance(format!(
                "expected {} rewards, got {}",
                m * n,
                rewards.len()
            )));
        }
        for (idx, &r) in rewards.iter().enumerate() {
            if !r.is_finite() || r < 0.0 {
                return Err(Error::InvalidInstance(format!(
                    "reward at row {} col {} is {r}; rewards must be finite and non-negative",
                    idx / n + 1,
                    idx % n + 1
                )));
            }
        }
        Ok(AisleGraph {
            m,
            n,
            variant,
            rewards,
        })
    }

    /// All-zero graph, handy for tests and as a template.
    pub fn zeros(m: usize, n: usize, variant: Variant) -> AisleGraph {
        AisleGraph::from_flat(m, n, variant, vec![0.0; m * n]).expect("zero rewards are valid")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn is_two_sided(&self) -> bool {
        self.variant == Variant::TwoSided
    }

    /// The fixed start and end vertex of every tour.
    pub fn home(&self) -> VertexId {
        VertexId::new(1, 0)
    }

    /// Largest valid column index: `n+1` for two-sided, `n` for left-only.
    pub fn max_col(&self) -> usize {
        match self.variant {
            Variant::TwoSided => self.n + 1,
            Variant::LeftOnly => self.n,
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        (1..=self.m).contains(&v.row) && v.col <= self.max_col()
    }

    /// Total number of vertices, side columns included.
    pub fn vertex_count(&self) -> usize {
        self.m * (self.max_col() + 1)
    }

    /// Dense index of a vertex, for flag vectors sized `vertex_count()`.
    pub fn dense_index(&self, v: VertexId) -> usize {
        debug_assert!(self.contains(v));
        (v.row - 1) * (self.max_col() + 1) + v.col
    }

    /// Reward of a vertex; the side columns always yield 0.
    pub fn reward(&self, v: VertexId) -> f64 {
        debug_assert!(self.contains(v));
        if v.col == 0 || v.col > self.n {
            0.0
        } else {
            self.rewards[(v.row - 1) * self.n + (v.col - 1)]
        }
    }

    /// Reward of inner vertex `(row, col)` with `1 <= col <= n`.
    pub fn inner_reward(&self, row: usize, col: usize) -> f64 {
        debug_assert!((1..=self.m).contains(&row) && (1..=self.n).contains(&col));
        self.rewards[(row - 1) * self.n + (col - 1)]
    }

    /// Sum of the inner rewards of one row.
    pub fn row_cum(&self, row: usize) -> f64 {
        (1..=self.n).map(|j| self.inner_reward(row, j)).sum()
    }

    pub fn total_reward(&self) -> f64 {
        self.rewards.iter().sum()
    }

    /// Adjacent vertices: along the row for inner vertices, along the row
    /// plus vertically for side-column vertices. Left-only graphs have no
    /// column `n+1`, so `(i, n)` has the single neighbor `(i, n-1)`.
    pub fn neighbors(&self, v: VertexId) -> Result<Vec<VertexId>, Error> {
        if !self.contains(v) {
            return Err(Error::InvalidVertex {
                row: v.row,
                col: v.col,
                m: self.m,
                n: self.n,
                variant: self.variant.keyword(),
            });
        }
        let mut out = Vec::with_capacity(3);
        let interconnect = v.col == 0 || (self.variant == Variant::TwoSided && v.col == self.n + 1);
        if interconnect {
            if v.row > 1 {
                out.push(VertexId::new(v.row - 1, v.col));
            }
            if v.row < self.m {
                out.push(VertexId::new(v.row + 1, v.col));
            }
        }
        if v.col > 0 {
            out.push(VertexId::new(v.row, v.col - 1));
        }
        if v.col < self.max_col() {
            out.push(VertexId::new(v.row, v.col + 1));
        }
        Ok(out)
    }

    pub fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        if !self.contains(a) || !self.contains(b) {
            return false;
        }
        if a.row == b.row && a.col.abs_diff(b.col) == 1 {
            return true;
        }
        if a.col == b.col && a.row.abs_diff(b.row) == 1 {
            return a.col == 0 || (self.variant == Variant::TwoSided && a.col == self.n + 1);
        }
        false
    }

    /// The same rewards restricted to the left interconnect only.
    pub fn to_left_only(&self) -> AisleGraph {
        AisleGraph {
            m: self.m,
            n: self.n,
            variant: Variant::LeftOnly,
            rewards: self.rewards.clone(),
        }
    }

    /// Left-only graph whose column `j` holds the reward of column
    /// `n+1-j` of `self`; used to optimize the right side of a two-sided
    /// graph as if it were a left side.
    pub fn mirrored_left_only(&self) -> AisleGraph {
        assert!(
            self.is_two_sided(),
            "mirroring is only meaningful for two_sided graphs"
        );
        let mut rewards = Vec::with_capacity(self.m * self.n);
        for i in 1..=self.m {
            for j in (1..=self.n).rev() {
                rewards.push(self.inner_reward(i, j));
            }
        }
        AisleGraph {
            m: self.m,
            n: self.n,
            variant: Variant::LeftOnly,
            rewards,
        }
    }
}

/// Cost of a walk given as a vertex sequence: one unit per step.
pub fn tour_cost(vertices: &[VertexId]) -> usize {
    vertices.len().saturating_sub(1)
}

/// Sum of rewards over the distinct vertices of a walk. Vertices outside
/// the graph contribute nothing.
pub fn distinct_reward(g: &AisleGraph, vertices: &[VertexId]) -> f64 {
    let mut seen = vec![false; g.vertex_count()];
    let mut total = 0.0;
    for &v in vertices {
        if !g.contains(v) {
            continue;
        }
        let idx = g.dense_index(v);
        if !seen[idx] {
            seen[idx] = true;
            total += g.reward(v);
        }
    }
    total
}

/// A walk recorded as its exact vertex sequence. Cost counts every edge
/// traversal; reward counts each distinct vertex once.
#[derive(Debug, Clone, PartialEq)]
pub struct Tour {
    vertices: Vec<VertexId>,
    cost: usize,
    reward: f64,
}

impl Tour {
    pub fn new(g: &AisleGraph, vertices: Vec<VertexId>) -> Tour {
        let cost = tour_cost(&vertices);
        let reward = distinct_reward(g, &vertices);
        Tour {
            vertices,
            cost,
            reward,
        }
    }

    /// The degenerate tour that never leaves home.
    pub fn home(g: &AisleGraph) -> Tour {
        Tour::new(g, vec![g.home()])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn cost(&self) -> usize {
        self.cost
    }

    pub fn reward(&self) -> f64 {
        self.reward
    }

    /// One-line text form: whitespace-separated `row:col` pairs.
    pub fn to_line(&self) -> String {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        parts.join(" ")
    }
}

/// Parses a whitespace-separated `row:col` sequence.
pub fn parse_vertex_line(line: &str) -> Result<Vec<VertexId>, String> {
    let mut out = Vec::new();
    for (idx, token) in line.split_whitespace().enumerate() {
        let (r, c) = token
            .split_once(':')
            .ok_or_else(|| format!("token {} ({token:?}) is not of the form row:col", idx + 1))?;
        let row: usize = r
            .parse()
            .map_err(|_| format!("token {} has a bad row index {r:?}", idx + 1))?;
        let col: usize = c
            .parse()
            .map_err(|_| format!("token {} has a bad column index {c:?}", idx + 1))?;
        out.push(VertexId::new(row, col));
    }
    Ok(out)
}

/// Output of one solver run.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub algorithm: String,
    pub tour: Tour,
    pub reward: f64,
    pub budget_limit: usize,
    pub budget_used: usize,
}

impl SolveResult {
    /// Wraps a tour; reward and budget usage are recomputed from the tour
    /// itself so the result can never disagree with it.
    pub fn new(algorithm: &str, tour: Tour, budget_limit: usize) -> SolveResult {
        debug_assert!(tour.cost() <= budget_limit);
        SolveResult {
            algorithm: algorithm.to_string(),
            reward: tour.reward(),
            budget_used: tour.cost(),
            tour,
            budget_limit,
        }
    }

    pub fn relabeled(mut self, algorithm: &str) -> SolveResult {
        self.algorithm = algorithm.to_string();
        self
    }
}

/// Everything `validate_tour` found out about a walk. Violations are
/// collected rather than aborting at the first one.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub empty: bool,
    pub starts_at_home: bool,
    pub ends_at_home: bool,
    /// Positions holding vertices outside the graph.
    pub bad_vertices: Vec<(usize, VertexId)>,
    /// Steps `(index, from, to)` that are not edges of the graph.
    pub bad_steps: Vec<(usize, VertexId, VertexId)>,
    pub cost: usize,
    pub budget: usize,
    pub within_budget: bool,
    /// Recomputed distinct-vertex reward.
    pub reward: f64,
}

impl ValidationReport {
    /// True iff endpoints, adjacency, and budget all check out.
    pub fn passed(&self) -> bool {
        !self.empty
            && self.starts_at_home
            && self.ends_at_home
            && self.bad_vertices.is_empty()
            && self.bad_steps.is_empty()
            && self.within_budget
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.empty {
            out.push("tour has no vertices".to_string());
        } else {
            if !self.starts_at_home {
                out.push("tour does not start at 1:0".to_string());
            }
            if !self.ends_at_home {
                out.push("tour does not end at 1:0".to_string());
            }
        }
        for &(pos, v) in &self.bad_vertices {
            out.push(format!("vertex {v} at position {pos} is outside the graph"));
        }
        for &(idx, a, b) in &self.bad_steps {
            out.push(format!("step {idx} from {a} to {b} is not an edge"));
        }
        if !self.within_budget {
            out.push(format!("cost {} exceeds budget {}", self.cost, self.budget));
        }
        out
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(
                f,
                "PASS cost={} budget={} reward={}",
                self.cost, self.budget, self.reward
            )
        } else {
            write!(
                f,
                "FAIL cost={} budget={} reward={}: {}",
                self.cost,
                self.budget,
                self.reward,
                self.violations().join("; ")
            )
        }
    }
}

/// Checks endpoints, step adjacency, and budget of a walk, and recomputes
/// its distinct-vertex reward. Never aborts; every violation is reported.
pub fn validate_tour(g: &AisleGraph, vertices: &[VertexId], budget: usize) -> ValidationReport {
    let home = g.home();
    let empty = vertices.is_empty();
    let mut bad_vertices = Vec::new();
    for (pos, &v) in vertices.iter().enumerate() {
        if !g.contains(v) {
            bad_vertices.push((pos, v));
        }
    }
    let mut bad_steps = Vec::new();
    for (idx, pair) in vertices.windows(2).enumerate() {
        if !g.adjacent(pair[0], pair[1]) {
            bad_steps.push((idx, pair[0], pair[1]));
        }
    }
    let cost = tour_cost(vertices);
    ValidationReport {
        empty,
        starts_at_home: vertices.first() == Some(&home),
        ends_at_home: vertices.last() == Some(&home),
        bad_vertices,
        bad_steps,
        cost,
        budget,
        within_budget: cost <= budget,
        reward: distinct_reward(g, vertices),
    }
}

/// Per-row record of which side columns a tour touches and whether the row
/// interior was fully traversed. Drives detour eligibility in the
/// heuristics.
#[derive(Debug, Clone)]
pub struct TourAnnotation {
    left_col_on_tour: Vec<bool>,
    right_col_on_tour: Vec<bool>,
    row_fully_traversed: Vec<bool>,
}

impl TourAnnotation {
    pub fn from_tour(g: &AisleGraph, tour: &Tour) -> TourAnnotation {
        let mut visited = vec![false; g.vertex_count()];
        for &v in tour.vertices() {
            visited[g.dense_index(v)] = true;
        }
        let mut left = vec![false; g.m()];
        let mut right = vec![false; g.m()];
        let mut full = vec![false; g.m()];
        for i in 1..=g.m() {
            left[i - 1] = visited[g.dense_index(VertexId::new(i, 0))];
            if g.is_two_sided() {
                right[i - 1] = visited[g.dense_index(VertexId::new(i, g.n() + 1))];
            }
            full[i - 1] = (1..=g.n()).all(|j| visited[g.dense_index(VertexId::new(i, j))]);
        }
        TourAnnotation {
            left_col_on_tour: left,
            right_col_on_tour: right,
            row_fully_traversed: full,
        }
    }

    pub fn left_col_on_tour(&self, row: usize) -> bool {
        self.left_col_on_tour[row - 1]
    }

    pub fn right_col_on_tour(&self, row: usize) -> bool {
        self.right_col_on_tour[row - 1]
    }

    pub fn row_fully_traversed(&self, row: usize) -> bool {
        self.row_fully_traversed[row - 1]
    }
}
