//! Dense two-phase primal simplex for small linear programs
//!
//! ```text
//!     minimize    cᵀx
//!     subject to  G·x ≤ h
//!                 E·x = e
//!                 lower ≤ x ≤ upper
//! ```
//!
//! Bounds may be infinite. Variables are shifted, mirrored or split so the
//! working problem has `0 ≤ y ≤ u` bounds, rows are equilibrated to unit max
//! coefficient, and a bounded-variable tableau simplex runs phase 1 on
//! artificials followed by phase 2 on the true objective. Pricing is Dantzig
//! (most negative reduced cost) and falls back to Bland's rule while a run of
//! degenerate pivots persists.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Smallest tableau entry accepted as a pivot.
pub const PIVOT_TOL: f64 = 1e-10;
/// Absolute primal feasibility tolerance on equilibrated rows.
pub const FEASIBILITY_TOL: f64 = 1e-8;
/// Reduced costs above `-OPTIMALITY_TOL` count as optimal.
pub const OPTIMALITY_TOL: f64 = 1e-10;
/// Consecutive degenerate pivots before switching to Bland's rule.
pub const STALL_LIMIT: usize = 50;
/// The iteration cap is this factor times (rows + columns) of the working tableau.
pub const ITERATION_FACTOR: usize = 50;

/// Steps shorter than this count as degenerate.
const DEGENERATE_STEP: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct LinearProgram {
    objective: Vec<f64>,
    ineq: DenseMatrix,
    ineq_rhs: Vec<f64>,
    eq: DenseMatrix,
    eq_rhs: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl LinearProgram {
    /// A program with the given objective, no constraint rows and
    /// nonnegative variables.
    pub fn new(objective: Vec<f64>) -> Result<Self> {
        if objective.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("objective must be finite".into()));
        }
        let n = objective.len();
        Ok(Self {
            objective,
            ineq: DenseMatrix::zeros(0, n),
            ineq_rhs: Vec::new(),
            eq: DenseMatrix::zeros(0, n),
            eq_rhs: Vec::new(),
            lower: vec![0.0; n],
            upper: vec![f64::INFINITY; n],
        })
    }

    /// Sets the `G·x ≤ h` block.
    pub fn with_inequalities(mut self, g: DenseMatrix, h: Vec<f64>) -> Result<Self> {
        check_block(self.num_vars(), &g, &h, "inequality")?;
        self.ineq = g;
        self.ineq_rhs = h;
        Ok(self)
    }

    /// Sets the `E·x = e` block.
    pub fn with_equalities(mut self, e: DenseMatrix, rhs: Vec<f64>) -> Result<Self> {
        check_block(self.num_vars(), &e, &rhs, "equality")?;
        self.eq = e;
        self.eq_rhs = rhs;
        Ok(self)
    }

    /// Sets per-variable bounds; use `f64::NEG_INFINITY` / `f64::INFINITY`
    /// for a missing side.
    pub fn with_bounds(mut self, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        let n = self.num_vars();
        if lower.len() != n || upper.len() != n {
            return Err(Error::Shape(format!(
                "bounds of length {}/{} for {n} variables",
                lower.len(),
                upper.len()
            )));
        }
        for (j, (&l, &u)) in lower.iter().zip(&upper).enumerate() {
            if l.is_nan() || u.is_nan() || l == f64::INFINITY || u == f64::NEG_INFINITY || l > u {
                return Err(Error::InvalidArgument(format!(
                    "variable {j} has invalid bounds [{l}, {u}]"
                )));
            }
        }
        self.lower = lower;
        self.upper = upper;
        Ok(self)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_inequalities(&self) -> usize {
        self.ineq.rows()
    }

    pub fn num_equalities(&self) -> usize {
        self.eq.rows()
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn inequalities(&self) -> (&DenseMatrix, &[f64]) {
        (&self.ineq, &self.ineq_rhs)
    }

    pub fn equalities(&self) -> (&DenseMatrix, &[f64]) {
        (&self.eq, &self.eq_rhs)
    }

    pub fn bounds(&self) -> (&[f64], &[f64]) {
        (&self.lower, &self.upper)
    }

    /// Largest violation of any constraint or bound at `x`, measured on rows
    /// scaled to unit max absolute coefficient.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst = 0.0f64;
        for (j, &v) in x.iter().enumerate() {
            worst = worst.max(self.lower[j] - v).max(v - self.upper[j]);
        }
        for (g, h, is_eq) in [(&self.ineq, &self.ineq_rhs, false), (&self.eq, &self.eq_rhs, true)] {
            for i in 0..g.rows() {
                let row = g.row(i);
                let scale = row.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                let scale = if scale > 0.0 { scale } else { 1.0 };
                let lhs: f64 = row.iter().zip(x).map(|(a, b)| a * b).sum();
                let gap = (lhs - h[i]) / scale;
                worst = worst.max(if is_eq { gap.abs() } else { gap });
            }
        }
        worst
    }
}

fn check_block(n: usize, m: &DenseMatrix, rhs: &[f64], what: &str) -> Result<()> {
    if m.cols() != n || m.rows() != rhs.len() {
        return Err(Error::Shape(format!(
            "{what} block is {}x{} with {} right-hand sides for {n} variables",
            m.rows(),
            m.cols(),
            rhs.len()
        )));
    }
    if rhs.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(format!("{what} right-hand side must be finite")));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Primal point. Only meaningful when `status` is `Optimal`.
    pub x: Vec<f64>,
    pub objective_value: f64,
    /// Sensitivity of the optimal objective to each right-hand side:
    /// inequality rows first, then equality rows. Empty unless optimal.
    pub duals: Vec<f64>,
    pub iterations: usize,
}

/// Solves `lp` with a fresh [`SimplexSolver`].
pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution> {
    SimplexSolver::new().solve(lp)
}

/// How an original variable maps onto working columns.
#[derive(Clone, Copy, Debug)]
enum VarMap {
    /// x = lower + y
    Shift { col: usize, lower: f64 },
    /// x = upper − y
    Mirror { col: usize, upper: f64 },
    /// x = y⁺ − y⁻
    Split { plus: usize, minus: usize },
}

/// Reusable simplex workspace. One solve at a time per instance.
#[derive(Debug, Default)]
pub struct SimplexSolver {
    rows: usize,
    cols: usize,
    /// Row-major `rows × cols` tableau `B⁻¹·A`.
    tab: Vec<f64>,
    /// Reduced costs for the active phase.
    d: Vec<f64>,
    cost: Vec<f64>,
    upper: Vec<f64>,
    at_upper: Vec<bool>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    beta: Vec<f64>,
    /// Columns that may never enter (artificials after phase 1).
    frozen: Vec<bool>,
    iterations: usize,
    max_iterations: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl SimplexSolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn solve(&mut self, lp: &LinearProgram) -> Result<LpSolution> {
        let n = lp.num_vars();
        let n_ineq = lp.num_inequalities();
        let n_eq = lp.num_equalities();
        let rows = n_ineq + n_eq;

        // Working structural columns.
        let mut maps = Vec::with_capacity(n);
        let mut wcost = Vec::new();
        let mut wupper = Vec::new();
        for j in 0..n {
            let (l, u, c) = (lp.lower[j], lp.upper[j], lp.objective[j]);
            let map = if l.is_finite() {
                wcost.push(c);
                wupper.push(u - l);
                VarMap::Shift { col: wcost.len() - 1, lower: l }
            } else if u.is_finite() {
                wcost.push(-c);
                wupper.push(f64::INFINITY);
                VarMap::Mirror { col: wcost.len() - 1, upper: u }
            } else {
                wcost.push(c);
                wupper.push(f64::INFINITY);
                wcost.push(-c);
                wupper.push(f64::INFINITY);
                VarMap::Split {
                    plus: wcost.len() - 2,
                    minus: wcost.len() - 1,
                }
            };
            maps.push(map);
        }
        let ny = wcost.len();

        // Start nonbasic structurals at the bound favoured by the objective.
        let start_upper: Vec<bool> = (0..ny).map(|j| wcost[j] < 0.0 && wupper[j].is_finite()).collect();

        // Rows in working variables, equilibrated, with right-hand sides
        // net of the nonbasic starting values.
        let mut row_coefs = vec![0.0; rows * ny];
        let mut row_rhs = vec![0.0; rows];
        let mut row_scale = vec![1.0; rows];
        for i in 0..rows {
            let (g, h, r) = if i < n_ineq {
                (&lp.ineq, &lp.ineq_rhs, i)
            } else {
                (&lp.eq, &lp.eq_rhs, i - n_ineq)
            };
            let coefs = &mut row_coefs[i * ny..(i + 1) * ny];
            let mut rhs = h[r];
            for (j, map) in maps.iter().enumerate() {
                let a = g.get(r, j);
                if a == 0.0 {
                    continue;
                }
                match *map {
                    VarMap::Shift { col, lower } => {
                        coefs[col] = a;
                        rhs -= a * lower;
                    }
                    VarMap::Mirror { col, upper } => {
                        coefs[col] = -a;
                        rhs -= a * upper;
                    }
                    VarMap::Split { plus, minus } => {
                        coefs[plus] = a;
                        coefs[minus] = -a;
                    }
                }
            }
            let amax = coefs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let s = if amax > 0.0 { 1.0 / amax } else { 1.0 };
            for v in coefs.iter_mut() {
                *v *= s;
            }
            rhs *= s;
            for (j, &up) in start_upper.iter().enumerate() {
                if up {
                    rhs -= coefs[j] * wupper[j];
                }
            }
            row_scale[i] = s;
            row_rhs[i] = rhs;
        }

        // Slack per inequality row, artificial wherever the slack cannot
        // start basic.
        let mut needs_art = vec![false; rows];
        let mut sign = vec![1.0; rows];
        for i in 0..rows {
            if row_rhs[i] < 0.0 {
                sign[i] = -1.0;
            }
            needs_art[i] = i >= n_ineq || sign[i] < 0.0;
        }
        let n_art = needs_art.iter().filter(|&&a| a).count();
        let slack0 = ny;
        let art0 = ny + n_ineq;
        let cols = art0 + n_art;

        self.rows = rows;
        self.cols = cols;
        self.tab.clear();
        self.tab.resize(rows * cols, 0.0);
        self.upper.clear();
        self.upper.extend_from_slice(&wupper);
        self.upper.resize(cols, f64::INFINITY);
        self.at_upper.clear();
        self.at_upper.extend_from_slice(&start_upper);
        self.at_upper.resize(cols, false);
        self.is_basic.clear();
        self.is_basic.resize(cols, false);
        self.frozen.clear();
        self.frozen.resize(cols, false);
        self.basis.clear();
        self.beta.clear();
        self.iterations = 0;
        self.max_iterations = ITERATION_FACTOR * (rows + cols).max(1);

        // Column that carries +1 in row i of the transformed system.
        let mut unit_col = vec![0; rows];
        let mut next_art = art0;
        for i in 0..rows {
            let t = &mut self.tab[i * cols..(i + 1) * cols];
            for j in 0..ny {
                t[j] = sign[i] * row_coefs[i * ny + j];
            }
            if i < n_ineq {
                t[slack0 + i] = sign[i];
            }
            let basic = if needs_art[i] {
                t[next_art] = 1.0;
                next_art += 1;
                next_art - 1
            } else {
                slack0 + i
            };
            unit_col[i] = basic;
            self.basis.push(basic);
            self.is_basic[basic] = true;
            self.beta.push(sign[i] * row_rhs[i]);
        }

        // Phase 1.
        if n_art > 0 {
            self.cost.clear();
            self.cost.resize(cols, 0.0);
            for c in &mut self.cost[art0..] {
                *c = 1.0;
            }
            self.price_from_scratch();
            match self.iterate()? {
                Outcome::Optimal => {}
                // Phase 1 is bounded below; only a breakdown in the ratio
                // test lands here.
                Outcome::Unbounded => {
                    return Err(Error::NotConverged {
                        iterations: self.iterations,
                    })
                }
            }
            let infeasibility: f64 = (0..rows)
                .filter(|&i| self.basis[i] >= art0)
                .map(|i| self.beta[i].max(0.0))
                .sum();
            if infeasibility > FEASIBILITY_TOL {
                return Ok(LpSolution {
                    status: LpStatus::Infeasible,
                    x: self.recover_x(&maps, lp),
                    objective_value: f64::INFINITY,
                    duals: Vec::new(),
                    iterations: self.iterations,
                });
            }
            for j in art0..cols {
                self.upper[j] = 0.0;
                self.frozen[j] = true;
            }
        }

        // Phase 2.
        self.cost.clear();
        self.cost.extend_from_slice(&wcost);
        self.cost.resize(cols, 0.0);
        self.price_from_scratch();
        let outcome = self.iterate()?;
        let x = self.recover_x(&maps, lp);
        match outcome {
            Outcome::Unbounded => Ok(LpSolution {
                status: LpStatus::Unbounded,
                x,
                objective_value: f64::NEG_INFINITY,
                duals: Vec::new(),
                iterations: self.iterations,
            }),
            Outcome::Optimal => {
                // Multiplier of transformed row i is −d of its unit column;
                // undo the sign flip and equilibration.
                let duals = (0..rows)
                    .map(|i| -self.d[unit_col[i]] * sign[i] * row_scale[i])
                    .map(|y| if y == 0.0 { 0.0 } else { y })
                    .collect();
                let objective_value = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
                Ok(LpSolution {
                    status: LpStatus::Optimal,
                    x,
                    objective_value,
                    duals,
                    iterations: self.iterations,
                })
            }
        }
    }

    fn value(&self, j: usize) -> f64 {
        if self.at_upper[j] {
            self.upper[j]
        } else {
            0.0
        }
    }

    fn recover_x(&self, maps: &[VarMap], lp: &LinearProgram) -> Vec<f64> {
        let mut y: Vec<f64> = (0..self.cols).map(|j| self.value(j)).collect();
        for (i, &b) in self.basis.iter().enumerate() {
            y[b] = self.beta[i].clamp(0.0, self.upper[b]);
        }
        maps.iter()
            .enumerate()
            .map(|(j, map)| {
                let v = match *map {
                    VarMap::Shift { col, lower } => lower + y[col],
                    VarMap::Mirror { col, upper } => upper - y[col],
                    VarMap::Split { plus, minus } => y[plus] - y[minus],
                };
                v.clamp(lp.lower[j], lp.upper[j])
            })
            .collect()
    }

    fn price_from_scratch(&mut self) {
        let cols = self.cols;
        self.d.clear();
        self.d.extend_from_slice(&self.cost);
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = self.cost[b];
            if cb != 0.0 {
                let row = &self.tab[i * cols..(i + 1) * cols];
                for (dj, t) in self.d.iter_mut().zip(row) {
                    *dj -= cb * t;
                }
            }
        }
        for &b in &self.basis {
            self.d[b] = 0.0;
        }
    }

    fn iterate(&mut self) -> Result<Outcome> {
        let mut stall = 0usize;
        loop {
            if self.iterations >= self.max_iterations {
                return Err(Error::NotConverged {
                    iterations: self.iterations,
                });
            }
            let bland = stall >= STALL_LIMIT;
            let Some(q) = self.choose_entering(bland) else {
                return Ok(Outcome::Optimal);
            };
            self.iterations += 1;
            let dir = if self.at_upper[q] { -1.0 } else { 1.0 };

            // Ratio test. `leave` is None when the entering variable hits
            // its own opposite bound first.
            let mut theta = self.upper[q];
            let mut leave: Option<(usize, bool)> = None;
            let mut best_alpha = 0.0;
            for i in 0..self.rows {
                let alpha = self.tab[i * self.cols + q];
                if alpha.abs() <= PIVOT_TOL {
                    continue;
                }
                let rate = dir * alpha;
                let b = self.basis[i];
                let (limit, to_upper) = if rate > 0.0 {
                    (self.beta[i].max(0.0) / rate, false)
                } else if self.upper[b].is_finite() {
                    ((self.upper[b] - self.beta[i]).max(0.0) / -rate, true)
                } else {
                    continue;
                };
                let better = match leave {
                    _ if limit < theta - DEGENERATE_STEP => true,
                    _ if limit > theta + DEGENERATE_STEP => false,
                    None => limit < theta,
                    Some((r, _)) => {
                        if bland {
                            b < self.basis[r]
                        } else {
                            alpha.abs() > best_alpha
                        }
                    }
                };
                if better {
                    theta = limit;
                    leave = Some((i, to_upper));
                    best_alpha = alpha.abs();
                }
            }
            if theta.is_infinite() {
                return Ok(Outcome::Unbounded);
            }
            if theta <= DEGENERATE_STEP {
                stall += 1;
            } else {
                stall = 0;
            }

            if theta > 0.0 {
                let step = dir * theta;
                for i in 0..self.rows {
                    let alpha = self.tab[i * self.cols + q];
                    if alpha != 0.0 {
                        self.beta[i] -= alpha * step;
                    }
                }
            }
            match leave {
                None => self.at_upper[q] = !self.at_upper[q],
                Some((r, to_upper)) => {
                    let entering_value = self.value(q) + dir * theta;
                    let out = self.basis[r];
                    self.is_basic[out] = false;
                    self.at_upper[out] = to_upper;
                    self.basis[r] = q;
                    self.is_basic[q] = true;
                    self.at_upper[q] = false;
                    self.beta[r] = entering_value;
                    self.pivot(r, q);
                }
            }
        }
    }

    fn choose_entering(&self, bland: bool) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for j in 0..self.cols {
            if self.is_basic[j] || self.frozen[j] || self.upper[j] == 0.0 {
                continue;
            }
            let dj = self.d[j];
            let gain = if self.at_upper[j] { dj } else { -dj };
            if gain <= OPTIMALITY_TOL {
                continue;
            }
            if bland {
                return Some(j);
            }
            if best.is_none_or(|(_, g)| gain > g) {
                best = Some((j, gain));
            }
        }
        best.map(|(j, _)| j)
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let cols = self.cols;
        let (before, rest) = self.tab.split_at_mut(r * cols);
        let (prow, after) = rest.split_at_mut(cols);
        let inv = 1.0 / prow[q];
        for v in prow.iter_mut() {
            *v *= inv;
        }
        prow[q] = 1.0;
        for row in before.chunks_exact_mut(cols).chain(after.chunks_exact_mut(cols)) {
            let f = row[q];
            if f != 0.0 {
                for (v, p) in row.iter_mut().zip(prow.iter()) {
                    *v -= f * p;
                }
                row[q] = 0.0;
            }
        }
        let f = self.d[q];
        if f != 0.0 {
            for (v, p) in self.d.iter_mut().zip(prow.iter()) {
                *v -= f * p;
            }
            self.d[q] = 0.0;
        }
    }
}
