mod common;

use arrqr::{solve_lp, DenseMatrix, LinearProgram, LpStatus};
use common::{lp_vertex_oracle, rng, uniform_matrix, uniform_vec};
use rand::Rng;

/// Random bounded LP: box rows `x_j ≤ 1 + u` stacked under random rows with
/// a positive right-hand side, so the origin is always feasible.
fn random_lp(seed: u64) -> (Vec<f64>, DenseMatrix, Vec<f64>) {
    let mut r = rng(seed);
    let n = r.random_range(1..=3);
    let k = r.random_range(0..=4);
    let dense = uniform_matrix(&mut r, k, n);
    let mut rows = dense.to_rows();
    let mut h: Vec<f64> = (0..k).map(|_| r.random_range(0.1..2.0)).collect();
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        rows.push(e);
        h.push(r.random_range(0.5..2.0));
    }
    let c = uniform_vec(&mut r, n);
    (c, DenseMatrix::from_rows(&rows).unwrap(), h)
}

#[test]
fn matches_vertex_enumeration() {
    for seed in 0..300 {
        let (c, g, h) = random_lp(seed);
        let (expect, _) = lp_vertex_oracle(&c, &g, &h).unwrap();
        let lp = LinearProgram::new(c.clone()).unwrap().with_inequalities(g.clone(), h.clone()).unwrap();
        let sol = solve_lp(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal, "seed {seed}");
        assert!((sol.objective_value - expect).abs() <= 1e-9, "seed {seed}: {} vs {expect}", sol.objective_value);
        assert!(lp.max_violation(&sol.x) <= 1e-9, "seed {seed}");
        let cx: f64 = c.iter().zip(&sol.x).map(|(a, b)| a * b).sum();
        assert!((cx - sol.objective_value).abs() <= 1e-12);
    }
}

/// Duals form a feasible point of `max hᵀy, Gᵀy ≤ c, y ≤ 0` with the same
/// value as the primal optimum.
#[test]
fn duals_certify_optimality() {
    for seed in 0..300 {
        let (c, g, h) = random_lp(seed);
        let lp = LinearProgram::new(c.clone()).unwrap().with_inequalities(g.clone(), h.clone()).unwrap();
        let sol = solve_lp(&lp).unwrap();
        let y = &sol.duals;
        assert_eq!(y.len(), g.rows());
        assert!(y.iter().all(|v| *v <= 1e-9), "seed {seed}: {y:?}");
        let gty = g.tr_mul_vec(y).unwrap();
        for j in 0..c.len() {
            assert!(gty[j] <= c[j] + 1e-9, "seed {seed}");
        }
        let hty: f64 = h.iter().zip(y).map(|(a, b)| a * b).sum();
        assert!((hty - sol.objective_value).abs() <= 1e-9, "seed {seed}: {hty} vs {}", sol.objective_value);
    }
}

#[test]
fn objective_scaling_scales_the_optimum() {
    for seed in 0..50 {
        let (c, g, h) = random_lp(seed);
        let base = solve_lp(&LinearProgram::new(c.clone()).unwrap().with_inequalities(g.clone(), h.clone()).unwrap())
            .unwrap();
        for s in [1e-6, 3.0, 1e6] {
            let scaled: Vec<f64> = c.iter().map(|v| v * s).collect();
            let sol = solve_lp(&LinearProgram::new(scaled).unwrap().with_inequalities(g.clone(), h.clone()).unwrap())
                .unwrap();
            assert!((sol.objective_value - s * base.objective_value).abs() <= 1e-9 * s.max(1.0), "seed {seed}");
        }
    }
}

#[test]
fn row_scaling_leaves_the_optimum() {
    for seed in 0..50 {
        let (c, g, h) = random_lp(seed);
        let base = solve_lp(&LinearProgram::new(c.clone()).unwrap().with_inequalities(g.clone(), h.clone()).unwrap())
            .unwrap();
        let s: Vec<f64> = (0..g.rows()).map(|i| 10f64.powi(i as i32 % 7 - 3)).collect();
        let g2 = DenseMatrix::from_fn(g.rows(), g.cols(), |i, j| g.get(i, j) * s[i]).unwrap();
        let h2: Vec<f64> = h.iter().zip(&s).map(|(a, b)| a * b).collect();
        let sol = solve_lp(&LinearProgram::new(c).unwrap().with_inequalities(g2, h2).unwrap()).unwrap();
        assert!((sol.objective_value - base.objective_value).abs() <= 1e-9, "seed {seed}");
    }
}

#[test]
fn repeated_solves_are_bitwise_identical() {
    let (c, g, h) = random_lp(7);
    let lp = LinearProgram::new(c).unwrap().with_inequalities(g, h).unwrap();
    let a = solve_lp(&lp).unwrap();
    let b = solve_lp(&lp).unwrap();
    assert_eq!(a.x, b.x);
    assert_eq!(a.duals, b.duals);
    assert_eq!(a.objective_value.to_bits(), b.objective_value.to_bits());
}

#[test]
fn equality_constrained_free_variables() {
    // x boxed in [-3, 3], y free, x + y = 1.
    let lp = LinearProgram::new(vec![1.0, 2.0])
        .unwrap()
        .with_equalities(DenseMatrix::from_rows(&[[1.0, 1.0]]).unwrap(), vec![1.0])
        .unwrap()
        .with_bounds(vec![-3.0, f64::NEG_INFINITY], vec![3.0, f64::INFINITY])
        .unwrap();
    let sol = solve_lp(&lp).unwrap();
    // y = 1 − x, objective x + 2 − 2x = 2 − x, minimized at x = 3.
    assert_eq!(sol.status, LpStatus::Optimal);
    assert!((sol.x[0] - 3.0).abs() < 1e-12 && (sol.x[1] + 2.0).abs() < 1e-12);
    assert!((sol.objective_value + 1.0).abs() < 1e-12);
    assert!((sol.duals[0] - 2.0).abs() < 1e-12);
}
