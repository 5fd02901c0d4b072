#![allow(clippy::needless_range_loop)]

mod common;

use arrqr::{
    classical_cpqr, induced_1norm, matmul, permute_cols, reconstruct, rrqr_factor, rrqr_factor_with, truncate_against,
    CandidateSearch, DenseMatrix, NormSpec, RrqrOptions,
};
use common::{l1_subset_oracle, max_abs_diff, rng, uniform_matrix};
use proptest::prelude::*;
use rand::Rng;

fn random_matrix(seed: u64, max_m: usize) -> DenseMatrix {
    let mut r = rng(seed);
    let m = r.random_range(1..=max_m);
    let n = r.random_range(1..=m);
    uniform_matrix(&mut r, m, n)
}

fn basis(q: &DenseMatrix, j: usize) -> DenseMatrix {
    q.leading_cols(j)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factors_reproduce_the_permuted_matrix(seed in any::<u64>()) {
        let a = random_matrix(seed, 8);
        for norm in [NormSpec::L1, NormSpec::L2] {
            let f = rrqr_factor(&a, &norm, 0.0, None).unwrap();
            prop_assert_eq!(f.rank(), a.cols());
            let ap = permute_cols(&a, f.perm()).unwrap();
            let qr = matmul(f.q(), f.r()).unwrap();
            prop_assert!(induced_1norm(&ap.sub(&qr).unwrap()) <= 1e-12 * induced_1norm(&a));
        }
    }

    #[test]
    fn diagonal_is_nonincreasing_and_r_upper_triangular(seed in any::<u64>()) {
        let a = random_matrix(seed, 8);
        let f = rrqr_factor(&a, &NormSpec::L1, 0.0, None).unwrap();
        let g = f.gammas();
        for w in g.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-12 * g[0]);
        }
        for j in 0..f.cols() {
            for i in j + 1..f.rank() {
                prop_assert_eq!(f.r().get(i, j), 0.0);
            }
            if j < f.rank() {
                prop_assert_eq!(f.r().get(j, j), g[j]);
            }
        }
    }

    #[test]
    fn l1_columns_of_q_have_unit_norm(seed in any::<u64>()) {
        let a = random_matrix(seed, 8);
        let f = rrqr_factor(&a, &NormSpec::L1, 0.0, None).unwrap();
        for j in 0..f.rank() {
            let s: f64 = f.q().col(j).iter().map(|v| v.abs()).sum();
            prop_assert!((s - 1.0).abs() <= 1e-12);
        }
        prop_assert!(induced_1norm(f.q()) <= 1.0 + 1e-12);
    }

    /// Each pivot attains the largest least-deviation error over the
    /// columns not yet chosen, checked against row-subset enumeration.
    #[test]
    fn pivots_are_maximin(seed in any::<u64>()) {
        let a = random_matrix(seed, 6);
        let f = rrqr_factor(&a, &NormSpec::L1, 0.0, None).unwrap();
        let p = f.perm().as_slice();
        for j in 0..f.rank() {
            let q = basis(f.q(), j);
            let chosen = l1_subset_oracle(&q, a.col(p[j]));
            prop_assert!((chosen - f.gammas()[j]).abs() <= 1e-9 * f.gammas()[0]);
            for &other in &p[j + 1..] {
                let e = l1_subset_oracle(&q, a.col(other));
                prop_assert!(e <= f.gammas()[j] + 1e-9 * f.gammas()[0], "step {} col {} beats pivot", j, other);
            }
        }
    }

    #[test]
    fn pruned_search_matches_exhaustive(seed in any::<u64>()) {
        let a = random_matrix(seed, 10);
        let fast = rrqr_factor(&a, &NormSpec::L1, 0.0, None).unwrap();
        let opts = RrqrOptions { search: CandidateSearch::Exhaustive, ..RrqrOptions::default() };
        let slow = rrqr_factor_with(&a, &NormSpec::L1, &opts).unwrap();
        prop_assert_eq!(fast.perm(), slow.perm());
        for (x, y) in fast.gammas().iter().zip(slow.gammas()) {
            prop_assert!((x - y).abs() <= 1e-12 * fast.gammas()[0]);
        }
    }

    #[test]
    fn power_of_two_scaling_is_exact(seed in any::<u64>(), exp in -30i32..30) {
        let a = random_matrix(seed, 7);
        let s = 2f64.powi(exp);
        let f = rrqr_factor(&a, &NormSpec::L1, 0.0, None).unwrap();
        let g = rrqr_factor(&a.scale(s).unwrap(), &NormSpec::L1, 0.0, None).unwrap();
        prop_assert_eq!(f.perm(), g.perm());
        for (x, y) in f.gammas().iter().zip(g.gammas()) {
            prop_assert!((x * s - y).abs() <= 1e-12 * y.abs().max(s * f.gammas()[0] * 1e-3));
        }
        prop_assert!(max_abs_diff(f.q(), g.q()) <= 1e-12);
    }

    #[test]
    fn l2_factor_is_orthogonal_and_matches_householder(seed in any::<u64>()) {
        let a = random_matrix(seed, 8);
        let f = rrqr_factor(&a, &NormSpec::L2, 0.0, None).unwrap();
        let qtq = matmul(&f.q().transpose(), f.q()).unwrap();
        prop_assert!(induced_1norm(&qtq.sub(&DenseMatrix::identity(f.rank())).unwrap()) <= 1e-12);
        let c = classical_cpqr(&a).unwrap();
        prop_assert_eq!(f.perm(), c.perm());
        for (x, y) in f.gammas().iter().zip(c.gammas()) {
            prop_assert!((x - y).abs() <= 1e-12 * c.gammas()[0]);
        }
    }

    #[test]
    fn permutation_is_valid_and_full_truncation_is_exact(seed in any::<u64>()) {
        let a = random_matrix(seed, 8);
        let f = rrqr_factor(&a, &NormSpec::L1, 0.0, None).unwrap();
        let mut seen = f.perm().as_slice().to_vec();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..a.cols()).collect::<Vec<_>>());
        let back = reconstruct(&f).unwrap();
        prop_assert!(max_abs_diff(&back, &a) <= 1e-12);
        let t = truncate_against(&f, f.rank(), &a).unwrap();
        prop_assert!(t.error_1norm.unwrap() <= 1e-12 * induced_1norm(&a));
    }
}

#[test]
fn exact_low_rank_is_revealed() {
    let mut r = rng(3);
    let u = uniform_matrix(&mut r, 12, 2);
    let v = uniform_matrix(&mut r, 2, 9);
    let a = matmul(&u, &v).unwrap();
    let f = rrqr_factor(&a, &NormSpec::L1, 0.0, None).unwrap();
    let g = f.gammas();
    assert!(g[1] > 1e-3 * g[0]);
    assert!(g[2..].iter().all(|x| *x <= 1e-10 * g[0]), "{g:?}");
    let stopped = rrqr_factor(&a, &NormSpec::L1, 1e-8, None).unwrap();
    assert_eq!(stopped.rank(), 2);
    let t = truncate_against(&stopped, 2, &a).unwrap();
    assert!(t.error_1norm.unwrap() <= 1e-10 * induced_1norm(&a));
}

#[test]
fn rank_one_outer_product() {
    let a = DenseMatrix::from_fn(5, 4, |i, j| (i as f64 + 1.0) * (j as f64 - 1.5)).unwrap();
    let f = rrqr_factor(&a, &NormSpec::L1, 1e-12, None).unwrap();
    assert_eq!(f.rank(), 1);
    // Columns 0 and 3 tie on norm; the lower index wins.
    assert_eq!(f.perm().as_slice()[0], 0);
    assert_eq!(f.gammas()[0], 22.5);
}
