//! Factor a small matrix in the l1 norm and print the factors.
//!
//! cargo run --example factor_l1

use arrqr::{matmul, permute_cols, rrqr_factor, DenseMatrix, NormSpec};

fn main() -> arrqr::Result<()> {
    let a = DenseMatrix::from_rows(&[
        [4.0, 1.0, 2.0, 0.5],
        [1.0, 3.0, 0.0, 1.0],
        [0.0, 1.0, 5.0, 2.0],
        [2.0, 0.0, 1.0, 3.0],
        [1.0, 1.0, 1.0, 1.0],
    ])?;
    let f = rrqr_factor(&a, &NormSpec::L1, 0.0, None)?;

    println!("pivot order: {:?}", f.perm().as_slice());
    println!("diag(R):     {:?}", f.gammas());
    println!("Q =\n{:?}", f.q());
    println!("R =\n{:?}", f.r());

    // Every column of Q has unit l1 norm.
    for j in 0..f.rank() {
        let s: f64 = f.q().col(j).iter().map(|v| v.abs()).sum();
        println!("||q_{j}||_1 = {s:.15}");
    }

    let residual = permute_cols(&a, f.perm())?.sub(&matmul(f.q(), f.r())?)?;
    println!("max |AP - QR| = {:e}", residual.max_abs());
    Ok(())
}
