//! Eigenvalues of the box with a linearly moving wall, and how they approach
//! the static values `n pi` as the wall slows down.

use std::f64::consts::PI;

use dirac_billiard::box1d::{eigenvalue_1d, quantization_residual_1d};

fn main() -> dirac_billiard::Result<()> {
    println!("{:>6} {:>4} {:>20} {:>12} {:>10}", "a", "n", "lambda_n", "/(n pi)", "|f(1)|");
    for a in [1e-3, 0.1, 0.5, 0.9, -0.5] {
        for n in 1..=3 {
            let l = eigenvalue_1d(n, a)?;
            let wall = quantization_residual_1d(l, a)?.norm();
            println!("{a:>6} {n:>4} {l:>20.15} {:>12.9} {wall:>10.1e}", l / (PI * n as f64));
        }
    }
    Ok(())
}
