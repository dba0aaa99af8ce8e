//! The Gauss series `2F1(alpha, beta; gamma; z)` with complex parameters,
//! checked against closed forms.

use dirac_billiard::special::{hyp2f1, hyp2f1_halfgamma_oracle, HypParams};
use num_complex::Complex64;

fn main() -> dirac_billiard::Result<()> {
    let c = Complex64::new;

    let p = HypParams::new(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), 0.5)?;
    let e = hyp2f1(&p, 1e-15)?;
    println!("F(1,1;2;1/2) = {:.16} (2 ln 2 = {:.16}), error estimate {:.1e}", e.value.re, 2.0 * 2f64.ln(), e.error);

    // gamma = 3/2 with argument z^2 has an elementary closed form.
    for alpha in [c(0.3, 0.0), c(1.0, 0.7), c(0.5, 2.0)] {
        for z in [0.1, 0.5, 0.8] {
            let p = HypParams::new(alpha, alpha + 0.5, c(1.5, 0.0), z * z)?;
            let series = hyp2f1(&p, 1e-15)?.value;
            let closed = hyp2f1_halfgamma_oracle(alpha, z)?;
            println!("alpha = {alpha:.1}, z = {z}: {series:.12}  |diff| = {:.1e}", (series - closed).norm());
        }
    }
    Ok(())
}
