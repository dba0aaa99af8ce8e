//! Radial spectra of the expanding disk by shooting. The k = 0 sector has a
//! closed form; the static disk reduces to zeros of spherical Bessel functions.

use dirac_billiard::disk::{disk_eigenvalue_k0_closed, disk_spectrum, hypergeometric_condition};

fn main() -> dirac_billiard::Result<()> {
    let a = 0.3;
    let s = disk_spectrum(0, a, 4)?;
    println!("k = 0, a = {a}");
    for (n, l) in s.eigenvalues.iter().enumerate() {
        let closed = disk_eigenvalue_k0_closed(n as u32 + 1, a)?;
        let hyp = hypergeometric_condition(0, *l, a)?.norm();
        println!("  n = {}: {l:.12}  closed form {closed:.12}  |hypergeometric condition| {hyp:.1e}", n + 1);
    }

    for k in [-2, -1, 1, 2] {
        let s = disk_spectrum(k, a, 3)?;
        let tag = if s.numerically_defined { " (numerical only)" } else { "" };
        println!("k = {k:>2}: {:.9?}{tag}", s.eigenvalues);
    }

    let s = disk_spectrum(1, 0.0, 2)?;
    println!("static disk, k = 1: {:.12?} (tan x = x: 4.493409457909, 7.725251836938)", s.eigenvalues);
    Ok(())
}
