//! Samples an exact mode of the expanding box and checks the two scaling
//! laws it obeys: the norm grows like `L(t)` and the energy falls like `1/L(t)`.

use dirac_billiard::box1d::{mode_solution_1d, Mode1D};
use dirac_billiard::evolution::{energy, norm, FieldState};
use dirac_billiard::Grid;

fn main() -> dirac_billiard::Result<()> {
    let mode = Mode1D::new(1, 0.5, 1.0)?;
    println!("lambda_1 = {:.15}, M = {:.6}", mode.lambda, mode.norm_const);

    let t = 1.0;
    for x in [0.0, 0.375, 0.75, 1.125, 1.5] {
        let psi = mode_solution_1d(&mode, t, x)?;
        println!("Psi({t}, {x:5}) = ({:.6}, {:.6})", psi.c1, psi.c2);
    }

    let grid = Grid::new(1025)?;
    println!("\n{:>5} {:>8} {:>12} {:>12}", "t", "L", "norm / L", "energy * L");
    for t in [0.0, 0.5, 1.0, 2.0, 4.0] {
        let s = FieldState::box_mode(&mode, t, grid)?;
        let l = mode.length(t);
        println!("{t:>5} {l:>8} {:>12.9} {:>12.9}", norm(&s)? / l, energy(&s)? * l);
    }
    Ok(())
}
