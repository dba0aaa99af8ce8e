//! Propagates an exact mode of the expanding box numerically and measures
//! the error against the closed form under grid refinement.

use dirac_billiard::box1d::Mode1D;
use dirac_billiard::evolution::{evolve, l2_error, EvolutionConfig, FieldState};
use dirac_billiard::Grid;

fn main() -> dirac_billiard::Result<()> {
    let mode = Mode1D::new(1, 0.5, 1.0)?;
    let cfg = EvolutionConfig::auto(1.0, 0.5);
    let mut previous: Option<f64> = None;
    println!("{:>6} {:>12} {:>7}", "points", "L2 error", "order");
    for points in [129, 257, 513, 1025] {
        let grid = Grid::new(points)?;
        let (end, _) = evolve(&FieldState::box_mode(&mode, 0.0, grid)?, &cfg)?;
        let err = l2_error(&end, &FieldState::box_mode(&mode, 1.0, grid)?)?;
        let order = previous.map_or(String::new(), |p| format!("{:.3}", (p / err).log2()));
        println!("{points:>6} {err:>12.3e} {order:>7}");
        previous = Some(err);
    }
    Ok(())
}
