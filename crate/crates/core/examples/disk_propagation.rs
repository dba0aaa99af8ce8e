//! Evolves a k = 1 disk mode while the radius grows linearly and compares
//! with the separated solution.

use dirac_billiard::disk::DiskMode;
use dirac_billiard::evolution::{evolve, l2_error, norm, EvolutionConfig, FieldState};
use dirac_billiard::Grid;

fn main() -> dirac_billiard::Result<()> {
    let mode = DiskMode::new(1, 1, 0.3, 1.0)?;
    println!("k = 1, n = 1, a = 0.3: lambda = {:.10}", mode.lambda);
    for points in [257, 513, 1025, 2049] {
        let grid = Grid::new(points)?;
        let start = FieldState::disk_mode(&mode, 0.0, grid)?;
        let (end, _) = evolve(&start, &EvolutionConfig::auto(1.0, 0.5))?;
        let exact = FieldState::disk_mode(&mode, 1.0, grid)?;
        println!(
            "{points:>5} points: L2 error {:.3e}, norm {:.6} -> {:.6}",
            l2_error(&end, &exact)?,
            norm(&start)?,
            norm(&end)?
        );
    }
    Ok(())
}
