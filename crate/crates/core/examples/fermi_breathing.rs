//! Static box mode under a periodically breathing wall. Writes the
//! `(t, L, norm, energy)` series as CSV to the path given on the command
//! line, or prints it.

use std::f64::consts::PI;

use dirac_billiard::evolution::{run_fermi, EvolutionConfig};
use dirac_billiard::io::{render_series, write_series, Format};
use dirac_billiard::{BoundaryLaw, Grid};

fn main() -> dirac_billiard::Result<()> {
    let t_end = 4.0;
    let law = BoundaryLaw::breathing(1.0, 0.1, 2.0 * PI, t_end)?;
    let cfg = EvolutionConfig::fixed(t_end, 0.0008).recording(125);
    let series = run_fermi(1, &law, Grid::new(513)?, &cfg)?;

    match std::env::args().nth(1) {
        Some(path) => {
            write_series(&series, path.as_ref(), Format::Csv)?;
            println!("wrote {} samples to {path}", series.len());
        }
        None => print!("{}", render_series(&series, Format::Csv)?),
    }
    Ok(())
}
