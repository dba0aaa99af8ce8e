//! Wall trajectories and the rescaled time `tau(t) = int_0^t ds / L(s)`.

use std::f64::consts::PI;

use dirac_billiard::BoundaryLaw;

fn main() -> dirac_billiard::Result<()> {
    let laws = [
        ("static", BoundaryLaw::static_wall(1.0)?),
        ("linear", BoundaryLaw::linear(0.5, 1.0, 10.0)?),
        ("contracting", BoundaryLaw::linear(-0.25, 1.0, 3.0)?),
        ("breathing", BoundaryLaw::breathing(1.0, 0.1, 2.0 * PI, 10.0)?),
        ("tabulated", BoundaryLaw::tabulated(vec![(0.0, 1.0), (1.0, 1.5), (2.0, 1.2), (3.0, 1.2)], 3.0)?),
    ];
    for (name, law) in &laws {
        print!("{name:>12}:");
        for t in [0.0, 1.0, 2.0, 3.0] {
            print!("  L({t}) = {:.4}, tau = {:.6}", law.position(t)?, law.rescaled_time(t)?.tau);
        }
        println!();
    }

    let contracting = BoundaryLaw::Linear { a: -0.25, b: 1.0 };
    println!("\ncontracting wall collapses at t = {:?}", contracting.collapse_time());
    if let Err(e) = contracting.position(5.0) {
        println!("position(5) -> {e}");
    }
    Ok(())
}
