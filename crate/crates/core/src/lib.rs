//! Spectra and dynamics of a massless Dirac particle confined to a box or a
//! circular billiard whose wall moves in time.
//!
//! * [`law`]: wall trajectories and the rescaled coordinates.
//! * [`box1d`]: exact modes of the box with a linearly moving wall.
//! * [`disk`]: radial modes of the expanding disk by shooting, with the
//!   hypergeometric boundary condition as a cross-check.
//! * [`special`]: hypergeometric series, quadrature and root bracketing.
//! * [`evolution`]: numerical propagation for arbitrary wall laws.
//! * [`cli`] and [`io`]: the `billiard` command line tool and its output formats.

pub mod box1d;
pub mod cli;
pub mod disk;
pub mod error;
pub mod evolution;
pub mod io;
pub mod law;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use law::{BoundaryLaw, Grid, Spinor2, TransformedTime};
