//! Exact dynamics of rational skew products on the Berkovich projective line over Puiseux
//! series: pushforwards of Type II points, vertex sets and their smooth hulls, analytic
//! stability checks, stabilisation loops, and induced piecewise-linear interval maps.

pub mod berkovich;
pub mod cli;
pub mod skew;
pub mod stability;
pub mod vertexset;
pub mod deffile;
pub mod error;
pub mod intervalmap;
pub mod puiseux;
pub mod qpoly;
pub mod random;
pub mod rat;

pub use berkovich::{parse_point, Direction, OpenDisk, PointKind, TypeIIPoint};
pub use error::{Error, Result};
pub use puiseux::{parse_series, PuiseuxPoly};
pub use rat::{Ext, Rat};
