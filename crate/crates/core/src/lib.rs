//! m-band and time-share depths for vector-valued functional data
//! observed on a finite time grid.
//!
//! The crate is layered: [`hull`] decides convex-hull membership,
//! [`band`] builds m-band and time-share sets on top of it, and [`depth`]
//! averages those over subsets of a sample. [`analytic`] holds closed-form
//! reference values and [`io`] reads and writes curve data.

pub mod analytic;
pub mod band;
pub mod cli;
pub mod depth;
pub mod error;
pub mod hull;
pub mod io;
pub mod model;
pub mod verify;

pub use band::{BandSpec, BandVerdict, Curve, FunctionalSample, Reduction, TimeGrid};
pub use depth::{DepthConfig, DepthReport, Enumeration, Mode};
pub use error::{Error, ErrorKind, Result};
pub use hull::{point_in_convex_hull, GeneratorSet, MembershipCertificate, Point, Verdict};
