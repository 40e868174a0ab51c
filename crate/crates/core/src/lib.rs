//! Fat points at six points of the projective plane.
//!
//! The pipeline runs from a configuration type (which lines and conics pass
//! through which points) to the Hilbert functions of the symbolic powers
//! `I^(m)`, then to the reverse-lexicographic generic initial ideals as
//! two-variable staircases, their Newton polygons, and finally the limiting
//! shape of the polygons scaled by `1/m`.
//!
//! - [`picard`]: divisor classes on the blow-up and the intersection form.
//! - [`configuration`]: defining curves, negative curves and the catalog of
//!   the eleven configuration types of six points.
//! - [`cohomology`]: reduction by negative curves, Riemann-Roch and Hilbert
//!   tables.
//! - [`staircase`]: generic initial ideals rebuilt from Hilbert functions.
//! - [`polytope`]: Newton polygons, limits and area diagnostics.
//! - [`oracle`]: an independent rank computation on explicit coordinates.

pub mod cohomology;
pub mod configuration;
pub mod error;
pub mod oracle;
pub mod picard;
pub mod polytope;
pub mod staircase;

pub use cohomology::{hilbert_function, reduce, HilbertTable, ReductionResult, Status};
pub use configuration::{catalog, enumerate_neg, lookup, ConfigurationType, DefiningCurve, NegativeCurves};
pub use error::{Error, Result};
pub use picard::DivisorClass;
pub use polytope::{limiting_shape, newton_polytope, LimitReport, RationalPolygon};
pub use staircase::{staircase_from_hilbert, Staircase};
