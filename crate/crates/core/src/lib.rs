//! Numerical toolkit for the class of starlike functions `f` with
//! `zf'/f ≺ 1 + arctan z`, whose log-derivatives fill the vertical strip
//! `|Re w − 1| < π/4`.

pub mod error;
pub mod extremal;
pub mod hankel;
pub mod plot;
pub mod quad;
pub mod radius;
pub mod report;
pub mod series;
pub mod strip_domain;

pub use error::{Error, Result};
pub use extremal::{ExtremalFunction, GrowthBounds};
pub use hankel::{CaratheodoryPoint, CoeffVector, CuboidPoint, FunctionalMax, PCoeffs, Target};
pub use num_complex::Complex64;
pub use radius::{RadiusProblem, RadiusResult, SharpWitness};
pub use report::{ReportItem, Status, SuiteConfig, VerificationReport};
pub use series::{ArithOp, PowerSeries, DEFAULT_ORDER};
pub use strip_domain::{ClassDescriptor, JanowskiParams, StripDomain};
