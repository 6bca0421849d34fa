//! Closure constants for Schoen–Simon–Yau type curvature estimates.
//!
//! The crate evaluates the explicit constants that appear when the terminal
//! absorption step of the SSY integral estimate is closed either by Young's
//! inequality or by Hölder's inequality, together with the constants of the
//! constant-mean-curvature (CMC) extension. On top of plain evaluation it
//! provides
//!
//! * a derivative-free optimizer over the free absorption parameters
//!   ([`optimize`]),
//! * an interval-arithmetic certifier producing sign certificates over
//!   parameter boxes ([`certify`]),
//! * an extended-precision oracle used to cross-check the binary64 path
//!   ([`oracle`]).
//!
//! All quantities are functions of a dimension `n >= 2` and a stability
//! exponent `q`, bundled in [`ParamPoint`].

pub mod certify;
pub mod cmc;
pub mod domain;
mod error;
pub mod formulas;
pub mod interval;
pub mod minimal;
pub mod optimize;
pub mod oracle;
pub mod scalar;

pub use cmc::{CmcConstantBundle, CmcScale, LocalEstimate, Regime};
pub use domain::{ParamPoint, QInterval, StructuralCoefficients};
pub use error::{Error, Result};
pub use interval::Interval;
pub use minimal::ConstantBundle;
pub use scalar::Scalar;
