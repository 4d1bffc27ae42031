//! Configurable-precision evaluation of the Dirichlet eta function and its
//! derivative, the constants pi, ln 2, gamma, zeta(2), zeta'(2) and the
//! Glaisher-Kinkelin constant, and the generalized Wallis products
//! `exp(2 eta'(s)) = prod (2n)^(2/(2n)^s) / ((2n-1)^(1/(2n-1)^s) (2n+1)^(1/(2n+1)^s))`.

pub mod cli;
pub mod constants;
pub mod error;
pub mod numeric;
pub mod products;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use constants::{constant_set, ConstantSet, GlaisherRoute};
pub use numeric::{make_context, PrecisionContext, Real};
pub use products::{Case, ProductRow, Target, TargetRoute};
pub use report::VerificationReport;
pub use series::{Method, SeriesResult};
