//! Numerical workbench for the Riemann-Liouville fractional integral on an
//! interval: singular-kernel product quadrature (direct and FFT paths),
//! estimators for the function-space norms the operator maps between, and a
//! bench of concrete operator-bound, identity and sharpness checks.

pub mod corpus;
pub mod error;
pub mod frac_calculus;
pub mod function_model;
pub mod space_norms;
pub mod special;
pub mod theorem_bench;

pub use error::{FracError, Result};
pub use frac_calculus::{
    ceil_strict, rl_derivative, rl_integral, rl_integral_power_oracle, semigroup_compose,
    QuadratureScheme,
};
pub use function_model::{AnalyticSpec, Interval, NormKind, SampledFunction, VectorNorm};
pub use special::gamma;
