//! Special functions: K-Bessel of imaginary order, complex log-Gamma,
//! the G(s) Gamma-factor, and incomplete Bessel moments.
//!
//! Everything here is a pure function of its arguments; evaluator structs
//! hold only immutable precomputed tables and may be shared across threads.

mod gamma;
mod kbessel;
mod moment;

pub use gamma::{digamma, log_gamma};
pub use kbessel::{kbessel_decay_bound, kbessel_i_order, kbessel_scaled, KBessel, KValue};
pub use moment::{bessel_moment, bessel_moment_scaled};

use num_complex::Complex64;
use thiserror::Error;

const PI: f64 = std::f64::consts::PI;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecFunError {
    #[error("K_{{iR}}(y) requires y > 0, got y = {y}")]
    BesselDomain { y: f64 },
    #[error("order R must be finite and nonnegative, got {r}")]
    InvalidOrder { r: f64 },
    #[error("tolerance out of range (0, 1e-3]: {eps}")]
    InvalidTolerance { eps: f64 },
    #[error("decay bound requires y > 2R, got R = {r}, y = {y}")]
    DecayBoundDomain { r: f64, y: f64 },
    #[error("log Gamma pole at nonpositive integer {at}")]
    GammaPole { at: Complex64 },
    #[error("G(s) Gamma factor pole: (s +- iR)/2 hit a nonpositive integer (s = {s}, R = {r})")]
    GFactorPole { s: Complex64, r: f64 },
    #[error("K-Bessel power series failed to converge at R = {r}, y = {y}")]
    SeriesNotConverged { r: f64, y: f64 },
    #[error(
        "Bessel moment did not reach tolerance {target} (achieved {achieved}) within the \
         subdivision budget; y_lo = {y_lo} may be too deep in the oscillatory region"
    )]
    MomentNotConverged { y_lo: f64, achieved: f64, target: f64 },
}

/// G(s) = 2^{s-2} Gamma((s+iR)/2) Gamma((s-iR)/2), via log-Gamma.
pub fn g_factor(s: Complex64, r: f64) -> Result<Complex64, SpecFunError> {
    Ok(g_factor_log_scaled(s, r, 0.0)?.exp())
}

/// e^{pi R/2} G(s); the natural companion of the scaled K-Bessel.
pub fn g_factor_scaled(s: Complex64, r: f64) -> Result<Complex64, SpecFunError> {
    Ok(g_factor_log_scaled(s, r, PI * r / 2.0)?.exp())
}

/// log(e^{shift} G(s)), the building block for both variants. Keeping the
/// result in log space lets callers divide G factors of similar size
/// without under/overflow.
pub fn g_factor_log_scaled(s: Complex64, r: f64, shift: f64) -> Result<Complex64, SpecFunError> {
    let a1 = (s + Complex64::new(0.0, r)) / 2.0;
    let a2 = (s - Complex64::new(0.0, r)) / 2.0;
    let pole = |z: Complex64| z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0;
    if pole(a1) || pole(a2) {
        return Err(SpecFunError::GFactorPole { s, r });
    }
    let lg1 = log_gamma(a1)?;
    let lg2 = log_gamma(a2)?;
    Ok((s - 2.0) * std::f64::consts::LN_2 + lg1 + lg2 + shift)
}
