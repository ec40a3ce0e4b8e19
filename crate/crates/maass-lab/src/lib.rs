//! maass-lab: a numerical laboratory for Maass cusp forms on Hecke
//! congruence groups Gamma_0(N) and their L-functions.
//!
//! The crate locates Maass newforms by collocation least squares, evaluates
//! the completed L-function on the critical line, and audits the resulting
//! spectra (Weyl-law completeness, spacing statistics, random-matrix
//! comparisons).

pub mod specfun;
