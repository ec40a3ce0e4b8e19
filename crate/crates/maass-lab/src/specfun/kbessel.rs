//! K-Bessel function of purely imaginary order, K_{iR}(y).
//!
//! All internal arithmetic works on the exp(pi R / 2)-normalized value
//! `Kt(y) = e^{pi R/2} K_{iR}(y)`, which stays O(1) in the oscillatory
//! region y < R and avoids the e^{-pi R/2} underflow scale entirely.
//! Three evaluation regimes, selected by (R, y):
//!
//! * power series through I_{+-iR} with log-Gamma folding, used deep in
//!   the oscillatory region (y < pi R/2 - 8, which implies R > 5);
//! * trapezoidal quadrature of the integral representation
//!   `K_{iR}(y) = int_0^inf e^{-y cosh t} cos(R t) dt`, whose integrand
//!   decays double-exponentially, used whenever the normalization factor
//!   cannot amplify roundoff (y >= pi R/2 - 8);
//! * the large-argument asymptotic series for y >= max(2R + 12, 25).
//!
//! No single representation holds 1e-10 normalized accuracy across both
//! the oscillatory and decaying regimes in doubles; the split above does.

use num_complex::Complex64;

use super::gamma::log_gamma;
use super::SpecFunError;

const PI: f64 = std::f64::consts::PI;

/// Largest k explored by the power series before giving up.
const SERIES_KMAX: usize = 160;

/// Result of a `kbessel_i_order` evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KValue {
    /// K_{iR}(y), un-normalized.
    pub value: f64,
    /// Set when the un-normalized value underflowed to exact zero.
    pub underflow: bool,
}

/// Truncation bound sqrt(pi/2y) e^{-y} e^{pi R/2}, valid for y > 2R.
///
/// This is an envelope for the normalized value, used to pick truncation
/// points, not as an approximation of K itself.
pub fn kbessel_decay_bound(r: f64, y: f64) -> Result<f64, SpecFunError> {
    if !(y > 2.0 * r.max(0.0)) {
        return Err(SpecFunError::DecayBoundDomain { r, y });
    }
    Ok((PI / (2.0 * y)).sqrt() * (PI * r / 2.0 - y).exp())
}

/// Reusable evaluator of the normalized K-Bessel for one fixed order R.
///
/// Construction precomputes the series coefficient table (one complex
/// log-Gamma plus a short recurrence); evaluations are then cheap enough
/// for the collocation matrices, which need ~1e5 values per solve.
#[derive(Debug, Clone)]
pub struct KBessel {
    r: f64,
    /// c[k] = exp(-lnGamma(k+1) - lnGamma(k+1+iR) - pi R/2)
    series_c: Vec<Complex64>,
    /// -2 pi / (1 - e^{-2 pi R}); empty series_c when the series regime
    /// is unreachable for this R.
    series_norm: f64,
}

impl KBessel {
    pub fn new(r: f64) -> Result<Self, SpecFunError> {
        if !r.is_finite() || r < 0.0 {
            return Err(SpecFunError::InvalidOrder { r });
        }
        // The series branch is only selected when y < pi R/2 - 8, which
        // requires R > 16/pi; below that the table is never consulted.
        let (series_c, series_norm) = if r > 5.0 {
            let lg = log_gamma(Complex64::new(1.0, r))?;
            let c0 = (-lg - PI * r / 2.0).exp();
            let mut c = Vec::with_capacity(SERIES_KMAX + 1);
            c.push(c0);
            for k in 1..=SERIES_KMAX {
                let kf = k as f64;
                let prev = c[k - 1];
                c.push(prev / (kf * Complex64::new(kf, r)));
            }
            (c, -2.0 * PI / (1.0 - (-2.0 * PI * r).exp()))
        } else {
            (Vec::new(), 0.0)
        };
        Ok(Self { r, series_c, series_norm })
    }

    pub fn order(&self) -> f64 {
        self.r
    }

    /// e^{pi R/2} K_{iR}(y), absolute error a few 1e-12.
    pub fn scaled(&self, y: f64) -> Result<f64, SpecFunError> {
        if !(y > 0.0) {
            return Err(SpecFunError::BesselDomain { y });
        }
        let r = self.r;
        if y >= (2.0 * r + 12.0).max(25.0) {
            if let Some(v) = asymptotic_scaled(r, y) {
                return Ok(v);
            }
        }
        if y >= PI * r / 2.0 - 8.0 {
            Ok(quadrature_scaled(r, y))
        } else {
            self.series_scaled(y)
        }
    }

    /// Power series for I_{iR} folded to K, all exponential scales carried
    /// in log space. Only called with y < pi R/2 - 8.
    fn series_scaled(&self, y: f64) -> Result<f64, SpecFunError> {
        let l = (y / 2.0).ln();
        let w = (y / 2.0) * (y / 2.0);
        let mut sum = Complex64::new(0.0, 0.0);
        let mut wk = 1.0;
        let mut peak: f64 = 0.0;
        let mut small_run = 0;
        for &c in &self.series_c {
            let term = c * wk;
            sum += term;
            let mag = term.norm_sqr();
            peak = peak.max(mag);
            if mag <= peak * 1e-36 {
                small_run += 1;
                if small_run >= 2 {
                    break;
                }
            } else {
                small_run = 0;
            }
            wk *= w;
        }
        if small_run < 2 {
            return Err(SpecFunError::SeriesNotConverged { r: self.r, y });
        }
        let rotated = Complex64::from_polar(1.0, self.r * l) * sum;
        Ok(self.series_norm * rotated.im)
    }
}

/// One-shot normalized evaluation; prefer `KBessel` when R is reused.
pub fn kbessel_scaled(r: f64, y: f64) -> Result<f64, SpecFunError> {
    KBessel::new(r)?.scaled(y)
}

/// K_{iR}(y) with the contract tolerance `eps` on the e^{pi R/2}-normalized
/// scale. Underflow of the un-normalized value is reported, not an error.
pub fn kbessel_i_order(r: f64, y: f64, eps: f64) -> Result<KValue, SpecFunError> {
    if !(eps > 0.0 && eps <= 1e-3) {
        return Err(SpecFunError::InvalidTolerance { eps });
    }
    if !(y > 0.0) {
        return Err(SpecFunError::BesselDomain { y });
    }
    if !r.is_finite() || r < 0.0 {
        return Err(SpecFunError::InvalidOrder { r });
    }
    // Everything beyond this magnitude underflows the f64 subnormal range.
    let log_mag = 0.5 * (PI / (2.0 * y)).ln() - y;
    if log_mag < -745.0 {
        return Ok(KValue { value: 0.0, underflow: true });
    }
    let scaled = kbessel_scaled(r, y)?;
    let value = scaled * (-PI * r / 2.0).exp();
    let underflow = value == 0.0 && scaled != 0.0;
    Ok(KValue { value, underflow })
}

/// Large-argument expansion K_nu(y) ~ sqrt(pi/2y) e^{-y} sum a_k(iR)/y^k.
/// Returns None if the series stalls before reaching target accuracy.
fn asymptotic_scaled(r: f64, y: f64) -> Option<f64> {
    let prefactor = (PI / (2.0 * y)).sqrt() * (PI * r / 2.0 - y).exp();
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut prev_mag = 1.0_f64;
    for k in 1..=200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= -(4.0 * r * r + odd * odd) / (8.0 * kf * y);
        let mag = term.abs();
        if mag > prev_mag {
            // Divergence onset; accept only if already converged.
            return if prev_mag <= 1e-15 * sum.abs() { Some(prefactor * sum) } else { None };
        }
        sum += term;
        prev_mag = mag;
        if mag <= 1e-17 * sum.abs() {
            return Some(prefactor * sum);
        }
    }
    None
}

/// Trapezoidal rule with step halving on the even integrand
/// e^{-y(cosh t - 1)} cos(R t), factored so the normalization exponent
/// enters exactly once. The integrand decays like exp(-(y/2) e^t), so the
/// trapezoid converges geometrically in the number of halvings.
fn quadrature_scaled(r: f64, y: f64) -> f64 {
    let scale = (PI * r / 2.0 - y).exp();
    if scale == 0.0 {
        return 0.0;
    }
    // e^{-y(cosh T - 1)} <= 1e-24 past the cutoff.
    let t_max = (1.0 + 56.0 / y).acosh();
    let f = |t: f64| {
        let sh = (0.5 * t).sinh();
        (-2.0 * y * sh * sh).exp() * (r * t).cos()
    };
    // Resolve the cos(Rt) oscillation from the start.
    let mut n = 16usize.max((t_max * (r + 1.0) / 1.5).ceil() as usize);
    let mut h = t_max / n as f64;
    let mut sum = kahan_interior(&f, h, n) + 0.5 * (f(0.0) + f(t_max));
    let mut val = sum * h;
    for _ in 0..18 {
        // Halve: reuse previous nodes, add midpoints.
        let mid: f64 = kahan_midpoints(&f, h, n);
        n *= 2;
        h *= 0.5;
        sum += mid;
        let next = sum * h;
        let change = (next - val).abs() * scale;
        val = next;
        if change < 2e-13 * (1.0 + val.abs() * scale) && n > 64 {
            break;
        }
        if n > 400_000 {
            break;
        }
    }
    val * scale
}

fn kahan_interior(f: &impl Fn(f64) -> f64, h: f64, n: usize) -> f64 {
    let mut s = 0.0;
    let mut c = 0.0;
    for k in 1..n {
        let v = f(k as f64 * h) - c;
        let t = s + v;
        c = (t - s) - v;
        s = t;
    }
    s
}

fn kahan_midpoints(f: &impl Fn(f64) -> f64, h: f64, n: usize) -> f64 {
    let mut s = 0.0;
    let mut c = 0.0;
    for k in 0..n {
        let v = f((k as f64 + 0.5) * h) - c;
        let t = s + v;
        c = (t - s) - v;
        s = t;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k0_at_one_matches_reference() {
        // Classical K_0(1).
        let v = kbessel_i_order(0.0, 1.0, 1e-10).unwrap();
        assert!(!v.underflow);
        assert!((v.value - 0.421_024_438_240_708_5).abs() < 1e-12, "{}", v.value);
    }

    #[test]
    fn huge_argument_underflows_with_flag() {
        let v = kbessel_i_order(1.0, 1e6, 1e-6).unwrap();
        assert_eq!(v.value, 0.0);
        assert!(v.underflow);
    }

    #[test]
    fn domain_errors() {
        assert!(kbessel_i_order(1.0, 0.0, 1e-8).is_err());
        assert!(kbessel_i_order(1.0, -2.0, 1e-8).is_err());
        assert!(kbessel_i_order(1.0, 1.0, 0.0).is_err());
        assert!(kbessel_i_order(1.0, 1.0, 1e-2).is_err());
        assert!(kbessel_i_order(-1.0, 1.0, 1e-8).is_err());
    }

    #[test]
    fn decay_bound_values() {
        let b = kbessel_decay_bound(0.0, 2.0).unwrap();
        assert!((b - 0.119_937_76).abs() < 1e-7, "{b}");
        let expect = (PI / 20.0_f64).sqrt() * (-10.0_f64).exp() * (PI / 2.0).exp();
        assert!((kbessel_decay_bound(1.0, 10.0).unwrap() - expect).abs() < 1e-15);
        assert!(kbessel_decay_bound(3.0, 6.0).is_err());
    }

    #[test]
    fn positive_and_decreasing_past_the_turning_point() {
        for &r in &[0.0, 1.0, 5.0, 13.78, 22.0] {
            let kb = KBessel::new(r).unwrap();
            let mut prev = f64::INFINITY;
            let start = r + 0.5;
            for i in 0..40 {
                let y = start + i as f64 * 0.9;
                let v = kb.scaled(y).unwrap();
                assert!(v > 0.0, "K~ should be positive at r={r} y={y}, got {v}");
                assert!(v < prev, "K~ should decrease in y at r={r} y={y}");
                prev = v;
            }
        }
    }

    #[test]
    fn regimes_agree_on_overlap() {
        // Series vs quadrature near the hand-off line, and quadrature vs
        // asymptotic near theirs.
        for &r in &[8.0, 13.78, 20.0, 30.0] {
            let kb = KBessel::new(r).unwrap();
            let y = PI * r / 2.0 - 8.0; // quadrature boundary
            let a = kb.series_scaled(y * 0.999).unwrap();
            let b = quadrature_scaled(r, y * 0.999);
            assert!((a - b).abs() < 5e-11, "series/quad mismatch r={r}: {a} vs {b}");
        }
        for &r in &[0.0, 3.0, 9.0] {
            let y = (2.0 * r + 12.0).max(25.0) + 0.5;
            let a = asymptotic_scaled(r, y).expect("asymptotic should converge here");
            let b = quadrature_scaled(r, y);
            assert!((a - b).abs() < 5e-12, "asym/quad mismatch r={r}: {a} vs {b}");
        }
    }
}
