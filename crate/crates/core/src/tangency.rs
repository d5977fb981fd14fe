//! Tangency mapping between `1/ln²x` and power laws `G·x^(−γ)`.
//!
//! Requiring equal value and slope at `x₀` gives `γ = 2/ln x₀` and
//! `G = x₀^γ/ln²x₀`. A correlation constant `C` multiplies through.

use crate::correlations::Correlation;
use crate::{Error, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangencyMap<T> {
    pub x0: T,
    pub gamma: T,
    pub g: T,
}

impl<T: Scalar> TangencyMap<T> {
    pub fn at(x0: T) -> Result<Self> {
        if !(x0 > T::E()) || !x0.is_finite() {
            return Err(Error::domain("x0", x0.to_f64_lossy(), "x0 > e"));
        }
        let l = x0.ln();
        let gamma = T::lit(2.0) / l;
        // x0^gamma = e^2 exactly in real arithmetic
        let g = x0.powf(gamma) / (l * l);
        Ok(Self { x0, gamma, g })
    }

    /// `G·x^(−γ)`.
    pub fn power_value(&self, x: T) -> T {
        self.g * x.powf(-self.gamma)
    }

    /// `d/dx G·x^(−γ) = −γ·G·x^(−γ−1)`.
    pub fn power_slope(&self, x: T) -> T {
        -self.gamma * self.g * x.powf(-self.gamma - T::one())
    }

    /// Relative deviation `(G·x^(−γ) − 1/ln²x)·ln²x`.
    pub fn relative_deviation(&self, x: T) -> T {
        let l = x.ln();
        self.power_value(x) * l * l - T::one()
    }
}

/// `1/ln²x`.
pub fn log_square_value<T: Scalar>(x: T) -> T {
    let l = x.ln();
    T::one() / (l * l)
}

/// `d/dx 1/ln²x = −2/(x·ln³x)`.
pub fn log_square_slope<T: Scalar>(x: T) -> T {
    let l = x.ln();
    -T::lit(2.0) / (x * l * l * l)
}

/// The power law tangent to `C/ln²x` at `x0`, prefactor `C·G`.
pub fn logsq_to_power<T: Scalar>(x0: T, constant: T) -> Result<(TangencyMap<T>, Correlation<T>)> {
    if !(constant > T::zero()) {
        return Err(Error::domain("C", constant.to_f64_lossy(), "C > 0"));
    }
    let map = TangencyMap::at(x0)?;
    Ok((
        map,
        Correlation::PowerLaw {
            prefactor: constant * map.g,
            exponent: map.gamma,
        },
    ))
}

/// Tangency abscissa implied by a power-law exponent: `x₀ = exp(2/γ)`.
pub fn power_to_logsq<T: Scalar>(gamma: T) -> Result<T> {
    if !(gamma > T::zero() && gamma <= T::lit(2.0)) {
        return Err(Error::domain(
            "gamma",
            gamma.to_f64_lossy(),
            "0 < gamma <= 2",
        ));
    }
    Ok((T::lit(2.0) / gamma).exp())
}

/// Largest relative deviation of the tangent power law from `C/ln²x` over a
/// log-uniform grid of `n_grid` points on `[x_lo, x_hi]`.
pub fn approximation_error<T: Scalar>(
    constant: T,
    x0: T,
    x_lo: T,
    x_hi: T,
    n_grid: usize,
) -> Result<T> {
    if !(x_lo > T::E() && x_lo <= x0 && x0 <= x_hi) || !x_hi.is_finite() {
        return Err(Error::InvalidInterval(format!(
            "need e < x_lo <= x0 <= x_hi, got x_lo = {x_lo}, x0 = {x0}, x_hi = {x_hi}"
        )));
    }
    if n_grid < 2 {
        return Err(Error::InvalidInterval(format!(
            "n_grid = {n_grid} must be at least 2"
        )));
    }
    let (_, power) = logsq_to_power(x0, constant)?;
    let (a, b) = (x_lo.ln(), x_hi.ln());
    let last = T::from_count(n_grid - 1);
    let mut worst = T::zero();
    for i in 0..n_grid {
        let x = (a + (b - a) * T::from_count(i) / last).exp();
        let target = constant * log_square_value(x);
        let approx = power.predict(x)?;
        worst = worst.max(((approx - target) / target).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn map_at_e10() {
        let m = TangencyMap::at(10f64.exp()).unwrap();
        assert_relative_eq!(m.gamma, 0.2, max_relative = 1e-15);
        assert_relative_eq!(m.g, 2f64.exp() / 100.0, max_relative = 1e-13);
        assert_relative_eq!(m.g, 0.0738905609893065, max_relative = 1e-13);
        assert_relative_eq!(m.power_value(m.x0), 0.01, max_relative = 1e-13);
    }

    #[test]
    fn map_at_1e6_with_constant() {
        let (m, c) = logsq_to_power(1e6, 0.26).unwrap();
        assert_relative_eq!(m.gamma, 0.14476482730108394, max_relative = 1e-14);
        // mpmath: 0.26·x0^γ/ln²x0
        match c {
            Correlation::PowerLaw {
                prefactor,
                exponent,
            } => {
                assert_relative_eq!(prefactor, 0.010065339628740686, max_relative = 1e-12);
                assert_eq!(exponent, m.gamma);
            }
            _ => panic!("expected power law"),
        }
    }

    #[test]
    fn invariants_exact() {
        for x0 in [1e3f64, 22026.4658, 1e6, 1e9, 1e15] {
            let m = TangencyMap::at(x0).unwrap();
            assert_relative_eq!(m.gamma * x0.ln(), 2.0, max_relative = 1e-12);
            let l = x0.ln();
            assert_relative_eq!(m.g * x0.powf(-m.gamma) * l * l, 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(TangencyMap::at(std::f64::consts::E).is_err());
        assert!(TangencyMap::at(2.0).is_err());
        assert!(logsq_to_power(1e6, 0.0).is_err());
        assert!(power_to_logsq(0.0).is_err());
        assert!(power_to_logsq(2.1).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_relative_eq!(
            power_to_logsq(0.2).unwrap(),
            10f64.exp(),
            max_relative = 1e-14
        );
        // mpmath: exp(2/0.144)
        assert_relative_eq!(
            power_to_logsq(0.144).unwrap(),
            1076137.5960400431,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            power_to_logsq(2.0).unwrap(),
            std::f64::consts::E,
            max_relative = 1e-15
        );
    }

    #[test]
    fn round_trip() {
        for g in [0.05, 0.1, 0.144, 0.2, 0.5, 1.5] {
            let x0 = power_to_logsq(g).unwrap();
            assert_relative_eq!(TangencyMap::at(x0).unwrap().gamma, g, max_relative = 1e-14);
        }
    }

    // Independent of the grid scan: with s = ln x/ln x0 the ratio of the
    // tangent power law to 1/ln²x is s²·e^(2(1−s)).
    fn closed_form_ratio(s: f64) -> f64 {
        s * s * (2.0 * (1.0 - s)).exp()
    }

    #[test]
    fn error_scan_e9_to_e11() {
        let x0 = 10f64.exp();
        let got = approximation_error(1.0, x0, 9f64.exp(), 11f64.exp(), 1001).unwrap();
        let oracle = (0..1001)
            .map(|i| (closed_form_ratio((9.0 + 2.0 * i as f64 / 1000.0) / 10.0) - 1.0).abs())
            .fold(0.0, f64::max);
        assert_relative_eq!(oracle, 0.010663765890262435, max_relative = 1e-10);
        assert_relative_eq!(got, oracle, max_relative = 1e-9);
        // C cancels
        let scaled = approximation_error(0.26, x0, 9f64.exp(), 11f64.exp(), 1001).unwrap();
        assert_relative_eq!(scaled, got, max_relative = 1e-12);
    }

    #[test]
    fn error_scan_degenerate() {
        let x0 = 1e5;
        assert!(approximation_error(1.0, x0, x0, x0, 11).unwrap() < 1e-14);
    }

    #[test]
    fn error_scan_monotone_in_interval() {
        let x0 = 1e6;
        let mut prev = 0.0;
        for w in [1.5, 3.0, 10.0, 100.0] {
            let e = approximation_error(1.0, x0, x0 / w, x0 * w, 401).unwrap();
            assert!(e >= prev);
            prev = e;
        }
    }

    #[test]
    fn error_scan_bad_interval() {
        assert!(approximation_error(1.0, 1e5, 1e6, 1e7, 10).is_err());
        assert!(approximation_error(1.0, 1e5, 2.0, 1e7, 10).is_err());
        assert!(approximation_error(1.0, 1e5, 1e4, 1e7, 1).is_err());
    }

    #[test]
    fn tangency_not_a_bound() {
        let m = TangencyMap::<f64>::at(1e6).unwrap();
        assert!(m.relative_deviation(m.x0).abs() < 1e-13);
        assert!(m.relative_deviation(m.x0 / 2.0).abs() > 1e-6);
        assert!(m.relative_deviation(m.x0 * 2.0).abs() > 1e-6);
    }

    #[test]
    fn f32_map() {
        let m = TangencyMap::at(22026.465f32).unwrap();
        assert!((m.gamma - 0.2).abs() < 1e-6);
        assert!((m.g - 0.07389056).abs() < 1e-5);
    }
}
