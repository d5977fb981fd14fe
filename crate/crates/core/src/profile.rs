//! Measured velocity profiles, wall scaling and integral quantities.

use crate::correlations::LOGSQ_CONSTANT;
use crate::rng::SeededUniform;
use crate::{Error, Result, Scalar};

/// Smallest number of points a measured profile may carry.
pub const MIN_PROFILE_POINTS: usize = 10;

/// Upper bound on `u / U_inf`, leaving slack for measurement noise.
pub const MAX_VELOCITY_RATIO: f64 = 1.2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint<T> {
    /// Distance from the wall, m.
    pub y: T,
    /// Mean streamwise velocity, m/s.
    pub u: T,
}

/// A dimensional boundary-layer profile in SI units.
#[derive(Debug, Clone, PartialEq)]
pub struct VelocityProfile<T> {
    name: String,
    nu: T,
    u_inf: T,
    u_tau: T,
    points: Vec<ProfilePoint<T>>,
}

impl<T: Scalar> VelocityProfile<T> {
    pub fn new(
        name: impl Into<String>,
        nu: T,
        u_inf: T,
        u_tau: T,
        points: Vec<ProfilePoint<T>>,
    ) -> Result<Self> {
        for (field, v) in [("nu", nu), ("U_inf", u_inf), ("u_tau", u_tau)] {
            if !v.is_finite() {
                return Err(Error::NonFinite { field, index: 0 });
            }
            if v <= T::zero() {
                return Err(Error::InvalidProfile(format!(
                    "{field} = {v} must be positive"
                )));
            }
        }
        if points.len() < MIN_PROFILE_POINTS {
            return Err(Error::TooFewPoints {
                need: MIN_PROFILE_POINTS,
                got: points.len(),
            });
        }
        let u_max = T::lit(MAX_VELOCITY_RATIO) * u_inf;
        for (i, p) in points.iter().enumerate() {
            if !p.y.is_finite() {
                return Err(Error::NonFinite {
                    field: "y",
                    index: i,
                });
            }
            if !p.u.is_finite() {
                return Err(Error::NonFinite {
                    field: "u",
                    index: i,
                });
            }
            if i == 0 && p.y <= T::zero() {
                return Err(Error::InvalidProfile(format!(
                    "y[0] = {} must be positive",
                    p.y
                )));
            }
            if i > 0 && p.y <= points[i - 1].y {
                return Err(Error::InvalidProfile(format!(
                    "y not strictly increasing at index {i} ({} after {})",
                    p.y,
                    points[i - 1].y
                )));
            }
            if p.u < T::zero() || p.u > u_max {
                return Err(Error::InvalidProfile(format!(
                    "u[{i}] = {} outside [0, 1.2·U_inf = {u_max}]",
                    p.u
                )));
            }
        }
        Ok(Self {
            name: name.into(),
            nu,
            u_inf,
            u_tau,
            points,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn nu(&self) -> T {
        self.nu
    }

    pub fn u_inf(&self) -> T {
        self.u_inf
    }

    pub fn u_tau(&self) -> T {
        self.u_tau
    }

    pub fn points(&self) -> &[ProfilePoint<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Viscous scales that convert between wall units and SI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WallUnits<T> {
    pub nu: T,
    pub u_tau: T,
}

impl<T: Scalar> WallUnits<T> {
    /// Dimensional wall distance for a wall-unit distance `eta`.
    pub fn to_length(&self, eta: T) -> T {
        eta * self.nu / self.u_tau
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WallPoint<T> {
    pub eta: T,
    pub phi: T,
}

/// A profile in wall units: `η = u_τ·y/ν`, `φ = u/u_τ`.
#[derive(Debug, Clone, PartialEq)]
pub struct WallScaledProfile<T> {
    source: String,
    points: Vec<WallPoint<T>>,
    units: Option<WallUnits<T>>,
}

impl<T: Scalar> WallScaledProfile<T> {
    /// Builds a wall-unit profile with no dimensional context.
    pub fn new(source: impl Into<String>, points: Vec<WallPoint<T>>) -> Result<Self> {
        Self::build(source.into(), points, None)
    }

    fn build(
        source: String,
        points: Vec<WallPoint<T>>,
        units: Option<WallUnits<T>>,
    ) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            if !p.eta.is_finite() {
                return Err(Error::NonFinite {
                    field: "eta",
                    index: i,
                });
            }
            if !p.phi.is_finite() {
                return Err(Error::NonFinite {
                    field: "phi",
                    index: i,
                });
            }
            if p.eta <= T::zero() || p.phi <= T::zero() {
                return Err(Error::InvalidProfile(format!(
                    "wall point {i} must have eta > 0 and phi > 0 (eta = {}, phi = {})",
                    p.eta, p.phi
                )));
            }
            if i > 0 && p.eta <= points[i - 1].eta {
                return Err(Error::InvalidProfile(format!(
                    "eta not strictly increasing at index {i}"
                )));
            }
        }
        Ok(Self {
            source,
            points,
            units,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn points(&self) -> &[WallPoint<T>] {
        &self.points
    }

    pub fn units(&self) -> Option<WallUnits<T>> {
        self.units
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Drops points with `eta < eta_min`, i.e. the viscous sublayer and
    /// buffer region the scaling law does not describe.
    pub fn above(&self, eta_min: T) -> Self {
        // relative slack absorbs round-off from the y -> eta conversion
        let cut = eta_min * (T::one() - T::lit(1e-12));
        Self {
            source: self.source.clone(),
            points: self
                .points
                .iter()
                .copied()
                .filter(|p| p.eta >= cut)
                .collect(),
            units: self.units,
        }
    }
}

/// Maps a dimensional profile to wall units, preserving point order.
pub fn wall_scale<T: Scalar>(p: &VelocityProfile<T>) -> Result<WallScaledProfile<T>> {
    let units = WallUnits {
        nu: p.nu,
        u_tau: p.u_tau,
    };
    let points = p
        .points
        .iter()
        .map(|pt| WallPoint {
            eta: p.u_tau * pt.y / p.nu,
            phi: pt.u / p.u_tau,
        })
        .collect();
    WallScaledProfile::build(p.name.clone(), points, Some(units))
}

/// Skin-friction coefficient `c'_f = 2·u_τ²/U²`.
pub fn drag_coefficient<T: Scalar>(u_tau: T, u_inf: T) -> Result<T> {
    if !(u_inf > T::zero()) {
        return Err(Error::domain("U", u_inf.to_f64_lossy(), "U > 0"));
    }
    if !(u_tau >= T::zero()) {
        return Err(Error::domain("u_tau", u_tau.to_f64_lossy(), "u_tau >= 0"));
    }
    let r = u_tau / u_inf;
    Ok(T::lit(2.0) * r * r)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumThickness<T> {
    /// θ, m.
    pub theta: T,
    /// `U_inf·θ/ν`.
    pub re_theta: T,
}

/// Trapezoidal `∫ (u/U)(1 − u/U) dy` over the sampled range only.
///
/// Accepts raw samples (at least two, `y` non-decreasing), including a
/// sample at the wall, which a [`VelocityProfile`] does not allow.
pub fn momentum_integral<T: Scalar>(points: &[ProfilePoint<T>], u_inf: T) -> Result<T> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints {
            need: 2,
            got: points.len(),
        });
    }
    if !(u_inf > T::zero()) {
        return Err(Error::domain("U_inf", u_inf.to_f64_lossy(), "U_inf > 0"));
    }
    let integrand = |p: &ProfilePoint<T>| {
        let r = p.u / u_inf;
        r * (T::one() - r)
    };
    let half = T::lit(0.5);
    let mut acc = T::zero();
    for (i, w) in points.windows(2).enumerate() {
        let dy = w[1].y - w[0].y;
        if dy < T::zero() {
            return Err(Error::InvalidProfile(format!(
                "y decreasing at index {}",
                i + 1
            )));
        }
        acc = acc + half * dy * (integrand(&w[0]) + integrand(&w[1]));
    }
    Ok(acc)
}

/// Momentum thickness θ and `Re_θ` of a measured profile.
pub fn momentum_thickness<T: Scalar>(p: &VelocityProfile<T>) -> Result<MomentumThickness<T>> {
    let theta = momentum_integral(&p.points, p.u_inf)?;
    Ok(MomentumThickness {
        theta,
        re_theta: p.u_inf * theta / p.nu,
    })
}

/// Inputs to [`synth_profile`].
#[derive(Debug, Clone, PartialEq)]
pub struct SynthProfileParams<T> {
    pub name: String,
    pub re: T,
    pub n: usize,
    pub eta_lo: T,
    pub eta_hi: T,
    pub noise_rel: T,
    pub seed: u64,
    pub u_inf: T,
    pub nu: T,
}

/// Wall-layer coefficient `A = ln Re/√3 + 5/2`.
pub fn scaling_coefficient<T: Scalar>(ln_re: T) -> T {
    ln_re / T::lit(3.0).sqrt() + T::lit(2.5)
}

/// Wall-layer exponent `α = 3/(2 ln Re)`.
pub fn scaling_exponent<T: Scalar>(ln_re: T) -> T {
    T::lit(1.5) / ln_re
}

/// Wall-layer law `φ(η)` at effective Reynolds number `Re`.
pub fn scaling_law<T: Scalar>(re: T, eta: T) -> T {
    let l = re.ln();
    scaling_coefficient(l) * eta.powf(scaling_exponent(l))
}

/// Generates a profile obeying the wall-layer scaling law at `Re`.
///
/// The η grid is log-uniform on `[eta_lo, eta_hi]`; each φ is multiplied by
/// `1 + δ`, δ uniform in `±noise_rel`. The friction velocity follows from the
/// boundary-layer log-square correlation with constant 0.26:
/// `u_τ = U·√(c/2)`, `c = 0.26/ln²Re`.
pub fn synth_profile<T: Scalar>(params: &SynthProfileParams<T>) -> Result<VelocityProfile<T>> {
    let SynthProfileParams {
        re,
        n,
        eta_lo,
        eta_hi,
        noise_rel,
        seed,
        u_inf,
        nu,
        ..
    } = *params;
    if !(re > T::one()) {
        return Err(Error::domain("Re", re.to_f64_lossy(), "Re > 1"));
    }
    if n < MIN_PROFILE_POINTS {
        return Err(Error::TooFewPoints {
            need: MIN_PROFILE_POINTS,
            got: n,
        });
    }
    if !(eta_lo > T::zero() && eta_hi > eta_lo) {
        return Err(Error::InvalidInterval(format!(
            "need eta_hi > eta_lo > 0, got [{eta_lo}, {eta_hi}]"
        )));
    }
    if !(noise_rel >= T::zero()) {
        return Err(Error::domain(
            "noise_rel",
            noise_rel.to_f64_lossy(),
            "noise_rel >= 0",
        ));
    }
    if !(u_inf > T::zero()) {
        return Err(Error::domain("U_inf", u_inf.to_f64_lossy(), "U_inf > 0"));
    }
    if !(nu > T::zero()) {
        return Err(Error::domain("nu", nu.to_f64_lossy(), "nu > 0"));
    }

    let ln_re = re.ln();
    let cf = T::lit(LOGSQ_CONSTANT) / (ln_re * ln_re);
    let u_tau = u_inf * (cf / T::lit(2.0)).sqrt();
    let coeff = scaling_coefficient(ln_re);
    let alpha = scaling_exponent(ln_re);

    let mut rng = SeededUniform::new(seed);
    let (a, b) = (eta_lo.ln(), eta_hi.ln());
    let last = T::from_count(n - 1);
    let points = (0..n)
        .map(|i| {
            let eta = (a + (b - a) * T::from_count(i) / last).exp();
            let delta = T::lit(rng.symmetric(1.0)) * noise_rel;
            let phi = coeff * eta.powf(alpha) * (T::one() + delta);
            ProfilePoint {
                y: eta * nu / u_tau,
                u: phi * u_tau,
            }
        })
        .collect();
    VelocityProfile::new(params.name.clone(), nu, u_inf, u_tau, points)
}
