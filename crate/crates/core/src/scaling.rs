//! Two-layer power-law fits and the effective Reynolds number.

use crate::profile::WallScaledProfile;
use crate::{Error, Result, Scalar};

/// Fewest points a power-law segment may be fitted to.
pub const MIN_SEGMENT: usize = 5;

/// Default tolerance on `|Δ ln Re|` for the two Re estimates to agree.
pub const DEFAULT_TOL_LN: f64 = 0.1;

/// Closed interval of point indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexRange {
    pub start: usize,
    pub end: usize,
}

impl IndexRange {
    pub fn new(start: usize, end: usize) -> Self {
        Self { start, end }
    }

    pub fn len(&self) -> usize {
        if self.end < self.start {
            0
        } else {
            self.end - self.start + 1
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `φ = coeff · η^exponent` fitted by least squares in `(ln η, ln φ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit<T> {
    pub coeff: T,
    pub exponent: T,
    pub index_range: IndexRange,
    pub sse: T,
    pub r2: T,
}

pub fn fit_power_law<T: Scalar>(
    w: &WallScaledProfile<T>,
    range: IndexRange,
) -> Result<PowerLawFit<T>> {
    if range.len() < MIN_SEGMENT {
        return Err(Error::TooFewPoints {
            need: MIN_SEGMENT,
            got: range.len(),
        });
    }
    if range.end >= w.len() {
        return Err(Error::InvalidInterval(format!(
            "index range [{}, {}] exceeds {} points",
            range.start,
            range.end,
            w.len()
        )));
    }
    let pts = &w.points()[range.start..=range.end];
    let logs: Vec<(T, T)> = pts.iter().map(|p| (p.eta.ln(), p.phi.ln())).collect();
    ols_log(&logs, range)
}

fn ols_log<T: Scalar>(logs: &[(T, T)], range: IndexRange) -> Result<PowerLawFit<T>> {
    let n = T::from_count(logs.len());
    let (sx, sy) = logs
        .iter()
        .fold((T::zero(), T::zero()), |(a, b), &(x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let (mut sxx, mut sxy, mut syy) = (T::zero(), T::zero(), T::zero());
    for &(x, y) in logs {
        let (dx, dy) = (x - mx, y - my);
        sxx = sxx + dx * dx;
        sxy = sxy + dx * dy;
        syy = syy + dy * dy;
    }
    if !(sxx > T::zero()) {
        return Err(Error::Degenerate("all eta in the range are equal"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse = logs.iter().fold(T::zero(), |acc, &(x, y)| {
        let r = y - (intercept + slope * x);
        acc + r * r
    });
    let r2 = if syy > T::zero() {
        (T::one() - sse / syy).max(T::zero()).min(T::one())
    } else {
        T::one()
    };
    Ok(PowerLawFit {
        coeff: intercept.exp(),
        exponent: slope,
        index_range: range,
        sse,
        r2,
    })
}

/// Inner (wall-layer) and outer power laws separated by a sharp interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLayerFit<T> {
    /// `(A, α)` over `[0, break_index]`.
    pub inner: PowerLawFit<T>,
    /// `(B, β)` over `[break_index + 1, n − 1]`.
    pub outer: PowerLawFit<T>,
    /// Last index of the inner segment.
    pub break_index: usize,
    /// `√(η_k·η_{k+1})` for break index `k`.
    pub eta_break: T,
    /// Wall-layer thickness λ in metres, when the profile carries `ν` and `u_τ`.
    pub lambda: Option<T>,
    pub total_sse: T,
}

/// Locates the interface between the two power-law regions.
///
/// Every break index `k` leaving at least `min_seg` points on each side is
/// tried; the inner segment is `[0, k]` and the outer `[k+1, n−1]`. The break
/// with the smallest combined log-space SSE wins, ties going to the smaller k.
pub fn detect_interface<T: Scalar>(
    w: &WallScaledProfile<T>,
    min_seg: usize,
) -> Result<TwoLayerFit<T>> {
    if min_seg < MIN_SEGMENT {
        return Err(Error::domain("min_seg", min_seg as f64, "min_seg >= 5"));
    }
    let n = w.len();
    if n < 2 * min_seg {
        return Err(Error::TooFewPoints {
            need: 2 * min_seg,
            got: n,
        });
    }
    let logs: Vec<(T, T)> = w
        .points()
        .iter()
        .map(|p| (p.eta.ln(), p.phi.ln()))
        .collect();

    let mut best: Option<(T, PowerLawFit<T>, PowerLawFit<T>, usize)> = None;
    for k in (min_seg - 1)..=(n - min_seg - 1) {
        let inner = ols_log(&logs[..=k], IndexRange::new(0, k))?;
        let outer = ols_log(&logs[k + 1..], IndexRange::new(k + 1, n - 1))?;
        let total = inner.sse + outer.sse;
        if best.as_ref().is_none_or(|b| total < b.0) {
            best = Some((total, inner, outer, k));
        }
    }
    let (total_sse, inner, outer, k) = best.expect("scan covers at least one break");
    let pts = w.points();
    let eta_break = (pts[k].eta * pts[k + 1].eta).sqrt();
    Ok(TwoLayerFit {
        inner,
        outer,
        break_index: k,
        eta_break,
        lambda: w.units().map(|u| u.to_length(eta_break)),
        total_sse,
    })
}

/// Inverts the wall-layer exponent: `Re = exp(3/(2α))`.
pub fn re_from_exponent<T: Scalar>(alpha: T) -> Result<T> {
    if !(alpha > T::zero() && alpha < T::lit(1.5)) {
        return Err(Error::domain(
            "alpha",
            alpha.to_f64_lossy(),
            "0 < alpha < 3/2",
        ));
    }
    Ok((T::lit(1.5) / alpha).exp())
}

/// Inverts the wall-layer coefficient: `Re = exp(√3·(A − 5/2))`.
pub fn re_from_coefficient<T: Scalar>(coeff: T) -> Result<T> {
    if !(coeff > T::lit(2.5)) || !coeff.is_finite() {
        return Err(Error::domain("A", coeff.to_f64_lossy(), "A > 5/2"));
    }
    Ok((T::lit(3.0).sqrt() * (coeff - T::lit(2.5))).exp())
}

/// The two Re estimates from one wall-layer fit and their reconciliation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveReResult<T> {
    pub re_from_alpha: T,
    pub re_from_coeff: T,
    /// Geometric mean of the two estimates.
    pub re_eff: T,
    pub ln_discrepancy: T,
    pub consistent: bool,
    /// Λ in metres, once attached with [`EffectiveReResult::with_length_scale`].
    pub length_scale: Option<T>,
}

impl<T: Scalar> EffectiveReResult<T> {
    pub fn with_length_scale(mut self, u_inf: T, nu: T) -> Result<Self> {
        self.length_scale = Some(length_scale(self.re_eff, u_inf, nu)?);
        Ok(self)
    }
}

pub fn reconcile_re<T: Scalar>(re_a: T, re_b: T, tol_ln: T) -> Result<EffectiveReResult<T>> {
    if !(re_a > T::one()) {
        return Err(Error::domain(
            "Re (exponent)",
            re_a.to_f64_lossy(),
            "Re > 1",
        ));
    }
    if !(re_b > T::one()) {
        return Err(Error::domain(
            "Re (coefficient)",
            re_b.to_f64_lossy(),
            "Re > 1",
        ));
    }
    if !(tol_ln > T::zero()) {
        return Err(Error::domain("tol_ln", tol_ln.to_f64_lossy(), "tol_ln > 0"));
    }
    let (la, lb) = (re_a.ln(), re_b.ln());
    let ln_discrepancy = (la - lb).abs();
    Ok(EffectiveReResult {
        re_from_alpha: re_a,
        re_from_coeff: re_b,
        re_eff: ((la + lb) / T::lit(2.0)).exp(),
        ln_discrepancy,
        consistent: ln_discrepancy <= tol_ln,
        length_scale: None,
    })
}

/// Both Re estimates from a fitted `(A, α)` pair, reconciled.
pub fn effective_re<T: Scalar>(fit: &PowerLawFit<T>, tol_ln: T) -> Result<EffectiveReResult<T>> {
    reconcile_re(
        re_from_exponent(fit.exponent)?,
        re_from_coefficient(fit.coeff)?,
        tol_ln,
    )
}

/// `Λ = Re·ν/U`.
pub fn length_scale<T: Scalar>(re_eff: T, u_inf: T, nu: T) -> Result<T> {
    for (name, v, bound) in [
        ("Re", re_eff, "Re > 0"),
        ("U", u_inf, "U > 0"),
        ("nu", nu, "nu > 0"),
    ] {
        if !(v > T::zero()) {
            return Err(Error::domain(name, v.to_f64_lossy(), bound));
        }
    }
    Ok(re_eff * nu / u_inf)
}
