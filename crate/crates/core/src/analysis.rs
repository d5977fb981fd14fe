//! Full reduction of one measured profile.

use crate::profile::{
    drag_coefficient, momentum_thickness, wall_scale, MomentumThickness, VelocityProfile,
    WallScaledProfile,
};
use crate::scaling::{
    detect_interface, effective_re, EffectiveReResult, TwoLayerFit, DEFAULT_TOL_LN, MIN_SEGMENT,
};
use crate::{Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions<T> {
    /// Points below this wall distance (wall units) are excluded from fits.
    pub eta_min: T,
    pub min_seg: usize,
    /// Largest `|Δ ln Re|` at which the two Re estimates count as consistent.
    pub tol_ln: T,
}

impl<T: Scalar> Default for FitOptions<T> {
    fn default() -> Self {
        Self {
            eta_min: T::lit(30.0),
            min_seg: MIN_SEGMENT,
            tol_ln: T::lit(DEFAULT_TOL_LN),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileAnalysis<T> {
    /// Wall-scaled points used by the fit (at or above `eta_min`).
    pub wall: WallScaledProfile<T>,
    pub dropped_below_eta_min: usize,
    pub two_layer: TwoLayerFit<T>,
    /// Re from the inner-layer `(A, α)`, with Λ attached.
    pub effective_re: EffectiveReResult<T>,
    pub momentum: MomentumThickness<T>,
    pub cf: T,
    pub warnings: Vec<String>,
}

/// wall scaling → interface detection → Re from (A, α) → Λ → θ → `c'_f`.
pub fn analyze_profile<T: Scalar>(
    p: &VelocityProfile<T>,
    opts: &FitOptions<T>,
) -> Result<ProfileAnalysis<T>> {
    let all = wall_scale(p)?;
    let wall = all.above(opts.eta_min);
    let dropped = all.len() - wall.len();
    let two_layer = detect_interface(&wall, opts.min_seg)?;
    let effective_re =
        effective_re(&two_layer.inner, opts.tol_ln)?.with_length_scale(p.u_inf(), p.nu())?;
    let momentum = momentum_thickness(p)?;
    let cf = drag_coefficient(p.u_tau(), p.u_inf())?;

    let mut warnings = Vec::new();
    if dropped > 0 {
        warnings.push(format!(
            "{dropped} points below eta_min = {} excluded from fit",
            opts.eta_min
        ));
    }
    if !effective_re.consistent {
        warnings.push(format!(
            "Re estimates disagree: |ln Re_alpha - ln Re_A| = {} exceeds {}",
            effective_re.ln_discrepancy, opts.tol_ln
        ));
    }
    Ok(ProfileAnalysis {
        wall,
        dropped_below_eta_min: dropped,
        two_layer,
        effective_re,
        momentum,
        cf,
        warnings,
    })
}
