//! Turbulent boundary layer drag analysis.
//!
//! The crate reduces measured mean-velocity profiles to wall units, fits the
//! two-layer power-law structure of the intermediate region, and recovers the
//! effective Reynolds number `Re = U·Λ/ν` from the coefficient and exponent of
//! the wall-layer scaling law
//!
//! ```text
//! φ = (ln Re / √3 + 5/2) · η^(3 / (2 ln Re))
//! ```
//!
//! It also evaluates and fits skin-friction correlations (inverse log-square,
//! power law, pipe-flow exact and asymptotic forms), maps between log-square
//! and power-law forms by tangency, and compares drag samples against
//! correlations with an exact sign test.
//!
//! All numerical code is generic over the scalar type ([`Scalar`]); the
//! aliases at the crate root fix it to `f64` (and `f32` for a few types).

// `!(x > 0)` is used deliberately so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod analysis;
pub mod comparison;
pub mod correlations;
mod error;
pub mod profile;
pub mod rng;
mod scalar;
pub mod scaling;
pub mod tangency;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use analysis::{analyze_profile, FitOptions, ProfileAnalysis};
pub use comparison::{
    evaluate, evaluate_with, figure_table, lambda_theta_table, sign_test_p_value, synth_dragset,
    ComparisonReport, DragSample, DragSetParams, FigureRow, FigureTable, LambdaThetaRow,
    ReynoldsKind,
};
pub use correlations::{
    bl_drag_langley, bl_drag_logsq, fit_logsq_constant, pipe_drag_asymptotic, pipe_drag_exact, psi,
    ConstantFit, Correlation, LangleyDrag,
};
pub use profile::{
    drag_coefficient, momentum_integral, momentum_thickness, synth_profile, wall_scale,
    MomentumThickness, ProfilePoint, SynthProfileParams, VelocityProfile, WallPoint,
    WallScaledProfile, WallUnits,
};
pub use scaling::{
    detect_interface, effective_re, fit_power_law, length_scale, re_from_coefficient,
    re_from_exponent, reconcile_re, EffectiveReResult, IndexRange, PowerLawFit, TwoLayerFit,
};
pub use tangency::{approximation_error, logsq_to_power, power_to_logsq, TangencyMap};

pub type VelocityProfileF64 = VelocityProfile<f64>;
pub type WallScaledProfileF64 = WallScaledProfile<f64>;
pub type PowerLawFitF64 = PowerLawFit<f64>;
pub type TwoLayerFitF64 = TwoLayerFit<f64>;
pub type EffectiveReResultF64 = EffectiveReResult<f64>;
pub type CorrelationF64 = Correlation<f64>;
pub type ConstantFitF64 = ConstantFit<f64>;
pub type TangencyMapF64 = TangencyMap<f64>;
pub type DragSampleF64 = DragSample<f64>;
pub type ComparisonReportF64 = ComparisonReport<f64>;
pub type ProfileAnalysisF64 = ProfileAnalysis<f64>;

pub type VelocityProfileF32 = VelocityProfile<f32>;
pub type WallScaledProfileF32 = WallScaledProfile<f32>;
pub type CorrelationF32 = Correlation<f32>;
pub type TangencyMapF32 = TangencyMap<f32>;
