//! Skin-friction drag correlations.
//!
//! * inverse log-square `c'_f = C/ln²Re` in the effective Reynolds number,
//! * power law `c'_f = G·Re_θ^(−γ)` in the momentum-thickness Reynolds number
//!   (the Langley fit `0.0097·Re_θ^(−0.144)` is one instance),
//! * pipe flow exact `c = 8/Ψ(α)^(2/(1+α))`, `α = 3/(2 ln Re)`,
//! * pipe flow asymptotic `c = 6/(e³·ln²Re)`.
//!
//! The pipe asymptote is kept with its printed constant `6/e³`. The large-Re
//! limit of the exact formula as written is `24/e³`, four times larger; both
//! are exposed ([`asymptotic_constant`], [`pipe_exact_log_square_limit`]).

use crate::{Error, Result, Scalar};

/// Boundary-layer log-square constant.
pub const LOGSQ_CONSTANT: f64 = 0.26;
pub const LANGLEY_PREFACTOR: f64 = 0.0097;
pub const LANGLEY_EXPONENT: f64 = 0.144;
/// `Re_θ` range the Langley fit was calibrated on.
pub const LANGLEY_RANGE: (f64, f64) = (3e4, 6e5);

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Correlation<T> {
    /// `C/ln²Re` in the effective Reynolds number.
    LogSquare {
        constant: T,
    },
    /// `G·Re_θ^(−γ)` in the momentum-thickness Reynolds number.
    PowerLaw {
        prefactor: T,
        exponent: T,
    },
    PipeExact,
    PipeAsymptotic,
}

impl<T: Scalar> Correlation<T> {
    pub fn log_square(constant: T) -> Result<Self> {
        let c = Correlation::LogSquare { constant };
        c.validate()?;
        Ok(c)
    }

    pub fn power_law(prefactor: T, exponent: T) -> Result<Self> {
        let c = Correlation::PowerLaw {
            prefactor,
            exponent,
        };
        c.validate()?;
        Ok(c)
    }

    /// `0.26/ln²Re`.
    pub fn boundary_layer() -> Self {
        Correlation::LogSquare {
            constant: T::lit(LOGSQ_CONSTANT),
        }
    }

    /// `0.0097·Re_θ^(−0.144)`.
    pub fn langley() -> Self {
        Correlation::PowerLaw {
            prefactor: T::lit(LANGLEY_PREFACTOR),
            exponent: T::lit(LANGLEY_EXPONENT),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Correlation::LogSquare { constant } if !(constant > T::zero()) => {
                Err(Error::domain("C", constant.to_f64_lossy(), "C > 0"))
            }
            Correlation::PowerLaw { prefactor, .. } if !(prefactor > T::zero()) => {
                Err(Error::domain("G", prefactor.to_f64_lossy(), "G > 0"))
            }
            Correlation::PowerLaw { exponent, .. }
                if !(exponent > T::zero() && exponent < T::lit(2.0)) =>
            {
                Err(Error::domain(
                    "gamma",
                    exponent.to_f64_lossy(),
                    "0 < gamma < 2",
                ))
            }
            _ => Ok(()),
        }
    }

    /// Which Reynolds number the correlation is expressed in.
    pub fn reynolds_kind(&self) -> crate::ReynoldsKind {
        match self {
            Correlation::PowerLaw { .. } => crate::ReynoldsKind::MomentumThickness,
            _ => crate::ReynoldsKind::Effective,
        }
    }

    /// Short column tag: `logsq`, `langley`, `power`, `pipe_exact`, `pipe_asym`.
    pub fn tag(&self) -> &'static str {
        match *self {
            Correlation::LogSquare { .. } => "logsq",
            Correlation::PowerLaw { .. } if *self == Self::langley() => "langley",
            Correlation::PowerLaw { .. } => "power",
            Correlation::PipeExact => "pipe_exact",
            Correlation::PipeAsymptotic => "pipe_asym",
        }
    }

    /// Predicted drag at Reynolds number `re` (of the kind the form requires).
    pub fn predict(&self, re: T) -> Result<T> {
        self.validate()?;
        match *self {
            Correlation::LogSquare { constant } => bl_drag_logsq(re, constant),
            Correlation::PowerLaw {
                prefactor,
                exponent,
            } => power_law_drag(re, prefactor, exponent),
            Correlation::PipeExact => pipe_drag_exact(re),
            Correlation::PipeAsymptotic => pipe_drag_asymptotic(re),
        }
    }
}

/// `Ψ(α) = e^(3/2)(√3 + 5α) / (2^α·α(1+α)(2+α))`.
pub fn psi<T: Scalar>(alpha: T) -> Result<T> {
    if !(alpha > T::zero()) {
        return Err(Error::domain("alpha", alpha.to_f64_lossy(), "alpha > 0"));
    }
    let one = T::one();
    let two = T::lit(2.0);
    let num = T::lit(1.5).exp() * (T::lit(3.0).sqrt() + T::lit(5.0) * alpha);
    let den = two.powf(alpha) * alpha * (one + alpha) * (two + alpha);
    Ok(num / den)
}

/// Exact pipe drag `c = 8/Ψ(α)^(2/(1+α))` with `α = 3/(2 ln Re)`.
pub fn pipe_drag_exact<T: Scalar>(re: T) -> Result<T> {
    if !(re > T::one()) {
        return Err(Error::domain("Re", re.to_f64_lossy(), "Re > 1"));
    }
    pipe_drag_exact_ln(re.ln())
}

/// [`pipe_drag_exact`] taking `ln Re`, usable where `Re` itself overflows.
pub fn pipe_drag_exact_ln<T: Scalar>(ln_re: T) -> Result<T> {
    if !(ln_re > T::zero()) {
        return Err(Error::domain("ln Re", ln_re.to_f64_lossy(), "ln Re > 0"));
    }
    let alpha = T::lit(1.5) / ln_re;
    let p = psi(alpha)?;
    Ok(T::lit(8.0) / p.powf(T::lit(2.0) / (T::one() + alpha)))
}

/// `6/e³`, the leading constant of the pipe asymptote.
pub fn asymptotic_constant<T: Scalar>() -> T {
    T::lit(6.0) / T::lit(3.0).exp()
}

/// `24/e³`, the limit of `c·ln²Re` for the exact pipe formula as written.
pub fn pipe_exact_log_square_limit<T: Scalar>() -> T {
    T::lit(24.0) / T::lit(3.0).exp()
}

/// `c = 6/(e³·ln²Re)`.
pub fn pipe_drag_asymptotic<T: Scalar>(re: T) -> Result<T> {
    if !(re > T::E()) {
        return Err(Error::domain("Re", re.to_f64_lossy(), "Re > e"));
    }
    let l = re.ln();
    Ok(asymptotic_constant::<T>() / (l * l))
}

/// `c'_f = C/ln²Re`.
pub fn bl_drag_logsq<T: Scalar>(re: T, constant: T) -> Result<T> {
    if !(re > T::E()) {
        return Err(Error::domain("Re", re.to_f64_lossy(), "Re > e"));
    }
    if !(constant > T::zero()) {
        return Err(Error::domain("C", constant.to_f64_lossy(), "C > 0"));
    }
    let l = re.ln();
    Ok(constant / (l * l))
}

fn power_law_drag<T: Scalar>(re_theta: T, prefactor: T, exponent: T) -> Result<T> {
    if !(re_theta > T::zero()) {
        return Err(Error::domain(
            "Re_theta",
            re_theta.to_f64_lossy(),
            "Re_theta > 0",
        ));
    }
    Ok(prefactor * re_theta.powf(-exponent))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LangleyDrag<T> {
    pub cf: T,
    /// Whether `Re_θ` lies in the calibration range `[3·10⁴, 6·10⁵]`.
    pub in_range: bool,
}

/// `c'_f = 0.0097·Re_θ^(−0.144)`; out-of-range inputs are evaluated and flagged.
pub fn bl_drag_langley<T: Scalar>(re_theta: T) -> Result<LangleyDrag<T>> {
    let cf = power_law_drag(
        re_theta,
        T::lit(LANGLEY_PREFACTOR),
        T::lit(LANGLEY_EXPONENT),
    )?;
    let (lo, hi) = LANGLEY_RANGE;
    Ok(LangleyDrag {
        cf,
        in_range: re_theta >= T::lit(lo) && re_theta <= T::lit(hi),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantFit<T> {
    pub constant: T,
    pub n: usize,
    pub rms_rel: T,
}

/// Least-squares `C` for `c'_f = C/ln²Re`, in `c'_f` space.
///
/// With `x = 1/ln²Re` the minimiser is `C = Σ c'_f·x / Σ x²`.
pub fn fit_logsq_constant<T: Scalar>(samples: &[(T, T)]) -> Result<ConstantFit<T>> {
    if samples.len() < 3 {
        return Err(Error::TooFewPoints {
            need: 3,
            got: samples.len(),
        });
    }
    let mut xs = Vec::with_capacity(samples.len());
    for (i, &(re, cf)) in samples.iter().enumerate() {
        if !(re > T::E()) || !re.is_finite() {
            return Err(Error::InvalidSample(format!(
                "sample {i}: Re = {re} must exceed e"
            )));
        }
        if !(cf > T::zero()) || !cf.is_finite() {
            return Err(Error::InvalidSample(format!(
                "sample {i}: cf = {cf} must be positive"
            )));
        }
        let l = re.ln();
        xs.push(T::one() / (l * l));
    }
    let (sxy, sxx) = samples
        .iter()
        .zip(&xs)
        .fold((T::zero(), T::zero()), |(a, b), (&(_, cf), &x)| {
            (a + cf * x, b + x * x)
        });
    let constant = sxy / sxx;
    let sq = samples
        .iter()
        .zip(&xs)
        .fold(T::zero(), |acc, (&(_, cf), &x)| {
            let pred = constant * x;
            let r = (cf - pred) / pred;
            acc + r * r
        });
    Ok(ConstantFit {
        constant,
        n: samples.len(),
        rms_rel: (sq / T::from_count(samples.len())).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Expected values below come from a 30-digit mpmath evaluation of the
    // formulas.

    #[test]
    fn psi_values() {
        assert_relative_eq!(psi(0.15).unwrap(), 27.031511559490815, max_relative = 1e-13);
        assert_relative_eq!(psi(1.0).unwrap(), 2.514246543770165, max_relative = 1e-13);
        assert!(psi(0.0).is_err());
        assert!(psi(-1.0).is_err());
    }

    #[test]
    fn psi_small_alpha_limit() {
        let limit = 1.5f64.exp() * 3f64.sqrt() / 2.0;
        assert_relative_eq!(limit, 3.881256586775828, max_relative = 1e-14);
        let a = 1e-6;
        assert_relative_eq!(a * psi(a).unwrap(), limit, max_relative = 1e-4);
        assert_relative_eq!(
            a * psi(a).unwrap(),
            3.8812592788187511,
            max_relative = 1e-12
        );
    }

    #[test]
    fn pipe_exact_values() {
        let e10 = 10f64.exp();
        assert_relative_eq!(
            pipe_drag_exact(e10).unwrap(),
            0.025875021237504851,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            pipe_drag_exact(1e9).unwrap(),
            0.0044689361914594386,
            max_relative = 1e-12
        );
        let a = pipe_drag_exact(e10).unwrap();
        let b = pipe_drag_exact(e10 * (1.0 + 1e-12)).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-9);
        assert!(pipe_drag_exact(1.0).is_err());
    }

    #[test]
    fn pipe_exact_vs_asymptote_ratio() {
        // c·ln²Re of the exact formula tends to 24/e³, four times 6/e³
        let l = 1e6;
        let scaled = pipe_drag_exact_ln(l).unwrap() * l * l;
        assert_relative_eq!(
            scaled,
            pipe_exact_log_square_limit::<f64>(),
            max_relative = 1e-4
        );
        assert_relative_eq!(
            pipe_exact_log_square_limit::<f64>() / asymptotic_constant::<f64>(),
            4.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn pipe_asymptotic_values() {
        assert_relative_eq!(
            asymptotic_constant::<f64>(),
            0.29872241020718366,
            max_relative = 1e-14
        );
        assert!((asymptotic_constant::<f64>() - 0.3).abs() / 0.3 < 0.005);
        assert_relative_eq!(
            pipe_drag_asymptotic(10f64.exp()).unwrap(),
            0.0029872241020718366,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            pipe_drag_asymptotic(20f64.exp()).unwrap(),
            0.00074680602551795914,
            max_relative = 1e-13
        );
        assert!(pipe_drag_asymptotic(std::f64::consts::E).is_err());
    }

    #[test]
    fn logsq_values() {
        assert_relative_eq!(
            bl_drag_logsq(10f64.exp(), 0.26).unwrap(),
            0.0026,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            bl_drag_logsq(1e6, 0.26).unwrap(),
            0.0013621955895283228,
            max_relative = 1e-13
        );
        let re = 3.7e5;
        assert_relative_eq!(
            bl_drag_logsq(re, 0.52).unwrap(),
            2.0 * bl_drag_logsq(re, 0.26).unwrap(),
            max_relative = 1e-15
        );
        assert!(bl_drag_logsq(2.0, 0.26).is_err());
        assert!(bl_drag_logsq(1e5, 0.0).is_err());
    }

    #[test]
    fn langley_values() {
        let d = bl_drag_langley(1.0).unwrap();
        assert_eq!(d.cf, 0.0097);
        assert!(!d.in_range);
        let d = bl_drag_langley(3e4).unwrap();
        assert_relative_eq!(d.cf, 0.0021981952930519078, max_relative = 1e-13);
        assert!(d.in_range);
        let d = bl_drag_langley(6e5).unwrap();
        assert_relative_eq!(d.cf, 0.0014279662868422027, max_relative = 1e-13);
        assert!(d.in_range);
        assert!(!bl_drag_langley(6.1e5).unwrap().in_range);
        assert!(bl_drag_langley(0.0).is_err());
    }

    #[test]
    fn fit_constant_exact() {
        let s: Vec<_> = [1e5, 1e6, 3e6, 1e7, 1e8]
            .iter()
            .map(|&re| (re, bl_drag_logsq(re, 0.26).unwrap()))
            .collect();
        let f = fit_logsq_constant(&s).unwrap();
        assert_relative_eq!(f.constant, 0.26, max_relative = 1e-12);
        assert!(f.rms_rel < 1e-14);
        assert_eq!(f.n, 5);
    }

    #[test]
    fn fit_constant_duplicates() {
        let re = 10f64.exp();
        let f = fit_logsq_constant(&[(re, 0.003); 3]).unwrap();
        assert_relative_eq!(f.constant, 0.30, max_relative = 1e-13);
    }

    #[test]
    fn fit_constant_errors() {
        assert!(matches!(
            fit_logsq_constant::<f64>(&[]),
            Err(Error::TooFewPoints { .. })
        ));
        assert!(fit_logsq_constant(&[(1e5, 0.001), (1e6, 0.001)]).is_err());
        assert!(fit_logsq_constant(&[(1e5, 0.001), (1e6, 0.001), (2.0, 0.001)]).is_err());
        assert!(fit_logsq_constant(&[(1e5, 0.001), (1e6, 0.0), (1e7, 0.001)]).is_err());
    }

    #[test]
    fn fit_constant_scale_equivariant() {
        let s: Vec<_> = [(2e5, 0.0017), (9e5, 0.0014), (4e7, 0.00083), (1e8, 0.0008)].to_vec();
        let m = 1.7;
        let scaled: Vec<_> = s.iter().map(|&(re, cf)| (re, cf * m)).collect();
        let a = fit_logsq_constant(&s).unwrap();
        let b = fit_logsq_constant(&scaled).unwrap();
        assert_relative_eq!(b.constant, m * a.constant, max_relative = 1e-14);
        assert_relative_eq!(b.rms_rel, a.rms_rel, max_relative = 1e-12);
    }

    #[test]
    fn decreasing_in_reynolds() {
        let grid: Vec<f64> = (0..=200)
            .map(|i| 10f64.powf(0.3 + i as f64 * 0.06))
            .collect();
        let forms = [
            Correlation::boundary_layer(),
            Correlation::langley(),
            Correlation::PipeAsymptotic,
        ];
        for c in forms {
            let vals: Vec<f64> = grid
                .iter()
                .filter(|&&r| r > 3.0)
                .map(|&r| c.predict(r).unwrap())
                .collect();
            assert!(vals.windows(2).all(|w| w[1] < w[0]), "{c:?}");
        }
        // the exact pipe formula peaks near Re ≈ 1.095 and decreases beyond
        let vals: Vec<f64> = grid
            .iter()
            .filter(|&&r| r >= 2.0)
            .map(|&r| pipe_drag_exact(r).unwrap())
            .collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn covariance_ratio_shrinks() {
        let k = 2.0;
        let dev: Vec<f64> = (4..=12)
            .map(|p| {
                let re = 10f64.powi(p);
                (bl_drag_logsq(k * re, 0.26).unwrap() / bl_drag_logsq(re, 0.26).unwrap() - 1.0)
                    .abs()
            })
            .collect();
        assert!(dev.windows(2).all(|w| w[1] < w[0]));
        assert_relative_eq!(dev[8], 0.048344992680735408, max_relative = 1e-10);
    }

    #[test]
    fn correlation_validation_and_tags() {
        assert!(Correlation::log_square(0.0).is_err());
        assert!(Correlation::power_law(0.01, 2.0).is_err());
        assert!(Correlation::power_law(-0.01, 0.1).is_err());
        assert_eq!(Correlation::<f64>::langley().tag(), "langley");
        assert_eq!(Correlation::power_law(0.01, 0.2).unwrap().tag(), "power");
        assert_eq!(Correlation::<f64>::boundary_layer().tag(), "logsq");
        assert_eq!(Correlation::<f64>::PipeExact.tag(), "pipe_exact");
        assert_eq!(Correlation::<f64>::PipeAsymptotic.tag(), "pipe_asym");
    }

    #[test]
    fn f32_evaluation() {
        let c: f32 = bl_drag_logsq(22026.465f32, 0.26).unwrap();
        assert!((c - 0.0026).abs() < 1e-8);
        let d = bl_drag_langley(3e4f32).unwrap();
        assert!((d.cf - 0.0021982).abs() < 1e-7);
    }
}
