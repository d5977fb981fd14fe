//! Residual comparison of drag samples against correlations.

use std::cmp::Ordering;

use crate::correlations::Correlation;
use crate::profile::{MomentumThickness, VelocityProfile};
use crate::rng::SeededUniform;
use crate::scaling::EffectiveReResult;
use crate::{Error, Result, Scalar};

/// Significance level below which a residual sign imbalance is systematic.
pub const DEFAULT_SIGNIFICANCE: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReynoldsKind {
    /// Effective Reynolds number `U·Λ/ν`.
    Effective,
    /// Momentum-thickness Reynolds number `U·θ/ν`.
    MomentumThickness,
}

impl ReynoldsKind {
    pub fn field(&self) -> &'static str {
        match self {
            ReynoldsKind::Effective => "re_eff",
            ReynoldsKind::MomentumThickness => "re_theta",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DragSample<T> {
    pub source: String,
    pub re_eff: Option<T>,
    pub re_theta: Option<T>,
    pub cf: T,
}

impl<T: Scalar> DragSample<T> {
    pub fn new(
        source: impl Into<String>,
        re_eff: Option<T>,
        re_theta: Option<T>,
        cf: T,
    ) -> Result<Self> {
        let source = source.into();
        if !(cf > T::zero()) || !cf.is_finite() {
            return Err(Error::InvalidSample(format!(
                "{source}: cf = {cf} must be positive"
            )));
        }
        if re_eff.is_none() && re_theta.is_none() {
            return Err(Error::InvalidSample(format!(
                "{source}: needs re_eff or re_theta"
            )));
        }
        for v in re_eff.iter().chain(re_theta.iter()) {
            if !(*v > T::zero()) || !v.is_finite() {
                return Err(Error::InvalidSample(format!(
                    "{source}: Reynolds number {v} must be positive"
                )));
            }
        }
        Ok(Self {
            source,
            re_eff,
            re_theta,
            cf,
        })
    }

    pub fn reynolds(&self, kind: ReynoldsKind) -> Option<T> {
        match kind {
            ReynoldsKind::Effective => self.re_eff,
            ReynoldsKind::MomentumThickness => self.re_theta,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport<T> {
    pub correlation: Correlation<T>,
    /// `(cf_obs − cf_pred)/cf_pred`, in sample order.
    pub residuals: Vec<T>,
    pub mean_rel: T,
    pub rms_rel: T,
    pub n_pos: usize,
    pub n_neg: usize,
    /// Two-sided exact binomial sign-test p-value; zero residuals dropped.
    pub p_sign: T,
    pub significance: T,
    pub systematic: bool,
}

fn predictions<T: Scalar>(samples: &[DragSample<T>], corr: &Correlation<T>) -> Result<Vec<T>> {
    corr.validate()?;
    let kind = corr.reynolds_kind();
    let missing: Vec<String> = samples
        .iter()
        .filter(|s| s.reynolds(kind).is_none())
        .map(|s| s.source.clone())
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingReynolds {
            field: kind.field(),
            sources: missing,
        });
    }
    samples
        .iter()
        .map(|s| corr.predict(s.reynolds(kind).expect("checked above")))
        .collect()
}

pub fn evaluate<T: Scalar>(
    samples: &[DragSample<T>],
    corr: &Correlation<T>,
) -> Result<ComparisonReport<T>> {
    evaluate_with(samples, corr, T::lit(DEFAULT_SIGNIFICANCE))
}

pub fn evaluate_with<T: Scalar>(
    samples: &[DragSample<T>],
    corr: &Correlation<T>,
    significance: T,
) -> Result<ComparisonReport<T>> {
    if !(significance > T::zero() && significance < T::one()) {
        return Err(Error::domain(
            "significance",
            significance.to_f64_lossy(),
            "0 < significance < 1",
        ));
    }
    let preds = predictions(samples, corr)?;
    let residuals: Vec<T> = samples
        .iter()
        .zip(&preds)
        .map(|(s, &p)| (s.cf - p) / p)
        .collect();
    let n = T::from_count(residuals.len().max(1));
    let mean_rel = residuals.iter().fold(T::zero(), |a, &r| a + r) / n;
    let rms_rel = (residuals.iter().fold(T::zero(), |a, &r| a + r * r) / n).sqrt();
    let n_pos = residuals.iter().filter(|&&r| r > T::zero()).count();
    let n_neg = residuals.iter().filter(|&&r| r < T::zero()).count();
    let p_sign = sign_test_p_value::<T>(n_pos, n_neg);
    Ok(ComparisonReport {
        correlation: *corr,
        residuals,
        mean_rel,
        rms_rel,
        n_pos,
        n_neg,
        p_sign,
        significance,
        systematic: p_sign < significance,
    })
}

/// Two-sided exact binomial sign test, `p = min(1, 2·P[X ≤ min(n₊, n₋)])`
/// with `X ~ Bin(n₊ + n₋, 1/2)`.
pub fn sign_test_p_value<T: Scalar>(n_pos: usize, n_neg: usize) -> T {
    let n = n_pos + n_neg;
    if n == 0 {
        return T::one();
    }
    let k = n_pos.min(n_neg);
    // log-space pmf so large n does not underflow 2^-n
    let ln2 = T::LN_2();
    let nf = T::from_count(n);
    let mut ln_binom = T::zero();
    let mut tail = T::zero();
    for i in 0..=k {
        if i > 0 {
            ln_binom = ln_binom + (T::from_count(n - i + 1) / T::from_count(i)).ln();
        }
        tail = tail + (ln_binom - nf * ln2).exp();
    }
    (T::lit(2.0) * tail).min(T::one())
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureRow<T> {
    pub source: String,
    pub re_eff: Option<T>,
    pub re_theta: Option<T>,
    pub cf_obs: T,
    /// One entry per correlation column.
    pub predictions: Vec<T>,
}

/// Plot-ready observations and predictions.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureTable<T> {
    /// Column tags, one per correlation, unique within the table.
    pub columns: Vec<String>,
    pub rows: Vec<FigureRow<T>>,
}

/// One row per sample ordered by ascending Reynolds number (`re_eff` when
/// present, else `re_theta`), with one prediction column per correlation.
pub fn figure_table<T: Scalar>(
    samples: &[DragSample<T>],
    corrs: &[Correlation<T>],
) -> Result<FigureTable<T>> {
    let preds = corrs
        .iter()
        .map(|c| predictions(samples, c))
        .collect::<Result<Vec<_>>>()?;

    let mut columns: Vec<String> = Vec::with_capacity(corrs.len());
    for c in corrs {
        let base = c.tag();
        let mut tag = base.to_string();
        let mut k = 2;
        while columns.contains(&tag) {
            tag = format!("{base}_{k}");
            k += 1;
        }
        columns.push(tag);
    }

    let mut rows: Vec<FigureRow<T>> = samples
        .iter()
        .enumerate()
        .map(|(i, s)| FigureRow {
            source: s.source.clone(),
            re_eff: s.re_eff,
            re_theta: s.re_theta,
            cf_obs: s.cf,
            predictions: preds.iter().map(|p| p[i]).collect(),
        })
        .collect();
    let key = |r: &FigureRow<T>| r.re_eff.or(r.re_theta).unwrap_or_else(T::infinity);
    rows.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap_or(Ordering::Equal));
    Ok(FigureTable { columns, rows })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LambdaThetaRow<T> {
    pub source: String,
    /// Λ, m.
    pub length_scale: T,
    /// θ, m.
    pub theta: T,
    /// `Λ/θ`; `None` when θ = 0.
    pub ratio: Option<T>,
    pub re_eff: T,
    pub re_theta: T,
}

/// Tabulates Λ against θ per profile. No relation is fitted.
pub fn lambda_theta_table<T: Scalar>(
    profiles: &[VelocityProfile<T>],
    fits: &[(EffectiveReResult<T>, MomentumThickness<T>)],
) -> Result<Vec<LambdaThetaRow<T>>> {
    if profiles.len() != fits.len() {
        return Err(Error::LengthMismatch("profile and fit"));
    }
    profiles
        .iter()
        .zip(fits)
        .map(|(p, (re, m))| {
            let length_scale = match re.length_scale {
                Some(l) => l,
                None => re
                    .with_length_scale(p.u_inf(), p.nu())?
                    .length_scale
                    .expect("attached"),
            };
            Ok(LambdaThetaRow {
                source: p.name().to_string(),
                length_scale,
                theta: m.theta,
                ratio: (m.theta > T::zero()).then(|| length_scale / m.theta),
                re_eff: re.re_eff,
                re_theta: m.re_theta,
            })
        })
        .collect()
}

/// Inputs to [`synth_dragset`].
#[derive(Debug, Clone, PartialEq)]
pub struct DragSetParams<T> {
    pub constant: T,
    pub n: usize,
    pub re_lo: T,
    pub re_hi: T,
    pub noise_rel: T,
    pub seed: u64,
}

/// Drag samples with `Re` log-uniform in `[re_lo, re_hi)` and
/// `cf = C/ln²Re·(1 + δ)`, δ uniform in `±noise_rel`.
pub fn synth_dragset<T: Scalar>(params: &DragSetParams<T>) -> Result<Vec<DragSample<T>>> {
    let DragSetParams {
        constant,
        n,
        re_lo,
        re_hi,
        noise_rel,
        seed,
    } = *params;
    if !(re_lo > T::E() && re_hi > re_lo) || !re_hi.is_finite() {
        return Err(Error::InvalidInterval(format!(
            "need e < re_lo < re_hi, got [{re_lo}, {re_hi}]"
        )));
    }
    if !(constant > T::zero()) {
        return Err(Error::domain("C", constant.to_f64_lossy(), "C > 0"));
    }
    if !(noise_rel >= T::zero() && noise_rel < T::one()) {
        return Err(Error::domain(
            "noise_rel",
            noise_rel.to_f64_lossy(),
            "0 <= noise_rel < 1",
        ));
    }
    if n == 0 {
        return Err(Error::TooFewPoints { need: 1, got: 0 });
    }
    let mut rng = SeededUniform::new(seed);
    let width = (re_hi.ln() - re_lo.ln()).to_f64_lossy();
    let base = re_lo.ln().to_f64_lossy();
    (0..n)
        .map(|i| {
            let re = T::lit((base + width * rng.unit()).exp());
            let delta = T::lit(rng.symmetric(1.0)) * noise_rel;
            let l = re.ln();
            let cf = constant / (l * l) * (T::one() + delta);
            DragSample::new(format!("synth-{i}"), Some(re), None, cf)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::bl_drag_logsq;
    use approx::assert_relative_eq;

    fn logsq_samples(c: f64, n: usize) -> Vec<DragSample<f64>> {
        (0..n)
            .map(|i| {
                let re = 10f64.powf(4.0 + i as f64 * 0.3);
                DragSample::new(
                    format!("s{i}"),
                    Some(re),
                    None,
                    bl_drag_logsq(re, c).unwrap(),
                )
                .unwrap()
            })
            .collect()
    }

    // Direct summation with exact integer binomial coefficients.
    fn binomial_two_sided(n_pos: u64, n_neg: u64) -> f64 {
        let n = n_pos + n_neg;
        if n == 0 {
            return 1.0;
        }
        let k = n_pos.min(n_neg);
        let mut c: u64 = 1;
        let mut sum: u64 = 1;
        for i in 1..=k {
            c = c * (n - i + 1) / i;
            sum += c;
        }
        (2.0 * sum as f64 / 2f64.powi(n as i32)).min(1.0)
    }

    #[test]
    fn sign_test_matches_direct_sum() {
        for n in 0..=20u64 {
            for k in 0..=n {
                let p: f64 = sign_test_p_value(k as usize, (n - k) as usize);
                assert_relative_eq!(p, binomial_two_sided(k, n - k), max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn sign_test_one_sided_signs() {
        for n in 1..=20usize {
            let p: f64 = sign_test_p_value(n, 0);
            assert_relative_eq!(
                p,
                (2.0 * 0.5f64.powi(n as i32)).min(1.0),
                max_relative = 1e-12
            );
        }
        let p: f64 = sign_test_p_value(10, 0);
        assert_relative_eq!(p, 0.001953125, max_relative = 1e-12);
    }

    #[test]
    fn sign_test_large_n() {
        let p: f64 = sign_test_p_value(1500, 1500);
        assert_eq!(p, 1.0);
        let p: f64 = sign_test_p_value(3000, 0);
        assert_eq!(p, 0.0);
    }

    #[test]
    fn self_consistent_samples() {
        let s = logsq_samples(0.26, 12);
        let r = evaluate(&s, &Correlation::boundary_layer()).unwrap();
        assert!(r.residuals.iter().all(|&x| x.abs() < 1e-15));
        assert!(!r.systematic);
    }

    #[test]
    fn constant_ratio_residuals() {
        let s = logsq_samples(0.23, 12);
        let r = evaluate(&s, &Correlation::boundary_layer()).unwrap();
        for x in &r.residuals {
            assert_relative_eq!(*x, 0.23 / 0.26 - 1.0, max_relative = 1e-12);
        }
        assert_relative_eq!(
            0.23 / 0.26 - 1.0,
            -0.11538461538461542,
            max_relative = 1e-12
        );
        assert_eq!(r.n_neg, 12);
        assert!(r.systematic);
        assert!(r.p_sign < 0.01);
    }

    #[test]
    fn ten_positive_residuals() {
        let s = logsq_samples(0.3, 10);
        let r = evaluate(&s, &Correlation::boundary_layer()).unwrap();
        assert_eq!((r.n_pos, r.n_neg), (10, 0));
        assert_relative_eq!(r.p_sign, 0.001953125, max_relative = 1e-12);
        assert!(r.systematic);
    }

    #[test]
    fn missing_reynolds_lists_sources() {
        let s = vec![
            DragSample::new("a", Some(1e5), None, 0.002).unwrap(),
            DragSample::new("b", None, Some(3e4), 0.002).unwrap(),
            DragSample::new("c", Some(2e5), None, 0.002).unwrap(),
        ];
        let e = evaluate(&s, &Correlation::langley()).unwrap_err();
        assert_eq!(
            e,
            Error::MissingReynolds {
                field: "re_theta",
                sources: vec!["a".into(), "c".into()]
            }
        );
        assert!(evaluate(&s, &Correlation::boundary_layer()).is_err());
    }

    #[test]
    fn sample_validation() {
        assert!(DragSample::new("x", Some(1e5), None, 0.0).is_err());
        assert!(DragSample::<f64>::new("x", None, None, 0.001).is_err());
        assert!(DragSample::new("x", Some(-1.0), None, 0.001).is_err());
    }

    #[test]
    fn figure_table_columns_and_order() {
        let s = vec![
            DragSample::new("hi", Some(1e7), Some(2e5), 0.0011).unwrap(),
            DragSample::new("lo", Some(1e5), Some(3e4), 0.0019).unwrap(),
        ];
        let t = figure_table(&s, &[Correlation::boundary_layer(), Correlation::langley()]).unwrap();
        assert_eq!(t.columns, vec!["logsq", "langley"]);
        assert_eq!(t.rows.len(), 2);
        assert_eq!(t.rows[0].source, "lo");
        assert_relative_eq!(t.rows[0].predictions[0], bl_drag_logsq(1e5, 0.26).unwrap());
        assert_relative_eq!(
            t.rows[0].predictions[1],
            crate::bl_drag_langley(3e4).unwrap().cf
        );

        let empty = figure_table(&s, &[]).unwrap();
        assert!(empty.columns.is_empty());
        assert_eq!(empty.rows.len(), 2);
        assert!(empty.rows.iter().all(|r| r.predictions.is_empty()));

        let dup = figure_table(
            &s,
            &[
                Correlation::boundary_layer(),
                Correlation::log_square(0.3).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(dup.columns, vec!["logsq", "logsq_2"]);
    }

    #[test]
    fn lambda_theta_rows() {
        let prof = VelocityProfile::new(
            "p",
            1.5e-5,
            10.0,
            0.4,
            (1..=10)
                .map(|i| crate::ProfilePoint {
                    y: i as f64 * 1e-3,
                    u: 5.0,
                })
                .collect(),
        )
        .unwrap();
        let re = crate::reconcile_re(2200.0, 2200.0, 0.1).unwrap();
        let l = 2200.0 * 1.5e-5 / 10.0;
        let m = MomentumThickness {
            theta: l / 6.0,
            re_theta: 10.0 * l / 6.0 / 1.5e-5,
        };
        let rows = lambda_theta_table(std::slice::from_ref(&prof), &[(re, m)]).unwrap();
        assert_relative_eq!(rows[0].ratio.unwrap(), 6.0, max_relative = 1e-12);
        let zero = MomentumThickness {
            theta: 0.0,
            re_theta: 0.0,
        };
        let rows = lambda_theta_table(std::slice::from_ref(&prof), &[(re, zero)]).unwrap();
        assert!(rows[0].ratio.is_none());
        assert!(lambda_theta_table(&[prof], &[]).is_err());
    }

    #[test]
    fn ratio_arithmetic() {
        let mut re = crate::reconcile_re(2200.0, 2200.0, 0.1).unwrap();
        re.length_scale = Some(0.033);
        let prof = VelocityProfile::new(
            "p",
            1.5e-5,
            10.0,
            0.4,
            (1..=10)
                .map(|i| crate::ProfilePoint {
                    y: i as f64 * 1e-3,
                    u: 5.0,
                })
                .collect(),
        )
        .unwrap();
        let m = MomentumThickness {
            theta: 0.0055,
            re_theta: 1.0,
        };
        let rows = lambda_theta_table(&[prof], &[(re, m)]).unwrap();
        assert_relative_eq!(rows[0].ratio.unwrap(), 6.0, max_relative = 1e-12);
        assert_eq!(rows[0].length_scale, 0.033);
    }

    #[test]
    fn dragset_deterministic() {
        let p = DragSetParams::<f64> {
            constant: 0.26,
            n: 40,
            re_lo: 1e5,
            re_hi: 1e8,
            noise_rel: 0.03,
            seed: 42,
        };
        let a = synth_dragset(&p).unwrap();
        let b = synth_dragset(&p).unwrap();
        assert_eq!(a, b);
        for s in &a {
            let re = s.re_eff.unwrap();
            assert!((1e5..1e8).contains(&re));
            let r = s.cf / bl_drag_logsq(re, 0.26).unwrap() - 1.0;
            assert!(r.abs() <= 0.03 + 1e-12);
        }
        assert!(synth_dragset(&DragSetParams {
            re_lo: 1e8,
            ..p.clone()
        })
        .is_err());
        assert!(synth_dragset(&DragSetParams { n: 0, ..p }).is_err());
    }
}
