use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use tbl_drag::correlations::LANGLEY_RANGE;
use tbl_drag::{
    analyze_profile, approximation_error, bl_drag_langley, evaluate_with, figure_table,
    fit_logsq_constant, lambda_theta_table, logsq_to_power, power_to_logsq, synth_dragset,
    synth_profile, Correlation, DragSetParams, FitOptions, ProfileAnalysis, ReynoldsKind,
    SynthProfileParams, VelocityProfile,
};

use crate::files::{self, InputDigest};
use crate::report::Report;
use crate::{
    ApproxArgs, CliError, Command, CompareArgs, DragArgs, FitArgs, FitConstantArgs, ProfileFitArgs,
    RunConfig, SynthDragArgs, SynthKind, SynthProfileArgs, ThetaArgs,
};

type CliResult<T> = Result<T, CliError>;

pub(crate) fn execute(
    cfg: &RunConfig,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CliResult<()> {
    if cfg.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    match &cfg.command {
        Command::Fit(a) => fit(cfg, a, stdout, stderr),
        Command::Drag(a) => emit(cfg, &drag(a)?, stdout),
        Command::FitConstant(a) => emit(cfg, &fit_constant(a)?, stdout),
        Command::Compare(a) => compare(cfg, a, stdout),
        Command::Synth(kind) => emit(cfg, &synth(cfg, kind)?, stdout),
        Command::Approx(a) => emit(cfg, &approx(a)?, stdout),
        Command::Theta(a) => theta(cfg, a, stdout),
    }
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn emit(cfg: &RunConfig, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match &cfg.out {
        Some(path) => write_file(path, text),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Data(format!("stdout: {e}"))),
    }
}

/// Parses `logsq[:C]`, `langley`, `power:G:gamma`, `pipe-exact`, `pipe-asym`.
pub fn parse_correlation(spec: &str) -> CliResult<Correlation<f64>> {
    let bad = || CliError::Usage(format!("invalid correlation spec `{spec}`"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    let parts: Vec<&str> = spec.split(':').collect();
    let corr = match parts.as_slice() {
        ["logsq"] => Correlation::boundary_layer(),
        ["logsq", c] => {
            Correlation::log_square(num(c)?).map_err(|e| CliError::Usage(e.to_string()))?
        }
        ["langley"] => Correlation::langley(),
        ["power", g, gamma] => Correlation::power_law(num(g)?, num(gamma)?)
            .map_err(|e| CliError::Usage(e.to_string()))?,
        ["pipe-exact"] => Correlation::PipeExact,
        ["pipe-asym"] => Correlation::PipeAsymptotic,
        _ => return Err(bad()),
    };
    Ok(corr)
}

fn parse_correlations(
    specs: &[String],
    default: &[Correlation<f64>],
) -> CliResult<Vec<Correlation<f64>>> {
    if specs.is_empty() {
        return Ok(default.to_vec());
    }
    specs.iter().map(|s| parse_correlation(s)).collect()
}

fn write_correlation(r: &mut Report, c: &Correlation<f64>) {
    r.text("correlation", c.tag());
    match *c {
        Correlation::LogSquare { constant } => {
            r.num("constant", constant);
        }
        Correlation::PowerLaw {
            prefactor,
            exponent,
        } => {
            r.num("prefactor", prefactor).num("exponent", exponent);
        }
        Correlation::PipeExact | Correlation::PipeAsymptotic => {}
    }
}

fn fit_options(a: &ProfileFitArgs) -> CliResult<FitOptions<f64>> {
    if !(a.eta_min >= 0.0) {
        return Err(CliError::Usage(format!(
            "--eta-min {} must be non-negative",
            a.eta_min
        )));
    }
    if !(a.tol_ln > 0.0) {
        return Err(CliError::Usage(format!(
            "--tol-ln {} must be positive",
            a.tol_ln
        )));
    }
    if a.min_seg < tbl_drag::scaling::MIN_SEGMENT {
        return Err(CliError::Usage(format!(
            "--min-seg {} must be at least 5",
            a.min_seg
        )));
    }
    Ok(FitOptions {
        eta_min: a.eta_min,
        min_seg: a.min_seg,
        tol_ln: a.tol_ln,
    })
}

/// Maps `f` over input files, in parallel when `jobs > 1`; results keep input order.
fn map_files<R: Send>(
    jobs: usize,
    paths: &[PathBuf],
    f: impl Fn(&Path) -> R + Sync + Send,
) -> CliResult<Vec<R>> {
    if jobs <= 1 || paths.len() <= 1 {
        return Ok(paths.iter().map(|p| f(p)).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("--jobs: {e}")))?;
    Ok(pool.install(|| paths.par_iter().map(|p| f(p)).collect()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub correlation: Correlation<f64>,
    pub reynolds: ReynoldsKind,
    pub re: f64,
    pub cf: f64,
    pub in_range: Option<bool>,
}

/// Everything `fit` reports for one profile file.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub digest: InputDigest,
    pub profile: VelocityProfile<f64>,
    pub options: FitOptions<f64>,
    pub analysis: ProfileAnalysis<f64>,
    pub predictions: Vec<Prediction>,
    pub warnings: Vec<String>,
}

impl AnalysisReport {
    pub fn build(
        digest: InputDigest,
        profile: VelocityProfile<f64>,
        options: FitOptions<f64>,
        corrs: &[Correlation<f64>],
    ) -> CliResult<Self> {
        let analysis = analyze_profile(&profile, &options)?;
        let mut warnings = analysis.warnings.clone();
        let mut predictions = Vec::new();
        for c in corrs {
            let kind = c.reynolds_kind();
            let re = match kind {
                ReynoldsKind::Effective => analysis.effective_re.re_eff,
                ReynoldsKind::MomentumThickness => analysis.momentum.re_theta,
            };
            match c.predict(re) {
                Ok(cf) => {
                    let in_range = (*c == Correlation::langley())
                        .then(|| bl_drag_langley(re).map(|d| d.in_range).unwrap_or(false));
                    if in_range == Some(false) {
                        warnings.push(format!(
                            "Re_theta = {} outside the Langley calibration range [{}, {}]",
                            crate::format::sig9(re),
                            LANGLEY_RANGE.0,
                            LANGLEY_RANGE.1
                        ));
                    }
                    predictions.push(Prediction {
                        correlation: *c,
                        reynolds: kind,
                        re,
                        cf,
                        in_range,
                    });
                }
                Err(e) => warnings.push(format!("{} not evaluated: {e}", c.tag())),
            }
        }
        Ok(Self {
            digest,
            profile,
            options,
            analysis,
            predictions,
            warnings,
        })
    }

    pub fn render(&self, r: &mut Report) {
        let a = &self.analysis;
        r.array_table("profiles").texts("warnings", &self.warnings);

        r.table("profiles.input")
            .text("file", &self.digest.file_name)
            .int("rows", self.digest.rows as u64)
            .text("sha256", &self.digest.sha256);

        r.table("profiles.profile")
            .text("name", self.profile.name())
            .num("nu", self.profile.nu())
            .num("U_inf", self.profile.u_inf())
            .num("u_tau", self.profile.u_tau())
            .num("eta_min", self.options.eta_min)
            .int("points_fitted", a.wall.len() as u64)
            .int("dropped_below_eta_min", a.dropped_below_eta_min as u64);

        let t = &a.two_layer;
        r.table("profiles.two_layer")
            .num("A", t.inner.coeff)
            .num("alpha", t.inner.exponent)
            .int("inner_first", t.inner.index_range.start as u64)
            .int("inner_last", t.inner.index_range.end as u64)
            .num("inner_sse", t.inner.sse)
            .num("inner_r2", t.inner.r2)
            .num("B", t.outer.coeff)
            .num("beta", t.outer.exponent)
            .int("outer_first", t.outer.index_range.start as u64)
            .int("outer_last", t.outer.index_range.end as u64)
            .num("outer_sse", t.outer.sse)
            .num("outer_r2", t.outer.r2)
            .int("break_index", t.break_index as u64)
            .num("eta_break", t.eta_break)
            .opt_num("lambda", t.lambda)
            .num("total_sse", t.total_sse);

        let e = &a.effective_re;
        r.table("profiles.effective_re")
            .num("re_from_alpha", e.re_from_alpha)
            .num("re_from_A", e.re_from_coeff)
            .num("re_eff", e.re_eff)
            .num("ln_discrepancy", e.ln_discrepancy)
            .num("tol_ln", self.options.tol_ln)
            .flag("consistent", e.consistent)
            .opt_num("length_scale", e.length_scale);

        r.table("profiles.momentum")
            .num("theta", a.momentum.theta)
            .num("re_theta", a.momentum.re_theta);

        r.table("profiles.drag").num("cf", a.cf);

        for p in &self.predictions {
            r.array_table("profiles.predictions");
            write_correlation(r, &p.correlation);
            r.text("reynolds", p.reynolds.field())
                .num("re", p.re)
                .num("cf", p.cf);
            if let Some(flag) = p.in_range {
                r.flag("in_range", flag);
            }
        }
    }
}

fn analyze_file(
    path: &Path,
    opts: FitOptions<f64>,
    corrs: &[Correlation<f64>],
) -> CliResult<AnalysisReport> {
    let (profile, digest) = files::read_profile(path)?;
    AnalysisReport::build(digest, profile, opts, corrs)
        .map_err(|e| CliError::Data(format!("{}: {}", path.display(), e.message())))
}

fn fit(
    cfg: &RunConfig,
    a: &FitArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CliResult<()> {
    let corrs = parse_correlations(
        &a.corrs,
        &[Correlation::boundary_layer(), Correlation::langley()],
    )?;
    let opts = fit_options(&a.fit)?;
    let reports = map_files(cfg.jobs, &a.profiles, |p| analyze_file(p, opts, &corrs))?
        .into_iter()
        .collect::<CliResult<Vec<_>>>()?;

    let mut r = Report::new();
    r.comment("tbl-drag fit report");
    for rep in &reports {
        rep.render(&mut r);
    }
    emit(cfg, &r.finish(), stdout)?;

    let inconsistent: Vec<&str> = reports
        .iter()
        .filter(|x| !x.analysis.effective_re.consistent)
        .map(|x| x.profile.name())
        .collect();
    if !inconsistent.is_empty() {
        let msg = format!("inconsistent Re estimates: {}", inconsistent.join(", "));
        if cfg.strict {
            return Err(CliError::Inconsistent(msg));
        }
        let _ = writeln!(stderr, "warning: {msg}");
    }
    Ok(())
}

fn drag(a: &DragArgs) -> CliResult<String> {
    let need = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| CliError::Usage(format!("--corr {} requires {flag}", a.corr)))
    };
    let corr = match a.corr.as_str() {
        "logsq" => Correlation::LogSquare {
            constant: a.constant,
        },
        "langley" => Correlation::langley(),
        "power" => Correlation::PowerLaw {
            prefactor: need(a.prefactor, "--prefactor")?,
            exponent: need(a.exponent, "--exponent")?,
        },
        "pipe-exact" => Correlation::PipeExact,
        "pipe-asym" => Correlation::PipeAsymptotic,
        other => return Err(CliError::Usage(format!("unknown correlation `{other}`"))),
    };
    let kind = corr.reynolds_kind();
    let re = match kind {
        ReynoldsKind::Effective => need(a.re, "--re")?,
        ReynoldsKind::MomentumThickness => need(a.re_theta, "--re-theta")?,
    };
    let cf = corr.predict(re)?;

    let mut r = Report::new();
    write_correlation(&mut r, &corr);
    r.num(kind.field(), re).num("cf", cf);
    if corr == Correlation::langley() {
        r.flag("in_range", bl_drag_langley(re)?.in_range);
    }
    Ok(r.finish())
}

fn input_table(r: &mut Report, d: &InputDigest) {
    r.table("input")
        .text("file", &d.file_name)
        .int("rows", d.rows as u64)
        .text("sha256", &d.sha256);
}

fn fit_constant(a: &FitConstantArgs) -> CliResult<String> {
    let (samples, digest) = files::read_summary(&a.summary)?;
    let pairs: Vec<(f64, f64)> = samples
        .iter()
        .filter_map(|s| s.re_eff.map(|re| (re, s.cf)))
        .collect();
    if pairs.len() < 3 {
        return Err(CliError::Data(format!(
            "{}: need at least 3 rows with re_eff, found {}",
            a.summary.display(),
            pairs.len()
        )));
    }
    let f = fit_logsq_constant(&pairs)?;
    let mut r = Report::new();
    input_table(&mut r, &digest);
    r.table("fit")
        .num("constant", f.constant)
        .int("n", f.n as u64)
        .num("rms_rel", f.rms_rel);
    Ok(r.finish())
}

fn compare(cfg: &RunConfig, a: &CompareArgs, stdout: &mut dyn Write) -> CliResult<()> {
    if !(a.significance > 0.0 && a.significance < 1.0) {
        return Err(CliError::Usage(format!(
            "--significance {} must lie in (0, 1)",
            a.significance
        )));
    }
    let corrs = parse_correlations(&a.corrs, &[Correlation::boundary_layer()])?;
    let (samples, digest) = files::read_summary(&a.summary)?;

    let mut r = Report::new();
    input_table(&mut r, &digest);
    for c in &corrs {
        let rep = evaluate_with(&samples, c, a.significance)?;
        r.array_table("comparison");
        write_correlation(&mut r, c);
        r.int("n", rep.residuals.len() as u64)
            .num("mean_rel", rep.mean_rel)
            .num("rms_rel", rep.rms_rel)
            .int("n_pos", rep.n_pos as u64)
            .int("n_neg", rep.n_neg as u64)
            .num("p_sign", rep.p_sign)
            .num("significance", rep.significance)
            .flag("systematic", rep.systematic)
            .nums("residuals", &rep.residuals);
    }
    if let Some(path) = &a.figure_out {
        let table = figure_table(&samples, &corrs)?;
        write_file(path, &files::write_figure(&table)?)?;
    }
    emit(cfg, &r.finish(), stdout)
}

fn synth(cfg: &RunConfig, kind: &SynthKind) -> CliResult<String> {
    let seed = cfg
        .seed
        .ok_or_else(|| CliError::Usage("synth requires --seed".into()))?;
    let usage = |e: tbl_drag::Error| CliError::Usage(e.to_string());
    match kind {
        SynthKind::Profile(a) => {
            let p = synth_profile(&profile_params(a, seed)).map_err(usage)?;
            Ok(files::write_profile(&p))
        }
        SynthKind::Dragset(a) => {
            let s = synth_dragset(&dragset_params(a, seed)).map_err(usage)?;
            files::write_summary(&s)
        }
    }
}

fn profile_params(a: &SynthProfileArgs, seed: u64) -> SynthProfileParams<f64> {
    SynthProfileParams {
        name: a.name.clone(),
        re: a.re,
        n: a.n,
        eta_lo: a.eta_lo,
        eta_hi: a.eta_hi,
        noise_rel: a.noise,
        seed,
        u_inf: a.u_inf,
        nu: a.nu,
    }
}

fn dragset_params(a: &SynthDragArgs, seed: u64) -> DragSetParams<f64> {
    DragSetParams {
        constant: a.constant,
        n: a.n,
        re_lo: a.re_lo,
        re_hi: a.re_hi,
        noise_rel: a.noise,
        seed,
    }
}

fn approx(a: &ApproxArgs) -> CliResult<String> {
    let x0 = match (a.x0, a.gamma) {
        (Some(x0), _) => x0,
        (None, Some(g)) => power_to_logsq(g)?,
        (None, None) => return Err(CliError::Usage("approx requires --x0 or --gamma".into())),
    };
    let (map, power) = logsq_to_power(x0, a.constant)?;
    let mut r = Report::new();
    r.num("x0", map.x0)
        .num("gamma", map.gamma)
        .num("G", map.g)
        .num("constant", a.constant);
    if let Correlation::PowerLaw { prefactor, .. } = power {
        r.num("prefactor", prefactor);
    }
    if let (Some(lo), Some(hi)) = (a.lo, a.hi) {
        let dev = approximation_error(a.constant, x0, lo, hi, a.n_grid)?;
        r.table("error_scan")
            .num("lo", lo)
            .num("hi", hi)
            .int("n_grid", a.n_grid as u64)
            .num("max_rel_deviation", dev);
    }
    Ok(r.finish())
}

fn theta(cfg: &RunConfig, a: &ThetaArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let opts = fit_options(&a.fit)?;
    let results = map_files(cfg.jobs, &a.profiles, |p| analyze_file(p, opts, &[]))?
        .into_iter()
        .collect::<CliResult<Vec<_>>>()?;
    let profiles: Vec<_> = results.iter().map(|x| x.profile.clone()).collect();
    let fits: Vec<_> = results
        .iter()
        .map(|x| (x.analysis.effective_re, x.analysis.momentum))
        .collect();
    let rows = lambda_theta_table(&profiles, &fits)?;
    emit(cfg, &files::write_lambda_theta(&rows)?, stdout)
}
