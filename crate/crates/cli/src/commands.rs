use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use zprime_core::critical::critical_points;
use zprime_core::haar::sample_eigenphases;
use zprime_core::spacing::{self, cache, ipx_coefficients, ipx_coefficients_exact, ipx_small_x};
use zprime_core::stats::{
    self, ensemble_ipx, fit_beta, geometric_grid, ipx_large_x, next_spacing_probe, scaled_distance,
};
use zprime_core::szego::{
    ds_moment_mc, second_derivative_check, szego_determinant, szego_limit_error,
    szego_limit_error_direct, szego_sum, MomentRegime,
};
use zprime_core::{Complex64, EnsembleConfig, Error, Symbol, SzegoParameters};

use crate::args::{
    CoeffsArgs, Command, Common, IpxArgs, MomentsArgs, NextSpacingArgs, SampleArgs,
    SpacingCorrArgs, SymbolChoice, SzegoArgs,
};
use crate::output::Sink;

/// Failure of a subcommand, carrying its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn io(message: String) -> Self {
        Self { code: 3, message }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParameter(_)
            | Error::Domain(_)
            | Error::Dimension(_)
            | Error::Capability(_)
            | Error::Precondition(_) => 2,
            Error::Convergence { .. }
            | Error::Pole(_)
            | Error::Resolution(_)
            | Error::Format(_)
            | Error::Io(_) => 3,
            Error::Statistics(_) => 4,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(), Failure>;

/// Prints "label: done/total" to stderr roughly twenty times per run.
struct Progress {
    label: &'static str,
    total: usize,
    step: usize,
    quiet: bool,
}

impl Progress {
    fn new(label: &'static str, total: usize, quiet: bool) -> Self {
        Self {
            label,
            total,
            step: (total / 20).max(1),
            quiet,
        }
    }

    fn report(&self, done: usize) {
        if !self.quiet && (done % self.step == 0 || done == self.total) {
            eprintln!("{}: {done}/{} matrices", self.label, self.total);
        }
    }
}

pub fn run(common: &Common, command: &Command) -> Outcome {
    let start = Instant::now();
    let mut sink = Sink::new(&common.out, common.format).map_err(|e| Failure::io(e.to_string()))?;
    let (name, params) = match command {
        Command::Sample(a) => (sample(a, &mut sink)?, serde_json::to_value(a)),
        Command::Ipx(a) => (ipx(a, common, &mut sink)?, serde_json::to_value(a)),
        Command::Coeffs(a) => (coeffs(a, &mut sink)?, serde_json::to_value(a)),
        Command::Szego(a) => (szego(a, &mut sink)?, serde_json::to_value(a)),
        Command::Moments(a) => (moments(a, &mut sink)?, serde_json::to_value(a)),
        Command::SpacingCorr(a) => (spacing_corr(a, common, &mut sink)?, serde_json::to_value(a)),
        Command::NextSpacing(a) => (next_spacing(a, common, &mut sink)?, serde_json::to_value(a)),
    };
    let params = params.map_err(|e| Failure::io(e.to_string()))?;
    sink.manifest(name, &params, start.elapsed().as_secs_f64())
        .map_err(Failure::io)
}

#[derive(Serialize)]
struct EigenphaseRow {
    index: usize,
    theta: f64,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct CriticalRow {
    index: usize,
    re: f64,
    im: f64,
    modulus: f64,
    argument: f64,
    x: f64,
    residual: f64,
    multiplicity: u8,
}

fn sample(a: &SampleArgs, sink: &mut Sink) -> Result<&'static str, Failure> {
    if a.n < 2 {
        return Err(Failure::usage(format!("sample needs n >= 2, got {}", a.n)));
    }
    let spectrum = sample_eigenphases(a.n, a.seed)?;
    let cps = critical_points(&spectrum)?;
    let phases: Vec<EigenphaseRow> = spectrum
        .phases()
        .iter()
        .enumerate()
        .map(|(index, &theta)| EigenphaseRow {
            index,
            theta,
            re: theta.cos(),
            im: theta.sin(),
        })
        .collect();
    let critical: Vec<CriticalRow> = cps
        .points()
        .iter()
        .zip(cps.residuals())
        .zip(cps.multiplicity())
        .enumerate()
        .map(|(index, ((z, &residual), &multiplicity))| CriticalRow {
            index,
            re: z.re,
            im: z.im,
            modulus: z.norm(),
            argument: z.arg(),
            x: scaled_distance(a.n, *z),
            residual,
            multiplicity,
        })
        .collect();
    sink.table("sample_eigenphases", &phases)
        .map_err(Failure::io)?;
    sink.table("sample_critical", &critical)
        .map_err(Failure::io)?;
    Ok("sample")
}

fn cache_dir(explicit: &Option<PathBuf>, sink: &Sink) -> PathBuf {
    explicit.clone().unwrap_or_else(|| sink.dir().join("cache"))
}

fn load_series(dir: &Path, l_max: usize) -> Result<spacing::GapProbabilitySeries, Failure> {
    let order = l_max + 4;
    if order > spacing::MAX_ORDER {
        return Err(Failure::usage(format!(
            "l_max must be <= {}, got {l_max}",
            spacing::MAX_ORDER - 4
        )));
    }
    Ok(cache::load_or_compute(dir, order)?.0)
}

fn ensemble(
    n: usize,
    samples: usize,
    seed: u64,
    common: &Common,
) -> Result<Vec<stats::MatrixSample>, Failure> {
    if n < 2 {
        return Err(Failure::usage(format!("n must be >= 2, got {n}")));
    }
    let cfg = EnsembleConfig::new(n, samples, seed)?;
    let progress = Progress::new("sampling", samples, common.quiet);
    let report = |done: usize| progress.report(done);
    Ok(stats::sample_ensemble(&cfg, Some(&report))?)
}

#[derive(Serialize)]
struct IpxRow {
    x: f64,
    ip: f64,
    std_error: f64,
    large_x: f64,
    small_x: Option<f64>,
    diff_large: f64,
    diff_small: Option<f64>,
}

fn ipx(a: &IpxArgs, common: &Common, sink: &mut Sink) -> Result<&'static str, Failure> {
    let grid = geometric_grid(a.x_min, a.x_max, a.x_points)?;
    let series = load_series(&cache_dir(&a.cache_dir, sink), a.l_max)?;
    ipx_coefficients(&series, a.beta, a.l_max)?;
    let samples = ensemble(a.n, a.samples, a.seed, common)?;
    let curve = ensemble_ipx(&samples, &grid)?;
    let errors = curve.std_errors();
    // The series is evaluated only where the corresponding spacing lies in
    // the trusted range of the gap-probability expansion.
    let s_of_x = |x: f64| (2.0 * x / (a.beta * std::f64::consts::PI.powi(2))).sqrt();
    let mut rows = Vec::with_capacity(grid.len());
    for (k, &x) in grid.iter().enumerate() {
        let ip = curve.values[k];
        let large_x = ipx_large_x(x)?;
        let small_x = if s_of_x(x) <= series.trust_radius() {
            Some(ipx_small_x(&series, x, a.beta, a.l_max)?)
        } else {
            None
        };
        rows.push(IpxRow {
            x,
            ip,
            std_error: errors[k],
            large_x,
            small_x,
            diff_large: ip - large_x,
            diff_small: small_x.map(|v| ip - v),
        });
    }
    sink.table("ipx", &rows).map_err(Failure::io)?;
    Ok("ipx")
}

#[derive(Serialize)]
struct CoeffRow {
    l: usize,
    exponent: String,
    e_l_exact: String,
    e_l: f64,
    ip_exact: String,
    ip_coefficient: f64,
}

fn coeffs(a: &CoeffsArgs, sink: &mut Sink) -> Result<&'static str, Failure> {
    let series = load_series(&cache_dir(&a.cache_dir, sink), a.l_max)?;
    let terms = ipx_coefficients(&series, a.beta, a.l_max)?;
    let exact = if a.beta == 0.5 {
        Some(ipx_coefficients_exact(&series, a.l_max)?)
    } else {
        None
    };
    let rows: Vec<CoeffRow> = terms
        .iter()
        .map(|t| {
            let e = series.e_l(t.l).expect("l within series");
            CoeffRow {
                l: t.l,
                exponent: format!("{}/{}", t.exponent.numer(), t.exponent.denom()),
                e_l_exact: e.to_string(),
                e_l: e.to_f64(),
                ip_exact: exact
                    .as_ref()
                    .map(|c| c[t.l].to_string())
                    .unwrap_or_default(),
                ip_coefficient: t.coefficient,
            }
        })
        .collect();
    sink.table("coeffs", &rows).map_err(Failure::io)?;
    Ok("coeffs")
}

#[derive(Serialize)]
struct SzegoRow {
    symbol: &'static str,
    n: usize,
    det_re: f64,
    det_im: f64,
    limit: f64,
    error: f64,
    error_direct: f64,
}

#[derive(Serialize)]
struct SecondDerivativeRow {
    n: usize,
    delta_alpha: f64,
    finite_difference: f64,
    finite_difference_im: f64,
    closed_form: f64,
    difference: f64,
    extrapolated: bool,
}

fn szego(a: &SzegoArgs, sink: &mut Sink) -> Result<&'static str, Failure> {
    if a.n_list.is_empty() || a.n_list.contains(&0) {
        return Err(Failure::usage("n-list needs positive sizes"));
    }
    let w = Complex64::new(a.w_re, a.w_im);
    let z = Complex64::from_polar(a.r, a.arg);
    let params = SzegoParameters::new(w, a.alpha, z)?;
    let symbols: &[(Symbol, &'static str)] = match a.symbol {
        SymbolChoice::G => &[(Symbol::G, "g")],
        SymbolChoice::H => &[(Symbol::H, "h")],
        SymbolChoice::Both => &[(Symbol::G, "g"), (Symbol::H, "h")],
    };
    let mut rows = Vec::new();
    for &(which, label) in symbols {
        let limit = (-szego_sum(&params, which)?).exp();
        for &n in &a.n_list {
            let det = szego_determinant(&params, which, n)?;
            rows.push(SzegoRow {
                symbol: label,
                n,
                det_re: det.re,
                det_im: det.im,
                limit,
                error: szego_limit_error(&params, which, n)?,
                error_direct: szego_limit_error_direct(&params, which, n)?,
            });
        }
    }
    sink.table("szego", &rows).map_err(Failure::io)?;
    if let Some(delta_alpha) = a.delta_alpha {
        let mut rows = Vec::new();
        for &n in &a.n_list {
            let d = second_derivative_check(w, z, n, delta_alpha)?;
            rows.push(SecondDerivativeRow {
                n,
                delta_alpha,
                finite_difference: d.finite_difference,
                finite_difference_im: d.finite_difference_im,
                closed_form: d.closed_form,
                difference: d.finite_difference - d.closed_form,
                extrapolated: d.extrapolated,
            });
        }
        sink.table("szego_second_derivative", &rows)
            .map_err(Failure::io)?;
    }
    Ok("szego")
}

/// Parses "1;2;1,1" into `[[1], [2], [1, 1]]`.
pub fn parse_partitions(text: &str) -> Result<Vec<Vec<u32>>, Failure> {
    text.split(';')
        .map(|p| {
            p.split(',')
                .map(|k| match k.trim().parse::<u32>() {
                    Ok(k) if k > 0 => Ok(k),
                    _ => Err(Failure::usage(format!(
                        "bad partition part {k:?} in {text:?}"
                    ))),
                })
                .collect()
        })
        .collect()
}

#[derive(Serialize)]
struct MomentRow {
    partition: String,
    weight: u32,
    estimate: f64,
    std_error: f64,
    exact: f64,
    z: f64,
    regime: &'static str,
}

fn moments(a: &MomentsArgs, sink: &mut Sink) -> Result<&'static str, Failure> {
    let partitions = parse_partitions(&a.partitions)?;
    let mut rows = Vec::with_capacity(partitions.len());
    for p in &partitions {
        let m = ds_moment_mc(p, a.n, a.samples, a.seed)?;
        rows.push(MomentRow {
            partition: p.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
            weight: p.iter().sum(),
            estimate: m.estimate,
            std_error: m.std_error,
            exact: m.exact,
            z: (m.estimate - m.exact) / m.std_error,
            regime: match m.regime {
                MomentRegime::Exact => "exact",
                MomentRegime::Inequality => "inequality",
            },
        });
    }
    sink.table("moments", &rows).map_err(Failure::io)?;
    Ok("moments")
}

#[derive(Serialize)]
struct PairRow {
    matrix: usize,
    s: f64,
    x: f64,
}

#[derive(Serialize)]
struct FitRow {
    beta: f64,
    std_error: f64,
    ci_low: f64,
    ci_high: f64,
    count: usize,
    x_max: f64,
}

fn spacing_corr(
    a: &SpacingCorrArgs,
    common: &Common,
    sink: &mut Sink,
) -> Result<&'static str, Failure> {
    let samples = ensemble(a.n, a.samples, a.seed, common)?;
    let mut pairs = Vec::new();
    let mut rows = Vec::new();
    for (matrix, s) in samples.iter().enumerate() {
        let corr = stats::spacing_correlation(&s.spectrum, &s.critical);
        rows.extend(corr.pairs.iter().map(|p| PairRow {
            matrix,
            s: p.s,
            x: p.x,
        }));
        pairs.extend(corr.pairs);
    }
    let fit = fit_beta(&pairs, a.fit_x_max)?;
    sink.table("spacing_pairs", &rows).map_err(Failure::io)?;
    sink.table(
        "spacing_fit",
        &[FitRow {
            beta: fit.beta,
            std_error: fit.std_error,
            ci_low: fit.ci_low,
            ci_high: fit.ci_high,
            count: fit.count,
            x_max: a.fit_x_max,
        }],
    )
    .map_err(Failure::io)?;
    Ok("spacing-corr")
}

#[derive(Serialize)]
struct SlopeRow {
    slope: f64,
    std_error: f64,
    bins_used: usize,
    count_in_window: usize,
    window_lo: f64,
    window_hi: f64,
}

fn next_spacing(
    a: &NextSpacingArgs,
    common: &Common,
    sink: &mut Sink,
) -> Result<&'static str, Failure> {
    if a.n < 3 {
        return Err(Failure::usage(format!(
            "next-nearest spacings need n >= 3, got {}",
            a.n
        )));
    }
    let cfg = EnsembleConfig::new(a.n, a.samples, a.seed)?;
    let progress = Progress::new("sampling", a.samples, common.quiet);
    let report = |done: usize| progress.report(done);
    let spectra = cfg.spectra(Some(&report))?;
    let est = next_spacing_probe(&spectra, (a.window_lo, a.window_hi))?;
    sink.table(
        "next_spacing",
        &[SlopeRow {
            slope: est.slope,
            std_error: est.std_error,
            bins_used: est.bins_used,
            count_in_window: est.count_in_window,
            window_lo: a.window_lo,
            window_hi: a.window_hi,
        }],
    )
    .map_err(Failure::io)?;
    Ok("next-spacing")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_parse() {
        let p = parse_partitions("1;2;1,1").unwrap();
        assert_eq!(p, vec![vec![1], vec![2], vec![1, 1]]);
        assert_eq!(parse_partitions("1;0").unwrap_err().code, 2);
        assert_eq!(parse_partitions("a").unwrap_err().code, 2);
    }

    #[test]
    fn error_codes() {
        assert_eq!(Failure::from(Error::Domain("x".into())).code, 2);
        assert_eq!(Failure::from(Error::Pole("x".into())).code, 3);
        assert_eq!(Failure::from(Error::Statistics("x".into())).code, 4);
    }
}
