use crate::config::{parse_complex, RunConfig};
use crate::report::{to_json, version, SCHEMA};
use clap::{Args, ValueEnum};
use fraccal::contour::{tube_distance, AnalyticOracle};
use fraccal::frac::{frac_deriv_contour, frac_integ_contour, frac_series_with, ContourSettings, Mode};
use fraccal::monodromy::WhittakerDual;
use fraccal::series::builtin;
use fraccal::special::hyp2f1;
use fraccal::{Complex64 as C, Error, PowerSeries, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    /// 1/(1+t)
    Geometric,
    /// exp(t)
    Exp,
    /// 2F1(1/2-kappa-mu, 1/2-kappa+mu; 1; -t), the first Whittaker Borel dual
    WhittakerF1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpMode {
    Deriv,
    Integ,
}

/// Input function: a builtin or a JSON series.
#[derive(Args, Clone, Debug)]
#[group(required = true, multiple = false)]
pub struct Input {
    #[arg(long, value_enum)]
    pub builtin: Option<Builtin>,
    /// Series as JSON, e.g. '{"coeffs":[[1,0],[0.5,0]]}', or @path to read it from a file
    #[arg(long)]
    pub series: Option<String>,
}

#[derive(Args, Clone, Debug)]
pub struct WhittakerArgs {
    #[arg(long, default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
    pub kappa: C,
    #[arg(long, default_value = "0.3", value_parser = parse_complex, allow_hyphen_values = true)]
    pub mu: C,
}

#[derive(Args, Clone, Debug)]
pub struct FracopArgs {
    #[command(flatten)]
    pub input: Input,
    #[command(flatten)]
    pub whittaker: WhittakerArgs,
    /// Order, real or complex (e.g. 0.3+0.2i)
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub alpha: C,
    #[arg(long, value_enum, default_value_t = OpMode::Deriv)]
    pub mode: OpMode,
    /// Evaluate at this point instead of printing coefficients
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub eval: Option<C>,
}

/// A function given by its Taylor series and, for builtins, by a pointwise oracle.
pub struct Function {
    pub name: String,
    pub series: PowerSeries,
    pub oracle: Option<AnalyticOracle>,
}

pub fn load(input: &Input, w: &WhittakerArgs, n: usize) -> Result<Function> {
    if let Some(s) = &input.series {
        let text = match s.strip_prefix('@') {
            Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?,
            None => s.clone(),
        };
        return Ok(Function { name: "series".into(), series: PowerSeries::from_json(&text)?, oracle: None });
    }
    match input.builtin.expect("clap enforces one input") {
        Builtin::Geometric => Ok(Function { name: "geometric".into(), series: builtin::geometric(n), oracle: Some(AnalyticOracle::geometric()) }),
        Builtin::Exp => Ok(Function { name: "exp".into(), series: builtin::exp(n), oracle: Some(AnalyticOracle::exp()) }),
        Builtin::WhittakerF1 => {
            let dual = WhittakerDual::new(w.kappa, w.mu);
            let (f1, _) = dual.series(n)?;
            let (p, _) = dual.params();
            let oracle = AnalyticOracle::new("whittaker-f1", 1.0, 0.0, move |t| {
                hyp2f1(p.a, p.b, p.c, -t).unwrap_or(C::new(f64::NAN, f64::NAN))
            });
            Ok(Function { name: format!("whittaker-f1 kappa={} mu={}", w.kappa, w.mu), series: f1, oracle: Some(oracle) })
        }
    }
}

#[derive(Serialize)]
struct FracopReport {
    schema: &'static str,
    version: String,
    command: &'static str,
    input: String,
    alpha: C,
    mode: Mode,
    truncation: usize,
    /// `series` or `contour`
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<C>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<C>,
    #[serde(skip_serializing_if = "Option::is_none")]
    err_est: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coeffs: Option<Vec<C>>,
}

fn radius(f: &PowerSeries) -> f64 {
    f.radius_hint().unwrap_or_else(|| f.estimate_growth().radius)
}

/// Returns the JSON and CSV renderings.
pub fn run(args: &FracopArgs, cfg: &RunConfig) -> Result<(String, String)> {
    let f = load(&args.input, &args.whittaker, cfg.truncation)?;
    let mode = match args.mode {
        OpMode::Deriv => Mode::Deriv,
        OpMode::Integ => Mode::Integ,
    };
    let g = frac_series_with(&f.series, args.alpha, mode, cfg.precision.into())?;
    let mut rep = FracopReport {
        schema: SCHEMA,
        version: version(),
        command: "fracop",
        input: f.name.clone(),
        alpha: args.alpha,
        mode,
        truncation: cfg.truncation,
        method: "series",
        t: None,
        value: None,
        err_est: None,
        coeffs: None,
    };
    let Some(t) = args.eval else {
        let csv = std::iter::once("k,re,im".to_string())
            .chain(g.coeffs().iter().enumerate().map(|(k, x)| format!("{k},{:e},{:e}", x.re, x.im)))
            .collect::<Vec<_>>()
            .join("\n")
            + "\n";
        rep.coeffs = Some(g.coeffs().to_vec());
        return Ok((to_json(&rep), csv));
    };
    rep.t = Some(t);
    let rad = radius(&f.series);
    let mut done = false;
    if t.norm() < rad {
        let v = g.eval_with(t, cfg.precision.into());
        let tail = g.eval(t).last_term;
        if tail <= cfg.tol * v.norm().max(1.0) {
            rep.value = Some(v);
            rep.err_est = Some(tail);
            done = true;
        }
    }
    if !done {
        let Some(o) = &f.oracle else {
            return Err(if t.norm() < rad {
                Error::NonConvergence(format!("series tail at |t| = {} is above the tolerance; raise --truncation", t.norm()))
            } else {
                Error::Domain(format!("|t| = {} is outside the disc of convergence {rad} and no pointwise form is known", t.norm()))
            });
        };
        let a = 0.5 * (tube_distance(t) + o.radius.min(2.0));
        let r = o.type_bound + 1.0;
        let set = ContourSettings::default();
        let v = match mode {
            Mode::Deriv => frac_deriv_contour(o, args.alpha, r, a, t, &set)?,
            Mode::Integ => frac_integ_contour(o, args.alpha, r, a, t, &set)?,
        };
        rep.method = "contour";
        rep.value = Some(v.value);
        rep.err_est = Some(v.err_est);
    }
    let v = rep.value.expect("value set");
    let csv = format!("method,t_re,t_im,re,im\n{},{:e},{:e},{:e},{:e}\n", rep.method, t.re, t.im, v.re, v.im);
    Ok((to_json(&rep), csv))
}
