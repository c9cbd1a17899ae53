use crate::config::{parse_complex, parse_range, RunConfig};
use crate::fracop::{load, Builtin, Input, WhittakerArgs};
use crate::report::{to_json, Table};
use clap::{Args, Subcommand};
use fraccal::laplace::{borel_map, remainder, LaplaceOracle, OverflowPolicy};
use fraccal::frac::psi_polynomial;
use fraccal::monodromy::stokes_multipliers_whittaker;
use fraccal::{Complex64 as C, Error, Result};
use serde_json::{json, Value};

#[derive(Subcommand, Clone, Debug)]
pub enum TableKind {
    /// |P_n(zeta)| for n = 0..24, with P the Laplace image of a builtin
    AsymptoticRemainders {
        #[arg(long, default_value = "10", value_parser = parse_complex)]
        zeta: C,
        #[arg(long, value_enum, default_value_t = Builtin::Geometric)]
        builtin: Builtin,
        #[command(flatten)]
        whittaker: WhittakerArgs,
    },
    /// Coefficients of the limiting polynomial Psi_n
    PsiPolys {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        whittaker: WhittakerArgs,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Stokes multipliers T1, T2 of the Whittaker equation over a grid
    StokesGrid {
        /// start:stop:step
        #[arg(long, default_value = "0:0.4:0.1", allow_hyphen_values = true)]
        kappa: String,
        #[arg(long, default_value = "0:0.4:0.1", allow_hyphen_values = true)]
        mu: String,
    },
}

#[derive(Args, Clone, Debug)]
pub struct TableArgs {
    #[command(subcommand)]
    pub kind: TableKind,
}

fn number(x: f64) -> Value {
    json!(x)
}

/// Real values as numbers, complex ones as `re+imi` strings.
fn cell(z: C) -> Value {
    if z.im == 0.0 {
        number(z.re)
    } else {
        Value::String(format!("{}{:+}i", z.re, z.im))
    }
}

pub fn run(args: &TableArgs, cfg: &RunConfig) -> Result<(String, String)> {
    let table = match &args.kind {
        TableKind::AsymptoticRemainders { zeta, builtin, whittaker } => {
            let input = Input { builtin: Some(*builtin), series: None };
            let f = load(&input, whittaker, 40)?;
            let oracle = f.oracle.expect("builtins carry a pointwise form");
            let p = borel_map(&f.series, OverflowPolicy::Error)?;
            let lap = LaplaceOracle::from_analytic(oracle, 1e-14);
            let mut t = Table::new("asymptotic-remainders", &["n", "remainder_abs", "term_abs"]);
            for n in 0..25 {
                let r = remainder(&lap, &p, n, *zeta)?;
                let term = p.p(n)?.norm() / zeta.norm().powi(n as i32);
                t.push(vec![json!(n), number(r.norm()), number(term)]);
            }
            t
        }
        TableKind::PsiPolys { input, whittaker, n } => {
            let f = load(input, whittaker, cfg.truncation.max(n + 1))?;
            let psi = psi_polynomial(&f.series, *n)?;
            let cols: Vec<String> = (0..=*n).map(|j| format!("c{j}")).collect();
            let cols: Vec<&str> = cols.iter().map(|s| s.as_str()).collect();
            let mut t = Table::new("psi-polys", &cols);
            t.push(psi.coeffs.iter().map(|z| cell(*z)).collect());
            t
        }
        TableKind::StokesGrid { kappa, mu } => {
            let ks = parse_range(kappa).map_err(Error::Parse)?;
            let ms = parse_range(mu).map_err(Error::Parse)?;
            let mut t = Table::new("stokes-grid", &["kappa", "mu", "t1_re", "t1_im", "t2_re", "t2_im", "goursat"]);
            for &k in &ks {
                for &m in &ms {
                    let s = stokes_multipliers_whittaker(C::new(k, 0.0), C::new(m, 0.0))?;
                    let (t1, t2) = (s.triple.t1, s.triple.t2);
                    t.push(vec![number(k), number(m), number(t1.re), number(t1.im), number(t2.re), number(t2.im), json!(s.goursat)]);
                }
            }
            t
        }
    };
    Ok((to_json(&table), table.to_csv()))
}
