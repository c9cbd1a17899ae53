use crate::config::RunConfig;
use crate::report::Case;
use fraccal::contour::AnalyticOracle;
use fraccal::laplace::{borel_map, default_zeta_grid, geometric_pair, polynomial_pair, verify_lm_duality, watson_gevrey_check, LaplaceOracle, OverflowPolicy};
use fraccal::monodromy::{
    borel_duals, default_goursat_grid, default_t_grid, phase_amplitude_recurrence, stokes_multipliers_whittaker, verify_dual_monodromy,
    verify_eg_ltf, verify_goursat_ltf, verify_mw_system, DualPair, MonodromyTriple, PWDEParams,
};
use fraccal::series::builtin;
use fraccal::special::connection::{cut_jump_measured, cut_jump_predicted, euler_ltf_check, geometric_alpha_jump, geometric_alpha_predicted, StarConvention};
use fraccal::special::Hyp2F1Params;
use fraccal::{Complex64 as C, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::f64::consts::PI;

pub const SUITES: [&str; 7] = ["euler-ltf", "jumps", "lm-duality", "watson", "monodromy", "eg-ltf", "goursat"];

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

/// Parameter sets `(a, b, c)` with `c - a - b` away from the integers.
fn hyp_grid() -> Vec<Hyp2F1Params> {
    vec![
        Hyp2F1Params::real(0.3, 0.7, 1.9),
        Hyp2F1Params::real(0.25, -0.4, 1.2),
        Hyp2F1Params::real(1.1, 0.45, 2.3),
        Hyp2F1Params::real(-0.6, 0.35, 0.8),
        Hyp2F1Params::new(C::new(0.5, 0.2), c(0.3), c(1.7)),
    ]
}

fn label(p: &Hyp2F1Params) -> String {
    format!("a={} b={} c={}", p.a, p.b, p.c)
}

pub fn run(suite: &str, cfg: &RunConfig, watson_a: f64) -> Vec<Case> {
    match suite {
        "euler-ltf" => euler_ltf(cfg),
        "jumps" => jumps(cfg),
        "lm-duality" => lm_duality(cfg),
        "watson" => watson(watson_a),
        "monodromy" => monodromy(cfg),
        "eg-ltf" => eg_ltf(cfg),
        "goursat" => goursat(cfg),
        "all" => SUITES.iter().flat_map(|s| run(s, cfg, watson_a)).collect(),
        other => unreachable!("unknown suite {other}"),
    }
}

fn collect(suite: &str, name: String, r: Result<Case>) -> Case {
    r.unwrap_or_else(|e| Case::error(suite, name, &e))
}

/// Five parameter sets at five seeded points `0.3 <= |t| <= 1.6` off the positive axis.
fn euler_ltf(cfg: &RunConfig) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pts: Vec<C> = (0..5)
        .map(|_| {
            let r = rng.gen_range(0.3..1.6);
            let th = rng.gen_range(0.4..PI - 0.2) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            C::from_polar(r, th)
        })
        .collect();
    let mut out = Vec::new();
    for p in hyp_grid() {
        for &t in &pts {
            let name = format!("{} t={t:.4}", label(&p));
            out.push(collect("euler-ltf", name.clone(), euler_ltf_check(&p, t).map(|r| Case::residual("euler-ltf", name, r, cfg.tol))));
        }
    }
    out
}

/// Cut jumps on `(1, 2)` against the connection formula, and the monodromy of
/// `2F1(1, 1; alpha + 1; -t)` around `t = -1`.
fn jumps(cfg: &RunConfig) -> Vec<Case> {
    let mut out = Vec::new();
    for p in hyp_grid() {
        for x in [1.1, 1.3, 1.5, 1.7, 1.9] {
            let name = format!("{} x={x}", label(&p));
            let r = (|| {
                let m = cut_jump_measured(&p, x)?;
                let e = cut_jump_predicted(&p, x)?;
                Ok(Case::residual("jumps", name.clone(), (m - e).norm() / e.norm().max(1e-300), cfg.tol))
            })();
            out.push(collect("jumps", name, r));
        }
    }
    for alpha in [0.5, 1.3, -0.4] {
        for t in [C::new(0.1, 0.0), C::new(0.3, 0.2), C::new(0.5, -0.3)] {
            let name = format!("geometric alpha={alpha} t={t}");
            let r = (|| {
                let m = geometric_alpha_jump(c(alpha), t, StarConvention::Natural)?;
                let e = geometric_alpha_predicted(c(alpha), t)?;
                Ok(Case::residual("jumps", name.clone(), (m - e).norm() / e.norm(), cfg.tol))
            })();
            out.push(collect("jumps", name, r));
        }
    }
    out
}

fn lm_duality(cfg: &RunConfig) -> Vec<Case> {
    let poly = [c(1.0), c(2.0), c(-0.5), c(0.25)];
    let mut out = Vec::new();
    for alpha in [0.5, 1.5] {
        for zeta in [2.0, 3.0, 5.0] {
            for which in ["geometric", "polynomial"] {
                let name = format!("{which} alpha={alpha} zeta={zeta}");
                let r = (|| {
                    let (f, (d, i)) = match which {
                        "geometric" => (AnalyticOracle::geometric(), geometric_pair(c(alpha))?),
                        _ => (AnalyticOracle::polynomial(poly.to_vec()), polynomial_pair(&poly, c(alpha))?),
                    };
                    let res = verify_lm_duality(&f, &d, &i, c(alpha), c(zeta), 1e-12)?;
                    Ok(Case::residual("lm-duality", name.clone(), res.max(), cfg.tol).with_detail(json!(res)))
                })();
                out.push(collect("lm-duality", name, r));
            }
        }
    }
    out
}

/// Sampled Gevrey bound for the Laplace image of `1/(1+t)` at `r = 1`, `n <= 24`.
fn watson(a: f64) -> Vec<Case> {
    let name = format!("geometric A={a} r=1 n<=24");
    let r = (|| {
        let p = borel_map(&builtin::geometric(30), OverflowPolicy::Error)?;
        let o = LaplaceOracle::from_analytic(AnalyticOracle::geometric(), 1e-13);
        let rep = watson_gevrey_check(&o, &p, a, 1.0, 24, &default_zeta_grid(1.0))?;
        Ok(Case { suite: "watson".into(), name: name.clone(), residual: None, pass: rep.pass, detail: json!(rep) })
    })();
    vec![collect("watson", name, r)]
}

pub(crate) fn whittaker_stack(kappa: f64, mu: f64) -> Result<(DualPair, MonodromyTriple)> {
    let p = PWDEParams::whittaker(c(kappa), c(mu));
    let d = borel_duals(&phase_amplitude_recurrence(&p, 32)?)?;
    Ok((d, stokes_multipliers_whittaker(c(kappa), c(mu))?.triple))
}

fn monodromy(cfg: &RunConfig) -> Vec<Case> {
    let mut out = Vec::new();
    for (k, mu) in [(0.0, 0.3), (0.25, 0.1), (-0.15, 0.2)] {
        let name = format!("dual kappa={k} mu={mu}");
        let r = (|| {
            let (d, m) = whittaker_stack(k, mu)?;
            let rep = verify_dual_monodromy(&d, &m, &default_t_grid(), cfg.tol)?;
            let variants: Vec<_> = rep.mon2.iter().map(|v| json!({ "variant": v.relation, "max_residual": v.max_residual })).collect();
            let detail = json!({ "mon1": rep.mon1.max_residual, "mon2": variants, "satisfied_by": rep.satisfied_by });
            Ok(Case { suite: "monodromy".into(), name: name.clone(), residual: Some(rep.max_residual), pass: rep.pass, detail })
        })();
        out.push(collect("monodromy", name, r));
    }
    for (k, mu) in [(0.0, 0.3), (0.3, 0.1)] {
        let name = format!("zeta-plane kappa={k} mu={mu}");
        let r = (|| {
            let (d, m) = whittaker_stack(k, mu)?;
            let w = d.whittaker.expect("closed form");
            let rep = verify_mw_system(&w, &m, &[3.0, 4.0, 5.0, 6.0], cfg.tol)?;
            let detail = json!({ "slope": rep.slope1 });
            Ok(Case { suite: "monodromy".into(), name: name.clone(), residual: Some(rep.max_residual), pass: rep.pass, detail })
        })();
        out.push(collect("monodromy", name, r));
    }
    out
}

fn eg_ltf(cfg: &RunConfig) -> Vec<Case> {
    let mut out = Vec::new();
    for (k, mu) in [(0.3, 0.1), (0.25, 0.1), (-0.15, 0.2), (0.1, 0.44)] {
        let name = format!("kappa={k} mu={mu}");
        let r = (|| {
            let (d, m) = whittaker_stack(k, mu)?;
            let rep = verify_eg_ltf(&d, &m, &default_t_grid(), cfg.tol)?;
            let detail = json!({
                "eg1": rep.eg1_corrected.max_residual,
                "eg1_printed_phase": rep.eg1_printed.max_residual,
                "eg2": rep.eg2.max_residual,
                "warnings": rep.warnings,
            });
            Ok(Case { suite: "eg-ltf".into(), name: name.clone(), residual: Some(rep.max_residual), pass: rep.pass, detail })
        })();
        out.push(collect("eg-ltf", name, r));
    }
    out
}

fn goursat(cfg: &RunConfig) -> Vec<Case> {
    let mut out = Vec::new();
    for k in [0.0, 0.5] {
        for mu in [0.1, 0.3] {
            let name = format!("kappa={k} mu={mu}");
            let r = (|| {
                let (d, m) = whittaker_stack(k, mu)?;
                let rep = verify_goursat_ltf(&d, &m, &default_goursat_grid(), cfg.tol)?;
                let detail = json!({
                    "c1": rep.c1_fit,
                    "c2": rep.c2_fit,
                    "c_exact": rep.c_exact,
                    "radius": [rep.psi1.radius, rep.psi2.radius],
                    "pole_order": rep.pole_order,
                    "diagnostics": rep.diagnostics,
                });
                Ok(Case { suite: "goursat".into(), name: name.clone(), residual: Some(rep.residual), pass: rep.pass, detail })
            })();
            out.push(collect("goursat", name, r));
        }
    }
    out
}
