//! Perturbed Whittaker equations and the monodromy of their Borel duals.
//!
//! The normal form is
//! `u'' = (1/4 - kappa/zeta + (mu^2 - 1/4)/zeta^2 + sum_k beta_k / zeta^{k+3}) u`
//! with formal solutions `u_1 = e^{-zeta/2} zeta^kappa P_1`, `u_2 = e^{zeta/2} zeta^{-kappa} P_2`.
//! The Borel duals `F_j` of the phase-amplitudes `P_j` satisfy monodromic
//! relations whose constants `(T_1, T_2, kappa)` are computed here in closed form
//! for the unperturbed equation.
//!
//! Points on logarithmic Riemann surfaces are passed as `(rho, theta)` with `theta`
//! a real angle, never reduced mod `2 pi`.

mod ode;
mod relations;

pub use ode::{
    continue_pwde, mon1_laplace_commutation, verify_mw_system, verify_mw_with, whittaker_p1, whittaker_p2, MwPoint,
    MwReport, MwStatus,
};
pub use relations::{
    default_goursat_grid, default_t_grid, verify_dual_monodromy, verify_eg_ltf, verify_goursat_ltf, DualMonodromyReport, EgReport,
    GoursatReport, PointResidual, PsiAnalysis, RelationResidual,
};

use crate::error::{Error, Result};
use crate::series::PowerSeries;
use crate::special::connection::{connection_coefficient_normalized, LoopSign};
use crate::special::continuation::{HypOde, Jet};
use crate::special::gamma::rgamma;
use crate::special::hyp2f1::{hyp2f1_arc, hyp2f1_jet, hyp2f1_reg, Hyp2F1Params};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

type C = Complex64;

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

/// `(r e^{i phi})^a` on the logarithmic surface.
pub(crate) fn zpow(r: f64, phi: f64, a: C) -> C {
    (a * C::new(r.ln(), phi)).exp()
}

/// Largest number of phase-amplitude coefficients computed (they grow like `k!`).
pub const MAX_PHASE_TERMS: usize = 64;

/// Parameters of the normal form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PWDEParams {
    pub kappa: C,
    pub mu: C,
    pub beta: Vec<C>,
    /// The perturbation series converges for `|zeta| > beta_radius`.
    pub beta_radius: f64,
}

impl PWDEParams {
    pub fn new(kappa: C, mu: C, beta: Vec<C>, beta_radius: f64) -> Result<Self> {
        if !(beta_radius >= 0.0 && beta_radius.is_finite()) {
            return Err(Error::domain(format!("beta radius {beta_radius} must be finite and >= 0")));
        }
        if !kappa.re.is_finite() || !kappa.im.is_finite() || !mu.re.is_finite() || !mu.im.is_finite() {
            return Err(Error::domain("kappa and mu must be finite"));
        }
        Ok(PWDEParams { kappa, mu, beta, beta_radius })
    }

    /// The unperturbed Whittaker equation.
    pub fn whittaker(kappa: C, mu: C) -> Self {
        PWDEParams { kappa, mu, beta: Vec::new(), beta_radius: 0.0 }
    }

    pub fn is_whittaker(&self) -> bool {
        self.beta.iter().all(|b| b.norm() < 1e-14)
    }

    /// Coefficients `q_j` of the right-hand side `q(zeta) = sum_j q_j zeta^{-j}`.
    pub fn q_coeffs(&self) -> Vec<C> {
        let mut q = vec![c(0.25), -self.kappa, self.mu * self.mu - 0.25];
        q.extend(self.beta.iter().copied());
        q
    }

    /// `(a_1, b_1, 1)` and `(a_2, b_2, 1)`: `a_1, b_1 = 1/2 - kappa -+ mu`, `a_2, b_2 = 1/2 + kappa -+ mu`.
    pub fn hyp_params(&self) -> (Hyp2F1Params, Hyp2F1Params) {
        whittaker_hyp_params(self.kappa, self.mu)
    }
}

pub(crate) fn whittaker_hyp_params(kappa: C, mu: C) -> (Hyp2F1Params, Hyp2F1Params) {
    let h = c(0.5);
    (
        Hyp2F1Params::new(h - kappa - mu, h - kappa + mu, c(1.0)),
        Hyp2F1Params::new(h + kappa - mu, h + kappa + mu, c(1.0)),
    )
}

/// Result of reducing `u'' + a u' + b u = 0` to the normal form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalizedOde {
    pub params: PWDEParams,
    /// `lambda` in `zeta_old = lambda zeta_new`; `lambda = 1/sqrt(a_0^2 - 4 b_0)`.
    pub scale: C,
    /// Set when every `|beta_k| < 1e-14`.
    pub pure_whittaker: bool,
}

/// Coefficients of `Q = a^2/4 + a'/2 - b` in powers of `1/zeta`.
fn q_of(a: &PowerSeries, b: &PowerSeries, n: usize) -> Vec<C> {
    (0..n)
        .map(|j| {
            let mut aa = c(0.0);
            for i in 0..=j {
                aa += a.coeff(i) * a.coeff(j - i);
            }
            // d/dzeta zeta^{-(j-1)} = -(j-1) zeta^{-j}
            let da = if j >= 1 { -((j - 1) as f64) * a.coeff(j - 1) } else { c(0.0) };
            aa / 4.0 + da / 2.0 - b.coeff(j)
        })
        .collect()
}

/// Reduces `u'' + a(zeta) u' + b(zeta) u = 0`, with `a`, `b` given as series in
/// `1/zeta`, to the normal form by `u = w exp(-1/2 int a)` and `zeta = lambda xi`.
pub fn normalize_ode(a: &PowerSeries, b: &PowerSeries) -> Result<NormalizedOde> {
    // a^2 has degree 2(len a - 1)
    let n = (2 * a.len()).max(b.len()).max(3);
    let disc = a.coeff(0) * a.coeff(0) - 4.0 * b.coeff(0);
    let size = a.coeff(0).norm_sqr() + b.coeff(0).norm() + 1e-300;
    if disc.norm() <= 1e-14 * size {
        return Err(Error::pre("a_0^2 - 4 b_0 = 0: equal characteristic roots are not supported"));
    }
    let q = q_of(a, b, n + 1);
    let lambda = 1.0 / disc.sqrt();
    let kappa = -lambda * q[1];
    let mu = (q[2] + 0.25).sqrt();
    let mut beta = Vec::new();
    let mut lp = lambda;
    for k in 0..n.saturating_sub(2) {
        // beta_k = lambda^{-(k+1)} Q_{k+3}
        let qk = if k + 3 < q.len() { q[k + 3] } else { c(0.0) };
        beta.push(qk / lp);
        lp *= lambda;
    }
    while beta.last().is_some_and(|b| b.norm() == 0.0) {
        beta.pop();
    }
    let beta_radius = beta
        .iter()
        .enumerate()
        .map(|(k, b)| b.norm().powf(1.0 / (k as f64 + 1.0)))
        .fold(0.0, f64::max);
    let params = PWDEParams::new(kappa, mu, beta, beta_radius)?;
    let pure_whittaker = params.is_whittaker();
    Ok(NormalizedOde { params, scale: lambda, pure_whittaker })
}

/// Recovers `b` (first `len` coefficients) from the normal form and the original `a`.
pub fn denormalize_b(n: &NormalizedOde, a: &PowerSeries, len: usize) -> Result<PowerSeries> {
    let p = &n.params;
    let l = n.scale;
    let mut q = vec![c(0.0); len.max(3)];
    q[0] = 1.0 / (4.0 * l * l);
    q[1] = -p.kappa / l;
    q[2] = p.mu * p.mu - 0.25;
    let mut lp = l;
    for (k, b) in p.beta.iter().enumerate() {
        if k + 3 < q.len() {
            q[k + 3] = *b * lp;
        }
        lp *= l;
    }
    let zero = PowerSeries::new(vec![c(0.0)])?;
    let qa = q_of(a, &zero, q.len());
    PowerSeries::new((0..len).map(|j| qa[j] - q[j]).collect())
}

/// Largest coefficient difference between `b` and its reconstruction from the normal form.
pub fn roundtrip_residual(a: &PowerSeries, b: &PowerSeries) -> Result<f64> {
    let n = normalize_ode(a, b)?;
    let len = a.len().max(b.len());
    let back = denormalize_b(&n, a, len)?;
    Ok((0..len).map(|j| (back.coeff(j) - b.coeff(j)).norm()).fold(0.0, f64::max))
}

/// Asymptotic coefficients `P_j(zeta) ~ sum_m c_{j,m} zeta^{-m}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseAmplitudePair {
    pub c1: Vec<C>,
    pub c2: Vec<C>,
    pub params: PWDEParams,
}

/// First `n` coefficients of the formal phase-amplitudes, from
/// `(m+1) c1_{m+1} = -[(m+1/2-kappa)^2 - mu^2] c1_m + sum_{k<m} beta_k c1_{m-1-k}` and
/// `(m+1) c2_{m+1} = [(m+1/2+kappa)^2 - mu^2] c2_m - sum_{k<m} beta_k c2_{m-1-k}`.
pub fn phase_amplitude_recurrence(p: &PWDEParams, n: usize) -> Result<PhaseAmplitudePair> {
    if n > MAX_PHASE_TERMS {
        return Err(Error::pre(format!("at most {MAX_PHASE_TERMS} phase-amplitude terms (asked for {n})")));
    }
    let (k, mu2) = (p.kappa, p.mu * p.mu);
    let beta = |i: usize| p.beta.get(i).copied().unwrap_or(c(0.0));
    let mut c1 = Vec::with_capacity(n);
    let mut c2 = Vec::with_capacity(n);
    if n > 0 {
        c1.push(c(1.0));
        c2.push(c(1.0));
    }
    for m in 0..n.saturating_sub(1) {
        let mf = m as f64;
        let (mut s1, mut s2) = (c(0.0), c(0.0));
        for i in 0..m {
            s1 += beta(i) * c1[m - 1 - i];
            s2 += beta(i) * c2[m - 1 - i];
        }
        let e1 = (mf + 0.5 - k) * (mf + 0.5 - k) - mu2;
        let e2 = (mf + 0.5 + k) * (mf + 0.5 + k) - mu2;
        c1.push((-e1 * c1[m] + s1) / (mf + 1.0));
        c2.push((e2 * c2[m] - s2) / (mf + 1.0));
    }
    Ok(PhaseAmplitudePair { c1, c2, params: p.clone() })
}

/// Closed-form duals of the unperturbed equation:
/// `F_1(x) = 2F1(a_1, b_1; 1; -x)`, `F_2(x) = 2F1(a_2, b_2; 1; x)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WhittakerDual {
    pub kappa: C,
    pub mu: C,
}

impl WhittakerDual {
    pub fn new(kappa: C, mu: C) -> Self {
        WhittakerDual { kappa, mu }
    }

    pub fn params(&self) -> (Hyp2F1Params, Hyp2F1Params) {
        whittaker_hyp_params(self.kappa, self.mu)
    }

    /// `F_1` at `rho e^{i theta}`; the principal sheet is `|theta| < pi`.
    pub fn f1(&self, rho: f64, theta: f64) -> Result<C> {
        let (p, _) = self.params();
        hyp2f1_arc(p.a, p.b, p.c, rho, theta)
    }

    /// `F_2` at `rho e^{i theta}`; `F_2(x) = 2F1(a_2,b_2;1;-(x e^{pi i}))`, principal for `-2 pi < theta < 0`.
    pub fn f2(&self, rho: f64, theta: f64) -> Result<C> {
        let (_, p) = self.params();
        hyp2f1_arc(p.a, p.b, p.c, rho, theta + PI)
    }

    /// `I_alpha{F_1}(x) = 2F1(a_1,b_1;1+alpha;-x)/Gamma(1+alpha)`, principal branch.
    pub fn i_f1(&self, alpha: C, x: C) -> Result<C> {
        let (p, _) = self.params();
        hyp2f1_reg(p.a, p.b, 1.0 + alpha, -x)
    }

    /// `I_alpha{F_2}(x) = 2F1(a_2,b_2;1+alpha;x)/Gamma(1+alpha)`, principal branch.
    pub fn i_f2(&self, alpha: C, x: C) -> Result<C> {
        let (_, p) = self.params();
        hyp2f1_reg(p.a, p.b, 1.0 + alpha, x)
    }

    /// `I_alpha{F_1}` continued from `1 + |t| e^{-i 0}` (lower lip of its cut, seen
    /// as `z = -x`) along the circle `z = 1 + |t| e^{i phi}` to `phi = arg t`.
    /// This is `I_alpha{F_1}(t e^{pi i} - 1)` with the argument moved continuously
    /// from real `t > 1`.
    pub fn i_f1_around_one(&self, alpha: C, t: C) -> Result<C> {
        let (p, _) = self.params();
        let cc = 1.0 + alpha;
        let rho = t.norm();
        if (rho - 1.0).abs() < 1e-6 {
            return Err(Error::domain("circle about z = 1 passes through z = 0"));
        }
        let delta = 0.05;
        let z0 = c(1.0) + C::from_polar(rho, -delta);
        let (w, dw) = hyp2f1_jet(p.a, p.b, cc, z0)?;
        let ode = HypOde::new(p.a, p.b, cc);
        let j = ode.arc(Jet { z: z0, w, dw }, c(1.0), rho, -delta, t.arg())?;
        Ok(j.w * rgamma(cc))
    }

    /// Taylor coefficients of `F_1` and `F_2` at the origin.
    pub fn series(&self, n: usize) -> Result<(PowerSeries, PowerSeries)> {
        let (p1, p2) = self.params();
        let make = |p: Hyp2F1Params, sign: f64| {
            let mut v = Vec::with_capacity(n);
            let mut term = c(1.0);
            for k in 0..n {
                v.push(term);
                let kf = k as f64;
                term *= sign * (p.a + kf) * (p.b + kf) / ((kf + 1.0) * (kf + 1.0));
            }
            v
        };
        let radius = |p: Hyp2F1Params| if poly(p) { None } else { Some(1.0) };
        Ok((
            PowerSeries::new(make(p1, -1.0))?.with_hints(radius(p1), Some(0.0)),
            PowerSeries::new(make(p2, 1.0))?.with_hints(radius(p2), Some(0.0)),
        ))
    }
}

fn poly(p: Hyp2F1Params) -> bool {
    crate::special::gamma::nonpositive_integer(p.a).is_some() || crate::special::gamma::nonpositive_integer(p.b).is_some()
}

/// Borel duals `F_j(t) = sum_k c_{j,k} t^k / k!`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualPair {
    pub f1: PowerSeries,
    pub f2: PowerSeries,
    /// Attached when the series coincide with the hypergeometric closed forms.
    pub whittaker: Option<WhittakerDual>,
}

impl DualPair {
    /// A pair without closed form (evaluated by its series only).
    pub fn from_series(f1: PowerSeries, f2: PowerSeries) -> Self {
        DualPair { f1, f2, whittaker: None }
    }

    pub fn whittaker(kappa: C, mu: C, n: usize) -> Result<Self> {
        let w = WhittakerDual::new(kappa, mu);
        let (f1, f2) = w.series(n)?;
        Ok(DualPair { f1, f2, whittaker: Some(w) })
    }
}

/// Relative agreement required before the closed form is attached to a dual pair.
const CLOSED_FORM_TOL: f64 = 1e-10;

/// `f_{j,k} = c_{j,k} / k!`. For an unperturbed equation the closed forms are
/// attached after checking the first 16 coefficients against the hypergeometric series.
pub fn borel_duals(pa: &PhaseAmplitudePair) -> Result<DualPair> {
    let borel = |cs: &[C]| {
        let mut fact = 1.0;
        let v: Vec<C> = cs
            .iter()
            .enumerate()
            .map(|(k, ck)| {
                if k > 0 {
                    fact *= k as f64;
                }
                *ck / fact
            })
            .collect();
        if v.is_empty() {
            vec![c(0.0)]
        } else {
            v
        }
    };
    let f1 = PowerSeries::new(borel(&pa.c1))?;
    let f2 = PowerSeries::new(borel(&pa.c2))?;
    let mut pair = DualPair::from_series(f1, f2);
    if pa.params.is_whittaker() {
        let w = WhittakerDual::new(pa.params.kappa, pa.params.mu);
        let m = pa.c1.len().min(16);
        let (g1, g2) = w.series(m)?;
        let close = |a: &PowerSeries, b: &PowerSeries| {
            (0..m).all(|k| (a.coeff(k) - b.coeff(k)).norm() <= CLOSED_FORM_TOL * b.coeff(k).norm().max(1.0))
        };
        if close(&pair.f1, &g1) && close(&pair.f2, &g2) {
            let (p1, p2) = w.params();
            pair.f1 = pair.f1.clone().with_hints(if poly(p1) { None } else { Some(1.0) }, Some(0.0));
            pair.f2 = pair.f2.clone().with_hints(if poly(p2) { None } else { Some(1.0) }, Some(0.0));
            pair.whittaker = Some(w);
        }
    }
    Ok(pair)
}

/// The constants of the monodromic systems.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonodromyTriple {
    pub t1: C,
    pub t2: C,
    pub kappa: C,
}

/// Stokes multipliers of the Whittaker equation and how they were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StokesMultipliers {
    pub triple: MonodromyTriple,
    /// `2 pi i / (Gamma(a_j) Gamma(b_j))`: the cut jump coefficient of `2F1(a_j,b_j;1;.)`.
    pub tau1: C,
    pub tau2: C,
    /// `2 kappa` is an integer: the Euler-Goursat (logarithmic) pathway applies.
    pub goursat: bool,
    pub t1_vanishes: bool,
    pub t2_vanishes: bool,
}

/// `T_1 = tau_1`, `T_2 = tau_2 e^{-2 pi i kappa}`, with `tau_j` from the connection
/// coefficients of `2F1(a_j, b_j; 1; .)` (clockwise loop, `tau = T^- e^{pi i s}`).
pub fn stokes_multipliers_whittaker(kappa: C, mu: C) -> Result<StokesMultipliers> {
    let (p1, p2) = whittaker_hyp_params(kappa, mu);
    let tau = |p: &Hyp2F1Params| -> Result<C> {
        let s = p.excess();
        Ok(connection_coefficient_normalized(p, LoopSign::Minus)? * (C::new(0.0, PI) * s).exp())
    };
    let tau1 = tau(&p1)?;
    let tau2 = tau(&p2)?;
    let t2 = tau2 * (C::new(0.0, -2.0 * PI) * kappa).exp();
    let two_k = 2.0 * kappa;
    let goursat = two_k.im.abs() < 1e-12 && (two_k.re - two_k.re.round()).abs() < 1e-12;
    let small = 1e-14 * 2.0 * PI;
    Ok(StokesMultipliers {
        triple: MonodromyTriple { t1: tau1, t2, kappa },
        tau1,
        tau2,
        goursat,
        t1_vanishes: tau1.norm() < small,
        t2_vanishes: tau2.norm() < small,
    })
}
