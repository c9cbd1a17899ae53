//! The phase-amplitudes in the `zeta` plane: Laplace integrals of the duals,
//! Taylor continuation of the normal form, and the monodromic system
//! `P_1(zeta e^{pi i}) - P_1(zeta e^{-pi i}) = T_1 e^{-zeta} zeta^{-2 kappa} P_2(zeta e^{pi i})`,
//! `P_2(zeta e^{pi i}) - P_2(zeta e^{-pi i}) = T_2 e^{zeta} zeta^{2 kappa} P_1(zeta e^{-pi i})`.

use super::{c, zpow, MonodromyTriple, PWDEParams, WhittakerDual, C};
use crate::error::{Error, Result};
use crate::laplace::{laplace_integral, LaplaceOptions};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const TAYLOR_TERMS: usize = 90;

/// One Taylor step of `u'' = q(zeta) u` from `z0` by `h`.
fn step(q: &[C], z0: C, u: C, du: C, h: C) -> Result<(C, C)> {
    let inv = 1.0 / z0;
    let mut qt = vec![c(0.0); TAYLOR_TERMS];
    let mut zp = c(1.0);
    for (j, qj) in q.iter().enumerate() {
        // (z0 + h)^{-j} = z0^{-j} sum_n binom(-j, n) (h/z0)^n
        let mut term = *qj * zp;
        for (n, slot) in qt.iter_mut().enumerate() {
            *slot += term;
            term *= -((j + n) as f64) / (n as f64 + 1.0) * inv;
        }
        zp *= inv;
    }
    let mut uc = Vec::with_capacity(TAYLOR_TERMS);
    uc.push(u);
    uc.push(du);
    for n in 0..TAYLOR_TERMS - 2 {
        let s: C = (0..=n).map(|i| qt[i] * uc[n - i]).sum();
        uc.push(s / ((n + 1) as f64 * (n + 2) as f64));
    }
    let mut val = c(0.0);
    let mut der = c(0.0);
    let mut hp = c(1.0); // h^n
    for (n, un) in uc.iter().enumerate() {
        val += *un * hp;
        if n + 1 < uc.len() {
            der += (n + 1) as f64 * uc[n + 1] * hp;
        }
        hp *= h;
    }
    let tail = uc[TAYLOR_TERMS - 1].norm() * h.norm().powi(TAYLOR_TERMS as i32 - 1);
    if !(tail <= 1e-15 * (val.norm() + der.norm() * h.norm() + 1e-300)) {
        return Err(Error::nonconv(format!("Taylor step of the normal form from {z0} did not converge")));
    }
    Ok((val, der))
}

/// Continues a solution `(u, u')` of the normal form along `zeta = r e^{i s}`,
/// `s` from `th0` to `th1`. Requires `r > beta_radius`.
pub fn continue_pwde(p: &PWDEParams, r: f64, th0: f64, th1: f64, u: C, du: C) -> Result<(C, C)> {
    let room = r - p.beta_radius;
    if !(room > 0.0) {
        return Err(Error::domain(format!("circle |zeta| = {r} is inside the perturbation radius {}", p.beta_radius)));
    }
    let q = p.q_coeffs();
    let ds_max = (0.35 * room / r).min(0.25);
    let dir = (th1 - th0).signum();
    let (mut s, mut u, mut du) = (th0, u, du);
    while (th1 - s) * dir > 0.0 {
        let s_next = if (th1 - s).abs() <= ds_max { th1 } else { s + dir * ds_max };
        let z0 = C::from_polar(r, s);
        let z1 = C::from_polar(r, s_next);
        let (nu, ndu) = step(&q, z0, u, du, z1 - z0)?;
        u = nu;
        du = ndu;
        s = s_next;
    }
    Ok((u, du))
}

/// `int_0^inf e^{-r s} f(s) ds` and `int_0^inf s e^{-r s} f(s) ds`, with a break at `s = 1`.
fn laplace_moments<F>(f: &F, r: f64, tol: f64) -> Result<(C, C)>
where
    F: Fn(f64) -> Result<C>,
{
    let mut opts = LaplaceOptions::new(tol);
    opts.breakpoints = vec![1.0];
    let g = |s: C| f(s.re);
    let m0 = laplace_integral(&g, 0.0, c(0.0), c(r), &opts)?.value;
    let m1 = laplace_integral(&g, 0.0, c(1.0), c(r), &opts)?.value;
    Ok((m0, m1))
}

/// `P(r e^{i phi})` and `P'` from `P = zeta int_0^inf e^{-zeta t} F(t) dt` along `arg t = -phi`.
fn laplace_jet<F>(f: &F, r: f64, phi: f64, tol: f64) -> Result<(C, C)>
where
    F: Fn(f64) -> Result<C>,
{
    let (m0, m1) = laplace_moments(f, r, tol)?;
    let zeta = C::from_polar(r, phi);
    let p = r * m0;
    // P' = P/zeta - zeta int t e^{-zeta t} F dt, and t = s e^{-i phi}
    let dp = p / zeta - C::from_polar(r, -phi) * m1;
    Ok((p, dp))
}

/// `P_1(r e^{i phi})` for the Whittaker equation: the Laplace integral of `F_1` for
/// `|phi| <= pi`, continuation of `u_1 = e^{-zeta/2} zeta^kappa P_1` beyond.
pub fn whittaker_p1(w: &WhittakerDual, r: f64, phi: f64, tol: f64) -> Result<C> {
    let f = |ph: f64| move |s: f64| w.f1(s, -ph);
    if phi.abs() <= PI {
        let (p, _) = laplace_jet(&f(phi), r, phi, tol)?;
        return Ok(p);
    }
    let k = w.kappa;
    let (p, dp) = laplace_jet(&f(0.0), r, 0.0, tol)?;
    let z0 = c(r);
    let e = (-z0 / 2.0).exp() * zpow(r, 0.0, k);
    let u = e * p;
    let du = u * (-0.5 + k / z0) + e * dp;
    let (u1, _) = continue_pwde(&super::PWDEParams::whittaker(k, w.mu), r, 0.0, phi, u, du)?;
    let z1 = C::from_polar(r, phi);
    Ok(u1 * (z1 / 2.0).exp() * zpow(r, phi, -k))
}

/// `P_2(r e^{i phi})`: Laplace integral of `F_2` for `0 <= phi <= 2 pi`, continuation of
/// `u_2 = e^{zeta/2} zeta^{-kappa} P_2` from `phi = pi` beyond.
pub fn whittaker_p2(w: &WhittakerDual, r: f64, phi: f64, tol: f64) -> Result<C> {
    let f = |ph: f64| move |s: f64| w.f2(s, -ph);
    if (0.0..=2.0 * PI).contains(&phi) {
        let (p, _) = laplace_jet(&f(phi), r, phi, tol)?;
        return Ok(p);
    }
    let k = w.kappa;
    let (p, dp) = laplace_jet(&f(PI), r, PI, tol)?;
    let z0 = C::from_polar(r, PI);
    let e = (z0 / 2.0).exp() * zpow(r, PI, -k);
    let u = e * p;
    let du = u * (0.5 - k / z0) + e * dp;
    let (u2, _) = continue_pwde(&super::PWDEParams::whittaker(k, w.mu), r, PI, phi, u, du)?;
    let z1 = C::from_polar(r, phi);
    Ok(u2 * (-z1 / 2.0).exp() * zpow(r, phi, k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MwStatus {
    Pass,
    Fail,
    /// The right side is below the noise of the two-sided evaluation.
    BelowThreshold,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MwPoint {
    pub zeta: f64,
    pub lhs1: C,
    pub rhs1: C,
    pub residual1: f64,
    pub status1: MwStatus,
    pub lhs2: C,
    pub rhs2: C,
    pub residual2: f64,
    pub status2: MwStatus,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MwReport {
    pub points: Vec<MwPoint>,
    /// Least-squares slope of `ln |P_1 jump|` against `zeta` (expected near -1).
    pub slope1: Option<f64>,
    pub max_residual: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Relative size of a right side below which a jump is not measurable.
const MEASURABLE: f64 = 1e-9;

/// Checks both relations with user-supplied evaluators `P_j(r, phi)` on the log surface.
pub fn verify_mw_with<F1, F2>(p1: F1, p2: F2, m: &MonodromyTriple, zetas: &[f64], tol: f64) -> Result<MwReport>
where
    F1: Fn(f64, f64) -> Result<C>,
    F2: Fn(f64, f64) -> Result<C>,
{
    let k = m.kappa;
    let mut points = Vec::new();
    for &r in zetas {
        if !(r > 0.0) {
            return Err(Error::domain(format!("zeta = {r} must be positive")));
        }
        let (p1p, p1m) = (p1(r, PI)?, p1(r, -PI)?);
        let (p2p, p2m) = (p2(r, PI)?, p2(r, -PI)?);
        let lhs1 = p1p - p1m;
        let rhs1 = m.t1 * (-r).exp() * zpow(r, 0.0, -2.0 * k) * p2p;
        let lhs2 = p2p - p2m;
        let rhs2 = m.t2 * r.exp() * zpow(r, 0.0, 2.0 * k) * p1m;
        let judge = |l: C, rr: C, scale: f64| -> (f64, MwStatus) {
            if rr.norm() <= MEASURABLE * scale {
                let res = (l - rr).norm() / scale.max(1e-300);
                let st = if l.norm() <= MEASURABLE * scale { MwStatus::BelowThreshold } else { MwStatus::Fail };
                return (res, st);
            }
            let res = (l - rr).norm() / rr.norm();
            (res, if res <= tol { MwStatus::Pass } else { MwStatus::Fail })
        };
        let (residual1, status1) = judge(lhs1, rhs1, p1p.norm().max(p1m.norm()));
        let (residual2, status2) = judge(lhs2, rhs2, p2p.norm().max(p2m.norm()));
        points.push(MwPoint { zeta: r, lhs1, rhs1, residual1, status1, lhs2, rhs2, residual2, status2 });
    }
    let measured: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.status1 != MwStatus::BelowThreshold && p.lhs1.norm() > 0.0)
        .map(|p| (p.zeta, p.lhs1.norm().ln()))
        .collect();
    let slope1 = if measured.len() >= 2 { Some(slope(&measured)) } else { None };
    let max_residual = points
        .iter()
        .flat_map(|p| [(p.residual1, p.status1), (p.residual2, p.status2)])
        .filter(|(_, s)| *s != MwStatus::BelowThreshold)
        .map(|(r, _)| r)
        .fold(0.0, f64::max);
    let pass = points.iter().all(|p| p.status1 != MwStatus::Fail && p.status2 != MwStatus::Fail);
    Ok(MwReport { points, slope1, max_residual, tol, pass })
}

fn slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// The Whittaker case: `P_1` from Laplace integrals of `F_1` on both lips of its cut,
/// `P_2(zeta e^{-pi i})` by continuing `u_2` in `zeta`.
pub fn verify_mw_system(w: &WhittakerDual, m: &MonodromyTriple, zetas: &[f64], tol: f64) -> Result<MwReport> {
    let quad = 1e-12;
    verify_mw_with(|r, ph| whittaker_p1(w, r, ph, quad), |r, ph| whittaker_p2(w, r, ph, quad), m, zetas, tol)
}

/// Laplace transform of the right side of the first dual relation versus the right
/// side of the first `zeta`-plane relation:
/// `zeta int_1^inf e^{-zeta t} T_1 (t-1)^{2 kappa} I_{2 kappa}{F_2}(1-t) dt` and
/// `T_1 e^{-zeta} zeta^{-2 kappa} P_2(zeta e^{pi i})`. Returns both and the relative difference.
pub fn mon1_laplace_commutation(w: &WhittakerDual, t1: C, zeta: f64, tol: f64) -> Result<(C, C, f64)> {
    let k2 = 2.0 * w.kappa;
    let opts = LaplaceOptions::new(tol);
    let g = |u: C| w.i_f2(k2, -u);
    let lhs = t1 * zeta * (-zeta).exp() * laplace_integral(&g, 0.0, k2, c(zeta), &opts)?.value;
    let p2 = whittaker_p2(w, zeta, PI, tol)?;
    let rhs = t1 * (-zeta).exp() * zpow(zeta, 0.0, -k2) * p2;
    let rel = (lhs - rhs).norm() / rhs.norm().max(1e-300);
    Ok((lhs, rhs, rel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monodromy::stokes_multipliers_whittaker;

    fn r(x: f64) -> C {
        c(x)
    }

    #[test]
    fn ode_step_reproduces_exponential() {
        // q = 1/4: u = e^{zeta/2}
        let p = PWDEParams::new(r(0.0), r(0.5), vec![], 0.0).unwrap();
        let z0 = c(3.0);
        let (u, du) = continue_pwde(&p, 3.0, 0.0, 2.0, (z0 / 2.0).exp(), (z0 / 2.0).exp() / 2.0).unwrap();
        let z1 = C::from_polar(3.0, 2.0);
        assert!((u - (z1 / 2.0).exp()).norm() < 1e-12);
        assert!((du - (z1 / 2.0).exp() / 2.0).norm() < 1e-12);
    }

    #[test]
    fn laplace_and_ode_continuations_agree() {
        let w = WhittakerDual::new(r(0.3), r(0.1));
        let tol = 1e-12;
        // P_1 at phi = 0.9 by its Laplace integral and by continuing u_1 from phi = 0
        let direct = whittaker_p1(&w, 4.0, 0.9, tol).unwrap();
        let k = w.kappa;
        let f = |s: f64| w.f1(s, 0.0);
        let (p, dp) = laplace_jet(&f, 4.0, 0.0, tol).unwrap();
        let z0 = c(4.0);
        let e = (-z0 / 2.0).exp() * zpow(4.0, 0.0, k);
        let (u, _) = continue_pwde(&PWDEParams::whittaker(k, w.mu), 4.0, 0.0, 0.9, e * p, e * p * (-0.5 + k / z0) + e * dp).unwrap();
        let z1 = C::from_polar(4.0, 0.9);
        let via_ode = u * (z1 / 2.0).exp() * zpow(4.0, 0.9, -k);
        assert!((direct - via_ode).norm() < 1e-9, "{direct} vs {via_ode}");
    }

    #[test]
    fn mw_whittaker() {
        let (k, m) = (r(0.0), r(0.3));
        let s = stokes_multipliers_whittaker(k, m).unwrap();
        let rep = verify_mw_system(&WhittakerDual::new(k, m), &s.triple, &[3.0, 4.0, 5.0, 6.0], 1e-4).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(rep.max_residual < 1e-6, "{}", rep.max_residual);
        let sl = rep.slope1.unwrap();
        assert!((sl + 1.0).abs() < 0.1, "slope {sl}");
        // non-integer 2 kappa as well
        let (k, m) = (r(0.3), r(0.1));
        let s = stokes_multipliers_whittaker(k, m).unwrap();
        let rep = verify_mw_system(&WhittakerDual::new(k, m), &s.triple, &[3.0, 5.0], 1e-4).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn mw_single_valued() {
        let t = MonodromyTriple { t1: r(0.0), t2: r(0.0), kappa: r(0.0) };
        let p = |rr: f64, ph: f64| Ok(1.0 + 1.0 / C::from_polar(rr, ph));
        let rep = verify_mw_with(p, p, &t, &[3.0, 4.0], 1e-8).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.max_residual, 0.0);
        assert!(rep.points.iter().all(|p| p.status1 == MwStatus::BelowThreshold));
    }

    #[test]
    fn laplace_commutes_with_the_first_relation() {
        let w = WhittakerDual::new(r(0.25), r(0.1));
        let s = stokes_multipliers_whittaker(w.kappa, w.mu).unwrap();
        for z in [2.0, 4.0] {
            let (_, _, rel) = mon1_laplace_commutation(&w, s.triple.t1, z, 1e-11).unwrap();
            assert!(rel < 1e-5, "rel {rel}");
        }
    }
}
