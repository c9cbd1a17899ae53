//! Connection coefficients and monodromic jumps of `2F1` around `z = 1`.
//!
//! With `s = c - a - b`, continuing `2F1(a,b;c;z)` once around `z = 1`
//! (`1 - z* = (1 - z) e^{+-2 pi i}`) adds
//! `T^+-(a,b,c) (1-z)^s 2F1(c-a, c-b; s+1; 1-z)` where
//! `T^+- = -+ 2 pi i e^{+- pi i s} Gamma(c) / (Gamma(a) Gamma(b) Gamma(s+1))`.

use super::continuation::{HypOde, Jet};
use super::gamma::{gamma, rgamma};
use super::hyp2f1::{hyp2f1, hyp2f1_jet, hyp2f1_reg, hyp2f1_reg_side, hyp2f1_side, Hyp2F1Params, Side, INTEGER_EPS};
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

type C = Complex64;

/// Direction of the loop around `z = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LoopSign {
    /// counterclockwise, `1 - z* = (1-z) e^{2 pi i}`
    Plus,
    /// clockwise, `1 - z* = (1-z) e^{-2 pi i}`
    Minus,
}

impl LoopSign {
    pub fn sign(self) -> f64 {
        match self {
            LoopSign::Plus => 1.0,
            LoopSign::Minus => -1.0,
        }
    }
}

fn i2pi() -> C {
    C::new(0.0, 2.0 * PI)
}

/// `Gamma(s+1) T^+-(a,b,c)`: finite for every `s`, including negative integers.
pub fn connection_coefficient_normalized(p: &Hyp2F1Params, sign: LoopSign) -> Result<C> {
    let s = p.excess();
    let sg = sign.sign();
    let phase = (C::new(0.0, sg * PI) * s).exp();
    Ok(-sg * i2pi() * phase * gamma(p.c)? * rgamma(p.a) * rgamma(p.b))
}

/// `T^+-(a,b,c)`. Vanishes when `a` or `b` is a non-positive integer (no branch point).
pub fn connection_coefficient(p: &Hyp2F1Params, sign: LoopSign) -> Result<C> {
    Ok(connection_coefficient_normalized(p, sign)? * rgamma(p.excess() + 1.0))
}

/// Predicted jump `2F1(z*) - 2F1(z)` for one loop around `z = 1`, `z` off the cut.
///
/// For real `z < 0` the local solution at 1 depends on how the base point is joined
/// to 1; the path used here (and by [`continued_jump_2f1`]) passes above the origin.
pub fn monodromic_jump_2f1(p: &Hyp2F1Params, z: C, sign: LoopSign) -> Result<C> {
    let s = p.excess();
    let t_hat = connection_coefficient_normalized(p, sign)?;
    if t_hat == C::new(0.0, 0.0) {
        return Ok(t_hat);
    }
    let w = 1.0 - z;
    let g = if z.im == 0.0 && z.re < 0.0 {
        hyp2f1_reg_side(p.c - p.a, p.c - p.b, s + 1.0, w, Side::Lower)?
    } else {
        hyp2f1_reg(p.c - p.a, p.c - p.b, s + 1.0, w)?
    };
    Ok(t_hat * w.powc(s) * g)
}

/// Measured jump: the principal branch continued once around `z = 1` by the ODE,
/// minus the principal value. Independent of the connection formula.
pub fn continued_jump_2f1(p: &Hyp2F1Params, z: C, sign: LoopSign) -> Result<C> {
    let d = z - 1.0;
    if d.norm() < 1e-12 {
        return Err(Error::domain("loop base point at z = 1"));
    }
    let (w, dw) = hyp2f1_jet(p.a, p.b, p.c, z)?;
    let ode = HypOde::new(p.a, p.b, p.c);
    let rho = d.norm().min(0.5);
    let th = d.arg();
    let near = C::new(1.0, 0.0) + C::from_polar(rho, th);
    // out and back along the same path, detouring around the origin if needed
    let mut out = detour(z, near);
    out.push(near);
    let j = ode.polyline(Jet { z, w, dw }, &out)?;
    let j = ode.arc(j, C::new(1.0, 0.0), rho, th, th + sign.sign() * 2.0 * PI)?;
    let mut back: Vec<C> = out.iter().rev().skip(1).copied().collect();
    back.push(z);
    let j = ode.polyline(j, &back)?;
    Ok(j.w - w)
}

/// Waypoints that keep the segment `p -> q` away from the singular point 0, passing
/// on the side of `p` (above for real `p`) so the path does not cross `(-inf, 0)`.
fn detour(p: C, q: C) -> Vec<C> {
    let d = q - p;
    let len = d.norm();
    if len == 0.0 {
        return vec![];
    }
    let u = d / len;
    let proj = (-p * u.conj()).re;
    let dist = (p + u * proj).norm();
    if proj > 0.0 && proj < len && dist < 0.5 * p.norm().min(q.norm()).max(1e-3) {
        let mut off = C::new(0.0, 1.0) * u * (0.5 * len.max(0.5));
        if (off.im < 0.0) != (p.im < 0.0) {
            off = -off;
        }
        vec![p + u * proj + off]
    } else {
        vec![]
    }
}

/// Difference of the boundary values across the cut at `x > 1`: `F(x+i0) - F(x-i0)`.
pub fn cut_jump_measured(p: &Hyp2F1Params, x: f64) -> Result<C> {
    let z = C::new(x, 0.0);
    Ok(hyp2f1_side(p.a, p.b, p.c, z, Side::Upper)? - hyp2f1_side(p.a, p.b, p.c, z, Side::Lower)?)
}

/// Predicted cut jump, `2 pi i Gamma(c)/(Gamma(a)Gamma(b)) (x-1)^s 2F1~(c-a, c-b; s+1; 1-x)`.
///
/// It equals the loop jump taken from the lower lip with [`LoopSign::Minus`]:
/// continuing `x - i0` clockwise around 1 lands on `x + i0`.
pub fn cut_jump_predicted(p: &Hyp2F1Params, x: f64) -> Result<C> {
    let s = p.excess();
    let pre = i2pi() * gamma(p.c)? * rgamma(p.a) * rgamma(p.b);
    let g = hyp2f1_reg(p.c - p.a, p.c - p.b, s + 1.0, C::new(1.0 - x, 0.0))?;
    Ok(pre * C::new(x - 1.0, 0.0).powc(s) * g)
}

/// Residual of Euler's linear transformation formula at `t`.
///
/// The left side is computed without the transformation (series for `|t| <= 0.7`,
/// ODE continuation otherwise); the right side uses series at `1 - t`.
pub fn euler_ltf_check(p: &Hyp2F1Params, t: C) -> Result<f64> {
    let (a, b, c) = (p.a, p.b, p.c);
    let s = p.excess();
    let r = s.re.round();
    if (s.re - r).abs() < INTEGER_EPS && s.im.abs() < INTEGER_EPS {
        return Err(Error::domain(format!("c-a-b = {s} is (nearly) an integer; use the logarithmic form")));
    }
    let lhs = if t.norm() <= 0.7 {
        hyp2f1(a, b, c, t)?
    } else {
        continued_principal(p, t)?
    };
    let gc = gamma(c)?;
    let big_a = gc * gamma(-s)? * rgamma(a) * rgamma(b);
    let big_b = gc * gamma(s)? * rgamma(c - a) * rgamma(c - b);
    let w = 1.0 - t;
    let mut rhs = C::new(0.0, 0.0);
    if big_a != C::new(0.0, 0.0) {
        rhs += big_a * w.powc(s) * hyp2f1(c - a, c - b, s + 1.0, w)?;
    }
    if big_b != C::new(0.0, 0.0) {
        rhs += big_b * hyp2f1(a, b, 1.0 - s, w)?;
    }
    Ok((lhs - rhs).norm())
}

/// Principal value by ODE continuation along the ray from the origin.
pub fn continued_principal(p: &Hyp2F1Params, z: C) -> Result<C> {
    let start = if z.norm() > 0.5 { z * (0.5 / z.norm()) } else { return hyp2f1(p.a, p.b, p.c, z) };
    let j = super::hyp2f1::jet_near_origin(p.a, p.b, p.c, start)?;
    Ok(HypOde::new(p.a, p.b, p.c).segment(j, z)?.w)
}

/// How `t*` is read in the monodromic relation of `2F1(1,1;alpha+1;-t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StarConvention {
    /// `1 + t* = (1 + t) e^{2 pi i}`: a loop of `-t` around 1.
    Natural,
    /// `t* = 1 - (1 + t) e^{2 pi i}`: the argument `-t*` runs around `-1`, starting at `t`.
    Printed,
}

/// Measured `2F1(1,1;alpha+1;-t*) - 2F1(1,1;alpha+1;-t)` under the chosen convention.
pub fn geometric_alpha_jump(alpha: C, t: C, conv: StarConvention) -> Result<C> {
    let one = C::new(1.0, 0.0);
    let p = Hyp2F1Params::new(one, one, alpha + 1.0);
    match conv {
        StarConvention::Natural => continued_jump_2f1(&p, -t, LoopSign::Plus),
        StarConvention::Printed => {
            let (w, dw) = hyp2f1_jet(p.a, p.b, p.c, t)?;
            let rho = (one + t).norm();
            let th = (one + t).arg();
            let j = HypOde::new(p.a, p.b, p.c).arc(Jet { z: t, w, dw }, -one, rho, th, th + 2.0 * PI)?;
            Ok(j.w - hyp2f1(p.a, p.b, p.c, -t)?)
        }
    }
}

/// The right-hand side `2 pi i e^{pi i alpha} / (1 + t)` as printed.
pub fn geometric_alpha_printed_rhs(alpha: C, t: C) -> C {
    i2pi() * (C::new(0.0, PI) * alpha).exp() / (1.0 + t)
}

/// Jump predicted by the connection formula for the natural convention:
/// `2 pi i alpha e^{i pi alpha} (1+t)^{alpha-1} (-t)^{-alpha}`.
pub fn geometric_alpha_predicted(alpha: C, t: C) -> Result<C> {
    let one = C::new(1.0, 0.0);
    monodromic_jump_2f1(&Hyp2F1Params::new(one, one, alpha + 1.0), -t, LoopSign::Plus)
}
