//! Gauss hypergeometric function `2F1(a, b; c; z)`.
//!
//! Region table for the principal branch (cut along `(1, +inf)`):
//!
//! | region                      | method                                         |
//! |-----------------------------|------------------------------------------------|
//! | `|z| <= 0.7`                | direct series                                  |
//! | `|1-z|` smallest            | Euler linear transformation, or Goursat log form when `c-a-b` is an integer |
//! | `|z/(z-1)|` smallest        | Pfaff transformation                           |
//! | `|1-1/z|` smallest          | Euler transformation followed by Pfaff on both terms |
//! | none below 0.8              | ODE continuation along the ray from the origin |
//!
//! The last row covers the neighbourhood of `Re z = 1/2`, `|Im z|` large, which no
//! combination of the `1-z` and `z/(z-1)` maps brings into the unit disc.

use super::continuation::{HypOde, Jet};
use super::gamma::{digamma, gamma, nonpositive_integer, pochhammer, rgamma};
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

type C = Complex64;

const DIRECT_RADIUS: f64 = 0.7;
const TRANSFORM_RADIUS: f64 = 0.8;
/// `c-a-b` closer than this to an integer counts as degenerate.
pub const INTEGER_EPS: f64 = 1e-6;
const EXACT_EPS: f64 = 1e-13;
const SERIES_BUDGET: usize = 20_000;
/// Cancellation factor in a transformed evaluation beyond which the ODE route is used.
const EULER_CANCELLATION: f64 = 1e3;

/// Which side of the cut `(1, +inf)` a boundary value is taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `z + i0`
    Upper,
    /// `z - i0`
    Lower,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Upper => 1.0,
            Side::Lower => -1.0,
        }
    }
}

/// Parameters `(a, b, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyp2F1Params {
    pub a: C,
    pub b: C,
    pub c: C,
}

impl Hyp2F1Params {
    pub fn new(a: C, b: C, c: C) -> Self {
        Hyp2F1Params { a, b, c }
    }
    pub fn real(a: f64, b: f64, c: f64) -> Self {
        Self::new(C::new(a, 0.0), C::new(b, 0.0), C::new(c, 0.0))
    }
    /// `s = c - a - b`
    pub fn excess(&self) -> C {
        self.c - self.a - self.b
    }
    pub fn value(&self, z: C) -> Result<C> {
        hyp2f1(self.a, self.b, self.c, z)
    }
}

fn zero() -> C {
    C::new(0.0, 0.0)
}

fn is_polynomial(a: C, b: C) -> Option<usize> {
    match (nonpositive_integer(a), nonpositive_integer(b)) {
        (Some(m), Some(n)) => Some(m.min(n) as usize),
        (Some(m), None) | (None, Some(m)) => Some(m as usize),
        _ => None,
    }
}

/// Direct summation of the hypergeometric series.
fn series(a: C, b: C, c: C, z: C) -> Result<C> {
    Ok(series_tracked(a, b, c, z)?.0)
}

/// The series together with its largest term.
fn series_tracked(a: C, b: C, c: C, z: C) -> Result<(C, f64)> {
    if let Some(m) = is_polynomial(a, b) {
        let mut term = C::new(1.0, 0.0);
        let mut sum = term;
        let mut big = 1.0f64;
        for n in 0..m {
            let nf = n as f64;
            term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
            sum += term;
            big = big.max(term.norm());
        }
        return Ok((sum, big));
    }
    let mut term = C::new(1.0, 0.0);
    let mut sum = term;
    let mut small = 0;
    let mut big = 1.0f64;
    for n in 0..SERIES_BUDGET {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        big = big.max(term.norm());
        if term.norm() <= 1e-17 * sum.norm() {
            small += 1;
            if small >= 3 {
                return Ok((sum, big));
            }
        } else {
            small = 0;
        }
        if !sum.re.is_finite() {
            break;
        }
    }
    Err(Error::nonconv(format!("2F1 series at z = {z} exceeded its term budget")))
}

/// Principal `2F1(a,b;c;z)`.
pub fn hyp2f1(a: C, b: C, c: C, z: C) -> Result<C> {
    eval(a, b, c, z, None)
}

/// Boundary value on the cut (or principal value elsewhere).
pub fn hyp2f1_side(a: C, b: C, c: C, z: C, side: Side) -> Result<C> {
    eval(a, b, c, z, Some(side))
}

/// Regularized `2F1(a,b;c;z)/Gamma(c)`, entire in `c`.
pub fn hyp2f1_reg(a: C, b: C, c: C, z: C) -> Result<C> {
    reg(a, b, c, z, None)
}

pub fn hyp2f1_reg_side(a: C, b: C, c: C, z: C, side: Side) -> Result<C> {
    reg(a, b, c, z, Some(side))
}

fn reg(a: C, b: C, c: C, z: C, side: Option<Side>) -> Result<C> {
    if let Some(m) = nonpositive_integer(c) {
        // 2F1~(a,b;-m;z) = (a)_{m+1} (b)_{m+1} / (m+1)! z^{m+1} 2F1(a+m+1, b+m+1; m+2; z)
        let m = m as usize;
        let mut pref = pochhammer(a, m + 1) * pochhammer(b, m + 1) * z.powi(m as i32 + 1);
        for k in 1..=m + 1 {
            pref /= k as f64;
        }
        if pref == zero() {
            return Ok(zero());
        }
        let s = (m + 1) as f64;
        return Ok(pref * eval(a + s, b + s, C::new(s + 1.0, 0.0), z, side)?);
    }
    Ok(eval(a, b, c, z, side)? * rgamma(c))
}

fn on_cut(z: C) -> bool {
    z.im == 0.0 && z.re > 1.0
}

/// `(1-z)^s` with the branch fixed by `side` on the cut.
fn pow_one_minus(z: C, s: C, side: Option<Side>) -> C {
    (s * log_one_minus(z, side)).exp()
}

fn log_one_minus(z: C, side: Option<Side>) -> C {
    let w = 1.0 - z;
    if on_cut(z) {
        let sg = side.map(|s| s.sign()).unwrap_or(1.0);
        // z + i0 -> 1 - z - i0 -> arg = -pi
        C::new((z.re - 1.0).ln(), -sg * PI)
    } else {
        w.ln()
    }
}

fn near_integer(s: C) -> Option<(i64, bool)> {
    if s.im.abs() > INTEGER_EPS {
        return None;
    }
    let r = s.re.round();
    let d = (s.re - r).abs().max(s.im.abs());
    if d < INTEGER_EPS {
        Some((r as i64, d < EXACT_EPS))
    } else {
        None
    }
}

fn eval(a: C, b: C, c: C, z: C, side: Option<Side>) -> Result<C> {
    if let Some(m) = nonpositive_integer(c) {
        if is_polynomial(a, b).map_or(true, |n| n as u64 > m) {
            return Err(Error::domain(format!("2F1 lower parameter c = -{m} is a pole")));
        }
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain("non-finite argument"));
    }
    if z == zero() {
        return Ok(C::new(1.0, 0.0));
    }
    if is_polynomial(a, b).is_some() {
        return series(a, b, c, z);
    }
    if z.norm() <= DIRECT_RADIUS {
        return series(a, b, c, z);
    }
    if on_cut(z) && side.is_none() {
        return Err(Error::domain(format!("z = {z} lies on the cut (1, inf); a side is required")));
    }
    let s = c - a - b;
    let degenerate = near_integer(s);
    let d1 = (1.0 - z).norm();
    let d2 = if on_cut(z) { f64::INFINITY } else { (z / (z - 1.0)).norm() };
    let d3 = (1.0 - 1.0 / z).norm();

    #[derive(PartialEq)]
    enum Route {
        Euler,
        Goursat,
        Pfaff,
        EulerPfaff,
        Ode,
    }
    let mut best = (f64::INFINITY, Route::Ode);
    let mut offer = |d: f64, r: Route| {
        if d <= TRANSFORM_RADIUS && d < best.0 {
            best = (d, r);
        }
    };
    offer(d2, Route::Pfaff);
    match degenerate {
        None => {
            offer(d1, Route::Euler);
            offer(d3, Route::EulerPfaff);
        }
        Some((_, true)) if d1 <= DIRECT_RADIUS => offer(d1, Route::Goursat),
        _ => {}
    }
    match best.1 {
        Route::Pfaff => pfaff(a, b, c, z).or_else(|_| ode_principal(a, b, c, z, side)),
        Route::Euler | Route::EulerPfaff => euler(a, b, c, z, side).or_else(|_| ode_principal(a, b, c, z, side)),
        Route::Goursat => goursat(a, b, c, z, degenerate.unwrap().0, side),
        Route::Ode => ode_principal(a, b, c, z, side),
    }
}

/// Pfaff: `2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))`.
fn pfaff(a: C, b: C, c: C, z: C) -> Result<C> {
    let w = z / (z - 1.0);
    Ok((1.0 - z).powc(-a) * inner(a, c - b, c, w)?)
}

/// Evaluates a transformed function without using the Euler route again.
/// Fails with [`Error::NonConvergence`] when the series loses more than three digits.
fn inner(a: C, b: C, c: C, w: C) -> Result<C> {
    let checked = |a: C, b: C, c: C, w: C| -> Result<C> {
        let (v, big) = series_tracked(a, b, c, w)?;
        if big > EULER_CANCELLATION * v.norm() {
            return Err(Error::nonconv(format!("2F1 series at {w} cancels")));
        }
        Ok(v)
    };
    if w.norm() <= TRANSFORM_RADIUS || is_polynomial(a, b).is_some() {
        return checked(a, b, c, w);
    }
    let v = w / (w - 1.0);
    if v.norm() <= TRANSFORM_RADIUS && !on_cut(w) {
        return Ok((1.0 - w).powc(-a) * checked(a, c - b, c, v)?);
    }
    ode_principal(a, b, c, w, None)
}

/// Euler linear transformation formula
/// `F = A (1-z)^s F(c-a, c-b; s+1; 1-z) + B F(a, b; 1-s; 1-z)`.
fn euler(a: C, b: C, c: C, z: C, side: Option<Side>) -> Result<C> {
    let s = c - a - b;
    let gc = gamma(c)?;
    let w = 1.0 - z;
    // A = Gamma(c) Gamma(-s) / (Gamma(a) Gamma(b)), B = Gamma(c) Gamma(s) / (Gamma(c-a) Gamma(c-b))
    let big_a = gc * gamma(-s)? * rgamma(a) * rgamma(b);
    let big_b = gc * gamma(s)? * rgamma(c - a) * rgamma(c - b);
    let mut ta = zero();
    let mut tb = zero();
    if big_a != zero() {
        ta = big_a * pow_one_minus(z, s, side) * inner(c - a, c - b, s + 1.0, w)?;
    }
    if big_b != zero() {
        tb = big_b * inner(a, b, 1.0 - s, w)?;
    }
    let out = ta + tb;
    // large parameters: the two terms cancel
    if ta.norm() + tb.norm() > EULER_CANCELLATION * out.norm() {
        return ode_principal(a, b, c, z, side);
    }
    Ok(out)
}

/// Logarithmic case `c - a - b = m` integer, `|1-z| < 1`.
fn goursat(a: C, b: C, c: C, z: C, m: i64, side: Option<Side>) -> Result<C> {
    let w = 1.0 - z;
    let l = log_one_minus(z, side);
    let gc = gamma(c)?;
    let mut out = zero();
    let mm = m.unsigned_abs() as usize;
    let mf = mm as f64;
    // finite part
    if mm > 0 {
        let (aa, bb, pre) = if m > 0 {
            (a, b, gamma(C::new(mf, 0.0))? * gc * rgamma(a + mf) * rgamma(b + mf))
        } else {
            (a - mf, b - mf, gamma(C::new(mf, 0.0))? * gc * rgamma(a) * rgamma(b) * w.powi(-(mm as i32)))
        };
        let mut term = C::new(1.0, 0.0);
        let mut sum = term;
        for n in 0..mm - 1 {
            let nf = n as f64;
            term *= (aa + nf) * (bb + nf) / ((nf + 1.0) * (1.0 - mf + nf)) * w;
            sum += term;
        }
        out += pre * sum;
    }
    // logarithmic part
    let (pa, pb, pre) = if m >= 0 {
        let sign = if mm % 2 == 0 { 1.0 } else { -1.0 };
        (a + mf, b + mf, -sign * gc * rgamma(a) * rgamma(b) * w.powi(mm as i32))
    } else {
        let sign = if mm % 2 == 0 { 1.0 } else { -1.0 };
        (a, b, -sign * gc * rgamma(a - mf) * rgamma(b - mf))
    };
    if pre == zero() {
        return Ok(out);
    }
    // psi(n+1), psi(n+m+1), psi(pa+n), psi(pb+n) by forward recurrence
    let mut p1 = digamma(C::new(1.0, 0.0))?;
    let mut p2 = digamma(C::new(mf + 1.0, 0.0))?;
    let mut pa_n = digamma(pa)?;
    let mut pb_n = digamma(pb)?;
    let mut coef = C::new(1.0, 0.0);
    for k in 1..=mm {
        coef /= k as f64;
    }
    let mut sum = zero();
    let mut small = 0;
    for n in 0..SERIES_BUDGET {
        let nf = n as f64;
        let term = coef * (l - p1 - p2 + pa_n + pb_n);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && coef.norm() <= 1e-17 * sum.norm() {
            small += 1;
            if small >= 3 {
                return Ok(out + pre * sum);
            }
        } else {
            small = 0;
        }
        coef *= (pa + nf) * (pb + nf) / ((nf + 1.0) * (nf + mf + 1.0)) * w;
        p1 += 1.0 / (nf + 1.0);
        p2 += 1.0 / (nf + mf + 1.0);
        pa_n += 1.0 / (pa + nf);
        pb_n += 1.0 / (pb + nf);
    }
    Err(Error::nonconv("Goursat series exceeded its term budget"))
}

/// Value and first derivative at a point with `|z| <= 0.5`, by the series.
pub(crate) fn jet_near_origin(a: C, b: C, c: C, z: C) -> Result<Jet> {
    let w = series(a, b, c, z)?;
    let dw = if is_polynomial(a, b) == Some(0) { zero() } else { a * b / c * series(a + 1.0, b + 1.0, c + 1.0, z)? };
    Ok(Jet { z, w, dw })
}

/// Principal value by continuation along the ray from the origin.
fn ode_principal(a: C, b: C, c: C, z: C, side: Option<Side>) -> Result<C> {
    let ode = HypOde::new(a, b, c);
    let start = z * (0.5 / z.norm());
    let j = jet_near_origin(a, b, c, start)?;
    let j = if on_cut(z) {
        // approach the cut from the requested side
        let sg = side.map(|s| s.sign()).unwrap_or(1.0);
        let off = C::new(0.0, sg * 0.5 * (z.re - 1.0).min(1.0));
        let first = C::new(0.5, off.im);
        ode.polyline(j, &[first, z + off, z])?
    } else {
        ode.segment(j, z)?
    };
    Ok(j.w)
}

/// Value and derivative of the principal branch at `z` (off the cut).
pub fn hyp2f1_jet(a: C, b: C, c: C, z: C) -> Result<(C, C)> {
    let w = hyp2f1(a, b, c, z)?;
    let dw = if is_polynomial(a, b) == Some(0) { zero() } else { a * b / c * hyp2f1(a + 1.0, b + 1.0, c + 1.0, z)? };
    Ok((w, dw))
}

/// `2F1` continued along the circle `z(s) = -rho e^{i s}`, `s` from 0 to `psi`.
///
/// `s = 0` is the negative real axis, where the principal branch is used. This is
/// the primitive for functions on the logarithmic Riemann surface: a point
/// `x = rho e^{i theta}` of `2F1(a,b;c;-x)` corresponds to `psi = theta`.
pub fn hyp2f1_arc(a: C, b: C, c: C, rho: f64, psi: f64) -> Result<C> {
    if let Some(m) = nonpositive_integer(c) {
        return Err(Error::domain(format!("2F1 lower parameter c = -{m} is a pole")));
    }
    let target = -C::from_polar(rho, psi);
    if rho < 1.0 || is_polynomial(a, b).is_some() || rho == 0.0 {
        // single-valued along the whole circle
        return hyp2f1(a, b, c, target);
    }
    if rho == 1.0 {
        return Err(Error::domain("arc passes through the branch point z = 1"));
    }
    if psi.abs() < PI {
        return hyp2f1(a, b, c, target);
    }
    if psi == -PI {
        return hyp2f1_side(a, b, c, C::new(rho, 0.0), Side::Upper);
    }
    if psi == PI {
        return hyp2f1_side(a, b, c, C::new(rho, 0.0), Side::Lower);
    }
    let z0 = C::new(-rho, 0.0);
    let (w, dw) = hyp2f1_jet(a, b, c, z0)?;
    let ode = HypOde::new(a, b, c);
    // z(s) = -rho e^{is} = rho e^{i(s + pi)}: an arc about the origin from angle pi
    let j = ode.arc(Jet { z: z0, w, dw }, zero(), rho, PI, PI + psi)?;
    Ok(j.w)
}

/// Regularized counterpart of [`hyp2f1_arc`].
pub fn hyp2f1_reg_arc(a: C, b: C, c: C, rho: f64, psi: f64) -> Result<C> {
    if let Some(m) = nonpositive_integer(c) {
        let m = m as usize;
        let x = C::from_polar(rho, psi);
        let z = -x;
        let mut pref = pochhammer(a, m + 1) * pochhammer(b, m + 1) * z.powi(m as i32 + 1);
        for k in 1..=m + 1 {
            pref /= k as f64;
        }
        if pref == zero() {
            return Ok(zero());
        }
        let s = (m + 1) as f64;
        return Ok(pref * hyp2f1_arc(a + s, b + s, C::new(s + 1.0, 0.0), rho, psi)?);
    }
    Ok(hyp2f1_arc(a, b, c, rho, psi)? * rgamma(c))
}
