//! Laplace and Borel transforms.
//!
//! `L{F}(zeta) = zeta int_0^inf e^{-zeta t} F(t) dt` (note the factor `zeta`, so
//! `L{1} = 1`), `L_alpha{F}(zeta) = zeta^{1+alpha} int_0^inf e^{-zeta t} t^alpha F(t) dt`.
//! For `F = sum f_k t^k` the image has the asymptotic series `sum p_k / zeta^k`
//! with Borel coefficients `p_k = f_k k!`.

use crate::contour::{integrate_pieces, integrate_pieces_abs, AnalyticOracle, NeighborhoodContour, Orientation, Piece, QuadratureSpec};
use crate::error::{Error, Result};
use crate::series::PowerSeries;
use crate::special::gamma::{gamma, ln_gamma_re};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

type C = Complex64;

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

/// Largest `k` with `k!` finite in double precision.
pub const MAX_FACTORIAL: usize = 170;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OverflowPolicy {
    /// Fail when some `p_k` is not representable.
    Error,
    /// Keep `p_k = mantissa_k * e^{log_scale_k}`.
    Scaled,
}

/// Borel coefficients `p_k = f_k k!`, stored as `mantissa_k * e^{log_scale_k}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticSeries {
    mantissa: Vec<C>,
    log_scale: Vec<f64>,
    pub gevrey_a: Option<f64>,
}

impl AsymptoticSeries {
    /// Series from plain coefficients `p_k`.
    pub fn new(p: Vec<C>) -> Result<Self> {
        if p.is_empty() || p.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
            return Err(Error::domain("asymptotic series needs finite coefficients"));
        }
        let n = p.len();
        Ok(AsymptoticSeries { mantissa: p, log_scale: vec![0.0; n], gevrey_a: None })
    }

    pub fn len(&self) -> usize {
        self.mantissa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mantissa.is_empty()
    }

    /// `p_k`, or an overflow error if it is not representable.
    pub fn p(&self, k: usize) -> Result<C> {
        let v = self.mantissa[k] * self.log_scale[k].exp();
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow(format!("p_{k} exceeds double precision")))
        }
    }

    /// `ln |p_k|` (always representable).
    pub fn log_abs(&self, k: usize) -> f64 {
        self.mantissa[k].norm().ln() + self.log_scale[k]
    }

    /// All `p_k` as plain numbers.
    pub fn coeffs(&self) -> Result<Vec<C>> {
        (0..self.len()).map(|k| self.p(k)).collect()
    }

    /// `sum_{k<n} p_k / zeta^k`.
    pub fn partial_sum(&self, n: usize, zeta: C) -> Result<C> {
        let mut s = c(0.0);
        let inv = 1.0 / zeta;
        let mut w = c(1.0);
        for k in 0..n.min(self.len()) {
            s += self.p(k)? * w;
            w *= inv;
        }
        Ok(s)
    }
}

/// `p_k = f_k k!`.
pub fn borel_map(f: &PowerSeries, policy: OverflowPolicy) -> Result<AsymptoticSeries> {
    let n = f.len();
    let mut mantissa = Vec::with_capacity(n);
    let mut log_scale = Vec::with_capacity(n);
    let mut fact = 1.0;
    for (k, fk) in f.coeffs().iter().enumerate() {
        if k > 0 {
            fact *= k as f64;
        }
        if k <= MAX_FACTORIAL {
            mantissa.push(fk * fact);
            log_scale.push(0.0);
        } else {
            match policy {
                OverflowPolicy::Error => return Err(Error::Overflow(format!("{k}! overflows; use the scaled policy"))),
                OverflowPolicy::Scaled => {
                    mantissa.push(*fk);
                    log_scale.push(ln_gamma_re(k as f64 + 1.0));
                }
            }
        }
    }
    let gevrey_a = f.radius_hint();
    Ok(AsymptoticSeries { mantissa, log_scale, gevrey_a })
}

/// `f_k = p_k / k!`.
pub fn inverse_borel(p: &AsymptoticSeries) -> Result<PowerSeries> {
    let mut out = Vec::with_capacity(p.len());
    let mut fact = 1.0;
    for k in 0..p.len() {
        if k > 0 {
            fact *= k as f64;
        }
        let v = if k <= MAX_FACTORIAL && p.log_scale[k] == 0.0 {
            p.mantissa[k] / fact
        } else {
            p.mantissa[k] * (p.log_scale[k] - ln_gamma_re(k as f64 + 1.0)).exp()
        };
        out.push(v);
    }
    Ok(PowerSeries::new(out)?.with_hints(p.gevrey_a, None))
}

/// A function `P(zeta)` analytic in `Re zeta > type_bound`.
#[derive(Clone)]
pub struct LaplaceOracle {
    f: Arc<dyn Fn(C) -> Result<C> + Send + Sync>,
    pub type_bound: f64,
}

impl fmt::Debug for LaplaceOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LaplaceOracle").field("type_bound", &self.type_bound).finish()
    }
}

impl LaplaceOracle {
    pub fn new(type_bound: f64, f: impl Fn(C) -> Result<C> + Send + Sync + 'static) -> Self {
        LaplaceOracle { f: Arc::new(f), type_bound }
    }

    pub fn eval(&self, zeta: C) -> Result<C> {
        if !(zeta.re > self.type_bound) {
            return Err(Error::domain(format!("Re zeta = {} must exceed {}", zeta.re, self.type_bound)));
        }
        (self.f)(zeta)
    }

    /// `L{F}` by quadrature.
    pub fn from_analytic(f: AnalyticOracle, tol: f64) -> Self {
        let r = f.type_bound;
        LaplaceOracle::new(r, move |z| Ok(laplace_quadrature(&f, z, tol)?.value))
    }

    /// `L{F}` by quadrature along the ray `arg t = -arg zeta`, clamped to `|arg t| <= sector`.
    /// Valid when `F` is analytic and of type `R` in that sector; removes the
    /// oscillation for `zeta` far from the real axis.
    pub fn from_analytic_rotated(f: AnalyticOracle, sector: f64, tol: f64) -> Self {
        let r = f.type_bound;
        LaplaceOracle::new(r, move |z| {
            let mut opts = LaplaceOptions::new(tol);
            opts.rotation = (-z.arg()).clamp(-sector, sector);
            let g = |t: C| Ok(f.eval(t));
            Ok(z * laplace_integral(&g, f.type_bound, c(0.0), z, &opts)?.value)
        })
    }

    /// The standard transform `int_0^inf e^{-zeta t} F dt = P(zeta)/zeta`.
    pub fn to_standard(&self) -> LaplaceOracle {
        let p = self.clone();
        LaplaceOracle::new(self.type_bound, move |z| Ok(p.eval(z)? / z))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaplaceValue {
    pub value: C,
    pub err_est: f64,
}

/// Options for the Laplace quadratures.
#[derive(Clone, Debug, PartialEq)]
pub struct LaplaceOptions {
    pub tol: f64,
    /// Points of `(0, T)` where the integrand is not smooth.
    pub breakpoints: Vec<f64>,
    /// Integrate along the ray `t = s e^{i rotation}` (Cauchy's theorem; the
    /// integrand must be analytic and decaying in the sector swept).
    pub rotation: f64,
}

impl LaplaceOptions {
    pub fn new(tol: f64) -> Self {
        LaplaceOptions { tol, breakpoints: Vec::new(), rotation: 0.0 }
    }
}

fn split(lo: f64, hi: f64, breaks: &[f64]) -> Vec<Piece> {
    let mut pts = vec![lo];
    let mut b: Vec<f64> = breaks.iter().copied().filter(|x| *x > lo && *x < hi).collect();
    b.sort_by(|x, y| x.partial_cmp(y).unwrap());
    pts.extend(b);
    pts.push(hi);
    pts.windows(2).map(|w| Piece::Segment { p0: c(w[0]), p1: c(w[1]) }).collect()
}

/// `int_0^inf e^{-zeta t} t^alpha F(t) dt` for an integrand of exponential type `r_type`.
///
/// The range is cut at `T` with `e^{-(Re zeta - R) T} < tol/100`; the tail bound is
/// added to the error estimate. On `(0, 1)` the substitution `t = u^m`,
/// `m = 1/(Re alpha + 1)`, removes the endpoint power.
pub fn laplace_integral<F>(f: &F, r_type: f64, alpha: C, zeta: C, opts: &LaplaceOptions) -> Result<LaplaceValue>
where
    F: Fn(C) -> Result<C>,
{
    let rot = C::from_polar(1.0, opts.rotation);
    let gap = (zeta * rot).re - r_type;
    if !(gap > 0.0) {
        return Err(Error::domain(format!("Laplace integral diverges: Re zeta = {} <= type {r_type}", zeta.re)));
    }
    // on the rotated ray: t = s rot, dt = rot ds, t^alpha = s^alpha rot^alpha
    let zeta_r = zeta * rot;
    let f = |s: C| f(s * rot);
    let jac = rot * if alpha == c(0.0) { c(1.0) } else { (C::new(0.0, opts.rotation) * alpha).exp() };
    if !(alpha.re > -1.0) {
        return Err(Error::pre(format!("Re alpha = {} must exceed -1", alpha.re)));
    }
    let spec = QuadratureSpec::with_tol(opts.tol.max(1e-14))?;
    let t_max = ((100.0 / opts.tol).ln() / gap).max(2.0);
    let plain = alpha == c(0.0);
    let mut total = c(0.0);
    let mut err = 0.0;
    let first = if plain { 0.0 } else { 1.0 };
    if !plain {
        let m = 1.0 / (alpha.re + 1.0);
        let ex = alpha * m + (m - 1.0);
        let g = |u: C| -> Result<C> {
            let u = u.re;
            if u == 0.0 {
                return Ok(c(0.0));
            }
            let t = u.powf(m);
            Ok((-zeta_r * t).exp() * f(c(t))? * m * c(u).powc(ex))
        };
        let b: Vec<f64> = opts.breakpoints.iter().filter(|x| **x < 1.0).map(|x| x.powf(1.0 / m)).collect();
        let r = integrate_pieces(&g, &split(0.0, 1.0, &b), 4, &spec)?;
        total += r.value;
        err += r.err_est;
    }
    let g = |t: C| -> Result<C> {
        let w = if plain { c(1.0) } else { t.powc(alpha) };
        Ok((-zeta_r * t).exp() * w * f(t)?)
    };
    let r = integrate_pieces(&g, &split(first, t_max, &opts.breakpoints), 2, &spec)?;
    total += r.value;
    err += r.err_est;
    // tail: |F(t)| <~ |F(T)| e^{R (t - T)} beyond T
    let ft = f(c(t_max)).map(|v| v.norm()).unwrap_or(1.0).max(1e-300);
    let tail = ft * t_max.powf(alpha.re) * (-gap * t_max).exp() / gap;
    Ok(LaplaceValue { value: total * jac, err_est: (err + tail) * jac.norm() })
}

/// `L{F}(zeta) = zeta int_0^inf e^{-zeta t} F(t) dt`.
pub fn laplace_quadrature(f: &AnalyticOracle, zeta: C, tol: f64) -> Result<LaplaceValue> {
    let g = |t: C| Ok(f.eval(t));
    let v = laplace_integral(&g, f.type_bound, c(0.0), zeta, &LaplaceOptions::new(tol))?;
    Ok(LaplaceValue { value: zeta * v.value, err_est: zeta.norm() * v.err_est })
}

/// `L_alpha{F}(zeta) = zeta^{1+alpha} int_0^inf e^{-zeta t} t^alpha F(t) dt`, principal power.
pub fn laplace_alpha(f: &AnalyticOracle, alpha: C, zeta: C, tol: f64) -> Result<LaplaceValue> {
    let g = |t: C| Ok(f.eval(t));
    let v = laplace_integral(&g, f.type_bound, alpha, zeta, &LaplaceOptions::new(tol))?;
    let pre = zeta.powc(1.0 + alpha);
    Ok(LaplaceValue { value: pre * v.value, err_est: pre.norm() * v.err_est })
}

/// Residuals of the Laplace-Mellin relations for a function with known
/// `D_alpha F` and `I_alpha F`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LmResidual {
    /// `|L_alpha{F} - L{D_alpha F}|`
    pub lm: f64,
    /// `|zeta int e^{-zeta t} t^alpha F - zeta^{1-alpha} int e^{-zeta t} D_alpha F|`
    pub alt_d: f64,
    /// `|zeta int e^{-zeta t} F - zeta^{1+alpha} int e^{-zeta t} t^alpha I_alpha F|`
    pub alt_i: f64,
}

impl LmResidual {
    pub fn max(&self) -> f64 {
        self.lm.max(self.alt_d).max(self.alt_i)
    }
}

pub fn verify_lm_duality(f: &AnalyticOracle, d_f: &AnalyticOracle, i_f: &AnalyticOracle, alpha: C, zeta: C, tol: f64) -> Result<LmResidual> {
    let la = laplace_alpha(f, alpha, zeta, tol)?.value;
    let ld = laplace_quadrature(d_f, zeta, tol)?.value;
    let lm = (la - ld).norm();
    // alt-D: divide L_alpha and L{D F} by zeta^alpha
    let za = zeta.powc(alpha);
    let alt_d = (la / za - ld / za).norm();
    let lf = laplace_quadrature(f, zeta, tol)?.value;
    let li = laplace_alpha(i_f, alpha, zeta, tol)?.value;
    Ok(LmResidual { lm, alt_d, alt_i: (lf - li).norm() })
}

/// `D_alpha` and `I_alpha` of `1/(1+t)` in closed form.
pub fn geometric_pair(alpha: C) -> Result<(AnalyticOracle, AnalyticOracle)> {
    let g = gamma(alpha + 1.0)?;
    let a1 = alpha + 1.0;
    let d = AnalyticOracle::new("D geometric", 1.0, 0.0, move |t| g * (1.0 + t).powc(-a1));
    let i = AnalyticOracle::new("I geometric", 1.0, 0.0, move |t| {
        crate::special::hyp2f1::hyp2f1(c(1.0), c(1.0), a1, -t).unwrap_or(C::new(f64::NAN, f64::NAN)) / g
    });
    Ok((d, i))
}

/// `D_alpha` and `I_alpha` of a polynomial in closed form.
pub fn polynomial_pair(coeffs: &[C], alpha: C) -> Result<(AnalyticOracle, AnalyticOracle)> {
    let p = PowerSeries::new(coeffs.to_vec())?;
    let d = crate::frac::frac_deriv_series(&p, alpha)?;
    let i = crate::frac::frac_integ_series(&p, alpha)?;
    Ok((AnalyticOracle::polynomial(d.coeffs().to_vec()), AnalyticOracle::polynomial(i.coeffs().to_vec())))
}

/// `P_n(zeta) = P(zeta) - sum_{k<n} p_k / zeta^k`.
pub fn remainder(p_fn: &LaplaceOracle, p: &AsymptoticSeries, n: usize, zeta: C) -> Result<C> {
    if n > p.len() {
        return Err(Error::pre(format!("remainder order {n} exceeds the {} stored coefficients", p.len())));
    }
    Ok(p_fn.eval(zeta)? - p.partial_sum(n, zeta)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WatsonReport {
    /// `sup A^n |zeta|^n |P_n(zeta)| / n!` over the grid and `n <= n_max`.
    pub m_fit: f64,
    /// The same sup restricted to `n <= n_max/2`.
    pub m_half: f64,
    /// Order at which the sup is attained.
    pub argmax_n: usize,
    pub pass: bool,
}

/// Default grid on `Re zeta >= r`.
pub fn default_zeta_grid(r: f64) -> Vec<C> {
    vec![c(r), c(2.0 * r), c(5.0 * r), c(10.0 * r), C::new(r, 3.0), C::new(r, -3.0), C::new(2.0 * r, 10.0)]
}

/// Sampled S-norm with a stability test: pass when the sup is finite and grows by
/// less than a factor 1.5 from `n_max/2` to `n_max`.
pub fn watson_gevrey_check(p_fn: &LaplaceOracle, p: &AsymptoticSeries, a: f64, r: f64, n_max: usize, grid: &[C]) -> Result<WatsonReport> {
    if !(a > 0.0) || !(r > p_fn.type_bound) {
        return Err(Error::pre(format!("need A > 0 and r > {}", p_fn.type_bound)));
    }
    if n_max > p.len() {
        return Err(Error::pre(format!("n_max = {n_max} exceeds the {} coefficients", p.len())));
    }
    let mut m_fit: f64 = 0.0;
    let mut m_half: f64 = 0.0;
    let mut argmax_n = 0;
    for &z in grid {
        if z.re < r {
            return Err(Error::pre(format!("grid point {z} has Re zeta < r = {r}")));
        }
        let pz = p_fn.eval(z)?;
        let mut partial = c(0.0);
        let mut w = c(1.0);
        for n in 0..=n_max {
            if n > 0 {
                partial += p.p(n - 1)? * w;
                w /= z;
            }
            let rem = (pz - partial).norm();
            let lnv = n as f64 * (a * z.norm()).ln() + rem.ln() - ln_gamma_re(n as f64 + 1.0);
            let v = if rem == 0.0 { 0.0 } else { lnv.exp() };
            if v > m_fit {
                m_fit = v;
                argmax_n = n;
            }
            if 2 * n <= n_max {
                m_half = m_half.max(v);
            }
        }
    }
    let pass = m_fit.is_finite() && (m_half == 0.0 && m_fit == 0.0 || m_fit < 1.5 * m_half);
    Ok(WatsonReport { m_fit, m_half, argmax_n, pass })
}

/// `int_{gamma(A)} e^{-r|t|} |F(t)| |dt|`, truncated where `e^{-(r-R) Re t}` falls below
/// `1e-17` and with the tail bound folded in.
pub fn h_norm(f: &AnalyticOracle, r: f64, a: f64, spec: &QuadratureSpec) -> Result<LaplaceValue> {
    if !(r > f.type_bound) {
        return Err(Error::pre(format!("r = {r} must exceed the type {} of {}", f.type_bound, f.name)));
    }
    if !(a > 0.0 && a < f.radius) {
        return Err(Error::pre(format!("A = {a} must lie in (0, {})", f.radius)));
    }
    let gap = r - f.type_bound;
    let path = NeighborhoodContour::new(a, a + 40.0 / gap, Orientation::Ccw)?;
    let g = |t: C| Ok((-r * t.norm()).exp() * f.eval(t).norm());
    let v = integrate_pieces_abs(&g, &path.pieces(false), 1, spec)?;
    let edge = g(C::new(path.t_max, a))?.max(g(C::new(path.t_max, -a))?);
    Ok(LaplaceValue { value: v.value, err_est: v.err_est + 2.0 * edge / gap })
}

/// The S-side representation
/// `Gamma(alpha+1)/(2 pi i) int_{r-i inf}^{r+i inf} (1 - z/zeta)^{-alpha-1} P(z)/z dz`
/// of `L_alpha{F}(zeta)`, for `Re zeta > r > R`. Returns the value and the
/// residual against `laplace_alpha`.
///
/// `P(z)` on the line comes from Laplace integrals rotated by up to `sector`.
pub fn s_side_check(f: &AnalyticOracle, alpha: C, zeta: C, r: f64, sector: f64, tol: f64) -> Result<(C, f64)> {
    if !(r > f.type_bound && zeta.re > r) {
        return Err(Error::pre("need type < r < Re zeta"));
    }
    let p = LaplaceOracle::from_analytic_rotated(f.clone(), sector, tol);
    let a1 = alpha + 1.0;
    let g = |z: C| -> Result<C> { Ok((1.0 - z / zeta).powc(-a1) * p.eval(z)? / z) };
    let i = C::new(0.0, 1.0);
    let pieces = [
        Piece::HalfLine { base: c(r), dir: -i, inbound: true },
        Piece::HalfLine { base: c(r), dir: i, inbound: false },
    ];
    let spec = QuadratureSpec::with_tol((tol * 100.0).max(1e-12))?;
    let v = integrate_pieces(&g, &pieces, 1, &spec)?;
    let val = gamma(a1)? * v.value / C::new(0.0, 2.0 * PI);
    let direct = laplace_alpha(f, alpha, zeta, tol)?.value;
    Ok((val, (val - direct).norm()))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniquenessReport {
    pub difference: f64,
    pub envelope: f64,
    pub pass: bool,
}

/// Two functions sharing their first `n` Borel coefficients: their Laplace images
/// must agree at `zeta` within `(M_1 + M_2) n! / (A |zeta|)^n`, the `M_i` being
/// sampled S-norms.
pub fn uniqueness_check(
    first: (&AnalyticOracle, &PowerSeries),
    second: (&AnalyticOracle, &PowerSeries),
    n: usize,
    zeta: C,
    a: f64,
    r: f64,
    tol: f64,
) -> Result<UniquenessReport> {
    let p1 = borel_map(first.1, OverflowPolicy::Error)?;
    let p2 = borel_map(second.1, OverflowPolicy::Error)?;
    for k in 0..n {
        let (x, y) = (p1.p(k)?, p2.p(k)?);
        if (x - y).norm() > 1e-12 * (1.0 + x.norm()) {
            return Err(Error::pre(format!("Borel coefficient {k} differs: {x} vs {y}")));
        }
    }
    let o1 = LaplaceOracle::from_analytic(first.0.clone(), tol);
    let o2 = LaplaceOracle::from_analytic(second.0.clone(), tol);
    let grid = default_zeta_grid(r);
    let m1 = watson_gevrey_check(&o1, &p1, a, r, n, &grid)?.m_fit;
    let m2 = watson_gevrey_check(&o2, &p2, a, r, n, &grid)?.m_fit;
    let difference = (o1.eval(zeta)? - o2.eval(zeta)?).norm();
    let envelope = (m1 + m2) * (ln_gamma_re(n as f64 + 1.0) - n as f64 * (a * zeta.norm()).ln()).exp();
    Ok(UniquenessReport { difference, envelope, pass: difference <= envelope })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::builtin;

    #[test]
    fn borel_examples() {
        let f = PowerSeries::from_real(&[1.0, 1.0, 0.5]).unwrap();
        assert_eq!(borel_map(&f, OverflowPolicy::Error).unwrap().coeffs().unwrap(), vec![c(1.0); 3]);
        let g = builtin::geometric(10);
        let p = borel_map(&g, OverflowPolicy::Error).unwrap();
        assert_eq!(p.p(5).unwrap(), c(-120.0));
        let back = inverse_borel(&p).unwrap();
        for k in 0..10 {
            assert!((back.coeff(k) - g.coeff(k)).norm() <= 1e-15);
        }
        let big = builtin::geometric(200);
        assert!(borel_map(&big, OverflowPolicy::Error).is_err());
        let s = borel_map(&big, OverflowPolicy::Scaled).unwrap();
        assert!(s.p(180).is_err());
        assert!((s.log_abs(180) - ln_gamma_re(181.0)).abs() < 1e-9);
        let back = inverse_borel(&s).unwrap();
        assert!((back.coeff(199) + 1.0).norm() < 1e-10);
    }

    #[test]
    fn laplace_examples() {
        let one = AnalyticOracle::polynomial(vec![c(1.0)]);
        assert!((laplace_quadrature(&one, c(2.0), 1e-12).unwrap().value - 1.0).norm() < 1e-12);
        let t = AnalyticOracle::polynomial(vec![c(0.0), c(1.0)]);
        assert!((laplace_quadrature(&t, c(2.0), 1e-12).unwrap().value - 0.5).norm() < 1e-12);
        let la = laplace_alpha(&one, c(0.5), c(3.0), 1e-12).unwrap().value;
        assert!((la - 0.886226925452758).norm() < 1e-11);
        let lt = laplace_alpha(&t, c(0.5), c(2.0), 1e-12).unwrap().value;
        assert!((lt - 0.6646701940895686).norm() < 1e-11);
        assert!(laplace_quadrature(&AnalyticOracle::exp(), c(0.5), 1e-10).is_err());
    }

    #[test]
    fn geometric_laplace_refined() {
        // trapezoid on a very fine grid of the smooth integrand after t = x/(1-x)
        let g = AnalyticOracle::geometric();
        let v = laplace_quadrature(&g, c(3.0), 1e-13).unwrap().value;
        let n = 400_000;
        let h = 1.0 / n as f64;
        let mut s = 0.0;
        for i in 1..n {
            let x = i as f64 * h;
            let t = x / (1.0 - x);
            s += (-3.0 * t).exp() / (1.0 + t) / ((1.0 - x) * (1.0 - x));
        }
        // endpoint x = 0 contributes 1/2
        let oracle = 3.0 * h * (s + 0.5);
        assert!((v.re - oracle).abs() < 1e-9, "{v} vs {oracle}");
    }

    #[test]
    fn lm_duality() {
        let f = AnalyticOracle::geometric();
        let (d, i) = geometric_pair(c(0.5)).unwrap();
        let r = verify_lm_duality(&f, &d, &i, c(0.5), c(3.0), 1e-12).unwrap();
        assert!(r.max() < 1e-8, "{r:?}");
        let p = [c(1.0), c(1.0)];
        let (d, i) = polynomial_pair(&p, c(0.5)).unwrap();
        let r = verify_lm_duality(&AnalyticOracle::polynomial(p.to_vec()), &d, &i, c(0.5), c(2.0), 1e-13).unwrap();
        assert!(r.max() < 1e-10, "{r:?}");
    }

    #[test]
    fn remainder_cases() {
        let p = AsymptoticSeries::new(vec![c(1.0), c(2.0), c(3.0)]).unwrap();
        let q = p.clone();
        let exact = LaplaceOracle::new(0.0, move |z| q.partial_sum(3, z));
        let z = C::new(4.0, 1.0);
        assert_eq!(remainder(&exact, &p, 0, z).unwrap(), exact.eval(z).unwrap());
        assert!(remainder(&exact, &p, 3, z).unwrap().norm() < 1e-15);
    }

    #[test]
    fn watson_geometric() {
        let g = builtin::geometric(30);
        let p = borel_map(&g, OverflowPolicy::Error).unwrap();
        let o = LaplaceOracle::from_analytic(AnalyticOracle::geometric(), 1e-13);
        let grid = default_zeta_grid(1.0);
        let ok = watson_gevrey_check(&o, &p, 0.5, 1.0, 24, &grid).unwrap();
        assert!(ok.pass && ok.m_fit.is_finite(), "{ok:?}");
        let bad = watson_gevrey_check(&o, &p, 2.0, 1.0, 24, &grid).unwrap();
        assert!(!bad.pass, "{bad:?}");
        let r5 = remainder(&o, &p, 5, c(10.0)).unwrap().norm();
        assert!(r5 <= ok.m_fit * 120.0 / (0.5f64.powi(5) * 1e5));
    }

    #[test]
    fn h_norm_constant() {
        let one = AnalyticOracle::new("one", f64::INFINITY, 0.0, |_| c(1.0));
        let spec = QuadratureSpec::default();
        let v = h_norm(&one, 1.0, 0.5, &spec).unwrap().value.re;
        // arc: pi * 0.5 * e^{-0.5}; rays: 2 int_0^inf e^{-sqrt(x^2+0.25)} dx, by fine midpoint sums
        let mut s = 0.0;
        let h = 1e-4;
        for i in 0..600_000 {
            let x = (i as f64 + 0.5) * h;
            s += (-(x * x + 0.25f64).sqrt()).exp() * h;
        }
        let oracle = PI * 0.5 * (-0.5f64).exp() + 2.0 * s;
        assert!((v - oracle).abs() < 1e-6 * oracle, "{v} vs {oracle}");
        let v2 = h_norm(&one, 2.0, 0.5, &spec).unwrap().value.re;
        assert!(v2 < v);
        assert!(h_norm(&AnalyticOracle::exp(), 0.5, 0.5, &spec).is_err());
    }

    #[test]
    fn s_side_geometric() {
        let (v, res) = s_side_check(&AnalyticOracle::geometric(), c(0.5), c(3.0), 1.0, 1.4, 1e-12).unwrap();
        assert!(res < 1e-7, "{v} residual {res}");
    }

    #[test]
    fn uniqueness() {
        let f1 = AnalyticOracle::geometric();
        let s1 = builtin::geometric(20);
        // add t^16 e^{-t} / 16!: same first 16 Borel coefficients
        let f16 = ln_gamma_re(17.0);
        let f2 = AnalyticOracle::new("perturbed", 1.0, 0.0, move |t: C| 1.0 / (1.0 + t) + (16.0 * t.ln() - t - f16).exp());
        let mut co = s1.coeffs().to_vec();
        for k in 16..20 {
            co[k] += if (k - 16) % 2 == 0 { 1.0 } else { -1.0 } * (-(ln_gamma_re(17.0) + ln_gamma_re((k - 16) as f64 + 1.0))).exp();
        }
        let s2 = PowerSeries::new(co).unwrap();
        let r = uniqueness_check((&f1, &s1), (&f2, &s2), 16, c(50.0), 0.5, 1.0, 1e-13).unwrap();
        assert!(r.pass, "{r:?}");
    }
}
