//! Fractional derivatives `D_alpha` and integrals `I_alpha` on the tube classes.
//!
//! On Taylor coefficients `D_alpha: f_k -> f_k Gamma(alpha+k+1)/k!` and
//! `I_alpha = D_alpha^{-1}`. Besides the coefficient form this module provides the
//! contour-series representation (valid for every `t` in the tube, not just the
//! disc of convergence), the single-integral form for `H^1(a)` functions, and the
//! continuation to `Re alpha <= -1` with its limiting polynomials `Psi_{n,F}`.

use crate::contour::{
    integrate_path, integrate_path_vec, integrate_pieces_vec, h1_norm, tube_distance, NeighborhoodContour, Orientation, QuadratureSpec,
    Tail,
};
use crate::error::{Error, Result};
use crate::precision::{rising_ratio_dd, DdComplex, Precision};
use crate::series::PowerSeries;
use crate::special::gamma::{gamma, gamma_ratio_table, nonpositive_integer, rgamma};
use crate::special::hyp2f1::hyp2f1;
use crate::special::pfq::PFQParams;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub use crate::contour::AnalyticOracle;

type C = Complex64;

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

/// Order `alpha` of a fractional operator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FractionalOrder {
    pub alpha: C,
}

impl FractionalOrder {
    pub fn new(alpha: C) -> Self {
        FractionalOrder { alpha }
    }

    /// Checks `Re alpha > -1`, the range of the base operators.
    pub fn base(alpha: C) -> Result<Self> {
        if !(alpha.re > -1.0) {
            return Err(Error::pre(format!("Re alpha = {} must exceed -1", alpha.re)));
        }
        Ok(FractionalOrder { alpha })
    }
}

impl From<f64> for FractionalOrder {
    fn from(a: f64) -> Self {
        FractionalOrder::new(c(a))
    }
}

impl From<C> for FractionalOrder {
    fn from(a: C) -> Self {
        FractionalOrder::new(a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Deriv,
    Integ,
}

/// `Gamma(alpha+k+1)/k!` for `k < n` (deriv) or the reciprocals (integ).
fn scaling(alpha: C, n: usize, mode: Mode, prec: Precision) -> Result<Vec<C>> {
    match prec {
        Precision::Double => {
            let t = gamma_ratio_table(alpha + 1.0, n)?;
            Ok(match mode {
                Mode::Deriv => t,
                Mode::Integ => t.into_iter().map(|x| 1.0 / x).collect(),
            })
        }
        Precision::Extended => {
            let g = DdComplex::from(gamma(alpha + 1.0)?);
            let r = rising_ratio_dd(alpha, n);
            Ok(match mode {
                Mode::Deriv => r.into_iter().map(|x| (x * g).to_c64()).collect(),
                Mode::Integ => r.into_iter().map(|x| (DdComplex::one() / (x * g)).to_c64()).collect(),
            })
        }
    }
}

fn transform(f: &PowerSeries, alpha: C, mode: Mode, prec: Precision) -> Result<PowerSeries> {
    FractionalOrder::base(alpha)?;
    let s = scaling(alpha, f.len(), mode, prec)?;
    let coeffs = f.coeffs().iter().zip(s).map(|(a, b)| a * b).collect();
    Ok(PowerSeries::new(coeffs)?.with_hints(f.radius_hint(), f.type_hint()))
}

/// `D_alpha F` on coefficients; radius and type hints carry over.
pub fn frac_deriv_series(f: &PowerSeries, alpha: C) -> Result<PowerSeries> {
    transform(f, alpha, Mode::Deriv, Precision::Double)
}

/// `I_alpha F` on coefficients.
pub fn frac_integ_series(f: &PowerSeries, alpha: C) -> Result<PowerSeries> {
    transform(f, alpha, Mode::Integ, Precision::Double)
}

/// Either operator with the Gamma ratios accumulated in the chosen precision.
pub fn frac_series_with(f: &PowerSeries, alpha: C, mode: Mode, prec: Precision) -> Result<PowerSeries> {
    transform(f, alpha, mode, prec)
}

/// `D_alpha F` for any `alpha` away from the poles of `Gamma(alpha+k+1)`, with the
/// Gamma values taken from the reflection formula when `Re(alpha+k+1) < 1/2`.
pub fn frac_deriv_series_continued(f: &PowerSeries, alpha: C) -> Result<PowerSeries> {
    let mut coeffs = Vec::with_capacity(f.len());
    let mut kf = c(1.0);
    for (k, fk) in f.coeffs().iter().enumerate() {
        if k > 0 {
            kf *= k as f64;
        }
        coeffs.push(fk * gamma(alpha + 1.0 + k as f64)? / kf);
    }
    Ok(PowerSeries::new(coeffs)?.with_hints(f.radius_hint(), f.type_hint()))
}

/// `F(t, alpha) / Gamma(alpha + 1)` from the entire coefficients `(alpha+1)_k / k!`.
pub fn frac_deriv_normalized(f: &PowerSeries, alpha: C) -> Result<PowerSeries> {
    let mut x = c(1.0);
    let mut coeffs = Vec::with_capacity(f.len());
    for (k, fk) in f.coeffs().iter().enumerate() {
        coeffs.push(fk * x);
        x *= (alpha + 1.0 + k as f64) / (k as f64 + 1.0);
    }
    Ok(PowerSeries::new(coeffs)?.with_hints(f.radius_hint(), f.type_hint()))
}

/// Operators on `sum prod (a_i)_k / prod (b_j)_k t^k / k!`.
///
/// `D_alpha` multiplies by `Gamma(alpha+1)` and appends `alpha+1` above and `1` below;
/// `I_alpha` divides by `Gamma(alpha+1)` and appends `1` above and `alpha+1` below.
pub fn frac_of_pfq(params: &PFQParams, alpha: C, mode: Mode) -> Result<(C, PFQParams)> {
    FractionalOrder::base(alpha)?;
    let (mut num, mut den) = (params.num.clone(), params.den.clone());
    let a1 = alpha + 1.0;
    let scale = match mode {
        Mode::Deriv => {
            num.push(a1);
            den.push(c(1.0));
            gamma(a1)?
        }
        Mode::Integ => {
            if let Some(n) = nonpositive_integer(a1) {
                return Err(Error::domain(format!("lower parameter alpha+1 = -{n}")));
            }
            num.push(c(1.0));
            den.push(a1);
            rgamma(a1)
        }
    };
    Ok((scale, PFQParams::new(num, den)?))
}

/// Value of a contour-series representation and how it was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContourValue {
    pub value: C,
    pub terms: usize,
    pub err_est: f64,
}

/// Settings for the contour series.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContourSettings {
    pub quad: QuadratureSpec,
    /// Relative size below which a term counts as negligible.
    pub tol: f64,
    pub k_max: usize,
    /// Use `1/(k! Gamma(alpha+k+1))` for the integral series weight instead of
    /// `1/Gamma(alpha+k+1)`. The former does not reduce to the identity at `alpha = 0`.
    #[serde(default)]
    pub extra_factorial: bool,
}

impl Default for ContourSettings {
    fn default() -> Self {
        ContourSettings { quad: QuadratureSpec { tol: 1e-11, ..Default::default() }, tol: 1e-14, k_max: 80, extra_factorial: false }
    }
}

const CHUNK: usize = 8;

/// `2F1(a, 1; c; z)` by its power series when `|z| <= 0.8`, otherwise by the continued evaluator.
fn kernel_b1(a: C, cc: C, z: C) -> Result<C> {
    if z.norm() > 0.8 {
        return hyp2f1(a, c(1.0), cc, z);
    }
    let mut term = c(1.0);
    let mut sum = term;
    for n in 0..5000 {
        let nf = n as f64;
        term *= (a + nf) / (cc + nf) * z;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() && n > 2 {
            return Ok(sum);
        }
    }
    Err(Error::nonconv("kernel series"))
}

fn check_contour_pre(f: &AnalyticOracle, alpha: C, r: f64, a: f64, t: C) -> Result<()> {
    FractionalOrder::base(alpha)?;
    if !(a > 0.0 && a < f.radius) {
        return Err(Error::pre(format!("contour offset A = {a} must lie in (0, {})", f.radius)));
    }
    if !(r > f.type_bound) {
        return Err(Error::pre(format!("r = {r} must exceed the type {}", f.type_bound)));
    }
    if tube_distance(t) >= a {
        return Err(Error::domain(format!("t = {t} is outside D({a})")));
    }
    Ok(())
}

fn contour_series(f: &AnalyticOracle, alpha: C, r: f64, a: f64, t: C, mode: Mode, set: &ContourSettings) -> Result<ContourValue> {
    check_contour_pre(f, alpha, r, a, t)?;
    let path = NeighborhoodContour::new(a, a + t.re.max(0.0) + 40.0 / (r - f.type_bound), Orientation::Ccw)?;
    let mut sum = c(0.0);
    let mut err = 0.0;
    let mut small = 0;
    let rt = t * r;
    // weight_k without the power (rt)^k
    let mut k0 = 0;
    while k0 < set.k_max {
        let k1 = (k0 + CHUNK).min(set.k_max);
        let g = |xi: C| -> Result<Vec<C>> {
            let base = f.eval(xi) * (-r * xi).exp() / xi;
            let z = t / xi;
            (k0..k1)
                .map(|k| {
                    let kf = k as f64;
                    let ker = match mode {
                        Mode::Deriv => kernel_b1(alpha + kf + 1.0, c(kf + 1.0), z)?,
                        Mode::Integ => kernel_b1(c(kf + 1.0), alpha + kf + 1.0, z)?,
                    };
                    Ok(ker * base)
                })
                .collect()
        };
        let q = integrate_path_vec(&g, k1 - k0, &path, &set.quad, Tail::Truncate)?;
        for (j, (fk, ek)) in q.value.iter().zip(&q.err_est).enumerate() {
            let k = k0 + j;
            let kf = k as f64;
            let lnk = crate::special::gamma::ln_gamma_re(kf + 1.0);
            let w = match mode {
                Mode::Deriv => (crate::special::gamma::ln_gamma(alpha + kf + 1.0) - 2.0 * lnk).exp(),
                Mode::Integ => {
                    let extra = if set.extra_factorial { lnk } else { 0.0 };
                    (-crate::special::gamma::ln_gamma(alpha + kf + 1.0) - extra).exp()
                }
            };
            let pw = if k == 0 { c(1.0) } else { rt.powu(k as u32) };
            let term = w * pw * fk / C::new(0.0, 2.0 * PI);
            sum += term;
            err += (w * pw).norm() * ek / (2.0 * PI);
            if term.norm() < set.tol * sum.norm() {
                small += 1;
                if small >= 3 {
                    return Ok(ContourValue { value: sum, terms: k + 1, err_est: err });
                }
            } else {
                small = 0;
            }
        }
        k0 = k1;
    }
    Err(Error::nonconv(format!("contour series did not settle within {} terms (is r above the type?)", set.k_max)))
}

/// `D_alpha F(t)` by the contour series over `gamma(A)` with exponential weight `e^{-r xi}`.
pub fn frac_deriv_contour(f: &AnalyticOracle, alpha: C, r: f64, a: f64, t: C, set: &ContourSettings) -> Result<ContourValue> {
    contour_series(f, alpha, r, a, t, Mode::Deriv, set)
}

/// `I_alpha F(t)` by the contour series
/// `sum (rt)^k / Gamma(alpha+k+1) * (1/2 pi i) int 2F1(k+1,1;alpha+k+1;t/xi) F(xi) e^{-r xi}/xi dxi`.
pub fn frac_integ_contour(f: &AnalyticOracle, alpha: C, r: f64, a: f64, t: C, set: &ContourSettings) -> Result<ContourValue> {
    contour_series(f, alpha, r, a, t, Mode::Integ, set)
}

/// Single-integral form for `F` in `H^1(a)`:
/// `(1/2 pi i) int_{gamma(a)} K(t/xi) F(xi) / xi dxi` with
/// `K = Gamma(alpha+1)(1-z)^{-alpha-1}` or `K = 2F1(1,1;alpha+1;z)/Gamma(alpha+1)`.
pub fn frac_h1(f: &AnalyticOracle, alpha: C, a: f64, t: C, mode: Mode, quad: &QuadratureSpec) -> Result<C> {
    FractionalOrder::base(alpha)?;
    if tube_distance(t) >= a {
        return Err(Error::domain(format!("t = {t} is outside D({a})")));
    }
    h1_norm(f, a, quad)?;
    let path = NeighborhoodContour::new(a, 2.0 * a, Orientation::Ccw)?;
    let a1 = alpha + 1.0;
    let pre = match mode {
        Mode::Deriv => gamma(a1)?,
        Mode::Integ => rgamma(a1),
    };
    let g = |xi: C| -> Result<C> {
        let z = t / xi;
        let k = match mode {
            Mode::Deriv => (1.0 - z).powc(-a1),
            Mode::Integ => kernel_b1(c(1.0), a1, z)?,
        };
        Ok(k * f.eval(xi) / xi)
    };
    let v = integrate_path(&g, &path, quad, Tail::Infinite)?;
    Ok(pre * v.value / C::new(0.0, 2.0 * PI))
}

/// `Psi_{n,F}(t) = sum_{j<=n} (-1)^j C(n,j) f_j t^j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsiPolynomial {
    pub degree: usize,
    pub coeffs: Vec<C>,
}

impl PsiPolynomial {
    pub fn eval(&self, t: C) -> C {
        self.coeffs.iter().rev().fold(c(0.0), |acc, x| acc * t + x)
    }
}

fn binomial(n: usize, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn psi_from_taylor(f: &[C], n: usize) -> PsiPolynomial {
    let coeffs = (0..=n).map(|j| f[j] * binomial(n, j) * if j % 2 == 0 { 1.0 } else { -1.0 }).collect();
    PsiPolynomial { degree: n, coeffs }
}

/// The limit of `F(t, alpha)/Gamma(alpha+1)` at `alpha = -n-1`.
pub fn psi_polynomial(f: &PowerSeries, n: usize) -> Result<PsiPolynomial> {
    if f.len() <= n {
        return Err(Error::pre(format!("series has {} terms, need more than {n}", f.len())));
    }
    Ok(psi_from_taylor(f.coeffs(), n))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsiLimit {
    pub value: C,
    pub psi: C,
    pub residual: f64,
    pub warning: Option<String>,
}

/// Compares `F(t, alpha)/Gamma(alpha+1)` at `alpha = -n-1+eps` with `Psi_{n,F}(t)`.
///
/// The Gamma values come from the reflection formula, so both numerator and
/// denominator are of size `1/eps` and cancel; very small `eps` loses digits.
pub fn psi_limit_check(f: &PowerSeries, n: usize, t: C, eps: f64) -> Result<PsiLimit> {
    if !(eps > 0.0 && eps <= 1e-3) {
        return Err(Error::pre(format!("eps = {eps} must lie in (0, 1e-3]")));
    }
    if let Some(r) = f.radius_hint() {
        if t.norm() >= r {
            return Err(Error::domain(format!("|t| = {} outside the radius {r}", t.norm())));
        }
    }
    let psi = psi_polynomial(f, n)?.eval(t);
    let alpha = c(-(n as f64) - 1.0 + eps);
    let g = frac_deriv_series_continued(f, alpha)?;
    let value = g.eval(t).value * rgamma(alpha + 1.0);
    let warning = (eps < 1e-8).then(|| format!("eps = {eps:e}: Gamma poles cancel, expect lost digits"));
    Ok(PsiLimit { value, psi, residual: (value - psi).norm(), warning })
}

/// Largest negative-power Laurent coefficient of `alpha -> F(t, alpha)/Gamma(alpha+1)` on the
/// circle `|alpha + n + 1| = rho`, relative to the largest coefficient. Zero for an entire function.
pub fn alpha_pole_residual(f: &PowerSeries, n: usize, t: C, rho: f64, m: usize) -> Result<f64> {
    let center = c(-(n as f64) - 1.0);
    let vals: Vec<C> = (0..m)
        .map(|j| {
            let w = C::from_polar(1.0, 2.0 * PI * j as f64 / m as f64);
            let al = center + w * rho;
            Ok(frac_deriv_series_continued(f, al)?.eval(t).value * rgamma(al + 1.0))
        })
        .collect::<Result<_>>()?;
    // c_q = (1/m) sum v_j w_j^{-q} rho^{-q}
    let coef = |q: i32| -> C {
        let s: C = vals.iter().enumerate().map(|(j, v)| v * C::from_polar(1.0, -2.0 * PI * (q as f64) * j as f64 / m as f64)).sum();
        s / m as f64 * rho.powi(-q)
    };
    let scale = (0..4).map(|q| coef(q).norm()).fold(0.0, f64::max).max(1e-300);
    let neg = (1..4).map(|q| coef(-q).norm()).fold(0.0, f64::max);
    Ok(neg / scale)
}

/// Taylor coefficients `f_0..f_n` recovered from the contour integrals
/// `(1/2 pi i) sum_{s<=j} r^{j-s}/(j-s)! int_{gamma(A)} F(xi) e^{-r xi} / xi^{1+s} dxi`.
pub fn psi_coefficients_contour(f: &AnalyticOracle, n: usize, r: f64, a: f64, quad: &QuadratureSpec) -> Result<Vec<C>> {
    check_contour_pre(f, c(0.0), r, a, c(0.0))?;
    let path = NeighborhoodContour::new(a, a + 40.0 / (r - f.type_bound), Orientation::Ccw)?;
    let g = |xi: C| -> Result<Vec<C>> {
        let base = f.eval(xi) * (-r * xi).exp() / xi;
        let inv = 1.0 / xi;
        let mut p = base;
        Ok((0..=n)
            .map(|_| {
                let v = p;
                p *= inv;
                v
            })
            .collect())
    };
    let q = integrate_pieces_vec(&g, n + 1, &path.pieces(false), path.samples_per_unit, quad)?;
    let moments: Vec<C> = q.value.iter().map(|v| v / C::new(0.0, 2.0 * PI)).collect();
    Ok((0..=n)
        .map(|j| {
            let mut s = c(0.0);
            let mut fact = 1.0;
            for i in 0..=j {
                // i = j - s
                if i > 0 {
                    fact *= i as f64;
                }
                s += moments[j - i] * r.powi(i as i32) / fact;
            }
            s
        })
        .collect())
}

/// `Psi_{n,F}` from contour-recovered Taylor coefficients.
pub fn psi_polynomial_contour(f: &AnalyticOracle, n: usize, r: f64, a: f64, quad: &QuadratureSpec) -> Result<PsiPolynomial> {
    Ok(psi_from_taylor(&psi_coefficients_contour(f, n, r, a, quad)?, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::builtin;
    use crate::special::pfq::hyp_pfq;

    #[test]
    fn monomial_and_identity() {
        let m = PowerSeries::from_real(&[0.0, 1.0]).unwrap();
        let d = frac_deriv_series(&m, c(0.5)).unwrap();
        assert!((d.coeff(1) - 1.3293403881791355).norm() < 1e-14);
        let i = frac_integ_series(&m, c(0.5)).unwrap();
        assert!((i.coeff(1) - 0.7522527780636751).norm() < 1e-14);
        let g = builtin::geometric(20);
        assert_eq!(frac_deriv_series(&g, c(0.0)).unwrap().coeffs(), g.coeffs());
        let d1 = frac_deriv_series(&g, c(1.0)).unwrap();
        for k in 0..20 {
            let e = (k as f64 + 1.0) * if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!((d1.coeff(k) - e).norm() < 1e-12 * e.abs());
        }
        assert!(frac_deriv_series(&g, c(-1.0)).is_err());
    }

    #[test]
    fn extended_matches_double() {
        let g = builtin::exp(30);
        for mode in [Mode::Deriv, Mode::Integ] {
            let a = frac_series_with(&g, C::new(0.3, 0.2), mode, Precision::Double).unwrap();
            let b = frac_series_with(&g, C::new(0.3, 0.2), mode, Precision::Extended).unwrap();
            for k in 0..30 {
                assert!((a.coeff(k) - b.coeff(k)).norm() <= 1e-13 * b.coeff(k).norm());
            }
        }
    }

    #[test]
    fn integral_of_geometric() {
        let g = builtin::geometric(80);
        let i = frac_integ_series(&g, c(0.5)).unwrap().eval(c(0.3)).value;
        let e = hyp2f1(c(1.0), c(1.0), c(1.5), c(-0.3)).unwrap() / gamma(c(1.5)).unwrap();
        assert!((i - e).norm() < 1e-10);
    }

    #[test]
    fn pfq_closure() {
        let p = PFQParams::real(&[1.0, 1.0], &[1.0]).unwrap();
        let al = c(0.7);
        let (s, q) = frac_of_pfq(&p, al, Mode::Deriv).unwrap();
        let z = c(-0.3);
        // Gamma(alpha+1) 2F1(alpha+1, 1; 1; z) = Gamma(alpha+1) (1-z)^{-alpha-1}
        let v = s * hyp_pfq(&q, z).unwrap();
        let e = gamma(al + 1.0).unwrap() * (1.0 - z).powc(-(al + 1.0));
        assert!((v - e).norm() < 1e-12);
        let (s, q) = frac_of_pfq(&p, al, Mode::Integ).unwrap();
        let v = s * hyp_pfq(&q, z).unwrap();
        let e = hyp2f1(c(1.0), c(1.0), al + 1.0, z).unwrap() * rgamma(al + 1.0);
        assert!((v - e).norm() < 1e-12);
        let (s, q) = frac_of_pfq(&p, c(0.0), Mode::Deriv).unwrap();
        assert_eq!(s, c(1.0));
        assert_eq!(q.reduce(), p.reduce());
    }

    #[test]
    fn contour_geometric() {
        let f = AnalyticOracle::geometric();
        let set = ContourSettings::default();
        let t = c(0.2);
        let v = frac_deriv_contour(&f, c(0.5), 1.0, 0.5, t, &set).unwrap();
        let e = gamma(c(1.5)).unwrap() * (1.0 + t).powf(-1.5);
        assert!((v.value - e).norm() < 1e-8, "{:?} vs {e}", v);
        let v0 = frac_deriv_contour(&f, c(0.0), 1.0, 0.5, t, &set).unwrap();
        assert!((v0.value - f.eval(t)).norm() < 1e-9);
        let vi = frac_integ_contour(&f, c(0.5), 1.0, 0.5, t, &set).unwrap();
        let ei = hyp2f1(c(1.0), c(1.0), c(1.5), -t).unwrap() / gamma(c(1.5)).unwrap();
        assert!((vi.value - ei).norm() < 1e-8, "{:?} vs {ei}", vi);
        let vi0 = frac_integ_contour(&f, c(0.0), 1.0, 0.5, t, &set).unwrap();
        assert!((vi0.value - f.eval(t)).norm() < 1e-9);
        let extra = ContourSettings { extra_factorial: true, ..set };
        let bad = frac_integ_contour(&f, c(0.0), 1.0, 0.5, t, &extra).unwrap();
        assert!((bad.value - f.eval(t)).norm() > 1e-3);
    }

    #[test]
    fn contour_exp() {
        let f = AnalyticOracle::exp();
        let set = ContourSettings::default();
        let t = c(0.1);
        let v = frac_deriv_contour(&f, c(0.5), 2.0, 0.5, t, &set).unwrap();
        let e = frac_deriv_series(&builtin::exp(40), c(0.5)).unwrap().eval(t).value;
        assert!((v.value - e).norm() < 1e-7);
        assert!(frac_deriv_contour(&f, c(0.5), 0.5, 0.5, t, &set).is_err());
    }

    #[test]
    fn h1_forms() {
        let f = AnalyticOracle::rational_decay();
        let q = QuadratureSpec::default();
        let t = c(0.3);
        let v = frac_h1(&f, c(0.0), 0.5, t, Mode::Deriv, &q).unwrap();
        assert!((v - f.eval(t)).norm() < 1e-9);
        // Taylor series of t/(1+t^2)^2 = sum (-1)^m (m+1) t^{2m+1}
        let s = PowerSeries::from_fn(120, |k| if k % 2 == 1 { let m = (k - 1) / 2; c(if m % 2 == 0 { 1.0 } else { -1.0 } * (m as f64 + 1.0)) } else { c(0.0) }).unwrap();
        let t = c(0.2);
        let v = frac_h1(&f, c(0.5), 0.5, t, Mode::Deriv, &q).unwrap();
        let e = frac_deriv_series(&s, c(0.5)).unwrap().eval(t).value;
        assert!((v - e).norm() < 1e-8, "{v} vs {e}");
        let vi = frac_h1(&f, c(0.5), 0.5, c(0.1), Mode::Integ, &q).unwrap();
        let ei = frac_integ_series(&s, c(0.5)).unwrap().eval(c(0.1)).value;
        assert!((vi - ei).norm() < 1e-8);
    }

    #[test]
    fn psi_examples() {
        let g = builtin::geometric(10);
        assert_eq!(psi_polynomial(&g, 3).unwrap().coeffs, vec![c(1.0), c(3.0), c(3.0), c(1.0)]);
        assert_eq!(psi_polynomial(&g, 0).unwrap().coeffs, vec![c(1.0)]);
        let e = psi_polynomial(&builtin::exp(10), 2).unwrap().coeffs;
        assert_eq!(e, vec![c(1.0), c(-2.0), c(0.5)]);
        let l = psi_limit_check(&builtin::geometric(64), 2, c(0.5), 1e-4).unwrap();
        assert!((l.psi - 2.25).norm() < 1e-14);
        assert!(l.residual < 1e-3 * 2.25);
        let l2 = psi_limit_check(&builtin::geometric(64), 2, c(0.5), 5e-5).unwrap();
        let ratio = l.residual / l2.residual;
        assert!((1.8..=2.2).contains(&ratio), "{ratio}");
    }

    #[test]
    fn psi_from_contour() {
        let q = QuadratureSpec::default();
        let f = psi_coefficients_contour(&AnalyticOracle::geometric(), 3, 1.0, 0.5, &q).unwrap();
        for (j, v) in f.iter().enumerate() {
            let e = if j % 2 == 0 { 1.0 } else { -1.0 };
            assert!((v - e).norm() < 1e-9, "{j}: {v}");
        }
        let e = psi_coefficients_contour(&AnalyticOracle::exp(), 4, 2.0, 0.5, &q).unwrap();
        let mut fact = 1.0;
        for (j, v) in e.iter().enumerate() {
            if j > 0 {
                fact *= j as f64;
            }
            assert!((v - 1.0 / fact).norm() < 1e-8);
        }
    }

    #[test]
    fn no_pole_in_alpha() {
        let g = builtin::geometric(64);
        for n in 0..3 {
            assert!(alpha_pole_residual(&g, n, c(0.3), 0.1, 32).unwrap() < 1e-6);
        }
    }
}
