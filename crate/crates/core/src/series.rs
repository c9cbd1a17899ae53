//! Truncated complex power series `F(t) = sum f_k t^k` and growth profiles.

use crate::error::{Error, Result};
use crate::precision::{DdComplex, Precision};
use crate::special::gamma::ln_gamma_re;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Finite coefficient vector with optional radius and exponential-type hints.
///
/// The JSON form is `{"coeffs":[[re,im],...],"radius_hint":r|null,"type_hint":R|null}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
    #[serde(default)]
    radius_hint: Option<f64>,
    #[serde(default)]
    type_hint: Option<f64>,
}

/// Radius of convergence `a` at the origin and exponential type `R` along `(0, inf)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthProfile {
    pub radius: f64,
    pub type_bound: Option<f64>,
}

/// Value of a truncated series together with the magnitude of its last term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub value: Complex64,
    pub last_term: f64,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("power series needs at least one coefficient"));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::domain("non-finite coefficient"));
        }
        Ok(PowerSeries { coeffs, radius_hint: None, type_hint: None })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Builds the series from a coefficient generator.
    pub fn from_fn(n: usize, f: impl Fn(usize) -> Complex64) -> Result<Self> {
        Self::new((0..n).map(f).collect())
    }

    pub fn with_hints(mut self, radius: Option<f64>, type_bound: Option<f64>) -> Self {
        self.radius_hint = radius;
        self.type_hint = type_bound;
        self
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }
    pub fn radius_hint(&self) -> Option<f64> {
        self.radius_hint
    }
    pub fn type_hint(&self) -> Option<f64> {
        self.type_hint
    }

    /// Horner evaluation; `last_term` is `|f_{n-1} t^{n-1}|`, a crude tail indicator.
    pub fn eval(&self, t: Complex64) -> SeriesValue {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        let n = self.coeffs.len() - 1;
        let last_term = self.coeffs[n].norm() * t.norm().powi(n as i32);
        SeriesValue { value: acc, last_term }
    }

    /// [`eval`](Self::eval) restricted to the disc `|t| < radius_hint` when the hint is set.
    pub fn eval_checked(&self, t: Complex64) -> Result<SeriesValue> {
        if let Some(r) = self.radius_hint {
            if t.norm() >= r {
                return Err(Error::domain(format!("|t| = {} is outside the radius {r}", t.norm())));
            }
        }
        Ok(self.eval(t))
    }

    /// Horner evaluation in the requested precision.
    pub fn eval_with(&self, t: Complex64, prec: Precision) -> Complex64 {
        match prec {
            Precision::Double => self.eval(t).value,
            Precision::Extended => {
                let tt = DdComplex::from(t);
                let mut acc = DdComplex::default();
                for c in self.coeffs.iter().rev() {
                    acc = acc * tt + DdComplex::from(*c);
                }
                acc.to_c64()
            }
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c *= s);
        out
    }

    /// Coefficient-wise sum; the shorter series is padded with zeros.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.len().max(other.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        PowerSeries { coeffs, radius_hint: min_hint(self.radius_hint, other.radius_hint), type_hint: max_hint(self.type_hint, other.type_hint) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Cauchy product of the two coefficient vectors, length `n + m - 1`.
    /// For truncated inputs only the first `min(n, m)` outputs are exact.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.len() + other.len() - 1;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let type_hint = match (self.type_hint, other.type_hint) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        PowerSeries { coeffs, radius_hint: min_hint(self.radius_hint, other.radius_hint), type_hint }
    }

    /// Cauchy product truncated to the longer operand, so an exact polynomial
    /// factor (`[1, 1]`) does not shorten the other series.
    pub fn cauchy_product(&self, other: &Self) -> Self {
        self.mul(other).truncate(self.len().max(other.len()))
    }

    /// Keeps the first `n` coefficients (at least one).
    pub fn truncate(&self, n: usize) -> Self {
        let mut out = self.clone();
        out.coeffs.truncate(n.max(1));
        out
    }

    /// Term-wise derivative `F'(t)`.
    pub fn derivative(&self) -> Self {
        let coeffs: Vec<_> = if self.len() == 1 {
            vec![Complex64::new(0.0, 0.0)]
        } else {
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect()
        };
        PowerSeries { coeffs, radius_hint: self.radius_hint, type_hint: self.type_hint }
    }

    /// Re-expansion `G(s) = F(t0 + s)` keeping `n` coefficients.
    /// Exact for polynomials; for truncations the error is the neglected tail at `|t0|`.
    pub fn recenter(&self, t0: Complex64, n: usize) -> Self {
        // repeated synthetic division
        let mut work = self.coeffs.clone();
        let deg = work.len();
        let mut out = Vec::with_capacity(n.min(deg));
        for j in 0..n.min(deg) {
            for i in (j..deg - 1).rev() {
                let v = work[i + 1] * t0;
                work[i] += v;
            }
            out.push(work[j]);
        }
        PowerSeries { coeffs: out, radius_hint: None, type_hint: None }
    }

    /// True when every coefficient past `deg` vanishes exactly.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| *c != Complex64::new(0.0, 0.0)).unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series serialization")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: PowerSeries = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let hints = (raw.radius_hint, raw.type_hint);
        Ok(PowerSeries::new(raw.coeffs)?.with_hints(hints.0, hints.1))
    }

    /// Estimate of the radius of convergence and of the exponential type.
    ///
    /// Hints take priority. Otherwise `ln|f_k|` and `ln|f_k k!|` are fitted by least
    /// squares over the upper half of the nonzero coefficients; whichever is closer to
    /// linear decides between a finite radius and an entire function.
    pub fn estimate_growth(&self) -> GrowthProfile {
        let deg = self.degree();
        let nonzero: Vec<(f64, f64)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > 1e-300)
            .map(|(k, c)| (k as f64, c.norm().ln()))
            .collect();
        let trailing_zero = self.len() > deg + 1 && self.len() >= 2 * (deg + 1);
        let mut radius = f64::INFINITY;
        let mut tb = Some(0.0);
        if !trailing_zero && nonzero.len() >= 6 {
            let tail: Vec<(f64, f64)> = nonzero[nonzero.len() / 2..].to_vec();
            let (s1, r1) = linear_fit(&tail);
            let scaled: Vec<(f64, f64)> = tail.iter().map(|&(k, l)| (k, l + ln_gamma_re(k + 1.0))).collect();
            let (s2, r2) = linear_fit(&scaled);
            if r2 < r1 {
                radius = f64::INFINITY;
                tb = Some(s2.exp());
            } else {
                radius = (-s1).exp();
                tb = None;
            }
        }
        GrowthProfile {
            radius: self.radius_hint.unwrap_or(radius),
            type_bound: self.type_hint.or(tb),
        }
    }
}

fn min_hint(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        _ => None,
    }
}

fn max_hint(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        _ => None,
    }
}

/// Least-squares slope and rms residual.
fn linear_fit(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let res = (pts.iter().map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2)).sum::<f64>() / n).sqrt();
    (slope, res)
}

/// Taylor coefficients of a few reference functions.
pub mod builtin {
    use super::*;

    /// `1/(1+t)`: radius 1, type 0.
    pub fn geometric(n: usize) -> PowerSeries {
        PowerSeries::from_fn(n, |k| Complex64::new(if k % 2 == 0 { 1.0 } else { -1.0 }, 0.0))
            .expect("nonempty")
            .with_hints(Some(1.0), Some(0.0))
    }

    /// `exp(t)`: entire, type 1.
    pub fn exp(n: usize) -> PowerSeries {
        let mut c = Vec::with_capacity(n);
        let mut x = 1.0;
        for k in 0..n {
            c.push(Complex64::new(x, 0.0));
            x /= k as f64 + 1.0;
        }
        PowerSeries::new(c).expect("nonempty").with_hints(Some(f64::INFINITY), Some(1.0))
    }

    /// `sum (a)_k (b)_k / (c)_k / k! * (sign t)^k`, the hypergeometric series.
    pub fn hyp2f1(a: Complex64, b: Complex64, c: Complex64, sign: f64, n: usize) -> PowerSeries {
        let mut out = Vec::with_capacity(n);
        let mut x = Complex64::new(1.0, 0.0);
        for k in 0..n {
            out.push(x);
            let kf = k as f64;
            x *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * sign;
        }
        PowerSeries::new(out).expect("nonempty").with_hints(Some(1.0), None)
    }
}
