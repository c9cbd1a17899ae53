//! The tube `D(a) = {t : dist(t, (0, inf)) < a}`, its boundary `gamma(a)` and
//! adaptive Gauss-Kronrod quadrature along it.
//!
//! `gamma(a)` consists of the upper ray `Im t = a`, the left half circle `|t| = a`
//! and the lower ray `Im t = -a`. The positive orientation ([`Orientation::Ccw`])
//! runs in along the upper ray, around the half circle through `-a` and out along
//! the lower ray, so that closing the path far to the right encircles the origin
//! counterclockwise: `int e^{-xi}/xi dxi = 2 pi i`.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

type C = Complex64;

/// Black-box analytic function with the growth data of its tube class:
/// analytic in `D(radius)` and of exponential type `type_bound` along `(0, inf)`.
#[derive(Clone)]
pub struct AnalyticOracle {
    f: Arc<dyn Fn(C) -> C + Send + Sync>,
    pub radius: f64,
    pub type_bound: f64,
    pub name: String,
}

impl fmt::Debug for AnalyticOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AnalyticOracle")
            .field("name", &self.name)
            .field("radius", &self.radius)
            .field("type_bound", &self.type_bound)
            .finish()
    }
}

impl AnalyticOracle {
    pub fn new(name: impl Into<String>, radius: f64, type_bound: f64, f: impl Fn(C) -> C + Send + Sync + 'static) -> Self {
        AnalyticOracle { f: Arc::new(f), radius, type_bound, name: name.into() }
    }

    pub fn eval(&self, t: C) -> C {
        (self.f)(t)
    }

    /// `1/(1+t)`: radius 1, type 0.
    pub fn geometric() -> Self {
        Self::new("geometric", 1.0, 0.0, |t| 1.0 / (1.0 + t))
    }

    /// `e^t`: entire, type 1.
    pub fn exp() -> Self {
        Self::new("exp", f64::INFINITY, 1.0, |t: C| t.exp())
    }

    /// `t / (1+t^2)^2`: radius 1, decays like `t^-3`.
    pub fn rational_decay() -> Self {
        Self::new("rational_decay", 1.0, 0.0, |t: C| t / ((1.0 + t * t) * (1.0 + t * t)))
    }

    /// Polynomial with the given coefficients.
    pub fn polynomial(coeffs: Vec<C>) -> Self {
        Self::new("polynomial", f64::INFINITY, 0.0, move |t| coeffs.iter().rev().fold(C::new(0.0, 0.0), |acc, c| acc * t + c))
    }
}

/// Distance from `t` to the ray `[0, inf)`.
pub fn tube_distance(t: C) -> f64 {
    if t.re >= 0.0 {
        t.im.abs()
    } else {
        t.norm()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Ccw,
    Cw,
}

/// `gamma(A)` truncated at `Re t = T`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NeighborhoodContour {
    pub a: f64,
    pub t_max: f64,
    pub orientation: Orientation,
    pub samples_per_unit: usize,
}

/// One smooth piece of a path, parametrized by `s in [0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Piece {
    /// `p0 + s (p1 - p0)`
    Segment { p0: C, p1: C },
    /// `center + radius e^{i (th0 + s (th1 - th0))}`
    Arc { center: C, radius: f64, th0: f64, th1: f64 },
    /// The half line `base + x dir`, `x in [0, inf)`, mapped by `x = s/(1-s)`;
    /// `inbound` traverses it towards `base`.
    HalfLine { base: C, dir: C, inbound: bool },
}

impl Piece {
    /// Point and derivative at parameter `s`.
    pub fn point(&self, s: f64) -> (C, C) {
        match *self {
            Piece::Segment { p0, p1 } => (p0 + (p1 - p0) * s, p1 - p0),
            Piece::Arc { center, radius, th0, th1 } => {
                let e = C::from_polar(radius, th0 + s * (th1 - th0));
                (center + e, C::new(0.0, th1 - th0) * e)
            }
            Piece::HalfLine { base, dir, inbound } => {
                let u = if inbound { 1.0 - s } else { s };
                let x = u / (1.0 - u);
                let dx = 1.0 / ((1.0 - u) * (1.0 - u));
                let sg = if inbound { -1.0 } else { 1.0 };
                (base + dir * x, dir * (sg * dx))
            }
        }
    }

    fn initial_panels(&self, per_unit: usize) -> usize {
        let per_unit = per_unit.max(1) as f64;
        match *self {
            Piece::Segment { p0, p1 } => ((p1 - p0).norm() * per_unit).ceil().max(1.0) as usize,
            // double density on the cap
            Piece::Arc { radius, th0, th1, .. } => (2.0 * radius * (th1 - th0).abs() * per_unit).ceil().max(2.0) as usize,
            Piece::HalfLine { .. } => 8,
        }
    }

    fn reversed(&self) -> Piece {
        match *self {
            Piece::Segment { p0, p1 } => Piece::Segment { p0: p1, p1: p0 },
            Piece::Arc { center, radius, th0, th1 } => Piece::Arc { center, radius, th0: th1, th1: th0 },
            Piece::HalfLine { base, dir, inbound } => Piece::HalfLine { base, dir, inbound: !inbound },
        }
    }
}

impl NeighborhoodContour {
    /// Samples per unit length used for the initial panels.
    pub const DEFAULT_SAMPLES: usize = 1;

    pub fn new(a: f64, t_max: f64, orientation: Orientation) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::domain(format!("contour offset must be positive, got {a}")));
        }
        if !(t_max > a) {
            return Err(Error::domain(format!("truncation T = {t_max} must exceed A = {a}")));
        }
        Ok(NeighborhoodContour { a, t_max, orientation, samples_per_unit: Self::DEFAULT_SAMPLES })
    }

    /// Truncation `T = A + 40/r` for integrands decaying like `e^{-r Re t}`.
    pub fn for_decay(a: f64, r: f64, orientation: Orientation) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::domain("decay rate must be positive"));
        }
        Self::new(a, a + 40.0 / r, orientation)
    }

    fn ccw_pieces(&self, infinite: bool) -> Vec<Piece> {
        let ia = C::new(0.0, self.a);
        let cap = Piece::Arc { center: C::new(0.0, 0.0), radius: self.a, th0: PI / 2.0, th1: 1.5 * PI };
        let one = C::new(1.0, 0.0);
        if infinite {
            vec![
                Piece::HalfLine { base: ia, dir: one, inbound: true },
                cap,
                Piece::HalfLine { base: -ia, dir: one, inbound: false },
            ]
        } else {
            vec![
                Piece::Segment { p0: self.t_max + ia, p1: ia },
                cap,
                Piece::Segment { p0: -ia, p1: self.t_max - ia },
            ]
        }
    }

    /// Pieces in traversal order; with `infinite` the rays run to infinity.
    pub fn pieces(&self, infinite: bool) -> Vec<Piece> {
        let p = self.ccw_pieces(infinite);
        match self.orientation {
            Orientation::Ccw => p,
            Orientation::Cw => p.iter().rev().map(Piece::reversed).collect(),
        }
    }

    /// Point at arc-length-proportional parameter `u in [0, 1]` of the truncated path.
    pub fn point_at(&self, u: f64) -> C {
        let ray = self.t_max;
        let cap = PI * self.a;
        let total = 2.0 * ray + cap;
        let pieces = self.pieces(false);
        let mut x = u.clamp(0.0, 1.0) * total;
        for (p, l) in pieces.iter().zip([ray, cap, ray]) {
            if x <= l {
                return p.point(x / l).0;
            }
            x -= l;
        }
        pieces[2].point(1.0).0
    }

    /// Whether `t` lies inside the tube bounded by this contour.
    pub fn contains(&self, t: C) -> bool {
        tube_distance(t) < self.a
    }
}

/// `|f(t)| <= constant e^{-rate Re t}` for `Re t >= T` on both rays.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayCertificate {
    pub rate: f64,
    pub constant: f64,
}

/// How the rays beyond `Re t = T` are handled.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Tail {
    /// Truncate at `T`; the tail is not accounted for.
    Truncate,
    /// Truncate at `T` and add the analytic tail bound to the error estimate.
    Certified(DecayCertificate),
    /// Integrate the rays to infinity through `x = s/(1-s)`.
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    GaussKronrod15,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub tol: f64,
    pub max_depth: usize,
    pub rule: Rule,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { tol: 1e-12, max_depth: 40, rule: Rule::GaussKronrod15 }
    }
}

impl QuadratureSpec {
    pub fn with_tol(tol: f64) -> Result<Self> {
        let s = QuadratureSpec { tol, ..Default::default() };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol >= 1e-14) {
            return Err(Error::domain(format!("quadrature tolerance {} below 1e-14", self.tol)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathIntegral {
    pub value: C,
    pub err_est: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VecPathIntegral {
    pub value: Vec<C>,
    pub err_est: Vec<f64>,
}

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

struct Panel {
    piece: usize,
    lo: f64,
    hi: f64,
    depth: usize,
    val: Vec<C>,
    err: Vec<f64>,
    abs: Vec<f64>,
}

fn gk15<F>(f: &F, piece: &Piece, lo: f64, hi: f64, n: usize, arclen: bool) -> Result<(Vec<C>, Vec<f64>, Vec<f64>)>
where
    F: Fn(C) -> Result<Vec<C>>,
{
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    let mut k = vec![C::new(0.0, 0.0); n];
    let mut g = vec![C::new(0.0, 0.0); n];
    let mut ab = vec![0.0; n];
    let mut add = |x: f64, wk: f64, wg: f64| -> Result<()> {
        let (z, dz) = piece.point(x);
        let dz = if arclen { C::new(dz.norm(), 0.0) } else { dz };
        let vals = f(z)?;
        if vals.len() != n {
            return Err(Error::domain("integrand returned a vector of the wrong length"));
        }
        for (j, v) in vals.into_iter().enumerate() {
            let y = v * dz;
            if !(y.re.is_finite() && y.im.is_finite()) {
                return Err(Error::domain(format!("integrand not finite at {z}")));
            }
            k[j] += y * wk;
            g[j] += y * wg;
            ab[j] += y.norm() * wk;
        }
        Ok(())
    };
    for i in 0..8 {
        let wg = if i % 2 == 1 { WG[i / 2] } else { 0.0 };
        if i == 7 {
            add(mid, WGK[7], wg)?;
        } else {
            add(mid - half * XGK[i], WGK[i], wg)?;
            add(mid + half * XGK[i], WGK[i], wg)?;
        }
    }
    let err = k.iter().zip(&g).map(|(a, b)| (a - b).norm() * half.abs()).collect();
    let val = k.into_iter().map(|v| v * half).collect();
    let abs = ab.into_iter().map(|v| v * half.abs()).collect();
    Ok((val, err, abs))
}

/// Adaptive quadrature of a vector-valued integrand along a sequence of pieces.
///
/// Panels are bisected globally, worst first, until every component `j` satisfies
/// `sum err_j <= tol * int |f_j| |dxi|`.
pub fn integrate_pieces_vec<F>(f: &F, n: usize, pieces: &[Piece], per_unit: usize, spec: &QuadratureSpec) -> Result<VecPathIntegral>
where
    F: Fn(C) -> Result<Vec<C>>,
{
    adaptive(f, n, pieces, per_unit, spec, false)
}

fn adaptive<F>(f: &F, n: usize, pieces: &[Piece], per_unit: usize, spec: &QuadratureSpec, arclen: bool) -> Result<VecPathIntegral>
where
    F: Fn(C) -> Result<Vec<C>>,
{
    spec.validate()?;
    let mut panels = Vec::new();
    for (pi, p) in pieces.iter().enumerate() {
        let m = p.initial_panels(per_unit);
        for i in 0..m {
            let lo = i as f64 / m as f64;
            let hi = (i + 1) as f64 / m as f64;
            let (val, err, abs) = gk15(f, p, lo, hi, n, arclen)?;
            panels.push(Panel { piece: pi, lo, hi, depth: 0, val, err, abs });
        }
    }
    let max_panels = 20_000;
    loop {
        let mut err = vec![0.0; n];
        let mut abs = vec![0.0; n];
        for p in &panels {
            for j in 0..n {
                err[j] += p.err[j];
                abs[j] += p.abs[j];
            }
        }
        let target: Vec<f64> = abs.iter().map(|a| spec.tol * a).collect();
        let done = (0..n).all(|j| err[j] <= target[j]);
        let score = |p: &Panel| -> f64 {
            (0..n).map(|j| if abs[j] > 0.0 { p.err[j] / abs[j] } else { 0.0 }).fold(0.0, f64::max)
        };
        if done {
            let mut value = vec![C::new(0.0, 0.0); n];
            // deterministic order: by piece then parameter
            panels.sort_by(|a, b| (a.piece, a.lo).partial_cmp(&(b.piece, b.lo)).unwrap());
            for p in &panels {
                for j in 0..n {
                    value[j] += p.val[j];
                }
            }
            return Ok(VecPathIntegral { value, err_est: err });
        }
        let (wi, _) = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| p.depth < spec.max_depth)
            .map(|(i, p)| (i, score(p)))
            .fold((usize::MAX, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if wi == usize::MAX || panels.len() >= max_panels {
            let worst = panels.iter().max_by(|a, b| score(a).partial_cmp(&score(b)).unwrap()).unwrap();
            let (z0, _) = pieces[worst.piece].point(worst.lo);
            let (z1, _) = pieces[worst.piece].point(worst.hi);
            return Err(Error::nonconv(format!(
                "quadrature did not reach tol {}: worst segment {z0} .. {z1}, error {:.3e}",
                spec.tol,
                err.iter().cloned().fold(0.0, f64::max)
            )));
        }
        let p = panels.swap_remove(wi);
        let mid = 0.5 * (p.lo + p.hi);
        for (lo, hi) in [(p.lo, mid), (mid, p.hi)] {
            let (val, err, abs) = gk15(f, &pieces[p.piece], lo, hi, n, arclen)?;
            panels.push(Panel { piece: p.piece, lo, hi, depth: p.depth + 1, val, err, abs });
        }
    }
}

/// Scalar version of [`integrate_pieces_vec`].
pub fn integrate_pieces<F>(f: &F, pieces: &[Piece], per_unit: usize, spec: &QuadratureSpec) -> Result<PathIntegral>
where
    F: Fn(C) -> Result<C>,
{
    let g = |z: C| f(z).map(|v| vec![v]);
    let r = integrate_pieces_vec(&g, 1, pieces, per_unit, spec)?;
    Ok(PathIntegral { value: r.value[0], err_est: r.err_est[0] })
}

/// `int f(xi) |dxi|` for a real integrand along the pieces.
pub fn integrate_pieces_abs<F>(f: &F, pieces: &[Piece], per_unit: usize, spec: &QuadratureSpec) -> Result<PathIntegral>
where
    F: Fn(C) -> Result<f64>,
{
    let g = |z: C| f(z).map(|v| vec![C::new(v, 0.0)]);
    let r = adaptive(&g, 1, pieces, per_unit, spec, true)?;
    Ok(PathIntegral { value: r.value[0], err_est: r.err_est[0] })
}

/// `int_path f(xi) dxi` along the contour, vector-valued.
pub fn integrate_path_vec<F>(f: &F, n: usize, path: &NeighborhoodContour, spec: &QuadratureSpec, tail: Tail) -> Result<VecPathIntegral>
where
    F: Fn(C) -> Result<Vec<C>>,
{
    let infinite = matches!(tail, Tail::Infinite);
    let mut out = integrate_pieces_vec(f, n, &path.pieces(infinite), path.samples_per_unit, spec)?;
    if let Tail::Certified(cert) = tail {
        if !(cert.rate > 0.0) {
            return Err(Error::pre("decay certificate needs a positive rate"));
        }
        // two rays, each bounded by constant * e^{-rate T} / rate
        let bound = 2.0 * cert.constant * (-cert.rate * path.t_max).exp() / cert.rate;
        out.err_est.iter_mut().for_each(|e| *e += bound);
    }
    Ok(out)
}

/// `int_path f(xi) dxi` along the contour.
pub fn integrate_path<F>(f: &F, path: &NeighborhoodContour, spec: &QuadratureSpec, tail: Tail) -> Result<PathIntegral>
where
    F: Fn(C) -> Result<C>,
{
    let g = |z: C| f(z).map(|v| vec![v]);
    let r = integrate_path_vec(&g, 1, path, spec, tail)?;
    Ok(PathIntegral { value: r.value[0], err_est: r.err_est[0] })
}

/// Sampled `H^1(a)` norm `int_{gamma(a)} |F(xi)/xi| |dxi|`.
///
/// Fails with a precondition error if the integral does not converge or the
/// integrand does not decay faster than `1/|xi|` along the rays.
pub fn h1_norm(f: &AnalyticOracle, a: f64, spec: &QuadratureSpec) -> Result<f64> {
    for x in [1e4, 1e6] {
        for s in [1.0, -1.0] {
            let xi = C::new(x, s * a);
            let v = (f.eval(xi) / xi).norm() * x;
            if !(v.is_finite()) || v > 1e-2 {
                return Err(Error::pre(format!("{} is not in H1({a}): |F(xi)| ~ {v:.3e} at xi = {xi}", f.name)));
            }
        }
    }
    let path = NeighborhoodContour::new(a, 2.0 * a, Orientation::Ccw)?;
    let g = |z: C| Ok(vec![C::new((f.eval(z) / z).norm(), 0.0)]);
    let r = adaptive(&g, 1, &path.pieces(true), 1, spec, true).map_err(|e| Error::pre(format!("H1 norm: {e}")))?;
    Ok(r.value[0].re)
}

/// Cauchy reproduction `(1/2 pi i) int_{gamma(a)} F(xi) / (xi - t) dxi` for `F` in `H^1(a)`.
pub fn cauchy_eval(f: &AnalyticOracle, a: f64, t: C, spec: &QuadratureSpec) -> Result<PathIntegral> {
    if tube_distance(t) >= a {
        return Err(Error::domain(format!("t = {t} is outside D({a})")));
    }
    h1_norm(f, a, spec)?;
    let path = NeighborhoodContour::new(a, 2.0 * a, Orientation::Ccw)?;
    let g = |z: C| Ok(f.eval(z) / (z - t));
    let r = integrate_path(&g, &path, spec, Tail::Infinite)?;
    let k = C::new(0.0, 2.0 * PI);
    Ok(PathIntegral { value: r.value / k, err_est: r.err_est / (2.0 * PI) })
}
