//! Analytic continuation of Gauss hypergeometric functions by Taylor stepping
//! along paths, using the hypergeometric ODE
//! `z(1-z) w'' + [c - (a+b+1) z] w' - a b w = 0`.
//!
//! Every solution of the ODE can be continued this way, so the same engine serves
//! the principal branch (paths from the origin) and points on the logarithmic
//! Riemann surface (arcs around the branch points).

use crate::error::{Error, Result};
use num_complex::Complex64;

type C = Complex64;

/// Value and derivative of an ODE solution at a point.
#[derive(Clone, Copy, Debug)]
pub struct Jet {
    pub z: C,
    pub w: C,
    pub dw: C,
}

#[derive(Clone, Copy, Debug)]
pub struct HypOde {
    pub a: C,
    pub b: C,
    pub c: C,
}

const STEP_FRACTION: f64 = 0.5;
const MAX_TERMS: usize = 600;
const MAX_STEPS: usize = 200_000;

impl HypOde {
    pub fn new(a: C, b: C, c: C) -> Self {
        HypOde { a, b, c }
    }

    /// Distance from `z` to the nearest finite singular point (0 or 1).
    pub fn singular_distance(z: C) -> f64 {
        z.norm().min((z - 1.0).norm())
    }

    /// Moves the jet from `j.z` to `j.z + h` with one Taylor expansion.
    /// Requires `|h| < singular_distance(j.z)`.
    pub fn step(&self, j: Jet, h: C) -> Result<Jet> {
        let z0 = j.z;
        let p0 = z0 * (1.0 - z0);
        let p1 = 1.0 - 2.0 * z0;
        let q0 = self.c - (self.a + self.b + 1.0) * z0;
        let mut wm = j.w; // w_n
        let mut wn = j.dw; // w_{n+1}
        let mut val = wm + wn * h;
        let mut der = wn;
        let mut hp = h; // h^{n+1}
        let scale = j.w.norm() + j.dw.norm() * h.norm() + 1e-300;
        let mut small = 0;
        for n in 0..MAX_TERMS {
            let nf = n as f64;
            let next = -((nf + 1.0) * (p1 * nf + q0) * wn - (nf + self.a) * (nf + self.b) * wm)
                / (p0 * (nf + 1.0) * (nf + 2.0));
            // next = w_{n+2}
            let dterm = next * hp * (nf + 2.0);
            hp *= h;
            let term = next * hp;
            val += term;
            der += dterm;
            if term.norm() <= 1e-18 * (val.norm() + scale) && dterm.norm() * h.norm() <= 1e-18 * (der.norm() * h.norm() + scale) {
                small += 1;
                if small >= 3 && n > 4 {
                    return Ok(Jet { z: z0 + h, w: val, dw: der });
                }
            } else {
                small = 0;
            }
            wm = wn;
            wn = next;
        }
        Err(Error::nonconv(format!("Taylor step from {z0} by {h} did not converge")))
    }

    /// Continues along the straight segment from `j.z` to `target`.
    pub fn segment(&self, mut j: Jet, target: C) -> Result<Jet> {
        let mut steps = 0;
        loop {
            let rem = target - j.z;
            if rem.norm() == 0.0 {
                return Ok(j);
            }
            let r0 = Self::singular_distance(j.z);
            if r0 < 1e-12 {
                return Err(Error::domain("continuation path hits a singular point"));
            }
            let hmax = STEP_FRACTION * r0;
            let h = if rem.norm() <= hmax { rem } else { rem * (hmax / rem.norm()) };
            j = self.step(j, h)?;
            if h == rem {
                j.z = target;
                return Ok(j);
            }
            steps += 1;
            if steps > MAX_STEPS {
                return Err(Error::nonconv("continuation step budget exhausted"));
            }
        }
    }

    /// Continues along a polyline through `points`.
    pub fn polyline(&self, mut j: Jet, points: &[C]) -> Result<Jet> {
        for &p in points {
            j = self.segment(j, p)?;
        }
        Ok(j)
    }

    /// Continues along the circular arc `center + rho e^{i s}`, s from `s0` to `s1`.
    /// The jet must sit at `center + rho e^{i s0}`.
    pub fn arc(&self, mut j: Jet, center: C, rho: f64, s0: f64, s1: f64) -> Result<Jet> {
        let dir = (s1 - s0).signum();
        let mut s = s0;
        let mut steps = 0;
        while (s1 - s) * dir > 0.0 {
            let r0 = Self::singular_distance(j.z);
            if r0 < 1e-12 {
                return Err(Error::domain("continuation arc hits a singular point"));
            }
            // chord <= arc length <= STEP_FRACTION * r0
            let ds = (STEP_FRACTION * r0 / rho).min(0.5);
            let s_next = if (s1 - s).abs() <= ds { s1 } else { s + dir * ds };
            let target = center + C::from_polar(rho, s_next);
            j = self.step(j, target - j.z)?;
            j.z = target;
            s = s_next;
            steps += 1;
            if steps > MAX_STEPS {
                return Err(Error::nonconv("continuation step budget exhausted"));
            }
        }
        Ok(j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_along_segment() {
        // 2F1(1,1;1;z) = 1/(1-z)
        let ode = HypOde::new(C::new(1.0, 0.0), C::new(1.0, 0.0), C::new(1.0, 0.0));
        // the origin is a singular point of the ODE; start away from it
        let z0 = C::new(0.1, 0.0);
        let j = Jet { z: z0, w: 1.0 / (1.0 - z0), dw: 1.0 / ((1.0 - z0) * (1.0 - z0)) };
        let target = C::new(-3.0, 2.0);
        let out = ode.segment(j, target).unwrap();
        assert!((out.w - 1.0 / (1.0 - target)).norm() < 1e-13);
    }

    #[test]
    fn log_monodromy_around_one() {
        // 2F1(1,1;2;z) = -ln(1-z)/z; one turn around z = 1 adds -2 pi i / z.
        let ode = HypOde::new(C::new(1.0, 0.0), C::new(1.0, 0.0), C::new(2.0, 0.0));
        let f = |z: C| -(1.0 - z).ln() / z;
        let df = |z: C| (1.0 - z).ln() / (z * z) + 1.0 / (z * (1.0 - z));
        let z0 = C::new(0.5, 0.0);
        let j = Jet { z: z0, w: f(z0), dw: df(z0) };
        let out = ode.arc(j, C::new(1.0, 0.0), 0.5, std::f64::consts::PI, 3.0 * std::f64::consts::PI).unwrap();
        let expected = f(z0) - C::new(0.0, 2.0 * std::f64::consts::PI) / z0;
        assert!((out.w - expected).norm() < 1e-12, "{}", out.w);
    }
}
