//! Generalized hypergeometric series `pFq`.

use super::gamma::nonpositive_integer;
use super::hyp2f1::hyp2f1;
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

type C = Complex64;

/// Upper parameters `num` and lower parameters `den`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PFQParams {
    pub num: Vec<C>,
    pub den: Vec<C>,
}

const BUDGET: usize = 100_000;

impl PFQParams {
    pub fn new(num: Vec<C>, den: Vec<C>) -> Result<Self> {
        if let Some(b) = den.iter().find(|b| nonpositive_integer(**b).is_some()) {
            return Err(Error::domain(format!("lower parameter {b} is a non-positive integer")));
        }
        Ok(PFQParams { num, den })
    }

    pub fn real(num: &[f64], den: &[f64]) -> Result<Self> {
        Self::new(num.iter().map(|&x| C::new(x, 0.0)).collect(), den.iter().map(|&x| C::new(x, 0.0)).collect())
    }

    /// Removes pairs of equal upper and lower parameters.
    pub fn reduce(&self) -> PFQParams {
        let mut num = self.num.clone();
        let mut den = Vec::new();
        for b in &self.den {
            if let Some(i) = num.iter().position(|a| (a - b).norm() <= 1e-15 * (1.0 + b.norm())) {
                num.remove(i);
            } else {
                den.push(*b);
            }
        }
        PFQParams { num, den }
    }

    /// k-th Taylor coefficient `prod (a_i)_k / prod (b_j)_k / k!`.
    pub fn coefficient(&self, k: usize) -> C {
        let mut x = C::new(1.0, 0.0);
        for j in 0..k {
            let jf = j as f64;
            for a in &self.num {
                x *= a + jf;
            }
            for b in &self.den {
                x /= b + jf;
            }
            x /= jf + 1.0;
        }
        x
    }
}

/// Sums the series at `z`; `2F1` after reduction goes through the continued evaluator.
pub fn hyp_pfq(params: &PFQParams, z: C) -> Result<C> {
    let p = params.reduce();
    let (np, nq) = (p.num.len(), p.den.len());
    if np == 2 && nq == 1 {
        return hyp2f1(p.num[0], p.num[1], p.den[0], z);
    }
    if np == 1 && nq == 0 {
        // (1 - z)^{-a}
        return Ok((1.0 - z).powc(-p.num[0]));
    }
    if np > nq + 1 || (np == nq + 1 && z.norm() >= 1.0) {
        if !p.num.iter().any(|a| nonpositive_integer(*a).is_some()) {
            return Err(Error::domain(format!("{np}F{nq} series diverges at |z| = {}", z.norm())));
        }
    }
    let mut term = C::new(1.0, 0.0);
    let mut sum = term;
    let mut small = 0;
    for k in 0..BUDGET {
        let kf = k as f64;
        let mut ratio = z / (kf + 1.0);
        for a in &p.num {
            ratio *= a + kf;
        }
        for b in &p.den {
            ratio /= b + kf;
        }
        term *= ratio;
        sum += term;
        if term == C::new(0.0, 0.0) {
            return Ok(sum);
        }
        if term.norm() <= 1e-17 * sum.norm() {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::nonconv("pFq series exceeded its term budget"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let p = PFQParams::real(&[1.0, 1.0], &[1.0]).unwrap();
        let v = hyp_pfq(&p, C::new(-0.5, 0.0)).unwrap();
        assert!((v.re - 2.0 / 3.0).abs() < 1e-15);
        let p = PFQParams::real(&[0.0, 0.3, 2.0], &[1.5, 2.0]).unwrap();
        assert_eq!(hyp_pfq(&p, C::new(0.9, 0.3)).unwrap(), C::new(1.0, 0.0));
        assert!(PFQParams::real(&[1.0], &[-2.0]).is_err());
    }

    #[test]
    fn three_f_two_brute_force() {
        let p = PFQParams::real(&[0.5, 0.5, 1.5], &[1.0, 1.0]).unwrap();
        let v = hyp_pfq(&p, C::new(0.25, 0.0)).unwrap();
        let mut s = 0.0;
        for k in 0..10_000 {
            s += p.coefficient(k).re * 0.25f64.powi(k as i32);
        }
        assert!((v.re - s).abs() < 1e-12);
    }
}
