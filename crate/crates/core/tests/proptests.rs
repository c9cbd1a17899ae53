use fraccal::frac::{frac_deriv_series, frac_integ_series};
use fraccal::monodromy::{phase_amplitude_recurrence, PWDEParams};
use fraccal::special::connection::{cut_jump_measured, cut_jump_predicted, euler_ltf_check};
use fraccal::special::gamma::{gamma, sin_pi};
use fraccal::special::Hyp2F1Params;
use fraccal::{Complex64 as C, PowerSeries};
use proptest::prelude::*;
use std::f64::consts::PI;

fn cplx(range: std::ops::Range<f64>) -> impl Strategy<Value = C> {
    (range.clone(), range).prop_map(|(re, im)| C::new(re, im))
}

fn series(max_len: usize) -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(cplx(-1.0..1.0), 1..max_len).prop_map(|v| PowerSeries::new(v).unwrap())
}

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_evaluates_to_product_of_values(f in series(12), g in series(12), t in cplx(-0.5..0.5)) {
        let lhs = f.mul(&g).eval(t).value;
        let rhs = f.eval(t).value * g.eval(t).value;
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
    }

    #[test]
    fn gamma_reflection(z in cplx(-2.5..2.5)) {
        prop_assume!((z - z.re.round()).norm() > 1e-3);
        let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap() * sin_pi(z);
        prop_assert!(rel(lhs, C::new(PI, 0.0)) <= 1e-11);
    }

    #[test]
    fn gamma_recurrence(z in cplx(0.1..4.0)) {
        prop_assert!(rel(gamma(z + 1.0).unwrap(), z * gamma(z).unwrap()) <= 1e-12);
    }

    #[test]
    fn deriv_and_integ_are_inverse(f in series(40), alpha in cplx(-0.9..2.5)) {
        let back = frac_integ_series(&frac_deriv_series(&f, alpha).unwrap(), alpha).unwrap();
        for (x, y) in f.coeffs().iter().zip(back.coeffs()) {
            prop_assert!((x - y).norm() <= 1e-12 * (1.0 + x.norm()));
        }
    }

    #[test]
    fn deriv_orders_compose(f in series(24), a in cplx(0.0..1.5), b in cplx(0.0..1.5)) {
        let ab = frac_deriv_series(&frac_deriv_series(&f, a).unwrap(), b).unwrap();
        let ba = frac_deriv_series(&frac_deriv_series(&f, b).unwrap(), a).unwrap();
        for (x, y) in ab.coeffs().iter().zip(ba.coeffs()) {
            prop_assert!((x - y).norm() <= 1e-10 * (1.0 + x.norm()));
        }
    }

    #[test]
    fn deriv_is_linear(f in series(16), g in series(16), s in cplx(-2.0..2.0), alpha in cplx(-0.5..2.0)) {
        let lhs = frac_deriv_series(&f.scale(s).add(&g), alpha).unwrap();
        let rhs = frac_deriv_series(&f, alpha).unwrap().scale(s).add(&frac_deriv_series(&g, alpha).unwrap());
        for (x, y) in lhs.coeffs().iter().zip(rhs.coeffs()) {
            prop_assert!((x - y).norm() <= 1e-10 * (1.0 + y.norm()));
        }
    }

    #[test]
    fn cut_jump_matches_connection_formula(a in 0.1f64..1.2, b in -0.8f64..0.8, c in 0.6f64..2.5, x in 1.05f64..3.0) {
        prop_assume!((c - a - b - (c - a - b).round()).abs() > 0.05);
        let p = Hyp2F1Params::real(a, b, c);
        let m = cut_jump_measured(&p, x).unwrap();
        let e = cut_jump_predicted(&p, x).unwrap();
        prop_assert!((m - e).norm() <= 1e-8 * (1.0 + e.norm()));
    }

    #[test]
    fn euler_transformation_holds(a in -0.8f64..1.2, b in -0.8f64..1.2, c in 0.6f64..2.5, t in cplx(-0.9..0.9)) {
        prop_assume!((1.0 + t).norm() > 0.1);
        let r = euler_ltf_check(&Hyp2F1Params::real(a, b, c), t).unwrap();
        prop_assert!(r <= 1e-10, "residual {r}");
    }

    #[test]
    fn recurrence_symmetries(kappa in cplx(-0.6..0.6), mu in cplx(-0.6..0.6)) {
        let p = phase_amplitude_recurrence(&PWDEParams::whittaker(kappa, mu), 16).unwrap();
        let neg_mu = phase_amplitude_recurrence(&PWDEParams::whittaker(kappa, -mu), 16).unwrap();
        let neg_kappa = phase_amplitude_recurrence(&PWDEParams::whittaker(-kappa, mu), 16).unwrap();
        for m in 0..16 {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let scale = 1.0 + p.c1[m].norm();
            prop_assert!((p.c1[m] - neg_mu.c1[m]).norm() <= 1e-12 * scale);
            prop_assert!((p.c1[m] - sign * neg_kappa.c2[m]).norm() <= 1e-12 * scale);
        }
    }
}
