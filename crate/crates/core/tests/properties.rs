use proptest::prelude::*;

use zetarep::integral::zeta_integral;
use zetarep::limits::{log_ratio, phi_hat_ratio};
use zetarep::numerics::{ComplexValue, PrecisionContext};
use zetarep::powerseries::{ps_exp, ps_log, ps_mul, ps_reciprocal, TruncatedSeries};
use zetarep::series::{s_n, s_n_table, zeta_tail};
use zetarep::taylor::laguerre_poly_f64;

fn series_strategy() -> impl Strategy<Value = Vec<(f64, f64)>> {
    (1usize..12).prop_flat_map(|len| prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), len))
}

fn build(head: (f64, f64), rest: &[(f64, f64)]) -> TruncatedSeries {
    let mut v = vec![ComplexValue::from_f64(head.0, head.1, 128)];
    v.extend(rest.iter().map(|&(a, b)| ComplexValue::from_f64(a, b, 128)));
    TruncatedSeries::new(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reciprocal_inverts(h in (0.5f64..2.0, -1.0f64..1.0), rest in series_strategy()) {
        let a = build(h, &rest);
        let p = ps_mul(&a, &ps_reciprocal(&a).unwrap()).unwrap();
        let mut scale: f64 = 1.0;
        for c in a.coeffs() {
            scale = scale.max(c.abs_f64() / a.coeff(0).abs_f64());
        }
        let tol = 1e-30 * scale.powi(a.order() as i32 + 1);
        for n in 0..=a.order() {
            let want = ComplexValue::from_f64(if n == 0 { 1.0 } else { 0.0 }, 0.0, 128);
            prop_assert!(p.coeff(n).dist(&want) <= tol, "n = {}: {}", n, p.coeff(n));
        }
    }

    #[test]
    fn exp_inverts_log(rest in series_strategy()) {
        let a = build((1.0, 0.0), &rest);
        let back = ps_exp(&ps_log(&a).unwrap()).unwrap();
        let scale: f64 = a.coeffs().iter().map(|c| c.abs_f64()).fold(1.0, f64::max);
        let tol = 1e-28 * scale.powi(a.order() as i32 + 1);
        for n in 0..=a.order() {
            prop_assert!(back.coeff(n).dist(a.coeff(n)) <= tol);
        }
    }

    #[test]
    fn parse_reads_rendered_values(re in -1e6f64..1e6, im in -1e6f64..1e6) {
        let z = ComplexValue::from_f64(re, im, 128);
        let text = z.to_string_digits(40);
        let back = ComplexValue::parse(&text, 128).unwrap();
        prop_assert!(back.dist(&z) <= 1e-30 * (1.0 + z.abs_f64()));
    }

    #[test]
    fn tableau_matches_direct_sum(sig in -1.0f64..2.0, t in -10.0f64..10.0, n in 2usize..40) {
        let ctx = PrecisionContext::new(128, 1e-25).unwrap();
        let s = ComplexValue::from_f64(sig, t, 128);
        let table = s_n_table(&s, n, &ctx).unwrap();
        let direct = s_n(&s, n, &ctx).unwrap();
        prop_assert!(table.get(n).unwrap().dist(&direct) < 1e-24);
    }

    #[test]
    fn tail_heuristic_decreases(sig in 0.05f64..3.0, t in -30.0f64..30.0, n in 10usize..100_000) {
        let s = ComplexValue::from_f64(sig, t, 64);
        prop_assert!(zeta_tail(&s, 2 * n).unwrap() < zeta_tail(&s, n).unwrap());
    }

    #[test]
    fn hat_ratio_is_power_of_log_ratio(x in 0.0f64..0.999_999, sig in 0.05f64..0.95, t in -20.0f64..20.0) {
        let r = phi_hat_ratio(x, &ComplexValue::from_f64(sig, t, 128)).unwrap();
        let l = log_ratio(x, 128).to_f64();
        let want = l.powf(1.0 - 2.0 * sig);
        prop_assert!((r - want).abs() <= 1e-12 * want);
    }

    #[test]
    fn laguerre_recurrence_matches_explicit_sum(n in 0usize..20, x in 0.0f64..10.0) {
        // L_n(x) = Σ_k C(n,k)(-x)^k/k!
        let mut sum = 0.0;
        let mut binom = 1.0;
        let mut term = 1.0;
        for k in 0..=n {
            if k > 0 {
                binom *= (n - k + 1) as f64 / k as f64;
                term *= -x / k as f64;
            }
            sum += binom * term;
        }
        let scale: f64 = (0..=n).map(|k| x.powi(k as i32)).sum::<f64>().max(1.0) * 2f64.powi(n as i32);
        prop_assert!((laguerre_poly_f64(n, x) - sum).abs() <= 1e-13 * scale);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn zeta_commutes_with_conjugation(sig in 0.1f64..3.0, t in 0.5f64..30.0) {
        let ctx = PrecisionContext::new(64, 1e-15).unwrap();
        let s = ComplexValue::from_f64(sig, t, 64);
        let a = zeta_integral(&s, &ctx).unwrap().value;
        let b = zeta_integral(&s.conj(), &ctx).unwrap().value;
        prop_assert!(a.conj().dist(&b) < 1e-13 * (1.0 + a.abs_f64()));
    }
}
