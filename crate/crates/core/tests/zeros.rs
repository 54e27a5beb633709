mod common;

use zetarep::numerics::{ComplexValue, PrecisionContext};
use zetarep::zeros::{func_eq_residual, refine_zero, scan_zeros, scan_zeros_with_threshold, zeros_to_csv};
use zetarep::ZetaError;

fn ctx(bits: u32) -> PrecisionContext {
    PrecisionContext::new(bits, 1e-20f64.max((8.0 - bits as f64).exp2())).unwrap()
}

#[test]
fn second_zero_matches_oracle() {
    let z = refine_zero(&ComplexValue::from_f64(0.5, 21.0, 128), &ctx(128)).unwrap();
    let t = z.s.im().to_f64();
    assert!((t - common::zero_near(21.0)).abs() < 1e-9);
    assert!((t - 21.022040).abs() < 1e-6);
    assert!(z.residual < 10.0 * 1e-20);
    assert!(z.func_eq_residual < 1e-8);
    assert!(z.iterations <= 50);
}

#[test]
fn conjugate_guess_gives_conjugate_zero() {
    let up = refine_zero(&ComplexValue::from_f64(0.5, 14.0, 128), &ctx(128)).unwrap();
    let down = refine_zero(&ComplexValue::from_f64(0.5, -14.0, 128), &ctx(128)).unwrap();
    assert!(up.s.conj().dist(&down.s) < 1e-18);
}

#[test]
fn stable_under_precision_doubling() {
    let a = refine_zero(&ComplexValue::from_f64(0.5, 25.0, 128), &ctx(128)).unwrap();
    let b = refine_zero(&ComplexValue::from_f64(0.5, 25.0, 256), &ctx(256)).unwrap();
    assert!(a.s.dist(&b.s) < 1e-8);
    assert!((b.s.im().to_f64() - 25.010858).abs() < 1e-6);
}

#[test]
fn scan_edges() {
    assert!(scan_zeros(2.0, 10.0, 0.1, &ctx(64)).unwrap().is_empty());
    assert!(scan_zeros_with_threshold(13.0, 15.0, 0.1, 0.0, &ctx(64)).unwrap().is_empty());
    let hit = scan_zeros(13.5, 14.5, 0.05, &ctx(64)).unwrap();
    assert_eq!(hit.len(), 1);
    assert!((hit[0] - 14.134725).abs() < 0.05);
    assert!(matches!(scan_zeros(5.0, 4.0, 0.1, &ctx(64)), Err(ZetaError::InvalidArgument(_))));
    assert!(matches!(scan_zeros(1.0, 4.0, 0.6, &ctx(64)), Err(ZetaError::InvalidArgument(_))));
}

#[test]
fn refine_rejects_poor_or_outside_guesses() {
    // |ζ(1/2 + 18i)| is about 2.3
    let far = refine_zero(&ComplexValue::from_f64(0.5, 18.0, 128), &ctx(128));
    assert!(matches!(far, Err(ZetaError::InvalidArgument(_))));
    assert!(refine_zero(&ComplexValue::from_f64(1.5, 14.1, 128), &ctx(128)).is_err());
}

#[test]
fn functional_equation_off_the_line() {
    let r = func_eq_residual(&ComplexValue::from_f64(0.3, 5.0, 128), &ctx(128)).unwrap();
    assert!(r < 1e-10);
}

#[test]
fn csv_export() {
    let z = refine_zero(&ComplexValue::from_f64(0.5, 14.1, 96), &PrecisionContext::new(96, 1e-18).unwrap()).unwrap();
    let csv = zeros_to_csv(&[z]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("re,im,residual,func_eq_residual,iterations,method"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row.len(), 6);
    assert!((row[1].parse::<f64>().unwrap() - 14.134725141734693).abs() < 1e-12);
    assert_eq!(row[5], "newton-integral");
}
