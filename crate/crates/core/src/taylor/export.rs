use serde::Serialize;

use super::coeffs::{CoeffKind, CoeffTable};
use crate::numerics::fmt_float;

/// Significant decimal digits that an absolute error `err` leaves in a number
/// of size `magnitude`, plus two guard digits, capped by the precision.
pub fn digits_for_error(err: f64, magnitude: f64, bits: u32) -> usize {
    let cap = ((bits as f64) * std::f64::consts::LOG10_2).floor() as usize;
    if !(err > 0.0) || !err.is_finite() || !(magnitude > 0.0) {
        return cap.max(3);
    }
    let d = (magnitude / err).log10().ceil() + 2.0;
    (d.max(3.0) as usize).min(cap.max(3))
}

#[derive(Serialize)]
struct Row {
    n: usize,
    re: String,
    im: String,
}

#[derive(Serialize)]
struct TableJson {
    kind: CoeffKind,
    y: f64,
    n_max: usize,
    error_estimate: f64,
    precision_bits: u32,
    values: Vec<Row>,
}

impl CoeffTable {
    fn rows(&self) -> Vec<Row> {
        let bits = self.values[0].prec();
        let err = self.error_estimate;
        let digits = |x: &rug::Float| digits_for_error(err, x.to_f64().abs(), bits);
        self.values
            .iter()
            .enumerate()
            .map(|(n, v)| Row { n, re: fmt_float(v.re(), digits(v.re())), im: fmt_float(v.im(), digits(v.im())) })
            .collect()
    }

    /// CSV with columns n, re, im.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,re,im\n");
        for r in self.rows() {
            out.push_str(&format!("{},{},{}\n", r.n, r.re, r.im));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TableJson {
            kind: self.kind,
            y: self.y,
            n_max: self.n_max,
            error_estimate: self.error_estimate,
            precision_bits: self.values[0].prec(),
            values: self.rows(),
        })
        .expect("table serializes")
    }
}
