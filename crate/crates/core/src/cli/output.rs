//! Deterministic report and sample-table writers.
//!
//! Reports are flat JSON objects written in insertion order. Floats use
//! scientific notation with 17 significant digits, so equal inputs give equal
//! bytes. Sample tables are CSV with the header `s,A_s,re_0,im_0,…` and LF
//! line endings.

use std::fmt::Write as _;

use num_complex::Complex64 as C64;

use crate::connection::connection_along;
use crate::error::{Error, Result};
use crate::trajectory::Trajectory;

/// Format a finite float with 17 significant digits.
pub fn format_float(x: f64) -> Result<String> {
    if !x.is_finite() {
        return Err(Error::NonFinite(format!("{x}")));
    }
    // -0 and 0 must not differ in output
    let x = if x == 0.0 { 0.0 } else { x };
    Ok(format!("{x:.16e}"))
}

#[derive(Debug, Clone, PartialEq)]
enum Value {
    Str(String),
    Int(i64),
    Float(f64),
    Complex(C64),
}

/// Ordered key/value report.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn text(mut self, key: &str, value: &str) -> Self {
        self.entries.push((key.into(), Value::Str(value.into())));
        self
    }

    pub fn int(mut self, key: &str, value: i64) -> Self {
        self.entries.push((key.into(), Value::Int(value)));
        self
    }

    pub fn float(mut self, key: &str, value: f64) -> Self {
        self.entries.push((key.into(), Value::Float(value)));
        self
    }

    /// Written as `[re, im]`.
    pub fn complex(mut self, key: &str, value: C64) -> Self {
        self.entries.push((key.into(), Value::Complex(value)));
        self
    }

    pub fn get_float(&self, key: &str) -> Option<f64> {
        self.entries.iter().find_map(|(k, v)| match v {
            Value::Float(x) if k == key => Some(*x),
            _ => None,
        })
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(k, _)| k.as_str())
    }

    /// Serialize; any non-finite number is an error naming its key.
    pub fn to_json(&self) -> Result<String> {
        let mut out = String::from("{\n");
        for (i, (key, value)) in self.entries.iter().enumerate() {
            let tag = |e: Error| match e {
                Error::NonFinite(v) => Error::NonFinite(format!("report field `{key}` = {v}")),
                other => other,
            };
            let rendered = match value {
                Value::Str(s) => serde_json::to_string(s).expect("string serializes"),
                Value::Int(n) => n.to_string(),
                Value::Float(x) => format_float(*x).map_err(tag)?,
                Value::Complex(z) => format!(
                    "[{}, {}]",
                    format_float(z.re).map_err(tag)?,
                    format_float(z.im).map_err(tag)?
                ),
            };
            let sep = if i + 1 == self.entries.len() { "" } else { "," };
            let _ = writeln!(
                out,
                "  {}: {rendered}{sep}",
                serde_json::to_string(key).unwrap()
            );
        }
        out.push_str("}\n");
        Ok(out)
    }
}

/// CSV table of a curve: parameter, connection value and amplitudes.
pub fn samples_csv(traj: &Trajectory) -> Result<String> {
    let conn = connection_along(traj)?;
    let mut out = String::from("s,A_s");
    for k in 0..traj.dim() {
        let _ = write!(out, ",re_{k},im_{k}");
    }
    out.push('\n');
    for ((s, a), psi) in traj.times().iter().zip(conn.values()).zip(traj.states()) {
        out.push_str(&format_float(*s)?);
        out.push(',');
        out.push_str(&format_float(*a)?);
        for z in psi.amplitudes() {
            out.push(',');
            out.push_str(&format_float(z.re)?);
            out.push(',');
            out.push_str(&format_float(z.im)?);
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::StateVector;

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(format_float(0.1).unwrap(), "1.0000000000000001e-1");
        assert_eq!(format_float(-0.0).unwrap(), format_float(0.0).unwrap());
        assert_eq!(
            format_float(std::f64::consts::PI)
                .unwrap()
                .parse::<f64>()
                .unwrap(),
            std::f64::consts::PI
        );
        assert!(format_float(f64::NAN).is_err());
    }

    #[test]
    fn report_keeps_order_and_rejects_nan() {
        let r = Report::new()
            .text("task", "x")
            .int("steps", 4)
            .complex("z", C64::new(1.0, 0.0));
        let json = r.to_json().unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["steps"], 4);
        assert_eq!(v["z"][0], 1.0);
        assert!(json.find("task").unwrap() < json.find("steps").unwrap());
        let bad = Report::new()
            .float("gamma", f64::INFINITY)
            .to_json()
            .unwrap_err();
        assert!(bad.to_string().contains("gamma"));
    }

    #[test]
    fn csv_layout() {
        let traj = Trajectory::sample(crate::numerics::linspace(0.0, 1.0, 11), |s| {
            Ok(StateVector::from_reals(&[1.0, 0.0])?.with_phase(s))
        })
        .unwrap();
        let csv = samples_csv(&traj).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "s,A_s,re_0,im_0,re_1,im_1");
        assert_eq!(lines.len(), 12);
        assert!(!csv.contains('\r'));
        let a: f64 = lines[2].split(',').nth(1).unwrap().parse().unwrap();
        assert!((a - 1.0).abs() < 1e-4);
    }
}
