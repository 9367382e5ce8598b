//! Line-oriented key/value reports with a JSON twin.

use std::fmt::Display;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::classifier::{ConjugacyVerdict, GRAM_TOL, PHASE_TOL, REPLAY_TOL};
use crate::gns::{OracleReport, RelationReport};
use crate::product_state::UnitVector;

/// Significant digits in printed reals.
pub const SIG_DIGITS: usize = 12;

/// Complex components below this print as `0`; they are roundoff, and
/// goldens should not churn on them. Plain reals (deviations) print as is.
pub const PRINT_ZERO: f64 = 1e-14;

/// Real number to 12 significant digits, trailing zeros dropped, no `-0`.
pub fn fmt_real(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let rounded: f64 = format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap_or(x);
    if rounded.abs() >= 1e-5 && rounded.abs() < 1e15 {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// `(re, im)` with [`fmt_real`] components.
pub fn fmt_complex(c: Complex64) -> String {
    let snap = |x: f64| if x.abs() < PRINT_ZERO { 0.0 } else { x };
    format!("({}, {})", fmt_real(snap(c.re)), fmt_real(snap(c.im)))
}

fn complex_json(c: Complex64) -> Value {
    json!([c.re, c.im])
}

fn matrix_text(m: &DMatrix<Complex64>) -> String {
    let rows: Vec<String> = (0..m.nrows())
        .map(|i| {
            let row: Vec<String> = (0..m.ncols()).map(|j| fmt_complex(m[(i, j)])).collect();
            format!("[{}]", row.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn matrix_json(m: &DMatrix<Complex64>) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|i| Value::Array((0..m.ncols()).map(|j| complex_json(m[(i, j)])).collect()))
            .collect(),
    )
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    entries: Vec<(String, String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, key: &str, text: String, value: Value) -> &mut Self {
        self.entries.push((key.to_string(), text, value));
        self
    }

    pub fn text(&mut self, key: &str, value: impl Display) -> &mut Self {
        let s = value.to_string();
        self.push(key, s.clone(), Value::String(s))
    }

    pub fn int(&mut self, key: &str, value: u64) -> &mut Self {
        self.push(key, value.to_string(), json!(value))
    }

    pub fn real(&mut self, key: &str, value: f64) -> &mut Self {
        self.push(key, fmt_real(value), json!(value))
    }

    pub fn flag(&mut self, key: &str, value: bool) -> &mut Self {
        self.push(key, value.to_string(), json!(value))
    }

    pub fn complex(&mut self, key: &str, value: Complex64) -> &mut Self {
        self.push(key, fmt_complex(value), complex_json(value))
    }

    pub fn complexes(&mut self, key: &str, values: &[Complex64]) -> &mut Self {
        let text: Vec<String> = values.iter().map(|c| fmt_complex(*c)).collect();
        let json = values.iter().map(|c| complex_json(*c)).collect();
        self.push(key, format!("[{}]", text.join(", ")), Value::Array(json))
    }

    pub fn vectors(&mut self, key: &str, values: &[UnitVector]) -> &mut Self {
        let text: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        let json = values
            .iter()
            .map(|v| Value::Array(v.coords().iter().map(|c| complex_json(*c)).collect()))
            .collect();
        self.push(key, format!("[{}]", text.join(", ")), Value::Array(json))
    }

    pub fn matrix(&mut self, key: &str, m: &DMatrix<Complex64>) -> &mut Self {
        self.push(key, matrix_text(m), matrix_json(m))
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _, _)| k == key).map(|(_, _, v)| v)
    }

    /// `key: value` lines, in insertion order.
    pub fn render_text(&self) -> String {
        self.entries.iter().map(|(k, t, _)| format!("{k}: {t}\n")).collect()
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (k, _, v) in &self.entries {
            map.insert(k.clone(), v.clone());
        }
        Value::Object(map)
    }

    pub fn verdict(&mut self, v: &ConjugacyVerdict) -> &mut Self {
        self.text("verdict", v.verdict.as_str());
        self.real("gram_tol", GRAM_TOL).real("phase_tol", PHASE_TOL).real("replay_tol", REPLAY_TOL);
        if let Some(w) = &v.witness {
            self.int("k", w.shift as u64);
            self.matrix("W", &w.unitary);
            self.complex("lambda", w.rotation);
        }
        if let Some(split) = &v.overlap {
            self.complexes("only_first", &split.only_first);
            self.complexes("only_second", &split.only_second);
            self.complexes("shared", &split.shared);
        }
        self
    }

    pub fn relations(&mut self, r: &RelationReport) -> &mut Self {
        self.int("seed", r.seed)
            .int("trials", r.trials as u64)
            .int("max_len", r.max_len as u64)
            .real("orthogonality", r.orthogonality)
            .real("completeness", r.completeness)
            .real("isometry", r.isometry)
            .real("v1v1", r.v1v1)
            .real("intertwining", r.intertwining)
            .real("adjoint", r.adjoint)
            .real("ads", r.ads)
            .real("max_deviation", r.max_deviation())
    }

    pub fn oracle(&mut self, r: &OracleReport) -> &mut Self {
        self.int("oracle_trials", r.trials as u64)
            .int("oracle_max_degree", r.max_degree as u64)
            .real("oracle_max_deviation", r.max_deviation)
    }
}
