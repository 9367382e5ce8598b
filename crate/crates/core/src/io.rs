//! JSON file formats for sequences, measures and line tuples.
//!
//! ```json
//! {"n": 2, "preperiod": [[[1,0],[0,0]]], "period": [[[0,0],[1,0]]]}
//! {"haar": 0.5, "atoms": [{"point": [1, 0], "weight": 0.5}]}
//! {"n": 2, "lines": [[[1,0],[0,0]], [[0,0],[1,0]]]}
//! ```
//!
//! Complex numbers are `[re, im]` pairs. Sequences are canonicalized on load;
//! atom points within `1e-6` of the circle are renormalized, others rejected.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classifier::LineTuple;
use crate::error::Error;
use crate::measure::{Atom, CircleMeasure};
use crate::product_state::{ProductState, UnitVector, VectorSequence};

/// Atom points may sit this far off the unit circle before being rejected.
pub const POINT_LOAD_TOL: f64 = 1e-6;

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{0}")]
    Domain(#[from] Error),
}

pub type Pair = [f64; 2];

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SequenceFile {
    pub n: usize,
    #[serde(default)]
    pub preperiod: Vec<Vec<Pair>>,
    pub period: Vec<Vec<Pair>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AtomFile {
    pub point: Pair,
    pub weight: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasureFile {
    #[serde(default)]
    pub haar: f64,
    #[serde(default)]
    pub atoms: Vec<AtomFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TupleFile {
    pub n: usize,
    pub lines: Vec<Vec<Pair>>,
}

pub fn pair(c: Complex64) -> Pair {
    [c.re, c.im]
}

fn complex(p: &Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn unit_vector(n: usize, coords: &[Pair]) -> Result<UnitVector, Error> {
    if coords.len() != n {
        return Err(Error::InvalidVector(format!("expected {n} coordinates, got {}", coords.len())));
    }
    UnitVector::new(coords.iter().map(complex).collect())
}

impl SequenceFile {
    pub fn to_state(&self) -> Result<ProductState, Error> {
        let pre = self.preperiod.iter().map(|v| unit_vector(self.n, v)).collect::<Result<_, _>>()?;
        let block = self.period.iter().map(|v| unit_vector(self.n, v)).collect::<Result<_, _>>()?;
        Ok(ProductState::new(VectorSequence::new(self.n, pre, block)?))
    }

    pub fn from_state(f: &ProductState) -> Self {
        let conv = |v: &UnitVector| v.coords().iter().map(|c| pair(*c)).collect();
        SequenceFile {
            n: f.n(),
            preperiod: f.sequence().preperiod().iter().map(conv).collect(),
            period: f.sequence().period_block().iter().map(conv).collect(),
        }
    }
}

impl MeasureFile {
    pub fn to_measure(&self) -> Result<CircleMeasure, Error> {
        let atoms = self
            .atoms
            .iter()
            .map(|a| {
                let c = complex(&a.point);
                if (c.norm() - 1.0).abs() > POINT_LOAD_TOL {
                    return Err(Error::InvalidMeasure(format!(
                        "atom [{}, {}] is not on the unit circle",
                        a.point[0], a.point[1]
                    )));
                }
                Ok(Atom { point: c / c.norm(), weight: a.weight })
            })
            .collect::<Result<Vec<_>, _>>()?;
        CircleMeasure::new(self.haar, atoms)
    }

    pub fn from_measure(m: &CircleMeasure) -> Self {
        MeasureFile {
            haar: m.haar_weight(),
            atoms: m.atoms().iter().map(|a| AtomFile { point: pair(a.point), weight: a.weight }).collect(),
        }
    }
}

impl TupleFile {
    pub fn to_tuple(&self) -> Result<LineTuple, Error> {
        let lines = self.lines.iter().map(|v| unit_vector(self.n, v)).collect::<Result<_, _>>()?;
        LineTuple::new(self.n, lines)
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, LoadError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io { path: name.clone(), source })?;
    serde_json::from_str(&text).map_err(|source| LoadError::Json { path: name, source })
}

pub fn load_state(path: &Path) -> Result<ProductState, LoadError> {
    Ok(read_json::<SequenceFile>(path)?.to_state()?)
}

pub fn load_measure(path: &Path) -> Result<CircleMeasure, LoadError> {
    Ok(read_json::<MeasureFile>(path)?.to_measure()?)
}

pub fn load_tuple(path: &Path) -> Result<LineTuple, LoadError> {
    Ok(read_json::<TupleFile>(path)?.to_tuple()?)
}
