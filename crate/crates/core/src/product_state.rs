//! Pure product states of the UHF core from eventually periodic sequences of
//! unit vectors, together with the backward and forward shifts.

use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;

use crate::algebra::{AlgebraElement, Letter};
use crate::error::{Error, Result};

/// Tolerance on the norm of a unit vector.
pub const UNIT_TOL: f64 = 1e-10;
/// `[u] = [v]` iff `|<u, v>| > 1 - LINE_TOL`.
pub const LINE_TOL: f64 = 1e-9;
/// Coordinates of modulus at or below this are skipped when fixing the phase.
pub const PHASE_PIVOT_TOL: f64 = 1e-10;

/// `<x, y> = Σ x_k conj(y_k)`, linear in the first slot.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Unit vector in `C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitVector {
    coords: Vec<Complex64>,
}

impl UnitVector {
    /// Accepts vectors of norm 1 within [`UNIT_TOL`] and renormalizes them.
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidVector("empty vector".into()));
        }
        let nrm = norm(&coords);
        if !nrm.is_finite() || (nrm - 1.0).abs() > UNIT_TOL {
            return Err(Error::InvalidVector(format!("norm {nrm} is not 1")));
        }
        Ok(UnitVector { coords: coords.into_iter().map(|c| c / nrm).collect() })
    }

    /// Normalizes any nonzero vector.
    pub fn normalized(coords: Vec<Complex64>) -> Result<Self> {
        let nrm = norm(&coords);
        if !(nrm.is_finite() && nrm > 0.0) {
            return Err(Error::InvalidVector("cannot normalize a zero vector".into()));
        }
        Ok(UnitVector { coords: coords.into_iter().map(|c| c / nrm).collect() })
    }

    /// Basis vector `e_a`, 1-based.
    pub fn basis(n: usize, a: usize) -> Self {
        let mut coords = vec![Complex64::default(); n];
        coords[a - 1] = Complex64::new(1.0, 0.0);
        UnitVector { coords }
    }

    pub fn from_real(coords: &[f64]) -> Result<Self> {
        Self::normalized(coords.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn coord(&self, a: Letter) -> Complex64 {
        self.coords[a.index()]
    }

    pub fn inner(&self, other: &UnitVector) -> Complex64 {
        inner(&self.coords, &other.coords)
    }

    /// Rescaled so the first coordinate of modulus above the pivot tolerance is real positive.
    pub fn canonical(&self) -> UnitVector {
        let Some(k) = self.coords.iter().position(|c| c.norm() > PHASE_PIVOT_TOL) else {
            return self.clone();
        };
        let pivot = self.coords[k];
        let phase = pivot.conj() / pivot.norm();
        let mut coords: Vec<Complex64> = self.coords.iter().map(|c| c * phase).collect();
        // exactly real, so canonicalization is idempotent bit for bit
        coords[k] = Complex64::new(pivot.norm(), 0.0);
        UnitVector { coords }
    }

    pub fn scaled(&self, phase: Complex64) -> UnitVector {
        UnitVector { coords: self.coords.iter().map(|c| c * phase).collect() }
    }

    pub fn same_line(&self, other: &UnitVector) -> bool {
        self.dim() == other.dim() && self.inner(other).norm() > 1.0 - LINE_TOL
    }

    /// Lexicographic order on `(re, im)` coordinates, treating differences
    /// below the line tolerance as ties.
    pub fn cmp_approx(&self, other: &UnitVector) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            for (x, y) in [(a.re, b.re), (a.im, b.im)] {
                if (x - y).abs() > LINE_TOL {
                    return x.partial_cmp(&y).unwrap_or(Ordering::Equal);
                }
            }
        }
        self.dim().cmp(&other.dim())
    }
}

/// Eventually periodic sequence `f_1, f_2, ...`: the preperiod followed by
/// the period block repeated forever.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorSequence {
    n: usize,
    preperiod: Vec<UnitVector>,
    period_block: Vec<UnitVector>,
}

impl VectorSequence {
    /// Raw sequence, no canonicalization.
    pub fn new(n: usize, preperiod: Vec<UnitVector>, period_block: Vec<UnitVector>) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadAmbient(n));
        }
        if period_block.is_empty() {
            return Err(Error::InvalidVector("period block must be nonempty".into()));
        }
        if let Some(v) = preperiod.iter().chain(&period_block).find(|v| v.dim() != n) {
            return Err(Error::InvalidVector(format!("vector of dimension {} in C^{n}", v.dim())));
        }
        Ok(VectorSequence { n, preperiod, period_block })
    }

    pub fn periodic(n: usize, block: Vec<UnitVector>) -> Result<Self> {
        Self::new(n, Vec::new(), block)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn preperiod(&self) -> &[UnitVector] {
        &self.preperiod
    }

    pub fn period_block(&self) -> &[UnitVector] {
        &self.period_block
    }

    /// The term `f_i`, 1-based.
    pub fn get(&self, i: usize) -> &UnitVector {
        assert!(i >= 1, "sequence index is 1-based");
        let pre = self.preperiod.len();
        if i <= pre {
            &self.preperiod[i - 1]
        } else {
            &self.period_block[(i - pre - 1) % self.period_block.len()]
        }
    }

    /// `(v, f_1, f_2, ...)` without canonicalization.
    pub fn prepend(&self, v: UnitVector) -> VectorSequence {
        let mut preperiod = Vec::with_capacity(self.preperiod.len() + 1);
        preperiod.push(v);
        preperiod.extend(self.preperiod.iter().cloned());
        VectorSequence { n: self.n, preperiod, period_block: self.period_block.clone() }
    }

    /// Canonical phases, minimal period block, minimal preperiod.
    pub fn canonicalize(&self) -> VectorSequence {
        let mut preperiod: Vec<UnitVector> = self.preperiod.iter().map(|v| v.canonical()).collect();
        let mut block: Vec<UnitVector> = self.period_block.iter().map(|v| v.canonical()).collect();

        let len = block.len();
        if let Some(d) = (1..=len).find(|&d| {
            len.is_multiple_of(d) && (0..len).all(|j| block[j].same_line(&block[(j + d) % len]))
        }) {
            block.truncate(d);
        }

        while let Some(last) = preperiod.last() {
            if !last.same_line(block.last().expect("nonempty block")) {
                break;
            }
            preperiod.pop();
            block.rotate_right(1);
        }
        VectorSequence { n: self.n, preperiod, period_block: block }
    }
}

/// The pure product state `ω_f = ⊗ ω_{f_i}`; the sequence is kept canonical.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductState {
    seq: VectorSequence,
}

impl ProductState {
    pub fn new(seq: VectorSequence) -> Self {
        ProductState { seq: seq.canonicalize() }
    }

    /// Constant sequence `f ≡ v`.
    pub fn constant(v: UnitVector) -> Result<Self> {
        let n = v.dim();
        Ok(Self::new(VectorSequence::periodic(n, vec![v])?))
    }

    pub fn periodic(block: Vec<UnitVector>) -> Result<Self> {
        let n = block.first().map(|v| v.dim()).unwrap_or(0);
        Ok(Self::new(VectorSequence::periodic(n, block)?))
    }

    pub fn with_preperiod(preperiod: Vec<UnitVector>, block: Vec<UnitVector>) -> Result<Self> {
        let n = block.first().map(|v| v.dim()).unwrap_or(0);
        Ok(Self::new(VectorSequence::new(n, preperiod, block)?))
    }

    pub fn n(&self) -> usize {
        self.seq.n
    }

    pub fn sequence(&self) -> &VectorSequence {
        &self.seq
    }

    /// `f_i`, 1-based.
    pub fn f(&self, i: usize) -> &UnitVector {
        self.seq.get(i)
    }

    pub fn preperiod_len(&self) -> usize {
        self.seq.preperiod.len()
    }

    /// The tail period block (one minimal period of lines).
    pub fn tail(&self) -> &[UnitVector] {
        &self.seq.period_block
    }

    /// `ω_f(v_s v_t*) = Π <e_{s_i}, f_i><f_i, e_{t_i}>` extended linearly.
    pub fn eval(&self, x: &AlgebraElement) -> Result<Complex64> {
        if x.n() != self.n() {
            return Err(Error::AmbientMismatch { left: self.n(), right: x.n() });
        }
        let mut total = Complex64::default();
        for (m, c) in x.terms() {
            if m.degree() != 0 {
                return Err(Error::NotInCore { degree: m.degree() });
            }
            total += c * self.eval_core_words(&m.s, &m.t);
        }
        Ok(total)
    }

    /// `ω_f(v_s v_t*)` for `|s| = |t|`.
    pub(crate) fn eval_core_words(&self, s: &[Letter], t: &[Letter]) -> Complex64 {
        let mut value = Complex64::new(1.0, 0.0);
        for (i, (a, b)) in s.iter().zip(t).enumerate() {
            let f = self.f(i + 1);
            value *= f.coord(*a).conj() * f.coord(*b);
            if value == Complex64::default() {
                break;
            }
        }
        value
    }

    /// `α*`: drops `f_1`.
    pub fn shift_back(&self) -> ProductState {
        let mut seq = self.seq.clone();
        if seq.preperiod.is_empty() {
            seq.period_block.rotate_left(1);
        } else {
            seq.preperiod.remove(0);
        }
        ProductState::new(seq)
    }

    /// `β*`: prepends `e_1`.
    pub fn shift_forward(&self) -> ProductState {
        ProductState::new(self.seq.prepend(UnitVector::basis(self.n(), 1)))
    }

    /// Smallest `p` with `[f_{i+p}] = [f_i]` along the tail.
    pub fn period(&self) -> usize {
        self.seq.period_block.len()
    }

    pub fn quasi_orbit_rep(&self) -> QuasiOrbitRep {
        QuasiOrbitRep::from_tail(&self.seq.period_block)
    }

    pub fn same_quasi_orbit(&self, other: &ProductState) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::AmbientMismatch { left: self.n(), right: other.n() });
        }
        Ok(self.quasi_orbit_rep() == other.quasi_orbit_rep())
    }

    /// Tail rotation `k` with `[g_{j+k}] = [f_j]` along the tails, if any.
    pub fn tail_alignment(&self, other: &ProductState) -> Option<usize> {
        let (a, b) = (self.tail(), other.tail());
        if a.len() != b.len() {
            return None;
        }
        let p = a.len();
        (0..p).find(|&k| (0..p).all(|j| a[j].same_line(&b[(j + k) % p])))
    }

    /// `α*^k ω_f` and `α*^l ω_f` are unitarily equivalent iff the period divides `k - l`.
    pub fn shifts_unitarily_equivalent(&self, k: u64, l: u64) -> bool {
        let p = self.period() as i128;
        (k as i128 - l as i128).rem_euclid(p) == 0
    }
}

/// Rotation-minimal tuple of tail lines; equal reps mean shift-equivalent states.
#[derive(Debug, Clone)]
pub struct QuasiOrbitRep {
    lines: Vec<UnitVector>,
}

impl QuasiOrbitRep {
    fn from_tail(tail: &[UnitVector]) -> Self {
        let lines: Vec<UnitVector> = tail.iter().map(|v| v.canonical()).collect();
        let p = lines.len();
        let best = (0..p)
            .min_by(|&a, &b| {
                (0..p)
                    .map(|j| lines[(a + j) % p].cmp_approx(&lines[(b + j) % p]))
                    .find(|o| *o != Ordering::Equal)
                    .unwrap_or(Ordering::Equal)
            })
            .unwrap_or(0);
        let mut rotated = lines;
        rotated.rotate_left(best);
        QuasiOrbitRep { lines: rotated }
    }

    pub fn lines(&self) -> &[UnitVector] {
        &self.lines
    }
}

impl PartialEq for QuasiOrbitRep {
    /// Linewise comparison up to cyclic rotation, so near-ties in the
    /// rotation ordering cannot split one orbit into two reps.
    fn eq(&self, other: &Self) -> bool {
        let p = self.lines.len();
        if p != other.lines.len() {
            return false;
        }
        (0..p).any(|k| (0..p).all(|j| self.lines[j].same_line(&other.lines[(j + k) % p])))
    }
}

impl fmt::Display for UnitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", crate::report::fmt_complex(*c))?;
        }
        write!(f, "]")
    }
}
