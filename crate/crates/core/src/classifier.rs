//! Unitary equivalence of extensions and conjugacy of the endomorphisms
//! `Ad π` they induce on `B(H)`.
//!
//! The workhorse is [`line_tuple_equiv`]: given tuples of lines `([f_j])` and
//! `([g_j])`, find a unitary `W` with `[W f_j] = [g_j]`. Matching Gram moduli
//! is necessary; the phases `θ_j` in `W f_j = e^{iθ_j} g_j` are then forced
//! along every nonzero Gram entry, and a consistent assignment turns both
//! tuples into families with identical Gram matrices, hence related by an
//! isometry of their spans that extends to all of `C^n`.

use std::collections::VecDeque;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{map_indexed, Exec};
use crate::measure::CircleMeasure;
use crate::product_state::{inner, ProductState, UnitVector};

/// Gram moduli must agree within this.
pub const GRAM_TOL: f64 = 1e-8;
/// Phase-cycle consistency on non-tree edges.
pub const PHASE_TOL: f64 = 1e-8;
/// Witness replay: `1 - |<W f_j, g_{j+k}>|` must stay below this.
pub const REPLAY_TOL: f64 = 1e-8;
/// Pivot tolerance of the rank-revealing orthogonalization.
pub const PIVOT_TOL: f64 = 1e-10;

/// Tuple of lines in `C^n`, stored by canonical representatives.
#[derive(Debug, Clone, PartialEq)]
pub struct LineTuple {
    n: usize,
    lines: Vec<UnitVector>,
}

impl LineTuple {
    pub fn new(n: usize, lines: Vec<UnitVector>) -> Result<Self> {
        if let Some(v) = lines.iter().find(|v| v.dim() != n) {
            return Err(Error::AmbientMismatch { left: n, right: v.dim() });
        }
        Ok(LineTuple { n, lines: lines.iter().map(|v| v.canonical()).collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn lines(&self) -> &[UnitVector] {
        &self.lines
    }

    /// `(g_{k}, g_{k+1}, ..., g_{k-1})`.
    pub fn rotate(&self, k: usize) -> LineTuple {
        let mut lines = self.lines.clone();
        if !lines.is_empty() {
            lines.rotate_left(k % self.lines.len());
        }
        LineTuple { n: self.n, lines }
    }

    /// The tail period block of a product state.
    pub fn tail_of(f: &ProductState) -> LineTuple {
        LineTuple { n: f.n(), lines: f.tail().to_vec() }
    }

    fn gram(&self) -> Vec<Vec<Complex64>> {
        self.lines
            .iter()
            .map(|a| self.lines.iter().map(|b| a.inner(b)).collect())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equivalent,
    Disjoint,
    EquivalentUpToGauge,
    /// Same base state, measures neither equivalent nor disjoint.
    Neither,
    /// Same quasi-orbit, no translate of the measures matches, yet
    /// disjointness cannot be certified without the aligning rotation.
    NotEquivalent,
    Conjugate,
    NotConjugate,
}

impl Verdict {
    pub fn is_positive(self) -> bool {
        matches!(self, Verdict::Equivalent | Verdict::EquivalentUpToGauge | Verdict::Conjugate)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Equivalent => "equivalent",
            Verdict::Disjoint => "disjoint",
            Verdict::EquivalentUpToGauge => "equivalent_up_to_gauge",
            Verdict::Neither => "neither",
            Verdict::NotEquivalent => "not_equivalent",
            Verdict::Conjugate => "conjugate",
            Verdict::NotConjugate => "not_conjugate",
        }
    }
}

/// `[W f_j] = [g_{j+k}]` and, when measures are involved, `μ ~ λ·ν`.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub shift: usize,
    pub unitary: DMatrix<Complex64>,
    pub rotation: Complex64,
}

/// Atom points of the two measures, split by membership.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportSplit {
    pub only_first: Vec<Complex64>,
    pub only_second: Vec<Complex64>,
    pub shared: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjugacyVerdict {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub overlap: Option<SupportSplit>,
}

impl ConjugacyVerdict {
    fn negative(verdict: Verdict) -> Self {
        ConjugacyVerdict { verdict, witness: None, overlap: None }
    }

    fn positive(verdict: Verdict, witness: Witness) -> Self {
        ConjugacyVerdict { verdict, witness: Some(witness), overlap: None }
    }
}

fn columns_to_matrix(n: usize, cols: &[Vec<Complex64>]) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, cols.len(), |i, j| cols[j][i])
}

fn orthogonalize_against(v: &mut [Complex64], basis: &[Vec<Complex64>]) {
    // two passes keep the result orthogonal to working precision
    for _ in 0..2 {
        for b in basis {
            let proj = inner(v, b);
            for (x, y) in v.iter_mut().zip(b) {
                *x -= proj * y;
            }
        }
    }
}

fn vnorm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Extend an orthonormal family to a basis of `C^n` with standard vectors.
fn complete_basis(n: usize, mut basis: Vec<Vec<Complex64>>) -> Vec<Vec<Complex64>> {
    for a in 0..n {
        if basis.len() == n {
            break;
        }
        let mut v = vec![Complex64::default(); n];
        v[a] = Complex64::new(1.0, 0.0);
        orthogonalize_against(&mut v, &basis);
        let nrm = vnorm(&v);
        if nrm > PIVOT_TOL {
            basis.push(v.into_iter().map(|x| x / nrm).collect());
        }
    }
    basis
}

/// Phases `φ_j` with `φ_i conj(φ_j) <g_i, g_j> = <f_i, f_j>` on every edge.
fn propagate_phases(gf: &[Vec<Complex64>], gg: &[Vec<Complex64>]) -> Option<Vec<Complex64>> {
    let p = gf.len();
    let edge = |i: usize, j: usize| gg[i][j].norm() > GRAM_TOL;
    let mut phase: Vec<Option<Complex64>> = vec![None; p];
    for root in 0..p {
        if phase[root].is_some() {
            continue;
        }
        phase[root] = Some(Complex64::new(1.0, 0.0));
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let pi = phase[i].expect("visited");
            for j in 0..p {
                if j == i || !edge(i, j) || phase[j].is_some() {
                    continue;
                }
                let conj_pj = gf[i][j] / (pi * gg[i][j]);
                let pj = conj_pj.conj();
                phase[j] = Some(pj / pj.norm());
                queue.push_back(j);
            }
        }
    }
    let phase: Vec<Complex64> = phase.into_iter().map(|x| x.expect("all visited")).collect();
    for i in 0..p {
        for j in 0..p {
            if edge(i, j) && (phase[i] * phase[j].conj() * gg[i][j] - gf[i][j]).norm() > PHASE_TOL {
                return None;
            }
        }
    }
    Some(phase)
}

/// A unitary `W` on `C^n` with `[W f_j] = [g_j]` for all `j`, if one exists.
pub fn line_tuple_equiv(f: &LineTuple, g: &LineTuple) -> Result<Option<DMatrix<Complex64>>> {
    if f.n != g.n {
        return Err(Error::AmbientMismatch { left: f.n, right: g.n });
    }
    if f.len() != g.len() {
        return Err(Error::LengthMismatch { left: f.len(), right: g.len() });
    }
    let n = f.n;
    let p = f.len();
    let gf = f.gram();
    let gg = g.gram();
    for i in 0..p {
        for j in 0..p {
            if (gf[i][j].norm() - gg[i][j].norm()).abs() > GRAM_TOL {
                return Ok(None);
            }
        }
    }
    let Some(phase) = propagate_phases(&gf, &gg) else {
        return Ok(None);
    };
    let g_phased: Vec<Vec<Complex64>> = g
        .lines
        .iter()
        .zip(&phase)
        .map(|(v, ph)| v.coords().iter().map(|x| x * ph).collect())
        .collect();

    // Gram-Schmidt over f, replaying the same combinations on the phased g.
    let mut qf: Vec<Vec<Complex64>> = Vec::new();
    let mut qg: Vec<Vec<Complex64>> = Vec::new();
    for (fj, gj) in f.lines.iter().zip(&g_phased) {
        let mut u = fj.coords().to_vec();
        let mut w = gj.clone();
        for _ in 0..2 {
            for (a, b) in qf.iter().zip(&qg) {
                let proj = inner(&u, a);
                for (x, y) in u.iter_mut().zip(a) {
                    *x -= proj * y;
                }
                for (x, y) in w.iter_mut().zip(b) {
                    *x -= proj * y;
                }
            }
        }
        let nrm = vnorm(&u);
        if nrm > PIVOT_TOL {
            qf.push(u.into_iter().map(|x| x / nrm).collect());
            // the image family is only orthonormal up to the Gram tolerance
            orthogonalize_against(&mut w, &qg);
            let wn = vnorm(&w);
            if wn <= PIVOT_TOL {
                return Ok(None);
            }
            qg.push(w.into_iter().map(|x| x / wn).collect());
        }
    }
    let bf = columns_to_matrix(n, &complete_basis(n, qf));
    let bg = columns_to_matrix(n, &complete_basis(n, qg));
    let w = &bg * bf.adjoint();

    let witness = Witness { shift: 0, unitary: w, rotation: Complex64::new(1.0, 0.0) };
    if replay_lines(f, g, &witness)? > REPLAY_TOL {
        return Ok(None);
    }
    Ok(Some(witness.unitary))
}

/// `max_j min_φ ‖W f_j - φ g_{j+k}‖` over unimodular `φ`.
pub fn replay_lines(f: &LineTuple, g: &LineTuple, witness: &Witness) -> Result<f64> {
    if f.len() != g.len() {
        return Err(Error::LengthMismatch { left: f.len(), right: g.len() });
    }
    let p = f.len();
    let mut worst: f64 = 0.0;
    for (j, fj) in f.lines.iter().enumerate() {
        let image = &witness.unitary * nalgebra::DVector::from_column_slice(fj.coords());
        let target = g.lines[(j + witness.shift) % p].coords();
        // distance to the nearest point of the target line: linear in the
        // angle and free of the cancellation in 1 - |<Wf, g>|
        let overlap = inner(image.as_slice(), target);
        let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { Complex64::new(1.0, 0.0) };
        let dist = image.iter().zip(target).map(|(x, y)| (x - phase * y).norm_sqr()).sum::<f64>().sqrt();
        worst = worst.max(dist);
    }
    Ok(worst)
}

fn identity_distance(w: &DMatrix<Complex64>) -> f64 {
    (w - DMatrix::<Complex64>::identity(w.nrows(), w.ncols())).norm()
}

/// Conjugacy of the ergodic endomorphisms of two periodic tuples: some `W`
/// maps the lines of `F` onto a cyclic rotation of those of `G`.
///
/// All rotations are tried; among the successful ones the witness whose
/// unitary is closest to the identity wins, ties going to the smaller shift.
pub fn cuntz_state_conjugate(f: &LineTuple, g: &LineTuple, exec: Exec) -> Result<ConjugacyVerdict> {
    if f.n != g.n {
        return Err(Error::AmbientMismatch { left: f.n, right: g.n });
    }
    if f.len() != g.len() {
        return Err(Error::LengthMismatch { left: f.len(), right: g.len() });
    }
    let p = f.len();
    let found = map_indexed(exec, p, |k| line_tuple_equiv(f, &g.rotate(k)));
    let mut best: Option<(usize, DMatrix<Complex64>, f64)> = None;
    for (k, res) in found.into_iter().enumerate() {
        if let Some(w) = res? {
            let d = identity_distance(&w);
            if best.as_ref().is_none_or(|(_, _, bd)| d < bd - 1e-9) {
                best = Some((k, w, d));
            }
        }
    }
    Ok(match best {
        Some((shift, unitary, _)) => ConjugacyVerdict::positive(
            Verdict::Conjugate,
            Witness { shift, unitary, rotation: Complex64::new(1.0, 0.0) },
        ),
        None => ConjugacyVerdict::negative(Verdict::NotConjugate),
    })
}

fn check_ambient(f: &ProductState, g: &ProductState) -> Result<()> {
    if f.n() != g.n() {
        return Err(Error::AmbientMismatch { left: f.n(), right: g.n() });
    }
    Ok(())
}

/// Conjugacy of `α_f` and `α_g`: equal periods and a unitary carrying the
/// tail lines of `f` onto a rotation of the tail lines of `g`.
pub fn ergodic_conjugate(f: &ProductState, g: &ProductState, exec: Exec) -> Result<ConjugacyVerdict> {
    check_ambient(f, g)?;
    if f.period() != g.period() {
        return Ok(ConjugacyVerdict::negative(Verdict::NotConjugate));
    }
    cuntz_state_conjugate(&LineTuple::tail_of(f), &LineTuple::tail_of(g), exec)
}

/// Conjugacy of `α_{f,μ}` and `α_{g,ν}`: the ergodic criterion plus `μ`
/// equivalent to a translate of `ν`.
pub fn endo_conjugate(
    f: &ProductState,
    mu: &CircleMeasure,
    g: &ProductState,
    nu: &CircleMeasure,
    exec: Exec,
) -> Result<ConjugacyVerdict> {
    check_ambient(f, g)?;
    let ergodic = ergodic_conjugate(f, g, exec)?;
    let Some(mut witness) = ergodic.witness else {
        return Ok(ergodic);
    };
    match mu.translate_equivalent(nu) {
        Some(lambda) => {
            witness.rotation = lambda;
            Ok(ConjugacyVerdict::positive(Verdict::Conjugate, witness))
        }
        None => Ok(ConjugacyVerdict::negative(Verdict::NotConjugate)),
    }
}

fn same_sequence(f: &ProductState, g: &ProductState) -> bool {
    let (a, b) = (f.sequence(), g.sequence());
    a.preperiod().len() == b.preperiod().len()
        && a.period_block().len() == b.period_block().len()
        && a.preperiod().iter().zip(b.preperiod()).all(|(u, v)| u.same_line(v))
        && a.period_block().iter().zip(b.period_block()).all(|(u, v)| u.same_line(v))
}

/// Unitary equivalence or disjointness of `ρ̃_f[μ]` and `ρ̃_g[ν]`.
pub fn extension_compare(
    f: &ProductState,
    mu: &CircleMeasure,
    g: &ProductState,
    nu: &CircleMeasure,
) -> Result<ConjugacyVerdict> {
    check_ambient(f, g)?;
    let Some(shift) = f.tail_alignment(g) else {
        return Ok(ConjugacyVerdict::negative(Verdict::Disjoint));
    };
    let identity = DMatrix::<Complex64>::identity(f.n(), f.n());
    if same_sequence(f, g) {
        if mu.equivalent(nu) {
            return Ok(ConjugacyVerdict::positive(
                Verdict::Equivalent,
                Witness { shift: 0, unitary: identity, rotation: Complex64::new(1.0, 0.0) },
            ));
        }
        if mu.disjoint(nu) {
            return Ok(ConjugacyVerdict::negative(Verdict::Disjoint));
        }
        let (only_first, only_second, shared) = mu.support_split(nu);
        return Ok(ConjugacyVerdict {
            verdict: Verdict::Neither,
            witness: None,
            overlap: Some(SupportSplit { only_first, only_second, shared }),
        });
    }
    if let Some(lambda) = mu.translate_equivalent(nu) {
        return Ok(ConjugacyVerdict::positive(
            Verdict::EquivalentUpToGauge,
            Witness { shift, unitary: identity, rotation: lambda },
        ));
    }
    // disjoint for every rotation: no shared Haar part and one side without atoms
    let always_disjoint =
        !(mu.has_haar() && nu.has_haar()) && (mu.atoms().is_empty() || nu.atoms().is_empty());
    Ok(ConjugacyVerdict::negative(if always_disjoint {
        Verdict::Disjoint
    } else {
        Verdict::NotEquivalent
    }))
}

/// Replay a positive endomorphism verdict: line condition and measure condition.
pub fn replay_endo(
    f: &ProductState,
    mu: &CircleMeasure,
    g: &ProductState,
    nu: &CircleMeasure,
    witness: &Witness,
) -> Result<bool> {
    let lines_ok =
        replay_lines(&LineTuple::tail_of(f), &LineTuple::tail_of(g), witness)? <= REPLAY_TOL;
    let measures_ok = mu.equivalent(&nu.rotate(witness.rotation)?);
    Ok(lines_ok && measures_ok)
}
