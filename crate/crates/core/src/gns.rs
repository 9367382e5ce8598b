//! Finite symbolic model of the representation `π[ρ, ξ_p, θ]` for a periodic
//! pure product state `ρ = ω_f` and an atomic measure `θ`.
//!
//! The space is `⊕_{i<p} H_i ⊗ C^{atoms}` where `H_i` is the incomplete tensor
//! product around the reference sequence `r^(i) = (e_1 × i, f_1, f_2, ...)`.
//! A primitive is a finite window of slot vectors followed by the reference tail
//! of its component, so every vector is an exact finite object.
//!
//! `S_a` prepends `e_a` and moves component `i → i+1`. Leaving component `p-1`
//! lands on the grid `r^(p)`, which agrees with `r^(0)` past slot `p + L`
//! (`L` = preperiod length); the window is materialized that far and the atom
//! amplitude picks up its point `c` (`θ(z)` acting on the last component).
//! `S_a*` strips the first slot against `e_a` and runs the same bookkeeping
//! backwards, with `conj(c)` when leaving component 0.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::algebra::{AlgebraElement, Letter, Monomial};
use crate::error::{Error, Result};
use crate::exec::{map_indexed, Exec};
use crate::extension::ExtensionState;
use crate::measure::{Atom, CircleMeasure};
use crate::product_state::{inner, ProductState, UnitVector};
use crate::sample;

/// Trailing window slots this close to the reference slot are absorbed.
pub const PRUNE_TOL: f64 = 1e-12;

static NEXT_CONTEXT: AtomicU64 = AtomicU64::new(1);

/// Immutable simulation data: the canonical state, its period and the atoms.
#[derive(Debug, Clone)]
pub struct SimContext {
    id: u64,
    state: ProductState,
    p: usize,
    preperiod: usize,
    atoms: Vec<Atom>,
    e1: UnitVector,
    /// `bases[i][j-1]`: orthonormal basis adapted to slot `j` of `r^(i)`, for
    /// `j ≤ i + L + p`; later slots repeat with period `p`.
    bases: Vec<Vec<Vec<Vec<Complex64>>>>,
}

/// Elementary tensor: `window ⊗ r^(component)` past the window.
#[derive(Debug, Clone, PartialEq)]
pub struct Primitive {
    pub component: usize,
    pub window: Vec<UnitVector>,
}

#[derive(Debug, Clone)]
pub struct SimTerm {
    pub coeff: Complex64,
    pub primitive: Primitive,
    pub atom: usize,
}

/// Finite combination of primitives across components and atoms.
#[derive(Debug, Clone)]
pub struct SimVector {
    ctx: u64,
    terms: Vec<SimTerm>,
}

/// The finite-rank operator `|ket><bra|`.
#[derive(Debug, Clone)]
pub struct Dyad {
    pub ket: SimVector,
    pub bra: SimVector,
}

impl SimVector {
    pub fn terms(&self) -> &[SimTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

fn slots_close(a: &UnitVector, b: &UnitVector) -> bool {
    a.coords()
        .iter()
        .zip(b.coords())
        .all(|(x, y)| (x - y).norm() <= PRUNE_TOL)
}

/// Orthonormal basis of `C^n` whose first vector is `r`.
fn adapted_basis(r: &UnitVector) -> Vec<Vec<Complex64>> {
    let n = r.dim();
    let mut basis: Vec<Vec<Complex64>> = vec![r.coords().to_vec()];
    for a in 0..n {
        if basis.len() == n {
            break;
        }
        let mut v = vec![Complex64::default(); n];
        v[a] = Complex64::new(1.0, 0.0);
        for _ in 0..2 {
            for b in &basis {
                let proj = inner(&v, b);
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= proj * y;
                }
            }
        }
        let nrm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if nrm > 1e-10 {
            basis.push(v.into_iter().map(|x| x / nrm).collect());
        }
    }
    basis
}

impl SimContext {
    pub fn new(state: ProductState, measure: &CircleMeasure) -> Result<Self> {
        if measure.has_haar() {
            return Err(Error::UnsupportedMeasure);
        }
        let n = state.n();
        let mut ctx = SimContext {
            id: NEXT_CONTEXT.fetch_add(1, Ordering::Relaxed),
            p: state.period(),
            preperiod: state.preperiod_len(),
            atoms: measure.atoms().to_vec(),
            e1: UnitVector::basis(n, 1),
            bases: Vec::new(),
            state,
        };
        ctx.bases = (0..ctx.p)
            .map(|i| {
                (1..=i + ctx.preperiod + ctx.p)
                    .map(|j| adapted_basis(ctx.reference(i, j)))
                    .collect()
            })
            .collect();
        Ok(ctx)
    }

    pub fn n(&self) -> usize {
        self.state.n()
    }

    pub fn period(&self) -> usize {
        self.p
    }

    pub fn state(&self) -> &ProductState {
        &self.state
    }

    /// The atomic measure the context was built from.
    pub fn measure(&self) -> Result<CircleMeasure> {
        CircleMeasure::new(0.0, self.atoms.clone())
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Slot `j` (1-based) of `r^(grid)`, `grid ∈ 0..=p`.
    fn reference(&self, grid: usize, j: usize) -> &UnitVector {
        if j <= grid {
            &self.e1
        } else {
            self.state.f(j - grid)
        }
    }

    /// Grid `p` coincides with grid 0 from this slot on.
    fn wrap_horizon(&self) -> usize {
        self.p + self.preperiod
    }

    fn materialize(&self, grid: usize, window: &mut Vec<UnitVector>, len: usize) {
        while window.len() < len {
            let j = window.len() + 1;
            window.push(self.reference(grid, j).clone());
        }
    }

    fn prune(&self, component: usize, window: &mut Vec<UnitVector>) {
        while let Some(last) = window.last() {
            if !slots_close(last, self.reference(component, window.len())) {
                break;
            }
            window.pop();
        }
    }

    fn vector(&self, terms: Vec<SimTerm>) -> SimVector {
        let mut v = SimVector { ctx: self.id, terms };
        self.compact(&mut v);
        v
    }

    fn check(&self, v: &SimVector) -> Result<()> {
        if v.ctx != self.id {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    /// Merge terms carrying the same primitive and atom; drop exact zeros.
    fn compact(&self, v: &mut SimVector) {
        let mut merged: Vec<SimTerm> = Vec::with_capacity(v.terms.len());
        for term in v.terms.drain(..) {
            if term.coeff == Complex64::default() {
                continue;
            }
            match merged
                .iter_mut()
                .find(|m| m.atom == term.atom && m.primitive == term.primitive)
            {
                Some(m) => m.coeff += term.coeff,
                None => merged.push(term),
            }
        }
        merged.retain(|t| t.coeff != Complex64::default());
        v.terms = merged;
    }

    pub fn zero(&self) -> SimVector {
        SimVector { ctx: self.id, terms: Vec::new() }
    }

    /// Build a vector from raw terms; windows are pruned against their component.
    pub fn from_terms(&self, terms: Vec<SimTerm>) -> Result<SimVector> {
        let n = self.n();
        let mut out = Vec::with_capacity(terms.len());
        for mut t in terms {
            if t.primitive.component >= self.p || t.atom >= self.atoms.len() {
                return Err(Error::ContextMismatch);
            }
            if t.primitive.window.iter().any(|w| w.dim() != n) {
                return Err(Error::AmbientMismatch { left: n, right: 0 });
            }
            self.prune(t.primitive.component, &mut t.primitive.window);
            out.push(t);
        }
        Ok(self.vector(out))
    }

    /// `ξ_k ⊗ δ_atom`: slots `e_1 × k, f_1, f_2, ...` in component `k mod p`.
    pub fn make_xi_atom(&self, k: usize, atom: usize) -> SimVector {
        let component = k % self.p;
        let mut window: Vec<UnitVector> = Vec::with_capacity(k + self.preperiod);
        for j in 1..=k + self.preperiod {
            window.push(if j <= k { self.e1.clone() } else { self.state.f(j - k).clone() });
        }
        self.prune(component, &mut window);
        self.vector(vec![SimTerm {
            coeff: Complex64::new(1.0, 0.0),
            primitive: Primitive { component, window },
            atom,
        }])
    }

    /// `ξ_k ⊗ 𝟙`, with amplitude `√w_j` on atom `j`.
    pub fn make_xi(&self, k: usize) -> SimVector {
        let mut terms = Vec::new();
        for (j, atom) in self.atoms.iter().enumerate() {
            let mut v = self.make_xi_atom(k, j);
            for t in &mut v.terms {
                t.coeff *= atom.weight.sqrt();
            }
            terms.extend(v.terms);
        }
        self.vector(terms)
    }

    pub fn inner(&self, v: &SimVector, w: &SimVector) -> Result<Complex64> {
        self.check(v)?;
        self.check(w)?;
        let mut total = Complex64::default();
        for a in &v.terms {
            for b in &w.terms {
                if a.atom != b.atom || a.primitive.component != b.primitive.component {
                    continue;
                }
                total += a.coeff * b.coeff.conj() * self.pair_windows(&a.primitive, &b.primitive);
            }
        }
        Ok(total)
    }

    fn pair_windows(&self, a: &Primitive, b: &Primitive) -> Complex64 {
        let len = a.window.len().max(b.window.len());
        let mut value = Complex64::new(1.0, 0.0);
        for j in 1..=len {
            let x = a.window.get(j - 1).unwrap_or_else(|| self.reference(a.component, j));
            let y = b.window.get(j - 1).unwrap_or_else(|| self.reference(b.component, j));
            value *= inner(x.coords(), y.coords());
            if value == Complex64::default() {
                break;
            }
        }
        value
    }

    pub fn norm(&self, v: &SimVector) -> Result<f64> {
        Ok(self.inner(v, v)?.re.max(0.0).sqrt())
    }

    pub fn add(&self, v: &SimVector, w: &SimVector) -> Result<SimVector> {
        self.check(v)?;
        self.check(w)?;
        Ok(self.vector(v.terms.iter().chain(&w.terms).cloned().collect()))
    }

    pub fn scale(&self, v: &SimVector, c: Complex64) -> SimVector {
        let terms = v
            .terms
            .iter()
            .map(|t| SimTerm { coeff: t.coeff * c, ..t.clone() })
            .collect();
        self.vector(terms)
    }

    pub fn sub(&self, v: &SimVector, w: &SimVector) -> Result<SimVector> {
        self.add(v, &self.scale(w, Complex64::new(-1.0, 0.0)))
    }

    /// `S_a = ⊕_i S_{a,i} ⊗ U_i` with `U_{p-1} = θ(z)`.
    pub fn apply_generator(&self, a: Letter, v: &SimVector) -> Result<SimVector> {
        self.check(v)?;
        let e_a = UnitVector::basis(self.n(), a.get());
        let mut out = Vec::with_capacity(v.terms.len());
        for t in &v.terms {
            let mut window = Vec::with_capacity(t.primitive.window.len() + 1);
            window.push(e_a.clone());
            window.extend(t.primitive.window.iter().cloned());
            let mut component = t.primitive.component + 1;
            let mut coeff = t.coeff;
            if component == self.p {
                self.materialize(self.p, &mut window, self.wrap_horizon());
                component = 0;
                coeff *= self.atoms[t.atom].point;
            }
            self.prune(component, &mut window);
            out.push(SimTerm { coeff, primitive: Primitive { component, window }, atom: t.atom });
        }
        Ok(self.vector(out))
    }

    pub fn apply_generator_adjoint(&self, a: Letter, v: &SimVector) -> Result<SimVector> {
        self.check(v)?;
        let mut out = Vec::with_capacity(v.terms.len());
        for t in &v.terms {
            let mut window = t.primitive.window.clone();
            let mut coeff = t.coeff;
            let grid = if t.primitive.component == 0 {
                self.materialize(0, &mut window, self.wrap_horizon() + 1);
                coeff *= self.atoms[t.atom].point.conj();
                self.p
            } else {
                self.materialize(t.primitive.component, &mut window, 1);
                t.primitive.component
            };
            let first = window.remove(0);
            coeff *= first.coord(a);
            if coeff == Complex64::default() {
                continue;
            }
            let component = grid - 1;
            self.prune(component, &mut window);
            out.push(SimTerm { coeff, primitive: Primitive { component, window }, atom: t.atom });
        }
        Ok(self.vector(out))
    }

    pub fn apply_monomial(&self, m: &Monomial, v: &SimVector) -> Result<SimVector> {
        let mut cur = v.clone();
        // v_t* = v_{t_m}* ... v_{t_1}*: v_{t_1}* acts first
        for a in &m.t {
            cur = self.apply_generator_adjoint(*a, &cur)?;
            if cur.is_zero() {
                return Ok(cur);
            }
        }
        for a in m.s.iter().rev() {
            cur = self.apply_generator(*a, &cur)?;
        }
        Ok(cur)
    }

    pub fn apply_element(&self, x: &AlgebraElement, v: &SimVector) -> Result<SimVector> {
        if x.n() != self.n() {
            return Err(Error::AmbientMismatch { left: self.n(), right: x.n() });
        }
        self.check(v)?;
        let mut terms = Vec::new();
        for (m, c) in x.terms() {
            let image = self.apply_monomial(m, v)?;
            terms.extend(image.terms.into_iter().map(|t| SimTerm { coeff: t.coeff * c, ..t }));
        }
        Ok(self.vector(terms))
    }

    /// `<π(x) ξ_0⊗𝟙, ξ_0⊗𝟙>`.
    pub fn vector_state(&self, x: &AlgebraElement) -> Result<Complex64> {
        let xi = self.make_xi(0);
        let image = self.apply_element(x, &xi)?;
        self.inner(&image, &xi)
    }

    fn basis_at(&self, component: usize, j: usize) -> &[Vec<Complex64>] {
        let table = &self.bases[component];
        let head = component + self.preperiod;
        let j = if j > table.len() { head + 1 + (j - head - 1) % self.p } else { j };
        &table[j - 1]
    }

    /// Coordinates in the orthonormal product basis adapted to each
    /// component's reference tail; keys drop trailing reference indices.
    pub fn coordinates(&self, v: &SimVector) -> BTreeMap<(usize, usize, Vec<u8>), Complex64> {
        let mut out: BTreeMap<(usize, usize, Vec<u8>), Complex64> = BTreeMap::new();
        for t in &v.terms {
            let comp = t.primitive.component;
            let mut partial: Vec<(Vec<u8>, Complex64)> = vec![(Vec::new(), t.coeff)];
            for (j, w) in t.primitive.window.iter().enumerate() {
                let basis = self.basis_at(comp, j + 1);
                let coords: Vec<(u8, Complex64)> = basis
                    .iter()
                    .enumerate()
                    .map(|(b, vec)| (b as u8, inner(w.coords(), vec)))
                    .filter(|(_, c)| *c != Complex64::default())
                    .collect();
                let mut next = Vec::with_capacity(partial.len() * coords.len());
                for (key, c) in &partial {
                    for (b, x) in &coords {
                        let mut k = key.clone();
                        k.push(*b);
                        next.push((k, c * x));
                    }
                }
                partial = next;
            }
            for (mut key, c) in partial {
                while key.last() == Some(&0) {
                    key.pop();
                }
                *out.entry((comp, t.atom, key)).or_default() += c;
            }
        }
        out
    }

    /// `‖v - w‖`, computed coordinatewise so that equal vectors with different
    /// window layouts do not lose precision to cancellation. Terms with the
    /// same primitive cancel before expansion.
    pub fn distance(&self, v: &SimVector, w: &SimVector) -> Result<f64> {
        let diff = self.sub(v, w)?;
        Ok(self.coordinates(&diff).values().map(|c| c.norm_sqr()).sum::<f64>().sqrt())
    }

    /// Random vector with up to three terms and windows of length `≤ max_len`.
    pub fn random_vector<R: Rng + ?Sized>(&self, rng: &mut R, max_len: usize) -> SimVector {
        let count = rng.random_range(1..=3);
        let terms = (0..count)
            .map(|_| {
                let len = rng.random_range(0..=max_len);
                SimTerm {
                    coeff: sample::complex_gaussian(rng),
                    primitive: Primitive {
                        component: rng.random_range(0..self.p),
                        window: (0..len).map(|_| sample::unit_vector(rng, self.n())).collect(),
                    },
                    atom: rng.random_range(0..self.atoms.len()),
                }
            })
            .collect();
        self.from_terms(terms).expect("generated within context")
    }

    /// `Ad π(A) = Σ_a S_a A S_a*` on a weighted sum of dyads.
    pub fn endo_apply(&self, dyads: &[(Complex64, Dyad)]) -> Result<Vec<(Complex64, Dyad)>> {
        let mut out = Vec::with_capacity(dyads.len() * self.n());
        for (w, d) in dyads {
            for a in 1..=self.n() {
                let l = Letter::unchecked(a);
                out.push((
                    *w,
                    Dyad { ket: self.apply_generator(l, &d.ket)?, bra: self.apply_generator(l, &d.bra)? },
                ));
            }
        }
        Ok(out)
    }

    /// `(Σ w |ket><bra|) v = Σ w <v, bra> ket`.
    pub fn apply_dyads(&self, dyads: &[(Complex64, Dyad)], v: &SimVector) -> Result<SimVector> {
        let mut terms = Vec::new();
        for (w, d) in dyads {
            let c = w * self.inner(v, &d.bra)?;
            terms.extend(self.scale(&d.ket, c).terms);
        }
        Ok(self.vector(terms))
    }

    /// `tr(Σ w |ket><bra|) = Σ w <ket, bra>`.
    pub fn trace(&self, dyads: &[(Complex64, Dyad)]) -> Result<Complex64> {
        let mut total = Complex64::default();
        for (w, d) in dyads {
            total += w * self.inner(&d.ket, &d.bra)?;
        }
        Ok(total)
    }
}

/// Maximum deviation per identity over a randomized relation check.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct RelationReport {
    pub seed: u64,
    pub trials: usize,
    pub max_len: usize,
    /// `S_a* S_b = δ_ab I`
    pub orthogonality: f64,
    /// `Σ_a S_a S_a* = I`
    pub completeness: f64,
    /// `‖S_a v‖ = ‖v‖`
    pub isometry: f64,
    /// `π(v_1 v_1*) ξ_{i+1} = ξ_{i+1}`
    pub v1v1: f64,
    /// `S_a π(x) ξ_i = π(v_a x v_1*) ξ_{i+1}`
    pub intertwining: f64,
    /// `S_a* π(x) ξ_{i+1} = π(v_a* x v_1) ξ_i`
    pub adjoint: f64,
    /// `S_1* π(x) S_1 = π(v_1* x v_1)`
    pub ads: f64,
}

impl RelationReport {
    pub fn max_deviation(&self) -> f64 {
        [
            self.orthogonality,
            self.completeness,
            self.isometry,
            self.v1v1,
            self.intertwining,
            self.adjoint,
            self.ads,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    fn merge(mut self, other: &RelationReport) -> Self {
        self.orthogonality = self.orthogonality.max(other.orthogonality);
        self.completeness = self.completeness.max(other.completeness);
        self.isometry = self.isometry.max(other.isometry);
        self.v1v1 = self.v1v1.max(other.v1v1);
        self.intertwining = self.intertwining.max(other.intertwining);
        self.adjoint = self.adjoint.max(other.adjoint);
        self.ads = self.ads.max(other.ads);
        self
    }
}

fn generator_element(n: usize, a: usize, adjoint: bool) -> AlgebraElement {
    let l = Letter::unchecked(a);
    let m = if adjoint { Monomial::new(vec![], vec![l]) } else { Monomial::new(vec![l], vec![]) };
    AlgebraElement::from_monomial(n, m, Complex64::new(1.0, 0.0)).expect("letter in range")
}

fn relation_trial(ctx: &SimContext, max_len: usize, seed: u64, trial: usize) -> Result<RelationReport> {
    let mut rng = sample::trial_rng(seed, trial as u64);
    let n = ctx.n();
    let mut r = RelationReport::default();
    let v = ctx.random_vector(&mut rng, max_len);
    let norm_v = ctx.norm(&v)?;

    let mut range_sum = ctx.zero();
    for a in 1..=n {
        let la = Letter::unchecked(a);
        let sa_v = ctx.apply_generator(la, &v)?;
        r.isometry = r.isometry.max((ctx.norm(&sa_v)? - norm_v).abs());
        for b in 1..=n {
            let lb = Letter::unchecked(b);
            let lhs = ctx.apply_generator_adjoint(lb, &sa_v)?;
            let rhs = if a == b { v.clone() } else { ctx.zero() };
            r.orthogonality = r.orthogonality.max(ctx.distance(&lhs, &rhs)?);
        }
        let proj = ctx.apply_generator(la, &ctx.apply_generator_adjoint(la, &v)?)?;
        range_sum = ctx.add(&range_sum, &proj)?;
    }
    r.completeness = ctx.distance(&range_sum, &v)?;

    let x = sample::core_element(&mut rng, n, 3, max_len);
    let v1 = generator_element(n, 1, false);
    let v1s = generator_element(n, 1, true);
    let e1 = Letter::unchecked(1);

    // S_1* π(x) S_1 v = π(v_1* x v_1) v
    let lhs = ctx.apply_generator_adjoint(e1, &ctx.apply_element(&x, &ctx.apply_generator(e1, &v)?)?)?;
    let rhs = ctx.apply_element(&v1s.mul(&x)?.mul(&v1)?, &v)?;
    r.ads = ctx.distance(&lhs, &rhs)?;

    // intertwining relations on π_i(x) ξ_i, one atom at a time
    let i = rng.random_range(0..ctx.p);
    let atom = rng.random_range(0..ctx.atoms.len());
    let a = rng.random_range(1..=n);
    let la = Letter::unchecked(a);
    let c = ctx.atoms[atom].point;
    let wraps = i + 1 == ctx.p;
    let xi_i = ctx.make_xi_atom(i, atom);
    let xi_next = ctx.make_xi_atom(i + 1, atom);

    let lhs = ctx.apply_generator(la, &ctx.apply_element(&x, &xi_i)?)?;
    let y = generator_element(n, a, false).mul(&x)?.mul(&v1s)?;
    let mut rhs = ctx.apply_element(&y, &xi_next)?;
    if wraps {
        rhs = ctx.scale(&rhs, c);
    }
    r.intertwining = ctx.distance(&lhs, &rhs)?;

    let lhs = ctx.apply_generator_adjoint(la, &ctx.apply_element(&x, &xi_next)?)?;
    let y = generator_element(n, a, true).mul(&x)?.mul(&v1)?;
    let mut rhs = ctx.apply_element(&y, &xi_i)?;
    if wraps {
        rhs = ctx.scale(&rhs, c.conj());
    }
    r.adjoint = ctx.distance(&lhs, &rhs)?;
    Ok(r)
}

/// Randomized check of the Cuntz relations and the intertwining identities
/// of the model. Deterministic in `seed` regardless of `exec`.
pub fn check_relations(
    ctx: &SimContext,
    max_len: usize,
    trials: usize,
    seed: u64,
    exec: Exec,
) -> Result<RelationReport> {
    let n = ctx.n();
    let mut report = RelationReport { seed, trials, max_len, ..Default::default() };
    let proj = generator_element(n, 1, false).mul(&generator_element(n, 1, true))?;
    for i in 0..ctx.p {
        let xi = ctx.make_xi(i + 1);
        let image = ctx.apply_element(&proj, &xi)?;
        report.v1v1 = report.v1v1.max(ctx.distance(&image, &xi)?);
    }
    let per_trial = map_indexed(exec, trials, |t| relation_trial(ctx, max_len, seed, t));
    for r in per_trial {
        report = report.merge(&r?);
    }
    Ok(report)
}

/// Worst disagreement between the closed-form extension and the vector state
/// of `ξ_0` over random monomials.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct OracleReport {
    pub seed: u64,
    pub trials: usize,
    pub max_len: usize,
    pub max_degree: usize,
    pub max_deviation: f64,
}

/// Compare `ExtensionState::eval_monomial` against `vector_state` on `trials`
/// random monomials with `|s|, |t| ≤ max_len` and `|degree| ≤ max_degree`.
pub fn oracle_agreement(
    ctx: &SimContext,
    max_len: usize,
    max_degree: usize,
    trials: usize,
    seed: u64,
    exec: Exec,
) -> Result<OracleReport> {
    let ext = ExtensionState::new(ctx.state.clone(), ctx.measure()?);
    let n = ctx.n();
    let per_trial = map_indexed(exec, trials, |t| -> Result<f64> {
        let mut rng = sample::trial_rng(seed, t as u64);
        let m = sample::monomial(&mut rng, n, max_len, max_degree);
        let x = AlgebraElement::from_monomial(n, m.clone(), Complex64::new(1.0, 0.0))?;
        Ok((ext.eval_monomial(&m) - ctx.vector_state(&x)?).norm())
    });
    let mut report = OracleReport { seed, trials, max_len, max_degree, max_deviation: 0.0 };
    for d in per_trial {
        report.max_deviation = report.max_deviation.max(d?);
    }
    Ok(report)
}
