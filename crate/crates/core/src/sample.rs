//! Seeded random generators for vectors, unitaries, elements and measures.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{AlgebraElement, Monomial, MultiIndex, Letter};
use crate::measure::CircleMeasure;
use crate::product_state::UnitVector;

/// Reproducible generator for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn phase<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, rng.random::<f64>() * TAU)
}

/// Haar-random unit vector in `C^n`.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> UnitVector {
    loop {
        let v: Vec<Complex64> = (0..n).map(|_| complex_gaussian(rng)).collect();
        if let Ok(u) = UnitVector::normalized(v) {
            return u;
        }
    }
}

/// Haar-random unitary via Gram-Schmidt on a complex Gaussian matrix.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(n, n, |_, _| complex_gaussian(rng));
    let mut q = DMatrix::<Complex64>::zeros(n, n);
    for j in 0..n {
        let mut col = g.column(j).into_owned();
        for i in 0..j {
            let qi = q.column(i).into_owned();
            let proj = qi.dotc(&col);
            col -= qi * proj;
        }
        let nrm = col.norm();
        q.set_column(j, &(col / Complex64::new(nrm, 0.0)));
    }
    q
}

pub fn multi_index<R: Rng + ?Sized>(rng: &mut R, n: usize, len: usize) -> MultiIndex {
    (0..len).map(|_| Letter::unchecked(rng.random_range(1..=n))).collect()
}

/// Random monomial with `|s|, |t| ≤ max_len` and `|degree| ≤ max_degree`.
pub fn monomial<R: Rng + ?Sized>(rng: &mut R, n: usize, max_len: usize, max_degree: usize) -> Monomial {
    loop {
        let ls = rng.random_range(0..=max_len);
        let lt = rng.random_range(0..=max_len);
        if ls.abs_diff(lt) <= max_degree {
            return Monomial::new(multi_index(rng, n, ls), multi_index(rng, n, lt));
        }
    }
}

pub fn core_monomial<R: Rng + ?Sized>(rng: &mut R, n: usize, max_len: usize) -> Monomial {
    let len = rng.random_range(0..=max_len);
    Monomial::new(multi_index(rng, n, len), multi_index(rng, n, len))
}

/// Random combination of up to `terms` monomials.
pub fn element<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    terms: usize,
    max_len: usize,
    max_degree: usize,
) -> AlgebraElement {
    let count = rng.random_range(1..=terms.max(1));
    let items: Vec<_> = (0..count)
        .map(|_| (monomial(rng, n, max_len, max_degree), complex_gaussian(rng)))
        .collect();
    AlgebraElement::from_terms(n, items).expect("letters are in range")
}

/// Random element of the core (all terms of degree zero).
pub fn core_element<R: Rng + ?Sized>(rng: &mut R, n: usize, terms: usize, max_len: usize) -> AlgebraElement {
    let count = rng.random_range(1..=terms.max(1));
    let items: Vec<_> = (0..count)
        .map(|_| (core_monomial(rng, n, max_len), complex_gaussian(rng)))
        .collect();
    AlgebraElement::from_terms(n, items).expect("letters are in range")
}

/// Atomic probability measure with `atoms` distinct random points.
pub fn atomic_measure<R: Rng + ?Sized>(rng: &mut R, atoms: usize) -> CircleMeasure {
    let weights: Vec<f64> = (0..atoms).map(|_| 0.1 + rng.random::<f64>()).collect();
    let total: f64 = weights.iter().sum();
    let base = rng.random::<f64>() * TAU;
    let points: Vec<(Complex64, f64)> = weights
        .iter()
        .enumerate()
        .map(|(j, w)| {
            let angle = base + TAU * (j as f64 + 0.1 + 0.8 * rng.random::<f64>()) / atoms as f64;
            (Complex64::from_polar(1.0, angle), w / total)
        })
        .collect();
    CircleMeasure::atomic(&points).expect("points are spread over distinct arcs")
}
