//! Shared fixtures and brute-force oracles for the integration tests.
#![allow(dead_code)]

use cuntzkit::algebra::{AlgebraElement, Monomial};
use cuntzkit::measure::CircleMeasure;
use cuntzkit::product_state::{ProductState, UnitVector, VectorSequence};
use cuntzkit::sample;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn one() -> Complex64 {
    c(1.0, 0.0)
}

pub fn e(n: usize, a: usize) -> UnitVector {
    UnitVector::basis(n, a)
}

pub fn mono(n: usize, s: &[usize], t: &[usize]) -> AlgebraElement {
    AlgebraElement::from_monomial(n, Monomial::from_indices(s, t), one()).unwrap()
}

pub fn alternating() -> ProductState {
    ProductState::periodic(vec![e(2, 1), e(2, 2)]).unwrap()
}

/// Raw (non-canonical) eventually periodic sequence as an explicit list.
#[derive(Debug, Clone)]
pub struct RawSequence {
    pub n: usize,
    pub preperiod: Vec<Vec<Complex64>>,
    pub block: Vec<Vec<Complex64>>,
}

impl RawSequence {
    pub fn get(&self, i: usize) -> &[Complex64] {
        if i <= self.preperiod.len() {
            &self.preperiod[i - 1]
        } else {
            &self.block[(i - self.preperiod.len() - 1) % self.block.len()]
        }
    }

    pub fn state(&self) -> ProductState {
        let uv = |v: &Vec<Complex64>| UnitVector::new(v.clone()).unwrap();
        ProductState::new(
            VectorSequence::new(
                self.n,
                self.preperiod.iter().map(uv).collect(),
                self.block.iter().map(uv).collect(),
            )
            .unwrap(),
        )
    }
}

fn raw_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    sample::unit_vector(rng, n).coords().to_vec()
}

/// Random sequence with random phases; `discrete` draws from basis vectors
/// and one diagonal so lines repeat often.
pub fn raw_sequence<R: Rng>(rng: &mut R, n: usize, max_pre: usize, max_block: usize) -> RawSequence {
    let discrete = rng.random_bool(0.5);
    let draw = |rng: &mut R| -> Vec<Complex64> {
        let v = if discrete {
            let k = rng.random_range(0..=n);
            if k == n {
                let s = 1.0 / (n as f64).sqrt();
                vec![c(s, 0.0); n]
            } else {
                e(n, k + 1).coords().to_vec()
            }
        } else {
            raw_vector(rng, n)
        };
        let ph = sample::phase(rng);
        v.into_iter().map(|x| x * ph).collect()
    };
    let pre = rng.random_range(0..=max_pre);
    let blk = rng.random_range(1..=max_block);
    RawSequence {
        n,
        preperiod: (0..pre).map(|_| draw(rng)).collect(),
        block: (0..blk).map(|_| draw(rng)).collect(),
    }
}

/// `ω_f(v_s v_t*)` straight from the product formula on the raw vectors.
pub fn product_oracle(f: &RawSequence, x: &AlgebraElement) -> Complex64 {
    x.terms()
        .map(|(m, coeff)| {
            assert_eq!(m.s.len(), m.t.len());
            let mut v = *coeff;
            for (i, (a, b)) in m.s.iter().zip(&m.t).enumerate() {
                let fi = f.get(i + 1);
                v *= fi[a.index()].conj() * fi[b.index()];
            }
            v
        })
        .sum()
}

/// Random periodic state with exactly the requested period (no preperiod).
pub fn state_with_period<R: Rng>(rng: &mut R, n: usize, p: usize) -> ProductState {
    loop {
        let block: Vec<UnitVector> = (0..p).map(|_| sample::unit_vector(rng, n)).collect();
        let f = ProductState::periodic(block).unwrap();
        if f.period() == p {
            return f;
        }
    }
}

/// Random state of period `p` with a random preperiod of length ≤ 2.
pub fn state_with_preperiod<R: Rng>(rng: &mut R, n: usize, p: usize) -> ProductState {
    let f = state_with_period(rng, n, p);
    let pre: Vec<UnitVector> = (0..rng.random_range(0..=2)).map(|_| sample::unit_vector(rng, n)).collect();
    ProductState::with_preperiod(pre, f.tail().to_vec()).unwrap()
}

/// Hermitian matrix minimum eigenvalue.
pub fn min_eigenvalue(m: &DMatrix<Complex64>) -> f64 {
    let h = (m + m.adjoint()) * c(0.5, 0.0);
    h.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Mixture of up to `atoms` atoms and (optionally) Haar.
pub fn mixed_measure<R: Rng>(rng: &mut R, atoms: usize, haar: bool) -> CircleMeasure {
    let base = sample::atomic_measure(rng, atoms.max(1));
    let h = if haar { 0.1 + 0.5 * rng.random::<f64>() } else { 0.0 };
    let scaled: Vec<_> = base.atoms().iter().map(|a| cuntzkit::Atom { point: a.point, weight: a.weight * (1.0 - h) }).collect();
    CircleMeasure::new(h, scaled).unwrap()
}

pub fn random_tuple<R: Rng>(rng: &mut R, n: usize, p: usize) -> cuntzkit::LineTuple {
    let lines = (0..p).map(|_| sample::unit_vector(rng, n)).collect();
    cuntzkit::LineTuple::new(n, lines).unwrap()
}

/// `g_{j} = φ_j W f_{j-k}`, i.e. `[W f_j] = [g_{j+k}]`.
pub fn transform_tuple<R: Rng>(
    rng: &mut R,
    f: &cuntzkit::LineTuple,
    w: &DMatrix<Complex64>,
    k: usize,
) -> cuntzkit::LineTuple {
    let p = f.len();
    let mut out = vec![UnitVector::basis(f.n(), 1); p];
    for (j, fj) in f.lines().iter().enumerate() {
        let image = w * nalgebra::DVector::from_column_slice(fj.coords());
        let ph = sample::phase(rng);
        out[(j + k) % p] = UnitVector::normalized(image.iter().map(|x| x * ph).collect()).unwrap();
    }
    cuntzkit::LineTuple::new(f.n(), out).unwrap()
}

/// `|<f_i, f_j>|` as a matrix.
pub fn gram_moduli(t: &cuntzkit::LineTuple) -> Vec<Vec<f64>> {
    t.lines().iter().map(|a| t.lines().iter().map(|b| a.inner(b).norm()).collect()).collect()
}

/// Smallest, over cyclic shifts, of the largest Gram-modulus difference.
pub fn gram_gap(f: &cuntzkit::LineTuple, g: &cuntzkit::LineTuple) -> f64 {
    let gf = gram_moduli(f);
    (0..g.len())
        .map(|k| {
            let gg = gram_moduli(&g.rotate(k));
            let mut worst: f64 = 0.0;
            for i in 0..f.len() {
                for j in 0..f.len() {
                    worst = worst.max((gf[i][j] - gg[i][j]).abs());
                }
            }
            worst
        })
        .fold(f64::INFINITY, f64::min)
}

/// Tilt one line of `g` by a small random angle until the Gram moduli differ
/// from those of `f` by at least `gap` under every cyclic shift.
pub fn perturb_tuple<R: Rng>(
    rng: &mut R,
    f: &cuntzkit::LineTuple,
    g: &cuntzkit::LineTuple,
    gap: f64,
) -> cuntzkit::LineTuple {
    let n = g.n();
    loop {
        let j = rng.random_range(0..g.len());
        let theta = 0.01 + 0.05 * rng.random::<f64>();
        let gj = g.lines()[j].coords().to_vec();
        // random direction orthogonal to g_j
        let mut h = sample::unit_vector(rng, n).coords().to_vec();
        let proj: Complex64 = h.iter().zip(&gj).map(|(a, b)| a * b.conj()).sum();
        h.iter_mut().zip(&gj).for_each(|(a, b)| *a -= proj * b);
        let hn = h.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if hn < 1e-6 {
            continue;
        }
        let tilted: Vec<Complex64> =
            gj.iter().zip(&h).map(|(a, b)| a * theta.cos() + b * (theta.sin() / hn)).collect();
        let mut lines = g.lines().to_vec();
        lines[j] = UnitVector::normalized(tilted).unwrap();
        let out = cuntzkit::LineTuple::new(n, lines).unwrap();
        if gram_gap(f, &out) >= gap {
            return out;
        }
    }
}
