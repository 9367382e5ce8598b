mod common;

use common::*;
use cuntzkit::algebra::{AlgebraElement, Letter};
use cuntzkit::exec::Exec;
use cuntzkit::gns::{self, Dyad, SimContext};
use cuntzkit::measure::CircleMeasure;
use cuntzkit::product_state::ProductState;
use cuntzkit::sample::{self, trial_rng};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

fn random_ctx<R: Rng>(rng: &mut R) -> (SimContext, CircleMeasure, usize) {
    let n = rng.random_range(2..=3);
    let p = rng.random_range(1..=3);
    let f = state_with_preperiod(rng, n, p);
    let atoms = rng.random_range(1..=3);
    let mu = sample::atomic_measure(rng, atoms);
    (SimContext::new(f, &mu).unwrap(), mu, p)
}

fn l(a: usize) -> Letter {
    Letter::unchecked(a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn block_structure(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let (ctx, _, _) = random_ctx(&mut rng);
        let v = ctx.random_vector(&mut rng, 3);
        let x = sample::core_element(&mut rng, ctx.n(), 3, 3);
        let sector = |t: &gns::SimTerm| (t.primitive.component, t.atom);
        let first = sector(&v.terms()[0]);
        let single = ctx.from_terms(v.terms().iter().filter(|t| sector(t) == first).cloned().collect()).unwrap();
        let image = ctx.apply_element(&x, &single).unwrap();
        prop_assert!(image.terms().iter().all(|t| sector(t) == first));
    }

    #[test]
    fn gauge_identity(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 1);
        let (ctx, mu, p) = random_ctx(&mut rng);
        let lambda = sample::phase(&mut rng);
        let moved = SimContext::new(ctx.state().clone(), &mu.gauge(lambda, p).unwrap()).unwrap();
        for _ in 0..10 {
            let m = sample::monomial(&mut rng, ctx.n(), 5, 6);
            let x = AlgebraElement::from_monomial(ctx.n(), m, one()).unwrap();
            let lhs = moved.vector_state(&x).unwrap();
            let rhs = ctx.vector_state(&x.gauge(lambda).unwrap()).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-10);
        }
    }

    #[test]
    fn representation_property(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 2);
        let (ctx, _, _) = random_ctx(&mut rng);
        let n = ctx.n();
        let v = ctx.random_vector(&mut rng, 3);
        let x = sample::element(&mut rng, n, 2, 2, 2);
        let y = sample::element(&mut rng, n, 2, 2, 2);
        let lhs = ctx.apply_element(&x.mul(&y).unwrap(), &v).unwrap();
        let rhs = ctx.apply_element(&x, &ctx.apply_element(&y, &v).unwrap()).unwrap();
        prop_assert!(ctx.distance(&lhs, &rhs).unwrap() < 1e-12);
        // π(x*) is the adjoint of π(x)
        let w = ctx.random_vector(&mut rng, 3);
        let a = ctx.inner(&ctx.apply_element(&x, &v).unwrap(), &w).unwrap();
        let b = ctx.inner(&v, &ctx.apply_element(&x.adjoint(), &w).unwrap()).unwrap();
        prop_assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn endo_apply_scales_trace_by_n(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 3);
        let (ctx, _, _) = random_ctx(&mut rng);
        let dyads: Vec<(Complex64, Dyad)> = (0..3)
            .map(|_| {
                let v = ctx.random_vector(&mut rng, 2);
                let w = ctx.random_vector(&mut rng, 2);
                (sample::complex_gaussian(&mut rng), Dyad { ket: v, bra: w })
            })
            .collect();
        let image = ctx.endo_apply(&dyads).unwrap();
        let n = ctx.n() as f64;
        let before = ctx.trace(&dyads).unwrap();
        prop_assert!((ctx.trace(&image).unwrap() - before * n).norm() < 1e-10 * (1.0 + before.norm()));
        // Ad π(A) S_b u = S_b A u
        let u = ctx.random_vector(&mut rng, 2);
        let b = l(rng.random_range(1..=ctx.n()));
        let lhs = ctx.apply_dyads(&image, &ctx.apply_generator(b, &u).unwrap()).unwrap();
        let rhs = ctx.apply_generator(b, &ctx.apply_dyads(&dyads, &u).unwrap()).unwrap();
        prop_assert!(ctx.distance(&lhs, &rhs).unwrap() < 1e-10);
    }

    #[test]
    fn endo_apply_keeps_orthonormal_families(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 4);
        let (ctx, _, p) = random_ctx(&mut rng);
        // ξ_0, ..., ξ_{p-1} per atom are orthonormal (distinct components / atoms)
        let family: Vec<_> = (0..p)
            .flat_map(|k| (0..ctx.atoms().len()).map(move |j| (k, j)))
            .map(|(k, j)| ctx.make_xi_atom(k, j))
            .collect();
        let dyads: Vec<_> = family.iter().map(|v| (one(), Dyad { ket: v.clone(), bra: v.clone() })).collect();
        let image = ctx.endo_apply(&dyads).unwrap();
        for (i, (_, a)) in image.iter().enumerate() {
            for (j, (_, b)) in image.iter().enumerate() {
                let g = ctx.inner(&a.ket, &b.ket).unwrap();
                let want = if i == j { one() } else { c(0.0, 0.0) };
                prop_assert!((g - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn xi_are_unit_vectors(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 5);
        let (ctx, _, p) = random_ctx(&mut rng);
        for k in 0..=3 * p {
            prop_assert!((ctx.norm(&ctx.make_xi(k)).unwrap() - 1.0).abs() < 1e-12);
        }
        prop_assert!(ctx.make_xi(p).terms().iter().all(|t| t.primitive.component == 0));
    }

    #[test]
    fn relations_and_oracle(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 6);
        let (ctx, _, _) = random_ctx(&mut rng);
        let r = gns::check_relations(&ctx, 4, 10, seed, Exec::Sequential).unwrap();
        prop_assert!(r.max_deviation() <= 1e-12, "{r:?}");
        let o = gns::oracle_agreement(&ctx, 4, 6, 20, seed, Exec::Sequential).unwrap();
        prop_assert!(o.max_deviation <= 1e-9);
    }
}

#[test]
fn exec_modes_agree() {
    let mut rng = trial_rng(11, 0);
    let (ctx, _, _) = random_ctx(&mut rng);
    let a = gns::check_relations(&ctx, 4, 40, 5, Exec::Sequential).unwrap();
    let b = gns::check_relations(&ctx, 4, 40, 5, Exec::Parallel).unwrap();
    assert_eq!(a, b);
}

#[test]
fn worked_examples() {
    let cpt = Complex64::from_polar(1.0, 0.9);
    let delta = CircleMeasure::point_mass(cpt).unwrap();
    let cuntz = SimContext::new(ProductState::constant(e(2, 1)).unwrap(), &delta).unwrap();
    assert_eq!(cuntz.inner(&cuntz.make_xi(1), &cuntz.make_xi(0)).unwrap(), one());
    assert!((cuntz.vector_state(&mono(2, &[1], &[])).unwrap() - cpt).norm() < 1e-15);
    // p = 1: S_1 ξ_0 = c ξ_1
    let s1 = cuntz.apply_generator(l(1), &cuntz.make_xi(0)).unwrap();
    assert!(cuntz.distance(&s1, &cuntz.scale(&cuntz.make_xi(1), cpt)).unwrap() < 1e-15);
    assert!(cuntz.apply_generator_adjoint(l(2), &cuntz.make_xi(1)).unwrap().is_zero());

    let alt = SimContext::new(alternating(), &delta).unwrap();
    assert_eq!(alt.inner(&alt.make_xi(1), &alt.make_xi(0)).unwrap(), c(0.0, 0.0));
    let s1 = alt.apply_generator(l(1), &alt.make_xi(0)).unwrap();
    assert!(alt.distance(&s1, &alt.make_xi(1)).unwrap() < 1e-15);
    let back = alt.apply_generator_adjoint(l(1), &alt.make_xi(1)).unwrap();
    assert!(alt.distance(&back, &alt.make_xi(0)).unwrap() < 1e-15);
    let proj = alt.apply_element(&mono(2, &[1], &[1]), &alt.make_xi(1)).unwrap();
    assert!(alt.distance(&proj, &alt.make_xi(1)).unwrap() < 1e-15);
    assert!((alt.vector_state(&mono(2, &[1, 2], &[])).unwrap() - cpt).norm() < 1e-15);

    let diag = ProductState::constant(cuntzkit::UnitVector::from_real(&[1.0, 1.0]).unwrap()).unwrap();
    let ctx = SimContext::new(diag, &delta).unwrap();
    assert!((ctx.vector_state(&mono(2, &[1], &[2])).unwrap() - c(0.5, 0.0)).norm() < 1e-15);
    assert!(matches!(
        SimContext::new(alternating(), &CircleMeasure::haar()),
        Err(cuntzkit::Error::UnsupportedMeasure)
    ));
}
