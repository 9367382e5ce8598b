//! State extensions `ρ̃[μ, ξ_p]` of a periodic pure product state to all of O_n.
//!
//! The linking vector is fixed to `ξ'_p = e_1^{⊗p} ⊗ f_1 ⊗ f_2 ⊗ ...` on the
//! canonical sequence, and more generally `ξ_k = e_1^{⊗k} ⊗ f_1 ⊗ ...`. For a
//! monomial with `k = |s| - |t| ≥ 0` and `p | k`,
//!
//! ```text
//! ρ̃(v_s v_t*) = <π_0(v_s (v_1^k v_t)*) ξ_k, ξ_0> · ∫ z^{k/p} dμ
//! ```
//!
//! and the inner product is a finite product of slotwise pairings: the tails
//! of `ξ_k` and `ξ_0` agree exactly past the preperiod once `p | k`.

use num_complex::Complex64;

use crate::algebra::{AlgebraElement, Letter, Monomial};
use crate::error::{Error, Result};
use crate::measure::CircleMeasure;
use crate::product_state::{ProductState, UnitVector};

#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionState {
    base: ProductState,
    measure: CircleMeasure,
}

impl ExtensionState {
    pub fn new(base: ProductState, measure: CircleMeasure) -> Self {
        ExtensionState { base, measure }
    }

    pub fn base(&self) -> &ProductState {
        &self.base
    }

    pub fn measure(&self) -> &CircleMeasure {
        &self.measure
    }

    pub fn period(&self) -> usize {
        self.base.period()
    }

    pub fn is_pure(&self) -> bool {
        self.measure.is_pure()
    }

    pub fn eval(&self, x: &AlgebraElement) -> Result<Complex64> {
        if x.n() != self.base.n() {
            return Err(Error::AmbientMismatch { left: self.base.n(), right: x.n() });
        }
        Ok(x.terms().map(|(m, c)| c * self.eval_monomial(m)).sum())
    }

    pub fn eval_monomial(&self, m: &Monomial) -> Complex64 {
        if m.degree() >= 0 {
            self.eval_nonnegative(&m.s, &m.t)
        } else {
            self.eval_nonnegative(&m.t, &m.s).conj()
        }
    }

    fn eval_nonnegative(&self, s: &[Letter], t: &[Letter]) -> Complex64 {
        let k = s.len() - t.len();
        if k == 0 {
            // the core: ρ̃ restricts to ω_f whatever the (probability) measure
            return self.base.eval_core_words(s, t);
        }
        let p = self.period();
        if !k.is_multiple_of(p) {
            return Complex64::default();
        }
        let moment = self.measure.moment((k / p) as i64);
        if moment == Complex64::default() {
            return moment;
        }
        self.linking_pairing(s, t, k) * moment
    }

    /// `<π_0(v_s (v_1^k v_t)*) ξ_k, ξ_0>`.
    fn linking_pairing(&self, s: &[Letter], t: &[Letter], k: usize) -> Complex64 {
        let f = &self.base;
        let e1 = Letter::unchecked(1);
        let xi_k = |i: usize| -> Option<&UnitVector> { (i > k).then(|| f.f(i - k)) };
        let m = s.len();
        let mut value = Complex64::new(1.0, 0.0);

        // strip: slot i of ξ_k against letter i of (1^k, t)
        for i in 1..=m {
            let letter = if i <= k { e1 } else { t[i - k - 1] };
            let slot = match xi_k(i) {
                None => {
                    if letter != e1 {
                        return Complex64::default();
                    }
                    continue;
                }
                Some(v) => v.coord(letter),
            };
            value *= slot;
        }
        // prepended e_s against ξ_0 = f
        for (j, a) in s.iter().enumerate() {
            value *= f.f(j + 1).coord(*a).conj();
        }
        // untouched tail of ξ_k against ξ_0
        let horizon = f.preperiod_len() + k;
        for j in (m + 1)..=horizon {
            value *= f.f(j - k).inner(f.f(j));
        }
        value
    }
}
