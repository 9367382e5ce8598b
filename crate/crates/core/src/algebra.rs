//! Exact word arithmetic in the Cuntz algebra O_n.
//!
//! Every element of the dense *-subalgebra is a finite combination of reduced
//! monomials `v_s v_t*`. Products are reduced with `v_j* v_i = δ_ij 1`, which
//! keeps any pair `(s, t)` in normal form: `v_t* v_u` collapses to a single
//! word (or zero) whenever one of `t`, `u` is a prefix of the other.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Coefficients with modulus at or below this are dropped from term maps.
pub const DROP_TOL: f64 = 1e-14;
/// Tolerance for comparing elements coefficientwise.
pub const EQ_TOL: f64 = 1e-12;
/// Upper bound on the number of terms a quasi-free expansion may create.
pub const EXPANSION_LIMIT: u128 = 1_000_000;

/// Generator index `a` of `v_a`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u16);

impl Letter {
    pub fn new(value: usize, n: usize) -> Result<Self> {
        if value == 0 || value > n || value > u16::MAX as usize {
            return Err(Error::LetterOutOfRange { letter: value, n });
        }
        Ok(Letter(value as u16))
    }

    /// Construct without an ambient check. Panics on zero.
    pub fn unchecked(value: usize) -> Self {
        assert!(value >= 1 && value <= u16::MAX as usize, "letter must be >= 1");
        Letter(value as u16)
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    /// Zero-based coordinate of the basis vector `e_a` in `C^n`.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Ordered tuple of letters; the empty index stands for the unit.
pub type MultiIndex = Vec<Letter>;

/// Build a multi-index from 1-based integers without range checks.
pub fn word(letters: &[usize]) -> MultiIndex {
    letters.iter().map(|&a| Letter::unchecked(a)).collect()
}

/// The monomial `v_s v_t*`, where `v_t = v_{t_1} ... v_{t_m}` so that
/// `v_t* = v_{t_m}* ... v_{t_1}*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub s: MultiIndex,
    pub t: MultiIndex,
}

impl Monomial {
    pub fn new(s: MultiIndex, t: MultiIndex) -> Self {
        Monomial { s, t }
    }

    pub fn unit() -> Self {
        Monomial { s: Vec::new(), t: Vec::new() }
    }

    pub fn from_indices(s: &[usize], t: &[usize]) -> Self {
        Monomial { s: word(s), t: word(t) }
    }

    pub fn is_unit(&self) -> bool {
        self.s.is_empty() && self.t.is_empty()
    }

    /// Gauge degree `|s| - |t|`.
    pub fn degree(&self) -> i64 {
        self.s.len() as i64 - self.t.len() as i64
    }

    pub fn adjoint(&self) -> Monomial {
        Monomial { s: self.t.clone(), t: self.s.clone() }
    }

    /// Largest letter occurring in the monomial (0 for the unit).
    pub fn max_letter(&self) -> usize {
        self.s.iter().chain(self.t.iter()).map(|l| l.get()).max().unwrap_or(0)
    }

    /// Product of two monomials; `None` is the zero element.
    pub fn mul(&self, rhs: &Monomial) -> Option<Monomial> {
        if self.is_unit() {
            return Some(rhs.clone());
        }
        if rhs.is_unit() {
            return Some(self.clone());
        }
        let (t, u) = (&self.t, &rhs.s);
        if t.len() <= u.len() {
            // v_t* v_u = v_{u'} when u = t u'
            if u[..t.len()] != t[..] {
                return None;
            }
            let mut s = self.s.clone();
            s.extend_from_slice(&u[t.len()..]);
            Some(Monomial { s, t: rhs.t.clone() })
        } else {
            // v_t* v_u = v_{t'}* when t = u t'
            if t[..u.len()] != u[..] {
                return None;
            }
            let mut new_t = rhs.t.clone();
            new_t.extend_from_slice(&t[u.len()..]);
            Some(Monomial { s: self.s.clone(), t: new_t })
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.s
            .len()
            .cmp(&other.s.len())
            .then_with(|| self.s.cmp(&other.s))
            .then_with(|| self.t.len().cmp(&other.t.len()))
            .then_with(|| self.t.cmp(&other.t))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    /// Product-order rendering: `v<s_1> ... v<s_k> v<t_m>* ... v<t_1>*`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        for a in &self.s {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "v{a}")?;
            first = false;
        }
        for a in self.t.iter().rev() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "v{a}*")?;
            first = false;
        }
        Ok(())
    }
}

/// Finite complex combination of reduced monomials in O_n.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    n: usize,
    terms: BTreeMap<Monomial, Complex64>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement { n, terms: BTreeMap::new() }
    }

    pub fn unit(n: usize) -> Self {
        Self::from_monomial(n, Monomial::unit(), Complex64::new(1.0, 0.0))
            .expect("unit monomial has no letters")
    }

    pub fn from_monomial(n: usize, m: Monomial, coeff: Complex64) -> Result<Self> {
        Self::from_terms(n, [(m, coeff)])
    }

    /// Collect terms, summing duplicates and dropping negligible coefficients.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Complex64)>,
    {
        if n < 2 {
            return Err(Error::BadAmbient(n));
        }
        let mut out = AlgebraElement::zero(n);
        for (m, c) in terms {
            let top = m.max_letter();
            if top > n {
                return Err(Error::LetterOutOfRange { letter: top, n });
            }
            out.accumulate(m, c);
        }
        out.prune();
        Ok(out)
    }

    /// The generator `v_a`.
    pub fn generator(n: usize, a: usize) -> Result<Self> {
        let l = Letter::new(a, n)?;
        Self::from_monomial(n, Monomial::new(vec![l], vec![]), Complex64::new(1.0, 0.0))
    }

    /// The adjoint generator `v_a*`.
    pub fn generator_adjoint(n: usize, a: usize) -> Result<Self> {
        let l = Letter::new(a, n)?;
        Self::from_monomial(n, Monomial::new(vec![], vec![l]), Complex64::new(1.0, 0.0))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Complex64 {
        self.terms.get(m).copied().unwrap_or_default()
    }

    /// Largest |degree| over the terms.
    pub fn max_abs_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.degree().unsigned_abs()).max().unwrap_or(0)
    }

    pub fn is_degree_zero(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    fn accumulate(&mut self, m: Monomial, c: Complex64) {
        *self.terms.entry(m).or_default() += c;
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() > DROP_TOL);
    }

    fn check_ambient(&self, other: &AlgebraElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), *c);
        }
        out.prune();
        Ok(out)
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> AlgebraElement {
        let mut out = AlgebraElement {
            n: self.n,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        };
        out.prune();
        out
    }

    /// Bilinear extension of the monomial product.
    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_ambient(other)?;
        let mut out = AlgebraElement::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some(m) = a.mul(b) {
                    out.accumulate(m, x * y);
                }
            }
        }
        out.prune();
        Ok(out)
    }

    pub fn adjoint(&self) -> AlgebraElement {
        AlgebraElement {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.adjoint(), c.conj())).collect(),
        }
    }

    /// The canonical conditional expectation onto the core: keeps degree-0 terms.
    pub fn conditional_expectation(&self) -> AlgebraElement {
        AlgebraElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == 0)
                .map(|(m, c)| (m.clone(), *c))
                .collect(),
        }
    }

    /// Gauge automorphism `γ_λ`: each monomial picks up `λ^degree`.
    pub fn gauge(&self, lambda: Complex64) -> Result<AlgebraElement> {
        check_unimodular(lambda, 1e-12)?;
        let mut out = AlgebraElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * unimodular_pow(lambda, m.degree())))
                .collect(),
        };
        out.prune();
        Ok(out)
    }

    /// Quasi-free automorphism `γ_W(v_a) = Σ_b W_{ba} v_b`.
    pub fn quasi_free(&self, w: &DMatrix<Complex64>) -> Result<AlgebraElement> {
        if w.nrows() != self.n || w.ncols() != self.n {
            return Err(Error::AmbientMismatch { left: self.n, right: w.nrows() });
        }
        let deviation = unitary_deviation(w);
        if deviation > 1e-9 {
            return Err(Error::NotUnitary { deviation });
        }
        let n = self.n as u128;
        let mut total: u128 = 0;
        for m in self.terms.keys() {
            let len = (m.s.len() + m.t.len()) as u32;
            let count = n.checked_pow(len).unwrap_or(u128::MAX);
            total = total.saturating_add(count);
            if total > EXPANSION_LIMIT {
                return Err(Error::ExpansionTooLarge { terms: total, limit: EXPANSION_LIMIT });
            }
        }

        let mut out = AlgebraElement::zero(self.n);
        for (m, c) in &self.terms {
            let images_s = expand_word(w, &m.s, false);
            let images_t = expand_word(w, &m.t, true);
            for (s, cs) in &images_s {
                for (t, ct) in &images_t {
                    let coeff = c * cs * ct;
                    if coeff.norm() > DROP_TOL {
                        out.accumulate(Monomial::new(s.clone(), t.clone()), coeff);
                    }
                }
            }
        }
        out.prune();
        Ok(out)
    }

    /// Coefficientwise comparison within `tol`.
    pub fn approx_eq(&self, other: &AlgebraElement, tol: f64) -> bool {
        if self.n != other.n {
            return false;
        }
        self.terms
            .keys()
            .chain(other.terms.keys())
            .all(|m| (self.coeff(m) - other.coeff(m)).norm() <= tol)
    }
}

/// All images of `v_word` (or of the word's adjoint factor) under `γ_W`.
fn expand_word(
    w: &DMatrix<Complex64>,
    letters: &[Letter],
    conjugate: bool,
) -> Vec<(MultiIndex, Complex64)> {
    let n = w.nrows();
    let mut acc: Vec<(MultiIndex, Complex64)> = vec![(Vec::new(), Complex64::new(1.0, 0.0))];
    for a in letters {
        let mut next = Vec::with_capacity(acc.len() * n);
        for (prefix, c) in &acc {
            for b in 0..n {
                let mut entry = w[(b, a.index())];
                if conjugate {
                    entry = entry.conj();
                }
                if entry.norm() <= DROP_TOL {
                    continue;
                }
                let mut p = prefix.clone();
                p.push(Letter::unchecked(b + 1));
                next.push((p, c * entry));
            }
        }
        acc = next;
    }
    acc
}

pub(crate) fn check_unimodular(lambda: Complex64, tol: f64) -> Result<()> {
    if (lambda.norm() - 1.0).abs() > tol {
        return Err(Error::NotUnimodular(format!("({}, {})", lambda.re, lambda.im)));
    }
    Ok(())
}

/// `λ^k` for unimodular `λ`, with negative powers taken through the conjugate.
pub fn unimodular_pow(lambda: Complex64, k: i64) -> Complex64 {
    if k >= 0 {
        lambda.powu(k as u32)
    } else {
        lambda.conj().powu((-k) as u32)
    }
}

/// `max |(W*W - I)_{ij}|`.
pub fn unitary_deviation(w: &DMatrix<Complex64>) -> f64 {
    let prod = w.adjoint() * w;
    let mut dev: f64 = 0.0;
    for i in 0..prod.nrows() {
        for j in 0..prod.ncols() {
            let target = if i == j { 1.0 } else { 0.0 };
            dev = dev.max((prod[(i, j)] - Complex64::new(target, 0.0)).norm());
        }
    }
    dev
}

impl fmt::Display for AlgebraElement {
    /// Canonical rendering: terms in key order as `(re,im) <word>`, joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:?},{:?}) {}", c.re, c.im, m)?;
        }
        Ok(())
    }
}
