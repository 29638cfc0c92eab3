//! Square matrices over the Laurent rings, the generators `M_j` and `T_i`,
//! word evaluation and the `uI + N` normal form.
//!
//! A `k × k` matrix lives over the ring with `k` x-variables (plus `t`).

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::ring::{ExpVec, LaurentPoly, RingError, UnitMonomial, MAX_K};
use crate::word::{Word, WordAst};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("index {index} out of range for k={k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("determinant {0} is not a unit monomial")]
    NotInvertible(String),
    #[error("matrix is not of the form uI + N: {0}")]
    NotInForm(String),
    #[error("letter for generator {generator} but only {available} generators")]
    LetterOutOfRange { generator: usize, available: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// `k × k` matrix of Laurent polynomials, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MatR {
    k: usize,
    entries: Vec<LaurentPoly>,
}

fn check_dim(k: usize) -> Result<(), MatError> {
    if (1..=MAX_K).contains(&k) {
        Ok(())
    } else {
        Err(RingError::UnsupportedK(k).into())
    }
}

impl MatR {
    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self, MatError> {
        let k = rows.len();
        check_dim(k)?;
        let mut entries = Vec::with_capacity(k * k);
        for row in rows {
            if row.len() != k {
                return Err(MatError::DimensionMismatch { left: k, right: row.len() });
            }
            for e in row {
                if e.k() != k {
                    return Err(RingError::ContextMismatch { left: k, right: e.k() }.into());
                }
                entries.push(e);
            }
        }
        Ok(MatR { k, entries })
    }

    /// Parses a row-major array of polynomial strings.
    pub fn parse(rows: &[&[&str]]) -> Result<Self, MatError> {
        let k = rows.len();
        check_dim(k)?;
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| LaurentPoly::parse(s, k)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(rows)
    }

    pub fn identity(k: usize) -> Self {
        Self::scalar(&LaurentPoly::one(k))
    }

    /// `c·I` in the ring of `c`.
    pub fn scalar(c: &LaurentPoly) -> Self {
        let k = c.k();
        let entries = (0..k * k)
            .map(|i| if i / k == i % k { c.clone() } else { LaurentPoly::zero(k) })
            .collect();
        MatR { k, entries }
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.k + j]
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[LaurentPoly]> {
        self.entries.chunks(self.k)
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        MatR { k: self.k, entries: self.entries.iter().map(f).collect() }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.k)
    }

    pub fn is_t_free(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_t_free)
    }

    fn check_same(&self, other: &MatR) -> Result<(), MatError> {
        if self.k != other.k {
            return Err(MatError::DimensionMismatch { left: self.k, right: other.k });
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &MatR) -> Result<MatR, MatError> {
        self.check_same(other)?;
        let k = self.k;
        let mut entries = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let mut acc = LaurentPoly::zero(k);
                for l in 0..k {
                    let (a, b) = (self.get(i, l), other.get(l, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(MatR { k, entries })
    }

    pub fn checked_sub(&self, other: &MatR) -> Result<MatR, MatError> {
        self.check_same(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(MatR { k: self.k, entries })
    }

    /// `self - I`.
    pub fn minus_identity(&self) -> MatR {
        self.checked_sub(&Self::identity(self.k)).expect("same dimension")
    }

    pub fn pow(&self, n: u32) -> MatR {
        let mut acc = Self::identity(self.k);
        for _ in 0..n {
            acc = acc.checked_mul(self).expect("same dimension");
        }
        acc
    }

    pub fn trace(&self) -> LaurentPoly {
        (0..self.k).fold(LaurentPoly::zero(self.k), |acc, i| &acc + self.get(i, i))
    }

    fn minor(&self, row: usize, col: usize) -> MatR {
        let k = self.k - 1;
        let mut entries = Vec::with_capacity(k * k);
        for i in (0..self.k).filter(|&i| i != row) {
            for j in (0..self.k).filter(|&j| j != col) {
                entries.push(self.get(i, j).clone());
            }
        }
        MatR { k, entries }
    }

    /// Laplace expansion along the first row.
    pub fn det(&self) -> LaurentPoly {
        let ring = self.entries[0].k();
        self.det_in(ring)
    }

    fn det_in(&self, ring: usize) -> LaurentPoly {
        match self.k {
            1 => self.entries[0].clone(),
            2 => &(self.get(0, 0) * self.get(1, 1)) - &(self.get(0, 1) * self.get(1, 0)),
            _ => {
                let mut acc = LaurentPoly::zero(ring);
                for j in 0..self.k {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let term = a * &self.minor(0, j).det_in(ring);
                    acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Adjugate times the inverse of the (unit monomial) determinant.
    pub fn inverse(&self) -> Result<MatR, MatError> {
        self.inverse_folded(None)
    }

    /// Inverse in the ring with exponents folded modulo `q`, where the
    /// determinant only becomes a monomial after folding.
    pub fn inverse_folded(&self, fold: Option<u64>) -> Result<MatR, MatError> {
        let det = match fold {
            Some(q) => self.det().fold_exponents(q),
            None => self.det(),
        };
        let unit = det.as_unit_monomial().ok_or_else(|| MatError::NotInvertible(det.to_string()))?;
        let scale = unit.inverse().to_poly();
        let k = self.k;
        if k == 1 {
            let scale = fold.map_or(scale.clone(), |q| scale.fold_exponents(q));
            return Ok(MatR { k, entries: vec![scale] });
        }
        let mut entries = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                // adj[i][j] = (-1)^(i+j) det(minor(j, i))
                let c = &self.minor(j, i).det_in(k) * &scale;
                let c = match fold {
                    Some(q) => c.fold_exponents(q),
                    None => c,
                };
                entries.push(if (i + j) % 2 == 0 { c } else { -c });
            }
        }
        Ok(MatR { k, entries })
    }

    /// Entrywise `t ↦ 1`.
    pub fn set_t_one(&self) -> MatR {
        self.map(LaurentPoly::set_t_one)
    }

    /// Entrywise exponent folding modulo `q` (x-variables only).
    pub fn fold(&self, q: u64) -> MatR {
        self.map(|p| p.fold_exponents(q))
    }

    pub fn to_rows(&self) -> Vec<Vec<String>> {
        self.rows().map(|r| r.iter().map(ToString::to_string).collect()).collect()
    }
}

impl fmt::Display for MatR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.to_rows().into_iter().map(|r| format!("[{}]", r.join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// `M_j = x_j·I + (row j equal to v)`, `v = (1 - x_1, .., 1 - x_k)`; `j` is 1-based.
pub fn generator_m(j: usize, k: usize) -> Result<MatR, MatError> {
    check_dim(k)?;
    if !(1..=k).contains(&j) || k < 2 {
        return Err(MatError::IndexOutOfRange { index: j, k });
    }
    let mut m = MatR::scalar(&LaurentPoly::var(k, j - 1));
    for c in 0..k {
        let e = &mut m.entries[(j - 1) * k + c];
        *e = &*e + &LaurentPoly::one_minus_var(k, c);
    }
    Ok(m)
}

/// `T_i`: `t` on the first `i - 1` diagonal entries, `1` on the rest, and
/// `1 - t` in row `i` before the diagonal; `i` is 1-based.
pub fn generator_t(i: usize, k: usize) -> Result<MatR, MatError> {
    check_dim(k)?;
    if !(2..=k).contains(&i) {
        return Err(MatError::IndexOutOfRange { index: i, k });
    }
    let t = LaurentPoly::t(k);
    let one_minus_t = &LaurentPoly::one(k) - &t;
    let mut m = MatR::identity(k);
    for d in 0..i - 1 {
        m.entries[d * k + d] = t.clone();
        m.entries[(i - 1) * k + d] = one_minus_t.clone();
    }
    Ok(m)
}

/// Which generating set words are evaluated in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Presentation {
    /// `M_1, .., M_k`: the group over `R`.
    Base,
    /// `M_1, M_2T_2, .., M_kT_k`: the group over `R[t, t^-1]`.
    Extended,
}

/// Generator matrices with their inverses, ready for evaluation.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub presentation: Presentation,
    pub k: usize,
    mats: Vec<MatR>,
    inverses: Vec<MatR>,
}

impl GeneratorSet {
    pub fn new(presentation: Presentation, k: usize) -> Result<Self, MatError> {
        let mut mats = Vec::with_capacity(k);
        for j in 1..=k {
            let m = generator_m(j, k)?;
            mats.push(match (presentation, j) {
                (Presentation::Extended, j) if j >= 2 => m.checked_mul(&generator_t(j, k)?)?,
                _ => m,
            });
        }
        let inverses = mats.iter().map(MatR::inverse).collect::<Result<_, _>>()?;
        Ok(GeneratorSet { presentation, k, mats, inverses })
    }

    pub fn generator(&self, i: usize) -> &MatR {
        &self.mats[i]
    }

    fn letter(&self, generator: usize, inverse: bool) -> Result<&MatR, MatError> {
        let set = if inverse { &self.inverses } else { &self.mats };
        set.get(generator).ok_or(MatError::LetterOutOfRange { generator, available: self.k })
    }
}

/// Left-to-right product of the word's letters.
pub fn eval_word(w: &Word, gens: &GeneratorSet) -> Result<MatR, MatError> {
    eval_word_reduced(w, gens, None)
}

/// As [`eval_word`], folding exponents modulo `q` after every product when
/// `fold` is set. Folding is the quotient by `(x^q - 1, y^q - 1)`, an ideal
/// inside `J(q)`, so membership questions modulo `J(q)` are unaffected.
pub fn eval_word_reduced(w: &Word, gens: &GeneratorSet, fold: Option<u64>) -> Result<MatR, MatError> {
    let mut acc = MatR::identity(gens.k);
    for l in w.letters() {
        acc = acc.checked_mul(gens.letter(l.generator, l.inverse)?)?;
        if let Some(q) = fold {
            acc = acc.fold(q);
        }
    }
    Ok(acc)
}

/// Evaluates a word tree structurally: commutators as `U⁻¹V⁻¹UV` with
/// adjugate inverses. Much cheaper than the flattened word for deep
/// derived-series elements.
pub fn eval_ast(ast: &WordAst, gens: &GeneratorSet, fold: Option<u64>) -> Result<MatR, MatError> {
    let reduce = |m: MatR| match fold {
        Some(q) => m.fold(q),
        None => m,
    };
    Ok(match ast {
        WordAst::Letter(l) => reduce(gens.letter(l.generator, l.inverse)?.clone()),
        WordAst::Concat(parts) => {
            let mut acc = MatR::identity(gens.k);
            for p in parts {
                acc = reduce(acc.checked_mul(&eval_ast(p, gens, fold)?)?);
            }
            acc
        }
        WordAst::Inverse(w) => eval_ast(w, gens, fold)?.inverse_folded(fold)?,
        WordAst::Power(w, n) => {
            let base = eval_ast(w, gens, fold)?;
            let base = if *n < 0 { base.inverse_folded(fold)? } else { base };
            let mut acc = MatR::identity(gens.k);
            for _ in 0..n.unsigned_abs() {
                acc = reduce(acc.checked_mul(&base)?);
            }
            acc
        }
        WordAst::Commutator(u, v) => {
            let a = eval_ast(u, gens, fold)?;
            let b = eval_ast(v, gens, fold)?;
            let ai = a.inverse_folded(fold)?;
            let bi = b.inverse_folded(fold)?;
            let left = reduce(ai.checked_mul(&bi)?);
            let right = reduce(a.checked_mul(&b)?);
            reduce(left.checked_mul(&right)?)
        }
    })
}

/// `x_1^(e_1) .. x_k^(e_k)` for the word's exponent sums.
pub fn abelianization_unit(w: &Word, k: usize) -> UnitMonomial {
    let sums: Vec<i32> = w.exponent_sums(k).into_iter().map(|e| e as i32).collect();
    UnitMonomial::positive(ExpVec::from_x(&sums))
}

/// `uI + N` with every row of `N` equal to `λ_i·v`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UNForm {
    pub u: UnitMonomial,
    pub lambdas: Vec<LaurentPoly>,
}

impl UNForm {
    pub fn reconstruct(&self) -> MatR {
        let k = self.lambdas.len();
        let mut m = MatR::scalar(&self.u.to_poly());
        for i in 0..k {
            for j in 0..k {
                let e = &mut m.entries[i * k + j];
                *e = &*e + &(&self.lambdas[i] * &LaurentPoly::one_minus_var(k, j));
            }
        }
        m
    }

    /// `Σ λ_i(1 - x_i) = 1 - u`.
    pub fn row_condition_holds(&self) -> bool {
        let k = self.lambdas.len();
        let lhs = self
            .lambdas
            .iter()
            .enumerate()
            .fold(LaurentPoly::zero(k), |acc, (i, l)| &acc + &(l * &LaurentPoly::one_minus_var(k, i)));
        lhs == &LaurentPoly::one(k) - &self.u.to_poly()
    }
}

/// Normal form for `k = 2`, with `u = det(m)`.
///
/// Decided by the cross identities `(m11 - u)(1 - y) = m12(1 - x)`,
/// `m21(1 - y) = (m22 - u)(1 - x)` and `tr(m) = 1 + u`; the `λ_i` then come
/// from exact division by `1 - x`.
pub fn un_form_extract(m: &MatR) -> Result<UNForm, MatError> {
    if m.dim() != 2 {
        return Err(RingError::RequiresTwoGenerators(m.dim()).into());
    }
    if !m.is_t_free() {
        return Err(MatError::NotInForm("entries contain t".into()));
    }
    let det = m.det();
    let u = det
        .as_unit_monomial()
        .filter(UnitMonomial::is_positive)
        .ok_or_else(|| MatError::NotInForm(format!("determinant {det} is not a positive unit")))?;
    let up = u.to_poly();
    let (one_x, one_y) = (LaurentPoly::one_minus_var(2, 0), LaurentPoly::one_minus_var(2, 1));
    let n11 = m.get(0, 0) - &up;
    let n22 = m.get(1, 1) - &up;
    if &n11 * &one_y != m.get(0, 1) * &one_x {
        return Err(MatError::NotInForm("row 1 is not proportional to v".into()));
    }
    if m.get(1, 0) * &one_y != &n22 * &one_x {
        return Err(MatError::NotInForm("row 2 is not proportional to v".into()));
    }
    if m.trace() != &LaurentPoly::one(2) + &up {
        return Err(MatError::NotInForm("trace differs from 1 + u".into()));
    }
    un_form_with_unit(m, u)
}

/// Normal form for any `k` given `u` (for word evaluations, the
/// abelianization monomial).
pub fn un_form_with_unit(m: &MatR, u: UnitMonomial) -> Result<UNForm, MatError> {
    if !m.is_t_free() {
        return Err(MatError::NotInForm("entries contain t".into()));
    }
    let k = m.dim();
    let up = u.to_poly();
    let mut lambdas = Vec::with_capacity(k);
    for i in 0..k {
        let n_i0 = if i == 0 { m.get(i, 0) - &up } else { m.get(i, 0).clone() };
        let lambda = n_i0
            .div_one_minus_var(0)
            .ok_or_else(|| MatError::NotInForm(format!("row {} not divisible by 1 - x", i + 1)))?;
        lambdas.push(lambda);
    }
    let form = UNForm { u, lambdas };
    if form.reconstruct() != *m {
        return Err(MatError::NotInForm("reconstruction differs".into()));
    }
    if !form.row_condition_holds() {
        return Err(MatError::NotInForm("row condition fails".into()));
    }
    Ok(form)
}

/// `T_i T_j = T_j T_i` for all pairs, exactly.
pub fn check_t_commute(k: usize) -> Result<bool, MatError> {
    let ts = (2..=k).map(|i| generator_t(i, k)).collect::<Result<Vec<_>, _>>()?;
    for (a, ta) in ts.iter().enumerate() {
        for tb in &ts[a + 1..] {
            if ta.checked_mul(tb)? != tb.checked_mul(ta)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Σ_{i<j} x^i` as used in the closed form of `M_1^j`.
pub fn geometric(k: usize, var: usize, j: u32) -> LaurentPoly {
    LaurentPoly::from_terms(k, (0..j as i32).map(|i| (ExpVec::zero(k).with(var, i), BigInt::one())))
}

/// Whether every entry is zero.
pub fn is_zero_matrix(m: &MatR) -> bool {
    m.entries().iter().all(|e| e.is_zero())
}
