//! Exact arithmetic in the Laurent polynomial rings `Z[x_1^±1, .., x_k^±1]`
//! and `Z[x_1^±1, .., x_k^±1, t^±1]`.
//!
//! Every polynomial carries its ring context `k` (the number of `x`
//! variables). The `t` slot is always present; polynomials of the base ring
//! simply have a zero `t` exponent everywhere. Mixing contexts is an error,
//! never a silent coercion.

mod cyclotomic;
mod parse;

pub use cyclotomic::{cyc_element, eval_root_of_unity, phi_q, CycInt, PrimePower};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Largest supported ring: `x_1..x_4` plus `t`.
pub const MAX_VARS: usize = 5;
/// Largest number of `x` variables.
pub const MAX_K: usize = MAX_VARS - 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("ring context mismatch: k={left} vs k={right}")]
    ContextMismatch { left: usize, right: usize },
    #[error("unsupported number of generators k={0} (expected 1..=4)")]
    UnsupportedK(usize),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("unit {0} is not positive")]
    NotPositiveUnit(String),
    #[error("polynomial contains t: {0}")]
    ContainsT(String),
    #[error("operation requires k=2, got k={0}")]
    RequiresTwoGenerators(usize),
    #[error("cyclotomic element length {got} does not match phi(q)={expected}")]
    CycLength { expected: usize, got: usize },
    #[error("cyclotomic moduli differ: q={left} vs q={right}")]
    CycModulusMismatch { left: u64, right: u64 },
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, RingError>;

/// Exponent vector `(x_1, .., x_k, t)`; slots past `k+1` are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ExpVec {
    exps: [i32; MAX_VARS],
    len: u8,
}

impl ExpVec {
    /// The zero exponent vector for a ring with `k` x-variables.
    pub fn zero(k: usize) -> Self {
        debug_assert!((1..=MAX_K).contains(&k));
        ExpVec { exps: [0; MAX_VARS], len: (k + 1) as u8 }
    }

    /// Builds an exponent vector from the x-exponents, with `t` exponent 0.
    pub fn from_x(xs: &[i32]) -> Self {
        let mut e = Self::zero(xs.len());
        e.exps[..xs.len()].copy_from_slice(xs);
        e
    }

    /// Builds an exponent vector from x-exponents and a `t` exponent.
    pub fn from_x_t(xs: &[i32], t: i32) -> Self {
        let mut e = Self::from_x(xs);
        e.exps[xs.len()] = t;
        e
    }

    /// Number of x-variables of the ring this vector belongs to.
    pub fn k(&self) -> usize {
        self.len as usize - 1
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.exps[..self.len as usize]
    }

    pub fn x(&self, i: usize) -> i32 {
        assert!(i < self.k());
        self.exps[i]
    }

    pub fn t(&self) -> i32 {
        self.exps[self.k()]
    }

    /// Returns the vector with slot `i` replaced (slot `k` is `t`).
    pub fn with(mut self, i: usize, value: i32) -> Self {
        assert!(i < self.len as usize);
        self.exps[i] = value;
        self
    }

    pub fn with_t(self, value: i32) -> Self {
        let k = self.k();
        self.with(k, value)
    }

    /// Sum of absolute exponents.
    pub fn abs_degree(&self) -> i64 {
        self.as_slice().iter().map(|&e| i64::from(e).abs()).sum()
    }

    /// Monomial product law.
    pub fn add(&self, other: &ExpVec) -> ExpVec {
        debug_assert_eq!(self.len, other.len);
        let mut out = *self;
        for i in 0..self.len as usize {
            out.exps[i] += other.exps[i];
        }
        out
    }

    pub fn neg(&self) -> ExpVec {
        let mut out = *self;
        for e in out.exps.iter_mut() {
            *e = -*e;
        }
        out
    }

    pub fn scale(&self, n: i32) -> ExpVec {
        let mut out = *self;
        for e in out.exps.iter_mut() {
            *e *= n;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.as_slice().iter().all(|&e| e == 0)
    }

    pub fn max_abs_x(&self) -> i32 {
        self.as_slice()[..self.k()].iter().map(|e| e.abs()).max().unwrap_or(0)
    }
}

/// Graded order: total absolute degree first, then larger exponent tuples
/// first, so `1 - x - y + x*y` prints in that order.
impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.abs_degree().cmp(&other.abs_degree()))
            .then_with(|| other.as_slice().cmp(self.as_slice()))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Variable names for a ring with `k` x-variables; `t` always comes last.
pub fn var_names(k: usize) -> &'static [&'static str] {
    match k {
        1 => &["x", "t"],
        2 => &["x", "y", "t"],
        3 => &["x", "y", "z", "t"],
        _ => &["x", "y", "z", "w", "t"],
    }
}

fn check_k(k: usize) -> Result<()> {
    if (1..=MAX_K).contains(&k) {
        Ok(())
    } else {
        Err(RingError::UnsupportedK(k))
    }
}

/// Sparse Laurent polynomial with arbitrary-precision integer coefficients.
///
/// Canonical form: no stored coefficient is zero, so structural equality is
/// ring equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    k: u8,
    terms: BTreeMap<ExpVec, BigInt>,
}

impl LaurentPoly {
    pub fn zero(k: usize) -> Self {
        check_k(k).expect("ring context");
        LaurentPoly { k: k as u8, terms: BTreeMap::new() }
    }

    pub fn one(k: usize) -> Self {
        Self::constant(k, 1)
    }

    pub fn constant(k: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(k, c, ExpVec::zero(k))
    }

    pub fn monomial(k: usize, c: impl Into<BigInt>, e: ExpVec) -> Self {
        assert_eq!(e.k(), k, "exponent vector from a different ring");
        let mut p = Self::zero(k);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    /// The variable `x_{i+1}` for `i < k`, or `t` for `i == k`.
    pub fn var(k: usize, i: usize) -> Self {
        assert!(i <= k);
        Self::monomial(k, 1, ExpVec::zero(k).with(i, 1))
    }

    pub fn t(k: usize) -> Self {
        Self::var(k, k)
    }

    /// `1 - x_{i+1}` (or `1 - t` for `i == k`).
    pub fn one_minus_var(k: usize, i: usize) -> Self {
        &Self::one(k) - &Self::var(k, i)
    }

    /// Builds a polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms<I, C>(k: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExpVec, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(k);
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn parse(text: &str, k: usize) -> Result<Self> {
        check_k(k)?;
        parse::parse_poly(text, k)
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().map(|(e, c)| e.is_zero() && c.is_one()).unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExpVec, &BigInt)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExpVec) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, e: ExpVec, c: BigInt) {
        assert_eq!(e.k(), self.k(), "exponent vector from a different ring");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.k == other.k {
            Ok(())
        } else {
            Err(RingError::ContextMismatch { left: self.k(), right: other.k() })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let (mut acc, small) = if self.terms.len() >= other.terms.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (e, c) in &small.terms {
            acc.add_term(*e, c.clone());
        }
        Ok(acc)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut acc = self.clone();
        for (e, c) in &other.terms {
            acc.add_term(*e, -c);
        }
        Ok(acc)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut acc: BTreeMap<ExpVec, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                *acc.entry(ea.add(eb)).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { k: self.k, terms: acc })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.k());
        }
        LaurentPoly {
            k: self.k,
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplies by the monomial with exponent `e`.
    pub fn shift(&self, e: &ExpVec) -> Self {
        assert_eq!(e.k(), self.k());
        LaurentPoly {
            k: self.k,
            terms: self.terms.iter().map(|(m, v)| (m.add(e), v.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.k());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Augmentation: the image under every variable ↦ 1.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn is_t_free(&self) -> bool {
        self.terms.keys().all(|e| e.t() == 0)
    }

    /// Largest `|t|` exponent occurring, 0 for t-free polynomials.
    pub fn t_degree(&self) -> i32 {
        self.terms.keys().map(|e| e.t().abs()).max().unwrap_or(0)
    }

    /// Substitutes `t = 1`.
    pub fn set_t_one(&self) -> Self {
        Self::from_terms(self.k(), self.terms.iter().map(|(e, c)| (e.with_t(0), c.clone())))
    }

    /// Splits `p = Σ_j c_j t^j` into t-free coefficients `c_j`.
    pub fn t_coefficients(&self) -> BTreeMap<i32, LaurentPoly> {
        let mut out: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e.t())
                .or_insert_with(|| Self::zero(self.k()))
                .terms
                .insert(e.with_t(0), c.clone());
        }
        out
    }

    /// Reduces every x-exponent into `[0, q)`; `t` is left alone.
    ///
    /// This is the image in the group ring of `(Z/q)^k` and agrees with the
    /// input modulo `(x_1^q - 1, .., x_k^q - 1)`.
    pub fn fold_exponents(&self, q: u64) -> Self {
        let q = q as i32;
        let k = self.k();
        Self::from_terms(
            k,
            self.terms.iter().map(|(e, c)| {
                let mut f = *e;
                for i in 0..k {
                    f = f.with(i, e.x(i).rem_euclid(q));
                }
                (f, c.clone())
            }),
        )
    }

    /// The single `±monomial` this polynomial equals, if any.
    pub fn as_unit_monomial(&self) -> Option<UnitMonomial> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        if c.is_one() {
            Some(UnitMonomial { sign: 1, exps: *e })
        } else if (-c).is_one() {
            Some(UnitMonomial { sign: -1, exps: *e })
        } else {
            None
        }
    }

    /// Exact division by `1 - v` where `v` is variable slot `var`.
    ///
    /// Returns `None` when `1 - v` does not divide `self`.
    pub fn div_one_minus_var(&self, var: usize) -> Option<Self> {
        let k = self.k();
        assert!(var <= k);
        // group terms by the exponents of the other variables
        let mut groups: BTreeMap<ExpVec, BTreeMap<i32, BigInt>> = BTreeMap::new();
        for (e, c) in &self.terms {
            groups.entry(e.with(var, 0)).or_default().insert(e.as_slice()[var], c.clone());
        }
        let mut out = Self::zero(k);
        for (rest, line) in groups {
            // p = (1 - v) s  ⇔  s_e = Σ_{f ≤ e} c_f, with the full sum vanishing
            let lo = *line.keys().next().unwrap();
            let hi = *line.keys().next_back().unwrap();
            let mut running = BigInt::zero();
            for e in lo..hi {
                if let Some(c) = line.get(&e) {
                    running += c;
                }
                out.add_term(rest.with(var, e), running.clone());
            }
            running += &line[&hi];
            if !running.is_zero() {
                return None;
            }
        }
        Some(out)
    }

    /// Largest absolute x-exponent occurring.
    pub fn max_abs_x(&self) -> i32 {
        self.terms.keys().map(|e| e.max_abs_x()).max().unwrap_or(0)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = var_names(self.k());
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.is_zero() {
                factors.push(mag.to_string());
            }
            for (i, &x) in e.as_slice().iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    _ => factors.push(format!("{}^{}", names[i], x)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[k={}]({})", self.k, self)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &'a LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("ring context mismatch")
            }
        }
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { k: self.k, terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// A signed monomial `±x^e`; the units of the Laurent ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct UnitMonomial {
    pub sign: i8,
    pub exps: ExpVec,
}

impl UnitMonomial {
    /// A positive unit (coefficient +1).
    pub fn positive(exps: ExpVec) -> Self {
        UnitMonomial { sign: 1, exps }
    }

    pub fn is_positive(&self) -> bool {
        self.sign > 0
    }

    pub fn inverse(&self) -> Self {
        UnitMonomial { sign: self.sign, exps: self.exps.neg() }
    }

    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::monomial(self.exps.k(), i64::from(self.sign), self.exps)
    }
}

impl fmt::Display for UnitMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}
