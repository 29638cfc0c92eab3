//! Membership in `Σ^m`, `I(q)` and `J(q) = I(q)Σ`.
//!
//! `I(q)` is infinitely generated, so membership is a semi-decision with
//! three outcomes: `Member` with an exactly recombining witness,
//! `NonMember` with an independently checkable certificate, or `Unknown`
//! at the given truncation box.
//!
//! For `I(q)` and `J(q)` every query is first folded: since
//! `x^q - 1 = -(1 - x)·cyc_q(x)` lies in `J(q) ⊆ I(q)`, each exponent can be
//! reduced into `[0, q)` with an explicit witness. The truncated lattice
//! only has to handle the folded remainder.

mod certificate;
pub mod hnf;
mod lattice;

pub use certificate::{certify_nonmember, Certificate};
pub use lattice::{generators, LatticeBasis, FORMAT_VERSION};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cache::{DiskCache, LoadOutcome};
use crate::ring::{cyc_element, ExpVec, LaurentPoly, PrimePower, RingError, UnitMonomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("ideal needs a prime power q")]
    MissingQ,
    #[error("invalid ideal: {0}")]
    InvalidSpec(String),
    #[error("window {window} too small; generators need at least {needed}")]
    WindowTooSmall { window: u32, needed: u32 },
    #[error("vector dimension {got} exceeds lattice dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polynomial lives in k={got} but the ideal in k={expected}")]
    ContextMismatch { expected: usize, got: usize },
    #[error("polynomial contains t but the ideal is not extended to R[t, t^-1]: {0}")]
    ContainsT(String),
    #[error("witness does not recombine to the queried polynomial")]
    WitnessMismatch,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IdealKind {
    SigmaPow { m: u32 },
    Iq,
    Jq,
}

/// Which ideal, over which ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct IdealSpec {
    #[serde(flatten)]
    pub kind: IdealKind,
    pub q: Option<PrimePower>,
    /// Test in `R[t, t^-1]`: every t-coefficient must belong.
    pub extend_t: bool,
    pub k: usize,
}

impl IdealSpec {
    pub fn iq(q: u64) -> Result<Self, IdealError> {
        Ok(IdealSpec { kind: IdealKind::Iq, q: Some(PrimePower::new(q)?), extend_t: false, k: 2 })
    }

    pub fn jq(q: u64) -> Result<Self, IdealError> {
        Ok(IdealSpec { kind: IdealKind::Jq, q: Some(PrimePower::new(q)?), extend_t: false, k: 2 })
    }

    pub fn sigma_pow(m: u32, k: usize) -> Result<Self, IdealError> {
        let spec = IdealSpec { kind: IdealKind::SigmaPow { m }, q: None, extend_t: false, k };
        spec.validate()?;
        Ok(spec)
    }

    pub fn extended(mut self) -> Self {
        self.extend_t = true;
        self
    }

    pub fn without_t(mut self) -> Self {
        self.extend_t = false;
        self
    }

    pub fn validate(&self) -> Result<(), IdealError> {
        match self.kind {
            IdealKind::SigmaPow { m } => {
                if m == 0 {
                    return Err(IdealError::InvalidSpec("Σ^m needs m ≥ 1".into()));
                }
                if !(1..=crate::ring::MAX_K).contains(&self.k) {
                    return Err(RingError::UnsupportedK(self.k).into());
                }
            }
            IdealKind::Iq | IdealKind::Jq => {
                if self.q.is_none() {
                    return Err(IdealError::MissingQ);
                }
                if self.k != 2 {
                    return Err(RingError::RequiresTwoGenerators(self.k).into());
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.q) {
            (IdealKind::SigmaPow { m }, _) => write!(f, "Sigma^{m}")?,
            (IdealKind::Iq, Some(q)) => write!(f, "I({q})")?,
            (IdealKind::Jq, Some(q)) => write!(f, "J({q})")?,
            (_, None) => write!(f, "?")?,
        }
        if self.extend_t {
            f.write_str("[t,t^-1]")?;
        }
        Ok(())
    }
}

/// Truncation of the infinitely generated ideal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SearchBox {
    /// Max |exponent| of units `u` generating cyclotomic elements.
    pub d_unit: u32,
    /// Max |exponent| of monomial shift multipliers.
    pub d_shift: u32,
    /// Max |exponent| of the monomial support lattice vectors live on.
    pub window: u32,
}

impl SearchBox {
    pub const fn new(d_unit: u32, d_shift: u32, window: u32) -> Self {
        SearchBox { d_unit, d_shift, window }
    }

    /// Smallest window holding every shifted generator of `spec`.
    pub fn required_window(&self, spec: &IdealSpec) -> u32 {
        match (spec.kind, spec.q) {
            (IdealKind::SigmaPow { m }, _) => m + self.d_shift,
            (_, Some(q)) => self.d_unit * (q.q() as u32 - 1) + self.d_shift + 1,
            (_, None) => u32::MAX,
        }
    }

    pub fn check_for(&self, spec: &IdealSpec) -> Result<(), IdealError> {
        let needed = self.required_window(spec);
        if self.window < needed {
            return Err(IdealError::WindowTooSmall { window: self.window, needed });
        }
        Ok(())
    }

    /// Componentwise `≥`.
    pub fn contains(&self, other: &SearchBox) -> bool {
        self.d_unit >= other.d_unit && self.d_shift >= other.d_shift && self.window >= other.window
    }

    /// Escalation schedule: windows 4, 6, 8 with `d_unit` up to 1, 2, 3,
    /// clamped so every generator still fits; `d_shift` takes the rest.
    pub fn default_schedule(spec: &IdealSpec) -> Vec<SearchBox> {
        let mut out: Vec<SearchBox> = Vec::new();
        for (d_unit, window) in [(1u32, 4u32), (2, 6), (3, 8)] {
            let candidate = match (spec.kind, spec.q) {
                (IdealKind::SigmaPow { m }, _) => {
                    if window < m {
                        continue;
                    }
                    SearchBox::new(0, window - m, window)
                }
                (_, Some(q)) => {
                    let step = q.q() as u32 - 1;
                    let d_unit = d_unit.min((window - 1) / step);
                    SearchBox::new(d_unit, window - d_unit * step - 1, window)
                }
                (_, None) => continue,
            };
            if candidate.check_for(spec).is_ok() {
                out.push(candidate);
            }
        }
        out
    }

    /// First box of the default schedule.
    pub fn default_for(spec: &IdealSpec) -> SearchBox {
        Self::default_schedule(spec).first().copied().unwrap_or(SearchBox::new(0, 0, 1))
    }
}

impl fmt::Display for SearchBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d_unit={} d_shift={} window={}", self.d_unit, self.d_shift, self.window)
    }
}

/// A named ideal generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Generator {
    pub label: String,
    pub poly: LaurentPoly,
}

/// `coeff · x^shift · generator`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WitnessTerm {
    pub generator: Arc<Generator>,
    pub shift: ExpVec,
    pub coeff: BigInt,
}

impl WitnessTerm {
    pub fn shift_unit(&self) -> UnitMonomial {
        UnitMonomial::positive(self.shift)
    }
}

/// Exact combination of shifted generators.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Witness {
    pub terms: Vec<WitnessTerm>,
}

impl Witness {
    pub fn recombine(&self, k: usize) -> LaurentPoly {
        let mut acc = LaurentPoly::zero(k);
        for term in &self.terms {
            acc = &acc + &term.generator.poly.shift(&term.shift).scale(&term.coeff);
        }
        acc
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|t| {
                    json!({
                        "generator": t.generator.label,
                        "shift": t.shift_unit().to_string(),
                        "coeff": t.coeff.to_string(),
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})*[{}]*[{}]", t.coeff, t.shift_unit(), t.generator.label)?;
        }
        Ok(())
    }
}

/// Merges witness contributions with equal generator and shift.
#[derive(Default)]
pub(crate) struct WitnessBuilder {
    generators: Vec<Arc<Generator>>,
    by_label: HashMap<String, usize>,
    terms: BTreeMap<(usize, ExpVec), BigInt>,
}

impl WitnessBuilder {
    pub(crate) fn add(&mut self, g: &Arc<Generator>, shift: ExpVec, coeff: BigInt) {
        let idx = match self.by_label.get(&g.label) {
            Some(&i) => i,
            None => {
                self.generators.push(Arc::clone(g));
                self.by_label.insert(g.label.clone(), self.generators.len() - 1);
                self.generators.len() - 1
            }
        };
        *self.terms.entry((idx, shift)).or_default() += coeff;
    }

    pub(crate) fn extend(&mut self, w: &Witness, extra_shift: Option<ExpVec>) {
        for t in &w.terms {
            let shift = extra_shift.map_or(t.shift, |e| t.shift.add(&e));
            self.add(&t.generator, shift, t.coeff.clone());
        }
    }

    pub(crate) fn finish(self) -> Witness {
        let generators = self.generators;
        Witness {
            terms: self
                .terms
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((g, shift), coeff)| WitnessTerm { generator: Arc::clone(&generators[g]), shift, coeff })
                .collect(),
        }
    }
}

/// Outcome of a membership query.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MembershipVerdict {
    Member { witness: Witness, search_box: Option<SearchBox> },
    /// `t_power` names the offending t-coefficient for extended ideals.
    NonMember { certificate: Certificate, t_power: Option<i32> },
    Unknown { search_box: SearchBox },
}

impl MembershipVerdict {
    /// A `Member` verdict, provided the witness recombines to `p` exactly.
    pub fn member(p: &LaurentPoly, witness: Witness, search_box: Option<SearchBox>) -> Result<Self, IdealError> {
        if witness.recombine(p.k()) != *p {
            return Err(IdealError::WitnessMismatch);
        }
        Ok(MembershipVerdict::Member { witness, search_box })
    }

    pub fn is_member(&self) -> bool {
        matches!(self, MembershipVerdict::Member { .. })
    }

    pub fn is_non_member(&self) -> bool {
        matches!(self, MembershipVerdict::NonMember { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, MembershipVerdict::Unknown { .. })
    }

    /// JSON form; `full` includes every witness term.
    pub fn to_json(&self, full: bool) -> Value {
        match self {
            MembershipVerdict::Member { witness, search_box } => {
                let mut v = json!({
                    "verdict": "member",
                    "witness_terms": witness.len(),
                    "box": search_box,
                });
                if full {
                    v["witness"] = witness.to_json();
                }
                v
            }
            MembershipVerdict::NonMember { certificate, t_power } => json!({
                "verdict": "non_member",
                "certificate": certificate.to_json(),
                "t_power": t_power,
            }),
            MembershipVerdict::Unknown { search_box } => json!({
                "verdict": "unknown",
                "box": search_box,
            }),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            MembershipVerdict::Member { .. } => "member",
            MembershipVerdict::NonMember { .. } => "non_member",
            MembershipVerdict::Unknown { .. } => "unknown",
        }
    }

    /// Re-checks the verdict from scratch: witnesses recombine, certificates
    /// re-verify with freshly built lattices. `Unknown` is trivially sound.
    pub fn reverify(&self, p: &LaurentPoly, spec: &IdealSpec) -> bool {
        match self {
            MembershipVerdict::Member { witness, .. } => witness.recombine(p.k()) == *p,
            MembershipVerdict::NonMember { certificate, t_power } => {
                let target = match t_power {
                    Some(j) => p.t_coefficients().remove(j).unwrap_or_else(|| LaurentPoly::zero(p.k())),
                    None => p.clone(),
                };
                certificate.verify(&target, &spec.without_t())
            }
            MembershipVerdict::Unknown { .. } => true,
        }
    }
}

/// The relation generators used to fold exponents modulo `q`.
struct FoldGenerators {
    q: i32,
    /// `Jq`: `(1 - v)·cyc_q(v)`; `Iq`: `cyc_q(v)`, for `v = x, y`.
    gens: [Arc<Generator>; 2],
    jq: bool,
}

impl FoldGenerators {
    fn new(spec: &IdealSpec) -> Result<Self, IdealError> {
        let q = spec.q.ok_or(IdealError::MissingQ)?;
        let jq = spec.kind == IdealKind::Jq;
        let make = |i: usize| -> Result<Arc<Generator>, IdealError> {
            let unit = UnitMonomial::positive(ExpVec::zero(2).with(i, 1));
            let cyc = cyc_element(q.q(), &unit)?;
            let base = format!("cyc{}({})", q.q(), unit);
            let name = ["x", "y"][i];
            Ok(Arc::new(if jq {
                Generator { label: format!("{base}*(1-{name})"), poly: &cyc * &LaurentPoly::one_minus_var(2, i) }
            } else {
                Generator { label: base, poly: cyc }
            }))
        };
        Ok(FoldGenerators { q: q.q() as i32, gens: [make(0)?, make(1)?], jq })
    }

    /// Records `coeff · x^shift · (v^q - 1)` for variable `var`.
    fn relation(&self, w: &mut WitnessBuilder, var: usize, shift: ExpVec, coeff: &BigInt) {
        let g = &self.gens[var];
        if self.jq {
            // v^q - 1 = -(1 - v)·cyc_q(v)
            w.add(g, shift, -coeff);
        } else {
            // v^q - 1 = v·cyc_q(v) - cyc_q(v)
            w.add(g, shift.with(var, shift.x(var) + 1), coeff.clone());
            w.add(g, shift, -coeff);
        }
    }

    /// Records `coeff · x^rest · (v^from - v^to)` as a sum of relations.
    fn move_exponent(&self, w: &mut WitnessBuilder, var: usize, rest: ExpVec, from: i32, to: i32, coeff: &BigInt) {
        let q = self.q;
        let m = (from - to) / q;
        if m > 0 {
            for l in 0..m {
                self.relation(w, var, rest.with(var, to + q * l), coeff);
            }
        } else {
            for l in 0..(-m) {
                self.relation(w, var, rest.with(var, from + q * l), &-coeff);
            }
        }
    }

    /// Splits `p = r + (relations)` with `r` supported on `[0, q)^2`.
    fn fold(&self, p: &LaurentPoly) -> (LaurentPoly, Witness) {
        let mut w = WitnessBuilder::default();
        for (e, c) in p.terms() {
            let (i, j) = (e.x(0), e.x(1));
            let (i0, j0) = (i.rem_euclid(self.q), j.rem_euclid(self.q));
            if i != i0 {
                self.move_exponent(&mut w, 0, *e, i, i0, c);
            }
            if j != j0 {
                self.move_exponent(&mut w, 1, e.with(0, i0), j, j0, c);
            }
        }
        (p.fold_exponents(self.q as u64), w.finish())
    }
}

type Slot = Arc<OnceLock<Arc<LatticeBasis>>>;

/// Membership engine with a per-key lattice cache (in memory, optionally
/// persisted to disk).
#[derive(Default)]
pub struct IdealEngine {
    lattices: Mutex<HashMap<(IdealSpec, SearchBox), Slot>>,
    disk: Option<DiskCache>,
}

impl IdealEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_disk_cache(disk: DiskCache) -> Self {
        IdealEngine { lattices: Mutex::default(), disk: Some(disk) }
    }

    /// Cached lattice for `(spec, box)`; built once per key.
    pub fn lattice(&self, spec: &IdealSpec, search_box: &SearchBox) -> Result<Arc<LatticeBasis>, IdealError> {
        let spec = spec.without_t();
        spec.validate()?;
        search_box.check_for(&spec)?;
        let slot = {
            let mut map = self.lattices.lock().expect("lattice cache poisoned");
            Arc::clone(map.entry((spec, *search_box)).or_default())
        };
        if let Some(l) = slot.get() {
            return Ok(Arc::clone(l));
        }
        let mut failure = None;
        let basis = slot.get_or_init(|| match self.load_or_build(&spec, search_box) {
            Ok(b) => Arc::new(b),
            Err(e) => {
                failure = Some(e);
                Arc::new(LatticeBasis::build(&IdealSpec::sigma_pow(1, spec.k).expect("valid"), &SearchBox::new(0, 0, 1)).expect("trivial lattice"))
            }
        });
        if let Some(e) = failure {
            self.lattices.lock().expect("lattice cache poisoned").remove(&(spec, *search_box));
            return Err(e);
        }
        Ok(Arc::clone(basis))
    }

    fn load_or_build(&self, spec: &IdealSpec, search_box: &SearchBox) -> Result<LatticeBasis, IdealError> {
        let Some(disk) = &self.disk else { return LatticeBasis::build(spec, search_box) };
        match disk.load(spec, search_box) {
            LoadOutcome::Hit(b) => return Ok(b),
            LoadOutcome::Miss => {}
            LoadOutcome::Rebuilt(reason) => log::warn!("rebuilding lattice cache for {spec} / {search_box}: {reason}"),
        }
        let basis = LatticeBasis::build(spec, search_box)?;
        if let Err(e) = disk.store(&basis) {
            log::warn!("could not persist lattice for {spec} / {search_box}: {e}");
        }
        Ok(basis)
    }

    /// Decides (semi-decidably) whether `p` lies in the ideal.
    ///
    /// With `auto_grow`, the default schedule boxes containing `search_box`
    /// are tried in turn before giving up with `Unknown`.
    pub fn member(
        &self,
        p: &LaurentPoly,
        spec: &IdealSpec,
        search_box: &SearchBox,
        auto_grow: bool,
    ) -> Result<MembershipVerdict, IdealError> {
        spec.validate()?;
        if p.k() != spec.k {
            return Err(IdealError::ContextMismatch { expected: spec.k, got: p.k() });
        }
        if !spec.extend_t && !p.is_t_free() {
            return Err(IdealError::ContainsT(p.to_string()));
        }
        search_box.check_for(spec)?;
        let mut boxes = vec![*search_box];
        if auto_grow {
            boxes.extend(
                SearchBox::default_schedule(spec)
                    .into_iter()
                    .filter(|b| b != search_box && b.contains(search_box)),
            );
        }
        if !spec.extend_t {
            return self.member_t_free(p, spec, &boxes);
        }
        let mut builder = WitnessBuilder::default();
        let mut unknown = None;
        let mut largest: Option<SearchBox> = None;
        for (tp, coeff) in p.t_coefficients() {
            match self.member_t_free(&coeff, &spec.without_t(), &boxes)? {
                MembershipVerdict::Member { witness, search_box } => {
                    builder.extend(&witness, Some(ExpVec::zero(spec.k).with_t(tp)));
                    if let Some(b) = search_box {
                        largest = Some(largest.map_or(b, |l| if b.contains(&l) { b } else { l }));
                    }
                }
                MembershipVerdict::NonMember { certificate, .. } => {
                    return Ok(MembershipVerdict::NonMember { certificate, t_power: Some(tp) });
                }
                MembershipVerdict::Unknown { search_box } => unknown = Some(search_box),
            }
        }
        if let Some(b) = unknown {
            return Ok(MembershipVerdict::Unknown { search_box: b });
        }
        MembershipVerdict::member(p, builder.finish(), largest)
    }

    fn member_t_free(
        &self,
        p: &LaurentPoly,
        spec: &IdealSpec,
        boxes: &[SearchBox],
    ) -> Result<MembershipVerdict, IdealError> {
        if p.is_zero() {
            return Ok(MembershipVerdict::Member { witness: Witness::default(), search_box: None });
        }
        if let Some(certificate) = certify_nonmember(p, spec)? {
            return Ok(MembershipVerdict::NonMember { certificate, t_power: None });
        }
        let (remainder, fold_witness) = match spec.kind {
            IdealKind::Iq | IdealKind::Jq => FoldGenerators::new(spec)?.fold(p),
            IdealKind::SigmaPow { .. } => (p.clone(), Witness::default()),
        };
        if remainder.is_zero() {
            return MembershipVerdict::member(p, fold_witness, None);
        }
        for b in boxes {
            let lattice = self.lattice(spec, b)?;
            if let Some(w) = lattice.express(&remainder) {
                let mut builder = WitnessBuilder::default();
                builder.extend(&fold_witness, None);
                builder.extend(&w, None);
                return MembershipVerdict::member(p, builder.finish(), Some(*b));
            }
        }
        Ok(MembershipVerdict::Unknown { search_box: *boxes.last().expect("at least one box") })
    }

    /// For `m = 1..=m_max`, tests every generator of `Σ^m` for membership in
    /// `I(q)`; `m_star` is the least `m` at which all are members.
    pub fn min_power_in_iq(
        &self,
        q: u64,
        m_max: u32,
        search_box: &SearchBox,
        auto_grow: bool,
    ) -> Result<PowerReport, IdealError> {
        let spec = IdealSpec::iq(q)?;
        let mut levels = Vec::new();
        let mut m_star = None;
        for m in 1..=m_max {
            let sigma = IdealSpec::sigma_pow(m, 2)?;
            let gens = generators(&sigma, &SearchBox::new(0, 0, m))?;
            let mut verdicts = Vec::new();
            for g in gens {
                let v = self.member(&g.poly, &spec, search_box, auto_grow)?;
                verdicts.push((g, v));
            }
            if m_star.is_none() && verdicts.iter().all(|(_, v)| v.is_member()) {
                m_star = Some(m);
            }
            levels.push(PowerLevel { m, verdicts });
        }
        Ok(PowerReport { q: spec.q.expect("iq has q"), levels, m_star })
    }
}

#[derive(Clone, Debug)]
pub struct PowerLevel {
    pub m: u32,
    pub verdicts: Vec<(Generator, MembershipVerdict)>,
}

#[derive(Clone, Debug)]
pub struct PowerReport {
    pub q: PrimePower,
    pub levels: Vec<PowerLevel>,
    pub m_star: Option<u32>,
}
