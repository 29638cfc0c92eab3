//! Claim probes: each desk-checkable statement about the matrix groups
//! becomes one function returning a [`ClaimReport`].
//!
//! `Fail` is only ever reported with a sound counter-witness (a
//! re-verifiable non-membership certificate or an exact inequality);
//! `Unknown` membership verdicts make a claim `Inconclusive`, never `Fail`.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::ideal::{certify_nonmember, Certificate, IdealEngine, IdealError, IdealSpec, MembershipVerdict, SearchBox};
use crate::matrix::{
    check_t_commute, eval_ast, eval_word, geometric, generator_m, generator_t, GeneratorSet, MatError, MatR,
    Presentation,
};
use crate::ring::{LaurentPoly, PrimePower, RingError};
use crate::word::{derived_sample_ast, random_reduced_word, Word, WordAst, WordError};

#[derive(Debug, Error)]
pub enum ProbeError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("invalid probe configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    Pass,
    Fail,
    Inconclusive,
}

impl ClaimStatus {
    /// `Fail` dominates `Inconclusive`, which dominates `Pass`.
    pub fn combine(self, other: ClaimStatus) -> ClaimStatus {
        use ClaimStatus::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimStatus::Pass => "pass",
            ClaimStatus::Fail => "fail",
            ClaimStatus::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Why a sample failed, in a form that can be re-checked from scratch.
#[derive(Clone, Debug)]
pub enum CounterWitness {
    NonMember { poly: LaurentPoly, spec: IdealSpec, certificate: Certificate, t_power: Option<i32> },
    /// An exact equality that should hold and does not.
    Inequality { left: MatR, right: MatR },
}

impl CounterWitness {
    pub fn reverify(&self) -> bool {
        match self {
            CounterWitness::NonMember { poly, spec, certificate, t_power } => {
                let target = match t_power {
                    Some(j) => poly.t_coefficients().remove(j).unwrap_or_else(|| LaurentPoly::zero(poly.k())),
                    None => poly.clone(),
                };
                certificate.verify(&target, &spec.without_t())
            }
            CounterWitness::Inequality { left, right } => left != right,
        }
    }
}

/// One checked sample.
#[derive(Clone, Debug)]
pub struct Detail {
    pub subject: String,
    pub status: ClaimStatus,
    pub data: Value,
    pub counter: Option<CounterWitness>,
}

impl Detail {
    fn new(subject: impl Into<String>, status: ClaimStatus, data: Value) -> Self {
        Detail { subject: subject.into(), status, data, counter: None }
    }

    pub fn to_json(&self) -> Value {
        json!({ "subject": self.subject, "status": self.status, "data": self.data })
    }
}

#[derive(Clone, Debug)]
pub struct ClaimReport {
    pub claim_id: String,
    pub status: ClaimStatus,
    pub details: Vec<Detail>,
    pub box_used: Option<SearchBox>,
    pub timing: Duration,
}

impl ClaimReport {
    fn from_details(claim_id: &str, details: Vec<Detail>, box_used: Option<SearchBox>, started: Instant) -> Self {
        let status = details.iter().fold(ClaimStatus::Pass, |acc, d| acc.combine(d.status));
        ClaimReport { claim_id: claim_id.into(), status, details, box_used, timing: started.elapsed() }
    }

    /// Every `Fail` detail carries a counter-witness that re-verifies.
    pub fn failures_reverify(&self) -> bool {
        self.details
            .iter()
            .filter(|d| d.status == ClaimStatus::Fail)
            .all(|d| d.counter.as_ref().is_some_and(CounterWitness::reverify))
    }

    pub fn count(&self, status: ClaimStatus) -> usize {
        self.details.iter().filter(|d| d.status == status).count()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "claim_id": self.claim_id,
            "status": self.status,
            "details": self.details.iter().map(Detail::to_json).collect::<Vec<_>>(),
            "box_used": self.box_used,
            "timing_ms": self.timing.as_millis() as u64,
        })
    }
}

/// Shared probe parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeConfig {
    pub q: PrimePower,
    #[serde(rename = "box")]
    pub search_box: SearchBox,
    pub auto_grow: bool,
    pub seed: u64,
    pub sample_count: usize,
    pub n_max: usize,
    pub word_len: usize,
}

impl ProbeConfig {
    /// Defaults: first box of the schedule with auto-grow, seed 0,
    /// 20 samples, derived depth up to 4, base words up to 4 letters.
    pub fn new(q: u64) -> Result<Self, ProbeError> {
        let q = PrimePower::new(q)?;
        let spec = IdealSpec::jq(q.q())?;
        Ok(ProbeConfig {
            q,
            search_box: SearchBox::default_for(&spec),
            auto_grow: true,
            seed: 0,
            sample_count: 20,
            n_max: 4,
            word_len: 4,
        })
    }

    pub fn validate(&self) -> Result<(), ProbeError> {
        if self.sample_count == 0 {
            return Err(ProbeError::InvalidConfig("sample_count must be at least 1".into()));
        }
        if self.word_len == 0 {
            return Err(ProbeError::InvalidConfig("word_len must be at least 1".into()));
        }
        Ok(())
    }

    pub fn jq(&self) -> IdealSpec {
        IdealSpec::jq(self.q.q()).expect("prime power")
    }
}

/// `e(p^e - p^(e-1)) + 1` and the least `n` with `2^n ≥` it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsResult {
    pub q: u64,
    pub p: u64,
    pub e: u32,
    pub rhs: u64,
    pub n: u32,
}

impl BoundsResult {
    /// `2^(n-1) < rhs ≤ 2^n`.
    pub fn is_tight(&self) -> bool {
        let upper = 1u128 << self.n;
        let lower = if self.n == 0 { 0 } else { 1u128 << (self.n - 1) };
        lower < self.rhs as u128 && self.rhs as u128 <= upper
    }
}

pub fn class_bound(q: u64) -> Result<BoundsResult, ProbeError> {
    let pp = PrimePower::new(q)?;
    let (p, e) = (pp.p(), pp.e());
    let rhs = u64::from(e) * (q - q / p) + 1;
    let n = (0..64).find(|n| 1u128 << n >= rhs as u128).expect("rhs fits in u64");
    Ok(BoundsResult { q, p, e, rhs, n })
}

fn bounds_detail(b: &BoundsResult) -> Detail {
    let status = if b.is_tight() { ClaimStatus::Pass } else { ClaimStatus::Fail };
    Detail::new(format!("class_bound(q={})", b.q), status, json!(b))
}

/// Claim `bounds`: the class-bound formula and its two-sided inequality.
pub fn bounds_check(cfg: &ProbeConfig) -> Result<ClaimReport, ProbeError> {
    let started = Instant::now();
    let b = class_bound(cfg.q.q())?;
    Ok(ClaimReport::from_details("bounds", vec![bounds_detail(&b)], None, started))
}

/// Membership of every entry (and, for extended specs, every t-coefficient).
struct EntryCheck {
    status: ClaimStatus,
    data: Value,
    counter: Option<CounterWitness>,
    largest_box: Option<SearchBox>,
}

fn larger(a: Option<SearchBox>, b: Option<SearchBox>) -> Option<SearchBox> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.contains(&x) { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

fn check_entries(engine: &IdealEngine, m: &MatR, spec: &IdealSpec, cfg: &ProbeConfig) -> Result<EntryCheck, ProbeError> {
    let mut status = ClaimStatus::Pass;
    let mut entries = Vec::new();
    let mut counter = None;
    let mut largest_box = None;
    let k = m.dim();
    for (idx, p) in m.entries().iter().enumerate() {
        let v = engine.member(p, spec, &cfg.search_box, cfg.auto_grow)?;
        let entry_status = match &v {
            MembershipVerdict::Member { search_box, .. } => {
                largest_box = larger(largest_box, *search_box);
                ClaimStatus::Pass
            }
            MembershipVerdict::NonMember { certificate, t_power } => {
                if counter.is_none() {
                    counter = Some(CounterWitness::NonMember {
                        poly: p.clone(),
                        spec: *spec,
                        certificate: certificate.clone(),
                        t_power: *t_power,
                    });
                }
                ClaimStatus::Fail
            }
            MembershipVerdict::Unknown { search_box } => {
                largest_box = larger(largest_box, Some(*search_box));
                ClaimStatus::Inconclusive
            }
        };
        status = status.combine(entry_status);
        let mut j = v.to_json(false);
        j["entry"] = json!([idx / k + 1, idx % k + 1]);
        entries.push(j);
    }
    Ok(EntryCheck { status, data: Value::Array(entries), counter, largest_box })
}

fn commutator(u: WordAst, v: WordAst) -> WordAst {
    WordAst::Commutator(Box::new(u), Box::new(v))
}

fn word_ast(w: &Word) -> WordAst {
    WordAst::Concat(w.letters().iter().copied().map(WordAst::Letter).collect())
}

/// Explicit double commutator used as the negative control.
pub const NEGATIVE_CONTROL: [&str; 4] = ["a", "b", "ab", "ba"];

fn double_commutator(ws: &[Word; 4]) -> WordAst {
    commutator(commutator(word_ast(&ws[0]), word_ast(&ws[1])), commutator(word_ast(&ws[2]), word_ast(&ws[3])))
}

/// Claim `metabelian`: `[[w1,w2],[w3,w4]] = I` exactly over `{M1, M2}`,
/// plus the negative control over `{M1, M2T}` which must differ from `I`.
pub fn metabelian_check(cfg: &ProbeConfig) -> Result<ClaimReport, ProbeError> {
    cfg.validate()?;
    let started = Instant::now();
    let base = GeneratorSet::new(Presentation::Base, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut details = Vec::with_capacity(cfg.sample_count + 1);
    for _ in 0..cfg.sample_count {
        let ws: [Word; 4] = std::array::from_fn(|_| {
            let len = rng.gen_range(0..=cfg.word_len);
            random_reduced_word(&mut rng, len, 2)
        });
        let ast = double_commutator(&ws);
        let m = eval_ast(&ast, &base, None)?;
        let subject = format!("[[{},{}],[{},{}]]", ws[0], ws[1], ws[2], ws[3]);
        let mut d = if m.is_identity() {
            Detail::new(subject, ClaimStatus::Pass, json!({ "exact_identity": true }))
        } else {
            Detail::new(subject, ClaimStatus::Fail, json!({ "exact_identity": false, "matrix": m.to_rows() }))
        };
        if d.status == ClaimStatus::Fail {
            d.counter = Some(CounterWitness::Inequality { left: m, right: MatR::identity(2) });
        }
        details.push(d);
    }
    let control = negative_control()?;
    let status = if control.is_identity() { ClaimStatus::Fail } else { ClaimStatus::Pass };
    let mut d = Detail::new(
        "negative control over {M1, M2T}: [[a,b],[ab,ba]] != I",
        status,
        json!({ "exact_identity": control.is_identity() }),
    );
    if status == ClaimStatus::Fail {
        d.counter = Some(CounterWitness::Inequality { left: control.clone(), right: control });
    }
    details.push(d);
    Ok(ClaimReport::from_details("metabelian", details, None, started))
}

/// `[[a,b],[ab,ba]]` evaluated over `{M1, M2T}`.
pub fn negative_control() -> Result<MatR, ProbeError> {
    let ext = GeneratorSet::new(Presentation::Extended, 2)?;
    let ws = NEGATIVE_CONTROL.map(|s| Word::parse(s, 2).expect("fixed word"));
    Ok(eval_ast(&double_commutator(&ws), &ext, None)?)
}

/// `M1^j = [[1, (1 - y)(1 + x + .. + x^(j-1))], [0, x^j]]`.
pub fn m1_power_closed_form(j: u32) -> MatR {
    let one_y = LaurentPoly::one_minus_var(2, 1);
    let x_j = LaurentPoly::var(2, 0).pow(j);
    MatR::from_rows(vec![
        vec![LaurentPoly::one(2), &one_y * &geometric(2, 0, j)],
        vec![LaurentPoly::zero(2), x_j],
    ])
    .expect("2x2")
}

/// Claim `order`: `M1^q ≡ I` modulo `J(q)` with witnesses, and for every
/// `0 < j < q` some entry of `M1^j - I` carries a non-membership certificate.
pub fn generator_order_check(cfg: &ProbeConfig, engine: &IdealEngine) -> Result<ClaimReport, ProbeError> {
    let started = Instant::now();
    let spec = cfg.jq();
    let q = cfg.q.q() as u32;
    let m1 = generator_m(1, 2)?;
    let mut details = Vec::new();
    let mut largest = None;
    for j in 1..=q {
        let power = m1.pow(j);
        if power != m1_power_closed_form(j) {
            let mut d = Detail::new(format!("M1^{j} closed form"), ClaimStatus::Fail, json!({}));
            d.counter = Some(CounterWitness::Inequality { left: power, right: m1_power_closed_form(j) });
            details.push(d);
        }
    }
    let top = m1.pow(q).minus_identity();
    let check = check_entries(engine, &top, &spec, cfg)?;
    largest = larger(largest, check.largest_box);
    let mut d = Detail::new(format!("M1^{q} - I in J({q})"), check.status, check.data);
    d.counter = check.counter;
    details.push(d);
    for j in 1..q {
        let diff = m1.pow(j).minus_identity();
        let mut fired = None;
        for (idx, p) in diff.entries().iter().enumerate() {
            if let Some(c) = certify_nonmember(p, &spec)? {
                fired = Some((idx, c));
                break;
            }
        }
        let d = match fired {
            Some((idx, c)) => Detail::new(
                format!("M1^{j} - I not in J({q})"),
                ClaimStatus::Pass,
                json!({ "entry": [idx / 2 + 1, idx % 2 + 1], "certificate": c.to_json() }),
            ),
            None => Detail::new(
                format!("M1^{j} - I not in J({q})"),
                ClaimStatus::Inconclusive,
                json!({ "certificate": null }),
            ),
        };
        details.push(d);
    }
    Ok(ClaimReport::from_details("order", details, larger(largest, Some(cfg.search_box)), started))
}

fn sample_check(
    engine: &IdealEngine,
    spec: &IdealSpec,
    cfg: &ProbeConfig,
    subject: String,
    m: &MatR,
    extra: Value,
) -> Result<(Detail, Option<SearchBox>), ProbeError> {
    let check = check_entries(engine, m, spec, cfg)?;
    let mut data = json!({ "entries": check.data });
    if let (Value::Object(dst), Value::Object(src)) = (&mut data, extra) {
        dst.extend(src);
    }
    let mut d = Detail::new(subject, check.status, data);
    d.counter = check.counter;
    Ok((d, check.largest_box))
}

/// Claim `exponent`: for sampled commutators `c` over `{M1, M2T}`, every
/// t-coefficient of every entry of `eval(c)^q - I` lies in `J(q)`.
pub fn exponent_commutator_check(cfg: &ProbeConfig, engine: &IdealEngine) -> Result<ClaimReport, ProbeError> {
    cfg.validate()?;
    let started = Instant::now();
    let ext = GeneratorSet::new(Presentation::Extended, 2)?;
    let spec = cfg.jq().extended();
    let q = cfg.q.q() as u32;
    let samples = derived_sample_ast(1, cfg.sample_count, cfg.seed, cfg.word_len, 2)?;
    let results: Vec<(Detail, Option<SearchBox>)> = samples
        .par_iter()
        .map(|ast| {
            let c = eval_ast(ast, &ext, None)?;
            let m = c.pow(q).minus_identity();
            sample_check(engine, &spec, cfg, format!("({})^{q} - I", ast.flatten()), &m, json!({}))
        })
        .collect::<Result<_, ProbeError>>()?;
    let largest = results.iter().fold(None, |acc, (_, b)| larger(acc, *b));
    let details = results.into_iter().map(|(d, _)| d).collect();
    Ok(ClaimReport::from_details("exponent", details, larger(largest, Some(cfg.search_box)), started))
}

/// Fixed words always included in the square check.
pub const SQUARE_FIXED: [&str; 3] = ["a", "b", "[a,b]^2"];

/// Claim `square`: `eval_{M1,M2T}(w)/t` and `eval_{M1,M2}(w)` agree modulo
/// `J(q)`; recorded separately whether they agree exactly.
pub fn square_check(cfg: &ProbeConfig, engine: &IdealEngine) -> Result<ClaimReport, ProbeError> {
    cfg.validate()?;
    let started = Instant::now();
    let base = GeneratorSet::new(Presentation::Base, 2)?;
    let ext = GeneratorSet::new(Presentation::Extended, 2)?;
    let spec = cfg.jq();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut words: Vec<Word> = SQUARE_FIXED.iter().map(|s| Word::parse(s, 2).expect("fixed word")).collect();
    for _ in 0..cfg.sample_count {
        let len = rng.gen_range(1..=cfg.word_len);
        words.push(random_reduced_word(&mut rng, len, 2));
    }
    let results: Vec<(Detail, Option<SearchBox>)> = words
        .par_iter()
        .map(|w| {
            let down_across = eval_word(w, &ext)?.set_t_one();
            let across_down = eval_word(w, &base)?;
            let diff = down_across.checked_sub(&across_down)?;
            let exact = diff.entries().iter().all(LaurentPoly::is_zero);
            sample_check(engine, &spec, cfg, format!("w = {w}"), &diff, json!({ "exact_zero": exact }))
        })
        .collect::<Result<_, ProbeError>>()?;
    let largest = results.iter().fold(None, |acc, (_, b)| larger(acc, *b));
    let details = results.into_iter().map(|(d, _)| d).collect();
    Ok(ClaimReport::from_details("square", details, larger(largest, Some(cfg.search_box)), started))
}

#[derive(Clone, Debug)]
pub struct DerivedDepthReport {
    /// Least sampled level whose samples are all trivial modulo `J(q)[t, t^-1]`.
    pub n_star: Option<usize>,
    pub per_level: Vec<ClaimReport>,
    pub bound: BoundsResult,
    /// Whether level `n_star + 1` samples are trivial too.
    pub descends: Option<bool>,
}

impl DerivedDepthReport {
    /// Pass with `n_star` found and descent confirmed, Fail if descent is
    /// refuted by a certificate, Inconclusive otherwise.
    pub fn claim(&self, started: Instant) -> ClaimReport {
        let status = match (self.n_star, self.descends) {
            (Some(_), Some(true)) => ClaimStatus::Pass,
            (Some(n), Some(false)) if self.per_level.get(n).is_some_and(|r| r.status == ClaimStatus::Fail) => {
                ClaimStatus::Fail
            }
            _ => ClaimStatus::Inconclusive,
        };
        let mut details = vec![Detail::new(
            "derived-depth evidence in F(S[t,t^-1])",
            status,
            json!({
                "n_star": self.n_star,
                "descends": self.descends,
                "class_bound": self.bound,
                "levels": self.per_level.iter().map(|r| json!({
                    "level": r.claim_id,
                    "status": r.status,
                    "trivial": r.count(ClaimStatus::Pass),
                    "nontrivial": r.count(ClaimStatus::Fail),
                    "unknown": r.count(ClaimStatus::Inconclusive),
                })).collect::<Vec<_>>(),
            }),
        )];
        if status == ClaimStatus::Fail {
            if let Some(d) = self.per_level.iter().flat_map(|r| &r.details).find(|d| d.counter.is_some()) {
                details[0].counter = d.counter.clone();
            }
        }
        let box_used = self.per_level.iter().fold(None, |acc, r| larger(acc, r.box_used));
        ClaimReport { claim_id: "derived-depth".into(), status, details, box_used, timing: started.elapsed() }
    }
}

/// Samples derived-series levels `1..=n_max` over `{M1, M2T}` and tests
/// whether `eval - I` vanishes modulo `J(q)[t, t^-1]`. Evaluation folds
/// x-exponents modulo `q` after every product, which leaves membership in
/// `J(q)` unchanged and keeps entries small. Stops one level past `n_star`.
pub fn derived_depth_probe(cfg: &ProbeConfig, engine: &IdealEngine) -> Result<DerivedDepthReport, ProbeError> {
    cfg.validate()?;
    let ext = GeneratorSet::new(Presentation::Extended, 2)?;
    let spec = cfg.jq().extended();
    let q = cfg.q.q();
    let mut per_level = Vec::new();
    let mut n_star = None;
    let mut descends = None;
    for n in 1..=cfg.n_max + 1 {
        if n > cfg.n_max && n_star.is_none() {
            break;
        }
        let started = Instant::now();
        let samples = derived_sample_ast(n, cfg.sample_count, cfg.seed.wrapping_add(n as u64), cfg.word_len, 2)?;
        let results: Vec<(Detail, Option<SearchBox>)> = samples
            .par_iter()
            .enumerate()
            .map(|(i, ast)| {
                let m = eval_ast(ast, &ext, Some(q))?.minus_identity();
                let len = ast.flatten().len();
                sample_check(engine, &spec, cfg, format!("level {n} sample {i}"), &m, json!({ "word_length": len }))
            })
            .collect::<Result<_, ProbeError>>()?;
        let largest = results.iter().fold(None, |acc, (_, b)| larger(acc, *b));
        let details = results.into_iter().map(|(d, _)| d).collect();
        let report = ClaimReport::from_details(&format!("derived-depth/level-{n}"), details, largest, started);
        let trivial = report.status == ClaimStatus::Pass;
        per_level.push(report);
        match n_star {
            None if trivial => n_star = Some(n),
            Some(_) => {
                descends = Some(trivial);
                break;
            }
            None => {}
        }
    }
    Ok(DerivedDepthReport { n_star, per_level, bound: class_bound(q)?, descends })
}

/// Claim `prop1`: `M1` is t-free, its entries generate `R` up to units, and
/// `M2T` does involve `t`.
pub fn prop1_entry_check() -> Result<ClaimReport, ProbeError> {
    let started = Instant::now();
    let m1 = generator_m(1, 2)?;
    let m2t = generator_m(2, 2)?.checked_mul(&generator_t(2, 2)?)?;
    let mut details = Vec::new();
    let status = |ok: bool| if ok { ClaimStatus::Pass } else { ClaimStatus::Fail };

    let t_free = m1.entries().iter().all(|e| e.t_degree() == 0);
    let mut d = Detail::new("every entry of M1 has t-degree 0", status(t_free), json!({ "M1": m1.to_rows() }));
    if !t_free {
        d.counter = Some(CounterWitness::Inequality { left: m1.set_t_one(), right: m1.clone() });
    }
    details.push(d);

    let x = m1.get(1, 1).clone();
    let y = m1.get(0, 0) - m1.get(0, 1);
    let inv = |p: &LaurentPoly| p.as_unit_monomial().map(|u| u.inverse().to_poly());
    let (xi, yi) = (inv(&x), inv(&y));
    let one = LaurentPoly::one(2);
    let generated = x == LaurentPoly::var(2, 0)
        && y == LaurentPoly::var(2, 1)
        && xi.as_ref().is_some_and(|v| &x * v == one)
        && yi.as_ref().is_some_and(|v| &y * v == one);
    details.push(Detail::new(
        "x, y, x^-1, y^-1 recovered from the entries of M1",
        status(generated),
        json!({
            "x": x.to_string(),
            "y": y.to_string(),
            "x_inv": xi.map(|p| p.to_string()),
            "y_inv": yi.map(|p| p.to_string()),
        }),
    ));

    let has_t = !m2t.is_t_free();
    details.push(Detail::new(
        "M2T has t in its entries",
        status(has_t),
        json!({ "M2T": m2t.to_rows() }),
    ));
    Ok(ClaimReport::from_details("prop1", details, None, started))
}

/// Claim `theorem-b`: the least `m` with `Σ^m ⊆ I(q)` is at most
/// `e(p^e - p^(e-1)) + 1`.
pub fn theorem_b_probe(cfg: &ProbeConfig, engine: &IdealEngine) -> Result<ClaimReport, ProbeError> {
    let started = Instant::now();
    let bound = class_bound(cfg.q.q())?;
    let rhs = bound.rhs as u32;
    let report = engine.min_power_in_iq(cfg.q.q(), rhs, &cfg.search_box, cfg.auto_grow)?;
    let spec = IdealSpec::iq(cfg.q.q())?;
    let mut details = Vec::new();
    let mut largest = None;
    for level in &report.levels {
        let mut level_status = ClaimStatus::Pass;
        let mut gens = Vec::new();
        let mut counter = None;
        for (g, v) in &level.verdicts {
            match v {
                MembershipVerdict::Member { search_box, .. } => largest = larger(largest, *search_box),
                MembershipVerdict::NonMember { certificate, t_power } => {
                    level_status = level_status.combine(ClaimStatus::Fail);
                    counter.get_or_insert_with(|| CounterWitness::NonMember {
                        poly: g.poly.clone(),
                        spec,
                        certificate: certificate.clone(),
                        t_power: *t_power,
                    });
                }
                MembershipVerdict::Unknown { search_box } => {
                    largest = larger(largest, Some(*search_box));
                    level_status = level_status.combine(ClaimStatus::Inconclusive);
                }
            }
            let mut j = v.to_json(false);
            j["generator"] = json!(g.label);
            gens.push(j);
        }
        // only the ceiling level is a claim; lower levels are informational
        let status = if level.m == rhs { level_status } else { ClaimStatus::Pass };
        let mut d = Detail::new(
            format!("Sigma^{} in I({})", level.m, cfg.q),
            status,
            json!({ "all_member": level_status == ClaimStatus::Pass, "generators": gens }),
        );
        if status == ClaimStatus::Fail {
            d.counter = counter;
        }
        details.push(d);
    }
    details.push(Detail::new(
        "m_star against the ceiling",
        match report.m_star {
            Some(m) if m <= rhs => ClaimStatus::Pass,
            _ => ClaimStatus::Inconclusive,
        },
        json!({ "m_star": report.m_star, "rhs": rhs }),
    ));
    Ok(ClaimReport::from_details("theorem-b", details, larger(largest, Some(cfg.search_box)), started))
}

/// Claim `t-commute`: the `T_i` commute pairwise for `k = 2, 3, 4`.
pub fn t_commute_check() -> Result<ClaimReport, ProbeError> {
    let started = Instant::now();
    let mut details = Vec::new();
    for k in 2..=4 {
        let ok = check_t_commute(k)?;
        let mut d = Detail::new(
            format!("T_i T_j = T_j T_i for k={k}"),
            if ok { ClaimStatus::Pass } else { ClaimStatus::Fail },
            json!({ "k": k }),
        );
        if !ok {
            let (a, b) = (generator_t(2, k)?, generator_t(k, k)?);
            d.counter = Some(CounterWitness::Inequality { left: a.checked_mul(&b)?, right: b.checked_mul(&a)? });
        }
        details.push(d);
    }
    Ok(ClaimReport::from_details("t-commute", details, None, started))
}
