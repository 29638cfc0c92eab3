//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion, non-zero exit
//! if any criterion fails. Run with `cargo test --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use burnside::ideal::{
    certify_nonmember, generators, IdealEngine, IdealSpec, LatticeBasis, MembershipVerdict, SearchBox,
};
use burnside::matrix::{abelianization_unit, eval_word, generator_m, un_form_extract, GeneratorSet, Presentation};
use burnside::probe::{self, ClaimStatus, ProbeConfig};
use burnside::report::RunReport;
use burnside::ring::{eval_root_of_unity, ExpVec, LaurentPoly};
use burnside::word::{random_reduced_word, Word};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(n: u64) -> Duration {
    Duration::from_secs(n)
}

fn poly(s: &str) -> LaurentPoly {
    LaurentPoly::parse(s, 2).unwrap()
}

fn cyc(q: u64, var: usize) -> LaurentPoly {
    let mut e = [0i32; 2];
    LaurentPoly::from_terms(
        2,
        (0..q as i32).map(|i| {
            e[var] = i;
            (ExpVec::from_x(&e), 1)
        }),
    )
}

// ---- 1. exact algebra -------------------------------------------------------

const PRIME: i64 = 1_000_003;
const ALGEBRA_CASES: u32 = 600;

fn pow_mod(mut b: i64, mut e: i64) -> i64 {
    b = b.rem_euclid(PRIME);
    if e < 0 {
        b = pow_mod(b, PRIME - 2);
        e = -e;
    }
    let mut acc = 1i64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    acc
}

fn eval_mod(p: &LaurentPoly, pt: &[i64]) -> i64 {
    p.terms().fold(0, |acc, (e, c)| {
        let c = (c % BigInt::from(PRIME)).to_i64().unwrap().rem_euclid(PRIME);
        let v = c * pow_mod(pt[0], e.x(0).into()) % PRIME * pow_mod(pt[1], e.x(1).into()) % PRIME
            * pow_mod(pt[2], e.t().into())
            % PRIME;
        (acc + v) % PRIME
    })
}

fn arb_poly(with_t: bool) -> impl Strategy<Value = LaurentPoly> {
    let term = (-4i32..=4, -4i32..=4, -3i32..=3, -30i64..=30);
    proptest::collection::vec(term, 0..6).prop_map(move |ts| {
        LaurentPoly::from_terms(2, ts.into_iter().map(|(a, b, t, c)| (ExpVec::from_x_t(&[a, b], if with_t { t } else { 0 }), c)))
    })
}

fn runner() -> TestRunner {
    TestRunner::new(Config { cases: ALGEBRA_CASES, failure_persistence: None, ..Config::default() })
}

fn exact_algebra() -> Check {
    let mut total = 0;
    runner()
        .run(&(arb_poly(true), arb_poly(true), arb_poly(true)), |(a, b, c)| {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a + &(-&a)).is_zero());
            prop_assert_eq!(&a * &LaurentPoly::one(2), a.clone());
            Ok(())
        })
        .map_err(|e| format!("ring axioms: {e}"))?;
    total += ALGEBRA_CASES;
    let pts = proptest::collection::vec(1i64..PRIME, 3);
    runner()
        .run(&(arb_poly(true), arb_poly(true), pts), |(a, b, pt)| {
            let (ea, eb) = (eval_mod(&a, &pt), eval_mod(&b, &pt));
            prop_assert_eq!(eval_mod(&(&a * &b), &pt), ea * eb % PRIME);
            prop_assert_eq!(eval_mod(&(&a + &b), &pt), (ea + eb) % PRIME);
            prop_assert_eq!((&a * &b).augmentation(), a.augmentation() * b.augmentation());
            prop_assert_eq!((&a * &b).set_t_one(), &a.set_t_one() * &b.set_t_one());
            let at_one = [pt[0], pt[1], 1];
            prop_assert_eq!(eval_mod(&a.set_t_one(), &at_one), eval_mod(&a, &at_one));
            Ok(())
        })
        .map_err(|e| format!("homomorphisms: {e}"))?;
    total += ALGEBRA_CASES;
    let qs = prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]);
    runner()
        .run(&(arb_poly(false), arb_poly(false), qs, 0i64..9, 0i64..9), |(a, b, q, sa, sb)| {
            let ev = |p: &LaurentPoly| eval_root_of_unity(p, q, sa, sb).unwrap();
            prop_assert_eq!(ev(&(&a * &b)), ev(&a).checked_mul(&ev(&b)).unwrap());
            prop_assert!(ev(&(&a - &a.fold_exponents(q))).is_zero());
            Ok(())
        })
        .map_err(|e| format!("root-of-unity maps: {e}"))?;
    total += ALGEBRA_CASES;
    Ok(format!("{total} randomized cases"))
}

// ---- 2. normal form ---------------------------------------------------------

fn normal_form() -> Check {
    let gens = GeneratorSet::new(Presentation::Base, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..200 {
        let len = rng.gen_range(0..=10);
        let w = random_reduced_word(&mut rng, len, 2);
        let m = eval_word(&w, &gens).map_err(|e| e.to_string())?;
        let form = un_form_extract(&m).map_err(|e| format!("{w}: {e}"))?;
        let u = abelianization_unit(&w, 2);
        ensure(form.u == u, || format!("{w}: u = {} but abelianization gives {u}", form.u))?;
        ensure(m.trace() == &LaurentPoly::one(2) + &u.to_poly(), || format!("{w}: trace"))?;
        ensure(form.row_condition_holds(), || format!("{w}: row condition"))?;
        ensure(form.reconstruct() == m, || format!("{w}: reconstruction"))?;
    }
    Ok("200 words of length <= 10".into())
}

// ---- 3. metabelian ----------------------------------------------------------

fn metabelian() -> Check {
    let mut cfg = ProbeConfig::new(2).unwrap();
    cfg.sample_count = 50;
    cfg.seed = 3;
    let r = probe::metabelian_check(&cfg).map_err(|e| e.to_string())?;
    let identities = r.details.iter().filter(|d| d.subject.starts_with("[[") && d.status == ClaimStatus::Pass).count();
    ensure(identities == 50, || format!("{identities}/50 double commutators are I"))?;
    ensure(r.status == ClaimStatus::Pass, || "negative control did not fire".into())?;
    let flat = Word::parse("[[a,b],[ab,ba]]", 2).unwrap();
    let ext = GeneratorSet::new(Presentation::Extended, 2).unwrap();
    let control = eval_word(&flat, &ext).unwrap();
    ensure(!control.is_identity(), || "control is I under flat evaluation".into())?;
    ensure(control == probe::negative_control().unwrap(), || "structural and flat control differ".into())?;
    Ok("50/50 exact identities; [[a,b],[ab,ba]] != I over {M1, M2T}".into())
}

// ---- 4. t-commutativity -----------------------------------------------------

fn t_commute() -> Check {
    let r = probe::t_commute_check().map_err(|e| e.to_string())?;
    ensure(r.status == ClaimStatus::Pass && r.details.len() == 3, || "T_i do not commute".into())?;
    Ok("k = 2, 3, 4 exact".into())
}

// ---- 5. order of M1 ---------------------------------------------------------

fn order() -> Check {
    let engine = IdealEngine::new();
    for q in [2u64, 3, 4] {
        let spec = IdealSpec::jq(q).unwrap();
        let diff = generator_m(1, 2).unwrap().pow(q as u32).minus_identity();
        let w12 = &LaurentPoly::one_minus_var(2, 1) * &cyc(q, 0);
        let w22 = -(&LaurentPoly::one_minus_var(2, 0) * &cyc(q, 0));
        ensure(diff.get(0, 1) == &w12 && diff.get(1, 1) == &w22, || format!("q={q}: closed form differs"))?;
        ensure(diff.get(0, 0).is_zero() && diff.get(1, 0).is_zero(), || format!("q={q}: column 1"))?;
        let mut cfg = ProbeConfig::new(q).unwrap();
        cfg.search_box = SearchBox::default_for(&spec);
        let r = probe::generator_order_check(&cfg, &engine).map_err(|e| e.to_string())?;
        ensure(r.status == ClaimStatus::Pass, || format!("q={q}: order claim {}", r.status))?;
        for entry in diff.entries() {
            let v = engine.member(entry, &spec, &cfg.search_box, true).map_err(|e| e.to_string())?;
            ensure(v.is_member() && v.reverify(entry, &spec), || format!("q={q}: {entry} not witnessed"))?;
        }
        for j in 1..q as u32 {
            let d = generator_m(1, 2).unwrap().pow(j).minus_identity();
            let fired = d.entries().iter().any(|p| {
                certify_nonmember(p, &spec).unwrap().is_some_and(|c| c.verify(p, &spec))
            });
            ensure(fired, || format!("q={q}: no certificate for M1^{j} - I"))?;
        }
    }
    Ok("q = 2, 3, 4 witnessed; every 0 < j < q certified".into())
}

// ---- 6. exponent-q commutators ---------------------------------------------

fn exponent() -> Check {
    let engine = IdealEngine::new();
    let mut notes = Vec::new();
    for q in [2u64, 3] {
        let mut cfg = ProbeConfig::new(q).unwrap();
        cfg.sample_count = 20;
        let r = probe::exponent_commutator_check(&cfg, &engine).map_err(|e| e.to_string())?;
        let (fails, unknown) = (r.count(ClaimStatus::Fail), r.count(ClaimStatus::Inconclusive));
        ensure(r.details.len() >= 20, || format!("q={q}: only {} samples", r.details.len()))?;
        ensure(fails == 0, || format!("q={q}: {fails} refuted samples"))?;
        ensure(r.box_used.is_none_or(|b| b.window <= 8), || format!("q={q}: grew past window 8"))?;
        if q == 2 {
            ensure(unknown == 0, || format!("q=2: {unknown} unknown"))?;
        }
        notes.push(format!("q={q}: {} samples, unknown rate {unknown}/{}", r.details.len(), r.details.len()));
    }
    Ok(notes.join("; "))
}

// ---- 7. theorem-B probe -----------------------------------------------------

fn theorem_b() -> Check {
    // hand witnesses: 1 - x = cyc2(y) - y*cyc2(x/y), and symmetrically
    let c2 = |s: &str| &poly("1") + &poly(s);
    ensure(poly("1 - x") == &c2("y") - &(&poly("y") * &c2("x*y^-1")), || "hand witness for 1 - x".into())?;
    ensure(poly("1 - y") == &c2("x") - &(&poly("x") * &c2("x^-1*y")), || "hand witness for 1 - y".into())?;
    let engine = IdealEngine::new();
    let mut notes = Vec::new();
    for (q, ceiling) in [(2u64, 2u32), (3, 3), (4, 5)] {
        ensure(probe::class_bound(q).unwrap().rhs == u64::from(ceiling), || format!("q={q}: ceiling"))?;
        let spec = IdealSpec::iq(q).unwrap();
        let r = engine
            .min_power_in_iq(q, ceiling, &SearchBox::default_for(&spec), true)
            .map_err(|e| e.to_string())?;
        for level in &r.levels {
            for (g, v) in &level.verdicts {
                ensure(v.reverify(&g.poly, &spec), || format!("q={q}: {} does not reverify", g.label))?;
                ensure(!(level.m == ceiling && v.is_non_member()), || {
                    format!("q={q}: {} certified outside I({q}) at the ceiling", g.label)
                })?;
            }
        }
        let m_star = r.m_star.ok_or_else(|| format!("q={q}: no m <= {ceiling} fully witnessed"))?;
        if q == 2 {
            ensure(m_star == 1, || format!("m_star(2) = {m_star}"))?;
        }
        ensure(m_star <= ceiling, || format!("q={q}: m_star {m_star} > {ceiling}"))?;
        notes.push(format!("m_star({q}) = {m_star} <= {ceiling}"));
    }
    // the default schedule stops at window 8; Sigma^4 in I(4) needs window 10
    let spec = IdealSpec::iq(4).unwrap();
    let wide = SearchBox::new(2, 3, 10);
    let sigma4 = generators(&IdealSpec::sigma_pow(4, 2).unwrap(), &SearchBox::new(0, 0, 4)).unwrap();
    let witnessed = sigma4.iter().all(|g| {
        engine.member(&g.poly, &spec, &wide, false).is_ok_and(|v| v.is_member() && v.reverify(&g.poly, &spec))
    });
    if witnessed {
        notes.push(format!("Sigma^4 in I(4) witnessed at {wide}"));
    }
    Ok(notes.join(", "))
}

// ---- 8. class bound ---------------------------------------------------------

fn class_bounds() -> Check {
    for (q, n) in [(2u64, 1u32), (3, 2), (4, 3), (5, 3), (8, 4), (9, 4)] {
        let b = probe::class_bound(q).map_err(|e| e.to_string())?;
        ensure(b.n == n, || format!("q={q}: n = {} expected {n}", b.n))?;
        let (lo, hi) = (1u64 << (n - 1), 1u64 << n);
        ensure(lo < b.rhs && b.rhs <= hi, || format!("q={q}: {lo} < {} <= {hi} fails", b.rhs))?;
    }
    ensure(probe::class_bound(6).is_err(), || "q=6 accepted".into())?;
    Ok("2->1 3->2 4->3 5->3 8->4 9->4, q=6 rejected".into())
}

// ---- 9. commutative square --------------------------------------------------

fn square() -> Check {
    let engine = IdealEngine::new();
    let mut cfg = ProbeConfig::new(2).unwrap();
    cfg.sample_count = 100;
    cfg.word_len = 8;
    cfg.seed = 9;
    let r = probe::square_check(&cfg, &engine).map_err(|e| e.to_string())?;
    ensure(r.status == ClaimStatus::Pass, || format!("square claim {}", r.status))?;
    ensure(r.details.len() >= 100, || "fewer than 100 words".into())?;
    let ext = GeneratorSet::new(Presentation::Extended, 2).unwrap();
    let mut t_free = 0;
    for d in &r.details {
        let w = Word::parse(d.subject.trim_start_matches("w = "), 2).map_err(|e| e.to_string())?;
        if eval_word(&w, &ext).unwrap().is_t_free() {
            t_free += 1;
            ensure(d.data["exact_zero"] == true, || format!("t-free {w} has nonzero difference"))?;
        }
    }
    ensure(t_free > 0, || "no t-free word sampled".into())?;
    Ok(format!("{} words, {t_free} t-free with literal zero difference", r.details.len()))
}

// ---- 10. engine self-consistency -------------------------------------------

fn corpus() -> Vec<LaurentPoly> {
    let mut out: Vec<LaurentPoly> = [
        "0", "1", "2", "3", "1 - x", "1 - y", "(1-x)^2", "(1-x)*(1-y)", "(1-y)^3", "2*(1-x)", "1 + x", "1 + x + x^2",
        "(1 + x)*(1 - y)", "(1 + x + x^2)*(1 - y)", "x^2 - 1", "x^3 - 1", "x*y - 1", "(1-x)^2*(1-y)", "4*(1-x)",
    ]
    .iter()
    .map(|s| poly(s))
    .collect();
    let gens = GeneratorSet::new(Presentation::Base, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..10 {
        let w = random_reduced_word(&mut rng, 6, 2);
        out.extend(eval_word(&w, &gens).unwrap().minus_identity().entries().iter().cloned());
    }
    out
}

fn engine_consistency() -> Check {
    let engine = IdealEngine::new();
    let specs = [
        IdealSpec::iq(2).unwrap(),
        IdealSpec::jq(2).unwrap(),
        IdealSpec::iq(3).unwrap(),
        IdealSpec::jq(3).unwrap(),
        IdealSpec::jq(4).unwrap(),
        IdealSpec::sigma_pow(2, 2).unwrap(),
    ];
    let corpus = corpus();
    let (mut witnesses, mut certificates) = (0, 0);
    for spec in &specs {
        for p in &corpus {
            let (mut member, mut non_member) = (false, false);
            for b in SearchBox::default_schedule(spec) {
                let v = engine.member(p, spec, &b, false).map_err(|e| e.to_string())?;
                ensure(v.reverify(p, spec), || format!("{p} in {spec}: verdict does not reverify"))?;
                match &v {
                    MembershipVerdict::Member { witness, .. } => {
                        ensure(&witness.recombine(2) == p, || format!("{p}: witness does not recombine"))?;
                        witnesses += 1;
                    }
                    MembershipVerdict::NonMember { .. } => certificates += 1,
                    MembershipVerdict::Unknown { .. } => {}
                }
                member |= v.is_member();
                non_member |= v.is_non_member();
            }
            ensure(!(member && non_member), || format!("{p} is both member and non-member of {spec}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for (spec, b) in [(IdealSpec::jq(2).unwrap(), SearchBox::new(1, 2, 4)), (IdealSpec::iq(3).unwrap(), SearchBox::new(1, 1, 4))] {
        let reference = LatticeBasis::build(&spec, &b).map_err(|e| e.to_string())?;
        let folded: Vec<LaurentPoly> = corpus.iter().map(|p| p.fold_exponents(spec.q.unwrap().q())).collect();
        let answers: Vec<bool> = folded.iter().map(|p| reference.express(p).is_some()).collect();
        for _ in 0..20 {
            let mut gens = generators(&spec, &b).map_err(|e| e.to_string())?;
            gens.shuffle(&mut rng);
            let shuffled = LatticeBasis::from_generators(&spec, &b, gens).map_err(|e| e.to_string())?;
            ensure(
                shuffled.columns.iter().map(|c| &c.vector).eq(reference.columns.iter().map(|c| &c.vector)),
                || format!("{spec}: HNF changed under a generator shuffle"),
            )?;
            for (p, expected) in folded.iter().zip(&answers) {
                ensure(shuffled.express(p).is_some() == *expected, || format!("{p}: answer changed under shuffle"))?;
            }
        }
    }
    Ok(format!("{} pairs, {witnesses} witnesses and {certificates} certificates re-checked, 40 shuffles", specs.len() * corpus.len()))
}

// ---- 11. derived depth ------------------------------------------------------

fn derived_depth() -> Check {
    let engine = IdealEngine::new();
    let mut cfg = ProbeConfig::new(2).unwrap();
    cfg.n_max = 4;
    cfg.sample_count = 10;
    let r = probe::derived_depth_probe(&cfg, &engine).map_err(|e| e.to_string())?;
    let n = r.n_star.ok_or("no level up to 4 was entirely trivial")?;
    let level = &r.per_level[n - 1];
    ensure(n <= 4, || format!("n_star = {n}"))?;
    ensure(level.details.len() == 10 && level.count(ClaimStatus::Pass) == 10, || format!("level {n} not all trivial"))?;
    ensure(level.box_used.is_none_or(|b| b.window <= 8), || "needed a window above 8".into())?;
    Ok(format!("n_star = {n}, class_bound(2) = {}, level {} trivial: {:?}", r.bound.n, n + 1, r.descends))
}

// ---- 12. CLI contract -------------------------------------------------------

fn bf(args: &[&str], cache: Option<&Path>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bf"));
    cmd.args(args).env_remove("BF_CACHE_DIR").env_remove("RUST_LOG");
    if let Some(dir) = cache {
        cmd.env("BF_CACHE_DIR", dir);
    }
    let out = cmd.output().expect("bf runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into(), String::from_utf8_lossy(&out.stderr).into())
}

fn cli_contract() -> Check {
    let expect = |args: &[&str], code: i32| -> Result<String, String> {
        let (got, out, err) = bf(args, None);
        ensure(got == code, || format!("bf {} exited {got}, expected {code}: {err}", args.join(" ")))?;
        Ok(out)
    };
    expect(&["verify", "--samples", "10"], 0)?;
    expect(&["eval", "a", "--q", "2"], 1)?;
    expect(&["verify", "--d-unit", "0", "--window", "1", "--auto-grow", "false", "--n-max", "2", "--samples", "5"], 2)?;
    expect(&["member", "(1-x)^4", "--ideal", "iq", "--q", "4"], 2)?;
    expect(&["verify", "bounds", "--q", "6"], 3)?;
    expect(&["eval", "c"], 3)?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let args = ["member", "(1-x)^2*(1-y)", "--ideal", "iq", "--q", "3"];
    let (c1, first, _) = bf(&args, Some(dir.path()));
    let mut corrupted = 0;
    for entry in std::fs::read_dir(dir.path()).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        if path.extension().is_some_and(|x| x == "json") {
            std::fs::write(&path, "\u{0}garbage").map_err(|e| e.to_string())?;
            corrupted += 1;
        }
    }
    let (c2, second, err) = bf(&args, Some(dir.path()));
    ensure(c1 == 0 && c2 == 0 && corrupted > 0, || format!("cache run exits {c1}/{c2}, {corrupted} files"))?;
    ensure(first == second && err.contains("rebuilding"), || format!("corrupted cache not rebuilt: {err}"))?;

    let json_args = ["verify", "metabelian", "exponent", "square", "--seed", "5", "--samples", "6", "--json"];
    let a: RunReport = serde_json::from_str(&expect(&json_args, 0)?).map_err(|e| e.to_string())?;
    let b: RunReport = serde_json::from_str(&expect(&json_args, 0)?).map_err(|e| e.to_string())?;
    ensure(a.without_timing() == b.without_timing(), || "JSON differs between identical runs".into())?;
    ensure(a.summary_consistent(), || "summary does not match claims".into())?;
    Ok("exit codes 0/1/2/3, cache corruption rebuilt, deterministic JSON".into())
}

// ---- driver -----------------------------------------------------------------

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "exact algebra suite", limit: secs(60), run: exact_algebra },
        Criterion { id: 2, name: "normal form of F(R)", limit: secs(60), run: normal_form },
        Criterion { id: 3, name: "metabelian identity", limit: secs(120), run: metabelian },
        Criterion { id: 4, name: "T-commutativity", limit: secs(10), run: t_commute },
        Criterion { id: 5, name: "order of the M1 image", limit: secs(300), run: order },
        Criterion { id: 6, name: "exponent-q commutators", limit: secs(900), run: exponent },
        Criterion { id: 7, name: "cyclotomic power probe", limit: secs(600), run: theorem_b },
        Criterion { id: 8, name: "class-bound table", limit: secs(1), run: class_bounds },
        Criterion { id: 9, name: "commutative square", limit: secs(600), run: square },
        Criterion { id: 10, name: "engine self-consistency", limit: secs(600), run: engine_consistency },
        Criterion { id: 11, name: "derived-depth evidence", limit: secs(1200), run: derived_depth },
        Criterion { id: 12, name: "CLI contract", limit: secs(300), run: cli_contract },
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for c in criteria.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let started = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or("panic".into()))
        });
        let elapsed = started.elapsed();
        let (ok, note) = match outcome {
            Ok(note) if elapsed <= c.limit => (true, note),
            Ok(note) => (false, format!("{note}; over the {} s limit", c.limit.as_secs())),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] {:>2} {}: {} ({:.2} s, limit {} s)",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            note,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
