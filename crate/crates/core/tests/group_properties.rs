use std::collections::HashMap;

use burnside::matrix::{
    abelianization_unit, check_t_commute, eval_ast, eval_word, generator_m, generator_t, un_form_extract, GeneratorSet,
    MatR, Presentation,
};
use burnside::ring::LaurentPoly;
use burnside::word::{derived_sample, derived_sample_ast, random_reduced_word, reduced_words, Word};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn base() -> GeneratorSet {
    GeneratorSet::new(Presentation::Base, 2).unwrap()
}

fn extended() -> GeneratorSet {
    GeneratorSet::new(Presentation::Extended, 2).unwrap()
}

#[test]
fn short_reduced_words_have_distinct_images_over_m1_m2t() {
    let gens = extended();
    let words = reduced_words(6, 2);
    assert_eq!(words.len(), 1 + 4 * (3usize.pow(6) - 1) / 2);
    let mut seen: HashMap<MatR, Word> = HashMap::new();
    for w in words {
        let m = eval_word(&w, &gens).unwrap();
        if let Some(prev) = seen.insert(m, w.clone()) {
            panic!("{prev} and {w} evaluate to the same matrix");
        }
    }
}

#[test]
fn generator_inverses_are_exact() {
    for gens in [base(), extended()] {
        for i in 0..2 {
            let g = gens.generator(i);
            assert!(g.checked_mul(&g.inverse().unwrap()).unwrap().is_identity());
        }
    }
}

#[test]
fn random_words_have_the_normal_form() {
    let gens = base();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let len = rng.gen_range(0..=10);
        let w = random_reduced_word(&mut rng, len, 2);
        let m = eval_word(&w, &gens).unwrap();
        let form = un_form_extract(&m).unwrap_or_else(|e| panic!("{w}: {e}"));
        assert_eq!(form.u, abelianization_unit(&w, 2), "{w}");
        assert_eq!(m.trace(), &LaurentPoly::one(2) + &form.u.to_poly());
        assert!(form.row_condition_holds());
        assert_eq!(form.reconstruct(), m);
    }
}

#[test]
fn double_commutators_vanish_over_r() {
    let gens = base();
    for w in derived_sample(2, 50, 3, 4, 2).unwrap() {
        assert!(eval_word(&w, &gens).unwrap().is_identity(), "{w}");
    }
}

#[test]
fn double_commutators_need_not_vanish_over_r_t() {
    let w = Word::parse("[[a,b],[ab,ba]]", 2).unwrap();
    assert!(!w.is_empty());
    assert!(!eval_word(&w, &extended()).unwrap().is_identity());
}

#[test]
fn structural_evaluation_matches_flat_evaluation() {
    let gens = extended();
    for (i, ast) in derived_sample_ast(2, 10, 9, 3, 2).unwrap().iter().enumerate() {
        let flat = eval_word(&ast.flatten(), &gens).unwrap();
        assert_eq!(eval_ast(ast, &gens, None).unwrap(), flat, "sample {i}");
        assert_eq!(eval_ast(ast, &gens, Some(2)).unwrap(), flat.fold(2), "sample {i}");
    }
}

#[test]
fn t_matrices_commute_for_k_up_to_four() {
    for k in 2..=4 {
        assert!(check_t_commute(k).unwrap());
        for i in 2..=k {
            for j in 2..=k {
                let (a, b) = (generator_t(i, k).unwrap(), generator_t(j, k).unwrap());
                assert_eq!(a.checked_mul(&b).unwrap(), b.checked_mul(&a).unwrap());
            }
        }
    }
}

#[test]
fn m1_powers_follow_the_closed_form() {
    let m1 = generator_m(1, 2).unwrap();
    for j in 0..6u32 {
        let geo = LaurentPoly::from_terms(2, (0..j as i32).map(|i| (burnside::ring::ExpVec::from_x(&[i, 0]), 1)));
        let expected = MatR::from_rows(vec![
            vec![LaurentPoly::one(2), &LaurentPoly::one_minus_var(2, 1) * &geo],
            vec![LaurentPoly::zero(2), LaurentPoly::var(2, 0).pow(j)],
        ])
        .unwrap();
        assert_eq!(m1.pow(j), expected, "j={j}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_is_a_homomorphism(seed in any::<u64>(), la in 0usize..8, lb in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, v) = (random_reduced_word(&mut rng, la, 2), random_reduced_word(&mut rng, lb, 2));
        let gens = extended();
        let (mu, mv) = (eval_word(&u, &gens).unwrap(), eval_word(&v, &gens).unwrap());
        prop_assert_eq!(eval_word(&u.concat(&v), &gens).unwrap(), mu.checked_mul(&mv).unwrap());
        prop_assert_eq!(eval_word(&u.inverse(), &gens).unwrap(), mu.inverse().unwrap());
        prop_assert_eq!(eval_word(&u, &gens).unwrap().set_t_one(), eval_word(&u, &base()).unwrap());
    }
}
