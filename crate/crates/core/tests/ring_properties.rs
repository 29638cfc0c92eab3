//! Randomized ring axioms and homomorphism checks for Laurent polynomials.
//!
//! Products are cross-checked against evaluation at random points modulo a
//! large prime, computed here from the raw terms.

use burnside::matrix::MatR;
use burnside::ring::{eval_root_of_unity, ExpVec, LaurentPoly};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

const P: i64 = 1_000_003;
const CASES: u32 = 200;

fn pow_mod(mut b: i64, mut e: i64) -> i64 {
    b = b.rem_euclid(P);
    if e < 0 {
        b = pow_mod(b, P - 2);
        e = -e;
    }
    let mut acc = 1i64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

/// `p` at `x_i = point[i]`, `t = point[k]`, modulo `P`.
fn eval_mod(p: &LaurentPoly, point: &[i64]) -> i64 {
    let k = p.k();
    let mut acc = 0i64;
    for (e, c) in p.terms() {
        let c = (c % BigInt::from(P)).to_i64().unwrap().rem_euclid(P);
        let mut term = c;
        for (i, &v) in point.iter().take(k).enumerate() {
            term = term * pow_mod(v, i64::from(e.x(i))) % P;
        }
        term = term * pow_mod(point[k], i64::from(e.t())) % P;
        acc = (acc + term) % P;
    }
    acc
}

fn arb_poly(k: usize, with_t: bool) -> impl Strategy<Value = LaurentPoly> {
    let term = (proptest::collection::vec(-4i32..=4, k), -3i32..=3, -20i64..=20);
    proptest::collection::vec(term, 0..6).prop_map(move |terms| {
        LaurentPoly::from_terms(
            k,
            terms.into_iter().map(|(xs, t, c)| (ExpVec::from_x_t(&xs, if with_t { t } else { 0 }), c)),
        )
    })
}

fn arb_point() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(1i64..P, 3)
}

fn arb_mat(with_t: bool) -> impl Strategy<Value = MatR> {
    proptest::collection::vec(arb_poly(2, with_t), 4)
        .prop_map(|e| MatR::from_rows(vec![e[..2].to_vec(), e[2..].to_vec()]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn addition_is_an_abelian_group(a in arb_poly(2, true), b in arb_poly(2, true), c in arb_poly(2, true)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &LaurentPoly::zero(2), a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert_eq!(&a - &b, &a + &(-&b));
    }

    #[test]
    fn multiplication_is_commutative_associative_unital(a in arb_poly(2, true), b in arb_poly(2, true), c in arb_poly(2, true)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &LaurentPoly::one(2), a.clone());
        prop_assert!((&a * &LaurentPoly::zero(2)).is_zero());
    }

    #[test]
    fn multiplication_distributes(a in arb_poly(2, true), b in arb_poly(2, true), c in arb_poly(2, true)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn evaluation_mod_prime_is_a_homomorphism(a in arb_poly(2, true), b in arb_poly(2, true), pt in arb_point()) {
        let (ea, eb) = (eval_mod(&a, &pt), eval_mod(&b, &pt));
        prop_assert_eq!(eval_mod(&(&a * &b), &pt), ea * eb % P);
        prop_assert_eq!(eval_mod(&(&a + &b), &pt), (ea + eb) % P);
        prop_assert_eq!(eval_mod(&(&a - &b), &pt), (ea - eb).rem_euclid(P));
    }

    #[test]
    fn powers_match_repeated_products(a in arb_poly(2, true), n in 0u32..4) {
        let mut acc = LaurentPoly::one(2);
        for _ in 0..n {
            acc = &acc * &a;
        }
        prop_assert_eq!(a.pow(n), acc);
    }

    #[test]
    fn augmentation_is_a_ring_map(a in arb_poly(2, true), b in arb_poly(2, true)) {
        prop_assert_eq!((&a * &b).augmentation(), a.augmentation() * b.augmentation());
        prop_assert_eq!((&a + &b).augmentation(), a.augmentation() + b.augmentation());
        let direct: BigInt = a.terms().map(|(_, c)| c.clone()).sum();
        prop_assert_eq!(a.augmentation(), direct);
    }

    #[test]
    fn setting_t_to_one_is_a_ring_map(a in arb_poly(2, true), b in arb_poly(2, true), pt in arb_point()) {
        prop_assert_eq!((&a * &b).set_t_one(), &a.set_t_one() * &b.set_t_one());
        prop_assert_eq!((&a + &b).set_t_one(), &a.set_t_one() + &b.set_t_one());
        prop_assert!(a.set_t_one().is_t_free());
        let at_one = [pt[0], pt[1], 1];
        prop_assert_eq!(eval_mod(&a.set_t_one(), &at_one), eval_mod(&a, &at_one));
    }

    #[test]
    fn t_coefficients_reassemble(a in arb_poly(2, true)) {
        let mut acc = LaurentPoly::zero(2);
        for (j, c) in a.t_coefficients() {
            prop_assert!(c.is_t_free());
            acc = &acc + &c.shift(&ExpVec::zero(2).with_t(j));
        }
        prop_assert_eq!(acc, a);
    }

    #[test]
    fn root_of_unity_evaluation_is_a_ring_map(
        a in arb_poly(2, false),
        b in arb_poly(2, false),
        q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]),
        sa in 0i64..9,
        sb in 0i64..9,
    ) {
        let ev = |p: &LaurentPoly| eval_root_of_unity(p, q, sa, sb).unwrap();
        prop_assert_eq!(ev(&(&a * &b)), ev(&a).checked_mul(&ev(&b)).unwrap());
        prop_assert_eq!(ev(&(&a - &b)), ev(&a).checked_sub(&ev(&b)).unwrap());
    }

    #[test]
    fn folding_preserves_root_of_unity_images(
        a in arb_poly(2, false),
        q in prop::sample::select(vec![2u64, 3, 4, 5]),
        sa in 0i64..5,
        sb in 0i64..5,
    ) {
        let folded = a.fold_exponents(q);
        for (e, _) in folded.terms() {
            prop_assert!((0..q as i32).contains(&e.x(0)) && (0..q as i32).contains(&e.x(1)));
        }
        prop_assert!(eval_root_of_unity(&(&a - &folded), q, sa, sb).unwrap().is_zero());
        prop_assert_eq!(folded.augmentation(), a.augmentation());
    }

    #[test]
    fn display_parses_back(a in arb_poly(2, true)) {
        prop_assert_eq!(LaurentPoly::parse(&a.to_string(), 2).unwrap(), a);
    }

    #[test]
    fn determinant_is_multiplicative(m in arb_mat(true), n in arb_mat(true)) {
        let mn = m.checked_mul(&n).unwrap();
        prop_assert_eq!(mn.det(), &m.det() * &n.det());
    }

    #[test]
    fn matrix_t_reduction_is_multiplicative(m in arb_mat(true), n in arb_mat(true)) {
        let mn = m.checked_mul(&n).unwrap();
        prop_assert_eq!(mn.set_t_one(), m.set_t_one().checked_mul(&n.set_t_one()).unwrap());
    }
}

#[test]
fn zero_polynomial_has_no_terms() {
    assert!(LaurentPoly::zero(2).terms().next().is_none());
    assert!(LaurentPoly::from_terms(2, [(ExpVec::zero(2), 3), (ExpVec::zero(2), -3)]).is_zero());
}
