//! Non-membership certificates.
//!
//! Any ring homomorphism `φ` maps an ideal into the ideal generated by the
//! images of its generators. Two families are used:
//!
//! * augmentation `ε`: `ε(Σ) = 0`, `ε(I(q)) ⊆ qZ`;
//! * `x ↦ ζ^a, y ↦ ζ^b` into `Z[ζ_q]`: `φ(cyc_q(u)) ∈ {0, q}`, so
//!   `φ(I(q)) ⊆ q·Z[ζ]` and `φ(J(q)) ⊆ q·(1 - ζ^a, 1 - ζ^b)`.
//!
//! The image ideal is laid out as a `Z`-lattice in `Z^φ(q)` and checked by
//! HNF solve; verification always rebuilds that lattice from scratch.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde_json::{json, Value};

use super::hnf::{self, Echelon, SparseVec};
use super::{IdealError, IdealKind, IdealSpec};
use crate::ring::{eval_root_of_unity, CycInt, LaurentPoly, PrimePower};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Certificate {
    /// `ε(p) = value`, not divisible by `modulus`; modulus 0 means `value ≠ 0`.
    AugmentationValue { value: BigInt, modulus: BigInt },
    /// Image of `p` under `x ↦ ζ^a, y ↦ ζ^b` lies outside the image ideal.
    RootOfUnity { q: PrimePower, a: i64, b: i64, image: CycInt },
}

impl Certificate {
    /// Independently re-checks the certificate against `p` and `spec`.
    pub fn verify(&self, p: &LaurentPoly, spec: &IdealSpec) -> bool {
        if !p.is_t_free() || spec.validate().is_err() {
            return false;
        }
        match self {
            Certificate::AugmentationValue { value, modulus } => {
                let eps: BigInt = p.terms().map(|(_, c)| c).sum();
                eps == *value && *modulus == augmentation_modulus(spec) && !divisible(value, modulus)
            }
            Certificate::RootOfUnity { q, a, b, image } => {
                if spec.q != Some(*q) || matches!(spec.kind, IdealKind::SigmaPow { .. }) {
                    return false;
                }
                let n = q.q() as i64;
                if a.rem_euclid(n) == 0 && b.rem_euclid(n) == 0 {
                    return false;
                }
                match eval_root_of_unity(p, q.q(), *a, *b) {
                    Ok(fresh) => fresh == *image && !in_image_ideal(image, spec.kind, *a, *b),
                    Err(_) => false,
                }
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Certificate::AugmentationValue { value, modulus } => json!({
                "kind": "augmentation_value",
                "value": value.to_string(),
                "modulus": modulus.to_string(),
            }),
            Certificate::RootOfUnity { q, a, b, image } => json!({
                "kind": "root_of_unity",
                "q": q.q(),
                "a": a,
                "b": b,
                "image": image.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            }),
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::AugmentationValue { value, modulus } if modulus.is_zero() => {
                write!(f, "AugmentationValue: eps = {value} != 0")
            }
            Certificate::AugmentationValue { value, modulus } => {
                write!(f, "AugmentationValue: eps = {value}, not divisible by {modulus}")
            }
            Certificate::RootOfUnity { q, a, b, image } => {
                write!(f, "RootOfUnity(a={a}, b={b}): x -> z^{a}, y -> z^{b} in Z[z]/Phi_{q}, image {image}")
            }
        }
    }
}

fn augmentation_modulus(spec: &IdealSpec) -> BigInt {
    match (spec.kind, spec.q) {
        (IdealKind::Iq, Some(q)) => BigInt::from(q.q()),
        _ => BigInt::zero(),
    }
}

fn divisible(value: &BigInt, modulus: &BigInt) -> bool {
    if modulus.is_zero() {
        value.is_zero()
    } else {
        value.is_multiple_of(modulus)
    }
}

/// Is `image` in the image ideal of `kind` under `x ↦ ζ^a, y ↦ ζ^b`?
fn in_image_ideal(image: &CycInt, kind: IdealKind, a: i64, b: i64) -> bool {
    let q = image.modulus();
    let scale = BigInt::from(q.q());
    let gens: Vec<CycInt> = match kind {
        IdealKind::Iq => vec![CycInt::from_int(q, scale)],
        IdealKind::Jq => [a, b]
            .iter()
            .map(|&n| CycInt::one(q).checked_sub(&CycInt::zeta_pow(q, n)).expect("same modulus").scale(&scale))
            .collect(),
        IdealKind::SigmaPow { .. } => unreachable!("no root-of-unity certificates for powers of Σ"),
    };
    let mut ech = Echelon::new(false);
    let mut id = 0;
    for g in &gens {
        for i in 0..q.phi() as i64 {
            ech.insert(SparseVec::from_dense(g.mul_zeta_pow(i).coeffs()), id);
            id += 1;
        }
    }
    let (cols, _) = ech.finish();
    hnf::solve(&cols, &SparseVec::from_dense(image.coeffs())).is_some()
}

/// Tries every certificate family; `None` means no obstruction was found,
/// which says nothing about membership.
pub fn certify_nonmember(p: &LaurentPoly, spec: &IdealSpec) -> Result<Option<Certificate>, IdealError> {
    spec.validate()?;
    if !p.is_t_free() {
        return Err(IdealError::ContainsT(p.to_string()));
    }
    let value = p.augmentation();
    let modulus = augmentation_modulus(spec);
    if !divisible(&value, &modulus) {
        return Ok(Some(Certificate::AugmentationValue { value, modulus }));
    }
    let Some(q) = spec.q else { return Ok(None) };
    if matches!(spec.kind, IdealKind::SigmaPow { .. }) {
        return Ok(None);
    }
    let n = q.q() as i64;
    for a in 0..n {
        for b in 0..n {
            if a == 0 && b == 0 {
                continue;
            }
            let image = eval_root_of_unity(p, q.q(), a, b)?;
            if !in_image_ideal(&image, spec.kind, a, b) {
                return Ok(Some(Certificate::RootOfUnity { q, a, b, image }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s, 2).unwrap()
    }

    #[test]
    fn one_minus_x_in_j2_fires_root_of_unity() {
        let spec = IdealSpec::jq(2).unwrap();
        let c = certify_nonmember(&p("1 - x"), &spec).unwrap().unwrap();
        let Certificate::RootOfUnity { a, b, ref image, .. } = c else { panic!("{c:?}") };
        assert_eq!((a, b), (1, 0));
        assert_eq!(image.coeffs(), &[BigInt::from(2)]);
        assert!(c.verify(&p("1 - x"), &spec));
    }

    #[test]
    fn unit_fails_augmentation_for_jq() {
        let spec = IdealSpec::jq(2).unwrap();
        let c = certify_nonmember(&p("x"), &spec).unwrap().unwrap();
        assert_eq!(c, Certificate::AugmentationValue { value: BigInt::one(), modulus: BigInt::zero() });
        assert!(c.verify(&p("x"), &spec));
    }

    #[test]
    fn one_fails_augmentation_mod_q_for_iq() {
        let spec = IdealSpec::iq(3).unwrap();
        let c = certify_nonmember(&p("1"), &spec).unwrap().unwrap();
        assert_eq!(c, Certificate::AugmentationValue { value: BigInt::one(), modulus: BigInt::from(3) });
    }

    #[test]
    fn members_get_no_certificate() {
        let spec = IdealSpec::jq(2).unwrap();
        assert!(certify_nonmember(&p("(1 - x)*(1 + x)"), &spec).unwrap().is_none());
        let spec = IdealSpec::iq(3).unwrap();
        assert!(certify_nonmember(&p("(1 - x)^2"), &spec).unwrap().is_none());
    }

    #[test]
    fn x_minus_one_in_j3_fires_root_of_unity() {
        let spec = IdealSpec::jq(3).unwrap();
        let c = certify_nonmember(&p("x - 1"), &spec).unwrap().unwrap();
        assert!(matches!(c, Certificate::RootOfUnity { .. }));
        assert!(c.verify(&p("x - 1"), &spec));
    }

    #[test]
    fn tampered_certificates_fail_verification() {
        let spec = IdealSpec::jq(2).unwrap();
        let c = certify_nonmember(&p("1 - x"), &spec).unwrap().unwrap();
        assert!(!c.verify(&p("2 - 2*x"), &spec));
        assert!(!c.verify(&p("1 - x"), &IdealSpec::jq(3).unwrap()));
        let bogus = Certificate::AugmentationValue { value: BigInt::zero(), modulus: BigInt::zero() };
        assert!(!bogus.verify(&p("1 - x"), &spec));
    }
}
