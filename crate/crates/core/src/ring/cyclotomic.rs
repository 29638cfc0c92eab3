//! Prime powers, `Φ_q` for `q = p^e`, and arithmetic in `Z[ζ] = Z[z]/Φ_q(z)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{LaurentPoly, RingError, Result, UnitMonomial};

/// `q = p^e` with `p` prime and `e ≥ 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimePower {
    q: u64,
    p: u64,
    e: u32,
}

impl PrimePower {
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(RingError::NotPrimePower(q));
        }
        let p = (2..=q)
            .take_while(|d| d * d <= q)
            .find(|d| q.is_multiple_of(*d))
            .unwrap_or(q);
        let mut rest = q;
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if rest != 1 {
            return Err(RingError::NotPrimePower(q));
        }
        Ok(PrimePower { q, p, e })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Euler's totient `p^e - p^(e-1)`, the degree of `Φ_q`.
    pub fn phi(&self) -> usize {
        (self.q - self.q / self.p) as usize
    }
}

impl TryFrom<u64> for PrimePower {
    type Error = RingError;
    fn try_from(q: u64) -> Result<Self> {
        PrimePower::new(q)
    }
}

impl From<PrimePower> for u64 {
    fn from(q: PrimePower) -> u64 {
        q.q
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)
    }
}

/// Coefficients (ascending) of `Φ_q(z) = Σ_{i<p} z^{i·p^(e-1)}`.
pub fn phi_q(q: u64) -> Result<Vec<BigInt>> {
    let q = PrimePower::new(q)?;
    let stride = (q.q / q.p) as usize;
    let mut coeffs = vec![BigInt::zero(); q.phi() + 1];
    for i in 0..q.p as usize {
        coeffs[i * stride] = BigInt::one();
    }
    Ok(coeffs)
}

/// Element of `Z[ζ_q]` in the power basis `1, ζ, .., ζ^(φ(q)-1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycInt {
    q: PrimePower,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn new(q: PrimePower, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != q.phi() {
            return Err(RingError::CycLength { expected: q.phi(), got: coeffs.len() });
        }
        Ok(CycInt { q, coeffs })
    }

    pub fn zero(q: PrimePower) -> Self {
        CycInt { q, coeffs: vec![BigInt::zero(); q.phi()] }
    }

    pub fn from_int(q: PrimePower, c: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(q);
        out.coeffs[0] = c.into();
        out
    }

    pub fn one(q: PrimePower) -> Self {
        Self::from_int(q, 1)
    }

    /// `ζ^n` for any integer `n`, reduced.
    pub fn zeta_pow(q: PrimePower, n: i64) -> Self {
        let n = n.rem_euclid(q.q as i64) as usize;
        let mut raw = vec![BigInt::zero(); n + 1];
        raw[n] = BigInt::one();
        Self::reduce(q, raw)
    }

    /// Reduces an arbitrary-length coefficient vector modulo `Φ_q`.
    pub fn reduce(q: PrimePower, mut raw: Vec<BigInt>) -> Self {
        let phi = q.phi();
        let stride = (q.q / q.p) as usize;
        // z^d ≡ -Σ_{i=0}^{p-2} z^{d - φ + i·stride}
        for d in (phi..raw.len()).rev() {
            if raw[d].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut raw[d]);
            let base = d - phi;
            for i in 0..(q.p as usize - 1) {
                raw[base + i * stride] -= &c;
            }
        }
        raw.resize(phi, BigInt::zero());
        CycInt { q, coeffs: raw }
    }

    pub fn modulus(&self) -> PrimePower {
        self.q
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn same_modulus(&self, other: &Self) -> Result<()> {
        if self.q != other.q {
            return Err(RingError::CycModulusMismatch { left: self.q.q, right: other.q.q });
        }
        if self.coeffs.len() != other.coeffs.len() {
            return Err(RingError::CycLength { expected: self.coeffs.len(), got: other.coeffs.len() });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycInt { q: self.q, coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycInt { q: self.q, coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        let n = self.coeffs.len();
        let mut raw = vec![BigInt::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        Ok(Self::reduce(self.q, raw))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        CycInt { q: self.q, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplication by `ζ^n`.
    pub fn mul_zeta_pow(&self, n: i64) -> Self {
        self.checked_mul(&Self::zeta_pow(self.q, n)).expect("same modulus")
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if wrote {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}*z^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// The q-cyclotomic element `1 + u + .. + u^(q-1)` of a positive unit `u`.
pub fn cyc_element(q: u64, u: &UnitMonomial) -> Result<LaurentPoly> {
    let q = PrimePower::new(q)?;
    if !u.is_positive() {
        return Err(RingError::NotPositiveUnit(u.to_string()));
    }
    let k = u.exps.k();
    Ok(LaurentPoly::from_terms(k, (0..q.q as i32).map(|i| (u.exps.scale(i), 1))))
}

/// Image of a t-free `p ∈ Z[x^±1, y^±1]` under `x ↦ ζ^a`, `y ↦ ζ^b`.
pub fn eval_root_of_unity(p: &LaurentPoly, q: u64, a: i64, b: i64) -> Result<CycInt> {
    let q = PrimePower::new(q)?;
    if p.k() != 2 {
        return Err(RingError::RequiresTwoGenerators(p.k()));
    }
    if !p.is_t_free() {
        return Err(RingError::ContainsT(p.to_string()));
    }
    let modulus = q.q as i64;
    let mut raw = vec![BigInt::zero(); q.q as usize];
    for (e, c) in p.terms() {
        let n = (i64::from(e.x(0)) * a + i64::from(e.x(1)) * b).rem_euclid(modulus);
        raw[n as usize] += c;
    }
    Ok(CycInt::reduce(q, raw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ExpVec;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn unit(xs: &[i32]) -> UnitMonomial {
        UnitMonomial::positive(ExpVec::from_x(xs))
    }

    fn pp(q: u64) -> PrimePower {
        PrimePower::new(q).unwrap()
    }

    #[test]
    fn prime_power_factorisation() {
        for (q, p, e) in [(2, 2, 1), (4, 2, 2), (8, 2, 3), (9, 3, 2), (25, 5, 2), (7, 7, 1), (49, 7, 2)] {
            let pw = pp(q);
            assert_eq!((pw.p(), pw.e()), (p, e), "q={q}");
        }
        for bad in [0, 1, 6, 12, 36, 100] {
            assert!(PrimePower::new(bad).is_err(), "q={bad}");
        }
    }

    #[test]
    fn phi_q_examples() {
        assert_eq!(phi_q(2).unwrap(), ints(&[1, 1]));
        assert_eq!(phi_q(3).unwrap(), ints(&[1, 1, 1]));
        assert_eq!(phi_q(4).unwrap(), ints(&[1, 0, 1]));
        assert_eq!(phi_q(9).unwrap(), ints(&[1, 0, 0, 1, 0, 0, 1]));
        assert!(phi_q(6).is_err());
    }

    #[test]
    fn cycint_mul_examples() {
        let q4 = pp(4);
        let z = CycInt::zeta_pow(q4, 1);
        let z2 = CycInt::zeta_pow(q4, 2);
        assert_eq!(z2.coeffs(), &ints(&[-1, 0])[..]);
        assert_eq!(z.checked_mul(&z2).unwrap().coeffs(), &ints(&[0, -1])[..]);

        let q3 = pp(3);
        let b = CycInt::new(q3, ints(&[4, -7])).unwrap();
        assert_eq!(CycInt::one(q3).checked_mul(&b).unwrap(), b);
        let z = CycInt::zeta_pow(q3, 1);
        assert_eq!(z.checked_mul(&z).unwrap().coeffs(), &ints(&[-1, -1])[..]);

        assert!(CycInt::new(q3, ints(&[1, 2, 3])).is_err());
        assert!(z.checked_mul(&CycInt::one(q4)).is_err());
    }

    #[test]
    fn cyc_element_examples() {
        let x = unit(&[1, 0]);
        assert_eq!(cyc_element(2, &x).unwrap(), LaurentPoly::parse("1 + x", 2).unwrap());
        assert_eq!(cyc_element(2, &unit(&[0, 0])).unwrap(), LaurentPoly::constant(2, 2));
        assert_eq!(
            cyc_element(3, &unit(&[1, -1])).unwrap(),
            LaurentPoly::parse("1 + x*y^-1 + x^2*y^-2", 2).unwrap()
        );
        assert!(cyc_element(6, &x).is_err());
        let neg = UnitMonomial { sign: -1, exps: ExpVec::from_x(&[1, 0]) };
        assert!(matches!(cyc_element(2, &neg), Err(RingError::NotPositiveUnit(_))));
    }

    #[test]
    fn root_of_unity_examples() {
        let p = LaurentPoly::parse("1 - x", 2).unwrap();
        assert_eq!(eval_root_of_unity(&p, 2, 1, 0).unwrap(), CycInt::from_int(pp(2), 2));
        let c = cyc_element(3, &unit(&[1, 0])).unwrap();
        assert!(eval_root_of_unity(&c, 3, 1, 0).unwrap().is_zero());
        let five = LaurentPoly::constant(2, 5);
        assert_eq!(eval_root_of_unity(&five, 3, 0, 0).unwrap(), CycInt::from_int(pp(3), 5));
        let withx = LaurentPoly::parse("x^-1", 2).unwrap();
        assert_eq!(eval_root_of_unity(&withx, 4, 1, 0).unwrap(), CycInt::zeta_pow(pp(4), 3));
        assert!(eval_root_of_unity(&LaurentPoly::parse("t", 2).unwrap(), 3, 1, 1).is_err());
    }
}
