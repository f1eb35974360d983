//! Exact arithmetic in the ring of cyclotomic integers `Z[ζ_e]`.
//!
//! Values are kept in the canonical residue basis `{1, ζ, …, ζ^{φ(e)−1}}`
//! modulo the e-th cyclotomic polynomial, so equality is a plain coefficient
//! compare. One conductor is used throughout a character table (the group
//! exponent); mixing conductors is an error, not an implicit coercion.
//!
//! The coefficient type is generic over [`Coeff`]. The default instantiation
//! uses `i64` with checked arithmetic (overflow is reported, never wrapped);
//! `num_bigint::BigInt` gives unbounded headroom at some cost.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, One, ToPrimitive, Zero};
use thiserror::Error;

/// Integer coefficient ring for cyclotomic values.
///
/// Implemented by `i64`, `i128` and `num_bigint::BigInt`. The checked
/// operations let the fixed-width instantiations detect overflow instead of
/// wrapping; the big-integer instantiation never fails them.
pub trait Coeff:
    Clone
    + Eq
    + std::hash::Hash
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
{
}

impl<T> Coeff for T where
    T: Clone
        + Eq
        + std::hash::Hash
        + fmt::Debug
        + fmt::Display
        + PartialOrd
        + Zero
        + One
        + std::ops::Neg<Output = T>
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
{
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u64, right: u64 },
    #[error("integer overflow in cyclotomic arithmetic (conductor {conductor})")]
    Overflow { conductor: u64 },
}

/// The e-th cyclotomic polynomial Φ_e, monic of degree φ(e).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloPoly {
    conductor: u64,
    coeffs: Vec<i64>,
}

impl CycloPoly {
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Coefficients in ascending degree order; the leading coefficient is 1.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Exact quotient of integer polynomials; panics if the division is inexact.
/// Only used with monic divisors arising from cyclotomic factorizations.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    assert!(*den.last().expect("nonempty divisor") == 1, "divisor must be monic");
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert!(rem.len() > dd);
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (t, &dc) in den.iter().enumerate() {
                rem[i + t] -= c * dc;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
    quot
}

fn cyclo_poly_cache() -> &'static Mutex<HashMap<u64, Arc<CycloPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycloPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Computes Φ_e by dividing x^e − 1 by the product of Φ_d over proper
/// divisors d of e. Results are memoized process-wide.
pub fn cyclotomic_polynomial(e: u64) -> Arc<CycloPoly> {
    assert!(e >= 1, "conductor must be positive");
    if let Some(p) = cyclo_poly_cache().lock().unwrap().get(&e) {
        return Arc::clone(p);
    }
    // x^e − 1
    let mut num = vec![0i64; e as usize + 1];
    num[0] = -1;
    num[e as usize] = 1;
    let mut quot = num;
    for d in 1..e {
        if e % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            quot = poly_div_exact(&quot, phi_d.coeffs());
        }
    }
    let poly = Arc::new(CycloPoly { conductor: e, coeffs: quot });
    cyclo_poly_cache()
        .lock()
        .unwrap()
        .entry(e)
        .or_insert_with(|| Arc::clone(&poly));
    poly
}

/// Euler's totient, the degree of Φ_e.
pub fn euler_phi(e: u64) -> usize {
    cyclotomic_polynomial(e).degree()
}

/// An element of `Z[ζ_e]` in canonical form: `coeffs[i]` is the coefficient of
/// ζ^i in the residue basis modulo Φ_e, with `coeffs.len() == φ(e)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cyclo<C: Coeff> {
    conductor: u64,
    coeffs: Vec<C>,
}

impl<C: Coeff> Cyclo<C> {
    /// The zero element of `Z[ζ_e]`.
    pub fn zero(e: u64) -> Self {
        Cyclo { conductor: e, coeffs: vec![C::zero(); euler_phi(e)] }
    }

    /// Embeds the rational integer `n` with conductor `e`.
    pub fn integer(e: u64, n: i64) -> Self {
        let mut c = Self::zero(e);
        c.coeffs[0] = C::from_i64(n).expect("integer embeds in coefficient type");
        c
    }

    /// ζ_e^k, reduced to canonical form. The exponent is taken mod e.
    pub fn root_power(e: u64, k: u64) -> Self {
        let k = (k % e) as usize;
        let mut raw = vec![C::zero(); k + 1];
        raw[k] = C::one();
        Self::reduce(e, raw).expect("single root power cannot overflow")
    }

    /// Builds a value from raw polynomial coefficients in ζ (any degree),
    /// reducing modulo Φ_e.
    pub fn from_poly(e: u64, raw: Vec<C>) -> Result<Self, CycloError> {
        Self::reduce(e, raw)
    }

    fn reduce(e: u64, mut raw: Vec<C>) -> Result<Self, CycloError> {
        let phi = cyclotomic_polynomial(e);
        let deg = phi.degree();
        let overflow = || CycloError::Overflow { conductor: e };
        if raw.len() < deg {
            raw.resize(deg, C::zero());
        }
        // Long division by the monic modulus, highest term first.
        for i in (deg..raw.len()).rev() {
            if raw[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut raw[i], C::zero());
            for (t, &pc) in phi.coeffs().iter().enumerate().take(deg) {
                if pc == 0 {
                    continue;
                }
                let pc_c = C::from_i64(pc).ok_or_else(overflow)?;
                let prod = c.checked_mul(&pc_c).ok_or_else(overflow)?;
                raw[i - deg + t] = raw[i - deg + t].checked_sub(&prod).ok_or_else(overflow)?;
            }
        }
        raw.truncate(deg);
        Ok(Cyclo { conductor: e, coeffs: raw })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True when the value lies in the image of Z (all non-constant
    /// coordinates vanish). Conductors are never reduced, so a rational
    /// value keeps its ambient conductor.
    pub fn is_integer(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational integer this value embeds, if any.
    pub fn as_integer(&self) -> Option<&C> {
        if self.is_integer() {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_conductor(&self, other: &Self) -> Result<(), CycloError> {
        if self.conductor != other.conductor {
            return Err(CycloError::ConductorMismatch {
                left: self.conductor,
                right: other.conductor,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_conductor(other)?;
        let overflow = || CycloError::Overflow { conductor: self.conductor };
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(b).ok_or_else(overflow))
            .collect::<Result<_, _>>()?;
        Ok(Cyclo { conductor: self.conductor, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_conductor(other)?;
        let overflow = || CycloError::Overflow { conductor: self.conductor };
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_sub(b).ok_or_else(overflow))
            .collect::<Result<_, _>>()?;
        Ok(Cyclo { conductor: self.conductor, coeffs })
    }

    pub fn neg(&self) -> Self {
        Cyclo {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c.clone().neg()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_conductor(other)?;
        let overflow = || CycloError::Overflow { conductor: self.conductor };
        let n = self.coeffs.len();
        if n == 0 {
            return Ok(self.clone());
        }
        let mut raw = vec![C::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a.checked_mul(b).ok_or_else(overflow)?;
                raw[i + j] = raw[i + j].checked_add(&prod).ok_or_else(overflow)?;
            }
        }
        Self::reduce(self.conductor, raw)
    }

    /// Complex conjugation: substitutes ζ ↦ ζ^{e−1} and re-canonicalizes.
    pub fn conj(&self) -> Self {
        let e = self.conductor;
        let mut raw = vec![C::zero(); e as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let idx = ((e as usize) - i) % e as usize;
            raw[idx] = raw[idx].checked_add(c).expect("coefficient permutation cannot overflow");
        }
        Self::reduce(e, raw).expect("conjugation cannot overflow")
    }

    /// Numeric embedding at ζ_e = exp(2πi/e). Display/diagnostics only.
    pub fn to_complex(&self) -> (f64, f64) {
        let e = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let cf = c.to_f64().unwrap_or(f64::NAN);
            let theta = 2.0 * std::f64::consts::PI * (i as f64) / e;
            re += cf * theta.cos();
            im += cf * theta.sin();
        }
        (re, im)
    }
}

impl<C: Coeff> fmt::Display for Cyclo<C> {
    /// Renders in ζ-notation, e.g. `1 - ζ6 + 2ζ6^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zero = C::zero();
        let one = C::one();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = *c < zero;
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = if negative { c.clone().neg() } else { c.clone() };
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if mag != one {
                    write!(f, "{mag}")?;
                }
                write!(f, "\u{3b6}{}", self.conductor)?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Serialized form `{ "e": e, "coeffs": [c0, c1, ...] }`, fixed to the `i64`
/// instantiation used by the table JSON schema.
impl serde::Serialize for Cyclo<i64> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Cyclo", 2)?;
        s.serialize_field("e", &self.conductor)?;
        s.serialize_field("coeffs", &self.coeffs)?;
        s.end()
    }
}

impl<'de> serde::Deserialize<'de> for Cyclo<i64> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            e: u64,
            coeffs: Vec<i64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.e == 0 {
            return Err(serde::de::Error::custom("conductor must be positive"));
        }
        let expected = euler_phi(raw.e);
        if raw.coeffs.len() != expected {
            return Err(serde::de::Error::custom(format!(
                "expected {} coefficients for conductor {}, got {}",
                expected,
                raw.e,
                raw.coeffs.len()
            )));
        }
        Ok(Cyclo { conductor: raw.e, coeffs: raw.coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type C64 = Cyclo<i64>;

    #[test]
    fn cyclotomic_polynomial_small_cases() {
        assert_eq!(cyclotomic_polynomial(1).coeffs(), &[-1, 1]);
        assert_eq!(cyclotomic_polynomial(2).coeffs(), &[1, 1]);
        assert_eq!(cyclotomic_polynomial(4).coeffs(), &[1, 0, 1]);
        // Divide x^6 − 1 by Φ1·Φ2·Φ3 by hand: x² − x + 1.
        assert_eq!(cyclotomic_polynomial(6).coeffs(), &[1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12).coeffs(), &[1, 0, -1, 0, 1]);
    }

    #[test]
    fn phi_degree_matches_totient() {
        for (e, phi) in [(1, 1), (2, 1), (3, 2), (8, 4), (9, 6), (30, 8), (105, 48)] {
            assert_eq!(euler_phi(e), phi, "phi({e})");
        }
    }

    #[test]
    fn cyclotomic_factors_multiply_to_x_pow_e_minus_one() {
        for e in [1u64, 2, 6, 12, 30, 36] {
            let mut prod = vec![1i64];
            for d in 1..=e {
                if e % d == 0 {
                    let phi = cyclotomic_polynomial(d);
                    let mut next = vec![0i64; prod.len() + phi.degree()];
                    for (i, &a) in prod.iter().enumerate() {
                        for (j, &b) in phi.coeffs().iter().enumerate() {
                            next[i + j] += a * b;
                        }
                    }
                    prod = next;
                }
            }
            let mut want = vec![0i64; e as usize + 1];
            want[0] = -1;
            want[e as usize] = 1;
            assert_eq!(prod, want, "e={e}");
        }
    }

    #[test]
    fn primitive_cube_roots_sum_to_minus_one() {
        let a = C64::root_power(3, 1);
        let b = C64::root_power(3, 2);
        assert_eq!(a.add(&b).unwrap(), C64::integer(3, -1));
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = C64::root_power(4, 1);
        assert_eq!(i.mul(&i).unwrap(), C64::integer(4, -1));
    }

    #[test]
    fn fifth_roots_geometric_sum_vanishes() {
        let mut acc = C64::integer(5, 1);
        for k in 1..5 {
            acc = acc.add(&C64::root_power(5, k)).unwrap();
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn root_power_wraps_modulo_conductor() {
        for e in [1u64, 2, 6, 12, 17] {
            for k in 0..(2 * e) {
                assert_eq!(C64::root_power(e, k), C64::root_power(e, k % e));
            }
        }
    }

    #[test]
    fn conductor_mismatch_is_reported() {
        let a = C64::integer(3, 1);
        let b = C64::integer(4, 1);
        assert!(matches!(a.add(&b), Err(CycloError::ConductorMismatch { .. })));
        assert!(matches!(a.mul(&b), Err(CycloError::ConductorMismatch { .. })));
    }

    #[test]
    fn overflow_is_detected_not_wrapped() {
        let mut a = C64::integer(4, 1);
        a.coeffs[0] = i64::MAX;
        assert!(matches!(a.add(&a), Err(CycloError::Overflow { .. })));
        assert!(matches!(a.mul(&a), Err(CycloError::Overflow { .. })));
    }

    #[test]
    fn bigint_instantiation_has_unbounded_headroom() {
        let mut a: Cyclo<BigInt> = Cyclo::integer(4, 1);
        a.coeffs[0] = BigInt::from(i64::MAX);
        let sq = a.mul(&a).unwrap();
        assert_eq!(*sq.as_integer().unwrap(), BigInt::from(i64::MAX) * i64::MAX);
    }

    #[test]
    fn to_complex_matches_unit_circle() {
        for e in 1..=64u64 {
            for k in [0, 1, e / 2, e - 1] {
                let v = C64::root_power(e, k);
                let (re, im) = v.to_complex();
                let theta = 2.0 * std::f64::consts::PI * (k % e) as f64 / e as f64;
                assert!((re - theta.cos()).abs() < 1e-10, "e={e} k={k}");
                assert!((im - theta.sin()).abs() < 1e-10, "e={e} k={k}");
            }
        }
    }

    #[test]
    fn conjugation_is_an_involution_on_roots() {
        for e in [1u64, 2, 3, 8, 12, 30] {
            for k in 0..e {
                let v = C64::root_power(e, k);
                assert_eq!(v.conj(), C64::root_power(e, (e - k) % e));
                assert_eq!(v.conj().conj(), v);
            }
        }
    }

    #[test]
    fn norm_has_nonnegative_real_embedding() {
        let v = C64::root_power(12, 5)
            .add(&C64::integer(12, 3))
            .unwrap()
            .sub(&C64::root_power(12, 2))
            .unwrap();
        let (re, im) = v.conj().mul(&v).unwrap().to_complex();
        assert!(re >= -1e-9);
        assert!(im.abs() < 1e-9);
    }

    #[test]
    fn zeta_display_notation() {
        let v = C64::root_power(6, 1)
            .add(&C64::root_power(6, 1))
            .unwrap()
            .sub(&C64::integer(6, 1))
            .unwrap();
        assert_eq!(v.to_string(), "-1 + 2\u{3b6}6");
        assert_eq!(C64::zero(6).to_string(), "0");
        assert_eq!(C64::root_power(8, 3).to_string(), "\u{3b6}8^3");
    }

    #[test]
    fn serde_round_trip_and_shape() {
        let v = C64::root_power(6, 2);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"{"e":6,"coeffs":[-1,1]}"#);
        let back: C64 = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<C64>(r#"{"e":6,"coeffs":[1]}"#).is_err());
    }
}
