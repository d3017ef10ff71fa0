//! Scalar arithmetic over the two backends used throughout the crate:
//! exact rationals (`Rat`) for structure tensors of group algebras, duals,
//! doubles and integer twists, and complex doubles (`C64`) for Wedderburn
//! decompositions and S-matrices.

use std::fmt;

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Field element usable in structure tensors and linear algebra.
///
/// `EXACT` backends compare exactly; floating backends compare through
/// magnitudes and the tolerances in [`ToleranceConfig`].
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero (or numerically negligible) input.
    fn inv(&self) -> Option<Self>;

    fn is_zero(&self) -> bool;
    /// Magnitude as an `f64` (approximate for rationals, used for pivoting
    /// and residual reporting).
    fn abs(&self) -> f64;
    fn to_c64(&self) -> Complex64;

    /// Nearest integer within `int_tol` (and with negligible imaginary part);
    /// exact rationals succeed iff the denominator is one.
    fn recognize_integer(&self, int_tol: f64) -> Option<i64>;

    fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }
}

/// Exact rational scalar, always stored in lowest terms with positive
/// denominator. Values fitting machine words stay on an allocation-free
/// fast path; anything larger promotes to arbitrary precision and demotes
/// back when it fits again.
#[derive(Clone, PartialEq, Debug)]
pub struct Rat(RatRepr);

#[derive(Clone, PartialEq, Debug)]
enum RatRepr {
    Small { num: i64, den: u64 },
    Big(BigRational),
}

/// Operand bound below which i128 intermediates cannot overflow.
const SMALL_BOUND: u64 = 1 << 62;

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rat {
    fn small(num: i64, den: u64) -> Self {
        debug_assert!(den > 0);
        Rat(RatRepr::Small { num, den })
    }

    fn from_i128(num: i128, den: u128) -> Self {
        debug_assert!(den > 0);
        if num == 0 {
            return Rat::small(0, 1);
        }
        let g = gcd_u128(num.unsigned_abs(), den);
        let n = num / g as i128;
        let d = den / g;
        if n >= i64::MIN as i128 && n <= i64::MAX as i128 && d <= u64::MAX as u128 {
            Rat::small(n as i64, d as u64)
        } else {
            Rat(RatRepr::Big(BigRational::new(
                BigInt::from(n),
                BigInt::from(d),
            )))
        }
    }

    pub fn from_big_rational(b: BigRational) -> Self {
        if let (Some(n), Some(d)) = (b.numer().to_i64(), b.denom().to_u64()) {
            Rat::small(n, d)
        } else {
            Rat(RatRepr::Big(b))
        }
    }

    pub fn to_big_rational(&self) -> BigRational {
        match &self.0 {
            RatRepr::Small { num, den } => {
                BigRational::new(BigInt::from(*num), BigInt::from(*den))
            }
            RatRepr::Big(b) => b.clone(),
        }
    }

    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let (num, den) = if den < 0 {
            (-(num as i128), (den as i128).unsigned_abs())
        } else {
            (num as i128, den as u128)
        };
        Rat::from_i128(num, den)
    }

    fn small_operands(&self, other: &Self) -> Option<(i64, u64, i64, u64)> {
        match (&self.0, &other.0) {
            (RatRepr::Small { num: a, den: b }, RatRepr::Small { num: c, den: d })
                if a.unsigned_abs() < SMALL_BOUND
                    && *b < SMALL_BOUND
                    && c.unsigned_abs() < SMALL_BOUND
                    && *d < SMALL_BOUND =>
            {
                Some((*a, *b, *c, *d))
            }
            _ => None,
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            RatRepr::Small { num, den } => {
                if *den == 1 {
                    write!(f, "{num}")
                } else {
                    write!(f, "{num}/{den}")
                }
            }
            RatRepr::Big(b) => {
                if b.denom().is_one() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn zero() -> Self {
        Rat::small(0, 1)
    }
    fn one() -> Self {
        Rat::small(1, 1)
    }
    fn from_int(n: i64) -> Self {
        Rat::small(n, 1)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Rat::new(num, den)
    }

    fn add(&self, other: &Self) -> Self {
        if let Some((a, b, c, d)) = self.small_operands(other) {
            let num = a as i128 * d as i128 + c as i128 * b as i128;
            let den = b as u128 * d as u128;
            return Rat::from_i128(num, den);
        }
        Rat::from_big_rational(self.to_big_rational() + other.to_big_rational())
    }
    fn sub(&self, other: &Self) -> Self {
        if let Some((a, b, c, d)) = self.small_operands(other) {
            let num = a as i128 * d as i128 - c as i128 * b as i128;
            let den = b as u128 * d as u128;
            return Rat::from_i128(num, den);
        }
        Rat::from_big_rational(self.to_big_rational() - other.to_big_rational())
    }
    fn mul(&self, other: &Self) -> Self {
        if let Some((a, b, c, d)) = self.small_operands(other) {
            if a == 0 || c == 0 {
                return Rat::zero();
            }
            return Rat::from_i128(a as i128 * c as i128, b as u128 * d as u128);
        }
        Rat::from_big_rational(self.to_big_rational() * other.to_big_rational())
    }
    fn neg(&self) -> Self {
        match &self.0 {
            RatRepr::Small { num, den } if *num != i64::MIN => Rat::small(-num, *den),
            _ => Rat::from_big_rational(-self.to_big_rational()),
        }
    }
    fn inv(&self) -> Option<Self> {
        match &self.0 {
            RatRepr::Small { num: 0, .. } => None,
            RatRepr::Small { num, den } => {
                let sign = num.signum() as i128;
                Some(Rat::from_i128(sign * *den as i128, num.unsigned_abs() as u128))
            }
            RatRepr::Big(b) => {
                if b.is_zero() {
                    None
                } else {
                    Some(Rat::from_big_rational(b.recip()))
                }
            }
        }
    }

    fn is_zero(&self) -> bool {
        match &self.0 {
            RatRepr::Small { num, .. } => *num == 0,
            RatRepr::Big(b) => b.is_zero(),
        }
    }
    fn abs(&self) -> f64 {
        match &self.0 {
            RatRepr::Small { num, den } => (num.unsigned_abs() as f64) / (*den as f64),
            RatRepr::Big(b) => b.abs().to_f64().unwrap_or(f64::INFINITY),
        }
    }
    fn to_c64(&self) -> Complex64 {
        let re = match &self.0 {
            RatRepr::Small { num, den } => *num as f64 / *den as f64,
            RatRepr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        };
        Complex64::new(re, 0.0)
    }

    fn recognize_integer(&self, _int_tol: f64) -> Option<i64> {
        match &self.0 {
            RatRepr::Small { num, den: 1 } => Some(*num),
            RatRepr::Small { .. } => None,
            RatRepr::Big(b) => {
                if b.denom().is_one() {
                    b.numer().to_i64()
                } else {
                    None
                }
            }
        }
    }
}

/// Complex double-precision scalar.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct C64(pub Complex64);

impl C64 {
    pub fn new(re: f64, im: f64) -> Self {
        C64(Complex64::new(re, im))
    }
    pub fn re(&self) -> f64 {
        self.0.re
    }
    pub fn im(&self) -> f64 {
        self.0.im
    }
}

impl fmt::Display for C64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.im == 0.0 {
            write!(f, "{}", self.0.re)
        } else {
            write!(f, "{}{:+}i", self.0.re, self.0.im)
        }
    }
}

impl Scalar for C64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        C64(Complex64::new(0.0, 0.0))
    }
    fn one() -> Self {
        C64(Complex64::new(1.0, 0.0))
    }
    fn from_int(n: i64) -> Self {
        C64(Complex64::new(n as f64, 0.0))
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        C64(Complex64::new(num as f64 / den as f64, 0.0))
    }

    fn add(&self, other: &Self) -> Self {
        C64(self.0 + other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        C64(self.0 - other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        C64(self.0 * other.0)
    }
    fn neg(&self) -> Self {
        C64(-self.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.0.norm() < 1e-300 {
            None
        } else {
            Some(C64(self.0.inv()))
        }
    }

    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }
    fn abs(&self) -> f64 {
        self.0.norm()
    }
    fn to_c64(&self) -> Complex64 {
        self.0
    }

    fn recognize_integer(&self, int_tol: f64) -> Option<i64> {
        if self.0.im.abs() > int_tol {
            return None;
        }
        let n = self.0.re.round();
        if (self.0.re - n).abs() <= int_tol && n.abs() < 9e15 {
            Some(n as i64)
        } else {
            None
        }
    }
}

/// Tolerances and the RNG seed shared by every numerical operation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub residual_tol: f64,
    pub integer_tol: f64,
    pub eigen_gap_tol: f64,
    pub max_random_retries: u32,
    pub rng_seed: u64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            residual_tol: 1e-9,
            integer_tol: 1e-6,
            eigen_gap_tol: 1e-7,
            max_random_retries: 8,
            rng_seed: 17,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.residual_tol > 0.0 && self.integer_tol > 0.0 && self.eigen_gap_tol > 0.0) {
            return Err(Error::Invalid(
                "tolerances must be strictly positive".into(),
            ));
        }
        if self.integer_tol < self.residual_tol {
            return Err(Error::Invalid(
                "integer_tol must be at least residual_tol".into(),
            ));
        }
        if self.max_random_retries == 0 {
            return Err(Error::Invalid("max_random_retries must be positive".into()));
        }
        Ok(())
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }
}

/// Standalone form of [`Scalar::recognize_integer`].
pub fn recognize_integer<S: Scalar>(x: &S, cfg: &ToleranceConfig) -> Option<i64> {
    x.recognize_integer(cfg.integer_tol)
}
