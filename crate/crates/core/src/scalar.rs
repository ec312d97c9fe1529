//! Exact scalar rings: the rationals, prime fields and the integers.
//!
//! A [`Scalar`] carries enough information to do arithmetic on its own
//! (a residue knows its modulus), so the usual operator traits are
//! implemented directly. Mixing scalars from different rings is a logic
//! error and panics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest admissible prime modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ScalarRing {
    Rationals,
    PrimeField(u32),
    Integers,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("zero denominator in `{0}`")]
    DivByZeroDenominator(String),
    #[error("`{value}` is not a valid element of {ring}")]
    BadValue { value: String, ring: ScalarRing },
    #[error("unknown scalar ring `{0}` (expected Q, Z or F<p>)")]
    UnknownRing(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Rationals and integers; integers always have denominator one.
    Rational(BigRational),
    /// Canonical residue in `[0, modulus)`.
    Residue { value: u64, modulus: u64 },
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl ScalarRing {
    pub fn prime_field(p: u64) -> Result<Self, ScalarError> {
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(ScalarRing::PrimeField(p as u32))
    }

    pub fn is_field(self) -> bool {
        !matches!(self, ScalarRing::Integers)
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            ScalarRing::PrimeField(p) => Some(p as u64),
            _ => None,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            ScalarRing::PrimeField(p) => {
                let p = p as i64;
                Scalar::Residue {
                    value: v.rem_euclid(p) as u64,
                    modulus: p as u64,
                }
            }
            _ => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// A rational `num/den` in this ring. Fails for non-integral values
    /// over the integers and for denominators divisible by `p`.
    pub fn from_fraction(self, num: i64, den: i64) -> Option<Scalar> {
        if den == 0 {
            return None;
        }
        match self {
            ScalarRing::Rationals => Some(Scalar::Rational(BigRational::new(num.into(), den.into()))),
            ScalarRing::Integers => (num % den == 0).then(|| self.from_i64(num / den)),
            ScalarRing::PrimeField(_) => self.from_i64(den).inv().map(|d| self.from_i64(num) * d),
        }
    }

    /// Whether `x` is a well-formed element of this ring.
    pub fn contains(self, x: &Scalar) -> bool {
        match (self, x) {
            (ScalarRing::Rationals, Scalar::Rational(_)) => true,
            (ScalarRing::Integers, Scalar::Rational(r)) => r.is_integer(),
            (ScalarRing::PrimeField(p), Scalar::Residue { value, modulus }) => *modulus == p as u64 && *value < *modulus,
            _ => false,
        }
    }

    /// All elements of a prime field in increasing residue order.
    pub fn elements(self) -> Option<impl Iterator<Item = Scalar>> {
        let p = self.modulus()?;
        Some((0..p).map(move |value| Scalar::Residue { value, modulus: p }))
    }

    /// Parses the DSL value syntax: `a`, `-a` or `a/b`. Prime-field values
    /// must be canonical residues `0..p-1`.
    pub fn parse_value(self, text: &str) -> Result<Scalar, ScalarError> {
        let bad = || ScalarError::BadValue {
            value: text.to_string(),
            ring: self,
        };
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (text, None),
        };
        let valid_int = |s: &str, allow_sign: bool| {
            let digits = if allow_sign { s.strip_prefix('-').unwrap_or(s) } else { s };
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        match self {
            ScalarRing::PrimeField(p) => {
                if den.is_some() || !valid_int(num, false) {
                    return Err(bad());
                }
                let value: u64 = num.parse().map_err(|_| bad())?;
                if value >= p as u64 {
                    return Err(bad());
                }
                Ok(Scalar::Residue {
                    value,
                    modulus: p as u64,
                })
            }
            ScalarRing::Rationals | ScalarRing::Integers => {
                if !valid_int(num, true) {
                    return Err(bad());
                }
                let n = BigInt::from_str(num).map_err(|_| bad())?;
                let d = match den {
                    Some(d) => {
                        if !valid_int(d, false) {
                            return Err(bad());
                        }
                        BigInt::from_str(d).map_err(|_| bad())?
                    }
                    None => BigInt::one(),
                };
                if d.is_zero() {
                    return Err(ScalarError::DivByZeroDenominator(text.to_string()));
                }
                let r = BigRational::new(n, d);
                if self == ScalarRing::Integers && !r.is_integer() {
                    return Err(bad());
                }
                Ok(Scalar::Rational(r))
            }
        }
    }
}

impl fmt::Display for ScalarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarRing::Rationals => write!(f, "Q"),
            ScalarRing::Integers => write!(f, "Z"),
            ScalarRing::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for ScalarRing {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Q" => Ok(ScalarRing::Rationals),
            "Z" => Ok(ScalarRing::Integers),
            _ => {
                let digits = s
                    .strip_prefix('F')
                    .map(|d| d.trim_start_matches('<').trim_end_matches('>'))
                    .ok_or_else(|| ScalarError::UnknownRing(s.to_string()))?;
                let p: u64 = digits.parse().map_err(|_| ScalarError::UnknownRing(s.to_string()))?;
                ScalarRing::prime_field(p)
            }
        }
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero. Integers are treated as
    /// rationals here, callers that need closure over Z must check.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Rational(r) => Some(Scalar::Rational(r.recip())),
            Scalar::Residue { value, modulus } => {
                // Fermat: v^(p-2)
                let (mut base, mut exp, mut acc) = (*value, *modulus - 2, 1u64);
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % modulus;
                    }
                    base = base * base % modulus;
                    exp >>= 1;
                }
                Some(Scalar::Residue {
                    value: acc,
                    modulus: *modulus,
                })
            }
        }
    }

    pub fn pow(&self, mut exp: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => Scalar::Rational(BigRational::zero()),
            Scalar::Residue { modulus, .. } => Scalar::Residue {
                value: 0,
                modulus: *modulus,
            },
        }
    }

    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => Scalar::Rational(BigRational::one()),
            Scalar::Residue { modulus, .. } => Scalar::Residue {
                value: 1,
                modulus: *modulus,
            },
        }
    }

    /// Small integer view, used for residues and integral rationals.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) if r.is_integer() => r.to_integer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Residue { value, .. } => Some(*value as i64),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                (p, a).cmp(&(q, b))
            }
            (Scalar::Rational(_), Scalar::Residue { .. }) => Ordering::Less,
            (Scalar::Residue { .. }, Scalar::Rational(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn same_modulus(p: u64, q: u64) -> u64 {
    assert_eq!(p, q, "scalars from different prime fields");
    p
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                let m = same_modulus(*p, *q);
                Scalar::Residue {
                    value: (a + b) % m,
                    modulus: m,
                }
            }
            _ => panic!("scalars from different rings"),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                let m = same_modulus(*p, *q);
                Scalar::Residue {
                    value: (a * b) % m,
                    modulus: m,
                }
            }
            _ => panic!("scalars from different rings"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl Scalar {
    /// Sign of a rational, `None` for residues.
    pub fn signum(&self) -> Option<i32> {
        match self {
            Scalar::Rational(r) if r.is_positive() => Some(1),
            Scalar::Rational(r) if r.is_negative() => Some(-1),
            Scalar::Rational(_) => Some(0),
            Scalar::Residue { .. } => None,
        }
    }
}
