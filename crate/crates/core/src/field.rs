//! Base fields and exact scalars.
//!
//! Two kinds of field are supported: the rationals and prime fields `GF(p)`.
//! Scalars carry enough information to do arithmetic on their own, so the
//! rest of the crate never has to thread a field context through every
//! addition. Mixing scalars from different fields is an internal error.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::Error;

/// Largest admissible characteristic.
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Field {
    Rationals,
    Prime { characteristic: u32 },
}

impl Field {
    pub fn prime(p: u64) -> Result<Self, Error> {
        if !(2..=MAX_CHARACTERISTIC).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "characteristic {p} is not a prime below 2^31"
            )));
        }
        Ok(Field::Prime {
            characteristic: p as u32,
        })
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime { characteristic } => *characteristic,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Q(Rational::from_i64(n)),
            Field::Prime { characteristic: p } => Scalar::Fp {
                v: n.rem_euclid(p as i64) as u32,
                p,
            },
        }
    }

    /// `num / den` in this field; fails when the denominator vanishes.
    pub fn fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, Error> {
        match *self {
            Field::Rationals => {
                if den.is_zero() {
                    return Err(Error::InvalidField("zero denominator".into()));
                }
                Ok(Scalar::Q(Rational::from_big(BigRational::new(
                    num.clone(),
                    den.clone(),
                ))))
            }
            Field::Prime { characteristic: p } => {
                let pb = BigInt::from(p);
                let n = num.mod_floor(&pb).to_u32().unwrap_or(0);
                let d = den.mod_floor(&pb).to_u32().unwrap_or(0);
                if d == 0 {
                    return Err(Error::InvalidField(format!("denominator vanishes modulo {p}")));
                }
                let num = Scalar::Fp { v: n, p };
                let den = Scalar::Fp { v: d, p };
                Ok(num * den.inv())
            }
        }
    }

    /// Number of elements, or `None` for an infinite field.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime { characteristic } => Some(*characteristic as u64),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime { characteristic } => write!(f, "GF({characteristic})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact rational number. Small values stay on the machine-word path and
/// are promoted to big integers only when an operation would overflow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rational {
    /// Reduced fraction with positive denominator.
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rational {
    pub fn from_i64(n: i64) -> Self {
        Rational::Small(n, 1)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut n, mut d) = if g == 0 { (0, 1) } else { (num / g, den / g) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(BigRational::new(n.into(), d.into()))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new((*n).into(), (*d).into()),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    fn add(&self, other: &Self) -> Self {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, other) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            return Rational::from_i128(a * d + c * b, b * d);
        }
        Rational::from_big(self.to_big() + other.to_big())
    }

    fn mul(&self, other: &Self) -> Self {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, other) {
            return Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128);
        }
        Rational::from_big(self.to_big() * other.to_big())
    }

    fn neg(&self) -> Self {
        match self {
            Rational::Small(n, d) if *n != i64::MIN => Rational::Small(-n, *d),
            _ => Rational::from_big(-self.to_big()),
        }
    }

    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Rational::Small(n, d) => Rational::from_i128(*d as i128, *n as i128),
            Rational::Big(b) => Rational::from_big(b.recip()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Rational::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

/// An element of a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Fp { v: u32, p: u32 },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => *r == Rational::Small(1, 1),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rationals,
            Scalar::Fp { p, .. } => Field::Prime { characteristic: *p },
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Q(r) => Scalar::Q(r.inv()),
            Scalar::Fp { v, p } => {
                assert!(*v != 0, "inverse of zero");
                Scalar::Fp {
                    v: pow_mod(*v as u64, *p as u64 - 2, *p as u64) as u32,
                    p: *p,
                }
            }
        }
    }

    /// True when the scalar would print with a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(Rational::Small(n, _)) => *n < 0,
            Scalar::Q(Rational::Big(b)) => b.is_negative(),
            Scalar::Fp { v, p } => *v > p / 2,
        }
    }

    fn binop(
        &self,
        other: &Scalar,
        q: impl Fn(&Rational, &Rational) -> Rational,
        f: impl Fn(u64, u64, u64) -> u64,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(q(a, b)),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: p2 }) if p == p2 => Scalar::Fp {
                v: f(*a as u64, *b as u64, *p as u64) as u32,
                p: *p,
            },
            _ => panic!("scalars from different fields: {self:?} and {other:?}"),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.binop(rhs, Rational::add, |a, b, p| (a + b) % p)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.binop(rhs, |a, b| a.add(&b.neg()), |a, b, p| (a + p - b) % p)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.binop(rhs, Rational::mul, |a, b, p| a * b % p)
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

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(r) => Scalar::Q(r.neg()),
            Scalar::Fp { v, p } => Scalar::Fp { v: (p - v) % p, p: *p },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Fp { v, p } if *v > p / 2 => write!(f, "-{}", p - v),
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}
