//! Exact scalars: prime-field residues and arbitrary-precision rationals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest prime modulus accepted. Products of two residues must fit in a `u64`.
pub const MAX_PRIME: u32 = 1 << 31;

/// The coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    /// The prime field GF(p).
    Prime(u32),
    /// The rational numbers.
    Rational,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= p as u64 {
        if (p as u64).is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p) || p >= MAX_PRIME {
            return Err(Error::UnsupportedField(format!(
                "GF({p}): modulus must be a prime below 2^31"
            )));
        }
        Ok(Field::Prime(p))
    }

    /// Characteristic; 0 for the rationals.
    pub fn characteristic(self) -> u32 {
        match self {
            Field::Prime(p) => p,
            Field::Rational => 0,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn modulus(self) -> Option<u32> {
        match self {
            Field::Prime(p) => Some(p),
            Field::Rational => None,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_u32(0)
    }

    pub fn one(self) -> Scalar {
        self.from_u32(1)
    }

    pub fn from_u32(self, v: u32) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod { value: v % p, p },
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod {
                value: v.rem_euclid(p as i64) as u32,
                p,
            },
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// Image of an integer in this field.
    pub fn from_bigint(self, v: &BigInt) -> Scalar {
        match self {
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Mod {
                    value: r.to_u32().expect("residue fits"),
                    p,
                }
            }
            Field::Rational => Scalar::Rat(BigRational::from_integer(v.clone())),
        }
    }

    /// Image of a rational number; fails when the denominator vanishes mod p.
    pub fn from_rational(self, v: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar::Rat(v.clone())),
            Field::Prime(_) => {
                let num = self.from_bigint(v.numer());
                let den = self.from_bigint(v.denom());
                den.inv()
                    .map(|d| &num * &d)
                    .ok_or_else(|| Error::FieldMismatch(format!("denominator of {v} vanishes in {self}")))
            }
        }
    }

    /// Parses `"3"`, `"-2"` or `"3/7"`.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let parse_int = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad scalar {s:?}")))
        };
        let value = match s.split_once('/') {
            Some((n, d)) => {
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                BigRational::new(parse_int(n)?, d)
            }
            None => BigRational::from_integer(parse_int(s)?),
        };
        self.from_rational(&value)
    }

    /// All elements of a finite field in increasing order.
    pub fn elements(self) -> Result<Vec<Scalar>> {
        match self {
            Field::Prime(p) => Ok((0..p).map(|v| Scalar::Mod { value: v, p }).collect()),
            Field::Rational => Err(Error::NotFiniteField),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "GF({p})"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

/// An exact field element. Residues are always reduced, rationals always in
/// lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod { value: u32, p: u32 },
    Rat(BigRational),
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub(crate) fn inv_mod(v: u32, p: u32) -> u32 {
    debug_assert!(!v.is_multiple_of(p));
    mod_pow(v as u64, p as u64 - 2, p as u64) as u32
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Mod { p, .. } => Field::Prime(*p),
            Scalar::Rat(_) => Field::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::Rat(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 1,
            Scalar::Rat(q) => q.is_one(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Mod { value, p } => Scalar::Mod {
                value: inv_mod(*value, *p),
                p: *p,
            },
            Scalar::Rat(q) => Scalar::Rat(q.recip()),
        })
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self * &i)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        match self {
            Scalar::Mod { value, p } => Scalar::Mod {
                value: mod_pow(*value as u64, e as u64, *p as u64) as u32,
                p: *p,
            },
            Scalar::Rat(q) => Scalar::Rat(num_traits::pow(q.clone(), e as usize)),
        }
    }

    /// Residue value for prime-field elements.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            Scalar::Rat(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(q) => Some(q),
            Scalar::Mod { .. } => None,
        }
    }

    /// Integer value of an integral rational.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Rat(q) if q.is_integer() => Some(q.numer().clone()),
            _ => None,
        }
    }

    /// Maps an integral rational into another field; residues pass through
    /// unchanged when the target is the same field.
    pub fn to_field(&self, field: Field) -> Result<Scalar> {
        match (self, field) {
            (Scalar::Rat(q), _) => field.from_rational(q),
            (Scalar::Mod { p, .. }, Field::Prime(p2)) if *p == p2 => Ok(self.clone()),
            _ => Err(Error::FieldMismatch(format!(
                "cannot map {} element into {field}",
                self.field()
            ))),
        }
    }

    fn mismatch(a: &Scalar, b: &Scalar) -> ! {
        panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod { value, .. } => write!(f, "{value}"),
            Scalar::Rat(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Residues compare by representative in `[0, p)`, rationals numerically.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Mod { value: a, p: pa }, Scalar::Mod { value: b, p: pb }) => {
                pa.cmp(pb).then(a.cmp(b))
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Mod { .. }, Scalar::Rat(_)) => Ordering::Less,
            (Scalar::Rat(_), Scalar::Mod { .. }) => Ordering::Greater,
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Scalar::Mod {
                    value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                    p: *p,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => Scalar::mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Scalar::Mod {
                    value: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32,
                    p: *p,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            _ => Scalar::mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Scalar::Mod {
                    value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                    p: *p,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => Scalar::mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Mod { value, p } => Scalar::Mod {
                value: (*p - *value) % *p,
                p: *p,
            },
            Scalar::Rat(a) => Scalar::Rat(-a),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Greatest common divisor of the integer values of integral rationals,
/// always nonnegative.
pub fn integer_content<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |g, v| g.gcd(v))
        .abs()
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |l, v| l.lcm(v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_reduce() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.from_i64(-1), f.from_u32(4));
        assert_eq!((f.from_u32(3) * f.from_u32(4)).residue(), Some(2));
        assert_eq!(f.from_u32(3).inv().unwrap(), f.from_u32(2));
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn rationals_are_lowest_terms() {
        let q = Field::Rational;
        let a = q.parse_scalar("6/4").unwrap();
        assert_eq!(a.to_string(), "3/2");
        assert_eq!(q.parse_scalar("-4/-2").unwrap().to_string(), "2");
        assert_eq!((a.clone() * a.inv().unwrap()), q.one());
    }

    #[test]
    fn parse_into_prime_field() {
        let f = Field::prime(7).unwrap();
        assert_eq!(f.parse_scalar("3/2").unwrap(), f.from_u32(5));
        assert!(f.parse_scalar("1/7").is_err());
        assert!(Field::Rational.parse_scalar("1/0").is_err());
        assert!(Field::Rational.parse_scalar("x").is_err());
    }

    #[test]
    fn rejects_composite_moduli() {
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(101).is_ok());
    }

    #[test]
    #[should_panic(expected = "mismatch")]
    fn mixed_fields_panic() {
        let _ = Field::Rational.one() + Field::Prime(2).one();
    }
}
