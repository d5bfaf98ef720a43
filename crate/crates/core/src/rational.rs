//! Arbitrary-precision rationals with an `i128` fast path.
//!
//! Every value is kept reduced with a positive denominator. Values whose
//! numerator and denominator fit below [`SMALL_LIMIT`] are stored inline;
//! anything larger is promoted to big-integer arithmetic and demoted back
//! once it fits again, so representations stay canonical and `==` is
//! structural.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

/// Small-path bound: products of two bounded values stay inside `i128`.
const SMALL_LIMIT: i128 = 1 << 62;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Small { num: i128, den: i128 },
    Big { num: BigInt, den: BigInt },
}

/// An exact rational number, always reduced, denominator always positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rational(Repr);

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RationalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational literal `{0}`")]
    BadLiteral(String),
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Self {
        Rational(Repr::Small { num: 1, den: 1 })
    }

    pub fn from_i64(n: i64) -> Self {
        Rational(Repr::Small { num: n as i128, den: 1 })
    }

    pub fn from_i128(n: i128) -> Self {
        if n.abs() < SMALL_LIMIT {
            Rational(Repr::Small { num: n, den: 1 })
        } else {
            Rational(Repr::Big { num: BigInt::from(n), den: BigInt::from(1) })
        }
    }

    /// `p/q`, reduced. Panics on `q == 0`.
    pub fn new(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::from_small(p as i128, q as i128)
    }

    fn from_small(mut num: i128, mut den: i128) -> Self {
        debug_assert!(den != 0);
        if den < 0 {
            num = -num;
            den = -den;
        }
        if num == 0 {
            return Self::zero();
        }
        let g = gcd_i128(num.abs(), den);
        num /= g;
        den /= g;
        if num.abs() < SMALL_LIMIT && den < SMALL_LIMIT {
            Rational(Repr::Small { num, den })
        } else {
            Rational(Repr::Big { num: BigInt::from(num), den: BigInt::from(den) })
        }
    }

    pub fn from_big(mut num: BigInt, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        num /= &g;
        den /= &g;
        match (num.to_i128(), den.to_i128()) {
            (Some(n), Some(d)) if n.abs() < SMALL_LIMIT && d < SMALL_LIMIT => {
                Rational(Repr::Small { num: n, den: d })
            }
            _ => Rational(Repr::Big { num, den }),
        }
    }

    pub fn from_bigint(num: BigInt) -> Self {
        Self::from_big(num, BigInt::from(1))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small { num, .. } => *num < 0,
            Repr::Big { num, .. } => num.is_negative(),
        }
    }

    /// The integer value, when the denominator is 1.
    pub fn as_integer(&self) -> Option<BigInt> {
        match &self.0 {
            Repr::Small { num, den: 1 } => Some(BigInt::from(*num)),
            Repr::Big { num, den } if den.is_one_value() => Some(num.clone()),
            _ => None,
        }
    }

    pub fn numerator(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big { num, .. } => num.clone(),
        }
    }

    pub fn denominator(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big { den, .. } => den.clone(),
        }
    }

    pub fn neg_ref(&self) -> Rational {
        match &self.0 {
            Repr::Small { num, den } => Rational(Repr::Small { num: -num, den: *den }),
            Repr::Big { num, den } => Rational(Repr::Big { num: -num, den: den.clone() }),
        }
    }

    pub fn add_ref(&self, other: &Rational) -> Rational {
        match (&self.0, &other.0) {
            (Repr::Small { num: 0, .. }, _) => other.clone(),
            (_, Repr::Small { num: 0, .. }) => self.clone(),
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                // bounded operands: a*d + c*b and b*d cannot overflow i128
                Self::from_small(a * d + c * b, b * d)
            }
            _ => Self::from_big(
                self.numerator() * other.denominator() + other.numerator() * self.denominator(),
                self.denominator() * other.denominator(),
            ),
        }
    }

    pub fn sub_ref(&self, other: &Rational) -> Rational {
        self.add_ref(&other.neg_ref())
    }

    pub fn mul_ref(&self, other: &Rational) -> Rational {
        match (&self.0, &other.0) {
            (Repr::Small { num: 0, .. }, _) | (_, Repr::Small { num: 0, .. }) => Self::zero(),
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                Self::from_small(a * c, b * d)
            }
            _ => Self::from_big(
                self.numerator() * other.numerator(),
                self.denominator() * other.denominator(),
            ),
        }
    }

    pub fn div_ref(&self, other: &Rational) -> Result<Rational, RationalError> {
        if other.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        Ok(match (&self.0, &other.0) {
            (Repr::Small { num: 0, .. }, _) => Self::zero(),
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                Self::from_small(a * d, b * c)
            }
            _ => Self::from_big(
                self.numerator() * other.denominator(),
                self.denominator() * other.numerator(),
            ),
        })
    }

    pub fn recip(&self) -> Result<Rational, RationalError> {
        Rational::one().div_ref(self)
    }

    pub fn scale_i64(&self, n: i64) -> Rational {
        self.mul_ref(&Rational::from_i64(n))
    }

    /// Parses `p`, `-p`, or `p/q`.
    pub fn parse(text: &str) -> Result<Rational, RationalError> {
        let t = text.trim();
        let bad = || RationalError::BadLiteral(text.to_string());
        match t.split_once('/') {
            None => {
                let n = BigInt::from_str(t).map_err(|_| bad())?;
                Ok(Self::from_bigint(n))
            }
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
                let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(RationalError::DivisionByZero);
                }
                Ok(Self::from_big(p, q))
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => *num as f64 / *den as f64,
            Repr::Big { num, den } => num.to_f64().unwrap_or(f64::NAN) / den.to_f64().unwrap_or(f64::NAN),
        }
    }
}

trait IsOneValue {
    fn is_one_value(&self) -> bool;
}
impl IsOneValue for BigInt {
    fn is_one_value(&self) -> bool {
        use num_traits::One;
        self.is_one()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big { num, den } if den.is_one_value() => write!(f, "{num}"),
            Repr::Big { num, den } => write!(f, "{num}/{den}"),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl std::ops::$trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                self.$imp(rhs)
            }
        }
        impl std::ops::$trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$imp(&rhs)
            }
        }
    };
}
forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl std::ops::Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Rational::parse(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn to_big_rational(r: &Rational) -> BigRational {
        BigRational::new(r.numerator(), r.denominator())
    }

    #[test]
    fn basics() {
        assert_eq!(Rational::new(2, 4), Rational::new(1, 2));
        assert_eq!(Rational::new(1, -2), Rational::new(-1, 2));
        assert_eq!(Rational::new(-3, -6), Rational::new(1, 2));
        assert_eq!(Rational::new(6, 3).as_integer(), Some(BigInt::from(2)));
        assert_eq!(Rational::new(1, 2).as_integer(), None);
        assert_eq!(Rational::new(3, 4).to_string(), "3/4");
        assert_eq!(Rational::from_i64(-7).to_string(), "-7");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-3", "5/12", "-17/48", "100000000000000000000/3"] {
            let r = Rational::parse(s).unwrap();
            assert_eq!(Rational::parse(&r.to_string()).unwrap(), r);
        }
        assert!(Rational::parse("1/0").is_err());
        assert!(Rational::parse("abc").is_err());
    }

    #[test]
    fn division() {
        let a = Rational::new(3, 4);
        let b = Rational::new(-2, 5);
        assert_eq!(a.div_ref(&b).unwrap(), Rational::new(-15, 8));
        assert_eq!(a.div_ref(&Rational::zero()), Err(RationalError::DivisionByZero));
    }

    #[test]
    fn promotion_and_demotion() {
        // force the big path, then cancel back down
        let big = Rational::from_big(BigInt::from(1) << 200, BigInt::from(3));
        let small_again = big.mul_ref(&Rational::from_big(BigInt::from(3), BigInt::from(1) << 200));
        assert_eq!(small_again, Rational::one());
        assert!(matches!(small_again.0, Repr::Small { .. }));
    }

    proptest! {
        #[test]
        fn matches_bigrational_oracle(a in -2000i64..2000, b in 1i64..300, c in -2000i64..2000, d in 1i64..300) {
            let x = Rational::new(a, b);
            let y = Rational::new(c, d);
            let (bx, by) = (to_big_rational(&x), to_big_rational(&y));
            prop_assert_eq!(to_big_rational(&x.add_ref(&y)), &bx + &by);
            prop_assert_eq!(to_big_rational(&x.sub_ref(&y)), &bx - &by);
            prop_assert_eq!(to_big_rational(&x.mul_ref(&y)), &bx * &by);
            if c != 0 {
                prop_assert_eq!(to_big_rational(&x.div_ref(&y).unwrap()), &bx / &by);
            }
        }

        #[test]
        fn big_small_boundary(shift in 0u8..127) {
            // values straddling the small limit stay exact
            let v = BigInt::from(1) << shift as usize;
            let r = Rational::from_big(v.clone(), BigInt::from(3));
            let back = r.mul_ref(&Rational::from_i64(3));
            prop_assert_eq!(back.as_integer(), Some(v));
        }
    }
}
