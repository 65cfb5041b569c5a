//! The scalar abstraction shared by the LP engine and the game code.
//!
//! Everything numeric in this crate is generic over [`Scalar`]. The exact
//! instantiation ([`crate::Rational`]) is the one the theorem checks rely on;
//! the floating-point instantiations are provided for quick experiments and
//! compare against a small tolerance instead of exact zero.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Field-like scalar usable by the simplex engine and the games.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Whether arithmetic on this type is exact.
    const EXACT: bool;

    /// Zero test used for pivoting and certificate checks.
    fn near_zero(&self) -> bool {
        self.is_zero()
    }

    fn is_pos(&self) -> bool {
        !self.near_zero() && *self > Self::zero()
    }

    fn is_neg(&self) -> bool {
        !self.near_zero() && *self < Self::zero()
    }

    fn near_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).near_zero()
    }

    fn is_integral(&self) -> bool;

    fn floor(&self) -> Self;

    fn ceil(&self) -> Self;

    /// Canonical text form used by every file format (`"p/q"`, or `"p"`).
    fn to_repr(&self) -> String {
        self.to_string()
    }

    fn parse_repr(s: &str) -> Result<Self, ScalarParseError>;

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("i64 is representable")
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarParseError {
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("malformed number {0:?}")]
    Malformed(String),
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn floor(&self) -> Self {
        Ratio::floor(self)
    }

    fn ceil(&self) -> Self {
        Ratio::ceil(self)
    }

    fn parse_repr(s: &str) -> Result<Self, ScalarParseError> {
        parse_ratio::<BigInt>(s)
    }
}

impl Scalar for Ratio<i64> {
    const EXACT: bool = true;

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn floor(&self) -> Self {
        Ratio::floor(self)
    }

    fn ceil(&self) -> Self {
        Ratio::ceil(self)
    }

    fn parse_repr(s: &str) -> Result<Self, ScalarParseError> {
        parse_ratio::<i64>(s)
    }
}

fn parse_ratio<I>(s: &str) -> Result<Ratio<I>, ScalarParseError>
where
    I: Clone + Integer + Num,
{
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let numer = I::from_str_radix(n, 10).map_err(|_| ScalarParseError::Malformed(s.to_string()))?;
    let denom = I::from_str_radix(d, 10).map_err(|_| ScalarParseError::Malformed(s.to_string()))?;
    if denom.is_zero() {
        return Err(ScalarParseError::ZeroDenominator(s.to_string()));
    }
    Ok(Ratio::new(numer, denom))
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn near_zero(&self) -> bool {
                self.abs() <= $tol
            }

            fn is_integral(&self) -> bool {
                (*self - self.round()).abs() <= $tol
            }

            fn floor(&self) -> Self {
                if self.is_integral() {
                    self.round()
                } else {
                    <$t>::floor(*self)
                }
            }

            fn ceil(&self) -> Self {
                if self.is_integral() {
                    self.round()
                } else {
                    <$t>::ceil(*self)
                }
            }

            fn parse_repr(s: &str) -> Result<Self, ScalarParseError> {
                let t = s.trim();
                match t.split_once('/') {
                    Some((n, d)) => {
                        let n: $t = n.trim().parse().map_err(|_| ScalarParseError::Malformed(s.into()))?;
                        let d: $t = d.trim().parse().map_err(|_| ScalarParseError::Malformed(s.into()))?;
                        if d == 0.0 {
                            return Err(ScalarParseError::ZeroDenominator(s.into()));
                        }
                        Ok(n / d)
                    }
                    None => t.parse().map_err(|_| ScalarParseError::Malformed(s.into())),
                }
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-4);

/// Sum of a sequence of scalars.
pub fn sum<'a, T: Scalar>(it: impl IntoIterator<Item = &'a T>) -> T {
    it.into_iter().fold(T::zero(), |acc, x| acc + x.clone())
}

/// Largest element, or zero for an empty sequence.
pub fn max_or_zero<'a, T: Scalar>(it: impl IntoIterator<Item = &'a T>) -> T {
    it.into_iter().fold(T::zero(), |acc, x| if *x > acc { x.clone() } else { acc })
}
