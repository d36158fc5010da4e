//! Coefficient types.
//!
//! Every algebraic structure in this crate is generic over a [`Scalar`].
//! Routines that must decide whether something is exactly zero (kernels,
//! spans, identity checks) additionally require [`ExactScalar`], which is
//! only implemented for rational types.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Zero};

/// A field of coefficients.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static {
    fn from_int(n: i64) -> Self;

    /// Textual form used by the JSON interfaces (`"p/q"` for rationals).
    fn to_text(&self) -> String;

    fn parse_text(s: &str) -> Option<Self>;

    fn half() -> Self {
        Self::one() / Self::from_int(2)
    }
}

/// Marker for fields with exact arithmetic and exact zero tests.
pub trait ExactScalar: Scalar + Eq + std::hash::Hash {}

fn normalize_minus(s: &str) -> String {
    s.trim().replace('\u{2212}', "-")
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_int(n: i64) -> Self {
                n as $t
            }

            fn to_text(&self) -> String {
                self.to_string()
            }

            fn parse_text(s: &str) -> Option<Self> {
                let s = normalize_minus(s);
                match s.split_once('/') {
                    Some((p, q)) => Some(p.trim().parse::<$t>().ok()? / q.trim().parse::<$t>().ok()?),
                    None => s.parse().ok(),
                }
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

macro_rules! ratio_scalar {
    ($int:ty, $from:expr) => {
        impl Scalar for Ratio<$int> {
            fn from_int(n: i64) -> Self {
                Ratio::from_integer($from(n))
            }

            fn to_text(&self) -> String {
                self.to_string()
            }

            fn parse_text(s: &str) -> Option<Self> {
                let s = normalize_minus(s);
                let (p, q) = match s.split_once('/') {
                    Some((p, q)) => (p.trim().parse::<$int>().ok()?, q.trim().parse::<$int>().ok()?),
                    None => (s.parse::<$int>().ok()?, <$int>::one()),
                };
                if q.is_zero() {
                    return None;
                }
                Some(Ratio::new(p, q))
            }
        }

        impl ExactScalar for Ratio<$int> {}
    };
}

ratio_scalar!(i64, |n: i64| n);
ratio_scalar!(i128, |n: i64| n as i128);
ratio_scalar!(BigInt, BigInt::from);

/// The default exact coefficient field.
pub type Rational = BigRational;

/// `(-1)^k` as a scalar.
pub fn sign<T: Scalar>(negative: bool) -> T {
    if negative {
        -T::one()
    } else {
        T::one()
    }
}
