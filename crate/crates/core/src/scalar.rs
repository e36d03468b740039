//! Exact scalar fields.
//!
//! Everything in this crate is generic over [`Scalar`]. The trait asks for the
//! usual field operations from `num-traits` plus an exact square root, which
//! the frame adaptation needs to decide whether an orthonormal frame is
//! representable without leaving the field.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// An exact ordered field element.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Num + Signed + ToPrimitive + Send + Sync + 'static
{
    /// Embeds a machine integer.
    fn from_int(v: i64) -> Self;

    /// Returns `Some(r)` with `r >= 0` and `r * r == self` when such an `r`
    /// exists in the field.
    fn exact_sqrt(&self) -> Option<Self>;

    fn half() -> Self {
        Self::one() / Self::from_int(2)
    }
}

fn integer_sqrt<I>(v: &I) -> Option<I>
where
    I: Clone + num_integer::Integer + Roots + Signed,
{
    if v.is_negative() {
        return None;
    }
    let r = v.sqrt();
    if r.clone() * r.clone() == *v {
        Some(r)
    } else {
        None
    }
}

macro_rules! impl_ratio_scalar {
    ($int:ty) => {
        impl Scalar for Ratio<$int> {
            fn from_int(v: i64) -> Self {
                Ratio::from_integer(<$int>::from(v))
            }

            fn exact_sqrt(&self) -> Option<Self> {
                if self.is_zero() {
                    return Some(Self::zero());
                }
                let n = integer_sqrt(self.numer())?;
                let d = integer_sqrt(self.denom())?;
                Some(Ratio::new(n, d))
            }
        }
    };
}

impl_ratio_scalar!(BigInt);
impl_ratio_scalar!(i64);

/// Shorthand used by constructors that only need small integer constants.
pub fn int<T: Scalar>(v: i64) -> T {
    T::from_int(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exact_sqrt_of_squares() {
        assert_eq!(q(9, 4).exact_sqrt(), Some(q(3, 2)));
        assert_eq!(q(0, 1).exact_sqrt(), Some(q(0, 1)));
        assert_eq!(q(2, 1).exact_sqrt(), None);
        assert_eq!(q(-4, 1).exact_sqrt(), None);
        assert_eq!(Ratio::<i64>::new(1, 16).exact_sqrt(), Some(Ratio::new(1, 4)));
    }

    #[test]
    fn half_is_exact() {
        assert_eq!(BigRational::half() * int::<BigRational>(2), int(1));
    }
}
