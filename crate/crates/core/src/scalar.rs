//! Real scalar abstraction for the numeric kernels.
//!
//! The Cholesky/determinant kernel and the Monte Carlo accumulators are
//! generic over this trait so the same code runs in double precision (`f64`)
//! and extended double-double precision ([`crate::dd::Dd`]).

use std::fmt::Debug;
use std::ops::Neg;

use num_complex::Complex;
use num_traits::NumAssign;

use crate::dd::Dd;

/// Real scalar usable in the generic kernels: a `num_traits` field with a
/// square root and lossless-enough `f64` conversions.
pub trait RealScalar:
    NumAssign + Copy + PartialOrd + Neg<Output = Self> + Debug + Send + Sync + 'static
{
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn sqrt(self) -> Self;
    fn abs(self) -> Self;
    fn is_finite(self) -> bool;
}

impl RealScalar for f64 {
    #[inline]
    fn from_f64(x: f64) -> f64 {
        x
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline]
    fn sqrt(self) -> f64 {
        f64::sqrt(self)
    }
    #[inline]
    fn abs(self) -> f64 {
        f64::abs(self)
    }
    #[inline]
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl RealScalar for Dd {
    #[inline]
    fn from_f64(x: f64) -> Dd {
        Dd::from_f64(x)
    }
    #[inline]
    fn to_f64(self) -> f64 {
        Dd::to_f64(self)
    }
    #[inline]
    fn sqrt(self) -> Dd {
        Dd::sqrt(self)
    }
    #[inline]
    fn abs(self) -> Dd {
        Dd::abs(self)
    }
    #[inline]
    fn is_finite(self) -> bool {
        Dd::is_finite(self)
    }
}

/// Promotes an `f64` complex number into the kernel scalar.
#[inline]
pub fn promote<S: RealScalar>(z: Complex<f64>) -> Complex<S> {
    Complex::new(S::from_f64(z.re), S::from_f64(z.im))
}

/// Demotes a kernel complex number back to `f64`.
#[inline]
pub fn demote<S: RealScalar>(z: Complex<S>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}
