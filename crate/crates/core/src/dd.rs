//! Double-double arithmetic: an unevaluated sum of two `f64`s giving a
//! ~106-bit significand.
//!
//! Error-free transforms follow Knuth's two-sum and the FMA-based two-product;
//! the composite add/mul/div/sqrt kernels follow the QD library of Hida, Li
//! and Bailey. Only the operations the subset-sum and accumulation kernels
//! need are provided: field arithmetic, square root, comparisons and `f64`
//! conversions. Transcendentals are deliberately absent; callers promote
//! `f64`-evaluated transcendentals where needed.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, Sub, SubAssign};

use num_traits::{Num, One, Zero};

/// Double-double number, normalized so `|lo| <= ulp(hi)/2`.
#[derive(Copy, Clone, Debug, Default)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

/// Knuth two-sum: s + e == a + b exactly.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Fast two-sum, valid when |a| >= |b|.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// Exact product via fused multiply-add: p + e == a * b exactly.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = f64::mul_add(a, b, -p);
    (p, e)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    /// Builds from a high/low pair that is already normalized.
    #[inline]
    pub fn from_parts(hi: f64, lo: f64) -> Dd {
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact sum of two doubles as a double-double.
    #[inline]
    pub fn from_sum(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    /// Square root via Karp's method: one f64 estimate plus one Newton
    /// correction carried out in double-double, which suffices for full
    /// double-double accuracy.
    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        if self.hi < 0.0 {
            return Dd::from_f64(f64::NAN);
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let ax_dd = Dd::from_f64(ax);
        let err = (self - ax_dd * ax_dd).hi * (x * 0.5);
        let (hi, lo) = quick_two_sum(ax, err);
        Dd { hi, lo }
    }

    /// Reciprocal square root, through `sqrt` and division.
    pub fn recip_sqrt(self) -> Dd {
        Dd::ONE / self.sqrt()
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Display at f64 precision; the lo word is a correction term.
        write!(f, "{:e}", self.to_f64())
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, rhs: Dd) -> Dd {
        // Long division with three f64 quotient digits (QD "accurate" div).
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * Dd::from_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * Dd::from_f64(q2);
        let q3 = r.hi / rhs.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e } + Dd::from_f64(q3)
    }
}

impl Rem for Dd {
    type Output = Dd;
    fn rem(self, rhs: Dd) -> Dd {
        let q = (self / rhs).to_f64().trunc();
        self - rhs * Dd::from_f64(q)
    }
}

impl AddAssign for Dd {
    #[inline]
    fn add_assign(&mut self, rhs: Dd) {
        *self = *self + rhs;
    }
}
impl SubAssign for Dd {
    #[inline]
    fn sub_assign(&mut self, rhs: Dd) {
        *self = *self - rhs;
    }
}
impl MulAssign for Dd {
    #[inline]
    fn mul_assign(&mut self, rhs: Dd) {
        *self = *self * rhs;
    }
}
impl DivAssign for Dd {
    #[inline]
    fn div_assign(&mut self, rhs: Dd) {
        *self = *self / rhs;
    }
}

impl PartialEq for Dd {
    #[inline]
    fn eq(&self, other: &Dd) -> bool {
        self.hi == other.hi && self.lo == other.lo
    }
}

impl PartialOrd for Dd {
    #[inline]
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl Zero for Dd {
    #[inline]
    fn zero() -> Dd {
        Dd::ZERO
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }
}

impl One for Dd {
    #[inline]
    fn one() -> Dd {
        Dd::ONE
    }
}

impl Num for Dd {
    type FromStrRadixErr = num_traits::ParseFloatError;
    fn from_str_radix(str: &str, radix: u32) -> std::result::Result<Dd, Self::FromStrRadixErr> {
        f64::from_str_radix(str, radix).map(Dd::from_f64)
    }
}

impl Sum for Dd {
    fn sum<I: Iterator<Item = Dd>>(iter: I) -> Dd {
        iter.fold(Dd::ZERO, |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_bits_f64_drops() {
        let a = Dd::from_f64(1e16) + Dd::from_f64(1.0);
        let b = a - Dd::from_f64(1e16);
        assert_eq!(b.to_f64(), 1.0);
        assert_eq!(b.lo(), 0.0);
    }

    #[test]
    fn two_prod_is_exact() {
        let a = 1.0 + f64::EPSILON;
        let (p, e) = two_prod(a, a);
        // a^2 = 1 + 2eps + eps^2; the eps^2 term must land in e.
        assert_eq!(p, 1.0 + 2.0 * f64::EPSILON);
        assert_eq!(e, f64::EPSILON * f64::EPSILON);
    }

    #[test]
    fn mul_div_roundtrip() {
        let x = Dd::from_f64(std::f64::consts::PI);
        let y = Dd::from_f64(std::f64::consts::E);
        let z = x * y / y;
        let err = (z - x).abs().to_f64();
        assert!(err < 1e-30, "err = {err}");
    }

    #[test]
    fn third_times_three() {
        let third = Dd::ONE / Dd::from_f64(3.0);
        let err = (third * Dd::from_f64(3.0) - Dd::ONE).abs().to_f64();
        assert!(err < 1e-31, "err = {err}");
    }

    #[test]
    fn sqrt_squares_back() {
        for v in [2.0, 3.0, 1e-8, 123456.789, 0.49] {
            let s = Dd::from_f64(v).sqrt();
            let err = (s * s - Dd::from_f64(v)).abs().to_f64();
            assert!(err <= 1e-30 * v, "v = {v}, err = {err}");
        }
        assert!(Dd::from_f64(0.0).sqrt().is_zero());
        assert!(Dd::from_f64(-1.0).sqrt().to_f64().is_nan());
    }

    #[test]
    fn sum_cancellation() {
        // 1 + 2^-80 - 1 survives in double-double but not in f64.
        let tiny = Dd::from_f64((2.0f64).powi(-80));
        let s = (Dd::ONE + tiny) - Dd::ONE;
        assert_eq!(s.to_f64(), (2.0f64).powi(-80));
    }

    #[test]
    fn ordering_uses_both_words() {
        let a = Dd::from_parts(1.0, 1e-20);
        let b = Dd::from_parts(1.0, 2e-20);
        assert!(a < b);
        assert!(b > a);
        assert_eq!(a, a);
    }

    #[test]
    fn complex_dd_field_ops() {
        use num_complex::Complex;
        let z = Complex::new(Dd::from_f64(3.0), Dd::from_f64(4.0));
        let w = Complex::new(Dd::from_f64(1.0), Dd::from_f64(-2.0));
        let q = z * w / w;
        assert!((q.re - z.re).abs().to_f64() < 1e-29);
        assert!((q.im - z.im).abs().to_f64() < 1e-29);
        assert_eq!(z.norm_sqr().to_f64(), 25.0);
    }
}
