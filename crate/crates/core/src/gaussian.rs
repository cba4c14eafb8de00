//! Gaussian integers `Z[i]` with arbitrary-precision parts.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn from_int(re: impl Into<BigInt>) -> Self {
        GaussianInt::new(re, 0)
    }

    pub fn i() -> Self {
        GaussianInt::new(0, 1)
    }

    pub fn zero() -> Self {
        GaussianInt::default()
    }

    pub fn one() -> Self {
        GaussianInt::new(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianInt {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `a² + b²`.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `max(|re|, |im|)`.
    pub fn height(&self) -> BigInt {
        self.re.abs().max(self.im.abs())
    }

    /// Representative of the class modulo `2Z[i]`, with both parts in `{0, 1}`.
    pub fn mod_two(&self) -> (u8, u8) {
        let two = BigInt::from(2);
        let r = self.re.mod_floor(&two);
        let i = self.im.mod_floor(&two);
        (u8::from(!r.is_zero()), u8::from(!i.is_zero()))
    }

    /// Exact quotient `self / other` when it lies in `Z[i]`.
    pub fn checked_div(&self, other: &GaussianInt) -> Option<GaussianInt> {
        if other.is_zero() {
            return None;
        }
        let n = other.norm();
        let num = self * &other.conj();
        let (qr, rr) = num.re.div_rem(&n);
        let (qi, ri) = num.im.div_rem(&n);
        (rr.is_zero() && ri.is_zero()).then(|| GaussianInt::new(qr, qi))
    }
}

impl From<i64> for GaussianInt {
    fn from(v: i64) -> Self {
        GaussianInt::from_int(v)
    }
}

impl From<(i64, i64)> for GaussianInt {
    fn from((re, im): (i64, i64)) -> Self {
        GaussianInt::new(re, im)
    }
}

impl<'a> Add<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'a> Sub<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'a> Mul<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Add for GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: GaussianInt) -> GaussianInt {
        &self + &rhs
    }
}

impl Sub for GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: GaussianInt) -> GaussianInt {
        &self - &rhs
    }
}

impl Mul for GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: GaussianInt) -> GaussianInt {
        &self * &rhs
    }
}

impl Neg for &GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt::new(-&self.re, -&self.im)
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        -&self
    }
}

/// Canonical `a+bi` form: zero parts suppressed, unit imaginary coefficient
/// written as `i`, `-i`.
impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |f: &mut fmt::Formatter<'_>, b: &BigInt, lead: bool| -> fmt::Result {
            let sign = if b.is_negative() {
                "-"
            } else if lead {
                ""
            } else {
                "+"
            };
            let mag = b.abs();
            if mag.is_one() {
                write!(f, "{sign}i")
            } else {
                write!(f, "{sign}{mag}i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => imag(f, &self.im, true),
            (false, false) => {
                write!(f, "{}", self.re)?;
                imag(f, &self.im, false)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = GaussianInt::new(1, 1);
        let b = GaussianInt::i();
        assert_eq!(&a * &b, GaussianInt::new(-1, 1));
        assert_eq!(&a + &b, GaussianInt::new(1, 2));
        assert_eq!(a.norm(), BigInt::from(2));
        assert_eq!(a.conj().conj(), a);
        assert_eq!((&a * &a.conj()).re, a.norm());
    }

    #[test]
    fn display_is_canonical() {
        let cases = [
            ((0, 0), "0"),
            ((3, 0), "3"),
            ((-3, 0), "-3"),
            ((0, 1), "i"),
            ((0, -1), "-i"),
            ((1, 1), "1+i"),
            ((-1, 4), "-1+4i"),
            ((2, -3), "2-3i"),
            ((0, 2), "2i"),
        ];
        for ((re, im), want) in cases {
            assert_eq!(GaussianInt::new(re, im).to_string(), want);
        }
    }

    #[test]
    fn mod_two_representatives() {
        assert_eq!(GaussianInt::new(-1, 3).mod_two(), (1, 1));
        assert_eq!(GaussianInt::new(4, -2).mod_two(), (0, 0));
    }

    #[test]
    fn exact_division() {
        let a = GaussianInt::new(3, 4);
        let b = GaussianInt::new(1, 2);
        let p = &a * &b;
        assert_eq!(p.checked_div(&b), Some(a));
        assert_eq!(GaussianInt::new(1, 0).checked_div(&GaussianInt::new(1, 1)), None);
    }
}
