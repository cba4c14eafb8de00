//! Dense univariate polynomials over `Z` (and a thin rational counterpart for
//! characteristic polynomials of rational matrices).
//!
//! Coefficients are stored in ascending degree with no trailing zeros, so the
//! zero polynomial has an empty coefficient vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    pub fn one() -> Self {
        IntPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::new(vec![c])
    }

    /// `t^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        IntPolynomial { coeffs }
    }

    /// `t - c`.
    pub fn linear_root(c: i64) -> Self {
        IntPolynomial::from_i64(&[-c, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        IntPolynomial::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|a| a * k).collect())
    }

    pub fn derivative(&self) -> Self {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = IntPolynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Value at an integer point.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Value at a rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let d = self.coeffs.len().saturating_sub(1) as u32;
        BigRational::new(self.eval_homogeneous(x), x.denom().pow(d))
    }

    /// `q^d · p(r/q)` for `x = r/q` in lowest terms with `q > 0`. Same sign as `p(x)`.
    fn eval_homogeneous(&self, x: &BigRational) -> BigInt {
        let (num, den) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        // Homogenised Horner: acc = Σ c_i num^i den^(d-i).
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        acc
    }

    /// Sign of `p(x)` as `-1`, `0` or `1`.
    pub fn sign_at(&self, x: &BigRational) -> i8 {
        let v = self.eval_homogeneous(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Sign of `p(t)` as `t → +∞`.
    pub fn sign_at_pos_infinity(&self) -> i8 {
        match self.leading() {
            None => 0,
            Some(c) if c.is_positive() => 1,
            Some(_) => -1,
        }
    }

    /// Sign of `p(t)` as `t → −∞`.
    pub fn sign_at_neg_infinity(&self) -> i8 {
        let s = self.sign_at_pos_infinity();
        if self.degree().is_some_and(|d| d % 2 == 1) {
            -s
        } else {
            s
        }
    }

    /// Pseudo-remainder `lc(d)^(deg self - deg d + 1) · self mod d`.
    pub fn pseudo_rem(&self, divisor: &IntPolynomial) -> Result<IntPolynomial> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lc = divisor.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok(self.clone());
        }
        let steps = r.len() - dd;
        for _ in 0..steps {
            let top = r.len() - 1;
            let lead = r[top].clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            let shift = top - dd;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                r[shift + i] -= &lead * dc;
            }
            r.pop();
        }
        Ok(IntPolynomial::new(r))
    }

    /// Division with remainder by a divisor whose leading coefficient is a
    /// unit, or more generally when every step divides exactly. Returns
    /// `None` if some step leaves the integers.
    pub fn div_rem(&self, divisor: &IntPolynomial) -> Result<Option<(IntPolynomial, IntPolynomial)>> {
        let dd = divisor.degree().ok_or(Error::ZeroPolynomial)?;
        let lc = divisor.leading().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok(Some((IntPolynomial::zero(), self.clone())));
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        while r.len() > dd {
            let top = r.len() - 1;
            let (f, rem) = r[top].div_rem(lc);
            if !rem.is_zero() {
                return Ok(None);
            }
            let shift = top - dd;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                r[shift + i] -= &f * dc;
            }
            q[shift] = f;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) && r.len() > dd {
                r.pop();
            }
        }
        Ok(Some((IntPolynomial::new(q), IntPolynomial::new(r))))
    }

    /// `self / divisor` when the division is exact over `Z`.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Result<Option<IntPolynomial>> {
        Ok(self
            .div_rem(divisor)?
            .and_then(|(q, r)| r.is_zero().then_some(q)))
    }

    /// Primitive gcd with positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).expect("b nonzero").primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// Product of the distinct irreducible factors (up to content), i.e.
    /// `p / gcd(p, p')`, made primitive.
    pub fn square_free_part(&self) -> Result<IntPolynomial> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_constant() {
            return Ok(IntPolynomial::one());
        }
        let g = self.gcd(&self.derivative());
        let p = self.primitive();
        p.div_exact(&g)?
            .map(|q| q.primitive())
            .ok_or_else(|| Error::Consistency("gcd(p, p') does not divide p".into()))
    }

    /// `t^deg · p(1/t)`.
    pub fn reciprocal(&self) -> IntPolynomial {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPolynomial::new(c)
    }

    /// Palindromic (`p = t^d p(1/t)`) or anti-palindromic (`p = -t^d p(1/t)`).
    /// Both mean the root multiset is closed under `z ↦ 1/z` and excludes 0.
    pub fn is_self_reciprocal(&self) -> bool {
        if self.is_zero() || self.coeffs[0].is_zero() {
            return false;
        }
        let r = self.reciprocal();
        r == *self || r == -self
    }
}

impl<'a> Add<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        &self * &rhs
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Human-readable form in the variable `t`, highest degree first.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial with rational coefficients, ascending degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RatPolynomial {
    coeffs: Vec<BigRational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The same polynomial over `Z`, when every coefficient is an integer.
    pub fn to_int(&self) -> Option<IntPolynomial> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPolynomial::new)
    }

    /// Primitive integer polynomial with the same roots.
    pub fn clear_denominators(&self) -> IntPolynomial {
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        IntPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| (c * BigRational::from(l.clone())).to_integer())
                .collect(),
        )
        .primitive()
    }
}

impl From<&IntPolynomial> for RatPolynomial {
    fn from(p: &IntPolynomial) -> Self {
        RatPolynomial::new(p.coeffs.iter().cloned().map(BigRational::from).collect())
    }
}
