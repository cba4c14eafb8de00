//! Cyclotomic factors of integer polynomials.
//!
//! A monic integer polynomial whose roots all lie on the unit circle has only
//! roots of unity as roots (Kronecker), so a matrix is quasi-unipotent exactly
//! when its characteristic polynomial is a product of cyclotomic polynomials.
//! Detection is by trial division against every `Φ_n` with `φ(n) ≤ deg p`.

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::poly::IntPolynomial;

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// `Φ_n`, computed as `(t^n - 1) / Π_{d | n, d < n} Φ_d`.
pub fn cyclotomic_polynomial(n: u64) -> IntPolynomial {
    assert!(n >= 1, "Φ_0 is undefined");
    let mut p = &IntPolynomial::monomial(n as usize) - &IntPolynomial::one();
    for d in (1..n).filter(|d| n % d == 0) {
        p = p
            .div_exact(&cyclotomic_polynomial(d))
            .expect("Φ_d is nonzero")
            .expect("Φ_d divides t^n - 1");
    }
    p
}

/// Every `n` with `φ(n) ≤ degree`. Since `φ(n) ≥ √(n/2)`, `n ≤ 2·degree²`.
pub fn cyclotomic_indices_up_to_degree(degree: usize) -> Vec<u64> {
    let d = degree as u64;
    (1..=2 * d * d + 2).filter(|&n| euler_phi(n) <= d).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicSplit {
    /// Product of all cyclotomic factors, with multiplicity.
    pub cyclotomic_part: IntPolynomial,
    /// `p / cyclotomic_part`, carrying the content and sign of `p`.
    pub rest: IntPolynomial,
    /// `(n, e)` for each `Φ_n^e` dividing `p` exactly, in increasing `n`.
    pub factors: Vec<(u64, u32)>,
}

impl CyclotomicSplit {
    pub fn rest_is_constant(&self) -> bool {
        self.rest.is_constant()
    }
}

/// Splits `p = cyclotomic_part · rest` with `cyclotomic_part` the maximal
/// product of cyclotomic polynomials dividing `p`.
pub fn cyclotomic_split(p: &IntPolynomial) -> Result<CyclotomicSplit> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    let mut rest = p.clone();
    let mut cyclotomic_part = IntPolynomial::one();
    let mut factors = Vec::new();
    for n in cyclotomic_indices_up_to_degree(deg) {
        if rest.degree().unwrap_or(0) < euler_phi(n) as usize {
            continue;
        }
        let phi = cyclotomic_polynomial(n);
        let mut e = 0u32;
        while let Some(q) = rest.div_exact(&phi)? {
            rest = q;
            cyclotomic_part = &cyclotomic_part * &phi;
            e += 1;
        }
        if e > 0 {
            factors.push((n, e));
        }
    }
    Ok(CyclotomicSplit {
        cyclotomic_part,
        rest,
        factors,
    })
}

/// All eigenvalues of an integer matrix are roots of unity.
pub fn is_quasi_unipotent(m: &RationalMatrix) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "is_quasi_unipotent needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let cp = m.char_poly_int()?;
    Ok(cyclotomic_split(&cp)?.rest_is_constant())
}
