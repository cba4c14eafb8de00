//! Certified real-root isolation by Sturm sequences, and exact comparison of
//! largest real roots.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// An open interval `(lo, hi)` holding exactly one real root of `poly`.
///
/// `poly` is the square-free part of the polynomial that was isolated, so it
/// changes sign across the root. `sign_changes` holds the Sturm variation
/// counts at `lo` and `hi`; their difference is one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub poly: IntPolynomial,
    pub sign_changes: (usize, usize),
}

impl IsolatingInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint_f64(&self) -> f64 {
        rational_to_f64(&((&self.lo + &self.hi) / BigRational::from(BigInt::from(2))))
    }

    /// Re-derives the Sturm counts at both endpoints and checks they differ by
    /// one and that `poly` changes sign across the interval.
    pub fn verify(&self) -> bool {
        if self.lo >= self.hi {
            return false;
        }
        let seq = sturm_sequence(&self.poly);
        let vl = sign_variations_at(&seq, &self.lo);
        let vh = sign_variations_at(&seq, &self.hi);
        let sl = self.poly.sign_at(&self.lo);
        let sh = self.poly.sign_at(&self.hi);
        vl == vh + 1 && (vl, vh) == self.sign_changes && sl * sh < 0
    }

    /// Bisects until the width is strictly below `width`.
    pub fn refine_to_width(&self, width: &BigRational) -> IsolatingInterval {
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        let lo_sign = self.poly.sign_at(&lo);
        while &(&hi - &lo) >= width {
            let mid = split_point(&self.poly, &lo, &hi);
            if self.poly.sign_at(&mid) == lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        self.with_bounds(lo, hi)
    }

    /// Bisects until `lo > bound` or `hi < bound` (the root differs from `bound`
    /// or the caller knows it does not equal it).
    pub fn refine_away_from(&self, bound: &BigRational) -> IsolatingInterval {
        let mut cur = self.clone();
        while cur.lo <= *bound && cur.hi >= *bound {
            let half = cur.width() / BigRational::from(BigInt::from(2));
            cur = cur.refine_to_width(&half);
        }
        cur
    }

    fn with_bounds(&self, lo: BigRational, hi: BigRational) -> IsolatingInterval {
        let seq = sturm_sequence(&self.poly);
        let sign_changes = (sign_variations_at(&seq, &lo), sign_variations_at(&seq, &hi));
        IsolatingInterval {
            lo,
            hi,
            poly: self.poly.clone(),
            sign_changes,
        }
    }

    fn overlaps(&self, other: &IsolatingInterval) -> bool {
        self.lo < other.hi && other.lo < self.hi
    }
}

/// Approximation for human-readable output only.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Sturm sequence `p, p', -rem(p, p'), …`, with each term made primitive and
/// pseudo-remainder signs corrected so the sign pattern is preserved.
pub fn sturm_sequence(p: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut seq = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        let lc = b.leading().expect("nonzero").clone();
        let steps = a.degree().unwrap() + 1 - b.degree().unwrap();
        let r = a.pseudo_rem(b).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        // prem = lc^steps · rem; Sturm wants -rem up to a positive factor.
        let factor_negative = lc.is_negative() && steps % 2 == 1;
        let c = r.content();
        let mut next = IntPolynomial::new(r.coeffs().iter().map(|x| x / &c).collect());
        if !factor_negative {
            next = -&next;
        }
        seq.push(next);
    }
    seq
}

fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

pub fn sign_variations_at(seq: &[IntPolynomial], x: &BigRational) -> usize {
    count_variations(seq.iter().map(|p| p.sign_at(x)))
}

fn sign_variations_pos_inf(seq: &[IntPolynomial]) -> usize {
    count_variations(seq.iter().map(IntPolynomial::sign_at_pos_infinity))
}

fn sign_variations_neg_inf(seq: &[IntPolynomial]) -> usize {
    count_variations(seq.iter().map(IntPolynomial::sign_at_neg_infinity))
}

/// Number of distinct real roots.
pub fn count_real_roots(p: &IntPolynomial) -> Result<usize> {
    let sf = p.square_free_part()?;
    let seq = sturm_sequence(&sf);
    Ok(sign_variations_neg_inf(&seq) - sign_variations_pos_inf(&seq))
}

/// Number of distinct roots in the open interval `(lo, hi)`; `lo` and `hi`
/// must not be roots.
pub fn count_roots_between(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> Result<usize> {
    let sf = p.square_free_part()?;
    if sf.sign_at(lo) == 0 || sf.sign_at(hi) == 0 {
        return Err(Error::InvalidInput("interval endpoint is a root".into()));
    }
    let seq = sturm_sequence(&sf);
    Ok(sign_variations_at(&seq, lo).saturating_sub(sign_variations_at(&seq, hi)))
}

/// An integer `B` with every real root strictly inside `(-B, B)` (Cauchy bound).
pub fn root_bound(p: &IntPolynomial) -> BigInt {
    let lc = p.leading().expect("nonzero").abs();
    let max = p
        .coeffs()
        .iter()
        .rev()
        .skip(1)
        .map(Signed::abs)
        .max()
        .unwrap_or_default();
    // 1 + max|a_i|/|a_n| < 2 + floor(max/|a_n|)
    BigInt::from(2) + max / lc
}

/// A point strictly inside `(lo, hi)` that is not a root of `p`.
fn split_point(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> BigRational {
    let two = BigRational::from(BigInt::from(2));
    let mid = (lo + hi) / two;
    if p.sign_at(&mid) != 0 {
        return mid;
    }
    // Finitely many roots: one of lo + (hi - lo)·k/(2k+1) avoids them.
    (1..)
        .map(|k: i64| {
            let k = BigRational::from(BigInt::from(k));
            lo + (hi - lo) * &k / (&k * BigRational::from(BigInt::from(2)) + BigRational::one())
        })
        .find(|x| p.sign_at(x) != 0)
        .expect("finitely many roots")
}

/// Disjoint open intervals, one per distinct real root, in increasing order.
pub fn sturm_isolate_real_roots(p: &IntPolynomial) -> Result<Vec<IsolatingInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = p.square_free_part()?;
    if sf.is_constant() {
        return Ok(Vec::new());
    }
    let seq = sturm_sequence(&sf);
    let b = BigRational::from(root_bound(&sf));
    let lo = -b.clone();
    let hi = b;
    let mut out = Vec::new();
    let mut stack = vec![(
        lo.clone(),
        hi.clone(),
        sign_variations_at(&seq, &lo),
        sign_variations_at(&seq, &hi),
    )];
    while let Some((lo, hi, vl, vh)) = stack.pop() {
        match vl.saturating_sub(vh) {
            0 => {}
            1 => out.push(IsolatingInterval {
                lo,
                hi,
                poly: sf.clone(),
                sign_changes: (vl, vh),
            }),
            _ => {
                let mid = split_point(&sf, &lo, &hi);
                let vm = sign_variations_at(&seq, &mid);
                stack.push((lo, mid.clone(), vl, vm));
                stack.push((mid, hi, vm, vh));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Exact comparison of the largest real roots of two polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootComparison {
    pub ordering: Ordering,
    /// Final isolating interval of the largest root of the first polynomial.
    pub left: IsolatingInterval,
    /// Final isolating interval of the largest root of the second polynomial.
    pub right: IsolatingInterval,
    /// Square-free gcd witnessing equality, when the roots coincide.
    pub shared_factor: Option<IntPolynomial>,
    /// Human-readable log of the decision.
    pub transcript: Vec<String>,
}

/// Largest real root of `p`, which must be positive.
pub fn largest_positive_root(p: &IntPolynomial) -> Result<IsolatingInterval> {
    let roots = sturm_isolate_real_roots(p)?;
    let top = roots
        .last()
        .ok_or_else(|| Error::NoPositiveRoot(p.to_string()))?;
    let zero = BigRational::zero();
    if top.hi <= zero {
        return Err(Error::NoPositiveRoot(p.to_string()));
    }
    if top.lo < zero {
        if top.poly.sign_at(&zero) == 0 {
            return Err(Error::NoPositiveRoot(p.to_string()));
        }
        let r = top.refine_away_from(&zero);
        if r.hi <= zero {
            return Err(Error::NoPositiveRoot(p.to_string()));
        }
        return Ok(r);
    }
    Ok(top.clone())
}

/// Compares the largest real roots of `p` and `q` exactly.
///
/// Equality is decided algebraically: the roots coincide iff the square-free
/// gcd has a root in the intersection of the two isolating intervals. Otherwise
/// the intervals are bisected until they separate.
pub fn compare_largest_real_roots(p: &IntPolynomial, q: &IntPolynomial) -> Result<RootComparison> {
    let mut a = largest_positive_root(p)?;
    let mut b = largest_positive_root(q)?;
    let mut transcript = vec![
        format!("largest root of {} in ({}, {})", a.poly, a.lo, a.hi),
        format!("largest root of {} in ({}, {})", b.poly, b.lo, b.hi),
    ];
    let g = a.poly.gcd(&b.poly);
    if !g.is_constant() && a.overlaps(&b) {
        let lo = (&a.lo).max(&b.lo).clone();
        let hi = (&a.hi).min(&b.hi).clone();
        // Endpoints come from isolating intervals of p or q, so they are not
        // roots of g (which divides both).
        if count_roots_between(&g, &lo, &hi)? > 0 {
            transcript.push(format!(
                "common factor {g} has a root in ({lo}, {hi}); the largest roots coincide"
            ));
            return Ok(RootComparison {
                ordering: Ordering::Equal,
                left: a,
                right: b,
                shared_factor: Some(g),
                transcript,
            });
        }
    }
    let mut rounds = 0usize;
    while a.overlaps(&b) {
        let two = BigRational::from(BigInt::from(2));
        a = a.refine_to_width(&(a.width() / &two));
        b = b.refine_to_width(&(b.width() / &two));
        rounds += 1;
    }
    let ordering = if a.hi <= b.lo {
        Ordering::Less
    } else {
        Ordering::Greater
    };
    transcript.push(format!(
        "after {rounds} bisection rounds: ({}, {}) vs ({}, {}) are disjoint",
        a.lo, a.hi, b.lo, b.hi
    ));
    Ok(RootComparison {
        ordering,
        left: a,
        right: b,
        shared_factor: None,
        transcript,
    })
}
