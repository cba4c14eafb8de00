//! Nonkählerness certificates, spectral-radius comparison, jump loci and the
//! enumeration of gated matrices of bounded height.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::cyclotomic::{cyclotomic_split, CyclotomicSplit};
use crate::error::{Error, Result};
use crate::gaussian::GaussianInt;
use crate::kummer::{kummer_action, reciprocal_root_pair, GaussianMatrix2};
use crate::poly::IntPolynomial;
use crate::sturm::{compare_largest_real_roots, sturm_isolate_real_roots, IsolatingInterval};

/// Isolating intervals in reports are refined below this width.
pub fn default_refine_width() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(1000))
}

pub const NONKAHLER_CONCLUSION: &str =
    "M(A) x Y is not homotopy equivalent to any compact Kaehler manifold for any Y";

/// Exact evidence that the `H²` monodromy has an eigenvalue that is not a root of unity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonkahlerCertificate {
    pub matrix: GaussianMatrix2,
    pub trace_norm_squared: BigInt,
    /// Characteristic polynomial of the 22×22 action on `H²(K)`.
    pub char_poly_h2: IntPolynomial,
    pub cyclotomic_part: IntPolynomial,
    pub non_cyclotomic_factor: IntPolynomial,
    /// A root `r = |λ|²` of the factor, with `lo > 1`.
    pub witness_root: IsolatingInterval,
    pub conclusion: String,
}

impl NonkahlerCertificate {
    /// Re-checks every claim from scratch.
    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Consistency(m));
        if self.trace_norm_squared != self.matrix.trace_norm_squared()
            || self.trace_norm_squared <= BigInt::from(4)
        {
            return fail("trace gate".into());
        }
        let recomputed = kummer_action(&self.matrix).matrix().char_poly_int()?;
        if recomputed != self.char_poly_h2 {
            return fail("characteristic polynomial does not match the action".into());
        }
        if &self.cyclotomic_part * &self.non_cyclotomic_factor != self.char_poly_h2 {
            return fail("cyclotomic part times factor differs from the characteristic polynomial".into());
        }
        if self.char_poly_h2.div_exact(&self.non_cyclotomic_factor)?.is_none() {
            return fail("factor does not divide the characteristic polynomial".into());
        }
        if self
            .non_cyclotomic_factor
            .div_exact(&self.witness_root.poly)?
            .is_none()
        {
            return fail("witness polynomial does not divide the factor".into());
        }
        if !self.witness_root.verify() {
            return fail("witness interval is not a certified isolating interval".into());
        }
        if self.witness_root.lo <= BigRational::one() {
            return fail("witness interval does not lie right of 1".into());
        }
        Ok(())
    }
}

pub fn certify_nonkahler(a: &GaussianMatrix2) -> Result<NonkahlerCertificate> {
    certify_nonkahler_with_width(a, &default_refine_width())
}

pub fn certify_nonkahler_with_width(a: &GaussianMatrix2, width: &BigRational) -> Result<NonkahlerCertificate> {
    a.require_trace_gate()?;
    let char_poly_h2 = kummer_action(a).matrix().char_poly_int()?;
    let split = cyclotomic_split(&char_poly_h2)?;
    let roots = sturm_isolate_real_roots(&split.rest)?;
    let one = BigRational::one();
    let witness = roots
        .iter()
        .rev()
        .map(|r| r.refine_away_from(&one))
        .find(|r| r.lo > one)
        .ok_or_else(|| {
            Error::Consistency(format!(
                "no real root > 1 in the non-cyclotomic factor {} despite the trace gate",
                split.rest
            ))
        })?;
    Ok(NonkahlerCertificate {
        matrix: a.clone(),
        trace_norm_squared: a.trace_norm_squared(),
        char_poly_h2,
        cyclotomic_part: split.cyclotomic_part,
        non_cyclotomic_factor: split.rest,
        witness_root: witness.refine_to_width(width),
        conclusion: NONKAHLER_CONCLUSION.into(),
    })
}

/// Non-cyclotomic factor of the `H²` characteristic polynomial.
pub fn spectral_factor(a: &GaussianMatrix2) -> Result<IntPolynomial> {
    let cp = kummer_action(a).matrix().char_poly_int()?;
    Ok(cyclotomic_split(&cp)?.rest)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Distinct,
    InconclusiveEqualRadii,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Distinct => "Distinct",
            Verdict::InconclusiveEqualRadii => "InconclusiveEqualRadii",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyVerdict {
    pub verdict: Verdict,
    pub factors: (IntPolynomial, IntPolynomial),
    /// Ordering of the spectral radii of the first and second input.
    pub ordering: Ordering,
    pub transcript: Vec<String>,
    pub notes: Vec<String>,
}

pub fn compare_homotopy_types(a1: &GaussianMatrix2, a2: &GaussianMatrix2) -> Result<HomotopyVerdict> {
    a1.require_trace_gate()?;
    a2.require_trace_gate()?;
    let f1 = spectral_factor(a1)?;
    let f2 = spectral_factor(a2)?;
    let cmp = compare_largest_real_roots(&f1, &f2)?;
    let mut notes = Vec::new();
    let verdict = if cmp.ordering == Ordering::Equal {
        notes.push(
            "equal spectral radii do not imply homotopy equivalence; the question stays open".into(),
        );
        if a1 == &-a2 {
            notes.push("the inputs differ by sign and M(A) = M(-A)".into());
        }
        Verdict::InconclusiveEqualRadii
    } else {
        notes.push("different spectral radii, so M(A1) and M(A2) are not homotopy equivalent".into());
        Verdict::Distinct
    };
    Ok(HomotopyVerdict {
        verdict,
        factors: (f1, f2),
        ordering: cmp.ordering,
        transcript: cmp.transcript,
        notes,
    })
}

/// Rank-one jump loci of `M(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpLociReport {
    pub character_torus_rank: usize,
    pub component_description: String,
    /// Characteristic polynomial of the action on `H⁰ ⊕ H² ⊕ H⁴` (24×24).
    pub char_poly_even: IntPolynomial,
    pub split: CyclotomicSplit,
    pub rest_self_reciprocal: bool,
    /// Real roots of the non-cyclotomic factor, ascending; `[1/r, r]` when gated.
    pub non_unitary_points: Vec<IsolatingInterval>,
    /// Non-real roots of the non-cyclotomic factor (modulus one, not torsion).
    pub unitary_non_torsion_count: usize,
}

pub fn jump_loci(a: &GaussianMatrix2) -> Result<JumpLociReport> {
    a.require_trace_gate()?;
    jump_loci_ungated(a)
}

/// As [`jump_loci`] but without the trace gate.
pub fn jump_loci_ungated(a: &GaussianMatrix2) -> Result<JumpLociReport> {
    let char_poly_even = kummer_action(a).even_cohomology_matrix().char_poly_int()?;
    let split = cyclotomic_split(&char_poly_even)?;
    let width = default_refine_width();
    let (non_unitary_points, real_count) = if split.rest.is_constant() {
        (Vec::new(), 0)
    } else if a.passes_trace_gate() {
        let (r, s) = reciprocal_root_pair(&split.rest)?;
        (vec![s.refine_to_width(&width), r.refine_to_width(&width)], 2)
    } else {
        let roots: Vec<IsolatingInterval> = sturm_isolate_real_roots(&split.rest)?
            .iter()
            .map(|r| r.refine_to_width(&width))
            .collect();
        let n = roots.len();
        (roots, n)
    };
    let sf_degree = split.rest.square_free_part()?.degree().unwrap_or(0);
    Ok(JumpLociReport {
        character_torus_rank: 2,
        component_description: "{1} x C*".into(),
        rest_self_reciprocal: split.rest.is_constant() || split.rest.is_self_reciprocal(),
        char_poly_even,
        split,
        non_unitary_points,
        unitary_non_torsion_count: sf_degree - real_count,
    })
}

/// All `A ∈ SL(2, Z[i])` whose entries have height at most `h`, in
/// lexicographic order. No trace gate.
pub fn sl2_of_height(h: u32) -> Vec<GaussianMatrix2> {
    let h = h as i64;
    let ints: Vec<GaussianInt> = (-h..=h)
        .flat_map(|re| (-h..=h).map(move |im| GaussianInt::new(re, im)))
        .collect();
    let bound = BigInt::from(h);
    let one = GaussianInt::one();
    let mut out: Vec<GaussianMatrix2> = ints
        .par_iter()
        .flat_map_iter(|a11| {
            let mut local = Vec::new();
            for a12 in &ints {
                for a21 in &ints {
                    let rhs = &one + &(a12 * a21);
                    if a11.is_zero() {
                        if rhs.is_zero() {
                            for a22 in &ints {
                                local.push(
                                    GaussianMatrix2::new(a11.clone(), a12.clone(), a21.clone(), a22.clone())
                                        .expect("det = -a12 a21 = 1"),
                                );
                            }
                        }
                    } else if let Some(a22) = rhs.checked_div(a11) {
                        if a22.height() <= bound {
                            local.push(
                                GaussianMatrix2::new(a11.clone(), a12.clone(), a21.clone(), a22)
                                    .expect("det = 1 by construction"),
                            );
                        }
                    }
                }
            }
            local
        })
        .collect();
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMember {
    pub matrix: GaussianMatrix2,
    pub certificate: NonkahlerCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyGroup {
    pub factor: IntPolynomial,
    /// Indices into [`FamilyEnumeration::members`].
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyEnumeration {
    pub height: u32,
    pub members: Vec<FamilyMember>,
    pub groups: Vec<FamilyGroup>,
}

/// Gated matrices of height `≤ h`, one per class `{A, -A}`, each certified and
/// grouped by non-cyclotomic factor (groups in order of first member).
pub fn enumerate_family(h: u32) -> Result<FamilyEnumeration> {
    if h == 0 {
        return Err(Error::InvalidInput("height bound must be at least 1".into()));
    }
    let candidates: Vec<GaussianMatrix2> = sl2_of_height(h)
        .into_iter()
        .filter(|a| a.passes_trace_gate() && a.sign_canonical() == *a)
        .collect();
    let members: Vec<FamilyMember> = candidates
        .into_par_iter()
        .map(|matrix| {
            let certificate = certify_nonkahler(&matrix)?;
            Ok(FamilyMember { matrix, certificate })
        })
        .collect::<Result<_>>()?;
    let mut groups: Vec<FamilyGroup> = Vec::new();
    for (i, m) in members.iter().enumerate() {
        let f = &m.certificate.non_cyclotomic_factor;
        match groups.iter_mut().find(|g| &g.factor == f) {
            Some(g) => g.members.push(i),
            None => groups.push(FamilyGroup {
                factor: f.clone(),
                members: vec![i],
            }),
        }
    }
    Ok(FamilyEnumeration {
        height: h,
        members,
        groups,
    })
}
