//! JSON report documents. Field order is declaration order, so output is
//! byte-stable. Exact values are strings: rationals as `"p/q"` in lowest
//! terms, integers and polynomial coefficients as decimal strings, polynomials
//! as ascending coefficient lists.

use std::cmp::Ordering;

use nk_core::certify::{FamilyEnumeration, HomotopyVerdict, JumpLociReport, NonkahlerCertificate};
use nk_core::kummer::{EigenProfile, GaussianMatrix2};
use nk_core::matrix::RationalMatrix;
use nk_core::topology::{FormalityWitness, LefschetzReport, SymplecticClass, WangProfile};
use nk_core::{BigRational, IntPolynomial, IsolatingInterval};
use serde::Serialize;

use crate::parse::render_matrix;

pub const SCHEMA_VERSION: &str = "1.0";

pub fn rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn polynomial(p: &IntPolynomial) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

fn matrix_strings(m: &RationalMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(rational).collect()).collect()
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MatrixEcho {
    pub text: String,
    pub canonical: String,
    pub entries: [[String; 2]; 2],
}

impl MatrixEcho {
    pub fn new(text: &str, a: &GaussianMatrix2) -> Self {
        let e = a.entries();
        MatrixEcho {
            text: text.to_string(),
            canonical: render_matrix(a),
            entries: [
                [e[0].to_string(), e[1].to_string()],
                [e[2].to_string(), e[3].to_string()],
            ],
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IntervalJson {
    pub lo: String,
    pub hi: String,
    pub poly: Vec<String>,
    pub sign_changes: [usize; 2],
}

impl From<&IsolatingInterval> for IntervalJson {
    fn from(r: &IsolatingInterval) -> Self {
        IntervalJson {
            lo: rational(&r.lo),
            hi: rational(&r.hi),
            poly: polynomial(&r.poly),
            sign_changes: [r.sign_changes.0, r.sign_changes.1],
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WangJson {
    pub betti_n: [usize; 6],
    pub kernel_dims: [usize; 3],
    pub cokernel_dims: [usize; 3],
}

impl From<&WangProfile> for WangJson {
    fn from(w: &WangProfile) -> Self {
        WangJson {
            betti_n: w.betti_n,
            kernel_dims: w.kernel_dims,
            cokernel_dims: w.cokernel_dims,
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpectrumJson {
    pub char_poly_h2: Vec<String>,
    pub cyclotomic_factors: Vec<[u64; 2]>,
    pub non_cyclotomic_factor: Vec<String>,
    pub nonreal_non_cyclotomic_roots: usize,
    pub semisimple_at_one: bool,
}

impl From<&EigenProfile> for SpectrumJson {
    fn from(p: &EigenProfile) -> Self {
        SpectrumJson {
            char_poly_h2: polynomial(&p.char_poly),
            cyclotomic_factors: p.split.factors.iter().map(|&(n, e)| [n, u64::from(e)]).collect(),
            non_cyclotomic_factor: polynomial(&p.split.rest),
            nonreal_non_cyclotomic_roots: p.nonreal_noncyclotomic_roots,
            semisimple_at_one: p.semisimple_at_one,
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SymplecticJson {
    pub coordinates: Vec<String>,
    pub theta_in_v: Vec<String>,
    pub d: String,
}

impl From<&SymplecticClass> for SymplecticJson {
    fn from(w: &SymplecticClass) -> Self {
        SymplecticJson {
            coordinates: w.coordinates.iter().map(rational).collect(),
            theta_in_v: w.theta_in_v.iter().map(rational).collect(),
            d: rational(&w.d),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LefschetzMapJson {
    pub j: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub isomorphism: bool,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LefschetzJson {
    pub verdict: &'static str,
    pub maps: Vec<LefschetzMapJson>,
}

pub fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

impl From<&LefschetzReport> for LefschetzJson {
    fn from(r: &LefschetzReport) -> Self {
        LefschetzJson {
            verdict: pass_fail(r.verdict),
            maps: r
                .maps
                .iter()
                .map(|l| LefschetzMapJson {
                    j: l.j,
                    source_dim: l.matrix.cols(),
                    target_dim: l.matrix.rows(),
                    rank: l.rank,
                    isomorphism: l.isomorphism,
                    matrix: matrix_strings(&l.matrix),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckJson {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FormalityJson {
    pub verdict: &'static str,
    pub checks: Vec<CheckJson>,
    pub justification: Vec<String>,
}

impl From<&FormalityWitness> for FormalityJson {
    fn from(w: &FormalityWitness) -> Self {
        FormalityJson {
            verdict: pass_fail(w.verdict),
            checks: w
                .checks
                .iter()
                .map(|c| CheckJson {
                    name: c.name.clone(),
                    passed: c.passed,
                    detail: c.detail.clone(),
                })
                .collect(),
            justification: w.justification.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateJson {
    pub trace_norm_squared: String,
    pub char_poly_h2: Vec<String>,
    pub cyclotomic_part: Vec<String>,
    pub non_cyclotomic_factor: Vec<String>,
    pub witness_root: IntervalJson,
    pub conclusion: String,
}

impl From<&NonkahlerCertificate> for CertificateJson {
    fn from(c: &NonkahlerCertificate) -> Self {
        CertificateJson {
            trace_norm_squared: c.trace_norm_squared.to_string(),
            char_poly_h2: polynomial(&c.char_poly_h2),
            cyclotomic_part: polynomial(&c.cyclotomic_part),
            non_cyclotomic_factor: polynomial(&c.non_cyclotomic_factor),
            witness_root: (&c.witness_root).into(),
            conclusion: c.conclusion.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct JumpLociJson {
    pub character_torus_rank: usize,
    pub component_description: String,
    pub char_poly_even: Vec<String>,
    pub cyclotomic_factors: Vec<[u64; 2]>,
    pub non_cyclotomic_factor: Vec<String>,
    pub non_cyclotomic_factor_self_reciprocal: bool,
    pub non_unitary_points: Vec<IntervalJson>,
    pub unitary_non_torsion_count: usize,
}

impl From<&JumpLociReport> for JumpLociJson {
    fn from(j: &JumpLociReport) -> Self {
        JumpLociJson {
            character_torus_rank: j.character_torus_rank,
            component_description: j.component_description.clone(),
            char_poly_even: polynomial(&j.char_poly_even),
            cyclotomic_factors: j.split.factors.iter().map(|&(n, e)| [n, u64::from(e)]).collect(),
            non_cyclotomic_factor: polynomial(&j.split.rest),
            non_cyclotomic_factor_self_reciprocal: j.rest_self_reciprocal,
            non_unitary_points: j.non_unitary_points.iter().map(IntervalJson::from).collect(),
            unitary_non_torsion_count: j.unitary_non_torsion_count,
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalyzeReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub input: MatrixEcho,
    pub permutation_cycle_type: Vec<usize>,
    pub fixed_subspace_dim: usize,
    pub spectrum: SpectrumJson,
    pub wang: WangJson,
    pub betti: [usize; 7],
    pub symplectic_class: SymplecticJson,
    pub lefschetz: LefschetzJson,
    pub formality: FormalityJson,
    pub certificate: CertificateJson,
    pub jump_loci: JumpLociJson,
    pub warnings: Vec<String>,
    pub normalization_notes: Vec<String>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CertifyReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub input: MatrixEcho,
    pub certificate: CertificateJson,
    pub normalization_notes: Vec<String>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CompareReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub a: MatrixEcho,
    pub b: MatrixEcho,
    pub verdict: &'static str,
    pub ordering: &'static str,
    pub factor_a: Vec<String>,
    pub factor_b: Vec<String>,
    pub transcript: Vec<String>,
    pub notes: Vec<String>,
}

pub fn ordering_str(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
}

impl CompareReport {
    pub fn new(a: MatrixEcho, b: MatrixEcho, v: &HomotopyVerdict) -> Self {
        CompareReport {
            schema_version: SCHEMA_VERSION,
            command: "compare",
            a,
            b,
            verdict: v.verdict.as_str(),
            ordering: ordering_str(v.ordering),
            factor_a: polynomial(&v.factors.0),
            factor_b: polynomial(&v.factors.1),
            transcript: v.transcript.clone(),
            notes: v.notes.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyMemberJson {
    pub matrix: String,
    pub trace_norm_squared: String,
    pub non_cyclotomic_factor: Vec<String>,
    pub witness_root: IntervalJson,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyGroupJson {
    pub non_cyclotomic_factor: Vec<String>,
    pub members: Vec<String>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EnumerateReport {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub height_bound: u32,
    pub member_count: usize,
    pub group_count: usize,
    pub members: Vec<FamilyMemberJson>,
    pub groups: Vec<FamilyGroupJson>,
}

impl From<&FamilyEnumeration> for EnumerateReport {
    fn from(f: &FamilyEnumeration) -> Self {
        EnumerateReport {
            schema_version: SCHEMA_VERSION,
            command: "enumerate",
            height_bound: f.height,
            member_count: f.members.len(),
            group_count: f.groups.len(),
            members: f
                .members
                .iter()
                .map(|m| FamilyMemberJson {
                    matrix: render_matrix(&m.matrix),
                    trace_norm_squared: m.certificate.trace_norm_squared.to_string(),
                    non_cyclotomic_factor: polynomial(&m.certificate.non_cyclotomic_factor),
                    witness_root: (&m.certificate.witness_root).into(),
                })
                .collect(),
            groups: f
                .groups
                .iter()
                .map(|g| FamilyGroupJson {
                    non_cyclotomic_factor: polynomial(&g.factor),
                    members: g.members.iter().map(|&i| render_matrix(&f.members[i].matrix)).collect(),
                })
                .collect(),
        }
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}
