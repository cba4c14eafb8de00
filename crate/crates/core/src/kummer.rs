//! The action of `A ∈ SL(2, Z[i])` on `H²(K; Q)` of the Kummer surface of the
//! standard lattice.
//!
//! `H²(K; Q)` has dimension 22 and splits as the span of the 16 exceptional
//! divisor classes `PD(Y_j)` (one per two-torsion point of the torus) plus a
//! 6-dimensional summand identified with `Λ²(Q⁴)*`, the 2-forms on the torus.
//! Coordinates are ordered: 16 divisor classes in point-index order, then the
//! 2-forms in the basis `(e12, e13, e14, e23, e24, e34)`.
//!
//! Real coordinates on `C² = R⁴` are `z₁ = x₁ + i x₂`, `z₂ = x₃ + i x₄`.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::{cyclotomic_split, CyclotomicSplit};
use crate::error::{Error, Result};
use crate::gaussian::GaussianInt;
use crate::matrix::{q, QVector, RationalMatrix, Signature};
use crate::poly::IntPolynomial;
use crate::sturm::{sturm_isolate_real_roots, IsolatingInterval};

pub const DIVISOR_RANK: usize = 16;
pub const TORUS_RANK: usize = 6;
pub const H2_RANK: usize = DIVISOR_RANK + TORUS_RANK;

/// Index pairs of the ordered `Λ²` basis `(e12, e13, e14, e23, e24, e34)` (0-based).
pub const WEDGE_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// `θ = Re(dz₁∧dz₂) = e13 - e24` in the `Λ²` basis.
pub const THETA_WEDGE: [i64; 6] = [0, 1, 0, 0, -1, 0];
/// `η = Im(dz₁∧dz₂) = e14 + e23` in the `Λ²` basis.
pub const ETA_WEDGE: [i64; 6] = [0, 0, 1, 1, 0, 0];

/// A 2×2 Gaussian-integer matrix of determinant one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianMatrix2 {
    entries: [GaussianInt; 4],
}

impl GaussianMatrix2 {
    /// Row-major `[[a11, a12], [a21, a22]]`; rejects `det ≠ 1`.
    pub fn new(a11: GaussianInt, a12: GaussianInt, a21: GaussianInt, a22: GaussianInt) -> Result<Self> {
        let m = GaussianMatrix2 {
            entries: [a11, a12, a21, a22],
        };
        let det = m.det();
        if !det.is_one() {
            return Err(Error::InvalidInput(format!(
                "matrix must have determinant 1, got det = {det}"
            )));
        }
        Ok(m)
    }

    /// Convenience constructor from `(re, im)` pairs.
    pub fn from_pairs(e: [(i64, i64); 4]) -> Result<Self> {
        let [a, b, c, d] = e.map(GaussianInt::from);
        GaussianMatrix2::new(a, b, c, d)
    }

    pub fn identity() -> Self {
        GaussianMatrix2 {
            entries: [
                GaussianInt::one(),
                GaussianInt::zero(),
                GaussianInt::zero(),
                GaussianInt::one(),
            ],
        }
    }

    /// The Example family `[[1, n-2], [1, n-1]]`.
    pub fn real_family(n: i64) -> Self {
        GaussianMatrix2::from_pairs([(1, 0), (n - 2, 0), (1, 0), (n - 1, 0)])
            .expect("det = (n-1) - (n-2) = 1")
    }

    pub fn entries(&self) -> &[GaussianInt; 4] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> &GaussianInt {
        &self.entries[2 * row + col]
    }

    pub fn det(&self) -> GaussianInt {
        let [a, b, c, d] = &self.entries;
        &(a * d) - &(b * c)
    }

    pub fn trace(&self) -> GaussianInt {
        &self.entries[0] + &self.entries[3]
    }

    /// `|tr(A)|²`, an exact integer.
    pub fn trace_norm_squared(&self) -> BigInt {
        self.trace().norm()
    }

    /// `|tr(A)| > 2`, decided as `|tr(A)|² > 4`.
    pub fn passes_trace_gate(&self) -> bool {
        self.trace_norm_squared() > BigInt::from(4)
    }

    pub fn require_trace_gate(&self) -> Result<()> {
        if self.passes_trace_gate() {
            Ok(())
        } else {
            Err(Error::TraceGate {
                trace_norm_squared: self.trace_norm_squared(),
            })
        }
    }

    /// `max(|re|, |im|)` over all entries.
    pub fn height(&self) -> BigInt {
        self.entries.iter().map(GaussianInt::height).max().unwrap()
    }

    /// Action on a column vector `(u, v)`.
    pub fn apply(&self, u: &GaussianInt, v: &GaussianInt) -> (GaussianInt, GaussianInt) {
        let [a, b, c, d] = &self.entries;
        (&(a * u) + &(b * v), &(c * u) + &(d * v))
    }

    /// Chooses between `A` and `-A` the one whose first nonzero component, in
    /// the order `re a11, im a11, re a12, …`, is positive.
    pub fn sign_canonical(&self) -> GaussianMatrix2 {
        let first = self
            .entries
            .iter()
            .flat_map(|z| [&z.re, &z.im])
            .find(|x| !x.is_zero())
            .expect("det = 1 forces a nonzero entry");
        if first.is_negative() {
            -self
        } else {
            self.clone()
        }
    }
}

impl Neg for &GaussianMatrix2 {
    type Output = GaussianMatrix2;
    fn neg(self) -> GaussianMatrix2 {
        GaussianMatrix2 {
            entries: self.entries.clone().map(|e| -e),
        }
    }
}

impl Neg for GaussianMatrix2 {
    type Output = GaussianMatrix2;
    fn neg(self) -> GaussianMatrix2 {
        -&self
    }
}

impl fmt::Display for GaussianMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.entries;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// `A` acting on `R⁴`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealifiedAction {
    pub m: RationalMatrix,
}

/// The standard complex structure on `R⁴`: multiplication by `i` on each `z_k`.
pub fn complex_structure() -> RationalMatrix {
    RationalMatrix::from_i64(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]])
}

/// Each entry `x + yi` becomes the block `[[x, -y], [y, x]]`.
pub fn realify(a: &GaussianMatrix2) -> RealifiedAction {
    RealifiedAction {
        m: realify_entries(a.entries()),
    }
}

/// [`realify`] for an arbitrary row-major 2×2 Gaussian matrix.
pub fn realify_entries(entries: &[GaussianInt; 4]) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(4, 4);
    for r in 0..2 {
        for c in 0..2 {
            let z = &entries[2 * r + c];
            let x = BigRational::from(z.re.clone());
            let y = BigRational::from(z.im.clone());
            m[(2 * r, 2 * c)] = x.clone();
            m[(2 * r, 2 * c + 1)] = -y.clone();
            m[(2 * r + 1, 2 * c)] = y;
            m[(2 * r + 1, 2 * c + 1)] = x;
        }
    }
    m
}

/// Permutation of the 16 two-torsion points `(u/2, v/2)` of the torus with
/// `u, v ∈ {0, 1, i, 1+i}`.
///
/// Point index is `8·re(u) + 4·im(u) + 2·re(v) + im(v)`, so index 0 is the
/// origin and the order is lexicographic in `(re u, im u, re v, im v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoTorsionPermutation {
    /// `images[j] = k` when `A` maps point `j` to point `k`.
    pub images: [usize; 16],
}

impl TwoTorsionPermutation {
    pub fn point_label(index: usize) -> (GaussianInt, GaussianInt) {
        let bit = |b: usize| i64::from((index >> b) & 1 == 1);
        (
            GaussianInt::new(bit(3), bit(2)),
            GaussianInt::new(bit(1), bit(0)),
        )
    }

    pub fn point_labels() -> Vec<(GaussianInt, GaussianInt)> {
        (0..16).map(Self::point_label).collect()
    }

    fn index_of(u: &GaussianInt, v: &GaussianInt) -> usize {
        let (ur, ui) = u.mod_two();
        let (vr, vi) = v.mod_two();
        8 * ur as usize + 4 * ui as usize + 2 * vr as usize + vi as usize
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = [false; 16];
        for &k in &self.images {
            if k >= 16 || seen[k] {
                return false;
            }
            seen[k] = true;
        }
        true
    }

    /// Cycle lengths in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = [false; 16];
        let mut lens = Vec::new();
        for start in 0..16 {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.images[j];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn cycle_count(&self) -> usize {
        self.cycle_type().len()
    }

    /// Pullback on divisor classes: `PD(Y_k) ↦ PD(Y_j)` when `A(w_j) = w_k`.
    /// Column `k` has its single one in row `j = A⁻¹(k)`.
    pub fn pullback_matrix(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(16, 16);
        for (j, &k) in self.images.iter().enumerate() {
            m[(j, k)] = BigRational::one();
        }
        m
    }
}

/// Reduction of `A` modulo 2 acting on the 16 two-torsion points.
pub fn two_torsion_permutation(a: &GaussianMatrix2) -> TwoTorsionPermutation {
    let mut images = [0usize; 16];
    for (j, img) in images.iter_mut().enumerate() {
        let (u, v) = TwoTorsionPermutation::point_label(j);
        let (u2, v2) = a.apply(&u, &v);
        *img = TwoTorsionPermutation::index_of(&u2, &v2);
    }
    TwoTorsionPermutation { images }
}

/// Pullback of 2-forms, `(g·ω)(x, y) = ω(Mx, My)`, in the ordered `Λ²` basis.
///
/// The entry in row `(i, j)`, column `(k, l)` is the 2×2 minor of `M` on rows
/// `{k, l}` and columns `{i, j}`: the transpose of the usual second compound.
pub fn exterior_square_action(r: &RealifiedAction) -> RationalMatrix {
    let m = &r.m;
    let mut out = RationalMatrix::zeros(6, 6);
    for (row, &(i, j)) in WEDGE_PAIRS.iter().enumerate() {
        for (col, &(k, l)) in WEDGE_PAIRS.iter().enumerate() {
            out[(row, col)] = &m[(k, i)] * &m[(l, j)] - &m[(l, i)] * &m[(k, j)];
        }
    }
    out
}

/// The induced automorphism of `H²(K; Q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KummerAction {
    pub permutation: TwoTorsionPermutation,
    /// 16×16 permutation matrix on divisor classes.
    pub perm_block: RationalMatrix,
    /// 6×6 pullback on `Λ²(Q⁴)*`.
    pub ext_block: RationalMatrix,
}

impl KummerAction {
    /// The 22×22 block-diagonal matrix.
    pub fn matrix(&self) -> RationalMatrix {
        self.perm_block.direct_sum(&self.ext_block)
    }

    /// Action on even cohomology `H⁰ ⊕ H² ⊕ H⁴` (24×24); trivial on `H⁰`, `H⁴`.
    pub fn even_cohomology_matrix(&self) -> RationalMatrix {
        RationalMatrix::identity(1)
            .direct_sum(&self.matrix())
            .direct_sum(&RationalMatrix::identity(1))
    }
}

pub fn kummer_action(a: &GaussianMatrix2) -> KummerAction {
    let permutation = two_torsion_permutation(a);
    let perm_block = permutation.pullback_matrix();
    let ext_block = exterior_square_action(&realify(a));
    KummerAction {
        permutation,
        perm_block,
        ext_block,
    }
}

/// Positive rescaling of the two orthogonal blocks of the intersection form.
/// The unit scaling gives `(-2)·I₁₆ ⊕ 2·W` with `W` the wedge pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormScaling {
    pub divisor: BigRational,
    pub torus: BigRational,
}

impl Default for FormScaling {
    fn default() -> Self {
        FormScaling {
            divisor: BigRational::one(),
            torus: BigRational::one(),
        }
    }
}

impl FormScaling {
    pub fn new(divisor: BigRational, torus: BigRational) -> Result<Self> {
        if divisor <= BigRational::zero() || torus <= BigRational::zero() {
            return Err(Error::InvalidInput("form scalings must be positive".into()));
        }
        Ok(FormScaling { divisor, torus })
    }
}

/// Symmetric bilinear form on `H²(K; Q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionForm {
    pub q: RationalMatrix,
    pub scaling: FormScaling,
}

/// `W(α, β)` defined by `α ∧ β = W(α, β)·e1∧e2∧e3∧e4`.
pub fn wedge_pairing() -> RationalMatrix {
    let mut w = RationalMatrix::zeros(6, 6);
    for (a, &(i, j)) in WEDGE_PAIRS.iter().enumerate() {
        for (b, &(k, l)) in WEDGE_PAIRS.iter().enumerate() {
            w[(a, b)] = q(permutation_sign([i, j, k, l]));
        }
    }
    w
}

/// Sign of `(i j k l)` as a permutation of `(0 1 2 3)`, or 0 with a repeat.
fn permutation_sign(mut p: [usize; 4]) -> i64 {
    for x in 0..4 {
        for y in x + 1..4 {
            if p[x] == p[y] {
                return 0;
            }
        }
    }
    let mut sign = 1;
    for x in 0..4 {
        while p[x] != x {
            let y = p[x];
            p.swap(x, y);
            sign = -sign;
        }
    }
    sign
}

impl IntersectionForm {
    pub fn new(scaling: FormScaling) -> Self {
        let divisor = RationalMatrix::identity(DIVISOR_RANK).scale(&(q(-2) * &scaling.divisor));
        let torus = wedge_pairing().scale(&(q(2) * &scaling.torus));
        IntersectionForm {
            q: divisor.direct_sum(&torus),
            scaling,
        }
    }

    pub fn standard() -> Self {
        IntersectionForm::new(FormScaling::default())
    }

    pub fn pair(&self, v: &[BigRational], w: &[BigRational]) -> Result<BigRational> {
        self.q.bilinear(v, w)
    }

    pub fn signature(&self) -> Signature {
        self.q.signature().expect("symmetric by construction")
    }

    /// `gᵀ Q g = Q`.
    pub fn is_preserved_by(&self, g: &RationalMatrix) -> Result<bool> {
        Ok(g.transpose().mul(&self.q)?.mul(g)? == self.q)
    }
}

fn embed_wedge(coords: &[i64; 6]) -> QVector {
    let mut v = vec![BigRational::zero(); H2_RANK];
    for (i, &c) in coords.iter().enumerate() {
        v[DIVISOR_RANK + i] = q(c);
    }
    v
}

/// `θ = Re ϖ` as a 22-vector.
pub fn theta() -> QVector {
    embed_wedge(&THETA_WEDGE)
}

/// `η = Im ϖ` as a 22-vector.
pub fn eta() -> QVector {
    embed_wedge(&ETA_WEDGE)
}

/// Fixed vectors of the action on `H²`, in RREF-derived canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedSubspace {
    pub basis: Vec<QVector>,
    pub dim: usize,
}

impl FixedSubspace {
    pub fn contains(&self, v: &[BigRational]) -> bool {
        RationalMatrix::solve_in_span(&self.basis, v).is_some()
    }
}

pub fn fixed_subspace_of(h2: &RationalMatrix) -> Result<FixedSubspace> {
    let basis = h2.minus_identity()?.kernel_basis();
    Ok(FixedSubspace {
        dim: basis.len(),
        basis,
    })
}

pub fn fixed_subspace(g: &KummerAction) -> FixedSubspace {
    fixed_subspace_of(&g.matrix()).expect("22x22 is square")
}

/// `ker(g - I)² = ker(g - I)`: the eigenvalue 1 has no Jordan blocks.
pub fn semisimple_at_one(h: &RationalMatrix) -> Result<bool> {
    let n = h.minus_identity()?;
    Ok(n.mul(&n)?.rank() == n.rank())
}

/// Spectral data of the action on `H²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenProfile {
    pub char_poly: IntPolynomial,
    pub split: CyclotomicSplit,
    /// Real root `r > 1` of the non-cyclotomic factor (`|λ|²`), when gated.
    pub expanding_root: Option<IsolatingInterval>,
    /// Real root `1/r < 1` of the non-cyclotomic factor (`|λ|⁻²`), when gated.
    pub contracting_root: Option<IsolatingInterval>,
    /// Roots of the non-cyclotomic factor off the real line. They have modulus
    /// one but are not roots of unity.
    pub nonreal_noncyclotomic_roots: usize,
    pub semisimple_at_one: bool,
}

/// Isolates the roots `r > 1` and `1/r < 1` of a non-cyclotomic factor whose
/// only real roots are that pair.
pub fn reciprocal_root_pair(factor: &IntPolynomial) -> Result<(IsolatingInterval, IsolatingInterval)> {
    let one = BigRational::one();
    let roots: Vec<IsolatingInterval> = sturm_isolate_real_roots(factor)?
        .iter()
        .map(|r| r.refine_away_from(&one))
        .collect();
    let above: Vec<&IsolatingInterval> = roots.iter().filter(|r| r.lo >= one).collect();
    let below: Vec<&IsolatingInterval> = roots
        .iter()
        .filter(|r| r.hi <= one && r.lo >= BigRational::zero())
        .collect();
    if roots.len() != 2 || above.len() != 1 || below.len() != 1 {
        return Err(Error::Consistency(format!(
            "expected exactly the real roots r > 1 > 1/r > 0 of {factor}, found {} real roots",
            roots.len()
        )));
    }
    Ok((above[0].clone(), below[0].clone()))
}

pub fn eigen_profile(g: &KummerAction, a: &GaussianMatrix2) -> Result<EigenProfile> {
    let h = g.matrix();
    let char_poly = h.char_poly_int()?;
    let split = cyclotomic_split(&char_poly)?;
    let semisimple = semisimple_at_one(&h)?;
    let (expanding_root, contracting_root, nonreal) = if a.passes_trace_gate() {
        let (r, s) = reciprocal_root_pair(&split.rest)?;
        let sf_deg = split.rest.square_free_part()?.degree().unwrap_or(0);
        (Some(r), Some(s), sf_deg - 2)
    } else {
        let sf = split.rest.square_free_part()?;
        let real = sturm_isolate_real_roots(&sf)?.len();
        (None, None, sf.degree().unwrap_or(0) - real)
    };
    Ok(EigenProfile {
        char_poly,
        split,
        expanding_root,
        contracting_root,
        nonreal_noncyclotomic_roots: nonreal,
        semisimple_at_one: semisimple,
    })
}
