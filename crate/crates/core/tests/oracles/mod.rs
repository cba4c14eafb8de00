//! Independent test-side oracles. None of these call into the library's
//! algorithms: they use machine integers, a different characteristic-polynomial
//! method, explicit pullbacks, brute force, or floating point.
#![allow(dead_code)]

use nalgebra::linalg::Schur;
use nalgebra::{Complex, DMatrix};
use nk_core::matrix::RationalMatrix;
use nk_core::{BigInt, BigRational, IntPolynomial};
use num_traits::{ToPrimitive, Zero};

pub type C = (i64, i64);

pub fn cmul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

pub fn cadd(a: C, b: C) -> C {
    (a.0 + b.0, a.1 + b.1)
}

pub fn det(a: [C; 4]) -> C {
    let ad = cmul(a[0], a[3]);
    let bc = cmul(a[1], a[2]);
    (ad.0 - bc.0, ad.1 - bc.1)
}

/// Every 2×2 Gaussian matrix with entry height `≤ h` and determinant one, by
/// scanning all `(2h+1)^8` tuples.
pub fn brute_force_sl2(h: i64) -> Vec<[C; 4]> {
    let vals: Vec<C> = (-h..=h).flat_map(|r| (-h..=h).map(move |i| (r, i))).collect();
    let mut out = Vec::new();
    for &a in &vals {
        for &b in &vals {
            for &c in &vals {
                for &d in &vals {
                    if det([a, b, c, d]) == (1, 0) {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

pub fn trace_norm_sq(a: [C; 4]) -> i64 {
    let t = cadd(a[0], a[3]);
    t.0 * t.0 + t.1 * t.1
}

/// Orbit lengths of `A` on `(Z[i]/2)²`, descending.
pub fn orbit_cycle_type(a: [C; 4]) -> Vec<usize> {
    let pts: Vec<(C, C)> = (0..16)
        .map(|k| (((k >> 3) & 1, (k >> 2) & 1), ((k >> 1) & 1, k & 1)))
        .collect();
    let step = |(u, v): (C, C)| {
        let r = |z: C| (z.0.rem_euclid(2), z.1.rem_euclid(2));
        (r(cadd(cmul(a[0], u), cmul(a[1], v))), r(cadd(cmul(a[2], u), cmul(a[3], v))))
    };
    let mut seen = vec![false; 16];
    let mut lens = Vec::new();
    for s in 0..16 {
        if seen[s] {
            continue;
        }
        let mut p = pts[s];
        let mut len = 0;
        loop {
            let idx = pts.iter().position(|q| *q == p).unwrap();
            if seen[idx] {
                break;
            }
            seen[idx] = true;
            len += 1;
            p = step(p);
        }
        lens.push(len);
    }
    lens.sort_unstable_by(|x, y| y.cmp(x));
    lens
}

/// Real 4×4 matrix of `z ↦ Az` on `C² = R⁴`, built column by column from the
/// images of `1, i` in each coordinate.
pub fn realify_by_columns(a: [C; 4]) -> [[i64; 4]; 4] {
    let mut m = [[0i64; 4]; 4];
    let basis: [(C, C); 4] = [((1, 0), (0, 0)), ((0, 1), (0, 0)), ((0, 0), (1, 0)), ((0, 0), (0, 1))];
    for (col, (u, v)) in basis.into_iter().enumerate() {
        let w1 = cadd(cmul(a[0], u), cmul(a[1], v));
        let w2 = cadd(cmul(a[2], u), cmul(a[3], v));
        let img = [w1.0, w1.1, w2.0, w2.1];
        for row in 0..4 {
            m[row][col] = img[row];
        }
    }
    m
}

pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Pullback on 2-forms: each basis form as an antisymmetric matrix `Ω`,
/// pulled back to `MᵀΩM`, whose upper-triangular entries are the coordinates.
pub fn explicit_pullback(m: &[[i64; 4]; 4]) -> [[i64; 6]; 6] {
    let mut out = [[0i64; 6]; 6];
    for (col, &(k, l)) in PAIRS.iter().enumerate() {
        let mut omega = [[0i64; 4]; 4];
        omega[k][l] = 1;
        omega[l][k] = -1;
        let mut pulled = [[0i64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut s = 0;
                for x in 0..4 {
                    for y in 0..4 {
                        s += m[x][i] * omega[x][y] * m[y][j];
                    }
                }
                pulled[i][j] = s;
            }
        }
        for (row, &(i, j)) in PAIRS.iter().enumerate() {
            out[row][col] = pulled[i][j];
        }
    }
    out
}

pub fn to_rational<const N: usize>(m: &[[i64; N]; N]) -> RationalMatrix {
    let rows: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
    RationalMatrix::from_i64(&rows)
}

/// `det(tI - A)` by Faddeev–LeVerrier, ascending coefficients.
pub fn faddeev_leverrier(a: &RationalMatrix) -> Vec<BigRational> {
    let n = a.rows();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::from_integer(1.into());
    let mut mk = RationalMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a.mul(&mk).unwrap();
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        let tr = a.mul(&next).unwrap().trace().unwrap();
        coeffs[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
        mk = next;
    }
    coeffs
}

pub fn faddeev_leverrier_int(a: &RationalMatrix) -> IntPolynomial {
    let c = faddeev_leverrier(a);
    assert!(c.iter().all(|x| x.is_integer()));
    IntPolynomial::new(c.into_iter().map(|x| x.to_integer()).collect())
}

/// `(t² - τt + 1)(t² - τ̄t + 1)` for `τ = tr A`, expanded in `Z[i][t]`.
pub fn conjugate_quadratic_product(tau: C) -> Vec<i64> {
    let p = [(1, 0), (-tau.0, -tau.1), (1, 0)];
    let q = [(1, 0), (-tau.0, tau.1), (1, 0)];
    let mut out = [(0i64, 0i64); 5];
    for (i, &x) in p.iter().enumerate() {
        for (j, &y) in q.iter().enumerate() {
            out[i + j] = cadd(out[i + j], cmul(x, y));
        }
    }
    assert!(out.iter().all(|c| c.1 == 0));
    // p has descending coefficients; the product is palindromic so the order is moot.
    out.iter().map(|c| c.0).collect()
}

pub fn to_f64_matrix(m: &RationalMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].to_f64().unwrap())
}

/// Float spectrum via real Schur form.
pub fn float_eigenvalues(m: &RationalMatrix) -> Vec<Complex<f64>> {
    schur_eigenvalues(to_f64_matrix(m))
}

/// Francis QR without exceptional shifts stalls on permutation-like matrices,
/// so on non-convergence the input is conjugated by a seeded random
/// non-orthogonal similarity, which leaves the spectrum unchanged.
fn schur_eigenvalues(f: DMatrix<f64>) -> Vec<Complex<f64>> {
    use rand::{Rng, SeedableRng};
    let n = f.nrows();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut candidate = f.clone();
    for _ in 0..16 {
        if let Some(schur) = Schur::try_new(candidate, 1e-12, 2000) {
            return schur.complex_eigenvalues().iter().cloned().collect();
        }
        let s = DMatrix::from_fn(n, n, |i, j| {
            let off = rng.gen_range(-0.3..0.3);
            if i == j { (1.0 + off) * rng.gen_range(0.5..2.0) } else { off }
        });
        let inv = s.clone().try_inverse().expect("random similarity is singular");
        candidate = s * &f * inv;
    }
    panic!("Schur iteration did not converge");
}

/// A defective eigenvalue of multiplicity `k` scatters by about `eps^(1/k)` in
/// floating point, but the centroid of its cluster stays accurate, so eigenvalues
/// are grouped by single linkage and each centroid is tested against the circle.
pub fn float_quasi_unipotent(m: &RationalMatrix) -> bool {
    let eig = float_eigenvalues(m);
    let mut cluster: Vec<usize> = (0..eig.len()).collect();
    for i in 0..eig.len() {
        for j in 0..i {
            if (eig[i] - eig[j]).norm() < 1e-2 {
                let (from, to) = (cluster[i], cluster[j]);
                cluster.iter_mut().filter(|c| **c == from).for_each(|c| *c = to);
            }
        }
    }
    let mut roots: Vec<usize> = cluster.clone();
    roots.sort_unstable();
    roots.dedup();
    roots.iter().all(|&r| {
        let members: Vec<_> = eig.iter().zip(&cluster).filter(|(_, c)| **c == r).map(|(z, _)| *z).collect();
        let centroid = members.iter().sum::<Complex<f64>>() / members.len() as f64;
        (centroid.norm() - 1.0).abs() < 1e-6
    })
}

pub fn float_rank(m: &RationalMatrix, tol: f64) -> usize {
    let svd = to_f64_matrix(m).svd(false, false);
    svd.singular_values.iter().filter(|s| **s > tol).count()
}

/// Roots of an integer polynomial as eigenvalues of its companion matrix.
pub fn float_roots(coeffs: &[i64]) -> Vec<Complex<f64>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n] as f64;
    let comp = DMatrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -(coeffs[i] as f64) / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    schur_eigenvalues(comp)
}

/// `|λ|²` for the two eigenvalues `λ` of `A`, from `λ = (τ ± √(τ² - 4))/2`.
pub fn eigen_moduli_squared(a: [C; 4]) -> [f64; 2] {
    let tau = Complex::new(cadd(a[0], a[3]).0 as f64, cadd(a[0], a[3]).1 as f64);
    let disc = (tau * tau - Complex::new(4.0, 0.0)).sqrt();
    let l1 = (tau + disc) / 2.0;
    let l2 = (tau - disc) / 2.0;
    [l1.norm_sqr(), l2.norm_sqr()]
}

pub fn as_pairs(a: &nk_core::GaussianMatrix2) -> [C; 4] {
    a.entries()
        .clone()
        .map(|z| (z.re.to_i64().unwrap(), z.im.to_i64().unwrap()))
}

pub fn poly_i64(p: &IntPolynomial) -> Vec<i64> {
    p.coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
}
