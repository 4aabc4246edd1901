//! Dense complex linear algebra used throughout the crate.
//!
//! Thin layer over `nalgebra`: Hermitian eigensolves, rank-revealing ranges
//! and null spaces, polar factors, and the residual norms every check reports.
//! All residuals are max-entry absolute errors.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Dense square (or rectangular, for isometries) complex matrix.
pub type ComplexOperator = DMatrix<Complex64>;

/// Singular-value / eigenvalue threshold for rank decisions.
pub const RANK_TOL: f64 = 1e-8;

pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

#[inline]
pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(n: usize) -> ComplexOperator {
    ComplexOperator::identity(n, n)
}

pub fn zeros(r: usize, c: usize) -> ComplexOperator {
    ComplexOperator::zeros(r, c)
}

pub fn max_abs(m: &ComplexOperator) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &ComplexOperator, b: &ComplexOperator) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in residual");
    a.iter().zip(b.iter()).fold(0.0_f64, |acc, (x, y)| acc.max((x - y).norm()))
}

fn nonzeros(m: &ComplexOperator) -> Vec<(usize, usize, Complex64)> {
    let mut out = Vec::new();
    for (j, col) in m.column_iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            if *z != ZERO {
                out.push((i, j, *z));
            }
        }
    }
    out
}

/// `A B`, skipping zero entries when either factor is mostly zero.
///
/// Orbit-sum and permutation operators have a handful of nonzeros per
/// column, and the dense kernel wastes nearly all of its work on them.
pub fn product(a: &ComplexOperator, b: &ComplexOperator) -> ComplexOperator {
    assert_eq!(a.ncols(), b.nrows(), "shape mismatch in product");
    let sparse = |m: &ComplexOperator| {
        let nz = nonzeros(m);
        (nz.len() * 4 <= m.len()).then_some(nz)
    };
    let mut out = zeros(a.nrows(), b.ncols());
    if let Some(nz) = sparse(b) {
        for (k, j, z) in nz {
            out.column_mut(j).axpy(z, &a.column(k), ONE);
        }
    } else if let Some(nz) = sparse(a) {
        for (i, k, z) in nz {
            for j in 0..b.ncols() {
                out[(i, j)] += z * b[(k, j)];
            }
        }
    } else {
        out = a * b;
    }
    out
}

pub fn commutator(a: &ComplexOperator, b: &ComplexOperator) -> ComplexOperator {
    product(a, b) - product(b, a)
}

/// `max |A B - B A|`.
pub fn commutator_residual(a: &ComplexOperator, b: &ComplexOperator) -> f64 {
    max_abs(&commutator(a, b))
}

/// `max |P P - P|`.
pub fn idempotence_residual(p: &ComplexOperator) -> f64 {
    max_abs_diff(&(p * p), p)
}

/// `max |P - P*|`.
pub fn hermiticity_residual(p: &ComplexOperator) -> f64 {
    max_abs_diff(p, &p.adjoint())
}

/// Residual of `U* U = 1` and, for square `U`, of `U U* = 1`.
pub fn unitarity_residual(u: &ComplexOperator) -> f64 {
    let left = max_abs_diff(&(u.adjoint() * u), &identity(u.ncols()));
    if u.is_square() {
        left.max(max_abs_diff(&(u * u.adjoint()), &identity(u.nrows())))
    } else {
        left
    }
}

/// `max |W W* W - W|`.
pub fn partial_isometry_residual(w: &ComplexOperator) -> f64 {
    max_abs_diff(&(w * w.adjoint() * w), w)
}

pub fn kron(a: &ComplexOperator, b: &ComplexOperator) -> ComplexOperator {
    a.kronecker(b)
}

pub fn trace(m: &ComplexOperator) -> Complex64 {
    m.diagonal().iter().sum()
}

/// Eigenvalues (ascending) and matching eigenvector columns of the Hermitian
/// part of `h`.
pub fn hermitian_eigen(h: &ComplexOperator) -> (Vec<f64>, ComplexOperator) {
    let n = h.nrows();
    if n == 0 {
        return (Vec::new(), zeros(0, 0));
    }
    let sym = (h + h.adjoint()).scale(0.5);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

pub fn hermitian_eigenvalues(h: &ComplexOperator) -> Vec<f64> {
    hermitian_eigen(h).0
}

/// Number of eigenvalues of the Hermitian part of `h` with modulus above
/// [`RANK_TOL`].
pub fn rank_hermitian(h: &ComplexOperator) -> usize {
    hermitian_eigenvalues(h).into_iter().filter(|v| v.abs() > RANK_TOL).count()
}

/// Singular values in descending order.
pub fn singular_values(m: &ComplexOperator) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn rank_svd(m: &ComplexOperator) -> usize {
    let s = singular_values(m);
    let scale = s.first().copied().unwrap_or(0.0).max(1.0);
    s.iter().filter(|&&v| v > RANK_TOL * scale).count()
}

/// Orthonormal basis (as columns) of the column space of `m`.
pub fn orthonormal_range(m: &ComplexOperator) -> ComplexOperator {
    let (r, cols) = m.shape();
    if r == 0 || cols == 0 {
        return zeros(r, 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let s = &svd.singular_values;
    let scale = s.iter().fold(0.0_f64, |a, &b| a.max(b)).max(1.0);
    let mut keep: Vec<usize> = (0..s.len()).filter(|&i| s[i] > RANK_TOL * scale).collect();
    keep.sort_by(|&i, &j| s[j].total_cmp(&s[i]));
    let mut q = zeros(r, keep.len());
    for (dst, &src) in keep.iter().enumerate() {
        q.set_column(dst, &u.column(src));
    }
    q
}

/// Hermitian orthogonal projector onto the column space of `m`.
pub fn range_projector(m: &ComplexOperator) -> ComplexOperator {
    let q = orthonormal_range(m);
    &q * q.adjoint()
}

/// Orthonormal basis of the eigenspace of a Hermitian positive semidefinite
/// matrix for eigenvalues at most `tol`.
pub fn psd_null_space(gram: &ComplexOperator, tol: f64) -> ComplexOperator {
    let (vals, vecs) = hermitian_eigen(gram);
    let keep: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] <= tol).collect();
    let mut out = zeros(gram.nrows(), keep.len());
    for (dst, &src) in keep.iter().enumerate() {
        out.set_column(dst, &vecs.column(src));
    }
    out
}

/// Eigenvectors of a Hermitian matrix whose eigenvalue lies within `tol` of
/// `target`, as orthonormal columns.
pub fn eigenspace(h: &ComplexOperator, target: f64, tol: f64) -> ComplexOperator {
    let (vals, vecs) = hermitian_eigen(h);
    let keep: Vec<usize> = (0..vals.len()).filter(|&i| (vals[i] - target).abs() <= tol).collect();
    let mut out = zeros(h.nrows(), keep.len());
    for (dst, &src) in keep.iter().enumerate() {
        out.set_column(dst, &vecs.column(src));
    }
    out
}

/// Unitary polar factor of a square matrix, together with its smallest
/// singular value. `None` when the matrix is numerically singular.
pub fn polar_unitary(v: &ComplexOperator) -> Option<(ComplexOperator, f64)> {
    assert!(v.is_square(), "polar factor needs a square matrix");
    let n = v.nrows();
    if n == 0 {
        return Some((zeros(0, 0), f64::INFINITY));
    }
    let svd = v.clone().svd(true, true);
    let s = &svd.singular_values;
    let smax = s.iter().fold(0.0_f64, |a, &b| a.max(b));
    let smin = s.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    if smax == 0.0 || smin <= RANK_TOL * smax {
        return None;
    }
    let u = svd.u.expect("u requested");
    let vt = svd.v_t.expect("v_t requested");
    Some((u * vt, smin / smax))
}

/// Greedy matching distance between two spectra of equal length.
pub fn spectrum_distance(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "spectra of different sizes");
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.iter().zip(&b).fold(0.0_f64, |acc, (x, y)| acc.max((x - y).abs()))
}

/// Eigenvalues of a general complex matrix via the Schur form.
pub fn general_eigenvalues(m: &ComplexOperator) -> Vec<Complex64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let schur = m.clone().schur();
    let (_, t) = schur.unpack();
    t.diagonal().iter().copied().collect()
}

/// Max distance of a greedy nearest-neighbour matching between two complex
/// spectra (each value used once).
pub fn complex_spectrum_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len(), "spectra of different sizes");
    let mut used = vec![false; b.len()];
    let mut worst = 0.0_f64;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("non-empty");
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

/// Matrix with entries uniform in the unit square of the complex plane,
/// centred at zero.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexOperator {
    ComplexOperator::from_fn(rows, cols, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexOperator {
    let m = random_matrix(rng, n, n);
    (&m + m.adjoint()).scale(0.5)
}

/// Row-major JSON form of a complex matrix: `{"re": [[..]], "im": [[..]]}`.
/// `im` may be omitted for real matrices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

impl From<&ComplexOperator> for MatrixJson {
    fn from(m: &ComplexOperator) -> Self {
        let rows = |f: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| f(&m[(r, c)])).collect()).collect()
        };
        MatrixJson { re: rows(|z| z.re), im: Some(rows(|z| z.im)) }
    }
}

/// `serialize_with` adapter writing an optional matrix as [`MatrixJson`].
pub fn serialize_opt_matrix<S: serde::Serializer>(m: &Option<ComplexOperator>, s: S) -> Result<S::Ok, S::Error> {
    m.as_ref().map(MatrixJson::from).serialize(s)
}

impl MatrixJson {
    pub fn to_operator(&self) -> Result<ComplexOperator, String> {
        let r = self.re.len();
        let cols = self.re.first().map_or(0, Vec::len);
        if self.re.iter().any(|row| row.len() != cols) {
            return Err("ragged `re` rows".into());
        }
        if let Some(im) = &self.im {
            if im.len() != r || im.iter().any(|row| row.len() != cols) {
                return Err("`im` shape differs from `re`".into());
            }
        }
        let mut out = zeros(r, cols);
        for i in 0..r {
            for j in 0..cols {
                let im = self.im.as_ref().map_or(0.0, |m| m[i][j]);
                let z = Complex64::new(self.re[i][j], im);
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(format!("non-finite entry at ({i}, {j})"));
                }
                out[(i, j)] = z;
            }
        }
        Ok(out)
    }
}
