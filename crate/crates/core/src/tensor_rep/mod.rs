//! The permutation representation of `S_N` on `(C^m)^{⊗N}` and the
//! structure it induces: Young symmetrizers, central (isotypic) projectors,
//! the invariant algebra `M_N` and its sector decomposition.
//!
//! Basis vector `e_{i_1} ⊗ ... ⊗ e_{i_N}` has flat index
//! `i_1 m^{N-1} + ... + i_N`, so slot 1 is the most significant digit.

mod commutant;
mod sectors;
mod spans;

pub use commutant::{commutant_basis, commutant_dimension_nullspace};
pub use sectors::{sector_decomposition, SectorRecord, SectorReport, SectorResiduals};
pub use spans::{sector_basis_span_check, SpanReport};

use crate::error::{Error, Result};
use crate::linalg::{self, c, ComplexOperator};
use crate::permgroup::{character_values, factorial, Partition, Permutation, Tableau};

/// Largest admissible `m^N` unless overridden (10^6 dense entries).
pub const DEFAULT_DIMENSION_CAP: usize = 1000;

/// `(C^m)^{⊗N}` with its flat indexing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorSpace {
    m: usize,
    n: usize,
    dim: usize,
}

impl TensorSpace {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        Self::with_cap(m, n, DEFAULT_DIMENSION_CAP)
    }

    pub fn with_cap(m: usize, n: usize, cap: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::domain(format!("need m >= 1 and N >= 1, got m={m}, N={n}")));
        }
        let dim = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(m)).unwrap_or(usize::MAX);
        if dim > cap {
            return Err(Error::ResourceCap { requested: dim, cap });
        }
        Ok(TensorSpace { m, n, dim })
    }

    /// Single-particle dimension `m`.
    pub fn local_dim(&self) -> usize {
        self.m
    }

    /// Particle count `N`.
    pub fn particles(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn digits(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for slot in (0..self.n).rev() {
            out[slot] = flat % self.m;
            flat /= self.m;
        }
        out
    }

    pub fn flat(&self, digits: &[usize]) -> usize {
        digits.iter().fold(0, |acc, &d| acc * self.m + d)
    }

    /// Image of every basis index under `U(π)`: the content of slot `k`
    /// moves to slot `π(k)`.
    pub fn permuted_indices(&self, pi: &Permutation) -> Vec<usize> {
        assert_eq!(pi.degree(), self.n, "permutation degree must equal N");
        let mut moved = vec![0; self.n];
        (0..self.dim)
            .map(|i| {
                let d = self.digits(i);
                for (k, &x) in d.iter().enumerate() {
                    moved[pi.apply(k)] = x;
                }
                self.flat(&moved)
            })
            .collect()
    }
}

/// `U(π)` on `(C^m)^{⊗N}`: `U(π) ψ_1 ⊗ ... ⊗ ψ_N = ψ_{π⁻¹(1)} ⊗ ... ⊗ ψ_{π⁻¹(N)}`.
pub fn permutation_operator(pi: &Permutation, space: &TensorSpace) -> ComplexOperator {
    let images = space.permuted_indices(pi);
    let mut u = linalg::zeros(space.dimension(), space.dimension());
    for (i, j) in images.into_iter().enumerate() {
        u[(j, i)] = c(1.0);
    }
    u
}

/// `Σ_π coeff(π) U(π)` accumulated without materializing each `U(π)`.
fn group_algebra_element(space: &TensorSpace, terms: &[(Permutation, f64)]) -> ComplexOperator {
    let mut out = linalg::zeros(space.dimension(), space.dimension());
    for (pi, w) in terms {
        for (i, j) in space.permuted_indices(pi).into_iter().enumerate() {
            out[(j, i)] += c(*w);
        }
    }
    out
}

/// Young symmetrizer
/// `P_T = (N_λ/N!) Σ_{π∈Col(T)} sgn(π) U(π) Σ_{π'∈Row(T)} U(π')`.
///
/// Idempotent; Hermitian only for single-row or single-column `T`.
pub fn young_projector(t: &Tableau, space: &TensorSpace) -> Result<ComplexOperator> {
    if !t.is_standard() {
        return Err(Error::domain(format!("Young projector requested for non-standard tableau {t}")));
    }
    if t.size() != space.particles() {
        return Err(Error::domain(format!("tableau of size {} on {} particles", t.size(), space.particles())));
    }
    let shape = t.shape();
    let scale = shape.hook_dimension() as f64 / factorial(shape.total()) as f64;
    let col: Vec<_> = t
        .column_group()
        .into_iter()
        .map(|p| {
            let s = p.sign() as f64;
            (p, s)
        })
        .collect();
    let row: Vec<_> = t.row_group().into_iter().map(|p| (p, 1.0)).collect();
    let a = group_algebra_element(space, &col);
    let s = group_algebra_element(space, &row);
    Ok((a * s).scale(scale))
}

/// Hermitian orthogonal projector onto the range of `P_T`.
pub fn young_range_projector(t: &Tableau, space: &TensorSpace) -> Result<ComplexOperator> {
    Ok(linalg::range_projector(&young_projector(t, space)?))
}

/// Central idempotent `z_λ = (N_λ/N!) Σ_π χ_λ(π⁻¹) U(π)`, the orthogonal
/// projector onto the `λ`-isotypic component.
pub fn central_projector(shape: &Partition, space: &TensorSpace) -> Result<ComplexOperator> {
    if shape.total() != space.particles() {
        return Err(Error::domain(format!("{shape} is not a partition of N = {}", space.particles())));
    }
    let elements = Permutation::all(space.particles());
    let inverses: Vec<_> = elements.iter().map(Permutation::inverse).collect();
    let chars = character_values(shape, &inverses);
    let scale = shape.hook_dimension() as f64 / factorial(shape.total()) as f64;
    let terms: Vec<_> = elements.into_iter().zip(chars).map(|(p, x)| (p, scale * x)).collect();
    Ok(group_algebra_element(space, &terms))
}
