//! The two realizations of an induced sector.
//!
//! Wave functions on `X̃` with values in `H_χ = C^d` are stored with index
//! `x d + i`; wave functions on `X` likewise with `q d + i`. The space `H^χ`
//! carries the inner product `(1/|G|) Σ_x ⟨ψ(x), φ(x)⟩`, and `L²(X) ⊗ H_χ`
//! the counting measure.

use super::cover::FiniteCover;
use super::group::GroupRep;
use super::kernel::InvariantKernel;
use crate::linalg::{self, ComplexOperator};

/// Equivariant wave functions `ψ(x h) = U_χ(h⁻¹) ψ(x)`.
#[derive(Clone, Debug)]
pub struct ConstrainedSpace {
    basis: ComplexOperator,
    group_order: usize,
}

impl ConstrainedSpace {
    /// Columns orthonormal for the plain Euclidean product on `C^{|X̃| d}`.
    pub fn basis(&self) -> &ComplexOperator {
        &self.basis
    }

    /// Columns orthonormal for the `H^χ` inner product.
    pub fn h_chi_basis(&self) -> ComplexOperator {
        self.basis.scale((self.group_order as f64).sqrt())
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }
}

/// `(1/|G|) Σ_h T_h` with `(T_h ψ)(x) = U_χ(h) ψ(x h)`; its range is the
/// equivariant subspace.
pub fn equivariance_projector(cover: &FiniteCover, chi: &GroupRep) -> ComplexOperator {
    let d = chi.dim();
    let n = cover.total_size();
    let order = cover.group().order();
    let mut p = linalg::zeros(n * d, n * d);
    for h in 0..order {
        let u = chi.matrix(h);
        for x in 0..n {
            let xh = cover.act(x, h);
            for i in 0..d {
                for j in 0..d {
                    p[(x * d + i, xh * d + j)] += u[(i, j)];
                }
            }
        }
    }
    p.unscale(order as f64)
}

pub fn constrained_space(cover: &FiniteCover, chi: &GroupRep) -> ConstrainedSpace {
    ConstrainedSpace {
        basis: linalg::orthonormal_range(&equivariance_projector(cover, chi)),
        group_order: cover.group().order(),
    }
}

/// `max |ψ(x h) - U_χ(h⁻¹) ψ(x)|` over points and group elements.
pub fn equivariance_residual(cover: &FiniteCover, chi: &GroupRep, psi: &[num_complex::Complex64]) -> f64 {
    let d = chi.dim();
    let group = cover.group();
    let mut worst = 0.0_f64;
    for x in 0..cover.total_size() {
        let at_x = ComplexOperator::from_column_slice(d, 1, &psi[x * d..(x + 1) * d]);
        for h in 0..group.order() {
            let xh = cover.act(x, h);
            let at_xh = ComplexOperator::from_column_slice(d, 1, &psi[xh * d..(xh + 1) * d]);
            worst = worst.max(linalg::max_abs_diff(&at_xh, &(chi.matrix(group.inv(h)) * &at_x)));
        }
    }
    worst
}

/// Matrix of an operator on a carrier, with how far the carrier is from
/// invariant.
#[derive(Clone, Debug)]
pub struct RestrictedAction {
    pub matrix: ComplexOperator,
    pub leakage: f64,
}

/// `π^χ(A)`: the kernel acting as `A ⊗ 1` on `H^χ`, in the basis of
/// [`ConstrainedSpace::h_chi_basis`].
pub fn constrained_action(kernel: &InvariantKernel, chi: &GroupRep, space: &ConstrainedSpace) -> RestrictedAction {
    let lifted = linalg::kron(kernel.matrix(), &linalg::identity(chi.dim()));
    let b = space.basis();
    let ab = lifted * b;
    let matrix = b.adjoint() * &ab;
    let leakage = linalg::max_abs_diff(&ab, &(b * &matrix));
    RestrictedAction { matrix, leakage }
}

/// `π^χ_σ(A)` on `L²(X) ⊗ H_χ`:
/// `(π_σ(A) ψ)(q) = Σ_{h, q'} A(σ(q), σ(q') h) U_χ(h⁻¹) ψ(q')`.
pub fn section_action(cover: &FiniteCover, kernel: &InvariantKernel, chi: &GroupRep) -> ComplexOperator {
    let d = chi.dim();
    let base = cover.base_size();
    let group = cover.group();
    let a = kernel.matrix();
    let mut out = linalg::zeros(base * d, base * d);
    for q in 0..base {
        for qp in 0..base {
            let mut block = linalg::zeros(d, d);
            for h in 0..group.order() {
                let w = a[(cover.sigma(q), cover.act(cover.sigma(qp), h))];
                if w.norm() != 0.0 {
                    block += chi.matrix(group.inv(h)) * w;
                }
            }
            out.view_mut((q * d, qp * d), (d, d)).copy_from(&block);
        }
    }
    out
}

/// `U: H^χ → L²(X) ⊗ H_χ`, `(U ψ)(q) = ψ(σ(q))`, as a matrix from
/// [`ConstrainedSpace::h_chi_basis`] coordinates.
pub fn realization_unitary(cover: &FiniteCover, chi: &GroupRep, space: &ConstrainedSpace) -> ComplexOperator {
    let d = chi.dim();
    let b = space.h_chi_basis();
    let mut u = linalg::zeros(cover.base_size() * d, space.dim());
    for q in 0..cover.base_size() {
        let x = cover.sigma(q);
        u.rows_mut(q * d, d).copy_from(&b.rows(x * d, d));
    }
    u
}

/// `U⁻¹` from its own formula: `(U⁻¹ ψ)(x) = U_χ(h) ψ(τ(x))` with
/// `x h = σ(τ(x))`, expressed in `h_chi_basis` coordinates.
pub fn realization_inverse(cover: &FiniteCover, chi: &GroupRep, space: &ConstrainedSpace) -> ComplexOperator {
    let d = chi.dim();
    let n = cover.total_size();
    let mut lift = linalg::zeros(n * d, cover.base_size() * d);
    for x in 0..n {
        let h = cover.to_section(x);
        let q = cover.tau(x);
        lift.view_mut((x * d, q * d), (d, d)).copy_from(chi.matrix(h));
    }
    // Coordinates in an H^χ-orthonormal basis: c_j = (1/|G|) Σ_x ⟨b̂_j(x), ψ(x)⟩.
    let order = cover.group().order() as f64;
    (space.h_chi_basis().adjoint() * lift).unscale(order)
}
