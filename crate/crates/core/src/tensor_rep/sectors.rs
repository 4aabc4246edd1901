use serde::Serialize;

use super::{central_projector, commutant_basis, commutant_dimension_nullspace, TensorSpace};
use crate::error::{Error, Result};
use crate::linalg::{self, ComplexOperator};
use crate::permgroup::Partition;

/// One `λ` row of a [`SectorReport`].
#[derive(Clone, Debug, Serialize)]
pub struct SectorRecord {
    pub lambda: Partition,
    /// `N_λ`, dimension of the `S_N` irrep.
    pub irrep_dim: usize,
    /// `d_λ(m)`, dimension of the irreducible `M_N` sector.
    pub multiplicity: usize,
    /// `rank z_λ = N_λ d_λ(m)`.
    pub isotypic_rank: usize,
    pub idempotence_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SectorResiduals {
    /// `max_λ |z_λ² - z_λ|`.
    pub idempotence: f64,
    /// `max_λ |z_λ - z_λ*|`.
    pub hermiticity: f64,
    /// `max_{λ≠μ} |z_λ z_μ|`.
    pub orthogonality: f64,
    /// `|Σ_λ z_λ - 1|`.
    pub completeness: f64,
}

/// Isotypic decomposition of `(C^m)^{⊗N}` under `S_N × M_N`.
#[derive(Clone, Debug, Serialize)]
pub struct SectorReport {
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub dimension: usize,
    pub sectors: Vec<SectorRecord>,
    /// `dim M_N` from the orbit basis.
    pub commutant_dim: usize,
    /// `dim M_N` from the null space of the commutation equations.
    pub commutant_dim_nullspace: usize,
    pub residuals: SectorResiduals,
}

impl SectorReport {
    pub fn sector(&self, lambda: &Partition) -> Option<&SectorRecord> {
        self.sectors.iter().find(|s| &s.lambda == lambda)
    }

    pub fn rank_sum(&self) -> usize {
        self.sectors.iter().map(|s| s.isotypic_rank).sum()
    }

    pub fn multiplicity_square_sum(&self) -> usize {
        self.sectors.iter().map(|s| s.multiplicity * s.multiplicity).sum()
    }
}

/// Decomposes `(C^m)^{⊗N}` with central projectors and checks both counting
/// identities `Σ N_λ d_λ = m^N` and `dim M_N = Σ d_λ²`.
///
/// A multiplicity that is not an integer, or a failed identity, is reported
/// as [`Error::Consistency`].
pub fn sector_decomposition(space: &TensorSpace) -> Result<SectorReport> {
    let partitions = Partition::enumerate(space.particles())?;
    let projectors: Vec<ComplexOperator> =
        partitions.iter().map(|l| central_projector(l, space)).collect::<Result<_>>()?;

    let mut sectors = Vec::with_capacity(partitions.len());
    let mut residuals = SectorResiduals { idempotence: 0.0, hermiticity: 0.0, orthogonality: 0.0, completeness: 0.0 };
    let mut sum = linalg::zeros(space.dimension(), space.dimension());
    for (lambda, z) in partitions.iter().zip(&projectors) {
        let irrep_dim = lambda.hook_dimension() as usize;
        let rank = linalg::rank_hermitian(z);
        if !rank.is_multiple_of(irrep_dim) {
            return Err(Error::consistency(format!(
                "rank {rank} of z_{lambda} is not a multiple of N_λ = {irrep_dim}"
            )));
        }
        let idem = linalg::idempotence_residual(z);
        residuals.idempotence = residuals.idempotence.max(idem);
        residuals.hermiticity = residuals.hermiticity.max(linalg::hermiticity_residual(z));
        sum += z;
        sectors.push(SectorRecord {
            lambda: lambda.clone(),
            irrep_dim,
            multiplicity: rank / irrep_dim,
            isotypic_rank: rank,
            idempotence_residual: idem,
        });
    }
    for (a, za) in projectors.iter().enumerate() {
        for zb in &projectors[a + 1..] {
            residuals.orthogonality = residuals.orthogonality.max(linalg::max_abs(&(za * zb)));
        }
    }
    residuals.completeness = linalg::max_abs_diff(&sum, &linalg::identity(space.dimension()));

    let report = SectorReport {
        m: space.local_dim(),
        n: space.particles(),
        dimension: space.dimension(),
        sectors,
        commutant_dim: commutant_basis(space).len(),
        commutant_dim_nullspace: commutant_dimension_nullspace(space),
        residuals,
    };
    if report.rank_sum() != space.dimension() {
        return Err(Error::consistency(format!(
            "isotypic ranks sum to {} instead of m^N = {}",
            report.rank_sum(),
            space.dimension()
        )));
    }
    let expected = report.multiplicity_square_sum();
    if report.commutant_dim != expected || report.commutant_dim_nullspace != expected {
        return Err(Error::consistency(format!(
            "commutant dimension {} (orbits) / {} (null space) differs from Σ d_λ² = {expected}",
            report.commutant_dim, report.commutant_dim_nullspace
        )));
    }
    Ok(report)
}
