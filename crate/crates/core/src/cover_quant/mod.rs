//! Finite model of quantization on a covering space.
//!
//! `X̃` is a finite set with a free right action of a finite group `G`; the
//! invariant kernels on `X̃` play the observable algebra, and every irrep `χ`
//! of `G` induces a sector, realized either on equivariant `H_χ`-valued
//! functions on `X̃` or, through a section `σ`, on unconstrained functions on
//! `X = X̃/G`.

mod census;
mod cover;
mod group;
mod kernel;
mod realization;

pub use census::{sector_census, CensusReport, PairEntry, SectorEntry, COMPLETENESS_KERNELS, INTERTWINING_KERNELS};
pub use cover::{explicit_cover, symmetric_cover, FiniteCover, MAX_COVER_POINTS};
pub use group::{irreps, regular_irreps, FiniteGroup, GroupRep, MAX_GROUP_ORDER};
pub use kernel::{invariant_kernel_basis, invariant_kernel_dimension, random_invariant_kernel, InvariantKernel};
pub use realization::{
    constrained_action, constrained_space, equivariance_projector, equivariance_residual, realization_inverse,
    realization_unitary, section_action, ConstrainedSpace, RestrictedAction,
};
