use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cover::FiniteCover;
use super::group::{irreps, GroupRep};
use super::kernel::{invariant_kernel_basis, invariant_kernel_dimension, random_invariant_kernel, InvariantKernel};
use super::realization::{
    constrained_action, constrained_space, realization_inverse, realization_unitary, section_action, ConstrainedSpace,
};
use crate::error::Result;
use crate::intertwine;
use crate::linalg::{self, ComplexOperator};

/// Above this many orbit indicators the commutant is computed against random
/// kernels instead. A trivial commutant (or intertwiner space) of a subset of
/// the algebra is also trivial for the whole algebra, so both certificates
/// stay sound.
const FULL_BASIS_LIMIT: usize = 256;
const RANDOM_GENERATORS: usize = 6;
/// Kernels used for the intertwining and homomorphism checks.
pub const INTERTWINING_KERNELS: usize = 50;
/// Hermitian kernels used for the completeness spectra.
pub const COMPLETENESS_KERNELS: usize = 20;

const TOL: f64 = 1e-10;
const UNITARY_TOL: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
pub struct SectorEntry {
    pub label: String,
    pub irrep_dim: usize,
    pub sector_dim: usize,
    pub commutant_dim: usize,
    pub irreducible: bool,
    pub leakage: f64,
    pub unitarity_residual: f64,
    pub inverse_residual: f64,
    pub intertwining_residual: f64,
    pub random_section_residual: f64,
    pub homomorphism_residual: f64,
    pub hermiticity_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairEntry {
    pub pair: [String; 2],
    pub intertwiner_dim: usize,
    pub inequivalent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub total_points: usize,
    pub base_points: usize,
    pub group_order: usize,
    pub irrep_count: usize,
    pub algebra_family: String,
    pub sectors: Vec<SectorEntry>,
    pub pairs: Vec<PairEntry>,
    /// `Σ_χ (|X| dim χ)²`.
    pub dimension_sum: usize,
    /// Orbit count of `G` on `X̃ × X̃`.
    pub invariant_kernel_dim: usize,
    /// `|X|² |G|`.
    pub expected_kernel_dim: usize,
    /// Max spectral mismatch between the defining action on `L²(X̃)` and
    /// `⊕_χ dim χ · π^χ` over random Hermitian kernels.
    pub completeness_residual: f64,
    /// Max spectral mismatch of `π_σ` between the canonical and a random
    /// section.
    pub section_spectrum_distance: f64,
    pub passed: bool,
}

struct Sector {
    rep: GroupRep,
    space: ConstrainedSpace,
}

fn restricted(kernels: &[InvariantKernel], sector: &Sector) -> Vec<ComplexOperator> {
    kernels.iter().map(|k| constrained_action(k, &sector.rep, &sector.space).matrix).collect()
}

/// Builds every sector `π^χ` of `cover` and checks
/// irreducibility, pairwise inequivalence, the dimension count, the
/// unitary between the constrained and section realizations (for the
/// canonical and a random section) and completeness.
pub fn sector_census(cover: &FiniteCover, seed: u64) -> Result<CensusReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let group = cover.group();
    let reps = irreps(group)?;
    let sectors: Vec<Sector> = reps
        .into_iter()
        .map(|rep| {
            let space = constrained_space(cover, &rep);
            Sector { rep, space }
        })
        .collect();

    let kernel_dim = invariant_kernel_dimension(cover);
    let (family, family_name) = if kernel_dim <= FULL_BASIS_LIMIT {
        (invariant_kernel_basis(cover), "orbit basis".to_string())
    } else {
        let mut ks = Vec::new();
        for _ in 0..RANDOM_GENERATORS {
            let k = random_invariant_kernel(cover, &mut rng, false);
            ks.push(k.adjoint());
            ks.push(k);
        }
        (ks, format!("{} random kernels and adjoints", RANDOM_GENERATORS))
    };
    let families: Vec<Vec<ComplexOperator>> = sectors.iter().map(|s| restricted(&family, s)).collect();

    let kernels: Vec<InvariantKernel> =
        (0..INTERTWINING_KERNELS).map(|_| random_invariant_kernel(cover, &mut rng, false)).collect();
    let hermitian: Vec<InvariantKernel> =
        (0..COMPLETENESS_KERNELS).map(|_| random_invariant_kernel(cover, &mut rng, true)).collect();
    let other = cover.random_section(&mut rng);

    let mut entries = Vec::with_capacity(sectors.len());
    for (sector, fam) in sectors.iter().zip(&families) {
        let (rep, space) = (&sector.rep, &sector.space);
        let commutant_dim = intertwine::commutant_dimension(fam)?;
        let u = realization_unitary(cover, rep, space);
        let u_inv = realization_inverse(cover, rep, space);
        let u_other = realization_unitary(&other, rep, space);
        let mut leakage = 0.0_f64;
        let mut intertwining = 0.0_f64;
        let mut random_section = 0.0_f64;
        let mut homomorphism = 0.0_f64;
        for (i, k) in kernels.iter().enumerate() {
            let act = constrained_action(k, rep, space);
            leakage = leakage.max(act.leakage);
            let lhs = &u * &act.matrix * u.adjoint();
            intertwining = intertwining.max(linalg::max_abs_diff(&lhs, &section_action(cover, k, rep)));
            let lhs = &u_other * &act.matrix * u_other.adjoint();
            random_section = random_section.max(linalg::max_abs_diff(&lhs, &section_action(&other, k, rep)));
            let next = &kernels[(i + 1) % kernels.len()];
            let product = constrained_action(&k.compose(next), rep, space).matrix;
            let separate = &act.matrix * constrained_action(next, rep, space).matrix;
            homomorphism = homomorphism.max(linalg::max_abs_diff(&product, &separate));
        }
        let hermiticity = hermitian
            .iter()
            .map(|k| linalg::hermiticity_residual(&constrained_action(k, rep, space).matrix))
            .fold(0.0, f64::max);
        entries.push(SectorEntry {
            label: rep.label().to_string(),
            irrep_dim: rep.dim(),
            sector_dim: space.dim(),
            commutant_dim,
            irreducible: commutant_dim == 1,
            leakage,
            unitarity_residual: linalg::unitarity_residual(&u).max(linalg::unitarity_residual(&u_other)),
            inverse_residual: linalg::max_abs_diff(&u_inv, &u.adjoint()),
            intertwining_residual: intertwining,
            random_section_residual: random_section,
            homomorphism_residual: homomorphism,
            hermiticity_residual: hermiticity,
        });
    }

    let mut pairs = Vec::new();
    for i in 0..sectors.len() {
        for j in i + 1..sectors.len() {
            let (a, b) = (&families[i], &families[j]);
            let dim = intertwine::intertwiner_space(a, b)?.len();
            let same_size = sectors[i].space.dim() == sectors[j].space.dim();
            let inequivalent =
                !same_size || dim == 0 || intertwine::unitary_intertwiner(a, b)?.residual.is_none_or(|r| r > TOL);
            pairs.push(PairEntry {
                pair: [sectors[i].rep.label().to_string(), sectors[j].rep.label().to_string()],
                intertwiner_dim: dim,
                inequivalent,
            });
        }
    }

    let mut completeness = 0.0_f64;
    for k in &hermitian {
        let full = linalg::hermitian_eigenvalues(k.matrix());
        let mut parts = Vec::with_capacity(full.len());
        for s in &sectors {
            let vals = linalg::hermitian_eigenvalues(&constrained_action(k, &s.rep, &s.space).matrix);
            for _ in 0..s.rep.dim() {
                parts.extend_from_slice(&vals);
            }
        }
        completeness = completeness.max(if parts.len() == full.len() {
            linalg::spectrum_distance(&full, &parts)
        } else {
            f64::INFINITY
        });
    }

    let mut section_distance = 0.0_f64;
    for k in kernels.iter().take(10) {
        for s in &sectors {
            let a = linalg::general_eigenvalues(&section_action(cover, k, &s.rep));
            let b = linalg::general_eigenvalues(&section_action(&other, k, &s.rep));
            section_distance = section_distance.max(linalg::complex_spectrum_distance(&a, &b));
        }
    }

    let base = cover.base_size();
    let dimension_sum: usize = sectors.iter().map(|s| s.space.dim().pow(2)).sum();
    let expected = base * base * group.order();
    let sectors_ok = entries.iter().all(|e| {
        e.irreducible
            && e.sector_dim == base * e.irrep_dim
            && e.leakage < UNITARY_TOL
            && e.unitarity_residual < UNITARY_TOL
            && e.inverse_residual < UNITARY_TOL
            && e.intertwining_residual < TOL
            && e.random_section_residual < TOL
            && e.homomorphism_residual < TOL
            && e.hermiticity_residual < TOL
    });
    let passed = sectors_ok
        && pairs.iter().all(|p| p.inequivalent)
        && dimension_sum == kernel_dim
        && kernel_dim == expected
        && completeness < TOL
        && section_distance < 1e-8;

    Ok(CensusReport {
        total_points: cover.total_size(),
        base_points: base,
        group_order: group.order(),
        irrep_count: entries.len(),
        algebra_family: family_name,
        sectors: entries,
        pairs,
        dimension_sum,
        invariant_kernel_dim: kernel_dim,
        expected_kernel_dim: expected,
        completeness_residual: completeness,
        section_spectrum_distance: section_distance,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover_quant::symmetric_cover;

    #[test]
    fn sectors_of_three_points_two_particles() {
        let r = sector_census(&symmetric_cover(3, 2).unwrap(), 7).unwrap();
        assert!(r.passed, "{r:?}");
        let dims: Vec<usize> = r.sectors.iter().map(|s| s.sector_dim).collect();
        assert_eq!(dims, [3, 3]);
        assert_eq!(r.dimension_sum, 18);
    }
}
