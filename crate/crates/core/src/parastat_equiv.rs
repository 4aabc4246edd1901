//! Parastatistics as bosons or fermions with an unobservable internal index.
//!
//! Particles carry a spatial label in `C^m` and an internal label in `C^n`.
//! The ambient space `(C^m ⊗ C^n)^{⊗N}` is a [`TensorSpace`] with local
//! dimension `m n`, local index `q n + a`: spatial and internal factors are
//! interleaved per slot, so `ψ_{a_1 a_2}(q_1, q_2)` is the component at slot
//! digits `(q_1 n + a_1, q_2 n + a_2)`. Internal labels `1, 2` of the
//! formulas are `a = 0, 1` here.
//!
//! Observables ignore the internal index: `A` acts as `A ⊗ 1`. Targets of the
//! partial isometries are `(C^m)^{⊗N} ⊗ C^k` with index `s k + i`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::intertwine::{self, intertwining_residual};
use crate::linalg::{self, c, ComplexOperator};
use crate::permgroup::{factorial, irrep, s3_doublet, Partition, Permutation, Tableau};
use crate::tensor_rep::{commutant_basis, permutation_operator, young_projector, TensorSpace};

/// Residual below which an intertwiner certifies equivalence.
pub const EQUIVALENCE_TOL: f64 = 1e-10;

/// A representation of the invariant algebra on an invariant subspace of
/// some ambient space.
#[derive(Clone, Debug)]
pub struct SectorRealization {
    embedding: ComplexOperator,
    actions: Vec<ComplexOperator>,
    leakage: f64,
}

impl SectorRealization {
    /// Restricts `ambient_ops` to the column space of `embedding`, whose
    /// columns must be orthonormal. `leakage` records how far the subspace is
    /// from invariant: `max |A B - B (B* A B)|`.
    pub fn restrict(embedding: ComplexOperator, ambient_ops: &[ComplexOperator]) -> Self {
        let adj = embedding.adjoint();
        let mut leakage = 0.0_f64;
        let actions = ambient_ops
            .iter()
            .map(|a| {
                let ab = linalg::product(a, &embedding);
                let restricted = &adj * &ab;
                leakage = leakage.max(linalg::max_abs_diff(&ab, &(&embedding * &restricted)));
                restricted
            })
            .collect();
        SectorRealization { embedding, actions, leakage }
    }

    pub fn carrier_dim(&self) -> usize {
        self.embedding.ncols()
    }

    pub fn embedding(&self) -> &ComplexOperator {
        &self.embedding
    }

    pub fn actions(&self) -> &[ComplexOperator] {
        &self.actions
    }

    pub fn leakage(&self) -> f64 {
        self.leakage
    }
}

/// A partial isometry `W` from an ambient space to a target space.
#[derive(Clone, Debug)]
pub struct PartialIsometry {
    matrix: ComplexOperator,
}

impl PartialIsometry {
    pub fn new(matrix: ComplexOperator) -> Self {
        PartialIsometry { matrix }
    }

    pub fn matrix(&self) -> &ComplexOperator {
        &self.matrix
    }

    /// `max |W W* W - W|`.
    pub fn residual(&self) -> f64 {
        linalg::partial_isometry_residual(&self.matrix)
    }

    /// `W* W` on the ambient space.
    pub fn source_projector(&self) -> ComplexOperator {
        self.matrix.adjoint() * &self.matrix
    }

    /// `W W*` on the target space.
    pub fn target_projector(&self) -> ComplexOperator {
        &self.matrix * self.matrix.adjoint()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceCertificate {
    pub equivalent: bool,
    pub carrier_dims: [usize; 2],
    pub solution_space_dim: usize,
    pub residual: Option<f64>,
    pub unitarity_residual: Option<f64>,
    pub evidence: String,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "linalg::serialize_opt_matrix")]
    pub intertwiner: Option<ComplexOperator>,
}

/// Searches for a unitary `V` with `V a1(A) = a2(A) V` for every basis
/// element `A`. When both realizations carry literally the same matrices the
/// identity is returned.
pub fn general_equivalence(r1: &SectorRealization, r2: &SectorRealization) -> Result<EquivalenceCertificate> {
    let (a1, a2) = (r1.actions(), r2.actions());
    if a1.is_empty() || a2.is_empty() {
        return Err(Error::domain("empty algebra basis"));
    }
    if a1.len() != a2.len() {
        return Err(Error::domain(format!("realizations carry {} and {} algebra elements", a1.len(), a2.len())));
    }
    let dims = [r1.carrier_dim(), r2.carrier_dim()];
    if dims[0] == dims[1] && a1.iter().zip(a2).all(|(x, y)| x == y) {
        let id = linalg::identity(dims[0]);
        return Ok(EquivalenceCertificate {
            equivalent: true,
            carrier_dims: dims,
            solution_space_dim: intertwine::intertwiner_space(a1, a2)?.len(),
            residual: Some(intertwining_residual(&id, a1, a2)),
            unitarity_residual: Some(0.0),
            evidence: "identical actions; identity intertwines".into(),
            intertwiner: Some(id),
        });
    }
    let search = intertwine::unitary_intertwiner(a1, a2)?;
    let dim = search.solution_space_dim;
    let cert = match (search.unitary, search.residual) {
        (Some(u), Some(res)) => {
            let unitarity = linalg::unitarity_residual(&u);
            let ok = res < EQUIVALENCE_TOL && unitarity < EQUIVALENCE_TOL;
            EquivalenceCertificate {
                equivalent: ok,
                carrier_dims: dims,
                solution_space_dim: dim,
                residual: Some(res),
                unitarity_residual: Some(unitarity),
                evidence: if ok {
                    "unitary polar factor of a generic intertwiner".into()
                } else {
                    format!("best unitary candidate misses tolerance: residual {res:.3e}")
                },
                intertwiner: Some(u),
            }
        }
        _ => {
            let evidence = if dims[0] != dims[1] {
                format!("carrier dimensions differ ({} vs {}); intertwiner space has dimension {dim}", dims[0], dims[1])
            } else if dim == 0 {
                "only the zero intertwiner exists".to_string()
            } else {
                format!("every element of the {dim}-dimensional intertwiner space is singular")
            };
            EquivalenceCertificate {
                equivalent: false,
                carrier_dims: dims,
                solution_space_dim: dim,
                residual: None,
                unitarity_residual: None,
                evidence,
                intertwiner: None,
            }
        }
    };
    Ok(cert)
}

/// Spatial ⊗ internal bookkeeping for `(C^m ⊗ C^n)^{⊗N}`.
#[derive(Clone, Copy, Debug)]
struct IsospinLayout {
    ambient: TensorSpace,
    spatial: TensorSpace,
    internal: TensorSpace,
}

impl IsospinLayout {
    fn new(m: usize, n_internal: usize, particles: usize) -> Result<Self> {
        Ok(IsospinLayout {
            ambient: TensorSpace::new(m * n_internal, particles)?,
            spatial: TensorSpace::new(m, particles)?,
            internal: TensorSpace::new(n_internal, particles)?,
        })
    }

    /// `(spatial flat index, internal flat index)` of an ambient index.
    fn split(&self, flat: usize) -> (usize, usize) {
        let n = self.internal.local_dim();
        let digits = self.ambient.digits(flat);
        let q: Vec<usize> = digits.iter().map(|d| d / n).collect();
        let a: Vec<usize> = digits.iter().map(|d| d % n).collect();
        (self.spatial.flat(&q), self.internal.flat(&a))
    }

    fn ambient_index(&self, spatial: usize, internal: usize) -> usize {
        let n = self.internal.local_dim();
        let q = self.spatial.digits(spatial);
        let a = self.internal.digits(internal);
        let digits: Vec<usize> = q.iter().zip(&a).map(|(q, a)| q * n + a).collect();
        self.ambient.flat(&digits)
    }

    /// `A ⊗ 1` on the ambient space.
    fn extend(&self, a: &ComplexOperator) -> ComplexOperator {
        let dim = self.ambient.dimension();
        let mut by_internal: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.internal.dimension()];
        for i in 0..dim {
            let (s, int) = self.split(i);
            by_internal[int].push((i, s));
        }
        let mut out = linalg::zeros(dim, dim);
        for group in &by_internal {
            for &(i, si) in group {
                for &(j, sj) in group {
                    out[(i, j)] = a[(si, sj)];
                }
            }
        }
        out
    }

    /// `W` with `(W ψ)_i(q) = Σ_a conj(w_i(a)) ψ_a(q)` for the internal
    /// vectors `w_i`.
    fn isometry(&self, internal_vectors: &[Vec<(Vec<usize>, f64)>]) -> PartialIsometry {
        let k = internal_vectors.len();
        let mut w = linalg::zeros(self.spatial.dimension() * k, self.ambient.dimension());
        for s in 0..self.spatial.dimension() {
            for (i, vector) in internal_vectors.iter().enumerate() {
                for (labels, coeff) in vector {
                    let col = self.ambient_index(s, self.internal.flat(labels));
                    w[(s * k + i, col)] = c(*coeff);
                }
            }
        }
        PartialIsometry::new(w)
    }

    /// `P_B = (1/N!) Σ_π U(π)` on the ambient space.
    fn bosonic_projector(&self) -> ComplexOperator {
        let n = self.ambient.particles();
        let mut p = linalg::zeros(self.ambient.dimension(), self.ambient.dimension());
        for pi in Permutation::all(n) {
            p += permutation_operator(&pi, &self.ambient);
        }
        p.scale(1.0 / factorial(n) as f64)
    }
}

/// Isospin singlet for two particles:
/// `W ψ = (ψ_{12} - ψ_{21}) / √2`, mapping into `(C^m)^{⊗2}`.
pub fn singlet_isometry_2(m: usize) -> Result<PartialIsometry> {
    let layout = IsospinLayout::new(m, 2, 2)?;
    Ok(layout.isometry(&singlet_vectors()))
}

fn singlet_vectors() -> Vec<Vec<(Vec<usize>, f64)>> {
    let r = 1.0 / 2f64.sqrt();
    vec![vec![(vec![0, 1], r), (vec![1, 0], -r)]]
}

/// Isospin doublet for three particles, mapping into `(C^m)^{⊗3} ⊗ C^2`:
/// `W ψ_1 = (ψ_{121} - ψ_{112}) / √2`,
/// `W ψ_2 = (-2 ψ_{211} + ψ_{121} + ψ_{112}) / √6`.
pub fn doublet_isometry_3(m: usize) -> Result<PartialIsometry> {
    let layout = IsospinLayout::new(m, 2, 3)?;
    Ok(layout.isometry(&doublet_vectors()))
}

fn doublet_vectors() -> Vec<Vec<(Vec<usize>, f64)>> {
    let (r2, r6) = (1.0 / 2f64.sqrt(), 1.0 / 6f64.sqrt());
    vec![
        vec![(vec![0, 1, 0], r2), (vec![0, 0, 1], -r2)],
        vec![(vec![1, 0, 0], -2.0 * r6), (vec![0, 1, 0], r6), (vec![0, 0, 1], r6)],
    ]
}

/// Outcome of comparing a bosonic sector with internal index against a
/// sector without one.
#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub isometry_residual: f64,
    /// `max |[W* W, P_B]|`.
    pub projector_commutator: f64,
    /// Max over basis `A` of `|[A ⊗ 1, W* W]|` and `|[A ⊗ 1, P_B]|`.
    pub algebra_commutator: f64,
    pub leakage: [f64; 2],
    /// How far `W` itself, restricted to the bosonic carrier, is from a
    /// unitary intertwiner onto the other carrier.
    pub natural_map_residual: f64,
    /// Max violation of the displayed component equations, when the target
    /// carrier is described by such equations.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constraint_residual: Option<f64>,
    pub certificate: EquivalenceCertificate,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        let tol = EQUIVALENCE_TOL;
        self.certificate.equivalent
            && self.isometry_residual < tol
            && self.projector_commutator < tol
            && self.algebra_commutator < tol
            && self.leakage.iter().all(|&l| l < tol)
            && self.constraint_residual.is_none_or(|r| r < tol)
    }
}

/// The bosonic carrier `W* W P_B (C^m ⊗ C^n)^{⊗N}` and the partial
/// isometry's image of it, compared against `target`.
fn bosonic_comparison(
    layout: &IsospinLayout,
    w: &PartialIsometry,
    algebra: &[ComplexOperator],
    target_ops: &[ComplexOperator],
    target_embedding: ComplexOperator,
) -> Result<(EquivalenceReport, SectorRealization)> {
    let p_w = w.source_projector();
    let p_b = layout.bosonic_projector();
    let extended: Vec<ComplexOperator> = algebra.iter().map(|a| layout.extend(a)).collect();
    let algebra_commutator = extended
        .iter()
        .map(|a| linalg::commutator_residual(a, &p_w).max(linalg::commutator_residual(a, &p_b)))
        .fold(0.0, f64::max);

    let bosonic = SectorRealization::restrict(linalg::orthonormal_range(&(&p_w * &p_b)), &extended);
    let target = SectorRealization::restrict(target_embedding, target_ops);
    let certificate = general_equivalence(&bosonic, &target)?;

    let natural = target.embedding().adjoint() * w.matrix() * bosonic.embedding();
    let natural_map_residual = if natural.is_square() {
        linalg::unitarity_residual(&natural).max(intertwining_residual(&natural, bosonic.actions(), target.actions()))
    } else {
        f64::INFINITY
    };

    let report = EquivalenceReport {
        m: layout.spatial.local_dim(),
        n: layout.spatial.particles(),
        isometry_residual: w.residual(),
        projector_commutator: linalg::commutator_residual(&p_w, &p_b),
        algebra_commutator,
        leakage: [bosonic.leakage(), target.leakage()],
        natural_map_residual,
        constraint_residual: None,
        certificate,
    };
    Ok((report, bosonic))
}

fn require_m(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::domain(format!("need m >= 2, got m={m}")));
    }
    Ok(())
}

/// Two bosonic isospin doublets in the singlet versus two spinless fermions.
pub fn verify_prop2(m: usize) -> Result<EquivalenceReport> {
    require_m(m)?;
    let layout = IsospinLayout::new(m, 2, 2)?;
    let spatial = layout.spatial;
    let algebra = commutant_basis(&spatial);
    let column = Tableau::standard(vec![vec![1], vec![2]])?;
    let antisym = linalg::orthonormal_range(&young_projector(&column, &spatial)?);
    let w = singlet_isometry_2(m)?;
    Ok(bosonic_comparison(&layout, &w, &algebra, &algebra, antisym)?.0)
}

/// `(1/|S_N|) Σ_π U(π) ⊗ U_χ(π)` on `(C^m)^{⊗N} ⊗ C^k`: the projector onto
/// wave functions with `ψ(q̃ h) = U_χ(h⁻¹) ψ(q̃)`, where
/// `(q̃ h)_i = q̃_{h(i)}`.
pub fn equivariant_projector(spatial: &TensorSpace, rep: impl Fn(&Permutation) -> ComplexOperator) -> ComplexOperator {
    let n = spatial.particles();
    let group = Permutation::all(n);
    let k = rep(&group[0]).nrows();
    let mut p = linalg::zeros(spatial.dimension() * k, spatial.dimension() * k);
    for pi in &group {
        p += linalg::kron(&permutation_operator(pi, spatial), &rep(pi));
    }
    p.scale(1.0 / group.len() as f64)
}

/// Max violation of the six component equations for the parafermion doublet
/// under the transpositions `(12)`, `(13)`, `(23)`, on a wave function in
/// `(C^m)^{⊗3} ⊗ C^2`.
pub fn parafermion_constraint_residual(psi: &[num_complex::Complex64], m: usize) -> Result<f64> {
    let spatial = TensorSpace::new(m, 3)?;
    if psi.len() != spatial.dimension() * 2 {
        return Err(Error::domain("wave function length is not 2 m^3"));
    }
    let (h, r) = (0.5, 3f64.sqrt() / 2.0);
    let at = |q: &[usize], i: usize| psi[spatial.flat(q) * 2 + i];
    let mut worst = 0.0_f64;
    for s in 0..spatial.dimension() {
        let q = spatial.digits(s);
        let (p1, p2) = (at(&q, 0), at(&q, 1));
        let q213 = [q[1], q[0], q[2]];
        let q321 = [q[2], q[1], q[0]];
        let q132 = [q[0], q[2], q[1]];
        let residuals = [
            at(&q213, 0) - (p1 * h - p2 * r),
            at(&q213, 1) - (-p1 * r - p2 * h),
            at(&q321, 0) - (p1 * h + p2 * r),
            at(&q321, 1) - (p1 * r - p2 * h),
            at(&q132, 0) + p1,
            at(&q132, 1) - p2,
        ];
        worst = residuals.iter().fold(worst, |acc, z| acc.max(z.norm()));
    }
    Ok(worst)
}

/// Three bosonic isospin doublets in the doublet channel versus spinless
/// parafermions with the `S_3` doublet statistics.
pub fn verify_prop3(m: usize) -> Result<EquivalenceReport> {
    require_m(m)?;
    let layout = IsospinLayout::new(m, 2, 3)?;
    let spatial = layout.spatial;
    let algebra = commutant_basis(&spatial);
    let id2 = linalg::identity(2);
    let target_ops: Vec<ComplexOperator> = algebra.iter().map(|a| linalg::kron(a, &id2)).collect();
    let parafermions = linalg::orthonormal_range(&equivariant_projector(&spatial, s3_doublet::matrix));

    let constraint_residual = parafermions
        .column_iter()
        .map(|col| parafermion_constraint_residual(col.as_slice(), m))
        .try_fold(0.0_f64, |acc, r| r.map(|r| acc.max(r)))?;

    let w = doublet_isometry_3(m)?;
    let (mut report, _) = bosonic_comparison(&layout, &w, &algebra, &target_ops, parafermions)?;
    report.constraint_residual = Some(constraint_residual);
    Ok(report)
}

/// Orthonormal vectors spanning one copy of `U_λ` inside `(C^n)^{⊗N}`,
/// `n` the number of rows of `λ`: the cyclic span of `P_T e_a`, where `T` is
/// the first standard tableau and `a_k` the row holding `k`.
fn internal_multiplet(shape: &Partition) -> Result<(TensorSpace, ComplexOperator)> {
    let internal = TensorSpace::new(shape.len(), shape.total())?;
    let t = crate::permgroup::standard_tableaux(shape).remove(0);
    let labels: Vec<usize> = (1..=shape.total()).map(|k| t.position(k).0).collect();
    let mut seed = linalg::zeros(internal.dimension(), 1);
    seed[(internal.flat(&labels), 0)] = c(1.0);
    let generator = young_projector(&t, &internal)? * seed;
    let perms = Permutation::all(shape.total());
    let mut orbit = linalg::zeros(internal.dimension(), perms.len());
    for (j, pi) in perms.iter().enumerate() {
        orbit.set_column(j, &(permutation_operator(pi, &internal) * &generator).column(0));
    }
    let basis = linalg::orthonormal_range(&orbit);
    let expected = shape.hook_dimension() as usize;
    if basis.ncols() != expected {
        return Err(Error::consistency(format!(
            "internal copy of {shape} has dimension {}, expected {expected}",
            basis.ncols()
        )));
    }
    Ok((internal, basis))
}

/// Bosons whose internal index lies in a copy of `U_λ` versus spinless
/// particles with statistics `U_λ` (wave functions on `(C^m)^{⊗N} ⊗ C^{N_λ}`
/// equivariant under Young's orthogonal matrices). The comparison is made
/// directly by [`general_equivalence`]; the internal copy is not aligned with
/// Young's basis, so no natural map is reported.
pub fn multiplet_equivalence(shape: &Partition, m: usize) -> Result<EquivalenceCertificate> {
    let n = shape.total();
    let (internal, copy) = internal_multiplet(shape)?;
    let layout = IsospinLayout::new(m, internal.local_dim(), n)?;
    let k = copy.ncols();
    let mut w = linalg::zeros(layout.spatial.dimension() * k, layout.ambient.dimension());
    for s in 0..layout.spatial.dimension() {
        for i in 0..k {
            for a in 0..internal.dimension() {
                let z = copy[(a, i)];
                if z.norm() > 0.0 {
                    w[(s * k + i, layout.ambient_index(s, a))] = z.conj();
                }
            }
        }
    }
    let w = PartialIsometry::new(w);
    let algebra = commutant_basis(&layout.spatial);
    let extended: Vec<ComplexOperator> = algebra.iter().map(|a| layout.extend(a)).collect();
    let p = w.source_projector() * layout.bosonic_projector();
    let bosonic = SectorRealization::restrict(linalg::orthonormal_range(&p), &extended);

    let rep = irrep(shape);
    let idk = linalg::identity(k);
    let target_ops: Vec<ComplexOperator> = algebra.iter().map(|a| linalg::kron(a, &idk)).collect();
    let equivariant = linalg::orthonormal_range(&equivariant_projector(&layout.spatial, |pi| rep.matrix(pi)));
    let statistics = SectorRealization::restrict(equivariant, &target_ops);
    if bosonic.leakage() > EQUIVALENCE_TOL || statistics.leakage() > EQUIVALENCE_TOL {
        return Err(Error::consistency("carrier is not invariant under the algebra"));
    }
    general_equivalence(&bosonic, &statistics)
}

/// The algebra restricted to the range of the Young symmetrizer `P_T`.
pub fn young_realization(t: &Tableau, space: &TensorSpace) -> Result<SectorRealization> {
    let range = linalg::orthonormal_range(&young_projector(t, space)?);
    Ok(SectorRealization::restrict(range, &commutant_basis(space)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn singlet_kills_internal_symmetric_states() {
        let layout = IsospinLayout::new(2, 2, 2).unwrap();
        let w = singlet_isometry_2(2).unwrap();
        let mut psi = linalg::zeros(layout.ambient.dimension(), 1);
        for s in 0..layout.spatial.dimension() {
            psi[(layout.ambient_index(s, layout.internal.flat(&[0, 1])), 0)] = c(s as f64 + 1.0);
            psi[(layout.ambient_index(s, layout.internal.flat(&[1, 0])), 0)] = c(s as f64 + 1.0);
        }
        assert!(linalg::max_abs(&(w.matrix() * psi)) < 1e-15);
    }

    #[test]
    fn isometries_have_orthonormal_rows() {
        let w2 = singlet_isometry_2(3).unwrap();
        let w3 = doublet_isometry_3(2).unwrap();
        for w in [w2, w3] {
            let id = linalg::identity(w.matrix().nrows());
            assert!(linalg::max_abs_diff(&w.target_projector(), &id) < 1e-14);
            assert!(w.residual() < 1e-14);
        }
    }

    #[test]
    fn extension_is_a_homomorphism() {
        let layout = IsospinLayout::new(2, 2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = linalg::random_matrix(&mut rng, 4, 4);
        let b = linalg::random_matrix(&mut rng, 4, 4);
        let lhs = layout.extend(&(&a * &b));
        let rhs = layout.extend(&a) * layout.extend(&b);
        assert!(linalg::max_abs_diff(&lhs, &rhs) < 1e-12);
        assert!(linalg::max_abs_diff(&layout.extend(&linalg::identity(4)), &linalg::identity(16)) == 0.0);
    }

    #[test]
    fn two_fermions_at_m2() {
        let r = verify_prop2(2).unwrap();
        assert_eq!(r.certificate.carrier_dims, [1, 1]);
        assert!(r.passed(), "{r:?}");
        assert!(r.natural_map_residual < 1e-12);
    }

    #[test]
    fn empty_basis_is_rejected() {
        let r = SectorRealization::restrict(linalg::identity(2), &[]);
        assert!(matches!(general_equivalence(&r, &r), Err(Error::Domain(_))));
    }
}
