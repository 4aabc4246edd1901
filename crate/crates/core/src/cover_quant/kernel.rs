use std::collections::HashMap;

use rand::Rng;

use super::cover::FiniteCover;
use crate::error::{Error, Result};
use crate::linalg::{self, c, ComplexOperator, MatrixJson};

/// Relative tolerance of the invariance check.
const INVARIANCE_TOL: f64 = 1e-12;

/// A kernel `A` on `X̃ × X̃` with `A(x h, y h) = A(x, y)` for all `h`.
#[derive(Clone, Debug)]
pub struct InvariantKernel {
    matrix: ComplexOperator,
}

impl InvariantKernel {
    /// Validates shape and invariance; the error names a violating pair.
    pub fn new(cover: &FiniteCover, matrix: ComplexOperator) -> Result<Self> {
        let n = cover.total_size();
        if matrix.shape() != (n, n) {
            return Err(Error::domain(format!(
                "kernel is {}x{}, cover has {n} points",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let tol = INVARIANCE_TOL * linalg::max_abs(&matrix).max(1.0);
        for x in 0..n {
            for y in 0..n {
                for h in 1..cover.group().order() {
                    let moved = matrix[(cover.act(x, h), cover.act(y, h))];
                    if (moved - matrix[(x, y)]).norm() > tol {
                        return Err(Error::domain(format!(
                            "kernel is not invariant: A(x h, y h) != A(x, y) for x={}, y={}, h={}",
                            cover.points()[x],
                            cover.points()[y],
                            cover.group().element(h)
                        )));
                    }
                }
            }
        }
        Ok(InvariantKernel { matrix })
    }

    /// Reads `{"re": [[..]], "im": [[..]]}` and validates it against `cover`.
    pub fn from_json(cover: &FiniteCover, text: &str) -> Result<Self> {
        let raw: MatrixJson = serde_json::from_str(text)?;
        Self::new(cover, raw.to_operator().map_err(Error::Parse)?)
    }

    pub fn identity(cover: &FiniteCover) -> Self {
        InvariantKernel { matrix: linalg::identity(cover.total_size()) }
    }

    /// `A(x, y) = 1` when `x` and `y` lie in the same fiber.
    pub fn fiber_averaging(cover: &FiniteCover) -> Self {
        let n = cover.total_size();
        let matrix = ComplexOperator::from_fn(n, n, |x, y| c(if cover.tau(x) == cover.tau(y) { 1.0 } else { 0.0 }));
        InvariantKernel { matrix }
    }

    pub fn matrix(&self) -> &ComplexOperator {
        &self.matrix
    }

    /// `A*(x, y) = conj A(y, x)`.
    pub fn adjoint(&self) -> Self {
        InvariantKernel { matrix: self.matrix.adjoint() }
    }

    /// Kernel of the composite operator `A B`.
    pub fn compose(&self, other: &InvariantKernel) -> Self {
        InvariantKernel { matrix: &self.matrix * &other.matrix }
    }
}

/// Orbit label of every pair `(x, y)` under the diagonal action, as the
/// smallest `(x h, y h)` in the orbit; labels are renumbered `0..`.
fn pair_orbits(cover: &FiniteCover) -> (Vec<usize>, usize) {
    let n = cover.total_size();
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut label = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let canon = (0..cover.group().order())
                .map(|h| (cover.act(x, h), cover.act(y, h)))
                .min()
                .expect("group is non-empty");
            let next = ids.len();
            label[x * n + y] = *ids.entry(canon).or_insert(next);
        }
    }
    (label, ids.len())
}

/// Dimension of the space of invariant kernels: the number of orbits of
/// `G` on `X̃ × X̃`.
pub fn invariant_kernel_dimension(cover: &FiniteCover) -> usize {
    pair_orbits(cover).1
}

/// Orbit indicator kernels, a basis of the invariant kernels.
pub fn invariant_kernel_basis(cover: &FiniteCover) -> Vec<InvariantKernel> {
    let n = cover.total_size();
    let (label, count) = pair_orbits(cover);
    let mut basis = vec![linalg::zeros(n, n); count];
    for x in 0..n {
        for y in 0..n {
            basis[label[x * n + y]][(x, y)] = c(1.0);
        }
    }
    basis.into_iter().map(|matrix| InvariantKernel { matrix }).collect()
}

/// Invariant kernel with independent uniform complex entries per orbit,
/// Hermitian-symmetrized on request.
pub fn random_invariant_kernel<R: Rng + ?Sized>(cover: &FiniteCover, rng: &mut R, hermitian: bool) -> InvariantKernel {
    let n = cover.total_size();
    let (label, count) = pair_orbits(cover);
    let coeffs = linalg::random_matrix(rng, count, 1);
    let mut matrix = ComplexOperator::from_fn(n, n, |x, y| coeffs[label[x * n + y]]);
    if hermitian {
        matrix = (&matrix + matrix.adjoint()).scale(0.5);
    }
    InvariantKernel { matrix }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover_quant::symmetric_cover;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn orbit_count_matches_free_action() {
        let cover = symmetric_cover(4, 3).unwrap();
        assert_eq!(invariant_kernel_dimension(&cover), 4 * 4 * 6);
    }

    #[test]
    fn non_invariant_kernel_is_rejected() {
        let cover = symmetric_cover(3, 2).unwrap();
        let mut m = linalg::zeros(6, 6);
        m[(0, 1)] = c(1.0);
        let err = InvariantKernel::new(&cover, m).unwrap_err();
        assert!(err.to_string().contains("not invariant"), "{err}");
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let k = random_invariant_kernel(&cover, &mut rng, true);
        assert!(InvariantKernel::new(&cover, k.matrix().clone()).is_ok());
    }
}
