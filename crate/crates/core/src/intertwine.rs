//! Intertwiner spaces between two matrix families.
//!
//! For families `a1[k]` (d1 x d1) and `a2[k]` (d2 x d2) the intertwiners are
//! the solutions `V` (d2 x d1) of the stacked Sylvester system
//! `V a1[k] - a2[k] V = 0`. With column-major `vec`, each equation is
//! `(a1[k]^T (x) 1 - 1 (x) a2[k]) vec(V) = 0`. The stack is folded into a
//! square triangular factor by repeated QR, and the null space is read off
//! its SVD. Going through the Gram matrix instead would square the
//! conditioning and lose half the digits of the solution.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, kron, ComplexOperator};

/// Relative singular-value threshold on the stacked system.
const NULL_TOL: f64 = 1e-9;

fn check_family(ops: &[ComplexOperator], name: &str) -> Result<usize> {
    let first = ops.first().ok_or_else(|| Error::domain(format!("empty algebra basis for {name}")))?;
    let d = first.nrows();
    if ops.iter().any(|a| a.nrows() != d || a.ncols() != d) {
        return Err(Error::domain(format!("{name}: operators must be square of equal size")));
    }
    Ok(d)
}

/// Hilbert-Schmidt orthonormal basis of `{V : V a1[k] = a2[k] V for all k}`.
pub fn intertwiner_space(a1: &[ComplexOperator], a2: &[ComplexOperator]) -> Result<Vec<ComplexOperator>> {
    let d1 = check_family(a1, "source")?;
    let d2 = check_family(a2, "target")?;
    if a1.len() != a2.len() {
        return Err(Error::domain("source and target families differ in length"));
    }
    if d1 == 0 || d2 == 0 {
        return Ok(Vec::new());
    }
    let n = d1 * d2;
    let id1 = linalg::identity(d1);
    let id2 = linalg::identity(d2);
    let mut r = linalg::zeros(0, n);
    for (x, y) in a1.iter().zip(a2) {
        let block = kron(&x.transpose(), &id2) - kron(&id1, y);
        let mut stacked = linalg::zeros(r.nrows() + n, n);
        stacked.rows_mut(0, r.nrows()).copy_from(&r);
        stacked.rows_mut(r.nrows(), n).copy_from(&block);
        r = stacked.qr().r();
    }

    let svd = r.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let s = &svd.singular_values;
    let scale = s.iter().fold(0.0_f64, |a, &b| a.max(b)).max(1.0);
    // Rows of `v_t` beyond the rank of a short `r` are null directions too.
    let null_rows = (0..n).filter(|&i| i >= s.len() || s[i] <= NULL_TOL * scale);
    Ok(null_rows
        .map(|i| {
            let col: Vec<_> = v_t.row(i).iter().map(|z| z.conj()).collect();
            ComplexOperator::from_column_slice(d2, d1, &col)
        })
        .collect())
}

/// Dimension of the commutant of a family of square matrices.
pub fn commutant_dimension(ops: &[ComplexOperator]) -> Result<usize> {
    Ok(intertwiner_space(ops, ops)?.len())
}

/// `max_k |V a1[k] - a2[k] V|`.
pub fn intertwining_residual(v: &ComplexOperator, a1: &[ComplexOperator], a2: &[ComplexOperator]) -> f64 {
    a1.iter().zip(a2).map(|(x, y)| linalg::max_abs(&(v * x - y * v))).fold(0.0, f64::max)
}

/// Outcome of a search for a unitary intertwiner.
#[derive(Debug, Clone)]
pub struct UnitarySearch {
    pub solution_space_dim: usize,
    pub unitary: Option<ComplexOperator>,
    pub residual: Option<f64>,
}

/// Looks for a unitary `V` with `V a1[k] V^* = a2[k]`.
///
/// A generic element of the intertwiner space is invertible whenever any
/// element is; its unitary polar factor intertwines as well provided the
/// families span *-closed algebras.
pub fn unitary_intertwiner(a1: &[ComplexOperator], a2: &[ComplexOperator]) -> Result<UnitarySearch> {
    let space = intertwiner_space(a1, a2)?;
    let dim = space.len();
    let square = a1[0].nrows() == a2[0].nrows();
    if dim == 0 || !square {
        return Ok(UnitarySearch { solution_space_dim: dim, unitary: None, residual: None });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ec7_0001);
    for _ in 0..4 {
        let coeffs = linalg::random_matrix(&mut rng, dim, 1);
        let mut v = linalg::zeros(space[0].nrows(), space[0].ncols());
        for (b, w) in space.iter().zip(coeffs.iter()) {
            v += b * *w;
        }
        if let Some((u, _)) = linalg::polar_unitary(&v) {
            let residual = intertwining_residual(&u, a1, a2);
            return Ok(UnitarySearch { solution_space_dim: dim, unitary: Some(u), residual: Some(residual) });
        }
    }
    Ok(UnitarySearch { solution_space_dim: dim, unitary: None, residual: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{random_hermitian, random_matrix, unitarity_residual};

    #[test]
    fn conjugate_families_have_unitary_intertwiner() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a: Vec<_> = (0..3).map(|_| random_matrix(&mut rng, 3, 3)).collect();
        let a: Vec<_> = a.iter().flat_map(|x| [x.clone(), x.adjoint()]).collect();
        let (u, _) = linalg::polar_unitary(&random_matrix(&mut rng, 3, 3)).unwrap();
        let b: Vec<_> = a.iter().map(|x| &u * x * u.adjoint()).collect();
        let found = unitary_intertwiner(&a, &b).unwrap();
        assert_eq!(found.solution_space_dim, 1);
        let v = found.unitary.unwrap();
        assert!(unitarity_residual(&v) < 1e-10);
        assert!(found.residual.unwrap() < 1e-10);
    }

    #[test]
    fn scalars_commutant_is_everything() {
        let id = linalg::identity(3);
        assert_eq!(commutant_dimension(&[id]).unwrap(), 9);
    }

    #[test]
    fn generic_hermitian_commutant_is_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = random_hermitian(&mut rng, 4);
        assert_eq!(commutant_dimension(&[h]).unwrap(), 4);
    }

    #[test]
    fn empty_family_is_a_domain_error() {
        assert!(matches!(intertwiner_space(&[], &[]), Err(Error::Domain(_))));
    }
}
