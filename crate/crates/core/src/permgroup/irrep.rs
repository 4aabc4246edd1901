use std::collections::HashMap;

use super::{standard_tableaux, Partition, Permutation, Tableau};
use crate::linalg::{self, c, ComplexOperator};

/// Young's orthogonal form of the irreducible representation `U_λ`.
///
/// Basis vectors are indexed by the standard tableaux of `λ`. The adjacent
/// transposition `s_i = (i, i+1)` acts by
/// `s_i v_T = (1/d) v_T + sqrt(1 - 1/d²) v_{s_i T}`, with `d` the axial
/// distance `content(i+1) - content(i)`; when `i, i+1` share a row (column)
/// this reduces to `+v_T` (`-v_T`). Matrices are real orthogonal.
#[derive(Clone, Debug)]
pub struct IrrepMatrices {
    shape: Partition,
    tableaux: Vec<Tableau>,
    generators: Vec<ComplexOperator>,
}

impl IrrepMatrices {
    pub fn new(shape: &Partition) -> Self {
        let tableaux = standard_tableaux(shape);
        let index: HashMap<&Tableau, usize> = tableaux.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let n = shape.total();
        let dim = tableaux.len();
        let mut generators = Vec::with_capacity(n.saturating_sub(1));
        for i in 1..n {
            let mut m = linalg::zeros(dim, dim);
            for (col, t) in tableaux.iter().enumerate() {
                let (r1, c1) = t.position(i);
                let (r2, c2) = t.position(i + 1);
                if r1 == r2 {
                    m[(col, col)] = c(1.0);
                } else if c1 == c2 {
                    m[(col, col)] = c(-1.0);
                } else {
                    let d = (t.content(i + 1) - t.content(i)) as f64;
                    let partner = index[&t.swap_entries(i, i + 1)];
                    m[(col, col)] = c(1.0 / d);
                    m[(partner, col)] = c((1.0 - 1.0 / (d * d)).sqrt());
                }
            }
            generators.push(m);
        }
        IrrepMatrices { shape: shape.clone(), tableaux, generators }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn degree(&self) -> usize {
        self.shape.total()
    }

    /// `N_λ`.
    pub fn dimension(&self) -> usize {
        self.tableaux.len()
    }

    pub fn tableaux(&self) -> &[Tableau] {
        &self.tableaux
    }

    /// Matrices of the adjacent transpositions `s_1, ..., s_{N-1}`.
    pub fn generators(&self) -> &[ComplexOperator] {
        &self.generators
    }

    /// `U_λ(π)`, multiplied out along a reduced adjacent-transposition word.
    pub fn matrix(&self, pi: &Permutation) -> ComplexOperator {
        assert_eq!(pi.degree(), self.degree(), "permutation degree does not match the shape");
        let mut m = linalg::identity(self.dimension());
        for &i in &pi.adjacent_word() {
            m *= &self.generators[i];
        }
        m
    }

    /// `tr U_λ(π)`.
    pub fn character(&self, pi: &Permutation) -> f64 {
        linalg::trace(&self.matrix(pi)).re
    }
}

pub fn irrep(shape: &Partition) -> IrrepMatrices {
    IrrepMatrices::new(shape)
}

/// `χ_λ(π)`, by tracing Young's orthogonal matrices.
pub fn character(shape: &Partition, pi: &Permutation) -> f64 {
    IrrepMatrices::new(shape).character(pi)
}

/// Character values of `λ` on every element of `elements`, computed once per
/// conjugacy class.
pub fn character_values(shape: &Partition, elements: &[Permutation]) -> Vec<f64> {
    let rep = IrrepMatrices::new(shape);
    let mut by_class: HashMap<Partition, f64> = HashMap::new();
    elements.iter().map(|p| *by_class.entry(p.cycle_type()).or_insert_with(|| rep.character(p))).collect()
}

/// The two-dimensional representation of `S_3` obtained by reducing the
/// natural permutation action on `C^3` in the orthonormal basis
/// `e0 = (1,1,1)/√3`, `e1 = (0,1,-1)/√2`, `e2 = (-2,1,1)/√6`.
pub mod s3_doublet {
    use super::*;

    /// Columns `e0, e1, e2`.
    #[rustfmt::skip]
    pub fn basis() -> ComplexOperator {
        let (s2, s3, s6) = (2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt());
        ComplexOperator::from_row_slice(
            3,
            3,
            &[
                c(1.0 / s3), c(0.0), c(-2.0 / s6),
                c(1.0 / s3), c(1.0 / s2), c(1.0 / s6),
                c(1.0 / s3), c(-1.0 / s2), c(1.0 / s6),
            ],
        )
    }

    /// Permutation matrix of `π` on `C^3`: `P(π) e_i = e_{π(i)}`.
    pub fn natural(pi: &Permutation) -> ComplexOperator {
        let mut m = linalg::zeros(3, 3);
        for i in 0..3 {
            m[(pi.apply(i), i)] = c(1.0);
        }
        m
    }

    /// Explicit generator matrices for `(12)`, `(13)`, `(23)`.
    pub fn generator_matrices() -> [(Permutation, ComplexOperator); 3] {
        let h = 0.5;
        let r = 3f64.sqrt() / 2.0;
        [
            (Permutation::transposition(3, 1, 2), ComplexOperator::from_row_slice(2, 2, &[c(h), c(-r), c(-r), c(-h)])),
            (Permutation::transposition(3, 1, 3), ComplexOperator::from_row_slice(2, 2, &[c(h), c(r), c(r), c(-h)])),
            (
                Permutation::transposition(3, 2, 3),
                ComplexOperator::from_row_slice(2, 2, &[c(-1.0), c(0.0), c(0.0), c(1.0)]),
            ),
        ]
    }

    /// `U_P(π)` for every `π ∈ S_3`, as the restriction of the natural action
    /// to `span{e1, e2}`.
    pub fn matrix(pi: &Permutation) -> ComplexOperator {
        let b = basis().columns(1, 2).into_owned();
        b.adjoint() * natural(pi) * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_representation_on_transposition() {
        let rep = irrep(&Partition::new(vec![1, 1]).unwrap());
        let m = rep.matrix(&Permutation::transposition(2, 1, 2));
        assert_eq!(m.shape(), (1, 1));
        assert!((m[(0, 0)] - c(-1.0)).norm() < 1e-15);
    }

    #[test]
    fn trivial_representation() {
        let rep = irrep(&Partition::new(vec![4]).unwrap());
        for p in Permutation::all(4) {
            assert!((rep.matrix(&p)[(0, 0)] - c(1.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn doublet_generators_match_reduction() {
        for (p, m) in s3_doublet::generator_matrices() {
            assert!(linalg::max_abs_diff(&s3_doublet::matrix(&p), &m) < 1e-15);
        }
    }

    #[test]
    fn two_one_characters() {
        let l = Partition::new(vec![2, 1]).unwrap();
        assert!((character(&l, &Permutation::identity(3)) - 2.0).abs() < 1e-14);
        assert!(character(&l, &Permutation::transposition(3, 2, 3)).abs() < 1e-14);
        let cyc = Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        assert!((character(&l, &cyc) + 1.0).abs() < 1e-14);
    }
}
