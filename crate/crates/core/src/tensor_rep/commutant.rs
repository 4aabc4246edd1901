use std::collections::BTreeMap;

use nalgebra::DMatrix;

use super::TensorSpace;
use crate::linalg::{self, c, ComplexOperator};
use crate::permgroup::Permutation;

fn adjacent_transpositions(n: usize) -> Vec<Permutation> {
    (1..n).map(|i| Permutation::transposition(n, i, i + 1)).collect()
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so orbit order is deterministic
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Hilbert-Schmidt orthonormal basis of `M_N = {A : [A, U(π)] = 0 ∀π}`.
///
/// Averaging a matrix unit `E_ij` over `S_N` gives the indicator of the orbit
/// of `(i, j)` under the diagonal action, so the normalized orbit indicators
/// form an orthonormal basis. Ordered by the smallest pair in each orbit.
pub fn commutant_basis(space: &TensorSpace) -> Vec<ComplexOperator> {
    let dim = space.dimension();
    let images: Vec<Vec<usize>> =
        adjacent_transpositions(space.particles()).iter().map(|g| space.permuted_indices(g)).collect();
    let mut sets = DisjointSets::new(dim * dim);
    for img in &images {
        for i in 0..dim {
            for j in 0..dim {
                sets.union(i * dim + j, img[i] * dim + img[j]);
            }
        }
    }
    let mut orbits: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for p in 0..dim * dim {
        let root = sets.find(p);
        orbits.entry(root).or_default().push(p);
    }
    orbits
        .into_values()
        .map(|orbit| {
            let w = c(1.0 / (orbit.len() as f64).sqrt());
            let mut a = linalg::zeros(dim, dim);
            for p in orbit {
                a[(p / dim, p % dim)] = w;
            }
            a
        })
        .collect()
}

/// `dim M_N` from the null space of the linear system `U(s) A U(s)⁻¹ = A`
/// over the adjacent transpositions `s`.
///
/// The system only couples entries `A[i, j]` whose row and column indices
/// have fixed multisets of digits, so it splits into independent blocks, one
/// per pair of digit multisets; each block's null space is found numerically.
pub fn commutant_dimension_nullspace(space: &TensorSpace) -> usize {
    let dim = space.dimension();
    let gens: Vec<Vec<usize>> =
        adjacent_transpositions(space.particles()).iter().map(|g| space.permuted_indices(g)).collect();
    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for i in 0..dim {
        let mut key = space.digits(i);
        key.sort_unstable();
        classes.entry(key).or_default().push(i);
    }
    let classes: Vec<Vec<usize>> = classes.into_values().collect();
    let mut local = vec![0usize; dim];
    for class in &classes {
        for (k, &i) in class.iter().enumerate() {
            local[i] = k;
        }
    }

    let mut total = 0;
    for rows in &classes {
        for cols in &classes {
            let (r, s) = (rows.len(), cols.len());
            let unknowns = r * s;
            let mut gram = DMatrix::<f64>::zeros(unknowns, unknowns);
            for img in &gens {
                for &i in rows {
                    for &j in cols {
                        let a = local[i] * s + local[j];
                        let b = local[img[i]] * s + local[img[j]];
                        if a != b {
                            // row e_b - e_a contributes its outer product
                            gram[(a, a)] += 1.0;
                            gram[(b, b)] += 1.0;
                            gram[(a, b)] -= 1.0;
                            gram[(b, a)] -= 1.0;
                        }
                    }
                }
            }
            let eig = gram.symmetric_eigen();
            total += eig.eigenvalues.iter().filter(|&&v| v.abs() < 1e-9).count();
        }
    }
    total
}
