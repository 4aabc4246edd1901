use rand::Rng;
use serde::Serialize;

use super::{permutation_operator, young_projector, TensorSpace};
use crate::error::Result;
use crate::linalg::{self, c, ComplexOperator};
use crate::permgroup::{Permutation, Tableau};

const SPAN_TOL: f64 = 1e-10;

/// Signed label words `(coefficient, [a, b, c])` for `ψ_a ⊗ ψ_b ⊗ ψ_c`.
type Word = (f64, [usize; 3]);

const SYMMETRIC: [Word; 6] =
    [(1.0, [1, 2, 3]), (1.0, [2, 1, 3]), (1.0, [3, 2, 1]), (1.0, [3, 1, 2]), (1.0, [1, 3, 2]), (1.0, [2, 3, 1])];
const ANTISYMMETRIC: [Word; 6] =
    [(1.0, [1, 2, 3]), (-1.0, [2, 1, 3]), (-1.0, [3, 2, 1]), (1.0, [3, 1, 2]), (-1.0, [1, 3, 2]), (1.0, [2, 3, 1])];
const PARA: [Word; 4] = [(1.0, [1, 2, 3]), (1.0, [2, 1, 3]), (-1.0, [3, 2, 1]), (-1.0, [3, 1, 2])];
const PARA_PRIME: [Word; 4] = [(1.0, [1, 2, 3]), (1.0, [3, 2, 1]), (-1.0, [2, 1, 3]), (-1.0, [2, 3, 1])];

const NAMES: [&str; 4] = ["S", "A", "P", "P'"];

/// Outcome of [`sector_basis_span_check`].
#[derive(Clone, Debug, Serialize)]
pub struct SpanReport {
    pub m: usize,
    /// Dimensions of the spans `H_S, H_A, H_P, H_P'`.
    pub span_dims: [usize; 4],
    /// `|Π_span - Π_range(P_X)|` per sector (infinite when dimensions differ).
    pub projector_residuals: [f64; 4],
    /// `(X, Y, max |<x, y>|)` over orthonormal bases, for every pair.
    pub overlaps: Vec<(String, String, f64)>,
    /// Rank of all four spans together; equals `m^3` for a direct sum.
    pub total_rank: usize,
    /// Permutations with `U(π) H_P = H_P'` and `U(π) H_P' = H_P`.
    pub exchanging_permutations: Vec<String>,
    pub spans_match_projectors: bool,
    /// Every pair orthogonal except `(P, P')`, which need only be independent.
    pub orthogonality_ok: bool,
    pub direct_sum_ok: bool,
    pub exchange_ok: bool,
}

impl SpanReport {
    pub fn passed(&self) -> bool {
        self.spans_match_projectors && self.orthogonality_ok && self.direct_sum_ok && self.exchange_ok
    }
}

fn product(psi: &[ComplexOperator; 3], labels: [usize; 3]) -> ComplexOperator {
    let [a, b, c] = labels;
    linalg::kron(&linalg::kron(&psi[a - 1], &psi[b - 1]), &psi[c - 1])
}

fn sampled_span<R: Rng + ?Sized>(rng: &mut R, m: usize, words: &[Word], samples: usize) -> ComplexOperator {
    let dim = m * m * m;
    let mut stack = linalg::zeros(dim, samples);
    for s in 0..samples {
        let psi = [0, 1, 2].map(|_| linalg::random_matrix(rng, m, 1));
        let mut v = linalg::zeros(dim, 1);
        for &(w, labels) in words {
            v += product(&psi, labels) * c(w);
        }
        stack.set_column(s, &v.column(0));
    }
    linalg::orthonormal_range(&stack)
}

fn maps_into(u: &ComplexOperator, from: &ComplexOperator, to: &ComplexOperator) -> bool {
    let image = u * from;
    let leak = &image - to * (to.adjoint() * &image);
    linalg::max_abs(&leak) < SPAN_TOL
}

/// Builds the closed spans of the four `N = 3` sectors from random product
/// vectors `ψ_{ijk} = ψ_i ⊗ ψ_j ⊗ ψ_k` and compares them with the images of
/// `P_S, P_A, P = ⅓(1-U(13))(1+U(12))` and `P' = ⅓(1-U(12))(1+U(13))`.
pub fn sector_basis_span_check<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Result<SpanReport> {
    let space = TensorSpace::new(m, 3)?;
    let dim = space.dimension();
    let samples = dim + 4;
    let spans: Vec<ComplexOperator> = [&SYMMETRIC[..], &ANTISYMMETRIC[..], &PARA[..], &PARA_PRIME[..]]
        .iter()
        .map(|words| sampled_span(rng, m, words, samples))
        .collect();

    let projectors = [
        young_projector(&Tableau::standard(vec![vec![1, 2, 3]])?, &space)?,
        young_projector(&Tableau::standard(vec![vec![1], vec![2], vec![3]])?, &space)?,
        young_projector(&Tableau::standard(vec![vec![1, 2], vec![3]])?, &space)?,
        young_projector(&Tableau::standard(vec![vec![1, 3], vec![2]])?, &space)?,
    ];
    let mut projector_residuals = [0.0; 4];
    for k in 0..4 {
        let image = linalg::orthonormal_range(&projectors[k]);
        projector_residuals[k] = if image.ncols() == spans[k].ncols() {
            linalg::max_abs_diff(&(&image * image.adjoint()), &(&spans[k] * spans[k].adjoint()))
        } else {
            f64::INFINITY
        };
    }

    let mut overlaps = Vec::new();
    let mut orthogonality_ok = true;
    for a in 0..4 {
        for b in a + 1..4 {
            let o = if spans[a].ncols() == 0 || spans[b].ncols() == 0 {
                0.0
            } else {
                linalg::max_abs(&(spans[a].adjoint() * &spans[b]))
            };
            let para_pair = a == 2 && b == 3;
            if !para_pair && o >= SPAN_TOL {
                orthogonality_ok = false;
            }
            overlaps.push((NAMES[a].to_string(), NAMES[b].to_string(), o));
        }
    }

    let mut all = linalg::zeros(dim, 0);
    for s in &spans {
        let cols = all.ncols();
        all = all.insert_columns(cols, s.ncols(), c(0.0));
        all.columns_mut(cols, s.ncols()).copy_from(s);
    }
    let total_rank = linalg::rank_svd(&all);
    let dims_add = spans.iter().map(|s| s.ncols()).sum::<usize>() == dim;

    let mut exchanging = Vec::new();
    for pi in Permutation::all(3) {
        let u = permutation_operator(&pi, &space);
        if spans[2].ncols() == spans[3].ncols()
            && maps_into(&u, &spans[2], &spans[3])
            && maps_into(&u, &spans[3], &spans[2])
        {
            exchanging.push(pi.to_string());
        }
    }
    // With H_P = H_P' = {0} the exchange is vacuous.
    let exchange_ok = !exchanging.is_empty() && (spans[2].ncols() == 0 || !exchanging.contains(&"e".to_string()));

    Ok(SpanReport {
        m,
        span_dims: [0, 1, 2, 3].map(|k| spans[k].ncols()),
        projector_residuals,
        overlaps,
        total_rank,
        exchanging_permutations: exchanging,
        spans_match_projectors: projector_residuals.iter().all(|&r| r < SPAN_TOL),
        orthogonality_ok,
        direct_sum_ok: total_rank == dim && dims_add,
        exchange_ok,
    })
}
