use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sector_kit::linalg::{self, c, ComplexOperator};
use sector_kit::permgroup::{standard_tableaux, Partition, Permutation, Tableau};
use sector_kit::tensor_rep::{
    central_projector, commutant_basis, commutant_dimension_nullspace, permutation_operator, sector_basis_span_check,
    sector_decomposition, young_projector, young_range_projector, TensorSpace,
};
use sector_kit::Error;

/// Exchange of tensor slots `a` and `b` built by digit arithmetic, slot 0
/// most significant.
fn swap_oracle(m: usize, n: usize, a: usize, b: usize) -> ComplexOperator {
    let dim = m.pow(n as u32);
    let mut out = linalg::zeros(dim, dim);
    for i in 0..dim {
        let mut d: Vec<usize> = (0..n).map(|k| (i / m.pow((n - 1 - k) as u32)) % m).collect();
        d.swap(a, b);
        let j = d.iter().fold(0, |acc, &x| acc * m + x);
        out[(j, i)] = c(1.0);
    }
    out
}

/// Weyl's dimension formula for the `GL(m)` irrep with highest weight `λ`.
fn weyl_dimension(shape: &Partition, m: usize) -> usize {
    let mut lambda = shape.parts().to_vec();
    if lambda.len() > m {
        return 0;
    }
    lambda.resize(m, 0);
    let (mut num, mut den) = (1i64, 1i64);
    for i in 0..m {
        for j in i + 1..m {
            num *= lambda[i] as i64 - lambda[j] as i64 + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    (num / den) as usize
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn tableau(rows: &[&[usize]]) -> Tableau {
    Tableau::standard(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

#[test]
fn two_particle_projectors_are_the_symmetrizers() {
    for m in 1..=3 {
        let space = TensorSpace::new(m, 2).unwrap();
        let id = linalg::identity(space.dimension());
        let swap = swap_oracle(m, 2, 0, 1);
        let p_s = (&id + &swap).scale(0.5);
        let p_a = (&id - &swap).scale(0.5);
        let got_s = young_projector(&tableau(&[&[1, 2]]), &space).unwrap();
        let got_a = young_projector(&tableau(&[&[1], &[2]]), &space).unwrap();
        assert!(linalg::max_abs_diff(&got_s, &p_s) < 1e-12);
        assert!(linalg::max_abs_diff(&got_a, &p_a) < 1e-12);
        assert!(linalg::idempotence_residual(&got_s) < 1e-10);
        assert!(linalg::idempotence_residual(&got_a) < 1e-10);
    }
}

#[test]
fn three_particle_mixed_projectors() {
    for m in 2..=3 {
        let space = TensorSpace::new(m, 3).unwrap();
        let id = linalg::identity(space.dimension());
        let (u12, u13) = (swap_oracle(m, 3, 0, 1), swap_oracle(m, 3, 0, 2));
        let p = ((&id - &u13) * (&id + &u12)).scale(1.0 / 3.0);
        let p_prime = ((&id - &u12) * (&id + &u13)).scale(1.0 / 3.0);
        let got = young_projector(&tableau(&[&[1, 2], &[3]]), &space).unwrap();
        let got_prime = young_projector(&tableau(&[&[1, 3], &[2]]), &space).unwrap();
        assert!(linalg::max_abs_diff(&got, &p) < 1e-12);
        assert!(linalg::max_abs_diff(&got_prime, &p_prime) < 1e-12);
        for q in [&got, &got_prime] {
            assert!(linalg::idempotence_residual(q) < 1e-10);
            assert!(
                (linalg::trace(q).re - weyl_dimension(&Partition::new(vec![2, 1]).unwrap(), m) as f64).abs() < 1e-10
            );
        }
        // The mixed-symmetry projectors are not self-adjoint.
        assert!(linalg::hermiticity_residual(&got) > 0.1);
    }
}

#[test]
fn transpositions_match_digit_swaps() {
    let space = TensorSpace::new(3, 3).unwrap();
    for (a, b) in [(1, 2), (1, 3), (2, 3)] {
        let op = permutation_operator(&Permutation::transposition(3, a, b), &space);
        assert!(linalg::max_abs_diff(&op, &swap_oracle(3, 3, a - 1, b - 1)) == 0.0);
    }
}

#[test]
fn permutation_operator_moves_slot_k_to_pi_k() {
    // e_0 ⊗ e_1 ⊗ e_2 under the cycle 1→2→3→1 becomes e_2 ⊗ e_0 ⊗ e_1.
    let space = TensorSpace::new(3, 3).unwrap();
    let cycle = Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap();
    let u = permutation_operator(&cycle, &space);
    let from = space.flat(&[0, 1, 2]);
    let to = space.flat(&[2, 0, 1]);
    assert_eq!(u[(to, from)], c(1.0));
}

#[test]
fn schur_weyl_census() {
    for m in 1..=3usize {
        for n in 1..=4usize {
            if m.pow(n as u32) > 81 {
                continue;
            }
            let space = TensorSpace::new(m, n).unwrap();
            let report = sector_decomposition(&space).unwrap();
            assert_eq!(report.rank_sum(), m.pow(n as u32), "m={m} N={n}");
            for s in &report.sectors {
                assert_eq!(s.multiplicity, weyl_dimension(&s.lambda, m), "m={m} {}", s.lambda);
                assert_eq!(s.isotypic_rank, s.irrep_dim * s.multiplicity);
            }
            let orbit_count = binomial(m * m + n - 1, n);
            assert_eq!(report.commutant_dim, orbit_count);
            assert_eq!(report.commutant_dim_nullspace, orbit_count);
            assert_eq!(report.multiplicity_square_sum(), orbit_count);
            let fermions = Partition::new(vec![1; n]).unwrap();
            if n > m {
                assert_eq!(report.sector(&fermions).map_or(0, |s| s.isotypic_rank), 0);
            }
            let r = &report.residuals;
            assert!(r.idempotence.max(r.hermiticity).max(r.orthogonality).max(r.completeness) < 1e-10);
        }
    }
    let at = |m, n| commutant_dimension_nullspace(&TensorSpace::new(m, n).unwrap());
    assert_eq!((at(2, 2), at(2, 3)), (10, 20));
}

#[test]
fn young_range_projectors_are_orthogonal_projectors() {
    let space = TensorSpace::new(2, 4).unwrap();
    for shape in Partition::enumerate(4).unwrap() {
        for t in standard_tableaux(&shape) {
            let p = young_range_projector(&t, &space).unwrap();
            assert!(linalg::idempotence_residual(&p) < 1e-10);
            assert!(linalg::hermiticity_residual(&p) < 1e-10);
            assert_eq!(linalg::rank_svd(&p), weyl_dimension(&shape, 2));
        }
    }
}

#[test]
fn n3_span_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for m in 2..=3 {
        let report = sector_basis_span_check(m, &mut rng).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.total_rank, m.pow(3));
    }
}

#[test]
fn domain_and_cap_errors() {
    assert!(matches!(TensorSpace::new(4, 5), Err(Error::ResourceCap { requested: 1024, cap: 1000 })));
    assert!(matches!(TensorSpace::new(0, 2), Err(Error::Domain(_))));
    let space = TensorSpace::new(2, 3).unwrap();
    assert!(young_projector(&tableau(&[&[1, 2]]), &space).is_err());
    assert!(Tableau::standard(vec![vec![2, 1]]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn commutant_elements_commute_with_permutations(seed in any::<u64>(), images in Just(vec![0usize, 1, 2]).prop_shuffle()) {
        let space = TensorSpace::new(2, 3).unwrap();
        let pi = Permutation::from_images(images).unwrap();
        let u = permutation_operator(&pi, &space);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let basis = commutant_basis(&space);
        let mut a = linalg::zeros(8, 8);
        for b in &basis {
            a += b * linalg::random_matrix(&mut rng, 1, 1)[(0, 0)];
        }
        prop_assert!(linalg::commutator_residual(&a, &u) < 1e-12);
    }

    #[test]
    fn central_projectors_resolve_random_vectors(seed in any::<u64>()) {
        let space = TensorSpace::new(3, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = linalg::random_matrix(&mut rng, 27, 1);
        let mut sum = linalg::zeros(27, 1);
        for shape in Partition::enumerate(3).unwrap() {
            sum += central_projector(&shape, &space).unwrap() * &v;
        }
        prop_assert!(linalg::max_abs_diff(&sum, &v) < 1e-12);
    }
}
