//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Criteria run one after another so the wall-clock bounds are meaningful.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use sector_kit::circle_theta::{convergence_report, gauge_equivalence_check, momentum_spectrum, Stencil, ThetaSector};
use sector_kit::cover_quant::{irreps, sector_census, symmetric_cover, INTERTWINING_KERNELS};
use sector_kit::linalg::{self, c, ComplexOperator};
use sector_kit::parastat_equiv::{
    general_equivalence, verify_prop2, verify_prop3, young_realization, SectorRealization,
};
use sector_kit::permgroup::{irrep, s3_doublet, Partition, Permutation, Tableau};
use sector_kit::tensor_rep::{permutation_operator, sector_decomposition, young_projector, TensorSpace};

struct Outcome {
    passed: bool,
    detail: String,
}

fn check(passed: bool, detail: impl Into<String>) -> sector_kit::Result<Outcome> {
    Ok(Outcome { passed, detail: detail.into() })
}

fn tableau(rows: &[&[usize]]) -> sector_kit::Result<Tableau> {
    Tableau::standard(rows.iter().map(|r| r.to_vec()).collect())
}

fn young_golden() -> sector_kit::Result<Outcome> {
    let mut worst_entry = 0.0_f64;
    let mut worst_idem = 0.0_f64;
    for m in 1..=3 {
        let space = TensorSpace::new(m, 2)?;
        let id = linalg::identity(space.dimension());
        let swap = permutation_operator(&Permutation::transposition(2, 1, 2), &space);
        for (t, expect) in
            [(tableau(&[&[1, 2]])?, (&id + &swap).scale(0.5)), (tableau(&[&[1], &[2]])?, (&id - &swap).scale(0.5))]
        {
            let p = young_projector(&t, &space)?;
            worst_entry = worst_entry.max(linalg::max_abs_diff(&p, &expect));
            worst_idem = worst_idem.max(linalg::idempotence_residual(&p));
        }
        if m == 1 {
            continue;
        }
        let space = TensorSpace::new(m, 3)?;
        let id = linalg::identity(space.dimension());
        let u12 = permutation_operator(&Permutation::transposition(3, 1, 2), &space);
        let u13 = permutation_operator(&Permutation::transposition(3, 1, 3), &space);
        for (t, expect) in [
            (tableau(&[&[1, 2], &[3]])?, ((&id - &u13) * (&id + &u12)).scale(1.0 / 3.0)),
            (tableau(&[&[1, 3], &[2]])?, ((&id - &u12) * (&id + &u13)).scale(1.0 / 3.0)),
        ] {
            let p = young_projector(&t, &space)?;
            worst_entry = worst_entry.max(linalg::max_abs_diff(&p, &expect));
            worst_idem = worst_idem.max(linalg::idempotence_residual(&p));
        }
    }
    check(
        worst_entry < 1e-12 && worst_idem < 1e-10,
        format!("entrywise {worst_entry:.1e}, idempotence {worst_idem:.1e}"),
    )
}

fn schur_weyl() -> sector_kit::Result<Outcome> {
    let mut ok = true;
    let mut cases = Vec::new();
    for m in 1..=3usize {
        for n in 1..=4usize {
            if m.pow(n as u32) > 81 {
                continue;
            }
            let report = sector_decomposition(&TensorSpace::new(m, n)?)?;
            let fermions_vanish = report.sectors.iter().filter(|s| s.lambda.len() > m).all(|s| s.isotypic_rank == 0);
            ok &= report.rank_sum() == m.pow(n as u32)
                && report.commutant_dim_nullspace == report.multiplicity_square_sum()
                && fermions_vanish;
            cases.push(format!("({m},{n}):{}", report.commutant_dim_nullspace));
        }
    }
    let anchor = |m, n| -> sector_kit::Result<usize> {
        Ok(sector_decomposition(&TensorSpace::new(m, n)?)?.commutant_dim_nullspace)
    };
    ok &= anchor(2, 2)? == 10 && anchor(2, 3)? == 20;
    check(ok, format!("commutant dims {}", cases.join(" ")))
}

fn parafermion_fidelity() -> sector_kit::Result<Outcome> {
    let group = Permutation::all(3);
    let young = irrep(&Partition::new(vec![2, 1])?);
    let ops_young: Vec<ComplexOperator> = group.iter().map(|p| young.matrix(p)).collect();
    let ops_explicit: Vec<ComplexOperator> = group.iter().map(s3_doublet::matrix).collect();
    let literal_ok =
        s3_doublet::generator_matrices().iter().all(|(pi, m)| linalg::max_abs_diff(&s3_doublet::matrix(pi), m) < 1e-15);
    let cert = general_equivalence(
        &SectorRealization::restrict(linalg::identity(2), &ops_young),
        &SectorRealization::restrict(linalg::identity(2), &ops_explicit),
    )?;
    let residual = cert.residual.unwrap_or(f64::INFINITY);

    let b = s3_doublet::basis();
    let mut leakage = 0.0_f64;
    for pi in &group {
        let m = b.adjoint() * s3_doublet::natural(pi) * &b;
        leakage =
            leakage.max([m[(0, 1)], m[(0, 2)], m[(1, 0)], m[(2, 0)]].iter().map(|z| z.norm()).fold(0.0, f64::max));
        leakage = leakage.max((m[(0, 0)] - c(1.0)).norm());
    }
    check(
        literal_ok && cert.equivalent && residual < 1e-10 && leakage < 1e-12,
        format!("intertwiner residual {residual:.1e}, off-block leakage {leakage:.1e}"),
    )
}

fn propositions() -> sector_kit::Result<Outcome> {
    let mut ok = true;
    let mut worst = 0.0_f64;
    for m in [2, 3] {
        for report in [verify_prop2(m)?, verify_prop3(m)?] {
            ok &= report.passed();
            worst = worst.max(report.certificate.residual.unwrap_or(f64::INFINITY));
        }
    }
    let space = TensorSpace::new(2, 2)?;
    let bosons = young_realization(&tableau(&[&[1, 2]])?, &space)?;
    let fermions = young_realization(&tableau(&[&[1], &[2]])?, &space)?;
    let bf = general_equivalence(&bosons, &fermions)?;
    check(
        ok && worst < 1e-10 && !bf.equivalent,
        format!("max intertwiner residual {worst:.1e}; bosons vs fermions inequivalent: {}", !bf.equivalent),
    )
}

fn cover_theorem() -> sector_kit::Result<Outcome> {
    let mut ok = INTERTWINING_KERNELS >= 50;
    let mut sums = Vec::new();
    let mut worst = 0.0_f64;
    for (q, n) in [(3, 2), (4, 2), (3, 3), (4, 3)] {
        let cover = symmetric_cover(q, n)?;
        let report = sector_census(&cover, 1)?;
        let classes = cover.group().conjugacy_classes().len();
        ok &= report.passed
            && report.sectors.len() == classes
            && irreps(cover.group())?.len() == classes
            && report.sectors.iter().all(|s| s.commutant_dim == 1)
            && report.dimension_sum == report.base_points.pow(2) * report.group_order;
        for s in &report.sectors {
            worst = worst.max(s.intertwining_residual).max(s.random_section_residual);
        }
        sums.push(format!("({q},{n}):{}", report.dimension_sum));
    }
    ok &= sums[0].ends_with(":18") && sums[3].ends_with(":96") && worst < 1e-10;
    check(ok, format!("dimension sums {}; intertwining {worst:.1e}", sums.join(" ")))
}

fn theta_spectrum() -> sector_kit::Result<Outcome> {
    let mut spectral = 0.0_f64;
    let mut order = f64::INFINITY;
    let mut gauge = 0.0_f64;
    for theta in [0.0, PI / 2.0, PI, 3.0] {
        let sector = ThetaSector::new(theta)?;
        for row in momentum_spectrum(sector, 64, 16, Stencil::Spectral)? {
            spectral = spectral.max((row.eigenvalue - (theta + 2.0 * PI * row.k as f64)).abs());
        }
        order = order.min(convergence_report(sector, &[64, 128, 256], 8)?.min_order());
        gauge = gauge.max(gauge_equivalence_check(sector, 256, Stencil::Spectral)?.residual);
    }
    check(
        spectral < 1e-9 && order >= 1.9 && gauge < 1e-8,
        format!("spectral error {spectral:.1e}, FD order {order:.3}, gauge residual {gauge:.1e}"),
    )
}

fn reproduction() -> sector_kit::Result<Outcome> {
    let script = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scripts/reproduce.sh");
    let run = || {
        Command::new("bash").arg(&script).env("SECTOR_KIT", env!("CARGO_BIN_EXE_sector-kit")).env("SEED", "1").output()
    };
    let first = run()?;
    let second = run()?;
    let identical = first.stdout == second.stdout;
    check(
        first.status.success() && second.status.success() && identical && !first.stdout.is_empty(),
        format!(
            "exit {:?}/{:?}, {} bytes, identical: {identical}",
            first.status.code(),
            second.status.code(),
            first.stdout.len()
        ),
    )
}

type Criterion = (&'static str, Duration, fn() -> sector_kit::Result<Outcome>);

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 Young-projector golden tests", Duration::from_secs(1), young_golden),
        ("2 Schur-Weyl census", Duration::from_secs(30), schur_weyl),
        ("3 S3 parafermion fidelity", Duration::MAX, parafermion_fidelity),
        ("4 Isospin equivalence certificates", Duration::from_secs(60), propositions),
        ("5 Finite-cover sectors", Duration::MAX, cover_theorem),
        ("6 Theta spectrum", Duration::from_secs(10), theta_spectrum),
        ("7 CLI reproduction", Duration::from_secs(300), reproduction),
    ];
    let mut failures = 0;
    for (name, bound, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (passed, detail) = match result {
            Ok(o) => (o.passed && elapsed < bound, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let limit = if bound == Duration::MAX { String::new() } else { format!(" (limit {}s)", bound.as_secs()) };
        println!("{} [{name}] {:.2}s{limit}: {detail}", if passed { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
        failures += usize::from(!passed);
    }
    if failures > 0 {
        println!("{failures} criterion(s) failed");
        std::process::exit(1);
    }
    println!("all 7 criteria passed");
}
