//! θ-sectors of a particle on the circle `[0, 1)`.
//!
//! The sector-θ momentum is `-i d/dx` on functions with
//! `ψ(1) = e^{iθ} ψ(0)`; its eigenfunctions are `e^{i(θ + 2πk)x}`. Two grid
//! discretizations are provided: second-order central differences with the
//! twisted wrap-around, and the spectral operator diagonal in the twisted
//! Fourier basis. Grid points are `x_j = j/n`.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, c, ComplexOperator};

pub const MIN_GRID: usize = 8;

/// An angle reduced to `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThetaSector {
    theta: f64,
}

impl ThetaSector {
    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::domain("θ must be finite"));
        }
        let mut t = theta.rem_euclid(TAU);
        if t >= TAU {
            t = 0.0;
        }
        Ok(ThetaSector { theta: t })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `e^{inθ}`, the character of `n ∈ Z`.
    pub fn character(&self, n: i64) -> Complex64 {
        Complex64::from_polar(1.0, n as f64 * self.theta)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stencil {
    CentralDifference,
    Spectral,
}

impl fmt::Display for Stencil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stencil::CentralDifference => "central-difference",
            Stencil::Spectral => "spectral",
        })
    }
}

/// An `n x n` operator on grid functions, `n >= 8`.
#[derive(Clone, Debug)]
pub struct GridOperator {
    n: usize,
    matrix: ComplexOperator,
}

impl GridOperator {
    pub fn new(matrix: ComplexOperator) -> Result<Self> {
        let n = matrix.nrows();
        check_grid(n)?;
        if !matrix.is_square() {
            return Err(Error::domain("grid operators are square"));
        }
        Ok(GridOperator { n, matrix })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &ComplexOperator {
        &self.matrix
    }
}

fn check_grid(n: usize) -> Result<()> {
    if n < MIN_GRID {
        return Err(Error::domain(format!("grid needs at least {MIN_GRID} points, got {n}")));
    }
    Ok(())
}

/// Fourier labels carried by an `n`-point grid, centred on 0.
fn mode_range(n: usize) -> std::ops::Range<i64> {
    let lo = -((n / 2) as i64);
    lo..lo + n as i64
}

/// Twisted plane wave `e^{i(θ + 2πk) x_j} / √n`.
fn plane_wave(theta: f64, k: i64, n: usize) -> Vec<Complex64> {
    let kappa = theta + TAU * k as f64;
    let norm = 1.0 / (n as f64).sqrt();
    (0..n).map(|j| Complex64::from_polar(norm, kappa * j as f64 / n as f64)).collect()
}

/// Discretized `-i d/dx` in sector θ.
pub fn momentum_operator(sector: ThetaSector, n: usize, stencil: Stencil) -> Result<GridOperator> {
    check_grid(n)?;
    let theta = sector.theta();
    let mut d = linalg::zeros(n, n);
    match stencil {
        Stencil::CentralDifference => {
            // (Dψ)_j = -i (ψ_{j+1} - ψ_{j-1}) / 2h with ψ_n = e^{iθ} ψ_0.
            let w = Complex64::new(0.0, -(n as f64) / 2.0);
            for j in 0..n {
                let (next, wrap_next) = if j + 1 == n { (0, sector.character(1)) } else { (j + 1, c(1.0)) };
                let (prev, wrap_prev) = if j == 0 { (n - 1, sector.character(-1)) } else { (j - 1, c(1.0)) };
                d[(j, next)] += w * wrap_next;
                d[(j, prev)] -= w * wrap_prev;
            }
        }
        Stencil::Spectral => {
            for k in mode_range(n) {
                let kappa = theta + TAU * k as f64;
                let v = plane_wave(theta, k, n);
                for j in 0..n {
                    for l in 0..n {
                        d[(j, l)] += v[j] * v[l].conj() * kappa;
                    }
                }
            }
        }
    }
    GridOperator::new(d)
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumRow {
    pub theta: f64,
    pub k: i64,
    pub eigenvalue: f64,
    pub reference: f64,
    pub error: f64,
}

pub const CSV_HEADER: &str = "theta,k,eigenvalue,reference,error";

impl SpectrumRow {
    pub fn csv(&self) -> String {
        format!("{:.12},{},{:.12},{:.12},{:.3e}", self.theta, self.k, self.eigenvalue, self.reference, self.error)
    }
}

/// Eigenvalues for `k = -k_max ..= k_max`, each labelled by the twisted
/// plane wave with the largest overlap on its eigenvector, against the
/// continuum values `θ + 2πk`.
pub fn momentum_spectrum(sector: ThetaSector, n: usize, k_max: usize, stencil: Stencil) -> Result<Vec<SpectrumRow>> {
    check_grid(n)?;
    if k_max > n / 4 {
        return Err(Error::domain(format!("k_max={k_max} is too large for n={n}; need k_max <= n/4")));
    }
    let d = momentum_operator(sector, n, stencil)?;
    let (vals, vecs) = linalg::hermitian_eigen(d.matrix());
    let theta = sector.theta();
    let k_max = k_max as i64;
    Ok((-k_max..=k_max)
        .map(|k| {
            let wave = plane_wave(theta, k, n);
            let best = (0..n)
                .map(|i| {
                    let overlap: Complex64 = vecs.column(i).iter().zip(&wave).map(|(a, b)| b.conj() * a).sum();
                    (i, overlap.norm_sqr())
                })
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .expect("non-empty grid")
                .0;
            let reference = theta + TAU * k as f64;
            SpectrumRow { theta, k, eigenvalue: vals[best], reference, error: (vals[best] - reference).abs() }
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct GaugeReport {
    pub theta: f64,
    pub n: usize,
    pub stencil: Stencil,
    /// Constant `c` with `V D_θ V⁻¹ ≈ D_0 + c`, read off the constant mode.
    pub c_theta: f64,
    /// The normalization `θ/2π` written in the gauge-transformed formula.
    pub c_theta_stated: f64,
    /// `max |V D_θ V⁻¹ - (D_0 + c)|` over all matrix entries.
    pub residual: f64,
    /// Same, restricted to periodic modes `|k| <= 8`.
    pub low_mode_residual: f64,
    /// Max distance between the sorted spectra of `D_θ` and `D_0 + c`.
    pub eigenvalue_distance: f64,
}

/// Compares the twisted momentum `D_θ` with the periodic one plus a constant
/// under `V ψ(x) = e^{-iθx} ψ(x)`.
pub fn gauge_equivalence_check(sector: ThetaSector, n: usize, stencil: Stencil) -> Result<GaugeReport> {
    let twisted = momentum_operator(sector, n, stencil)?;
    let periodic = momentum_operator(ThetaSector::new(0.0)?, n, stencil)?;
    let theta = sector.theta();
    let phases: Vec<Complex64> = (0..n).map(|j| Complex64::from_polar(1.0, -theta * j as f64 / n as f64)).collect();
    let conjugated = ComplexOperator::from_fn(n, n, |j, l| phases[j] * twisted.matrix()[(j, l)] * phases[l].conj());
    let diff = &conjugated - periodic.matrix();

    let constant = plane_wave(0.0, 0, n);
    let c_theta = quadratic_form(&diff, &constant, &constant).re;
    let shifted = periodic.matrix() + linalg::identity(n).scale(c_theta);
    let residual = linalg::max_abs_diff(&conjugated, &shifted);

    let low: Vec<Vec<Complex64>> = (-8..=8).map(|k| plane_wave(0.0, k, n)).collect();
    let gap = &conjugated - &shifted;
    let mut low_mode_residual = 0.0_f64;
    for u in &low {
        for v in &low {
            low_mode_residual = low_mode_residual.max(quadratic_form(&gap, u, v).norm());
        }
    }
    let eigenvalue_distance = linalg::spectrum_distance(
        &linalg::hermitian_eigenvalues(twisted.matrix()),
        &linalg::hermitian_eigenvalues(&shifted),
    );

    Ok(GaugeReport {
        theta,
        n,
        stencil,
        c_theta,
        c_theta_stated: theta / TAU,
        residual,
        low_mode_residual,
        eigenvalue_distance,
    })
}

/// `⟨u, M v⟩`.
fn quadratic_form(m: &ComplexOperator, u: &[Complex64], v: &[Complex64]) -> Complex64 {
    let n = u.len();
    let mut acc = c(0.0);
    for j in 0..n {
        let row: Complex64 = (0..n).map(|l| m[(j, l)] * v[l]).sum();
        acc += u[j].conj() * row;
    }
    acc
}

/// `U_a ψ(x) = e^{iaθ/2π} ψ(x + a mod 1)` for grid-compatible `a ∈ [0, 1)`.
pub fn translation_unitary(a: f64, sector: ThetaSector, n: usize) -> Result<GridOperator> {
    check_grid(n)?;
    if !(0.0..1.0).contains(&a) {
        return Err(Error::domain(format!("shift a={a} must lie in [0, 1)")));
    }
    let steps = a * n as f64;
    if (steps - steps.round()).abs() > 1e-9 {
        return Err(Error::domain(format!("shift a={a} is not a multiple of the grid spacing 1/{n}")));
    }
    let s = steps.round() as usize % n;
    let phase = Complex64::from_polar(1.0, a * sector.theta() / TAU);
    let mut u = linalg::zeros(n, n);
    for j in 0..n {
        u[(j, (j + s) % n)] = phase;
    }
    GridOperator::new(u)
}

#[derive(Clone, Debug, Serialize)]
pub struct TranslationReport {
    pub theta: f64,
    pub n: usize,
    pub unitarity_residual: f64,
    /// `φ` with `(U_{1/n})^n = e^{iφ}`.
    pub cycle_phase: f64,
    /// Distance of `(U_{1/n})^n` from `e^{iφ}·1`.
    pub cycle_residual: f64,
}

/// Composes `n` steps of `U_{1/n}` and reads off the resulting phase.
pub fn translation_cycle(sector: ThetaSector, n: usize) -> Result<TranslationReport> {
    let step = translation_unitary(1.0 / n as f64, sector, n)?;
    let mut acc = linalg::identity(n);
    for _ in 0..n {
        acc = linalg::product(step.matrix(), &acc);
    }
    let phase = acc[(0, 0)];
    let cycle_residual = linalg::max_abs_diff(&acc, &linalg::identity(n).map(|z| z * phase));
    Ok(TranslationReport {
        theta: sector.theta(),
        n,
        unitarity_residual: linalg::unitarity_residual(step.matrix()),
        cycle_phase: phase.arg(),
        cycle_residual,
    })
}

/// Multiplication by the sampled function `f(x_j)`; the same in every sector.
pub fn position_operator(samples: &[Complex64]) -> Result<GridOperator> {
    GridOperator::new(ComplexOperator::from_diagonal(&nalgebra::DVector::from_column_slice(samples)))
}

/// Samples `f` at the grid points.
pub fn sample(n: usize, f: impl Fn(f64) -> Complex64) -> Vec<Complex64> {
    (0..n).map(|j| f(j as f64 / n as f64)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceReport {
    pub theta: f64,
    pub k_max: usize,
    pub grids: Vec<usize>,
    /// Max `|λ_k - (θ + 2πk)|` over `|k| <= k_max`, central differences.
    pub fd_errors: Vec<f64>,
    /// `log2(e_n / e_{2n})` between consecutive grids.
    pub fd_orders: Vec<f64>,
    pub spectral_errors: Vec<f64>,
}

impl ConvergenceReport {
    pub fn min_order(&self) -> f64 {
        self.fd_orders.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Error of both stencils over a sequence of doubling grids.
pub fn convergence_report(sector: ThetaSector, grids: &[usize], k_max: usize) -> Result<ConvergenceReport> {
    let max_err = |n: usize, stencil: Stencil| -> Result<f64> {
        Ok(momentum_spectrum(sector, n, k_max, stencil)?.iter().map(|r| r.error).fold(0.0, f64::max))
    };
    let fd_errors = grids.iter().map(|&n| max_err(n, Stencil::CentralDifference)).collect::<Result<Vec<_>>>()?;
    let spectral_errors = grids.iter().map(|&n| max_err(n, Stencil::Spectral)).collect::<Result<Vec<_>>>()?;
    let fd_orders = fd_errors
        .windows(2)
        .zip(grids.windows(2))
        .map(|(e, g)| (e[0] / e[1]).ln() / (g[1] as f64 / g[0] as f64).ln())
        .collect();
    Ok(ConvergenceReport { theta: sector.theta(), k_max, grids: grids.to_vec(), fd_errors, fd_orders, spectral_errors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn reduction_mod_two_pi() {
        assert_eq!(ThetaSector::new(0.0).unwrap().theta(), 0.0);
        assert!((ThetaSector::new(-PI / 2.0).unwrap().theta() - 1.5 * PI).abs() < 1e-15);
        assert!(ThetaSector::new(f64::NAN).is_err());
    }

    #[test]
    fn operators_are_hermitian() {
        let s = ThetaSector::new(1.0).unwrap();
        for stencil in [Stencil::CentralDifference, Stencil::Spectral] {
            let d = momentum_operator(s, 16, stencil).unwrap();
            assert!(linalg::hermiticity_residual(d.matrix()) < 1e-12);
        }
    }

    #[test]
    fn central_difference_has_sine_spectrum() {
        let s = ThetaSector::new(0.7).unwrap();
        let n = 32;
        for row in momentum_spectrum(s, n, 8, Stencil::CentralDifference).unwrap() {
            let expect = n as f64 * (row.reference / n as f64).sin();
            assert!((row.eigenvalue - expect).abs() < 1e-10);
        }
    }

    #[test]
    fn small_grids_and_shifts_are_rejected() {
        let s = ThetaSector::new(0.0).unwrap();
        assert!(momentum_operator(s, 4, Stencil::Spectral).is_err());
        assert!(momentum_spectrum(s, 16, 5, Stencil::Spectral).is_err());
        assert!(translation_unitary(0.3, s, 16).is_err());
        assert!(translation_unitary(1.0, s, 16).is_err());
    }
}
