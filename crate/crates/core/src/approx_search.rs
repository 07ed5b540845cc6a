//! Scalar-β rounding search over DFT approximations and its quality metrics.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::beampattern::filter_bank_response;
use crate::error::{Error, Result};
use crate::transforms::{dft_matrix, round_scaled_dft, GaussianMatrix};

/// Response grid used by [`avg_percent_abs_error`] inside the search.
pub const SEARCH_GRID_POINTS: usize = 1024;

/// Quality of one candidate against the exact DFT. Lower is better.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricVector {
    pub frobenius_diff: f64,
    pub total_error_energy: f64,
    pub avg_percent_abs_error: f64,
    pub orthogonality_deviation: f64,
}

impl MetricVector {
    pub fn as_array(&self) -> [f64; 4] {
        [
            self.frobenius_diff,
            self.total_error_energy,
            self.avg_percent_abs_error,
            self.orthogonality_deviation,
        ]
    }

    /// `self` is no worse in every metric and strictly better in at least one.
    pub fn dominates(&self, other: &MetricVector) -> bool {
        let (a, b) = (self.as_array(), other.as_array());
        a.iter().zip(&b).all(|(x, y)| x <= y) && a.iter().zip(&b).any(|(x, y)| x < y)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    pub beta: f64,
    pub matrix: GaussianMatrix,
    pub metrics: MetricVector,
    pub pareto_efficient: bool,
}

fn difference(candidate: &GaussianMatrix, exact: &GaussianMatrix) -> Result<GaussianMatrix> {
    if candidate.rows() != exact.rows() || candidate.cols() != exact.cols() {
        return Err(Error::DimensionMismatch {
            context: "candidate vs exact",
            expected: exact.rows() * exact.cols(),
            found: candidate.rows() * candidate.cols(),
        });
    }
    candidate.sub(exact)
}

/// `π·‖candidate − exact‖²_F`, the summed energy of the row-filter
/// differences over one period of the frequency axis.
pub fn total_error_energy(candidate: &GaussianMatrix, exact: &GaussianMatrix) -> Result<f64> {
    Ok(PI * difference(candidate, exact)?.frobenius_norm_sqr())
}

/// `‖candidate − exact‖_F` divided by the number of entries.
pub fn frobenius_per_element(candidate: &GaussianMatrix, exact: &GaussianMatrix) -> Result<f64> {
    let d = difference(candidate, exact)?;
    Ok(d.frobenius_norm() / (d.rows() * d.cols()) as f64)
}

/// Mean over bins of `Σ_ω | |H̃_k| − |H_k| | / Σ_ω |H_k|`, in percent.
pub fn avg_percent_abs_error(
    candidate: &GaussianMatrix,
    exact: &GaussianMatrix,
    grid_points: usize,
) -> Result<f64> {
    difference(candidate, exact)?;
    let rc = filter_bank_response(candidate, grid_points)?;
    let re = filter_bank_response(exact, grid_points)?;
    let bins = re.bin_count();
    let total: f64 = (0..bins)
        .map(|b| {
            let mc = rc.magnitude(b);
            let me = re.magnitude(b);
            let err: f64 = mc.iter().zip(&me).map(|(x, y)| (x - y).abs()).sum();
            let reference: f64 = me.iter().sum();
            err / reference
        })
        .sum();
    Ok(100.0 * total / bins as f64)
}

/// `1 − ‖diag(M·Mᴴ)‖²_F / ‖M·Mᴴ‖²_F`; 1 for the zero matrix.
pub fn orthogonality_deviation(candidate: &GaussianMatrix) -> f64 {
    let gram = candidate
        .matmul(&candidate.conj_transpose())
        .expect("M·Mᴴ is always conformable");
    let total = gram.frobenius_norm_sqr();
    if total == 0.0 {
        return 1.0;
    }
    let diag: f64 = (0..gram.rows()).map(|i| gram.get(i, i).norm_sqr()).sum();
    (1.0 - diag / total).max(0.0)
}

pub fn metrics(candidate: &GaussianMatrix, exact: &GaussianMatrix) -> Result<MetricVector> {
    Ok(MetricVector {
        frobenius_diff: frobenius_per_element(candidate, exact)?,
        total_error_energy: total_error_energy(candidate, exact)?,
        avg_percent_abs_error: avg_percent_abs_error(candidate, exact, SEARCH_GRID_POINTS)?,
        orthogonality_deviation: orthogonality_deviation(candidate),
    })
}

/// β grid `beta_min, beta_min + step, …` up to and including `beta_max`.
pub fn beta_grid(beta_min: f64, beta_max: f64, step: f64) -> Result<Vec<f64>> {
    if !(beta_min > 0.0 && beta_min <= beta_max && beta_max.is_finite()) {
        return Err(Error::InvalidRange(format!(
            "need 0 < beta_min <= beta_max, got {beta_min}..{beta_max}"
        )));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidRange(format!("step must be positive, got {step}")));
    }
    let count = ((beta_max - beta_min) / step + 1e-9).floor() as usize + 1;
    // i·step keeps round-off from accumulating; rounding to 1e-12 gives clean labels
    Ok((0..count)
        .map(|i| ((beta_min + i as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

/// Rounds `β·F_32` over the grid, removes repeated matrices (keeping the
/// smallest β), scores each candidate against `F_32` and flags the
/// non-dominated ones. Results are in increasing β order.
pub fn pareto_search(beta_min: f64, beta_max: f64, step: f64) -> Result<Vec<SearchResult>> {
    let betas = beta_grid(beta_min, beta_max, step)?;
    let matrices: Vec<GaussianMatrix> = betas.par_iter().map(|&b| round_scaled_dft(b)).collect();

    let mut unique: Vec<(f64, GaussianMatrix)> = Vec::new();
    for (beta, m) in betas.into_iter().zip(matrices) {
        if !unique.iter().any(|(_, u)| *u == m) {
            unique.push((beta, m));
        }
    }

    let exact = dft_matrix(32);
    let scored: Vec<MetricVector> = unique
        .par_iter()
        .map(|(_, m)| metrics(m, &exact))
        .collect::<Result<_>>()?;

    Ok(unique
        .into_iter()
        .zip(&scored)
        .map(|((beta, matrix), &m)| SearchResult {
            beta,
            matrix,
            metrics: m,
            pareto_efficient: !scored.iter().any(|other| other.dominates(&m)),
        })
        .collect())
}

/// Candidate with the smallest total error energy; ties go to the smaller β.
pub fn min_energy_candidate(results: &[SearchResult]) -> Option<&SearchResult> {
    results.iter().reduce(|best, r| {
        if r.metrics.total_error_energy < best.metrics.total_error_energy {
            r
        } else {
            best
        }
    })
}

/// Sweep report: `beta,<four metrics>,pareto`.
pub fn results_to_csv(results: &[SearchResult]) -> String {
    let mut out = String::from(
        "beta,frobenius_diff,total_error_energy,avg_percent_abs_error,orthogonality_deviation,pareto\n",
    );
    for r in results {
        let m = &r.metrics;
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.beta,
            m.frobenius_diff,
            m.total_error_energy,
            m.avg_percent_abs_error,
            m.orthogonality_deviation,
            u8::from(r.pareto_efficient)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::adft32_matrix;

    #[test]
    fn exact_candidate_scores_zero() {
        let f = dft_matrix(32);
        let m = metrics(&f, &f).unwrap();
        assert_eq!(m.frobenius_diff, 0.0);
        assert_eq!(m.total_error_energy, 0.0);
        assert_eq!(m.avg_percent_abs_error, 0.0);
        assert!(m.orthogonality_deviation < 1e-20);
    }

    #[test]
    fn energy_of_zero_matrix() {
        let e = total_error_energy(&GaussianMatrix::zeros(32, 32), &dft_matrix(32)).unwrap();
        assert!((e - 1024.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn energy_dimension_mismatch() {
        let err = total_error_energy(&dft_matrix(16), &dft_matrix(32)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn frobenius_closed_form() {
        let f = dft_matrix(32);
        let shifted = f.map_complex(|z| z + 0.001);
        let v = frobenius_per_element(&shifted, &f).unwrap();
        assert!((v - 0.001 / 32.0).abs() < 1e-15);
    }

    #[test]
    fn sign_flip_keeps_magnitude_response() {
        let f = dft_matrix(32);
        let neg = f.map_complex(|z| -z);
        assert!(avg_percent_abs_error(&neg, &f, 1024).unwrap() < 1e-10);
    }

    #[test]
    fn percent_error_stable_under_refinement() {
        let (a, f) = (adft32_matrix(), dft_matrix(32));
        let coarse = avg_percent_abs_error(&a, &f, 1024).unwrap();
        let fine = avg_percent_abs_error(&a, &f, 4096).unwrap();
        assert!(coarse > 0.0);
        assert!(((coarse - fine) / fine).abs() < 0.01, "{coarse} vs {fine}");
    }

    #[test]
    fn orthogonality_cases() {
        assert!(orthogonality_deviation(&dft_matrix(32)) < 1e-20);
        assert_eq!(orthogonality_deviation(&GaussianMatrix::identity(32)), 0.0);
        assert_eq!(orthogonality_deviation(&GaussianMatrix::zeros(32, 32)), 1.0);
        let d = orthogonality_deviation(&adft32_matrix());
        assert!(d > 0.0 && d < 1.0);
    }

    #[test]
    fn grid_construction() {
        let g = beta_grid(0.01, 5.0, 0.01).unwrap();
        assert_eq!(g.len(), 500);
        assert_eq!(g[0], 0.01);
        assert_eq!(*g.last().unwrap(), 5.0);
        assert_eq!(beta_grid(1.0, 1.0, 0.01).unwrap(), vec![1.0]);
        assert!(beta_grid(0.0, 1.0, 0.1).is_err());
        assert!(beta_grid(2.0, 1.0, 0.1).is_err());
        assert!(beta_grid(0.1, 1.0, 0.0).is_err());
    }

    #[test]
    fn single_beta_is_adft() {
        let r = pareto_search(1.0, 1.0, 0.01).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].matrix, adft32_matrix());
        assert!(r[0].pareto_efficient);
    }

    #[test]
    fn small_betas_collapse_to_zero() {
        let r = pareto_search(0.01, 0.4, 0.01).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].beta, 0.01);
        assert_eq!(r[0].matrix, GaussianMatrix::zeros(32, 32));
        assert_eq!(r[0].metrics.orthogonality_deviation, 1.0);
    }

    #[test]
    fn dominance_is_strict() {
        let a = MetricVector {
            frobenius_diff: 1.0,
            total_error_energy: 1.0,
            avg_percent_abs_error: 1.0,
            orthogonality_deviation: 1.0,
        };
        let mut b = a;
        assert!(!a.dominates(&b));
        b.total_error_energy = 2.0;
        assert!(a.dominates(&b));
        assert!(!b.dominates(&a));
    }

    #[test]
    fn csv_report() {
        let r = pareto_search(0.9, 1.0, 0.05).unwrap();
        let csv = results_to_csv(&r);
        assert!(csv.starts_with("beta,frobenius_diff"));
        assert_eq!(csv.lines().count(), r.len() + 1);
    }
}
