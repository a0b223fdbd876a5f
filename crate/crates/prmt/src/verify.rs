//! Built-in verification suites: closed-form spectra against the Jacobi
//! eigensolver, and normalization/mean checks of every analytic curve.
//! Shared by the `verify` CLI subcommand and the acceptance tests.

use crate::analytic::{AnalyticCurve, CurveName};
use crate::ensembles::{sample, EnsembleKind, SamplerConfig};
use crate::error::Result;
use crate::spectra::{
    eig_symmetric, parity_block_split, rc_spectrum_closed, symcirc_spectrum_closed,
    ParityOperator, ReducedSpectrum,
};
use rayon::prelude::*;

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckReport {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

const ORACLE_KINDS: [EnsembleKind; 4] = [
    EnsembleKind::RcZeros,
    EnsembleKind::RcSoft { sigma_c: 0.3 },
    EnsembleKind::SymCirculant,
    EnsembleKind::Pst,
];
const ORACLE_DIMS: [usize; 3] = [3, 11, 101];

/// Full spectrum through the symmetry-reduced route (closed forms for the
/// circulant families, parity block split plus block Jacobi for the Toeplitz
/// ensemble) as a sorted vector.
fn reduced_route_spectrum(kind: EnsembleKind, pm: &crate::ensembles::PatternedMatrix) -> Result<Vec<f64>> {
    let mut full = match kind {
        EnsembleKind::RcZeros | EnsembleKind::RcSoft { .. } => {
            match rc_spectrum_closed(&pm.first_row)? {
                ReducedSpectrum::Rc { trivial, positives } => {
                    let mut v = vec![trivial];
                    for p in positives {
                        v.push(p);
                        v.push(-p);
                    }
                    v
                }
                _ => unreachable!(),
            }
        }
        EnsembleKind::SymCirculant => match symcirc_spectrum_closed(&pm.first_row)? {
            ReducedSpectrum::Parity { even, odd } => {
                let mut v = even;
                v.extend(odd);
                v
            }
            _ => unreachable!(),
        },
        EnsembleKind::Pst => {
            let p = ParityOperator::index_reversal(pm.dense.n());
            let (eb, ob) = parity_block_split(&pm.dense, &p)?;
            let mut v = eig_symmetric(&eb, 1e-12)?.values().to_vec();
            v.extend(eig_symmetric(&ob, 1e-12)?.values());
            v
        }
    };
    full.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(full)
}

/// Compares the reduced-route spectrum of sampled matrices against the plain
/// Jacobi diagonalization of the dense realization, for every ensemble kind
/// at `n` in {3, 11, 101}. Reports the worst per-eigenvalue deviation per
/// case; a case passes when it stays at or below `tol`.
pub fn oracle_equivalence(instances: usize, seed: u64, tol: f64) -> Vec<CheckReport> {
    let mut reports = Vec::new();
    for kind in ORACLE_KINDS {
        for n in ORACLE_DIMS {
            let cfg = SamplerConfig::new(kind, n, 1.0, seed)
                .expect("oracle suite uses valid configs");
            let worst: Result<f64> = (0..instances)
                .into_par_iter()
                .map(|i| -> Result<f64> {
                    let pm = sample(&cfg, i as u64);
                    let closed = reduced_route_spectrum(kind, &pm)?;
                    let jacobi = eig_symmetric(&pm.dense, 1e-12)?;
                    let mut d = 0.0f64;
                    for (a, b) in closed.iter().zip(jacobi.values()) {
                        d = d.max((a - b).abs());
                    }
                    Ok(d)
                })
                .try_reduce(|| 0.0, |a, b| Ok(a.max(b)));
            let name = format!("oracle-equivalence {} n={}", kind.label(), n);
            match worst {
                Ok(w) => reports.push(CheckReport::new(
                    name,
                    w <= tol,
                    format!("max |closed - jacobi| = {w:.3e} over {instances} instances (tol {tol:.0e})"),
                )),
                Err(e) => reports.push(CheckReport::new(name, false, e.to_string())),
            }
        }
    }
    reports
}

/// Checks that every analytic curve integrates to one for `A` in
/// {0.5, 1, 2} and that the scaled forms have unit mean, all within 1e-6.
pub fn normalization_suite() -> Vec<CheckReport> {
    let mut reports = Vec::new();
    for name in CurveName::ALL {
        for a in [0.5, 1.0, 2.0] {
            let label = format!("normalization {} A={}", name.label(), a);
            let curve = match AnalyticCurve::new(name, a) {
                Ok(c) => c,
                Err(e) => {
                    reports.push(CheckReport::new(label, false, e.to_string()));
                    continue;
                }
            };
            match curve.normalization() {
                Ok(v) => reports.push(CheckReport::new(
                    label,
                    (v - 1.0).abs() <= 1e-6,
                    format!("integral = {v:.9}"),
                )),
                Err(e) => reports.push(CheckReport::new(label, false, e.to_string())),
            }
        }
    }
    for name in [
        CurveName::SemiGaussianScaled,
        CurveName::PstSpacingScaled,
        CurveName::Poisson,
        CurveName::WignerSurmise,
    ] {
        let label = format!("unit-mean {}", name.label());
        let mean = AnalyticCurve::new(name, 1.0).and_then(|c| c.mean());
        match mean {
            Ok(m) => reports.push(CheckReport::new(
                label,
                (m - 1.0).abs() <= 1e-6,
                format!("mean = {m:.9}"),
            )),
            Err(e) => reports.push(CheckReport::new(label, false, e.to_string())),
        }
    }
    reports
}
