//! Construction and sampling of the constrained matrix ensembles.
//!
//! All ensembles are real symmetric with `(n+1)/2` independent parameters and
//! carry the matrix weight `exp(-A * tr(H^2))`. The standard deviation of each
//! independent parameter therefore follows from how many dense entries it
//! occupies: a parameter appearing `m` times has sigma `1/sqrt(2*A*m)`. The
//! multiplicities are counted programmatically from the dense pattern rather
//! than hard-coded per ensemble.

use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Which patterned ensemble a matrix belongs to.
///
/// `RcSoft` replaces the reverse-circulant hard zeros by independent
/// `N(0, sigma_c^2)` draws; `sigma_c = 0` reproduces `RcZeros` exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnsembleKind {
    RcZeros,
    RcSoft { sigma_c: f64 },
    SymCirculant,
    Pst,
}

impl EnsembleKind {
    pub fn validate(&self) -> Result<()> {
        if let EnsembleKind::RcSoft { sigma_c } = self {
            if !sigma_c.is_finite() || *sigma_c < 0.0 {
                return Err(Error::Domain(format!(
                    "sigma_c must be finite and >= 0, got {sigma_c}"
                )));
            }
        }
        Ok(())
    }

    pub fn is_reverse_circulant(&self) -> bool {
        matches!(self, EnsembleKind::RcZeros | EnsembleKind::RcSoft { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            EnsembleKind::RcZeros => "rc-zeros",
            EnsembleKind::RcSoft { .. } => "rc-soft",
            EnsembleKind::SymCirculant => "sym-circulant",
            EnsembleKind::Pst => "pst",
        }
    }

    /// Rebuilds a kind from its label plus the softening width where one
    /// applies.
    pub fn from_label(label: &str, sigma_c: Option<f64>) -> Result<Self> {
        let kind = match label {
            "rc-zeros" => EnsembleKind::RcZeros,
            "rc-soft" => EnsembleKind::RcSoft {
                sigma_c: sigma_c.ok_or_else(|| {
                    Error::Config("kind rc-soft requires sigma_c".into())
                })?,
            },
            "sym-circulant" => EnsembleKind::SymCirculant,
            "pst" => EnsembleKind::Pst,
            other => {
                return Err(Error::Config(format!(
                    "unknown ensemble kind {other:?} (expected rc-zeros, rc-soft, sym-circulant or pst)"
                )))
            }
        };
        if !matches!(kind, EnsembleKind::RcSoft { .. }) && sigma_c.is_some() {
            return Err(Error::Config(format!(
                "sigma_c only applies to rc-soft, not {label}"
            )));
        }
        kind.validate()?;
        Ok(kind)
    }
}

impl std::fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

fn validate_dim(n: usize) -> Result<()> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Domain(format!("n must be odd and >= 3, got {n}")));
    }
    Ok(())
}

/// Full first row of a patterned matrix (length `n`, `n` odd).
#[derive(Debug, Clone, PartialEq)]
pub struct FirstRow {
    entries: Vec<f64>,
}

impl FirstRow {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        validate_dim(entries.len())?;
        Ok(FirstRow { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}

/// Checks the kind-specific constraints on a first row (exact equality; the
/// constrained entries are copies, not measurements).
pub fn validate_pattern(kind: EnsembleKind, row: &FirstRow) -> Result<()> {
    let n = row.n();
    let r = row.entries();
    match kind {
        EnsembleKind::RcZeros => {
            for (i, &v) in r.iter().enumerate().skip((n + 1) / 2) {
                if v != 0.0 {
                    return Err(Error::Structure(format!(
                        "rc-zeros first row entry {i} must be exactly 0, got {v}"
                    )));
                }
            }
        }
        EnsembleKind::RcSoft { .. } => {}
        EnsembleKind::SymCirculant => {
            for i in 1..=(n - 1) / 2 {
                if r[n - i] != r[i] {
                    return Err(Error::Structure(format!(
                        "sym-circulant first row needs entry[{}] == entry[{}]",
                        n - i,
                        i
                    )));
                }
            }
        }
        EnsembleKind::Pst => {
            for j in 0..n / 2 {
                if r[j] != r[n - 1 - j] {
                    return Err(Error::Structure(format!(
                        "pst first row needs entry[{}] == entry[{}]",
                        j,
                        n - 1 - j
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Number of independently drawn parameters for a kind at dimension `n`.
///
/// `RcSoft` counts the `(n-1)/2` softened tail entries as parameters on top
/// of the `(n+1)/2` measure-weighted ones.
pub fn free_param_count(kind: EnsembleKind, n: usize) -> usize {
    match kind {
        EnsembleKind::RcSoft { .. } => n,
        _ => (n + 1) / 2,
    }
}

/// Expands free parameters into the full constrained first row.
pub fn expand_params(kind: EnsembleKind, n: usize, params: &[f64]) -> Result<FirstRow> {
    validate_dim(n)?;
    if params.len() != free_param_count(kind, n) {
        return Err(Error::Domain(format!(
            "expected {} parameters for {} at n={}, got {}",
            free_param_count(kind, n),
            kind.label(),
            n,
            params.len()
        )));
    }
    let mut r = vec![0.0; n];
    match kind {
        EnsembleKind::RcZeros => {
            r[..(n + 1) / 2].copy_from_slice(params);
        }
        EnsembleKind::RcSoft { .. } => {
            r.copy_from_slice(params);
        }
        EnsembleKind::SymCirculant => {
            r[0] = params[0];
            for i in 1..=(n - 1) / 2 {
                r[i] = params[i];
                r[n - i] = params[i];
            }
        }
        EnsembleKind::Pst => {
            for (j, &p) in params.iter().enumerate() {
                r[j] = p;
                r[n - 1 - j] = p;
            }
        }
    }
    FirstRow::new(r)
}

/// Materializes the dense `n x n` realization of a first row.
///
/// Reverse circulant: `H[i][j] = r[(i+j) mod n]` (row `i` is the first row
/// left-rotated `i` places). Circulant: `H[i][j] = r[(j-i) mod n]`.
/// Palindromic symmetric Toeplitz: `H[i][j] = r[|i-j|]`.
pub fn build_dense(kind: EnsembleKind, row: &FirstRow) -> Result<SymMatrix> {
    validate_pattern(kind, row)?;
    let n = row.n();
    let r = row.entries();
    let dense = match kind {
        EnsembleKind::RcZeros | EnsembleKind::RcSoft { .. } => {
            SymMatrix::from_fn(n, |i, j| r[(i + j) % n])
        }
        // the palindromic constraint makes r[(j-i) mod n] == r[(i-j) mod n],
        // so filling from the upper triangle stays faithful to the pattern
        EnsembleKind::SymCirculant => SymMatrix::from_fn(n, |i, j| r[(j - i) % n]),
        EnsembleKind::Pst => SymMatrix::from_fn(n, |i, j| r[j - i]),
    };
    Ok(dense)
}

/// Per-parameter standard deviations implied by `exp(-A * tr(H^2))`.
///
/// Each Wishart-weighted parameter gets `1/sqrt(2*A*m)` where `m` is its
/// multiplicity in the dense matrix, counted by expanding an indicator row
/// through [`build_dense`]. For `RcSoft` the `(n-1)/2` softened tail entries
/// are appended with their configured `sigma_c`, which is not set by the
/// matrix weight.
pub fn entry_sigma(kind: EnsembleKind, n: usize, a: f64) -> Result<Vec<f64>> {
    kind.validate()?;
    validate_dim(n)?;
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::Domain(format!("A must be finite and > 0, got {a}")));
    }
    // indicator expansion uses the hard-constrained pattern so that tail
    // entries never enter the multiplicity count
    let hard_kind = match kind {
        EnsembleKind::RcSoft { .. } => EnsembleKind::RcZeros,
        k => k,
    };
    let head = (n + 1) / 2;
    let mut sigmas = Vec::with_capacity(free_param_count(kind, n));
    let mut indicator = vec![0.0; head];
    for p in 0..head {
        indicator[p] = 1.0;
        let row = expand_params(hard_kind, n, &indicator)?;
        let dense = build_dense(hard_kind, &row)?;
        let multiplicity: f64 = dense.as_slice().iter().map(|x| x * x).sum();
        sigmas.push(1.0 / (2.0 * a * multiplicity).sqrt());
        indicator[p] = 0.0;
    }
    if let EnsembleKind::RcSoft { sigma_c } = kind {
        sigmas.extend(std::iter::repeat_n(sigma_c, n - head));
    }
    Ok(sigmas)
}

/// Everything needed to draw matrices reproducibly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerConfig {
    pub kind: EnsembleKind,
    pub n: usize,
    pub a: f64,
    pub seed: u64,
}

impl SamplerConfig {
    pub fn new(kind: EnsembleKind, n: usize, a: f64, seed: u64) -> Result<Self> {
        kind.validate()?;
        validate_dim(n)?;
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::Domain(format!("A must be finite and > 0, got {a}")));
        }
        Ok(SamplerConfig { kind, n, a, seed })
    }
}

/// A sampled realization: kind tag, generating first row, dense matrix.
#[derive(Debug, Clone)]
pub struct PatternedMatrix {
    pub kind: EnsembleKind,
    pub first_row: FirstRow,
    pub dense: SymMatrix,
}

/// ChaCha substream for one `(seed, stream_index)` pair. Streams are
/// independent, so samples can be drawn concurrently in any order while
/// staying bit-reproducible.
fn substream_rng(seed: u64, stream_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_index);
    rng
}

/// Standard normal draw via the Box-Muller transform: with `u1` uniform on
/// `(0, 1]` and `u2` uniform on `[0, 1)`, returns
/// `sqrt(-2 ln u1) * cos(2 pi u2)`. The sine branch is discarded so each
/// draw consumes exactly two uniforms.
fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Draws one matrix on the substream `(config.seed, stream_index)`.
///
/// Deterministic: identical `(config, stream_index)` always produce
/// bit-identical matrices. Parameters are drawn in index order, one normal
/// each, scaled by [`entry_sigma`].
pub fn sample(config: &SamplerConfig, stream_index: u64) -> PatternedMatrix {
    let sigmas = entry_sigma(config.kind, config.n, config.a)
        .expect("SamplerConfig invariants guarantee valid sigma inputs");
    let mut rng = substream_rng(config.seed, stream_index);
    let params: Vec<f64> = sigmas
        .iter()
        .map(|&s| s * standard_normal(&mut rng))
        .collect();
    let first_row = expand_params(config.kind, config.n, &params)
        .expect("parameter count matches kind by construction");
    let dense = build_dense(config.kind, &first_row)
        .expect("expanded rows satisfy their pattern by construction");
    PatternedMatrix {
        kind: config.kind,
        first_row,
        dense,
    }
}
