//! Spacing extraction, histograms, empirical CDFs, moments, and the
//! Kolmogorov-Smirnov distance against analytic reference CDFs.

use crate::error::{Error, Result};

/// Consecutive differences of a sorted sample; with `normalize` the
/// differences are divided by their own mean (mean-one convention).
pub fn nns(values: &[f64], normalize: bool) -> Result<Vec<f64>> {
    if values.len() < 2 {
        return Err(Error::Domain(format!(
            "nearest-neighbour spacings need at least 2 values, got {}",
            values.len()
        )));
    }
    if values.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Domain("nns input must be sorted ascending".into()));
    }
    let mut spacings: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    if normalize {
        let mean = spacings.iter().sum::<f64>() / spacings.len() as f64;
        if mean == 0.0 {
            return Err(Error::Domain(
                "degenerate sample: zero mean spacing cannot be normalized".into(),
            ));
        }
        for s in &mut spacings {
            *s /= mean;
        }
    }
    Ok(spacings)
}

/// `|trivial - p|` for every entry of `positives`.
pub fn distances_from_trivial(trivial: f64, positives: &[f64]) -> Result<Vec<f64>> {
    if positives.is_empty() {
        return Err(Error::Domain(
            "distance statistic needs at least one nontrivial eigenvalue".into(),
        ));
    }
    Ok(positives.iter().map(|p| (trivial - p).abs()).collect())
}

/// Histogram over half-open bins `[e_i, e_{i+1})`, the last bin closed.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    edges: Vec<f64>,
    counts: Vec<u64>,
    total: u64,
}

/// Bin layout: explicit edges or a uniform rule over the data range.
#[derive(Debug, Clone, PartialEq)]
pub enum Binning {
    Explicit(Vec<f64>),
    /// `bins` uniform bins over `[min(data), max(data)]`.
    Uniform { bins: usize },
    /// `bins` uniform bins over `[0, max(data)]`; the spacing-histogram rule.
    FromZero { bins: usize },
}

pub fn histogram(data: &[f64], binning: &Binning) -> Result<Histogram> {
    if data.is_empty() {
        return Err(Error::Domain("histogram needs nonempty data".into()));
    }
    let edges: Vec<f64> = match binning {
        Binning::Explicit(e) => {
            if e.len() < 2 || e.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Domain(
                    "explicit edges must be strictly increasing with at least 2 entries".into(),
                ));
            }
            e.clone()
        }
        Binning::Uniform { bins } | Binning::FromZero { bins } => {
            if *bins == 0 {
                return Err(Error::Domain("bin count must be >= 1".into()));
            }
            let hi = data.iter().fold(f64::NEG_INFINITY, |a, &v| a.max(v));
            let lo = match binning {
                Binning::FromZero { .. } => 0.0,
                _ => data.iter().fold(f64::INFINITY, |a, &v| a.min(v)),
            };
            if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
                return Err(Error::Domain(format!(
                    "degenerate data range [{lo}, {hi}] cannot be binned"
                )));
            }
            let mut edges: Vec<f64> = (0..=*bins)
                .map(|i| lo + (hi - lo) * i as f64 / *bins as f64)
                .collect();
            // pin the outer edges so rounding cannot push data out of range
            edges[0] = lo;
            edges[*bins] = hi;
            edges
        }
    };
    let nb = edges.len() - 1;
    let (lo, hi) = (edges[0], edges[nb]);
    let mut counts = vec![0u64; nb];
    for &v in data {
        if v < lo || v > hi || v.is_nan() {
            return Err(Error::Domain(format!(
                "datum {v} falls outside the bin range [{lo}, {hi}]"
            )));
        }
        // binary search for the half-open bin; the last bin is closed above
        let idx = match edges.binary_search_by(|e| e.partial_cmp(&v).expect("finite edges")) {
            Ok(i) => i.min(nb - 1),
            Err(i) => i - 1,
        };
        counts[idx] += 1;
    }
    Ok(Histogram {
        edges,
        counts,
        total: data.len() as u64,
    })
}

impl Histogram {
    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Per-bin density `count / (total * width)`; integrates to one.
    pub fn densities(&self) -> Vec<f64> {
        self.edges
            .windows(2)
            .zip(&self.counts)
            .map(|(w, &c)| c as f64 / (self.total as f64 * (w[1] - w[0])))
            .collect()
    }
}

/// Empirical CDF: a right-continuous step function through the sorted sample.
#[derive(Debug, Clone)]
pub struct Ecdf {
    sorted: Vec<f64>,
}

impl Ecdf {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("empirical CDF needs nonempty data".into()));
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::Domain("empirical CDF input contains NaN".into()));
        }
        values.sort_by(|a, b| a.partial_cmp(b).expect("no NaN after check"));
        Ok(Ecdf { sorted: values })
    }

    pub fn n(&self) -> usize {
        self.sorted.len()
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    /// Fraction of the sample at or below `x`.
    pub fn eval(&self, x: f64) -> f64 {
        let idx = self
            .sorted
            .partition_point(|&v| v <= x);
        idx as f64 / self.sorted.len() as f64
    }
}

/// Two-sided Kolmogorov-Smirnov distance between a sample and a reference
/// CDF: `sup_i max(|F_hat(x_i) - F(x_i)|, |F_hat(x_i^-) - F(x_i)|)`.
pub fn ks_distance(data: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::Domain("KS distance needs nonempty data".into()));
    }
    let ecdf = Ecdf::new(data.to_vec())?;
    let n = ecdf.n() as f64;
    let mut d = 0.0f64;
    for (i, &x) in ecdf.sorted().iter().enumerate() {
        let f = cdf(x);
        d = d.max(((i + 1) as f64 / n - f).abs());
        d = d.max((i as f64 / n - f).abs());
    }
    Ok(d.min(1.0))
}

/// One-pass moments (Welford update); the variance is the unbiased
/// `n - 1` estimator, zero for a single observation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    pub variance: f64,
    pub count: usize,
    pub min: f64,
    pub max: f64,
}

pub fn summary(data: &[f64]) -> Result<Summary> {
    if data.is_empty() {
        return Err(Error::Domain("summary needs nonempty data".into()));
    }
    let mut mean = 0.0f64;
    let mut m2 = 0.0f64;
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for (i, &x) in data.iter().enumerate() {
        let delta = x - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (x - mean);
        min = min.min(x);
        max = max.max(x);
    }
    let variance = if data.len() > 1 {
        m2 / (data.len() - 1) as f64
    } else {
        0.0
    };
    Ok(Summary {
        mean,
        variance,
        count: data.len(),
        min,
        max,
    })
}
