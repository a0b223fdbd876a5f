//! Eigenvalue computation and symmetry reduction.
//!
//! Reverse circulant and symmetric circulant spectra come from closed forms
//! (Fourier sums of the first row); palindromic symmetric Toeplitz matrices
//! are block-diagonalized in the symmetry-adapted basis of their parity
//! operator and the blocks are handed to the Jacobi eigensolver.

use crate::ensembles::{EnsembleKind, FirstRow, PatternedMatrix};
use crate::error::{Error, Result};
use crate::matrix::SymMatrix;

/// Default relative off-diagonal target for the Jacobi sweep.
pub const DEFAULT_EIG_TOL: f64 = 1e-12;
/// Relative magnitude below which an eigenvalue counts as a structural zero
/// of the palindromic Toeplitz even sector.
pub const PST_ZERO_TOL: f64 = 1e-9;
/// Relative symmetry / commutation tolerance on matrix input.
const INPUT_SYM_TOL: f64 = 1e-12;
/// Jacobi sweep cap; exceeded sweeps signal a numerical failure.
const MAX_SWEEPS: usize = 100;

/// Full spectrum, sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are ordered reals"));
        Spectrum { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }
}

/// Symmetry-reduced spectrum.
///
/// Reverse circulant matrices reduce to the trivial eigenvalue (the first-row
/// sum) plus the magnitudes of the `+/-` pairs; the circulant and Toeplitz
/// ensembles reduce to even/odd parity sectors.
#[derive(Debug, Clone, PartialEq)]
pub enum ReducedSpectrum {
    Rc { trivial: f64, positives: Vec<f64> },
    Parity { even: Vec<f64>, odd: Vec<f64> },
}

/// Involutive permutation commuting with an ensemble's matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct ParityOperator {
    map: Vec<usize>,
}

impl ParityOperator {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        for (i, &j) in map.iter().enumerate() {
            if j >= n || map[j] != i {
                return Err(Error::Structure(
                    "parity operator must be an involutive permutation".into(),
                ));
            }
        }
        Ok(ParityOperator { map })
    }

    /// Index reversal `i -> n-1-i`; commutes with symmetric Toeplitz matrices.
    pub fn index_reversal(n: usize) -> Self {
        ParityOperator {
            map: (0..n).map(|i| n - 1 - i).collect(),
        }
    }

    /// Cyclic reflection `i -> (n-i) mod n`; commutes with symmetric
    /// circulant matrices.
    pub fn circulant_reflection(n: usize) -> Self {
        ParityOperator {
            map: (0..n).map(|i| (n - i) % n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
///
/// Sweeps run until the off-diagonal Frobenius norm drops below
/// `tol * ||M||_F`, capped at 100 sweeps. Input must be symmetric within
/// `1e-12 * ||M||_F`; the rotation works on the symmetrized copy.
pub fn eig_symmetric(m: &SymMatrix, tol: f64) -> Result<Spectrum> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Domain(format!("tol must be > 0, got {tol}")));
    }
    let n = m.n();
    let norm = m.frobenius_norm();
    if m.symmetry_defect() > INPUT_SYM_TOL * norm {
        return Err(Error::Structure(format!(
            "matrix is not symmetric: defect {} exceeds {} * ||M||",
            m.symmetry_defect(),
            INPUT_SYM_TOL
        )));
    }
    let mut work = SymMatrix::from_fn(n, |i, j| 0.5 * (m.get(i, j) + m.get(j, i)));
    let a = work.as_mut_slice();
    let mut diag: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    let mut base = diag.clone();
    let mut accum = vec![0.0; n];

    // rotations below this leave the off-diagonal norm well under target;
    // only the upper triangle of `a` is referenced from here on
    let skip = tol * norm / (2.0 * n as f64);
    for _sweep in 0..MAX_SWEEPS {
        let mut off2 = 0.0;
        for i in 0..n {
            off2 += a[i * n + i + 1..(i + 1) * n]
                .iter()
                .map(|x| x * x)
                .sum::<f64>();
        }
        if (2.0 * off2).sqrt() <= tol * norm {
            diag.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
            return Ok(Spectrum { values: diag });
        }
        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= skip {
                    continue;
                }
                let theta = 0.5 * (diag[q] - diag[p]) / apq;
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let shift = t * apq;
                accum[p] -= shift;
                accum[q] += shift;
                diag[p] -= shift;
                diag[q] += shift;
                a[p * n + q] = 0.0;
                // elements (j,p) and (j,q) for j < p
                for j in 0..p {
                    let g = a[j * n + p];
                    let h = a[j * n + q];
                    a[j * n + p] = g - s * (h + g * tau);
                    a[j * n + q] = h + s * (g - h * tau);
                }
                // elements (p,j) and (j,q) for p < j < q
                for j in (p + 1)..q {
                    let g = a[p * n + j];
                    let h = a[j * n + q];
                    a[p * n + j] = g - s * (h + g * tau);
                    a[j * n + q] = h + s * (g - h * tau);
                }
                // elements (p,j) and (q,j) for q < j: both slices contiguous
                let (head, tail) = a.split_at_mut(q * n);
                let rowp = &mut head[p * n + q + 1..p * n + n];
                let rowq = &mut tail[q + 1..n];
                for (gp, hq) in rowp.iter_mut().zip(rowq.iter_mut()) {
                    let g = *gp;
                    let h = *hq;
                    *gp = g - s * (h + g * tau);
                    *hq = h + s * (g - h * tau);
                }
            }
        }
        for i in 0..n {
            base[i] += accum[i];
            diag[i] = base[i];
            accum[i] = 0.0;
        }
    }
    Err(Error::Numerical(format!(
        "Jacobi sweep cap of {MAX_SWEEPS} reached without convergence (n = {n})"
    )))
}

/// Closed-form reduced spectrum of an odd reverse circulant matrix: the
/// trivial eigenvalue is the first-row sum, and for `k = 1..=(n-1)/2` the
/// Fourier magnitudes `|sum_j r_j e^{2 pi i j k / n}|` give the `+/-` pairs.
pub fn rc_spectrum_closed(row: &FirstRow) -> Result<ReducedSpectrum> {
    let n = row.n();
    let r = row.entries();
    let trivial: f64 = r.iter().sum();
    let mut positives = Vec::with_capacity((n - 1) / 2);
    for k in 1..=(n - 1) / 2 {
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for (j, &v) in r.iter().enumerate() {
            let angle = std::f64::consts::TAU * (j as f64) * (k as f64) / (n as f64);
            re += v * angle.cos();
            im += v * angle.sin();
        }
        positives.push((re * re + im * im).sqrt());
    }
    positives.sort_by(|a, b| a.partial_cmp(b).expect("finite magnitudes"));
    Ok(ReducedSpectrum::Rc { trivial, positives })
}

fn symcirc_lambda(r: &[f64], k: usize) -> f64 {
    let n = r.len();
    let mut acc = r[0];
    for (j, &v) in r.iter().enumerate().take((n - 1) / 2 + 1).skip(1) {
        let angle = std::f64::consts::TAU * (j as f64) * (k as f64) / (n as f64);
        acc += 2.0 * v * angle.cos();
    }
    acc
}

/// The `k = 0` symmetric-circulant eigenvalue (all-ones eigenvector); the
/// circulant analogue of the reverse-circulant trivial eigenvalue.
pub fn symcirc_trivial(row: &FirstRow) -> f64 {
    symcirc_lambda(row.entries(), 0)
}

/// Closed-form parity-split spectrum of a symmetric circulant matrix:
/// `lambda_k = r_0 + 2 sum_j r_j cos(2 pi j k / n)`. Each degenerate pair
/// `lambda_k = lambda_{n-k}` contributes one even and one odd eigenvector, so
/// the even sector keeps `lambda_0..lambda_{(n-1)/2}` and the odd sector the
/// remaining representatives.
pub fn symcirc_spectrum_closed(row: &FirstRow) -> Result<ReducedSpectrum> {
    crate::ensembles::validate_pattern(EnsembleKind::SymCirculant, row)?;
    let n = row.n();
    let r = row.entries();
    let mut even: Vec<f64> = (0..=(n - 1) / 2).map(|k| symcirc_lambda(r, k)).collect();
    let mut odd: Vec<f64> = ((n + 1) / 2..n).map(|k| symcirc_lambda(r, k)).collect();
    even.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    odd.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(ReducedSpectrum::Parity { even, odd })
}

/// Projects a symmetric matrix commuting with `p` onto the two diagonal
/// blocks of the symmetry-adapted basis.
///
/// Even vectors are `(e_i + e_{p(i)})/sqrt(2)` per two-cycle plus the fixed
/// points unscaled; odd vectors are `(e_i - e_{p(i)})/sqrt(2)`. For odd `n`
/// with one fixed point this yields blocks of size `(n+1)/2` and `(n-1)/2`.
/// Fails if `M` and `p` do not commute, or if the off-diagonal coupling
/// between the sectors survives, within `1e-12 * ||M||_F`.
pub fn parity_block_split(
    m: &SymMatrix,
    p: &ParityOperator,
) -> Result<(SymMatrix, SymMatrix)> {
    let n = m.n();
    if p.n() != n {
        return Err(Error::Structure(format!(
            "parity operator dimension {} does not match matrix dimension {n}",
            p.n()
        )));
    }
    let norm = m.frobenius_norm();
    let tol = INPUT_SYM_TOL * norm;
    // commutator check: (M P)[i][j] = M[i][p(j)], (P M)[i][j] = M[p(i)][j]
    let mut comm2 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let d = m.get(i, p.apply(j)) - m.get(p.apply(i), j);
            comm2 += d * d;
        }
    }
    if comm2.sqrt() > tol {
        return Err(Error::Symmetry(format!(
            "matrix does not commute with parity operator: ||[M,P]|| = {:e} > {:e}",
            comm2.sqrt(),
            tol
        )));
    }

    let mut pairs = Vec::new();
    let mut fixed = Vec::new();
    for i in 0..n {
        let j = p.apply(i);
        if j == i {
            fixed.push(i);
        } else if i < j {
            pairs.push((i, j));
        }
    }
    // even basis: pairs in index order, then fixed points
    let ne = pairs.len() + fixed.len();
    let no = pairs.len();
    let half = std::f64::consts::FRAC_1_SQRT_2;

    let even_index = |alpha: usize| -> (usize, Option<usize>) {
        if alpha < pairs.len() {
            (pairs[alpha].0, Some(pairs[alpha].1))
        } else {
            (fixed[alpha - pairs.len()], None)
        }
    };

    let even = SymMatrix::from_fn(ne, |alpha, beta| {
        let (i, ihat) = even_index(alpha);
        let (j, jhat) = even_index(beta);
        match (ihat, jhat) {
            (Some(ih), Some(jh)) => {
                0.5 * (m.get(i, j) + m.get(i, jh) + m.get(ih, j) + m.get(ih, jh))
            }
            (Some(ih), None) => half * (m.get(i, j) + m.get(ih, j)),
            (None, Some(jh)) => half * (m.get(i, j) + m.get(i, jh)),
            (None, None) => m.get(i, j),
        }
    });
    let odd = SymMatrix::from_fn(no, |alpha, beta| {
        let (i, ih) = pairs[alpha];
        let (j, jh) = pairs[beta];
        0.5 * (m.get(i, j) - m.get(i, jh) - m.get(ih, j) + m.get(ih, jh))
    });

    // the even-odd coupling must vanish
    let mut off2 = 0.0;
    for alpha in 0..ne {
        let (i, ihat) = even_index(alpha);
        for &(j, jh) in &pairs {
            let v = match ihat {
                Some(ih) => 0.5 * (m.get(i, j) - m.get(i, jh) + m.get(ih, j) - m.get(ih, jh)),
                None => half * (m.get(i, j) - m.get(i, jh)),
            };
            off2 += v * v;
        }
    }
    if off2.sqrt() > tol {
        return Err(Error::Symmetry(format!(
            "sector coupling {:e} exceeds {:e}; matrix is not parity-invariant",
            off2.sqrt(),
            tol
        )));
    }
    Ok((even, odd))
}

/// Reduces a sampled matrix to its symmetry sectors.
///
/// Reverse circulant kinds (including softened ones, which stay reverse
/// circulant) use the closed-form decomposition; symmetric circulants use the
/// cosine closed form; palindromic Toeplitz matrices are split with the
/// index-reversal parity operator and each block is diagonalized by Jacobi,
/// after which even-sector eigenvalues below `PST_ZERO_TOL` of the spectral
/// radius are dropped as structural zeros.
pub fn reduce_spectrum(matrix: &PatternedMatrix, eig_tol: f64) -> Result<ReducedSpectrum> {
    match matrix.kind {
        EnsembleKind::RcZeros | EnsembleKind::RcSoft { .. } => {
            rc_spectrum_closed(&matrix.first_row)
        }
        EnsembleKind::SymCirculant => symcirc_spectrum_closed(&matrix.first_row),
        EnsembleKind::Pst => {
            let p = ParityOperator::index_reversal(matrix.dense.n());
            let (eb, ob) = parity_block_split(&matrix.dense, &p)?;
            let even_raw = eig_symmetric(&eb, eig_tol)?;
            let odd = eig_symmetric(&ob, eig_tol)?;
            let radius = even_raw
                .values()
                .iter()
                .chain(odd.values())
                .fold(0.0f64, |acc, &v| acc.max(v.abs()));
            let even: Vec<f64> = even_raw
                .values()
                .iter()
                .copied()
                .filter(|v| v.abs() >= PST_ZERO_TOL * radius)
                .collect();
            Ok(ReducedSpectrum::Parity {
                even,
                odd: odd.values().to_vec(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{build_dense, sample, EnsembleKind, FirstRow, SamplerConfig};
    use approx::assert_relative_eq;

    fn row(v: &[f64]) -> FirstRow {
        FirstRow::new(v.to_vec()).unwrap()
    }

    fn assert_spectra_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "eigenvalue {x} vs {y}");
        }
    }

    #[test]
    fn eig_diagonal_and_2x2() {
        let d = SymMatrix::from_fn(3, |i, j| if i == j { (i + 1) as f64 } else { 0.0 });
        let s = eig_symmetric(&d, 1e-12).unwrap();
        assert_eq!(s.values(), &[1.0, 2.0, 3.0]);

        let swap = SymMatrix::from_fn(2, |i, j| if i == j { 0.0 } else { 1.0 });
        let s = eig_symmetric(&swap, 1e-12).unwrap();
        assert_spectra_close(s.values(), &[-1.0, 1.0], 1e-14);
    }

    #[test]
    fn eig_pst_3x3_closed_form() {
        // (a, b) = (1, 0): eigenvalues 0, (3a - 1)/2 = 1, (3a + 1)/2 = 2
        let m = build_dense(EnsembleKind::Pst, &row(&[1.0, 0.0, 1.0])).unwrap();
        let s = eig_symmetric(&m, 1e-12).unwrap();
        assert_spectra_close(s.values(), &[0.0, 1.0, 2.0], 1e-12);
    }

    #[test]
    fn eig_rejects_asymmetric_input() {
        let m = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            eig_symmetric(&m, 1e-12),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn rc_closed_permutation_and_all_ones() {
        let s = rc_spectrum_closed(&row(&[1.0, 0.0, 0.0])).unwrap();
        match s {
            ReducedSpectrum::Rc { trivial, positives } => {
                assert_relative_eq!(trivial, 1.0, max_relative = 1e-15);
                assert_eq!(positives.len(), 1);
                assert_relative_eq!(positives[0], 1.0, max_relative = 1e-14);
            }
            _ => panic!("wrong variant"),
        }
        let s = rc_spectrum_closed(&row(&[1.0, 1.0, 1.0])).unwrap();
        match s {
            ReducedSpectrum::Rc { trivial, positives } => {
                assert_relative_eq!(trivial, 3.0, max_relative = 1e-15);
                assert!(positives[0].abs() < 1e-15);
            }
            _ => panic!("wrong variant"),
        }
    }

    #[test]
    fn symcirc_closed_small_cases() {
        // (a, b) = (0, 1): all-ones minus identity, spectrum {2, -1, -1}
        let s = symcirc_spectrum_closed(&row(&[0.0, 1.0, 1.0])).unwrap();
        match s {
            ReducedSpectrum::Parity { even, odd } => {
                assert_spectra_close(&even, &[-1.0, 2.0], 1e-14);
                assert_spectra_close(&odd, &[-1.0], 1e-14);
            }
            _ => panic!("wrong variant"),
        }
        // identity
        let s = symcirc_spectrum_closed(&row(&[1.0, 0.0, 0.0])).unwrap();
        match s {
            ReducedSpectrum::Parity { even, odd } => {
                assert_spectra_close(&even, &[1.0, 1.0], 1e-15);
                assert_spectra_close(&odd, &[1.0], 1e-15);
            }
            _ => panic!("wrong variant"),
        }
        // (a, b) = (2, 1): E1 = a + 2b = 4, E2 = a - b = 1
        let s = symcirc_spectrum_closed(&row(&[2.0, 1.0, 1.0])).unwrap();
        match s {
            ReducedSpectrum::Parity { even, odd } => {
                assert_spectra_close(&even, &[1.0, 4.0], 1e-14);
                assert_spectra_close(&odd, &[1.0], 1e-14);
            }
            _ => panic!("wrong variant"),
        }
    }

    #[test]
    fn parity_operator_is_involutive() {
        for n in [3usize, 11, 101] {
            for p in [
                ParityOperator::index_reversal(n),
                ParityOperator::circulant_reflection(n),
            ] {
                for i in 0..n {
                    assert_eq!(p.apply(p.apply(i)), i);
                }
            }
        }
        assert!(ParityOperator::new(vec![1, 2, 0]).is_err());
    }

    #[test]
    fn parity_split_pst_3x3_blocks() {
        let (a, b) = (0.7, -1.3);
        let m = build_dense(EnsembleKind::Pst, &row(&[a, b, a])).unwrap();
        let p = ParityOperator::index_reversal(3);
        let (even, odd) = parity_block_split(&m, &p).unwrap();
        assert_eq!(even.n(), 2);
        assert_eq!(odd.n(), 1);
        assert_relative_eq!(even.get(0, 0), 2.0 * a, max_relative = 1e-15);
        assert_relative_eq!(even.get(0, 1), 2.0f64.sqrt() * b, max_relative = 1e-15);
        assert_relative_eq!(even.get(1, 1), a, max_relative = 1e-15);
        assert_relative_eq!(odd.get(0, 0), 0.0, epsilon = 1e-15);
        // block eigenvalues reproduce (3a +/- sqrt(a^2 + 8 b^2)) / 2
        let s = eig_symmetric(&even, 1e-13).unwrap();
        let disc = (a * a + 8.0 * b * b).sqrt();
        assert_spectra_close(
            s.values(),
            &[(3.0 * a - disc) / 2.0, (3.0 * a + disc) / 2.0],
            1e-12,
        );
    }

    #[test]
    fn parity_split_identity_any_operator() {
        let m = SymMatrix::from_fn(5, |i, j| if i == j { 1.0 } else { 0.0 });
        let p = ParityOperator::index_reversal(5);
        let (even, odd) = parity_block_split(&m, &p).unwrap();
        for i in 0..even.n() {
            for j in 0..even.n() {
                assert_eq!(even.get(i, j), if i == j { 1.0 } else { 0.0 });
            }
        }
        for i in 0..odd.n() {
            for j in 0..odd.n() {
                assert_eq!(odd.get(i, j), if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn parity_split_rejects_non_commuting_matrix() {
        let m = SymMatrix::from_fn(3, |i, j| (i + 2 * j) as f64);
        let p = ParityOperator::index_reversal(3);
        assert!(matches!(parity_block_split(&m, &p), Err(Error::Symmetry(_))));
    }

    #[test]
    fn parity_split_union_matches_full_spectrum_n101() {
        let cfg = SamplerConfig::new(EnsembleKind::Pst, 101, 1.0, 31).unwrap();
        let m = sample(&cfg, 0);
        let p = ParityOperator::index_reversal(101);
        let (eb, ob) = parity_block_split(&m.dense, &p).unwrap();
        let mut union: Vec<f64> = eig_symmetric(&eb, 1e-12)
            .unwrap()
            .values()
            .iter()
            .chain(eig_symmetric(&ob, 1e-12).unwrap().values())
            .copied()
            .collect();
        union.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let full = eig_symmetric(&m.dense, 1e-12).unwrap();
        assert_spectra_close(&union, full.values(), 1e-10);
    }

    #[test]
    fn rc_closed_matches_jacobi_n101() {
        let cfg = SamplerConfig::new(EnsembleKind::RcZeros, 101, 1.0, 8).unwrap();
        let m = sample(&cfg, 0);
        let reduced = rc_spectrum_closed(&m.first_row).unwrap();
        let (trivial, positives) = match &reduced {
            ReducedSpectrum::Rc { trivial, positives } => (*trivial, positives.clone()),
            _ => unreachable!(),
        };
        let mut closed = vec![trivial];
        for p in &positives {
            closed.push(*p);
            closed.push(-*p);
        }
        closed.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let full = eig_symmetric(&m.dense, 1e-12).unwrap();
        assert_spectra_close(&closed, full.values(), 1e-10);
        // spectrum symmetric about zero apart from the trivial eigenvalue
        assert_eq!(positives.len(), 50);
        assert_relative_eq!(
            trivial,
            m.first_row.entries().iter().sum::<f64>(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn trace_is_preserved() {
        for (kind, n) in [
            (EnsembleKind::RcZeros, 11usize),
            (EnsembleKind::SymCirculant, 11),
            (EnsembleKind::Pst, 11),
        ] {
            let cfg = SamplerConfig::new(kind, n, 1.0, 55).unwrap();
            for idx in 0..20 {
                let m = sample(&cfg, idx);
                let s = eig_symmetric(&m.dense, 1e-12).unwrap();
                let sum: f64 = s.values().iter().sum();
                let tr = m.dense.trace();
                let scale = m.dense.frobenius_norm().max(1e-300);
                assert!(
                    (sum - tr).abs() <= 1e-10 * scale.max(tr.abs()),
                    "trace drift {} vs {}",
                    sum,
                    tr
                );
            }
        }
    }

    #[test]
    fn reduce_pst_3x3_keeps_even_pair_and_odd_zero() {
        // (a, b) = (0, 1): even sector {-sqrt(2), sqrt(2)}, odd sector {0}
        let first_row = row(&[0.0, 1.0, 0.0]);
        let dense = build_dense(EnsembleKind::Pst, &first_row).unwrap();
        let pm = PatternedMatrix {
            kind: EnsembleKind::Pst,
            first_row,
            dense,
        };
        let red = reduce_spectrum(&pm, 1e-13).unwrap();
        match red {
            ReducedSpectrum::Parity { even, odd } => {
                assert_spectra_close(&even, &[-(2.0f64.sqrt()), 2.0f64.sqrt()], 1e-12);
                assert_eq!(odd.len(), 1);
                assert!(odd[0].abs() < 1e-12);
            }
            _ => panic!("wrong variant"),
        }
    }

    #[test]
    fn reduce_rc_zeros_structure() {
        let cfg = SamplerConfig::new(EnsembleKind::RcZeros, 101, 1.0, 17).unwrap();
        let m = sample(&cfg, 4);
        let red = reduce_spectrum(&m, 1e-12).unwrap();
        match red {
            ReducedSpectrum::Rc { trivial, positives } => {
                assert_eq!(positives.len(), 50);
                let sum: f64 = m.first_row.entries().iter().sum();
                assert!((trivial - sum).abs() <= 1e-10);
                assert!(positives.iter().all(|&p| p >= 0.0));
            }
            _ => panic!("wrong variant"),
        }
    }

    #[test]
    fn parity_sector_sizes() {
        let cfg = SamplerConfig::new(EnsembleKind::SymCirculant, 101, 1.0, 2).unwrap();
        let m = sample(&cfg, 0);
        match reduce_spectrum(&m, 1e-12).unwrap() {
            ReducedSpectrum::Parity { even, odd } => {
                assert_eq!(even.len(), 51);
                assert_eq!(odd.len(), 50);
                // multiset union reproduces the full spectrum
                let mut union = even.clone();
                union.extend_from_slice(&odd);
                union.sort_by(|a, b| a.partial_cmp(b).unwrap());
                let full = eig_symmetric(&m.dense, 1e-12).unwrap();
                assert_spectra_close(&union, full.values(), 1e-10);
            }
            _ => panic!("wrong variant"),
        }
    }

    #[test]
    fn symcirc_sectors_match_parity_block_split() {
        // dual route for the sector assignment: the cyclic-reflection
        // parity blocks must reproduce the closed-form even/odd split
        for n in [5usize, 11, 101] {
            let cfg = SamplerConfig::new(EnsembleKind::SymCirculant, n, 1.0, 61).unwrap();
            let m = sample(&cfg, 2);
            let (even_cf, odd_cf) = match symcirc_spectrum_closed(&m.first_row).unwrap() {
                ReducedSpectrum::Parity { even, odd } => (even, odd),
                _ => unreachable!(),
            };
            let p = ParityOperator::circulant_reflection(n);
            let (eb, ob) = parity_block_split(&m.dense, &p).unwrap();
            let even_bs = eig_symmetric(&eb, 1e-12).unwrap();
            let odd_bs = eig_symmetric(&ob, 1e-12).unwrap();
            assert_spectra_close(&even_cf, even_bs.values(), 1e-10);
            assert_spectra_close(&odd_cf, odd_bs.values(), 1e-10);
        }
    }

    #[test]
    fn pst_forced_zero_sits_in_odd_sector() {
        // columns 0 and n-1 of an odd-n palindromic Toeplitz matrix are
        // identical, so e_0 - e_{n-1} is an odd-parity null vector
        for n in [5usize, 11, 101] {
            let cfg = SamplerConfig::new(EnsembleKind::Pst, n, 1.0, 23).unwrap();
            let m = sample(&cfg, 1);
            match reduce_spectrum(&m, 1e-12).unwrap() {
                ReducedSpectrum::Parity { even, odd } => {
                    assert_eq!(even.len(), (n + 1) / 2, "even zero falsely filtered");
                    let min_odd = odd.iter().fold(f64::INFINITY, |a, &v| a.min(v.abs()));
                    assert!(min_odd < 1e-10, "no zero mode found in odd sector");
                }
                _ => panic!("wrong variant"),
            }
        }
    }
}
