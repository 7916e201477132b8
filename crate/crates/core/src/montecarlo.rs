//! Monte Carlo estimates of `E[tr rho^k]` for sampled unimodular matrices.
//!
//! Every sample is generated from its own counter-based stream keyed by
//! `(seed, sample index)`, and per-chunk statistics are merged in a tree
//! fixed by sample index. Results are therefore bit-identical for any worker
//! count.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, SymmetricEigen};
use num::complex::Complex64;
use num::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::basis::MomentPolynomial;
use crate::enumerator::{count_ddcg_partitions, CountOptions};
use crate::error::{invalid, Error, Result};
use crate::pool::with_workers;

pub const MAX_DIMENSION: usize = 256;
pub const MAX_MOMENT: usize = 16;
pub const MIN_SAMPLES: u64 = 100;

/// Tolerance on `|M - M*|` for the Gram matrix `U U*`.
const HERMITIAN_TOL: f64 = 1e-8;
/// Most negative eigenvalue of `rho` tolerated before reporting a bug.
const EIGEN_FLOOR: f64 = -1e-10;
/// Largest imaginary part of `tr rho^k` tolerated on the multiplication path.
const IMAG_TOL: f64 = 1e-10;

const CHUNK: u64 = 256;

/// An `N x N` matrix of unit-modulus complex entries.
#[derive(Debug, Clone, PartialEq)]
pub struct UnimodularSample {
    entries: DMatrix<Complex64>,
}

impl UnimodularSample {
    pub fn dimension(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.entries
    }
}

/// Draws sample number `index` of the stream identified by `seed`.
///
/// Entry `(i, j)` takes the `(i * N + j)`-th 64-bit draw of ChaCha stream
/// `index` under key `seed` and maps it to a phase uniform on `[0, 2 pi)`.
pub fn sample_unimodular(n: usize, seed: u64, index: u64) -> UnimodularSample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut phases = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        phases.push(rng.gen::<f64>() * TAU);
    }
    let entries = DMatrix::from_fn(n, n, |i, j| Complex64::from_polar(1.0, phases[i * n + j]));
    UnimodularSample { entries }
}

/// How `tr rho^k` is computed from a sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraceMethod {
    /// Eigenvalues of the Hermitian matrix serve every power at once.
    #[default]
    Eigen,
    /// Repeated multiplication by `rho`.
    Multiply,
}

/// Normalized traces `tr rho^k` for each `k` in `powers`, where
/// `rho = U U* / N^2` and `tr = Tr / N`.
pub fn trace_powers(
    sample: &UnimodularSample,
    powers: &[usize],
    method: TraceMethod,
) -> Result<Vec<f64>> {
    let n = sample.dimension();
    let nf = n as f64;
    let u = sample.matrix();
    let mut gram = u * u.adjoint();
    let drift = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (gram[(i, j)] - gram[(j, i)].conj()).norm())
        .fold(0.0, f64::max);
    if drift > HERMITIAN_TOL {
        return Err(Error::Numerical(format!("U U* is not Hermitian (drift {drift:e})")));
    }
    // Each diagonal entry is a sum of N unit moduli.
    for i in 0..n {
        let d = gram[(i, i)];
        if (d.re - nf).abs() > HERMITIAN_TOL || d.im.abs() > HERMITIAN_TOL {
            return Err(Error::Numerical(format!("diagonal entry {i} of U U* is {d}")));
        }
        gram[(i, i)] = Complex64::new(nf, 0.0);
    }
    // Tr(U U*) = N^2 exactly once the diagonal is pinned, so tr rho is the
    // correctly rounded 1/N.
    let first = gram.trace().re / (nf * nf * nf);
    let scale = nf * nf;
    let rho = gram.map(|z| z / scale);

    let needs_more = powers.iter().any(|&k| k >= 2);
    let mut out = Vec::with_capacity(powers.len());
    match method {
        _ if !needs_more => {
            for &k in powers {
                out.push(if k == 0 { 1.0 } else { first });
            }
        }
        TraceMethod::Eigen => {
            let eig = SymmetricEigen::new(rho);
            let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
            if min < EIGEN_FLOOR {
                return Err(Error::Numerical(format!("negative eigenvalue {min:e} of rho")));
            }
            for &k in powers {
                out.push(match k {
                    0 => 1.0,
                    1 => first,
                    _ => eig.eigenvalues.iter().map(|l| l.max(0.0).powi(k as i32)).sum::<f64>() / nf,
                });
            }
        }
        TraceMethod::Multiply => {
            let max_k = powers.iter().copied().max().unwrap_or(0);
            let mut traces = vec![Complex64::new(1.0, 0.0); max_k + 1];
            let mut power = rho.clone();
            for (t, slot) in traces.iter_mut().enumerate().skip(1) {
                if t > 1 {
                    power = &power * &rho;
                }
                *slot = power.trace() / nf;
            }
            for &k in powers {
                let z = traces[k];
                if z.im.abs() > IMAG_TOL {
                    return Err(Error::Numerical(format!(
                        "tr rho^{k} has imaginary part {:e}",
                        z.im
                    )));
                }
                out.push(if k == 1 { first } else { z.re });
            }
        }
    }
    Ok(out)
}

/// Streaming mean and variance (Welford), mergeable (Chan et al.).
///
/// Feeding identical values keeps the mean bit-exact and the variance zero.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunningStats {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&self, other: &Self) -> Self {
        if self.count == 0 {
            return *other;
        }
        if other.count == 0 {
            return *self;
        }
        let count = self.count + other.count;
        let (na, nb, n) = (self.count as f64, other.count as f64, count as f64);
        let delta = other.mean - self.mean;
        Self {
            count,
            mean: self.mean + delta * nb / n,
            m2: self.m2 + other.m2 + delta * delta * na * nb / n,
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance (zero for fewer than two values).
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn std_error(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

/// Merges in a balanced binary tree over the slice order.
fn tree_merge(stats: &[RunningStats]) -> RunningStats {
    match stats.len() {
        0 => RunningStats::default(),
        1 => stats[0],
        n => tree_merge(&stats[..n / 2]).merge(&tree_merge(&stats[n / 2..])),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub k: usize,
    pub n: usize,
    pub sample_count: u64,
    pub mean: f64,
    pub std_error: f64,
    pub seed: u64,
}

/// Sampling configuration shared by the estimators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplingOptions {
    pub samples: u64,
    pub seed: u64,
    /// `0` uses the available parallelism.
    pub workers: usize,
    pub method: TraceMethod,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        Self { samples: 100_000, seed: 0, workers: 0, method: TraceMethod::Eigen }
    }
}

/// Estimates `E[tr rho^k]` for a single `k`.
pub fn estimate_moment(n: usize, k: usize, opts: &SamplingOptions) -> Result<MomentEstimate> {
    Ok(estimate_moments(n, &[k], opts)?[0])
}

/// Estimates several moments from the same samples.
pub fn estimate_moments(
    n: usize,
    ks: &[usize],
    opts: &SamplingOptions,
) -> Result<Vec<MomentEstimate>> {
    if n == 0 {
        return Err(invalid("dimension must be at least 1"));
    }
    if n > MAX_DIMENSION {
        return Err(Error::ScaleLimit { what: "dimension", limit: MAX_DIMENSION, got: n });
    }
    if let Some(&k) = ks.iter().find(|&&k| k == 0 || k > MAX_MOMENT) {
        if k == 0 {
            return Err(invalid("moment order must be at least 1"));
        }
        return Err(Error::ScaleLimit { what: "moment order", limit: MAX_MOMENT, got: k });
    }
    if opts.samples < MIN_SAMPLES {
        return Err(invalid(format!("need at least {MIN_SAMPLES} samples")));
    }

    let chunks = opts.samples.div_ceil(CHUNK);
    let per_chunk: Result<Vec<Vec<RunningStats>>> = with_workers(opts.workers, || {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut stats = vec![RunningStats::default(); ks.len()];
                let end = ((c + 1) * CHUNK).min(opts.samples);
                for index in c * CHUNK..end {
                    let sample = sample_unimodular(n, opts.seed, index);
                    let traces = trace_powers(&sample, ks, opts.method)?;
                    for (s, t) in stats.iter_mut().zip(traces) {
                        s.push(t);
                    }
                }
                Ok(stats)
            })
            .collect()
    });
    let per_chunk = per_chunk?;

    Ok(ks
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let column: Vec<RunningStats> = per_chunk.iter().map(|c| c[i]).collect();
            let total = tree_merge(&column);
            MomentEstimate {
                k,
                n,
                sample_count: total.count(),
                mean: total.mean(),
                std_error: total.std_error(),
                seed: opts.seed,
            }
        })
        .collect())
}

/// `(mean - exact) / std_error`, with a zero standard error treated as an
/// exact claim.
pub fn z_score(mean: f64, exact: f64, std_error: f64) -> f64 {
    let diff = mean - exact;
    if std_error > 0.0 {
        diff / std_error
    } else if diff.abs() <= 1e-12 * exact.abs().max(1.0) {
        0.0
    } else {
        f64::INFINITY.copysign(diff)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationEntry {
    pub k: usize,
    pub n: usize,
    pub exact: f64,
    pub estimate: MomentEstimate,
    pub z: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub entries: Vec<ValidationEntry>,
    /// Fraction of entries with `|z| <= 4`.
    pub fraction_within_4: f64,
    pub max_abs_z: f64,
    pub passed: bool,
}

impl ValidationReport {
    /// Pass iff at least 95% of the pairs have `|z| <= 4` and none exceeds 6.
    pub fn from_entries(entries: Vec<ValidationEntry>) -> Self {
        let within = entries.iter().filter(|e| e.z.abs() <= 4.0).count();
        let fraction_within_4 =
            if entries.is_empty() { 1.0 } else { within as f64 / entries.len() as f64 };
        let max_abs_z = entries.iter().map(|e| e.z.abs()).fold(0.0, f64::max);
        Self { entries, fraction_within_4, max_abs_z, passed: fraction_within_4 >= 0.95 && max_abs_z <= 6.0 }
    }
}

/// The exact moment `Q_k(N) / N^{2k+1}` as a float.
pub fn exact_moment(poly: &MomentPolynomial, n: usize) -> f64 {
    poly.moment(n as u64).to_f64().unwrap_or(f64::NAN)
}

/// Compares Monte Carlo estimates with the exact moment polynomials for
/// every `k <= k_max` and every `N` in `dims`.
pub fn validate_against_exact(
    k_max: usize,
    dims: &[usize],
    opts: &SamplingOptions,
) -> Result<ValidationReport> {
    let count_opts = CountOptions { workers: opts.workers, ..CountOptions::default() };
    let polys = (1..=k_max)
        .map(|k| count_ddcg_partitions(k, &count_opts).map(|row| MomentPolynomial::from_row(&row)))
        .collect::<Result<Vec<_>>>()?;
    let ks: Vec<usize> = (1..=k_max).collect();
    let mut entries = Vec::new();
    for &n in dims {
        let estimates = estimate_moments(n, &ks, opts)?;
        for (poly, estimate) in polys.iter().zip(estimates) {
            let exact = exact_moment(poly, n);
            entries.push(ValidationEntry {
                k: estimate.k,
                n,
                exact,
                z: z_score(estimate.mean, exact, estimate.std_error),
                estimate,
            });
        }
    }
    Ok(ValidationReport::from_entries(entries))
}
