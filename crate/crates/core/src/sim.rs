//! Seeded Monte Carlo engine: spacing sets, mean scaling, histograms and
//! goodness-of-fit statistics.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ensembles::{build, discriminant_constant, validate, ModelSpec, Realization};
use crate::mat2::{clean_spurious_imag, PairKind, DEFAULT_IMAG_TOL};
use crate::rng::{stream, CHUNK};
use crate::verify::{discriminant_residual, DISCRIMINANT_TOL};
use crate::{Error, Result, SpacingLaw};

/// Kolmogorov 1% critical value coefficient: `D_crit = KS_COEFF / sqrt(N)`.
pub const KS_COEFF: f64 = 1.63;
pub const DEFAULT_BINS: usize = 100;
pub const DEFAULT_Z_MAX: f64 = 4.0;
/// Minimum expected count per Pearson cell.
pub const MIN_EXPECTED: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub spec: ModelSpec,
    pub n: usize,
    pub seed: u64,
    pub bins: usize,
    pub z_max: f64,
    pub law: SpacingLaw,
}

impl SimConfig {
    /// Defaults: 100 bins on `[0, 4]`, compared against the driver's target law.
    pub fn new(spec: ModelSpec, n: usize, seed: u64) -> Self {
        let law = spec.target_law();
        Self { spec, n, seed, bins: DEFAULT_BINS, z_max: DEFAULT_Z_MAX, law }
    }

    fn check(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        if self.bins == 0 {
            return Err(Error::InvalidParameter("bins must be at least 1".into()));
        }
        if !(self.z_max > 0.0) {
            return Err(Error::InvalidParameter("z_max must be positive".into()));
        }
        let report = validate(&self.spec);
        if !report.ok {
            return Err(Error::Validation { model: self.spec.id.clone(), summary: report.summary() });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub spacings: Vec<f64>,
    pub sample_mean: f64,
    pub scaled: Vec<f64>,
    pub real_pairs: usize,
    pub conjugate_pairs: usize,
    /// Realizations whose discriminant missed `k y^(2/(q+1))` by more than the
    /// verification tolerance; 0 when `k` is undefined.
    pub discriminant_violations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub densities: Vec<f64>,
    pub counts: Vec<u64>,
    /// Samples beyond the last edge.
    pub overflow: u64,
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.overflow
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GofReport {
    pub ks: f64,
    pub ks_threshold: f64,
    pub chi2: f64,
    pub dof: usize,
    pub pass: bool,
    pub discriminant_violations: usize,
}

/// Applies `f` to `n` seeded realizations in parallel chunks; output order is
/// realization order and does not depend on the worker count.
pub fn map_realizations<T, F>(spec: &ModelSpec, n: usize, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, &Realization) -> T + Sync,
{
    map_range(spec, 0, n, seed, &f)
}

fn map_range<T, F>(spec: &ModelSpec, start: usize, end: usize, seed: u64, f: &F) -> Vec<T>
where
    T: Send,
    F: Fn(usize, &Realization) -> T + Sync,
{
    debug_assert_eq!(start % CHUNK, 0);
    let chunks = (end - start).div_ceil(CHUNK);
    let first = start / CHUNK;
    let parts: Vec<Vec<T>> = (first..first + chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream(seed, c as u64);
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(end);
            (lo..hi).map(|i| f(i, &build(spec, &mut rng))).collect()
        })
        .collect();
    parts.into_iter().flatten().collect()
}

struct Sample {
    spacing: f64,
    kind: PairKind,
    violation: bool,
}

fn sample_one(index: usize, r: &Realization, k: Option<crate::Complex64>, q: f64) -> Result<Sample> {
    let pair = clean_spurious_imag(r.matrix.eigenvalues(), DEFAULT_IMAG_TOL);
    let spacing = pair.spacing().map_err(|_| Error::GenericComplexPair { index })?;
    let violation = k.is_some_and(|k| !(discriminant_residual(&r.matrix, k, r.y, q) <= DISCRIMINANT_TOL));
    Ok(Sample { spacing, kind: pair.kind, violation })
}

/// Draws `config.n` realizations and mean-scales their spacings.
pub fn run(config: &SimConfig) -> Result<SampleSet> {
    config.check()?;
    let spec = &config.spec;
    let k = discriminant_constant(spec).ok();
    let samples = map_realizations(spec, config.n, config.seed, |i, r| sample_one(i, r, k, spec.q));
    let mut spacings = Vec::with_capacity(config.n);
    let (mut real_pairs, mut conjugate_pairs, mut discriminant_violations) = (0, 0, 0);
    for s in samples {
        let s = s?;
        spacings.push(s.spacing);
        match s.kind {
            PairKind::RealPair => real_pairs += 1,
            _ => conjugate_pairs += 1,
        }
        discriminant_violations += s.violation as usize;
    }
    let sample_mean = spacings.iter().sum::<f64>() / spacings.len() as f64;
    if !(sample_mean > 0.0 && sample_mean.is_finite()) {
        return Err(Error::InvalidParameter(format!("sample mean spacing is {sample_mean}")));
    }
    let scaled = spacings.iter().map(|s| s / sample_mean).collect();
    Ok(SampleSet { spacings, sample_mean, scaled, real_pairs, conjugate_pairs, discriminant_violations })
}

/// [`run`] on a dedicated pool of `threads` workers.
pub fn run_with_threads(config: &SimConfig, threads: usize) -> Result<SampleSet> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    pool.install(|| run(config))
}

/// Equal-width density histogram on `[0, z_max]`; mass beyond `z_max` is
/// counted in `overflow` and excluded from the normalization.
pub fn histogram(scaled: &[f64], bins: usize, z_max: f64) -> Result<Histogram> {
    if scaled.is_empty() {
        return Err(Error::EmptyInput);
    }
    if bins == 0 || !(z_max > 0.0) {
        return Err(Error::InvalidParameter("histogram needs bins >= 1 and z_max > 0".into()));
    }
    let width = z_max / bins as f64;
    let edges: Vec<f64> = (0..=bins).map(|i| i as f64 * width).collect();
    let mut counts = vec![0u64; bins];
    let mut overflow = 0;
    for &z in scaled {
        if z > z_max || z.is_nan() {
            overflow += 1;
        } else {
            let i = ((z / width) as usize).min(bins - 1);
            counts[i] += 1;
        }
    }
    let included: u64 = counts.iter().sum();
    if included == 0 {
        return Err(Error::EmptyInput);
    }
    let densities = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| c as f64 / (included as f64 * (edges[i + 1] - edges[i])))
        .collect();
    Ok(Histogram { edges, densities, counts, overflow })
}

/// Two-sided Kolmogorov-Smirnov distance of sorted samples from `law`.
pub fn ks_statistic(sorted: &[f64], law: &SpacingLaw) -> f64 {
    let n = sorted.len() as f64;
    sorted.iter().enumerate().fold(0.0, |d: f64, (i, &z)| {
        let f = law.cdf(z);
        d.max((i + 1) as f64 / n - f).max(f - i as f64 / n)
    })
}

pub fn ks_threshold(n: usize) -> f64 {
    KS_COEFF / (n as f64).sqrt()
}

/// Pearson statistic of `observed` counts against cell probabilities, merging
/// adjacent cells until each expects at least [`MIN_EXPECTED`]. Returns the
/// statistic and `cells - 1` degrees of freedom.
pub fn pearson(observed: &[f64], probs: &[f64]) -> Result<(f64, usize)> {
    let n: f64 = observed.iter().sum();
    if !(n > 0.0) {
        return Err(Error::EmptyInput);
    }
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let (mut o, mut e) = (0.0, 0.0);
    for (&ob, &p) in observed.iter().zip(probs) {
        o += ob;
        e += n * p;
        if e >= MIN_EXPECTED {
            cells.push((o, e));
            o = 0.0;
            e = 0.0;
        }
    }
    if o > 0.0 || e > 0.0 {
        match cells.last_mut() {
            Some(last) => {
                last.0 += o;
                last.1 += e;
            }
            None => cells.push((o, e)),
        }
    }
    let stat = cells.iter().filter(|c| c.1 > 0.0).map(|&(o, e)| (o - e) * (o - e) / e).sum();
    Ok((stat, cells.len().saturating_sub(1)))
}

/// Pearson chi-square of a histogram against `law`, the overflow forming a final cell.
pub fn chi_square(hist: &Histogram, law: &SpacingLaw, n: usize) -> Result<(f64, usize)> {
    let total = hist.total();
    if total == 0 || n == 0 {
        return Err(Error::EmptyInput);
    }
    let scale = n as f64 / total as f64;
    let mut observed: Vec<f64> = hist.counts.iter().map(|&c| c as f64 * scale).collect();
    observed.push(hist.overflow as f64 * scale);
    let mut probs: Vec<f64> = hist.edges.windows(2).map(|w| law.cdf(w[1]) - law.cdf(w[0])).collect();
    probs.push(1.0 - law.cdf(*hist.edges.last().unwrap_or(&0.0)));
    pearson(&observed, &probs)
}

/// KS and chi-square of the scaled spacings against `law`.
pub fn gof(set: &SampleSet, hist: &Histogram, law: &SpacingLaw) -> Result<GofReport> {
    let mut sorted = set.scaled.clone();
    sorted.sort_by(f64::total_cmp);
    let ks = ks_statistic(&sorted, law);
    let ks_threshold = ks_threshold(sorted.len());
    let (chi2, dof) = chi_square(hist, law, sorted.len())?;
    let pass = ks < ks_threshold && set.discriminant_violations == 0;
    Ok(GofReport { ks, ks_threshold, chi2, dof, pass, discriminant_violations: set.discriminant_violations })
}

/// Ratio of the running sample mean spacing to the population mean at each
/// checkpoint, from one seeded sequence of realizations.
pub fn lln_trace(config: &SimConfig, checkpoints: &[usize]) -> Result<Vec<(usize, f64)>> {
    config.check()?;
    if checkpoints.is_empty() || checkpoints.windows(2).any(|w| w[0] >= w[1]) || checkpoints[0] == 0 {
        return Err(Error::InvalidParameter("checkpoints must be positive and strictly ascending".into()));
    }
    let spec = &config.spec;
    let k = discriminant_constant(spec)?;
    let mu = spec.driver.mean_spacing(k.re, spec.q);
    let max = *checkpoints.last().unwrap_or(&0);
    const BATCH: usize = 256 * CHUNK;
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut next = checkpoints.iter().peekable();
    let mut sum = 0.0;
    let mut start = 0;
    while start < max {
        let end = (start + BATCH).min(max);
        let part = map_range(spec, start, end, config.seed, &|i, r: &Realization| {
            let pair = clean_spurious_imag(r.matrix.eigenvalues(), DEFAULT_IMAG_TOL);
            pair.spacing().map_err(|_| Error::GenericComplexPair { index: i })
        });
        for (j, s) in part.into_iter().enumerate() {
            sum += s?;
            let count = start + j + 1;
            if next.peek().is_some_and(|&&c| c == count) {
                next.next();
                out.push((count, sum / count as f64 / mu));
            }
        }
        start = end;
    }
    Ok(out)
}
