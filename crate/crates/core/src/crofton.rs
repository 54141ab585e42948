//! Random lines against lattice paths.
//!
//! A line is `x cos θ + y sin θ = ρ`. Lines are drawn from the uniform
//! `dρ dθ` measure restricted to a disk covering the path, and lines that
//! miss the path are rejected, so accepted lines follow the measure
//! conditioned on meeting the curve. By the Cauchy–Crofton formula the mean
//! crossing count of accepted lines is `2 |Γ| / |∂K|`.
//!
//! Sampling is split into fixed-size blocks. Block `b` draws from the ChaCha8
//! stream `b` of the user seed and all accumulators are integers, so the
//! result depends only on `(path, samples, seed)` and not on how blocks are
//! scheduled across threads.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::hull::{convex_hull, perimeter};
use crate::turtle::{bounding_box, LatticePath};
use crate::{Error, Result};

/// Accepted lines per block.
pub const BLOCK_SIZE: u64 = 4096;
/// Smallest accepted sample count for [`estimate_crossings`].
pub const MIN_SAMPLES: u64 = 1000;
/// Consecutive rejections after which sampling gives up.
pub const MAX_CONSECUTIVE_REJECTIONS: u64 = 1_000_000;
/// Vertex-on-line tolerance, relative to the proposal disk radius.
pub const RELATIVE_TOLERANCE: f64 = 1e-9;
/// Inflation of the bounding-box half-diagonal for the proposal disk.
pub const DISK_INFLATION: f64 = 1.001;
/// Bootstrap resamples used for entropy error bars.
pub const BOOTSTRAP_RESAMPLES: usize = 200;

// Stream reserved for bootstrap draws; block streams count up from zero.
const BOOTSTRAP_STREAM: u64 = u64::MAX;

/// `(2 + √5) / (1 + √2)`, the exponential growth rate of the mean crossing
/// count of the snowflake polygons.
pub fn growth_rate() -> f64 {
    (2.0 + 5f64.sqrt()) / (1.0 + 2f64.sqrt())
}

/// The prefactor `1 + √5` quoted for the asymptotic mean crossing count.
pub fn quoted_prefactor() -> f64 {
    1.0 + 5f64.sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LineParam {
    pub theta: f64,
    pub rho: f64,
}

impl LineParam {
    pub fn new(theta: f64, rho: f64) -> Self {
        LineParam { theta, rho }
    }

    /// Signed distance from `(x, y)` to the line.
    #[inline]
    pub fn signed_distance(&self, x: f64, y: f64) -> f64 {
        x * self.theta.cos() + y * self.theta.sin() - self.rho
    }
}

/// Draws `θ` uniformly from `[0, π)` and `ρ` uniformly within `radius` of
/// the projection of `center` onto the line normal.
pub fn sample_line<R: Rng + ?Sized>(rng: &mut R, center: (f64, f64), radius: f64) -> LineParam {
    let theta = rng.random::<f64>() * PI;
    let offset = (2.0 * rng.random::<f64>() - 1.0) * radius;
    let rho = center.0 * theta.cos() + center.1 * theta.sin() + offset;
    LineParam { theta, rho }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Crossings {
    Count(u32),
    /// Some vertex lies within tolerance of the line.
    Degenerate,
}

/// Number of segments whose endpoints lie strictly on opposite sides of the
/// line.
pub fn crossing_count(line: LineParam, path: &LatticePath, tol: f64) -> Crossings {
    let pts: Vec<(f64, f64)> = path
        .vertices()
        .iter()
        .map(|p| (p.x as f64, p.y as f64))
        .collect();
    count_crossings(line, &pts, tol)
}

fn count_crossings(line: LineParam, pts: &[(f64, f64)], tol: f64) -> Crossings {
    let (c, s) = (line.theta.cos(), line.theta.sin());
    let Some(&(x0, y0)) = pts.first() else {
        return Crossings::Count(0);
    };
    let d0 = x0 * c + y0 * s - line.rho;
    let mut near = d0.abs() <= tol;
    let mut prev = d0 > 0.0;
    let mut count = 0u32;
    for &(x, y) in &pts[1..] {
        let d = x * c + y * s - line.rho;
        near |= d.abs() <= tol;
        let positive = d > 0.0;
        // wrapping_add keeps the loop free of overflow checks in debug builds
        count = count.wrapping_add((positive != prev) as u32);
        prev = positive;
    }
    if near {
        Crossings::Degenerate
    } else {
        Crossings::Count(count)
    }
}

/// Centre and radius of the disk from which lines are proposed: the
/// bounding-box centre and slightly more than its half-diagonal.
pub fn proposal_disk(path: &LatticePath) -> ((f64, f64), f64) {
    let b = bounding_box(path);
    let center = (
        (b.min.x + b.max.x) as f64 / 2.0,
        (b.min.y + b.max.y) as f64 / 2.0,
    );
    let half_diag = (b.width() as f64).hypot(b.height() as f64) / 2.0;
    (center, half_diag * DISK_INFLATION)
}

/// Empirical distribution of crossing counts over accepted lines.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CrossingHistogram {
    pub counts: BTreeMap<u32, u64>,
    pub total_samples: u64,
    /// Proposals rejected because a vertex lay on the line.
    pub degenerate_resamples: u64,
    /// Proposals rejected because the line missed the path.
    pub missed_lines: u64,
}

impl CrossingHistogram {
    pub fn from_counts(counts: BTreeMap<u32, u64>) -> Self {
        let total_samples = counts.values().sum();
        CrossingHistogram {
            counts,
            total_samples,
            ..Default::default()
        }
    }

    pub fn attempts(&self) -> u64 {
        self.total_samples + self.degenerate_resamples + self.missed_lines
    }

    pub fn probability(&self, j: u32) -> f64 {
        self.counts.get(&j).copied().unwrap_or(0) as f64 / self.total_samples as f64
    }

    /// `(j, count, probability)` rows in ascending `j`.
    pub fn rows(&self) -> impl Iterator<Item = (u32, u64, f64)> + '_ {
        let total = self.total_samples as f64;
        self.counts
            .iter()
            .map(move |(&j, &c)| (j, c, c as f64 / total))
    }

    fn merge(&mut self, other: &CrossingHistogram) {
        for (&j, &c) in &other.counts {
            *self.counts.entry(j).or_insert(0) += c;
        }
        self.total_samples += other.total_samples;
        self.degenerate_resamples += other.degenerate_resamples;
        self.missed_lines += other.missed_lines;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CroftonEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
    pub analytic_mean: f64,
}

#[derive(Default)]
struct BlockTally {
    hist: CrossingHistogram,
    sum: u64,
    sum_sq: u128,
}

fn run_block(
    pts: &[(f64, f64)],
    center: (f64, f64),
    radius: f64,
    tol: f64,
    seed: u64,
    block: u64,
    accepted: u64,
) -> Result<BlockTally> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    let mut tally = BlockTally::default();
    let mut consecutive = 0u64;
    while tally.hist.total_samples < accepted {
        let line = sample_line(&mut rng, center, radius);
        match count_crossings(line, pts, tol) {
            Crossings::Count(j) if j > 0 => {
                *tally.hist.counts.entry(j).or_insert(0) += 1;
                tally.hist.total_samples += 1;
                tally.sum += j as u64;
                tally.sum_sq += (j as u128) * (j as u128);
                consecutive = 0;
                continue;
            }
            Crossings::Count(_) => tally.hist.missed_lines += 1,
            Crossings::Degenerate => tally.hist.degenerate_resamples += 1,
        }
        consecutive += 1;
        if consecutive > MAX_CONSECUTIVE_REJECTIONS {
            return Err(Error::ResampleOverrun(consecutive));
        }
    }
    Ok(tally)
}

/// Monte Carlo estimate of the mean crossing count over `samples` accepted
/// lines, with the full crossing histogram.
///
/// With the `parallel` feature, blocks run on the current rayon pool.
pub fn estimate_crossings(
    path: &LatticePath,
    samples: u64,
    seed: u64,
) -> Result<(CroftonEstimate, CrossingHistogram)> {
    if samples < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            min: MIN_SAMPLES,
            got: samples,
        });
    }
    let analytic = analytic_mean(path)?;
    let pts: Vec<(f64, f64)> = path
        .vertices()
        .iter()
        .map(|p| (p.x as f64, p.y as f64))
        .collect();
    let (center, radius) = proposal_disk(path);
    let tol = RELATIVE_TOLERANCE * radius;

    let blocks = samples.div_ceil(BLOCK_SIZE);
    let block_len = |b: u64| BLOCK_SIZE.min(samples - b * BLOCK_SIZE);
    let run = |b: u64| run_block(&pts, center, radius, tol, seed, b, block_len(b));

    #[cfg(feature = "parallel")]
    let tallies: Vec<Result<BlockTally>> = {
        use rayon::prelude::*;
        (0..blocks).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let tallies: Vec<Result<BlockTally>> = (0..blocks).map(run).collect();

    let mut hist = CrossingHistogram::default();
    let (mut sum, mut sum_sq) = (0u128, 0u128);
    for tally in tallies {
        let tally = tally?;
        hist.merge(&tally.hist);
        sum += tally.sum as u128;
        sum_sq += tally.sum_sq;
    }

    let n = hist.total_samples as u128;
    let mean = sum as f64 / n as f64;
    // n Σj² − (Σj)² is exact in integers.
    let spread = n * sum_sq - sum * sum;
    let variance = spread as f64 / (n as f64 * (n - 1) as f64);
    let stderr = (variance / n as f64).sqrt();
    Ok((
        CroftonEstimate {
            mean,
            stderr,
            samples: hist.total_samples,
            analytic_mean: analytic,
        },
        hist,
    ))
}

/// `2 L / |∂K|`, with `L` the path length and `K` the convex hull of its
/// vertices.
pub fn analytic_mean(path: &LatticePath) -> Result<f64> {
    let hull = convex_hull(path.vertices())?;
    let per = perimeter(&hull);
    if per == 0.0 {
        return Err(Error::DegenerateHull);
    }
    Ok(2.0 * path.segment_count() as f64 / per)
}

/// Plug-in entropy `-Σ p_j ln p_j` in nats.
pub fn crossing_entropy(hist: &CrossingHistogram) -> Result<f64> {
    if hist.total_samples == 0 {
        return Err(Error::EmptyHistogram);
    }
    Ok(entropy_of_counts(
        hist.counts.values().copied(),
        hist.total_samples,
    ))
}

fn entropy_of_counts(counts: impl Iterator<Item = u64>, total: u64) -> f64 {
    let total = total as f64;
    -counts
        .filter(|&c| c > 0)
        .map(|c| {
            let p = c as f64 / total;
            p * p.ln()
        })
        .sum::<f64>()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyEstimate {
    pub entropy: f64,
    pub bootstrap_sigma: f64,
    pub resamples: usize,
}

/// Plug-in entropy with a nonparametric bootstrap standard deviation: the
/// histogram is resampled multinomially `resamples` times.
pub fn bootstrap_entropy(
    hist: &CrossingHistogram,
    resamples: usize,
    seed: u64,
) -> Result<EntropyEstimate> {
    let entropy = crossing_entropy(hist)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(BOOTSTRAP_STREAM);

    let mut cumulative = Vec::with_capacity(hist.counts.len());
    let mut acc = 0u64;
    for &c in hist.counts.values() {
        acc += c;
        cumulative.push(acc);
    }
    let total = hist.total_samples;
    let mut draws = vec![0u64; cumulative.len()];
    let mut values = Vec::with_capacity(resamples);
    for _ in 0..resamples {
        draws.iter_mut().for_each(|d| *d = 0);
        for _ in 0..total {
            let u = rng.random_range(0..total);
            let slot = cumulative.partition_point(|&c| c <= u);
            draws[slot] += 1;
        }
        values.push(entropy_of_counts(draws.iter().copied(), total));
    }
    let bootstrap_sigma = if resamples > 1 {
        let m = values.iter().sum::<f64>() / resamples as f64;
        let var = values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (resamples - 1) as f64;
        var.sqrt()
    } else {
        0.0
    };
    Ok(EntropyEstimate {
        entropy,
        bootstrap_sigma,
        resamples,
    })
}

/// Upper bound on the crossing entropy of a curve of length `length` whose
/// hull has perimeter `hull_perimeter`:
///
/// `ln N + (1 - 1/N) ln(N / (N - 1))` with `N = 2 length / hull_perimeter`.
pub fn entropy_bound(length: f64, hull_perimeter: f64) -> Result<f64> {
    if hull_perimeter.is_nan() || hull_perimeter <= 0.0 || hull_perimeter > 2.0 * length {
        return Err(Error::BoundDomain {
            length,
            perimeter: hull_perimeter,
        });
    }
    let n = 2.0 * length / hull_perimeter;
    // x = 1 - 1/N; the second term is -x ln x, which vanishes at x = 0.
    let x = 1.0 - hull_perimeter / (2.0 * length);
    let tail = if x > 0.0 { -x * x.ln() } else { 0.0 };
    Ok(n.ln() + tail)
}

/// `a r^n` with `r` = [`growth_rate`].
pub fn asymptotic_model(n: u32, a: f64) -> f64 {
    a * growth_rate().powi(n as i32)
}
