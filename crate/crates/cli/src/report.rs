//! Report records. Every numeric field is a `{ "value", "unit" }` pair and
//! the run configuration is embedded, so a report can be reproduced from
//! itself.

use std::f64::consts::SQRT_2;

use anyhow::{bail, Context, Result};
use fibsnow_core::crofton::{
    self, bootstrap_entropy, entropy_bound, estimate_crossings, CrossingHistogram,
    BOOTSTRAP_RESAMPLES,
};
use fibsnow_core::fractal::{
    box_count_series, estimate_dimension, max_admissible_k, normalize_snowflake,
    theoretical_dimension, BoxCountSeries, DimensionFit,
};
use fibsnow_core::hull::{convex_hull, diameter, perimeter};
use fibsnow_core::turtle::{bounding_box, classify, snowflake_path, LatticePath};
use fibsnow_core::words::{fib_length, pell, snowflake_word};
use serde::Serialize;

pub const DEFAULT_SAMPLES: u64 = 200_000;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_K_MIN: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quantity<T> {
    pub value: T,
    pub unit: &'static str,
}

fn q<T>(value: T, unit: &'static str) -> Quantity<T> {
    Quantity { value, unit }
}

const SEGMENTS: &str = "unit segments";
const LATTICE: &str = "lattice units";
const CROSSINGS: &str = "crossings";
const NATS: &str = "nats";
const LINES: &str = "lines";
const ONE: &str = "dimensionless";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Settings shared by the analysis subcommands. Thread count and output path
/// are deliberately absent: neither may influence report contents.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub order: u32,
    pub samples: u64,
    pub seed: u64,
    pub k_min: u32,
    /// `None` selects the largest admissible scale per order.
    pub k_max: Option<u32>,
    pub format: Format,
    pub bootstrap_resamples: usize,
}

impl RunConfig {
    pub fn new(order: u32) -> Self {
        RunConfig {
            order,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            k_min: DEFAULT_K_MIN,
            k_max: None,
            format: Format::Json,
            bootstrap_resamples: BOOTSTRAP_RESAMPLES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramRow {
    pub j: u32,
    pub count: u64,
    pub probability: f64,
}

pub fn histogram_rows(hist: &CrossingHistogram) -> Vec<HistogramRow> {
    hist.rows()
        .map(|(j, count, probability)| HistogramRow {
            j,
            count,
            probability,
        })
        .collect()
}

/// `j,count,probability` with rows ascending in `j`.
pub fn histogram_csv(hist: &CrossingHistogram) -> String {
    let mut out = String::from("j,count,probability\n");
    for (j, count, p) in hist.rows() {
        out.push_str(&format!("{j},{count},{p}\n"));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CroftonSummary {
    pub segments: Quantity<u64>,
    pub hull_perimeter: Quantity<f64>,
    pub analytic_mean: Quantity<f64>,
    pub mc_mean: Quantity<f64>,
    pub mc_stderr: Quantity<f64>,
    pub samples: Quantity<u64>,
    pub degenerate_resamples: Quantity<u64>,
    pub missed_lines: Quantity<u64>,
    pub entropy: Quantity<f64>,
    pub entropy_bootstrap_sigma: Quantity<f64>,
    pub entropy_bound: Quantity<f64>,
    pub histogram: Vec<HistogramRow>,
    #[serde(skip)]
    pub raw_histogram: CrossingHistogram,
}

pub fn crofton_summary(
    path: &LatticePath,
    samples: u64,
    seed: u64,
    resamples: usize,
) -> Result<CroftonSummary> {
    let (est, hist) = estimate_crossings(path, samples, seed)?;
    let entropy = bootstrap_entropy(&hist, resamples, seed)?;
    let per = perimeter(&convex_hull(path.vertices())?);
    let length = path.segment_count() as f64;
    let bound = entropy_bound(length, per)?;
    Ok(CroftonSummary {
        segments: q(path.segment_count() as u64, SEGMENTS),
        hull_perimeter: q(per, LATTICE),
        analytic_mean: q(est.analytic_mean, CROSSINGS),
        mc_mean: q(est.mean, CROSSINGS),
        mc_stderr: q(est.stderr, CROSSINGS),
        samples: q(est.samples, LINES),
        degenerate_resamples: q(hist.degenerate_resamples, LINES),
        missed_lines: q(hist.missed_lines, LINES),
        entropy: q(entropy.entropy, NATS),
        entropy_bootstrap_sigma: q(entropy.bootstrap_sigma, NATS),
        entropy_bound: q(bound, NATS),
        histogram: histogram_rows(&hist),
        raw_histogram: hist,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoxDimSummary {
    pub order: u32,
    pub series: BoxCountSeries,
    pub fit: DimensionFit,
    pub theoretical_dimension: Quantity<f64>,
    pub deviation: Quantity<f64>,
}

/// Box-count series of the normalized order-`n` snowflake and its fit.
/// `k_max = None` uses the largest scale above the floor.
pub fn boxdim_summary(n: u32, k_min: u32, k_max: Option<u32>) -> Result<BoxDimSummary> {
    let path = snowflake_path(n)?;
    let normalized = normalize_snowflake(&path, n)?;
    let k_max = k_max.unwrap_or_else(|| max_admissible_k(&normalized));
    let series = box_count_series(&normalized, k_min, k_max)?;
    let fit = estimate_dimension(&series)
        .with_context(|| format!("order {n} admits scales {k_min}..={k_max} only"))?;
    let d = theoretical_dimension();
    Ok(BoxDimSummary {
        order: n,
        series,
        fit,
        theoretical_dimension: q(d, ONE),
        deviation: q(fit.slope - d, ONE),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyRow {
    pub order: u32,
    pub word_length: u64,
    pub segments: u64,
    pub expected_segments: u64,
    pub closed: bool,
    pub non_intersecting: bool,
    pub box_width: i64,
    pub box_height: i64,
    pub pell_side: i64,
}

impl VerifyRow {
    pub fn passes(&self) -> bool {
        self.segments == self.expected_segments
            && self.word_length + 1 == self.segments
            && self.closed
            && self.non_intersecting
            && self.box_width == self.pell_side
            && self.box_height == self.pell_side
    }
}

pub fn verify_order(n: u32) -> Result<VerifyRow> {
    let word = snowflake_word(n)?;
    let path = fibsnow_core::turtle::trace(&word);
    let class = classify(&path);
    let b = bounding_box(&path);
    Ok(VerifyRow {
        order: n,
        word_length: word.len() as u64,
        segments: path.segment_count() as u64,
        expected_segments: 4 * fib_length(3 * n + 1),
        closed: class.closed,
        non_intersecting: class.non_intersecting,
        box_width: b.width(),
        box_height: b.height(),
        pell_side: 2 * pell(n + 1) as i64 - 1,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderRecord {
    pub order: u32,
    pub word_length: Quantity<u64>,
    pub path_length: Quantity<u64>,
    pub expected_path_length: Quantity<u64>,
    pub closed: bool,
    pub non_intersecting: bool,
    pub bounding_box_side: Quantity<i64>,
    pub pell_side: Quantity<i64>,
    pub pell_check: bool,
    pub hull_perimeter: Quantity<f64>,
    /// `|∂K_n| / (1 + √2)^n`.
    pub hull_perimeter_scaled: Quantity<f64>,
    pub diameter: Quantity<f64>,
    pub analytic_mean: Quantity<f64>,
    /// `2 · 2|q_{3n+1}| / |∂K_n|`, half the general identity.
    pub quoted_display_mean: Quantity<f64>,
    /// `N_n / r^n` with `r = (2 + √5) / (1 + √2)`.
    pub mean_prefactor: Quantity<f64>,
    /// `N_n / N_{n-1}`; absent at order 0.
    pub mean_growth_ratio: Option<Quantity<f64>>,
    pub mc_mean: Quantity<f64>,
    pub mc_stderr: Quantity<f64>,
    pub samples: Quantity<u64>,
    pub degenerate_resamples: Quantity<u64>,
    pub missed_lines: Quantity<u64>,
    pub histogram: Vec<HistogramRow>,
    pub entropy: Quantity<f64>,
    pub entropy_bootstrap_sigma: Quantity<f64>,
    pub entropy_bound: Quantity<f64>,
    /// `h_n / n`; absent at order 0.
    pub entropy_per_order: Option<Quantity<f64>>,
    /// Absent when fewer than three scales are admissible.
    pub dimension: Option<BoxDimSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theory {
    pub dimension: Quantity<f64>,
    pub growth_rate: Quantity<f64>,
    pub quoted_prefactor: Quantity<f64>,
    pub entropy_rate_bound: Quantity<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub generator: &'static str,
    pub config: RunConfig,
    pub theory: Theory,
    pub orders: Vec<OrderRecord>,
}

fn order_record(n: u32, config: &RunConfig, prev_mean: Option<f64>) -> Result<OrderRecord> {
    let row = verify_order(n)?;
    let path = snowflake_path(n)?;
    let hull = convex_hull(path.vertices())?;
    let per = perimeter(&hull);
    let r = crofton::growth_rate();
    // Decorrelate orders while keeping a single user-facing seed.
    let seed = config.seed.wrapping_add(n as u64);
    let c = crofton_summary(&path, config.samples, seed, config.bootstrap_resamples)?;
    let mean = c.analytic_mean.value;

    // A requested k_max is capped at each order's own scale floor.
    let admissible = max_admissible_k(&normalize_snowflake(&path, n)?);
    let k_max = config.k_max.map_or(admissible, |k| k.min(admissible));
    let dimension = if k_max >= config.k_min && k_max - config.k_min + 1 >= 3 {
        Some(boxdim_summary(n, config.k_min, Some(k_max))?)
    } else {
        None
    };

    Ok(OrderRecord {
        order: n,
        word_length: q(row.word_length, "letters"),
        path_length: q(row.segments, SEGMENTS),
        expected_path_length: q(row.expected_segments, SEGMENTS),
        closed: row.closed,
        non_intersecting: row.non_intersecting,
        bounding_box_side: q(row.box_width.max(row.box_height), LATTICE),
        pell_side: q(row.pell_side, LATTICE),
        pell_check: row.box_width == row.pell_side && row.box_height == row.pell_side,
        hull_perimeter: q(per, LATTICE),
        hull_perimeter_scaled: q(per / (1.0 + SQRT_2).powi(n as i32), LATTICE),
        diameter: q(diameter(&hull), LATTICE),
        analytic_mean: c.analytic_mean,
        quoted_display_mean: q(4.0 * fib_length(3 * n + 1) as f64 / per, CROSSINGS),
        mean_prefactor: q(mean / r.powi(n as i32), CROSSINGS),
        mean_growth_ratio: prev_mean.map(|p| q(mean / p, ONE)),
        mc_mean: c.mc_mean,
        mc_stderr: c.mc_stderr,
        samples: c.samples,
        degenerate_resamples: c.degenerate_resamples,
        missed_lines: c.missed_lines,
        histogram: c.histogram,
        entropy: c.entropy,
        entropy_bootstrap_sigma: c.entropy_bootstrap_sigma,
        entropy_bound: c.entropy_bound,
        entropy_per_order: (n > 0).then(|| q(c.entropy.value / n as f64, NATS)),
        dimension,
    })
}

/// Full report over orders `0..=config.order`.
pub fn build_report(config: &RunConfig) -> Result<Report> {
    if config.k_min < 1 {
        bail!("--kmin must be at least 1");
    }
    let mut orders = Vec::with_capacity(config.order as usize + 1);
    let mut prev = None;
    for n in 0..=config.order {
        let record = order_record(n, config, prev)?;
        prev = Some(record.analytic_mean.value);
        orders.push(record);
    }
    Ok(Report {
        generator: concat!("fibsnow ", env!("CARGO_PKG_VERSION")),
        config: config.clone(),
        theory: Theory {
            dimension: q(theoretical_dimension(), ONE),
            growth_rate: q(crofton::growth_rate(), ONE),
            quoted_prefactor: q(crofton::quoted_prefactor(), CROSSINGS),
            entropy_rate_bound: q(crofton::growth_rate().ln(), NATS),
        },
        orders,
    })
}
