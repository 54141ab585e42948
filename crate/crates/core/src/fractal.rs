//! Normalized snowflakes and box-counting dimension.

use serde::Serialize;

use crate::turtle::{bounding_box, LatticePath};
use crate::words::pell;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RealPoint {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct RealPath {
    vertices: Vec<RealPoint>,
}

impl RealPath {
    pub fn new(vertices: Vec<RealPoint>) -> Self {
        RealPath { vertices }
    }

    pub fn vertices(&self) -> &[RealPoint] {
        &self.vertices
    }

    /// Longest segment length.
    pub fn max_segment_length(&self) -> f64 {
        self.vertices
            .windows(2)
            .map(|w| (w[1].x - w[0].x).hypot(w[1].y - w[0].y))
            .fold(0.0, f64::max)
    }

    /// Mirror image `x -> 1 - x` inside the unit square.
    pub fn reflect_unit_x(&self) -> RealPath {
        RealPath {
            vertices: self
                .vertices
                .iter()
                .map(|p| RealPoint {
                    x: 1.0 - p.x,
                    y: p.y,
                })
                .collect(),
        }
    }
}

/// Translates the bounding box of the order-`n` snowflake to the origin and
/// scales by `1 / (2 P(n+1) - 1)`.
pub fn normalize_snowflake(path: &LatticePath, n: u32) -> Result<RealPath> {
    let b = bounding_box(path);
    let side = 2 * pell(n + 1) as i64 - 1;
    if b.width() != side || b.height() != side {
        return Err(Error::SideMismatch {
            width: b.width(),
            height: b.height(),
            expected: side,
        });
    }
    let scale = side as f64;
    let vertices = path
        .vertices()
        .iter()
        .map(|p| RealPoint {
            x: (p.x - b.min.x) as f64 / scale,
            y: (p.y - b.min.y) as f64 / scale,
        })
        .collect();
    Ok(RealPath { vertices })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoxCount {
    pub k: u32,
    pub epsilon: f64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoxCountSeries {
    pub entries: Vec<BoxCount>,
}

/// Largest `k` with `2^-k >= 4 × (longest segment)`.
pub fn max_admissible_k(path: &RealPath) -> u32 {
    let seg = path.max_segment_length();
    if seg <= 0.0 {
        return 0;
    }
    let mut k = 0;
    while (0.5f64).powi(k as i32 + 1) >= 4.0 * seg {
        k += 1;
    }
    k
}

/// Half-open cell index of `v` on a grid of `cells` cells over `[0, 1)`, with
/// the closing edge `v = 1` clamped into the last cell.
fn cell(v: f64, cells: u64) -> u64 {
    ((v * cells as f64).floor().max(0.0) as u64).min(cells - 1)
}

fn count_boxes(path: &RealPath, k: u32) -> Result<u64> {
    let cells = 1u64 << k;
    let mut touched: Vec<u64> = Vec::new();
    for (index, w) in path.vertices().windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        if a.y == b.y {
            let row = cell(a.y, cells);
            let (lo, hi) = (cell(a.x.min(b.x), cells), cell(a.x.max(b.x), cells));
            touched.extend((lo..=hi).map(|col| row * cells + col));
        } else if a.x == b.x {
            let col = cell(a.x, cells);
            let (lo, hi) = (cell(a.y.min(b.y), cells), cell(a.y.max(b.y), cells));
            touched.extend((lo..=hi).map(|row| row * cells + col));
        } else {
            return Err(Error::NotAxisAligned { index });
        }
    }
    touched.sort_unstable();
    touched.dedup();
    Ok(touched.len() as u64)
}

/// Cells of the dyadic `2^k × 2^k` grid on the unit square touched by the
/// path, for each `k` in `k_min..=k_max`.
pub fn box_count_series(path: &RealPath, k_min: u32, k_max: u32) -> Result<BoxCountSeries> {
    if k_min < 1 || k_min > k_max || k_max > 31 {
        return Err(Error::InvalidScaleRange { k_min, k_max });
    }
    let admissible = max_admissible_k(path);
    if k_max > admissible {
        return Err(Error::ScaleFloor { k_max, admissible });
    }
    let run = |k: u32| -> Result<BoxCount> {
        Ok(BoxCount {
            k,
            epsilon: (0.5f64).powi(k as i32),
            count: count_boxes(path, k)?,
        })
    };
    #[cfg(feature = "parallel")]
    let entries = {
        use rayon::prelude::*;
        (k_min..=k_max)
            .into_par_iter()
            .map(run)
            .collect::<Result<Vec<_>>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let entries = (k_min..=k_max).map(run).collect::<Result<Vec<_>>>()?;
    Ok(BoxCountSeries { entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimensionFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub k_range: (u32, u32),
}

/// Least-squares slope of `ln count` against `ln 2^k`.
pub fn estimate_dimension(series: &BoxCountSeries) -> Result<DimensionFit> {
    let e = &series.entries;
    if e.len() < 3 {
        return Err(Error::TooFewScales(e.len()));
    }
    let xs: Vec<f64> = e.iter().map(|b| b.k as f64 * 2f64.ln()).collect();
    let ys: Vec<f64> = e.iter().map(|b| (b.count as f64).ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0)
    };
    Ok(DimensionFit {
        slope,
        intercept,
        r_squared,
        k_range: (e[0].k, e[e.len() - 1].k),
    })
}

/// `ln(2 + √5) / ln(1 + √2)`.
pub fn theoretical_dimension() -> f64 {
    (2.0 + 5f64.sqrt()).ln() / (1.0 + 2f64.sqrt()).ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::turtle::snowflake_path;

    fn synthetic(base: u64, ks: std::ops::RangeInclusive<u32>) -> BoxCountSeries {
        BoxCountSeries {
            entries: ks
                .map(|k| BoxCount {
                    k,
                    epsilon: (0.5f64).powi(k as i32),
                    count: base.pow(k),
                })
                .collect(),
        }
    }

    #[test]
    fn normalized_order_zero_and_one() {
        let p0 = normalize_snowflake(&snowflake_path(0).unwrap(), 0).unwrap();
        let mut corners: Vec<(f64, f64)> = p0.vertices()[..4].iter().map(|p| (p.x, p.y)).collect();
        corners.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(
            corners,
            vec![(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]
        );
        assert_eq!(p0.vertices()[0], p0.vertices()[4]);

        let p1 = normalize_snowflake(&snowflake_path(1).unwrap(), 1).unwrap();
        // (3, 1) in the trace, min corner (0, -1).
        assert_eq!(
            p1.vertices()[6],
            RealPoint {
                x: 1.0,
                y: 2.0 / 3.0
            }
        );
    }

    #[test]
    fn side_mismatch_is_an_error() {
        let p1 = snowflake_path(1).unwrap();
        assert!(matches!(
            normalize_snowflake(&p1, 2),
            Err(Error::SideMismatch { expected: 9, .. })
        ));
    }

    #[test]
    fn unit_square_box_counts() {
        let p0 = normalize_snowflake(&snowflake_path(0).unwrap(), 0).unwrap();
        // The unit square has segment length 1, so bypass the scale floor.
        assert_eq!(count_boxes(&p0, 1).unwrap(), 4);
        assert_eq!(count_boxes(&p0, 2).unwrap(), 12);
        assert!(matches!(
            box_count_series(&p0, 1, 2),
            Err(Error::ScaleFloor { admissible: 0, .. })
        ));
    }

    #[test]
    fn scale_range_validation() {
        let p = normalize_snowflake(&snowflake_path(5).unwrap(), 5).unwrap();
        // side 139: 2^-k >= 4/139 for k <= 5
        assert_eq!(max_admissible_k(&p), 5);
        assert!(box_count_series(&p, 0, 3).is_err());
        assert!(box_count_series(&p, 4, 3).is_err());
        assert_eq!(box_count_series(&p, 1, 5).unwrap().entries.len(), 5);
    }

    #[test]
    fn synthetic_slopes_are_exact() {
        let line = estimate_dimension(&synthetic(2, 1..=10)).unwrap();
        assert!((line.slope - 1.0).abs() < 1e-9);
        assert!((line.r_squared - 1.0).abs() < 1e-9);
        let plane = estimate_dimension(&synthetic(4, 2..=9)).unwrap();
        assert!((plane.slope - 2.0).abs() < 1e-9);
        assert_eq!(plane.k_range, (2, 9));
        assert_eq!(
            estimate_dimension(&synthetic(2, 1..=2)),
            Err(Error::TooFewScales(2))
        );
    }

    #[test]
    fn theoretical_value() {
        let d = theoretical_dimension();
        assert!((d - 1.637938210).abs() < 5e-10);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(((2.0 + 5f64.sqrt()).ln() - 3.0 * phi.ln()).abs() < 1e-12);
        assert!(d > 1.0 && d < 2.0);
    }
}
