use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} {requested} exceeds the configured cap of {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u32,
        cap: u32,
    },
    #[error("invalid turn letter {0:?}; expected 'L' or 'R'")]
    InvalidLetter(char),
    #[error("convex hull of an empty point set")]
    EmptyPointSet,
    #[error("hull degenerates to a single point; perimeter is zero")]
    DegenerateHull,
    #[error("at least {min} samples required, got {got}")]
    TooFewSamples { min: u64, got: u64 },
    #[error("a path needs at least two vertices")]
    PathTooShort,
    #[error("{0} consecutive sampled lines were rejected; the input looks pathological")]
    ResampleOverrun(u64),
    #[error("hull perimeter {perimeter} exceeds twice the curve length {length}")]
    BoundDomain { length: f64, perimeter: f64 },
    #[error("empty crossing histogram")]
    EmptyHistogram,
    #[error("bounding box is {width}x{height}, expected a square of side {expected}")]
    SideMismatch {
        width: i64,
        height: i64,
        expected: i64,
    },
    #[error("invalid scale range {k_min}..={k_max}")]
    InvalidScaleRange { k_min: u32, k_max: u32 },
    #[error("scale 2^-{k_max} is below the scale floor; largest admissible k is {admissible}")]
    ScaleFloor { k_max: u32, admissible: u32 },
    #[error("vertices {index} and {} are not one unit step apart", index + 1)]
    NotUnitStep { index: usize },
    #[error("segment {index} is not axis-aligned")]
    NotAxisAligned { index: usize },
    #[error("dimension fit needs at least 3 scales, got {0}")]
    TooFewScales(usize),
}
