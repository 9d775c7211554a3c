use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared by every module of the crate.
#[derive(Debug, Error)]
#[non_exhaustive]
pub enum Error {
    /// Class index outside the range a model is fitted for.
    #[error("class {class} is not supported here (this model covers classes {supported})")]
    UnsupportedClass { class: u8, supported: &'static str },

    /// Cluster index outside the table-backed range.
    #[error("cluster {cluster} is not supported here (expected {expected})")]
    UnsupportedCluster {
        cluster: u32,
        expected: &'static str,
    },

    #[error("frequency must be nonnegative, got {0} Hz")]
    NegativeFrequency(f64),

    /// The fitted variance curve went nonpositive (only reachable far
    /// outside the fitted cluster range).
    #[error("computed path-count variance {variance} is not positive (class {class}, cluster {cluster})")]
    NonPositiveVariance {
        class: u8,
        cluster: u32,
        variance: f64,
    },

    /// The GEV scale parameter came out nonpositive, so the distribution
    /// is undefined for this (class, cluster) cell.
    #[error("GEV scale parameter must be positive, got {scale}")]
    GevScaleNotPositive { scale: f64 },

    #[error("path distance {distance_m} m is below the {min_m} m minimum of the loss model")]
    DistanceOutOfDomain { distance_m: f64, min_m: f64 },

    #[error("interval sampler rejected {attempts} consecutive draws (truncation cap {cap})")]
    TruncationExhausted { attempts: u32, cap: f64 },

    #[error("invalid generator config: {0}")]
    InvalidConfig(String),

    #[error("invalid frequency grid: {0}")]
    Grid(String),

    #[error("sample set is empty")]
    EmptySamples,

    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
