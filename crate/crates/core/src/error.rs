use thiserror::Error;

use crate::search::SearchStats;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("host edge {0}-{1} has no color")]
    MissingEdge(usize, usize),
    #[error("edge {0}-{1} colored more than once")]
    DuplicateEdge(usize, usize),
    #[error("color {color} outside [1, {k}]")]
    ColorOutOfRange { color: u8, k: u8 },
    #[error("edge {0}-{1} is not an edge of the host")]
    EdgeNotInHost(usize, usize),
    #[error("invalid host: {0}")]
    InvalidHost(String),
    #[error("target graph is disconnected")]
    Disconnected,
    #[error("graph on {n} vertices exceeds the configured bound {bound}")]
    TooLarge { n: usize, bound: usize },
    #[error("not a partition of the vertex set: {0}")]
    NotAPartition(String),
    #[error("coloring contains a rainbow triangle {0:?}")]
    RainbowTrianglePresent([usize; 3]),
    #[error("partition is not a Gallai partition of the coloring")]
    InvalidPartition,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("bad inner rule: {0}")]
    BadInnerRule(String),
    #[error("bad inner specification: {0}")]
    BadInnerSpec(String),
    #[error("color ranges do not fit a common palette: {0}")]
    ColorRangeMismatch(String),
    #[error("critical input rejected: {0}")]
    BadCritical(String),
    #[error("target is not bipartite")]
    NotBipartite,
    #[error("target is bipartite")]
    NotNonBipartite,
    #[error("input is bipartite; merges are defined for non-bipartite graphs")]
    BipartiteInput,
    #[error("construction failed verification: {0}")]
    VerdictFailed(String),
    #[error("search budget exceeded after {} nodes", .stats.nodes)]
    BudgetExceeded { stats: SearchStats },
    #[error("no value found up to the bound {0}")]
    NotFoundWithinBound(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
