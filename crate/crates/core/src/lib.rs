//! Gallai colorings, Ramsey-type searches and the critical constructions
//! behind star-critical Gallai-Ramsey numbers.

pub mod bitset;
pub mod canon;
pub mod certificate;
pub mod coloring;
pub mod constructions;
pub mod detect;
pub mod error;
pub mod gallai;
pub mod search;
pub mod target;

pub use certificate::{Certificate, Counts, Verdicts};
pub use coloring::{Color, EdgeColoring, HostGraph};
pub use detect::{find_monochromatic, find_rainbow_triangle, Embedding};
pub use error::{Error, Result};
pub use gallai::GallaiPartition;
pub use search::{SearchConfig, SearchProblem, SearchResult, SearchStats, TargetSet};
pub use target::{classify_target, Family, TargetGraph, TargetProfile};
