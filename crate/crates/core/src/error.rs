use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("crossing {crossing} has {found} arcs, expected 4")]
    CrossingArity { crossing: usize, found: usize },

    #[error("crossing {crossing} is an empty tuple")]
    EmptyCrossing { crossing: usize },

    #[error("arc {arc} occurs {count} times, expected exactly 2")]
    ArcMultiplicity { arc: u32, count: usize },

    #[error("component containing crossing {first_crossing} has {crossings} crossings but {faces} faces (expected {expected}); the code is not planar")]
    NonPlanar {
        first_crossing: usize,
        crossings: usize,
        faces: usize,
        expected: usize,
    },

    #[error("face adjacency graph is not bipartite")]
    NotBipartite,

    #[error("operation requires a connected diagram with at least one crossing")]
    NotConnected,

    #[error("face {face} is not a white face")]
    RootNotWhite { face: usize },

    #[error("face {face} is not a vertex of the white graph")]
    UnknownVertex { face: usize },

    #[error("alternating diagram has non-uniform crossing signs (crossing {crossing})")]
    InconsistentSigns { crossing: usize },

    #[error("alternating component has infinite first homology")]
    InfiniteHomology,

    #[error("malformed presentation: {0}")]
    Presentation(String),

    #[error("coset budget must be at least 1")]
    ZeroBudget,
}

pub type Result<T> = std::result::Result<T, Error>;
