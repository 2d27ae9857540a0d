use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid order {0}: trees need at least one vertex")]
    InvalidOrder(usize),

    #[error("not a tree: {0}")]
    NotATree(String),

    #[error("partition contains a zero part")]
    ZeroPart,

    #[error("cannot compare partitions of {0} and {1}")]
    PartitionTotalMismatch(usize, usize),

    #[error("cannot compare multisets of member orders {0} and {1}")]
    MemberOrderMismatch(usize, usize),

    #[error("cannot compare multisets of sizes {0} and {1}")]
    MultisetSizeMismatch(usize, usize),

    #[error("appendix sets come from different partitions")]
    PartitionMismatch,

    #[error("no half-trees of order {0} in the catalog")]
    MissingCatalogOrder(usize),

    #[error("half-tree is not in the catalog")]
    UnknownHalfTree,

    #[error("half-tree of order {order} emitted twice while listing")]
    DuplicateHalfTree { order: usize },

    #[error("appendix of radius {radius} cannot sit at distance {distance} from the end vertex")]
    IllegalSlot { radius: usize, distance: usize },

    #[error("position {0} does not host a terminal substituent")]
    NotTerminal(usize),

    #[error("backbone orders differ: {0} vs {1}")]
    BackboneMismatch(usize, usize),

    #[error("half-tree heights differ: {0} vs {1}")]
    HeightMismatch(usize, usize),

    #[error("middle vertex needs an odd backbone, got order {0}")]
    EvenBackbone(usize),

    #[error(
        "middle appendix of radius {radius} exceeds {limit} on backbone of order {backbone_order}"
    )]
    MiddleRadius {
        radius: usize,
        limit: usize,
        backbone_order: usize,
    },

    #[error("malformed {format} input: {reason}")]
    Parse {
        format: &'static str,
        reason: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
