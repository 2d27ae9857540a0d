//! Isomorph-free listing of unlabeled trees.
//!
//! Trees of order `n` are produced in steps: step `k` starts from the path on
//! `n - k` vertices (the backbone) and hangs the `k` remaining vertices off
//! it as rooted appendices, never lengthening the backbone. Every tree is
//! emitted exactly once, at the step matching its diameter.

pub mod counting;
pub mod error;
pub mod format;
pub mod graph;
pub mod halftrees;
pub mod oracle;
pub mod partition;
pub mod treeenum;

pub use error::{Error, Result};
pub use graph::{linear_tree, CanonicalForm, Center, HalfTree, Tree};
pub use halftrees::{list_halftrees, AppendixSet, Catalog, FixedOrderMultiset, HtId, Placement};
pub use partition::{cmp_partition, multichoose, partitions, Multiset, Partition};
pub use treeenum::{
    attach_middle, combine, fuse, list_trees, step_of, Audit, DecoratedBackbone, Emission,
    GeneratedSet, TreeLister,
};
