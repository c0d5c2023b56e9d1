//! Shapes, tableaux and Gelfand–Tsetlin patterns, with the canonical orders every
//! other module indexes by.

mod gt;
mod partition;
mod tableau;

pub use gt::{enumerate_compressed, enumerate_gt, enumerate_gt_with_weight, kostka, GtPattern};
pub use partition::{
    addable_rows, enumerate_compositions, enumerate_partitions, enumerate_weights, factorial, removable_rows,
    AlphabetMap, Composition, Partition, Weight,
};
pub use tableau::{enumerate_syt, StandardTableau};
