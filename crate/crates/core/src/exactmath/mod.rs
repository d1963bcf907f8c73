//! Exact arithmetic and partition / symmetric-function combinatorics.

mod cyc;
mod partition;
mod rat;
mod symfun;

pub use cyc::Cyc;
pub use partition::{partition_maps, partitions_of, Partition, PartitionMap};
pub use rat::{binomial, factorial, format_rat, multiset_number, parse_rat, rat, rat_int, Rat};
pub use symfun::{
    littlewood_richardson, lr_expand, multisym_mul, schur_eval_ones, ssyt_count, MultiSymElem,
    SymElem,
};
