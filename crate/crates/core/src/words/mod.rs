//! Free-group words over hyperplane generators, monic commutators, the Stanford
//! decomposition and the map into the product of local groups.

mod commutator;
mod kernel;
mod local;
mod stanford;
mod word;

pub use commutator::MonicCommutator;
pub use kernel::{enumerate_kernel_generators, is_transverse, DEFAULT_MAX_WEIGHT};
pub use local::{LocalElement, LocalModel, ProductElement, RhoModel};
pub use stanford::{
    reassemble, size_then_lex, stanford_decompose, stanford_decompose_by, stanford_decompose_factors, StanfordBlock,
    DEFAULT_COMMUTATOR_CAP,
};
pub use word::{gen_of, letter, Letter, Word};
