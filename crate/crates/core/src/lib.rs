//! Peres-style recursive randomness extractors.
//!
//! An extractor here is described by a *binarization tree* over fixed-length
//! blocks of source symbols. Every internal node of the tree defines a
//! component function that maps a block to the index of the subtree that
//! contains it. Nodes tagged as output nodes have a uniform branching
//! distribution for every i.i.d. source and emit their branch index directly;
//! nodes tagged as recurse nodes produce auxiliary streams that are fed back
//! into the same extractor. The von Neumann trick, the original Peres
//! algorithm, its 3- and 4-faced generalizations, Elias-based 3- and 4-bit
//! variants and Dijkstra's roulette all fit this mould and ship as builtin
//! schemes.
//!
//! Besides extraction the crate contains the exact machinery needed to check
//! these constructions: enumeration of equiprobable classes, the structure
//! bijection between a class and the product of its component images,
//! entropy identities and output-rate recursions.
//!
//! ```
//! use peres::{builtin, SymbolString};
//!
//! let scheme = builtin("peres2").unwrap();
//! let input = SymbolString::parse("100000", 2).unwrap();
//! let out = scheme.extract(&input).unwrap();
//! assert_eq!(out.to_string(), "11");
//! ```

pub mod alphabet;
pub mod analysis;
pub mod error;
pub mod extractors;
pub mod tree;
pub mod verify;

pub use alphabet::{
    class_probability, class_size, composition_of, compositions, enumerate_class,
    is_extracting_multiset, Composition, Distribution, OutputMultiset, SymbolString,
};
pub use error::{Error, Result};
pub use extractors::{builtin, builtin_names, ExtractionOutput, Scheme};
pub use tree::{BinarizationTree, ComponentTable, NodeId, Role};
