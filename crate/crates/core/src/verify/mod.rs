//! Exhaustive and numeric checks of the constructions: the extracting
//! property class by class, uniformity of output nodes, the structure
//! bijection, and the component tables against reference copies.

mod extracting;
mod golden;
mod structure;
mod uniform;

pub use extracting::{check_extracting, class_multiset, ClassResult, ExtractingReport};
pub use golden::{golden_tables, GoldenReport, GoldenTable};
pub use structure::{check_structure, check_structure_on, StructureReport};
pub use uniform::{check_uniform_outputs, check_uniform_symbolic, non_uniform_outputs};
