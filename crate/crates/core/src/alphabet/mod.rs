//! Alphabets, symbol strings, distributions and equiprobable classes.
//!
//! For an i.i.d. source every string with the same symbol counts has the same
//! probability, so the set of strings sharing a [`Composition`] is the natural
//! unit for every exact check in this crate.

mod composition;
mod distribution;
mod multiset;
mod string;

pub use composition::{
    class_probability, class_size, composition_of, compositions, enumerate_class, ClassIter,
    Composition, Compositions, MAX_ENUMERATION_LENGTH,
};
pub use distribution::Distribution;
pub use multiset::{
    extracting_violation, is_extracting_multiset, MultisetViolation, OutputMultiset,
};
pub(crate) use string::digits_to_string;
pub use string::SymbolString;
