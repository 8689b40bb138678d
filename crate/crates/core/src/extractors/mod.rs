//! Base extracting functions, the recursion engine and the builtin schemes.

mod base;
mod builtin;
mod scheme;
mod unrolled;

pub use base::{
    dijkstra_base, elias, is_prime, least_rotation, rotation_orbits, von_neumann, MAX_ELIAS_LENGTH,
};
pub use builtin::{builtin, builtin_names};
pub use scheme::{ExtractionOutput, Scheme};
pub use unrolled::double_unrolled_peres2;
