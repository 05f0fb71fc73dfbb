//! Labels, 2-D component mappings and the assembled multi-dimensional
//! mapping.

mod component;
mod file;
mod label;
mod md;
mod verify;

pub use component::{FullMapping2D, HalfMapping2D};
pub use file::{parse_mapping_file, serialize_mapping_file};
pub use label::{hamming_distance, hamming_weight, parity, Label, Parity, MAX_LABEL_BITS};
pub use md::{MdMapping, MdParts, VectorLabeling, ENUMERATION_LIMIT};
pub use verify::{check_propositions, check_propositions_with_limit, PropositionReport};

/// Parses and validates a mapping file in one step.
pub fn load_mapping(text: &str) -> crate::Result<MdMapping> {
    MdMapping::new(parse_mapping_file(text)?)
}
