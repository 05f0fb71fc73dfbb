//! The published mapping tables, embedded in the mapping-file format.
//!
//! All are written for `n = 2`; [`MdMapping::with_n`] gives other vector
//! lengths from the same 2-D components.

use crate::error::{Error, Result};
use crate::mapping::{load_mapping, MdMapping};

/// `(name, file contents)` for every shipped table.
pub const FIXTURES: &[(&str, &str)] = &[
    ("8psk_4d", include_str!("../fixtures/8psk_4d.map")),
    ("opt8qam_4d", include_str!("../fixtures/opt8qam_4d.map")),
    ("16qam_4d", include_str!("../fixtures/16qam_4d.map")),
    ("32qam_4d", include_str!("../fixtures/32qam_4d.map")),
    ("64qam_4d", include_str!("../fixtures/64qam_4d.map")),
    ("128qam_4d", include_str!("../fixtures/128qam_4d.map")),
    ("256qam_4d", include_str!("../fixtures/256qam_4d.map")),
    ("512qam_4d", include_str!("../fixtures/512qam_4d.map")),
    ("1024qam_4d", include_str!("../fixtures/1024qam_4d.map")),
];

pub fn fixture_text(name: &str) -> Result<&'static str> {
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::Config(format!("no fixture named `{name}`")))
}

/// Parses and validates a fixture.
pub fn fixture(name: &str) -> Result<MdMapping> {
    load_mapping(fixture_text(name)?)
}
