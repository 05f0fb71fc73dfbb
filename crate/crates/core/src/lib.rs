//! Multi-dimensional signal mappings for BICM-ID over Rayleigh fading.
//!
//! An `mN`-bit label is sent as a vector of `N` symbols drawn from a 2-D
//! constellation. The mapping is assembled from four 2-D functions: two
//! half mappings for the first symbol and two full mappings for the rest,
//! with the label parity choosing between the even and odd families.
//!
//! - [`constellation`]: PSK, square, cross and optimum 8-QAM signal sets.
//! - [`mapping`]: labels, the 2-D component mappings, the assembled
//!   [`MdMapping`](mapping::MdMapping) and the text file format.
//! - [`metrics`]: harmonic mean of the minimum squared distance (before and
//!   after feedback), the 2-D cost functions and their lower bound.
//! - [`optimizer`]: alternating binary switching search over the 2-D parts.
//! - [`sim`]: convolutional code, BCJR, demapper, Monte-Carlo BER and EXIT.
//! - [`fixtures`]: the published mapping tables.

pub mod constellation;
pub mod error;
pub mod fixtures;
pub mod mapping;
pub mod metrics;
pub mod optimizer;
pub mod sim;

pub use constellation::{Constellation, ConstellationKind};
pub use error::{Error, Result};
pub use mapping::{Label, MdMapping, Parity, VectorLabeling};
pub use metrics::MetricReport;
