//! Placement delivery arrays for coded caching: validation, the Ali-Niesen
//! array and two q-ary families with low subpacketization, a byte-level
//! shared-link simulator, and closed-form comparisons.

pub mod analysis;
pub mod combinatorics;
pub mod constructions;
pub mod error;
pub mod pda;
pub mod ratio;
pub mod sim;
pub mod text;

pub use error::{Error, Result};
pub use pda::{
    Cell, Condition, Pda, PdaParams, PlacementSet, Regularity, ValidationReport, Violation,
};
pub use ratio::{MemoryRatio, Rate};
pub use sim::{
    CachingInstance, DemandVector, Detail, Library, PacketId, VerifyMode, VerifySummary,
};
pub use text::{parse_pda, write_pda};
