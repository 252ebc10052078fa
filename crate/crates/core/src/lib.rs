//! The crystal `B(∞)` embedded in integer sequences, with membership tests by linear forms.

pub mod cli;
pub mod crystal;
pub mod datum;
pub mod error;
pub mod iota;
mod json;
pub mod monster;
pub mod oracle;
pub mod polyhedral;
pub mod presets;
pub mod zinfty;

pub use datum::{pairing, validate_datum, BorcherdsCartanDatum, IndexClass, IndexId, Weight};
pub use error::{Error, Result};
pub use iota::{check_prefix_constraints, IotaSequence};
pub use monster::{monster_member, ChargeTable, MonsterConfig};
pub use zinfty::{PathVector, SequenceCrystal};
