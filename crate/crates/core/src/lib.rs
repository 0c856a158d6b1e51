//! Simple games with a unique minimal winning vector ("games with minimum").
//!
//! The crate counts non-isomorphic games with minimum by three independent
//! routes (Pólya substitution into the cycle index of the symmetric group,
//! a recursion in the number of classes, and direct enumeration of
//! canonical representations), builds the games explicitly to validate the
//! parameterization, and computes their dimension together with a
//! checkable certificate.
//!
//! Class and player indices are 0-based throughout.

pub mod catalog;
pub mod counting;
pub mod dimension;
pub mod error;
pub mod games;
pub mod oracle;
pub mod polya;
pub mod series;

pub use catalog::{canonicalize, enumerate_proper, is_proper, ProperRepresentation, Violation};
pub use counting::{count_all, count_nnnv, max_classes, total_all, total_nnnv, Count, Method};
pub use dimension::{decompose, dimension_of, verify_certificate, DimensionCertificate};
pub use error::{Error, Result};
pub use games::{CoalitionVector, Desirability, ExplicitGame, GameSpec, WeightedGame};

/// Which special player kinds a count or enumeration may include.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Allow {
    pub null: bool,
    pub veto: bool,
}

impl Allow {
    pub const ALL: Allow = Allow { null: true, veto: true };
    pub const NONE: Allow = Allow { null: false, veto: false };
    pub const NULL_ONLY: Allow = Allow { null: true, veto: false };
    pub const VETO_ONLY: Allow = Allow { null: false, veto: true };

    pub fn combinations() -> [Allow; 4] {
        [Allow::NONE, Allow::NULL_ONLY, Allow::VETO_ONLY, Allow::ALL]
    }
}
