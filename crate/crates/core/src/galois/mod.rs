//! Galois groups of type (II) extensions and their ramification data.

pub mod additive;
pub mod characters;
pub mod conjugates;
pub mod group;
pub mod intermediate;
pub mod ramification;
pub mod tower;

pub use additive::additive_poly_oracle;
pub use characters::{characters, induce, Character1, ClassFunction, RepTerm, VirtualRep};
pub use conjugates::find_conjugates;
pub use intermediate::{fixed_field, QuotientField};
pub use group::{eval_min_poly, verify_conjugates, GaloisElement, GaloisGroup, GroupTable};
pub use ramification::{ramification_data, AbstractExtensionData, Provenance, RamificationData};
pub use tower::{Tower, TowerLevel};
