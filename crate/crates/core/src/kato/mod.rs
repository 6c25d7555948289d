//! Kato's side: symbol groups, s_G, Swan conductors with differential values and kcc.

pub mod swan;
pub mod symbol;

pub use swan::{
    central_character, cyclotomic_level, epsilon, fbar_c_chi, induction_check, integrality_check, kato_different,
    kcc, kcc_from_swan, quotient_check, relative_different, sg, sg_of, swan_diffval, swan_of, swan_parts,
    swan_rank1_closed, swan_restricted, tower_law, transit, CentralCharacter, InductionReport, IntegralityReport,
    SwanParts,
};
pub use symbol::{CanonicalSymbolForm, GradedSymbol, SymbolSum};
