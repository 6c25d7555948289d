//! The local field K = F((t)) and monogenic extensions of it.

pub mod extension;
pub mod laurent;
pub mod order;

pub use extension::{default_precision, u_coordinates, ExtensionSpec};
pub use laurent::{laurent_valuation, LaurentSeries, EXACT};
pub use order::{order_multiply, order_valuation, residue, OrderElement};
