//! Exact arithmetic: prime fields, polynomials and their factorization,
//! tagged rational function fields, cyclotomic integers and differentials.

pub mod cyclotomic;
pub mod differential;
pub mod epoly;
pub mod factor;
pub mod linalg;
pub mod poly;
pub mod prime;
pub mod ratfun;

pub use cyclotomic::CyclotomicInteger;
pub use differential::{differential, DifferentialForm, DifferentialTensor};
pub use epoly::EPoly;
pub use factor::{factor_with_seed, poly_factor, Factorization};
pub use poly::Poly;
pub use prime::{PrimeField, PrimeFieldElement};
pub use ratfun::{pn_th_root, ratfun_normalize, RationalFunction, Var};
