//! Exact computations on simplicial toric varieties presented by lattice fans.
//!
//! The crate answers one question about a complete simplicial fan: does the
//! boundary of the nef cone meet the boundary of the pseudo-effective cone
//! only at the origin, i.e. is every nontrivial nef class big? Around that
//! predicate it provides the supporting machinery:
//!
//! * [`linalg`]: Hermite/Smith normal forms, integer kernels and exact
//!   Fourier–Motzkin feasibility over arbitrary-precision rationals.
//! * [`cone`]: rational polyhedral cones with both descriptions, computed by
//!   the double description method.
//! * [`fan`]: fans, validation, star subdivision, walls, quotient fans.
//! * [`divisor`]: coordinates for divisor and curve classes, the Mori, nef and
//!   pseudo-effective cones and the predicates built on them.
//! * [`batyrev`]: primitive collections and relations, and the
//!   general/special classification of fans.
//! * [`catalog`]: builders for the fans studied here and small comparison fans.

pub mod batyrev;
pub mod catalog;
pub mod cone;
pub mod divisor;
pub mod error;
pub mod fan;
pub mod linalg;

pub use cone::{Membership, RationalCone};
pub use error::{Error, Result};
pub use fan::Fan;
pub use linalg::{IntMatrix, LatticeVector, RatVector};
