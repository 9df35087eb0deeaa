//! Exact engine for pong algebras and their bordered relatives.
//!
//! Everything here works over GF(2) with integer (or half-integer, stored
//! doubled) weights, so all checks are exact: no floats, no tolerances.
//! The main players:
//!
//! * [`strands`]: partially wrapped strand diagrams, their weights and
//!   crossings, and the fold map down to a one-chamber window.
//! * [`pong`]: the differential algebra P(m,k) generated by those diagrams,
//!   with its idempotents, atomic elements, and factorization.
//! * [`bordered`]: the weighted algebra B_0(m) of pure states, the ideal
//!   quotient B(m), and the further quotient C(m,k).
//! * [`quotient`]: Q(m,k), the v = 0 specialization of P(m,k), plus the
//!   mapping cones that relate consecutive k.
//! * [`gf2`], [`complex`], [`homology`]: bit-packed linear algebra and chain
//!   complexes, homology with representatives, and contractions.
//! * [`dd`]: the type-DD bimodule pairing P(m,k) with C(m,k) and the check
//!   that its structure relation closes.
//! * [`koszul`]: the Koszul-type small model for pieces of Q(m,k) and the
//!   comparison map from the cobar construction of C(m,k).
//! * [`hochschild`]: a small complex computing Hochschild homology of C(m,k)
//!   with coefficients in the DD side.
//! * [`transfer`]: homotopy transfer of the multiplication on Q(m,k) to its
//!   homology, up to the arity where the first higher operation lives.
//! * [`checks`]: bundled verification sweeps used by the test suite and the
//!   command-line reports.

pub mod bordered;
pub mod checks;
pub mod complex;
pub mod dd;
pub mod error;
pub mod fmt;
pub mod gf2;
pub mod hochschild;
pub mod homology;
pub mod koszul;
pub mod pong;
pub mod quotient;
pub mod strands;
pub mod transfer;

pub use error::{Error, Result};
