//! Classification of elliptic-curve reduction over p-adic fields and
//! finiteness decisions for p-primary torsion over torsion-division towers.
//!
//! The crate is organized bottom-up:
//!
//! - [`ffcurve`]: exact arithmetic over small finite fields and point
//!   counting (naive enumeration plus the Weil trace recurrence);
//! - [`zp`]: fixed-precision p-adic integers, Hensel lifting, square
//!   classes of Q_p^x and quadratic local fields;
//! - [`reduction`]: reduction/potential-type classification of rational
//!   Weierstrass models, CM and formal-CM status, Lie-algebra class;
//! - [`towers`]: supernatural numbers and descriptors of infinite
//!   algebraic extensions, with residue-degree computations;
//! - [`chars`]: the unramified unit-root character of an ordinary curve
//!   and the containment conditions on its mod-p data;
//! - [`verdict`]: the decision engine, producing `Finite` / `Infinite` /
//!   `ConditionallyFinite` / `Undetermined` with an auditable rule trace;
//! - [`checker`]: brute-force verification of every residue-level fact
//!   the engine relies on.

pub mod error;

mod arith;

pub mod chars;
pub mod checker;
pub mod ffcurve;
pub mod reduction;
pub mod towers;
pub mod verdict;
pub mod zp;

pub use error::{Error, Result};
