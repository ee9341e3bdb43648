//! Executable pieces of the theory of logarithmically integrable operators.
//!
//! The crate is organised bottom-up:
//!
//! * [`measure`]: aleph-indexed cardinals, closed-form positive sequences,
//!   countable cell models and Boolean-algebra passports, all with exact
//!   rational decisions.
//! * [`rearrangement`]: scalar and matrix-valued step functions, their
//!   decreasing rearrangements, the log F-norm and a seeded harness for the
//!   F-norm axioms.
//! * [`trace`]: Radon-Nikodym boundedness on cell models, inclusion and
//!   coincidence of log-algebras, and the explicit non-inclusion witness with
//!   its divergence certificate.
//! * [`iso`]: isomorphism decisions for commutative, type I_n and finite
//!   direct-sum algebras described by passports.

pub mod error;
pub mod iso;
pub mod measure;
pub mod numeric;
pub mod rearrangement;
pub mod trace;

pub use error::{Error, Result};
