//! Augmented dimensional analysis.
//!
//! Given the dimensional exponents of a set of quantity variables, this
//! crate computes prebases, canonical exponents and π-monomials, builds the
//! complete system of dimensionless-product equations (for a chosen
//! dependent variable or for every variable in turn), and turns declared
//! swap symmetries into closed-form laws.
//!
//! ```
//! use piforge::{corpus, engine};
//!
//! let sys = engine::analyze_unbalanced(&corpus::pendulum()).unwrap();
//! assert_eq!(sys.render_lines(), vec!["t^2 = l g^-1 * Psi_1(theta)"]);
//! ```

pub mod corpus;
pub mod engine;
pub mod error;
pub mod matroid;
pub mod monomial;
pub mod qspace;
pub mod report;
pub mod zlinalg;

pub use error::{Error, ParseError, ParseErrorKind, Result};
