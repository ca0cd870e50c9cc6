//! Affine finite automata with exact rational arithmetic.
//!
//! An affine automaton moves a state vector whose entries sum to 1 through
//! one column-affine matrix per input symbol. Its acceptance value on a
//! word is the share of the final state's L1 norm sitting on accepting
//! states.
//!
//! ```
//! use affine_automata::{gallery, rational::ratio};
//!
//! let eq = gallery::eq_afa();
//! assert_eq!(eq.accept_value("abab").unwrap(), ratio(1, 1));
//! assert_eq!(eq.accept_value("aab").unwrap(), ratio(1, 3));
//! ```

pub mod analysis;
pub mod automaton;
pub mod combinators;
pub mod composite;
pub mod error;
pub mod format;
pub mod gallery;
pub mod linalg;
pub mod normal_forms;
pub mod projection;
pub mod rational;
#[cfg(feature = "sample")]
pub mod sample;

pub use automaton::{words_up_to, AcceptanceFunction, Afa, CutpointSpec, Kind, Violation};
pub use composite::Composite;
pub use error::{Error, Result};
pub use linalg::{AffineMatrix, AffineVector};
pub use projection::Projection;
pub use rational::Rational;
