//! Legendrian contact homology over the two-element field.
//!
//! The crate computes Chekanov-Eliashberg differential graded algebras of
//! Legendrian links in standard contact position, together with the algebraic
//! machinery built on top of them: augmentations, (bi)linearized contact
//! (co)homology, the A-infinity composition maps of the augmentation category,
//! DGA morphisms with their pullbacks and induced maps, and graded mapping
//! cones including the three-block complex of a cobordism pair.
//!
//! Everything is exact arithmetic over F2; all operations are pure functions
//! over immutable values.

pub mod augcat;
pub mod augment;
pub mod cobord;
pub mod cone;
pub mod dga;
pub mod f2;
pub mod front;
pub mod library;
pub mod linhom;
pub mod poly;

pub use dga::{ChordGenerator, Dga};
pub use poly::{NcPoly, Word};
