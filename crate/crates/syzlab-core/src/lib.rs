//! Exact computations with graded modules over standard-graded quotients
//! of polynomial rings: Groebner bases, syzygies, minimal free
//! resolutions, Hilbert series, Hom/Ext/Tor, and the homological
//! invariants and criteria built on top of them.

pub mod corpus;
pub mod criteria;
pub mod error;
pub mod field;
pub mod groebner;
pub mod homology;
pub mod invariants;
pub mod matrix;
pub mod module;
pub mod hilbert;
pub mod monomial;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod resolve;
pub mod ring;
pub mod vector;
