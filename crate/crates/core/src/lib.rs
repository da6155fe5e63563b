//! Brauer configuration algebras, homological ideals of Nakayama algebras
//! with one zero relation, and the even-index Fibonacci partitions built
//! from their counts.
//!
//! * [`brauer`] validates configurations and derives quivers, special
//!   cycles, relations and dimension invariants.
//! * [`messages`] evaluates words and messages under integer
//!   specializations, and generates the family `Gamma_n`.
//! * [`nakayama`] classifies and counts homological trace ideals
//!   combinatorially.
//! * [`oracle`] recomputes the same classification from Ext groups over
//!   exact rationals.
//! * [`fib`] holds the d-array, its weights and the partition identities.
//! * [`sequences`] compares generated sequences with OEIS b-files.

pub mod brauer;
pub mod fib;
pub mod linalg;
pub mod messages;
pub mod nakayama;
pub mod oracle;
pub mod sequences;
