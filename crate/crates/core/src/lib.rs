//! Exact invariants of intermediate Kato surfaces.
//!
//! Starting from a Dloussky sequence this crate builds the directed dual
//! graph of the rational curves, solves for the rational multiplicities of
//! the anticanonical class `-K = sum d_i D_i`, and derives the index, the
//! contracting-germ exponents, lattice invariants and moduli dimensions.
//!
//! Every closed-form result has an independent route next to it: the
//! multiplicities are also obtained by local propagation along the graph and
//! by exact Gaussian elimination on the intersection matrix, and the
//! continuant-style forms are checked against a brute-force subset sum.
//! All arithmetic is exact (`num-bigint` / `num-rational`); nothing in here
//! touches floating point.
//!
//! ```
//! use katokit::{anticanonical, sequence::DlousskySequence};
//!
//! let seq: DlousskySequence = "[s1 s2 r1]".parse().unwrap();
//! assert_eq!(anticanonical::surface_index(&seq), 1u32.into());
//! ```

pub mod anticanonical;
pub mod error;
pub mod forms;
pub mod germ;
pub mod graph;
pub mod linalg;
pub mod rational;
pub mod report;
pub mod sequence;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rational;
pub use sequence::{DlousskySequence, SimpleComponent};
