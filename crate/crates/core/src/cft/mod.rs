//! Free-field side of the correspondence: Virasoro and W2 modules at a
//! level truncation, two fermionic ghost systems, the BRST differential,
//! relative semi-infinite cohomology ranks, lattice vertex operators, and
//! the zero-mode Laplacian acting on cohomology sectors.
//!
//! Mode arithmetic is exact. Spaces are graded by conformal level; every
//! operator declares how it moves the grading, and composite currents are
//! expanded into finitely many mode words that act within a tracked window.

pub mod boxtilde;
pub mod brst;
pub mod intertwiner;
pub mod lattice;
pub mod modes;
pub mod space;
pub mod virasoro;
pub mod w2;

pub use virasoro::{c_hat, delta, kac_h, partitions, verma_gram, VirasoroModule};
