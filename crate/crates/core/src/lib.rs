//! Exact computation with ultrafilter spaces of finite meet-semilattices and
//! with lattices of partitions of ω.
//!
//! * [`semilattice`]: finite meet-semilattices with zero, complementation,
//!   generators.
//! * [`filter`]: filters, ultrafilters, FIP extension.
//! * [`stone`]: positive and negative topologies on ultrafilter sets.
//! * [`partition`]: partitions into finitely many infinite blocks as
//!   eventually periodic colorings; orthogonal witnesses.
//! * [`pinf`]: partitions into infinitely many blocks built from pairing
//!   function columns; the almost-coarser relation.

pub mod error;
pub mod filter;
pub mod partition;
pub mod pinf;
pub mod report;
pub mod sample;
pub mod semilattice;
pub mod stone;
pub mod table;
mod union_find;

pub use error::{Error, Result};
pub use filter::Filter;
pub use partition::{BottomOrPartition, EpPartition};
pub use pinf::{ScMeet, ScPartition};
pub use report::{Format, Report, Status};
pub use semilattice::{ComplementMap, Complementation, Semilattice};
pub use stone::{Side, StoneSpace};
