//! Exact computation in small finite groups.
//!
//! Groups live as immutable Cayley tables over dense element indices
//! (identity at index 0). On top of that substrate this crate provides
//! subgroup arithmetic (closure, centralizers, normalizers, commutators),
//! complete subgroup lattices, Sylow theory and cores, quotient sections,
//! isomorphism testing, the three Thompson subgroups `J_o`/`J_r`/`J_e`,
//! a constructive abelian replacement procedure, the p-local predicates
//! (strong closure, fusion control, p-stability, p-constraint,
//! Qd(p)-freeness, p-nilpotency) and conjugacy functors `W_D` / `W*_D`.
//!
//! Everything is exhaustive and exact: no randomization, no heuristics,
//! deterministic tie-breaking throughout. The intended scale is desk-size
//! orders (default bound 512, see [`config::order_bound`]).

pub mod arith;
pub mod bitset;
pub mod build;
pub mod config;
pub mod error;
pub mod fusion;
pub mod functors;
pub mod group;
pub mod io;
pub mod iso;
pub mod lattice;
pub mod oracle;
pub mod perm;
pub mod replacement;
pub mod section;
pub mod subgroup;
pub mod sylow;
pub mod thompson;

pub use build::Construction;
pub use error::{Error, Result};
pub use group::{Elem, Group, GroupMap, GroupTable};
pub use section::Section;
pub use subgroup::Subgroup;
