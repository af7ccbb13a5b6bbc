//! Finite rings as explicit tables, their structural sets, and
//! certificate-producing decision procedures for clean-type decompositions.
//!
//! The usual flow is: parse a [`RingExpr`], [`build`] it into a
//! [`RingTable`], compute its [`StructureCache`], then ask
//! [`find_decomp`] or [`ring_verdict`] about a [`DecompKind`].
//!
//! ```
//! use wnc_core::{build_str, ring_verdict, BuildOptions, DecompKind, StructureCache};
//!
//! let z6 = build_str("Z(6)", &BuildOptions::default()).unwrap();
//! let s = StructureCache::new(&z6.table);
//! assert!(ring_verdict(&z6.table, &s, &DecompKind::WeakNilClean).unwrap().holds);
//! assert!(!ring_verdict(&z6.table, &s, &DecompKind::NilClean).unwrap().holds);
//! ```

pub mod construct;
pub mod decomp;
mod error;
pub mod ring;
pub mod sweep;
pub mod theorems;

pub use construct::{
    build, build_str, build_with, parse_ring_expr, BuildOptions, BuiltRing, RingExpr,
};
pub use decomp::{
    find_decomp, is_exchange, is_strongly_pi_regular, lifts_idempotents_weakly,
    nil_clean_count_bound, ring_verdict, DecompCert, DecompKind, RingVerdict, Side, Sign,
};
pub use error::{Error, Result};
pub use ring::{ElementId, RingTable, StructureCache, SubsetHandle};
