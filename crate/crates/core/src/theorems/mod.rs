//! Executable checks of the structural results about weak nil clean,
//! weak* nil clean and weak J-clean rings, and a runner that applies them to
//! a corpus of rings.
//!
//! Each check has an applicability predicate. A ring outside a check's
//! hypotheses is reported as `not-applicable` rather than as a vacuous pass.

mod checks;
mod corpus;
mod registry;
mod suite;

pub use checks::*;
pub use corpus::{CorpusEntry, CorpusSource, CorpusSpec, DEFAULT_CORPUS};
pub use registry::{checks_markdown, registry, Coverage, TheoremCheck, COVERAGE};
pub use suite::{run_suite, Cell, CellOutcome, CheckSelector, SuiteReport, SuiteRing};
