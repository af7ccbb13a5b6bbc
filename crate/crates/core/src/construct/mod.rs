//! Ring constructions: `Z(n)`, products, matrix rings, idealizations,
//! corners, quotients and truncated skew polynomial rings.

mod build;
mod expr;
mod parse;

pub use build::{
    build, build_with, corner, eq_diag_subring, quotient, skew_constant_maps, skew_poly_quot,
    BuildOptions, BuiltRing, DEFAULT_SIZE_BUDGET, DEFAULT_VERIFY_LIMIT,
};
pub use expr::{EndoSpec, ModuleSpec, RingExpr};
pub use parse::parse_ring_expr;

/// Parse and build in one step.
pub fn build_str(text: &str, opts: &BuildOptions) -> crate::Result<BuiltRing> {
    build_with(&parse_ring_expr(text)?, opts)
}
