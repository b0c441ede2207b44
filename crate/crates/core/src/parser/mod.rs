//! Polynomial expressions and model definition files.
//!
//! A model file is line oriented. `#` starts a comment. Top-level lines are
//! `key = value` for `name`, `coordinates`, `hamiltonian`, `entropy` and
//! `tau`, or open one of the sections `bivector`, `cocycle`, `casimirs`,
//! `extended_casimirs` with `section {` and close it with a lone `}`.
//!
//! ```text
//! coordinates = zeta, p1, p2, c
//! hamiltonian = p1
//! entropy = (p1^2 + p2^2)/2
//! tau = 1
//! bivector {
//!   zeta, p1 = -p2
//!   zeta, p2 = p1
//! }
//! cocycle {
//!   p1, p2 = c
//! }
//! extended_casimirs {
//!   central = c
//! }
//! ```
//!
//! Pair entries `i, j = expr` set the `(i, j)` component (and `-expr` at
//! `(j, i)`); unlisted pairs are zero.

pub mod expr;
pub mod model_file;

pub use expr::{parse_expression, parse_expression_at, ExpressionSource, ParseError, ParseErrorKind};
pub use model_file::{
    load_model, load_model_str, load_model_with_seed, parse_model_text, LoadedModel, ModelFile, ModelFileError,
    DEFAULT_SEED,
};
