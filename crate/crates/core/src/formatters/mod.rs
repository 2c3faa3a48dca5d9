//! Frontends that turn source text into documents.

mod docir;
mod json;
mod sexp;

pub use docir::{parse_doc_ir, to_doc_ir};
pub use json::{json_one_line, json_to_doc, value_to_doc};
pub use sexp::{parse_sexps, sexp_to_doc, sexp_tree_to_doc, Sexp};

/// Layout choices offered by the JSON and S-expression frontends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StyleConfig {
    /// Indentation of JSON container members.
    pub indent_width: usize,
    /// S-expressions may put all arguments on the head's line.
    pub sexp_horizontal: bool,
    /// S-expressions may put each argument on its own line, aligned with
    /// the head. Used as the fallback when no style is enabled.
    pub sexp_vertical: bool,
    /// S-expressions may keep the first argument on the head's line and
    /// align the rest under it.
    pub sexp_hang: bool,
}

impl Default for StyleConfig {
    fn default() -> Self {
        StyleConfig { indent_width: 2, sexp_horizontal: true, sexp_vertical: true, sexp_hang: false }
    }
}
