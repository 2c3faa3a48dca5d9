use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("text {text:?} contains a line break at byte {at}")]
    EmbeddedNewline { text: String, at: usize },
    #[error("word list is empty")]
    EmptyWordList,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrintError {
    #[error("document has no layout: every choice leads to fail")]
    NoLayout,
}

/// A syntax or semantic error in one of the textual input formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unbound reference `{name}`")]
    Unbound { line: usize, col: usize, name: String },
    #[error("{line}:{col}: {source}")]
    Doc {
        line: usize,
        col: usize,
        #[source]
        source: DocError,
    },
    #[error("invalid JSON: {0}")]
    Json(String),
}
