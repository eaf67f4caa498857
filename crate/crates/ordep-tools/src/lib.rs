//! Std companion to `ordep`: CoNLL-U and bracket serialization, derivation
//! traces, and the theorem self-test suites behind the `ordep` binary.

pub mod brackets;
pub mod conllu;
pub mod selftest;
pub mod trace;

pub use brackets::{read_brackets, write_brackets, BracketError, BracketParseError};
pub use conllu::{
    read_conllu, write_conllu, write_sentence, ConlluReader, Diagnostic, ParsedSentence, WriteError,
};
pub use trace::{write_trace, TraceMode};
