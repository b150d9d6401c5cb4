//! Reduced-tagset lexicon compiler, tokenizer, ending guesser and
//! evaluation metrics for French part-of-speech ambiguity classes.
//!
//! A fine-grained source lexicon (`surface<TAB>lemma +Sym...`) is mapped
//! through contextual rewrite rules onto a small tagset, compiled into a
//! minimal acyclic automaton, and consulted for every token of running
//! text. Unknown words are guessed from their endings.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod automaton;
pub mod data;
pub mod guesser;
pub mod lexicon;
pub mod metrics;
pub mod pipeline;
pub mod rewrite;
pub mod source;
pub mod tagset;
pub mod tokenizer;

pub use guesser::GuesserTable;
pub use lexicon::Lexicon;
pub use metrics::{evaluate, EvalReport, GoldRecord};
pub use pipeline::{build_lexicon, Analyzer, PunctMap};
pub use rewrite::RuleSet;
pub use source::{parse_source, SourceEntry};
pub use tagset::{AmbiguityClass, Tag, TagInventory};
pub use tokenizer::{detokenize, Token, Tokenizer};
