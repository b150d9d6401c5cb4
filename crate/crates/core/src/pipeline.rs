//! Lexicon compilation and text analysis: lexicon first, guesser second.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::guesser::GuesserTable;
use crate::lexicon::Lexicon;
use crate::rewrite::{derive_classes, DeriveError, Diagnostic, RuleSet};
use crate::source::{parse_source, SourceError};
use crate::tagset::{AmbiguityClass, TagInventory};
use crate::tokenizer::{Token, Tokenizer};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error(transparent)]
    Source(#[from] SourceError),
    #[error(transparent)]
    Derive(#[from] DeriveError),
}

/// Result of compiling a source lexicon.
#[derive(Debug, Clone)]
pub struct Built {
    pub lexicon: Lexicon,
    pub diagnostics: Vec<Diagnostic>,
    pub source_entries: usize,
}

/// Parses, splits, rewrites and compiles a source lexicon.
pub fn build_lexicon(
    source: &str,
    rules: &RuleSet,
    inv: &TagInventory,
    strict: bool,
) -> Result<Built, BuildError> {
    let entries = parse_source(source)?;
    let derived = derive_classes(&entries, rules, inv, strict)?;
    Ok(Built {
        lexicon: Lexicon::build(derived.classes),
        diagnostics: derived.diagnostics,
        source_entries: entries.len(),
    })
}

/// Where a token's class came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassSource {
    Lexicon,
    Guesser,
    Punct,
}

impl ClassSource {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassSource::Lexicon => "lexicon",
            ClassSource::Guesser => "guesser",
            ClassSource::Punct => "punct",
        }
    }
}

impl fmt::Display for ClassSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub token: Token,
    pub class: AmbiguityClass,
    pub source: ClassSource,
}

impl Analysis {
    /// `token<TAB>TAG,TAG<TAB>source`
    pub fn to_line(&self) -> String {
        let mut s = self.token.text.clone();
        s.push('\t');
        s.push_str(&self.class.joined(","));
        s.push('\t');
        s.push_str(self.source.as_str());
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PunctError {
    #[error("line {line}: expected `MARK TAG`")]
    Syntax { line: usize },
    #[error("line {line}: tag `{tag}` is not in the inventory")]
    UnknownTag { line: usize, tag: String },
    #[error("inventory lacks `{0}`")]
    MissingTag(String),
}

/// Punctuation tags: per-mark overrides plus a fallback.
#[derive(Debug, Clone)]
pub struct PunctMap {
    marks: BTreeMap<String, AmbiguityClass>,
    fallback: AmbiguityClass,
}

impl PunctMap {
    /// `,` -> CM, everything else -> PUNCT.
    pub fn new(inv: &TagInventory) -> Result<Self, PunctError> {
        Self::parse(", CM\n* PUNCT\n", inv)
    }

    /// Lines `MARK TAG`; the mark `*` sets the fallback.
    pub fn parse(text: &str, inv: &TagInventory) -> Result<Self, PunctError> {
        let mut marks = BTreeMap::new();
        let mut fallback = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let mut fields = raw.split_whitespace();
            let (Some(mark), Some(tag)) = (fields.next(), fields.next()) else {
                if raw.trim().is_empty() {
                    continue;
                }
                return Err(PunctError::Syntax { line });
            };
            if fields.next().is_some() {
                return Err(PunctError::Syntax { line });
            }
            let class = inv.make_class([tag]).map_err(|_| PunctError::UnknownTag {
                line,
                tag: tag.to_string(),
            })?;
            if mark == "*" {
                fallback = Some(class);
            } else {
                marks.insert(mark.to_string(), class);
            }
        }
        let fallback = match fallback {
            Some(c) => c,
            None => inv
                .make_class(["PUNCT"])
                .map_err(|_| PunctError::MissingTag("PUNCT".to_string()))?,
        };
        Ok(PunctMap { marks, fallback })
    }

    pub fn class(&self, mark: &str) -> &AmbiguityClass {
        self.marks.get(mark).unwrap_or(&self.fallback)
    }
}

/// Tokenizer, compiled lexicon, guesser and punctuation tags.
#[derive(Debug, Clone)]
pub struct Analyzer {
    pub tokenizer: Tokenizer,
    pub lexicon: Lexicon,
    pub guesser: GuesserTable,
    pub punct: PunctMap,
}

impl Analyzer {
    pub fn classify(&self, token: Token) -> Analysis {
        let (class, source) = if !token.is_word() {
            (self.punct.class(&token.text).clone(), ClassSource::Punct)
        } else if let Some(class) = self.lexicon.lookup(&token.text) {
            (class.clone(), ClassSource::Lexicon)
        } else {
            (self.guesser.guess(&token.text), ClassSource::Guesser)
        };
        Analysis {
            token,
            class,
            source,
        }
    }

    pub fn analyze(&self, text: &str) -> Vec<Analysis> {
        self.tokenizer
            .tokenize(text)
            .into_iter()
            .map(|t| self.classify(t))
            .collect()
    }
}
