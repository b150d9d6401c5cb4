//! Contextual rewrite from fine symbol sequences to reduced tags.
//!
//! A rule file holds one rule per line:
//!
//! ```text
//! +SG +P3 | +Verb | _ -> VERB-P3SG
//! _ | +IndP | _ -> 0
//! ```
//!
//! Each symbol of a segment is resolved independently: the first rule (in
//! file order) whose target equals the symbol and whose left and right
//! contexts match the symbols immediately around it in the *original*
//! segment decides its fate. Rewriting one position therefore never sees
//! another position's output, which is what makes the per-analysis string
//! rewrite equivalent to composing two-level rules with the lexicon.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::source::{AnalysisSegment, FineSymbol, SourceEntry};
use crate::tagset::{strip_comment, AmbiguityClass, Tag, TagInventory};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("line {line}: expected `LEFT | TARGET | RIGHT -> REPLACEMENT`")]
    Syntax { line: usize },
    #[error("line {line}: `{text}` is not a fine symbol")]
    BadSymbol { line: usize, text: String },
    #[error("line {line}: target must be exactly one symbol")]
    Target { line: usize },
    #[error("line {line}: replacement `{tag}` is not in the inventory")]
    UnknownTag { line: usize, tag: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("analysis `{segment}` produced no tag")]
    NoTags { segment: String },
    #[error("replacement `{tag}` is not in the inventory")]
    UnknownTag { tag: String },
    #[error("no rule matches `{symbol}` in `{segment}`")]
    Unmatched { symbol: FineSymbol, segment: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub left: Vec<FineSymbol>,
    pub target: FineSymbol,
    pub right: Vec<FineSymbol>,
    /// `None` deletes the target.
    pub replacement: Option<Tag>,
}

impl RewriteRule {
    /// True when this rule applies at `pos` of `symbols`.
    pub fn matches(&self, symbols: &[FineSymbol], pos: usize) -> bool {
        if symbols.get(pos) != Some(&self.target) {
            return false;
        }
        let before = &symbols[..pos];
        let after = &symbols[pos + 1..];
        before.ends_with(&self.left) && after.starts_with(&self.right)
    }
}

fn write_context(f: &mut fmt::Formatter<'_>, ctx: &[FineSymbol]) -> fmt::Result {
    if ctx.is_empty() {
        return f.write_str("_");
    }
    for (i, s) in ctx.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{s}")?;
    }
    Ok(())
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_context(f, &self.left)?;
        write!(f, " | {} | ", self.target)?;
        write_context(f, &self.right)?;
        match &self.replacement {
            Some(tag) => write!(f, " -> {tag}"),
            None => f.write_str(" -> 0"),
        }
    }
}

/// What a rule set decides for one position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution<'a> {
    Tag(&'a Tag),
    Deleted,
    /// No rule matched; the symbol vanishes with a diagnostic.
    Unmatched,
}

/// An ordered rule list, indexed by target symbol.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RuleSet {
    rules: Vec<RewriteRule>,
    by_target: BTreeMap<FineSymbol, Vec<usize>>,
}

impl RuleSet {
    pub fn new(rules: Vec<RewriteRule>) -> Self {
        let mut by_target: BTreeMap<FineSymbol, Vec<usize>> = BTreeMap::new();
        for (i, r) in rules.iter().enumerate() {
            by_target.entry(r.target.clone()).or_default().push(i);
        }
        RuleSet { rules, by_target }
    }

    pub fn parse(text: &str, inv: &TagInventory) -> Result<Self, RuleError> {
        let mut rules = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = strip_comment(raw).trim();
            if body.is_empty() {
                continue;
            }
            rules.push(parse_rule(body, line, inv)?);
        }
        Ok(RuleSet::new(rules))
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Every symbol some rule targets.
    pub fn targets(&self) -> impl Iterator<Item = &FineSymbol> {
        self.by_target.keys()
    }

    /// Resolves the symbol at `pos` against the original sequence.
    pub fn resolve(&self, symbols: &[FineSymbol], pos: usize) -> Resolution<'_> {
        let Some(candidates) = self.by_target.get(&symbols[pos]) else {
            return Resolution::Unmatched;
        };
        for &i in candidates {
            let rule = &self.rules[i];
            if rule.matches(symbols, pos) {
                return match &rule.replacement {
                    Some(tag) => Resolution::Tag(tag),
                    None => Resolution::Deleted,
                };
            }
        }
        Resolution::Unmatched
    }

    /// Rewrites one analysis segment to its reduced tags.
    pub fn rewrite_segment(
        &self,
        segment: &AnalysisSegment,
        inv: &TagInventory,
        strict: bool,
    ) -> Result<Rewritten, RewriteError> {
        let mut tags = Vec::new();
        let mut unmatched = Vec::new();
        for pos in 0..segment.symbols.len() {
            match self.resolve(&segment.symbols, pos) {
                Resolution::Tag(tag) => {
                    if !inv.contains(tag.as_str()) {
                        return Err(RewriteError::UnknownTag {
                            tag: tag.to_string(),
                        });
                    }
                    tags.push(tag.clone());
                }
                Resolution::Deleted => {}
                Resolution::Unmatched => {
                    let symbol = segment.symbols[pos].clone();
                    if strict {
                        return Err(RewriteError::Unmatched {
                            symbol,
                            segment: segment.to_string(),
                        });
                    }
                    unmatched.push(symbol);
                }
            }
        }
        if tags.is_empty() {
            return Err(RewriteError::NoTags {
                segment: segment.to_string(),
            });
        }
        Ok(Rewritten { tags, unmatched })
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Output of [`RuleSet::rewrite_segment`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rewritten {
    pub tags: Vec<Tag>,
    /// Symbols no rule covered, dropped from the output.
    pub unmatched: Vec<FineSymbol>,
}

fn parse_context(text: &str, line: usize) -> Result<Vec<FineSymbol>, RuleError> {
    let text = text.trim();
    if text == "_" {
        return Ok(Vec::new());
    }
    text.split_whitespace()
        .map(|w| {
            FineSymbol::new(w).ok_or_else(|| RuleError::BadSymbol {
                line,
                text: w.to_string(),
            })
        })
        .collect()
}

fn parse_rule(body: &str, line: usize, inv: &TagInventory) -> Result<RewriteRule, RuleError> {
    let (lhs, replacement) = body.split_once("->").ok_or(RuleError::Syntax { line })?;
    let mut fields = lhs.split('|');
    let (Some(left), Some(target), Some(right), None) =
        (fields.next(), fields.next(), fields.next(), fields.next())
    else {
        return Err(RuleError::Syntax { line });
    };
    let left = parse_context(left, line)?;
    let right = parse_context(right, line)?;
    let mut target = parse_context(target, line)?;
    if target.len() != 1 {
        return Err(RuleError::Target { line });
    }
    let replacement = match replacement.trim() {
        "" => return Err(RuleError::Syntax { line }),
        "0" => None,
        name => Some(inv.get(name).cloned().ok_or_else(|| RuleError::UnknownTag {
            line,
            tag: name.to_string(),
        })?),
    };
    Ok(RewriteRule {
        left,
        target: target.pop().expect("length checked"),
        right,
        replacement,
    })
}

/// A warning raised while deriving classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    /// A symbol no rule covers was dropped.
    Unmatched {
        line: usize,
        token: String,
        symbol: FineSymbol,
    },
    /// A head analysis produced more than one reduced tag.
    MultiTag {
        line: usize,
        token: String,
        tags: Vec<Tag>,
    },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::Unmatched {
                line,
                token,
                symbol,
            } => write!(f, "line {line}: `{token}`: no rule for {symbol}, dropped"),
            Diagnostic::MultiTag { line, token, tags } => {
                write!(f, "line {line}: `{token}`: head analysis yields {} tags:", tags.len())?;
                for t in tags {
                    write!(f, " {t}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: `{token}`: {source}")]
pub struct DeriveError {
    pub line: usize,
    pub token: String,
    pub source: RewriteError,
}

/// Token-to-class table derived from a source lexicon.
#[derive(Debug, Clone, Default)]
pub struct Derived {
    pub classes: BTreeMap<String, AmbiguityClass>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Splits every entry, rewrites each segment and unions the tags per
/// split token.
pub fn derive_classes(
    entries: &[SourceEntry],
    rules: &RuleSet,
    inv: &TagInventory,
    strict: bool,
) -> Result<Derived, DeriveError> {
    let mut acc: BTreeMap<String, BTreeSet<Tag>> = BTreeMap::new();
    let mut diagnostics = Vec::new();
    for entry in entries {
        for (token, segment) in entry.split_cliticised() {
            let out = rules
                .rewrite_segment(segment, inv, strict)
                .map_err(|source| DeriveError {
                    line: entry.line,
                    token: token.clone(),
                    source,
                })?;
            for symbol in out.unmatched {
                diagnostics.push(Diagnostic::Unmatched {
                    line: entry.line,
                    token: token.clone(),
                    symbol,
                });
            }
            if core::ptr::eq(segment, &entry.head) && out.tags.len() > 1 {
                diagnostics.push(Diagnostic::MultiTag {
                    line: entry.line,
                    token: token.clone(),
                    tags: out.tags.clone(),
                });
            }
            acc.entry(token).or_default().extend(out.tags);
        }
    }
    let classes = acc
        .into_iter()
        .map(|(token, tags)| {
            let class = AmbiguityClass::from_tags(tags).expect("rewrite never yields zero tags");
            (token, class)
        })
        .collect();
    Ok(Derived {
        classes,
        diagnostics,
    })
}

/// Class of a single token from the entries that contribute to it.
pub fn derive_class(
    token: &str,
    entries: &[SourceEntry],
    rules: &RuleSet,
    inv: &TagInventory,
) -> Result<Option<AmbiguityClass>, DeriveError> {
    let mut tags = BTreeSet::new();
    for entry in entries {
        for (tok, segment) in entry.split_cliticised() {
            if tok != token {
                continue;
            }
            let out = rules
                .rewrite_segment(segment, inv, false)
                .map_err(|source| DeriveError {
                    line: entry.line,
                    token: tok.clone(),
                    source,
                })?;
            tags.extend(out.tags);
        }
    }
    Ok(AmbiguityClass::from_tags(tags).ok())
}
