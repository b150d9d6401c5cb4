//! Ending-based guesser for words missing from the lexicon.
//!
//! Capitalised words are proper nouns (`NOUN-INV`). Anything else is
//! classified by the longest table suffix it ends with, so `iquement`
//! (adverb only) overrides `ment` (adverb or noun). A noun tag is added to
//! every match unless the pattern already names a noun or is barred from
//! the noun endings with `!noun`; a word no pattern matches is a noun.
//!
//! Pattern file lines: `suffix TAG+ [!noun]`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use crate::tagset::{strip_comment, AmbiguityClass, Tag, TagInventory};

pub const PROPER_NOUN: &str = "NOUN-INV";
pub const NOUN_SINGULAR: &str = "NOUN-SG";
pub const NOUN_PLURAL: &str = "NOUN-PL";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GuesserError {
    #[error("line {line}: expected `suffix TAG+ [!noun]`")]
    Syntax { line: usize },
    #[error("line {line}: suffix `{suffix}` must be lowercase")]
    NotLowercase { line: usize, suffix: String },
    #[error("line {line}: duplicate suffix `{suffix}`")]
    Duplicate { line: usize, suffix: String },
    #[error("line {line}: tag `{tag}` is not in the inventory")]
    UnknownTag { line: usize, tag: String },
    #[error("line {line}: closed-class tag `{tag}` cannot be guessed")]
    ClosedClass { line: usize, tag: String },
    #[error("line {line}: `{suffix}` carries a noun tag and `!noun`")]
    NounExcluded { line: usize, suffix: String },
    #[error("inventory lacks `{0}`, which the guesser needs")]
    MissingTag(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndingPattern {
    pub suffix: String,
    pub tags: Vec<Tag>,
    /// Free-text provenance, taken from a trailing `#` comment.
    pub note: String,
}

impl EndingPattern {
    pub fn has_noun(&self) -> bool {
        self.tags.iter().any(Tag::is_noun)
    }
}

#[derive(Debug, Clone, Default)]
struct Node {
    children: BTreeMap<char, usize>,
    pattern: Option<usize>,
}

/// Patterns keyed by suffix, with a reversed-character trie for
/// longest-suffix lookup.
#[derive(Debug, Clone)]
pub struct GuesserTable {
    patterns: Vec<EndingPattern>,
    noun_excluded: BTreeSet<String>,
    default_noun: bool,
    trie: Vec<Node>,
    proper: Tag,
    singular: Tag,
    plural: Tag,
}

impl GuesserTable {
    /// Parses a pattern file against `inv`.
    pub fn parse(text: &str, inv: &TagInventory) -> Result<Self, GuesserError> {
        let need = |name: &'static str| inv.get(name).cloned().ok_or(GuesserError::MissingTag(name));
        let mut table = GuesserTable {
            patterns: Vec::new(),
            noun_excluded: BTreeSet::new(),
            default_noun: true,
            trie: alloc::vec![Node::default()],
            proper: need(PROPER_NOUN)?,
            singular: need(NOUN_SINGULAR)?,
            plural: need(NOUN_PLURAL)?,
        };
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = strip_comment(raw);
            let note = raw[body.len()..].trim_start_matches('#').trim();
            let mut fields = body.split_whitespace();
            let Some(suffix) = fields.next() else { continue };
            if suffix.to_lowercase() != suffix {
                return Err(GuesserError::NotLowercase {
                    line,
                    suffix: suffix.to_string(),
                });
            }
            let mut tags = Vec::new();
            let mut excluded = false;
            for field in fields {
                if field == "!noun" {
                    excluded = true;
                    continue;
                }
                let tag = inv.get(field).ok_or_else(|| GuesserError::UnknownTag {
                    line,
                    tag: field.to_string(),
                })?;
                if inv.is_closed(tag) {
                    return Err(GuesserError::ClosedClass {
                        line,
                        tag: field.to_string(),
                    });
                }
                if !tags.contains(tag) {
                    tags.push(tag.clone());
                }
            }
            if tags.is_empty() {
                return Err(GuesserError::Syntax { line });
            }
            tags.sort();
            let pattern = EndingPattern {
                suffix: suffix.to_string(),
                tags,
                note: note.to_string(),
            };
            if excluded && pattern.has_noun() {
                return Err(GuesserError::NounExcluded {
                    line,
                    suffix: suffix.to_string(),
                });
            }
            if !table.insert(pattern) {
                return Err(GuesserError::Duplicate {
                    line,
                    suffix: suffix.to_string(),
                });
            }
            if excluded {
                table.noun_excluded.insert(suffix.to_string());
            }
        }
        Ok(table)
    }

    fn insert(&mut self, pattern: EndingPattern) -> bool {
        let mut node = 0;
        for c in pattern.suffix.chars().rev() {
            node = match self.trie[node].children.get(&c) {
                Some(&next) => next,
                None => {
                    let next = self.trie.len();
                    self.trie.push(Node::default());
                    self.trie[node].children.insert(c, next);
                    next
                }
            };
        }
        if self.trie[node].pattern.is_some() {
            return false;
        }
        self.trie[node].pattern = Some(self.patterns.len());
        self.patterns.push(pattern);
        true
    }

    /// Turns the noun default on or off for matched patterns. Words no
    /// pattern matches still receive a noun tag.
    pub fn with_default_noun(mut self, on: bool) -> Self {
        self.default_noun = on;
        self
    }

    pub fn default_noun(&self) -> bool {
        self.default_noun
    }

    pub fn patterns(&self) -> &[EndingPattern] {
        &self.patterns
    }

    pub fn is_noun_excluded(&self, suffix: &str) -> bool {
        self.noun_excluded.contains(suffix)
    }

    /// Longest pattern that `word` (already lowercase) ends with.
    pub fn longest_match(&self, word: &str) -> Option<&EndingPattern> {
        let mut node = 0;
        let mut best = self.trie[0].pattern;
        for c in word.chars().rev() {
            match self.trie[node].children.get(&c) {
                Some(&next) => node = next,
                None => break,
            }
            if let Some(p) = self.trie[node].pattern {
                best = Some(p);
            }
        }
        best.map(|i| &self.patterns[i])
    }

    /// Ambiguity class for an unknown word token.
    pub fn guess(&self, token: &str) -> AmbiguityClass {
        let word = strip_clitic_marks(token);
        if word.chars().next().is_some_and(char::is_uppercase) {
            return AmbiguityClass::from_tags([self.proper.clone()]).expect("one tag");
        }
        let lower = word.to_lowercase();
        let noun = if lower.ends_with('s') || lower.ends_with('x') {
            &self.plural
        } else {
            &self.singular
        };
        let mut tags: Vec<Tag> = Vec::new();
        match self.longest_match(&lower) {
            Some(p) => {
                tags.extend(p.tags.iter().cloned());
                if self.default_noun && !p.has_noun() && !self.is_noun_excluded(&p.suffix) {
                    tags.push(noun.clone());
                }
            }
            None => tags.push(noun.clone()),
        }
        AmbiguityClass::from_tags(tags).expect("non-empty")
    }
}

/// Drops a clitic head's trailing `-` or `-t-` (`bloguent-` -> `bloguent`).
pub fn strip_clitic_marks(token: &str) -> &str {
    if let Some(stem) = token.strip_suffix("-t-") {
        if !stem.is_empty() {
            return stem;
        }
    }
    let stem = token.trim_end_matches('-');
    if stem.is_empty() {
        token
    } else {
        stem
    }
}

/// One row of the suffix report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixCount {
    pub length: usize,
    pub tag: Tag,
    pub suffix: String,
    /// Distinct word forms ending in `suffix` that can bear `tag`.
    pub types: usize,
}

pub const REPORT_LENGTHS: core::ops::RangeInclusive<usize> = 2..=6;

/// Ranks endings by type frequency, per suffix length and reduced tag,
/// keeping the `k` best per group. Clitic fragments (tokens starting or
/// ending with `-`) are skipped. Returns `None` when `k` is zero.
pub fn suffix_report<'a, I>(words: I, k: usize) -> Option<Vec<SuffixCount>>
where
    I: IntoIterator<Item = (&'a str, &'a AmbiguityClass)>,
{
    if k == 0 {
        return None;
    }
    // (length, tag) -> suffix -> distinct forms
    let mut counts: BTreeMap<(usize, &Tag), BTreeMap<String, BTreeSet<String>>> = BTreeMap::new();
    for (word, class) in words {
        if word.starts_with('-') || word.ends_with('-') {
            continue;
        }
        let lower = word.to_lowercase();
        let chars: Vec<char> = lower.chars().collect();
        for len in REPORT_LENGTHS {
            if chars.len() < len {
                break;
            }
            let suffix: String = chars[chars.len() - len..].iter().collect();
            for tag in class.tags() {
                counts
                    .entry((len, tag))
                    .or_default()
                    .entry(suffix.clone())
                    .or_default()
                    .insert(lower.clone());
            }
        }
    }
    let mut rows = Vec::new();
    for ((length, tag), by_suffix) in counts {
        let mut ranked: Vec<(String, usize)> = by_suffix.into_iter().map(|(s, w)| (s, w.len())).collect();
        ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        rows.extend(ranked.into_iter().take(k).map(|(suffix, types)| SuffixCount {
            length,
            tag: tag.clone(),
            suffix,
            types,
        }));
    }
    Some(rows)
}
