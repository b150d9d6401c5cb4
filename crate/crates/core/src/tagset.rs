//! Reduced tag inventory and ambiguity classes.
//!
//! Tags are atoms: an ASCII name made of `A-Z`, `0-9` and `-`. An
//! [`AmbiguityClass`] is the byte-ordered, duplicate-free set of tags a
//! surface form may carry before disambiguation.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::borrow::Borrow;
use core::fmt;

use thiserror::Error;

/// Default inventory, in documentation order. `true` marks closed-class tags.
///
/// `VAUX-P1P2` and `VAUX-INF` are extrapolated from the verb paradigm.
pub const DEFAULT_TAGS: [(&str, bool); 32] = [
    ("DET-SG", true),
    ("DET-PL", true),
    ("NOUN-SG", false),
    ("NOUN-PL", false),
    ("NOUN-INV", false),
    ("ADJ-SG", false),
    ("ADJ-PL", false),
    ("VERB-P3SG", false),
    ("VERB-P3PL", false),
    ("VERB-P1P2", false),
    ("VERB-INF", false),
    ("VAUX-P3SG", false),
    ("VAUX-P3PL", false),
    ("VAUX-P1P2", false),
    ("VAUX-PAP", false),
    ("VAUX-INF", false),
    ("PAP-SG", false),
    ("PAP-PL", false),
    ("PRON", true),
    ("PC", true),
    ("PREP", true),
    ("PREP-DE", true),
    ("PREP-A", true),
    ("CONN", true),
    ("CONJQUE", true),
    ("COMME", true),
    ("NEG", true),
    ("ADV", false),
    ("NUM", true),
    ("PUNCT", true),
    ("CM", true),
    ("MISC", false),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TagError {
    #[error("empty tag name")]
    Empty,
    #[error("malformed tag name `{0}` (expected A-Z, 0-9 and '-')")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InventoryError {
    #[error("line {line}: {source}")]
    BadTag { line: usize, source: TagError },
    #[error("line {line}: duplicate tag `{tag}`")]
    Duplicate { line: usize, tag: String },
    #[error("line {line}: unexpected trailing text `{text}`")]
    Trailing { line: usize, text: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("ambiguity class needs at least one tag")]
    Empty,
    #[error("tag `{0}` is not in the active inventory")]
    UnknownTag(String),
}

/// One symbol of the reduced tagset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tag(String);

impl Tag {
    pub fn new(name: &str) -> Result<Self, TagError> {
        if name.is_empty() {
            return Err(TagError::Empty);
        }
        if !name
            .bytes()
            .all(|b| b.is_ascii_uppercase() || b.is_ascii_digit() || b == b'-')
        {
            return Err(TagError::Malformed(name.to_string()));
        }
        Ok(Tag(name.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// True for the NOUN-* family.
    pub fn is_noun(&self) -> bool {
        self.0.starts_with("NOUN")
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

// Ord on Tag is the derived String order, so borrowing as str is consistent.
impl Borrow<str> for Tag {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for Tag {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// The active set of reduced tags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagInventory {
    tags: Vec<Tag>,
    index: BTreeSet<Tag>,
    closed: BTreeSet<Tag>,
}

impl Default for TagInventory {
    fn default() -> Self {
        let mut inv = TagInventory::empty();
        for (name, closed) in DEFAULT_TAGS {
            inv.push(Tag(name.to_string()), closed);
        }
        inv
    }
}

impl TagInventory {
    fn empty() -> Self {
        TagInventory {
            tags: Vec::new(),
            index: BTreeSet::new(),
            closed: BTreeSet::new(),
        }
    }

    fn push(&mut self, tag: Tag, closed: bool) -> bool {
        if !self.index.insert(tag.clone()) {
            return false;
        }
        if closed {
            self.closed.insert(tag.clone());
        }
        self.tags.push(tag);
        true
    }

    /// Parses the inventory config format: one tag per line, an optional
    /// `closed` flag after it, `#` comments. A config that lists no tag
    /// yields the default inventory.
    pub fn parse(config: &str) -> Result<Self, InventoryError> {
        let mut inv = TagInventory::empty();
        for (idx, raw) in config.lines().enumerate() {
            let line = idx + 1;
            let body = strip_comment(raw);
            let mut fields = body.split_whitespace();
            let Some(name) = fields.next() else { continue };
            let tag = Tag::new(name).map_err(|source| InventoryError::BadTag { line, source })?;
            let closed = match fields.next() {
                None => false,
                Some("closed") => true,
                Some(other) => {
                    return Err(InventoryError::Trailing {
                        line,
                        text: other.to_string(),
                    })
                }
            };
            if let Some(extra) = fields.next() {
                return Err(InventoryError::Trailing {
                    line,
                    text: extra.to_string(),
                });
            }
            if !inv.push(tag, closed) {
                return Err(InventoryError::Duplicate {
                    line,
                    tag: name.to_string(),
                });
            }
        }
        if inv.tags.is_empty() {
            return Ok(TagInventory::default());
        }
        Ok(inv)
    }

    /// Serializes back to the config format.
    pub fn to_config(&self) -> String {
        let mut out = String::new();
        for tag in &self.tags {
            out.push_str(tag.as_str());
            if self.closed.contains(tag) {
                out.push_str(" closed");
            }
            out.push('\n');
        }
        out
    }

    pub fn tags(&self) -> &[Tag] {
        &self.tags
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.get(name).is_some()
    }

    /// Returns the inventory's own copy of `name`, if present.
    pub fn get(&self, name: &str) -> Option<&Tag> {
        self.index.get(name)
    }

    pub fn is_closed(&self, tag: &Tag) -> bool {
        self.closed.contains(tag)
    }

    pub fn closed_tags(&self) -> impl Iterator<Item = &Tag> {
        self.closed.iter()
    }

    /// Builds an ambiguity class from tag names: dedups, sorts and checks
    /// every member against this inventory.
    pub fn make_class<I, S>(&self, tags: I) -> Result<AmbiguityClass, ClassError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = BTreeSet::new();
        for name in tags {
            let name = name.as_ref();
            let tag = self
                .get(name)
                .ok_or_else(|| ClassError::UnknownTag(name.to_string()))?;
            set.insert(tag.clone());
        }
        if set.is_empty() {
            return Err(ClassError::Empty);
        }
        Ok(AmbiguityClass(set.into_iter().collect()))
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

/// Alphabetically ordered, non-empty set of reduced tags.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AmbiguityClass(Vec<Tag>);

impl AmbiguityClass {
    /// Builds a class from already-validated tags, without an inventory check.
    pub fn from_tags<I: IntoIterator<Item = Tag>>(tags: I) -> Result<Self, ClassError> {
        let set: BTreeSet<Tag> = tags.into_iter().collect();
        if set.is_empty() {
            return Err(ClassError::Empty);
        }
        Ok(AmbiguityClass(set.into_iter().collect()))
    }

    pub fn tags(&self) -> &[Tag] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.binary_search_by(|t| t.as_str().cmp(name)).is_ok()
    }

    /// Set union, re-sorted.
    pub fn union(&self, other: &AmbiguityClass) -> AmbiguityClass {
        let set: BTreeSet<Tag> = self.0.iter().chain(other.0.iter()).cloned().collect();
        AmbiguityClass(set.into_iter().collect())
    }

    /// Checks every member against `inv`.
    pub fn validate(&self, inv: &TagInventory) -> Result<(), ClassError> {
        match self.0.iter().find(|t| !inv.contains(t.as_str())) {
            Some(t) => Err(ClassError::UnknownTag(t.to_string())),
            None => Ok(()),
        }
    }

    /// Comma-separated form used by the tab-separated outputs.
    pub fn joined(&self, sep: &str) -> String {
        let mut out = String::new();
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                out.push_str(sep);
            }
            out.push_str(t.as_str());
        }
        out
    }
}

impl fmt::Display for AmbiguityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.joined(" "))
    }
}
