//! Compiled lexicon: surface token -> ambiguity class.
//!
//! Tokens live in a minimal acyclic automaton over their UTF-8 bytes; each
//! final state's label indexes a deduplicated class table. Lookup is exact
//! and case-sensitive.
//!
//! # File layout
//!
//! All integers are little-endian.
//!
//! ```text
//! "MLX1"                 magic
//! u8                     format version (1)
//! u32                    class count
//!   per class: u8 tag count, then per tag: u8 length + ASCII name
//! u32                    state count (state 0 is the start state)
//!   per state: u32 class index (0xFFFFFFFF = not final),
//!              u32 first transition, u32 transition count
//! u32                    transition count
//!   per transition: u8 byte, u32 target state
//! ```

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::automaton::{Dafsa, DafsaBuilder, State, StructureError, Transition, NO_LABEL};
use crate::tagset::{AmbiguityClass, Tag, TagError};

pub const MAGIC: &[u8; 4] = b"MLX1";
pub const VERSION: u8 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("not a compiled lexicon (bad magic)")]
    Magic,
    #[error("unsupported lexicon format version {0}")]
    Version(u8),
    #[error("truncated lexicon file")]
    Truncated,
    #[error("{0} trailing bytes after lexicon data")]
    Trailing(usize),
    #[error("class {index}: {source}")]
    BadTag { index: usize, source: TagError },
    #[error("class {0} is empty, unsorted or duplicated")]
    BadClass(usize),
    #[error("tag name is not UTF-8")]
    Utf8,
    #[error("state {state} points at missing class {class}")]
    ClassIndex { state: usize, class: u32 },
    #[error("accepted token is not valid UTF-8")]
    TokenUtf8,
    #[error(transparent)]
    Structure(#[from] StructureError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    automaton: Dafsa,
    classes: Vec<AmbiguityClass>,
    len: usize,
}

impl Default for Lexicon {
    fn default() -> Self {
        Lexicon::build(core::iter::empty::<(String, AmbiguityClass)>())
    }
}

impl Lexicon {
    /// Builds from `(token, class)` pairs. Repeated tokens merge by class
    /// union. The result depends only on the input multiset.
    pub fn build<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, AmbiguityClass)>,
        S: Into<String>,
    {
        let mut merged: BTreeMap<String, AmbiguityClass> = BTreeMap::new();
        for (token, class) in pairs {
            let token = token.into();
            match merged.get_mut(&token) {
                Some(existing) => *existing = existing.union(&class),
                None => {
                    merged.insert(token, class);
                }
            }
        }

        let mut table: BTreeMap<&AmbiguityClass, u32> = merged.values().map(|c| (c, 0)).collect();
        for (i, idx) in table.values_mut().enumerate() {
            *idx = i as u32;
        }

        let mut builder = DafsaBuilder::new();
        for (token, class) in &merged {
            builder
                .insert(token.as_bytes(), table[class])
                .expect("BTreeMap iterates in byte order");
        }
        let automaton = builder.finish();
        let classes = table.into_keys().cloned().collect();
        Lexicon {
            automaton,
            classes,
            len: merged.len(),
        }
    }

    pub fn lookup(&self, token: &str) -> Option<&AmbiguityClass> {
        self.automaton
            .get(token.as_bytes())
            .map(|i| &self.classes[i as usize])
    }

    pub fn contains(&self, token: &str) -> bool {
        self.automaton.get(token.as_bytes()).is_some()
    }

    /// All tokens with their classes, in byte order.
    pub fn entries(&self) -> Vec<(String, &AmbiguityClass)> {
        self.automaton
            .entries()
            .into_iter()
            .map(|(key, label)| {
                let token = String::from_utf8(key).expect("tokens are checked UTF-8");
                (token, &self.classes[label as usize])
            })
            .collect()
    }

    /// Number of accepted tokens.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn state_count(&self) -> usize {
        self.automaton.state_count()
    }

    pub fn transition_count(&self) -> usize {
        self.automaton.transition_count()
    }

    pub fn classes(&self) -> &[AmbiguityClass] {
        &self.classes
    }

    pub fn automaton(&self) -> &Dafsa {
        &self.automaton
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        put_u32(&mut out, self.classes.len() as u32);
        for class in &self.classes {
            out.push(class.len() as u8);
            for tag in class.tags() {
                out.push(tag.as_str().len() as u8);
                out.extend_from_slice(tag.as_str().as_bytes());
            }
        }
        put_u32(&mut out, self.automaton.state_count() as u32);
        for s in self.automaton.states() {
            put_u32(&mut out, s.label);
            put_u32(&mut out, s.first);
            put_u32(&mut out, s.count);
        }
        put_u32(&mut out, self.automaton.transition_count() as u32);
        for t in self.automaton.transitions() {
            out.push(t.byte);
            put_u32(&mut out, t.target);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, DecodeError> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(4).map_err(|_| DecodeError::Magic)? != MAGIC {
            return Err(DecodeError::Magic);
        }
        let version = r.u8()?;
        if version != VERSION {
            return Err(DecodeError::Version(version));
        }

        let class_count = r.u32()? as usize;
        let mut classes: Vec<AmbiguityClass> = Vec::with_capacity(class_count.min(1 << 16));
        for index in 0..class_count {
            let n = r.u8()? as usize;
            let mut tags = Vec::with_capacity(n);
            for _ in 0..n {
                let len = r.u8()? as usize;
                let name = core::str::from_utf8(r.take(len)?).map_err(|_| DecodeError::Utf8)?;
                tags.push(Tag::new(name).map_err(|source| DecodeError::BadTag { index, source })?);
            }
            let sorted = !tags.is_empty() && tags.windows(2).all(|w| w[0] < w[1]);
            let class = AmbiguityClass::from_tags(tags).map_err(|_| DecodeError::BadClass(index))?;
            if !sorted || classes.last().is_some_and(|prev| prev >= &class) {
                return Err(DecodeError::BadClass(index));
            }
            classes.push(class);
        }

        let state_count = r.u32()? as usize;
        let mut states = Vec::with_capacity(state_count.min(1 << 20));
        for state in 0..state_count {
            let label = r.u32()?;
            if label != NO_LABEL && label as usize >= classes.len() {
                return Err(DecodeError::ClassIndex { state, class: label });
            }
            let first = r.u32()?;
            let count = r.u32()?;
            states.push(State { first, count, label });
        }
        let trans_count = r.u32()? as usize;
        let mut transitions = Vec::with_capacity(trans_count.min(1 << 20));
        for _ in 0..trans_count {
            let byte = r.u8()?;
            let target = r.u32()?;
            transitions.push(Transition { byte, target });
        }
        if r.pos != bytes.len() {
            return Err(DecodeError::Trailing(bytes.len() - r.pos));
        }

        let automaton = Dafsa::from_parts(states, transitions)?;
        let entries = automaton.entries();
        if entries.iter().any(|(key, _)| core::str::from_utf8(key).is_err()) {
            return Err(DecodeError::TokenUtf8);
        }
        Ok(Lexicon {
            automaton,
            classes,
            len: entries.len(),
        })
    }
}

fn put_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], DecodeError> {
        let end = self.pos.checked_add(n).ok_or(DecodeError::Truncated)?;
        let slice = self.bytes.get(self.pos..end).ok_or(DecodeError::Truncated)?;
        self.pos = end;
        Ok(slice)
    }

    fn u8(&mut self) -> Result<u8, DecodeError> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32, DecodeError> {
        let b = self.take(4)?;
        Ok(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tagset::TagInventory;
    use alloc::vec;

    fn class(names: &[&str]) -> AmbiguityClass {
        TagInventory::default().make_class(names).unwrap()
    }

    #[test]
    fn build_and_lookup() {
        let lex = Lexicon::build(vec![
            ("danses", class(&["NOUN-PL", "VERB-P1P2"])),
            ("danses-", class(&["VERB-P1P2"])),
        ]);
        assert_eq!(lex.len(), 2);
        assert_eq!(lex.lookup("danses").unwrap().joined(","), "NOUN-PL,VERB-P1P2");
        assert_eq!(lex.lookup("danses-").unwrap().joined(","), "VERB-P1P2");
        assert!(lex.lookup("danse").is_none());
        assert!(lex.lookup("Danses").is_none());
        assert!(lex.lookup("zzzz").is_none());
    }

    #[test]
    fn empty_lexicon() {
        let lex = Lexicon::build(Vec::<(String, AmbiguityClass)>::new());
        assert!(lex.is_empty());
        assert_eq!(lex.len(), 0);
        assert!(lex.lookup("").is_none());
        let again = Lexicon::from_bytes(&lex.to_bytes()).unwrap();
        assert_eq!(again, lex);
    }

    #[test]
    fn duplicates_merge_by_union() {
        let lex = Lexicon::build(vec![("a", class(&["ADV"])), ("a", class(&["PREP-A"]))]);
        assert_eq!(lex.lookup("a").unwrap().joined(","), "ADV,PREP-A");
        assert_eq!(lex.classes().len(), 1);
    }

    #[test]
    fn class_table_is_deduplicated() {
        let lex = Lexicon::build(vec![
            ("chaise", class(&["NOUN-SG"])),
            ("tabouret", class(&["NOUN-SG"])),
            ("vite", class(&["ADV"])),
        ]);
        assert_eq!(lex.classes().len(), 2);
    }

    #[test]
    fn serialization_is_input_order_independent() {
        let a = Lexicon::build(vec![("b", class(&["ADV"])), ("a", class(&["NUM"])), ("a", class(&["ADV"]))]);
        let b = Lexicon::build(vec![("a", class(&["ADV"])), ("b", class(&["ADV"])), ("a", class(&["NUM"]))]);
        assert_eq!(a.to_bytes(), b.to_bytes());
    }

    #[test]
    fn header_checks() {
        let lex = Lexicon::build(vec![("é", class(&["ADV"]))]);
        let bytes = lex.to_bytes();
        assert_eq!(&bytes[..4], b"MLX1");
        assert_eq!(bytes[4], VERSION);
        assert_eq!(Lexicon::from_bytes(&bytes).unwrap(), lex);

        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert_eq!(Lexicon::from_bytes(&bad), Err(DecodeError::Magic));
        let mut bad = bytes.clone();
        bad[4] = 2;
        assert_eq!(Lexicon::from_bytes(&bad), Err(DecodeError::Version(2)));
        assert_eq!(Lexicon::from_bytes(&bytes[..bytes.len() - 1]), Err(DecodeError::Truncated));
        let mut bad = bytes.clone();
        bad.push(0);
        assert_eq!(Lexicon::from_bytes(&bad), Err(DecodeError::Trailing(1)));
        assert_eq!(Lexicon::from_bytes(b"ML"), Err(DecodeError::Magic));
    }

    #[test]
    fn rejects_bad_class_index() {
        let lex = Lexicon::build(vec![("a", class(&["ADV"]))]);
        let mut bytes = lex.to_bytes();
        // header(5) + count(4) + class(1 + 1 + 3) + state count(4) = first state label
        let label_at = 5 + 4 + 5 + 4;
        let accepting = (0..lex.state_count())
            .find(|&s| lex.automaton().states()[s].label != NO_LABEL)
            .unwrap();
        let at = label_at + accepting * 12;
        bytes[at..at + 4].copy_from_slice(&7u32.to_le_bytes());
        assert_eq!(
            Lexicon::from_bytes(&bytes),
            Err(DecodeError::ClassIndex { state: accepting, class: 7 })
        );
    }
}
