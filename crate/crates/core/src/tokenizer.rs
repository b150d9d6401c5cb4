//! Whitespace and punctuation segmentation with elision and clitic splitting.
//!
//! `d'habitude` becomes `d'` + `habitude`; `vient-il` becomes `vient-` +
//! `-il` and `a-t-il` becomes `a-t-` + `-il`: the head keeps the hyphen and
//! the clitic gains one, so one source hyphen shows up twice.
//! Hyphenated words whose right part is not a clitic stay whole.

use alloc::borrow::Cow;
use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::tagset::strip_comment;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Word,
    Punctuation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    Plain,
    ElisionPrefix,
    ElisionStem,
    CliticHead,
    CliticPronoun,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub kind: TokenKind,
    pub origin: Origin,
    /// Whitespace between the previous token and this one.
    pub space_before: String,
}

impl Token {
    fn new(text: String, kind: TokenKind, origin: Origin) -> Self {
        Token {
            text,
            kind,
            origin,
            space_before: String::new(),
        }
    }

    pub fn is_word(&self) -> bool {
        self.kind == TokenKind::Word
    }
}

/// Characters split off as punctuation tokens.
pub fn is_punctuation(c: char) -> bool {
    matches!(
        c,
        '.' | ',' | ';' | ':' | '?' | '!' | '"' | '(' | ')' | '[' | ']' | '«' | '»' | '…' | '\''
    )
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Clitic and elision lists. Matching is on lowercase forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tokenizer {
    clitics: BTreeSet<String>,
    elisions: BTreeSet<String>,
}

impl Default for Tokenizer {
    fn default() -> Self {
        Tokenizer::new(
            parse_word_list(crate::data::DEFAULT_CLITICS),
            parse_word_list(crate::data::DEFAULT_ELISIONS),
        )
    }
}

/// Reads a one-entry-per-line list with `#` comments.
pub fn parse_word_list(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| strip_comment(l).trim())
        .filter(|l| !l.is_empty())
        .map(|l| l.replace('\u{2019}', "'"))
        .collect()
}

impl Tokenizer {
    pub fn new<I, J, S, T>(clitics: I, elisions: J) -> Self
    where
        I: IntoIterator<Item = S>,
        J: IntoIterator<Item = T>,
        S: AsRef<str>,
        T: AsRef<str>,
    {
        Tokenizer {
            clitics: clitics.into_iter().map(|s| s.as_ref().to_lowercase()).collect(),
            elisions: elisions
                .into_iter()
                .map(|s| s.as_ref().to_lowercase().replace('\u{2019}', "'"))
                .collect(),
        }
    }

    pub fn is_clitic(&self, word: &str) -> bool {
        self.clitics.contains(&word.to_lowercase())
    }

    pub fn is_elision(&self, prefix: &str) -> bool {
        self.elisions.contains(&prefix.to_lowercase())
    }

    pub fn tokenize(&self, text: &str) -> Vec<Token> {
        let mut tokens = Vec::new();
        let mut rest = text;
        loop {
            let trimmed = rest.trim_start();
            let space = &rest[..rest.len() - trimmed.len()];
            if trimmed.is_empty() {
                break;
            }
            let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
            let first = tokens.len();
            self.chunk(&trimmed[..end], &mut tokens);
            if let Some(t) = tokens.get_mut(first) {
                t.space_before = space.to_string();
            }
            rest = &trimmed[end..];
        }
        tokens
    }

    /// Tokenizes raw bytes, replacing invalid UTF-8. The flag is true when
    /// a replacement happened.
    pub fn tokenize_bytes(&self, bytes: &[u8]) -> (Vec<Token>, bool) {
        match String::from_utf8_lossy(bytes) {
            Cow::Borrowed(s) => (self.tokenize(s), false),
            Cow::Owned(s) => (self.tokenize(&s), true),
        }
    }

    /// One whitespace-free chunk.
    fn chunk(&self, chunk: &str, out: &mut Vec<Token>) {
        let chars: Vec<(usize, char)> = chunk.char_indices().collect();
        let mut word_start: Option<usize> = None;
        let mut after_elision = false;
        let mut i = 0;
        while i < chars.len() {
            let (pos, c) = chars[i];
            let numeric_sep = (c == '.' || c == ',')
                && word_start.is_some()
                && i > 0
                && chars[i - 1].1.is_ascii_digit()
                && chars.get(i + 1).is_some_and(|(_, n)| n.is_ascii_digit());
            if is_apostrophe(c) {
                if let Some(start) = word_start {
                    let mut prefix = String::from(&chunk[start..pos]);
                    prefix.push('\'');
                    if self.is_elision(&prefix) {
                        out.push(Token::new(prefix, TokenKind::Word, Origin::ElisionPrefix));
                        word_start = None;
                        after_elision = true;
                        i += 1;
                        continue;
                    }
                }
            }
            if (is_punctuation(c) || is_apostrophe(c)) && !numeric_sep {
                if let Some(start) = word_start.take() {
                    self.word(&chunk[start..pos], after_elision, out);
                }
                after_elision = false;
                let text = if is_apostrophe(c) { "'".to_string() } else { c.to_string() };
                out.push(Token::new(text, TokenKind::Punctuation, Origin::Plain));
            } else if word_start.is_none() {
                word_start = Some(pos);
            }
            i += 1;
        }
        if let Some(start) = word_start {
            self.word(&chunk[start..], after_elision, out);
        }
    }

    /// A punctuation-free word: peel clitics off the right.
    fn word(&self, word: &str, after_elision: bool, out: &mut Vec<Token>) {
        let mut clitics: Vec<&str> = Vec::new();
        let mut head = word;
        let mut euphonic = false;
        while let Some(idx) = head.rfind('-') {
            let (left, right) = (&head[..idx], &head[idx + 1..]);
            if left.is_empty() || right.is_empty() || !self.is_clitic(right) {
                break;
            }
            clitics.push(right);
            if clitics.len() == 1 {
                if let Some(stem) = left.strip_suffix("-t") {
                    if !stem.is_empty() && !stem.ends_with('-') {
                        euphonic = true;
                        head = stem;
                        break;
                    }
                }
            }
            head = left;
        }
        if clitics.is_empty() {
            let origin = if after_elision {
                Origin::ElisionStem
            } else {
                Origin::Plain
            };
            out.push(Token::new(word.to_string(), TokenKind::Word, origin));
            return;
        }
        let mut head_text = head.to_string();
        head_text.push_str(if euphonic { "-t-" } else { "-" });
        out.push(Token::new(head_text, TokenKind::Word, Origin::CliticHead));
        for c in clitics.iter().rev() {
            let mut text = String::from("-");
            text.push_str(c);
            out.push(Token::new(text, TokenKind::Word, Origin::CliticPronoun));
        }
    }
}

/// Rebuilds text from tokens: whitespace restored, each doubled
/// head/clitic hyphen collapsed back to one.
pub fn detokenize(tokens: &[Token]) -> String {
    let mut out = String::new();
    for t in tokens {
        out.push_str(&t.space_before);
        if t.origin == Origin::CliticPronoun && out.ends_with('-') && t.text.starts_with('-') {
            out.push_str(&t.text[1..]);
        } else {
            out.push_str(&t.text);
        }
    }
    out
}
