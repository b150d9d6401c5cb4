//! Fine-grained source lexicon: one `surface<TAB>analysis` record per line.
//!
//! An analysis is a head segment optionally followed by clitic segments,
//! joined by ` > ` (clitics after the head) or ` < ` (clitics before it):
//!
//! ```text
//! danses<TAB>danser +IndP +SG +P2 +Verb
//! vient-il<TAB>venir +IndP +SG +P3 +Verb > il +Nom +Masc +SG +P3 +PC
//! ```

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::tagset::strip_comment;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SourceError {
    #[error("line {line}: missing TAB between surface form and analysis")]
    MissingTab { line: usize },
    #[error("line {line}: empty surface form")]
    EmptySurface { line: usize },
    #[error("line {line}: segment `{segment}` has no `+` symbol")]
    NoSymbol { line: usize, segment: String },
    #[error("line {line}: segment `{segment}` has no lemma")]
    NoLemma { line: usize, segment: String },
    #[error("line {line}: `{text}` follows a symbol but does not start with `+`")]
    StraySymbol { line: usize, text: String },
    #[error("line {line}: dangling `{sep}` separator")]
    Dangling { line: usize, sep: char },
    #[error("line {line}: `<` and `>` clitics cannot be mixed in one analysis")]
    MixedSeparators { line: usize },
    #[error("line {line}: surface `{surface}` has too few hyphenated parts for {clitics} clitic(s)")]
    CliticMismatch {
        line: usize,
        surface: String,
        clitics: usize,
    },
}

/// A symbol of the original analyzer, such as `+IndP` or `+Verb`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FineSymbol(String);

impl FineSymbol {
    /// Accepts any whitespace-free name starting with `+`.
    pub fn new(name: &str) -> Option<Self> {
        if name.len() > 1 && name.starts_with('+') && !name.chars().any(char::is_whitespace) {
            Some(FineSymbol(name.to_string()))
        } else {
            None
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for FineSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A lemma with its fine symbols: `venir +IndP +SG +P3 +Verb`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisSegment {
    pub lemma: String,
    pub symbols: Vec<FineSymbol>,
}

impl AnalysisSegment {
    pub fn new(lemma: &str, symbols: &[&str]) -> Option<Self> {
        if lemma.is_empty() || symbols.is_empty() {
            return None;
        }
        let symbols = symbols
            .iter()
            .map(|s| FineSymbol::new(s))
            .collect::<Option<Vec<_>>>()?;
        Some(AnalysisSegment {
            lemma: lemma.to_string(),
            symbols,
        })
    }

    fn parse(text: &str, line: usize) -> Result<Self, SourceError> {
        let mut lemma_words: Vec<&str> = Vec::new();
        let mut symbols = Vec::new();
        for word in text.split_whitespace() {
            if let Some(sym) = FineSymbol::new(word) {
                symbols.push(sym);
            } else if symbols.is_empty() {
                lemma_words.push(word);
            } else {
                return Err(SourceError::StraySymbol {
                    line,
                    text: word.to_string(),
                });
            }
        }
        if symbols.is_empty() {
            return Err(SourceError::NoSymbol {
                line,
                segment: text.trim().to_string(),
            });
        }
        if lemma_words.is_empty() {
            return Err(SourceError::NoLemma {
                line,
                segment: text.trim().to_string(),
            });
        }
        Ok(AnalysisSegment {
            lemma: lemma_words.join(" "),
            symbols,
        })
    }
}

impl fmt::Display for AnalysisSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.lemma)?;
        for s in &self.symbols {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

/// One analysis of one surface form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceEntry {
    pub surface: String,
    pub head: AnalysisSegment,
    pub pre_clitics: Vec<AnalysisSegment>,
    pub post_clitics: Vec<AnalysisSegment>,
    /// 1-based line in the source file, 0 when built in code.
    pub line: usize,
}

impl SourceEntry {
    pub fn is_cliticised(&self) -> bool {
        !self.pre_clitics.is_empty() || !self.post_clitics.is_empty()
    }

    /// Splits the entry into one `(token, segment)` pair per segment, in
    /// surface order.
    ///
    /// Post-clitic heads keep a trailing hyphen (`danses-`, or `chante-t-`
    /// when the euphonic t is present) and post-clitics get a leading one
    /// (`-tu`). Pre-clitics get a trailing hyphen and leave the head bare.
    pub fn split_cliticised(&self) -> Vec<(String, &AnalysisSegment)> {
        if !self.is_cliticised() {
            return alloc::vec![(self.surface.clone(), &self.head)];
        }
        let parts: Vec<&str> = self.surface.split('-').collect();
        let mut out = Vec::with_capacity(1 + self.pre_clitics.len() + self.post_clitics.len());

        let pre = self.pre_clitics.len();
        for (part, seg) in parts.iter().zip(&self.pre_clitics) {
            let mut token = String::from(*part);
            token.push('-');
            out.push((token, seg));
        }

        let post = self.post_clitics.len();
        let clitic_start = parts.len() - post;
        let euphonic = post > 0 && clitic_start >= pre + 2 && parts[clitic_start - 1] == "t";
        let head_end = if euphonic { clitic_start - 1 } else { clitic_start };
        let mut head = parts[pre..head_end].join("-");
        if post > 0 {
            head.push_str(if euphonic { "-t-" } else { "-" });
        }
        out.push((head, &self.head));

        for (part, seg) in parts[clitic_start..].iter().zip(&self.post_clitics) {
            let mut token = String::from("-");
            token.push_str(part);
            out.push((token, seg));
        }
        out
    }
}

impl fmt::Display for SourceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}", self.surface, self.head)?;
        for seg in &self.pre_clitics {
            write!(f, " < {seg}")?;
        }
        for seg in &self.post_clitics {
            write!(f, " > {seg}")?;
        }
        Ok(())
    }
}

/// Joins split tokens back into a surface form, collapsing each
/// `head-` / `-clitic` boundary to a single hyphen.
pub fn join_split_tokens<'a, I: IntoIterator<Item = &'a str>>(tokens: I) -> String {
    let mut out = String::new();
    for tok in tokens {
        if out.ends_with('-') && tok.starts_with('-') {
            out.push_str(&tok[1..]);
        } else {
            out.push_str(tok);
        }
    }
    out
}

/// Parses a whole source lexicon file.
pub fn parse_source(text: &str) -> Result<Vec<SourceEntry>, SourceError> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        entries.push(parse_line(body, line)?);
    }
    Ok(entries)
}

fn parse_line(body: &str, line: usize) -> Result<SourceEntry, SourceError> {
    let (surface, analysis) = body
        .split_once('\t')
        .ok_or(SourceError::MissingTab { line })?;
    let surface = surface.trim();
    if surface.is_empty() {
        return Err(SourceError::EmptySurface { line });
    }

    // Split on `<`/`>` tokens that stand alone between spaces.
    let mut pieces: Vec<(Option<char>, String)> = alloc::vec![(None, String::new())];
    for word in analysis.split_whitespace() {
        match word {
            "<" | ">" => pieces.push((word.chars().next(), String::new())),
            _ => {
                let buf = &mut pieces.last_mut().expect("non-empty").1;
                if !buf.is_empty() {
                    buf.push(' ');
                }
                buf.push_str(word);
            }
        }
    }
    let mut seps = pieces.iter().filter_map(|(s, _)| *s);
    if let Some(first) = seps.next() {
        if seps.any(|s| s != first) {
            return Err(SourceError::MixedSeparators { line });
        }
    }

    if let Some(i) = pieces.iter().position(|(_, text)| text.is_empty()) {
        return Err(match (i, pieces.len()) {
            (0, 1) => SourceError::NoSymbol {
                line,
                segment: String::new(),
            },
            (0, _) => SourceError::Dangling {
                line,
                sep: pieces[1].0.expect("later pieces carry a separator"),
            },
            _ => SourceError::Dangling {
                line,
                sep: pieces[i].0.expect("later pieces carry a separator"),
            },
        });
    }

    let mut head = None;
    let mut pre_clitics = Vec::new();
    let mut post_clitics = Vec::new();
    for (sep, text) in pieces {
        let seg = AnalysisSegment::parse(&text, line)?;
        match sep {
            None => head = Some(seg),
            Some('<') => pre_clitics.push(seg),
            Some(_) => post_clitics.push(seg),
        }
    }

    let clitics = pre_clitics.len() + post_clitics.len();
    if clitics > 0 && surface.split('-').filter(|p| !p.is_empty()).count() < clitics + 1 {
        return Err(SourceError::CliticMismatch {
            line,
            surface: surface.to_string(),
            clitics,
        });
    }

    Ok(SourceEntry {
        surface: surface.to_string(),
        head: head.expect("first piece is the head"),
        pre_clitics,
        post_clitics,
        line,
    })
}

/// Re-serializes entries in file syntax.
pub fn write_source(entries: &[SourceEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        out.push_str(&e.to_string());
        out.push('\n');
    }
    out
}
