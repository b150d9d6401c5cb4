//! Scoring guessed classes against required-tag gold sets.
//!
//! For each word, required tags absent from the guess are missing and
//! guessed tags outside the gold set are irrelevant.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::tagset::{AmbiguityClass, ClassError, TagInventory};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldRecord {
    pub token: String,
    pub required: AmbiguityClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoldError {
    #[error("line {line}: expected `token<TAB>TAG(,TAG)*`")]
    Syntax { line: usize },
    #[error("line {line}: {source}")]
    Class { line: usize, source: ClassError },
}

/// Parses `token<TAB>TAG(,TAG)*` lines. A line without a tab is split at
/// its last run of whitespace, which accepts `token  TAG` layouts.
pub fn parse_gold(text: &str, inv: &TagInventory) -> Result<Vec<GoldRecord>, GoldError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let raw = raw.trim_end_matches('\r');
        if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
            continue;
        }
        let (token, tags) = match raw.split_once('\t') {
            Some(pair) => pair,
            None => raw
                .trim()
                .rsplit_once(char::is_whitespace)
                .ok_or(GoldError::Syntax { line })?,
        };
        let token = token.trim();
        if token.is_empty() {
            return Err(GoldError::Syntax { line });
        }
        let required = inv
            .make_class(tags.split(',').map(str::trim).filter(|t| !t.is_empty()))
            .map_err(|source| GoldError::Class { line, source })?;
        out.push(GoldRecord {
            token: token.to_string(),
            required,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("nothing to evaluate")]
pub struct EmptyEvaluation;

/// Raw evaluation counts. Percentages are derived on demand.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalReport {
    pub word_count: usize,
    pub tag_count: usize,
    pub words_all_required: usize,
    pub words_no_irrelevant: usize,
    pub words_perfect: usize,
    pub words_missing: usize,
    pub words_irrelevant: usize,
    pub missing_tag_total: usize,
    pub irrelevant_tag_total: usize,
}

impl EvalReport {
    fn add(&mut self, guessed: &AmbiguityClass, gold: &AmbiguityClass) {
        let missing = gold.tags().iter().filter(|t| !guessed.contains(t.as_str())).count();
        let irrelevant = guessed.tags().iter().filter(|t| !gold.contains(t.as_str())).count();
        self.word_count += 1;
        self.tag_count += guessed.len();
        self.missing_tag_total += missing;
        self.irrelevant_tag_total += irrelevant;
        if missing == 0 {
            self.words_all_required += 1;
        } else {
            self.words_missing += 1;
        }
        if irrelevant == 0 {
            self.words_no_irrelevant += 1;
        } else {
            self.words_irrelevant += 1;
        }
        if missing == 0 && irrelevant == 0 {
            self.words_perfect += 1;
        }
    }

    /// Sums the counts of two disjoint evaluations.
    pub fn merge(&self, other: &EvalReport) -> EvalReport {
        EvalReport {
            word_count: self.word_count + other.word_count,
            tag_count: self.tag_count + other.tag_count,
            words_all_required: self.words_all_required + other.words_all_required,
            words_no_irrelevant: self.words_no_irrelevant + other.words_no_irrelevant,
            words_perfect: self.words_perfect + other.words_perfect,
            words_missing: self.words_missing + other.words_missing,
            words_irrelevant: self.words_irrelevant + other.words_irrelevant,
            missing_tag_total: self.missing_tag_total + other.missing_tag_total,
            irrelevant_tag_total: self.irrelevant_tag_total + other.irrelevant_tag_total,
        }
    }

    /// Average tags per word, in tenths, rounded half up.
    pub fn avg_tags_tenths(&self) -> u64 {
        tenths(self.tag_count, self.word_count)
    }

    /// Average tags per word, in hundredths, rounded half up.
    pub fn avg_tags_hundredths(&self) -> u64 {
        ratio_rounded(self.tag_count, self.word_count, 100)
    }

    pub fn all_required_tenths(&self) -> u64 {
        tenths(self.words_all_required * 100, self.word_count)
    }

    pub fn no_irrelevant_tenths(&self) -> u64 {
        tenths(self.words_no_irrelevant * 100, self.word_count)
    }

    pub fn perfect_tenths(&self) -> u64 {
        tenths(self.words_perfect * 100, self.word_count)
    }

    /// Machine-readable `key=value` lines.
    pub fn key_values(&self) -> String {
        let mut s = String::new();
        let rows: [(&str, String); 14] = [
            ("word_count", self.word_count.to_string()),
            ("tag_count", self.tag_count.to_string()),
            ("avg_tags_per_word", fixed(self.avg_tags_hundredths(), 2)),
            ("words_all_required", self.words_all_required.to_string()),
            ("words_no_irrelevant", self.words_no_irrelevant.to_string()),
            ("words_perfect", self.words_perfect.to_string()),
            ("words_missing", self.words_missing.to_string()),
            ("words_irrelevant", self.words_irrelevant.to_string()),
            ("missing_tag_total", self.missing_tag_total.to_string()),
            ("irrelevant_tag_total", self.irrelevant_tag_total.to_string()),
            ("pct_all_required", fixed(self.all_required_tenths(), 1)),
            ("pct_no_irrelevant", fixed(self.no_irrelevant_tenths(), 1)),
            ("pct_perfect", fixed(self.perfect_tenths(), 1)),
            ("avg_tags_rounded", fixed(self.avg_tags_tenths(), 1)),
        ];
        for (k, v) in rows {
            s.push_str(&format!("{k}={v}\n"));
        }
        s
    }
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} words, {} tags, {} tags per word ({} raw)",
            self.word_count,
            self.tag_count,
            fixed(self.avg_tags_tenths(), 1),
            fixed(self.avg_tags_hundredths(), 2)
        )?;
        writeln!(
            f,
            "all required tags: {} words ({}%); {} words missing {} tags",
            self.words_all_required,
            fixed(self.all_required_tenths(), 1),
            self.words_missing,
            self.missing_tag_total
        )?;
        writeln!(
            f,
            "no irrelevant tags: {} words ({}%); {} words with {} irrelevant tags",
            self.words_no_irrelevant,
            fixed(self.no_irrelevant_tenths(), 1),
            self.words_irrelevant,
            self.irrelevant_tag_total
        )?;
        writeln!(
            f,
            "required tags only: {} words ({}%)",
            self.words_perfect,
            fixed(self.perfect_tenths(), 1)
        )
    }
}

/// `num / den` scaled by `scale`, rounded half up.
fn ratio_rounded(num: usize, den: usize, scale: u64) -> u64 {
    if den == 0 {
        return 0;
    }
    let (num, den) = (num as u64, den as u64);
    (2 * num * scale + den) / (2 * den)
}

fn tenths(num: usize, den: usize) -> u64 {
    ratio_rounded(num, den, 10)
}

fn fixed(value: u64, places: u32) -> String {
    let scale = 10u64.pow(places);
    format!("{}.{:0width$}", value / scale, value % scale, width = places as usize)
}

/// Scores `(guessed, gold)` pairs.
pub fn evaluate<'a, I>(pairs: I) -> Result<EvalReport, EmptyEvaluation>
where
    I: IntoIterator<Item = (&'a AmbiguityClass, &'a AmbiguityClass)>,
{
    let mut report = EvalReport::default();
    for (guessed, gold) in pairs {
        report.add(guessed, gold);
    }
    if report.word_count == 0 {
        return Err(EmptyEvaluation);
    }
    Ok(report)
}
