//! `key=value` pipeline configuration.
//!
//! Relative paths resolve against the directory holding the config file.
//! Any data file left unset falls back to the built-in default.

use std::fs;
use std::path::{Path, PathBuf};

use ambilex_core::data;
use ambilex_core::pipeline::PunctMap;
use ambilex_core::{GuesserTable, RuleSet, TagInventory, Tokenizer};

use crate::Error;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PipelineConfig {
    pub inventory: Option<PathBuf>,
    pub rules: Option<PathBuf>,
    pub source_lexicon: Option<PathBuf>,
    pub guesser_table: Option<PathBuf>,
    pub clitics: Option<PathBuf>,
    pub elisions: Option<PathBuf>,
    pub punctuation: Option<PathBuf>,
    pub compiled_lexicon: Option<PathBuf>,
    pub strict_rewrite: bool,
    pub noun_default: bool,
}

impl PipelineConfig {
    pub fn new() -> Self {
        PipelineConfig {
            noun_default: true,
            ..Default::default()
        }
    }

    pub fn parse(text: &str, base: &Path) -> Result<Self, String> {
        let mut cfg = PipelineConfig::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body
                .split_once('=')
                .ok_or_else(|| format!("line {line}: expected key=value"))?;
            let (key, value) = (key.trim(), value.trim());
            let path = || Some(base.join(value));
            match key {
                "inventory" => cfg.inventory = path(),
                "rules" => cfg.rules = path(),
                "source_lexicon" => cfg.source_lexicon = path(),
                "guesser_table" => cfg.guesser_table = path(),
                "clitics" => cfg.clitics = path(),
                "elisions" => cfg.elisions = path(),
                "punctuation" => cfg.punctuation = path(),
                "compiled_lexicon" => cfg.compiled_lexicon = path(),
                "strict_rewrite" => cfg.strict_rewrite = flag(value, line)?,
                "noun_default" => cfg.noun_default = flag(value, line)?,
                _ => return Err(format!("line {line}: unknown key `{key}`")),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = read_text(path)?;
        let base = path.parent().unwrap_or(Path::new(""));
        PipelineConfig::parse(&text, base).map_err(|message| Error::data(path, message))
    }

    pub fn inventory(&self) -> Result<TagInventory, Error> {
        match &self.inventory {
            Some(p) => TagInventory::parse(&read_text(p)?).map_err(|e| Error::data(p, e)),
            None => Ok(TagInventory::default()),
        }
    }

    pub fn rules(&self, inv: &TagInventory) -> Result<RuleSet, Error> {
        let (text, origin) = self.text_or(&self.rules, data::DEFAULT_RULES, "<default rules>")?;
        RuleSet::parse(&text, inv).map_err(|e| Error::data(&origin, e))
    }

    pub fn guesser(&self, inv: &TagInventory) -> Result<GuesserTable, Error> {
        let (text, origin) = self.text_or(&self.guesser_table, data::DEFAULT_PATTERNS, "<default patterns>")?;
        let table = GuesserTable::parse(&text, inv).map_err(|e| Error::data(&origin, e))?;
        Ok(table.with_default_noun(self.noun_default))
    }

    pub fn tokenizer(&self) -> Result<Tokenizer, Error> {
        let (clitics, _) = self.text_or(&self.clitics, data::DEFAULT_CLITICS, "")?;
        let (elisions, _) = self.text_or(&self.elisions, data::DEFAULT_ELISIONS, "")?;
        Ok(Tokenizer::new(
            ambilex_core::tokenizer::parse_word_list(&clitics),
            ambilex_core::tokenizer::parse_word_list(&elisions),
        ))
    }

    pub fn punct(&self, inv: &TagInventory) -> Result<PunctMap, Error> {
        match &self.punctuation {
            Some(p) => PunctMap::parse(&read_text(p)?, inv).map_err(|e| Error::data(p, e)),
            None => PunctMap::new(inv).map_err(|e| Error::data(Path::new("<default punctuation>"), e)),
        }
    }

    /// Source lexicon text and the name to report errors under.
    pub fn source_text(&self) -> Result<(String, PathBuf), Error> {
        self.text_or(&self.source_lexicon, data::FIXTURE_LEXICON, "<fixture lexicon>")
    }

    fn text_or(&self, path: &Option<PathBuf>, fallback: &str, name: &str) -> Result<(String, PathBuf), Error> {
        match path {
            Some(p) => Ok((read_text(p)?, p.clone())),
            None => Ok((fallback.to_string(), PathBuf::from(name))),
        }
    }
}

fn flag(value: &str, line: usize) -> Result<bool, String> {
    match value {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(format!("line {line}: expected a boolean, got `{value}`")),
    }
}

pub fn read_text(path: &Path) -> Result<String, Error> {
    let bytes = fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    String::from_utf8(bytes).map_err(|_| Error::data(path, "not valid UTF-8"))
}
