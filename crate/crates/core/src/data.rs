//! Shipped default configuration and the small fixture corpus.

/// Default rewrite rules for the fixture symbol set.
pub const DEFAULT_RULES: &str = include_str!("../data/default_rules.txt");

/// Default ending-pattern table for the guesser.
pub const DEFAULT_PATTERNS: &str = include_str!("../data/default_patterns.txt");

/// Default clitic pronoun list.
pub const DEFAULT_CLITICS: &str = include_str!("../data/clitics.txt");

/// Default elision list.
pub const DEFAULT_ELISIONS: &str = include_str!("../data/elisions.txt");

/// Fixture source lexicon in `surface<TAB>analysis` form.
pub const FIXTURE_LEXICON: &str = include_str!("../data/fixture_lexicon.txt");

/// Running text of the sample tagged newspaper passage.
pub const SAMPLE_TEXT: &str = include_str!("../data/sample_text.txt");

/// Token column and single gold tag of the sample passage.
pub const SAMPLE_GOLD: &str = include_str!("../data/sample_gold.tsv");

/// Fifty `token<TAB>TAG,...` pairs used for automaton minimality checks.
pub const MINIMALITY_50: &str = include_str!("../data/minimality_50.tsv");
