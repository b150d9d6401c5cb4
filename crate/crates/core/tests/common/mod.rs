//! Independent reference implementations shared by the property suites and
//! the acceptance harness. None of them reuse library matching logic.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use ambilex_core::tagset::{AmbiguityClass, TagInventory};
use proptest::prelude::*;

// ---------------------------------------------------------------- rewrite

/// A rule as plain strings: (left, target, right, replacement or None).
pub type PlainRule = (Vec<String>, String, Vec<String>, Option<String>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fate {
    Tag(String),
    Deleted,
    Unmatched,
}

/// First rule in list order whose window fits around `pos`.
pub fn oracle_fate(rules: &[PlainRule], symbols: &[String], pos: usize) -> Fate {
    'rules: for (left, target, right, replacement) in rules {
        if &symbols[pos] != target {
            continue;
        }
        if left.len() > pos || pos + 1 + right.len() > symbols.len() {
            continue;
        }
        for (k, sym) in left.iter().enumerate() {
            if &symbols[pos - left.len() + k] != sym {
                continue 'rules;
            }
        }
        for (k, sym) in right.iter().enumerate() {
            if &symbols[pos + 1 + k] != sym {
                continue 'rules;
            }
        }
        return match replacement {
            Some(t) => Fate::Tag(t.clone()),
            None => Fate::Deleted,
        };
    }
    Fate::Unmatched
}

/// Tags and unmatched symbols of a whole segment, positions visited in
/// `order`, results reassembled by position.
pub fn oracle_segment(rules: &[PlainRule], symbols: &[String], order: &[usize]) -> (Vec<String>, Vec<String>) {
    let mut fates = vec![Fate::Unmatched; symbols.len()];
    for &pos in order {
        fates[pos] = oracle_fate(rules, symbols, pos);
    }
    let mut tags = Vec::new();
    let mut unmatched = Vec::new();
    for (pos, fate) in fates.into_iter().enumerate() {
        match fate {
            Fate::Tag(t) => tags.push(t),
            Fate::Deleted => {}
            Fate::Unmatched => unmatched.push(symbols[pos].clone()),
        }
    }
    (tags, unmatched)
}

pub fn rule_text(rules: &[PlainRule]) -> String {
    let ctx = |c: &[String]| if c.is_empty() { "_".to_string() } else { c.join(" ") };
    rules
        .iter()
        .map(|(l, t, r, rep)| {
            format!("{} | {} | {} -> {}\n", ctx(l), t, ctx(r), rep.as_deref().unwrap_or("0"))
        })
        .collect()
}

pub const RULE_SYMBOLS: [&str; 4] = ["+A", "+B", "+C", "+D"];
pub const RULE_TAGS: [&str; 3] = ["NOUN-SG", "ADV", "PRON"];

fn arb_symbol() -> impl Strategy<Value = String> {
    proptest::sample::select(RULE_SYMBOLS.to_vec()).prop_map(String::from)
}

pub fn arb_rule() -> impl Strategy<Value = PlainRule> {
    (
        proptest::collection::vec(arb_symbol(), 0..3),
        arb_symbol(),
        proptest::collection::vec(arb_symbol(), 0..3),
        proptest::option::weighted(0.7, proptest::sample::select(RULE_TAGS.to_vec()).prop_map(String::from)),
    )
}

pub fn arb_rules() -> impl Strategy<Value = Vec<PlainRule>> {
    proptest::collection::vec(arb_rule(), 0..10)
}

pub fn arb_symbols() -> impl Strategy<Value = Vec<String>> {
    proptest::collection::vec(arb_symbol(), 1..7)
}

// ---------------------------------------------------------------- guesser

/// (suffix, tags, noun excluded)
pub type PlainPattern = (String, Vec<String>, bool);

/// Checks every suffix of `token`, longest first, and applies the noun
/// default to the winner.
pub fn oracle_guess(patterns: &[PlainPattern], token: &str, default_noun: bool) -> Vec<String> {
    let mut word = token;
    if let Some(stem) = word.strip_suffix("-t-").filter(|s| !s.is_empty()) {
        word = stem;
    } else if !word.trim_end_matches('-').is_empty() {
        word = word.trim_end_matches('-');
    }
    if word.chars().next().is_some_and(char::is_uppercase) {
        return vec!["NOUN-INV".to_string()];
    }
    let lower = word.to_lowercase();
    let noun = if lower.ends_with('s') || lower.ends_with('x') { "NOUN-PL" } else { "NOUN-SG" };
    let chars: Vec<char> = lower.chars().collect();
    let mut hit = None;
    for start in 0..=chars.len() {
        let suffix: String = chars[start..].iter().collect();
        if let Some(p) = patterns.iter().find(|p| p.0 == suffix) {
            hit = Some(p);
            break;
        }
    }
    let mut tags: BTreeSet<String> = BTreeSet::new();
    match hit {
        Some((_, ptags, excluded)) => {
            tags.extend(ptags.iter().cloned());
            let has_noun = ptags.iter().any(|t| t.starts_with("NOUN"));
            if default_noun && !has_noun && !excluded {
                tags.insert(noun.to_string());
            }
        }
        None => {
            tags.insert(noun.to_string());
        }
    }
    tags.into_iter().collect()
}

pub fn pattern_text(patterns: &[PlainPattern]) -> String {
    patterns
        .iter()
        .map(|(s, tags, ex)| format!("{} {}{}\n", s, tags.join(" "), if *ex { " !noun" } else { "" }))
        .collect()
}

pub const GUESS_LETTERS: [char; 6] = ['a', 'e', 's', 'x', 'é', 'r'];
pub const GUESS_TAGS: [&str; 5] = ["ADV", "ADJ-SG", "VERB-INF", "NOUN-SG", "NOUN-PL"];

fn arb_letters(len: std::ops::Range<usize>) -> impl Strategy<Value = String> {
    proptest::collection::vec(proptest::sample::select(GUESS_LETTERS.to_vec()), len)
        .prop_map(|cs| cs.into_iter().collect())
}

pub fn arb_patterns() -> impl Strategy<Value = Vec<PlainPattern>> {
    proptest::collection::vec(
        (
            arb_letters(1..5),
            proptest::sample::subsequence(GUESS_TAGS.to_vec(), 1..3),
            any::<bool>(),
        ),
        0..9,
    )
    .prop_map(|raw| {
        let mut seen = BTreeSet::new();
        raw.into_iter()
            .filter(|(s, _, _)| seen.insert(s.clone()))
            .take(8)
            .map(|(s, tags, ex)| {
                let has_noun = tags.iter().any(|t| t.starts_with("NOUN"));
                (s, tags.into_iter().map(String::from).collect(), ex && !has_noun)
            })
            .collect()
    })
}

/// Tokens of up to ten characters, sometimes capitalised, sometimes with
/// a clitic-head hyphen.
pub fn arb_token() -> impl Strategy<Value = String> {
    (arb_letters(1..11), 0u8..6).prop_map(|(w, mode)| match mode {
        0 => {
            let mut cs = w.chars();
            let first: String = cs.next().unwrap().to_uppercase().collect();
            first + cs.as_str()
        }
        1 => w + "-",
        2 => w + "-t-",
        _ => w,
    })
}

// ---------------------------------------------------------------- automaton

/// Trie node count, and state/transition counts of the minimal automaton
/// obtained by Moore partition refinement of that trie.
pub struct Minimized {
    pub trie_states: usize,
    pub states: usize,
    pub transitions: usize,
}

pub fn oracle_minimize(entries: &[(String, String)]) -> Minimized {
    let mut children: Vec<BTreeMap<u8, usize>> = vec![BTreeMap::new()];
    let mut label: Vec<Option<String>> = vec![None];
    for (key, class) in entries {
        let mut node = 0;
        for &b in key.as_bytes() {
            node = match children[node].get(&b) {
                Some(&n) => n,
                None => {
                    children.push(BTreeMap::new());
                    label.push(None);
                    let n = children.len() - 1;
                    children[node].insert(b, n);
                    n
                }
            };
        }
        label[node] = Some(class.clone());
    }
    let n = children.len();
    let mut block: Vec<usize> = renumber(&label);
    loop {
        let sigs: Vec<(usize, Vec<(u8, usize)>)> = (0..n)
            .map(|s| (block[s], children[s].iter().map(|(&b, &t)| (b, block[t])).collect()))
            .collect();
        let next = renumber(&sigs);
        let before = block.iter().collect::<BTreeSet<_>>().len();
        let after = next.iter().collect::<BTreeSet<_>>().len();
        block = next;
        if before == after {
            break;
        }
    }
    let mut reps: BTreeMap<usize, usize> = BTreeMap::new();
    for (s, &b) in block.iter().enumerate() {
        reps.entry(b).or_insert(s);
    }
    Minimized {
        trie_states: n,
        states: reps.len(),
        transitions: reps.values().map(|&s| children[s].len()).sum(),
    }
}

fn renumber<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut ids: BTreeMap<T, usize> = BTreeMap::new();
    keys.iter()
        .map(|k| {
            let next = ids.len();
            *ids.entry(k.clone()).or_insert(next)
        })
        .collect()
}

// ---------------------------------------------------------------- fixtures

pub fn parse_pairs(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (k, v) = l.split_once('\t').expect("tab-separated");
            (k.to_string(), v.to_string())
        })
        .collect()
}

pub fn class(inv: &TagInventory, tags: &[&str]) -> AmbiguityClass {
    inv.make_class(tags.iter().copied()).unwrap()
}

/// 800 (guessed, gold) pairs whose counts were laid out by hand to hit
/// 1192 tags, 113 words missing 118 tags, 244 words with 273 irrelevant
/// tags and 504 perfect words.
pub fn synthetic_800() -> Vec<(AmbiguityClass, AmbiguityClass)> {
    let inv = TagInventory::default();
    let c = |t: &[&str]| class(&inv, t);
    let groups: [(usize, AmbiguityClass, AmbiguityClass); 8] = [
        (1, c(&["ADV"]), c(&["ADJ-SG", "PAP-SG", "VERB-P3SG"])),
        (3, c(&["NOUN-SG"]), c(&["ADJ-SG", "VERB-P3SG"])),
        (57, c(&["ADV", "NOUN-SG"]), c(&["ADJ-SG", "NOUN-SG"])),
        (52, c(&["NOUN-SG"]), c(&["ADJ-SG", "NOUN-SG"])),
        (154, c(&["ADV", "NOUN-SG"]), c(&["ADV"])),
        (29, c(&["ADV", "NOUN-SG", "VERB-INF"]), c(&["ADV"])),
        (123, c(&["ADJ-PL", "NOUN-PL"]), c(&["ADJ-PL", "NOUN-PL"])),
        (381, c(&["NOUN-INV"]), c(&["NOUN-INV"])),
    ];
    groups
        .into_iter()
        .flat_map(|(n, g, r)| std::iter::repeat_n((g, r), n))
        .collect()
}

// ---------------------------------------------------------------- suites

pub mod suites {
    use super::*;
    use ambilex_core::guesser::GuesserTable;
    use ambilex_core::lexicon::Lexicon;
    use ambilex_core::metrics::{evaluate, EvalReport};
    use ambilex_core::rewrite::{Resolution, RewriteError, RuleSet};
    use ambilex_core::source::{AnalysisSegment, FineSymbol};
    use ambilex_core::tokenizer::{detokenize, Tokenizer};
    use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

    /// Runs `test` on `cases` inputs from a fixed seed.
    pub fn run<S: Strategy>(
        cases: u32,
        strategy: S,
        test: impl Fn(S::Value) -> Result<(), TestCaseError>,
    ) -> Result<(), String> {
        let config = Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        };
        let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
        runner.run(&strategy, test).map_err(|e| e.to_string())
    }

    fn shuffled(n: usize, mut seed: u64) -> Vec<usize> {
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (seed >> 33) as usize % (i + 1));
        }
        order
    }

    /// Engine output equals the brute-force matcher, whatever order the
    /// oracle visits positions in.
    pub fn rewrite_oracle(cases: u32) -> Result<(), String> {
        let inv = TagInventory::default();
        run(cases, (arb_rules(), arb_symbols(), any::<u64>()), |(rules, symbols, seed)| {
            let set = RuleSet::parse(&rule_text(&rules), &inv).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let fine: Vec<FineSymbol> = symbols.iter().map(|s| FineSymbol::new(s).unwrap()).collect();
            for pos in 0..symbols.len() {
                let got = match set.resolve(&fine, pos) {
                    Resolution::Tag(t) => Fate::Tag(t.to_string()),
                    Resolution::Deleted => Fate::Deleted,
                    Resolution::Unmatched => Fate::Unmatched,
                };
                prop_assert_eq!(got, oracle_fate(&rules, &symbols, pos));
            }
            let refs: Vec<&str> = symbols.iter().map(String::as_str).collect();
            let segment = AnalysisSegment::new("x", &refs).unwrap();
            let (tags, unmatched) = oracle_segment(&rules, &symbols, &shuffled(symbols.len(), seed));
            match set.rewrite_segment(&segment, &inv, false) {
                Ok(out) => {
                    let got: Vec<String> = out.tags.iter().map(|t| t.to_string()).collect();
                    prop_assert_eq!(got, tags);
                    let got: Vec<String> = out.unmatched.iter().map(|s| s.to_string()).collect();
                    prop_assert_eq!(got, unmatched);
                }
                Err(RewriteError::NoTags { .. }) => prop_assert!(tags.is_empty()),
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
            Ok(())
        })
    }

    /// Trie lookup equals enumerating every suffix; output is always a
    /// valid class.
    pub fn guesser_oracle(cases: u32) -> Result<(), String> {
        let inv = TagInventory::default();
        run(cases, (arb_patterns(), arb_token(), any::<bool>()), |(patterns, token, noun)| {
            let table = GuesserTable::parse(&pattern_text(&patterns), &inv)
                .map_err(|e| TestCaseError::fail(e.to_string()))?
                .with_default_noun(noun);
            let class = table.guess(&token);
            prop_assert!(class.validate(&inv).is_ok());
            let got: Vec<String> = class.tags().iter().map(|t| t.to_string()).collect();
            prop_assert_eq!(got, oracle_guess(&patterns, &token, noun));
            Ok(())
        })
    }

    /// A pattern nested inside a longer one never wins over it.
    pub fn guesser_nested(cases: u32) -> Result<(), String> {
        let inv = TagInventory::default();
        let strategy = (arb_letters(1..4), arb_letters(1..4), arb_letters(0..5));
        run(cases, strategy, |(short, extra, stem)| {
            let long = format!("{extra}{short}");
            let text = format!("{short} ADV\n{long} VERB-INF !noun\n");
            let table = GuesserTable::parse(&text, &inv).unwrap();
            prop_assert_eq!(table.guess(&format!("{stem}{long}")).joined(","), "VERB-INF");
            Ok(())
        })
    }

    /// Uppercase-initial tokens are proper nouns whatever the table says.
    pub fn guesser_capitals(cases: u32) -> Result<(), String> {
        let inv = TagInventory::default();
        run(cases, (arb_patterns(), "[A-ZÉÈÀÇ][a-zé]{0,8}"), |(patterns, token)| {
            let table = GuesserTable::parse(&pattern_text(&patterns), &inv).unwrap();
            prop_assert_eq!(table.guess(&token).joined(","), "NOUN-INV");
            Ok(())
        })
    }

    /// State and transition counts match a Moore-minimised trie.
    pub fn check_minimal(entries: &[(String, String)]) -> Result<(), String> {
        let inv = TagInventory::default();
        let lex = Lexicon::build(entries.iter().map(|(k, v)| {
            let tags: Vec<&str> = v.split(',').collect();
            (k.clone(), class(&inv, &tags))
        }));
        let want = oracle_minimize(entries);
        if (lex.state_count(), lex.transition_count()) != (want.states, want.transitions) {
            return Err(format!(
                "automaton has {} states / {} transitions, minimal is {} / {}",
                lex.state_count(),
                lex.transition_count(),
                want.states,
                want.transitions
            ));
        }
        Ok(())
    }

    fn arb_entries() -> impl Strategy<Value = Vec<(String, String)>> {
        let class = proptest::sample::select(vec!["NOUN-SG", "VERB-INF", "ADV,NOUN-SG", "PRON"]);
        proptest::collection::btree_map("[a-dé]{0,6}", class, 0..40)
            .prop_map(|m| m.into_iter().map(|(k, v)| (k, v.to_string())).collect())
    }

    pub fn minimality_random(cases: u32) -> Result<(), String> {
        run(cases, arb_entries(), |entries| check_minimal(&entries).map_err(TestCaseError::fail))
    }

    /// Serialise, reload, and compare every entry.
    pub fn lexicon_roundtrip(cases: u32) -> Result<(), String> {
        let inv = TagInventory::default();
        run(cases, arb_entries(), |entries| {
            let lex = Lexicon::build(entries.iter().map(|(k, v)| {
                let tags: Vec<&str> = v.split(',').collect();
                (k.clone(), class(&inv, &tags))
            }));
            let back = Lexicon::from_bytes(&lex.to_bytes()).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(back.entries(), lex.entries());
            prop_assert_eq!(back.to_bytes(), lex.to_bytes());
            for (k, v) in &entries {
                prop_assert_eq!(back.lookup(k).map(|c| c.joined(",")), Some(v.clone()));
            }
            Ok(())
        })
    }

    fn arb_text() -> impl Strategy<Value = String> {
        let piece = prop_oneof![
            "[a-zA-Zéè]{1,8}",
            "[a-z]{1,5}-(il|tu|t-il|t-elle|le-moi|fleuve)",
            "(d|l|qu|jusqu|s|z)['’][a-zé]{1,6}",
            "[0-9]{1,3}[.,][0-9]{1,2}",
            "[.,;:?!()«»\"]",
        ];
        proptest::collection::vec((piece, "( |  |\n|\t)"), 0..12)
            .prop_map(|parts| parts.into_iter().map(|(p, s)| p + &s).collect())
    }

    /// Detokenizing recovers the text up to trailing whitespace and
    /// apostrophe normalisation; tokens are well formed.
    pub fn tokenizer_roundtrip(cases: u32) -> Result<(), String> {
        let tk = Tokenizer::default();
        run(cases, arb_text(), |text| {
            let tokens = tk.tokenize(&text);
            prop_assert_eq!(detokenize(&tokens), text.trim_end().replace('’', "'"));
            for t in &tokens {
                prop_assert!(!t.text.is_empty() && !t.text.contains(char::is_whitespace));
                if t.is_word() && t.text.starts_with('-') {
                    prop_assert!(tk.is_clitic(&t.text[1..]), "{}", t.text);
                }
                if t.is_word() && t.text.ends_with('\'') {
                    prop_assert!(tk.is_elision(&t.text), "{}", t.text);
                }
            }
            Ok(())
        })
    }

    /// `make_class` ignores input order and repetition.
    pub fn class_permutation(cases: u32) -> Result<(), String> {
        let inv = TagInventory::default();
        let names: Vec<String> = inv.tags().iter().map(|t| t.to_string()).collect();
        let strategy = (proptest::collection::vec(proptest::sample::select(names), 1..8), any::<u64>());
        run(cases, strategy, |(tags, seed)| {
            let base = inv.make_class(tags.iter()).unwrap();
            let permuted: Vec<&String> = shuffled(tags.len(), seed).into_iter().map(|i| &tags[i]).collect();
            prop_assert_eq!(&inv.make_class(permuted).unwrap(), &base);
            let doubled = tags.iter().chain(tags.iter());
            prop_assert_eq!(&inv.make_class(doubled).unwrap(), &base);
            let sorted = base.tags().windows(2).all(|w| w[0].as_str() < w[1].as_str());
            prop_assert!(sorted);
            Ok(())
        })
    }

    fn eval(pairs: &[(AmbiguityClass, AmbiguityClass)]) -> EvalReport {
        evaluate(pairs.iter().map(|(a, b)| (a, b))).unwrap()
    }

    /// Summing two partial reports equals evaluating the concatenation.
    pub fn metrics_additivity(cases: u32) -> Result<(), String> {
        let all = synthetic_800();
        run(cases, (0usize..all.len(), 1usize..all.len()), |(start, len)| {
            let end = (start + len).min(all.len());
            let (mid, rest) = (&all[start..end], [&all[..start], &all[end..]].concat());
            if rest.is_empty() {
                return Ok(());
            }
            prop_assert_eq!(eval(mid).merge(&eval(&rest)), eval(&all));
            Ok(())
        })
    }
}
