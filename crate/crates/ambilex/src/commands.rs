//! Subcommand bodies. Data goes to `out`, warnings to `warn`.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::thread;

use ambilex_core::guesser::suffix_report as rank_suffixes;
use ambilex_core::metrics::{evaluate as score, parse_gold};
use ambilex_core::pipeline::{build_lexicon, Analyzer};
use ambilex_core::rewrite::derive_classes;
use ambilex_core::{parse_source, AmbiguityClass, Lexicon, TagInventory};

use crate::config::read_text;
use crate::{Error, PipelineConfig};

/// A text input: a file, or standard input when `None`.
pub type Input = Option<PathBuf>;

fn read_input(input: &Input) -> Result<(String, Vec<u8>), Error> {
    match input {
        Some(path) => {
            let bytes = fs::read(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            Ok((path.display().to_string(), bytes))
        }
        None => {
            let mut bytes = Vec::new();
            io::stdin().read_to_end(&mut bytes).map_err(|source| Error::Io {
                path: PathBuf::from("<stdin>"),
                source,
            })?;
            Ok(("<stdin>".to_string(), bytes))
        }
    }
}

fn inputs_or_stdin(inputs: &[PathBuf]) -> Vec<Input> {
    if inputs.is_empty() {
        vec![None]
    } else {
        inputs.iter().cloned().map(Some).collect()
    }
}

/// Compiles the source lexicon and writes it to `output` (or the
/// configured `compiled_lexicon`).
pub fn build(cfg: &PipelineConfig, output: Option<&Path>, out: &mut dyn Write, warn: &mut dyn Write) -> Result<(), Error> {
    let target = output
        .map(Path::to_path_buf)
        .or_else(|| cfg.compiled_lexicon.clone())
        .ok_or_else(|| Error::Usage("no output path: pass --output or set compiled_lexicon".into()))?;
    let inv = cfg.inventory()?;
    let rules = cfg.rules(&inv)?;
    let (text, origin) = cfg.source_text()?;
    let built = build_lexicon(&text, &rules, &inv, cfg.strict_rewrite).map_err(|e| Error::data(&origin, e))?;
    for d in &built.diagnostics {
        writeln!(warn, "warning: {}: {d}", origin.display())?;
    }
    if built.source_entries == 0 {
        writeln!(warn, "warning: {}: source lexicon is empty", origin.display())?;
    }
    let lex = &built.lexicon;
    fs::write(&target, lex.to_bytes()).map_err(|source| Error::Io {
        path: target.clone(),
        source,
    })?;
    writeln!(
        out,
        "entries={} states={} transitions={} classes={}",
        lex.len(),
        lex.state_count(),
        lex.transition_count(),
        lex.classes().len()
    )?;
    Ok(())
}

/// Loads a compiled lexicon, or compiles the source lexicon in memory
/// when none is given or configured.
pub fn load_lexicon(cfg: &PipelineConfig, path: Option<&Path>, inv: &TagInventory) -> Result<Lexicon, Error> {
    match path.map(Path::to_path_buf).or_else(|| cfg.compiled_lexicon.clone()) {
        Some(p) => {
            let bytes = fs::read(&p).map_err(|source| Error::Io { path: p.clone(), source })?;
            Lexicon::from_bytes(&bytes).map_err(|e| Error::data(&p, e))
        }
        None => {
            let rules = cfg.rules(inv)?;
            let (text, origin) = cfg.source_text()?;
            let built = build_lexicon(&text, &rules, inv, cfg.strict_rewrite).map_err(|e| Error::data(&origin, e))?;
            Ok(built.lexicon)
        }
    }
}

pub fn tokenize(cfg: &PipelineConfig, inputs: &[PathBuf], out: &mut dyn Write, warn: &mut dyn Write) -> Result<(), Error> {
    let tk = cfg.tokenizer()?;
    for input in inputs_or_stdin(inputs) {
        let (name, bytes) = read_input(&input)?;
        let (tokens, replaced) = tk.tokenize_bytes(&bytes);
        if replaced {
            writeln!(warn, "warning: {name}: invalid UTF-8 replaced")?;
        }
        for t in tokens {
            writeln!(out, "{}", t.text)?;
        }
    }
    Ok(())
}

/// Annotates each input; files are processed in parallel and printed in
/// argument order.
pub fn analyze(
    cfg: &PipelineConfig,
    lexicon: Option<&Path>,
    inputs: &[PathBuf],
    out: &mut dyn Write,
    warn: &mut dyn Write,
) -> Result<(), Error> {
    let inv = cfg.inventory()?;
    let analyzer = Analyzer {
        tokenizer: cfg.tokenizer()?,
        lexicon: load_lexicon(cfg, lexicon, &inv)?,
        guesser: cfg.guesser(&inv)?,
        punct: cfg.punct(&inv)?,
    };
    let texts = inputs_or_stdin(inputs)
        .iter()
        .map(read_input)
        .collect::<Result<Vec<_>, _>>()?;
    let results: Vec<(String, bool)> = thread::scope(|s| {
        let handles: Vec<_> = texts
            .iter()
            .map(|(_, bytes)| {
                let analyzer = &analyzer;
                s.spawn(move || {
                    let (tokens, replaced) = analyzer.tokenizer.tokenize_bytes(bytes);
                    let mut text = String::new();
                    for t in tokens {
                        text.push_str(&analyzer.classify(t).to_line());
                        text.push('\n');
                    }
                    (text, replaced)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("analysis thread panicked")).collect()
    });
    for ((name, _), (text, replaced)) in texts.iter().zip(results) {
        if replaced {
            writeln!(warn, "warning: {name}: invalid UTF-8 replaced")?;
        }
        out.write_all(text.as_bytes())?;
    }
    Ok(())
}

/// Guesses each word given, or each line of standard input.
pub fn guess(cfg: &PipelineConfig, words: &[String], out: &mut dyn Write) -> Result<(), Error> {
    let inv = cfg.inventory()?;
    let table = cfg.guesser(&inv)?;
    let stdin_words;
    let words: Vec<&str> = if words.is_empty() {
        let (_, bytes) = read_input(&None)?;
        stdin_words = String::from_utf8_lossy(&bytes).into_owned();
        stdin_words.lines().map(str::trim).filter(|w| !w.is_empty()).collect()
    } else {
        words.iter().map(String::as_str).collect()
    };
    for w in words {
        writeln!(out, "{w}\t{}", table.guess(w).joined(","))?;
    }
    Ok(())
}

/// Ranks endings of the source lexicon by type count.
pub fn suffix_report(cfg: &PipelineConfig, k: usize, out: &mut dyn Write, warn: &mut dyn Write) -> Result<(), Error> {
    if k == 0 {
        return Err(Error::Usage("--top must be at least 1".into()));
    }
    let inv = cfg.inventory()?;
    let rules = cfg.rules(&inv)?;
    let (text, origin) = cfg.source_text()?;
    let entries = parse_source(&text).map_err(|e| Error::data(&origin, e))?;
    let derived = derive_classes(&entries, &rules, &inv, cfg.strict_rewrite).map_err(|e| Error::data(&origin, e))?;
    if derived.classes.is_empty() {
        writeln!(warn, "warning: {}: source lexicon is empty", origin.display())?;
    }
    let rows = rank_suffixes(derived.classes.iter().map(|(w, c)| (w.as_str(), c)), k).expect("k checked");
    writeln!(out, "length\ttag\tsuffix\ttypes")?;
    for r in rows {
        writeln!(out, "{}\t{}\t{}\t{}", r.length, r.tag, r.suffix, r.types)?;
    }
    Ok(())
}

/// Reads `token<TAB>TAG,...[<TAB>...]` lines as produced by `analyze`.
fn parse_guessed(text: &str, origin: &Path, inv: &TagInventory) -> Result<Vec<(String, AmbiguityClass)>, Error> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        let (Some(token), Some(tags)) = (fields.next(), fields.next()) else {
            return Err(Error::data(origin, format!("line {}: expected token<TAB>TAGS", idx + 1)));
        };
        let class = inv
            .make_class(tags.split(',').map(str::trim).filter(|t| !t.is_empty()))
            .map_err(|e| Error::data(origin, format!("line {}: {e}", idx + 1)))?;
        rows.push((token.to_string(), class));
    }
    Ok(rows)
}

/// Scores guessed classes against a gold file. Without `guessed`, the
/// guesser is run on every gold token.
pub fn evaluate(cfg: &PipelineConfig, gold: &Path, guessed: Option<&Path>, out: &mut dyn Write) -> Result<(), Error> {
    let inv = cfg.inventory()?;
    let records = parse_gold(&read_text(gold)?, &inv).map_err(|e| Error::data(gold, e))?;
    let classes: Vec<AmbiguityClass> = match guessed {
        Some(path) => {
            let rows = parse_guessed(&read_text(path)?, path, &inv)?;
            if rows.len() != records.len() {
                return Err(Error::data(
                    path,
                    format!("{} rows, gold has {}", rows.len(), records.len()),
                ));
            }
            for (i, ((token, _), g)) in rows.iter().zip(&records).enumerate() {
                if *token != g.token {
                    return Err(Error::data(path, format!("row {}: `{token}` where gold has `{}`", i + 1, g.token)));
                }
            }
            rows.into_iter().map(|(_, c)| c).collect()
        }
        None => {
            let table = cfg.guesser(&inv)?;
            records.iter().map(|g| table.guess(&g.token)).collect()
        }
    };
    let report = score(classes.iter().zip(records.iter().map(|g| &g.required))).map_err(|e| Error::data(gold, e))?;
    write!(out, "{report}")?;
    write!(out, "{}", report.key_values())?;
    Ok(())
}
