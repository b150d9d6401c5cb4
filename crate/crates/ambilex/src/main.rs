use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use ambilex::{commands, Error, PipelineConfig};
use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "ambilex", version, about = "Reduced-tagset lexicon compiler and ambiguity-class analyzer")]
struct Cli {
    /// Pipeline configuration (key=value).
    #[arg(short, long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compile the source lexicon into a binary lexicon.
    Build {
        /// Output file; defaults to `compiled_lexicon` from the config.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print one token per line.
    Tokenize {
        /// Input files; standard input when absent.
        files: Vec<PathBuf>,
    },
    /// Print `token<TAB>tags<TAB>source` for each token.
    Analyze {
        /// Compiled lexicon to use instead of the configured one.
        #[arg(short, long)]
        lexicon: Option<PathBuf>,
        /// Input files; standard input when absent.
        files: Vec<PathBuf>,
    },
    /// Run the ending guesser on words (or standard input lines).
    Guess { words: Vec<String> },
    /// Rank source-lexicon endings by type count per tag.
    SuffixReport {
        /// Rows kept per suffix length and tag.
        #[arg(short = 'k', long = "top", default_value_t = 10)]
        top: usize,
    },
    /// Score guessed classes against a gold file.
    Evaluate {
        /// Gold file: `token<TAB>TAG(,TAG)*`.
        gold: PathBuf,
        /// Guessed classes in `analyze` output form; the guesser runs on
        /// the gold tokens when absent.
        #[arg(short, long)]
        guessed: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), Error> {
    let cfg = match &cli.config {
        Some(path) => PipelineConfig::load(path)?,
        None => PipelineConfig::new(),
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut warn = io::stderr();
    match cli.command {
        Command::Build { output } => commands::build(&cfg, output.as_deref(), &mut out, &mut warn)?,
        Command::Tokenize { files } => commands::tokenize(&cfg, &files, &mut out, &mut warn)?,
        Command::Analyze { lexicon, files } => commands::analyze(&cfg, lexicon.as_deref(), &files, &mut out, &mut warn)?,
        Command::Guess { words } => commands::guess(&cfg, &words, &mut out)?,
        Command::SuffixReport { top } => commands::suffix_report(&cfg, top, &mut out, &mut warn)?,
        Command::Evaluate { gold, guessed } => commands::evaluate(&cfg, &gold, guessed.as_deref(), &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
