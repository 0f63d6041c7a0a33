use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use subreg::algebra::syntactic_monoid;
use subreg::automaton::{parse_symbol_table, read_att_acceptor, symbol_table};
use subreg::classify::{classify, ClassLabel};
use subreg::datagen::{self, Anchor, GenConfig, SizeClass};
use subreg::randdfa;
use subreg::scoring;
use subreg::{compile_expr, parse_expr, Alphabet, Dfa, LanguageSpec};

/// Subregular language toolkit: compile factor expressions, decide class
/// membership, and generate or check benchmark datasets.
///
/// Formats: acceptors are AT&T text (`src<TAB>dst<TAB>sym` arcs, bare
/// final-state lines, start = source of the first arc). Dataset splits are
/// `string<TAB>TRUE|FALSE` lines; prediction files add a third column with
/// the probability of the positive label.
#[derive(Parser)]
#[command(name = "subreg", version)]
struct Cli {
    /// Master seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; outputs do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output file or directory, depending on the command.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlphabetArgs {
    /// Use the first N canonical symbols (`abcd...`).
    #[arg(long, value_name = "N", conflicts_with_all = ["alphabet", "syms"])]
    sigma: Option<usize>,
    /// Use exactly these symbols, in this order.
    #[arg(long, value_name = "SYMBOLS", conflicts_with = "syms")]
    alphabet: Option<String>,
    /// Read the alphabet from an AT&T symbol table.
    #[arg(long, value_name = "FILE")]
    syms: Option<PathBuf>,
}

impl AlphabetArgs {
    fn resolve(&self) -> Result<Option<Alphabet>> {
        if let Some(n) = self.sigma {
            return Ok(Some(Alphabet::prefix(n)?));
        }
        if let Some(s) = &self.alphabet {
            return Ok(Some(Alphabet::new(s.chars())?));
        }
        if let Some(p) = &self.syms {
            return Ok(Some(parse_symbol_table(&read(p)?)?));
        }
        Ok(None)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AnchorArg {
    Positive,
    Negative,
}

impl From<AnchorArg> for Anchor {
    fn from(a: AnchorArg) -> Self {
        match a {
            AnchorArg::Positive => Anchor::Positive,
            AnchorArg::Negative => Anchor::Negative,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compile an expression to a minimal trim DFA in AT&T format.
    Compile {
        /// File holding the expression.
        #[arg(long, required_unless_present = "text", conflicts_with = "text")]
        expr: Option<PathBuf>,
        /// The expression itself.
        #[arg(long)]
        text: Option<String>,
        #[command(flatten)]
        alphabet: AlphabetArgs,
        /// Where to write the machine; defaults to --out, then stdout.
        #[arg(long)]
        att: Option<PathBuf>,
        /// Also write the symbol table here.
        #[arg(long, value_name = "FILE")]
        write_syms: Option<PathBuf>,
    },
    /// Print class memberships (`class<TAB>0|1`) and the representative class.
    Classify {
        #[arg(long)]
        att: PathBuf,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Print the syntactic monoid of an acceptor.
    Monoid {
        #[arg(long)]
        att: PathBuf,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Generate the 18 splits and manifest for a language.
    Generate {
        /// Language as an expression file, or an AT&T acceptor ending in `.att`.
        #[arg(long)]
        lang: PathBuf,
        /// Language name `sigma.tau.class.k.t.i`; sigma fixes the alphabet.
        #[arg(long)]
        name: String,
        /// Records per Large split (a multiple of 4000).
        #[arg(long, default_value_t = GenConfig::DEFAULT_LARGE)]
        large: usize,
        /// Side sampled at the split lengths in adversarial pairs; by
        /// default negative for complement classes and positive otherwise.
        #[arg(long, value_enum)]
        anchor: Option<AnchorArg>,
    },
    /// Re-derive a smaller split from a larger one by seeded hash rank.
    Downsample {
        /// Split file named `<Kind>_<Size>.tsv`.
        #[arg(long)]
        split: PathBuf,
        #[arg(long, value_parser = parse_size)]
        size: SizeClass,
        /// Anchor side for adversarial splits.
        #[arg(long, value_enum, default_value = "positive")]
        anchor: AnchorArg,
    },
    /// Check a bundle; exits with status 2 if any check fails.
    Verify {
        #[arg(long)]
        dir: PathBuf,
        /// Acceptor for the language; the alphabet comes from the bundle name.
        #[arg(long, required_unless_present = "lang", conflicts_with = "lang")]
        att: Option<PathBuf>,
        /// Expression file for the language instead of an acceptor.
        #[arg(long)]
        lang: Option<PathBuf>,
    },
    /// Measure how often random automata are Strictly Local; writes CSV.
    Randdfa {
        /// States, as `lo..=hi` or a comma list.
        #[arg(long, default_value = "1..=20")]
        n: String,
        /// Alphabet sizes.
        #[arg(long, default_value = "1..=10")]
        s: String,
        /// Edge probabilities, comma separated.
        #[arg(long, default_value = "0.5")]
        pe: String,
        /// Acceptance probabilities, comma separated.
        #[arg(long, default_value = "0.5")]
        pf: String,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
    },
    /// Score a prediction file; prints metrics as JSON.
    Score {
        #[arg(long)]
        pred: PathBuf,
        /// Split the predictions must align with.
        #[arg(long)]
        split: Option<PathBuf>,
    },
}

fn parse_size(s: &str) -> Result<SizeClass, String> {
    s.parse().map_err(|e: subreg::Error| e.to_string())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn load_att(path: &Path, alphabet: Option<&Alphabet>) -> Result<Dfa> {
    let m = read_att_acceptor(&read(path)?, alphabet).with_context(|| format!("parsing {}", path.display()))?;
    Ok(m.to_dfa().minimize())
}

fn load_expr(path: &Path, alphabet: &Alphabet) -> Result<Dfa> {
    let e = parse_expr(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    Ok(compile_expr(&e, alphabet)?)
}

fn load_lang(path: &Path, alphabet: &Alphabet) -> Result<Dfa> {
    if path.extension().is_some_and(|e| e == "att") {
        load_att(path, Some(alphabet))
    } else {
        load_expr(path, alphabet)
    }
}

fn bundle_alphabet(name: &str) -> Result<Alphabet> {
    let spec = LanguageSpec::parse(name).with_context(|| format!("bundle name {name:?}"))?;
    Ok(Alphabet::prefix(spec.sigma as usize)?)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let out = cli.out.as_deref();
    match cli.command {
        Command::Compile {
            expr,
            text,
            alphabet,
            att,
            write_syms,
        } => {
            let src = match (expr, text) {
                (Some(p), _) => read(&p)?,
                (None, Some(t)) => t,
                (None, None) => bail!("give --expr or --text"),
            };
            let Some(sigma) = alphabet.resolve()? else {
                bail!("give --sigma, --alphabet or --syms");
            };
            let d = compile_expr(&parse_expr(&src)?, &sigma)?;
            eprintln!("{} states", d.num_states());
            write_out(att.as_deref().or(out), &d.to_att())?;
            if let Some(p) = write_syms {
                write_out(Some(&p), &symbol_table(&sigma))?;
            }
        }
        Command::Classify { att, alphabet } => {
            let d = load_att(&att, alphabet.resolve()?.as_ref())?;
            let (v, rep) = classify(&d);
            let mut text = String::new();
            for c in ClassLabel::ALL {
                text.push_str(&format!("{c}\t{}\n", u8::from(v.get(c))));
            }
            text.push_str(&format!(
                "representative\t{}\n",
                rep.map_or("none".to_string(), |c| c.to_string())
            ));
            write_out(out, &text)?;
        }
        Command::Monoid { att, alphabet } => {
            let d = load_att(&att, alphabet.resolve()?.as_ref())?;
            write_out(out, &syntactic_monoid(&d)?.dump())?;
        }
        Command::Generate {
            lang,
            name,
            large,
            anchor,
        } => {
            let spec = LanguageSpec::parse(&name).with_context(|| format!("language name {name:?}"))?;
            let d = load_lang(&lang, &Alphabet::prefix(spec.sigma as usize)?)?;
            let mut cfg = GenConfig::for_spec(cli.seed, &spec).with_large(large);
            if let Some(a) = anchor {
                cfg.anchor = a.into();
            }
            let dir = out.map_or_else(|| Path::new("data").join(&name), Path::to_path_buf);
            let b = datagen::generate_bundle(&d, &name, cfg)?;
            datagen::write_bundle(&b, &dir)?;
            eprintln!(
                "wrote {} ({}, seed {})",
                dir.display(),
                b.manifest.generator_version,
                b.manifest.seed
            );
        }
        Command::Downsample { split, size, anchor } => {
            let s = datagen::read_split(&split)?;
            if s.size.divisor() > size.divisor() {
                bail!("cannot downsample {} to the larger size {size}", s.name());
            }
            let small = datagen::downsample(&s, size, cli.seed, anchor.into());
            write_out(out, &small.to_tsv())?;
        }
        Command::Verify { dir, att, lang } => {
            let b = datagen::read_bundle(&dir)?;
            let sigma = bundle_alphabet(&b.manifest.name)?;
            let d = match (att, lang) {
                (Some(p), _) => load_att(&p, Some(&sigma))?,
                (None, Some(p)) => load_expr(&p, &sigma)?,
                (None, None) => bail!("give --att or --lang"),
            };
            let report = datagen::verify_bundle(&b, &d);
            write_out(out, &report.to_string())?;
            if !report.passed() {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Randdfa { n, s, pe, pf, trials } => {
            let cells = randdfa::grid(
                &randdfa::parse_count_axis(&n)?,
                &randdfa::parse_count_axis(&s)?,
                &randdfa::parse_prob_axis(&pe)?,
                &randdfa::parse_prob_axis(&pf)?,
            )?;
            let grid = randdfa::run_grid(&cells, trials, cli.seed)?;
            write_out(out, &randdfa::grid_csv(&grid))?;
        }
        Command::Score { pred, split } => {
            let preds = scoring::parse_predictions(&read(&pred)?, &pred)?;
            if let Some(p) = split {
                scoring::check_against_split(&preds, &datagen::read_split(&p)?, &pred)?;
            }
            let m = scoring::score(&preds)?;
            let json = serde_json::json!({
                "records": preds.len(),
                "accuracy": m.accuracy,
                "precision": m.precision,
                "recall": m.recall,
                "f_score": m.f_score,
                "brier": m.brier,
                "auc": m.auc,
            });
            write_out(out, &format!("{}\n", serde_json::to_string_pretty(&json)?))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
