use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use htsurf::engine::{construct, ConstructionBudget, EmbeddingSpec, FreeBasis};
use htsurf::permutation::{orbit_structure, Window, DEFAULT_ORBIT_CAP};
use htsurf::surface::Surface;
use htsurf::verify::{verify_spec, VerifyReport};
use htsurf::words::Word;

#[derive(Parser)]
#[command(name = "htsurf", version, about = "Highly transitive actions of surface groups on the integers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build an assignment for a budget and the surface homomorphism on top of it.
    Construct {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        word_len: usize,
        #[arg(long)]
        tuple_max: usize,
        #[arg(long)]
        window: u32,
        #[arg(long)]
        orbit_target: usize,
        #[arg(long, default_value_t = 2)]
        power: u32,
        /// Defaults to the rank needed by the standard basis.
        #[arg(long)]
        n_free: Option<usize>,
        /// Words whose orbits are forced; defaults to the basis curve(s).
        #[arg(long)]
        designated: Vec<Word>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Re-check a constructed artifact.
    Verify {
        input: PathBuf,
        /// Write the JSON report here.
        #[arg(short, long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Image of a surface word under the n-th twisted folding map.
    Twist {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        n: u32,
        word: Word,
    },
    /// Least n such that the word stays nontrivial for every power from n to n_max.
    FaithfulIndex {
        #[arg(long)]
        genus: u32,
        #[arg(long, default_value_t = 10)]
        n_max: u32,
        word: Word,
    },
}

struct Usage(String);

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => match e.downcast_ref::<Usage>() {
            Some(Usage(msg)) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            None => {
                eprintln!("error: {e:#}");
                ExitCode::FAILURE
            }
        },
    }
}

impl std::fmt::Debug for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn log_path(out: &Path) -> PathBuf {
    out.with_extension("log.jsonl")
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Construct {
            genus,
            word_len,
            tuple_max,
            window,
            orbit_target,
            power,
            n_free,
            designated,
            seed,
            out,
            format,
        } => {
            if genus < 2 {
                return Err(usage(format!("genus must be at least 2, got {genus}")));
            }
            if power == 0 {
                return Err(usage("power must be at least 1"));
            }
            let basis = FreeBasis::standard(genus).map_err(|e| usage(e.to_string()))?;
            let budget = ConstructionBudget {
                n_free: n_free.unwrap_or(basis.n_free()),
                word_len,
                tuple_max,
                window: Window::new(window),
                orbit_target,
                designated: if designated.is_empty() { basis.designated() } else { designated },
            };
            budget.validate().map_err(|e| usage(e.to_string()))?;
            if budget.n_free < basis.n_free() {
                return Err(usage(format!("genus {genus} needs n_free >= {}", basis.n_free())));
            }
            let spec = construct(genus, &budget, &basis, power, seed)?;
            let json = serde_json::to_string_pretty(&spec)? + "\n";
            fs::write(&out, json).with_context(|| format!("writing {}", out.display()))?;
            let log = log_path(&out);
            fs::write(&log, spec.log.to_jsonl()).with_context(|| format!("writing {}", log.display()))?;
            print_summary(&spec, format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { input, report, format } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let spec: EmbeddingSpec = serde_json::from_str(&text).context("parsing artifact")?;
            let result = verify_spec(&spec)?;
            if let Some(path) = report {
                fs::write(&path, serde_json::to_string_pretty(&result)? + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&result)?),
                Format::Text => print_report(&result),
            }
            Ok(if result.replay_ok() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Twist { genus, n, word } => {
            let surface = Surface::new(genus).map_err(|e| usage(e.to_string()))?;
            check_surface_word(&surface, &word)?;
            println!("{}", surface.sequence(n)?.apply_map(&word));
            Ok(ExitCode::SUCCESS)
        }
        Command::FaithfulIndex { genus, n_max, word } => {
            let surface = Surface::new(genus).map_err(|e| usage(e.to_string()))?;
            check_surface_word(&surface, &word)?;
            match surface.faithful_index(&word, n_max)? {
                Some(n) => println!("{n}"),
                None => println!("none <= {n_max}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn check_surface_word(surface: &Surface, word: &Word) -> Result<()> {
    if let Err(e) = surface.presentation().check_word(word) {
        return Err(usage(e.to_string()));
    }
    Ok(())
}

fn print_summary(spec: &EmbeddingSpec, format: Format) -> Result<()> {
    let tables: Vec<(String, usize)> = spec
        .assignment
        .iter()
        .filter_map(|(g, p)| p.table().map(|t| (g.to_string(), t.len())))
        .collect();
    let mut orbits = Vec::new();
    for w in &spec.budget.designated {
        let r = orbit_structure(w, &spec.assignment, spec.budget.window, DEFAULT_ORBIT_CAP)?;
        orbits.push((w.to_string(), r.all_finite(), r.max_length()));
    }
    match format {
        Format::Json => {
            let v = serde_json::json!({
                "genus": spec.genus,
                "requirements": spec.log.len(),
                "tables": tables.iter().map(|(g, n)| serde_json::json!({"generator": g, "pairs": n})).collect::<Vec<_>>(),
                "orbits": orbits.iter().map(|(w, f, m)| serde_json::json!({"word": w, "all_finite": f, "max_length": m})).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
        Format::Text => {
            println!("genus {}: {} requirements discharged", spec.genus, spec.log.len());
            for (g, n) in &tables {
                println!("  {g}: {n} pairs");
            }
            for (w, finite, max) in &orbits {
                let max = max.map_or("-".to_string(), |m| m.to_string());
                println!("  <{w}> on window: all finite {finite}, longest orbit {max}");
            }
        }
    }
    Ok(())
}

fn print_report(r: &VerifyReport) {
    println!("witnesses: {} ({} failed replay)", r.witnesses, r.replay_failures.len());
    for f in &r.replay_failures {
        println!("  #{}: {}", f.index, f.error);
    }
    println!(
        "freeness: {} words, {} flagged",
        r.freeness.words_checked,
        r.freeness.flagged.len()
    );
    for (k, t) in r.transitivity.iter().enumerate() {
        println!("transitivity k={}: {} pairs, {} unrealized", k + 1, t.pairs_checked, t.unrealized.len());
    }
    for d in &r.designated {
        let nd = match (&d.nondiscrete, &d.error) {
            (Some(n), _) => match n.moved() {
                Some(m) => format!("q={} moves {m}", n.q()),
                None => format!("q={} degenerate", n.q()),
            },
            (None, Some(e)) => e.clone(),
            (None, None) => "-".into(),
        };
        println!("designated {}: all finite {}, {nd}", d.word, d.all_finite);
    }
    println!(
        "relator: symbolic {}, numeric {}",
        if r.relator_symbolic_empty { "empty" } else { "NONEMPTY" },
        r.relator_moved_point.map_or("fixed".to_string(), |a| format!("moves {a}"))
    );
    println!("route mismatches: {}", r.route_mismatches.len());
    for item in &r.embedding {
        println!("  {}: {:?}", item.word, item.status);
    }
    println!("{}", if r.clean() { "clean" } else { "flags raised" });
}
