use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qhom::cli::runner::{RunOptions, Session};
use qhom::cli::{format_source, parser};
use qhom::invariants::corpus;
use qhom::invariants::harness::theorem_harness;

#[derive(Parser)]
#[command(name = "qhom", version, about = "Certified quasi-homological dimensions over graded quotient rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Bounds {
    /// Seed for randomized isomorphism search.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Highest degree listed in Hilbert function tables.
    #[arg(long, default_value_t = 6)]
    degree_bound: i32,
    /// Resolution length used for Betti/Bass tables and pd detection (default: dim R + #vars + 2).
    #[arg(long)]
    length_bound: Option<usize>,
}

impl Bounds {
    fn options(&self) -> RunOptions {
        RunOptions { seed: self.seed, degree_bound: self.degree_bound, length_bound: self.length_bound }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Execute a script.
    Run {
        script: PathBuf,
        /// Write results and certificates as JSON (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Check the theorem statements on the shipped corpus (or a given corpus script).
    VerifyPaper {
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Write the report as JSON (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Print a script in canonical form.
    Fmt {
        script: PathBuf,
        /// Rewrite the file instead of printing.
        #[arg(long, conflicts_with = "check")]
        in_place: bool,
        /// Exit nonzero if the file is not already formatted.
        #[arg(long)]
        check: bool,
    },
}

fn configure_threads() {
    if let Some(n) = std::env::var("QHOM_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Fails only if a pool already exists, in which case the existing one is used.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), String> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    if path == Path::new("-") {
        print!("{text}");
        Ok(())
    } else {
        fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
    }
}

fn print_session(s: &Session, quiet: bool) {
    if quiet {
        return;
    }
    for o in &s.outcomes {
        println!("[{}] {}", o.line, o.statement);
        for l in o.text.lines() {
            println!("    {l}");
        }
    }
    if s.failures() > 0 {
        println!("{} statement(s) failed", s.failures());
    }
}

fn run(script: &Path, json: Option<&Path>, bounds: &Bounds) -> Result<bool, String> {
    let text = read(script)?;
    let parsed = parser::parse(&text).map_err(|e| format!("{}: {e}", script.display()))?;
    let mut session = Session::new(bounds.options());
    session.run(&parsed);
    let to_stdout = json == Some(Path::new("-"));
    print_session(&session, to_stdout);
    if let Some(p) = json {
        write_json(p, &session.to_json())?;
    }
    Ok(session.failures() == 0)
}

fn verify(corpus_path: Option<&Path>, json: Option<&Path>, bounds: &Bounds) -> Result<bool, String> {
    let entries = match corpus_path {
        Some(p) => corpus::load(&read(p)?),
        None => corpus::standard(),
    }
    .map_err(|e| e.to_string())?;
    let opts = bounds.options();
    let report = theorem_harness(&entries, &opts).map_err(|e| e.to_string())?;
    if json != Some(Path::new("-")) {
        for t in &report.theorems {
            let status = if t.violations.is_empty() { "ok" } else { "VIOLATED" };
            println!(
                "{status:8} {:38} checked {:3}  confirmed {:3}  unresolved {:3}",
                t.id, t.instances_checked, t.confirmed, t.unresolved
            );
            for v in &t.violations {
                println!("         counterexample {} / {}: {}", v.ring, v.module, v.detail);
            }
        }
        println!("{} violation(s)", report.violations());
    }
    if let Some(p) = json {
        write_json(p, &report.to_json(&opts))?;
    }
    Ok(report.violations() == 0)
}

fn fmt(script: &Path, in_place: bool, check: bool) -> Result<bool, String> {
    let text = read(script)?;
    let formatted = format_source(&text).map_err(|e| format!("{}: {e}", script.display()))?;
    if check {
        if formatted != text {
            eprintln!("{} is not formatted", script.display());
        }
        return Ok(formatted == text);
    }
    if in_place {
        fs::write(script, formatted).map_err(|e| format!("cannot write {}: {e}", script.display()))?;
    } else {
        print!("{formatted}");
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let result = match &cli.command {
        Command::Run { script, json, bounds } => run(script, json.as_deref(), bounds),
        Command::VerifyPaper { corpus, json, bounds } => verify(corpus.as_deref(), json.as_deref(), bounds),
        Command::Fmt { script, in_place, check } => fmt(script, *in_place, *check),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
