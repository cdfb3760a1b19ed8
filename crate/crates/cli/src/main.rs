//! matsat: pattern containment, saturation classification and witness
//! certificates for 0-1 matrices.
//!
//! Exit codes: 0 when the answer is yes (or the command simply succeeded),
//! 1 when it is no, 2 on malformed input, guard violations and timeouts.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::mpsc;
use std::thread;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use matsat::format::{parse_certificate, parse_matrix, render_certificate, render_matrix, render_sequence, Style};
use matsat::oscillation::{find_min_spanning_oscillation, straighten, Orientation};
use matsat::perm::{block_decomposition, decompose_kind, extremes};
use matsat::verify::{certify, certify_certificate, Claim, Report};
use matsat::witness::{explicit_witness, full_witness, horizontal_witness, vertical_witness};
use matsat::{ex_bruteforce, find_embedding, sat_bruteforce, Matrix01, Pattern, PermutationMatrix, WitnessError};

#[derive(Parser)]
#[command(name = "matsat", version, about = "Saturation witnesses for 0-1 matrix patterns")]
struct Cli {
    /// Print nothing; report only through the exit code
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions, weight, permutation structure and extreme entries
    Info { file: PathBuf },
    /// Bounded or linear saturation, with the reason
    Classify { file: PathBuf },
    /// A shortest spanning oscillation of a permutation matrix
    Oscillation {
        file: PathBuf,
        /// Straighten into a tall oscillation
        #[arg(long, conflicts_with = "wide")]
        tall: bool,
        /// Straighten into a wide oscillation
        #[arg(long)]
        wide: bool,
    },
    /// Build and certify a witness
    Witness {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: WitnessKind,
        /// Write the certificate here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
        /// Give up after this many seconds
        #[arg(long, value_name = "SECONDS")]
        budget: Option<f64>,
    },
    /// Check a claim about a matrix, or a certificate file (exit 0 if it holds)
    Verify {
        /// Certificate written by `witness`
        certificate: Option<PathBuf>,
        #[arg(long, requires_all = ["pattern", "claim"], conflicts_with = "certificate")]
        matrix: Option<PathBuf>,
        #[arg(long)]
        pattern: Option<PathBuf>,
        /// avoids, vertical-witness, horizontal-witness, witness, saturating, explicit-witness
        #[arg(long)]
        claim: Option<String>,
    },
    /// Exit 0 if the matrix contains the pattern, 1 otherwise
    Contains {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
    },
    /// Brute-force saturation (or extremal) number on a small grid
    Sat {
        pattern: PathBuf,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        /// Maximum weight of an avoiding matrix instead
        #[arg(long)]
        ex: bool,
        /// Give up after this many seconds
        #[arg(long, value_name = "SECONDS")]
        budget: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessKind {
    Vertical,
    Horizontal,
    Full,
    Explicit,
}

/// Exit code and text for standard output.
struct Outcome {
    code: u8,
    text: String,
}

impl Outcome {
    fn ok(text: impl Into<String>) -> Self {
        Outcome { code: 0, text: text.into() }
    }

    fn answer(yes: bool, text: impl Into<String>) -> Self {
        Outcome { code: if yes { 0 } else { 1 }, text: text.into() }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_matrix(path: &Path) -> Result<Matrix01> {
    parse_matrix(&read(path)?).with_context(|| format!("cannot parse {}", path.display()))
}

fn load_pattern(path: &Path) -> Result<Pattern> {
    Pattern::new(load_matrix(path)?).with_context(|| format!("{} is not a usable pattern", path.display()))
}

fn load_permutation(path: &Path) -> Result<PermutationMatrix> {
    PermutationMatrix::from_matrix(&load_matrix(path)?)
        .ok_or_else(|| anyhow!("{} is not a permutation matrix", path.display()))
}

/// Runs `job` on a worker thread, failing if it outlives `budget` seconds.
fn within_budget<T, F>(budget: Option<f64>, job: F) -> Result<T>
where
    T: Send + 'static,
    F: FnOnce() -> T + Send + 'static,
{
    let Some(secs) = budget else {
        return Ok(job());
    };
    let limit = Duration::try_from_secs_f64(secs).map_err(|_| anyhow!("invalid budget {secs}"))?;
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        let _ = tx.send(job());
    });
    rx.recv_timeout(limit).map_err(|_| anyhow!("timed out after {secs} seconds"))
}

fn info(path: &Path) -> Result<Outcome> {
    let m = load_matrix(path)?;
    let mut lines = vec![format!("dimensions: {}x{}", m.rows(), m.cols()), format!("weight: {}", m.weight())];
    match PermutationMatrix::from_matrix(&m) {
        Some(p) => {
            let ex = extremes(&p);
            lines.push("permutation: yes".into());
            lines.push(format!("decomposition: {}", decompose_kind(&p)));
            lines.push(format!("extremes: l={} t={} b={} r={}", ex.ell, ex.t, ex.b, ex.r));
        }
        None => {
            lines.push("permutation: no".into());
            lines.push(format!("decomposition: {}", block_decomposition(&m)));
        }
    }
    Ok(Outcome::ok(lines.join("\n")))
}

fn oscillation(path: &Path, tall: bool, wide: bool) -> Result<Outcome> {
    let p = load_permutation(path)?;
    let Some(x) = find_min_spanning_oscillation(&p) else {
        return Ok(Outcome::answer(false, "none"));
    };
    let seq = match (tall, wide) {
        (true, _) => straighten(&p, &x.entries, Orientation::Tall)?.entries,
        (_, true) => straighten(&p, &x.entries, Orientation::Wide)?.entries,
        _ => x.entries,
    };
    Ok(Outcome::ok(render_sequence(&seq)))
}

fn witness(path: &Path, kind: WitnessKind, out: Option<&Path>, budget: Option<f64>) -> Result<Outcome> {
    let p = load_pattern(path)?;
    let built = within_budget(budget, move || match kind {
        WitnessKind::Vertical => vertical_witness(&p),
        WitnessKind::Horizontal => horizontal_witness(&p),
        WitnessKind::Full => full_witness(&p),
        WitnessKind::Explicit => explicit_witness(&p, None),
    })?;
    let cert = match built {
        Ok(c) => c,
        Err(e @ (WitnessError::Decomposable | WitnessError::Unsupported)) => return Ok(Outcome::answer(false, e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let text = render_certificate(&cert);
    match out {
        Some(dest) => {
            fs::write(dest, &text).with_context(|| format!("cannot write {}", dest.display()))?;
            let m = &cert.matrix;
            Ok(Outcome::ok(format!("{} {}x{} weight {} written to {}", cert.role, m.rows(), m.cols(), m.weight(), dest.display())))
        }
        None => Ok(Outcome::ok(text.trim_end())),
    }
}

fn report(r: Report) -> Outcome {
    match r.diagnostic {
        None => Outcome::answer(true, "holds"),
        Some(why) => Outcome::answer(false, format!("fails: {why}")),
    }
}

fn verify(certificate: Option<&Path>, matrix: Option<&Path>, pattern: Option<&Path>, claim: Option<&str>) -> Result<Outcome> {
    if let Some(path) = certificate {
        let cert = parse_certificate(&read(path)?).with_context(|| format!("cannot parse {}", path.display()))?;
        return Ok(report(certify_certificate(&cert)));
    }
    let (Some(m), Some(p), Some(c)) = (matrix, pattern, claim) else {
        bail!("give a certificate file, or --matrix, --pattern and --claim");
    };
    let claim: Claim = c.parse().map_err(|e: String| anyhow!(e))?;
    Ok(report(certify(&load_matrix(m)?, &load_pattern(p)?, claim)))
}

fn contains(matrix: &Path, pattern: &Path) -> Result<Outcome> {
    let m = load_matrix(matrix)?;
    let p = load_pattern(pattern)?;
    Ok(match find_embedding(&m, &p) {
        Some(e) => {
            let image: Vec<_> = e.pairs().iter().map(|&(_, h)| h).collect();
            Outcome::answer(true, format!("contains at {}", render_sequence(&image)))
        }
        None => Outcome::answer(false, "avoids"),
    })
}

fn sat(path: &Path, rows: usize, cols: usize, ex: bool, budget: Option<f64>) -> Result<Outcome> {
    let p = load_pattern(path)?;
    let result = within_budget(budget, move || {
        if ex {
            ex_bruteforce(&p, rows, cols)
        } else {
            sat_bruteforce(&p, rows, cols)
        }
    })??;
    let name = if ex { "ex" } else { "sat" };
    Ok(Outcome::ok(format!("{name}({rows}, {cols}) = {}\n{}", result.weight, render_matrix(&result.matrix, Style::Grid))))
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Info { file } => info(&file),
        Command::Classify { file } => Ok(Outcome::ok(matsat::classify(&load_pattern(&file)?).to_string())),
        Command::Oscillation { file, tall, wide } => oscillation(&file, tall, wide),
        Command::Witness { file, kind, out, budget } => witness(&file, kind, out.as_deref(), budget),
        Command::Verify { certificate, matrix, pattern, claim } => {
            verify(certificate.as_deref(), matrix.as_deref(), pattern.as_deref(), claim.as_deref())
        }
        Command::Contains { matrix, pattern } => contains(&matrix, &pattern),
        Command::Sat { pattern, rows, cols, ex, budget } => sat(&pattern, rows, cols, ex, budget),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let quiet = cli.quiet;
    match run(cli) {
        Ok(out) => {
            if !quiet && !out.text.is_empty() {
                println!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            if !quiet {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(2)
        }
    }
}
