use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use projgeo::config::{parse_pair, parse_selection, ConfigDocument};
use projgeo::geodsl::{evaluate, format_diagnostics, parse};
use projgeo::render::{render_svg, Preset, Viewport, DEFAULT_SIZE_PX};
use projgeo::sharygin::{enumerate_cases, PAIRS};
use projgeo::verifier::{check_ids, generate_qlpair, run_check, trial_rng, TrialConfig};

#[derive(Parser)]
#[command(name = "projgeo", version, about = "Exact projective geometry of a complete quadrangle and a line")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a random valid configuration as JSON.
    Generate {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Coordinates are drawn from [-bound, bound].
        #[arg(long, default_value_t = 10)]
        bound: i64,
        /// Use the line at infinity as g.
        #[arg(long)]
        omega: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Attach the derived objects to a configuration.
    Construct {
        input: PathBuf,
        /// Vertex pairs such as 12 or 34 (default: all six).
        #[arg(long = "pair")]
        pairs: Vec<String>,
        /// Index selection ijks for I, J, O, Phi and friends.
        #[arg(long, default_value = "1234")]
        selection: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the randomized theorem checks; one JSON report per line.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 10)]
        bound: i64,
        #[arg(long)]
        omega: bool,
        /// Restrict to these checks (default: all).
        #[arg(long = "check")]
        checks: Vec<String>,
    },
    /// Evaluate a construction script.
    Run { script: PathBuf },
    /// Draw a configuration as SVG.
    Render {
        input: PathBuf,
        /// quartets, theorem6, curves, prop4 or ninepoint.
        #[arg(long, default_value = "theorem6")]
        preset: String,
        #[arg(long, default_value = "1234")]
        selection: String,
        /// x_min,y_min,x_max,y_max (rationals); fitted to the figure if omitted.
        #[arg(long, allow_hyphen_values = true)]
        viewport: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SIZE_PX)]
        width: u32,
        #[arg(long, default_value_t = DEFAULT_SIZE_PX)]
        height: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the 48 index and finiteness cases of the generalized construction.
    Cases,
}

/// Exit status 1: a checked statement failed.
const FAILED: u8 = 1;
/// Exit status 2: bad usage, unreadable input or invalid data.
const INVALID: u8 = 2;

struct Fail(u8, String);

fn invalid(e: impl ToString) -> Fail {
    Fail(INVALID, e.to_string())
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Fail> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| invalid(format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(invalid),
    }
}

fn load(path: &Path) -> Result<ConfigDocument, Fail> {
    ConfigDocument::from_json(&read(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), Fail> {
    match cli.command {
        Command::Generate { seed, bound, omega, output } => {
            TrialConfig::new(seed, 1, bound, omega).map_err(invalid)?;
            let ql = generate_qlpair(&mut trial_rng(seed, "", 0), bound, omega).map_err(invalid)?;
            emit(&ConfigDocument::from_qlpair(&ql).to_json(), output.as_deref())
        }
        Command::Construct { input, pairs, selection, output } => {
            let doc = load(&input)?;
            let sel = parse_selection(&selection).map_err(invalid)?;
            let pairs = if pairs.is_empty() {
                PAIRS.to_vec()
            } else {
                let mut v = Vec::new();
                for p in &pairs {
                    let pair = parse_pair(p).ok_or_else(|| invalid(format!("invalid vertex pair '{p}'")))?;
                    if !v.contains(&pair) {
                        v.push(pair);
                    }
                }
                v
            };
            let out = doc.construct(&pairs, sel).map_err(invalid)?;
            emit(&out.to_json(), output.as_deref())
        }
        Command::Verify { seed, trials, bound, omega, checks } => {
            let cfg = TrialConfig::new(seed, trials, bound, omega).map_err(invalid)?;
            let ids: Vec<String> = if checks.is_empty() {
                check_ids().into_iter().map(String::from).collect()
            } else {
                checks
            };
            // Validate every id before spending time on any of them.
            for id in &ids {
                if !check_ids().contains(&id.as_str()) {
                    return Err(invalid(projgeo::verifier::VerifyError::UnknownCheck(id.clone())));
                }
            }
            let mut failed = Vec::new();
            let mut stdout = io::stdout().lock();
            for id in &ids {
                let report = run_check(id, &cfg).map_err(invalid)?;
                if !report.passed {
                    failed.push(id.clone());
                }
                stdout.write_all(report.to_json_line().as_bytes()).map_err(invalid)?;
            }
            eprintln!("{} checks, {} failed", ids.len(), failed.len());
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Fail(FAILED, format!("failed: {}", failed.join(", "))))
            }
        }
        Command::Run { script } => {
            let src = read(&script)?;
            let parsed = parse(&src).map_err(|e| invalid(format!("{}:{e}", script.display())))?;
            let eval = evaluate(&parsed);
            emit(&format_diagnostics(&eval), None)?;
            if let Some(e) = eval.error {
                return Err(invalid(format!("{}:{e}", script.display())));
            }
            if eval.all_passed() {
                Ok(())
            } else {
                Err(Fail(FAILED, format!("{}: assertion failed", script.display())))
            }
        }
        Command::Render { input, preset, selection, viewport, width, height, output } => {
            let doc = load(&input)?;
            let ql = doc.qlpair().map_err(invalid)?;
            let preset: Preset = preset.parse().map_err(invalid)?;
            let sel = parse_selection(&selection).map_err(invalid)?;
            let vp = match viewport {
                Some(v) => Some(Viewport::parse(&v, width, height).map_err(invalid)?),
                None => None,
            };
            let svg = render_svg(&ql, preset, sel, vp.as_ref()).map_err(invalid)?;
            emit(&svg, output.as_deref())
        }
        Command::Cases => {
            let text: String = enumerate_cases().iter().map(|c| format!("{c}\n")).collect();
            emit(&text, None)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
