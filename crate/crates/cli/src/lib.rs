//! `fanocert`: command-line certificates for the exact computations of the
//! workspace.
//!
//! Every subcommand produces a [`Certificate`]: the command, the model files
//! read together with their content hashes, exact results as `p/q` strings,
//! verdicts and notes.  By default a human-readable table is printed; `--json`
//! prints the certificate itself and `--out FILE` also writes it to a file.
//!
//! Exit codes: `0` success, `1` mathematical error or failed check, `2` input
//! error (bad arguments, unreadable or unhashed model files).

pub mod certificate;
pub mod commands;
pub mod error;
pub mod golden;
pub mod manifest;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use certificate::{Certificate, NamedValue};
pub use commands::{Context, DiscriminantArgs, Output};
pub use error::CliError;
pub use golden::{GoldenCase, GoldenRow, GoldenTable};
pub use manifest::{Manifest, ModelRef};

/// Command-line arguments.
#[derive(Debug, Parser)]
#[command(name = "fanocert", version, about = "Exact certificates for divisors, flag integrals, discriminants and automorphisms")]
pub struct Cli {
    /// Data directory (default: $FANOCERT_DATA or the shipped data directory).
    #[arg(long, global = true)]
    pub data: Option<PathBuf>,
    /// Print the certificate as JSON instead of the table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON certificate to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Accept model files whose hashes are not in the manifest.
    #[arg(long, global = true)]
    pub unchecked: bool,
    /// Record the creation time (excluded from the digest).
    #[arg(long, global = true)]
    pub timestamp: bool,
    /// Run everything on one thread.
    #[arg(long, global = true)]
    pub serial: bool,
    /// Subcommand.
    #[command(subcommand)]
    pub command: Command,
}

/// Subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zariski decomposition of a divisor on a surface model.
    Zariski {
        /// Model name (in data/surfaces) or path.
        #[arg(long)]
        model: String,
        /// Divisor as coordinates `3,-2,-2` or as `3L - 2E1 - 2E2`.
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
    /// Volume of a divisor on a surface model.
    Volume {
        /// Model name (in data/surfaces) or path.
        #[arg(long)]
        model: String,
        /// Divisor as coordinates or as a combination of basis names.
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
    },
    /// Zariski decomposition from Cox-ring generator degrees (rank two).
    CoxZariski {
        /// Generator degrees `x,y;x,y;...`.
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        /// Degree of the divisor `x,y`.
        #[arg(long, allow_hyphen_values = true)]
        wd: String,
    },
    /// Flag integrals and the local delta bound of a named case.
    Delta {
        /// Case name (in data/flags) or path.
        #[arg(long)]
        case: String,
    },
    /// Discriminant quartic of a pencil.
    Discriminant {
        /// Pencil name (in data/pencils) or path.
        #[arg(long)]
        pencil: String,
        /// Classify the fibre over this point `a,b,c`.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        /// Audit of singular points (name in data/pencils or path).
        #[arg(long)]
        audit: Option<String>,
        /// Also verify the determinant identity symbolically.
        #[arg(long)]
        identity: bool,
    },
    /// Automorphism tables and skew symmetries.
    Aut {
        /// Action.
        #[command(subcommand)]
        action: AutCommand,
    },
    /// Run the golden-value suite.
    Golden,
    /// Print (or rewrite) the data manifest.
    #[command(hide = true)]
    Manifest {
        /// Write data/MANIFEST.json.
        #[arg(long)]
        write: bool,
    },
}

/// `aut` actions.
#[derive(Debug, Subcommand)]
pub enum AutCommand {
    /// Verify one table row.
    Verify {
        /// Row label.
        #[arg(long)]
        row: String,
        /// Seed for sampling the pencil parameters.
        #[arg(long, default_value_t = autcheck::DEFAULT_SEED)]
        seed: u64,
        /// Table name (in data/aut) or path; default: all shipped tables.
        #[arg(long)]
        table: Option<String>,
    },
    /// List the permutations `nu` and scalars `c` with `b_nu(i) - b_nu(j) = c (b_i - b_j)`.
    Classify {
        /// Five distinct scalars, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
}

/// What the process should print and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    /// Exit code.
    pub code: i32,
    /// Standard output.
    pub stdout: String,
    /// Standard error.
    pub stderr: String,
}

/// The shipped data directory.
pub fn default_data_dir() -> PathBuf {
    if let Some(d) = std::env::var_os("FANOCERT_DATA") {
        return PathBuf::from(d);
    }
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data"))
}

/// Arguments that only affect presentation are left out of the recorded
/// command, so that certificates do not depend on them.
fn recorded_command(args: &[String]) -> String {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
            continue;
        }
        match a.as_str() {
            "--json" | "--timestamp" | "--serial" => {}
            "--out" | "--data" => skip = true,
            s if s.starts_with("--out=") || s.starts_with("--data=") => {}
            _ => out.push(a.as_str()),
        }
    }
    out.join(" ")
}

fn parse(args: &[String]) -> Result<Cli, clap::Error> {
    Cli::try_parse_from(std::iter::once("fanocert".to_string()).chain(args.iter().cloned()))
}

/// Runs one parsed command.
pub fn execute(ctx: &Context, command: &Command, recorded: &str) -> Result<Output, CliError> {
    let mut cert = Certificate::new(recorded);
    match command {
        Command::Zariski { model, divisor } => commands::zariski(ctx, &mut cert, model, divisor),
        Command::Volume { model, divisor } => commands::volume(ctx, &mut cert, model, divisor),
        Command::CoxZariski { w, wd } => commands::cox_zariski(&mut cert, w, wd),
        Command::Delta { case } => commands::delta(ctx, &mut cert, case),
        Command::Discriminant { pencil, point, audit, identity } => {
            let args = DiscriminantArgs { pencil: pencil.clone(), point: point.clone(), audit: audit.clone(), identity: *identity };
            commands::discriminant_cmd(ctx, &mut cert, &args)
        }
        Command::Aut { action: AutCommand::Verify { row, seed, table } } => {
            commands::aut_verify(ctx, &mut cert, row, *seed, table.as_deref())
        }
        Command::Aut { action: AutCommand::Classify { b } } => commands::aut_classify(&mut cert, b),
        Command::Golden => golden::run_golden(ctx, &mut cert, |ctx, args| {
            let cli = parse(args).map_err(|e| CliError::Input(e.to_string()))?;
            if matches!(cli.command, Command::Golden | Command::Manifest { .. }) {
                return Err(CliError::Input("golden cases cannot be nested".into()));
            }
            let out = execute(ctx, &cli.command, &recorded_command(args))?;
            Ok(out)
        }),
        Command::Manifest { write } => {
            let m = Manifest::scan(&ctx.data_dir)?;
            if *write {
                let path = ctx.data_dir.join(manifest::MANIFEST_FILE);
                std::fs::write(&path, m.to_json()).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            }
            cert.result("files", &exactkernel::Rational::from(m.files.len() as i64));
            cert.detail = serde_json::to_value(&m).expect("serializable");
            Ok(Output { certificate: cert, table: m.to_json(), failed: false })
        }
    }
}

/// Runs the command line `args` (without the program name).
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match parse(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    let data_dir = cli.data.clone().unwrap_or_else(default_data_dir);
    let manifest = if matches!(cli.command, Command::Manifest { .. }) {
        Manifest { version: 1, algorithm: "sha256".into(), files: Default::default() }
    } else {
        match Manifest::load(&data_dir) {
            Ok(m) => m,
            Err(e) => return Outcome { code: e.exit_code(), stdout: String::new(), stderr: e.to_json() + "\n" },
        }
    };
    let ctx = Context { data_dir, manifest, unchecked: cli.unchecked, parallel: !cli.serial };
    match execute(&ctx, &cli.command, &recorded_command(&args)) {
        Ok(mut out) => {
            out.certificate.seal();
            if cli.timestamp {
                let now = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
                out.certificate.timestamp = Some(now);
            }
            let json = out.certificate.to_json();
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &json) {
                    let e = CliError::Input(format!("cannot write {}: {e}", path.display()));
                    return Outcome { code: 2, stdout: String::new(), stderr: e.to_json() + "\n" };
                }
            }
            Outcome {
                code: i32::from(out.failed),
                stdout: if cli.json { json } else { out.table },
                stderr: String::new(),
            }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: e.to_json() + "\n" },
    }
}
