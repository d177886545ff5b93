//! Command-line front end for `ucr-core`.
//!
//! The binary is a thin wrapper around [`run`], which parses arguments, runs one
//! subcommand and maps the outcome to an exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | a verification check failed |
//! | 2 | usage error (bad flags or arguments) |
//! | 3 | a resource cap would be exceeded |

pub mod config;
pub mod render;
pub mod states;
pub mod suites;

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use ucr_core::channel::{build_channel, fixed_residual_for, group_fixed_residual, noiseless_round_trip};
use ucr_core::combinatorics::{kostka, semistandard_tableaux, specht_dim, standard_tableaux, Partition, Permutation};
use ucr_core::spechtspace::{block_structure, decomposition_report, polytabloid_image, DecompositionReport};
use ucr_core::verify::{fixed_space_dimension, OracleReport};
use ucr_core::{DensityMatrix, Error, Limits};

use config::{AnglesArg, GeneratorChoice, Settings};
use render::{ReportJson, ReportLine, TableauxJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ucr", version, about = "Noiseless subsystems of collective rotation channels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Block structure of the fixed-point algebra on n qudits of dimension d.
    Decompose(DecomposeArgs),
    /// Standard and semistandard tableaux of a shape, with their polytabloid vectors.
    Tableaux(TableauxArgs),
    /// Build a channel and check fixed points or noiseless round trips.
    Simulate(SimulateArgs),
    /// Run the numerical oracle suite.
    Verify(VerifyArgs),
    /// Encode a random logical state into one block, apply the channel, decode.
    EncodeDemo(EncodeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct SizeArgs {
    /// Local dimension of each qudit.
    #[arg(long)]
    pub d: usize,
    /// Number of qudits.
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct ChannelArgs {
    /// `gellmann`, `pauli`, or a path to a generator file.
    #[arg(long, default_value = "gellmann")]
    pub generators: GeneratorChoice,
    /// `auto` or a comma-separated list of angles in radians, one per generator.
    #[arg(long, default_value = "auto")]
    pub angles: AnglesArg,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub size: SizeArgs,
    /// Only compute dimensions and multiplicities, not the isotypic bases.
    #[arg(long)]
    pub structure_only: bool,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct TableauxArgs {
    /// Shape, e.g. `3,1`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub lambda: Vec<usize>,
    /// Content: how many entries equal 0, 1, ... (need not be sorted).
    #[arg(long, value_delimiter = ',')]
    pub mu: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    FixedPoints,
    RoundTrip,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub size: SizeArgs,
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[arg(long, value_enum)]
    pub check: Check,
    /// Random (logical, ancilla) pairs per block for `round-trip`.
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Small,
    Full,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::Small)]
    pub suite: Suite,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Ancilla {
    /// Maximally mixed state on the copy factor.
    Mixed,
    /// A random mixed state.
    Random,
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[command(flatten)]
    pub size: SizeArgs,
    #[command(flatten)]
    pub channel: ChannelArgs,
    /// Block to encode into, e.g. `2,1,1`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub lambda: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Ancilla::Mixed)]
    pub ancilla: Ancilla,
    #[arg(long, default_value_t = 10)]
    pub applications: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    pub output: Output,
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Resource(String),
    Verification(String),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Resource(_) => EXIT_RESOURCE,
            Failure::Verification(_) | Failure::Internal(_) => EXIT_VERIFICATION,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Resource(m) | Failure::Verification(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::ResourceLimit { .. } => Failure::Resource(msg),
            Error::EmptyInput(_) | Error::InvalidArgument(_) | Error::DimensionMismatch(_) | Error::NotHermitian { .. } => {
                Failure::Usage(msg)
            }
            _ => Failure::Internal(msg),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(format!("write failed: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Internal(format!("JSON encoding failed: {e}"))
    }
}

pub type CmdResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, settings: &Settings, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{rendered}");
            return EXIT_OK;
        }
    };
    match execute(&cli.command, settings, out, err) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.exit_code()
        }
    }
}

pub fn execute(command: &Command, settings: &Settings, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match command {
        Command::Decompose(a) => decompose(a, settings, out),
        Command::Tableaux(a) => tableaux(a, settings, out),
        Command::Simulate(a) => simulate(a, settings, out, err),
        Command::Verify(a) => verify(a, settings, out),
        Command::EncodeDemo(a) => encode_demo(a, settings, out, err),
    }
}

fn check_size(size: &SizeArgs) -> CmdResult {
    if size.d < 2 {
        return Err(Failure::Usage(format!("--d must be at least 2, got {}", size.d)));
    }
    if size.n < 1 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    Ok(())
}

/// Builds the decomposition report requested by `decompose`.
pub fn build_report(d: usize, n: usize, structure_only: bool, limits: &Limits) -> Result<DecompositionReport, Failure> {
    if structure_only {
        let blocks = block_structure(d, n, limits)?;
        return Ok(DecompositionReport {
            d,
            n,
            blocks,
            bases: Vec::new(),
        });
    }
    Ok(decomposition_report(d, n, limits)?)
}

fn decompose(a: &DecomposeArgs, settings: &Settings, out: &mut dyn Write) -> CmdResult {
    check_size(&a.size)?;
    let report = build_report(a.size.d, a.size.n, a.structure_only, &settings.limits())?;
    match a.output {
        Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(&ReportJson::from(&report))?)?,
        Output::Text => write!(out, "{}", render::report_text(&report))?,
    }
    let expected = (a.size.d as u64).pow(a.size.n as u32);
    if report.dimension_check() != expected {
        return Err(Failure::Verification(format!(
            "dimension check {} differs from d^n = {expected}",
            report.dimension_check()
        )));
    }
    Ok(())
}

fn tableaux(a: &TableauxArgs, settings: &Settings, out: &mut dyn Write) -> CmdResult {
    let lambda = Partition::new(a.lambda.clone())?;
    let standard = standard_tableaux(&lambda);
    let dim = specht_dim(&lambda)?;
    let mut json = TableauxJson::new(&lambda, dim, &standard, a.mu.as_deref());
    if let Some(mu) = &a.mu {
        if mu.iter().sum::<usize>() != lambda.n() {
            return Err(Failure::Usage(format!(
                "content {mu:?} sums to {}, but the shape has {} cells",
                mu.iter().sum::<usize>(),
                lambda.n()
            )));
        }
        json.kostka = Some(kostka(&lambda, mu));
        for big_t in semistandard_tableaux(&lambda, mu) {
            let vectors = standard
                .iter()
                .map(|t| Ok((t.clone(), polytabloid_image(&big_t, t, &settings.limits())?)))
                .collect::<Result<Vec<_>, Error>>()?;
            json.push_semistandard(&big_t, &vectors);
        }
    }
    match a.output {
        Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(&json)?)?,
        Output::Text => write!(out, "{}", json.to_text())?,
    }
    Ok(())
}

fn emit_reports(reports: &[OracleReport], notes: &[String], output: Output, out: &mut dyn Write) -> CmdResult {
    match output {
        Output::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                reports: Vec<ReportLine>,
                notes: &'a [String],
                pass: bool,
            }
            let doc = Doc {
                reports: reports.iter().map(ReportLine::from).collect(),
                notes,
                pass: reports.iter().all(|r| r.pass),
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Output::Text => {
            for r in reports {
                writeln!(out, "{}", render::report_line_text(r))?;
            }
            for note in notes {
                writeln!(out, "note: {note}")?;
            }
        }
    }
    let failed = reports.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        return Err(Failure::Verification(format!("{failed} of {} checks failed", reports.len())));
    }
    Ok(())
}

fn simulate(a: &SimulateArgs, settings: &Settings, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    check_size(&a.size)?;
    let limits = settings.limits();
    let set = a.channel.generators.load(a.size.d, &a.channel.angles)?;
    let ch = build_channel(&set, a.size.n, &limits)?;
    for w in &ch.warnings {
        writeln!(err, "{}", render::aliasing_text(w))?;
    }
    let mut reports = Vec::new();
    let mut notes = Vec::new();
    let structure = block_structure(a.size.d, a.size.n, &limits)?;
    let commutant: u64 = structure.iter().map(|b| b.dim * b.dim).sum();
    match a.check {
        Check::FixedPoints => {
            reports.push(OracleReport::new(
                format!("E(pi(sigma)) = pi(sigma), d={} n={}", a.size.d, a.size.n),
                0.0,
                group_fixed_residual(&ch),
                settings.tol,
            ));
            if ch.d.pow(ch.n as u32) <= limits.superoperator_cap {
                let fixed = fixed_space_dimension(&ch, &limits)? as u64;
                if ch.maximal && ch.warnings.is_empty() {
                    reports.push(OracleReport::count("dim Fix(E) vs sum dim^2", commutant, fixed));
                } else {
                    notes.push(format!(
                        "dim Fix(E) = {fixed}; the permutation algebra has dimension {commutant} and is contained in it"
                    ));
                }
            } else {
                notes.push(format!(
                    "fixed-space oracle skipped: d^n exceeds the superoperator cap {}",
                    limits.superoperator_cap
                ));
            }
        }
        Check::RoundTrip => {
            let report = decomposition_report(a.size.d, a.size.n, &limits)?;
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            for block in &report.bases {
                for k in [1, 10] {
                    let mut worst: f64 = 1.0;
                    for _ in 0..a.trials {
                        let logical = states::random_density(block.dim, &mut rng);
                        let ancilla = states::random_density(block.mult, &mut rng);
                        let f = noiseless_round_trip(&report, &block.lambda, &ch, &logical, &ancilla, k)?;
                        worst = worst.min(f);
                    }
                    reports.push(OracleReport::new(
                        format!("round trip {} x{k}, min fidelity over {} pairs", block.lambda, a.trials),
                        1.0,
                        worst,
                        settings.tol,
                    ));
                }
            }
        }
    }
    emit_reports(&reports, &notes, a.output, out)
}

fn verify(a: &VerifyArgs, settings: &Settings, out: &mut dyn Write) -> CmdResult {
    let reports = suites::run_suite(a.suite, a.seed, settings)?;
    emit_reports(&reports, &[], a.output, out)
}

#[derive(Debug, Serialize)]
struct EncodeDemoJson {
    d: usize,
    n: usize,
    lambda: Vec<usize>,
    dim: usize,
    mult: usize,
    applications: usize,
    fidelity: Vec<f64>,
    permutation_residual: f64,
}

fn encode_demo(a: &EncodeArgs, settings: &Settings, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    check_size(&a.size)?;
    let limits = settings.limits();
    let lambda = Partition::new(a.lambda.clone())?;
    if lambda.n() != a.size.n {
        return Err(Failure::Usage(format!("{lambda} is not a partition of n = {}", a.size.n)));
    }
    let set = a.channel.generators.load(a.size.d, &a.channel.angles)?;
    let ch = build_channel(&set, a.size.n, &limits)?;
    for w in &ch.warnings {
        writeln!(err, "{}", render::aliasing_text(w))?;
    }
    let report = decomposition_report(a.size.d, a.size.n, &limits)?;
    let block = report.basis_for(&lambda).ok_or_else(|| {
        Failure::Usage(format!("{lambda} has more than d = {} rows and carries no block", a.size.d))
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let logical = states::random_density(block.dim, &mut rng);
    let ancilla = match a.ancilla {
        Ancilla::Mixed => DensityMatrix::maximally_mixed(block.mult),
        Ancilla::Random => states::random_density(block.mult, &mut rng),
    };
    let mut fidelity = Vec::with_capacity(a.applications + 1);
    for k in 0..=a.applications {
        fidelity.push(noiseless_round_trip(&report, &lambda, &ch, &logical, &ancilla, k)?);
    }
    let perms: Vec<Permutation> = ucr_core::combinatorics::transpositions(a.size.n);
    let doc = EncodeDemoJson {
        d: a.size.d,
        n: a.size.n,
        lambda: lambda.parts().to_vec(),
        dim: block.dim,
        mult: block.mult,
        applications: a.applications,
        fidelity,
        permutation_residual: fixed_residual_for(&ch, &perms)?,
    };
    match a.output {
        Output::Json => writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?,
        Output::Text => {
            writeln!(
                out,
                "block {lambda}: logical M_{} (x) ancilla M_{} inside (C^{})^(x){}",
                doc.dim, doc.mult, doc.d, doc.n
            )?;
            for (k, f) in doc.fidelity.iter().enumerate() {
                writeln!(out, "after {k:>3} applications: fidelity {f:.15}")?;
            }
        }
    }
    let worst = doc.fidelity.iter().cloned().fold(1.0, f64::min);
    if worst < 1.0 - settings.tol {
        return Err(Failure::Verification(format!("fidelity dropped to {worst}")));
    }
    Ok(())
}

