//! `invgen`: the library's tables and reports behind one binary.
//!
//! Exit codes: 0 on success, 1 when a verification subcommand finds a
//! violation (nonempty residual, flagged deviation, broken bound), 2 on
//! usage errors.

mod commands;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use invgen_core::ffmc::MatrixGroup;
use invgen_core::weyl_stats::{GroupFamily, QParity};

use commands::{Doc, McMode, McSpec};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Odd,
    Even,
}

impl From<ParityArg> for QParity {
    fn from(p: ParityArg) -> QParity {
        match p {
            ParityArg::Odd => QParity::Odd,
            ParityArg::Even => QParity::Even,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    #[value(name = "GL", alias = "gl")]
    Gl,
    #[value(name = "SL", alias = "sl")]
    Sl,
}

#[derive(Parser)]
#[command(
    name = "invgen",
    version,
    about = "Exact leading terms for invariable generation of finite groups of Lie type, \
             with Monte-Carlo cross-checks over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the torus classes of a family with exact probabilities.
    WeylClasses(FamilyArgs),
    /// Emit the torus-class / maximal-rank-family containment table.
    Incidence(FamilyArgs),
    /// List the unordered class pairs with no common overgroup class.
    Sim(FamilyArgs),
    /// Exact leading term of the two-random-elements generation probability.
    LeadingTerm(FamilyArgs),
    /// Per-class leading term of generation with one random partner.
    PinvLeading(FamilyArgs),
    /// Check that the distinguished row's torus sets intersect trivially.
    VerifyAb(FamilyArgs),
    /// Residuals of every torus-class triple in Sp_2m(q), q even.
    Sharpness(SharpnessArgs),
    /// Distinguished class probabilities against the 1/(4m) floor.
    AlphaCheck(AlphaArgs),
    /// Combined G2 report: classes, incidence columns, leading term.
    G2Report(G2Args),
    /// Sample a matrix group over a prime field and classify torus types.
    McRun(McArgs),
    /// Compare sampled frequencies against the exact Weyl probabilities.
    McCompare(McArgs),
}

impl Command {
    fn output(&self) -> &OutputArgs {
        match self {
            Command::WeylClasses(a)
            | Command::Incidence(a)
            | Command::Sim(a)
            | Command::LeadingTerm(a)
            | Command::PinvLeading(a)
            | Command::VerifyAb(a) => &a.output,
            Command::Sharpness(a) => &a.output,
            Command::AlphaCheck(a) => &a.output,
            Command::G2Report(a) => &a.output,
            Command::McRun(a) | Command::McCompare(a) => &a.output,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Document format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the document to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FamilyArgs {
    /// Group family: A, 2A, C (alias Sp), B, D+, D-, or G2.
    #[arg(long)]
    family: String,
    /// Rank of an A or 2A family.
    #[arg(long)]
    n: Option<u32>,
    /// Rank of a B, C, D+ or D- family.
    #[arg(long)]
    m: Option<u32>,
    /// Parity of q; required for family C.
    #[arg(long, value_enum)]
    q: Option<ParityArg>,
    /// G2 only: 3 divides q.
    #[arg(long)]
    p3: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SharpnessArgs {
    /// Symplectic rank, 2 through 6 (q even implied).
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=6))]
    m: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct AlphaArgs {
    /// Largest rank to scan.
    #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(2..=30))]
    m_max: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct G2Args {
    /// 3 divides q.
    #[arg(long)]
    p3: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct McArgs {
    /// Matrix group kind.
    #[arg(long, value_enum)]
    group: GroupArg,
    /// Matrix size, 2 through 8.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=8))]
    n: u32,
    /// Field size; must be prime.
    #[arg(long)]
    q: u64,
    /// Number of draws; required unless --exhaustive.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=100_000_000))]
    samples: Option<u64>,
    /// RNG seed (default 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Independent sampler streams, merged by count addition (default 1).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4096))]
    streams: Option<u32>,
    /// Enumerate the whole group instead of sampling (small groups only).
    #[arg(long)]
    exhaustive: bool,
    #[command(flatten)]
    output: OutputArgs,
}

fn parse_family(a: &FamilyArgs) -> Result<GroupFamily, String> {
    let n = || a.n.ok_or(format!("--family {} requires --n", a.family));
    let m = || a.m.ok_or(format!("--family {} requires --m", a.family));
    let reject = |set: bool, flag: &str| {
        if set {
            Err(format!("--{flag} does not apply to --family {}", a.family))
        } else {
            Ok(())
        }
    };
    let family = match a.family.as_str() {
        "A" => {
            reject(a.m.is_some(), "m")?;
            reject(a.q.is_some(), "q")?;
            reject(a.p3, "p3")?;
            GroupFamily::LinearA { n: n()? }
        }
        "2A" => {
            reject(a.m.is_some(), "m")?;
            reject(a.q.is_some(), "q")?;
            reject(a.p3, "p3")?;
            GroupFamily::UnitaryTwistedA { n: n()? }
        }
        "C" | "Sp" => {
            reject(a.n.is_some(), "n")?;
            reject(a.p3, "p3")?;
            let q = a.q.ok_or(format!("--family {} requires --q odd|even", a.family))?;
            GroupFamily::SymplecticC { m: m()?, q: q.into() }
        }
        "B" => {
            reject(a.n.is_some(), "n")?;
            reject(a.q.is_some(), "q")?;
            reject(a.p3, "p3")?;
            GroupFamily::OrthogonalOddB { m: m()? }
        }
        "D+" => {
            reject(a.n.is_some(), "n")?;
            reject(a.q.is_some(), "q")?;
            reject(a.p3, "p3")?;
            GroupFamily::OrthogonalDPlus { m: m()? }
        }
        "D-" => {
            reject(a.n.is_some(), "n")?;
            reject(a.q.is_some(), "q")?;
            reject(a.p3, "p3")?;
            GroupFamily::OrthogonalDMinus { m: m()? }
        }
        "G2" => {
            reject(a.n.is_some(), "n")?;
            reject(a.m.is_some(), "m")?;
            reject(a.q.is_some(), "q")?;
            GroupFamily::ExceptionalG2 { p3: a.p3 }
        }
        other => {
            return Err(format!("unknown family '{other}' (expected A, 2A, C, B, D+, D-, or G2)"))
        }
    };
    family.try_validate()?;
    Ok(family)
}

fn parse_mc(a: &McArgs) -> Result<McSpec, String> {
    let group = match a.group {
        GroupArg::Gl => MatrixGroup::Gl,
        GroupArg::Sl => MatrixGroup::Sl,
    };
    let mode = if a.exhaustive {
        for (set, flag) in [
            (a.samples.is_some(), "samples"),
            (a.seed.is_some(), "seed"),
            (a.streams.is_some(), "streams"),
        ] {
            if set {
                return Err(format!("--{flag} does not apply with --exhaustive"));
            }
        }
        McMode::Exhaustive
    } else {
        McMode::Sample {
            samples: a.samples.ok_or("--samples is required unless --exhaustive".to_string())?,
            seed: a.seed.unwrap_or(0),
            streams: a.streams.unwrap_or(1),
        }
    };
    Ok(McSpec { group, n: a.n, q: a.q, mode })
}

/// The sampler validates primality and the exhaustive-size gates by panic;
/// surface those as usage errors without a backtrace.
fn guard<T>(f: impl FnOnce() -> T) -> Result<T, String> {
    let prev = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f));
    std::panic::set_hook(prev);
    result.map_err(|payload| {
        payload
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| payload.downcast_ref::<&str>().map(|s| (*s).to_string()))
            .unwrap_or_else(|| "invalid sampler arguments".to_string())
    })
}

fn run(command: &Command) -> Result<Doc, String> {
    Ok(match command {
        Command::WeylClasses(a) => commands::weyl_classes(parse_family(a)?, a.output.format),
        Command::Incidence(a) => commands::incidence(parse_family(a)?, a.output.format),
        Command::Sim(a) => commands::sim(parse_family(a)?, a.output.format),
        Command::LeadingTerm(a) => commands::leading_term(parse_family(a)?, a.output.format),
        Command::PinvLeading(a) => commands::pinv_table(parse_family(a)?, a.output.format),
        Command::VerifyAb(a) => {
            let family = parse_family(a)?;
            if !family.is_classical() {
                return Err("verify-ab covers the classical families only".to_string());
            }
            commands::verify_ab_row(family, a.output.format)
        }
        Command::Sharpness(a) => commands::sharpness(a.m, a.output.format),
        Command::AlphaCheck(a) => commands::alpha(a.m_max, a.output.format),
        Command::G2Report(a) => commands::g2_report(a.p3, a.output.format),
        Command::McRun(a) => {
            let spec = parse_mc(a)?;
            guard(|| commands::mc_run(&spec, a.output.format))?
        }
        Command::McCompare(a) => {
            let spec = parse_mc(a)?;
            guard(|| commands::mc_compare(&spec, a.output.format))?
        }
    })
}

fn emit(body: &str, out: Option<&Path>) -> std::io::Result<()> {
    use std::io::Write;
    match out {
        Some(path) => std::fs::write(path, body),
        None => std::io::stdout().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let doc = match run(&cli.command) {
        Ok(doc) => doc,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&doc.body, cli.command.output().out.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::FAILURE;
    }
    if doc.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
