use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, ValueEnum};
use ncres_core::blowup::TransformKind;
use ncres_core::driver::{run_mode, Mode, Problem, Status};
use ncres_core::ncdetect::NcMode;
use ncres_core::Error;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Invariant,
    Center,
    Blowup,
    Ncfactor,
    Split,
    Resolve,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Invariant => Mode::Invariant,
            ModeArg::Center => Mode::Center,
            ModeArg::Blowup => Mode::Blowup,
            ModeArg::Ncfactor => Mode::Ncfactor,
            ModeArg::Split => Mode::Split,
            ModeArg::Resolve => Mode::Resolve,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum NcModeArg {
    AnyCodim,
    #[value(name = "codim-1")]
    CodimOne,
    Reduced,
}

/// Weighted-blow-up resolution away from the normal-crossings locus.
///
/// Exit codes: 0 on success, 2 for unsupported input, 3 for parse or usage
/// errors, 4 when an internal check fails.
#[derive(Debug, Parser)]
#[command(name = "ncres", version)]
struct Cli {
    /// What to compute.
    mode: ModeArg,

    /// Problem file.
    #[arg(long, short)]
    input: PathBuf,

    /// Extra sample point, `x=0,y=0,z=1` or `(0,0,1)`; repeatable.
    #[arg(long = "point", value_name = "POINT")]
    points: Vec<String>,

    /// Series truncation degree.
    #[arg(long)]
    truncation: Option<u32>,

    /// Blow-up limit for `resolve`.
    #[arg(long)]
    max_steps: Option<usize>,

    /// Which normal-crossings locus to test.
    #[arg(long, value_enum)]
    nc_mode: Option<NcModeArg>,

    /// Write the JSON trace here.
    #[arg(long, value_name = "FILE")]
    emit_json: Option<PathBuf>,

    /// Use strict transforms (embedded mode).
    #[arg(long, conflicts_with = "controlled")]
    strict: bool,

    /// Use controlled transforms (the default).
    #[arg(long)]
    controlled: bool,
}

fn load(cli: &Cli) -> Result<Problem, Error> {
    let text = std::fs::read_to_string(&cli.input)
        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", cli.input.display())))?;
    let mut problem = Problem::parse(&text)?;
    for (i, p) in cli.points.iter().enumerate() {
        let label = format!("point{}", i + 1);
        problem
            .add_point(&label, p)
            .map_err(|e| Error::Usage(format!("--point {p}: {}", strip_line(e))))?;
    }
    if let Some(n) = cli.truncation {
        if n < 2 {
            return Err(Error::Usage("--truncation must be at least 2".into()));
        }
        problem.config.truncation = n;
    }
    if let Some(k) = cli.max_steps {
        problem.config.max_steps = k;
    }
    if let Some(m) = cli.nc_mode {
        problem.nc_mode = match m {
            NcModeArg::AnyCodim => NcMode::AnyCodim,
            NcModeArg::CodimOne => NcMode::CodimOne,
            NcModeArg::Reduced => NcMode::Reduced,
        };
    }
    if cli.strict {
        problem.config.transform = TransformKind::Strict;
    } else if cli.controlled {
        problem.config.transform = TransformKind::Controlled;
    }
    Ok(problem)
}

fn strip_line(e: Error) -> String {
    match e {
        Error::Input { message, .. } => message,
        other => other.to_string(),
    }
}

fn run(cli: &Cli) -> anyhow::Result<Status> {
    let problem = load(cli)?;
    let report = run_mode(cli.mode.into(), &problem)?;
    print!("{}", report.text);
    if let Some(path) = &cli.emit_json {
        std::fs::write(path, &report.json).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(report.status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Unsupported) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = match e.downcast_ref::<Error>() {
                Some(err) => err.exit_code(),
                None => 3,
            };
            ExitCode::from(code as u8)
        }
    }
}
