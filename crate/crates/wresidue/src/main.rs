use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wres_core::exact_scalars::{rat, Rational};
use wresidue::cli_dsl::run::write_outputs;
use wresidue::cli_dsl::{
    run_case, run_eval, run_heat, run_oracle, run_phi, ConfigError, Format, HeatArgs, OracleMode, Preset, RawOptions, Report, RunConfig, RunError,
    TargetsFile, EXIT_ERROR,
};

/// Exact Wres boundary terms for torsion Dirac operators on a collar, and the
/// a_2 coefficient of a nonminimal Laplacian on forms.
///
/// Exit status: 0 when every target matches, 2 when any target mismatches, 1 on errors.
#[derive(Parser, Debug)]
#[command(name = "wresidue", version)]
struct Cli {
    /// Directory for report files (text, JSON and LaTeX of every run).
    #[arg(long, global = true, env = "WRESIDUE_OUT_DIR")]
    out_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleArg {
    Off,
    Mismatches,
    Always,
}

impl From<OracleArg> for OracleMode {
    fn from(o: OracleArg) -> Self {
        match o {
            OracleArg::Off => OracleMode::Off,
            OracleArg::Mismatches => OracleMode::Mismatches,
            OracleArg::Always => OracleMode::Always,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    /// sec3 (alias dirac4), sec5 (dirac6), sec6 (chiral4) or custom.
    #[arg(long, default_value = "sec3")]
    preset: String,
    /// Dimension; fixed by the named presets.
    #[arg(long)]
    n: Option<u8>,
    /// text, json or latex.
    #[arg(long, default_value = "text")]
    format: String,
    /// Seed of the oracle draws.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of oracle draws.
    #[arg(long)]
    draws: Option<u32>,
    /// Targets file (defaults to the bundled data/targets.json).
    #[arg(long)]
    targets: Option<PathBuf>,
    /// When to consult the quadrature oracle.
    #[arg(long, value_enum)]
    oracle: Option<OracleArg>,
    /// Drop the totally antisymmetric torsion part.
    #[arg(long)]
    no_three_form: bool,
    /// Drop the trace part of the torsion.
    #[arg(long)]
    no_vectorial: bool,
    /// Left projector for the custom preset: none, chiral-plus, chiral-minus.
    #[arg(long)]
    projector: Option<String>,
    /// Left operator for the custom preset: Dinv, Dstarinv, Dinv2, Dstarinv2.
    #[arg(long)]
    left: Option<String>,
    /// Right operator for the custom preset.
    #[arg(long)]
    right: Option<String>,
}

impl RunArgs {
    fn raw(&self, out_dir: &Option<PathBuf>) -> RawOptions {
        RawOptions {
            preset: Some(self.preset.clone()),
            n: self.n,
            no_three_form: self.no_three_form,
            no_vectorial: self.no_vectorial,
            projector: self.projector.clone(),
            left: self.left.clone(),
            right: self.right.clone(),
            format: Some(self.format.clone()),
            oracle: self.oracle.map(Into::into),
            seed: self.seed,
            draws: self.draws,
            targets: self.targets.clone(),
            out_dir: out_dir.clone(),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Every boundary case, the total and the ledger against the targets.
    Phi(RunArgs),
    /// A single case, by label (e.g. "a(II)", "b") or tuple "r,l,k,j,alpha".
    Case {
        #[arg(value_name = "CASE", allow_hyphen_values = true)]
        case: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Heat coefficient of the nonminimal operator and its residue.
    Heat {
        #[arg(long, default_value_t = 4)]
        m: u32,
        #[arg(long, default_value_t = 4)]
        k: u32,
        /// a^2 as an integer or fraction.
        #[arg(long, default_value = "1")]
        a2: String,
        #[arg(long, default_value = "1")]
        b2: String,
        #[arg(long, default_value = "heat7")]
        preset: String,
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        targets: Option<PathBuf>,
        /// Seed of the random covectors in the factorization check.
        #[arg(long)]
        seed: Option<u64>,
        /// Skip the Richardson check.
        #[arg(long)]
        no_numeric: bool,
    },
    /// Evaluate an expression (see docs/grammar.md).
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 4)]
        n: u8,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Send every ledger entry to the quadrature oracle.
    Oracle {
        /// A preset, or "all" for sec3, sec5 and sec6.
        #[arg(long, default_value = "all")]
        preset: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        draws: Option<u32>,
        #[arg(long)]
        targets: Option<PathBuf>,
        #[arg(long, default_value = "text")]
        format: String,
    },
}

fn parse_rational(s: &str) -> Result<Rational, ConfigError> {
    let bad = || ConfigError(format!("`{s}` is not an integer or fraction"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim().parse::<i64>().map_err(|_| bad())?, b.trim().parse::<i64>().map_err(|_| bad())?),
        None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if den == 0 {
        return Err(bad());
    }
    Ok(rat(num, den))
}

fn emit(r: &impl Report, format: Format, out_dir: &Option<PathBuf>, stem: &str) -> Result<i32, RunError> {
    println!("{}", r.render(format));
    if let Some(dir) = out_dir {
        for p in write_outputs(dir, stem, r)? {
            eprintln!("wrote {}", p.display());
        }
    }
    Ok(r.exit_code())
}

fn stem_part(s: &str) -> String {
    s.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect()
}

fn run(cli: Cli) -> Result<i32, RunError> {
    let out = &cli.out_dir;
    match cli.command {
        Command::Phi(a) => {
            let cfg = RunConfig::from_raw(&a.raw(out))?;
            let t = TargetsFile::load(cfg.targets.as_deref())?;
            let r = run_phi(&cfg, &t)?;
            emit(&r, cfg.format, out, &format!("phi-{}", cfg.preset))
        }
        Command::Case { case, run } => {
            let cfg = RunConfig::from_raw(&run.raw(out))?;
            let t = TargetsFile::load(cfg.targets.as_deref())?;
            let r = run_case(&cfg, &t, &case)?;
            emit(&r, cfg.format, out, &format!("case-{}-{}", cfg.preset, stem_part(&r.case.label)))
        }
        Command::Heat { m, k, a2, b2, preset, format, targets, seed, no_numeric } => {
            if preset.parse::<Preset>()? != Preset::Heat7 {
                return Err(ConfigError(format!("the heat subcommand runs preset heat7, got {preset}")).into());
            }
            let format: Format = format.parse()?;
            let mut args = HeatArgs { m, k, a2: parse_rational(&a2)?, b2: parse_rational(&b2)?, numeric: !no_numeric, ..HeatArgs::default() };
            if let Some(s) = seed {
                args.seed = s;
            }
            let t = TargetsFile::load(targets.as_deref())?;
            let r = run_heat(&args, &t)?;
            emit(&r, format, out, &format!("heat-m{m}-k{k}"))
        }
        Command::Eval { expr, n, format } => {
            let format: Format = format.parse()?;
            let r = run_eval(&expr, n)?;
            emit(&r, format, out, "eval")
        }
        Command::Oracle { preset, seed, draws, targets, format } => {
            let format: Format = format.parse()?;
            let presets: Vec<Preset> = if preset == "all" { Preset::PHI.to_vec() } else { vec![preset.parse()?] };
            let mut cfgs = Vec::new();
            for p in presets {
                let raw = RawOptions { preset: Some(p.name().into()), seed, draws, targets: targets.clone(), ..Default::default() };
                cfgs.push(RunConfig::from_raw(&raw)?);
            }
            let t = TargetsFile::load(targets.as_deref())?;
            let r = run_oracle(&cfgs, &t)?;
            emit(&r, format, out, "oracle")
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
