//! The `speckle` command line: one subcommand per data table.
//!
//! Exit status is 0 on success, 2 for usage errors (bad flags or values) and
//! 3 for numerical failures. Output goes to `--out`, by default
//! `<command>.csv` or `<command>.json`.

mod range;
mod table;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::ensemble::{
    self, Axis, EnsembleConfig, SummaryRow, SuperresConfig, SweepSpec,
};
use crate::error::Error;
use crate::gaussian_oracle::oracle_check;
use crate::prolate;
use crate::quantum_stats::photon_budget;

pub use range::parse_values;
pub use table::{Cell, Table};

/// Relative error above which `oracle-check` fails.
pub const ORACLE_TOLERANCE: f64 = 1e-10;
/// Environment variable that replaces `--seed` when set.
pub const SEED_ENV: &str = "SPECKLE_SEED";

const SWEEP_HEADERS: [&str; 6] = ["axis_value", "mean_n", "fano_ratio", "snr_ratio", "stderr_snr", "trials"];

#[derive(Debug, Parser)]
#[command(name = "speckle", version, about = "Squeezed light through a scattering lens")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file [default: <command>.<format>]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EnsembleArgs {
    /// Transmission channels M
    #[arg(long = "m", visible_alias = "M", default_value_t = 50)]
    pub channels: usize,
    /// Fed channels N [default: M]
    #[arg(long = "n", visible_alias = "N")]
    pub fed: Option<usize>,
    /// Coherent intensity per fed channel
    #[arg(long, default_value_t = 1e4)]
    pub alpha2: f64,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// Master seed (overridden by SPECKLE_SEED)
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads [default: all cores]
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepAxis {
    G,
    S,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-trial Fano factors of the shaped focus
    FanoScatter {
        #[command(flatten)]
        ens: EnsembleArgs,
        #[arg(long, default_value_t = 2.0)]
        s: f64,
        #[arg(long, default_value_t = 1.5)]
        g: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Ensemble SNR ratio against squeezing or disorder
    SnrSweep {
        #[command(flatten)]
        ens: EnsembleArgs,
        #[arg(long, value_enum, default_value_t = SweepAxis::G)]
        axis: SweepAxis,
        #[arg(long, default_value = "0:1.5:0.1")]
        values: String,
        #[arg(long, default_value_t = 2.0)]
        s: f64,
        #[arg(long, default_value_t = 1.5)]
        g: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Ensemble SNR ratio against the fed fraction N/M
    NmSweep {
        #[command(flatten)]
        ens: EnsembleArgs,
        #[arg(long, default_value = "0.1:1:0.1")]
        values: String,
        #[arg(long, default_value_t = 2.0)]
        s: f64,
        #[arg(long, default_value_t = 1.5)]
        g: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Ensemble Fano factor against the coherent fraction |alpha|^2/(|alpha|^2 + sinh^2 g)
    UniversalFano {
        #[command(flatten)]
        ens: EnsembleArgs,
        #[arg(long, default_value = "0:0.9:0.05,0.95,0.99")]
        values: String,
        #[arg(long, default_value_t = 2.0)]
        s: f64,
        #[arg(long, default_value_t = 1.5)]
        g: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Ensemble SNR ratio against the loss rate |q|^2
    LossSweep {
        #[command(flatten)]
        ens: EnsembleArgs,
        /// Squeezing values, one curve each
        #[arg(long, default_value = "0.5,1,1.5")]
        g: String,
        #[arg(long, default_value_t = 2.0)]
        s: f64,
        #[arg(long, default_value = "0:1:0.05")]
        values: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Super-resolution factor against mean photon number
    Superres {
        #[command(flatten)]
        ens: EnsembleArgs,
        #[arg(long, default_value_t = 1.5)]
        g: f64,
        /// Disorder strengths, one curve each
        #[arg(long, default_value = "2,4,6,8")]
        s: String,
        /// Mean photon numbers
        #[arg(long, default_value = "1e6:3.5e10:log25")]
        budgets: String,
        #[command(flatten)]
        recon: ReconArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classical and reconstruction point-spread functions
    Psf {
        #[command(flatten)]
        recon: ReconArgs,
        /// Prolate modes in the reconstruction
        #[arg(long, default_value_t = 7)]
        q: usize,
        #[arg(long, default_value_t = 3.0)]
        z_max: f64,
        #[arg(long, default_value_t = 601)]
        points: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulated prolate basis
    ProlateBasis {
        #[command(flatten)]
        recon: ReconArgs,
        /// Basis size [default: every resolvable mode]
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Closed forms against the Gaussian covariance engine
    OracleCheck {
        #[arg(long, default_value_t = 500)]
        cases: usize,
        /// Seed (overridden by SPECKLE_SEED)
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Mean photon number delivered to the focus by a laser pulse
    PhotonBudget {
        /// Wavelength in metres
        #[arg(long, default_value_t = 694e-9)]
        wavelength: f64,
        /// Power in watts
        #[arg(long, default_value_t = 1e-3)]
        power: f64,
        /// Exposure in seconds
        #[arg(long, default_value_t = 1e-3)]
        duration: f64,
        /// Fraction of the light reaching the focus
        #[arg(long, default_value_t = 0.01)]
        fraction: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ReconArgs {
    /// Bandwidth c of the imaging system
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Width of the illuminated spot
    #[arg(long, default_value_t = 0.01)]
    pub epsilon: f64,
    /// Gauss-Legendre nodes
    #[arg(long, default_value_t = 256)]
    pub quad_order: usize,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::FanoScatter { .. } => "fano-scatter",
            Command::SnrSweep { .. } => "snr-sweep",
            Command::NmSweep { .. } => "nm-sweep",
            Command::UniversalFano { .. } => "universal-fano",
            Command::LossSweep { .. } => "loss-sweep",
            Command::Superres { .. } => "superres",
            Command::Psf { .. } => "psf",
            Command::ProlateBasis { .. } => "prolate-basis",
            Command::OracleCheck { .. } => "oracle-check",
            Command::PhotonBudget { .. } => "photon-budget",
        }
    }

    fn output(&self) -> &OutputArgs {
        match self {
            Command::FanoScatter { output, .. }
            | Command::SnrSweep { output, .. }
            | Command::NmSweep { output, .. }
            | Command::UniversalFano { output, .. }
            | Command::LossSweep { output, .. }
            | Command::Superres { output, .. }
            | Command::Psf { output, .. }
            | Command::ProlateBasis { output, .. }
            | Command::OracleCheck { output, .. }
            | Command::PhotonBudget { output, .. } => output,
        }
    }
}

/// Failure of a CLI run, carrying its exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter { .. } | Error::ModeCount { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn usage(flag: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("{flag}: {msg}"))
}

fn require(ok: bool, flag: &str, msg: impl std::fmt::Display) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(usage(flag, msg))
    }
}

fn values(flag: &str, text: &str) -> Result<Vec<f64>, CliError> {
    parse_values(text).map_err(|m| usage(flag, m))
}

fn check_s(flag: &str, s: f64) -> Result<(), CliError> {
    require(s > 1.0 && s.is_finite(), flag, format!("disorder strength must be > 1, got {s}"))
}

fn check_g(flag: &str, g: f64) -> Result<(), CliError> {
    require(g >= 0.0 && g.is_finite(), flag, format!("squeezing must be >= 0, got {g}"))
}

fn check_recon(r: &ReconArgs) -> Result<(), CliError> {
    require(r.c > 0.0 && r.c.is_finite(), "--c", format!("bandwidth must be > 0, got {}", r.c))?;
    require(r.epsilon > 0.0 && r.epsilon < 1.0, "--epsilon", format!("must lie in (0, 1), got {}", r.epsilon))?;
    require(
        r.quad_order >= 8 && r.quad_order.is_multiple_of(2) && r.quad_order <= 4096,
        "--quad-order",
        format!("must be even and in 8..=4096, got {}", r.quad_order),
    )
}

/// SPECKLE_SEED wins over `--seed` when set.
pub fn effective_seed(flag_seed: u64) -> Result<u64, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(SEED_ENV, format!("`{v}` is not an unsigned 64-bit integer"))),
        Err(std::env::VarError::NotPresent) => Ok(flag_seed),
        Err(e) => Err(usage(SEED_ENV, e)),
    }
}

fn ensemble_config(ens: &EnsembleArgs, s: f64, g: f64) -> Result<EnsembleConfig, CliError> {
    check_s("--s", s)?;
    check_g("--g", g)?;
    require(ens.channels >= 1, "--m", "need at least one channel")?;
    let fed = ens.fed.unwrap_or(ens.channels);
    require(
        (1..=ens.channels).contains(&fed),
        "--n",
        format!("fed channels must lie in 1..={}, got {fed}", ens.channels),
    )?;
    require(ens.alpha2 >= 0.0 && ens.alpha2.is_finite(), "--alpha2", format!("must be >= 0, got {}", ens.alpha2))?;
    require(ens.trials >= 1, "--trials", "need at least one trial")?;
    require(ens.workers != Some(0), "--workers", "need at least one worker")?;
    Ok(EnsembleConfig {
        channels: ens.channels,
        fed_modes: fed,
        disorder: s,
        squeeze: g,
        alpha2: ens.alpha2,
        loss_rate: 0.0,
        trials: ens.trials,
        seed: effective_seed(ens.seed)?,
        workers: ens.workers,
    })
}

fn sweep_row(r: &SummaryRow) -> Vec<Cell> {
    vec![
        r.axis_value.into(),
        r.mean_n.into(),
        r.fano.into(),
        r.snr_ratio.into(),
        r.stderr_snr.into(),
        r.trials.into(),
    ]
}

fn sweep_table(rows: &[SummaryRow]) -> Table {
    let mut t = Table::new(&SWEEP_HEADERS);
    rows.iter().for_each(|r| t.push(sweep_row(r)));
    t
}

fn run_sweep_table(axis: Axis, flag: &str, text: &str, fixed: EnsembleConfig) -> Result<Table, CliError> {
    let axis_values = values(flag, text)?;
    for &v in &axis_values {
        fixed.with_axis(axis, v).map_err(|e| usage(flag, e))?;
    }
    Ok(sweep_table(&ensemble::run_sweep(&SweepSpec {
        axis,
        axis_values,
        fixed,
    })?))
}

/// Output of one command: either a table or the raw prolate basis text.
pub enum Output {
    Table(Table),
    Basis(prolate::ProlateBasis),
}

/// Runs `command` and returns what it would write plus an extra summary note.
pub fn execute(command: &Command) -> Result<(Output, String), CliError> {
    let out = match command {
        Command::FanoScatter { ens, s, g, .. } => {
            let trials = ensemble::run_fano_scatter(&ensemble_config(ens, *s, *g)?)?;
            let mut t = Table::new(&["trial", "seed", "mean_n", "variance", "fano"]);
            for r in &trials {
                t.push(vec![r.trial.into(), r.seed.into(), r.mean_n.into(), r.variance.into(), r.fano.into()]);
            }
            let below = trials.iter().filter(|r| r.fano < 1.0).count();
            let mean = trials.iter().map(|r| r.fano).sum::<f64>() / trials.len() as f64;
            (Output::Table(t), format!("mean F = {mean:.6}, {below}/{} below 1", trials.len()))
        }
        Command::SnrSweep { ens, axis, values: v, s, g, .. } => {
            let fixed = ensemble_config(ens, *s, *g)?;
            let axis = match axis {
                SweepAxis::G => Axis::SqueezeG,
                SweepAxis::S => Axis::DisorderS,
            };
            (Output::Table(run_sweep_table(axis, "--values", v, fixed)?), String::new())
        }
        Command::NmSweep { ens, values: v, s, g, .. } => {
            let fixed = ensemble_config(ens, *s, *g)?;
            (Output::Table(run_sweep_table(Axis::ModeFillRatio, "--values", v, fixed)?), String::new())
        }
        Command::UniversalFano { ens, values: v, s, g, .. } => {
            require(*g > 0.0, "--g", "coherent fraction needs g > 0")?;
            let fixed = ensemble_config(ens, *s, *g)?;
            (Output::Table(run_sweep_table(Axis::CoherentFraction, "--values", v, fixed)?), String::new())
        }
        Command::LossSweep { ens, g, s, values: v, .. } => {
            let g_list = values("--g", g)?;
            for &g in &g_list {
                check_g("--g", g)?;
            }
            let grid = values("--values", v)?;
            for &q in &grid {
                require((0.0..=1.0).contains(&q), "--values", format!("loss rate must lie in [0, 1], got {q}"))?;
            }
            let fixed = ensemble_config(ens, *s, 0.0)?;
            let curves = ensemble::run_loss_sweep(&g_list, &grid, &fixed)?;
            let mut headers = vec!["g"];
            headers.extend(SWEEP_HEADERS);
            let mut t = Table::new(&headers);
            for c in &curves {
                for r in &c.rows {
                    let mut row = vec![Cell::from(c.squeeze)];
                    row.extend(sweep_row(r));
                    t.push(row);
                }
            }
            (Output::Table(t), String::new())
        }
        Command::Superres { ens, g, s, budgets, recon, .. } => {
            check_recon(recon)?;
            let s_list = values("--s", s)?;
            for &s in &s_list {
                check_s("--s", s)?;
            }
            let budgets = values("--budgets", budgets)?;
            for &b in &budgets {
                require(b >= 0.0, "--budgets", format!("photon numbers must be >= 0, got {b}"))?;
            }
            let fixed = ensemble_config(ens, s_list.first().copied().unwrap_or(2.0), *g)?;
            let cfg = SuperresConfig {
                bandwidth: recon.c,
                epsilon: recon.epsilon,
                quad_order: recon.quad_order,
            };
            let rows = ensemble::run_superres_sweep(&s_list, &budgets, &fixed, &cfg)?;
            let mut t = Table::new(&["s", "mean_n", "Q", "W", "W_Q", "J"]);
            for r in &rows {
                t.push(vec![
                    r.illumination.to_string().into(),
                    r.mean_n.into(),
                    r.q.into(),
                    r.w.into(),
                    r.w_q.into(),
                    r.j.into(),
                ]);
            }
            let best = rows.iter().map(|r| r.j).fold(0.0, f64::max);
            (Output::Table(t), format!("max J = {best:.4}"))
        }
        Command::Psf { recon, q, z_max, points, .. } => {
            check_recon(recon)?;
            require(*z_max > 0.0 && z_max.is_finite(), "--z-max", format!("must be > 0, got {z_max}"))?;
            require(*points >= 2, "--points", "need at least two points")?;
            let basis = ensemble::default_basis(&SuperresConfig {
                bandwidth: recon.c,
                epsilon: recon.epsilon,
                quad_order: recon.quad_order,
            })?;
            require(
                (1..=basis.len()).contains(q),
                "--q",
                format!("need 1 <= Q <= {} resolvable modes at c = {}", basis.len(), recon.c),
            )?;
            let res = prolate::resolution_at(&basis, *q)?;
            let classical = prolate::PsfCurve::sample(|z| prolate::classical_psf(recon.c, z), -z_max, *z_max, *points);
            let mut t = Table::new(&["z", "classical", "reconstruction"]);
            for (z, c) in classical.z.iter().zip(&classical.values) {
                t.push(vec![(*z).into(), (*c).into(), prolate::reconstruction_psf(&basis, *q, *z)?.into()]);
            }
            (Output::Table(t), format!("W = {:.4}, W_Q = {:.4}, J = {:.3}", res.w, res.w_q, res.j))
        }
        Command::ProlateBasis { recon, k, .. } => {
            check_recon(recon)?;
            let basis = match k {
                None => ensemble::default_basis(&SuperresConfig {
                    bandwidth: recon.c,
                    epsilon: recon.epsilon,
                    quad_order: recon.quad_order,
                })?,
                Some(k) => {
                    require(
                        *k >= 1 && *k <= recon.quad_order / 4,
                        "--k",
                        format!("need 1 <= K <= quad_order/4 = {}", recon.quad_order / 4),
                    )?;
                    prolate::build_basis(recon.c, *k, recon.quad_order)?
                }
            };
            let note = format!("K = {}, lambda_K-1 = {:e}", basis.len(), basis.lambda[basis.len() - 1]);
            (Output::Basis(basis), note)
        }
        Command::OracleCheck { cases, seed, .. } => {
            require(*cases >= 1, "--cases", "need at least one case")?;
            let report = oracle_check(*cases, effective_seed(*seed)?)?;
            let mut t = Table::new(&[
                "case",
                "M",
                "N",
                "s",
                "g",
                "alpha2",
                "mean_analytic",
                "mean_oracle",
                "variance_analytic",
                "variance_oracle",
                "rel_err",
            ]);
            for c in &report.cases {
                t.push(vec![
                    c.case.into(),
                    c.channels.into(),
                    c.fed.into(),
                    c.disorder.into(),
                    c.squeeze.into(),
                    c.alpha2.into(),
                    c.mean_analytic.into(),
                    c.mean_oracle.into(),
                    c.variance_analytic.into(),
                    c.variance_oracle.into(),
                    c.rel_err.into(),
                ]);
            }
            let w = report.worst;
            let note = format!(
                "worst rel err {:e} at case {} (M={}, N={}, s={:.3}, g={:.3}, alpha2={:.1})",
                w.rel_err, w.case, w.channels, w.fed, w.disorder, w.squeeze, w.alpha2
            );
            if !(w.rel_err < ORACLE_TOLERANCE) {
                write_output(command, &Output::Table(t))?;
                return Err(CliError::Numerical(format!("{note} exceeds {ORACLE_TOLERANCE:e}")));
            }
            (Output::Table(t), note)
        }
        Command::PhotonBudget { wavelength, power, duration, fraction, .. } => {
            let n = photon_budget(*wavelength, *power, *duration, *fraction).map_err(|e| match e {
                Error::InvalidParameter { name, reason } => {
                    let flag = if name == "focus_fraction" { "fraction" } else { name };
                    usage(&format!("--{flag}"), reason)
                }
                e => e.into(),
            })?;
            let mut t = Table::new(&["wavelength", "power", "duration", "fraction", "photons"]);
            t.push(vec![(*wavelength).into(), (*power).into(), (*duration).into(), (*fraction).into(), n.into()]);
            (Output::Table(t), format!("{n:.4e} photons"))
        }
    };
    Ok(out)
}

/// Default output path for `command`.
pub fn output_path(command: &Command) -> PathBuf {
    let o = command.output();
    o.out.clone().unwrap_or_else(|| {
        let ext = match o.format {
            Format::Csv => "csv",
            Format::Json => "json",
        };
        PathBuf::from(format!("{}.{ext}", command.name()))
    })
}

fn basis_json(b: &prolate::ProlateBasis) -> serde_json::Value {
    serde_json::json!({
        "c": b.bandwidth,
        "K": b.len(),
        "lambda": b.lambda,
        "z": b.nodes,
        "weight": b.weights,
        "phi": b.phi,
    })
}

/// Writes `output` in the command's format; returns the number of data rows.
pub fn write_output(command: &Command, output: &Output) -> Result<usize, CliError> {
    let path = output_path(command);
    let mut w = BufWriter::new(File::create(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?);
    let rows = match (output, command.output().format) {
        (Output::Table(t), Format::Csv) => {
            t.write_csv(&mut w)?;
            t.rows.len()
        }
        (Output::Table(t), Format::Json) => {
            serde_json::to_writer_pretty(&mut w, &t.to_json()).map_err(|e| CliError::Io(e.to_string()))?;
            writeln!(w)?;
            t.rows.len()
        }
        (Output::Basis(b), Format::Csv) => {
            prolate::write_basis(b, &mut w)?;
            b.nodes.len()
        }
        (Output::Basis(b), Format::Json) => {
            serde_json::to_writer_pretty(&mut w, &basis_json(b)).map_err(|e| CliError::Io(e.to_string()))?;
            writeln!(w)?;
            b.nodes.len()
        }
    };
    w.flush()?;
    Ok(rows)
}

/// Parses `args`, runs the command and returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let start = Instant::now();
    let result = execute(&cli.command).and_then(|(out, note)| Ok((write_output(&cli.command, &out)?, note)));
    match result {
        Ok((rows, note)) => {
            let path = output_path(&cli.command);
            let note = if note.is_empty() { String::new() } else { format!("; {note}") };
            println!(
                "{}: wrote {rows} rows to {} in {:.2} s{note}",
                cli.command.name(),
                path.display(),
                start.elapsed().as_secs_f64()
            );
            0
        }
        Err(e) => {
            eprintln!("{}: {e}", cli.command.name());
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("speckle").chain(args.iter().copied()))
    }

    #[test]
    fn defaults_follow_figure_captions() {
        let cli = parse(&["fano-scatter", "--g", "1.5", "--s", "2"]).unwrap();
        let Command::FanoScatter { ens, s, g, output } = cli.command else {
            panic!("wrong command")
        };
        assert_eq!((ens.channels, ens.fed, ens.alpha2, ens.trials, ens.seed), (50, None, 1e4, 1000, 1));
        assert_eq!((s, g), (2.0, 1.5));
        assert_eq!(output.format, Format::Csv);
    }

    #[test]
    fn json_format_and_unknown_flags() {
        let cli = parse(&["psf", "--format", "json"]).unwrap();
        assert_eq!(output_path(&cli.command), PathBuf::from("psf.json"));
        assert!(parse(&["psf", "--bogus", "1"]).is_err());
        assert!(parse(&["not-a-command"]).is_err());
    }

    #[test]
    fn bad_disorder_is_a_usage_error_naming_the_flag() {
        let cli = parse(&["fano-scatter", "--s", "0.5"]).unwrap();
        let Err(e) = execute(&cli.command) else { panic!("accepted s = 0.5") };
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("--s"), "{e}");
    }

    #[test]
    fn every_figure_command_parses() {
        for cmd in [
            "fano-scatter",
            "snr-sweep",
            "nm-sweep",
            "universal-fano",
            "loss-sweep",
            "superres",
            "psf",
            "prolate-basis",
            "oracle-check",
            "photon-budget",
        ] {
            assert_eq!(parse(&[cmd]).unwrap().command.name(), cmd);
        }
    }

    #[test]
    fn numerical_errors_exit_three() {
        let cli = parse(&["superres", "--budgets", "1e-3", "--trials", "5"]).unwrap();
        let Err(e) = execute(&cli.command) else { panic!("dim budget accepted") };
        assert_eq!(e.exit_code(), 3, "{e}");
    }
}
