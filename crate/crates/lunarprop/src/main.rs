use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lunarprop::config::{ConfigError, RunConfig};
use lunarprop::costmodel::{self, MarketName};
use lunarprop::exhibits::{self, ExhibitError, EXHIBITS};
use lunarprop::report::{self, ReportSet};
use lunarprop::{catalog, config::SweepParam};

const OUT_ENV: &str = "LUNARPROP_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "lunarprop",
    version,
    about = "Lunar vs terrestrial propellant cost model"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Price one scenario and write the selected tables.
    Run {
        #[command(flatten)]
        sel: Selection,
        #[arg(long = "table", value_enum)]
        tables: Vec<TableKind>,
        /// Run a canonical exhibit instead of the configured scenario.
        #[arg(long)]
        reproduce: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the data behind a table or figure (`all` for every one).
    Reproduce {
        id: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the configured scenario once per sweep value.
    Sweep {
        #[command(flatten)]
        sel: Selection,
        #[arg(long)]
        parameter: Option<String>,
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<f64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the fully resolved configuration as TOML.
    DumpEffectiveConfig {
        #[command(flatten)]
        sel: Selection,
    },
}

#[derive(Args)]
struct Selection {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    study: Option<String>,
    #[arg(long, value_parser = parse_market)]
    market: Option<MarketName>,
    #[arg(long, overrides_with = "no_sep")]
    sep: bool,
    #[arg(long, overrides_with = "sep")]
    no_sep: bool,
    #[arg(long)]
    years: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Yearly,
    Advantage,
    Elasticity,
    Phi,
}

fn parse_market(s: &str) -> Result<MarketName, String> {
    MarketName::ALL
        .into_iter()
        .find(|m| m.as_str().eq_ignore_ascii_case(s))
        .ok_or_else(|| format!("expected OPTIMISTIC, MODERATE or PESSIMISTIC, got `{s}`"))
}

enum Failure {
    Config(String),
    Model(String),
    Io(String),
    UnknownExhibit(String),
}

impl Failure {
    fn report(&self) -> ExitCode {
        let (kind, msg, code) = match self {
            Failure::Config(m) => ("CONFIG_INVALID", m, 2),
            Failure::Model(m) => ("MODEL_ERROR", m, 3),
            Failure::Io(m) => ("IO_ERROR", m, 4),
            Failure::UnknownExhibit(m) => ("UNKNOWN_EXHIBIT", m, 5),
        };
        eprintln!("kind={kind} message={msg:?}");
        ExitCode::from(code)
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Io { .. } => Failure::Io(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

impl From<ExhibitError> for Failure {
    fn from(e: ExhibitError) -> Self {
        match e {
            ExhibitError::Unknown(_) => Failure::UnknownExhibit(e.to_string()),
            _ => Failure::Model(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn load(sel: &Selection) -> Result<RunConfig, Failure> {
    let mut cfg = match &sel.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(s) = &sel.study {
        cfg.set_study(s);
    }
    if let Some(m) = sel.market {
        cfg.market = m;
    }
    if sel.sep {
        cfg.sep = true;
    } else if sel.no_sep {
        cfg.sep = false;
    }
    if let Some(y) = sel.years {
        cfg.years = y;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Flag, then environment, then config, then `out`.
fn out_dir(flag: Option<PathBuf>, cfg: Option<&RunConfig>) -> PathBuf {
    flag.or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
        .or_else(|| cfg.and_then(|c| c.output_dir.clone()))
        .unwrap_or_else(|| PathBuf::from("out"))
}

fn emit(set: &ReportSet, dir: &Path) -> Result<(), Failure> {
    for p in set.write_dir(dir)? {
        println!("{}", p.display());
    }
    Ok(())
}

fn run(cfg: &RunConfig, tables: &[TableKind]) -> Result<ReportSet, Failure> {
    let s = cfg.scenario()?;
    let net = cfg.resolved_network()?;
    let label = cfg.label();
    let model = |e: costmodel::ModelError| Failure::Model(format!("scenario {label}: {e}"));
    let tables = if tables.is_empty() {
        &[TableKind::Yearly, TableKind::Advantage][..]
    } else {
        tables
    };
    let mut set = ReportSet::default();
    let needs_run = tables
        .iter()
        .any(|t| matches!(t, TableKind::Yearly | TableKind::Advantage));
    let records = if needs_run {
        costmodel::run_scenario(&s, &net).map_err(model)?
    } else {
        Vec::new()
    };
    for t in tables {
        let table = match t {
            TableKind::Yearly => {
                report::yearly_table("yearly", &[(label.clone(), records.clone())])
            }
            TableKind::Advantage => report::advantage_table(
                "advantage",
                &[(label.clone(), costmodel::advantage_years(&records))],
            ),
            TableKind::Elasticity => {
                let rows = exhibits::REGIMES
                    .iter()
                    .map(|&r| exhibits::elasticity_row(&s, &net, r).map(|e| (r, e)))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(model)?;
                report::elasticity_table("elasticity", &rows)
            }
            TableKind::Phi => report::phi_table(
                "phi",
                &catalog::phi_table().map_err(|e| Failure::Config(e.to_string()))?,
            ),
        };
        set.tables.push(table);
    }
    Ok(set)
}

fn reproduce(id: &str, cfg: &RunConfig) -> Result<ReportSet, Failure> {
    let net = cfg.resolved_network()?;
    if id == "all" {
        let mut set = ReportSet::default();
        for id in EXHIBITS {
            set.extend(exhibits::reproduce(id, &net)?);
        }
        Ok(set)
    } else {
        Ok(exhibits::reproduce(id, &net)?)
    }
}

fn sweep(cfg: &RunConfig) -> Result<ReportSet, Failure> {
    let spec = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| Failure::Config("no sweep defined".into()))?;
    spec.validate()?;
    let base = cfg.scenario()?;
    let net = cfg.resolved_network()?;
    let series = spec.scenarios(&base);
    Ok(exhibits::series_report("sweep", &series, &net)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Run {
            sel,
            tables,
            reproduce: Some(id),
            out,
        } => load(&sel).and_then(|cfg| {
            if !tables.is_empty() {
                return Err(Failure::Config(
                    "--table cannot be combined with --reproduce".into(),
                ));
            }
            let set = reproduce(&id, &cfg)?;
            emit(&set, &out_dir(out, Some(&cfg)))
        }),
        Cmd::Run {
            sel, tables, out, ..
        } => load(&sel).and_then(|cfg| emit(&run(&cfg, &tables)?, &out_dir(out, Some(&cfg)))),
        Cmd::Reproduce { id, config, out } => (|| {
            let cfg = match &config {
                Some(p) => RunConfig::load(p)?,
                None => RunConfig::default(),
            };
            let set = reproduce(&id, &cfg)?;
            emit(&set, &out_dir(out, Some(&cfg)))
        })(),
        Cmd::Sweep {
            sel,
            parameter,
            values,
            out,
        } => load(&sel).and_then(|mut cfg| {
            if parameter.is_some() || values.is_some() {
                let mut spec = cfg.sweep.clone().unwrap_or(lunarprop::config::SweepSpec {
                    parameter: SweepParam::R0,
                    values: Vec::new(),
                });
                if let Some(p) = parameter {
                    spec.parameter = p.parse()?;
                }
                if let Some(v) = values {
                    spec.values = v;
                }
                cfg.sweep = Some(spec);
            }
            emit(&sweep(&cfg)?, &out_dir(out, Some(&cfg)))
        }),
        Cmd::DumpEffectiveConfig { sel } => load(&sel).and_then(|cfg| {
            print!("{}", cfg.effective()?.to_toml());
            Ok(())
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.report(),
    }
}
