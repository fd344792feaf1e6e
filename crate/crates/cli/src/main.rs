use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use bethe_core::arrangement::{building_set, layer_poset_dot, layers};
use bethe_core::exact::DEFAULT_ORDER;
use bethe_core::report::{self, PointSpec};
use bethe_core::rootsys::RootSystem;
use bethe_core::verify::{self, CheckReport, RunOpts};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "bethe", version, about = "Bethe subspaces of trigonometric holonomy algebras over the wonderful model")]
struct Cli {
    /// Root system label, e.g. A2, B3, G2, A1xA1.
    #[arg(long = "type", global = true, value_name = "TYPE")]
    label: Option<String>,
    /// Order N of the cyclotomic field Q(ζ_N).
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER)]
    field_order: u32,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sample count for the rank and injectivity suites.
    #[arg(long, global = true, default_value_t = 50)]
    samples: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate combinatorial data of a root system.
    Enumerate {
        what: What,
        /// Root system label; overrides --type.
        #[arg(value_name = "TYPE")]
        positional_type: Option<String>,
    },
    /// Compute the subspace Q(x) for a point given as a JSON spec.
    Subspace { spec: PathBuf },
    /// Run a verification suite.
    Check { suite: Suite },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Roots,
    Layers,
    BuildingSet,
    NestedSets,
    BoundaryStrata,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Commutativity,
    Hecke,
    SpinChain,
    Rank,
    Injectivity,
    Triangularity,
    #[value(name = "typeA", alias = "type-a")]
    TypeA,
    Fixtures,
    GaudinChart,
    Degeneration,
    Oracles,
    All,
}

enum Failure {
    Usage(String),
    Check,
}

impl From<bethe_core::Error> for Failure {
    fn from(e: bethe_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Enumerate { what, positional_type } => {
            let label = positional_type.as_deref().or(cli.label.as_deref());
            let rs = root_system(label)?;
            enumerate(cli, &rs, *what)
        }
        Command::Subspace { spec } => subspace(cli, spec),
        Command::Check { suite } => check(cli, *suite),
    }
}

fn root_system(label: Option<&str>) -> Result<RootSystem, Failure> {
    let label = label.ok_or_else(|| Failure::Usage("a root system type is required (--type)".into()))?;
    Ok(RootSystem::build(label)?)
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(cli: &Cli, v: &Value) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(v).expect("reports serialize");
    text.push('\n');
    emit(cli, &text)
}

fn enumerate(cli: &Cli, rs: &RootSystem, what: What) -> Result<(), Failure> {
    let order = cli.field_order;
    if cli.format == Format::Dot {
        let ls = match what {
            What::Layers => layers(rs)?,
            What::BuildingSet => building_set(rs)?,
            _ => return Err(Failure::Usage("DOT output is available for layers and building-set only".into())),
        };
        return emit(cli, &layer_poset_dot(rs, &ls));
    }
    let v = match what {
        What::Roots => report::roots_report(rs, order),
        What::Layers => report::layers_report(rs, order, false)?,
        What::BuildingSet => report::layers_report(rs, order, true)?,
        What::NestedSets => report::nested_sets_report(rs, order),
        What::BoundaryStrata => report::boundary_strata_report(rs, order)?,
    };
    emit_json(cli, &v)
}

fn subspace(cli: &Cli, path: &PathBuf) -> Result<(), Failure> {
    if cli.format != Format::Json {
        return Err(Failure::Usage("subspace reports are JSON only".into()));
    }
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let spec = PointSpec::from_json(&text)?;
    let label = match (&spec.label, &cli.label) {
        (Some(a), Some(b)) if a != b => return Err(Failure::Usage(format!("spec type {a} conflicts with --type {b}"))),
        (a, b) => a.as_deref().or(b.as_deref()),
    };
    let rs = root_system(label)?;
    let point = spec.parse(&rs, cli.field_order)?;
    let q = report::point_subspace(&rs, &point)?;
    let input: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(e.to_string()))?;
    emit_json(cli, &report::subspace_report(&rs, cli.field_order, &q, &input))
}

fn check(cli: &Cli, suite: Suite) -> Result<(), Failure> {
    if cli.format != Format::Json {
        return Err(Failure::Usage("check reports are JSON only".into()));
    }
    let opts = RunOpts { seed: cli.seed, samples: cli.samples, order: cli.field_order };
    let typed = || root_system(cli.label.as_deref());
    let mut reports: Vec<CheckReport> = match suite {
        Suite::Commutativity => vec![verify::hecke(&typed()?, &opts, 20), verify::spin_chain(&opts, 20)],
        Suite::Hecke => vec![verify::hecke(&typed()?, &opts, 20)],
        Suite::SpinChain => vec![verify::spin_chain(&opts, 20)],
        Suite::Rank => vec![verify::rank(&typed()?, &opts)],
        Suite::Injectivity => vec![verify::injectivity(&typed()?, &opts)],
        Suite::Triangularity => vec![verify::triangularity(&typed()?)],
        Suite::TypeA => vec![verify::type_a(&opts, 10)],
        Suite::Fixtures => vec![verify::fixtures(&opts)],
        Suite::GaudinChart => vec![verify::gaudin_chart(&typed()?, &opts, 4)],
        Suite::Degeneration => vec![verify::degeneration()],
        Suite::Oracles => vec![verify::oracles(&opts, 500)],
        Suite::All => {
            let mut all = verify::typed_suites(&typed()?, &opts);
            all.extend([
                verify::spin_chain(&opts, 20),
                verify::type_a(&opts, 10),
                verify::fixtures(&opts),
                verify::degeneration(),
                verify::oracles(&opts, 500),
            ]);
            all
        }
    };
    reports.sort_by(|a, b| (&a.suite, &a.label).cmp(&(&b.suite, &b.label)));
    for r in &reports {
        eprintln!("{}", r.summary());
        for f in &r.failures {
            eprintln!("  {f}");
        }
    }
    let v = report::check_report(cli.label.as_deref(), cli.seed, cli.samples, cli.field_order, &reports);
    emit_json(cli, &v)?;
    if reports.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}
