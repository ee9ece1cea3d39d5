use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spg::experiments::{self, SweepSettings};
use spg::io::{self as doc, SpgDocument};
use spg::spindle;
use spg::transform::{self, Strategy, TransformConfig, DEFAULT_MAX_ROUNDS};
use spg::verify::{self, DEFAULT_RESTRICTION_BUDGET};
use spg::{FacetSet, Property, PropertyReport, SpgError, TransformError};

type Checker = fn(&spg::Spg) -> Result<PropertyReport, SpgError>;

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const DEFAULT_WITNESS_LIMIT: usize = 20;

#[derive(Parser)]
#[command(name = "spg", version, about = "Subset partition graph toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the spindle template on [d] x {1,2}, optionally transformed.
    BuildSpindle {
        #[arg(long)]
        dim: usize,
        /// Emit the untransformed template (the default).
        #[arg(long, conflicts_with = "transform")]
        raw: bool,
        /// Run the strong-adjacency transform on the template.
        #[arg(long, requires_all = ["r", "seed"])]
        transform: bool,
        #[command(flatten)]
        params: OptionalTransformArgs,
        /// Largest dimension accepted.
        #[arg(long, default_value_t = spindle::DEFAULT_MAX_SPINDLE_DIM)]
        max_dim: usize,
    },
    /// Apply the strong-adjacency transform to a singleton SPG.
    Transform {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        params: TransformArgs,
    },
    /// Check properties; exit 1 if any fails.
    Verify {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
        property: Vec<PropertyArg>,
        /// Print every witness instead of the first 20.
        #[arg(long)]
        all_witnesses: bool,
        /// Cap on restriction checks for dimension reduction.
        #[arg(long, default_value_t = DEFAULT_RESTRICTION_BUDGET)]
        budget: u64,
    },
    /// Emit the restriction to the given symbols.
    Restrict {
        #[command(flatten)]
        input: InputArg,
        /// Comma-separated symbol labels.
        #[arg(long, allow_hyphen_values = true)]
        facet: String,
    },
    /// Print dimension, symbol count, max degree, diameter and spindle length.
    Stats {
        #[command(flatten)]
        input: InputArg,
    },
    /// Success rate of the transform across multipliers.
    Sweep {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_delimiter = ',', required = true)]
        r_list: Vec<usize>,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
        max_rounds: usize,
        #[arg(long, value_enum, default_value = "resample")]
        strategy: StrategyArg,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Monte-Carlo bad-event frequency on a degree-2 star with disjoint sets.
    EstimateBadEvent {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

#[derive(Args)]
struct InputArg {
    /// Input document; stdin when omitted or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value = "resample")]
    strategy: StrategyArg,
    #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
    max_rounds: usize,
}

#[derive(Args)]
struct OptionalTransformArgs {
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "resample")]
    strategy: StrategyArg,
    #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
    max_rounds: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Resample,
    Reject,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Resample => Strategy::Resample,
            StrategyArg::Reject => Strategy::Reject,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PropertyArg {
    Adjacency,
    StrongAdjacency,
    EndpointCount,
    Singleton,
    DimensionReduction,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Self { code: EXIT_USAGE, message: message.to_string() }
    }
}

impl From<SpgError> for Failure {
    fn from(e: SpgError) -> Self {
        Failure::usage(e)
    }
}

impl From<spg::DocumentError> for Failure {
    fn from(e: spg::DocumentError) -> Self {
        Failure::usage(e)
    }
}

impl From<TransformError> for Failure {
    fn from(e: TransformError) -> Self {
        let code = match &e {
            TransformError::BudgetExhausted { .. } => EXIT_BUDGET,
            TransformError::Verification(_) => EXIT_VIOLATION,
            _ => EXIT_USAGE,
        };
        let mut message = e.to_string();
        match &e {
            TransformError::BudgetExhausted { last, .. } => {
                for b in last.iter().take(DEFAULT_WITNESS_LIMIT) {
                    message.push_str(&format!(
                        "\n  bad event at vertex {} on edges {:?}: {} / {}",
                        b.vertex, b.edges, b.witness.0, b.witness.1
                    ));
                }
            }
            TransformError::Verification(report) => {
                for w in report.witnesses.iter().take(DEFAULT_WITNESS_LIMIT) {
                    message.push_str(&format!("\n  - {w:?}"));
                }
            }
            _ => {}
        }
        Self { code, message }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(format!("i/o error: {e}"))
    }
}

fn read_input(input: &InputArg) -> Result<SpgDocument, Failure> {
    let text = match input.input.as_deref() {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", p.display())))?,
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Ok(doc::parse(&text)?)
}

fn transform_document(
    input: &SpgDocument,
    config: &TransformConfig,
) -> Result<SpgDocument, Failure> {
    let spg = input.to_spg()?;
    let result = transform::construct_with_resampling(&spg, config)?;
    let n = spg.symbols().len();
    let apices = input
        .annotations
        .apices
        .as_ref()
        .map(|[a1, a2]| [a1.lift(n, config.r), a2.lift(n, config.r)]);
    eprintln!(
        "transform: r={} rounds={} vertices={}",
        config.r,
        result.rounds_used,
        result.spg.vertex_count()
    );
    Ok(SpgDocument::from_transform(&result, apices))
}

fn print_report(out: &mut String, report: &PropertyReport, symbols: &spg::SymbolTable, limit: usize) {
    if report.holds() {
        out.push_str(&format!("{}: holds\n", report.property));
        return;
    }
    out.push_str(&format!(
        "{}: FAILS ({} witnesses)\n",
        report.property,
        report.witnesses.len()
    ));
    for w in report.witnesses.iter().take(limit) {
        out.push_str(&format!("  - {}\n", w.describe(symbols)));
    }
    if report.witnesses.len() > limit {
        out.push_str(&format!("  ... {} more\n", report.witnesses.len() - limit));
    }
}

fn run(cli: Cli, out: &mut String) -> Result<u8, Failure> {
    match cli.command {
        Command::BuildSpindle { dim, raw: _, transform, params, max_dim } => {
            let template = spindle::build_spindle_template_capped(dim, max_dim)?;
            let template_doc = SpgDocument::from_spindle(&template.spindle);
            let document = if transform {
                let config = TransformConfig {
                    r: params.r.expect("clap enforces --r"),
                    seed: params.seed.expect("clap enforces --seed"),
                    max_rounds: params.max_rounds,
                    strategy: params.strategy.into(),
                };
                transform_document(&template_doc, &config)?
            } else {
                template_doc
            };
            out.push_str(&doc::serialize(&document));
            Ok(0)
        }
        Command::Transform { input, params } => {
            let document = read_input(&input)?;
            let config = TransformConfig {
                r: params.r,
                seed: params.seed,
                max_rounds: params.max_rounds,
                strategy: params.strategy.into(),
            };
            out.push_str(&doc::serialize(&transform_document(&document, &config)?));
            Ok(0)
        }
        Command::Verify { input, property, all_witnesses, budget } => {
            let spg = read_input(&input)?.to_spg()?;
            let wanted = |p: PropertyArg| property.contains(&p) || property.contains(&PropertyArg::All);
            let limit = if all_witnesses { usize::MAX } else { DEFAULT_WITNESS_LIMIT };
            let mut failed = false;
            let checks: [(PropertyArg, Checker); 4] = [
                (PropertyArg::Adjacency, verify::check_adjacency),
                (PropertyArg::StrongAdjacency, verify::check_strong_adjacency),
                (PropertyArg::EndpointCount, verify::check_endpoint_count),
                (PropertyArg::Singleton, verify::check_singleton),
            ];
            for (arg, check) in checks {
                if wanted(arg) {
                    let report = check(&spg)?;
                    failed |= !report.holds();
                    print_report(out, &report, spg.symbols(), limit);
                }
            }
            if wanted(PropertyArg::DimensionReduction) {
                match verify::check_dimension_reduction(&spg, budget) {
                    Ok(report) => {
                        failed |= !report.holds();
                        print_report(out, &report, spg.symbols(), limit);
                    }
                    Err(e @ SpgError::BudgetExceeded { .. }) => {
                        return Err(Failure::usage(format!(
                            "{}: refused: {e}",
                            Property::DimensionReduction
                        )))
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(if failed { EXIT_VIOLATION } else { 0 })
        }
        Command::Restrict { input, facet } => {
            let spg = read_input(&input)?.to_spg()?;
            let f: FacetSet = spg.symbols().parse_facet(&facet)?;
            let document = match verify::restrict(&spg, &f)? {
                Some(r) => SpgDocument::from_spg(&r),
                None => {
                    let (symbols, _) = spg.symbols().without(&f);
                    SpgDocument::empty_restriction(&symbols, spg.dimension() - f.len())
                }
            };
            out.push_str(&doc::serialize(&document));
            Ok(0)
        }
        Command::Stats { input } => {
            let document = read_input(&input)?;
            let spg = document.to_spg()?;
            out.push_str(&format!("dimension: {}\n", spg.dimension()));
            out.push_str(&format!("symbols: {}\n", spg.symbols().len()));
            out.push_str(&format!("vertices: {}\n", spg.vertex_count()));
            out.push_str(&format!("sets: {}\n", spg.set_count()));
            out.push_str(&format!("edges: {}\n", spg.edges().len()));
            out.push_str(&format!("max_degree: {}\n", spg.max_degree()));
            match spg.diameter() {
                Some(d) if spg.is_connected() => out.push_str(&format!("diameter: {d}\n")),
                _ => out.push_str("diameter: disconnected\n"),
            }
            if let Some(spindle) = document.to_spindle()? {
                out.push_str(&format!("spindle_length: {}\n", spindle.length()));
            }
            Ok(0)
        }
        Command::Sweep { input, r_list, trials, seed, max_rounds, strategy, format } => {
            let spg = read_input(&input)?.to_spg()?;
            let settings = SweepSettings { max_rounds, strategy: strategy.into() };
            let report = experiments::sweep_r(&spg, &r_list, trials, seed, &settings)?;
            match format {
                Format::Json => {
                    out.push_str(&serde_json::to_string(&report).expect("report serializes"));
                    out.push('\n');
                }
                Format::Table => {
                    out.push_str(&format!("template: {}\n", report.template));
                    out.push_str(&format!("min_multiplier: {}\n", report.min_multiplier));
                    out.push_str("r\ttrials\tsuccesses\trate\tmean_rounds\tmean_bad_round0\tlll\n");
                    for row in &report.rows {
                        out.push_str(&format!(
                            "{}\t{}\t{}\t{:.4}\t{:.4}\t{:.4}\t{}\n",
                            row.r,
                            row.trials,
                            row.successes,
                            row.success_rate,
                            row.mean_rounds,
                            row.mean_initial_bad_events,
                            row.lll_condition
                        ));
                    }
                }
            }
            Ok(0)
        }
        Command::EstimateBadEvent { dim, r, trials, seed, format } => {
            if dim == 0 {
                return Err(Failure::usage("--dim must be at least 1"));
            }
            let block = |k: usize| {
                FacetSet::new((k * dim) as u32..((k + 1) * dim) as u32).expect("distinct range")
            };
            let est = transform::estimate_bad_event_probability(
                &block(0),
                &block(1),
                &block(2),
                r,
                trials,
                seed,
            )?;
            let sigma = (est.bound * (1.0 - est.bound).max(0.0) / trials as f64).sqrt();
            match format {
                Format::Json => out.push_str(&format!(
                    "{}\n",
                    serde_json::json!({
                        "dim": dim, "r": r, "trials": est.trials,
                        "occurrences": est.occurrences, "frequency": est.frequency,
                        "bound": est.bound, "three_sigma": 3.0 * sigma,
                    })
                )),
                Format::Table => {
                    out.push_str(&format!("dim: {dim}\nr: {r}\ntrials: {}\n", est.trials));
                    out.push_str(&format!("occurrences: {}\n", est.occurrences));
                    out.push_str(&format!("frequency: {:.6}\n", est.frequency));
                    out.push_str(&format!("bound_4_over_r: {:.6}\n", est.bound));
                    out.push_str(&format!("three_sigma: {:.6}\n", 3.0 * sigma));
                    if r < 4 {
                        out.push_str("note: the 4/r bound is only claimed for r >= 4\n");
                    }
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    let mut stdout = io::stdout().lock();
    if stdout.write_all(out.as_bytes()).and_then(|()| stdout.flush()).is_err() {
        return ExitCode::from(EXIT_USAGE);
    }
    ExitCode::from(code)
}
