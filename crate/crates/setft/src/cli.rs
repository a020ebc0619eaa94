//! Command-line front end.
//!
//! Thin argument layer over the library: `generate` writes function
//! specs, `transform` runs the dense transforms over CSV/binary vectors,
//! `ssft` learns sparse spectra from oracle specs, `eval` estimates
//! reconstruction error, `maximize` runs greedy selection, and `bench`
//! drives the experiment harness. Machine output goes to `--out` paths
//! only; diagnostics go to standard error. Exit codes: 0 success,
//! 1 recovery failure, 2 invalid input.
//!
//! Oracle specs are compact strings:
//! `cut:path5`, `cut:star8`, `random-sparse:n=10,k=8[,model=4][,seed=1]`,
//! `facility:n=20,rows=10[,density=1][,seed=1]`,
//! `coverage:n=8,universe=12[,seed=1]`,
//! `preference:n=8,l=2,a=1[,seed=1]`, `infogain:n=12[,sigma=1][,seed=1]`,
//! `dense:values.csv`, `sparse:spectrum.json`, or a path to a spec JSON
//! written by `generate`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::evaluation::{
    greedy_maximize, relative_error, rows_to_csv, run_experiment, CutTopology, Learner, ResultRow,
    TaskFamily, TaskSpec,
};
use crate::function::{Model, SetFunctionOracle};
use crate::generators::{
    coverage_oracle, facility_location_oracle, graph_cut_oracle, information_gain_oracle,
    preference_oracle, random_psd_covariance, random_sparse_oracle, CoefficientDist, CoverageSpec,
    FacilitySpec, GraphSpec, PreferenceSpec,
};
use crate::io;
use crate::rng::seeded_rng;
use crate::ssft::{ssft, ssft_plus, SsftConfig};
use crate::transform::{dense_ft, dense_ift};

const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (schema 1)");

#[derive(Parser)]
#[command(name = "setft", version = VERSION)]
#[command(about = "Fourier transforms and sparse spectrum learning for set functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a function spec JSON for one of the built-in families.
    Generate(GenerateArgs),
    /// Dense transform of a value vector (CSV or .bin).
    Transform(TransformArgs),
    /// Learn a sparse spectrum from an oracle.
    Ssft(SsftArgs),
    /// Estimate the relative reconstruction error of a spectrum.
    Eval(EvalArgs),
    /// Greedy maximization under a cardinality constraint.
    Maximize(MaximizeArgs),
    /// Run a repeated learn/measure experiment.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[command(subcommand)]
    family: GenerateFamily,
}

#[derive(Subcommand)]
enum GenerateFamily {
    /// Random coverage instance.
    Coverage {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        universe: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random tie-free preference instance.
    Preference {
        #[arg(long)]
        n: usize,
        /// Number of repulsive rows.
        #[arg(long, default_value_t = 1)]
        l: usize,
        /// Number of attractive rows.
        #[arg(long, default_value_t = 0)]
        a: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Random facility-location utilities.
    Facility {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rows: usize,
        /// Fraction of nonzero entries per row.
        #[arg(long, default_value_t = 1.0)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Unit-weight path or star cut.
    Cut {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        topology: TopologyArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Planted random k-sparse spectrum (stores the realized truth).
    RandomSparse {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        model: u8,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Information gain under a random PSD covariance.
    Infogain {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TopologyArg {
    Path,
    Star,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Fwd,
    Inv,
}

#[derive(Args)]
struct TransformArgs {
    /// Shift model: 3, 4, or 5.
    #[arg(long)]
    model: u8,
    #[arg(long, value_enum)]
    direction: DirectionArg,
    /// Input vector (.csv with header rank,value, or .bin).
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SsftArgs {
    #[arg(long)]
    model: u8,
    /// Use the filtering-based learner.
    #[arg(long)]
    plus: bool,
    /// Zero threshold on solved coefficients.
    #[arg(long, default_value_t = 1e-8)]
    eps: f64,
    #[arg(long, default_value_t = 1000)]
    kmax: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Keep the empty frequency at step 0 even when the base query is
    /// zero (needed for functions that vanish on the empty set, such as
    /// facility location).
    #[arg(long)]
    pin_empty: bool,
    /// Row oversampling for the model-5 least-squares solver.
    #[arg(long, default_value_t = 2.0)]
    oversampling: f64,
    /// Oracle spec (see module docs).
    #[arg(long)]
    oracle: String,
    /// Recovered spectrum JSON.
    #[arg(long)]
    out: PathBuf,
    /// Optional run report JSON (queries, per-step support sizes).
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    oracle: String,
    /// Spectrum JSON to evaluate against the oracle.
    #[arg(long)]
    estimate: PathBuf,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Error-estimate JSON; omitted, the summary only goes to stderr.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MaximizeTarget {
    /// Maximize a true function given as an oracle spec.
    #[arg(long)]
    oracle: Option<String>,
    /// Maximize a learnt surrogate spectrum.
    #[arg(long)]
    surrogate: Option<PathBuf>,
}

#[derive(Args)]
struct MaximizeArgs {
    #[command(flatten)]
    target: MaximizeTarget,
    /// Cardinality budget.
    #[arg(long)]
    d: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum LearnerArg {
    Ssft,
    SsftPlus,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct BenchArgs {
    /// Family-style oracle spec (one fresh instance per repetition).
    #[arg(long)]
    oracle: String,
    #[arg(long, value_enum)]
    learner: LearnerArg,
    #[arg(long, default_value_t = 4)]
    model: u8,
    #[arg(long, default_value_t = 1)]
    reps: usize,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    /// Placement budget; adds the greedy comparison columns.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value_t = 1e-8)]
    eps: f64,
    #[arg(long, default_value_t = 1000)]
    kmax: usize,
    #[arg(long)]
    pin_empty: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
}

/// Parse and run a command line. Returns the process exit code:
/// 0 on success, 1 on recovery failure, 2 on invalid input.
pub fn dispatch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let is_usage_error = err.use_stderr();
            let _ = err.print();
            return if is_usage_error { 2 } else { 0 };
        }
    };
    match run(cli.command) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::RankDeficient { .. } | Error::DegenerateFilter { .. } => 1,
        _ => 2,
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Generate(args) => generate(args),
        Command::Transform(args) => transform(args),
        Command::Ssft(args) => learn(args),
        Command::Eval(args) => evaluate(args),
        Command::Maximize(args) => maximize(args),
        Command::Bench(args) => bench(args),
    }
}

fn generate(args: GenerateArgs) -> Result<()> {
    let (file, out) = match args.family {
        GenerateFamily::Coverage {
            n,
            universe,
            seed,
            out,
        } => {
            let spec = CoverageSpec::random(n, universe, &mut seeded_rng(seed))?;
            (io::GeneratorFile::from_coverage(&spec), out)
        }
        GenerateFamily::Preference { n, l, a, seed, out } => {
            let spec = PreferenceSpec::random_tie_free(n, l, a, &mut seeded_rng(seed))?;
            (io::GeneratorFile::from_preference(&spec), out)
        }
        GenerateFamily::Facility {
            n,
            rows,
            density,
            seed,
            out,
        } => {
            let spec = FacilitySpec::random(n, rows, density, &mut seeded_rng(seed))?;
            (io::GeneratorFile::from_facility(&spec), out)
        }
        GenerateFamily::Cut { n, topology, out } => {
            let spec = match topology {
                TopologyArg::Path => GraphSpec::path(n)?,
                TopologyArg::Star => GraphSpec::star(n)?,
            };
            (io::GeneratorFile::from_cut(&spec), out)
        }
        GenerateFamily::RandomSparse {
            n,
            k,
            model,
            seed,
            out,
        } => {
            let model = Model::from_id(model)?;
            let (_, truth) =
                random_sparse_oracle(n, k, model, CoefficientDist::StandardNormal, seed)?;
            (io::GeneratorFile::from_random_sparse(&truth)?, out)
        }
        GenerateFamily::Infogain {
            n,
            sigma,
            seed,
            out,
        } => {
            let covariance = random_psd_covariance(n, &mut seeded_rng(seed));
            // Validate before writing.
            information_gain_oracle(covariance.clone(), sigma)?;
            (io::GeneratorFile::from_infogain(&covariance, sigma), out)
        }
    };
    io::write_generator(&out, &file)?;
    eprintln!("wrote spec to {}", out.display());
    Ok(())
}

fn transform(args: TransformArgs) -> Result<()> {
    let model = Model::from_id(args.model)?;
    let input = io::read_dense(&args.input)?;
    let output = match args.direction {
        DirectionArg::Fwd => dense_ft(&input, model),
        DirectionArg::Inv => dense_ift(&input, model),
    };
    io::write_dense(&args.out, &output)?;
    eprintln!(
        "{model} {} transform of 2^{} values -> {}",
        match args.direction {
            DirectionArg::Fwd => "forward",
            DirectionArg::Inv => "inverse",
        },
        input.n(),
        args.out.display()
    );
    Ok(())
}

fn learn(args: SsftArgs) -> Result<()> {
    let model = Model::from_id(args.model)?;
    let oracle = parse_oracle_spec(&args.oracle, args.seed)?;
    let cfg = SsftConfig {
        model,
        epsilon: args.eps,
        k_max: args.kmax,
        seed: args.seed,
        ls_oversampling: args.oversampling,
        pin_empty_start: args.pin_empty,
    };
    let report = if args.plus {
        ssft_plus(oracle, &cfg)?
    } else {
        let mut oracle = oracle;
        ssft(&mut oracle, &cfg)?
    };
    io::write_sparse(&args.out, &report.result)?;
    if let Some(path) = &args.report {
        std::fs::write(path, io::report_to_json(&report))?;
    }
    eprintln!(
        "recovered {} coefficients with {} queries{} -> {}",
        report.result.len(),
        report.queries_used,
        if report.truncated { " (truncated)" } else { "" },
        args.out.display()
    );
    Ok(())
}

fn evaluate(args: EvalArgs) -> Result<()> {
    let mut oracle = parse_oracle_spec(&args.oracle, args.seed)?;
    let estimate = io::read_sparse(&args.estimate)?;
    let result = relative_error(&mut oracle, &estimate, args.samples, args.seed)?;
    if let Some(path) = &args.out {
        let json = serde_json::json!({
            "relative_error": result.relative_error,
            "num_samples": result.num_samples,
            "seed": result.seed,
        });
        std::fs::write(path, serde_json::to_string_pretty(&json)?)?;
    }
    eprintln!(
        "relative error {} over {} samples (seed {})",
        result.relative_error, result.num_samples, result.seed
    );
    Ok(())
}

fn maximize(args: MaximizeArgs) -> Result<()> {
    let (set, value) = match (&args.target.oracle, &args.target.surrogate) {
        (Some(spec), None) => {
            let mut oracle = parse_oracle_spec(spec, 0)?;
            greedy_maximize(&mut oracle, args.d)?
        }
        (None, Some(path)) => {
            let mut surrogate = io::read_sparse(path)?;
            greedy_maximize(&mut surrogate, args.d)?
        }
        _ => unreachable!("clap enforces exactly one target"),
    };
    if let Some(path) = &args.out {
        let indices: Vec<usize> = set.elements().map(|e| e + 1).collect();
        let json = serde_json::json!({ "set": indices, "value": value, "d": args.d });
        std::fs::write(path, serde_json::to_string_pretty(&json)?)?;
    }
    eprintln!("greedy set {set} with value {value}");
    Ok(())
}

fn bench(args: BenchArgs) -> Result<()> {
    let family = parse_family_spec(&args.oracle)?;
    let model = Model::from_id(args.model)?;
    let task = TaskSpec {
        family,
        learner: match args.learner {
            LearnerArg::Ssft => Learner::Ssft,
            LearnerArg::SsftPlus => Learner::SsftPlus,
        },
        config: SsftConfig {
            model,
            epsilon: args.eps,
            k_max: args.kmax,
            seed: args.seed,
            ls_oversampling: 2.0,
            pin_empty_start: args.pin_empty,
        },
        repetitions: args.reps,
        base_seed: args.seed,
        num_samples: args.samples,
        placement_d: args.d,
    };
    let rows = run_experiment(&task)?;
    let text = match args.format {
        FormatArg::Csv => rows_to_csv(&rows),
        FormatArg::Json => rows_to_json(&rows)?,
    };
    std::fs::write(&args.out, text)?;
    eprintln!("wrote {} result rows to {}", rows.len(), args.out.display());
    Ok(())
}

fn rows_to_json(rows: &[ResultRow]) -> Result<String> {
    let values: Vec<serde_json::Value> = rows
        .iter()
        .map(|row| {
            serde_json::json!({
                "rep": row.rep,
                "seed": row.seed,
                "queries": row.queries,
                "time_ms": row.time_ms,
                "k": row.recovered_k,
                "rel_error": row.rel_error,
                "greedy_true": row.greedy_true,
                "greedy_surrogate": row.greedy_surrogate,
                "greedy_random": row.greedy_random,
            })
        })
        .collect();
    Ok(serde_json::to_string_pretty(&values)?)
}

// ---------------------------------------------------------------------
// Oracle spec strings

fn parse_kv(body: &str, spec: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for part in body.split(',').filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::invalid(format!("expected key=value in oracle spec {spec:?}")))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn take<T: std::str::FromStr>(
    map: &BTreeMap<String, String>,
    key: &str,
    spec: &str,
) -> Result<Option<T>> {
    match map.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse()
            .map(Some)
            .map_err(|_| Error::invalid(format!("bad value for {key} in oracle spec {spec:?}"))),
    }
}

fn require<T: std::str::FromStr>(
    map: &BTreeMap<String, String>,
    key: &str,
    spec: &str,
) -> Result<T> {
    take(map, key, spec)?
        .ok_or_else(|| Error::invalid(format!("oracle spec {spec:?} needs {key}=...")))
}

/// Build an oracle from a compact spec string; `default_seed` fills in
/// when the spec does not carry its own seed.
pub fn parse_oracle_spec(spec: &str, default_seed: u64) -> Result<SetFunctionOracle> {
    if spec.ends_with(".json") && !spec.contains(':') {
        return io::read_generator(Path::new(spec))?.build_oracle();
    }
    let (kind, body) = spec
        .split_once(':')
        .ok_or_else(|| Error::invalid(format!("unrecognized oracle spec {spec:?}")))?;
    match kind {
        "file" => io::read_generator(Path::new(body))?.build_oracle(),
        "dense" => Ok(SetFunctionOracle::from_dense(io::read_dense(Path::new(
            body,
        ))?)),
        "sparse" => Ok(SetFunctionOracle::from_sparse(io::read_sparse(Path::new(
            body,
        ))?)),
        "cut" => {
            let spec = parse_cut_body(body)?;
            Ok(graph_cut_oracle(&spec))
        }
        "random-sparse" => {
            let map = parse_kv(body, spec)?;
            let n = require(&map, "n", spec)?;
            let k = require(&map, "k", spec)?;
            let model = Model::from_id(take(&map, "model", spec)?.unwrap_or(4))?;
            let seed = take(&map, "seed", spec)?.unwrap_or(default_seed);
            let (oracle, _) =
                random_sparse_oracle(n, k, model, CoefficientDist::StandardNormal, seed)?;
            Ok(oracle)
        }
        "facility" => {
            let map = parse_kv(body, spec)?;
            let n = require(&map, "n", spec)?;
            let rows = require(&map, "rows", spec)?;
            let density = take(&map, "density", spec)?.unwrap_or(1.0);
            let seed = take(&map, "seed", spec)?.unwrap_or(default_seed);
            let spec = FacilitySpec::random(n, rows, density, &mut seeded_rng(seed))?;
            Ok(facility_location_oracle(&spec))
        }
        "coverage" => {
            let map = parse_kv(body, spec)?;
            let n = require(&map, "n", spec)?;
            let universe = require(&map, "universe", spec)?;
            let seed = take(&map, "seed", spec)?.unwrap_or(default_seed);
            let spec = CoverageSpec::random(n, universe, &mut seeded_rng(seed))?;
            Ok(coverage_oracle(&spec))
        }
        "preference" => {
            let map = parse_kv(body, spec)?;
            let n = require(&map, "n", spec)?;
            let l = take(&map, "l", spec)?.unwrap_or(1);
            let a = take(&map, "a", spec)?.unwrap_or(0);
            let seed = take(&map, "seed", spec)?.unwrap_or(default_seed);
            let spec = PreferenceSpec::random_tie_free(n, l, a, &mut seeded_rng(seed))?;
            Ok(preference_oracle(&spec))
        }
        "infogain" => {
            let map = parse_kv(body, spec)?;
            let n = require(&map, "n", spec)?;
            let sigma = take(&map, "sigma", spec)?.unwrap_or(1.0);
            let seed = take(&map, "seed", spec)?.unwrap_or(default_seed);
            let covariance = random_psd_covariance(n, &mut seeded_rng(seed));
            information_gain_oracle(covariance, sigma)
        }
        other => Err(Error::invalid(format!("unknown oracle family {other:?}"))),
    }
}

fn parse_cut_body(body: &str) -> Result<GraphSpec> {
    if let Some(n) = body.strip_prefix("path") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::invalid(format!("bad cut spec {body:?}")))?;
        GraphSpec::path(n)
    } else if let Some(n) = body.strip_prefix("star") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::invalid(format!("bad cut spec {body:?}")))?;
        GraphSpec::star(n)
    } else {
        Err(Error::invalid(format!(
            "cut spec must be path<N> or star<N>, got {body:?}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::SubsetMask;

    #[test]
    fn exit_codes_by_error_class() {
        assert_eq!(exit_code(&Error::RankDeficient { support: vec![] }), 1);
        assert_eq!(
            exit_code(&Error::DegenerateFilter {
                frequency: SubsetMask::empty(2)
            }),
            1
        );
        assert_eq!(exit_code(&Error::invalid("nope")), 2);
        assert_eq!(exit_code(&Error::ZeroNorm { samples: 5 }), 2);
        assert_eq!(exit_code(&Error::Capacity { n: 70 }), 2);
    }

    #[test]
    fn oracle_specs_parse_and_reject() {
        assert!(parse_oracle_spec("cut:path4", 0).is_ok());
        assert!(parse_oracle_spec("cut:ring4", 0).is_err());
        assert!(parse_oracle_spec("random-sparse:n=6,k=3", 1).is_ok());
        assert!(parse_oracle_spec("random-sparse:k=3", 1).is_err());
        assert!(parse_oracle_spec("random-sparse:n=6,k=3,model=9", 1).is_err());
        assert!(parse_oracle_spec("facility:n=6,rows=2,density=0.5", 1).is_ok());
        assert!(parse_oracle_spec("infogain:n=5,sigma=2.0", 1).is_ok());
        assert!(parse_oracle_spec("gibberish", 0).is_err());

        let family = parse_family_spec("cut:star7").unwrap();
        assert_eq!(
            family,
            TaskFamily::Cut {
                n: 7,
                topology: CutTopology::Star
            }
        );
        assert!(parse_family_spec("dense:whatever.csv").is_err());
    }

    #[test]
    fn spec_seed_fills_from_default() {
        let mut a = parse_oracle_spec("random-sparse:n=6,k=3", 9).unwrap();
        let mut b = parse_oracle_spec("random-sparse:n=6,k=3,seed=9", 0).unwrap();
        for mask in crate::set::all_masks(6) {
            assert_eq!(a.eval(&mask), b.eval(&mask));
        }
    }
}

/// Family-style spec for `bench`: re-instantiable per repetition.
fn parse_family_spec(spec: &str) -> Result<TaskFamily> {
    let (kind, body) = spec
        .split_once(':')
        .ok_or_else(|| Error::invalid(format!("unrecognized family spec {spec:?}")))?;
    match kind {
        "cut" => {
            let graph = parse_cut_body(body)?;
            let topology = if body.starts_with("path") {
                CutTopology::Path
            } else {
                CutTopology::Star
            };
            Ok(TaskFamily::Cut {
                n: graph.n,
                topology,
            })
        }
        "random-sparse" => {
            let map = parse_kv(body, spec)?;
            Ok(TaskFamily::RandomSparse {
                n: require(&map, "n", spec)?,
                k: require(&map, "k", spec)?,
            })
        }
        "facility" => {
            let map = parse_kv(body, spec)?;
            Ok(TaskFamily::Facility {
                n: require(&map, "n", spec)?,
                rows: require(&map, "rows", spec)?,
                density: take(&map, "density", spec)?.unwrap_or(1.0),
            })
        }
        "coverage" => {
            let map = parse_kv(body, spec)?;
            Ok(TaskFamily::Coverage {
                n: require(&map, "n", spec)?,
                universe_size: require(&map, "universe", spec)?,
            })
        }
        "preference" => {
            let map = parse_kv(body, spec)?;
            Ok(TaskFamily::Preference {
                n: require(&map, "n", spec)?,
                repulsive: take(&map, "l", spec)?.unwrap_or(1),
                attractive: take(&map, "a", spec)?.unwrap_or(0),
            })
        }
        "infogain" => {
            let map = parse_kv(body, spec)?;
            Ok(TaskFamily::InfoGain {
                n: require(&map, "n", spec)?,
                sigma: take(&map, "sigma", spec)?.unwrap_or(1.0),
            })
        }
        other => Err(Error::invalid(format!(
            "unknown family {other:?} for bench"
        ))),
    }
}
