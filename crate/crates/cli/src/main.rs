//! Command line front end: generate suites, re-check and measure stored
//! suites, synthesize model corpora, and run whole-corpus comparisons.
//!
//! Exit codes: 0 on success, 1 when a model fails validation or a suite
//! fails verification, 2 when generation is infeasible under the requested
//! bounds, 3 on I/O, format, or usage errors.

use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use pathgen_core::corpus::CorpusError;
use pathgen_core::experiment::GenerateError;
use pathgen_core::natural::natural_cmp;
use pathgen_core::{
    convert_atomic, convert_sequence, edge_pair_requirements, efficiency_metrics, generate_bf,
    generate_corpus, generate_for, generate_pg, generate_sc, run_experiment, test_set_metrics,
    translate_paths, verify_consistency, Algorithm, Conversion, CorpusSpec, ModelError, Path,
    Provenance, Ptl, RequirementSet, RunConfig, SutModel, TestSet,
};

#[derive(Parser)]
#[command(
    name = "pathgen",
    version,
    about = "Prioritized path-based test suites from workflow models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a test suite from a workflow model.
    Generate {
        /// Workflow model file (JSON).
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        /// Suite generation algorithm.
        #[arg(long, value_enum)]
        algorithm: AlgorithmArg,
        /// Test depth level (ppt, pct, dct).
        #[arg(long, value_name = "N")]
        tdl: Option<usize>,
        /// Priority level of the cover (ppt, dct, priority conversions).
        #[arg(long, value_enum)]
        ptl: Option<PtlArg>,
        /// How to derive requirements from the model (bf, sc, pg).
        #[arg(long, value_enum)]
        conversion: Option<ConversionArg>,
        /// Edge repetition bound for candidate walks (ppt; default: the
        /// depth level).
        #[arg(long, value_name = "K")]
        max_edge_repeats: Option<usize>,
        /// Cover the requirements in this file (node id sequences on the
        /// parallel-free graph) instead of deriving them (bf, sc, pg).
        /// Suites built this way need `verify --requirements` later, and are
        /// expected to saturate the classes named by --ptl (both classes
        /// when --ptl is absent).
        #[arg(long, value_name = "FILE", conflicts_with = "conversion")]
        requirements: Option<PathBuf>,
        /// Also write the requirement set that was covered (bf, sc, pg).
        #[arg(long, value_name = "FILE")]
        requirements_out: Option<PathBuf>,
        /// Output file for the generated suite.
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Re-check a stored suite against its model.
    Verify {
        /// Workflow model file (JSON).
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        /// Test suite file produced by `generate`.
        #[arg(long, value_name = "FILE")]
        tests: PathBuf,
        /// Requirement file the suite was generated from, for suites whose
        /// provenance records no conversion.
        #[arg(long, value_name = "FILE")]
        requirements: Option<PathBuf>,
    },
    /// Print coverage counts and efficiency ratios for a stored suite.
    Metrics {
        /// Workflow model file (JSON).
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        /// Test suite file produced by `generate`.
        #[arg(long, value_name = "FILE")]
        tests: PathBuf,
        /// Emit one CSV header and one data row instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Generate a corpus of synthetic workflow models.
    Corpus {
        /// Corpus shape specification (JSON).
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
        /// Random seed; overrides the seed recorded in the spec.
        #[arg(long, value_name = "N")]
        seed: Option<u64>,
        /// Directory receiving one model file per instance.
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
    /// Run a configuration grid over every model in a corpus directory and
    /// write the per-instance and mean metrics as CSV.
    Bench {
        /// Directory of model files, as written by `corpus`.
        #[arg(long, value_name = "DIR")]
        corpus: PathBuf,
        /// Run configuration file (JSON): algorithms, depth and priority
        /// levels, conversions, and an optional edge repeat bound.
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        /// Output CSV file.
        #[arg(long, value_name = "FILE")]
        csv: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Ppt,
    Pct,
    Dct,
    Bf,
    Sc,
    Pg,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Ppt => Algorithm::Ppt,
            AlgorithmArg::Pct => Algorithm::Pct,
            AlgorithmArg::Dct => Algorithm::Dct,
            AlgorithmArg::Bf => Algorithm::Bf,
            AlgorithmArg::Sc => Algorithm::Sc,
            AlgorithmArg::Pg => Algorithm::Pg,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PtlArg {
    High,
    Medium,
}

impl From<PtlArg> for Ptl {
    fn from(p: PtlArg) -> Self {
        match p {
            PtlArg::High => Ptl::High,
            PtlArg::Medium => Ptl::Medium,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConversionArg {
    Atomic,
    Sequence,
    EdgePair,
}

impl From<ConversionArg> for Conversion {
    fn from(c: ConversionArg) -> Self {
        match c {
            ConversionArg::Atomic => Conversion::Atomic,
            ConversionArg::Sequence => Conversion::Sequence,
            ConversionArg::EdgePair => Conversion::EdgePair,
        }
    }
}

/// A terminal failure: message for stderr plus the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version arrive here too; only real usage errors
            // take the error path.
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Generate {
            model,
            algorithm,
            tdl,
            ptl,
            conversion,
            max_edge_repeats,
            requirements,
            requirements_out,
            out,
        } => generate(
            &model,
            algorithm.into(),
            tdl,
            ptl.map(Into::into),
            conversion.map(Into::into),
            max_edge_repeats,
            requirements.as_deref(),
            requirements_out.as_deref(),
            &out,
        ),
        Command::Verify {
            model,
            tests,
            requirements,
        } => verify(&model, &tests, requirements.as_deref()),
        Command::Metrics { model, tests, csv } => metrics(&model, &tests, csv),
        Command::Corpus { spec, seed, out } => corpus(&spec, seed, &out),
        Command::Bench {
            corpus,
            config,
            csv,
        } => bench(&corpus, &config, &csv),
    }
}

fn read_file(path: &FsPath) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(3, format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &FsPath, text: &str) -> CliResult {
    fs::write(path, text)
        .map_err(|e| Failure::new(3, format!("cannot write {}: {e}", path.display())))
}

/// Loads and validates a model. Unreadable or syntactically broken files
/// exit 3, structurally or semantically invalid models exit 1.
fn load_model(path: &FsPath) -> CliResult<SutModel> {
    let text = read_file(path)?;
    let model = SutModel::from_json(&text).map_err(|e| {
        let code = if matches!(e, ModelError::Syntax { .. }) {
            3
        } else {
            1
        };
        Failure::new(code, format!("{}: {e}", path.display()))
    })?;
    let report = model.validate();
    if !report.is_empty() {
        return Err(Failure::new(
            1,
            format!("{} fails validation:\n{report}", path.display()),
        ));
    }
    Ok(model)
}

fn load_test_set(path: &FsPath, model: &SutModel) -> CliResult<TestSet> {
    let text = read_file(path)?;
    TestSet::from_json(model, &text)
        .map_err(|e| Failure::new(3, format!("{}: {e}", path.display())))
}

/// Loads a requirement file. Requirements are node id sequences resolved on
/// the parallel-free graph, where consecutive nodes name edges uniquely.
fn load_requirements(path: &FsPath, split: &SutModel) -> CliResult<RequirementSet> {
    let text = read_file(path)?;
    let reqs = RequirementSet::from_json(split, &text)
        .map_err(|e| Failure::new(3, format!("{}: {e}", path.display())))?;
    if reqs.is_empty() {
        return Err(Failure::new(
            3,
            format!("{}: requirement set is empty", path.display()),
        ));
    }
    Ok(reqs)
}

fn generate_failure(e: GenerateError) -> Failure {
    let code = match &e {
        GenerateError::Ppt(_) | GenerateError::Baseline(_) => 2,
        GenerateError::MissingTdl(_)
        | GenerateError::MissingPtl(_)
        | GenerateError::MissingConversion(_) => 3,
        GenerateError::Translate(_) | GenerateError::Model(_) => 1,
    };
    Failure::new(code, e.to_string())
}

#[allow(clippy::too_many_arguments)]
fn generate(
    model_path: &FsPath,
    algorithm: Algorithm,
    tdl: Option<usize>,
    ptl: Option<Ptl>,
    conversion: Option<Conversion>,
    max_edge_repeats: Option<usize>,
    requirements: Option<&FsPath>,
    requirements_out: Option<&FsPath>,
    out: &FsPath,
) -> CliResult {
    let model = load_model(model_path)?;
    if (requirements.is_some() || requirements_out.is_some()) && !algorithm.requirement_based() {
        return Err(Failure::new(
            3,
            format!("requirement files apply to bf, sc, and pg, not {algorithm}"),
        ));
    }

    let (set, elapsed) = if let Some(req_path) = requirements {
        let (split, map) = model.split_parallel_edges();
        let reqs = load_requirements(req_path, &split)?;
        if let Some(req_out) = requirements_out {
            write_file(req_out, &reqs.to_json(&split))?;
        }
        let started = Instant::now();
        let raw = match algorithm {
            Algorithm::Bf => generate_bf(&split, &reqs),
            Algorithm::Sc => generate_sc(&split, &reqs),
            _ => generate_pg(&split, &reqs),
        }
        .map_err(|e| Failure::new(2, e.to_string()))?;
        let elapsed = started.elapsed();
        let split_ids: Vec<Vec<String>> = raw.cases.iter().map(|c| c.to_ids(&split)).collect();
        let cases = translate_paths(&split_ids, &map)
            .map_err(|e| Failure::new(1, e.to_string()))?
            .iter()
            .map(|ids| Path::from_edge_ids(&model, ids))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Failure::new(1, e.to_string()))?;
        let set = TestSet::new(
            cases,
            Provenance {
                algorithm,
                tdl: None,
                // Recorded so later verification knows which priority
                // classes the suite must saturate (both when absent).
                ptl,
                conversion: None,
                requirements: Some(req_path.display().to_string()),
            },
        );
        (set, elapsed)
    } else {
        if let Some(req_out) = requirements_out {
            let conversion = conversion.ok_or_else(|| {
                Failure::new(3, format!("{algorithm} needs a requirement conversion"))
            })?;
            let need_ptl = || {
                ptl.ok_or_else(|| {
                    Failure::new(3, format!("{conversion} conversion needs a priority level"))
                })
            };
            let (split, _) = model.split_parallel_edges();
            let reqs = match conversion {
                Conversion::Atomic => convert_atomic(&split, need_ptl()?),
                Conversion::Sequence => convert_sequence(&split, need_ptl()?),
                Conversion::EdgePair => edge_pair_requirements(&split),
            };
            write_file(req_out, &reqs.to_json(&split))?;
        }
        generate_for(&model, algorithm, tdl, ptl, conversion, max_edge_repeats)
            .map_err(generate_failure)?
    };

    if set.cases.is_empty() {
        eprintln!("warning: the generated suite is empty; the model has no edges in the selected priority class");
    }
    write_file(out, &set.to_json(&model))?;
    println!(
        "wrote {} test case(s) to {} ({:.3} ms)",
        set.cases.len(),
        out.display(),
        elapsed.as_secs_f64() * 1000.0
    );
    Ok(())
}

fn verify(model_path: &FsPath, tests: &FsPath, requirements: Option<&FsPath>) -> CliResult {
    let model = load_model(model_path)?;
    let set = load_test_set(tests, &model)?;
    let reqs = match requirements {
        Some(path) => {
            let (split, _) = model.split_parallel_edges();
            Some(load_requirements(path, &split)?)
        }
        None => None,
    };
    let report = verify_consistency(&model, &set, reqs.as_ref());
    print!("{report}");
    if report.all_passed() {
        println!("all checks passed");
        Ok(())
    } else {
        Err(Failure::new(1, format!("{} fails verification", tests.display())))
    }
}

fn metrics(model_path: &FsPath, tests: &FsPath, csv: bool) -> CliResult {
    let model = load_model(model_path)?;
    let set = load_test_set(tests, &model)?;
    let counts = test_set_metrics(&model, &set, None);
    let efficiency = efficiency_metrics(&model, &counts).ok();
    if efficiency.is_none() {
        eprintln!("warning: the suite is empty; efficiency ratios are undefined");
    }

    if csv {
        println!(
            "cases,alpha,alpha_h,alpha_m,beta,beta_h,beta_m,delta,epsilon,ac,lambda_h,lambda_m,Lambda_h,Lambda_m"
        );
        let mut fields = vec![
            counts.cases.to_string(),
            counts.alpha.to_string(),
            counts.alpha_h.to_string(),
            counts.alpha_m.to_string(),
            counts.beta.to_string(),
            counts.beta_h.to_string(),
            counts.beta_m.to_string(),
            counts.delta.to_string(),
            counts.epsilon.to_string(),
        ];
        match &efficiency {
            Some(e) => fields.extend([
                e.ac.to_string(),
                e.lambda_h.to_string(),
                e.lambda_m.to_string(),
                e.big_lambda_h.to_string(),
                e.big_lambda_m.to_string(),
            ]),
            None => fields.extend(std::iter::repeat_n(String::new(), 5)),
        }
        println!("{}", fields.join(","));
    } else {
        let mut doc = serde_json::Map::new();
        let counts_value = serde_json::to_value(&counts).expect("metrics serialize");
        for (k, v) in counts_value.as_object().expect("metrics are an object") {
            if k != "time_ms" {
                doc.insert(k.clone(), v.clone());
            }
        }
        if let Some(e) = &efficiency {
            let eff = serde_json::to_value(e).expect("efficiency serializes");
            for (k, v) in eff.as_object().expect("efficiency is an object") {
                doc.insert(k.clone(), v.clone());
            }
        }
        let text = serde_json::to_string_pretty(&serde_json::Value::Object(doc))
            .expect("document serializes");
        println!("{text}");
    }
    Ok(())
}

fn corpus(spec_path: &FsPath, seed: Option<u64>, out: &FsPath) -> CliResult {
    let text = read_file(spec_path)?;
    let mut spec: CorpusSpec = serde_json::from_str(&text)
        .map_err(|e| Failure::new(3, format!("{}: {e}", spec_path.display())))?;
    if let Some(seed) = seed {
        spec.seed = seed;
    }
    let corpus = generate_corpus(&spec).map_err(|e| {
        let code = match &e {
            CorpusError::InvalidSpec(_) => 3,
            CorpusError::Infeasible { .. } => 2,
        };
        Failure::new(code, e.to_string())
    })?;
    fs::create_dir_all(out)
        .map_err(|e| Failure::new(3, format!("cannot create {}: {e}", out.display())))?;
    for (id, model) in &corpus {
        write_file(&out.join(format!("{id}.json")), &model.to_json())?;
    }
    println!("wrote {} model file(s) to {}", corpus.len(), out.display());
    Ok(())
}

fn bench(corpus_dir: &FsPath, config_path: &FsPath, csv: &FsPath) -> CliResult {
    let entries = fs::read_dir(corpus_dir)
        .map_err(|e| Failure::new(3, format!("cannot read {}: {e}", corpus_dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    if files.is_empty() {
        return Err(Failure::new(
            3,
            format!("no model files (*.json) in {}", corpus_dir.display()),
        ));
    }
    files.sort_by(|a, b| natural_cmp(&a.to_string_lossy(), &b.to_string_lossy()));

    let mut corpus = Vec::with_capacity(files.len());
    for file in &files {
        let id = file
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        corpus.push((id, load_model(file)?));
    }

    let text = read_file(config_path)?;
    let config: RunConfig = serde_json::from_str(&text)
        .map_err(|e| Failure::new(3, format!("{}: {e}", config_path.display())))?;

    let report = run_experiment(&corpus, &config);
    write_file(csv, &report.to_csv())?;
    let failed = report.rows.iter().filter(|r| !r.ok()).count();
    println!(
        "ran {} configuration(s) over {} model(s): {} rows, {} failed; wrote {}",
        report.rows.len() / corpus.len().max(1),
        corpus.len(),
        report.rows.len(),
        failed,
        csv.display()
    );
    Ok(())
}
