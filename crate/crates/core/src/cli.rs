//! Command-line front door: run pipelines on IR files, verify A-normal
//! form, render programs, benchmark the bundled corpus, and materialize
//! corpus files.
//!
//! Exit codes: 0 success; 1 input could not be decoded or violates an IR
//! invariant (also the check-anf failure verdict); 2 unknown rule or
//! strategy; 3 fuel exhausted.

use std::fs;
use std::path::{Path as FsPath, PathBuf};

use clap::{Parser, Subcommand};

use crate::corpus::{self, GenConfig};
use crate::ir::{decode_program, encode_program, DecodeError, Expr, Program};
use crate::pretty::pretty_program;
use crate::strategy::{
    apply_pipeline, format_trace, sub_exp_of, PipelineError, Stage, StrategyError, StrategyKind,
    DEFAULT_FUEL,
};
use crate::transforms::{rule, rule_names};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_FUEL: i32 = 3;

/// The default rule pipeline: float lets out of disjunctions, then remove
/// apply operators and cancel known-constructor cases in parallel.
pub const SIMPLIFY_PIPELINE: &str = "orFloat; unDollar|caseCancel";

#[derive(Parser)]
#[command(
    name = "currycomb",
    version,
    about = "Rewrite-rule engine for a FlatCurry-style intermediate representation"
)]
struct Cli {
    /// Rewrite budget per function body.
    #[arg(long, global = true, default_value_t = DEFAULT_FUEL)]
    fuel: usize,
    /// Write the derivation trace to this file.
    #[arg(long, global = true, value_name = "FILE")]
    trace: Option<PathBuf>,
    /// Seed for generated corpus modules.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Emit machine-readable CSV instead of an aligned table.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a rule pipeline to a program file.
    Transform {
        /// Input program (JSON).
        input: PathBuf,
        /// Stages separated by `;`, rules within a stage joined by `|`.
        #[arg(long, default_value = SIMPLIFY_PIPELINE)]
        pipeline: String,
        /// Strategy for every stage: cs, ms, or ds.
        #[arg(long, default_value = "ms")]
        strategy: String,
        /// Output file; without it the program goes to standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Verify that every function body is in A-normal form.
    CheckAnf {
        /// Input program (JSON).
        input: PathBuf,
    },
    /// Time a pipeline over every program in a directory.
    Bench {
        /// Directory of program files (*.json).
        corpus: PathBuf,
        #[arg(long, default_value = "anf")]
        pipeline: String,
        /// Timed repetitions per strategy; the median is reported.
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
    /// Pretty-print a program file.
    Show {
        /// Input program (JSON).
        input: PathBuf,
    },
    /// Write the bundled corpus into a directory.
    Gen {
        /// Target directory (created if absent).
        out_dir: PathBuf,
        /// Number of generated modules (seeds counted up from --seed).
        #[arg(long, default_value_t = 6)]
        modules: usize,
        /// Functions per generated module.
        #[arg(long, default_value_t = 8)]
        functions: usize,
        /// Approximate node budget per function.
        #[arg(long, default_value_t = 60)]
        nodes: usize,
        /// Restrict generated modules to the deterministic subset.
        #[arg(long)]
        det: bool,
        /// Also write the hand-written fixture modules.
        #[arg(long)]
        fixtures: bool,
    },
}

enum CliError {
    Input(String),
    Unknown(String),
    Fuel(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Unknown(_) => EXIT_UNKNOWN,
            CliError::Fuel(_) => EXIT_FUEL,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Unknown(m) | CliError::Fuel(m) => m,
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> CliError {
        match &e {
            PipelineError::Strategy { source: StrategyError::FuelExhausted { .. }, .. } => {
                CliError::Fuel(e.to_string())
            }
        }
    }
}

fn read_program(path: &FsPath) -> Result<Program, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    decode_program(&text).map_err(|e: DecodeError| {
        CliError::Input(format!("{}: {e}", path.display()))
    })
}

/// Parse `cs`, `ms`, or `ds`.
pub fn parse_strategy(s: &str) -> Option<StrategyKind> {
    match s {
        "cs" => Some(StrategyKind::Chaotic),
        "ms" => Some(StrategyKind::Mixed),
        "ds" => Some(StrategyKind::Deterministic),
        _ => None,
    }
}

/// Parse the pipeline mini-syntax: stages separated by `;`, rules within a
/// stage joined by `|`. Blank stages are skipped; a blank spec is the
/// identity pipeline.
pub fn parse_pipeline(spec: &str, strategy: StrategyKind) -> Result<Vec<Stage>, String> {
    let mut stages = Vec::new();
    for stage_text in spec.split(';') {
        let stage_text = stage_text.trim();
        if stage_text.is_empty() {
            continue;
        }
        let mut rules = Vec::new();
        for name in stage_text.split('|') {
            let name = name.trim();
            if name.is_empty() {
                return Err(format!("empty rule name in stage `{stage_text}`"));
            }
            let r = rule(name).ok_or_else(|| {
                format!("unknown rule `{name}` (known rules: {})", rule_names().join(", "))
            })?;
            rules.push(r);
        }
        stages.push(Stage { strategy, rules });
    }
    Ok(stages)
}

/// Pre-order path of the first constructor or function argument that is
/// not a variable, if any.
pub fn first_non_anf(body: &std::sync::Arc<Expr>) -> Option<Vec<usize>> {
    for (path, sub) in sub_exp_of(body).iter() {
        if let Expr::Comb { args, .. } = &*sub {
            if let Some(i) = args.iter().position(|a| !matches!(&**a, Expr::Var { .. })) {
                let mut p = path;
                p.push(i);
                return Some(p);
            }
        }
    }
    None
}

fn fmt_path(path: &[usize]) -> String {
    if path.is_empty() {
        "<root>".to_string()
    } else {
        path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Transform { input, pipeline, strategy, output } => {
            cmd_transform(&input, &pipeline, &strategy, output.as_deref(), cli.fuel, cli.trace.as_deref())
        }
        Command::CheckAnf { input } => cmd_check_anf(&input),
        Command::Bench { corpus, pipeline, reps } => {
            cmd_bench(&corpus, &pipeline, reps, cli.fuel, cli.csv)
        }
        Command::Show { input } => {
            let program = read_program(&input)?;
            print!("{}", pretty_program(&program));
            Ok(EXIT_OK)
        }
        Command::Gen { out_dir, modules, functions, nodes, det, fixtures } => {
            cmd_gen(&out_dir, cli.seed, modules, functions, nodes, det, fixtures)
        }
    }
}

fn cmd_transform(
    input: &FsPath,
    pipeline: &str,
    strategy: &str,
    output: Option<&FsPath>,
    fuel: usize,
    trace: Option<&FsPath>,
) -> Result<i32, CliError> {
    let program = read_program(input)?;
    let strategy = parse_strategy(strategy)
        .ok_or_else(|| CliError::Unknown(format!("unknown strategy `{strategy}` (use cs, ms, or ds)")))?;
    let stages = parse_pipeline(pipeline, strategy).map_err(CliError::Unknown)?;
    let (transformed, report) = apply_pipeline(&stages, &program, fuel)?;

    let json = encode_program(&transformed);
    let mut counts = String::new();
    for f in &report.functions {
        counts.push_str(&format!("{}: {}\n", f.name, f.rewrites));
    }
    counts.push_str(&format!("total: {}\n", report.total_rewrites));

    match output {
        Some(path) => {
            fs::write(path, json + "\n")
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            print!("{counts}");
        }
        None => {
            println!("{json}");
            eprint!("{counts}");
        }
    }
    if let Some(path) = trace {
        fs::write(path, format_trace(&report.trace))
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(EXIT_OK)
}

fn cmd_check_anf(input: &FsPath) -> Result<i32, CliError> {
    let program = read_program(input)?;
    let mut offending = 0usize;
    for f in &program.functions {
        if let Some(path) = first_non_anf(&f.body) {
            println!("{}: not in A-normal form at {}", f.name, fmt_path(&path));
            offending += 1;
        }
    }
    if offending == 0 {
        println!("ok: {} function(s) in A-normal form", program.functions.len());
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_INPUT)
    }
}

struct BenchRow {
    module: String,
    size_bytes: u64,
    funcs: usize,
    trans: usize,
    time_ms: [u128; 3],
}

fn median_ms(mut samples: Vec<u128>) -> u128 {
    samples.sort_unstable();
    let n = samples.len();
    if n == 0 {
        return 0;
    }
    if n % 2 == 1 {
        samples[n / 2]
    } else {
        (samples[n / 2 - 1] + samples[n / 2]) / 2
    }
}

fn cmd_bench(
    corpus_dir: &FsPath,
    pipeline: &str,
    reps: usize,
    fuel: usize,
    csv: bool,
) -> Result<i32, CliError> {
    let reps = reps.max(1);
    let mut paths: Vec<PathBuf> = fs::read_dir(corpus_dir)
        .map_err(|e| CliError::Input(format!("{}: {e}", corpus_dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    paths.sort();

    let strategies = [StrategyKind::Chaotic, StrategyKind::Mixed, StrategyKind::Deterministic];
    let mut rows = Vec::new();
    let mut worst_failure: i32 = EXIT_OK;
    for path in &paths {
        let program = match read_program(path) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("warning: skipping {}: {}", path.display(), e.message());
                worst_failure = worst_failure.max(EXIT_INPUT);
                continue;
            }
        };
        let size_bytes = fs::metadata(path).map(|m| m.len()).unwrap_or(0);
        let mut trans = [0usize; 3];
        let mut time_ms = [0u128; 3];
        let mut failed = false;
        for (i, strat) in strategies.iter().enumerate() {
            let stages = parse_pipeline(pipeline, *strat).map_err(CliError::Unknown)?;
            let mut samples = Vec::with_capacity(reps);
            for _ in 0..reps {
                match apply_pipeline(&stages, &program, fuel) {
                    Ok((_, report)) => {
                        trans[i] = report.total_rewrites;
                        samples.push(report.elapsed.as_millis());
                    }
                    Err(e) => {
                        eprintln!("warning: skipping {}: {e}", path.display());
                        worst_failure = worst_failure.max(CliError::from(e).exit_code());
                        failed = true;
                        break;
                    }
                }
            }
            if failed {
                break;
            }
            time_ms[i] = median_ms(samples);
        }
        if failed {
            continue;
        }
        if trans[0] != trans[1] || trans[1] != trans[2] {
            eprintln!(
                "warning: {}: rewrite counts differ across strategies (cs {}, ms {}, ds {})",
                program.module_name, trans[0], trans[1], trans[2]
            );
        }
        rows.push(BenchRow {
            module: program.module_name.clone(),
            size_bytes,
            funcs: program.functions.len(),
            trans: trans[2],
            time_ms,
        });
    }

    print!("{}", render_bench(&rows, csv));
    Ok(worst_failure)
}

fn render_bench(rows: &[BenchRow], csv: bool) -> String {
    let mut out = String::new();
    if csv {
        out.push_str("module,size_bytes,funcs,trans,cs_ms,ms_ms,ds_ms\n");
        for r in rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.module, r.size_bytes, r.funcs, r.trans, r.time_ms[0], r.time_ms[1], r.time_ms[2]
            ));
        }
    } else {
        let width = rows.iter().map(|r| r.module.len()).max().unwrap_or(0).max("Module".len());
        out.push_str(&format!(
            "{:<width$}  {:>10}  {:>6}  {:>8}  {:>8}  {:>8}  {:>8}\n",
            "Module", "Size", "Funcs", "Trans", "CS(ms)", "MS(ms)", "DS(ms)",
        ));
        for r in rows {
            out.push_str(&format!(
                "{:<width$}  {:>10}  {:>6}  {:>8}  {:>8}  {:>8}  {:>8}\n",
                r.module, r.size_bytes, r.funcs, r.trans, r.time_ms[0], r.time_ms[1], r.time_ms[2],
            ));
        }
    }
    out
}

fn cmd_gen(
    out_dir: &FsPath,
    seed: u64,
    modules: usize,
    functions: usize,
    nodes: usize,
    det: bool,
    fixtures: bool,
) -> Result<i32, CliError> {
    fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Input(format!("{}: {e}", out_dir.display())))?;
    let mut programs = Vec::new();
    if fixtures {
        programs.extend(corpus::fixtures());
    }
    for i in 0..modules {
        let mut cfg = GenConfig::new(seed + i as u64);
        cfg.functions = functions;
        cfg.nodes_per_function = nodes;
        cfg.det_only = det;
        programs.push(corpus::generate_program(&cfg));
    }
    for p in &programs {
        let path = out_dir.join(corpus::fixture_file_name(p));
        fs::write(&path, encode_program(p) + "\n")
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        println!("{}", path.display());
    }
    Ok(EXIT_OK)
}
