use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pmqp_core::decompose::{cnot_baseline, decompose, default_split, BaselineVariant, DecomposeOptions, Strategy};
use pmqp_core::graph::depth_lower_bound;
use pmqp_core::lhz::{build_problem_circuit, grid_depth_report, LhzProblem};
use pmqp_core::schedule::{assign_layers, CircuitStats};
use pmqp_core::verify::{verify, Hamiltonian, VerificationReport, VerifyMode};
use pmqp_core::{format, Circuit, Error, HardwareGraph, PauliString};

mod exit {
    pub const IO: u8 = 1;
    pub const INPUT_PARSE: u8 = 3;
    pub const INVALID_TARGET: u8 = 4;
    pub const CONNECTIVITY: u8 = 5;
    pub const VERIFICATION: u8 = 6;
    pub const UNSUPPORTED: u8 = 7;
    pub const OTHER: u8 = 8;
}

#[derive(Parser)]
#[command(name = "pmqp", version, about = "Compile multi-qubit Pauli rotations into native two-qubit Pauli rotations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    Path,
    Star,
    General,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyArg {
    Symbolic,
    Numeric,
    Statevector,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum StatsFormat {
    #[default]
    Text,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Ladder,
    XShaped,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose exp(iγP) on a hardware graph.
    Decompose {
        /// Hardware graph file (JSON or edge list).
        #[arg(long)]
        graph: PathBuf,
        /// Target Pauli string, qubit 0 first, e.g. ZZZZ or -XIY.
        #[arg(long, allow_hyphen_values = true)]
        pauli: String,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: StrategyArg,
        /// One-based path split index (path strategy only).
        #[arg(long)]
        vm: Option<usize>,
        #[arg(long, value_enum)]
        verify: Option<VerifyArg>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the scheduled circuit here ("-" for stdout).
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        stats_format: StatsFormat,
        /// Name of the rotation parameter.
        #[arg(long, default_value = "gamma")]
        param: String,
    },
    /// Build the problem-Hamiltonian circuit of an LHZ plaquette grid.
    Lhz {
        /// Problem file: {"rows", "cols", "J": [...], "C": [[...]]}.
        #[arg(long)]
        problem: PathBuf,
        #[arg(long, value_enum)]
        verify: Option<VerifyArg>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        stats_format: StatsFormat,
        #[arg(long, default_value = "gamma")]
        param: String,
    },
    /// Compare CNOT constructions with the nested decomposition on a path.
    Baseline {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        pauli: String,
        /// Baseline to report; both when omitted.
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        #[arg(long, value_enum, default_value = "text")]
        stats_format: StatsFormat,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }
}

fn target_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::InvalidTarget(_)
        | Error::SupportMismatch(_)
        | Error::NonHermitian(_)
        | Error::DimensionMismatch { .. } => exit::INVALID_TARGET,
        Error::NotAnEdge(..) | Error::Disconnected => exit::CONNECTIVITY,
        Error::Unsupported(_) | Error::SizeCap { .. } | Error::SplitOutOfRange { .. } => exit::UNSUPPORTED,
        _ => exit::OTHER,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::new(target_code(&e), e.to_string())
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::new(exit::IO, format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<HardwareGraph, Failure> {
    format::read_graph(&read_text(path)?)
        .map_err(|e| Failure::new(exit::INPUT_PARSE, format!("{}: {e}", path.display())))
}

fn parse_target(text: &str, g: &HardwareGraph) -> Result<PauliString, Failure> {
    let p: PauliString = text
        .parse()
        .map_err(|e: Error| Failure::new(exit::INVALID_TARGET, format!("invalid Pauli string '{text}': {e}")))?;
    if p.num_qubits() != g.num_nodes() {
        return Err(Failure::new(
            exit::INVALID_TARGET,
            format!("Pauli string has {} qubits, graph has {} nodes", p.num_qubits(), g.num_nodes()),
        ));
    }
    if p.sign().is_none() {
        return Err(Failure::new(exit::INVALID_TARGET, format!("{p} is not Hermitian")));
    }
    if p.weight() == 0 {
        return Err(Failure::new(exit::INVALID_TARGET, "target is the identity"));
    }
    Ok(p)
}

fn write_output(path: Option<&Path>, c: &Circuit) -> Result<(), Failure> {
    let text = format::write_circuit(c);
    match path {
        None => Ok(()),
        Some(p) if p == Path::new("-") => {
            print!("{text}");
            Ok(())
        }
        Some(p) => fs::write(p, text).map_err(|e| Failure::new(exit::IO, format!("{}: {e}", p.display()))),
    }
}

fn print_stats(format: StatsFormat, rows: &[(&str, String)]) {
    match format {
        StatsFormat::Text => {
            for (k, v) in rows {
                println!("{k}: {v}");
            }
        }
        StatsFormat::Csv => {
            let keys: Vec<&str> = rows.iter().map(|(k, _)| *k).collect();
            let vals: Vec<&str> = rows.iter().map(|(_, v)| v.as_str()).collect();
            println!("{}", keys.join(","));
            println!("{}", vals.join(","));
        }
    }
}

fn run_verify(c: &Circuit, target: &Hamiltonian, mode: VerifyArg, seed: u64) -> Result<VerificationReport, Failure> {
    let mode = match mode {
        VerifyArg::Symbolic => VerifyMode::Symbolic,
        VerifyArg::Numeric => VerifyMode::Numeric,
        VerifyArg::Statevector => VerifyMode::Statevector,
    };
    let report = match verify(c, target, mode, seed) {
        Err(Error::Shape(reason)) => {
            eprintln!("symbolic verification not applicable ({reason}); using numeric");
            verify(c, target, VerifyMode::Numeric, seed)?
        }
        other => other?,
    };
    println!("{report}");
    if report.passed {
        Ok(report)
    } else {
        Err(Failure::new(exit::VERIFICATION, "verification failed"))
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_decompose(
    graph: &Path,
    pauli: &str,
    strategy: StrategyArg,
    vm: Option<usize>,
    verify_mode: Option<VerifyArg>,
    seed: u64,
    output: Option<&Path>,
    stats_format: StatsFormat,
    param: &str,
) -> Result<(), Failure> {
    let g = load_graph(graph)?;
    let p = parse_target(pauli, &g)?;
    let opts = DecomposeOptions {
        strategy: match strategy {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Path => Strategy::Path,
            StrategyArg::Star => Strategy::Star,
            StrategyArg::General => Strategy::General,
        },
        split: vm,
        param: param.to_string(),
    };
    let d = decompose(&p, &g, &opts)?;
    let c = assign_layers(&d.circuit);
    let stats = CircuitStats::of(&c)?;
    let bound = depth_lower_bound(d.diameter);
    print_stats(
        stats_format,
        &[
            ("strategy", d.strategy.to_string()),
            ("qubits", c.n.to_string()),
            ("gates", stats.gates.to_string()),
            ("two_qubit_gates", stats.two_qubit_gates.to_string()),
            ("two_qubit_depth", stats.two_qubit_depth.to_string()),
            ("diameter", d.diameter.to_string()),
            ("lower_bound", bound.to_string()),
            ("bound_met", (stats.two_qubit_depth == bound).to_string()),
            ("routed_qubits", d.routed_qubits.to_string()),
        ],
    );
    write_output(output, &c)?;
    if let Some(mode) = verify_mode {
        run_verify(&c, &Hamiltonian::single(&p)?, mode, seed)?;
    }
    Ok(())
}

fn cmd_lhz(
    problem: &Path,
    verify_mode: Option<VerifyArg>,
    seed: u64,
    output: Option<&Path>,
    stats_format: StatsFormat,
    param: &str,
) -> Result<(), Failure> {
    let p = LhzProblem::from_json(&read_text(problem)?)
        .map_err(|e| Failure::new(exit::INPUT_PARSE, format!("{}: {e}", problem.display())))?;
    let built = build_problem_circuit(&p, param)?;
    let r = grid_depth_report(&p, &built)?;
    let colors: Vec<String> = r.color_depths.iter().map(|(c, d)| format!("{c}={d}")).collect();
    print_stats(
        stats_format,
        &[
            ("rows", r.rows.to_string()),
            ("cols", r.cols.to_string()),
            ("qubits", r.qubits.to_string()),
            ("gates", r.gates.to_string()),
            ("two_qubit_gates", r.two_qubit_gates.to_string()),
            ("gates_cancelled", r.gates_cancelled.to_string()),
            ("two_qubit_depth", r.two_qubit_depth.to_string()),
            ("total_depth", r.total_depth.to_string()),
            ("matches_two_qubit_claim_5", r.matches_two_qubit_claim.to_string()),
            ("matches_total_claim_6", r.matches_total_claim.to_string()),
            ("color_depths", colors.join(" ")),
        ],
    );
    write_output(output, &built.circuit)?;
    if let Some(mode) = verify_mode {
        run_verify(&built.circuit, &p.hamiltonian(), mode, seed)?;
    }
    Ok(())
}

fn cmd_baseline(graph: &Path, pauli: &str, variant: Option<VariantArg>, stats_format: StatsFormat) -> Result<(), Failure> {
    let g = load_graph(graph)?;
    let p = parse_target(pauli, &g)?;
    let support = p.support();
    let order = g
        .induced_subgraph(&support)?
        .path_order()
        .map(|o| o.into_iter().map(|v| support[v]).collect::<Vec<_>>())
        .ok_or_else(|| Failure::new(exit::UNSUPPORTED, "baseline needs a target supported on a path"))?;
    let variants = match variant {
        Some(VariantArg::Ladder) => vec![BaselineVariant::Ladder],
        Some(VariantArg::XShaped) => vec![BaselineVariant::XShaped],
        None => vec![BaselineVariant::Ladder, BaselineVariant::XShaped],
    };
    let mut rows = Vec::new();
    for v in variants {
        let c = assign_layers(&cnot_baseline(&p, &order, v, "gamma")?);
        rows.push((v.to_string(), CircuitStats::of(&c)?));
    }
    let ours = pmqp_core::decompose::decompose_path(&p, &g, &order, default_split(order.len()), "gamma")?;
    rows.push(("this_work".to_string(), CircuitStats::of(&assign_layers(&ours))?));
    match stats_format {
        StatsFormat::Text => {
            println!("{:<12} {:>15} {:>15}", "method", "two_qubit_gates", "two_qubit_depth");
            for (m, s) in &rows {
                println!("{:<12} {:>15} {:>15}", m, s.two_qubit_gates, s.two_qubit_depth);
            }
        }
        StatsFormat::Csv => {
            println!("method,two_qubit_gates,two_qubit_depth");
            for (m, s) in &rows {
                println!("{m},{},{}", s.two_qubit_gates, s.two_qubit_depth);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Decompose {
            graph,
            pauli,
            strategy,
            vm,
            verify,
            seed,
            output,
            stats_format,
            param,
        } => cmd_decompose(graph, pauli, *strategy, *vm, *verify, *seed, output.as_deref(), *stats_format, param),
        Command::Lhz {
            problem,
            verify,
            seed,
            output,
            stats_format,
            param,
        } => cmd_lhz(problem, *verify, *seed, output.as_deref(), *stats_format, param),
        Command::Baseline {
            graph,
            pauli,
            variant,
            stats_format,
        } => cmd_baseline(graph, pauli, *variant, *stats_format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
