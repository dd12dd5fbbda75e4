// Copyright 2026 The sparsevqe Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

//! `sparsevqe` command-line tool.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sparsevqe_core::dense_oracle::{dense_energy, DenseState, MAX_DENSE_QUBITS};
use sparsevqe_core::resources::circuit_resources;
use sparsevqe_core::runner::{
    parse_reference, per_step_trace, run_single_with_state, run_sweep, trace_to_csv, transform_crosscheck,
    DEFAULT_CUTOFF,
};
use sparsevqe_core::sparsity::{prefix_ranks, DEFAULT_ENUMERATION_BUDGET};
use sparsevqe_core::state::hashmap_memory_estimate;
use sparsevqe_core::{single_amplitude, AnsatzBundle, Error, PauliSumOperator, SweepResult};

#[derive(Parser)]
#[command(name = "sparsevqe", version, about = "Sparse wavefunction simulation of Pauli-exponential ansätze")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate the ansatz at one cutoff and measure the energy.
    Simulate {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = DEFAULT_CUTOFF, value_parser = parse_cutoff)]
        cutoff: f64,
        /// Compare against the dense simulator (at most 24 qubits).
        #[arg(long)]
        verify: bool,
        /// Write the final state in binary form.
        #[arg(long)]
        dump_state: Option<PathBuf>,
    },
    /// Run the ansatz at several cutoffs, one row per cutoff.
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_cutoff)]
        cutoffs: Vec<f64>,
    },
    /// Energy and element count after every block of entanglers.
    Trace {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = DEFAULT_CUTOFF, value_parser = parse_cutoff)]
        cutoff: f64,
    },
    /// GF(2) rank of the XY parts and the resulting bound, per step.
    Rank {
        #[command(flatten)]
        ansatz: AnsatzArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Gate counts of the circuit preparing the ansatz state.
    Resources {
        #[command(flatten)]
        ansatz: AnsatzArgs,
        /// Hamiltonian file, only used for the term count column.
        #[arg(long, value_parser = existing_file)]
        hamiltonian: Option<PathBuf>,
        /// Row label; defaults to the ansatz file stem.
        #[arg(long)]
        label: Option<String>,
        /// Cancel adjacent inverse gates and merge rotations.
        #[arg(long)]
        optimize: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare the transformed-Hamiltonian energy of a prefix with simulation.
    Transform {
        #[command(flatten)]
        run: RunArgs,
        /// Number of leading entanglers; defaults to all.
        #[arg(long)]
        prefix: Option<usize>,
        #[arg(long, default_value_t = 0.0)]
        prune_threshold: f64,
        #[arg(long, default_value_t = 10_000_000)]
        max_terms: usize,
    },
    /// Single amplitude `⟨target|U|source⟩` by enumerating GF(2) solutions.
    Amplitude {
        #[command(flatten)]
        ansatz: AnsatzArgs,
        /// Output basis state (same syntax as --reference).
        #[arg(long)]
        target: String,
        /// Input basis state; defaults to the ansatz reference.
        #[arg(long)]
        source: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        enumeration_budget: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct AnsatzArgs {
    #[arg(long, value_parser = existing_file)]
    ansatz: PathBuf,
    /// `hf:N`, `occ:0,1,4-7` or a bitstring with qubit 0 rightmost.
    #[arg(long)]
    reference: Option<String>,
    /// Widen the register to this many qubits.
    #[arg(long)]
    qubits: Option<usize>,
    #[arg(long)]
    step_size: Option<usize>,
    /// Apply the entanglers in reverse file order.
    #[arg(long)]
    reverse_entanglers: bool,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_parser = existing_file)]
    hamiltonian: PathBuf,
    #[command(flatten)]
    ansatz: AnsatzArgs,
    /// Measurement threads; defaults to the available parallelism.
    #[arg(long, env = "SPARSEVQE_WORKERS", value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_cutoff(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if (0.0..1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("cutoff {v} must lie in [0, 1)"))
    }
}

fn existing_file(s: &str) -> Result<PathBuf, String> {
    let p = PathBuf::from(s);
    if p.is_file() {
        Ok(p)
    } else {
        Err(format!("no such file: {s}"))
    }
}

enum Failure {
    Input(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type CliResult<T = ()> = Result<T, Failure>;

#[derive(Serialize)]
struct Memory {
    hamiltonian_estimate_bytes: Option<u64>,
    hashmap_estimate_bytes: Option<u64>,
    /// Peak resident set size, where the OS reports it.
    peak_rss_bytes: Option<u64>,
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    command: &'a str,
    version: &'a str,
    n_qubits: usize,
    n_terms: Option<usize>,
    workers: Option<usize>,
    cutoffs: Vec<f64>,
    memory: Memory,
    #[serde(skip_serializing_if = "Option::is_none")]
    verify: Option<Verify>,
    rows: T,
}

#[derive(Clone, Copy, Serialize)]
struct Verify {
    sparse_energy: f64,
    dense_energy: f64,
    difference: f64,
    truncated_weight: f64,
}

fn peak_rss_bytes() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}

fn load_bundle(args: &AnsatzArgs, min_qubits: usize) -> CliResult<AnsatzBundle> {
    let mut bundle = AnsatzBundle::load(&args.ansatz)?;
    if let Some(r) = &args.reference {
        let x = parse_reference(r)?;
        let needed = 128 - x.leading_zeros() as usize;
        bundle = bundle.widen(bundle.n_qubits().max(needed))?.with_reference(x)?;
    }
    if let Some(k) = args.step_size {
        bundle = bundle.with_step_size(k)?;
    }
    if args.reverse_entanglers {
        bundle = bundle.reversed();
    }
    let n = bundle.n_qubits().max(min_qubits).max(args.qubits.unwrap_or(0));
    Ok(bundle.widen(n)?)
}

fn load_run(run: &RunArgs) -> CliResult<(PauliSumOperator, AnsatzBundle, usize)> {
    let h = PauliSumOperator::load(&run.hamiltonian)?;
    let bundle = load_bundle(&run.ansatz, h.n_qubits())?;
    let h = h.widen(bundle.n_qubits())?;
    let workers = run.workers.map(|w| w as usize).unwrap_or_else(|| {
        std::thread::available_parallelism().map_or(1, |v| v.get())
    });
    Ok((h, bundle, workers))
}

fn emit(out: &OutputArgs, csv: &str, json: impl FnOnce() -> String) -> CliResult {
    let text = match out.format {
        Format::Csv => csv.to_string(),
        Format::Json => json() + "\n",
    };
    match &out.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Input(e.to_string())),
    }
}

fn to_json<T: Serialize>(report: &Report<T>) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

fn report<'a, T: Serialize>(
    command: &'a str,
    n_qubits: usize,
    h: Option<&PauliSumOperator>,
    workers: Option<usize>,
    cutoffs: Vec<f64>,
    max_elements: Option<usize>,
    rows: T,
) -> Report<'a, T> {
    Report {
        command,
        version: env!("CARGO_PKG_VERSION"),
        n_qubits,
        n_terms: h.map(PauliSumOperator::term_count),
        workers,
        cutoffs,
        memory: Memory {
            hamiltonian_estimate_bytes: h.map(PauliSumOperator::memory_estimate),
            hashmap_estimate_bytes: max_elements.map(|n| hashmap_memory_estimate(n as u64)),
            peak_rss_bytes: peak_rss_bytes(),
        },
        verify: None,
        rows,
    }
}

fn simulate(run: &RunArgs, cutoff: f64, verify: bool, dump: Option<&Path>) -> CliResult {
    let (h, bundle, workers) = load_run(run)?;
    let (row, state) = run_single_with_state(&h, &bundle, cutoff, workers)?;
    if let Some(path) = dump {
        let file = std::fs::File::create(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        state.write_to(std::io::BufWriter::new(file))?;
    }
    let check = if verify {
        if bundle.n_qubits() > MAX_DENSE_QUBITS {
            return Err(Failure::Input(format!(
                "--verify needs at most {MAX_DENSE_QUBITS} qubits, got {}",
                bundle.n_qubits()
            )));
        }
        let mut dense = DenseState::basis(bundle.n_qubits(), bundle.reference())?;
        dense.apply_circuit(&bundle.gates())?;
        let e_dense = dense_energy(&dense, &h)?;
        let sparse = row.energy.expect("successful run");
        let v = Verify {
            sparse_energy: sparse,
            dense_energy: e_dense,
            difference: (sparse - e_dense).abs(),
            truncated_weight: state.truncated_weight(),
        };
        eprintln!(
            "verify: sparse {sparse:.12} dense {e_dense:.12} |diff| {:.3e} truncated weight {:.3e}",
            v.difference, v.truncated_weight
        );
        Some(v)
    } else {
        None
    };
    let result = SweepResult { rows: vec![row] };
    let mut r = report("simulate", bundle.n_qubits(), Some(&h), Some(workers), vec![cutoff], Some(state.len()), &result.rows);
    r.verify = check;
    emit(&run.out, &result.to_csv(), || to_json(&r))?;
    match check {
        Some(v) if v.truncated_weight == 0.0 && v.difference > 1e-10 => Err(Failure::Numerical(format!(
            "sparse and dense energies differ by {:e} without truncation",
            v.difference
        ))),
        _ => Ok(()),
    }
}

fn sweep(run: &RunArgs, cutoffs: &[f64]) -> CliResult {
    let (h, bundle, workers) = load_run(run)?;
    let result = run_sweep(&h, &bundle, cutoffs, workers)?;
    for row in &result.rows {
        if let Some(e) = &row.error {
            eprintln!("cutoff {:e}: {e}", row.cutoff);
        }
    }
    let max_elements = result.rows.iter().filter_map(|r| r.n_elements).max();
    let r = report("sweep", bundle.n_qubits(), Some(&h), Some(workers), cutoffs.to_vec(), max_elements, &result.rows);
    emit(&run.out, &result.to_csv(), || to_json(&r))?;
    if result.rows.iter().all(|r| r.error.is_some()) {
        return Err(Failure::Numerical("every cutoff failed".into()));
    }
    Ok(())
}

fn trace(run: &RunArgs, cutoff: f64) -> CliResult {
    let (h, bundle, workers) = load_run(run)?;
    let rows = per_step_trace(&h, &bundle, cutoff, workers)?;
    let max_elements = rows.iter().map(|r| r.n_elements).max();
    let r = report("trace", bundle.n_qubits(), Some(&h), Some(workers), vec![cutoff], max_elements, &rows);
    emit(&run.out, &trace_to_csv(&rows), || to_json(&r))
}

fn rank(args: &AnsatzArgs, out: &OutputArgs) -> CliResult {
    let bundle = load_bundle(args, 0)?;
    let rows = prefix_ranks(&bundle.gates(), bundle.step_size())?;
    let mut csv = String::from("step,entanglers,rank,log2_bound\n");
    for r in &rows {
        let _ = writeln!(csv, "{},{},{},{}", r.step, r.entanglers, r.rank, r.log2_bound);
    }
    let r = report("rank", bundle.n_qubits(), None, None, vec![], None, &rows);
    emit(out, &csv, || to_json(&r))
}

#[derive(Serialize)]
struct ResourceRow {
    molecule: String,
    steps: usize,
    qubits: usize,
    cnot: u64,
    x: u64,
    h: u64,
    rx: u64,
    rz: u64,
    terms: Option<usize>,
    optimized: bool,
}

fn resources(args: &AnsatzArgs, hamiltonian: Option<&Path>, label: Option<&str>, optimize: bool, out: &OutputArgs) -> CliResult {
    let h = hamiltonian.map(PauliSumOperator::load).transpose()?;
    let bundle = load_bundle(args, h.as_ref().map_or(0, PauliSumOperator::n_qubits))?;
    let counts = circuit_resources(&bundle.gates(), bundle.reference(), optimize);
    let molecule = label.map(str::to_string).unwrap_or_else(|| {
        args.ansatz
            .file_stem()
            .map_or_else(String::new, |s| s.to_string_lossy().into_owned())
    });
    let row = ResourceRow {
        molecule,
        steps: bundle.steps(),
        qubits: bundle.n_qubits(),
        cnot: counts.cnot,
        x: counts.x,
        h: counts.h,
        rx: counts.rx,
        rz: counts.rz,
        terms: h.as_ref().map(PauliSumOperator::term_count),
        optimized: optimize,
    };
    let csv = format!(
        "molecule,steps,qubits,cnot,x,h,rx,rz,terms\n{},{},{},{},{},{},{},{},{}\n",
        row.molecule,
        row.steps,
        row.qubits,
        row.cnot,
        row.x,
        row.h,
        row.rx,
        row.rz,
        row.terms.map_or_else(String::new, |t| t.to_string())
    );
    let r = report("resources", bundle.n_qubits(), h.as_ref(), None, vec![], None, [&row]);
    emit(out, &csv, || to_json(&r))
}

fn transform(run: &RunArgs, prefix: Option<usize>, prune_threshold: f64, max_terms: usize) -> CliResult {
    if !(prune_threshold >= 0.0) {
        return Err(Failure::Input(format!("prune threshold {prune_threshold} must be non-negative")));
    }
    let (h, bundle, workers) = load_run(run)?;
    let k = prefix.unwrap_or(bundle.entanglers().len());
    let c = transform_crosscheck(&h, &bundle, k, prune_threshold, max_terms)?;
    let csv = format!(
        "prefix_len,e_transform,e_simulation,difference,transformed_terms,removed_weight\n{},{},{},{},{},{}\n",
        c.prefix_len, c.e_transform, c.e_simulation, c.difference, c.transformed_terms, c.removed_weight
    );
    let r = report("transform", bundle.n_qubits(), Some(&h), Some(workers), vec![0.0], None, [&c]);
    emit(&run.out, &csv, || to_json(&r))
}

#[derive(Serialize)]
struct AmplitudeRow {
    source: String,
    target: String,
    re: f64,
    im: f64,
    probability: f64,
}

fn amplitude(args: &AnsatzArgs, target: &str, source: Option<&str>, budget: u64, out: &OutputArgs) -> CliResult {
    let y = parse_reference(target)?;
    let x = source.map(parse_reference).transpose()?;
    let needed = [Some(y), x].iter().flatten().map(|v| 128 - v.leading_zeros() as usize).max().unwrap_or(0);
    let bundle = load_bundle(args, needed)?;
    let x = x.unwrap_or(bundle.reference());
    let a = single_amplitude(&bundle.gates(), x, y, budget)?;
    let n = bundle.n_qubits();
    let bits = |v: u128| format!("{v:0n$b}");
    let row = AmplitudeRow {
        source: bits(x),
        target: bits(y),
        re: a.re,
        im: a.im,
        probability: a.norm_sqr(),
    };
    let csv = format!(
        "source,target,re,im,probability\n{},{},{},{},{}\n",
        row.source, row.target, row.re, row.im, row.probability
    );
    let r = report("amplitude", n, None, None, vec![], None, [&row]);
    emit(out, &csv, || to_json(&r))
}

fn dispatch(cli: Cli) -> CliResult {
    match &cli.command {
        Command::Simulate { run, cutoff, verify, dump_state } => simulate(run, *cutoff, *verify, dump_state.as_deref()),
        Command::Sweep { run, cutoffs } => sweep(run, cutoffs),
        Command::Trace { run, cutoff } => trace(run, *cutoff),
        Command::Rank { ansatz, out } => rank(ansatz, out),
        Command::Resources { ansatz, hamiltonian, label, optimize, out } => {
            resources(ansatz, hamiltonian.as_deref(), label.as_deref(), *optimize, out)
        }
        Command::Transform { run, prefix, prune_threshold, max_terms } => {
            transform(run, *prefix, *prune_threshold, *max_terms)
        }
        Command::Amplitude { ansatz, target, source, enumeration_budget, out } => {
            amplitude(ansatz, target, source.as_deref(), *enumeration_budget, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical error: {msg}");
            ExitCode::from(2)
        }
    }
}
