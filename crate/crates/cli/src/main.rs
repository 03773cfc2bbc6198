use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use qinit_core::circio::{export_qasm, read_text, stats, write_text, StatsRow, STATS_CSV_HEADER};
use qinit_core::presets::{ghz, grover_state, uniform, GroverSpec, Sign};
use qinit_core::random::{random_state, trial_rng};
use qinit_core::{
    deviation, lower_circuit, optimize, synthesize, Bits, Circuit, SimConfig, TargetState,
};

#[derive(Parser)]
#[command(
    name = "qinit",
    version,
    about = "Compile amplitude vectors into state-preparation circuits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a circuit for a target state.
    Synth {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        optimize: bool,
        /// Rewrite into gates with at most one control.
        #[arg(long)]
        lower: bool,
        /// Rescale the input to unit norm instead of rejecting it.
        #[arg(long)]
        normalize: bool,
        /// Write OpenQASM 2.0 instead of the text format (needs --lower).
        #[arg(long)]
        qasm: bool,
    },
    /// Run a circuit from |0...0> and optionally compare with a target.
    Simulate {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        against: Option<PathBuf>,
        #[arg(long)]
        print_state: bool,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Synthesize, optimize, lower, simulate and compare.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[arg(long)]
        normalize: bool,
    },
    /// Write a named target state.
    Preset {
        #[arg(value_enum)]
        kind: PresetKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        sign: Sign,
        /// Marked basis state for grover, qubit 1 first, e.g. 1011.
        #[arg(long)]
        marked: Option<Bits>,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Gate statistics of a circuit file.
    Stats {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Seeded random-state round trips with a count table.
    Bench {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetKind {
    Uniform,
    Ghz,
    Grover,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` is a failed check, `Err` bad input.
fn run(command: Command) -> anyhow::Result<bool> {
    match command {
        Command::Synth {
            input,
            out,
            optimize: opt,
            lower,
            normalize,
            qasm,
        } => {
            let target = read_state(&input, normalize)?;
            let mut circuit = synthesize(&target);
            if opt {
                let (optimized, report) = optimize(&circuit);
                eprint!("{report}");
                circuit = optimized;
            }
            if lower {
                circuit = lower_circuit(&circuit)?;
            }
            let text = if qasm {
                if !lower {
                    bail!("--qasm needs --lower");
                }
                export_qasm(&circuit)?
            } else {
                write_text(&circuit)
            };
            write(&out, &text)?;
            eprintln!("{} gates on {} qubits", circuit.len(), circuit.n());
            Ok(true)
        }
        Command::Simulate {
            circuit,
            against,
            print_state,
            tolerance,
        } => {
            let circuit = read_circuit(&circuit)?;
            let state = SimConfig::from_env().run(&circuit, None)?;
            if print_state {
                let t = TargetState::new(state.amplitudes().to_vec(), true)?;
                println!("{}", t.to_json());
            }
            match against {
                Some(path) => {
                    let target = read_state(&path, false)?;
                    let d = deviation(&state, &target)?;
                    println!("max deviation {:.3e}", d.max_abs);
                    Ok(d.is_exact(tolerance))
                }
                None => Ok(true),
            }
        }
        Command::Verify {
            input,
            tolerance,
            normalize,
        } => {
            let target = read_state(&input, normalize)?;
            let synthesized = synthesize(&target);
            let (optimized, _) = optimize(&synthesized);
            let lowered = lower_circuit(&optimized)?;
            let state = SimConfig::from_env().run(&lowered, None)?;
            let d = deviation(&state, &target)?;
            println!("synthesized gates {}", synthesized.len());
            println!("optimized gates {}", optimized.len());
            println!("lowered gates {}", lowered.len());
            println!("max deviation {:.3e}", d.max_abs);
            let ok = d.is_exact(tolerance);
            if !ok {
                eprintln!(
                    "deviation {:.3e} exceeds tolerance {tolerance:e}",
                    d.max_abs
                );
            }
            Ok(ok)
        }
        Command::Preset {
            kind,
            n,
            sign,
            marked,
            theta,
            out,
        } => {
            let state = match kind {
                PresetKind::Uniform => uniform(n.context("uniform needs --n")?)?,
                PresetKind::Ghz => ghz(n.context("ghz needs --n")?, sign)?,
                PresetKind::Grover => {
                    let marked = marked.context("grover needs --marked")?;
                    if n.is_some_and(|n| n != marked.len()) {
                        bail!(
                            "--marked has {} bits but --n is {}",
                            marked.len(),
                            n.unwrap_or(0)
                        );
                    }
                    let theta = theta.context("grover needs --theta")?;
                    grover_state(&GroverSpec::new(marked, theta))?
                }
            };
            write(&out, &state.to_json())?;
            Ok(true)
        }
        Command::Stats { circuit, csv } => {
            let circuit = read_circuit(&circuit)?;
            let s = stats(&circuit);
            let row = StatsRow::for_circuit(&circuit)?;
            println!("gates {}", s.gates);
            for (kind, count) in &s.by_kind {
                println!("kind {kind} {count}");
            }
            for (arity, count) in s.by_arity.iter().enumerate().filter(|(_, c)| **c > 0) {
                println!("controls {arity} {count}");
            }
            println!("params {}", s.params);
            println!("depth {}", s.depth);
            println!("lowered gates {}", row.lowered_gates);
            let n = circuit.n();
            let scale = (1u64 << n) as f64 * (n * n) as f64;
            println!("lowered / (N n^2) {:.4}", row.lowered_gates as f64 / scale);
            let table = format!("{STATS_CSV_HEADER}\n{}\n", row.to_csv_line());
            match csv {
                Some(path) => write(&path, &table)?,
                None => print!("{table}"),
            }
            Ok(true)
        }
        Command::Bench {
            n_max,
            trials,
            seed,
            csv,
            tolerance,
        } => bench(n_max, trials, seed, &csv, tolerance),
    }
}

const BENCH_HEADER: &str =
    "n,trial,gates,multi_controlled,params,depth,optimized_gates,lowered_gates,max_deviation";

fn bench(
    n_max: usize,
    trials: usize,
    seed: u64,
    csv: &Path,
    tolerance: f64,
) -> anyhow::Result<bool> {
    let config = SimConfig::from_env();
    if n_max == 0 || n_max > config.max_qubits {
        bail!("--n-max must be in 1..={}", config.max_qubits);
    }
    let mut table = format!("{BENCH_HEADER}\n");
    let mut ok = true;
    for n in 1..=n_max {
        let mut lowered_total = 0usize;
        for trial in 0..trials {
            let target = random_state(n, &mut trial_rng(seed, n, trial));
            let synthesized = synthesize(&target);
            let s = stats(&synthesized);
            let (optimized, _) = optimize(&synthesized);
            let lowered = lower_circuit(&optimized)?;
            let d = deviation(&config.run(&lowered, None)?, &target)?.max_abs;
            if d > tolerance {
                eprintln!("n={n} trial={trial}: deviation {d:.3e} exceeds {tolerance:e}");
                ok = false;
            }
            lowered_total += lowered.len();
            table.push_str(&format!(
                "{n},{trial},{},{},{},{},{},{},{d:.3e}\n",
                s.gates,
                s.multi_controlled,
                s.params,
                s.depth,
                optimized.len(),
                lowered.len()
            ));
        }
        if trials > 0 {
            let scale = (1u64 << n) as f64 * (n * n) as f64;
            eprintln!(
                "n={n}: mean lowered / (N n^2) = {:.4}",
                lowered_total as f64 / trials as f64 / scale
            );
        }
    }
    write(csv, &table)?;
    Ok(ok)
}

fn read_state(path: &Path, normalize: bool) -> anyhow::Result<TargetState> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    TargetState::from_json_with(&text, normalize)
        .with_context(|| format!("parsing {}", path.display()))
}

fn read_circuit(path: &Path) -> anyhow::Result<Circuit> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_text(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}
