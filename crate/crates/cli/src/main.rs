//! Command-line front end: gate-timing searches, fidelity traces, robustness
//! and entanglement maps, and raw state dumps, emitted as CSV or JSON for
//! external plotting. All output is deterministic and serialized with 12
//! significant digits.

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::fmt::Write as _;
use std::path::PathBuf;

use qpg_core::{
    concurrence_map, evolve, fidelity_trace, table_solutions, velocity_bfield_map, AtomLevel,
    Error, ExperimentGrid, GateKind, GateSolution, IntegratorConfig, ModelParams, PhysicalSetup,
    StateVector, SystemBasis,
};

#[derive(Parser)]
#[command(name = "qpg", version, about = "Cavity-field phase gate simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write to this file instead of standard output. A relative path is
    /// resolved against QPG_OUTPUT_DIR when that variable is set.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum GateArg {
    U1,
    U2,
}

impl From<GateArg> for GateKind {
    fn from(g: GateArg) -> Self {
        match g {
            GateArg::U1 => GateKind::U1,
            GateArg::U2 => GateKind::U2,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate near-commensurate gate timings and emit a JSON table.
    Search {
        #[arg(long, value_enum)]
        gate: GateArg,
        /// Largest integer n to enumerate.
        #[arg(long, default_value_t = 30)]
        max_n: u32,
        /// Largest accepted mismatch of the phase-closure condition.
        #[arg(long, default_value_t = 0.07)]
        eps: f64,
    },
    /// Gate fidelity versus dimensionless interaction time (CSV).
    Trace {
        #[arg(long, value_enum)]
        gate: GateArg,
        #[arg(long, default_value_t = 0.0)]
        delta_over_g: f64,
        #[arg(long, default_value_t = 100.0)]
        gt_max: f64,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// Fidelity over the velocity/magnetic-field plane for one canonical
    /// gate realization, using the microwave setting (CSV).
    MapVb {
        /// 1-based row of the canonical gate table.
        #[arg(long, default_value_t = 1)]
        row: usize,
        /// Lowest atomic velocity, m/s.
        #[arg(long, default_value_t = 323.3)]
        v_min: f64,
        /// Highest atomic velocity, m/s.
        #[arg(long, default_value_t = 343.3)]
        v_max: f64,
        /// Lowest magnetic field, tesla.
        #[arg(long, default_value_t = -2e-7, allow_hyphen_values = true)]
        b_min: f64,
        /// Highest magnetic field, tesla.
        #[arg(long, default_value_t = 2e-7, allow_hyphen_values = true)]
        b_max: f64,
        /// Samples per axis.
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Concurrence left in the polarization qubits after one canonical gate,
    /// over mean photon numbers of the two injected coherent states (CSV).
    MapConcurrence {
        /// 1-based row of the canonical gate table.
        #[arg(long, default_value_t = 1)]
        row: usize,
        /// Photon-number cutoff per polarization.
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        /// Upper edge of the mean-photon-number grid on both axes.
        #[arg(long, default_value_t = 2.0)]
        mean_max: f64,
        /// Samples per axis.
        #[arg(long, default_value_t = 21)]
        samples: usize,
    },
    /// Integrate the Schrödinger equation for one input state and dump the
    /// final amplitudes (CSV).
    Evolve {
        /// `c00 | c01 | c10 | c11` for a computational-basis state, or
        /// `coh:A,B` for coherent amplitudes A and B on the two
        /// polarizations.
        #[arg(long)]
        input_state: String,
        #[arg(long, default_value_t = 1.0)]
        g: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        delta_plus: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        delta_minus: f64,
        /// Interaction time (same units as 1/g).
        #[arg(long)]
        t: f64,
        /// Photon-number cutoff per polarization.
        #[arg(long, default_value_t = 1)]
        n_max: usize,
    },
}

/// Round to 12 significant digits so serialized output is stable and free of
/// trailing float noise.
fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let scale = 10f64.powi(11 - x.abs().log10().floor() as i32);
    (x * scale).round() / scale
}

#[derive(Serialize)]
struct SolutionRecord {
    gate: &'static str,
    m: u32,
    n: u32,
    p_star: f64,
    delta_over_g: f64,
    gt: f64,
    epsilon: f64,
}

impl From<&GateSolution> for SolutionRecord {
    fn from(s: &GateSolution) -> Self {
        Self {
            gate: s.gate.label(),
            m: s.m,
            n: s.n,
            p_star: sig12(s.p_star),
            delta_over_g: sig12(s.delta_over_g),
            gt: sig12(s.gt),
            epsilon: sig12(s.epsilon),
        }
    }
}

fn render_solutions(solutions: &[GateSolution]) -> String {
    let records: Vec<SolutionRecord> = solutions.iter().map(SolutionRecord::from).collect();
    let mut text = serde_json::to_string_pretty(&records).expect("records serialize");
    text.push('\n');
    text
}

fn render_grid_csv(grid: &ExperimentGrid) -> String {
    let mut out = String::new();
    match &grid.y {
        Some(y) => {
            writeln!(
                out,
                "# x: {} ({}), y: {} ({}), value: {}",
                grid.x.name, grid.x.unit, y.name, y.unit, grid.value_name
            )
            .unwrap();
            out.push_str("x,y,value\n");
            for (ix, &xv) in grid.x.values.iter().enumerate() {
                for (iy, &yv) in y.values.iter().enumerate() {
                    writeln!(
                        out,
                        "{},{},{}",
                        sig12(xv),
                        sig12(yv),
                        sig12(grid.value(ix, iy))
                    )
                    .unwrap();
                }
            }
        }
        None => {
            writeln!(
                out,
                "# x: {} ({}), value: {}",
                grid.x.name, grid.x.unit, grid.value_name
            )
            .unwrap();
            out.push_str("x,value\n");
            for (ix, &xv) in grid.x.values.iter().enumerate() {
                writeln!(out, "{},{}", sig12(xv), sig12(grid.value(ix, 0))).unwrap();
            }
        }
    }
    out
}

fn render_state_csv(state: &StateVector) -> String {
    let mut out = String::new();
    out.push_str("# final state amplitudes over |atom, n_plus, n_minus>\n");
    out.push_str("atom,n_plus,n_minus,re,im\n");
    let basis = state.basis();
    for (index, amp) in state.amplitudes().iter().enumerate() {
        let (atom, np, nm) = basis.state_at(index);
        writeln!(
            out,
            "{},{},{},{},{}",
            atom.label(),
            np,
            nm,
            sig12(amp.re),
            sig12(amp.im)
        )
        .unwrap();
    }
    out
}

fn canonical_row(row: usize) -> Result<GateSolution, Error> {
    let table = table_solutions();
    if row == 0 || row > table.len() {
        return Err(Error::InvalidArgument(format!(
            "row must be between 1 and {}, got {row}",
            table.len()
        )));
    }
    Ok(table[row - 1])
}

fn parse_input_state(spec: &str, basis: SystemBasis) -> Result<StateVector, Error> {
    match spec {
        "c00" => StateVector::basis_state(basis, AtomLevel::C, 0, 0),
        "c01" => StateVector::basis_state(basis, AtomLevel::C, 0, 1),
        "c10" => StateVector::basis_state(basis, AtomLevel::C, 1, 0),
        "c11" => StateVector::basis_state(basis, AtomLevel::C, 1, 1),
        other => {
            let alphas = other.strip_prefix("coh:").ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown input state '{other}'; expected c00, c01, c10, c11, or coh:A,B"
                ))
            })?;
            let (a, b) = alphas
                .split_once(',')
                .ok_or_else(|| Error::InvalidArgument("coherent input must be coh:A,B".into()))?;
            let parse = |s: &str| {
                s.trim().parse::<f64>().map_err(|_| {
                    Error::InvalidArgument(format!("cannot parse coherent amplitude '{s}'"))
                })
            };
            qpg_core::coherent_product_state(
                C64::new(parse(a)?, 0.0),
                C64::new(parse(b)?, 0.0),
                basis,
            )
        }
    }
}

fn run(cli: Cli) -> Result<String, Error> {
    match cli.command {
        Command::Search { gate, max_n, eps } => {
            let solutions = qpg_core::search_solutions(gate.into(), max_n, eps)?;
            Ok(render_solutions(&solutions))
        }
        Command::Trace {
            gate,
            delta_over_g,
            gt_max,
            samples,
        } => {
            let params = ModelParams::symmetric(1.0, delta_over_g)?;
            let grid = fidelity_trace(&params, gate.into(), gt_max, samples)?;
            Ok(render_grid_csv(&grid))
        }
        Command::MapVb {
            row,
            v_min,
            v_max,
            b_min,
            b_max,
            samples,
        } => {
            let solution = canonical_row(row)?;
            let setup = PhysicalSetup::microwave();
            let grid =
                velocity_bfield_map(&setup, &solution, (v_min, v_max), (b_min, b_max), samples)?;
            Ok(render_grid_csv(&grid))
        }
        Command::MapConcurrence {
            row,
            n_max,
            mean_max,
            samples,
        } => {
            let solution = canonical_row(row)?;
            let grid = concurrence_map(&solution, n_max, mean_max, samples)?;
            Ok(render_grid_csv(&grid))
        }
        Command::Evolve {
            input_state,
            g,
            delta_plus,
            delta_minus,
            t,
            n_max,
        } => {
            let basis = SystemBasis::new(n_max)?;
            let params = ModelParams::new(g, delta_plus, delta_minus)?;
            let psi0 = parse_input_state(&input_state, basis)?;
            let cfg = IntegratorConfig::for_system(&params, basis);
            let psi = evolve(&psi0, &params, t, &cfg)?;
            Ok(render_state_csv(&psi))
        }
    }
}

fn write_output(target: Option<PathBuf>, content: &str) -> std::io::Result<()> {
    match target {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            let path = match std::env::var_os("QPG_OUTPUT_DIR") {
                Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
                _ => path,
            };
            std::fs::write(path, content)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let output = cli.output.clone();
    match run(cli) {
        Ok(content) => {
            if let Err(e) = write_output(output, &content) {
                eprintln!("error: cannot write output: {e}");
                std::process::exit(1);
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
