//! `qutrit-msd`: magic state distillation analyses for qutrits.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 domain error (no threshold in bracket, invalid inputs, ...).

use clap::{Args, Parser, Subcommand};
use qutrit_msd_cli::{codefile, report, statespec::StateSpec, verify};
use qutrit_msd_core::abb;
use qutrit_msd_core::distill::{Distiller, ScanGrid, ScanPlane};
use qutrit_msd_core::search::{atlas_entry, SearchConfig, StartEnsemble};
use qutrit_msd_core::wigner::{in_stabilizer_polytope, in_wigner_polytope, wigner_function};
use qutrit_msd_core::Error as CoreError;
use rayon::prelude::*;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qutrit-msd",
    about = "Qutrit magic state distillation: Wigner geometry, codes, thresholds, and code search",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct StateArgs {
    /// Named state: E, norrell, fourier, zero, N, mixed
    #[arg(long)]
    named: Option<String>,
    /// Polar angle of the (a,b,b) sphere, in [0, pi/2]
    #[arg(long)]
    theta: Option<f64>,
    /// Azimuth, in [0, 2pi)
    #[arg(long)]
    phi: Option<f64>,
    /// Radius (1 - depolarizing noise rate), in [0, 1]
    #[arg(long)]
    r: Option<f64>,
    /// JSON file holding {"matrix": [[[re,im]; 3]; 3]}
    #[arg(long)]
    json: Option<String>,
}

impl StateArgs {
    fn spec(&self) -> StateSpec {
        StateSpec {
            named: self.named.clone(),
            theta: self.theta,
            phi: self.phi,
            r: self.r,
            json: self.json.clone(),
        }
    }
}

/// Like [`StateArgs`] but the named form is spelled `--target`.
#[derive(Args, Debug)]
struct TargetArgs {
    /// Named target state: E, norrell, fourier, zero, N
    #[arg(long)]
    target: Option<String>,
    /// Polar angle of the (a,b,b) sphere, in [0, pi/2]
    #[arg(long)]
    theta: Option<f64>,
    /// Azimuth, in [0, 2pi)
    #[arg(long)]
    phi: Option<f64>,
    /// Radius (1 - depolarizing noise rate), in [0, 1]
    #[arg(long)]
    r: Option<f64>,
    /// JSON file holding {"matrix": [[[re,im]; 3]; 3]}
    #[arg(long)]
    json: Option<String>,
}

impl TargetArgs {
    fn spec(&self) -> StateSpec {
        StateSpec {
            named: self.target.clone(),
            theta: self.theta,
            phi: self.phi,
            r: self.r,
            json: self.json.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the discrete Wigner table, sum-negativity, and polytope verdicts
    Wigner {
        #[command(flatten)]
        state: StateArgs,
        /// Also write the table as CSV (x,z,value)
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Polytope membership verdicts only
    Membership {
        #[command(flatten)]
        state: StateArgs,
    },
    /// Iterate a code's distillation round from a state and report the trace
    Distill {
        /// Code: edge, face, or a JSON file
        #[arg(long, default_value = "edge")]
        code: String,
        #[command(flatten)]
        state: StateArgs,
        /// Extra depolarizing noise applied to the state before iterating
        #[arg(long, default_value_t = 0.0)]
        p: f64,
        #[arg(long, default_value_t = 200)]
        max_iters: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Bisect the depolarizing threshold along a target state's axis
    Threshold {
        #[arg(long, default_value = "edge")]
        code: String,
        /// Target: named state or coordinates
        #[command(flatten)]
        target: TargetArgs,
        /// Bracket width to stop at
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Classify a grid cross-section and write it as CSV
    Scan {
        #[arg(long, default_value = "edge")]
        code: String,
        #[command(flatten)]
        target: TargetArgs,
        /// Plane: xz, yz, xy, or wedge
        #[arg(long, default_value = "xz")]
        plane: String,
        /// Grid points per axis
        #[arg(long, default_value_t = 101)]
        n: usize,
        /// Output CSV path (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized search over four-qutrit codes; emits the limiting-state atlas
    Search {
        /// Seed for the deterministic candidate stream
        #[arg(long)]
        seed: u64,
        /// Number of candidate codes
        #[arg(long, default_value_t = 100)]
        candidates: usize,
        #[arg(long, default_value_t = 150)]
        max_iters: usize,
        /// Atlas CSV path (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also dump the candidate codes as JSON keyed by code_id
        #[arg(long)]
        codes_out: Option<PathBuf>,
    },
    /// Run the verification suite
    Verify {
        /// Skip the scan consistency check
        #[arg(long)]
        fast: bool,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Wigner { state, csv } => cmd_wigner(&state, csv.as_deref()),
        Command::Membership { state } => cmd_membership(&state),
        Command::Distill {
            code,
            state,
            p,
            max_iters,
            tol,
        } => cmd_distill(&code, &state, p, max_iters, tol),
        Command::Threshold { code, target, tol } => cmd_threshold(&code, &target, tol),
        Command::Scan {
            code,
            target,
            plane,
            n,
            out,
        } => cmd_scan(&code, &target, &plane, n, out),
        Command::Search {
            seed,
            candidates,
            max_iters,
            out,
            codes_out,
        } => cmd_search(seed, candidates, max_iters, out, codes_out),
        Command::Verify { fast } => Ok(cmd_verify(fast)),
    }
}

fn writer(path: Option<&std::path::Path>) -> Result<Box<dyn Write>, String> {
    match path {
        Some(p) => {
            let f = File::create(p).map_err(|e| format!("{}: {e}", p.display()))?;
            Ok(Box::new(BufWriter::new(f)))
        }
        None => Ok(Box::new(std::io::stdout())),
    }
}

fn cmd_wigner(state: &StateArgs, csv: Option<&std::path::Path>) -> Result<ExitCode, String> {
    let rho = state.spec().resolve()?;
    let w = wigner_function(&rho).map_err(|e| e.to_string())?;
    print!("{}", report::wigner_table_text(&w));
    println!("sum-negativity: {}", report::fmt9(w.sum_negativity()));
    let wig = in_wigner_polytope(&rho).map_err(|e| e.to_string())?;
    let stab = in_stabilizer_polytope(&rho).map_err(|e| e.to_string())?;
    println!(
        "Wigner polytope:     {} (margin {})",
        if wig.inside { "inside" } else { "outside" },
        report::fmt9(wig.margin)
    );
    println!(
        "stabilizer polytope: {} (margin {})",
        if stab.inside { "inside" } else { "outside" },
        report::fmt9(stab.margin)
    );
    if let Some(path) = csv {
        let mut out = writer(Some(path))?;
        report::wigner_csv(&w, &mut out).map_err(|e| e.to_string())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_membership(state: &StateArgs) -> Result<ExitCode, String> {
    let rho = state.spec().resolve()?;
    let wig = in_wigner_polytope(&rho).map_err(|e| e.to_string())?;
    let stab = in_stabilizer_polytope(&rho).map_err(|e| e.to_string())?;
    println!(
        "wigner {} {}",
        if wig.inside { "inside" } else { "outside" },
        report::fmt9(wig.margin)
    );
    println!(
        "stabilizer {} {}",
        if stab.inside { "inside" } else { "outside" },
        report::fmt9(stab.margin)
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_distill(
    code: &str,
    state: &StateArgs,
    p: f64,
    max_iters: usize,
    tol: f64,
) -> Result<ExitCode, String> {
    if !(0.0..=1.0).contains(&p) {
        return Err(format!("--p {p} outside [0, 1]"));
    }
    if max_iters == 0 || tol <= 0.0 || tol.is_nan() {
        return Err("--max-iters must be positive and --tol > 0".into());
    }
    let code = codefile::resolve_code(code)?;
    let distiller = Distiller::new(code).map_err(|e| e.to_string())?;
    let base = state.spec().resolve()?;
    let rho0 = if p > 0.0 {
        abb::depolarized(&base, p)
    } else {
        base.clone()
    };
    let trace = distiller
        .iterate(&rho0, max_iters, tol, Some(&base))
        .map_err(|e| e.to_string())?;
    println!("round  p_succ          fidelity_vs_input_direction");
    for (i, ps) in trace.p_succs.iter().enumerate() {
        println!(
            "{:>5}  {:>13}  {:>13}",
            i + 1,
            report::fmt9(*ps),
            report::fmt9(trace.fidelities.get(i + 1).copied().unwrap_or(f64::NAN))
        );
    }
    println!(
        "stopped: {:?} after {} rounds (converged: {})",
        trace.reason,
        trace.p_succs.len(),
        trace.converged
    );
    let fp = &trace.fixed_point;
    println!("fixed point:");
    for i in 0..3 {
        println!(
            "  {:>13} {:>13} {:>13}",
            report::fmt9(fp[(i, 0)].re),
            report::fmt9(fp[(i, 1)].re),
            report::fmt9(fp[(i, 2)].re)
        );
    }
    let sn = qutrit_msd_core::wigner::sum_negativity(fp).map_err(|e| e.to_string())?;
    println!("fixed-point sum-negativity: {}", report::fmt9(sn));
    Ok(ExitCode::SUCCESS)
}

fn cmd_threshold(code: &str, target: &TargetArgs, tol: f64) -> Result<ExitCode, String> {
    if tol.is_nan() || tol <= 0.0 || tol >= 1.0 {
        return Err(format!("--tol {tol} outside (0, 1)"));
    }
    let code_obj = codefile::resolve_code(code)?;
    let distiller = Distiller::new(code_obj).map_err(|e| e.to_string())?;
    let target_op = target.spec().resolve()?;
    match distiller.threshold_bisection(&target_op, 0.0, 1.0, tol) {
        Ok(t) => {
            println!("p* = {}", report::fmt9(t.p_star));
            println!(
                "bracket [{}, {}] (width {})",
                report::fmt9(t.p_lo),
                report::fmt9(t.p_hi),
                report::fmt9(t.bracket_width)
            );
            println!("bisection steps: {}", t.bisection_steps);
            println!(
                "classification fidelity at bracket: {} / {}",
                report::fmt9(t.fidelity_lo),
                report::fmt9(t.fidelity_hi)
            );
            // When the target sits on the edge arc, compare to the closed form.
            if let Ok(cart) = abb::cartesian_coordinates(&target_op) {
                if abb::distance_to_edge_arc(&cart) < 1e-9 {
                    let theta = 0.5 * cart.x.atan2(cart.z);
                    if let Ok(formula) = qutrit_msd_core::distill::edge_threshold_formula(theta) {
                        println!(
                            "closed-form edge value at theta {}: {} (difference {})",
                            report::fmt9(theta),
                            report::fmt9(formula),
                            report::fmt9((t.p_star - formula).abs())
                        );
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Err(CoreError::NoThresholdInBracket {
            distills_lo,
            distills_hi,
        }) => {
            eprintln!(
                "no threshold in bracket: distills at lower endpoint: {distills_lo}, at upper: {distills_hi}"
            );
            eprintln!(
                "hint: stabilizer-reachable targets have no magic reference; pick a magic target or widen the bracket"
            );
            Ok(ExitCode::from(3))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn parse_plane(plane: &str) -> Result<ScanPlane, String> {
    match plane {
        "xz" => Ok(ScanPlane::XZ),
        "yz" => Ok(ScanPlane::YZ),
        "xy" => Ok(ScanPlane::XY),
        "wedge" => Ok(ScanPlane::Wedge),
        other => Err(format!(
            "unknown plane '{other}' (expected xz, yz, xy, wedge)"
        )),
    }
}

fn cmd_scan(
    code: &str,
    target: &TargetArgs,
    plane: &str,
    n: usize,
    out: Option<PathBuf>,
) -> Result<ExitCode, String> {
    if n < 2 {
        return Err("grid needs at least 2 points per axis".into());
    }
    let code_obj = codefile::resolve_code(code)?;
    let distiller = Distiller::new(code_obj).map_err(|e| e.to_string())?;
    let target_op = target.spec().resolve()?;
    let reference = distiller
        .reference_state(&target_op, 200)
        .map_err(|e| e.to_string())?
        .ok_or("target has no magic reference state under this code")?;
    let grid = ScanGrid::new(parse_plane(plane)?, n, n);
    let points = grid.points();
    // Grid points are independent; classify in parallel and reassemble in
    // grid order.
    let rows = points
        .par_iter()
        .map(|(c1, c2, rho)| distiller.classify_point(*c1, *c2, rho, &reference))
        .collect::<qutrit_msd_core::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let mut w = writer(out.as_deref())?;
    report::scan_csv(&rows, &mut w).map_err(|e| e.to_string())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_search(
    seed: u64,
    candidates: usize,
    max_iters: usize,
    out: Option<PathBuf>,
    codes_out: Option<PathBuf>,
) -> Result<ExitCode, String> {
    let config = SearchConfig {
        seed,
        num_candidates: candidates,
        max_iters,
        starts: StartEnsemble::default(),
    };
    // Candidates are seeded independently; process in parallel, assemble
    // by index.
    let entries = (0..candidates)
        .into_par_iter()
        .map(|i| atlas_entry(&config, i))
        .collect::<qutrit_msd_core::Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let mut w = writer(out.as_deref())?;
    report::atlas_csv(&entries, &mut w).map_err(|e| e.to_string())?;
    drop(w);
    if let Some(path) = codes_out {
        let map: serde_json::Map<String, serde_json::Value> = entries
            .iter()
            .map(|e| {
                (
                    e.code_id.to_string(),
                    serde_json::to_value(codefile::CodeFile::from_code(&e.code))
                        .expect("serializable"),
                )
            })
            .collect();
        let f = File::create(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        serde_json::to_writer_pretty(BufWriter::new(f), &map).map_err(|e| e.to_string())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(fast: bool) -> ExitCode {
    let outcomes = verify::run_all(fast);
    let mut all_passed = true;
    println!("{:<26} result  detail", "criterion");
    for o in &outcomes {
        println!(
            "{:<26} {}    {}",
            o.name,
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
        all_passed &= o.passed;
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        let failed: Vec<&str> = outcomes
            .iter()
            .filter(|o| !o.passed)
            .map(|o| o.name)
            .collect();
        eprintln!("failed criteria: {}", failed.join(", "));
        ExitCode::from(1)
    }
}
