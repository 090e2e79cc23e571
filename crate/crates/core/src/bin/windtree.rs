use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use windtree::cayley::{relator_audit, verify_cone_types};
use windtree::counting::{orbital_exact_gamma0, CountSeries};
use windtree::energy::{maximize_energy, EnergyConfig};
use windtree::gg_bound::{optimize, TypeAutomaton};
use windtree::homology::{Sigma, Subgroup};
use windtree::pipeline::{full_pipeline, PipelineConfig, Source};
use windtree::quadratic::{calta_mcmullen_is_veech, QuadraticNumber};

const PASS: u8 = 0;
const USAGE: u8 = 1;
const FAIL: u8 = 2;

#[derive(Parser)]
#[command(name = "windtree", version, about = "Bounds and counts for the (1/2,1/2) wind-tree table")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Group {
    Gamma0,
    Kernel,
    Bad,
}

#[derive(Clone, Copy, ValueEnum)]
enum SigmaArg {
    Pm,
    Mp,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble λ₀ and δ and print the report as JSON.
    Pipeline {
        /// Use the published E and μ₀ instead of computing them.
        #[arg(long)]
        published_constants: bool,
        /// Override the energy bound.
        #[arg(long)]
        energy: Option<f64>,
        /// Override the combinatorial bound.
        #[arg(long)]
        mu0: Option<f64>,
    },
    /// Maximize the transition-zone energy.
    Energy {
        #[arg(long, default_value_t = 0.5)]
        eta: f64,
        #[arg(long, default_value_t = 2.0 * std::f64::consts::PI)]
        area: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Optimize the Gabber–Galil valuation for a type automaton.
    Gg {
        /// JSON automaton file, or `builtin`.
        #[arg(long, default_value = "builtin")]
        automaton: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Check the cone-type table on a Cayley ball.
    ConeVerify {
        #[arg(long, default_value_t = 10)]
        radius: usize,
    },
    /// Orbital counts n(R) on a grid of radii.
    Orbital {
        #[arg(long, value_enum, default_value = "gamma0")]
        group: Group,
        #[arg(long, value_enum, default_value = "pm")]
        sigma: SigmaArg,
        #[arg(long, default_value_t = 8.0)]
        rmax: f64,
        #[arg(long, default_value_t = 0.5)]
        step: f64,
        #[arg(long, default_value_t = 40)]
        depth: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Cylinder counts N(L) on a grid of lengths.
    Cylinders {
        #[arg(long, value_enum, default_value = "gamma0")]
        group: Group,
        #[arg(long, value_enum, default_value = "pm")]
        sigma: SigmaArg,
        #[arg(long, default_value_t = 32.0)]
        lmax: f64,
        #[arg(long, default_value_t = 1.0)]
        step: f64,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Decide whether the table with parameters (a, b) is Veech. Exits 2 if not.
    VeechCheck {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Audit the primitive relators of ⟨u, ᵗu³⟩.
    RelatorsCheck {
        /// Longest reduced word searched for a relation.
        #[arg(long, default_value_t = 5)]
        max_len: usize,
    },
}

fn subgroup(g: Group, s: SigmaArg) -> Subgroup {
    let sigma = match s {
        SigmaArg::Pm => Sigma::PlusMinus,
        SigmaArg::Mp => Sigma::MinusPlus,
    };
    match g {
        Group::Gamma0 => Subgroup::Gamma0,
        Group::Kernel => Subgroup::Kernel(sigma),
        Group::Bad => Subgroup::Bad(sigma),
    }
}

fn grid(start: f64, end: f64, step: f64) -> Result<Vec<f64>, String> {
    if step.is_nan() || step <= 0.0 || end.is_nan() || end < start {
        return Err(format!("bad grid {start}..{end} step {step}"));
    }
    let n = ((end - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| start + i as f64 * step).collect())
}

fn emit(series: &CountSeries, csv: &Option<PathBuf>) -> Result<(), String> {
    match csv {
        Some(path) => {
            let f = File::create(path).map_err(|e| format!("{}: {e}", path.display()))?;
            series.write_csv(f).map_err(|e| e.to_string())
        }
        None => series.write_csv(io::stdout().lock()).map_err(|e| e.to_string()),
    }
}

fn verdict(ok: bool) -> u8 {
    if ok {
        PASS
    } else {
        FAIL
    }
}

fn run(cmd: Command) -> Result<u8, String> {
    match cmd {
        Command::Pipeline {
            published_constants,
            energy,
            mu0,
        } => {
            let mut cfg = if published_constants {
                PipelineConfig::published_constants()
            } else {
                PipelineConfig::default()
            };
            if let Some(e) = energy {
                cfg.energy = Source::Value(e);
            }
            if let Some(m) = mu0 {
                cfg.mu0 = Source::Value(m);
            }
            let report = full_pipeline(&cfg).map_err(|e| e.to_string())?;
            println!("{}", report.to_json());
            Ok(verdict(report.delta < 0.9885))
        }
        Command::Energy { eta, area, tol } => {
            if !(eta > 0.0 && area > 0.0 && tol > 0.0) {
                return Err("eta, area and tol must be positive".into());
            }
            let m = maximize_energy(&EnergyConfig { eta, domain_area: area }, tol);
            println!("E* = {:.6e}", m.energy);
            println!("L* = {:.6}", m.params.length);
            println!("R* = {:.6}", m.params.radius);
            println!("2 e^L tanh^3 R = {:.6}", m.constraint_value);
            Ok(verdict(m.constraint_value <= 1.0 && m.energy > 0.0))
        }
        Command::Gg { automaton, tol } => {
            let aut = if automaton == "builtin" {
                TypeAutomaton::windtree()
            } else {
                let text = std::fs::read_to_string(&automaton).map_err(|e| format!("{automaton}: {e}"))?;
                TypeAutomaton::from_json(&text).map_err(|e| e.to_string())?
            };
            match optimize(&aut, tol) {
                Ok(r) => {
                    let c: Vec<String> = r.valuation.values().iter().map(|v| format!("{v:.6}")).collect();
                    println!("c* = ({})", c.join(", "));
                    println!("max f = {:.6}", r.value);
                    println!("mu0 >= {:.6}", r.bound);
                    Ok(verdict(r.bound > 0.0))
                }
                Err(e) => {
                    eprintln!("{e}");
                    Ok(FAIL)
                }
            }
        }
        Command::ConeVerify { radius } => {
            let r = verify_cone_types(radius).map_err(|e| e.to_string())?;
            println!("radius {}: checked {} elements, type counts {:?}", r.radius, r.checked, r.type_counts);
            if let Some(c) = &r.counterexample {
                println!("counterexample: {c}");
            }
            println!("{}", if r.passed() { "PASS" } else { "FAIL" });
            Ok(verdict(r.passed()))
        }
        Command::Orbital {
            group,
            sigma,
            rmax,
            step,
            depth,
            csv,
        } => {
            let sg = subgroup(group, sigma);
            let radii = grid(0.0, rmax, step)?;
            let series = CountSeries::orbital_bfs(sg, &radii, depth).map_err(|e| e.to_string())?;
            emit(&series, &csv)?;
            // saturated points of Γ₀ must agree with the lattice scan
            let ok = sg != Subgroup::Gamma0
                || series
                    .points
                    .iter()
                    .filter(|p| p.exact)
                    .all(|p| p.count == orbital_exact_gamma0(p.threshold));
            Ok(verdict(ok))
        }
        Command::Cylinders {
            group,
            sigma,
            lmax,
            step,
            depth,
            csv,
        } => {
            let lengths = grid(1.0, lmax, step)?;
            let series = CountSeries::cylinders(subgroup(group, sigma), &lengths, depth).map_err(|e| e.to_string())?;
            emit(&series, &csv)?;
            Ok(PASS)
        }
        Command::VeechCheck { a, b } => {
            let a: QuadraticNumber = a.parse().map_err(|e: windtree::quadratic::QuadraticError| e.to_string())?;
            let b: QuadraticNumber = b.parse().map_err(|e: windtree::quadratic::QuadraticError| e.to_string())?;
            let veech = calta_mcmullen_is_veech(&a, &b).map_err(|e| e.to_string())?;
            println!("{veech}");
            Ok(verdict(veech))
        }
        Command::RelatorsCheck { max_len } => {
            let r = relator_audit(max_len).map_err(|e| e.to_string())?;
            for f in &r.failures {
                println!("{f}");
            }
            println!("{}", if r.passed() { "PASS" } else { "FAIL" });
            Ok(verdict(r.passed()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { PASS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match run(cli.command) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            USAGE
        }
    };
    let _ = io::stdout().flush();
    ExitCode::from(code)
}
