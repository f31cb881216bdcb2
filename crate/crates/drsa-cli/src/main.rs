//! Command-line front end.
//!
//! Exit codes: 0 success, 1 error, 2 infeasible, 3 budget exceeded.

mod render;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use drsa_core::feas::kraft_check;
use drsa_core::fmt::{parse_instance, parse_solution, write_solution};
use drsa_core::model::validate_instance;
use drsa_core::oracle::exhaustive_minimum;
use drsa_core::solution::verify_solution;
use drsa_core::solve::{solve_exact, SolveError};
use drsa_reduce::compile::{compile_reduction, TileGrid};
use drsa_reduce::dimacs::parse_dimacs;
use drsa_reduce::gadgets::{gadget_table, table_tsv};
use drsa_reduce::params::Parameters;
use drsa_reduce::realize::build_realization;
use render::{GridInfo, Layers, RenderOptions};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_INFEASIBLE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "drsa", version, about = "Depth-restricted rectilinear Steiner arborescences")]
struct Cli {
    /// Reserved for future randomized operations; all current commands are
    /// deterministic and ignore it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Suppress informational output.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check whether the depth multiset admits any feasible tree.
    Feasible { instance: PathBuf },
    /// Solve a small instance exactly; prints the solution file.
    Solve {
        instance: PathBuf,
        /// Topology budget.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u128,
        /// Cross-check the optimum against the exhaustive placement oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Verify a solution file against its instance.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Compile a width-2 CNF into a terminal instance plus grid sidecar.
    Reduce(ReduceArgs),
    /// Build the realization of a truth assignment from a grid sidecar.
    Realize {
        #[arg(long)]
        grid: PathBuf,
        /// Assignment as a 0/1 string, first variable first.
        #[arg(long)]
        assign: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the gadget parity-cost table as TSV.
    Gadgets {
        #[arg(long)]
        alpha: i64,
        #[arg(long, default_value_t = 4)]
        beta: i64,
        #[arg(long, default_value_t = 5)]
        gamma: i64,
        /// Restrict to one gadget kind.
        #[arg(long)]
        kind: Option<String>,
    },
    /// Render an instance (and optionally a solution) as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct ReduceArgs {
    cnf: PathBuf,
    #[arg(long)]
    alpha: Option<i64>,
    #[arg(long)]
    beta: Option<i64>,
    #[arg(long)]
    gamma_lo: Option<i64>,
    #[arg(long)]
    gamma_hi: Option<i64>,
    /// Instance output path.
    #[arg(short, long)]
    output: PathBuf,
    /// Grid sidecar output path.
    #[arg(long)]
    grid: PathBuf,
}

#[derive(Args)]
struct RenderArgs {
    instance: PathBuf,
    solution: Option<PathBuf>,
    /// Grid sidecar for tile borders.
    #[arg(long)]
    grid: Option<PathBuf>,
    #[arg(long, default_value_t = 4.0)]
    scale: f64,
    /// Disable a layer: terminals, steiner, edges, tile-borders.
    #[arg(long)]
    hide: Vec<String>,
    /// Draw depth labels next to terminals.
    #[arg(long)]
    depth_labels: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(1)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_out(path: Option<&PathBuf>, content: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{}", content);
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Feasible { instance } => {
            let inst = parse_instance(&read(&instance)?)?;
            let report = validate_instance(&inst);
            if !report.ok() {
                return Err(anyhow!("invalid instance:\n{}", report));
            }
            let kraft = kraft_check(&inst.depths())?;
            if kraft.feasible {
                println!("FEASIBLE");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("INFEASIBLE sum={}", kraft);
                Ok(ExitCode::from(EXIT_INFEASIBLE))
            }
        }
        Cmd::Solve {
            instance,
            budget,
            oracle,
        } => {
            let inst = parse_instance(&read(&instance)?)?;
            let sol = match solve_exact(&inst, budget) {
                Ok(sol) => sol,
                Err(SolveError::Infeasible(e)) => {
                    eprintln!("infeasible: {}", e);
                    return Ok(ExitCode::from(EXIT_INFEASIBLE));
                }
                Err(SolveError::BudgetExceeded { count, budget }) => {
                    eprintln!("budget-exceeded: {} topologies > {}", count, budget);
                    return Ok(ExitCode::from(EXIT_BUDGET));
                }
                Err(e) => return Err(e.into()),
            };
            if oracle {
                let want = exhaustive_minimum(&inst, 1 << 36)?;
                if want != sol.length {
                    return Err(anyhow!(
                        "oracle mismatch: solver {} vs exhaustive {}",
                        sol.length,
                        want
                    ));
                }
                if !cli.quiet {
                    eprintln!("oracle agrees: {}", want);
                }
            }
            print!("{}", write_solution(&sol));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { instance, solution } => {
            let inst = parse_instance(&read(&instance)?)?;
            let sol = parse_solution(&read(&solution)?, &inst)?;
            let report = verify_solution(&inst, &sol)?;
            if report.ok() {
                if !cli.quiet {
                    println!("ok length={}", sol.length);
                }
                Ok(ExitCode::SUCCESS)
            } else {
                println!("{}", report);
                Ok(ExitCode::from(1))
            }
        }
        Cmd::Reduce(args) => {
            let sat = parse_dimacs(&read(&args.cnf)?)?;
            let (n, m) = (sat.num_vars, sat.clauses.len());
            let defaults = Parameters::default_schedule(n, m).ok();
            let params = match (args.alpha, args.beta, args.gamma_lo, args.gamma_hi) {
                (None, None, None, None) => defaults
                    .ok_or_else(|| anyhow!("default schedule degenerate for n={}, m={}; pass --alpha", n, m))?,
                (a, b, lo, hi) => {
                    let base = defaults.unwrap_or(Parameters {
                        alpha: 0,
                        beta: 8,
                        gamma_lo: 3,
                        gamma_hi: 1 << 20,
                    });
                    Parameters::with_overrides(
                        a.unwrap_or(base.alpha),
                        b.unwrap_or(base.beta),
                        lo.unwrap_or(base.gamma_lo),
                        hi.unwrap_or(base.gamma_hi.max(lo.unwrap_or(base.gamma_lo))),
                    )?
                }
            };
            let (grid, inst) = compile_reduction(&sat, &params)?;
            std::fs::write(&args.output, drsa_core::fmt::write_instance(&inst))
                .with_context(|| format!("writing {}", args.output.display()))?;
            std::fs::write(&args.grid, grid.to_json())
                .with_context(|| format!("writing {}", args.grid.display()))?;
            if !cli.quiet {
                eprintln!(
                    "compiled {} cells, {} terminals, k_var {}",
                    grid.cells.len(),
                    inst.terminals.len(),
                    grid.k_var
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Realize {
            grid,
            assign,
            output,
        } => {
            let grid = TileGrid::from_json(&read(&grid)?)?;
            let assignment: Vec<bool> = assign
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    other => Err(anyhow!("assignment must be 0/1, got '{}'", other)),
                })
                .collect::<Result<_>>()?;
            let inst = grid.rebuild_instance();
            let real = build_realization(&grid, &inst, &assignment)?;
            let report = verify_solution(&inst, &real.solution)?;
            if !report.ok() {
                return Err(anyhow!("realization failed verification:\n{}", report));
            }
            if !cli.quiet {
                eprintln!(
                    "unsatisfied {} length {}",
                    real.unsatisfied, real.length
                );
            }
            write_out(output.as_ref(), &write_solution(&real.solution))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Gadgets {
            alpha,
            beta,
            gamma,
            kind,
        } => {
            let mut report = gadget_table(alpha, beta, gamma)?;
            if let Some(kind) = kind {
                report.cases.retain(|c| c.kind == kind);
            }
            print!("{}", table_tsv(&report));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Render(args) => {
            let inst = parse_instance(&read(&args.instance)?)?;
            let sol = match &args.solution {
                Some(p) => {
                    let sol = parse_solution(&read(p)?, &inst)?;
                    let report = verify_solution(&inst, &sol)?;
                    if !report.ok() {
                        return Err(anyhow!("refusing to render invalid solution:\n{}", report));
                    }
                    Some(sol)
                }
                None => None,
            };
            let grid = match &args.grid {
                Some(p) => {
                    let g = TileGrid::from_json(&read(p)?)?;
                    Some(GridInfo {
                        side: g.side,
                        tile: 4 * g.alpha + 2,
                    })
                }
                None => None,
            };
            let mut layers = Layers {
                depth_labels: args.depth_labels,
                ..Layers::default()
            };
            for h in &args.hide {
                match h.as_str() {
                    "terminals" => layers.terminals = false,
                    "steiner" => layers.steiner = false,
                    "edges" => layers.edges = false,
                    "tile-borders" => layers.tile_borders = false,
                    other => return Err(anyhow!("unknown layer '{}'", other)),
                }
            }
            let opts = RenderOptions {
                scale: args.scale,
                layers,
                viewport: None,
            };
            let svg = render::render_svg(&inst, sol.as_ref(), grid, &opts);
            write_out(args.output.as_ref(), &svg)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
