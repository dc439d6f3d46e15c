mod bench;
mod gen;
mod io;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use sfvs_core::format::{parse_graph, parse_model, parse_solution, write_model, write_solution};
use sfvs_core::oracle::DEFAULT_BUDGET;
use sfvs_core::{
    expand_any, expand_model_with_root, solve, validate_model, verify_sfvs, Algorithm, LeafageOptions, Rational,
    SolveOptions, Weight,
};

use io::{parse_file, CliError, CliResult};

/// Exact subset feedback vertex set on chordal graphs given by tree models.
///
/// Exit codes: 1 for unreadable or malformed input, 2 for input that is
/// well-formed but invalid or infeasible, 3 when a resource budget runs out.
#[derive(Parser)]
#[command(name = "sfvs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Weights {
    Int,
    Rational,
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print the solution.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        /// Tree model; without it a clique tree is built.
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, default_value = "auto", value_parser = Algorithm::from_str)]
        algo: Algorithm,
        #[arg(long, value_enum, default_value = "int")]
        weights: Weights,
        /// Table entry budget of the bounded-leafage solver.
        #[arg(long, default_value_t = LeafageOptions::default().max_entries)]
        max_entries: usize,
        /// Search node budget of the exhaustive solver.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        oracle_budget: u64,
    },
    /// Check that a model realizes a graph.
    Validate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        model: PathBuf,
    },
    /// Print the expanded form of a model.
    Expand {
        #[arg(long)]
        model: PathBuf,
        /// Host node to root at instead of the automatic choice.
        #[arg(long)]
        root: Option<usize>,
    },
    /// Check that a solution file is feasible and its weights are right.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        #[arg(long, value_enum, default_value = "int")]
        weights: Weights,
    },
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Certificates for the reduction gadgets.
    #[command(subcommand)]
    Cert(CertCommand),
    /// Time the solvers on a suite and print one row per entry.
    Bench {
        /// smoke, rooted, leafage, or a directory of bundle files.
        #[arg(long)]
        suite: String,
        /// Runs per entry; the median is reported.
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random tree model and instance.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        leafage: usize,
        #[arg(long)]
        vertex_leafage: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest subtree size.
        #[arg(long)]
        subtree_nodes: Option<usize>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Max-Cut gadget for a base graph; weights and S-flags are ignored.
    Maxcut {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Multicolored clique gadget, with doubled weights.
    Mcc {
        #[arg(long)]
        mcc: PathBuf,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CertCommand {
    /// Certificate for a cut side, given as 0-based base vertices.
    Maxcut {
        #[arg(long)]
        gadget_dir: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        aside: String,
    },
    /// Certificate for a multicolored clique, given as class:index pairs.
    Mcc {
        #[arg(long)]
        gadget_dir: PathBuf,
        #[arg(long)]
        clique: String,
    },
}

fn run_solve<W: Weight + FromStr>(graph: &Path, model: Option<&Path>, opts: &SolveOptions) -> CliResult {
    let inst = parse_file(graph, parse_graph::<W>)?;
    let model = model.map(|p| parse_file(p, parse_model)).transpose()?;
    let start = Instant::now();
    let r = solve(&inst, model.as_ref(), opts)?;
    let millis = start.elapsed().as_secs_f64() * 1e3;
    let s = &r.stats;
    println!("# graph={} model={}", graph.display(), model.as_ref().map_or("clique-tree".into(), |_| "given".to_string()));
    println!(
        "# algorithm={} components={} leafage={} vertex-leafage={} table-entries={} max-conditioning={} millis={millis:.3}",
        r.algorithm, s.components, s.leafage, s.vertex_leafage, s.entries, s.max_conditioning
    );
    print!("{}", write_solution(&r.solution));
    Ok(())
}

fn run_verify<W: Weight + FromStr>(graph: &Path, solution: &Path) -> CliResult {
    let inst = parse_file(graph, parse_graph::<W>)?;
    let sol = parse_file(solution, parse_solution::<W>)?;
    if let Some(&v) = sol.removed.iter().find(|&&v| v >= inst.n()) {
        return Err(CliError::invalid(format!("removed vertex {v} is not in the graph")));
    }
    let (feasible, _) = verify_sfvs(&inst, &sol.removed);
    if !feasible {
        println!("infeasible");
        return Err(CliError::invalid("infeasible: the remaining graph has an S-cycle"));
    }
    let mut gone = vec![false; inst.n()];
    for &v in &sol.removed {
        gone[v] = true;
    }
    let kept: Vec<usize> = (0..inst.n()).filter(|&v| !gone[v]).collect();
    let actual = inst.solution_from_kept(&kept);
    let (removed, kept) = (actual.removed_weight, actual.kept_weight);
    if removed != sol.removed_weight || kept != sol.kept_weight {
        return Err(CliError::invalid(format!(
            "weight mismatch: file says {} {}, actual {removed} {kept}",
            sol.removed_weight, sol.kept_weight
        )));
    }
    println!("feasible removed-weight={removed} kept-weight={kept}");
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Solve { graph, model, algo, weights, max_entries, oracle_budget } => {
            let opts = SolveOptions {
                algorithm: algo,
                leafage: LeafageOptions { max_entries, ..LeafageOptions::default() },
                oracle_budget,
            };
            let model = model.as_deref();
            match weights {
                Weights::Int => run_solve::<u64>(&graph, model, &opts),
                Weights::Rational => run_solve::<Rational>(&graph, model, &opts),
                Weights::Float => run_solve::<f64>(&graph, model, &opts),
            }
        }
        Command::Validate { graph, model } => {
            let inst = parse_file(&graph, parse_graph::<f64>)?;
            let model = parse_file(&model, parse_model)?;
            let bad = validate_model(&model, &inst);
            if !bad.is_empty() {
                for v in &bad {
                    eprintln!("violation: {v}");
                }
                return Err(CliError::invalid(format!("model does not realize the graph ({} violations)", bad.len())));
            }
            println!(
                "# host-nodes={} leafage={} vertex-leafage={} rooted-vertex-leafage={}",
                model.host_nodes(),
                model.host_leaf_count(),
                model.vertex_leafage(),
                model.rooted_vertex_leafage()
            );
            println!("valid");
            Ok(())
        }
        Command::Expand { model, root } => {
            let m = parse_file(&model, parse_model)?;
            let em = match root {
                Some(r) => expand_model_with_root(&m, r)?,
                None => expand_any(&m)?,
            };
            println!(
                "# expanded host-nodes={} -> {} leafage={} vertex-leafage={}",
                m.host_nodes(),
                em.host_nodes(),
                em.host_leaf_count(),
                em.vertex_leafage()
            );
            print!("{}", write_model(&em.to_tree_model()));
            Ok(())
        }
        Command::Verify { graph, solution, weights } => match weights {
            Weights::Int => run_verify::<u64>(&graph, &solution),
            Weights::Rational => run_verify::<Rational>(&graph, &solution),
            Weights::Float => run_verify::<f64>(&graph, &solution),
        },
        Command::Gen(g) => match g {
            GenCommand::Random { n, leafage, vertex_leafage, seed, subtree_nodes, out_dir } => {
                gen::random(n, leafage, vertex_leafage, seed, subtree_nodes)?.emit(out_dir.as_deref())
            }
            GenCommand::Maxcut { graph, out_dir } => gen::maxcut(&graph)?.emit(out_dir.as_deref()),
            GenCommand::Mcc { mcc, out_dir } => gen::mcc(&mcc)?.emit(out_dir.as_deref()),
        },
        Command::Cert(c) => match c {
            CertCommand::Maxcut { gadget_dir, aside } => gen::cert_maxcut(&gadget_dir, &aside),
            CertCommand::Mcc { gadget_dir, clique } => gen::cert_mcc(&gadget_dir, &clique),
        },
        Command::Bench { suite, reps } => bench::run(&suite, reps),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { io::EXIT_FORMAT } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {:#}", e.error);
            ExitCode::from(e.code)
        }
    }
}
