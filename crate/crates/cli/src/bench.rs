//! `bench`: timing rows for built-in suites or a directory of bundles.

use std::path::Path;
use std::time::Instant;

use sfvs_core::format::{parse_graph, parse_model};
use sfvs_core::reductions::{gen_random_instance, RandomModelParams};
use sfvs_core::{solve, Algorithm, Instance, SolveOptions, TreeModel};

use crate::io::{parse_file, read, CliError, CliResult};

struct Entry {
    name: String,
    graph: Instance,
    model: Option<TreeModel>,
    algorithm: Algorithm,
}

fn random_entry(tag: &str, p: RandomModelParams, seed: u64, algorithm: Algorithm) -> CliResult<Entry> {
    let (graph, model) = gen_random_instance(&p, seed)?;
    Ok(Entry {
        name: format!("{tag}-n{}-l{}-vl{}-s{seed}", p.n, p.max_leaves, p.vertex_leafage),
        graph,
        model: Some(model),
        algorithm,
    })
}

fn builtin(suite: &str) -> CliResult<Option<Vec<Entry>>> {
    let mut out = Vec::new();
    match suite {
        "smoke" => {
            for n in [10, 20, 40] {
                out.push(random_entry("smoke", RandomModelParams::new(n, 3, 2), 1, Algorithm::Leafage)?);
                out.push(random_entry("smoke", RandomModelParams::new(n, 3, 1), 1, Algorithm::RootedPath)?);
            }
        }
        "rooted" => {
            for n in [100, 200, 400, 800] {
                let p = RandomModelParams { max_subtree_nodes: 8, ..RandomModelParams::new(n, 3, 1) };
                out.push(random_entry("rooted", p, 17, Algorithm::RootedPath)?);
            }
        }
        "leafage" => {
            for l in [2, 3, 4] {
                for n in [15, 30, 60] {
                    out.push(random_entry("leafage", RandomModelParams::new(n, l, l), 5, Algorithm::Leafage)?);
                }
            }
        }
        _ => return Ok(None),
    }
    Ok(Some(out))
}

/// Every `*.txt` file of `dir` holding a graph, with a model when the file
/// also has one.
fn from_dir(dir: &Path) -> CliResult<Vec<Entry>> {
    let listing = std::fs::read_dir(dir).map_err(|e| CliError::format(format!("cannot list {}: {e}", dir.display())))?;
    let mut paths: Vec<_> = listing
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for path in paths {
        let graph = parse_file(&path, parse_graph)?;
        let model = if read(&path)?.lines().any(|l| l.trim_start().starts_with("TREEMODEL")) {
            Some(parse_file(&path, parse_model)?)
        } else {
            None
        };
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        out.push(Entry { name, graph, model, algorithm: Algorithm::Auto });
    }
    Ok(out)
}

pub fn run(suite: &str, reps: usize) -> CliResult {
    let entries = match builtin(suite)? {
        Some(e) => e,
        None if Path::new(suite).is_dir() => from_dir(Path::new(suite))?,
        None => {
            return Err(CliError::format(format!(
                "unknown suite '{suite}': use smoke, rooted, leafage or a directory of bundles"
            )))
        }
    };
    println!("# bench suite={suite} reps={reps}");
    println!("name\tn\tm\tleafage\talgo\tmillis");
    for e in entries {
        let opts = SolveOptions { algorithm: e.algorithm, ..SolveOptions::default() };
        let mut times = Vec::with_capacity(reps);
        let mut last = None;
        for _ in 0..reps.max(1) {
            let start = Instant::now();
            let r = solve(&e.graph, e.model.as_ref(), &opts)?;
            times.push(start.elapsed().as_secs_f64() * 1e3);
            last = Some(r);
        }
        times.sort_by(f64::total_cmp);
        let r = last.expect("at least one run");
        println!(
            "{}\t{}\t{}\t{}\t{}\t{:.3}",
            e.name,
            e.graph.n(),
            e.graph.m(),
            r.stats.leafage,
            r.algorithm,
            times[times.len() / 2]
        );
    }
    Ok(())
}
