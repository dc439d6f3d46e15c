//! `gen` and `cert`: instance generators and forward certificates.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use sfvs_core::format::{parse_graph, parse_mcc, write_graph, write_mcc, write_model, write_solution};
use sfvs_core::reductions::{
    cut_size, gen_random_instance, maxcut_certificate, maxcut_gadget, mcc_certificate, mcc_gadget, RandomModelParams,
};
use sfvs_core::{verify_sfvs, Instance, TreeModel};

use crate::io::{parse_file, parse_list, write, CliError, CliResult};

/// A generated instance: graph, model, optional source, header comments.
pub struct Generated {
    pub header: Vec<String>,
    pub graph: Instance,
    pub model: TreeModel,
    pub source: Option<String>,
}

impl Generated {
    fn commented(&self, body: String) -> String {
        let mut s = String::new();
        for h in &self.header {
            let _ = writeln!(s, "# {h}");
        }
        s + &body
    }

    /// Write `graph.txt`, `model.txt` and `source.txt` into `dir`, or the
    /// graph and model as one bundle to stdout.
    pub fn emit(&self, dir: Option<&Path>) -> CliResult {
        let graph = self.commented(write_graph(&self.graph));
        let model = self.commented(write_model(&self.model));
        match dir {
            Some(d) => {
                std::fs::create_dir_all(d)
                    .map_err(|e| CliError::format(format!("cannot create {}: {e}", d.display())))?;
                write(&d.join("graph.txt"), &graph)?;
                write(&d.join("model.txt"), &model)?;
                if let Some(src) = &self.source {
                    write(&d.join("source.txt"), src)?;
                }
            }
            None => print!("{graph}{}", write_model(&self.model)),
        }
        Ok(())
    }
}

pub fn random(n: usize, leafage: usize, vertex_leafage: usize, seed: u64, subtree_nodes: Option<usize>) -> CliResult<Generated> {
    let mut p = RandomModelParams::new(n, leafage, vertex_leafage);
    if let Some(s) = subtree_nodes {
        p.max_subtree_nodes = s;
    }
    let (graph, model) = gen_random_instance(&p, seed)?;
    Ok(Generated {
        header: vec![
            format!("gen random n={n} leafage={leafage} vertex-leafage={vertex_leafage} subtree-nodes={}", p.max_subtree_nodes),
            format!("seed={seed}"),
        ],
        graph,
        model,
        source: None,
    })
}

pub fn maxcut(base_path: &Path) -> CliResult<Generated> {
    let base: Instance = parse_file(base_path, parse_graph)?;
    let g = maxcut_gadget(&base);
    let (n, m) = (base.n(), base.m());
    Ok(Generated {
        header: vec![format!("gen maxcut base-n={n} base-m={m}")],
        graph: g.instance,
        model: g.model,
        source: Some(write_graph(&base)),
    })
}

pub fn mcc(mcc_path: &Path) -> CliResult<Generated> {
    let src = parse_file(mcc_path, parse_mcc)?;
    let g = mcc_gadget(&src);
    Ok(Generated {
        header: vec![
            format!("gen mcc k={} p={} m={}", src.k(), src.p(), src.m()),
            format!("scale={} equivalence-asserted={}", g.scale, g.equivalence_asserted),
        ],
        graph: g.instance,
        model: g.model,
        source: Some(write_mcc(&src)),
    })
}

fn source(dir: &Path) -> PathBuf {
    dir.join("source.txt")
}

pub fn cert_maxcut(dir: &Path, aside: &str) -> CliResult {
    let base: Instance = parse_file(&source(dir), parse_graph)?;
    let g = maxcut_gadget(&base);
    let a: Vec<usize> = parse_list(aside)?;
    let u = maxcut_certificate(&g, &a)?;
    let k = cut_size(&g, &a);
    report(&g.instance, &u, &[format!("cut-size={k} certificate-size={}", u.len())])
}

/// `clique` lists `i:a` pairs with 1-based class and index.
pub fn cert_mcc(dir: &Path, clique: &str) -> CliResult {
    let src = parse_file(&source(dir), parse_mcc)?;
    let g = mcc_gadget(&src);
    let pairs: Vec<String> = parse_list(clique)?;
    let mut ids = Vec::with_capacity(pairs.len());
    for pair in &pairs {
        let (i, a) = pair
            .split_once(':')
            .and_then(|(i, a)| Some((i.parse::<usize>().ok()?, a.parse::<usize>().ok()?)))
            .filter(|&(i, a)| (1..=src.k()).contains(&i) && (1..=src.p()).contains(&a))
            .ok_or_else(|| CliError::format(format!("clique entry '{pair}' is not class:index within range")))?;
        ids.push((i - 1) * src.p() + (a - 1));
    }
    let u = mcc_certificate(&g, &ids)?;
    report(&g.instance, &u, &[format!("scale={} target-weight={}", g.scale, g.target_weight())])
}

fn report(inst: &Instance, removed: &[usize], header: &[String]) -> CliResult {
    let (feasible, _) = verify_sfvs(inst, removed);
    if !feasible {
        return Err(CliError::invalid("certificate is infeasible"));
    }
    for h in header {
        println!("# {h}");
    }
    let kept: Vec<usize> = (0..inst.n()).filter(|v| removed.binary_search(v).is_err()).collect();
    print!("{}", write_solution(&inst.solution_from_kept(&kept)));
    Ok(())
}
