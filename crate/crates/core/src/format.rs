//! Line-based text formats for graphs, tree models, solutions and MCC
//! instances. `#` starts a comment. Each parser ignores the keywords of the
//! other formats, so several sections can share one file.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::ParseError;
use crate::graph::{build_instance, Instance, Solution};
use crate::model::TreeModel;
use crate::reductions::MccInstance;
use crate::weight::Weight;

const KEYWORDS: [&str; 10] = ["GRAPH", "V", "E", "TREEMODEL", "NODE", "SUBTREE", "SOLUTION", "REMOVED", "MCC", "EDGE"];

/// Non-empty lines with comments stripped, as `(line number, tokens)`.
/// Lines whose keyword is not in `own` but belongs to another format are
/// dropped; unknown keywords are errors.
fn records<'a>(text: &'a str, own: &[&str]) -> Result<Vec<(usize, Vec<&'a str>)>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let Some(&kw) = tokens.first() else { continue };
        if own.contains(&kw) {
            out.push((i + 1, tokens));
        } else if !KEYWORDS.contains(&kw) {
            return Err(ParseError::Syntax { line: i + 1, msg: format!("unknown keyword '{kw}'") });
        }
    }
    Ok(out)
}

fn field<T: FromStr>(line: usize, tokens: &[&str], i: usize, what: &str) -> Result<T, ParseError> {
    let tok = tokens
        .get(i)
        .ok_or_else(|| ParseError::Syntax { line, msg: format!("missing {what}") })?;
    tok.parse().map_err(|_| ParseError::Syntax { line, msg: format!("invalid {what} '{tok}'") })
}

fn arity(line: usize, tokens: &[&str], expected: usize) -> Result<(), ParseError> {
    if tokens.len() == expected {
        Ok(())
    } else {
        Err(ParseError::Syntax { line, msg: format!("expected {} fields after {}, got {}", expected - 1, tokens[0], tokens.len() - 1) })
    }
}

pub fn write_graph<W: Weight>(inst: &Instance<W>) -> String {
    let mut s = format!("GRAPH {} {}\n", inst.n(), inst.m());
    for v in 0..inst.n() {
        let _ = writeln!(s, "V {v} {} {}", inst.weight(v), u8::from(inst.in_s(v)));
    }
    for (u, v) in inst.edges() {
        let _ = writeln!(s, "E {u} {v}");
    }
    s
}

pub fn parse_graph<W: Weight + FromStr>(text: &str) -> Result<Instance<W>, ParseError> {
    let recs = records(text, &["GRAPH", "V", "E"])?;
    let mut it = recs.iter();
    let (line, head) = it.next().ok_or(ParseError::MissingHeader("GRAPH"))?;
    if head[0] != "GRAPH" {
        return Err(ParseError::MissingHeader("GRAPH"));
    }
    arity(*line, head, 3)?;
    let n: usize = field(*line, head, 1, "vertex count")?;
    let m: usize = field(*line, head, 2, "edge count")?;
    let mut weights: Vec<Option<W>> = vec![None; n];
    let mut flags = vec![false; n];
    let mut edges = Vec::with_capacity(m);
    for (line, t) in it {
        match t[0] {
            "V" => {
                arity(*line, t, 4)?;
                let v: usize = field(*line, t, 1, "vertex id")?;
                if v >= n {
                    return Err(ParseError::Syntax { line: *line, msg: format!("vertex {v} out of range 0..{n}") });
                }
                if weights[v].is_some() {
                    return Err(ParseError::Syntax { line: *line, msg: format!("vertex {v} listed twice") });
                }
                weights[v] = Some(field(*line, t, 2, "weight")?);
                flags[v] = match t[3] {
                    "0" => false,
                    "1" => true,
                    other => return Err(ParseError::Syntax { line: *line, msg: format!("S-flag must be 0 or 1, got '{other}'") }),
                };
            }
            "E" => {
                arity(*line, t, 3)?;
                edges.push((field(*line, t, 1, "endpoint")?, field(*line, t, 2, "endpoint")?));
            }
            _ => return Err(ParseError::Syntax { line: *line, msg: "second GRAPH header".into() }),
        }
    }
    if let Some(v) = weights.iter().position(Option::is_none) {
        return Err(ParseError::Count(format!("vertex {v} has no V line")));
    }
    if edges.len() != m {
        return Err(ParseError::Count(format!("header announces {m} edges, found {}", edges.len())));
    }
    let weights = weights.into_iter().map(|w| w.expect("checked")).collect();
    Ok(build_instance(n, &edges, weights, flags)?)
}

pub fn write_model(model: &TreeModel) -> String {
    let mut s = format!("TREEMODEL {} {}\n", model.host_nodes(), model.n_vertices());
    for x in 0..model.host_nodes() {
        match model.parent(x) {
            Some(p) => {
                let _ = writeln!(s, "NODE {x} {p}");
            }
            None => {
                let _ = writeln!(s, "NODE {x} -1");
            }
        }
    }
    for v in 0..model.n_vertices() {
        let nodes = model.subtree(v);
        let _ = write!(s, "SUBTREE {v} {}", nodes.len());
        for x in nodes {
            let _ = write!(s, " {x}");
        }
        s.push('\n');
    }
    s
}

pub fn parse_model(text: &str) -> Result<TreeModel, ParseError> {
    let recs = records(text, &["TREEMODEL", "NODE", "SUBTREE"])?;
    let mut it = recs.iter();
    let (line, head) = it.next().ok_or(ParseError::MissingHeader("TREEMODEL"))?;
    if head[0] != "TREEMODEL" {
        return Err(ParseError::MissingHeader("TREEMODEL"));
    }
    arity(*line, head, 3)?;
    let nodes: usize = field(*line, head, 1, "node count")?;
    let n: usize = field(*line, head, 2, "vertex count")?;
    let mut parent: Vec<Option<Option<usize>>> = vec![None; nodes];
    let mut subtrees: Vec<Option<Vec<usize>>> = vec![None; n];
    for (line, t) in it {
        match t[0] {
            "NODE" => {
                arity(*line, t, 3)?;
                let x: usize = field(*line, t, 1, "node id")?;
                let p: i64 = field(*line, t, 2, "parent")?;
                if x >= nodes || parent[x].is_some() {
                    return Err(ParseError::Syntax { line: *line, msg: format!("node {x} out of range or repeated") });
                }
                parent[x] = Some(match p {
                    -1 => None,
                    p if p >= 0 && (p as usize) < nodes => Some(p as usize),
                    p => return Err(ParseError::Syntax { line: *line, msg: format!("parent {p} out of range") }),
                });
            }
            "SUBTREE" => {
                let v: usize = field(*line, t, 1, "vertex id")?;
                let k: usize = field(*line, t, 2, "node count")?;
                arity(*line, t, 3 + k)?;
                if v >= n || subtrees[v].is_some() {
                    return Err(ParseError::Syntax { line: *line, msg: format!("vertex {v} out of range or repeated") });
                }
                let mut members = Vec::with_capacity(k);
                for i in 0..k {
                    let x: usize = field(*line, t, 3 + i, "node id")?;
                    if x >= nodes {
                        return Err(ParseError::Syntax { line: *line, msg: format!("node {x} out of range") });
                    }
                    members.push(x);
                }
                subtrees[v] = Some(members);
            }
            _ => return Err(ParseError::Syntax { line: *line, msg: "second TREEMODEL header".into() }),
        }
    }
    if let Some(x) = parent.iter().position(Option::is_none) {
        return Err(ParseError::Count(format!("node {x} has no NODE line")));
    }
    if let Some(v) = subtrees.iter().position(Option::is_none) {
        return Err(ParseError::Count(format!("vertex {v} has no SUBTREE line")));
    }
    Ok(TreeModel::new(
        parent.into_iter().map(|p| p.expect("checked")).collect(),
        subtrees.into_iter().map(|s| s.expect("checked")).collect(),
    )?)
}

pub fn write_solution<W: Weight>(sol: &Solution<W>) -> String {
    let mut s = format!("SOLUTION {} {}\nREMOVED {}", sol.removed_weight, sol.kept_weight, sol.removed.len());
    for v in &sol.removed {
        let _ = write!(s, " {v}");
    }
    s.push('\n');
    s
}

/// A solution file as written: the claimed weights and the removed set.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionRecord<W> {
    pub removed_weight: W,
    pub kept_weight: W,
    pub removed: Vec<usize>,
}

pub fn parse_solution<W: Weight + FromStr>(text: &str) -> Result<SolutionRecord<W>, ParseError> {
    let recs = records(text, &["SOLUTION", "REMOVED"])?;
    let mut head = None;
    let mut removed = None;
    for (line, t) in &recs {
        match t[0] {
            "SOLUTION" if head.is_none() => {
                arity(*line, t, 3)?;
                head = Some((field(*line, t, 1, "removed weight")?, field(*line, t, 2, "kept weight")?));
            }
            "REMOVED" if removed.is_none() => {
                let k: usize = field(*line, t, 1, "count")?;
                arity(*line, t, 2 + k)?;
                removed = Some((0..k).map(|i| field(*line, t, 2 + i, "vertex id")).collect::<Result<Vec<usize>, _>>()?);
            }
            kw => return Err(ParseError::Syntax { line: *line, msg: format!("repeated {kw} line") }),
        }
    }
    let (removed_weight, kept_weight) = head.ok_or(ParseError::MissingHeader("SOLUTION"))?;
    let removed = removed.ok_or(ParseError::MissingHeader("REMOVED"))?;
    Ok(SolutionRecord { removed_weight, kept_weight, removed })
}

/// Class and index are 1-based on disk.
pub fn write_mcc(mcc: &MccInstance) -> String {
    let mut s = format!("MCC {} {} {}\n", mcc.k(), mcc.p(), mcc.m());
    for &(i, a, j, b) in mcc.edges() {
        let _ = writeln!(s, "EDGE {} {} {} {}", i + 1, a + 1, j + 1, b + 1);
    }
    s
}

pub fn parse_mcc(text: &str) -> Result<MccInstance, ParseError> {
    let recs = records(text, &["MCC", "EDGE"])?;
    let mut it = recs.iter();
    let (line, head) = it.next().ok_or(ParseError::MissingHeader("MCC"))?;
    if head[0] != "MCC" {
        return Err(ParseError::MissingHeader("MCC"));
    }
    arity(*line, head, 4)?;
    let k: usize = field(*line, head, 1, "class count")?;
    let p: usize = field(*line, head, 2, "class size")?;
    let m: usize = field(*line, head, 3, "edge count")?;
    let mut edges = Vec::with_capacity(m);
    for (line, t) in it {
        if t[0] != "EDGE" {
            return Err(ParseError::Syntax { line: *line, msg: "second MCC header".into() });
        }
        arity(*line, t, 5)?;
        let mut f = [0usize; 4];
        for (slot, (i, what)) in f.iter_mut().zip([(1, "class"), (2, "index"), (3, "class"), (4, "index")]) {
            let x: usize = field(*line, t, i, what)?;
            if x == 0 {
                return Err(ParseError::Syntax { line: *line, msg: format!("{what} is 1-based, got 0") });
            }
            *slot = x - 1;
        }
        if f[0] >= f[2] {
            return Err(ParseError::Syntax { line: *line, msg: "EDGE needs i < j".into() });
        }
        edges.push((f[0], f[1], f[2], f[3]));
    }
    if edges.len() != m {
        return Err(ParseError::Count(format!("header announces {m} edges, found {}", edges.len())));
    }
    MccInstance::new(k, p, &edges).map_err(|e| ParseError::Syntax { line: *line, msg: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUNDLE: &str = "# triangle with one terminal\nGRAPH 3 3\nV 0 2 1\nV 1 1 0\nV 2 1 0 # tail\nE 0 1\nE 1 2\nE 0 2\n\nTREEMODEL 1 3\nNODE 0 -1\nSUBTREE 0 1 0\nSUBTREE 1 1 0\nSUBTREE 2 1 0\n";

    #[test]
    fn graph_round_trip() {
        let g: Instance = parse_graph(BUNDLE).unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert!(g.in_s(0) && !g.in_s(1));
        assert_eq!(g.weight(0), 2);
        let again: Instance = parse_graph(&write_graph(&g)).unwrap();
        assert_eq!(write_graph(&again), write_graph(&g));
        let r: Instance<f64> = parse_graph("GRAPH 1 0\nV 0 0.5 1\n").unwrap();
        assert_eq!(r.weight(0), 0.5);
    }

    #[test]
    fn model_round_trip() {
        let m = parse_model(BUNDLE).unwrap();
        assert_eq!((m.host_nodes(), m.n_vertices()), (1, 3));
        assert_eq!(parse_model(&write_model(&m)).unwrap(), m);
    }

    #[test]
    fn solution_round_trip() {
        let g: Instance = parse_graph(BUNDLE).unwrap();
        let sol = g.solution_from_kept(&[1, 2]);
        let text = write_solution(&sol);
        assert_eq!(text, "SOLUTION 2 2\nREMOVED 1 0\n");
        let rec: SolutionRecord<u64> = parse_solution(&text).unwrap();
        assert_eq!(rec, SolutionRecord { removed_weight: 2, kept_weight: 2, removed: vec![0] });
    }

    #[test]
    fn mcc_round_trip() {
        let text = "MCC 2 2 1\nEDGE 1 2 2 1\n";
        let mcc = parse_mcc(text).unwrap();
        assert_eq!(mcc.edges(), &[(0, 1, 1, 0)]);
        assert_eq!(write_mcc(&mcc), text);
    }

    #[test]
    fn diagnostics() {
        let err = |r: Result<Instance, ParseError>| r.unwrap_err().to_string();
        assert_eq!(err(parse_graph("V 0 1 0\n")), "missing GRAPH header");
        assert_eq!(err(parse_graph("GRAPH 1 0\nV 0 x 0\n")), "line 2: invalid weight 'x'");
        assert_eq!(err(parse_graph("GRAPH 2 1\nV 0 1 0\nV 1 1 0\n")), "header announces 1 edges, found 0");
        assert_eq!(err(parse_graph("GRAPH 1 0\nW 0\n")), "line 2: unknown keyword 'W'");
        assert_eq!(err(parse_graph("GRAPH 1 0\nV 0 -1 0\n")), "line 2: invalid weight '-1'");
        assert!(matches!(parse_graph::<u64>("GRAPH 2 1\nV 0 1 0\nV 1 1 0\nE 0 0\n"), Err(ParseError::Graph(_))));
        assert!(matches!(parse_model("TREEMODEL 2 0\nNODE 0 -1\nNODE 1 -1\n"), Err(ParseError::Model(_))));
        assert!(parse_mcc("MCC 2 2 1\nEDGE 2 1 1 1\n").is_err());
        assert!(parse_solution::<u64>("SOLUTION 1 2\n").is_err());
    }
}
