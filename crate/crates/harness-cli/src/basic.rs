//! Single-graph commands: generate, stats, rho, partition.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use graph_core::{generate, load_edge_list, save_edge_list, BoundedDegreeGraph, GeneratorSpec};
use hyperfinite_engine::{find_partition_exact, find_partition_greedy};
use neighborhood_stats::{exact_frequency, rho_distance};

use crate::report::{entropy_bits, hex, sink};
use crate::{HarnessError, PartitionMode};

/// Loads a graph from an edge-list file, or builds one from a generator
/// spec string (used by commands that accept either form).
pub fn load_or_generate(
    graph: &Option<PathBuf>,
    spec: &Option<String>,
    gen_seed: u64,
) -> Result<(BoundedDegreeGraph, String), HarnessError> {
    match (graph, spec) {
        (Some(path), None) => {
            let g = load_edge_list(path)?;
            Ok((g, path.display().to_string()))
        }
        (None, Some(text)) => {
            let spec = GeneratorSpec::from_str(text)?;
            let g = generate(&spec, gen_seed)?;
            Ok((g, format!("{spec}#{gen_seed}")))
        }
        _ => Err(HarnessError::Usage(
            "exactly one of --graph FILE or --spec STRING is required".into(),
        )),
    }
}

/// Rebuilds a graph under a larger declared degree bound (serving a
/// sparse graph as input to a tester calibrated for a higher bound).
pub fn with_degree_bound(
    g: &BoundedDegreeGraph,
    d: usize,
) -> Result<BoundedDegreeGraph, HarnessError> {
    let edges: Vec<_> = g.edges().collect();
    Ok(BoundedDegreeGraph::new(g.n(), d, &edges)?)
}

pub fn cmd_generate(spec: &str, seed: u64, out: &Option<PathBuf>) -> Result<ExitCode, HarnessError> {
    let spec = GeneratorSpec::from_str(spec)?;
    let g = generate(&spec, seed)?;
    let path = out
        .as_ref()
        .ok_or_else(|| HarnessError::Usage("generate requires --out FILE".into()))?;
    save_edge_list(&g, path)?;
    println!(
        "wrote {}: n={} edges={} max_degree={} (degree bound {})",
        path.display(),
        g.n(),
        g.edge_count(),
        g.max_degree(),
        g.degree_bound()
    );
    Ok(ExitCode::SUCCESS)
}

pub fn cmd_stats(
    graph: &Path,
    radius: usize,
    out: &Option<PathBuf>,
) -> Result<ExitCode, HarnessError> {
    let g = load_edge_list(graph)?;
    let v = exact_frequency(&g, radius)?;
    let entropy = entropy_bits(v.iter().map(|(_, f)| f));
    eprintln!(
        "{}: n={} radius={} support={} entropy_bits={:.6}",
        graph.display(),
        g.n(),
        radius,
        v.support_size(),
        entropy
    );
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, &v)?;
    writeln!(w)?;
    Ok(ExitCode::SUCCESS)
}

pub fn cmd_rho(
    a: &Path,
    b: &Path,
    radius: usize,
    out: &Option<PathBuf>,
) -> Result<ExitCode, HarnessError> {
    let ga = load_edge_list(a)?;
    let gb = load_edge_list(b)?;
    let va = exact_frequency(&ga, radius)?;
    let vb = exact_frequency(&gb, radius)?;
    let rho = rho_distance(&va, &vb)?;

    // Per-type breakdown over the union support, largest gaps first.
    let mut rows: Vec<(String, f64, f64)> = Vec::new();
    for (code, fa) in va.iter() {
        rows.push((hex(code), fa, vb.get(code)));
    }
    for (code, fb) in vb.iter() {
        if va.get(code) == 0.0 {
            rows.push((hex(code), 0.0, fb));
        }
    }
    rows.sort_by(|x, y| {
        let dx = (x.1 - x.2).abs();
        let dy = (y.1 - y.2).abs();
        dy.total_cmp(&dx).then_with(|| x.0.cmp(&y.0))
    });

    let mut w = sink(out)?;
    writeln!(w, "type_code,freq_a,freq_b,abs_diff")?;
    for (code, fa, fb) in &rows {
        writeln!(w, "{code},{fa},{fb},{}", (fa - fb).abs())?;
    }
    eprintln!(
        "rho_{radius}({}, {}) = {rho} over {} types",
        a.display(),
        b.display(),
        rows.len()
    );
    println!("{rho}");
    Ok(ExitCode::SUCCESS)
}

pub fn cmd_partition(
    graph: &Path,
    k: usize,
    mode: PartitionMode,
) -> Result<ExitCode, HarnessError> {
    let g = load_edge_list(graph)?;
    let cut = match mode {
        PartitionMode::Exact => find_partition_exact(&g, k)?,
        PartitionMode::Greedy => find_partition_greedy(&g, k)?,
    };
    println!(
        "cut_edges={} delta={:.6} components={}",
        cut.cut_edges().len(),
        cut.delta(),
        cut.components().len()
    );
    let mut histogram = std::collections::BTreeMap::new();
    for c in cut.components() {
        *histogram.entry(c.len()).or_insert(0usize) += 1;
    }
    println!("component_size,count");
    for (size, count) in histogram {
        println!("{size},{count}");
    }
    Ok(ExitCode::SUCCESS)
}
