//! Seeded cut-sampling experiments: a graph against its own local cut
//! table, and table transfer between structurally similar graphs.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use graph_core::seed::derive_seed;
use graph_core::{load_edge_list, BoundedDegreeGraph};
use hyperfinite_engine::{choose_radius, find_partition_greedy, ChosenRadius, CutSampler};
use neighborhood_stats::{exact_frequency, rho_distance};
use rayon::prelude::*;

use crate::report::{mean_sd, sink};
use crate::HarnessError;

/// Greedy source cut, radius search, and table build for one graph.
fn prepare(
    g: &BoundedDegreeGraph,
    k: usize,
    eps: f64,
) -> Result<(f64, ChosenRadius), HarnessError> {
    let cut = find_partition_greedy(g, k)?;
    let density = cut.delta();
    let chosen = choose_radius(g, &cut, k, eps)?;
    Ok((density, chosen))
}

/// Per-trial cut sizes, in trial order, drawn in parallel with derived
/// seeds.
fn run_trials(
    g: &BoundedDegreeGraph,
    sampler: &CutSampler,
    select_eps: f64,
    trials: u64,
    base_seed: u64,
) -> Result<Vec<u64>, HarnessError> {
    let d = g.degree_bound();
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let sample = sampler.sample(g, select_eps, d, derive_seed(base_seed, t))?;
            Ok(sample.report.total_edges as u64)
        })
        .collect()
}

pub fn cmd_cut_experiment(
    graph: &Path,
    k: usize,
    eps: f64,
    trials: u64,
    seed: u64,
    out: &Option<PathBuf>,
) -> Result<ExitCode, HarnessError> {
    if trials == 0 {
        return Err(HarnessError::Usage("--trials must be positive".into()));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(HarnessError::Usage("--eps must be in (0, 1)".into()));
    }
    let g = load_edge_list(graph)?;
    let n = g.n() as f64;
    let d = g.degree_bound();
    let (density, chosen) = prepare(&g, k, eps)?;
    eprintln!(
        "source cut density {:.6}, table radius {} (low coverage count {})",
        density,
        chosen.radius,
        chosen.profile.low_count()
    );

    let sampler = CutSampler::from_build(&g, &chosen.build);
    // A zero-density source cut leaves no selectable sets, so the
    // selection parameter only needs to be positive; otherwise draw at
    // the source density itself.
    let select_eps = if density > 0.0 { density } else { eps };
    let sizes = run_trials(&g, &sampler, select_eps, trials, seed)?;

    let mut w = sink(out)?;
    writeln!(w, "trial,seed,cut_edges")?;
    for (t, size) in sizes.iter().enumerate() {
        writeln!(w, "{t},{},{}", derive_seed(seed, t as u64), size)?;
    }
    drop(w);

    let mean = sizes.iter().sum::<u64>() as f64 / trials as f64;
    // Expected-size bound for cuts sampled from a table of a source cut
    // of density delta_s: 4 * delta_s * ln(3d/delta_s) * n.
    let bound = if density > 0.0 { 4.0 * density * (3.0 * d as f64 / density).ln() * n } else { 0.0 };
    let ok = mean <= bound || (density == 0.0 && mean == 0.0);
    eprintln!(
        "mean cut {mean:.3} over {trials} trials; expected-size bound {bound:.3}: {}",
        if ok { "satisfied" } else { "VIOLATED" }
    );
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

pub fn cmd_transfer_experiment(
    source: &Path,
    target: &Path,
    k: usize,
    eps: f64,
    trials: u64,
    seed: u64,
    out: &Option<PathBuf>,
) -> Result<ExitCode, HarnessError> {
    if trials == 0 {
        return Err(HarnessError::Usage("--trials must be positive".into()));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(HarnessError::Usage("--eps must be in (0, 1)".into()));
    }
    let gs = load_edge_list(source)?;
    let gt = load_edge_list(target)?;
    if gt.degree_bound() != gs.degree_bound() {
        return Err(HarnessError::Usage(format!(
            "degree bounds differ: source {} vs target {}",
            gs.degree_bound(),
            gt.degree_bound()
        )));
    }
    let (density, chosen) = prepare(&gs, k, eps)?;
    let radius = chosen.radius;

    // Locality radius of the table's pair types: the selection probability
    // of a set is determined by its neighborhood of radius R + k + 1, so
    // that is the radius at which the two graphs' statistics must agree.
    let locality = radius + k + 1;
    let vs = exact_frequency(&gs, locality)?;
    let vt = exact_frequency(&gt, locality)?;
    let rho = rho_distance(&vs, &vt)?;

    let src_sampler = CutSampler::from_build(&gs, &chosen.build);
    let tgt_sampler = CutSampler::from_table(&gt, chosen.build.table());
    let select_eps = if density > 0.0 { density } else { eps };
    let src_sizes = run_trials(&gs, &src_sampler, select_eps, trials, derive_seed(seed, 1))?;
    let tgt_sizes = run_trials(&gt, &tgt_sampler, select_eps, trials, derive_seed(seed, 2))?;

    let mut w = sink(out)?;
    writeln!(w, "trial,source_cut_edges,target_cut_edges")?;
    for t in 0..trials as usize {
        writeln!(w, "{t},{},{}", src_sizes[t], tgt_sizes[t])?;
    }
    drop(w);

    let src_density: Vec<f64> = src_sizes.iter().map(|&s| s as f64 / gs.n() as f64).collect();
    let tgt_density: Vec<f64> = tgt_sizes.iter().map(|&s| s as f64 / gt.n() as f64).collect();
    let (src_mean, src_sd) = mean_sd(&src_density);
    let (tgt_mean, tgt_sd) = mean_sd(&tgt_density);
    let diff = (tgt_mean - src_mean).abs();
    let ci = 1.959_963_984_540_054
        * (src_sd * src_sd / trials as f64 + tgt_sd * tgt_sd / trials as f64).sqrt();
    let allowance = gs.degree_bound() as f64 * rho + ci;
    let ok = diff <= allowance;
    eprintln!(
        "per-vertex cut densities: source {src_mean:.6}, target {tgt_mean:.6}; \
         |difference| {diff:.6} vs d*rho_{locality} + CI = {allowance:.6} \
         (rho = {rho:.6}, CI = {ci:.6}): {}",
        if ok { "within" } else { "EXCEEDED" }
    );
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
}
