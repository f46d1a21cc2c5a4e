//! Tester experiments: empirical calibration of profile parameters and
//! seeded accept/reject trials.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use graph_core::seed::derive_seed;
use graph_core::{BoundedDegreeGraph, QueryOracle};
use hyperfinite_engine::find_partition_greedy;
use rayon::prelude::*;
use serde::Deserialize;
use testers::{
    admissible_eps0, build_reference_net, hyperfiniteness_delta, test_hyperfinite,
    test_minor_free, CalibrationProfile, Decision, HyperfiniteTestConfig, NamedPattern,
    TesterVerdict,
};

use crate::basic::{load_or_generate, with_degree_bound};
use crate::report::{sink, wilson_interval};
use crate::{HarnessError, TesterKind};

pub fn parse_patterns(names: &str) -> Result<Vec<NamedPattern>, HarnessError> {
    let mut patterns = Vec::new();
    for name in names.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let graph = minor_engine::named_pattern(name)?;
        patterns.push(NamedPattern::new(name, graph));
    }
    if patterns.is_empty() {
        return Err(HarnessError::Usage("pattern list is empty".into()));
    }
    Ok(patterns)
}

pub fn load_profile(spec: &str) -> Result<CalibrationProfile, HarnessError> {
    let profile = if spec == "v1" {
        testers::planarity_profile_v1()?
    } else {
        // Profile files hold either one profile or a list of them (the
        // calibrate command writes a list, one entry per eps).
        let file = std::fs::File::open(spec)?;
        let value: serde_json::Value = serde_json::from_reader(std::io::BufReader::new(file))?;
        match value {
            serde_json::Value::Array(mut items) => match items.len() {
                1 => serde_json::from_value(items.pop().unwrap())?,
                n => {
                    return Err(HarnessError::Usage(format!(
                        "{spec} holds {n} profiles; keep exactly one in the file passed to --profile"
                    )))
                }
            },
            other => serde_json::from_value(other)?,
        }
    };
    profile.validate()?;
    Ok(profile)
}

/// One tester trial; trials differ only in their derived seed.
fn run_trial(
    g: &BoundedDegreeGraph,
    kind: TesterKind,
    patterns: &[NamedPattern],
    profile: &CalibrationProfile,
    seed: u64,
) -> Result<TesterVerdict, HarnessError> {
    let mut oracle = QueryOracle::new(g);
    let verdict = match kind {
        TesterKind::Planarity | TesterKind::MinorFree => {
            test_minor_free(&mut oracle, patterns, profile, seed)?
        }
        TesterKind::Hyperfinite => {
            let config = HyperfiniteTestConfig {
                eps: profile.eps,
                safety: profile.safety,
                samples: profile.phase1_samples,
            };
            test_hyperfinite(&mut oracle, &config, &profile.net, seed)?
        }
    };
    Ok(verdict)
}

/// Optional JSON defaults for `test` (explicit CLI flags win).
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub graph: Option<PathBuf>,
    pub spec: Option<String>,
    pub gen_seed: Option<u64>,
    pub tester: Option<TesterKind>,
    pub profile: Option<String>,
    pub patterns: Option<String>,
    pub trials: Option<u64>,
    pub degree_bound: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let file = std::fs::File::open(path)?;
        Ok(serde_json::from_reader(std::io::BufReader::new(file))?)
    }
}

pub struct TestRun {
    pub graph: Option<PathBuf>,
    pub spec: Option<String>,
    pub gen_seed: u64,
    pub tester: TesterKind,
    pub profile: String,
    pub patterns: String,
    pub trials: u64,
    pub degree_bound: Option<usize>,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

pub fn cmd_test(run: TestRun) -> Result<ExitCode, HarnessError> {
    if run.trials == 0 {
        return Err(HarnessError::Usage("--trials must be positive".into()));
    }
    let (mut g, source) = load_or_generate(&run.graph, &run.spec, run.gen_seed)?;
    if let Some(d) = run.degree_bound {
        g = with_degree_bound(&g, d)?;
    }
    let profile = load_profile(&run.profile)?;
    let patterns = match run.tester {
        TesterKind::Planarity => testers::forbidden_planarity_patterns(),
        TesterKind::MinorFree => parse_patterns(&run.patterns)?,
        TesterKind::Hyperfinite => Vec::new(),
    };

    let verdicts: Vec<TesterVerdict> = (0..run.trials)
        .into_par_iter()
        .map(|t| run_trial(&g, run.tester, &patterns, &profile, derive_seed(run.seed, t)))
        .collect::<Result<_, _>>()?;

    let mut w = sink(&run.out)?;
    writeln!(w, "trial,seed,decision,phase,queries_used")?;
    for (t, v) in verdicts.iter().enumerate() {
        writeln!(
            w,
            "{t},{},{},{},{}",
            derive_seed(run.seed, t as u64),
            match v.decision {
                Decision::Accept => "accept",
                Decision::Reject => "reject",
            },
            match v.phase {
                testers::TesterPhase::FrequencyTest => "frequency-test",
                testers::TesterPhase::LocalMinorSearch => "local-minor-search",
            },
            v.queries_used
        )?;
    }
    drop(w);

    let accepts = verdicts.iter().filter(|v| v.accepted()).count() as u64;
    let (lo, hi) = wilson_interval(accepts, run.trials);
    let mut counts: Vec<u64> = verdicts.iter().map(|v| v.queries_used).collect();
    counts.sort_unstable();
    counts.dedup();
    eprintln!(
        "{source}: accepted {accepts}/{} (rate {:.4}, Wilson 95% [{lo:.4}, {hi:.4}]); \
         distinct query counts: {counts:?}",
        run.trials,
        accepts as f64 / run.trials as f64
    );
    Ok(ExitCode::SUCCESS)
}

pub struct CalibrateRun {
    pub accept_dir: PathBuf,
    pub reject_dir: PathBuf,
    pub eps: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
    pub out: PathBuf,
}

fn load_dir(dir: &Path) -> Result<Vec<(BoundedDegreeGraph, String)>, HarnessError> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    paths.sort();
    let mut graphs = Vec::new();
    for path in paths.iter().filter(|p| p.is_file()) {
        let g = graph_core::load_edge_list(path)?;
        let name = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        graphs.push((g, name));
    }
    if graphs.is_empty() {
        return Err(HarnessError::Usage(format!("no graph files in {}", dir.display())));
    }
    Ok(graphs)
}

/// Fraction bar for both sides of the calibration search.
const CALIBRATION_BAR: f64 = 0.8;

/// Empirical accept rate of the planarity tester on one graph.
fn accept_rate(
    g: &BoundedDegreeGraph,
    patterns: &[NamedPattern],
    profile: &CalibrationProfile,
    trials: u64,
    seed: u64,
) -> Result<f64, HarnessError> {
    let accepts: u64 = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut oracle = QueryOracle::new(g);
            let v = test_minor_free(&mut oracle, patterns, profile, derive_seed(seed, t))?;
            Ok::<u64, HarnessError>(v.accepted() as u64)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(accepts as f64 / trials as f64)
}

pub fn cmd_calibrate(run: CalibrateRun) -> Result<ExitCode, HarnessError> {
    if run.trials == 0 || run.eps.is_empty() {
        return Err(HarnessError::Usage("need positive --trials and at least one --eps".into()));
    }
    let mut accept_graphs = load_dir(&run.accept_dir)?;
    let mut reject_graphs = load_dir(&run.reject_dir)?;
    let degree_bound = accept_graphs.iter().map(|(g, _)| g.degree_bound()).max().unwrap();
    for (g, _) in accept_graphs.iter_mut().chain(reject_graphs.iter_mut()) {
        if g.degree_bound() > degree_bound {
            return Err(HarnessError::Usage(format!(
                "graph exceeds the corpus degree bound {degree_bound}"
            )));
        }
        if g.degree_bound() < degree_bound {
            *g = with_degree_bound(g, degree_bound)?;
        }
    }
    let patterns = testers::forbidden_planarity_patterns();

    // Component bound: the smallest power of two at which the greedy cuts
    // of the whole accept corpus stay below density 0.3.
    let mut component_bound = 32;
    for k in [8usize, 16, 32] {
        let mut worst: f64 = 0.0;
        for (g, _) in &accept_graphs {
            worst = worst.max(find_partition_greedy(g, k)?.delta());
        }
        if worst <= 0.3 {
            component_bound = k;
            break;
        }
    }

    // Certification labels for the net corpus (the accept side).
    let mut corpus = Vec::new();
    for (g, name) in &accept_graphs {
        let cut = find_partition_greedy(g, component_bound)?;
        let label = format!(
            "{name} [certified: cut density {:.4} leaves components of at most {} vertices]",
            cut.delta(),
            component_bound
        );
        corpus.push((g.clone(), label));
    }

    let mut profiles: Vec<CalibrationProfile> = Vec::new();
    for (ei, &eps) in run.eps.iter().enumerate() {
        let delta = hyperfiniteness_delta(eps, degree_bound, 1.0);
        let mut frozen: Option<CalibrationProfile> = None;
        let mut best_frontier: f64 = -1.0;
        let mut best_desc = String::new();

        'search: for &samples in &[4_096u64, 8_192, 16_384, 32_768, 65_536] {
            for &m in &[8u64, 32] {
                for radius in [1usize, 2] {
                    let net = build_reference_net(&corpus, radius, delta)?;
                    let candidate = CalibrationProfile {
                        version: 1,
                        eps,
                        degree_bound,
                        eps0: admissible_eps0(eps, degree_bound),
                        component_bound,
                        safety: 1.0,
                        delta,
                        phase1_radius: radius,
                        phase1_samples: samples,
                        phase2_radius: 2,
                        phase2_samples: m,
                        net,
                    };
                    candidate.validate()?;

                    let mut frontier: f64 = 1.0;
                    for (gi, (g, _)) in accept_graphs.iter().enumerate() {
                        let trial_seed = derive_seed(run.seed, (ei * 1000 + gi) as u64);
                        let rate = accept_rate(g, &patterns, &candidate, run.trials, trial_seed)?;
                        frontier = frontier.min(rate);
                    }
                    for (gi, (g, _)) in reject_graphs.iter().enumerate() {
                        let trial_seed = derive_seed(run.seed, (ei * 1000 + 500 + gi) as u64);
                        let rate = accept_rate(g, &patterns, &candidate, run.trials, trial_seed)?;
                        frontier = frontier.min(1.0 - rate);
                    }
                    if frontier > best_frontier {
                        best_frontier = frontier;
                        best_desc = format!(
                            "radius {radius}, {samples} samples, {m} minor-search samples: \
                             worst side rate {frontier:.3}"
                        );
                    }
                    if frontier >= CALIBRATION_BAR {
                        // Freeze with a 2x sample margin and re-verify.
                        let mut final_profile = candidate.clone();
                        final_profile.phase1_samples = samples * 2;
                        eprintln!(
                            "eps {eps}: calibrated at radius {radius}, {samples} samples \
                             (frozen at {} with margin), {m} minor-search samples",
                            final_profile.phase1_samples
                        );
                        frozen = Some(final_profile);
                        break 'search;
                    }
                }
            }
        }

        match frozen {
            Some(p) => profiles.push(p),
            None => {
                eprintln!(
                    "calibration failed for eps {eps}: no parameter combination reached \
                     the {CALIBRATION_BAR} bar on both sides; best frontier was {best_desc}"
                );
                return Ok(ExitCode::from(2));
            }
        }
    }

    let mut w = crate::report::create_file(&run.out)?;
    serde_json::to_writer_pretty(&mut w, &profiles)?;
    writeln!(w)?;
    drop(w);
    eprintln!("wrote {} profile(s) to {}", profiles.len(), run.out.display());
    Ok(ExitCode::SUCCESS)
}
