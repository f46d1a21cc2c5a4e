use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{BoundedDegreeGraph, GraphError, VertexId};

/// Graph families the toolkit can synthesize. Every family is a pure
/// function of `(spec, seed)`; deterministic families ignore the seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// `w × h` grid, row-major vertex ids `y*w + x`.
    Grid { w: usize, h: usize },
    Cycle { n: usize },
    Path { n: usize },
    /// Uniform-ish `d`-regular graph via the pairing model with rejection.
    RandomRegular { n: usize, d: usize },
    /// Random stacked triangulation trimmed to max degree `d`;
    /// planar by construction.
    RandomPlanar { n: usize, d: usize },
    /// Random attachment tree with max degree `d`.
    Tree { n: usize, d: usize },
    /// Disjoint union of `copies` copies of `proto`.
    UnionCopies {
        proto: Box<GeneratorSpec>,
        copies: usize,
    },
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Grid { w, h } => write!(f, "grid({w},{h})"),
            Self::Cycle { n } => write!(f, "cycle({n})"),
            Self::Path { n } => write!(f, "path({n})"),
            Self::RandomRegular { n, d } => write!(f, "random_regular({n},{d})"),
            Self::RandomPlanar { n, d } => write!(f, "random_planar({n},{d})"),
            Self::Tree { n, d } => write!(f, "tree({n},{d})"),
            Self::UnionCopies { proto, copies } => write!(f, "union_copies({proto},{copies})"),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = GraphError;

    /// Parses strings like `grid(30,30)` or
    /// `union_copies(random_regular(5,4),400)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_spec(s.trim()).map_err(|message| GraphError::Parse { line: 1, message })
    }
}

fn parse_spec(s: &str) -> Result<GeneratorSpec, String> {
    let open = s.find('(').ok_or_else(|| format!("expected '(' in {s:?}"))?;
    if !s.ends_with(')') {
        return Err(format!("expected trailing ')' in {s:?}"));
    }
    let name = &s[..open];
    let body = &s[open + 1..s.len() - 1];
    let args = split_top_level(body);
    let usize_arg = |i: usize| -> Result<usize, String> {
        args.get(i)
            .ok_or_else(|| format!("{name}: missing argument {i}"))?
            .trim()
            .parse::<usize>()
            .map_err(|e| format!("{name}: bad integer argument: {e}"))
    };
    let expect_arity = |k: usize| -> Result<(), String> {
        if args.len() == k {
            Ok(())
        } else {
            Err(format!("{name}: expected {k} arguments, got {}", args.len()))
        }
    };
    match name {
        "grid" => {
            expect_arity(2)?;
            Ok(GeneratorSpec::Grid {
                w: usize_arg(0)?,
                h: usize_arg(1)?,
            })
        }
        "cycle" => {
            expect_arity(1)?;
            Ok(GeneratorSpec::Cycle { n: usize_arg(0)? })
        }
        "path" => {
            expect_arity(1)?;
            Ok(GeneratorSpec::Path { n: usize_arg(0)? })
        }
        "random_regular" => {
            expect_arity(2)?;
            Ok(GeneratorSpec::RandomRegular {
                n: usize_arg(0)?,
                d: usize_arg(1)?,
            })
        }
        "random_planar" => {
            expect_arity(2)?;
            Ok(GeneratorSpec::RandomPlanar {
                n: usize_arg(0)?,
                d: usize_arg(1)?,
            })
        }
        "tree" => {
            expect_arity(2)?;
            Ok(GeneratorSpec::Tree {
                n: usize_arg(0)?,
                d: usize_arg(1)?,
            })
        }
        "union_copies" => {
            expect_arity(2)?;
            let proto = parse_spec(args[0].trim())?;
            let copies = args[1]
                .trim()
                .parse::<usize>()
                .map_err(|e| format!("union_copies: bad copy count: {e}"))?;
            Ok(GeneratorSpec::UnionCopies {
                proto: Box::new(proto),
                copies,
            })
        }
        other => Err(format!("unknown generator family {other:?}")),
    }
}

/// Split on commas that are not nested inside parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !s.is_empty() {
        parts.push(&s[start..]);
    }
    parts
}

/// Realize a spec. Identical `(spec, seed)` pairs produce identical edge
/// sets; every generated graph passes the structural validator.
pub fn generate(spec: &GeneratorSpec, seed: u64) -> Result<BoundedDegreeGraph, GraphError> {
    let g = match spec {
        GeneratorSpec::Grid { w, h } => grid(*w, *h)?,
        GeneratorSpec::Cycle { n } => cycle(*n)?,
        GeneratorSpec::Path { n } => path(*n)?,
        GeneratorSpec::RandomRegular { n, d } => random_regular(*n, *d, seed)?,
        GeneratorSpec::RandomPlanar { n, d } => random_planar(*n, *d, seed)?,
        GeneratorSpec::Tree { n, d } => tree(*n, *d, seed)?,
        GeneratorSpec::UnionCopies { proto, copies } => union_copies(proto, *copies, seed)?,
    };
    assert!(g.check_invariants(), "generator produced an invalid graph");
    Ok(g)
}

fn grid(w: usize, h: usize) -> Result<BoundedDegreeGraph, GraphError> {
    if w == 0 || h == 0 {
        return Err(GraphError::InfeasibleSpec(format!(
            "grid({w},{h}): sides must be positive"
        )));
    }
    let mut edges = Vec::with_capacity(2 * w * h);
    for y in 0..h {
        for x in 0..w {
            let v = (y * w + x) as VertexId;
            if x + 1 < w {
                edges.push((v, v + 1));
            }
            if y + 1 < h {
                edges.push((v, v + w as u32));
            }
        }
    }
    let d = match (w.min(h), w.max(h)) {
        (1, 1) => 0,
        (1, _) => 2,
        _ => 4,
    };
    BoundedDegreeGraph::new(w * h, d, &edges)
}

fn cycle(n: usize) -> Result<BoundedDegreeGraph, GraphError> {
    if n < 3 {
        return Err(GraphError::InfeasibleSpec(format!(
            "cycle({n}): need at least 3 vertices"
        )));
    }
    let edges: Vec<_> = (0..n as u32)
        .map(|v| {
            let u = (v + 1) % n as u32;
            (v.min(u), v.max(u))
        })
        .collect();
    BoundedDegreeGraph::new(n, 2, &edges)
}

fn path(n: usize) -> Result<BoundedDegreeGraph, GraphError> {
    if n == 0 {
        return Err(GraphError::InfeasibleSpec("path(0)".into()));
    }
    let edges: Vec<_> = (0..n as u32 - 1).map(|v| (v, v + 1)).collect();
    let d = match n {
        1 => 0,
        2 => 1,
        _ => 2,
    };
    BoundedDegreeGraph::new(n, d, &edges)
}

/// Pairing model: shuffle `n·d` stubs, pair them off, reject non-simple
/// outcomes and retry on the same RNG stream.
fn random_regular(n: usize, d: usize, seed: u64) -> Result<BoundedDegreeGraph, GraphError> {
    if d >= n && !(n == 1 && d == 0) && n != 0 {
        if d == 0 {
            // fall through: edgeless graph below
        } else {
            return Err(GraphError::InfeasibleSpec(format!(
                "random_regular({n},{d}): need d < n"
            )));
        }
    }
    if n == 0 {
        return Err(GraphError::InfeasibleSpec("random_regular(0,_)".into()));
    }
    if n * d % 2 != 0 {
        return Err(GraphError::InfeasibleSpec(format!(
            "random_regular({n},{d}): n·d must be even"
        )));
    }
    if d == 0 {
        return BoundedDegreeGraph::new(n, 0, &[]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<u32> = (0..(n * d) as u32).map(|s| s / d as u32).collect();
    const MAX_ATTEMPTS: usize = 20_000;
    for _ in 0..MAX_ATTEMPTS {
        stubs.shuffle(&mut rng);
        let mut edges = Vec::with_capacity(n * d / 2);
        let mut ok = true;
        let mut seen = std::collections::HashSet::with_capacity(n * d / 2);
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                ok = false;
                break;
            }
            edges.push((u, v));
        }
        if ok {
            return BoundedDegreeGraph::new(n, d, &edges);
        }
    }
    Err(GraphError::InfeasibleSpec(format!(
        "random_regular({n},{d}): no simple pairing after {MAX_ATTEMPTS} attempts"
    )))
}

/// Random stacked triangulation (repeatedly subdivide a random face),
/// then greedily delete edges at over-degree vertices until the cap `d`
/// holds. Every intermediate graph is planar, so the result is planar by
/// construction; small instances are additionally certified by the exact
/// minor engine in tests.
fn random_planar(n: usize, d: usize, seed: u64) -> Result<BoundedDegreeGraph, GraphError> {
    if n == 0 {
        return Err(GraphError::InfeasibleSpec("random_planar(0,_)".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj: Vec<std::collections::BTreeSet<u32>> = vec![Default::default(); n];
    let add = |adj: &mut Vec<std::collections::BTreeSet<u32>>, u: u32, v: u32| {
        adj[u as usize].insert(v);
        adj[v as usize].insert(u);
    };
    if n >= 2 {
        add(&mut adj, 0, 1);
    }
    if n >= 3 {
        add(&mut adj, 0, 2);
        add(&mut adj, 1, 2);
        let mut faces: Vec<[u32; 3]> = vec![[0, 1, 2], [0, 1, 2]]; // two sides of the triangle
        for v in 3..n as u32 {
            let idx = rng.gen_range(0..faces.len());
            let [a, b, c] = faces.swap_remove(idx);
            add(&mut adj, v, a);
            add(&mut adj, v, b);
            add(&mut adj, v, c);
            faces.push([a, b, v]);
            faces.push([a, c, v]);
            faces.push([b, c, v]);
        }
    }
    // Trim to the degree cap, highest-degree vertices first.
    loop {
        let v = (0..n as u32).max_by_key(|&v| (adj[v as usize].len(), std::cmp::Reverse(v)));
        let Some(v) = v else { break };
        if adj[v as usize].len() <= d {
            break;
        }
        let &u = adj[v as usize]
            .iter()
            .max_by_key(|&&u| (adj[u as usize].len(), std::cmp::Reverse(u)))
            .expect("over-degree vertex has a neighbor");
        adj[v as usize].remove(&u);
        adj[u as usize].remove(&v);
    }
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for &v in &adj[u as usize] {
            if u < v {
                edges.push((u, v));
            }
        }
    }
    BoundedDegreeGraph::new(n, d, &edges)
}

/// Random attachment tree: vertex `i` joins a uniformly random earlier
/// vertex that still has spare degree.
fn tree(n: usize, d: usize, seed: u64) -> Result<BoundedDegreeGraph, GraphError> {
    if n == 0 {
        return Err(GraphError::InfeasibleSpec("tree(0,_)".into()));
    }
    if n >= 2 && d == 0 || n >= 3 && d == 1 {
        return Err(GraphError::InfeasibleSpec(format!(
            "tree({n},{d}): degree cap too small"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degree = vec![0usize; n];
    let mut eligible: Vec<u32> = Vec::with_capacity(n);
    if n > 0 {
        eligible.push(0);
    }
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for v in 1..n as u32 {
        let idx = rng.gen_range(0..eligible.len());
        let parent = eligible[idx];
        edges.push((parent.min(v), parent.max(v)));
        degree[parent as usize] += 1;
        degree[v as usize] += 1;
        if degree[parent as usize] >= d {
            eligible.swap_remove(idx);
        }
        if degree[v as usize] < d {
            eligible.push(v);
        }
        if eligible.is_empty() && (v as usize) < n - 1 {
            return Err(GraphError::InfeasibleSpec(format!(
                "tree({n},{d}): ran out of attachment capacity"
            )));
        }
    }
    BoundedDegreeGraph::new(n, d, &edges)
}

fn union_copies(
    proto: &GeneratorSpec,
    copies: usize,
    seed: u64,
) -> Result<BoundedDegreeGraph, GraphError> {
    if copies == 0 {
        return Err(GraphError::InfeasibleSpec("union_copies(_, 0)".into()));
    }
    let base = generate(proto, seed)?;
    let bn = base.n();
    let mut edges = Vec::with_capacity(base.edge_count() * copies);
    for c in 0..copies {
        let off = (c * bn) as u32;
        edges.extend(base.edges().map(|(u, v)| (u + off, v + off)));
    }
    BoundedDegreeGraph::new(bn * copies, base.degree_bound(), &edges)
}
