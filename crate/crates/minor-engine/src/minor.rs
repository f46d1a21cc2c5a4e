//! Exact minor containment by exhaustive branch-set search.
//!
//! A pattern graph H is a minor of a host graph G exactly when G contains
//! pairwise-disjoint connected vertex sets ("branch sets"), one per pattern
//! vertex, with at least one host edge between the two branch sets of every
//! pattern edge. The search enumerates branch sets directly as host-vertex
//! bitmasks, so hosts are capped at 64 vertices; patterns are capped much
//! lower because the search is exponential in the pattern size.
//!
//! Branch sets are placed one pattern vertex at a time, highest pattern
//! degree first, growing candidate sets from anchor vertices in ascending
//! host-degree order. Failed partial placements are memoized up to pattern
//! automorphism so symmetric patterns do not pay for re-deriving the same
//! dead end in a different vertex order.

use crate::error::MinorError;
use graph_core::BoundedDegreeGraph;
use std::collections::HashSet;

/// Size and work caps for the exact search.
#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    /// Maximum host vertex count (hard-capped at 64 by the bitmask encoding).
    pub host_cap: usize,
    /// Maximum pattern vertex count.
    pub pattern_cap: usize,
    /// Maximum number of search nodes before giving up with an error.
    pub node_budget: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            host_cap: 64,
            pattern_cap: 6,
            node_budget: 50_000_000,
        }
    }
}

/// Decides whether `pattern` is a minor of `host`, with default limits.
pub fn has_minor(
    host: &BoundedDegreeGraph,
    pattern: &BoundedDegreeGraph,
) -> Result<bool, MinorError> {
    has_minor_with_limits(host, pattern, SearchLimits::default())
}

/// Decides whether `pattern` is a minor of `host` under explicit limits.
pub fn has_minor_with_limits(
    host: &BoundedDegreeGraph,
    pattern: &BoundedDegreeGraph,
    limits: SearchLimits,
) -> Result<bool, MinorError> {
    decide(host, pattern, limits, true)
}

/// Bypasses host reduction and block confinement; the differential tests
/// check it against the full pipeline.
#[cfg(test)]
pub(crate) fn has_minor_unreduced(
    host: &BoundedDegreeGraph,
    pattern: &BoundedDegreeGraph,
) -> Result<bool, MinorError> {
    decide(host, pattern, SearchLimits::default(), false)
}

fn decide(
    host: &BoundedDegreeGraph,
    pattern: &BoundedDegreeGraph,
    limits: SearchLimits,
    reduce: bool,
) -> Result<bool, MinorError> {
    let host_cap = limits.host_cap.min(64);
    if host.n() > host_cap {
        return Err(MinorError::SearchBudgetExceeded {
            what: "host",
            size: host.n(),
            guard: host_cap,
        });
    }
    if pattern.n() > limits.pattern_cap {
        return Err(MinorError::SearchBudgetExceeded {
            what: "pattern",
            size: pattern.n(),
            guard: limits.pattern_cap,
        });
    }
    let p = pattern.n();
    if p == 0 {
        return Ok(true);
    }
    // Minor operations never increase the vertex count, the edge count, or
    // the cycle rank, so any of these orderings failing rules the minor out.
    if host.n() < p
        || host.edge_count() < pattern.edge_count()
        || cycle_rank(pattern) > cycle_rank(host)
    {
        return Ok(false);
    }

    let n = host.n();
    let mut adj = vec![0u64; n];
    for v in 0..n {
        for &w in host.neighbors(v as u32) {
            adj[v] |= bit(w as usize);
        }
    }
    let mut live = full_mask(n);
    if reduce {
        let pat_min_deg = (0..p as u32).map(|v| pattern.degree(v)).min().unwrap_or(0);
        reduce_host(&mut adj, &mut live, pat_min_deg);
        // The reductions preserve minor containment exactly, so the counting
        // prechecks apply again to the smaller graph.
        let n_live = live.count_ones() as usize;
        if n_live < p {
            return Ok(false);
        }
        let m_live = (0..n)
            .filter(|&v| live & bit(v) != 0)
            .map(|v| (adj[v] & live).count_ones() as usize)
            .sum::<usize>()
            / 2;
        if m_live < pattern.edge_count()
            || cycle_rank(pattern) > m_live + mask_components(&adj, live) - n_live
        {
            return Ok(false);
        }
    }

    // A model of a pattern that is connected without a cut vertex can never
    // straddle a cut vertex of the host: the union of its branch sets is
    // connected, and contracting them inside one side of the cut would give
    // the pattern a cut vertex too. So such patterns are searched one
    // biconnected block at a time.
    if reduce && p >= 2 && is_single_block(pattern) {
        for block in biconnected_blocks(&adj, live) {
            if (block.count_ones() as usize) >= p
                && ModelSearch::new(&adj, block, pattern, limits.node_budget).run()?
            {
                return Ok(true);
            }
        }
        Ok(false)
    } else {
        ModelSearch::new(&adj, live, pattern, limits.node_budget).run()
    }
}

/// Deletes and suppresses host vertices that can never matter for patterns
/// of the given minimum degree, iterating to a fixed point.
///
/// - Minimum pattern degree ≥ 2: a degree-≤1 host vertex is never needed.
///   Alone as a branch set it offers at most one attachment; as a leaf
///   inside a larger branch set its only edge points into its own set, so
///   dropping it keeps the set connected and loses nothing.
/// - Minimum pattern degree ≥ 3: a degree-2 host vertex can additionally be
///   suppressed (replaced by an edge between its two neighbors). Alone it
///   could serve only a pattern vertex of degree ≤ 2, and inside a branch
///   set it only ever relays between its two neighbors, which the new edge
///   does directly.
fn reduce_host(adj: &mut [u64], live: &mut u64, pat_min_deg: usize) {
    if pat_min_deg < 2 {
        return;
    }
    let n = adj.len();
    loop {
        let mut changed = false;
        for v in 0..n {
            if *live & bit(v) == 0 {
                continue;
            }
            let row = adj[v] & *live;
            let deg = row.count_ones();
            if deg <= 1 {
                *live &= !bit(v);
                changed = true;
            } else if deg == 2 && pat_min_deg >= 3 {
                let a = row.trailing_zeros() as usize;
                let b = (row & (row - 1)).trailing_zeros() as usize;
                *live &= !bit(v);
                adj[a] |= bit(b);
                adj[b] |= bit(a);
                adj[a] &= !bit(v);
                adj[b] &= !bit(v);
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

/// Number of connected components among the `live` vertices.
fn mask_components(adj: &[u64], live: u64) -> usize {
    let mut remaining = live;
    let mut components = 0;
    while remaining != 0 {
        components += 1;
        let seed = bit(remaining.trailing_zeros() as usize);
        let mut reach = seed;
        loop {
            let mut next = reach;
            let mut bits = reach;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                next |= adj[v] & remaining;
            }
            if next == reach {
                break;
            }
            reach = next;
        }
        remaining &= !reach;
    }
    components
}

/// True when the pattern is connected and has no cut vertex (counting the
/// single edge as a block), i.e. it forms exactly one biconnected block
/// spanning all its vertices.
fn is_single_block(pattern: &BoundedDegreeGraph) -> bool {
    let p = pattern.n();
    let mut adj = vec![0u64; p];
    for v in 0..p {
        for &w in pattern.neighbors(v as u32) {
            adj[v] |= bit(w as usize);
        }
    }
    let live = full_mask(p);
    if mask_components(&adj, live) != 1 {
        return false;
    }
    let blocks = biconnected_blocks(&adj, live);
    blocks.len() == 1 && blocks[0] == live
}

/// Vertex masks of the biconnected blocks (bridges included as two-vertex
/// blocks) of the `live` part of the graph.
fn biconnected_blocks(adj: &[u64], live: u64) -> Vec<u64> {
    struct Finder<'a> {
        adj: &'a [u64],
        live: u64,
        disc: Vec<u32>,
        low: Vec<u32>,
        time: u32,
        edge_stack: Vec<(u32, u32)>,
        blocks: Vec<u64>,
    }
    impl Finder<'_> {
        fn dfs(&mut self, u: usize, parent: usize) {
            self.time += 1;
            self.disc[u] = self.time;
            self.low[u] = self.time;
            let mut nbrs = self.adj[u] & self.live;
            while nbrs != 0 {
                let v = nbrs.trailing_zeros() as usize;
                nbrs &= nbrs - 1;
                if self.disc[v] == 0 {
                    self.edge_stack.push((u as u32, v as u32));
                    self.dfs(v, u);
                    self.low[u] = self.low[u].min(self.low[v]);
                    if self.low[v] >= self.disc[u] {
                        let mut block = 0u64;
                        while let Some((a, b)) = self.edge_stack.pop() {
                            block |= bit(a as usize) | bit(b as usize);
                            if (a, b) == (u as u32, v as u32) {
                                break;
                            }
                        }
                        self.blocks.push(block);
                    }
                } else if v != parent && self.disc[v] < self.disc[u] {
                    self.edge_stack.push((u as u32, v as u32));
                    self.low[u] = self.low[u].min(self.disc[v]);
                }
            }
        }
    }
    let n = adj.len();
    let mut finder = Finder {
        adj,
        live,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        edge_stack: Vec::new(),
        blocks: Vec::new(),
    };
    for v in 0..n {
        if live & bit(v) != 0 && finder.disc[v] == 0 {
            finder.dfs(v, usize::MAX);
        }
    }
    finder.blocks
}

/// Cycle rank (first Betti number): edges - vertices + components.
fn cycle_rank(g: &BoundedDegreeGraph) -> usize {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut components = 0usize;
    let mut stack = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        stack.push(start as u32);
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
    }
    g.edge_count() + components - n
}

fn bit(v: usize) -> u64 {
    1u64 << v
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// Caps memoization memory; past this many entries, dead ends are still
/// checked against the memo but no longer recorded.
const MEMO_CAP: usize = 2_000_000;

struct ModelSearch {
    // Host side.
    host_adj: Vec<u64>,
    host_order: Vec<u32>,
    all: u64,
    // Pattern side, by placement position.
    p: usize,
    order: Vec<usize>,
    pos_of: Vec<usize>,
    earlier_req: Vec<Vec<usize>>,
    /// `need_later[j][i]`: pattern neighbors of `order[j]` still unplaced
    /// once positions `0..=i` are down. Disjointness forces that many
    /// distinct available attachment vertices around branch set `j`.
    need_later: Vec<Vec<u8>>,
    /// First position from which all remaining pattern vertices are isolated.
    trailing_free: usize,
    auts: Vec<Vec<u8>>,
    complete_pattern: bool,
    // Search state.
    branch: Vec<u64>,
    set_nbrs: Vec<u64>,
    used: u64,
    failed: HashSet<Vec<u64>>,
    nodes: u64,
    node_budget: u64,
}

impl ModelSearch {
    fn new(adj: &[u64], universe: u64, pattern: &BoundedDegreeGraph, node_budget: u64) -> Self {
        let n = adj.len();
        let host_adj: Vec<u64> = (0..n)
            .map(|v| {
                if universe & bit(v) != 0 {
                    adj[v] & universe
                } else {
                    0
                }
            })
            .collect();
        let mut host_order: Vec<u32> = (0..n as u32)
            .filter(|&v| universe & bit(v as usize) != 0)
            .collect();
        host_order.sort_by_key(|&v| (host_adj[v as usize].count_ones(), v));

        let p = pattern.n();
        let mut pat_adj = vec![0u64; p];
        for v in 0..p {
            for &w in pattern.neighbors(v as u32) {
                pat_adj[v] |= bit(w as usize);
            }
        }
        let pat_deg: Vec<usize> = (0..p).map(|v| pattern.degree(v as u32)).collect();

        // Placement order: descending pattern degree; ties prefer vertices
        // adjacent to an already-ordered one (keeping the search anchored),
        // then the lowest id.
        let mut order: Vec<usize> = Vec::with_capacity(p);
        let mut ordered_mask = 0u64;
        for _ in 0..p {
            let pick = (0..p)
                .filter(|v| ordered_mask & bit(*v) == 0)
                .max_by_key(|&v| (pat_deg[v], (pat_adj[v] & ordered_mask != 0) as usize, p - v))
                .expect("at least one unordered pattern vertex remains");
            order.push(pick);
            ordered_mask |= bit(pick);
        }
        let mut pos_of = vec![0usize; p];
        for (i, &v) in order.iter().enumerate() {
            pos_of[v] = i;
        }
        let earlier_req: Vec<Vec<usize>> = (0..p)
            .map(|i| {
                (0..i)
                    .filter(|&j| pat_adj[order[i]] & bit(order[j]) != 0)
                    .collect()
            })
            .collect();
        let need_later: Vec<Vec<u8>> = (0..p)
            .map(|j| {
                (0..p)
                    .map(|i| {
                        (0..p)
                            .filter(|&w| pat_adj[order[j]] & bit(order[w]) != 0 && w > i)
                            .count() as u8
                    })
                    .collect()
            })
            .collect();
        let trailing_free = (0..=p)
            .find(|&t| (t..p).all(|i| pat_deg[order[i]] == 0))
            .expect("t = p always qualifies");

        let complete_pattern = pat_deg.iter().all(|&d| d + 1 == p);
        let auts = if complete_pattern {
            Vec::new()
        } else {
            automorphisms(&pat_adj)
        };

        Self {
            host_adj,
            host_order,
            all: universe,
            p,
            order,
            pos_of,
            earlier_req,
            need_later,
            trailing_free,
            auts,
            complete_pattern,
            branch: vec![0; p],
            set_nbrs: vec![0; p],
            used: 0,
            failed: HashSet::new(),
            nodes: 0,
            node_budget,
        }
    }

    fn run(&mut self) -> Result<bool, MinorError> {
        self.place(0)
    }

    fn tick(&mut self) -> Result<(), MinorError> {
        self.nodes += 1;
        if self.nodes > self.node_budget {
            return Err(MinorError::SearchBudgetExceeded {
                what: "minor-search nodes",
                size: self.nodes as usize,
                guard: self.node_budget as usize,
            });
        }
        Ok(())
    }

    fn nbrs_of_set(&self, set: u64) -> u64 {
        let mut out = 0u64;
        let mut bits = set;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            out |= self.host_adj[v];
        }
        out
    }

    /// Connected closure of `seed` through vertices in `room`.
    fn closure(&self, seed: u64, room: u64) -> u64 {
        let mut reach = seed;
        loop {
            let next = reach | (self.nbrs_of_set(reach) & room);
            if next == reach {
                return reach;
            }
            reach = next;
        }
    }

    fn place(&mut self, i: usize) -> Result<bool, MinorError> {
        if i == self.p {
            debug_assert!(self.model_is_valid());
            return Ok(true);
        }
        self.tick()?;
        let avail = self.all & !self.used;
        let slots_left = self.p - i;
        if (avail.count_ones() as usize) < slots_left {
            return Ok(false);
        }
        // Isolated pattern vertices sit at the end of the placement order
        // and only need distinct available vertices.
        if i >= self.trailing_free {
            return Ok(true);
        }

        let key = if !self.complete_pattern && self.auts.len() <= 1 {
            None
        } else if i >= 2 {
            let k = self.prefix_key(i);
            if self.failed.contains(&k) {
                return Ok(false);
            }
            Some(k)
        } else {
            None
        };

        let reqs: Vec<u64> = self.earlier_req[i]
            .iter()
            .map(|&j| self.set_nbrs[j] & avail)
            .collect();
        let mut found = false;
        if reqs.iter().all(|&r| r != 0) {
            let anchor_src = reqs
                .iter()
                .copied()
                .min_by_key(|r| r.count_ones())
                .unwrap_or(avail);
            let size_cap = avail.count_ones() - (slots_left as u32 - 1);
            let mut banned = 0u64;
            for idx in 0..self.host_order.len() {
                let a = self.host_order[idx] as usize;
                if anchor_src & bit(a) == 0 {
                    continue;
                }
                if self.grow(i, bit(a), banned, avail, &reqs, size_cap)? {
                    found = true;
                    break;
                }
                banned |= bit(a);
            }
        }
        if !found {
            if let Some(k) = key {
                if self.failed.len() < MEMO_CAP {
                    self.failed.insert(k);
                }
            }
        }
        Ok(found)
    }

    /// Enumerates every connected candidate set that contains `set`, avoids
    /// `banned`, and stays within `avail`, committing each one that touches
    /// all required earlier branch sets.
    fn grow(
        &mut self,
        i: usize,
        set: u64,
        banned: u64,
        avail: u64,
        reqs: &[u64],
        size_cap: u32,
    ) -> Result<bool, MinorError> {
        self.tick()?;
        // The set can only ever grow inside its connected closure; if that
        // closure misses a required attachment zone, the branch is dead.
        let closure = self.closure(set, avail & !banned);
        if reqs.iter().any(|&r| closure & r == 0) {
            return Ok(false);
        }
        if reqs.iter().all(|&r| set & r != 0) && self.commit(i, set)? {
            return Ok(true);
        }
        if set.count_ones() < size_cap {
            let mut ext = self.nbrs_of_set(set) & avail & !banned & !set;
            let mut local_banned = banned;
            while ext != 0 {
                let u = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                if self.grow(i, set | bit(u), local_banned, avail, reqs, size_cap)? {
                    return Ok(true);
                }
                local_banned |= bit(u);
            }
        }
        Ok(false)
    }

    fn commit(&mut self, i: usize, set: u64) -> Result<bool, MinorError> {
        self.branch[i] = set;
        self.set_nbrs[i] = self.nbrs_of_set(set) & !set;
        self.used |= set;
        let avail = self.all & !self.used;
        let mut feasible = avail.count_ones() as usize >= self.p - i - 1;
        if feasible {
            for j in 0..=i {
                let need = self.need_later[j][i];
                if need > 0 && ((self.set_nbrs[j] & avail).count_ones() as u8) < need {
                    feasible = false;
                    break;
                }
            }
        }
        let hit = feasible && self.place(i + 1)?;
        self.used &= !set;
        Ok(hit)
    }

    /// Canonical signature of the placed prefix, minimized over pattern
    /// automorphisms that fix the placed vertex set, so that symmetric
    /// re-orderings of the same dead end share one memo entry.
    fn prefix_key(&self, i: usize) -> Vec<u64> {
        if self.complete_pattern {
            let mut key = self.branch[..i].to_vec();
            key.sort_unstable();
            return key;
        }
        let mut best: Option<Vec<u64>> = None;
        'auts: for aut in &self.auts {
            let mut cand = Vec::with_capacity(i);
            for j in 0..i {
                let pos = self.pos_of[aut[self.order[j]] as usize];
                if pos >= i {
                    continue 'auts;
                }
                cand.push(self.branch[pos]);
            }
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        best.expect("the identity automorphism always fixes the prefix")
    }

    #[cfg(debug_assertions)]
    fn model_is_valid(&self) -> bool {
        let mut union = 0u64;
        for i in 0..self.p {
            let set = self.branch[i];
            let lowest = set & set.wrapping_neg();
            if set == 0 || union & set != 0 || self.closure(lowest, set) != set {
                return false;
            }
            union |= set;
        }
        for i in 0..self.p {
            for &j in &self.earlier_req[i] {
                if self.set_nbrs[j] & self.branch[i] == 0 {
                    return false;
                }
            }
        }
        true
    }
}

/// All automorphisms of the pattern, as image tables over vertex ids.
fn automorphisms(pat_adj: &[u64]) -> Vec<Vec<u8>> {
    let p = pat_adj.len();
    let deg: Vec<u32> = pat_adj.iter().map(|m| m.count_ones()).collect();
    let mut perm = vec![0u8; p];
    let mut taken = vec![false; p];
    let mut out = Vec::new();
    fn extend(
        v: usize,
        p: usize,
        pat_adj: &[u64],
        deg: &[u32],
        perm: &mut Vec<u8>,
        taken: &mut Vec<bool>,
        out: &mut Vec<Vec<u8>>,
    ) {
        if v == p {
            out.push(perm.clone());
            return;
        }
        for img in 0..p {
            if taken[img] || deg[img] != deg[v] {
                continue;
            }
            // Edges to already-mapped vertices must map to edges exactly.
            let ok = (0..v).all(|w| {
                (pat_adj[v] & bit(w) != 0) == (pat_adj[img] & bit(perm[w] as usize) != 0)
            });
            if ok {
                perm[v] = img as u8;
                taken[img] = true;
                extend(v + 1, p, pat_adj, deg, perm, taken, out);
                taken[img] = false;
            }
        }
    }
    extend(0, p, pat_adj, &deg, &mut perm, &mut taken, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{c4, complete_graph, k33, k4, k5};
    use graph_core::{generate, BoundedDegreeGraph, GeneratorSpec, VertexId};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn path(n: usize) -> BoundedDegreeGraph {
        generate(&GeneratorSpec::Path { n }, 0).unwrap()
    }

    fn cycle(n: usize) -> BoundedDegreeGraph {
        generate(&GeneratorSpec::Cycle { n }, 0).unwrap()
    }

    fn grid(w: usize, h: usize) -> BoundedDegreeGraph {
        generate(&GeneratorSpec::Grid { w, h }, 0).unwrap()
    }

    #[test]
    fn complete_graph_contains_itself() {
        assert!(has_minor(&k5(), &k5()).unwrap());
        assert!(has_minor(&k4(), &k4()).unwrap());
    }

    // Contracting the five spokes of the Petersen graph merges each outer
    // vertex with its inner partner; the outer cycle and the inner pentagram
    // then supply all ten pairs, giving K5. The test replays that
    // contraction by hand before asking the search.
    #[test]
    fn petersen_contains_k5() {
        let p = crate::patterns::petersen();
        let mut contracted_edges: Vec<(VertexId, VertexId)> = Vec::new();
        for (u, v) in p.edges() {
            let (cu, cv) = (u % 5, v % 5);
            if cu != cv && !contracted_edges.contains(&(cu.min(cv), cu.max(cv))) {
                contracted_edges.push((cu.min(cv), cu.max(cv)));
            }
        }
        contracted_edges.sort_unstable();
        let merged = BoundedDegreeGraph::new(5, 4, &contracted_edges).unwrap();
        assert_eq!(merged, k5(), "spoke contraction of Petersen is K5");
        assert!(has_minor(&p, &k5()).unwrap());
    }

    #[test]
    fn grid_4x4_has_no_k5_minor() {
        assert!(!has_minor(&grid(4, 4), &k5()).unwrap());
    }

    #[test]
    fn grid_4x4_has_no_k33_minor() {
        assert!(!has_minor(&grid(4, 4), &k33()).unwrap());
    }

    #[test]
    fn vertex_and_edge_count_prechecks() {
        // Too few vertices for the pattern.
        assert!(!has_minor(&k5(), &k33()).unwrap());
        // K33 is a subgraph of K6, hence a minor.
        assert!(has_minor(&complete_graph(6), &k33()).unwrap());
    }

    #[test]
    fn cycle_rank_precheck_rules_out_cycles_in_trees() {
        let tree = generate(&GeneratorSpec::Tree { n: 30, d: 3 }, 7).unwrap();
        assert_eq!(cycle_rank(&tree), 0);
        assert!(!has_minor(&tree, &c4()).unwrap());
        assert!(!has_minor(&tree, &k4()).unwrap());
    }

    #[test]
    fn longer_cycles_contract_to_c4() {
        for n in 4..=9 {
            assert!(has_minor(&cycle(n), &c4()).unwrap(), "C{n} ⊇ C4");
        }
        assert!(!has_minor(&cycle(3), &c4()).unwrap());
        assert!(!has_minor(&path(6), &c4()).unwrap());
    }

    #[test]
    fn disconnected_pattern_needs_disjoint_branch_sets() {
        let two_edges = BoundedDegreeGraph::new(4, 1, &[(0, 1), (2, 3)]).unwrap();
        // A 4-star has four vertices but every edge shares the center.
        let star = BoundedDegreeGraph::new(4, 3, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!has_minor(&star, &two_edges).unwrap());
        assert!(has_minor(&c4(), &two_edges).unwrap());
        assert!(has_minor(&path(4), &two_edges).unwrap());
    }

    #[test]
    fn isolated_pattern_vertices_take_spare_host_vertices() {
        let edge_plus_isolated = BoundedDegreeGraph::new(3, 1, &[(0, 1)]).unwrap();
        assert!(has_minor(&path(3), &edge_plus_isolated).unwrap());
        assert!(!has_minor(&path(2), &edge_plus_isolated).unwrap());
        let edgeless = BoundedDegreeGraph::new(3, 0, &[]).unwrap();
        assert!(has_minor(&path(3), &edgeless).unwrap());
        assert!(!has_minor(&path(2), &edgeless).unwrap());
    }

    #[test]
    fn empty_pattern_is_a_minor_of_anything() {
        let empty = BoundedDegreeGraph::new(0, 0, &[]).unwrap();
        assert!(has_minor(&path(1), &empty).unwrap());
        assert!(has_minor(&empty, &empty).unwrap());
    }

    #[test]
    fn guards_trip_on_oversized_inputs() {
        let big_host = path(65);
        assert!(matches!(
            has_minor(&big_host, &k4()),
            Err(MinorError::SearchBudgetExceeded { what: "host", .. })
        ));
        let big_pattern = path(7);
        assert!(matches!(
            has_minor(&path(10), &big_pattern),
            Err(MinorError::SearchBudgetExceeded { what: "pattern", .. })
        ));
        // A raised cap admits the same pattern.
        let limits = SearchLimits {
            pattern_cap: 8,
            ..SearchLimits::default()
        };
        assert!(has_minor_with_limits(&path(10), &big_pattern, limits).unwrap());
    }

    /// Random graph on `n` vertices where each pair is an edge with the
    /// given fixed probability.
    fn random_graph(n: usize, edge_prob: f64, rng: &mut ChaCha8Rng) -> BoundedDegreeGraph {
        let mut edges = Vec::new();
        for u in 0..n as VertexId {
            for v in u + 1..n as VertexId {
                if rng.gen::<f64>() < edge_prob {
                    edges.push((u, v));
                }
            }
        }
        BoundedDegreeGraph::new(n, n - 1, &edges).unwrap()
    }

    #[test]
    fn minor_containment_is_monotone_under_edge_additions() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x4d4f4e4f);
        let patterns = [k4(), c4(), k5()];
        for round in 0..60 {
            let n = 4 + (round % 7);
            let g = random_graph(n, 0.35, &mut rng);
            let before: Vec<bool> = patterns
                .iter()
                .map(|h| has_minor(&g, h).unwrap())
                .collect();
            // Add one absent edge, if any.
            let absent: Vec<(VertexId, VertexId)> = (0..n as VertexId)
                .flat_map(|u| (u + 1..n as VertexId).map(move |v| (u, v)))
                .filter(|&(u, v)| !g.has_edge(u, v))
                .collect();
            if absent.is_empty() {
                continue;
            }
            let extra = absent[rng.gen_range(0..absent.len())];
            let mut edges: Vec<(VertexId, VertexId)> = g.edges().collect();
            edges.push(extra);
            let bigger = BoundedDegreeGraph::new(n, n - 1, &edges).unwrap();
            for (h, was) in patterns.iter().zip(before) {
                if was {
                    assert!(
                        has_minor(&bigger, h).unwrap(),
                        "adding an edge lost a minor (n = {n}, round = {round})"
                    );
                }
            }
        }
    }

    /// Contracts edge (u, v): v's neighbors move to u, v is removed, and
    /// the remaining vertices are relabeled densely.
    fn contract_edge(
        g: &BoundedDegreeGraph,
        u: VertexId,
        v: VertexId,
    ) -> BoundedDegreeGraph {
        assert!(g.has_edge(u, v));
        let relabel = |w: VertexId| -> VertexId {
            let w = if w == v { u } else { w };
            if w > v {
                w - 1
            } else {
                w
            }
        };
        let mut edges: Vec<(VertexId, VertexId)> = g
            .edges()
            .map(|(a, b)| (relabel(a), relabel(b)))
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let n = g.n() - 1;
        BoundedDegreeGraph::new(n, n.saturating_sub(1), &edges).unwrap()
    }

    // The host reductions (leaf deletion, degree-2 suppression, block
    // confinement) must never change the answer. Differential check against
    // the unreduced search on random hosts, with patterns spanning the
    // gating cases: complete, bipartite-symmetric, cycle (no suppression),
    // one with a cut vertex (no block confinement), and a disconnected one.
    #[test]
    fn reductions_preserve_the_answer() {
        let paw = BoundedDegreeGraph::new(4, 3, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        let two_edges = BoundedDegreeGraph::new(4, 1, &[(0, 1), (2, 3)]).unwrap();
        let patterns = [k4(), c4(), k5(), k33(), paw, two_edges];
        let mut rng = ChaCha8Rng::seed_from_u64(0x52455544);
        for round in 0..150 {
            let n = 5 + (round % 6);
            let edge_prob = 0.15 + 0.1 * ((round / 6) % 6) as f64;
            let g = random_graph(n, edge_prob, &mut rng);
            for h in &patterns {
                assert_eq!(
                    has_minor(&g, h).unwrap(),
                    has_minor_unreduced(&g, h).unwrap(),
                    "reduction changed the verdict (round {round}, pattern n = {})",
                    h.n()
                );
            }
        }
    }

    // Positives that straddle the reductions' seams: models found across
    // suppressed paths and inside single blocks of cut-vertex hosts.
    #[test]
    fn reductions_keep_stretched_and_blockwise_models() {
        // K4 with every edge subdivided twice: still a K4 minor, found only
        // after the degree-2 chains collapse.
        let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
        let mut next = 4u32;
        for u in 0..4u32 {
            for v in u + 1..4 {
                edges.push((u, next));
                edges.push((next, next + 1));
                edges.push((next + 1, v));
                next += 2;
            }
        }
        let subdivided = BoundedDegreeGraph::new(next as usize, 3, &edges).unwrap();
        assert!(has_minor(&subdivided, &k4()).unwrap());
        assert!(!has_minor(&subdivided, &k5()).unwrap());

        // Two K4 blocks sharing a cut vertex: the K4 lives in one block.
        let mut edges: Vec<(VertexId, VertexId)> = vec![];
        for block in [[0u32, 1, 2, 3], [3, 4, 5, 6]] {
            for i in 0..4 {
                for j in i + 1..4 {
                    edges.push((block[i].min(block[j]), block[i].max(block[j])));
                }
            }
        }
        let bowtie = BoundedDegreeGraph::new(7, 6, &edges).unwrap();
        assert!(has_minor(&bowtie, &k4()).unwrap());
        assert!(!has_minor(&bowtie, &k5()).unwrap());
    }

    // Definition-level replay of contraction soundness: anything that is a
    // minor of a one-edge contraction of g must already be a minor of g.
    // Exhaustive over all connected hosts with up to six vertices; the
    // seven-vertex tier runs in the slower integration suite.
    #[test]
    fn contraction_never_creates_minors_up_to_six_vertices() {
        let patterns = [k4(), c4(), k5(), k33()];
        for n in 2..=6 {
            for g in neighborhood_stats::connected_graphs_up_to_iso(n) {
                let edges: Vec<(VertexId, VertexId)> = g.edges().collect();
                for &(u, v) in &edges {
                    let contracted = contract_edge(&g, u, v);
                    for h in &patterns {
                        if has_minor(&contracted, h).unwrap() {
                            assert!(
                                has_minor(&g, h).unwrap(),
                                "contraction of ({u},{v}) in a {n}-vertex host created a minor"
                            );
                        }
                    }
                }
            }
        }
    }
}
