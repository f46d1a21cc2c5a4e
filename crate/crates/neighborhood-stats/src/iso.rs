//! Exact colored-graph isomorphism by backtracking search.
//!
//! This is an independent decision procedure — it shares no code with the
//! canonical-form engine — so the two can be checked against each other.
//! Intended for small local graphs (balls, excerpt pairs); the search is
//! exponential in the worst case but heavily pruned by colors and degrees.

use smallvec::SmallVec;

/// Bitset adjacency rows, one `Vec<u64>` row per vertex.
struct BitAdj {
    words: usize,
    rows: Vec<u64>,
}

impl BitAdj {
    fn new(adj: &[SmallVec<[u16; 4]>]) -> Self {
        let n = adj.len();
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![0u64; n * words];
        for (v, list) in adj.iter().enumerate() {
            for &w in list {
                rows[v * words + (w as usize) / 64] |= 1u64 << ((w as usize) % 64);
            }
        }
        Self { words, rows }
    }

    fn has_edge(&self, a: usize, b: usize) -> bool {
        self.rows[a * self.words + b / 64] & (1u64 << (b % 64)) != 0
    }
}

/// Decides whether two colored graphs are isomorphic by a color-preserving
/// vertex bijection. Adjacency lists may be in any order.
pub fn colored_isomorphic(
    adj_a: &[SmallVec<[u16; 4]>],
    colors_a: &[u16],
    adj_b: &[SmallVec<[u16; 4]>],
    colors_b: &[u16],
) -> bool {
    let n = adj_a.len();
    if n != adj_b.len() {
        return false;
    }
    assert_eq!(n, colors_a.len());
    assert_eq!(n, colors_b.len());
    if n == 0 {
        return true;
    }
    let m_a: usize = adj_a.iter().map(|l| l.len()).sum();
    let m_b: usize = adj_b.iter().map(|l| l.len()).sum();
    if m_a != m_b {
        return false;
    }
    // Invariant pre-check: the multiset of (color, degree) pairs must match.
    let mut sig_a: Vec<(u16, usize)> = (0..n).map(|v| (colors_a[v], adj_a[v].len())).collect();
    let mut sig_b: Vec<(u16, usize)> = (0..n).map(|v| (colors_b[v], adj_b[v].len())).collect();
    sig_a.sort_unstable();
    sig_b.sort_unstable();
    if sig_a != sig_b {
        return false;
    }

    let bits_a = BitAdj::new(adj_a);
    let bits_b = BitAdj::new(adj_b);

    // Match order: prefer vertices adjacent to already-matched ones (keeps
    // the frontier connected), breaking ties toward rarer (color, degree)
    // classes so candidate lists stay short.
    let mut class_size = std::collections::HashMap::new();
    for &s in &sig_a {
        *class_size.entry(s).or_insert(0usize) += 1;
    }
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut picked = vec![false; n];
    for _ in 0..n {
        let mut best: Option<usize> = None;
        let mut best_key = (usize::MAX, usize::MAX, usize::MAX);
        for v in 0..n {
            if picked[v] {
                continue;
            }
            let attached = adj_a[v].iter().filter(|&&w| picked[w as usize]).count();
            // Fewer unmatched neighbors of matched vertices first => most
            // constrained first. `attached` is negated via (n - attached).
            let key = (n - attached, class_size[&(colors_a[v], adj_a[v].len())], v);
            if key < best_key {
                best_key = key;
                best = Some(v);
            }
        }
        let v = best.expect("some vertex remains");
        picked[v] = true;
        order.push(v);
    }

    let mut map = vec![usize::MAX; n]; // a-vertex -> b-vertex
    let mut used = vec![false; n]; // b-vertex used
    backtrack(
        0, &order, adj_a, colors_a, adj_b, colors_b, &bits_a, &bits_b, &mut map, &mut used,
    )
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    idx: usize,
    order: &[usize],
    adj_a: &[SmallVec<[u16; 4]>],
    colors_a: &[u16],
    adj_b: &[SmallVec<[u16; 4]>],
    colors_b: &[u16],
    bits_a: &BitAdj,
    bits_b: &BitAdj,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if idx == order.len() {
        return true;
    }
    let a = order[idx];
    'candidates: for b in 0..adj_b.len() {
        if used[b] || colors_b[b] != colors_a[a] || adj_b[b].len() != adj_a[a].len() {
            continue;
        }
        // Every already-mapped vertex must relate to `b` exactly as it
        // relates to `a`.
        for &prev in &order[..idx] {
            let pb = map[prev];
            if bits_a.has_edge(a, prev) != bits_b.has_edge(b, pb) {
                continue 'candidates;
            }
        }
        map[a] = b;
        used[b] = true;
        if backtrack(
            idx + 1, order, adj_a, colors_a, adj_b, colors_b, bits_a, bits_b, map, used,
        ) {
            return true;
        }
        map[a] = usize::MAX;
        used[b] = false;
    }
    false
}
