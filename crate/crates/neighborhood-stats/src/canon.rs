//! Canonical byte codes for small vertex-colored graphs.
//!
//! Two colored graphs receive the same code if and only if there is a
//! color-preserving isomorphism between them, so codes can be compared (or
//! hashed) instead of running isomorphism tests. The algorithm is classic
//! individualization-refinement: iteratively refine an ordered partition of
//! the vertices until it is equitable, branch on the members of the first
//! non-singleton cell, and keep the lexicographically smallest code over all
//! branches.
//!
//! Everything that influences cell order is label-independent: initial cells
//! are ordered by color value, split fragments are ordered by neighbor count
//! in the splitter, and the branch target is the first non-singleton cell in
//! position order. Codes are therefore stable across vertex relabelings,
//! adjacency input order, and platforms.
//!
//! Symmetric inputs (say, a rooted tree with many identical branches) would
//! make the plain search visit one leaf per automorphism, so the search
//! prunes by discovered automorphisms: two leaves emitting the same code
//! reveal one, and a branch candidate lying in the orbit of an already
//! explored sibling — under automorphisms fixing everything individualized
//! so far — can only reproduce codes that sibling already produced. Pruning
//! changes which branches run, never the minimum they find.

use smallvec::SmallVec;

/// Adjacency lists of a small graph in local id space.
///
/// Lists may be in any order; they must be symmetric and loop-free.
pub type LocalAdj = Vec<SmallVec<[u16; 4]>>;

/// Maximum number of vertices a local graph may have.
pub const MAX_LOCAL_VERTICES: usize = u16::MAX as usize;

/// Reusable workspace for canonical-code computations.
///
/// Holding one `Canonizer` across many calls avoids reallocating the
/// partition state for every graph; all buffers are resized on demand.
#[derive(Default)]
pub struct Canonizer {
    /// Vertices in partition order (`lab[i]` = vertex at position `i`).
    lab: Vec<u16>,
    /// Inverse of `lab` (`pos[v]` = position of vertex `v`).
    pos: Vec<u16>,
    /// For each position, the start position of its cell.
    cell_start: Vec<u16>,
    /// For each cell start position, one past the cell's last position.
    cell_end: Vec<u16>,
    /// Pending splitter cells, identified by start position.
    queue: Vec<u16>,
    /// Whether a cell start is already queued.
    in_queue: Vec<bool>,
    /// Per-vertex neighbor count within the current splitter.
    count: Vec<u32>,
    /// Vertices with a nonzero `count`, for cheap reset.
    touched: Vec<u16>,
    /// Affected-cell dedup flags, indexed by cell start.
    affected_flag: Vec<bool>,
    /// Affected cell starts collected during one split.
    affected: Vec<u16>,
}

/// Saved partition state for backtracking during individualization.
struct Snapshot {
    lab: Vec<u16>,
    pos: Vec<u16>,
    cell_start: Vec<u16>,
    cell_end: Vec<u16>,
}

/// Bookkeeping for one `code` computation: the running minimum and the
/// automorphisms discovered on the way, used to prune symmetric branches.
struct SearchCtx {
    best: Option<Vec<u8>>,
    /// Labeling that produced `best` (`best_lab[i]` = vertex at canonical
    /// position `i`).
    best_lab: Vec<u16>,
    /// Automorphism generators of the colored graph (`phi[v]` = image of
    /// `v`), harvested from equal-code leaf pairs.
    auts: Vec<Vec<u16>>,
    /// Vertices individualized along the current search path.
    prefix: Vec<u16>,
}

impl SearchCtx {
    /// Whether `v` is mapped to some explored sibling by the subgroup that
    /// fixes every vertex individualized so far. If it is, the subtree under
    /// `v` is the automorphic image of one already searched.
    fn in_explored_orbit(&self, v: u16, explored: &[u16], n: usize) -> bool {
        if explored.is_empty() || self.auts.is_empty() {
            return false;
        }
        let usable: SmallVec<[&Vec<u16>; 8]> = self
            .auts
            .iter()
            .filter(|phi| self.prefix.iter().all(|&w| phi[w as usize] == w))
            .collect();
        if usable.is_empty() {
            return false;
        }
        // Forward closure reaches the whole orbit: a permutation maps the
        // finite closed set onto itself, so inverses come for free.
        let mut seen = vec![false; n];
        seen[v as usize] = true;
        let mut stack: SmallVec<[u16; 16]> = SmallVec::new();
        stack.push(v);
        while let Some(u) = stack.pop() {
            if u != v && explored.contains(&u) {
                return true;
            }
            for phi in &usable {
                let w = phi[u as usize];
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        false
    }
}

impl Canonizer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Computes the canonical byte code of a colored graph.
    ///
    /// `colors[v]` is an isomorphism-invariant initial color (for rooted
    /// balls: depth from the root). The code embeds the vertex count, edge
    /// count, color sequence, and edge list under the canonical labeling, so
    /// equal codes imply color-preserving isomorphism and vice versa.
    pub fn code(&mut self, adj: &[SmallVec<[u16; 4]>], colors: &[u16]) -> Vec<u8> {
        let n = adj.len();
        assert_eq!(n, colors.len(), "one color per vertex");
        assert!(n <= MAX_LOCAL_VERTICES, "local graph too large");
        if n == 0 {
            return encode_header(0, 0, &[], &[]);
        }
        self.reset(n, colors);
        let mut ctx = SearchCtx {
            best: None,
            best_lab: Vec::new(),
            auts: Vec::new(),
            prefix: Vec::new(),
        };
        self.search(adj, colors, &mut ctx);
        ctx.best.expect("search always yields a code")
    }

    /// Initializes the partition to the ordered color classes.
    fn reset(&mut self, n: usize, colors: &[u16]) {
        self.lab.clear();
        self.lab.extend(0..n as u16);
        // Counting sort by color value keeps cell order label-independent.
        self.lab.sort_unstable_by_key(|&v| colors[v as usize]);
        self.pos.resize(n, 0);
        self.cell_start.resize(n, 0);
        self.cell_end.resize(n, 0);
        self.in_queue.clear();
        self.in_queue.resize(n, false);
        self.queue.clear();
        self.count.clear();
        self.count.resize(n, 0);
        self.touched.clear();
        self.affected_flag.clear();
        self.affected_flag.resize(n, false);
        self.affected.clear();

        for (i, &v) in self.lab.iter().enumerate() {
            self.pos[v as usize] = i as u16;
        }
        let mut start = 0usize;
        while start < n {
            let color = colors[self.lab[start] as usize];
            let mut end = start + 1;
            while end < n && colors[self.lab[end] as usize] == color {
                end += 1;
            }
            for i in start..end {
                self.cell_start[i] = start as u16;
            }
            self.cell_end[start] = end as u16;
            self.enqueue(start as u16);
            start = end;
        }
    }

    fn enqueue(&mut self, cell: u16) {
        if !self.in_queue[cell as usize] {
            self.in_queue[cell as usize] = true;
            self.queue.push(cell);
        }
    }

    /// Refines the partition until it is equitable (no pending splitters).
    fn refine(&mut self, adj: &[SmallVec<[u16; 4]>]) {
        while let Some(splitter) = self.queue.pop() {
            self.in_queue[splitter as usize] = false;
            self.split_by(adj, splitter as usize);
        }
    }

    /// Splits every cell by neighbor counts within the splitter cell.
    fn split_by(&mut self, adj: &[SmallVec<[u16; 4]>], splitter: usize) {
        let s_end = self.cell_end[splitter] as usize;
        for i in splitter..s_end {
            let v = self.lab[i];
            for &w in &adj[v as usize] {
                if self.count[w as usize] == 0 {
                    self.touched.push(w);
                }
                self.count[w as usize] += 1;
            }
        }
        for idx in 0..self.touched.len() {
            let w = self.touched[idx];
            let cs = self.cell_start[self.pos[w as usize] as usize];
            if !self.affected_flag[cs as usize] {
                self.affected_flag[cs as usize] = true;
                self.affected.push(cs);
            }
        }
        // Ascending start order keeps the split sequence label-independent.
        self.affected.sort_unstable();
        let affected = std::mem::take(&mut self.affected);
        for &cs in &affected {
            self.affected_flag[cs as usize] = false;
            self.split_cell(cs as usize);
        }
        self.affected = affected;
        self.affected.clear();
        for idx in 0..self.touched.len() {
            let w = self.touched[idx];
            self.count[w as usize] = 0;
        }
        self.touched.clear();
    }

    /// Reorders one cell by splitter-neighbor count and registers fragments.
    fn split_cell(&mut self, cs: usize) {
        let ce = self.cell_end[cs] as usize;
        if ce - cs <= 1 {
            return;
        }
        let slice = &mut self.lab[cs..ce];
        let first = self.count[slice[0] as usize];
        if slice.iter().all(|&v| self.count[v as usize] == first) {
            return;
        }
        // Cells are tiny (bounded by color-class sizes); a comparison sort by
        // count value is simple and fast. Ties keep arbitrary relative order,
        // which is fine: vertices with equal counts land in the same fragment.
        slice.sort_by_key(|&v| self.count[v as usize]);
        let mut frag_start = cs;
        for i in cs..ce {
            let v = self.lab[i] as usize;
            self.pos[v] = i as u16;
            if i > frag_start
                && self.count[self.lab[i] as usize] != self.count[self.lab[i - 1] as usize]
            {
                self.cell_end[frag_start] = i as u16;
                self.enqueue(frag_start as u16);
                frag_start = i;
            }
            self.cell_start[i] = frag_start as u16;
        }
        self.cell_end[frag_start] = ce as u16;
        self.enqueue(frag_start as u16);
    }

    /// Returns the start of the first non-singleton cell, if any.
    fn first_non_singleton(&self, n: usize) -> Option<usize> {
        let mut start = 0usize;
        while start < n {
            let end = self.cell_end[start] as usize;
            if end - start > 1 {
                return Some(start);
            }
            start = end;
        }
        None
    }

    fn snapshot(&self) -> Snapshot {
        Snapshot {
            lab: self.lab.clone(),
            pos: self.pos.clone(),
            cell_start: self.cell_start.clone(),
            cell_end: self.cell_end.clone(),
        }
    }

    fn restore(&mut self, snap: &Snapshot) {
        self.lab.copy_from_slice(&snap.lab);
        self.pos.copy_from_slice(&snap.pos);
        self.cell_start.copy_from_slice(&snap.cell_start);
        self.cell_end.copy_from_slice(&snap.cell_end);
    }

    /// Moves `v` to the front of its cell as a new singleton cell.
    fn individualize(&mut self, v: u16) {
        let p = self.pos[v as usize] as usize;
        let cs = self.cell_start[p] as usize;
        let ce = self.cell_end[cs] as usize;
        debug_assert!(ce - cs >= 2, "individualizing within a singleton");
        let other = self.lab[cs];
        self.lab.swap(cs, p);
        self.pos[v as usize] = cs as u16;
        self.pos[other as usize] = p as u16;
        self.cell_end[cs] = (cs + 1) as u16;
        let rest = cs + 1;
        for i in rest..ce {
            self.cell_start[i] = rest as u16;
        }
        self.cell_end[rest] = ce as u16;
        self.enqueue(cs as u16);
        self.enqueue(rest as u16);
    }

    /// Recursive refine/branch search keeping the minimum code in `ctx`.
    fn search(&mut self, adj: &[SmallVec<[u16; 4]>], colors: &[u16], ctx: &mut SearchCtx) {
        self.refine(adj);
        let n = adj.len();
        match self.first_non_singleton(n) {
            None => {
                let code = self.emit(adj, colors);
                let better = match &ctx.best {
                    None => true,
                    Some(b) => code < *b,
                };
                if better {
                    ctx.best_lab.clear();
                    ctx.best_lab.extend_from_slice(&self.lab[..n]);
                    ctx.best = Some(code);
                } else if ctx.best.as_deref() == Some(code.as_slice()) {
                    // Two discrete labelings serializing identically differ
                    // by an automorphism: position i holds `lab[i]` here and
                    // `best_lab[i]` there, so mapping one to the other
                    // preserves colors and edges.
                    let mut phi = vec![0u16; n];
                    let mut nontrivial = false;
                    for i in 0..n {
                        let from = self.lab[i];
                        let to = ctx.best_lab[i];
                        phi[from as usize] = to;
                        nontrivial |= from != to;
                    }
                    if nontrivial {
                        ctx.auts.push(phi);
                    }
                }
            }
            Some(target) => {
                debug_assert!(self.queue.is_empty(), "refinement drained the queue");
                let end = self.cell_end[target] as usize;
                let members: SmallVec<[u16; 8]> =
                    SmallVec::from_slice(&self.lab[target..end]);
                let snap = self.snapshot();
                let mut explored: SmallVec<[u16; 8]> = SmallVec::new();
                for &v in &members {
                    if ctx.in_explored_orbit(v, &explored, n) {
                        continue;
                    }
                    self.restore(&snap);
                    self.individualize(v);
                    ctx.prefix.push(v);
                    self.search(adj, colors, ctx);
                    ctx.prefix.pop();
                    explored.push(v);
                }
            }
        }
    }

    /// Serializes the graph under the current (discrete) labeling.
    fn emit(&self, adj: &[SmallVec<[u16; 4]>], colors: &[u16]) -> Vec<u8> {
        let n = adj.len();
        let mut edges: Vec<(u16, u16)> = Vec::new();
        for k in 0..n {
            let v = self.lab[k] as usize;
            for &w in &adj[v] {
                let j = self.pos[w as usize];
                if (k as u16) < j {
                    edges.push((k as u16, j));
                }
            }
        }
        edges.sort_unstable();
        let canon_colors: Vec<u16> = (0..n).map(|k| colors[self.lab[k] as usize]).collect();
        encode_header(n, edges.len(), &canon_colors, &edges)
    }
}

/// Packs `(n, m, colors, edges)` into the canonical byte layout.
fn encode_header(n: usize, m: usize, colors: &[u16], edges: &[(u16, u16)]) -> Vec<u8> {
    let mut out = Vec::with_capacity(4 + 2 * colors.len() + 4 * edges.len());
    out.extend_from_slice(&(n as u16).to_le_bytes());
    out.extend_from_slice(&(m as u16).to_le_bytes());
    for &c in colors {
        out.extend_from_slice(&c.to_le_bytes());
    }
    for &(a, b) in edges {
        out.extend_from_slice(&a.to_le_bytes());
        out.extend_from_slice(&b.to_le_bytes());
    }
    out
}

/// One-shot convenience wrapper around [`Canonizer::code`].
pub fn canonical_code(adj: &[SmallVec<[u16; 4]>], colors: &[u16]) -> Vec<u8> {
    Canonizer::new().code(adj, colors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn adj_from_edges(n: usize, edges: &[(u16, u16)]) -> LocalAdj {
        let mut adj: LocalAdj = vec![SmallVec::new(); n];
        for &(a, b) in edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        adj
    }

    /// Applies a relabeling `perm[v] = new id of v` to a colored graph.
    fn relabel(
        adj: &[SmallVec<[u16; 4]>],
        colors: &[u16],
        perm: &[u16],
    ) -> (LocalAdj, Vec<u16>) {
        let n = adj.len();
        let mut new_adj: LocalAdj = vec![SmallVec::new(); n];
        let mut new_colors = vec![0u16; n];
        for v in 0..n {
            let nv = perm[v] as usize;
            new_colors[nv] = colors[v];
            for &w in &adj[v] {
                new_adj[nv].push(perm[w as usize]);
            }
        }
        (new_adj, new_colors)
    }

    #[test]
    fn code_is_invariant_under_relabeling_and_input_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut canon = Canonizer::new();
        for trial in 0..200 {
            let n = rng.gen_range(1..=9usize);
            let mut edges = Vec::new();
            for a in 0..n as u16 {
                for b in (a + 1)..n as u16 {
                    if rng.gen_bool(0.4) {
                        edges.push((a, b));
                    }
                }
            }
            let colors: Vec<u16> = (0..n).map(|_| rng.gen_range(0..3u16)).collect();
            let adj = adj_from_edges(n, &edges);
            let base = canon.code(&adj, &colors);

            let mut perm: Vec<u16> = (0..n as u16).collect();
            perm.shuffle(&mut rng);
            let (mut padj, pcolors) = relabel(&adj, &colors, &perm);
            for list in &mut padj {
                list.shuffle(&mut rng);
            }
            let relabeled = canon.code(&padj, &pcolors);
            assert_eq!(base, relabeled, "trial {trial} code changed under relabeling");
        }
    }

    #[test]
    fn code_distinguishes_colors() {
        let adj = adj_from_edges(2, &[(0, 1)]);
        let a = canonical_code(&adj, &[0, 0]);
        let b = canonical_code(&adj, &[0, 1]);
        assert_ne!(a, b);
    }

    #[test]
    fn code_distinguishes_structure() {
        // Path on 4 vertices vs star on 4 vertices: same n and m.
        let path = adj_from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let star = adj_from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let colors = vec![0u16; 4];
        assert_ne!(canonical_code(&path, &colors), canonical_code(&star, &colors));
    }

    #[test]
    fn code_layout_is_stable() {
        // Triangle with all colors 0: three vertices, three edges. This byte
        // string is frozen so regressions in the layout or the search are
        // caught; it must never change across releases or platforms.
        let adj = adj_from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let code = canonical_code(&adj, &[0, 0, 0]);
        assert_eq!(
            code,
            vec![
                3, 0, 3, 0, // n = 3, m = 3
                0, 0, 0, 0, 0, 0, // colors
                0, 0, 1, 0, // edge (0,1)
                0, 0, 2, 0, // edge (0,2)
                1, 0, 2, 0, // edge (1,2)
            ]
        );
    }

    #[test]
    fn empty_and_singleton_graphs() {
        let empty: LocalAdj = Vec::new();
        assert_eq!(canonical_code(&empty, &[]), vec![0, 0, 0, 0]);
        let single = adj_from_edges(1, &[]);
        assert_eq!(canonical_code(&single, &[7]), vec![1, 0, 0, 0, 7, 0]);
    }
}
