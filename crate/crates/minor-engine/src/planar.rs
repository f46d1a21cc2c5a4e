//! Small-graph planarity, two independent ways.
//!
//! [`is_planar_small`] is the production decision: a graph is planar exactly
//! when it has neither a K5 minor nor a K3,3 minor, so it reuses the exact
//! branch-set search. [`is_planar_by_embedding`] shares no code with the
//! minor search: it hunts for an actual combinatorial embedding by inserting
//! edges one at a time into the faces of a partial embedding, backtracking
//! over every (face, corner) choice. Each insertion preserves Euler
//! characteristic 2, so reaching the last edge certifies a plane embedding,
//! and exhausting the choices certifies there is none. The two deciders
//! cross-check each other in the test suites.

use crate::error::MinorError;
use crate::minor::has_minor;
use crate::patterns::{k33, k5};
use graph_core::BoundedDegreeGraph;

/// Planarity via forbidden minors: no K5 minor and no K3,3 minor.
pub fn is_planar_small(g: &BoundedDegreeGraph) -> Result<bool, MinorError> {
    Ok(!has_minor(g, &k5())? && !has_minor(g, &k33())?)
}

/// Largest vertex count [`is_planar_by_embedding`] accepts.
pub const EMBED_SEARCH_CAP: usize = 16;

const EMBED_NODE_BUDGET: u64 = 20_000_000;

/// Planarity by exhaustive embedding search, independent of the minor
/// machinery. Intended for cross-checks on tiny graphs (≤ 16 vertices).
pub fn is_planar_by_embedding(g: &BoundedDegreeGraph) -> Result<bool, MinorError> {
    if g.n() > EMBED_SEARCH_CAP {
        return Err(MinorError::SearchBudgetExceeded {
            what: "embedding-search host",
            size: g.n(),
            guard: EMBED_SEARCH_CAP,
        });
    }
    // A graph is planar iff all its connected components are.
    let n = g.n();
    let mut seen = vec![false; n];
    let mut nodes = 0u64;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut component = vec![start as u32];
        seen[start] = true;
        let mut head = 0;
        while head < component.len() {
            let v = component[head];
            head += 1;
            for &w in g.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    component.push(w);
                }
            }
        }
        if !component_planar(g, &component, &mut nodes)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One edge-insertion step, precomputed against a fixed insertion order.
enum Insert {
    /// Edge with one endpoint already embedded; the other vertex is new.
    /// `out` runs embedded → new, `in_` runs new → embedded, and `at` is
    /// the embedded endpoint whose corners are the choice points.
    Dangling { out: u32, in_: u32, at: u32 },
    /// Edge between two embedded vertices; must land inside a face that
    /// shows corners of both.
    Chord { d_uv: u32, d_vu: u32, u: u32, v: u32 },
}

fn component_planar(
    g: &BoundedDegreeGraph,
    component: &[u32],
    nodes: &mut u64,
) -> Result<bool, MinorError> {
    let nc = component.len();
    // Every graph on at most four vertices embeds in the plane directly.
    if nc <= 4 {
        return Ok(true);
    }
    let mut local = vec![u32::MAX; g.n()];
    for (i, &v) in component.iter().enumerate() {
        local[v as usize] = i as u32;
    }
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for &v in component {
        for &w in g.neighbors(v) {
            if v < w {
                edges.push((local[v as usize], local[w as usize]));
            }
        }
    }
    let m = edges.len();
    // Euler-bound pre-filter: a plane graph has at most 3n - 6 edges.
    if m > 3 * nc - 6 {
        return Ok(false);
    }

    // Head of each dart: dart 2e runs u → v, dart 2e + 1 runs v → u.
    let mut head = vec![0u32; 2 * m];
    for (e, &(u, v)) in edges.iter().enumerate() {
        head[2 * e] = v;
        head[2 * e + 1] = u;
    }

    // Insertion order: always an edge touching the embedded part, chords
    // first since they constrain the embedding hardest.
    let mut inserted = vec![false; m];
    let mut embedded = vec![false; nc];
    let (a0, b0) = edges[0];
    embedded[a0 as usize] = true;
    embedded[b0 as usize] = true;
    inserted[0] = true;
    let mut order: Vec<Insert> = Vec::with_capacity(m - 1);
    for _ in 1..m {
        let next_chord = (0..m).find(|&e| {
            !inserted[e] && embedded[edges[e].0 as usize] && embedded[edges[e].1 as usize]
        });
        let e = next_chord
            .or_else(|| {
                (0..m).find(|&e| {
                    !inserted[e]
                        && (embedded[edges[e].0 as usize] || embedded[edges[e].1 as usize])
                })
            })
            .expect("a connected component always has a next edge to insert");
        inserted[e] = true;
        let (u, v) = edges[e];
        order.push(if embedded[u as usize] && embedded[v as usize] {
            Insert::Chord {
                d_uv: 2 * e as u32,
                d_vu: 2 * e as u32 + 1,
                u,
                v,
            }
        } else if embedded[u as usize] {
            embedded[v as usize] = true;
            Insert::Dangling {
                out: 2 * e as u32,
                in_: 2 * e as u32 + 1,
                at: u,
            }
        } else {
            embedded[u as usize] = true;
            Insert::Dangling {
                out: 2 * e as u32 + 1,
                in_: 2 * e as u32,
                at: v,
            }
        });
    }

    // Initial map: the first edge alone bounds a single two-dart face.
    let faces = vec![vec![0u32, 1u32]];
    extend_embedding(&order, 0, &faces, &head, nodes)
}

/// A corner of vertex `x` in a face walk is a position whose dart heads
/// into `x`; the walk re-departs from `x` at the next position.
fn corners(walk: &[u32], head: &[u32], x: u32) -> Vec<usize> {
    (0..walk.len())
        .filter(|&i| head[walk[i] as usize] == x)
        .collect()
}

/// Cyclic inclusive slice `walk[from ..= to]`.
fn cyclic_slice(walk: &[u32], from: usize, to: usize) -> Vec<u32> {
    let mut out = Vec::new();
    let mut i = from;
    loop {
        out.push(walk[i]);
        if i == to {
            return out;
        }
        i = (i + 1) % walk.len();
    }
}

fn extend_embedding(
    order: &[Insert],
    step: usize,
    faces: &[Vec<u32>],
    head: &[u32],
    nodes: &mut u64,
) -> Result<bool, MinorError> {
    *nodes += 1;
    if *nodes > EMBED_NODE_BUDGET {
        return Err(MinorError::SearchBudgetExceeded {
            what: "embedding-search nodes",
            size: *nodes as usize,
            guard: EMBED_NODE_BUDGET as usize,
        });
    }
    let Some(insert) = order.get(step) else {
        return Ok(true);
    };
    match insert {
        Insert::Dangling { out, in_, at } => {
            // The new vertex dangles inside any face at any corner of `at`;
            // the face keeps its identity, two darts longer.
            for (fi, walk) in faces.iter().enumerate() {
                for pos in corners(walk, head, *at) {
                    let mut new_walk = Vec::with_capacity(walk.len() + 2);
                    new_walk.extend_from_slice(&walk[..=pos]);
                    new_walk.push(*out);
                    new_walk.push(*in_);
                    new_walk.extend_from_slice(&walk[pos + 1..]);
                    let mut next = faces.to_vec();
                    next[fi] = new_walk;
                    if extend_embedding(order, step + 1, &next, head, nodes)? {
                        return Ok(true);
                    }
                }
            }
        }
        Insert::Chord { d_uv, d_vu, u, v } => {
            // The chord splits one face showing corners of both endpoints.
            for (fi, walk) in faces.iter().enumerate() {
                let cu = corners(walk, head, *u);
                if cu.is_empty() {
                    continue;
                }
                let cv = corners(walk, head, *v);
                for &i in &cu {
                    for &j in &cv {
                        let mut face_a = vec![*d_uv];
                        face_a.extend(cyclic_slice(walk, (j + 1) % walk.len(), i));
                        let mut face_b = vec![*d_vu];
                        face_b.extend(cyclic_slice(walk, (i + 1) % walk.len(), j));
                        let mut next = faces.to_vec();
                        next[fi] = face_a;
                        next.push(face_b);
                        if extend_embedding(order, step + 1, &next, head, nodes)? {
                            return Ok(true);
                        }
                    }
                }
            }
        }
    }
    Ok(false)
}
