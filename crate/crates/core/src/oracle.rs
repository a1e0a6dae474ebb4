//! Brute-force ground truth for small grids.
//!
//! Enumerates every s,t Hamiltonian path by backtracking, counts bends
//! from the raw vertex sequence without going through the decomposition
//! code, and builds the graph whose nodes are the simple paths and whose
//! edges are single square-switches.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use crate::analysis::is_simple;
use crate::error::{Error, Result};
use crate::grid::{GridDims, HamPath, Move, Vertex};
use crate::reconfig::{reconfig_canonical_to_canonical, reconfig_to_canonical};
use crate::switching::all_switches;

/// Largest grid, in vertices, enumerated without an explicit override.
pub const DEFAULT_CAP: usize = 36;

fn check_cap(dims: GridDims, cap: usize) -> Result<()> {
    if dims.size() > cap {
        return Err(Error::CapExceeded {
            vertices: dims.size(),
            cap,
        });
    }
    Ok(())
}

struct Search {
    dims: GridDims,
    seen: Vec<bool>,
    moves: Vec<Move>,
    out: Vec<String>,
}

impl Search {
    fn free_neighbors(&self, v: Vertex) -> usize {
        self.dims
            .neighbors(v)
            .filter(|&w| !self.seen[self.dims.index(w)])
            .count()
    }

    fn go(&mut self, cur: Vertex, visited: usize) {
        let dims = self.dims;
        let t = dims.t();
        if visited == dims.size() {
            if cur == t {
                self.out
                    .push(self.moves.iter().map(|m| m.letter()).collect());
            }
            return;
        }
        if cur == t {
            return;
        }
        // A free neighbour with one other free neighbour must come next; one
        // with none is stranded.
        let mut forced = None;
        for w in dims.neighbors(cur) {
            if self.seen[dims.index(w)] || w == t {
                continue;
            }
            match self.free_neighbors(w) {
                0 => return,
                1 => {
                    if forced.is_some() {
                        return;
                    }
                    forced = Some(w);
                }
                _ => {}
            }
        }
        for mv in Move::ALL {
            let (dx, dy) = mv.delta();
            let Some(w) = dims.offset(cur, dx, dy) else {
                continue;
            };
            if self.seen[dims.index(w)] || forced.is_some_and(|f| f != w) {
                continue;
            }
            self.seen[dims.index(w)] = true;
            self.moves.push(mv);
            self.go(w, visited + 1);
            self.moves.pop();
            self.seen[dims.index(w)] = false;
        }
    }
}

/// Move strings of all s,t Hamiltonian paths, in lexicographic order,
/// by plain backtracking without any parity shortcut.
pub fn enumerate_moves_raw(dims: GridDims) -> Vec<String> {
    let mut search = Search {
        dims,
        seen: vec![false; dims.size()],
        moves: Vec::with_capacity(dims.size()),
        out: Vec::new(),
    };
    search.seen[0] = true;
    search.go(dims.s(), 1);
    search.out
}

/// All s,t Hamiltonian paths in lexicographic move-string order.
pub fn enumerate_st_hamiltonian(dims: GridDims) -> Result<Vec<HamPath>> {
    enumerate_st_hamiltonian_capped(dims, DEFAULT_CAP)
}

pub fn enumerate_st_hamiltonian_capped(dims: GridDims, cap: usize) -> Result<Vec<HamPath>> {
    check_cap(dims, cap)?;
    // Colour counting rules out both-even grids; skip the futile search.
    if !dims.admits_hamiltonian_path() {
        return Ok(Vec::new());
    }
    enumerate_moves_raw(dims)
        .iter()
        .map(|m| HamPath::from_moves(dims, m))
        .collect()
}

pub fn enumerate_simple(dims: GridDims) -> Result<Vec<HamPath>> {
    enumerate_simple_capped(dims, DEFAULT_CAP)
}

/// Simple paths, after checking that the decomposition-based predicate
/// and [`bend_count_simple`] agree on every Hamiltonian path.
pub fn enumerate_simple_capped(dims: GridDims, cap: usize) -> Result<Vec<HamPath>> {
    let all = enumerate_st_hamiltonian_capped(dims, cap)?;
    let mut out = Vec::new();
    for p in all {
        let a = is_simple(&p);
        let b = bend_count_simple(dims, p.order());
        if a != b {
            return Err(Error::StructureViolation(format!(
                "simplicity predicates disagree on {p}: decomposition {a}, bend count {b}"
            )));
        }
        if a {
            out.push(p);
        }
    }
    Ok(out)
}

/// Independent simplicity test on a raw vertex sequence: every stretch of
/// internal vertices turns exactly as often as its boundary endpoints
/// require (0 for opposite sides, 1 for adjacent, 2 for the same side).
pub fn bend_count_simple(dims: GridDims, seq: &[Vertex]) -> bool {
    let (m, n) = (dims.rows(), dims.cols());
    if m <= 2 || n <= 2 {
        return true;
    }
    let boundary = |v: Vertex| v.x == 0 || v.y == 0 || v.x == n - 1 || v.y == m - 1;
    // Side code: 0 north, 1 east, 2 south, 3 west.
    let side = |v: Vertex| -> u8 {
        if v.y == 0 {
            0
        } else if v.x == n - 1 {
            1
        } else if v.y == m - 1 {
            2
        } else {
            3
        }
    };
    let step = |a: Vertex, b: Vertex| (b.x as isize - a.x as isize, b.y as isize - a.y as isize);
    let mut i = 0;
    while i + 1 < seq.len() {
        if !(boundary(seq[i]) && !boundary(seq[i + 1])) {
            i += 1;
            continue;
        }
        let mut j = i + 1;
        while !boundary(seq[j]) {
            j += 1;
        }
        let turns = (i + 1..j)
            .filter(|&k| step(seq[k - 1], seq[k]) != step(seq[k], seq[k + 1]))
            .count();
        let (a, b) = (side(seq[i]), side(seq[j]));
        let need = if a == b {
            2
        } else if (a + 2) % 4 == b {
            0
        } else {
            1
        };
        if turns != need {
            return false;
        }
        i = j;
    }
    true
}

/// Simple paths joined by single square-switches.
#[derive(Clone, Debug)]
pub struct HPGraph {
    pub dims: GridDims,
    pub nodes: Vec<HamPath>,
    /// Move strings, parallel to `nodes`.
    pub keys: Vec<String>,
    /// Undirected edges `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub adj: Vec<Vec<usize>>,
    /// Ordered pairs `(P, P')` where switching a square of `P` gives `P'`.
    pub arcs: usize,
    /// Arcs whose reverse is not itself a square-switch of `P'`.
    pub one_way_arcs: usize,
}

impl HPGraph {
    pub fn index_of(&self, p: &HamPath) -> Option<usize> {
        self.keys.binary_search(&p.to_moves()).ok()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let e = (a.min(b), a.max(b));
        self.edges.binary_search(&e).is_ok()
    }

    /// BFS distances from `src`.
    pub fn distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.nodes.len()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// One line per edge, both endpoints as move strings.
    pub fn edge_list(&self) -> String {
        self.edges
            .iter()
            .map(|&(a, b)| format!("{} {}\n", self.keys[a], self.keys[b]))
            .collect()
    }
}

pub fn build_hp_graph(dims: GridDims) -> Result<HPGraph> {
    build_hp_graph_capped(dims, DEFAULT_CAP)
}

pub fn build_hp_graph_capped(dims: GridDims, cap: usize) -> Result<HPGraph> {
    let nodes = enumerate_simple_capped(dims, cap)?;
    let keys: Vec<String> = nodes.iter().map(HamPath::to_moves).collect();
    let index: HashMap<&HamPath, usize> = nodes.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let out_arcs: Vec<Vec<usize>> = nodes
        .par_iter()
        .map(|p| {
            let mut targets: Vec<usize> = all_switches(p)
                .into_iter()
                .filter_map(|(_, q)| index.get(&q).copied())
                .collect();
            targets.sort_unstable();
            targets.dedup();
            targets
        })
        .collect();
    let arcs = out_arcs.iter().map(Vec::len).sum();
    let mut one_way_arcs = 0;
    let mut edges = Vec::new();
    for (i, targets) in out_arcs.iter().enumerate() {
        for &j in targets {
            if out_arcs[j].binary_search(&i).is_err() {
                one_way_arcs += 1;
            }
            edges.push((i.min(j), i.max(j)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let mut adj = vec![Vec::new(); nodes.len()];
    for &(a, b) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    Ok(HPGraph {
        dims,
        nodes,
        keys,
        edges,
        adj,
        arcs,
        one_way_arcs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphStats {
    pub nodes: usize,
    pub edges: usize,
    pub components: usize,
    /// Exact diameter; `None` when the graph is disconnected.
    pub diameter: Option<usize>,
    /// Longest trace the reconfiguration algorithm produces over ordered
    /// pairs of distinct nodes.
    pub max_trace_len: usize,
    /// `degree_histogram[d]` nodes have degree `d`.
    pub degree_histogram: Vec<usize>,
}

pub fn graph_stats(g: &HPGraph) -> Result<GraphStats> {
    let n = g.nodes.len();
    let mut comp = vec![usize::MAX; n];
    let mut components = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        for (v, d) in g.distances(s).into_iter().enumerate() {
            if d.is_some() {
                comp[v] = components;
            }
        }
        components += 1;
    }
    let diameter = if components <= 1 {
        Some(
            (0..n)
                .into_par_iter()
                .map(|s| g.distances(s).into_iter().flatten().max().unwrap_or(0))
                .max()
                .unwrap_or(0),
        )
    } else {
        None
    };
    let mut degree_histogram = Vec::new();
    for a in &g.adj {
        if degree_histogram.len() <= a.len() {
            degree_histogram.resize(a.len() + 1, 0);
        }
        degree_histogram[a.len()] += 1;
    }
    Ok(GraphStats {
        nodes: n,
        edges: g.edges.len(),
        components,
        diameter,
        max_trace_len: max_trace_len(&g.nodes)?,
        degree_histogram,
    })
}

/// Longest `reconfigure` trace over ordered pairs of distinct paths. A
/// trace is the run from the source to its canonical path, the canonical
/// sweep, and the reversed run of the target, so the pair maximum follows
/// from per-path run lengths.
pub fn max_trace_len(paths: &[HamPath]) -> Result<usize> {
    let runs = paths
        .par_iter()
        .map(|p| reconfig_to_canonical(p).map(|t| (t.switch_count(), t.final_path)))
        .collect::<Result<Vec<_>>>()?;
    let mut canon: Vec<HamPath> = runs.iter().map(|(_, c)| c.clone()).collect();
    canon.sort_by_key(HamPath::to_moves);
    canon.dedup();
    let mut sweep = HashMap::new();
    for a in &canon {
        for b in &canon {
            sweep.insert(
                (a.to_moves(), b.to_moves()),
                reconfig_canonical_to_canonical(a, b)?.switch_count(),
            );
        }
    }
    let keys: Vec<String> = runs.iter().map(|(_, c)| c.to_moves()).collect();
    let mut best = 0;
    for i in 0..runs.len() {
        for j in 0..runs.len() {
            if i != j {
                let len = runs[i].0 + sweep[&(keys[i].clone(), keys[j].clone())] + runs[j].0;
                best = best.max(len);
            }
        }
    }
    Ok(best)
}
