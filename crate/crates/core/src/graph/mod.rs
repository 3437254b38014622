//! Tanner-graph analysis: girth, cycle enumeration, trapping-set patterns
//! and their occurrence search, eight-cycle sharing, and a certificate for
//! minimum distance at least 10.

mod codeword;
mod cycles;
mod pattern;
mod search;

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::codebuilder::ParityCheck;

pub use codeword::{min_distance_at_least_10, small_codeword, small_codeword_through};
pub use cycles::{
    cycles_through, eight_cycle_sharing_ok, eight_cycle_sharing_violation,
    eight_cycle_sharing_violation_from, enumerate_cycles, Cycle, SharingViolation,
};
pub use pattern::{generate_patterns, PatternError, TrappingSetPattern, COLUMN_WEIGHT};
pub use search::{find_pattern, find_pattern_through, PatternSearch};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("girth {0} is below 6; the codeword certificate needs girth at least 6")]
    GirthTooSmall(Girth),
    #[error("cycle length {0} is not an even number in 4..=12")]
    BadCycleLength(usize),
}

/// Length of the shortest cycle; forests have infinite girth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(u32),
    Infinite,
}

impl Girth {
    pub fn at_least(self, len: u32) -> bool {
        match self {
            Girth::Finite(g) => g >= len,
            Girth::Infinite => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

/// Bipartite graph of variable nodes (columns of H) and check nodes (rows).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TannerGraph {
    var_adj: Vec<Vec<u32>>,
    chk_adj: Vec<Vec<u32>>,
}

impl TannerGraph {
    pub fn new(vars: usize, checks: usize) -> Self {
        TannerGraph { var_adj: vec![Vec::new(); vars], chk_adj: vec![Vec::new(); checks] }
    }

    pub fn from_parity(h: &ParityCheck) -> Self {
        let var_adj: Vec<Vec<u32>> = h.columns().to_vec();
        let mut chk_adj = vec![Vec::new(); h.rows()];
        for (v, rs) in var_adj.iter().enumerate() {
            for &c in rs {
                chk_adj[c as usize].push(v as u32);
            }
        }
        TannerGraph { var_adj, chk_adj }
    }

    pub fn to_parity(&self) -> ParityCheck {
        ParityCheck::from_columns(self.chk_adj.len(), self.var_adj.clone()).expect("simple graph")
    }

    /// Builds a graph from per-check variable lists.
    pub fn from_check_lists(vars: usize, checks: &[Vec<u32>]) -> Self {
        let mut g = TannerGraph::new(vars, checks.len());
        for (c, vs) in checks.iter().enumerate() {
            for &v in vs {
                g.add_edge(v, c as u32);
            }
        }
        g
    }

    pub fn num_vars(&self) -> usize {
        self.var_adj.len()
    }

    pub fn num_checks(&self) -> usize {
        self.chk_adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.var_adj.iter().map(Vec::len).sum()
    }

    pub fn var_checks(&self, v: u32) -> &[u32] {
        &self.var_adj[v as usize]
    }

    pub fn check_vars(&self, c: u32) -> &[u32] {
        &self.chk_adj[c as usize]
    }

    pub fn max_var_degree(&self) -> usize {
        self.var_adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, v: u32, c: u32) -> bool {
        self.var_adj[v as usize].contains(&c)
    }

    pub fn add_edge(&mut self, v: u32, c: u32) {
        debug_assert!(!self.has_edge(v, c));
        self.var_adj[v as usize].push(c);
        self.chk_adj[c as usize].push(v);
    }

    pub fn remove_edge(&mut self, v: u32, c: u32) {
        let vs = &mut self.var_adj[v as usize];
        if let Some(k) = vs.iter().position(|&x| x == c) {
            vs.swap_remove(k);
        }
        let cs = &mut self.chk_adj[c as usize];
        if let Some(k) = cs.iter().position(|&x| x == v) {
            cs.swap_remove(k);
        }
    }

    /// Appends `count` isolated variable nodes, returning the first index.
    pub fn add_vars(&mut self, count: usize) -> u32 {
        let first = self.var_adj.len() as u32;
        self.var_adj.resize(self.var_adj.len() + count, Vec::new());
        first
    }

    /// Drops variable nodes with index ≥ `n` together with their edges.
    pub fn truncate_vars(&mut self, n: usize) {
        for v in n..self.var_adj.len() {
            for &c in &self.var_adj[v] {
                self.chk_adj[c as usize].retain(|&x| (x as usize) < n);
            }
        }
        self.var_adj.truncate(n);
    }

    /// Adjacency lists with every list sorted; two graphs with equal edge
    /// sets compare equal after this.
    pub fn normalized(&self) -> TannerGraph {
        let mut g = self.clone();
        for l in g.var_adj.iter_mut().chain(g.chk_adj.iter_mut()) {
            l.sort_unstable();
        }
        g
    }

    /// Variables sharing at least one check with `v`, excluding `v`.
    pub fn var_neighbors(&self, v: u32) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .var_checks(v)
            .iter()
            .flat_map(|&c| self.check_vars(c).iter().copied())
            .filter(|&u| u != v)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Node ids: variables first, then checks.
    fn node_neighbors(&self, node: usize) -> &[u32] {
        let n = self.var_adj.len();
        if node < n {
            &self.var_adj[node]
        } else {
            &self.chk_adj[node - n]
        }
    }

    fn node_offset(&self, node: usize) -> usize {
        if node < self.var_adj.len() {
            self.var_adj.len()
        } else {
            0
        }
    }
}

/// Girth by breadth-first search from every check node.
pub fn girth(g: &TannerGraph) -> Girth {
    let n = g.num_vars();
    let total = n + g.num_checks();
    let mut dist = vec![u32::MAX; total];
    let mut parent = vec![usize::MAX; total];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    let mut best = u32::MAX;
    for root in n..total {
        if best == 4 {
            break;
        }
        for &t in &touched {
            dist[t] = u32::MAX;
        }
        touched.clear();
        queue.clear();
        dist[root] = 0;
        touched.push(root);
        queue.push_back(root);
        'bfs: while let Some(x) = queue.pop_front() {
            if 2 * dist[x] + 2 >= best {
                break;
            }
            let off = g.node_offset(x);
            for &y in g.node_neighbors(x) {
                let y = y as usize + off;
                if dist[y] == u32::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    touched.push(y);
                    queue.push_back(y);
                } else if parent[x] != y {
                    best = best.min(dist[x] + dist[y] + 1);
                    if best <= 2 * dist[x] + 2 {
                        break 'bfs;
                    }
                }
            }
        }
    }
    if best == u32::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

/// Length of the shortest cycle through variable `root`, looking only at
/// cycles of length at most `max_len`.
pub fn shortest_cycle_through(g: &TannerGraph, root: u32, max_len: u32) -> Option<u32> {
    let n = g.num_vars();
    let total = n + g.num_checks();
    // (depth, branch) per node, sparse via a map of touched nodes
    let mut state: alloc::collections::BTreeMap<usize, (u32, usize)> = Default::default();
    let root = root as usize;
    state.insert(root, (0, usize::MAX));
    let mut frontier = vec![root];
    let mut depth = 0u32;
    while !frontier.is_empty() && 2 * depth + 2 <= max_len {
        let mut next = Vec::new();
        for &x in &frontier {
            let (_, bx) = state[&x];
            let off = g.node_offset(x);
            for &y in g.node_neighbors(x) {
                let y = y as usize + off;
                debug_assert!(y < total);
                let branch = if x == root { y } else { bx };
                match state.get(&y) {
                    None => {
                        state.insert(y, (depth + 1, branch));
                        next.push(y);
                    }
                    Some(&(dy, by)) => {
                        if y != root && by != branch && dy >= depth {
                            return Some(depth + dy + 1);
                        }
                    }
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    None
}
