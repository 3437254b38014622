//! Induced-subgraph search for trapping-set patterns.
//!
//! Pattern vertices are mapped to graph variables one at a time in
//! breadth-first order, each new vertex reached through a pattern check
//! whose graph image is already fixed. Pattern checks map injectively to
//! graph checks, and a variable's checks are matched one-to-one with its
//! pattern vertex's checks, which makes the final embedding induced: every
//! check touching the chosen variables is accounted for, with exactly the
//! pattern's variables on it.

use alloc::vec;
use alloc::vec::Vec;

use super::{girth, Girth, TannerGraph, TrappingSetPattern};

const UNMAPPED: u32 = u32::MAX;

struct Plan {
    /// Pattern vertices in visiting order; `order[0]` is pinned to the root.
    order: Vec<usize>,
    /// For order[k], k ≥ 1: a pattern check shared with an earlier vertex.
    anchor: Vec<usize>,
}

fn plan(pat: &TrappingSetPattern, first: usize) -> Option<Plan> {
    let a = pat.a();
    let mut order = vec![first];
    let mut anchor = vec![usize::MAX];
    let mut placed = vec![false; a];
    placed[first] = true;
    // next vertex: most checks shared with placed vertices, so cycles close early
    while order.len() < a {
        let mut best: Option<(usize, usize, usize)> = None;
        for u in (0..a).filter(|&u| !placed[u]) {
            let mut links = 0;
            let mut via = usize::MAX;
            for (ci, c) in pat.checks().iter().enumerate() {
                if c.contains(&(u as u8)) && c.iter().any(|&w| placed[w as usize]) {
                    links += 1;
                    via = via.min(ci);
                }
            }
            if links > 0 && best.is_none_or(|(l, _, _)| links > l) {
                best = Some((links, u, via));
            }
        }
        let (_, u, via) = best?;
        placed[u] = true;
        order.push(u);
        anchor.push(via);
    }
    Some(Plan { order, anchor })
}

struct Matcher<'a> {
    g: &'a TannerGraph,
    pat: &'a TrappingSetPattern,
    /// checks of each pattern vertex
    vchecks: Vec<Vec<usize>>,
    var_map: Vec<u32>,
    check_map: Vec<u32>,
    plan: Plan,
}

impl Matcher<'_> {
    fn var_used(&self, y: u32) -> bool {
        self.var_map.contains(&y)
    }

    fn check_owner(&self, gc: u32) -> Option<usize> {
        self.check_map.iter().position(|&x| x == gc)
    }

    /// Tries to map pattern vertex `u` to graph variable `y`, then recurses.
    fn place(&mut self, step: usize, y: u32) -> bool {
        let u = self.plan.order[step];
        let g = self.g;
        let ychecks = g.var_checks(y);
        if ychecks.len() != self.vchecks[u].len() || self.var_used(y) {
            return false;
        }
        let mut free_graph: Vec<u32> = Vec::new();
        for &gc in ychecks {
            match self.check_owner(gc) {
                Some(pc) => {
                    if !self.pat.checks()[pc].contains(&(u as u8)) {
                        return false;
                    }
                }
                None => free_graph.push(gc),
            }
        }
        let mut free_pat: Vec<usize> = Vec::new();
        for &pc in &self.vchecks[u] {
            let gc = self.check_map[pc];
            if gc == UNMAPPED {
                free_pat.push(pc);
            } else if !ychecks.contains(&gc) {
                return false;
            }
        }
        if free_graph.len() != free_pat.len() {
            return false;
        }
        self.var_map[u] = y;
        if self.assign_free(step, &free_graph, &mut free_pat, 0) {
            return true;
        }
        self.var_map[u] = UNMAPPED;
        false
    }

    /// Enumerates bijections between the unmapped checks of the new variable
    /// and of its pattern vertex.
    fn assign_free(&mut self, step: usize, free_graph: &[u32], free_pat: &mut Vec<usize>, k: usize) -> bool {
        if k == free_graph.len() {
            return self.advance(step + 1);
        }
        let gc = free_graph[k];
        let gdeg = self.g.check_vars(gc).len();
        for idx in k..free_pat.len() {
            free_pat.swap(k, idx);
            let pc = free_pat[k];
            if self.pat.checks()[pc].len() <= gdeg {
                self.check_map[pc] = gc;
                if self.assign_free(step, free_graph, free_pat, k + 1) {
                    return true;
                }
                self.check_map[pc] = UNMAPPED;
            }
            free_pat.swap(k, idx);
        }
        false
    }

    fn advance(&mut self, step: usize) -> bool {
        if step == self.plan.order.len() {
            return true;
        }
        let gc = self.check_map[self.plan.anchor[step]];
        debug_assert_ne!(gc, UNMAPPED);
        let candidates: Vec<u32> = self.g.check_vars(gc).to_vec();
        candidates.into_iter().any(|y| self.place(step, y))
    }
}

/// A pattern with its vertex orbits and per-vertex checks precomputed, for
/// repeated searches.
#[derive(Debug, Clone)]
pub struct PatternSearch<'p> {
    pat: &'p TrappingSetPattern,
    reps: Vec<usize>,
    vchecks: Vec<Vec<usize>>,
}

impl<'p> PatternSearch<'p> {
    pub fn new(pat: &'p TrappingSetPattern) -> Self {
        let vchecks = (0..pat.a())
            .map(|v| (0..pat.checks().len()).filter(|&c| pat.checks()[c].contains(&(v as u8))).collect())
            .collect();
        PatternSearch { pat, reps: pat.orbit_representatives(), vchecks }
    }

    pub fn pattern(&self) -> &TrappingSetPattern {
        self.pat
    }

    /// An occurrence whose vertex set contains variable `root`, as graph
    /// variables indexed by pattern vertex.
    pub fn find_through(&self, g: &TannerGraph, root: u32) -> Option<Vec<u32>> {
        let pat = self.pat;
        for &first in &self.reps {
            if self.vchecks[first].len() != g.var_checks(root).len() {
                continue;
            }
            let plan = plan(pat, first)?;
            let mut m = Matcher {
                g,
                pat,
                vchecks: self.vchecks.clone(),
                var_map: vec![UNMAPPED; pat.a()],
                check_map: vec![UNMAPPED; pat.checks().len()],
                plan,
            };
            if m.place(0, root) {
                return Some(m.var_map);
            }
        }
        None
    }

    /// First occurrence anywhere, scanning roots in increasing order.
    pub fn find(&self, g: &TannerGraph) -> Option<Vec<u32>> {
        // an induced copy keeps its cycles
        if let Girth::Finite(pg) = self.pat.girth() {
            if girth(g) > Girth::Finite(pg) {
                return None;
            }
        }
        (0..g.num_vars() as u32).find_map(|v| self.find_through(g, v))
    }
}

pub fn find_pattern_through(g: &TannerGraph, pat: &TrappingSetPattern, root: u32) -> Option<Vec<u32>> {
    PatternSearch::new(pat).find_through(g, root)
}

pub fn find_pattern(g: &TannerGraph, pat: &TrappingSetPattern) -> Option<Vec<u32>> {
    PatternSearch::new(pat).find(g)
}
