use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{GraphError, TannerGraph};

/// A simple cycle, stored as alternating variables and checks starting at
/// its smallest variable: vars[0] – checks[0] – vars[1] – … – checks[k−1] –
/// vars[0], oriented so that checks[0] < checks[k−1].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    pub vars: Vec<u32>,
    pub checks: Vec<u32>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        2 * self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn var_set(&self) -> Vec<u32> {
        let mut v = self.vars.clone();
        v.sort_unstable();
        v
    }

    fn canonical(vars: &[u32], checks: &[u32]) -> Cycle {
        let k = vars.len();
        let start = (0..k).min_by_key(|&i| vars[i]).unwrap();
        // forward: v[s], c[s], v[s+1], ...; backward: v[s], c[s-1], v[s-1], ...
        let fwd_vars: Vec<u32> = (0..k).map(|i| vars[(start + i) % k]).collect();
        let fwd_checks: Vec<u32> = (0..k).map(|i| checks[(start + i) % k]).collect();
        if fwd_checks[0] < fwd_checks[k - 1] {
            return Cycle { vars: fwd_vars, checks: fwd_checks };
        }
        let bwd_vars: Vec<u32> = (0..k).map(|i| vars[(start + k - i) % k]).collect();
        let bwd_checks: Vec<u32> = (0..k).map(|i| checks[(start + 2 * k - 1 - i) % k]).collect();
        Cycle { vars: bwd_vars, checks: bwd_checks }
    }
}

fn check_len(len: usize) -> Result<(), GraphError> {
    if len % 2 != 0 || !(4..=12).contains(&len) {
        return Err(GraphError::BadCycleLength(len));
    }
    Ok(())
}

struct Walker<'g> {
    g: &'g TannerGraph,
    half: usize,
    root: u32,
    min_var: u32,
    vars: Vec<u32>,
    checks: Vec<u32>,
    out: Vec<Cycle>,
}

impl Walker<'_> {
    fn extend(&mut self) {
        let v = *self.vars.last().unwrap();
        let g = self.g;
        for &c in g.var_checks(v) {
            if self.checks.contains(&c) {
                continue;
            }
            if self.vars.len() == self.half {
                // closing check must touch the root; orientation dedup
                if self.half >= 2 && c > self.checks[0] && g.check_vars(c).contains(&self.root) {
                    self.checks.push(c);
                    self.out.push(Cycle::canonical(&self.vars, &self.checks));
                    self.checks.pop();
                }
                continue;
            }
            self.checks.push(c);
            for &u in g.check_vars(c) {
                if u == v || u < self.min_var || self.vars.contains(&u) {
                    continue;
                }
                self.vars.push(u);
                self.extend();
                self.vars.pop();
            }
            self.checks.pop();
        }
    }
}

fn walk(g: &TannerGraph, root: u32, len: usize, min_var: u32) -> Vec<Cycle> {
    let mut w = Walker {
        g,
        half: len / 2,
        root,
        min_var,
        vars: alloc::vec![root],
        checks: Vec::new(),
        out: Vec::new(),
    };
    w.extend();
    w.out
}

/// Every simple cycle of exactly `len` edges, each reported once, sorted.
pub fn enumerate_cycles(g: &TannerGraph, len: usize) -> Result<Vec<Cycle>, GraphError> {
    check_len(len)?;
    let mut out = Vec::new();
    for v in 0..g.num_vars() as u32 {
        out.extend(walk(g, v, len, v));
    }
    out.sort();
    Ok(out)
}

/// Every simple cycle of exactly `len` edges through variable `v`, sorted.
pub fn cycles_through(g: &TannerGraph, v: u32, len: usize) -> Result<Vec<Cycle>, GraphError> {
    check_len(len)?;
    let mut out = walk(g, v, len, 0);
    out.sort();
    out.dedup();
    Ok(out)
}

/// An eight-cycle that shares at least two variables with more than one other
/// eight-cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharingViolation {
    pub cycle: Cycle,
    pub partners: Vec<Cycle>,
}

/// Lazily indexes eight-cycles by the variables they pass through.
struct CycleIndex<'g> {
    g: &'g TannerGraph,
    ids: BTreeMap<Cycle, usize>,
    cycles: Vec<Cycle>,
    by_var: BTreeMap<u32, Vec<usize>>,
}

impl<'g> CycleIndex<'g> {
    fn new(g: &'g TannerGraph) -> Self {
        CycleIndex { g, ids: BTreeMap::new(), cycles: Vec::new(), by_var: BTreeMap::new() }
    }

    fn intern(&mut self, c: Cycle) -> usize {
        if let Some(&id) = self.ids.get(&c) {
            return id;
        }
        let id = self.cycles.len();
        self.ids.insert(c.clone(), id);
        self.cycles.push(c);
        id
    }

    fn through(&mut self, v: u32) -> Vec<usize> {
        if let Some(ids) = self.by_var.get(&v) {
            return ids.clone();
        }
        let found = walk(self.g, v, 8, 0);
        let mut ids: Vec<usize> = found.into_iter().map(|c| self.intern(c)).collect();
        ids.sort_unstable();
        ids.dedup();
        self.by_var.insert(v, ids.clone());
        ids
    }

    fn partners(&mut self, id: usize) -> Vec<usize> {
        let vars = self.cycles[id].vars.clone();
        let mut cand = BTreeSet::new();
        for &v in &vars {
            cand.extend(self.through(v));
        }
        cand.into_iter()
            .filter(|&o| {
                o != id && self.cycles[o].vars.iter().filter(|u| vars.contains(u)).count() >= 2
            })
            .collect()
    }
}

/// Checks only eight-cycles through the given root variables (and, for each
/// such cycle, its partners). Covers the whole graph when every cycle passes
/// through some root up to an automorphism.
pub fn eight_cycle_sharing_violation_from(g: &TannerGraph, roots: &[u32]) -> Option<SharingViolation> {
    let mut index = CycleIndex::new(g);
    let mut done = BTreeSet::new();
    for &r in roots {
        for id in index.through(r) {
            let partners = index.partners(id);
            let mut queue = alloc::vec![(id, partners.clone())];
            queue.extend(partners.iter().map(|&p| (p, Vec::new())));
            for (c, mut ps) in queue {
                if !done.insert(c) {
                    continue;
                }
                if c != id {
                    ps = index.partners(c);
                }
                if ps.len() > 1 {
                    return Some(SharingViolation {
                        cycle: index.cycles[c].clone(),
                        partners: ps.iter().map(|&p| index.cycles[p].clone()).collect(),
                    });
                }
            }
        }
    }
    None
}

pub fn eight_cycle_sharing_violation(g: &TannerGraph) -> Option<SharingViolation> {
    let roots: Vec<u32> = (0..g.num_vars() as u32).collect();
    eight_cycle_sharing_violation_from(g, &roots)
}

/// True iff every eight-cycle shares two or more variables with at most one
/// other eight-cycle.
pub fn eight_cycle_sharing_ok(g: &TannerGraph) -> bool {
    eight_cycle_sharing_violation(g).is_none()
}
