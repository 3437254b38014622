//! Search for low-weight codewords: variable sets in which every check has
//! even degree.

use alloc::vec;
use alloc::vec::Vec;

use super::{girth, GraphError, TannerGraph};

struct EvenSetSearch<'g> {
    g: &'g TannerGraph,
    max_weight: usize,
    min_var: u32,
    dv: usize,
    parity: Vec<u8>,
    odd: Vec<u32>,
    set: Vec<u32>,
}

impl EvenSetSearch<'_> {
    fn toggle(&mut self, v: u32) {
        for &c in self.g.var_checks(v) {
            let p = &mut self.parity[c as usize];
            *p ^= 1;
            if *p == 1 {
                self.odd.push(c);
            } else {
                let k = self.odd.iter().position(|&x| x == c).unwrap();
                self.odd.swap_remove(k);
            }
        }
    }

    fn candidates(&self, c: u32) -> impl Iterator<Item = u32> + '_ {
        self.g
            .check_vars(c)
            .iter()
            .copied()
            .filter(move |&u| u >= self.min_var && !self.set.contains(&u))
    }

    fn run(&mut self) -> bool {
        if self.odd.is_empty() {
            return self.set.len() >= 2;
        }
        let left = self.max_weight - self.set.len();
        if self.odd.len() > self.dv * left {
            return false;
        }
        // resolve the odd check with the fewest candidates
        let mut best = (usize::MAX, 0u32);
        for &c in &self.odd {
            let n = self.candidates(c).count();
            if n < best.0 {
                best = (n, c);
            }
        }
        if best.0 == 0 {
            return false;
        }
        let cands: Vec<u32> = self.candidates(best.1).collect();
        for u in cands {
            self.set.push(u);
            self.toggle(u);
            if self.run() {
                return true;
            }
            self.toggle(u);
            self.set.pop();
        }
        false
    }
}

fn search(g: &TannerGraph, root: u32, max_weight: usize, min_var: u32) -> Option<Vec<u32>> {
    if g.var_checks(root).is_empty() || max_weight < 2 {
        return None;
    }
    let mut s = EvenSetSearch {
        g,
        max_weight,
        min_var,
        dv: g.max_var_degree(),
        parity: vec![0; g.num_checks()],
        odd: Vec::new(),
        set: vec![root],
    };
    s.toggle(root);
    if s.run() {
        let mut set = s.set;
        set.sort_unstable();
        Some(set)
    } else {
        None
    }
}

/// A nonzero codeword of weight at most `max_weight` containing variable
/// `root`, as its sorted support.
pub fn small_codeword_through(g: &TannerGraph, root: u32, max_weight: usize) -> Option<Vec<u32>> {
    search(g, root, max_weight, 0)
}

/// Any nonzero codeword of weight at most `max_weight`. Each root only looks
/// for supports whose smallest variable it is.
pub fn small_codeword(g: &TannerGraph, max_weight: usize) -> Option<Vec<u32>> {
    (0..g.num_vars() as u32).find_map(|v| search(g, v, max_weight, v))
}

/// Certifies minimum distance ≥ 10: no nonzero codeword of weight ≤ 8.
/// Requires girth ≥ 6.
pub fn min_distance_at_least_10(g: &TannerGraph) -> Result<bool, GraphError> {
    let gi = girth(g);
    if !gi.at_least(6) {
        return Err(GraphError::GirthTooSmall(gi));
    }
    Ok(small_codeword(g, 8).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_patterns;

    #[test]
    fn finds_planted_weight_six() {
        let k33 = generate_patterns(6, 0, 8).remove(0);
        let g = k33.tanner_graph();
        assert_eq!(small_codeword(&g, 8), Some(vec![0, 1, 2, 3, 4, 5]));
        assert_eq!(small_codeword(&g, 4), None);
        assert_eq!(min_distance_at_least_10(&g), Ok(false));
    }

    #[test]
    fn girth_four_is_rejected() {
        let g = TannerGraph::from_check_lists(2, &[vec![0, 1], vec![0, 1]]);
        assert!(matches!(min_distance_at_least_10(&g), Err(GraphError::GirthTooSmall(_))));
    }

    #[test]
    fn tree_has_no_codeword() {
        let g = TannerGraph::from_check_lists(3, &[vec![0, 1], vec![1, 2], vec![0], vec![2]]);
        assert_eq!(small_codeword(&g, 8), None);
        assert_eq!(min_distance_at_least_10(&g), Ok(true));
    }
}
