//! Structural report on a parity-check matrix.

use std::fmt::Write as _;

use ldpc_core::codebuilder::ParityCheck;
use ldpc_core::graph::{
    eight_cycle_sharing_violation, enumerate_cycles, generate_patterns, girth, small_codeword, Girth, GraphError,
    PatternSearch, TannerGraph,
};
use serde::Serialize;

use crate::config::AnalyzeConfig;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternHit {
    pub a: usize,
    pub b: usize,
    pub girth: u32,
    /// Index within the generated family.
    pub index: usize,
    /// Variables of one occurrence, if any.
    pub witness: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub n: usize,
    pub m: usize,
    pub rank: usize,
    pub dimension: usize,
    /// `None` for an acyclic graph.
    pub girth: Option<u32>,
    pub cycles: Vec<(usize, usize)>,
    pub patterns: Vec<PatternHit>,
    /// `None` when not requested.
    pub eight_cycle_sharing_ok: Option<bool>,
    /// `None` when not requested or when the girth is below 6.
    pub min_distance_at_least_10: Option<bool>,
}

pub fn analyze(h: &ParityCheck, cfg: &AnalyzeConfig) -> Result<Report, GraphError> {
    let g = TannerGraph::from_parity(h);
    let gi = girth(&g);
    let mut cycles = Vec::new();
    for &len in &cfg.cycles {
        cycles.push((len, enumerate_cycles(&g, len)?.len()));
    }
    let mut patterns = Vec::new();
    for &[a, b, pg] in &cfg.patterns {
        for (index, p) in generate_patterns(a as usize, b as usize, pg).iter().enumerate() {
            patterns.push(PatternHit {
                a: a as usize,
                b: b as usize,
                girth: pg,
                index,
                witness: PatternSearch::new(p).find(&g),
            });
        }
    }
    let rank = h.gf2_rank();
    Ok(Report {
        n: h.cols(),
        m: h.rows(),
        rank,
        dimension: h.cols() - rank,
        girth: match gi {
            Girth::Finite(x) => Some(x),
            Girth::Infinite => None,
        },
        cycles,
        patterns,
        eight_cycle_sharing_ok: cfg.eight_cycle_sharing.then(|| eight_cycle_sharing_violation(&g).is_none()),
        min_distance_at_least_10: (cfg.min_distance_10 && gi.at_least(6)).then(|| small_codeword(&g, 8).is_none()),
    })
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let yn = |b: Option<bool>| match b {
            Some(true) => "yes",
            Some(false) => "no",
            None => "not checked",
        };
        writeln!(s, "n {}  m {}  rank {}  dimension {}", self.n, self.m, self.rank, self.dimension).unwrap();
        match self.girth {
            Some(g) => writeln!(s, "girth {g}").unwrap(),
            None => writeln!(s, "girth INFINITY").unwrap(),
        }
        for (len, count) in &self.cycles {
            writeln!(s, "cycles of length {len}: {count}").unwrap();
        }
        for p in &self.patterns {
            match &p.witness {
                Some(w) => writeln!(s, "pattern ({},{}) girth>={} #{}: present at {:?}", p.a, p.b, p.girth, p.index + 1, w),
                None => writeln!(s, "pattern ({},{}) girth>={} #{}: absent", p.a, p.b, p.girth, p.index + 1),
            }
            .unwrap();
        }
        writeln!(s, "eight-cycle sharing: {}", yn(self.eight_cycle_sharing_ok)).unwrap();
        writeln!(s, "minimum distance >= 10: {}", yn(self.min_distance_at_least_10)).unwrap();
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_report() {
        let r = analyze(&ParityCheck::identity(7), &AnalyzeConfig::default()).unwrap();
        assert_eq!((r.girth, r.rank, r.dimension), (None, 7, 0));
        assert!(r.to_text().contains("girth INFINITY"));
        assert!(r.patterns.iter().all(|p| p.witness.is_none()));
    }

    #[test]
    fn bad_cycle_length() {
        let cfg = AnalyzeConfig { cycles: vec![5], ..AnalyzeConfig::default() };
        assert!(analyze(&ParityCheck::identity(2), &cfg).is_err());
    }
}
