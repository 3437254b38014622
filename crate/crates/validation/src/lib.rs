//! Criterion reporting and brute-force oracles for the acceptance suite.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use ldpc_core::codebuilder::ParityCheck;
use ldpc_core::graph::{TannerGraph, TrappingSetPattern};
use rand::seq::index::sample;
use rand::Rng;

#[derive(Debug, Clone)]
pub struct Verdict {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Verdict {
    pub fn line(&self) -> String {
        format!(
            "criterion {}: {} [{}] {} ({:.1?})",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.elapsed
        )
    }
}

#[derive(Debug, Default)]
pub struct Suite {
    pub verdicts: Vec<Verdict>,
}

impl Suite {
    /// Runs `body`, which returns pass/fail and a detail string, and prints
    /// its verdict line at once.
    pub fn run(&mut self, id: u8, title: &'static str, body: impl FnOnce() -> (bool, String)) {
        let start = Instant::now();
        let (pass, detail) = body();
        let v = Verdict { id, title, pass, detail, elapsed: start.elapsed() };
        println!("{}", v.line());
        self.verdicts.push(v);
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn summary(&self) -> String {
        let failed: Vec<String> = self.verdicts.iter().filter(|v| !v.pass).map(|v| v.id.to_string()).collect();
        format!(
            "acceptance: {} of {} criteria passed{}",
            self.verdicts.len() - failed.len(),
            self.verdicts.len(),
            if failed.is_empty() { String::new() } else { format!("; failed: {}", failed.join(", ")) }
        )
    }
}

/// Two rows of the dense matrix sharing two or more columns.
pub fn dense_four_cycle(h: &ParityCheck) -> bool {
    let rows: Vec<Vec<bool>> = (0..h.rows()).map(|r| (0..h.cols()).map(|c| h.get(r, c)).collect()).collect();
    (0..rows.len()).any(|a| {
        (a + 1..rows.len()).any(|b| (0..h.cols()).filter(|&c| rows[a][c] && rows[b][c]).count() >= 2)
    })
}

/// Random graph where each variable joins `deg` distinct checks.
pub fn random_regular_vars<R: Rng>(n: usize, m: usize, deg: usize, rng: &mut R) -> TannerGraph {
    let mut g = TannerGraph::new(n, m);
    for v in 0..n as u32 {
        for c in sample(rng, m, deg) {
            g.add_edge(v, c as u32);
        }
    }
    g
}

/// Adds `pat` on fresh variables and checks; each pattern check is also
/// joined to `links` random old variables, which leaves the induced
/// subgraph of the new variables equal to the pattern.
pub fn plant<R: Rng>(g: &TannerGraph, pat: &TrappingSetPattern, links: usize, rng: &mut R) -> (TannerGraph, Vec<u32>) {
    let n0 = g.num_vars();
    let m0 = g.num_checks();
    let mut h = TannerGraph::new(n0 + pat.a(), m0 + pat.checks().len());
    for v in 0..n0 as u32 {
        for &c in g.var_checks(v) {
            h.add_edge(v, c);
        }
    }
    for (k, c) in pat.checks().iter().enumerate() {
        let check = (m0 + k) as u32;
        for &u in c {
            h.add_edge((n0 + u as usize) as u32, check);
        }
        if n0 > 0 {
            for v in sample(rng, n0, links.min(n0)) {
                h.add_edge(v as u32, check);
            }
        }
    }
    (h, (n0 as u32..(n0 + pat.a()) as u32).collect())
}

/// Induced pattern on a variable set.
pub fn induced(g: &TannerGraph, set: &[u32]) -> Option<TrappingSetPattern> {
    let mut checks = BTreeMap::<u32, Vec<u8>>::new();
    for (i, &v) in set.iter().enumerate() {
        for &c in g.var_checks(v) {
            checks.entry(c).or_default().push(i as u8);
        }
    }
    TrappingSetPattern::new(set.len(), checks.into_values().collect()).ok()
}

pub fn is_occurrence(g: &TannerGraph, set: &[u32], pat: &TrappingSetPattern) -> bool {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len() == pat.a() && induced(g, &s).is_some_and(|p| p.is_isomorphic(pat))
}

/// Every `a`-subset, as sorted variable lists, whose induced pattern is
/// isomorphic to one of `pats` (all of size `a`); indexed like `pats`.
pub fn subset_oracle(g: &TannerGraph, a: usize, pats: &[TrappingSetPattern]) -> Vec<Vec<Vec<u32>>> {
    let n = g.num_vars();
    let mut out = vec![Vec::new(); pats.len()];
    let mut cur: Vec<u32> = Vec::with_capacity(a);
    fn rec(
        g: &TannerGraph,
        start: usize,
        n: usize,
        a: usize,
        cur: &mut Vec<u32>,
        pats: &[TrappingSetPattern],
        out: &mut [Vec<Vec<u32>>],
    ) {
        if cur.len() == a {
            // cheap filter: pattern checks are the distinct checks touched
            let mut touched: Vec<u32> = cur.iter().flat_map(|&v| g.var_checks(v).iter().copied()).collect();
            touched.sort_unstable();
            touched.dedup();
            let candidates: Vec<usize> =
                (0..pats.len()).filter(|&k| pats[k].checks().len() == touched.len()).collect();
            if candidates.is_empty() {
                return;
            }
            if let Some(p) = induced(g, cur) {
                for k in candidates {
                    if p.is_isomorphic(&pats[k]) {
                        out[k].push(cur.clone());
                    }
                }
            }
            return;
        }
        for v in start..n {
            if n - v < a - cur.len() {
                break;
            }
            cur.push(v as u32);
            rec(g, v + 1, n, a, cur, pats, out);
            cur.pop();
        }
    }
    rec(g, 0, n, a, &mut cur, pats, &mut out);
    out
}

pub fn median(values: &mut [usize]) -> f64 {
    values.sort_unstable();
    let k = values.len();
    if k == 0 {
        return f64::NAN;
    }
    if k % 2 == 1 {
        values[k / 2] as f64
    } else {
        (values[k / 2 - 1] + values[k / 2]) as f64 / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ldpc_core::graph::generate_patterns;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn planted_set_is_an_occurrence() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = random_regular_vars(10, 12, 3, &mut rng);
        for pat in generate_patterns(5, 3, 8) {
            let (h, vars) = plant(&g, &pat, 2, &mut rng);
            assert!(is_occurrence(&h, &vars, &pat));
            let found = subset_oracle(&h, 5, std::slice::from_ref(&pat));
            assert!(found[0].contains(&vars));
        }
    }

    #[test]
    fn median_even_and_odd() {
        assert_eq!(median(&mut [3, 1, 2]), 2.0);
        assert_eq!(median(&mut [4, 1, 2, 3]), 2.5);
    }

    #[test]
    fn verdict_line() {
        let v = Verdict { id: 3, title: "t", pass: false, detail: "d".into(), elapsed: Duration::from_millis(5) };
        assert!(v.line().starts_with("criterion 3: FAIL [t] d"));
    }
}
