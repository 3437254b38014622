use ldpc_core::graph::{
    enumerate_cycles, generate_patterns, girth, small_codeword, Girth, PatternSearch, TannerGraph, TrappingSetPattern,
};
use proptest::prelude::*;
use proptest::strategy::ValueTree;

/// Column-weight-3 graph: each variable picks three distinct checks.
fn graph_strategy(n: usize, m: usize) -> impl Strategy<Value = TannerGraph> {
    prop::collection::vec(prop::sample::subsequence((0..m as u32).collect::<Vec<_>>(), 3), n).prop_map(move |cols| {
        let mut g = TannerGraph::new(n, m);
        for (v, cs) in cols.iter().enumerate() {
            for &c in cs {
                g.add_edge(v as u32, c);
            }
        }
        g
    })
}

fn subsets(n: usize, k: usize, f: &mut impl FnMut(&[u32])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v as u32);
            rec(v + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}

fn induced(g: &TannerGraph, set: &[u32]) -> TrappingSetPattern {
    let mut checks = std::collections::BTreeMap::<u32, Vec<u8>>::new();
    for (i, &v) in set.iter().enumerate() {
        for &c in g.var_checks(v) {
            checks.entry(c).or_default().push(i as u8);
        }
    }
    TrappingSetPattern::new(set.len(), checks.into_values().collect()).unwrap()
}

fn oracle_occurrences(g: &TannerGraph, pat: &TrappingSetPattern) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    subsets(g.num_vars(), pat.a(), &mut |s| {
        if induced(g, s).is_isomorphic(pat) {
            out.push(s.to_vec());
        }
    });
    out
}

/// Closed walks v0 c0 v1 … c_{k−1} with all nodes distinct, divided by the
/// 2k rotations and reflections of each cycle.
fn naive_cycle_count(g: &TannerGraph, len: usize) -> usize {
    let k = len / 2;
    fn walk(g: &TannerGraph, k: usize, vars: &mut Vec<u32>, checks: &mut Vec<u32>, count: &mut usize) {
        let v = *vars.last().unwrap();
        for &c in g.var_checks(v) {
            if checks.contains(&c) {
                continue;
            }
            if vars.len() == k {
                if g.check_vars(c).contains(&vars[0]) {
                    *count += 1;
                }
                continue;
            }
            checks.push(c);
            for &u in g.check_vars(c) {
                if !vars.contains(&u) {
                    vars.push(u);
                    walk(g, k, vars, checks, count);
                    vars.pop();
                }
            }
            checks.pop();
        }
    }
    let mut count = 0;
    for v in 0..g.num_vars() as u32 {
        walk(g, k, &mut vec![v], &mut Vec::new(), &mut count);
    }
    count / (2 * k)
}

fn relabel(g: &TannerGraph, vperm: &[u32], cperm: &[u32]) -> TannerGraph {
    let mut h = TannerGraph::new(g.num_vars(), g.num_checks());
    for v in 0..g.num_vars() as u32 {
        for &c in g.var_checks(v) {
            h.add_edge(vperm[v as usize], cperm[c as usize]);
        }
    }
    h
}

fn brute_small_codeword(g: &TannerGraph, max_weight: usize) -> bool {
    let masks: Vec<u128> = (0..g.num_vars() as u32)
        .map(|v| g.var_checks(v).iter().fold(0u128, |m, &c| m | 1 << c))
        .collect();
    let mut found = false;
    for w in 1..=max_weight.min(g.num_vars()) {
        subsets(g.num_vars(), w, &mut |s| {
            if !found && s.iter().fold(0u128, |m, &v| m ^ masks[v as usize]) == 0 {
                found = true;
            }
        });
    }
    found
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn search_agrees_with_subset_oracle(g in graph_strategy(12, 9), fam in 0usize..4) {
        let (a, b, gm) = [(5, 3, 6), (6, 0, 6), (4, 2, 6), (5, 3, 8)][fam];
        for pat in generate_patterns(a, b, gm) {
            let oracle = oracle_occurrences(&g, &pat);
            match PatternSearch::new(&pat).find(&g) {
                Some(vars) => {
                    let mut set = vars.clone();
                    set.sort_unstable();
                    prop_assert!(oracle.contains(&set), "false positive {:?}", vars);
                }
                None => prop_assert!(oracle.is_empty(), "missed {:?}", oracle[0]),
            }
        }
    }

    #[test]
    fn cycle_counts_match_naive_oracle(g in graph_strategy(10, 8)) {
        let mut shortest = Girth::Infinite;
        for len in [4, 6, 8] {
            let count = enumerate_cycles(&g, len).unwrap().len();
            prop_assert_eq!(count, naive_cycle_count(&g, len), "length {}", len);
            if count > 0 && shortest == Girth::Infinite {
                shortest = Girth::Finite(len as u32);
            }
        }
        if shortest != Girth::Infinite {
            prop_assert_eq!(girth(&g), shortest);
        } else {
            prop_assert!(girth(&g).at_least(10));
        }
    }

    #[test]
    fn cycle_counts_invariant_under_relabelling(
        g in graph_strategy(12, 9),
        vperm in Just((0..12u32).collect::<Vec<_>>()).prop_shuffle(),
        cperm in Just((0..9u32).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let h = relabel(&g, &vperm, &cperm);
        for len in [4, 6, 8] {
            prop_assert_eq!(enumerate_cycles(&g, len).unwrap().len(), enumerate_cycles(&h, len).unwrap().len());
        }
        prop_assert_eq!(girth(&g), girth(&h));
    }

    #[test]
    fn small_codeword_matches_brute_force(g in graph_strategy(14, 12)) {
        let found = small_codeword(&g, 8);
        prop_assert_eq!(found.is_some(), brute_small_codeword(&g, 8));
        if let Some(cw) = found {
            let mut parity = vec![0u8; g.num_checks()];
            for &v in &cw {
                for &c in g.var_checks(v) {
                    parity[c as usize] ^= 1;
                }
            }
            prop_assert!(parity.iter().all(|&p| p == 0) && !cw.is_empty() && cw.len() <= 8);
        }
    }
}

/// Plants `pat` on fresh variables inside a random background whose checks
/// never touch the planted ones.
fn planted(pat: &TrappingSetPattern, background: &TannerGraph) -> (TannerGraph, Vec<u32>) {
    let n0 = background.num_vars();
    let mut g = TannerGraph::new(n0 + pat.a(), background.num_checks() + pat.checks().len());
    for v in 0..n0 as u32 {
        for &c in background.var_checks(v) {
            g.add_edge(v, c);
        }
    }
    let base = background.num_checks() as u32;
    for (k, c) in pat.checks().iter().enumerate() {
        for &u in c {
            g.add_edge(n0 as u32 + u as u32, base + k as u32);
        }
    }
    (g, (n0 as u32..(n0 + pat.a()) as u32).collect())
}

#[test]
fn planted_patterns_are_recovered() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let bg = graph_strategy(8, 14).new_tree(&mut runner).unwrap().current();
    for (a, b, gm) in [(5, 3, 8), (5, 3, 6), (6, 0, 6), (8, 0, 6), (6, 4, 8)] {
        for pat in generate_patterns(a, b, gm) {
            let (g, vars) = planted(&pat, &bg);
            let oracle = oracle_occurrences(&g, &pat);
            assert!(oracle.contains(&vars), "oracle misses the plant");
            let mut got = PatternSearch::new(&pat).find(&g).expect("planted pattern found");
            got.sort_unstable();
            assert!(oracle.contains(&got));
        }
    }
}

#[test]
fn weight_six_cycle_pattern_girth_six() {
    let pats = generate_patterns(6, 0, 6);
    assert_eq!(pats.len(), 2);
    assert_eq!(pats.iter().filter(|p| p.girth() == Girth::Finite(6)).count(), 1);
    assert_eq!(generate_patterns(8, 0, 6).len(), 5);
    assert_eq!(generate_patterns(5, 3, 8).len(), 1);
}
