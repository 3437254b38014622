use alloc::vec;
use alloc::vec::Vec;

use super::{girth, Girth, TannerGraph};

/// Column weight the pattern generator targets.
pub const COLUMN_WEIGHT: usize = 3;

/// Largest variable count accepted by the generator.
const MAX_GENERATED_VARS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PatternError {
    #[error("pattern check {0} is empty")]
    EmptyCheck(usize),
    #[error("pattern check {check} names vertex {vertex} outside 0..{a}")]
    VertexOutOfRange { check: usize, vertex: u8, a: usize },
    #[error("pattern check {0} repeats a vertex")]
    RepeatedVertex(usize),
    #[error("pattern has no vertices")]
    Empty,
}

/// Induced subgraph of an (a, b) trapping set.
///
/// Vertices are the `a` variable nodes; every check node of the induced
/// subgraph is listed with the vertices it touches. In the collapsed view a
/// two-vertex check is an edge and a one-vertex check is a pendant mark; the
/// search also accepts larger checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrappingSetPattern {
    a: usize,
    checks: Vec<Vec<u8>>,
    girth: Girth,
}

impl TrappingSetPattern {
    pub fn new(a: usize, mut checks: Vec<Vec<u8>>) -> Result<Self, PatternError> {
        if a == 0 {
            return Err(PatternError::Empty);
        }
        for (k, c) in checks.iter_mut().enumerate() {
            if c.is_empty() {
                return Err(PatternError::EmptyCheck(k));
            }
            if let Some(&v) = c.iter().find(|&&v| v as usize >= a) {
                return Err(PatternError::VertexOutOfRange { check: k, vertex: v, a });
            }
            c.sort_unstable();
            if c.windows(2).any(|w| w[0] == w[1]) {
                return Err(PatternError::RepeatedVertex(k));
            }
        }
        checks.sort();
        let tanner = pattern_graph(a, &checks);
        let girth = girth(&tanner);
        Ok(TrappingSetPattern { a, checks, girth })
    }

    /// Collapsed form: `edges` are degree-2 checks, `pendants[v]` counts the
    /// degree-1 checks on vertex v.
    pub fn from_collapsed(a: usize, edges: &[(u8, u8)], pendants: &[u8]) -> Result<Self, PatternError> {
        let mut checks: Vec<Vec<u8>> = edges.iter().map(|&(x, y)| vec![x, y]).collect();
        for (v, &p) in pendants.iter().enumerate() {
            for _ in 0..p {
                checks.push(vec![v as u8]);
            }
        }
        Self::new(a, checks)
    }

    /// Number of variables.
    pub fn a(&self) -> usize {
        self.a
    }

    /// Number of odd-degree checks.
    pub fn b(&self) -> usize {
        self.checks.iter().filter(|c| c.len() % 2 == 1).count()
    }

    pub fn checks(&self) -> &[Vec<u8>] {
        &self.checks
    }

    /// Tanner girth of the induced subgraph.
    pub fn girth(&self) -> Girth {
        self.girth
    }

    pub fn degree(&self, v: usize) -> usize {
        self.checks.iter().filter(|c| c.contains(&(v as u8))).count()
    }

    pub fn is_collapsible(&self) -> bool {
        self.checks.iter().all(|c| c.len() <= 2)
    }

    /// Degree-2 checks as vertex pairs.
    pub fn edges(&self) -> Vec<(u8, u8)> {
        self.checks.iter().filter(|c| c.len() == 2).map(|c| (c[0], c[1])).collect()
    }

    /// Degree-1 check count per vertex.
    pub fn pendants(&self) -> Vec<u8> {
        let mut p = vec![0u8; self.a];
        for c in self.checks.iter().filter(|c| c.len() == 1) {
            p[c[0] as usize] += 1;
        }
        p
    }

    /// The pattern as a standalone Tanner graph (vertex i is variable i).
    pub fn tanner_graph(&self) -> TannerGraph {
        pattern_graph(self.a, &self.checks)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.a];
        let mut stack = vec![0u8];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for c in self.checks.iter().filter(|c| c.contains(&v)) {
                for &u in c {
                    if !seen[u as usize] {
                        seen[u as usize] = true;
                        stack.push(u);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// True when some vertex bijection maps checks onto checks.
    pub fn is_isomorphic(&self, other: &TrappingSetPattern) -> bool {
        self.a == other.a
            && self.checks.len() == other.checks.len()
            && self.girth == other.girth
            && find_iso(self, other, None).is_some()
    }

    /// One representative per orbit of the automorphism group on vertices.
    pub fn orbit_representatives(&self) -> Vec<usize> {
        let mut reps: Vec<usize> = Vec::new();
        let mut covered = vec![false; self.a];
        for v in 0..self.a {
            if covered[v] {
                continue;
            }
            reps.push(v);
            for u in v..self.a {
                if !covered[u] && find_iso(self, self, Some((v, u))).is_some() {
                    covered[u] = true;
                }
            }
        }
        reps
    }

    /// Structural fingerprint used to bucket candidates before the full
    /// isomorphism test.
    fn invariant(&self) -> Vec<u32> {
        let mut per_vertex: Vec<u32> = (0..self.a)
            .map(|v| {
                let deg = self.degree(v) as u32;
                let mut sizes: Vec<u32> = self
                    .checks
                    .iter()
                    .filter(|c| c.contains(&(v as u8)))
                    .map(|c| c.len() as u32)
                    .collect();
                sizes.sort_unstable();
                let nbr_deg: u32 = self
                    .checks
                    .iter()
                    .filter(|c| c.contains(&(v as u8)))
                    .flat_map(|c| c.iter())
                    .filter(|&&u| u as usize != v)
                    .map(|&u| self.degree(u as usize) as u32 + 1)
                    .map(|d| d * d)
                    .sum();
                sizes.iter().fold(deg, |acc, s| acc * 7 + s) * 1000 + nbr_deg
            })
            .collect();
        per_vertex.sort_unstable();
        per_vertex.push(match self.girth {
            Girth::Finite(g) => g,
            Girth::Infinite => 0,
        });
        per_vertex
    }
}

fn pattern_graph(a: usize, checks: &[Vec<u8>]) -> TannerGraph {
    let lists: Vec<Vec<u32>> = checks.iter().map(|c| c.iter().map(|&v| v as u32).collect()).collect();
    TannerGraph::from_check_lists(a, &lists)
}

/// Backtracking search for a vertex bijection `x → y` carrying the check
/// multiset of `x` onto that of `y`. `pin` forces one vertex image.
fn find_iso(x: &TrappingSetPattern, y: &TrappingSetPattern, pin: Option<(usize, usize)>) -> Option<Vec<usize>> {
    let a = x.a;
    if a != y.a || x.checks.len() != y.checks.len() {
        return None;
    }
    let sig = |p: &TrappingSetPattern, v: usize| {
        let mut s: Vec<usize> = p.checks.iter().filter(|c| c.contains(&(v as u8))).map(Vec::len).collect();
        s.sort_unstable();
        s
    };
    let xs: Vec<Vec<usize>> = (0..a).map(|v| sig(x, v)).collect();
    let ys: Vec<Vec<usize>> = (0..a).map(|v| sig(y, v)).collect();
    let mut map = vec![usize::MAX; a];
    let mut used = vec![false; a];
    if let Some((u, v)) = pin {
        if xs[u] != ys[v] {
            return None;
        }
        map[u] = v;
        used[v] = true;
    }
    // Checks of x restricted to mapped vertices must agree with checks of y
    // restricted to the image; verified on completion of every check.
    let mut y_checks = y.checks.clone();
    y_checks.sort();
    fn rec(
        x: &TrappingSetPattern,
        y_checks: &[Vec<u8>],
        xs: &[Vec<usize>],
        ys: &[Vec<usize>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let Some(v) = (0..map.len()).find(|&v| map[v] == usize::MAX) else {
            let mut img: Vec<Vec<u8>> = x
                .checks
                .iter()
                .map(|c| {
                    let mut m: Vec<u8> = c.iter().map(|&u| map[u as usize] as u8).collect();
                    m.sort_unstable();
                    m
                })
                .collect();
            img.sort();
            return img == y_checks;
        };
        for w in 0..map.len() {
            if used[w] || xs[v] != ys[w] {
                continue;
            }
            map[v] = w;
            used[w] = true;
            // partial check: every x-check whose vertices are all mapped must
            // exist in y with the same multiplicity
            let ok = partial_consistent(x, y_checks, map);
            if ok && rec(x, y_checks, xs, ys, map, used) {
                return true;
            }
            map[v] = usize::MAX;
            used[w] = false;
        }
        false
    }
    fn partial_consistent(x: &TrappingSetPattern, y_checks: &[Vec<u8>], map: &[usize]) -> bool {
        let mut img: Vec<Vec<u8>> = Vec::new();
        for c in &x.checks {
            if c.iter().all(|&u| map[u as usize] != usize::MAX) {
                let mut m: Vec<u8> = c.iter().map(|&u| map[u as usize] as u8).collect();
                m.sort_unstable();
                img.push(m);
            }
        }
        img.sort();
        // every image check must occur in y at least as often
        let mut k = 0;
        for c in &img {
            while k < y_checks.len() && y_checks[k] < *c {
                k += 1;
            }
            if k == y_checks.len() || y_checks[k] != *c {
                return false;
            }
            k += 1;
        }
        true
    }
    if rec(x, &y_checks, &xs, &ys, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// All connected (a, b) trapping-set patterns of column weight 3 whose
/// Tanner girth is at least `girth_min`, up to isomorphism.
///
/// Checks inside the pattern have degree 1 (pendant) or 2 (edge). Double
/// edges (4-cycles) are only produced when `girth_min` ≤ 4. The result is
/// empty when 3a − b is odd, b > 3a, or a exceeds the generator limit.
pub fn generate_patterns(a: usize, b: usize, girth_min: u32) -> Vec<TrappingSetPattern> {
    if a == 0 || a > MAX_GENERATED_VARS || b > COLUMN_WEIGHT * a || (COLUMN_WEIGHT * a - b) % 2 != 0 {
        return Vec::new();
    }
    let allow_multi = girth_min <= 4;
    let mut found: Vec<(Vec<u32>, TrappingSetPattern)> = Vec::new();
    let mut pendants = vec![0u8; a];
    pendant_splits(&mut pendants, 0, b, COLUMN_WEIGHT as u8, &mut |p| {
        let degrees: Vec<usize> = p.iter().map(|&x| COLUMN_WEIGHT - x as usize).collect();
        let mut remaining = degrees.clone();
        let mut edges = Vec::new();
        edge_sets(&mut remaining, &mut edges, allow_multi, 0, &mut |edges| {
            let Ok(pat) = TrappingSetPattern::from_collapsed(a, edges, p) else {
                return;
            };
            if !pat.is_connected() || !pat.girth.at_least(girth_min) {
                return;
            }
            let inv = pat.invariant();
            if found.iter().any(|(i, q)| *i == inv && q.is_isomorphic(&pat)) {
                return;
            }
            found.push((inv, pat));
        });
    });
    let mut out: Vec<TrappingSetPattern> = found.into_iter().map(|(_, p)| p).collect();
    out.sort_by(|x, y| (x.girth, &x.checks).cmp(&(y.girth, &y.checks)));
    out
}

/// Non-increasing pendant counts summing to `left`.
fn pendant_splits(p: &mut Vec<u8>, idx: usize, left: usize, cap: u8, emit: &mut dyn FnMut(&[u8])) {
    if idx == p.len() {
        if left == 0 {
            emit(p);
        }
        return;
    }
    let max = (cap as usize).min(left);
    for x in (0..=max).rev() {
        if x * (p.len() - idx) < left {
            break;
        }
        p[idx] = x as u8;
        pendant_splits(p, idx + 1, left - x, x as u8, emit);
    }
    p[idx] = 0;
}

/// Labelled (multi)graphs realising the degree sequence in `remaining`.
/// The lowest vertex with free stubs is always matched next, to partners in
/// non-decreasing order, so each labelled graph appears once.
fn edge_sets(
    remaining: &mut Vec<usize>,
    edges: &mut Vec<(u8, u8)>,
    allow_multi: bool,
    min_partner: usize,
    emit: &mut dyn FnMut(&[(u8, u8)]),
) {
    let Some(v) = remaining.iter().position(|&d| d > 0) else {
        emit(edges);
        return;
    };
    // partner lower bound applies only while still filling the same vertex
    let lo = match edges.last() {
        Some(&(x, y)) if x as usize == v => {
            if allow_multi {
                y as usize
            } else {
                y as usize + 1
            }
        }
        _ => v + 1,
    }
    .max(min_partner.max(v + 1));
    for w in lo..remaining.len() {
        if remaining[w] == 0 {
            continue;
        }
        if !allow_multi && edges.contains(&(v as u8, w as u8)) {
            continue;
        }
        remaining[v] -= 1;
        remaining[w] -= 1;
        edges.push((v as u8, w as u8));
        edge_sets(remaining, edges, allow_multi, 0, emit);
        edges.pop();
        remaining[v] += 1;
        remaining[w] += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codeword_counts() {
        assert_eq!(generate_patterns(6, 0, 6).len(), 2);
        assert_eq!(generate_patterns(8, 0, 6).len(), 5);
        assert_eq!(generate_patterns(4, 0, 6).len(), 1);
    }

    #[test]
    fn five_three_girth_eight_is_k23() {
        let pats = generate_patterns(5, 3, 8);
        assert_eq!(pats.len(), 1);
        let k23 = TrappingSetPattern::from_collapsed(
            5,
            &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
            &[0, 0, 1, 1, 1],
        )
        .unwrap();
        assert!(pats[0].is_isomorphic(&k23));
        assert_eq!(pats[0].girth(), Girth::Finite(8));
    }

    #[test]
    fn infeasible_parity_is_empty() {
        assert!(generate_patterns(3, 1, 6).is_empty());
        assert!(generate_patterns(2, 7, 6).is_empty());
    }

    #[test]
    fn girth_six_includes_girth_eight() {
        let g6 = generate_patterns(5, 3, 6);
        let g8 = generate_patterns(5, 3, 8);
        assert!(g6.len() > g8.len());
        for p in &g8 {
            assert!(g6.iter().any(|q| q.is_isomorphic(p)));
        }
        assert!(g6.iter().all(|p| p.a() == 5 && p.b() == 3));
    }

    #[test]
    fn edge_count_invariant() {
        for (a, b) in [(5, 3), (6, 4), (6, 2), (4, 4)] {
            for p in generate_patterns(a, b, 6) {
                assert_eq!(p.edges().len(), (3 * a - b) / 2);
                for v in 0..a {
                    assert_eq!(p.degree(v), 3);
                }
                if let Girth::Finite(g) = p.girth() {
                    assert!(g >= 6 && g % 2 == 0);
                }
            }
        }
    }

    #[test]
    fn orbits_of_k33() {
        let k33 = &generate_patterns(6, 0, 8)[0];
        assert_eq!(k33.orbit_representatives(), vec![0]);
    }

    #[test]
    fn isomorphism_ignores_labels() {
        let x = TrappingSetPattern::from_collapsed(3, &[(0, 1), (1, 2)], &[2, 1, 2]).unwrap();
        let y = TrappingSetPattern::from_collapsed(3, &[(2, 0), (0, 1)], &[1, 2, 2]).unwrap();
        assert!(x.is_isomorphic(&y));
        let z = TrappingSetPattern::from_collapsed(3, &[(0, 1), (0, 2)], &[1, 2, 2]).unwrap();
        assert!(z.is_isomorphic(&y));
        let w = TrappingSetPattern::from_collapsed(3, &[(0, 1), (1, 2), (0, 2)], &[1, 1, 1]).unwrap();
        assert!(!w.is_isomorphic(&y));
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(TrappingSetPattern::new(2, vec![vec![]]).unwrap_err(), PatternError::EmptyCheck(0));
        assert!(matches!(
            TrappingSetPattern::new(2, vec![vec![0, 5]]),
            Err(PatternError::VertexOutOfRange { .. })
        ));
        assert_eq!(TrappingSetPattern::new(2, vec![vec![1, 1]]).unwrap_err(), PatternError::RepeatedVertex(0));
    }
}
