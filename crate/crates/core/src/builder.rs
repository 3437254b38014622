//! Progressive construction of W: columns are added one at a time, each
//! entry is a block of q edges, and a block stays only if the growing Tanner
//! graph still satisfies the condition.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::codebuilder::{CodeError, Quad, WMatrix};
use crate::galois::{Elem, GaloisField, LogAlpha};
use crate::graph::{
    eight_cycle_sharing_violation, eight_cycle_sharing_violation_from, generate_patterns, girth,
    shortest_cycle_through, small_codeword, small_codeword_through, Girth, PatternSearch,
    SharingViolation, TannerGraph, TrappingSetPattern, COLUMN_WEIGHT,
};

/// Structures the Tanner graph must avoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    pub girth_min: u32,
    pub forbidden_patterns: Vec<TrappingSetPattern>,
    /// Every eight-cycle shares two or more variables with at most one other.
    pub eight_cycle_sharing: bool,
    /// No nonzero codeword of weight below 10.
    pub min_distance_10: bool,
}

impl Condition {
    pub fn girth(girth_min: u32) -> Self {
        Condition { girth_min, forbidden_patterns: Vec::new(), eight_cycle_sharing: false, min_distance_10: false }
    }

    /// Girth at least 6 and minimum distance at least 10.
    pub fn min_distance_10() -> Self {
        Condition { min_distance_10: true, ..Condition::girth(6) }
    }

    pub fn forbid(mut self, patterns: Vec<TrappingSetPattern>) -> Self {
        self.forbidden_patterns.extend(patterns);
        self
    }

    pub fn with_eight_cycle_sharing(mut self) -> Self {
        self.eight_cycle_sharing = true;
        self
    }

    pub fn with_min_distance_10(mut self) -> Self {
        self.min_distance_10 = true;
        self
    }

    /// The four graded conditions, strongest first:
    ///
    /// 1. girth ≥ 10;
    /// 2. girth ≥ 8, no (5,3) and no (6,4) trapping sets;
    /// 3. girth ≥ 8, no (5,3) trapping sets, eight-cycle sharing;
    /// 4. girth ≥ 6, no (5,3) trapping sets of girth 6 or 8, eight-cycle sharing.
    pub fn tau(k: u8) -> Option<Condition> {
        Some(match k {
            1 => Condition::girth(10),
            2 => Condition::girth(8).forbid(generate_patterns(5, 3, 8)).forbid(generate_patterns(6, 4, 8)),
            3 => Condition::girth(8).forbid(generate_patterns(5, 3, 8)).with_eight_cycle_sharing(),
            4 => Condition::girth(6).forbid(generate_patterns(5, 3, 6)).with_eight_cycle_sharing(),
            _ => return None,
        })
    }

    pub fn validate(&self, gamma: usize) -> Result<(), BuildError> {
        if ![6, 8, 10].contains(&self.girth_min) {
            return Err(BuildError::InvalidCondition("girth_min must be 6, 8 or 10"));
        }
        if !self.forbidden_patterns.is_empty() && gamma != COLUMN_WEIGHT {
            return Err(BuildError::InvalidCondition("trapping-set patterns need column weight 3"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateOrder {
    Random { seed: u64 },
    Sequential,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildPolicy {
    pub candidate_order: CandidateOrder,
    /// Candidate attempts allowed each time the search reaches a block
    /// position. Candidates are drawn without repetition, so any value ≥ q
    /// covers the whole field. `None` means 3·q.
    pub max_retries_per_block: Option<usize>,
    /// How many times a column may fail to complete, sending the search
    /// back into the previous column, before the run gives up. `None` means 3.
    pub max_backtracks: Option<usize>,
    pub target_rho: Option<usize>,
    pub fix_first_row_zero: bool,
    /// Audit the whole graph with [`verify_condition`] after every accepted
    /// column. Slow; meant for tests.
    pub audit_steps: bool,
}

impl BuildPolicy {
    pub fn sequential() -> Self {
        BuildPolicy {
            candidate_order: CandidateOrder::Sequential,
            max_retries_per_block: None,
            max_backtracks: None,
            target_rho: None,
            fix_first_row_zero: true,
            audit_steps: false,
        }
    }

    pub fn random(seed: u64) -> Self {
        BuildPolicy { candidate_order: CandidateOrder::Random { seed }, ..BuildPolicy::sequential() }
    }

    pub fn with_target(mut self, rho: usize) -> Self {
        self.target_rho = Some(rho);
        self
    }

    pub fn retry_budget(&self, q: u32) -> usize {
        self.max_retries_per_block.unwrap_or(3 * q as usize)
    }

    pub fn backtrack_budget(&self) -> usize {
        self.max_backtracks.unwrap_or(3)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("invalid condition: {0}")]
    InvalidCondition(&'static str),
    #[error("column weight must be at least 2, got {0}")]
    BadGamma(usize),
    #[error("retry budget must be positive")]
    ZeroBudget,
    #[error("condition cannot be met with {rho} columns; at least {gamma} are required")]
    Infeasible { rho: usize, gamma: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Why a candidate block was disregarded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    FourCycle(Quad),
    ShortCycle(u32),
    Pattern { index: usize, vars: Vec<u32> },
    Codeword(Vec<u32>),
    EightCycleSharing,
}

impl Rejection {
    pub fn label(&self) -> &'static str {
        match self {
            Rejection::FourCycle(_) => "four-cycle",
            Rejection::ShortCycle(_) => "short-cycle",
            Rejection::Pattern { .. } => "pattern",
            Rejection::Codeword(_) => "codeword",
            Rejection::EightCycleSharing => "eight-cycle-sharing",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogEntry {
    /// Column index of W.
    pub stage: usize,
    pub row: usize,
    pub candidate: LogAlpha,
    pub rejected: Option<Rejection>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildOutcome {
    pub w: WMatrix,
    pub rho: usize,
    pub log: Vec<LogEntry>,
}

impl BuildOutcome {
    pub fn reached(&self, rho: usize) -> bool {
        self.rho >= rho
    }
}

struct Builder<'a> {
    field: &'a GaloisField,
    gamma: usize,
    q: usize,
    tau: &'a Condition,
    searches: Vec<PatternSearch<'a>>,
    policy: &'a BuildPolicy,
    rng: Option<ChaCha8Rng>,
    w: WMatrix,
    g: TannerGraph,
    log: Vec<LogEntry>,
    backtracks: usize,
    exhausted: bool,
    best: WMatrix,
    limit: usize,
    /// add_pos[x][y] = position of at_position(x) + at_position(y)
    add_pos: Vec<u32>,
}

impl Builder<'_> {
    fn var(&self, j: usize, x: usize) -> u32 {
        (j * self.q + x) as u32
    }

    fn check_of(&self, i: usize, x: usize, wpos: usize) -> u32 {
        (i * self.q) as u32 + self.add_pos[x * self.q + wpos]
    }

    fn place(&mut self, i: usize, j: usize, e: Elem) {
        let wpos = self.field.position(e) as usize;
        for x in 0..self.q {
            let (v, c) = (self.var(j, x), self.check_of(i, x, wpos));
            self.g.add_edge(v, c);
        }
        self.w.set(i, j, Some(e));
    }

    fn unplace(&mut self, i: usize, j: usize) {
        let e = self.w.get(i, j).expect("placed");
        let wpos = self.field.position(e) as usize;
        for x in 0..self.q {
            let (v, c) = (self.var(j, x), self.check_of(i, x, wpos));
            self.g.remove_edge(v, c);
        }
        self.w.set(i, j, None);
    }

    fn candidates(&mut self, i: usize, j: usize) -> Vec<Elem> {
        if j == 0 || (i == 0 && self.policy.fix_first_row_zero) {
            return vec![Elem::ZERO];
        }
        let mut c: Vec<Elem> = (0..self.q as u32).map(|p| self.field.at_position(p)).collect();
        if let Some(rng) = self.rng.as_mut() {
            c.shuffle(rng);
        }
        c
    }

    /// Checks that only involve the block just placed at (i, j). By
    /// translation symmetry every new cycle passes through an image of the
    /// column's first variable.
    fn block_check(&self, i: usize, j: usize) -> Option<Rejection> {
        if let Some(quad) = self.w.cross_addition_violation_at(self.field, i, j) {
            return Some(Rejection::FourCycle(quad));
        }
        if self.tau.girth_min > 6 {
            let root = self.var(j, 0);
            if let Some(len) = shortest_cycle_through(&self.g, root, self.tau.girth_min - 2) {
                return Some(Rejection::ShortCycle(len));
            }
        }
        None
    }

    /// Checks that need the whole column in place.
    fn column_check(&self, j: usize) -> Option<Rejection> {
        let root = self.var(j, 0);
        for (index, s) in self.searches.iter().enumerate() {
            if let Some(vars) = s.find_through(&self.g, root) {
                return Some(Rejection::Pattern { index, vars });
            }
        }
        if self.tau.min_distance_10 {
            if let Some(cw) = small_codeword_through(&self.g, root, 8) {
                return Some(Rejection::Codeword(cw));
            }
        }
        if self.tau.eight_cycle_sharing && eight_cycle_sharing_violation_from(&self.g, &[root]).is_some() {
            return Some(Rejection::EightCycleSharing);
        }
        None
    }

    /// Depth-first search over the remaining entries, starting at row i of
    /// column j. Returns true once the column limit is reached.
    fn fill(&mut self, j: usize, i: usize) -> bool {
        if i == self.gamma {
            return self.next_column(j + 1);
        }
        let budget = self.policy.retry_budget(self.q as u32);
        for e in self.candidates(i, j).into_iter().take(budget) {
            if self.exhausted {
                return false;
            }
            self.place(i, j, e);
            let mut rejected = self.block_check(i, j);
            if rejected.is_none() && i + 1 == self.gamma {
                rejected = self.column_check(j);
            }
            let ok = rejected.is_none();
            self.log.push(LogEntry { stage: j, row: i, candidate: self.field.log_alpha(e), rejected });
            if ok && self.fill(j, i + 1) {
                return true;
            }
            self.unplace(i, j);
        }
        false
    }

    /// Called with `cols` complete columns in place.
    fn next_column(&mut self, cols: usize) -> bool {
        if cols > self.best.cols() {
            self.best = self.w.clone();
            if self.policy.audit_steps {
                let report = verify_condition(&self.g, self.tau);
                assert!(report.is_satisfied(), "audit failed at {cols} columns: {report:?}");
            }
        }
        if cols >= self.limit {
            return true;
        }
        let j = self.w.push_col();
        self.g.add_vars(self.q);
        if self.fill(j, 0) {
            return true;
        }
        self.backtracks += 1;
        if self.backtracks > self.policy.backtrack_budget() {
            self.exhausted = true;
        }
        self.w.truncate_cols(j);
        self.g.truncate_vars(j * self.q);
        false
    }
}

/// Grows W column by column under condition `tau`, backtracking into the
/// previous column when a column cannot be completed. Stops at the target ρ
/// or at q columns (the most any girth-6 array allows); otherwise returns the
/// widest W found once the backtrack budget is spent or the search space is
/// exhausted.
pub fn progressive_construct(
    field: &GaloisField,
    gamma: usize,
    tau: &Condition,
    policy: &BuildPolicy,
) -> Result<BuildOutcome, BuildError> {
    if gamma < 2 {
        return Err(BuildError::BadGamma(gamma));
    }
    tau.validate(gamma)?;
    if policy.retry_budget(field.order()) == 0 {
        return Err(BuildError::ZeroBudget);
    }
    let q = field.order() as usize;
    let mut add_pos = vec![0u32; q * q];
    for x in 0..q {
        for y in 0..q {
            let s = field.add(field.at_position(x as u32), field.at_position(y as u32));
            add_pos[x * q + y] = field.position(s);
        }
    }
    let mut b = Builder {
        field,
        gamma,
        q,
        tau,
        searches: tau.forbidden_patterns.iter().map(PatternSearch::new).collect(),
        policy,
        rng: match policy.candidate_order {
            CandidateOrder::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
            CandidateOrder::Sequential => None,
        },
        w: WMatrix::with_rows(field.order(), gamma),
        g: TannerGraph::new(0, gamma * q),
        log: Vec::new(),
        backtracks: 0,
        exhausted: false,
        best: WMatrix::with_rows(field.order(), gamma),
        limit: policy.target_rho.unwrap_or(q).min(q),
        add_pos,
    };
    b.next_column(0);
    let rho = b.best.cols();
    if rho < gamma {
        return Err(BuildError::Infeasible { rho, gamma });
    }
    Ok(BuildOutcome { w: b.best, rho, log: b.log })
}

/// One violated clause with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Girth { found: Girth, required: u32 },
    Pattern { index: usize, vars: Vec<u32> },
    Codeword(Vec<u32>),
    /// The distance certificate needs girth at least 6.
    CertificateUnavailable(Girth),
    EightCycleSharing(SharingViolation),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConditionReport {
    pub violations: Vec<Violation>,
}

impl ConditionReport {
    pub fn is_satisfied(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates every clause of `tau` on the whole graph.
pub fn verify_condition(g: &TannerGraph, tau: &Condition) -> ConditionReport {
    let mut violations = Vec::new();
    let gi = girth(g);
    if !gi.at_least(tau.girth_min) {
        violations.push(Violation::Girth { found: gi, required: tau.girth_min });
    }
    for (index, pat) in tau.forbidden_patterns.iter().enumerate() {
        if let Some(vars) = PatternSearch::new(pat).find(g) {
            violations.push(Violation::Pattern { index, vars });
        }
    }
    if tau.min_distance_10 {
        if gi.at_least(6) {
            if let Some(cw) = small_codeword(g, 8) {
                violations.push(Violation::Codeword(cw));
            }
        } else {
            violations.push(Violation::CertificateUnavailable(gi));
        }
    }
    if tau.eight_cycle_sharing {
        if let Some(v) = eight_cycle_sharing_violation(g) {
            violations.push(Violation::EightCycleSharing(v));
        }
    }
    ConditionReport { violations }
}
