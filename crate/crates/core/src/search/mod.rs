//! Exhaustive enumeration of quandles of cyclic type `(n, f)` up to
//! isomorphism.
//!
//! Structured mode relabels so that `μ_n = (1 2 … n−f)` fixes
//! `n−f+1..n`, branches on `μ_{n−f}`, and lets the conjugation identity
//! force the rest. General mode backtracks over all of `μ_1..μ_n` with the
//! same propagation and no normalization. Brute-force mode is an
//! independent generate-and-test oracle for small orders.

mod engine;
mod oracle;
mod rederive;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use thiserror::Error;

use crate::iso::{find_isomorphism, IsoClass};
use crate::perm::{gcd, Permutation};
use crate::quandle::Quandle;

pub use oracle::brute_force_oracle;
pub use rederive::{rederive_claims, CellReport};

/// Largest order the enumerator accepts.
pub const MAX_ORDER: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Auto,
    Structured,
    General,
    BruteForce,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Auto => "auto",
            Mode::Structured => "structured",
            Mode::General => "general",
            Mode::BruteForce => "brute",
        }
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Mode::Auto),
            "structured" => Ok(Mode::Structured),
            "general" => Ok(Mode::General),
            "brute" | "brute-force" => Ok(Mode::BruteForce),
            _ => Err(format!("unknown mode {s:?}")),
        }
    }
}

/// Structured-mode filters. Each one can be disabled on its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PruneRule {
    /// `μ_{n−f}` fixes exactly `{i(n−f)/f : 1 ≤ i ≤ f}`.
    FixedSet,
    /// For `n > 2f`, `μ_{n−f}(F_n)` is a translate of `F_{n−f}` inside the
    /// cycle, disjoint from `F_{n−f}`.
    ImageSet,
    /// For `n > 2f`, the points of `μ_{n−f}(F_n)` are equally spaced along
    /// `μ_n`'s cycle.
    Spacing,
    /// `μ_h = μ_n^l` with `gcd(l, n−f) = 1` for `h ∈ F_n`.
    CoprimePower,
    /// For `n > 2f`, those exponents are distinct members of
    /// `{1 + j(n−f)/f : 0 ≤ j < f}`.
    ExponentSet,
}

impl PruneRule {
    pub const ALL: [PruneRule; 5] = [
        PruneRule::FixedSet,
        PruneRule::ImageSet,
        PruneRule::Spacing,
        PruneRule::CoprimePower,
        PruneRule::ExponentSet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PruneRule::FixedSet => "fixed-set",
            PruneRule::ImageSet => "image-set",
            PruneRule::Spacing => "spacing",
            PruneRule::CoprimePower => "coprime-power",
            PruneRule::ExponentSet => "exponent-set",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for PruneRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PruneRule {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        PruneRule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown pruning rule {s:?}"))
    }
}

/// Closed-form non-existence rules, checked in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClosedFormRule {
    /// `n ≥ 2f` forces `f | n`.
    Divisibility,
    /// For `n > 2f`, every `1 + j(n−f)/f` with `0 ≤ j < f` must be coprime
    /// to `n−f`.
    GcdExponents,
    /// No quandles at `n = 3f` with `f > 2`.
    ThreeF,
    /// No quandles at `n = cf` with `c > 3`.
    CGreaterThree,
}

impl ClosedFormRule {
    pub fn name(self) -> &'static str {
        match self {
            ClosedFormRule::Divisibility => "divisibility",
            ClosedFormRule::GcdExponents => "gcd",
            ClosedFormRule::ThreeF => "three-f",
            ClosedFormRule::CGreaterThree => "c-greater-three",
        }
    }
}

impl fmt::Display for ClosedFormRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feasibility {
    Feasible,
    Infeasible(ClosedFormRule),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("need n - 2 >= f > 1, got (n, f) = ({n}, {f})")]
    ParamRange { n: usize, f: usize },
    #[error("order {n} exceeds the supported maximum {max}")]
    TooLarge { n: usize, max: usize },
    #[error("no quandles of cyclic type ({n}, {f}) exist by the {rule} rule")]
    Infeasible { n: usize, f: usize, rule: ClosedFormRule },
    #[error("structured mode needs n >= 2f, got (n, f) = ({n}, {f})")]
    StructuredRange { n: usize, f: usize },
    #[error("brute-force oracle supports n <= {max}, got {n}")]
    OracleRange { n: usize, max: usize },
}

fn check_range(n: usize, f: usize) -> Result<(), SearchError> {
    if f < 2 || f + 2 > n {
        Err(SearchError::ParamRange { n, f })
    } else {
        Ok(())
    }
}

/// The values `1 + j(n−f)/f` for `0 ≤ j < f`, or `None` when `f ∤ n−f`.
pub fn exponent_values(n: usize, f: usize) -> Option<Vec<usize>> {
    let m = n - f;
    m.is_multiple_of(f).then(|| (0..f).map(|j| 1 + j * (m / f)).collect())
}

/// Evaluates the closed-form non-existence rules.
pub fn feasibility_precheck(n: usize, f: usize) -> Result<Feasibility, SearchError> {
    check_range(n, f)?;
    let m = n - f;
    if n >= 2 * f && !n.is_multiple_of(f) {
        return Ok(Feasibility::Infeasible(ClosedFormRule::Divisibility));
    }
    if n > 2 * f {
        let ls = exponent_values(n, f).expect("f | n implies f | n - f");
        if ls.iter().any(|&l| gcd(l as u64, m as u64) != 1) {
            return Ok(Feasibility::Infeasible(ClosedFormRule::GcdExponents));
        }
        if n == 3 * f && f > 2 {
            return Ok(Feasibility::Infeasible(ClosedFormRule::ThreeF));
        }
        if n > 3 * f {
            return Ok(Feasibility::Infeasible(ClosedFormRule::CGreaterThree));
        }
    }
    Ok(Feasibility::Feasible)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub nodes: u64,
    pub time: Duration,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            nodes: 100_000_000,
            time: Duration::from_secs(600),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchParams {
    pub n: usize,
    pub f: usize,
    pub mode: Mode,
    pub limits: Limits,
    pub disabled: BTreeSet<PruneRule>,
    /// When set, closed-form non-existence rules short-circuit the search.
    pub closed_form: bool,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
}

impl SearchParams {
    pub fn new(n: usize, f: usize) -> Self {
        SearchParams {
            n,
            f,
            mode: Mode::Auto,
            limits: Limits::default(),
            disabled: BTreeSet::new(),
            closed_form: true,
            jobs: 0,
        }
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn disable(mut self, rule: PruneRule) -> Self {
        self.disabled.insert(rule);
        self
    }

    pub fn without_closed_form(mut self) -> Self {
        self.closed_form = false;
        self
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn node_budget(mut self, nodes: u64) -> Self {
        self.limits.nodes = nodes;
        self
    }

    pub fn time_budget(mut self, time: Duration) -> Self {
        self.limits.time = time;
        self
    }

    /// The mode actually run: `Auto` becomes `Structured` when `n ≥ 2f`.
    pub fn resolved_mode(&self) -> Mode {
        match self.mode {
            Mode::Auto if self.n >= 2 * self.f => Mode::Structured,
            Mode::Auto => Mode::General,
            m => m,
        }
    }
}

/// What `labeled_count` counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelKind {
    /// Every labeled quandle on `{1..n}`.
    All,
    /// Only labelings with `μ_n = (1 … n−f)` fixing `n−f+1..n`.
    Normalized,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub prunes: Vec<(PruneRule, u64)>,
    pub conflicts: u64,
    pub top_level: usize,
    pub top_level_surviving: usize,
    pub wall: Duration,
}

impl SearchStats {
    pub fn prunes_by(&self, rule: PruneRule) -> u64 {
        self.prunes
            .iter()
            .find(|(r, _)| *r == rule)
            .map_or(0, |(_, c)| *c)
    }
}

#[derive(Debug, Clone)]
pub struct EnumerationResult {
    pub n: usize,
    pub f: usize,
    pub mode: Mode,
    pub classes: Vec<IsoClass>,
    pub labeled_count: u64,
    pub label_kind: LabelKind,
    pub exhaustive: bool,
    pub stats: SearchStats,
}

impl EnumerationResult {
    pub fn representatives(&self) -> impl Iterator<Item = &Quandle> {
        self.classes.iter().map(|c| &c.representative)
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// The `key=value` summary line.
    pub fn machine_line(&self) -> String {
        format!(
            "result n={} f={} classes={} labeled={} exhaustive={}",
            self.n,
            self.f,
            self.classes.len(),
            self.labeled_count,
            if self.exhaustive { "yes" } else { "no" }
        )
    }

    /// True when `self` and `other` have the same classes, in any order.
    pub fn same_classes(&self, other: &EnumerationResult) -> bool {
        same_class_sets(
            &self.representatives().collect::<Vec<_>>(),
            &other.representatives().collect::<Vec<_>>(),
        )
    }

    // every representative verified, of cyclic type, pairwise non-isomorphic
    fn recheck(&self) {
        for (a, q) in self.representatives().enumerate() {
            assert!(crate::quandle::verify(q.permutations()).is_empty());
            assert!(q.is_cyclic_type(self.f));
            for r in self.representatives().skip(a + 1) {
                assert!(find_isomorphism(q, r).is_none(), "duplicate class emitted");
            }
        }
    }
}

/// Two lists of pairwise non-isomorphic quandles describe the same classes.
pub fn same_class_sets(a: &[&Quandle], b: &[&Quandle]) -> bool {
    a.len() == b.len() && a.iter().all(|q| b.iter().any(|r| find_isomorphism(q, r).is_some()))
}

/// Runs the enumeration described by `params`.
pub fn enumerate(params: &SearchParams) -> Result<EnumerationResult, SearchError> {
    let (n, f) = (params.n, params.f);
    check_range(n, f)?;
    if params.closed_form {
        if let Feasibility::Infeasible(rule) = feasibility_precheck(n, f)? {
            return Err(SearchError::Infeasible { n, f, rule });
        }
    }
    if n > MAX_ORDER {
        return Err(SearchError::TooLarge { n, max: MAX_ORDER });
    }
    let result = match params.resolved_mode() {
        Mode::BruteForce => brute_force_oracle(n, f)?,
        Mode::Structured if n < 2 * f => return Err(SearchError::StructuredRange { n, f }),
        Mode::Structured => engine::run(params, true),
        _ => engine::run(params, false),
    };
    result.recheck();
    Ok(result)
}

/// The `μ_{n−f}` candidates that structured mode branches on, after the
/// enabled top-level filters.
pub fn structured_candidates(
    n: usize,
    f: usize,
    disabled: &BTreeSet<PruneRule>,
) -> Result<Vec<Permutation>, SearchError> {
    check_range(n, f)?;
    if n < 2 * f {
        return Err(SearchError::StructuredRange { n, f });
    }
    Ok(engine::structured_top_level(n, f, disabled)
        .into_iter()
        .map(|p| Permutation::from_zero_based(p.into_iter().map(usize::from).collect()))
        .collect())
}
