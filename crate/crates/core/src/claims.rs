//! Executable versions of the classification statements, each run at desk
//! scale and reported as PASS or FAIL with evidence.

use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::constructors::{
    adjoin_chain, adjoin_common_fixed_point, dihedral, divisible_family, extract_common_fixed_point,
    q62, trivial, two_f_canonical,
};
use crate::io::parse_quandle;
use crate::iso::find_isomorphism;
use crate::perm::Permutation;
use crate::quandle::{verify, Quandle};
use crate::search::{
    enumerate, exponent_values, feasibility_precheck, rederive_claims, ClosedFormRule, Feasibility,
    PruneRule, SearchParams,
};
use crate::structure::{common_fixed_points, is_connected};

pub const CLAIM_IDS: [&str; 14] = [
    "T1.1a",
    "T1.1b",
    "T1.2a",
    "T1.2b",
    "T2",
    "T3",
    "T4",
    "COR",
    "NE-3F",
    "NE-CF",
    "GCD-28-7",
    "PROP-AXIOMS",
    "PROP-CONN",
    "PROP-RELABEL",
];

/// The order-5 quandle with three fixed points and common fixed point 1.
pub const TABLE5_TEXT: &str = "5\n1 1 1 1 1\n2 2 2 3 3\n3 3 3 2 2\n5 5 5 4 4\n4 4 4 5 5\n";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown claim id {0:?}")]
pub struct UnknownClaim(pub String);

#[derive(Debug, Clone)]
pub struct ClaimOutcome {
    pub id: &'static str,
    pub passed: bool,
    pub evidence: Vec<String>,
    pub elapsed: Duration,
}

impl fmt::Display for ClaimOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}", self.id)?;
        for e in &self.evidence {
            write!(f, "\n    {e}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Log {
    ok: bool,
    lines: Vec<String>,
}

impl Log {
    fn new() -> Self {
        Log {
            ok: true,
            lines: Vec::new(),
        }
    }

    fn check(&mut self, cond: bool, line: impl Into<String>) {
        let line = line.into();
        if cond {
            self.lines.push(line);
        } else {
            self.ok = false;
            self.lines.push(format!("FAILED: {line}"));
        }
    }
}

pub fn table5() -> Quandle {
    parse_quandle(TABLE5_TEXT).expect("fixture parses")
}

/// Runs one claim, or every claim for `all`.
pub fn reproduce(id: &str, jobs: usize) -> Result<Vec<ClaimOutcome>, UnknownClaim> {
    if id == "all" {
        return Ok(CLAIM_IDS.iter().map(|c| run(c, jobs)).collect());
    }
    let known = CLAIM_IDS
        .iter()
        .find(|c| **c == id)
        .ok_or_else(|| UnknownClaim(id.to_string()))?;
    Ok(vec![run(known, jobs)])
}

fn run(id: &'static str, jobs: usize) -> ClaimOutcome {
    let start = Instant::now();
    let mut log = Log::new();
    match id {
        "T1.1a" => connected_above_2f(&mut log, jobs),
        "T1.1b" => unique_above_2f(&mut log, jobs),
        "T1.2a" => disconnected_up_to_2f(&mut log, jobs),
        "T1.2b" => unique_at_2f(&mut log, jobs),
        "T2" => divisible_families(&mut log),
        "T3" => extraction(&mut log),
        "T4" => adjoining(&mut log),
        "COR" => iterated_adjoining(&mut log),
        "NE-3F" => empty_cells(&mut log, &[(9, 3), (12, 4)], jobs),
        "NE-CF" => empty_cells(&mut log, &[(8, 2), (10, 2), (12, 3)], jobs),
        "GCD-28-7" => gcd_rule(&mut log),
        "PROP-AXIOMS" => axiom_cross_check(&mut log),
        "PROP-CONN" => connected_constant_profile(&mut log),
        "PROP-RELABEL" => relabel_invariance(&mut log),
        _ => unreachable!("ids come from CLAIM_IDS"),
    }
    ClaimOutcome {
        id,
        passed: log.ok,
        evidence: log.lines,
        elapsed: start.elapsed(),
    }
}

fn cells_where(max_n: usize, keep: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    (4..=max_n)
        .flat_map(|n| (2..=n - 2).map(move |f| (n, f)))
        .filter(|&(n, f)| keep(n, f))
        .collect()
}

fn rederived(log: &mut Log, cells: &[(usize, usize)], jobs: usize) {
    match rederive_claims(cells, jobs) {
        Ok(reports) => {
            for r in reports {
                let line = format!(
                    "({}, {}): {} classes, connected {:?}, exhaustive {}",
                    r.n, r.f, r.classes, r.connected, r.exhaustive
                );
                log.check(r.ok(), line);
                for d in r.disagreements {
                    log.check(false, d);
                }
            }
        }
        Err(e) => log.check(false, e.to_string()),
    }
}

fn connected_above_2f(log: &mut Log, jobs: usize) {
    rederived(log, &cells_where(9, |n, f| n > 2 * f), jobs);
}

fn unique_above_2f(log: &mut Log, jobs: usize) {
    match enumerate(&SearchParams::new(6, 2).jobs(jobs)) {
        Ok(r) => {
            log.check(r.class_count() == 1, format!("(6, 2): {} class(es)", r.class_count()));
            if let Some(rep) = r.representatives().next() {
                match find_isomorphism(rep, &q62()) {
                    Some(w) => log.check(true, format!("witness to the octahedron table: {}", w.mapping_line())),
                    None => log.check(false, "representative not isomorphic to the octahedron table"),
                }
            }
        }
        Err(e) => log.check(false, e.to_string()),
    }
    let others = cells_where(9, |n, f| n > 2 * f && (n, f) != (6, 2));
    match rederive_claims(&others, jobs) {
        Ok(reports) => {
            let nonempty: Vec<_> = reports.iter().filter(|r| r.classes > 0).map(|r| (r.n, r.f)).collect();
            log.check(
                nonempty.is_empty() && reports.iter().all(|r| r.exhaustive),
                format!("{} other cells with n > 2f and n <= 9 are empty", others.len()),
            );
        }
        Err(e) => log.check(false, e.to_string()),
    }
}

fn disconnected_up_to_2f(log: &mut Log, jobs: usize) {
    rederived(log, &cells_where(8, |n, f| n <= 2 * f), jobs);
}

fn unique_at_2f(log: &mut Log, jobs: usize) {
    rederived(log, &[(4, 2), (6, 3), (8, 4)], jobs);
    if let Ok(r) = enumerate(&SearchParams::new(4, 2).jobs(jobs)) {
        let iso = r.representatives().all(|q| find_isomorphism(q, &dihedral(4).unwrap()).is_some());
        log.check(iso, "the (4, 2) class is the dihedral quandle of order 4");
    }
}

fn divisible_families(log: &mut Log) {
    let cells = cells_where(12, |n, f| n <= 2 * f && f % (n - f) == 0);
    for (n, f) in cells {
        match divisible_family(n, f) {
            Ok(q) => log.check(
                q.is_cyclic_type(f) && !is_connected(&q),
                format!("({n}, {f}): cyclic type, not connected"),
            ),
            Err(e) => log.check(false, e.to_string()),
        }
    }
}

fn extraction(log: &mut Log) {
    match extract_common_fixed_point(&table5(), 1) {
        Ok(e) => log.check(
            find_isomorphism(&e, &two_f_canonical(2).unwrap()).is_some(),
            "extracting 1 from the order-5 table gives the (4, 2) quandle",
        ),
        Err(e) => log.check(false, e.to_string()),
    }
    let chain = adjoin_chain(&divisible_family(6, 4).unwrap(), 1, 3).unwrap();
    for q in &chain[1..] {
        let (n, f) = (q.order(), q.cyclic_type_fixed_count().unwrap_or(0));
        match extract_common_fixed_point(q, n) {
            Ok(e) => log.check(
                e.is_cyclic_type(f - 1),
                format!("({n}, {f}) minus {n} is of cyclic type ({}, {})", n - 1, f - 1),
            ),
            Err(err) => log.check(false, err.to_string()),
        }
    }
}

fn adjoining(log: &mut Log) {
    let mu = Permutation::from_cycles(4, &[[3, 4]]).unwrap();
    match adjoin_common_fixed_point(&two_f_canonical(2).unwrap(), &mu) {
        Ok(q) => {
            log.check(common_fixed_points(&q).contains(&5), "5 is a common fixed point");
            log.check(
                find_isomorphism(&q, &table5()).is_some(),
                "adjoining with (3 4) gives the order-5 table",
            );
        }
        Err(e) => log.check(false, e.to_string()),
    }
    for n in 3..=6 {
        let r = dihedral(n).unwrap();
        let ok = adjoin_common_fixed_point(&r, &Permutation::identity(n).unwrap())
            .is_ok_and(|q| common_fixed_points(&q).contains(&(n + 1)));
        log.check(ok, format!("dihedral {n} plus a point fixed by everything"));
    }
}

fn iterated_adjoining(log: &mut Log) {
    match adjoin_chain(&divisible_family(6, 4).unwrap(), 1, 3) {
        Ok(chain) => {
            for (k, q) in chain.iter().enumerate().skip(1) {
                let (n, f) = (6 + k, 4 + k);
                log.check(
                    q.order() == n && q.is_cyclic_type(f) && f + 2 <= n && n <= 2 * f,
                    format!("step {k}: cyclic type ({n}, {f})"),
                );
            }
        }
        Err(e) => log.check(false, e.to_string()),
    }
}

fn empty_cells(log: &mut Log, cells: &[(usize, usize)], jobs: usize) {
    for &(n, f) in cells {
        let filtered = SearchParams::new(n, f).without_closed_form().jobs(jobs);
        let bare = PruneRule::ALL.into_iter().fold(filtered.clone(), SearchParams::disable);
        for (label, params) in [("filters on", filtered), ("filters off", bare)] {
            match enumerate(&params) {
                Ok(r) => log.check(
                    r.class_count() == 0 && r.exhaustive,
                    format!(
                        "({n}, {f}) {label}: {} classes, {} top-level candidates, {} conflicts",
                        r.class_count(),
                        r.stats.top_level,
                        r.stats.conflicts
                    ),
                ),
                Err(e) => log.check(false, e.to_string()),
            }
        }
    }
}

fn gcd_rule(log: &mut Log) {
    let ls = exponent_values(28, 7).unwrap_or_default();
    log.check(
        feasibility_precheck(28, 7) == Ok(Feasibility::Infeasible(ClosedFormRule::GcdExponents)),
        format!("(28, 7): exponents {ls:?} against n - f = 21"),
    );
}

/// Axioms read straight off the table: `a∗a = a`, columns bijective, and
/// `(a∗b)∗c = (a∗c)∗(b∗c)`.
pub fn table_axioms_hold(table: &[Vec<usize>]) -> bool {
    let n = table.len();
    let op = |a: usize, b: usize| table[a - 1][b - 1];
    (1..=n).all(|a| op(a, a) == a)
        && (1..=n).all(|b| {
            let mut col: Vec<usize> = (1..=n).map(|a| op(a, b)).collect();
            col.sort_unstable();
            col == (1..=n).collect::<Vec<_>>()
        })
        && (1..=n).all(|a| {
            (1..=n).all(|b| (1..=n).all(|c| op(op(a, b), c) == op(op(a, c), op(b, c))))
        })
}

/// Constructed quandles plus enumerated representatives.
pub fn corpus() -> Vec<(String, Quandle)> {
    let mut out: Vec<(String, Quandle)> = Vec::new();
    for n in 1..=6 {
        out.push((format!("trivial {n}"), trivial(n).unwrap()));
    }
    for n in 2..=9 {
        out.push((format!("dihedral {n}"), dihedral(n).unwrap()));
    }
    out.push(("q62".into(), q62()));
    out.push(("order-5 table".into(), table5()));
    for f in 2..=5 {
        out.push((format!("two-f {f}"), two_f_canonical(f).unwrap()));
    }
    for n in 4..=12 {
        for f in 2..n - 1 {
            if let Ok(q) = divisible_family(n, f) {
                out.push((format!("divisible {n} {f}"), q));
            }
        }
    }
    for (k, q) in adjoin_chain(&divisible_family(6, 4).unwrap(), 1, 3).unwrap().into_iter().enumerate().skip(1) {
        out.push((format!("divisible 6 4 adjoined {k}"), q));
    }
    for (n, f) in [(5, 3), (6, 4), (7, 5), (7, 4)] {
        if let Ok(r) = enumerate(&SearchParams::new(n, f)) {
            for (i, q) in r.representatives().enumerate() {
                out.push((format!("({n}, {f}) class {}", i + 1), q.clone()));
            }
        }
    }
    out
}

fn axiom_cross_check(log: &mut Log) {
    let corpus = corpus();
    let agree = corpus
        .iter()
        .filter(|(_, q)| table_axioms_hold(&q.to_table()) == verify(q.permutations()).is_empty())
        .count();
    log.check(agree == corpus.len(), format!("{agree}/{} quandles agree", corpus.len()));
    // a corrupted table must fail both ways
    let mut perms = q62().permutations().to_vec();
    perms[3] = Permutation::from_cycles(6, &[[1, 5, 3, 6]]).unwrap();
    let table: Vec<Vec<usize>> = (1..=6)
        .map(|a| perms.iter().map(|p| p.apply(a)).collect())
        .collect();
    log.check(
        !table_axioms_hold(&table) && !verify(&perms).is_empty(),
        "swapping mu_4 for (1 5 3 6) breaks both checks",
    );
}

fn connected_constant_profile(log: &mut Log) {
    let corpus = corpus();
    let connected: Vec<_> = corpus.iter().filter(|(_, q)| is_connected(q)).collect();
    let bad: Vec<&String> = connected
        .iter()
        .filter(|(_, q)| !q.profile().is_constant())
        .map(|(name, _)| name)
        .collect();
    log.check(
        bad.is_empty(),
        format!("{} connected of {} in the corpus, all with constant profile", connected.len(), corpus.len()),
    );
}

fn relabel_invariance(log: &mut Log) {
    let q = q62();
    let want = q.profile().multiset();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0062);
    let mut good = 0;
    for _ in 0..100 {
        let mut images: Vec<usize> = (1..=6).collect();
        images.shuffle(&mut rng);
        let alpha = Permutation::from_images(&images).unwrap();
        let r = q.relabel(&alpha);
        if verify(r.permutations()).is_empty() && r.profile().multiset() == want && r.is_cyclic_type(2) {
            good += 1;
        }
    }
    log.check(good == 100, format!("{good}/100 random relabelings keep the profile"));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_id() {
        assert_eq!(reproduce("T9", 1).unwrap_err(), UnknownClaim("T9".into()));
    }

    #[test]
    fn cheap_claims_pass() {
        for id in ["T2", "T3", "T4", "COR", "GCD-28-7", "PROP-RELABEL"] {
            let out = reproduce(id, 1).unwrap();
            assert!(out[0].passed, "{}", out[0]);
        }
    }

    #[test]
    fn table_axioms() {
        assert!(table_axioms_hold(&q62().to_table()));
        assert!(!table_axioms_hold(&[vec![2, 1], vec![1, 2]]));
    }

    #[test]
    fn outcome_display() {
        let o = ClaimOutcome {
            id: "T2",
            passed: false,
            evidence: vec!["x".into()],
            elapsed: Duration::ZERO,
        };
        assert_eq!(o.to_string(), "FAIL T2\n    x");
    }
}
