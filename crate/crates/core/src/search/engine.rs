//! Backtracking with conjugation-identity propagation.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;

use super::{
    exponent_values, EnumerationResult, LabelKind, Mode, PruneRule, SearchParams, SearchStats,
};
use crate::iso::IsoClasses;
use crate::perm::{gcd, Permutation};
use crate::quandle::Quandle;

type Images = Vec<u8>;

struct Budget {
    nodes: AtomicU64,
    limit: u64,
    deadline: Instant,
    aborted: AtomicBool,
}

impl Budget {
    fn tick(&self) -> bool {
        let c = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if c > self.limit || (c.is_multiple_of(1024) && Instant::now() > self.deadline) {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.aborted.load(Ordering::Relaxed)
    }

    fn aborted(&self) -> bool {
        self.aborted.load(Ordering::Relaxed)
    }
}

enum Prune {
    Conflict,
    Rule(PruneRule),
}

#[derive(Default)]
struct Tally {
    nodes: u64,
    prunes: [u64; 5],
    conflicts: u64,
}

impl Tally {
    fn record(&mut self, p: Prune) {
        match p {
            Prune::Conflict => self.conflicts += 1,
            Prune::Rule(r) => self.prunes[r.index()] += 1,
        }
    }

    fn absorb(&mut self, other: &Tally) {
        self.nodes += other.nodes;
        self.conflicts += other.conflicts;
        for (a, b) in self.prunes.iter_mut().zip(other.prunes) {
            *a += b;
        }
    }
}

struct Ctx<'a> {
    n: usize,
    m: usize,
    structured: bool,
    enabled: [bool; 5],
    // allowed exponents for associates of n, when the exponent-set rule applies
    exponents: Option<Vec<usize>>,
    budget: &'a Budget,
    candidates: Vec<OnceLock<Vec<Images>>>,
    f: usize,
}

impl Ctx<'_> {
    fn on(&self, r: PruneRule) -> bool {
        self.enabled[r.index()]
    }

    fn candidates(&self, k: usize) -> &[Images] {
        self.candidates[k].get_or_init(|| pattern_candidates(self.n, self.f, k))
    }

    // Per-index rules applied whenever μ_x becomes known.
    fn validate(&self, p: &Partial, x: usize, perm: &[u8]) -> Result<(), Prune> {
        if perm[x] as usize != x {
            return Err(Prune::Conflict);
        }
        if !self.structured || x < self.m {
            return Ok(());
        }
        let l = power_of_cycle(perm, self.m);
        if self.on(PruneRule::CoprimePower) {
            match l {
                Some(l) if gcd(l as u64, self.m as u64) == 1 => {}
                _ => return Err(Prune::Rule(PruneRule::CoprimePower)),
            }
        }
        if let Some(allowed) = &self.exponents {
            let ok = l.is_some_and(|l| {
                allowed.contains(&l)
                    && (self.m..self.n)
                        .filter(|&h| h != x && p.set[h])
                        .all(|h| power_of_cycle(p.row(h), self.m) != Some(l))
            });
            if !ok {
                return Err(Prune::Rule(PruneRule::ExponentSet));
            }
        }
        Ok(())
    }
}

// `l` with perm = (0 1 … m−1)^l fixing m.., if perm is such a power.
fn power_of_cycle(perm: &[u8], m: usize) -> Option<usize> {
    let l = perm[0] as usize;
    if l >= m {
        return None;
    }
    let ok = perm
        .iter()
        .enumerate()
        .all(|(y, &v)| v as usize == if y < m { (y + l) % m } else { y });
    ok.then_some(l)
}

#[derive(Clone)]
struct Partial {
    n: usize,
    rows: Vec<u8>,
    set: Vec<bool>,
    count: usize,
}

impl Partial {
    fn new(n: usize) -> Self {
        Partial {
            n,
            rows: vec![0; n * n],
            set: vec![false; n],
            count: 0,
        }
    }

    fn row(&self, i: usize) -> &[u8] {
        &self.rows[i * self.n..(i + 1) * self.n]
    }

    // a b a⁻¹
    fn conj(&self, a: usize, b: usize) -> Images {
        let (ra, rb) = (self.row(a), self.row(b));
        let mut out = vec![0; self.n];
        for x in 0..self.n {
            out[ra[x] as usize] = ra[rb[x] as usize];
        }
        out
    }

    // a⁻¹ t a
    fn conj_inv(&self, a: usize, t: usize) -> Images {
        let (ra, rt) = (self.row(a), self.row(t));
        let mut inv = vec![0u8; self.n];
        for (x, &y) in ra.iter().enumerate() {
            inv[y as usize] = x as u8;
        }
        (0..self.n).map(|x| inv[rt[ra[x] as usize] as usize]).collect()
    }

    fn preimage(&self, i: usize, x: usize) -> usize {
        self.row(i).iter().position(|&v| v as usize == x).unwrap()
    }

    /// Assigns `μ_x = perm` and closes under `μ_{μ_i(j)} = μ_i μ_j μ_i⁻¹`.
    fn assign(&mut self, ctx: &Ctx, x: usize, perm: Images) -> Result<(), Prune> {
        let mut queue = vec![(x, perm)];
        while let Some((x, perm)) = queue.pop() {
            if self.set[x] {
                if self.row(x) != perm.as_slice() {
                    return Err(Prune::Conflict);
                }
                continue;
            }
            ctx.validate(self, x, &perm)?;
            self.rows[x * self.n..(x + 1) * self.n].copy_from_slice(&perm);
            self.set[x] = true;
            self.count += 1;
            for i in 0..self.n {
                if self.set[i] {
                    self.handle(i, x, &mut queue)?;
                    let j = self.preimage(i, x);
                    self.handle(i, j, &mut queue)?;
                }
            }
            for j in 0..self.n {
                self.handle(x, j, &mut queue)?;
            }
        }
        Ok(())
    }

    // the triple (i, j, μ_i(j)) with i assigned
    fn handle(&self, i: usize, j: usize, queue: &mut Vec<(usize, Images)>) -> Result<(), Prune> {
        let t = self.row(i)[j] as usize;
        match (self.set[j], self.set[t]) {
            (true, true) => {
                if self.row(t) != self.conj(i, j).as_slice() {
                    return Err(Prune::Conflict);
                }
            }
            (true, false) => queue.push((t, self.conj(i, j))),
            (false, true) => queue.push((j, self.conj_inv(i, t))),
            (false, false) => {}
        }
        Ok(())
    }

    // unassigned index fixed by the most assigned permutations; smallest on ties
    fn choose(&self) -> usize {
        (0..self.n)
            .filter(|&k| !self.set[k])
            .max_by_key(|&k| {
                let fixers = (0..self.n)
                    .filter(|&i| self.set[i] && self.row(i)[k] as usize == k)
                    .count();
                (fixers, std::cmp::Reverse(k))
            })
            .expect("an unassigned index remains")
    }

    fn to_quandle(&self) -> Quandle {
        let perms = (0..self.n)
            .map(|i| Permutation::from_zero_based(self.row(i).iter().map(|&v| v as usize).collect()))
            .collect();
        Quandle::from_permutations(perms).expect("propagation closes every conjugation triple")
    }
}

/// Every permutation of `{0..n−1}` fixing `k` with `f` fixed points and one
/// `(n−f)`-cycle, sorted by image list.
fn pattern_candidates(n: usize, f: usize, k: usize) -> Vec<Images> {
    let m = n - f;
    let others: Vec<usize> = (0..n).filter(|&x| x != k).collect();
    let mut out = Vec::new();
    let mut choose = Vec::new();
    combinations(&others, f - 1, 0, &mut choose, &mut |fixed| {
        let moved: Vec<usize> = others.iter().copied().filter(|x| !fixed.contains(x)).collect();
        let mut rest: Vec<usize> = moved[1..].to_vec();
        permutations(&mut rest, 0, &mut |order| {
            let mut images: Images = (0..n as u8).collect();
            let mut prev = moved[0];
            for &x in order {
                images[prev] = x as u8;
                prev = x;
            }
            images[prev] = moved[0] as u8;
            debug_assert!(m == moved.len());
            out.push(images);
        });
    });
    out.sort();
    out
}

fn combinations(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in start..pool.len() {
        cur.push(pool[i]);
        combinations(pool, k, i + 1, cur, f);
        cur.pop();
    }
}

fn permutations(xs: &mut Vec<usize>, at: usize, f: &mut dyn FnMut(&[usize])) {
    if at == xs.len() {
        f(xs);
        return;
    }
    for i in at..xs.len() {
        xs.swap(at, i);
        permutations(xs, at + 1, f);
        xs.swap(at, i);
    }
}

fn normalized_mu_n(n: usize, m: usize) -> Images {
    (0..n).map(|y| if y < m { ((y + 1) % m) as u8 } else { y as u8 }).collect()
}

// Top-level filters on a μ_{n−f} candidate; the first failing rule is reported.
fn top_level_filter(n: usize, f: usize, enabled: &[bool; 5], perm: &[u8]) -> Option<PruneRule> {
    let m = n - f;
    let fixed: BTreeSet<usize> = (0..n).filter(|&y| perm[y] as usize == y).collect();
    if enabled[PruneRule::FixedSet.index()] {
        let want: Option<BTreeSet<usize>> =
            m.is_multiple_of(f).then(|| (1..=f).map(|i| i * (m / f) - 1).collect());
        if want.as_ref() != Some(&fixed) {
            return Some(PruneRule::FixedSet);
        }
    }
    if n <= 2 * f {
        return None;
    }
    let image: BTreeSet<usize> = (m..n).map(|h| perm[h] as usize).collect();
    if enabled[PruneRule::ImageSet.index()] {
        let inside = fixed.iter().all(|&y| y < m) && image.iter().all(|&y| y < m);
        let translate = inside
            && image.is_disjoint(&fixed)
            && (0..m).any(|k| fixed.iter().map(|&y| (y + k) % m).collect::<BTreeSet<_>>() == image);
        if !translate {
            return Some(PruneRule::ImageSet);
        }
    }
    if enabled[PruneRule::Spacing.index()] {
        let pts: Vec<usize> = image.iter().copied().collect();
        let spaced = pts.iter().all(|&y| y < m)
            && m.is_multiple_of(pts.len())
            && (0..pts.len()).all(|i| {
                let next = pts[(i + 1) % pts.len()];
                (next + m - pts[i]) % m == m / pts.len()
            });
        if !spaced {
            return Some(PruneRule::Spacing);
        }
    }
    None
}

fn enabled_flags(disabled: &BTreeSet<PruneRule>) -> [bool; 5] {
    let mut e = [true; 5];
    for r in disabled {
        e[r.index()] = false;
    }
    e
}

pub(super) fn structured_top_level(n: usize, f: usize, disabled: &BTreeSet<PruneRule>) -> Vec<Images> {
    let enabled = enabled_flags(disabled);
    pattern_candidates(n, f, n - f - 1)
        .into_iter()
        .filter(|p| top_level_filter(n, f, &enabled, p).is_none())
        .collect()
}

struct Branch {
    classes: IsoClasses,
    labeled: u64,
    tally: Tally,
}

fn dfs(ctx: &Ctx, p: Partial, out: &mut Branch) {
    if !ctx.budget.tick() {
        return;
    }
    out.tally.nodes += 1;
    if p.count == ctx.n {
        out.labeled += 1;
        out.classes.push(p.to_quandle());
        return;
    }
    let k = p.choose();
    for cand in ctx.candidates(k) {
        if ctx.budget.aborted() {
            return;
        }
        let mut next = p.clone();
        match next.assign(ctx, k, cand.clone()) {
            Ok(()) => dfs(ctx, next, out),
            Err(e) => out.tally.record(e),
        }
    }
}

pub(super) fn run(params: &SearchParams, structured: bool) -> EnumerationResult {
    let start = Instant::now();
    let (n, f) = (params.n, params.f);
    let m = n - f;
    let enabled = enabled_flags(&params.disabled);
    let budget = Budget {
        nodes: AtomicU64::new(0),
        limit: params.limits.nodes,
        deadline: start + params.limits.time,
        aborted: AtomicBool::new(false),
    };
    let exponents = (structured && n > 2 * f && enabled[PruneRule::ExponentSet.index()])
        .then(|| exponent_values(n, f).unwrap_or_default());
    let ctx = Ctx {
        n,
        m,
        structured,
        enabled,
        exponents,
        budget: &budget,
        candidates: (0..n).map(|_| OnceLock::new()).collect(),
        f,
    };

    let mut root = Partial::new(n);
    let mut top_tally = Tally::default();
    let (top_index, tops): (usize, Vec<Images>) = if structured {
        let rootable = root.assign(&ctx, n - 1, normalized_mu_n(n, m));
        let all = pattern_candidates(n, f, m - 1);
        let mut kept = Vec::new();
        if let Err(e) = rootable {
            top_tally.record(e);
        } else {
            for p in all {
                match top_level_filter(n, f, &enabled, &p) {
                    Some(rule) => top_tally.record(Prune::Rule(rule)),
                    None => kept.push(p),
                }
            }
        }
        (m - 1, kept)
    } else {
        (0, ctx.candidates(0).to_vec())
    };
    let top_level = tops.len();

    let explore = |cand: &Images| {
        let mut out = Branch {
            classes: IsoClasses::new(),
            labeled: 0,
            tally: Tally::default(),
        };
        let mut p = root.clone();
        match p.assign(&ctx, top_index, cand.clone()) {
            Ok(()) => dfs(&ctx, p, &mut out),
            Err(e) => out.tally.record(e),
        }
        out
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if params.jobs > 0 {
        builder = builder.num_threads(params.jobs);
    }
    let branches: Vec<Branch> = match builder.build() {
        Ok(pool) => pool.install(|| tops.par_iter().map(explore).collect()),
        Err(_) => tops.iter().map(explore).collect(),
    };

    let mut classes = IsoClasses::new();
    let mut labeled = 0;
    let mut tally = top_tally;
    let mut surviving = 0;
    for b in branches {
        if b.labeled > 0 {
            surviving += 1;
        }
        labeled += b.labeled;
        tally.absorb(&b.tally);
        classes.merge(b.classes);
    }
    EnumerationResult {
        n,
        f,
        mode: if structured { Mode::Structured } else { Mode::General },
        classes: classes.into_classes(),
        labeled_count: labeled,
        label_kind: if structured { LabelKind::Normalized } else { LabelKind::All },
        exhaustive: !budget.aborted(),
        stats: SearchStats {
            nodes: tally.nodes,
            prunes: PruneRule::ALL.iter().map(|&r| (r, tally.prunes[r.index()])).collect(),
            conflicts: tally.conflicts,
            top_level,
            top_level_surviving: surviving,
            wall: start.elapsed(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidate_counts() {
        // fix k and f−1 of the other n−1 points, then (n−f−1)! cycles
        assert_eq!(pattern_candidates(6, 2, 3).len(), 5 * 6);
        assert_eq!(pattern_candidates(6, 4, 0).len(), 10);
        assert_eq!(pattern_candidates(7, 3, 2).len(), 15 * 6);
        for c in pattern_candidates(6, 2, 3) {
            assert_eq!(c[3], 3);
            let p = Permutation::from_zero_based(c.iter().map(|&v| v as usize).collect());
            assert_eq!(p.pattern(), crate::perm::Pattern::cyclic(6, 2));
        }
    }

    #[test]
    fn powers_of_the_normalized_cycle() {
        let mu = normalized_mu_n(6, 4);
        assert_eq!(power_of_cycle(&mu, 4), Some(1));
        assert_eq!(power_of_cycle(&[3, 0, 1, 2, 4, 5], 4), Some(3));
        assert_eq!(power_of_cycle(&[1, 0, 2, 3, 4, 5], 4), None);
    }

    #[test]
    fn image_set_prunes_four_of_six_at_six_two() {
        let enabled = [true; 5];
        let all = pattern_candidates(6, 2, 3);
        let after_fixed: Vec<_> = all
            .iter()
            .filter(|p| top_level_filter(6, 2, &[true, false, false, false, false], p).is_none())
            .collect();
        assert_eq!(after_fixed.len(), 6);
        let kept: Vec<_> = all.iter().filter(|p| top_level_filter(6, 2, &enabled, p).is_none()).collect();
        assert_eq!(kept.len(), 2);
    }
}
