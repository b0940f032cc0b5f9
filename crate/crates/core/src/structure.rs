//! Structural analysis of finite quandles: fixed-point sets, connectedness,
//! associate indices, congruences and quotients, common fixed points, and
//! the six normal-form conditions satisfied by quandles of cyclic type.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::perm::{gcd, Permutation};
use crate::quandle::Quandle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("quandle is not of cyclic type")]
    NotCyclicType,
    #[error("f = {f} is outside 1 < f <= n - 2 for n = {n}")]
    FOutOfRange { n: usize, f: usize },
    #[error("quandle is not of cyclic type with {f} fixed points")]
    WrongFixedCount { f: usize },
    #[error("associate relation is not transitive: {i}~{j} and {j}~{k} but not {i}~{k}")]
    NotTransitive { i: usize, j: usize, k: usize },
    #[error("not a partition of 1..={n}: {reason}")]
    BadPartition { n: usize, reason: String },
    #[error("partition is not a congruence: {a}≡{a2} and {b}≡{b2} but {a}*{b} and {a2}*{b2} fall in different classes")]
    NotCongruence {
        a: usize,
        a2: usize,
        b: usize,
        b2: usize,
    },
}

/// `F_i` and, for cyclic type, `C_i` for every element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointData {
    pub fixed: Vec<BTreeSet<usize>>,
    pub cycle: Vec<BTreeSet<usize>>,
}

impl FixedPointData {
    /// `F_i`, 1-based.
    pub fn f(&self, i: usize) -> &BTreeSet<usize> {
        &self.fixed[i - 1]
    }

    /// `C_i`, 1-based.
    pub fn c(&self, i: usize) -> &BTreeSet<usize> {
        &self.cycle[i - 1]
    }
}

/// A set partition of `{1..n}`, classes sorted by their minimum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionClasses {
    classes: Vec<BTreeSet<usize>>,
}

impl PartitionClasses {
    pub fn new(n: usize, classes: Vec<BTreeSet<usize>>) -> Result<Self, StructureError> {
        let bad = |reason: String| StructureError::BadPartition { n, reason };
        let mut seen = vec![false; n];
        for class in &classes {
            if class.is_empty() {
                return Err(bad("empty class".into()));
            }
            for &x in class {
                if x == 0 || x > n {
                    return Err(bad(format!("point {x} out of range")));
                }
                if std::mem::replace(&mut seen[x - 1], true) {
                    return Err(bad(format!("point {x} in two classes")));
                }
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(bad(format!("point {} not covered", x + 1)));
        }
        let mut classes = classes;
        classes.sort_by_key(|c| *c.first().unwrap());
        Ok(PartitionClasses { classes })
    }

    /// Parses `{1,3} {2,4}`; whitespace inside braces is ignored.
    pub fn parse(n: usize, text: &str) -> Result<Self, StructureError> {
        let bad = |reason: String| StructureError::BadPartition { n, reason };
        let mut classes = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('{')
                .ok_or_else(|| bad(format!("expected '{{' at {rest:?}")))?;
            let close = body.find('}').ok_or_else(|| bad("unclosed '{'".into()))?;
            let class = body[..close]
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| bad(format!("bad point {:?}", t.trim())))
                })
                .collect::<Result<BTreeSet<usize>, _>>()?;
            classes.push(class);
            rest = body[close + 1..].trim_start();
        }
        PartitionClasses::new(n, classes)
    }

    pub fn singletons(n: usize) -> Self {
        PartitionClasses {
            classes: (1..=n).map(|x| BTreeSet::from([x])).collect(),
        }
    }

    pub fn classes(&self) -> &[BTreeSet<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// 1-based class number of every point.
    pub fn class_of(&self) -> Vec<usize> {
        let n = self.classes.iter().map(BTreeSet::len).sum();
        let mut out = vec![0; n];
        for (k, class) in self.classes.iter().enumerate() {
            for &x in class {
                out[x - 1] = k + 1;
            }
        }
        out
    }
}

impl std::fmt::Display for PartitionClasses {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .classes
            .iter()
            .map(|c| {
                let xs: Vec<String> = c.iter().map(usize::to_string).collect();
                format!("{{{}}}", xs.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Fixed-point sets of every `μ_i`; meaningful for any quandle.
pub fn fixed_point_sets(q: &Quandle) -> Vec<BTreeSet<usize>> {
    q.permutations().iter().map(Permutation::fixed_points).collect()
}

/// `F_i` and `C_i`; requires cyclic type so that `C_i` is a single cycle.
pub fn fixed_point_data(q: &Quandle) -> Result<FixedPointData, StructureError> {
    q.cyclic_type_fixed_count()
        .ok_or(StructureError::NotCyclicType)?;
    Ok(FixedPointData {
        fixed: fixed_point_sets(q),
        cycle: q.permutations().iter().map(Permutation::moved_points).collect(),
    })
}

/// One generator application in an orbit word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    /// 1-based generator index `i` of `μ_i`.
    pub generator: usize,
    pub inverse: bool,
}

/// Words reaching each point from point 1; `None` for unreachable points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCertificate {
    pub words: Vec<Option<Vec<Step>>>,
}

impl OrbitCertificate {
    pub fn is_transitive(&self) -> bool {
        self.words.iter().all(Option::is_some)
    }

    /// Applies the word for `target` to point 1, left to right.
    pub fn replay(&self, q: &Quandle, target: usize) -> Option<usize> {
        let word = self.words[target - 1].as_ref()?;
        Some(word.iter().fold(1, |x, s| {
            let m = q.mu(s.generator);
            if s.inverse {
                m.inverse().apply(x)
            } else {
                m.apply(x)
            }
        }))
    }
}

/// Breadth-first orbit of point 1 under all `μ_i` and `μ_i⁻¹`.
pub fn orbit_certificate(q: &Quandle) -> OrbitCertificate {
    let n = q.order();
    let inverses: Vec<Permutation> = q.permutations().iter().map(Permutation::inverse).collect();
    let mut words: Vec<Option<Vec<Step>>> = vec![None; n];
    words[0] = Some(Vec::new());
    let mut queue = VecDeque::from([1usize]);
    while let Some(x) = queue.pop_front() {
        for g in 1..=n {
            for inverse in [false, true] {
                let y = if inverse {
                    inverses[g - 1].apply(x)
                } else {
                    q.mu(g).apply(x)
                };
                if words[y - 1].is_none() {
                    let mut w = words[x - 1].clone().unwrap();
                    w.push(Step {
                        generator: g,
                        inverse,
                    });
                    words[y - 1] = Some(w);
                    queue.push_back(y);
                }
            }
        }
    }
    OrbitCertificate { words }
}

pub fn is_connected(q: &Quandle) -> bool {
    orbit_certificate(q).is_transitive()
}

/// `i ≠ j`, `μ_i(j) = j` and `μ_j(i) = i`.
pub fn are_associate(q: &Quandle, i: usize, j: usize) -> bool {
    i != j && q.mu(i).apply(j) == j && q.mu(j).apply(i) == i
}

/// Classes of "associate or equal". Fails with a witnessing triple when that
/// relation is not transitive.
pub fn association_classes(q: &Quandle) -> Result<PartitionClasses, StructureError> {
    let n = q.order();
    let related = |i: usize, j: usize| i == j || are_associate(q, i, j);
    for j in 1..=n {
        for i in 1..=n {
            if !related(i, j) {
                continue;
            }
            for k in 1..=n {
                if related(j, k) && !related(i, k) {
                    return Err(StructureError::NotTransitive { i, j, k });
                }
            }
        }
    }
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for i in 1..=n {
        if assigned[i - 1] {
            continue;
        }
        let class: BTreeSet<usize> = (i..=n).filter(|&j| related(i, j)).collect();
        for &j in &class {
            assigned[j - 1] = true;
        }
        classes.push(class);
    }
    PartitionClasses::new(n, classes)
}

fn congruence_witness(q: &Quandle, p: &PartitionClasses) -> Option<StructureError> {
    let class = p.class_of();
    let n = q.order();
    // first member of each class as representative
    let rep: Vec<usize> = p.classes().iter().map(|c| *c.first().unwrap()).collect();
    for a in 1..=n {
        for b in 1..=n {
            let (ra, rb) = (rep[class[a - 1] - 1], rep[class[b - 1] - 1]);
            if class[q.op(a, b) - 1] != class[q.op(ra, rb) - 1] {
                return Some(StructureError::NotCongruence {
                    a: ra,
                    a2: a,
                    b: rb,
                    b2: b,
                });
            }
        }
    }
    None
}

pub fn is_congruence(q: &Quandle, partition: &PartitionClasses) -> bool {
    partition.class_of().len() == q.order() && congruence_witness(q, partition).is_none()
}

/// The quotient by a congruence, classes numbered by their minimum.
pub fn quotient(q: &Quandle, partition: &PartitionClasses) -> Result<Quandle, StructureError> {
    if partition.class_of().len() != q.order() {
        return Err(StructureError::BadPartition {
            n: q.order(),
            reason: "partition covers a different set".into(),
        });
    }
    if let Some(err) = congruence_witness(q, partition) {
        return Err(err);
    }
    let class = partition.class_of();
    let reps: Vec<usize> = partition.classes().iter().map(|c| *c.first().unwrap()).collect();
    let table: Vec<Vec<usize>> = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| class[q.op(a, b) - 1]).collect())
        .collect();
    Ok(Quandle::from_table(&table).expect("quotient of a quandle by a congruence is a quandle"))
}

/// Points fixed by every `μ_i`.
pub fn common_fixed_points(q: &Quandle) -> BTreeSet<usize> {
    (1..=q.order())
        .filter(|&g| q.permutations().iter().all(|m| m.apply(g) == g))
        .collect()
}

/// Relabels a cyclic-type quandle so that `μ_n = (1 2 … n−f)`, fixing the
/// other points in increasing order on `n−f+1..n`. Returns the relabeled
/// quandle and the bijection used, or `None` when `μ_n` is not a single
/// cycle plus fixed points.
pub fn normalize_labeling(q: &Quandle) -> Option<(Quandle, Permutation)> {
    let n = q.order();
    let mu_n = q.mu(n);
    let cycles = mu_n.cycles();
    let long: Vec<&Vec<usize>> = cycles.iter().filter(|c| c.len() > 1).collect();
    if long.len() != 1 {
        return None;
    }
    let cycle = long[0];
    let fixed: Vec<usize> = mu_n.fixed_points().into_iter().collect();
    let mut images = vec![0; n];
    for (k, &x) in cycle.iter().enumerate() {
        images[x - 1] = k + 1;
    }
    for (k, &x) in fixed.iter().enumerate() {
        images[x - 1] = cycle.len() + k + 1;
    }
    let alpha = Permutation::from_images(&images).ok()?;
    Some((q.relabel(&alpha), alpha))
}

/// Witness for condition 6: `μ_n^{-μ_{n-f}(m)} μ_{n-f} μ_n^m = σ τ^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorWitness {
    pub m: usize,
    pub k: usize,
    pub sigma: Permutation,
}

/// Which of the six normal-form conditions hold, with their witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub n: usize,
    pub f: usize,
    /// `holds[c - 1]` is condition `c`.
    pub holds: [bool; 6],
    /// `(h, h', l)` with `μ_h = μ_{h'}^l` for associate pairs.
    pub associate_exponents: Vec<(usize, usize, usize)>,
    /// Associate pairs for which no admissible exponent exists.
    pub exponent_failures: Vec<(usize, usize)>,
    pub commutator_witnesses: Vec<CommutatorWitness>,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.holds.iter().all(|&h| h)
    }

    pub fn holds(&self, condition: usize) -> bool {
        self.holds[condition - 1]
    }
}

/// Checks the six conditions literally in the current labeling. Use
/// [`normalize_labeling`] first if `μ_n` is not yet `(1 2 … n−f)`.
pub fn check_structure_conditions(q: &Quandle, f: usize) -> Result<ConditionReport, StructureError> {
    let n = q.order();
    if f < 2 || f + 2 > n {
        return Err(StructureError::FOutOfRange { n, f });
    }
    if !q.is_cyclic_type(f) {
        return Err(StructureError::WrongFixedCount { f });
    }
    let m = n - f;
    let canonical: Vec<usize> = (1..=m).collect();
    let mu_n_canonical = Permutation::from_cycles(n, &[canonical]).unwrap();
    let mu_n = q.mu(n);
    let mu_nf = q.mu(m);
    let mut holds = [false; 6];

    holds[0] = *mu_n == mu_n_canonical;

    // 2: associates are coprime powers of each other
    let mut associate_exponents = Vec::new();
    let mut exponent_failures = Vec::new();
    for h in 1..=n {
        for h2 in 1..=n {
            if !are_associate(q, h, h2) {
                continue;
            }
            let base = q.mu(h2);
            let found = (1..m)
                .filter(|&l| gcd(m as u64, l as u64) == 1)
                .find(|&l| base.pow(l as i64) == *q.mu(h));
            match found {
                Some(l) => associate_exponents.push((h, h2, l)),
                None => exponent_failures.push((h, h2)),
            }
        }
    }
    holds[1] = exponent_failures.is_empty();

    let conj_by_power = |p: &Permutation, k: i64| -> Permutation {
        &(&mu_n.pow(k) * p) * &mu_n.pow(-k)
    };

    holds[2] = (1..=m).all(|k| *q.mu(k) == conj_by_power(mu_nf, k as i64));

    let fixed_n: Vec<usize> = mu_n.fixed_points().into_iter().collect();
    let mu_nf_inv = mu_nf.inverse();
    holds[3] = fixed_n.iter().all(|&a| {
        let lhs = &(mu_nf * q.mu(a)) * &mu_nf_inv;
        lhs == conj_by_power(mu_nf, mu_nf.apply(a) as i64)
    });
    holds[4] = fixed_n.iter().all(|&a| {
        let lhs = &(&mu_nf_inv * q.mu(a)) * mu_nf;
        lhs == conj_by_power(mu_nf, mu_nf_inv.apply(a) as i64)
    });

    // 6: τ is μ_{n-f} itself (one cycle plus fixed points); σ must move
    // only points of F_{n-f}
    let fixed_nf = mu_nf.fixed_points();
    let excluded: BTreeSet<usize> = fixed_n.iter().map(|&a| mu_nf_inv.apply(a)).collect();
    let mut commutator_witnesses = Vec::new();
    let mut six = true;
    for mi in (1..=m).filter(|x| !excluded.contains(x)) {
        let x = &(&mu_n.pow(-(mu_nf.apply(mi) as i64)) * mu_nf) * &mu_n.pow(mi as i64);
        let found = (1..m).find_map(|k| {
            let sigma = &x * &mu_nf.pow(-(k as i64));
            let supported = sigma.moved_points().is_subset(&fixed_nf);
            supported.then_some(CommutatorWitness { m: mi, k, sigma })
        });
        match found {
            Some(w) => commutator_witnesses.push(w),
            None => six = false,
        }
    }
    holds[5] = six;

    Ok(ConditionReport {
        n,
        f,
        holds,
        associate_exponents,
        exponent_failures,
        commutator_witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{dihedral, q62, trivial, two_f_canonical};

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    fn table5() -> Quandle {
        crate::io::parse_quandle("5\n(4 5)\n(4 5)\n(4 5)\n(2 3)\n(2 3)\n").unwrap()
    }

    #[test]
    fn fixed_point_sets_of_known_quandles() {
        let q = q62();
        let d = fixed_point_data(&q).unwrap();
        assert_eq!(d.f(6), &set(&[5, 6]));
        assert_eq!(d.f(5), &set(&[5, 6]));
        assert_eq!(d.f(2), &set(&[2, 4]));
        assert_eq!(d.f(1), &set(&[1, 3]));
        assert_eq!(d.c(6), &set(&[1, 2, 3, 4]));
        let t5 = fixed_point_data(&table5()).unwrap();
        assert_eq!(t5.f(1), &set(&[1, 2, 3]));
        assert_eq!(t5.f(4), &set(&[1, 4, 5]));
        let t = trivial(4).unwrap();
        assert!(fixed_point_sets(&t).iter().all(|s| s == &set(&[1, 2, 3, 4])));
        assert_eq!(fixed_point_data(&t), Err(StructureError::NotCyclicType));
    }

    #[test]
    fn connectedness() {
        let cert = orbit_certificate(&q62());
        assert!(cert.is_transitive());
        for t in 1..=6 {
            assert_eq!(cert.replay(&q62(), t), Some(t));
        }
        assert!(!is_connected(&trivial(2).unwrap()));
        assert!(!is_connected(&dihedral(4).unwrap()));
        assert!(is_connected(&dihedral(3).unwrap()));
        assert!(is_connected(&trivial(1).unwrap()));
    }

    #[test]
    fn association_classes_of_known_quandles() {
        assert_eq!(
            association_classes(&dihedral(4).unwrap()).unwrap().classes(),
            &[set(&[1, 3]), set(&[2, 4])]
        );
        assert_eq!(
            association_classes(&q62()).unwrap().classes(),
            &[set(&[1, 3]), set(&[2, 4]), set(&[5, 6])]
        );
        assert_eq!(
            association_classes(&trivial(4).unwrap()).unwrap().classes(),
            &[set(&[1, 2, 3, 4])]
        );
        assert!(are_associate(&q62(), 5, 6));
        assert!(!are_associate(&q62(), 5, 5));
    }

    #[test]
    fn non_transitive_association_is_diagnosed() {
        assert_eq!(
            association_classes(&table5()).unwrap().classes(),
            &[set(&[1, 2, 3]), set(&[4, 5])]
        );
        // the adjoined point is associate to every element of R_3, whose
        // elements are pairwise non-associate
        let id = Permutation::identity(3).unwrap();
        let q = crate::constructors::adjoin_common_fixed_point(&dihedral(3).unwrap(), &id).unwrap();
        match association_classes(&q) {
            Err(StructureError::NotTransitive { i, j, k }) => {
                let rel = |a, b| a == b || are_associate(&q, a, b);
                assert!(rel(i, j) && rel(j, k) && !rel(i, k));
            }
            other => panic!("expected a transitivity failure, got {other:?}"),
        }
    }

    #[test]
    fn quotients() {
        let q = q62();
        let classes = association_classes(&q).unwrap();
        assert!(is_congruence(&q, &classes));
        let quo = quotient(&q, &classes).unwrap();
        assert_eq!(quo.to_table(), vec![vec![1, 3, 2], vec![3, 2, 1], vec![2, 1, 3]]);
        let r4 = dihedral(4).unwrap();
        let quo = quotient(&r4, &association_classes(&r4).unwrap()).unwrap();
        assert_eq!(quo, trivial(2).unwrap());
        assert_eq!(quotient(&q, &PartitionClasses::singletons(6)).unwrap(), q);
        let bad = PartitionClasses::new(6, vec![set(&[1, 2]), set(&[3, 4, 5, 6])]).unwrap();
        assert!(!is_congruence(&q, &bad));
        assert!(matches!(quotient(&q, &bad), Err(StructureError::NotCongruence { .. })));
    }

    #[test]
    fn partition_parsing() {
        let p = PartitionClasses::parse(6, "{2, 4} {1,3}  {5,6}").unwrap();
        assert_eq!(p.to_string(), "{1,3} {2,4} {5,6}");
        assert!(PartitionClasses::parse(4, "{1,2} {3}").is_err());
        assert!(PartitionClasses::parse(2, "{1,x} {2}").is_err());
        assert!(PartitionClasses::parse(2, "{1} 2").is_err());
    }

    #[test]
    fn partition_validation() {
        assert!(PartitionClasses::new(3, vec![set(&[1, 2])]).is_err());
        assert!(PartitionClasses::new(3, vec![set(&[1, 2]), set(&[2, 3])]).is_err());
        assert!(PartitionClasses::new(3, vec![set(&[1, 4]), set(&[2, 3])]).is_err());
        let p = PartitionClasses::new(3, vec![set(&[3]), set(&[1, 2])]).unwrap();
        assert_eq!(p.to_string(), "{1,2} {3}");
    }

    #[test]
    fn common_fixed_points_of_known_quandles() {
        assert_eq!(common_fixed_points(&table5()), set(&[1]));
        // F-sets of Q62 are {1,3}, {2,4}, {5,6}: pairwise disjoint
        assert!(common_fixed_points(&q62()).is_empty());
        assert_eq!(common_fixed_points(&trivial(3).unwrap()), set(&[1, 2, 3]));
    }

    #[test]
    fn six_conditions_on_q62() {
        let r = check_structure_conditions(&q62(), 2).unwrap();
        assert!(r.all_hold(), "{r:?}");
        assert!(r.associate_exponents.contains(&(2, 4, 3)));
        for &(h, h2, l) in &r.associate_exponents {
            assert_eq!(gcd(4, l as u64), 1);
            assert_eq!(q62().mu(h2).pow(l as i64), *q62().mu(h));
        }
        for w in &r.commutator_witnesses {
            assert!((1..4).contains(&w.k));
        }
    }

    #[test]
    fn first_three_conditions_at_n_equal_2f() {
        for f in 2..=4 {
            let r = check_structure_conditions(&two_f_canonical(f).unwrap(), f).unwrap();
            assert!(r.holds(1) && r.holds(2) && r.holds(3), "f={f}: {r:?}");
        }
    }

    #[test]
    fn normalization_restores_condition_one() {
        let alpha = Permutation::from_cycles(6, &[[1, 5], [2, 6]]).unwrap();
        let moved = q62().relabel(&alpha);
        let r = check_structure_conditions(&moved, 2).unwrap();
        assert!(!r.holds(1));
        let (norm, beta) = normalize_labeling(&moved).unwrap();
        assert_eq!(moved.relabel(&beta), norm);
        assert!(check_structure_conditions(&norm, 2).unwrap().holds(1));
        assert!(normalize_labeling(&trivial(3).unwrap()).is_none());
    }

    #[test]
    fn condition_errors() {
        assert_eq!(
            check_structure_conditions(&q62(), 1),
            Err(StructureError::FOutOfRange { n: 6, f: 1 })
        );
        assert_eq!(
            check_structure_conditions(&q62(), 3),
            Err(StructureError::WrongFixedCount { f: 3 })
        );
    }
}
