//! Finite quandles on `{1..n}` stored as their sequence of right
//! multiplications `μ_1, …, μ_n`, where `a ∗ b = μ_b(a)`.

use std::fmt;

use thiserror::Error;

use crate::perm::{Pattern, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    /// `μ_i` is not a bijection of `{1..n}` (wrong degree, or a table
    /// column with a repeated entry).
    NotBijection,
    /// `μ_i(i) ≠ i`.
    Idempotency,
    /// `μ_{μ_i(j)} ≠ μ_i μ_j μ_i⁻¹`.
    Conjugation,
}

/// One failed axiom, with the index (`[i]`) or index pair (`[i, j]`) that
/// witnesses it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AxiomViolation {
    pub kind: ViolationKind,
    pub indices: Vec<usize>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.indices.as_slice()) {
            (ViolationKind::NotBijection, [i]) => write!(f, "mu_{i} is not a bijection"),
            (ViolationKind::Idempotency, [i]) => write!(f, "mu_{i}({i}) != {i}"),
            (ViolationKind::Conjugation, [i, j]) => {
                write!(f, "mu_(mu_{i}({j})) != mu_{i} mu_{j} mu_{i}^-1")
            }
            (kind, idx) => write!(f, "{kind:?} at {idx:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuandleError {
    #[error("a quandle needs at least one element")]
    Empty,
    #[error("table row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("table entry at row {row}, column {col} is {value}, outside 1..={n}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
    #[error("not a quandle: {} axiom violation(s), first: {}", .0.len(), .0[0])]
    Axioms(Vec<AxiomViolation>),
}

/// A verified finite quandle.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quandle {
    mus: Vec<Permutation>,
}

/// Indexed list of patterns, one per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    patterns: Vec<Pattern>,
}

impl Profile {
    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    /// The patterns as a sorted multiset.
    pub fn multiset(&self) -> Vec<Pattern> {
        let mut m = self.patterns.clone();
        m.sort();
        m
    }

    pub fn is_constant(&self) -> bool {
        self.patterns.windows(2).all(|w| w[0] == w[1])
    }
}

/// Outcome of testing a quandle for cyclic type with a given `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CyclicTypeVerdict {
    CyclicType,
    /// `f` lies outside `1 < f ≤ n - 2`.
    FOutOfRange,
    /// `μ_index` does not have pattern `{1 (f times), n - f}`.
    PatternMismatch { index: usize },
}

/// Lists every axiom violation of the sequence `perms`, read as `μ_1..μ_n`.
///
/// The list is empty exactly when the sequence defines a quandle.
pub fn verify(perms: &[Permutation]) -> Vec<AxiomViolation> {
    let n = perms.len();
    let mut out = Vec::new();
    for (i, p) in perms.iter().enumerate() {
        if p.degree() != n {
            out.push(AxiomViolation {
                kind: ViolationKind::NotBijection,
                indices: vec![i + 1],
            });
        }
    }
    if !out.is_empty() {
        return out;
    }
    for (i, p) in perms.iter().enumerate() {
        if p.apply(i + 1) != i + 1 {
            out.push(AxiomViolation {
                kind: ViolationKind::Idempotency,
                indices: vec![i + 1],
            });
        }
    }
    for i in 0..n {
        let mi = perms[i].zero_based();
        for j in 0..n {
            let mj = perms[j].zero_based();
            let target = perms[mi[j]].zero_based();
            // μ_{μ_i(j)}(μ_i(x)) must equal μ_i(μ_j(x)) for every x
            if (0..n).any(|x| target[mi[x]] != mi[mj[x]]) {
                out.push(AxiomViolation {
                    kind: ViolationKind::Conjugation,
                    indices: vec![i + 1, j + 1],
                });
            }
        }
    }
    out
}

/// Checks a multiplication table (row `a`, column `b`, entry `a ∗ b`).
///
/// Structural problems (non-square, entries out of range) are errors;
/// axiom failures, including non-bijective columns, are returned as data.
pub fn verify_table(table: &[Vec<usize>]) -> Result<Vec<AxiomViolation>, QuandleError> {
    let n = check_table_shape(table)?;
    let mut out = Vec::new();
    for b in 0..n {
        let mut seen = vec![false; n];
        if (0..n).any(|a| std::mem::replace(&mut seen[table[a][b] - 1], true)) {
            out.push(AxiomViolation {
                kind: ViolationKind::NotBijection,
                indices: vec![b + 1],
            });
        }
    }
    if !out.is_empty() {
        return Ok(out);
    }
    Ok(verify(&table_columns(table)))
}

fn check_table_shape(table: &[Vec<usize>]) -> Result<usize, QuandleError> {
    let n = table.len();
    if n == 0 {
        return Err(QuandleError::Empty);
    }
    for (r, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(QuandleError::NotSquare {
                row: r + 1,
                len: row.len(),
                expected: n,
            });
        }
        for (c, &v) in row.iter().enumerate() {
            if v == 0 || v > n {
                return Err(QuandleError::EntryOutOfRange {
                    row: r + 1,
                    col: c + 1,
                    value: v,
                    n,
                });
            }
        }
    }
    Ok(n)
}

// Columns of a square table whose columns are known to be bijections.
fn table_columns(table: &[Vec<usize>]) -> Vec<Permutation> {
    let n = table.len();
    (0..n)
        .map(|b| Permutation::from_zero_based((0..n).map(|a| table[a][b] - 1).collect()))
        .collect()
}

impl Quandle {
    /// Builds a quandle from `μ_1..μ_n`, verifying every axiom.
    pub fn from_permutations(perms: Vec<Permutation>) -> Result<Self, QuandleError> {
        if perms.is_empty() {
            return Err(QuandleError::Empty);
        }
        let violations = verify(&perms);
        if violations.is_empty() {
            Ok(Quandle { mus: perms })
        } else {
            Err(QuandleError::Axioms(violations))
        }
    }

    /// Skips verification; callers must have established the axioms.
    pub(crate) fn from_verified(perms: Vec<Permutation>) -> Self {
        debug_assert!(verify(&perms).is_empty());
        Quandle { mus: perms }
    }

    pub fn from_table(table: &[Vec<usize>]) -> Result<Self, QuandleError> {
        let violations = verify_table(table)?;
        if !violations.is_empty() {
            return Err(QuandleError::Axioms(violations));
        }
        Ok(Quandle {
            mus: table_columns(table),
        })
    }

    pub fn order(&self) -> usize {
        self.mus.len()
    }

    /// `μ_i`, 1-based.
    pub fn mu(&self, i: usize) -> &Permutation {
        &self.mus[i - 1]
    }

    pub fn permutations(&self) -> &[Permutation] {
        &self.mus
    }

    /// `a ∗ b = μ_b(a)`.
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.mus[b - 1].apply(a)
    }

    /// Row `a`, column `b` holds `a ∗ b`.
    pub fn to_table(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (1..=n)
            .map(|a| (1..=n).map(|b| self.op(a, b)).collect())
            .collect()
    }

    /// Row-major table entries, 0-based; orders tables lexicographically.
    pub fn table_key(&self) -> Vec<u32> {
        let n = self.order();
        let mut key = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                key.push(self.mus[b].zero_based()[a] as u32);
            }
        }
        key
    }

    pub fn profile(&self) -> Profile {
        Profile {
            patterns: self.mus.iter().map(Permutation::pattern).collect(),
        }
    }

    pub fn cyclic_type_verdict(&self, f: usize) -> CyclicTypeVerdict {
        let n = self.order();
        if f < 2 || f + 2 > n {
            return CyclicTypeVerdict::FOutOfRange;
        }
        let want = Pattern::cyclic(n, f);
        match self.mus.iter().position(|m| m.pattern() != want) {
            Some(i) => CyclicTypeVerdict::PatternMismatch { index: i + 1 },
            None => CyclicTypeVerdict::CyclicType,
        }
    }

    pub fn is_cyclic_type(&self, f: usize) -> bool {
        self.cyclic_type_verdict(f) == CyclicTypeVerdict::CyclicType
    }

    /// The `f` for which this quandle is of cyclic type, if any. Inferred
    /// as `n` minus the longest cycle length, then confirmed.
    pub fn cyclic_type_fixed_count(&self) -> Option<usize> {
        let n = self.order();
        let longest = self.mus[0].cycles().iter().map(Vec::len).max()?;
        let f = n - longest;
        self.is_cyclic_type(f).then_some(f)
    }

    /// The isomorphic copy with `μ'_{α(i)} = α μ_i α⁻¹`.
    ///
    /// Panics if `alpha` has the wrong degree.
    pub fn relabel(&self, alpha: &Permutation) -> Quandle {
        assert_eq!(alpha.degree(), self.order(), "relabeling degree mismatch");
        let mut mus = vec![None; self.order()];
        for (i, m) in self.mus.iter().enumerate() {
            let target = alpha.apply(i + 1) - 1;
            mus[target] = Some(m.conjugate_by(alpha).expect("degrees checked"));
        }
        Quandle::from_verified(mus.into_iter().map(Option::unwrap).collect())
    }
}

impl fmt::Debug for Quandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quandle[{}] {{", self.order())?;
        for (i, m) in self.mus.iter().enumerate() {
            write!(f, " mu_{}={}", i + 1, m)?;
        }
        write!(f, " }}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn table1() -> Vec<Vec<usize>> {
        vec![
            vec![1, 5, 1, 6, 4, 2],
            vec![6, 2, 5, 2, 1, 3],
            vec![3, 6, 3, 5, 2, 4],
            vec![5, 4, 6, 4, 3, 1],
            vec![2, 3, 4, 1, 5, 5],
            vec![4, 1, 2, 3, 6, 6],
        ]
    }

    fn table3() -> Vec<Vec<usize>> {
        vec![
            vec![1, 3, 1, 3],
            vec![4, 2, 4, 2],
            vec![3, 1, 3, 1],
            vec![2, 4, 2, 4],
        ]
    }

    fn table5() -> Vec<Vec<usize>> {
        vec![
            vec![1, 1, 1, 1, 1],
            vec![2, 2, 2, 3, 3],
            vec![3, 3, 3, 2, 2],
            vec![5, 5, 5, 4, 4],
            vec![4, 4, 4, 5, 5],
        ]
    }

    #[test]
    fn table1_columns_give_a_quandle() {
        let q = Quandle::from_table(&table1()).unwrap();
        assert_eq!(q.mu(6).to_string(), "(1 2 3 4)(5)(6)");
        assert_eq!(q.mu(4).to_string(), "(1 6 3 5)(2)(4)");
        assert_eq!(q.to_table(), table1());
        let again = Quandle::from_permutations(q.permutations().to_vec()).unwrap();
        assert_eq!(again, q);
    }

    #[test]
    fn trivial_and_singleton() {
        let id = Permutation::identity(4).unwrap();
        assert!(Quandle::from_permutations(vec![id; 4]).is_ok());
        assert!(verify(&[Permutation::identity(1).unwrap()]).is_empty());
    }

    #[test]
    fn idempotency_violation_is_reported() {
        let swap = Permutation::from_cycles(2, &[[1, 2]]).unwrap();
        let v = verify(&[swap, Permutation::identity(2).unwrap()]);
        assert!(v.contains(&AxiomViolation {
            kind: ViolationKind::Idempotency,
            indices: vec![1]
        }));
    }

    #[test]
    fn swapped_mu4_fails_conjugation() {
        let q = Quandle::from_table(&table1()).unwrap();
        let mut perms = q.permutations().to_vec();
        perms[3] = Permutation::from_cycles(6, &[[1, 5, 3, 6]]).unwrap();
        let v = verify(&perms);
        assert!(!v.is_empty());
        for w in &v {
            assert_eq!(w.kind, ViolationKind::Conjugation);
            let (i, j) = (w.indices[0], w.indices[1]);
            let lhs = &perms[perms[i - 1].apply(j) - 1];
            let rhs = &(&perms[i - 1] * &perms[j - 1]) * &perms[i - 1].inverse();
            assert_ne!(lhs, &rhs, "witness ({i},{j}) must re-check as a failure");
        }
    }

    #[test]
    fn table_shape_errors() {
        assert_eq!(Quandle::from_table(&[]), Err(QuandleError::Empty));
        assert!(matches!(
            Quandle::from_table(&[vec![1, 2], vec![1]]),
            Err(QuandleError::NotSquare { row: 2, .. })
        ));
        assert!(matches!(
            Quandle::from_table(&[vec![1, 3], vec![2, 2]]),
            Err(QuandleError::EntryOutOfRange { row: 1, col: 2, .. })
        ));
        let mut t = table1();
        t[0][1] = 6;
        match Quandle::from_table(&t) {
            Err(QuandleError::Axioms(v)) => assert_eq!(
                v,
                vec![AxiomViolation {
                    kind: ViolationKind::NotBijection,
                    indices: vec![2]
                }]
            ),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn table5_permutations() {
        let q = Quandle::from_table(&table5()).unwrap();
        for i in 1..=3 {
            assert_eq!(q.mu(i), &Permutation::from_cycles(5, &[[4, 5]]).unwrap());
        }
        for i in 4..=5 {
            assert_eq!(q.mu(i), &Permutation::from_cycles(5, &[[2, 3]]).unwrap());
        }
        assert!(q.is_cyclic_type(3));
        assert_eq!(q.cyclic_type_fixed_count(), Some(3));
    }

    #[test]
    fn cyclic_type_checks() {
        let q = Quandle::from_table(&table1()).unwrap();
        assert!(q.is_cyclic_type(2));
        assert!(!q.is_cyclic_type(3));
        assert_eq!(q.cyclic_type_verdict(1), CyclicTypeVerdict::FOutOfRange);
        assert_eq!(q.cyclic_type_verdict(5), CyclicTypeVerdict::FOutOfRange);
        let r4 = Quandle::from_table(&table3()).unwrap();
        assert!(r4.is_cyclic_type(2));
        assert!(q.profile().is_constant());
        assert_eq!(q.profile().multiset()[0].to_string(), "{1,1,4}");
    }

    #[test]
    fn dihedral_six_is_never_cyclic_type() {
        // a ∗ b = 2b - a mod 6, computed straight from the formula
        let table: Vec<Vec<usize>> = (0..6)
            .map(|a| (0..6).map(|b| ((2 * b + 6 - a) % 6) + 1).collect())
            .collect();
        let r6 = Quandle::from_table(&table).unwrap();
        for m in r6.permutations() {
            assert_eq!(m.pattern().lengths(), &[1, 1, 2, 2]);
        }
        for f in 0..=6 {
            assert!(!r6.is_cyclic_type(f));
        }
        assert_eq!(r6.cyclic_type_fixed_count(), None);
    }

    #[test]
    fn relabel_is_a_quandle_with_same_profile_multiset() {
        let q = Quandle::from_table(&table1()).unwrap();
        let alpha = Permutation::from_cycles(6, &[[1, 5], [2, 6]]).unwrap();
        let r = q.relabel(&alpha);
        assert!(verify(r.permutations()).is_empty());
        assert_eq!(r.profile().multiset(), q.profile().multiset());
        assert_ne!(r, q);
        assert_eq!(r.relabel(&alpha.inverse()), q);
    }
}
