//! Named quandle families and the common-fixed-point surgeries.
//!
//! Every constructor goes through [`Quandle::from_permutations`], so the
//! axioms are verified on each result.

use std::fmt;

use thiserror::Error;

use crate::perm::Permutation;
use crate::quandle::{Quandle, QuandleError};
use crate::structure::common_fixed_points;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("{family} is undefined for {params}")]
    Domain { family: &'static str, params: String },
    #[error("{0} is not a common fixed point")]
    NotCommonFixedPoint(usize),
    #[error("extraction needs cyclic type (n, f) with f > 2 and f + 2 <= n <= 2f; got {0}")]
    ExtractionHypotheses(String),
    #[error("permutation does not commute with mu_{0}")]
    NotCommuting(usize),
    #[error("permutation sends {i} to {image} but mu_{image} differs from mu_{i}")]
    MixesPermutations { i: usize, image: usize },
    #[error("permutation degree {got} does not match quandle order {expected}")]
    Degree { got: usize, expected: usize },
    #[error("mu_{i} and mu_{j} are neither equal nor disjointly supported")]
    NotBlockStructured { i: usize, j: usize },
    #[error("index {0} out of range")]
    Index(usize),
    #[error(transparent)]
    Quandle(#[from] QuandleError),
}

fn domain(family: &'static str, params: String) -> ConstructError {
    ConstructError::Domain { family, params }
}

/// A named family together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    Trivial { n: usize },
    Dihedral { n: usize },
    Q62,
    TwoFCanonical { f: usize },
    DivisibleFamily { n: usize, f: usize },
}

impl FamilySpec {
    pub fn build(self) -> Result<Quandle, ConstructError> {
        match self {
            FamilySpec::Trivial { n } => trivial(n),
            FamilySpec::Dihedral { n } => dihedral(n),
            FamilySpec::Q62 => Ok(q62()),
            FamilySpec::TwoFCanonical { f } => two_f_canonical(f),
            FamilySpec::DivisibleFamily { n, f } => divisible_family(n, f),
        }
    }

    /// Parses a family name and its integer parameters, as used on the
    /// command line: `trivial N`, `dihedral N`, `q62`, `two-f F`,
    /// `divisible N F`.
    pub fn parse(name: &str, params: &[usize]) -> Option<FamilySpec> {
        match (name, params) {
            ("trivial", &[n]) => Some(FamilySpec::Trivial { n }),
            ("dihedral", &[n]) => Some(FamilySpec::Dihedral { n }),
            ("q62", &[]) => Some(FamilySpec::Q62),
            ("two-f", &[f]) => Some(FamilySpec::TwoFCanonical { f }),
            ("divisible", &[n, f]) => Some(FamilySpec::DivisibleFamily { n, f }),
            _ => None,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Trivial { n } => write!(f, "trivial {n}"),
            FamilySpec::Dihedral { n } => write!(f, "dihedral {n}"),
            FamilySpec::Q62 => write!(f, "q62"),
            FamilySpec::TwoFCanonical { f: k } => write!(f, "two-f {k}"),
            FamilySpec::DivisibleFamily { n, f: k } => write!(f, "divisible {n} {k}"),
        }
    }
}

/// `T_n`: every `μ_i` is the identity.
pub fn trivial(n: usize) -> Result<Quandle, ConstructError> {
    let id = Permutation::identity(n).map_err(|_| domain("trivial", format!("n = {n}")))?;
    Ok(Quandle::from_permutations(vec![id; n])?)
}

/// `R_n`: `a ∗ b = 2b − a mod n`, residue `r` carried by label `r + 1`.
pub fn dihedral(n: usize) -> Result<Quandle, ConstructError> {
    if n < 2 {
        return Err(domain("dihedral", format!("n = {n}")));
    }
    let perms = (0..n)
        .map(|b| Permutation::from_zero_based((0..n).map(|a| (2 * b + n - a) % n).collect()))
        .collect();
    Ok(Quandle::from_permutations(perms)?)
}

/// The octahedron quandle of order 6 with 2 fixed points.
pub fn q62() -> Quandle {
    const TABLE: [[usize; 6]; 6] = [
        [1, 5, 1, 6, 4, 2],
        [6, 2, 5, 2, 1, 3],
        [3, 6, 3, 5, 2, 4],
        [5, 4, 6, 4, 3, 1],
        [2, 3, 4, 1, 5, 5],
        [4, 1, 2, 3, 6, 6],
    ];
    let table: Vec<Vec<usize>> = TABLE.iter().map(|r| r.to_vec()).collect();
    Quandle::from_table(&table).expect("octahedron table is a quandle")
}

/// Order `2f`: `μ_1..μ_f = (f+1 … 2f)` and `μ_{f+1}..μ_{2f} = (1 … f)`.
pub fn two_f_canonical(f: usize) -> Result<Quandle, ConstructError> {
    if f < 2 {
        return Err(domain("two-f", format!("f = {f}")));
    }
    let n = 2 * f;
    let low = Permutation::from_cycles(n, &[(f + 1..=n).collect::<Vec<_>>()]).unwrap();
    let high = Permutation::from_cycles(n, &[(1..=f).collect::<Vec<_>>()]).unwrap();
    let mut perms = vec![low; f];
    perms.extend(std::iter::repeat_n(high, f));
    Ok(Quandle::from_permutations(perms)?)
}

/// `n/(n−f)` blocks of `n−f` consecutive indices; every index in block `i`
/// carries the `(n−f)`-cycle on block `i+1`, the last block wrapping to
/// the first.
pub fn divisible_family(n: usize, f: usize) -> Result<Quandle, ConstructError> {
    if f < 2 || f + 2 > n || n > 2 * f || !f.is_multiple_of(n - f) {
        return Err(domain("divisible", format!("(n, f) = ({n}, {f})")));
    }
    let m = n - f;
    let blocks = n / m;
    let mut perms = Vec::with_capacity(n);
    for i in 0..blocks {
        let next = (i + 1) % blocks;
        let cycle: Vec<usize> = (next * m + 1..=(next + 1) * m).collect();
        let p = Permutation::from_cycles(n, &[cycle]).unwrap();
        perms.extend(std::iter::repeat_n(p, m));
    }
    Ok(Quandle::from_permutations(perms)?)
}

/// Removes the common fixed point `g0`, relabeling the survivors
/// order-preservingly onto `1..n−1`. Requires cyclic type `(n, f)` with
/// `f > 2` and `f + 2 ≤ n ≤ 2f`; the result is of cyclic type `(n−1, f−1)`.
pub fn extract_common_fixed_point(q: &Quandle, g0: usize) -> Result<Quandle, ConstructError> {
    let n = q.order();
    let f = q.cyclic_type_fixed_count();
    match f {
        Some(f) if f > 2 && f + 2 <= n && n <= 2 * f => {}
        _ => {
            let got = match f {
                Some(f) => format!("(n, f) = ({n}, {f})"),
                None => format!("order {n}, not of cyclic type"),
            };
            return Err(ConstructError::ExtractionHypotheses(got));
        }
    }
    extract_unchecked(q, g0)
}

/// Restriction to `Q ∖ {g0}` for any common fixed point, re-verified.
pub fn extract_unchecked(q: &Quandle, g0: usize) -> Result<Quandle, ConstructError> {
    let n = q.order();
    if g0 == 0 || g0 > n {
        return Err(ConstructError::Index(g0));
    }
    if !common_fixed_points(q).contains(&g0) {
        return Err(ConstructError::NotCommonFixedPoint(g0));
    }
    if n == 1 {
        return Err(ConstructError::Quandle(QuandleError::Empty));
    }
    let relabel = |x: usize| if x > g0 { x - 1 } else { x };
    let perms = (1..=n)
        .filter(|&i| i != g0)
        .map(|i| {
            let images: Vec<usize> = (1..=n)
                .filter(|&x| x != g0)
                .map(|x| relabel(q.mu(i).apply(x)))
                .collect();
            Permutation::from_images(&images).expect("restriction of a bijection fixing g0")
        })
        .collect();
    Ok(Quandle::from_permutations(perms)?)
}

/// Adds a new element `n+1` fixed by every permutation, with
/// `μ_{n+1} = mu` extended. `mu` must commute with every `μ_i` and satisfy
/// `μ_{mu(i)} = μ_i`; the second condition is the conjugation identity at
/// the new element and does not follow from the first.
pub fn adjoin_common_fixed_point(q: &Quandle, mu: &Permutation) -> Result<Quandle, ConstructError> {
    if mu.degree() != q.order() {
        return Err(ConstructError::Degree {
            got: mu.degree(),
            expected: q.order(),
        });
    }
    if let Some(i) = q.permutations().iter().position(|m| !m.commutes_with(mu)) {
        return Err(ConstructError::NotCommuting(i + 1));
    }
    if let Some(i) = (1..=q.order()).find(|&i| q.mu(mu.apply(i)) != q.mu(i)) {
        return Err(ConstructError::MixesPermutations { i, image: mu.apply(i) });
    }
    let mut perms: Vec<Permutation> = q.permutations().iter().map(Permutation::extend_fixing).collect();
    perms.push(mu.extend_fixing());
    Ok(Quandle::from_permutations(perms)?)
}

/// `k` successive adjoinings, each using the current `μ_{i0}`; returns the
/// whole chain starting with `q` itself.
pub fn adjoin_chain(q: &Quandle, i0: usize, k: usize) -> Result<Vec<Quandle>, ConstructError> {
    let n = q.order();
    if i0 == 0 || i0 > n {
        return Err(ConstructError::Index(i0));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let (a, b) = (q.mu(i), q.mu(j));
            if a != b && !a.moved_points().is_disjoint(&b.moved_points()) {
                return Err(ConstructError::NotBlockStructured { i, j });
            }
        }
    }
    let mut chain = vec![q.clone()];
    for _ in 0..k {
        let cur = chain.last().unwrap();
        let next = adjoin_common_fixed_point(cur, cur.mu(i0))?;
        chain.push(next);
    }
    Ok(chain)
}

pub fn iterate_adjoin(q: &Quandle, i0: usize, k: usize) -> Result<Quandle, ConstructError> {
    Ok(adjoin_chain(q, i0, k)?.pop().unwrap())
}
