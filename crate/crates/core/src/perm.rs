//! Permutations of `{1..n}`.
//!
//! Points are 1-based everywhere in the public API. Composition follows
//! ordinary function composition: `p.compose(&q)` maps `x` to `p(q(x))`,
//! so `q` is applied first.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("point {point} is out of range 1..={degree}")]
    OutOfRange { point: usize, degree: usize },
    #[error("point {0} appears more than once")]
    Repeated(usize),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("malformed cycle notation at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

/// A bijection of `{1..n}` onto itself.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // images[x] is the image of point x + 1, minus one
    images: Vec<usize>,
}

/// Sorted multiset of cycle lengths, fixed points included as 1s.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(Vec<usize>);

impl Pattern {
    pub fn new(mut lengths: Vec<usize>) -> Self {
        lengths.sort_unstable();
        Pattern(lengths)
    }

    /// The pattern `{1 (f times), n - f}` of a single `(n-f)`-cycle.
    pub fn cyclic(n: usize, f: usize) -> Self {
        let mut lengths = vec![1; f];
        if n > f {
            lengths.push(n - f);
        }
        Pattern::new(lengths)
    }

    pub fn lengths(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn fixed_count(&self) -> usize {
        self.0.iter().filter(|&&l| l == 1).count()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Result<Self, PermError> {
        if n == 0 {
            return Err(PermError::ZeroDegree);
        }
        Ok(Permutation {
            images: (0..n).collect(),
        })
    }

    /// Builds a permutation from its 1-based image list.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        if n == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut seen = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for &y in images {
            if y == 0 || y > n {
                return Err(PermError::OutOfRange {
                    point: y,
                    degree: n,
                });
            }
            if std::mem::replace(&mut seen[y - 1], true) {
                return Err(PermError::Repeated(y));
            }
            zero_based.push(y - 1);
        }
        Ok(Permutation { images: zero_based })
    }

    /// Builds a permutation from disjoint cycles; omitted points are fixed.
    pub fn from_cycles<C: AsRef<[usize]>>(n: usize, cycles: &[C]) -> Result<Self, PermError> {
        let mut p = Self::identity(n)?;
        let mut seen = vec![false; n];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for &x in cycle {
                if x == 0 || x > n {
                    return Err(PermError::OutOfRange {
                        point: x,
                        degree: n,
                    });
                }
                if std::mem::replace(&mut seen[x - 1], true) {
                    return Err(PermError::Repeated(x));
                }
            }
            for (k, &x) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                p.images[x - 1] = next - 1;
            }
        }
        Ok(p)
    }

    /// Parses cycle notation such as `(1 2 3)(4)`. An empty string or `()`
    /// is the identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self, PermError> {
        let cycles = parse_cycle_list(text)?;
        Self::from_cycles(n, &cycles)
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &x)| i == x)
        });
        Permutation { images }
    }

    pub(crate) fn zero_based(&self) -> &[usize] {
        &self.images
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    ///
    /// Panics if `x` is outside `1..=degree`.
    pub fn apply(&self, x: usize) -> usize {
        assert!(
            (1..=self.degree()).contains(&x),
            "point {x} out of range 1..={}",
            self.degree()
        );
        self.images[x - 1] + 1
    }

    /// The 1-based image list `[p(1), p(2), ..., p(n)]`.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&y| y + 1).collect()
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&y| self.images[y]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    /// The `k`-th power; negative `k` gives powers of the inverse.
    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation {
            images: (0..self.degree()).collect(),
        };
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose_unchecked(&sq);
            }
            sq = sq.compose_unchecked(&sq);
            e >>= 1;
        }
        acc
    }

    /// `alpha ∘ self ∘ alpha⁻¹`.
    pub fn conjugate_by(&self, alpha: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != alpha.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: alpha.degree(),
            });
        }
        let mut images = vec![0; self.degree()];
        for x in 0..self.degree() {
            images[alpha.images[x]] = alpha.images[self.images[x]];
        }
        Ok(Permutation { images })
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.degree() == other.degree()
            && (0..self.degree()).all(|x| self.images[other.images[x]] == other.images[self.images[x]])
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Disjoint cycles, singletons included. Each cycle starts at its
    /// minimum and cycles are sorted by their minima.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn pattern(&self) -> Pattern {
        Pattern::new(self.cycles().iter().map(Vec::len).collect())
    }

    pub fn fixed_points(&self) -> BTreeSet<usize> {
        (1..=self.degree()).filter(|&x| self.images[x - 1] == x - 1).collect()
    }

    pub fn moved_points(&self) -> BTreeSet<usize> {
        (1..=self.degree()).filter(|&x| self.images[x - 1] != x - 1).collect()
    }

    /// Order of the permutation as a group element.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Extends the permutation to degree `degree + 1`, fixing the new point.
    pub fn extend_fixing(&self) -> Permutation {
        let mut images = self.images.clone();
        images.push(images.len());
        Permutation { images }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on degree mismatch; use [`Permutation::compose`] to handle it.
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("degree mismatch in permutation product")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// A cycle list parsed from text, before a degree is attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleList(pub Vec<Vec<usize>>);

impl FromStr for CycleList {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_cycle_list(s).map(CycleList)
    }
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>, PermError> {
    let syntax = |offset: usize, message: &str| PermError::Syntax {
        offset,
        message: message.to_string(),
    };
    let bytes = text.as_bytes();
    let mut cycles = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b if b.is_ascii_whitespace() => i += 1,
            b'(' => {
                i += 1;
                let mut cycle = Vec::new();
                loop {
                    while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                        i += 1;
                    }
                    if i >= bytes.len() {
                        return Err(syntax(i, "unterminated cycle"));
                    }
                    if bytes[i] == b')' {
                        i += 1;
                        break;
                    }
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if start == i {
                        return Err(syntax(i, "expected a point or ')'"));
                    }
                    let value = text[start..i]
                        .parse::<usize>()
                        .map_err(|_| syntax(start, "point does not fit in an integer"))?;
                    cycle.push(value);
                }
                if !cycle.is_empty() {
                    cycles.push(cycle);
                }
            }
            _ => return Err(syntax(i, "expected '('")),
        }
    }
    Ok(cycles)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
