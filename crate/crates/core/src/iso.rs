//! Isomorphism testing and deduplication up to isomorphism.

use std::fmt;

use crate::perm::{Pattern, Permutation};
use crate::quandle::Quandle;

/// A bijection `α` with `μ'_{α(i)} = α μ_i α⁻¹` for every `i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IsoWitness {
    alpha: Permutation,
}

impl IsoWitness {
    /// Wraps `alpha` after checking it is an isomorphism from `q` to `target`.
    pub fn new(q: &Quandle, target: &Quandle, alpha: Permutation) -> Option<Self> {
        is_isomorphism(q, target, &alpha).then_some(IsoWitness { alpha })
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    /// Witness in the opposite direction.
    pub fn inverse(&self) -> IsoWitness {
        IsoWitness {
            alpha: self.alpha.inverse(),
        }
    }

    /// The one-line mapping `1 -> a, 2 -> b, …`.
    pub fn mapping_line(&self) -> String {
        (1..=self.alpha.degree())
            .map(|i| format!("{i} -> {}", self.alpha.apply(i)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for IsoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\n{}", self.alpha, self.mapping_line())
    }
}

/// Checks `μ'_{α(i)} = α μ_i α⁻¹` for all `i`.
pub fn is_isomorphism(q: &Quandle, target: &Quandle, alpha: &Permutation) -> bool {
    let n = q.order();
    if target.order() != n || alpha.degree() != n {
        return false;
    }
    let a = alpha.zero_based();
    (0..n).all(|i| {
        let mi = q.mu(i + 1).zero_based();
        let mt = target.mu(a[i] + 1).zero_based();
        (0..n).all(|j| a[mi[j]] == mt[a[j]])
    })
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct ElementInvariant {
    pattern: Pattern,
    associates: usize,
    fixed_by: usize,
}

fn element_invariants(q: &Quandle) -> Vec<ElementInvariant> {
    let n = q.order();
    let perms: Vec<&[usize]> = q.permutations().iter().map(|p| p.zero_based()).collect();
    (0..n)
        .map(|i| ElementInvariant {
            pattern: q.mu(i + 1).pattern(),
            associates: (0..n)
                .filter(|&j| j != i && perms[i][j] == j && perms[j][i] == i)
                .count(),
            fixed_by: (0..n).filter(|&j| perms[j][i] == i).count(),
        })
        .collect()
}

struct Matcher<'a> {
    src: Vec<&'a [usize]>,
    dst: Vec<&'a [usize]>,
    inv_src: Vec<ElementInvariant>,
    inv_dst: Vec<ElementInvariant>,
    order: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl Matcher<'_> {
    // Extends `alpha` by closure under α(μ_i(j)) = μ'_{α(i)}(α(j)); false on conflict.
    fn close(&self, alpha: &mut [usize], used: &mut [bool]) -> bool {
        let n = alpha.len();
        loop {
            let mut changed = false;
            for i in 0..n {
                if alpha[i] == NONE {
                    continue;
                }
                let (mi, mt) = (self.src[i], self.dst[alpha[i]]);
                for j in 0..n {
                    if alpha[j] == NONE {
                        continue;
                    }
                    let t = mi[j];
                    let img = mt[alpha[j]];
                    if alpha[t] == NONE {
                        if used[img] || self.inv_src[t] != self.inv_dst[img] {
                            return false;
                        }
                        alpha[t] = img;
                        used[img] = true;
                        changed = true;
                    } else if alpha[t] != img {
                        return false;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn search(&self, alpha: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let Some(&i) = self.order.iter().find(|&&i| alpha[i] == NONE) else {
            return true;
        };
        for img in 0..alpha.len() {
            if used[img] || self.inv_src[i] != self.inv_dst[img] {
                continue;
            }
            let (mut a2, mut u2) = (alpha.clone(), used.clone());
            a2[i] = img;
            u2[img] = true;
            if self.close(&mut a2, &mut u2) && self.search(&mut a2, &mut u2) {
                *alpha = a2;
                *used = u2;
                return true;
            }
        }
        false
    }
}

/// Finds an isomorphism from `q` to `target`, if one exists.
pub fn find_isomorphism(q: &Quandle, target: &Quandle) -> Option<IsoWitness> {
    let n = q.order();
    if target.order() != n || q.profile().multiset() != target.profile().multiset() {
        return None;
    }
    let inv_src = element_invariants(q);
    let inv_dst = element_invariants(target);
    let (mut s, mut d) = (inv_src.clone(), inv_dst.clone());
    s.sort();
    d.sort();
    if s != d {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (inv_src[i].associates, i));
    let m = Matcher {
        src: q.permutations().iter().map(|p| p.zero_based()).collect(),
        dst: target.permutations().iter().map(|p| p.zero_based()).collect(),
        inv_src,
        inv_dst,
        order,
    };
    let mut alpha = vec![NONE; n];
    let mut used = vec![false; n];
    if !m.search(&mut alpha, &mut used) {
        return None;
    }
    let witness = IsoWitness::new(q, target, Permutation::from_zero_based(alpha));
    debug_assert!(witness.is_some());
    witness
}

/// One isomorphism class: its representative (the least table seen) and
/// how many inputs fell into it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClass {
    pub representative: Quandle,
    pub size: usize,
}

/// Incremental classifier. Classes keep the order of their first member.
#[derive(Clone, Debug, Default)]
pub struct IsoClasses {
    classes: Vec<IsoClass>,
    keys: Vec<Vec<u32>>,
}

impl IsoClasses {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `q`; returns the index of its class.
    pub fn push(&mut self, q: Quandle) -> usize {
        self.add(q, 1)
    }

    fn add(&mut self, q: Quandle, size: usize) -> usize {
        let key = q.table_key();
        for (idx, class) in self.classes.iter_mut().enumerate() {
            if find_isomorphism(&q, &class.representative).is_some() {
                class.size += size;
                if key < self.keys[idx] {
                    class.representative = q;
                    self.keys[idx] = key;
                }
                return idx;
            }
        }
        self.classes.push(IsoClass {
            representative: q,
            size,
        });
        self.keys.push(key);
        self.classes.len() - 1
    }

    /// Folds `other` in, its classes after the existing ones.
    pub fn merge(&mut self, other: IsoClasses) {
        for class in other.classes {
            self.add(class.representative, class.size);
        }
    }

    pub fn classes(&self) -> &[IsoClass] {
        &self.classes
    }

    pub fn into_classes(self) -> Vec<IsoClass> {
        self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn total(&self) -> usize {
        self.classes.iter().map(|c| c.size).sum()
    }
}

pub fn dedup_up_to_iso<I: IntoIterator<Item = Quandle>>(quandles: I) -> Vec<IsoClass> {
    let mut acc = IsoClasses::new();
    for q in quandles {
        acc.push(q);
    }
    acc.into_classes()
}
