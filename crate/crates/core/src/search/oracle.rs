//! Generate-and-test oracle. Shares no code with the propagation engine or
//! the isomorphism search: candidates are filtered from all `n!`
//! permutations, axioms are checked on the table, and classes are formed
//! by trying every bijection.

use std::time::Instant;

use super::{check_range, EnumerationResult, LabelKind, Mode, SearchError, SearchStats};
use crate::iso::IsoClass;
use crate::quandle::Quandle;

pub const ORACLE_MAX_ORDER: usize = 7;

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

fn cycle_lengths(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut lens = Vec::new();
    for s in 0..p.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 {
            lens.push(len);
        }
    }
    lens.sort_unstable();
    lens
}

// cols[b][a] = a ∗ b; checks (a∗b)∗c = (a∗c)∗(b∗c) whenever b, c and b∗c are present
fn distributive_so_far(cols: &[Vec<usize>], n: usize) -> bool {
    let k = cols.len();
    for b in 0..k {
        for c in 0..k {
            let bc = cols[c][b];
            if bc >= k {
                continue;
            }
            for a in 0..n {
                if cols[c][cols[b][a]] != cols[bc][cols[c][a]] {
                    return false;
                }
            }
        }
    }
    true
}

fn is_quandle_table(cols: &[Vec<usize>]) -> bool {
    let n = cols.len();
    (0..n).all(|a| cols[a][a] == a)
        && cols.iter().all(|c| {
            let mut s = c.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v)
        })
        && distributive_so_far(cols, n)
}

fn isomorphic_by_scan(x: &[Vec<usize>], y: &[Vec<usize>], bijections: &[Vec<usize>]) -> bool {
    let n = x.len();
    bijections.iter().any(|al| {
        (0..n).all(|b| (0..n).all(|a| al[x[b][a]] == y[al[b]][al[a]]))
    })
}

/// Every labeled quandle of cyclic type `(n, f)` by exhaustive
/// generate-and-test, classified by trying all bijections.
pub fn brute_force_oracle(n: usize, f: usize) -> Result<EnumerationResult, SearchError> {
    check_range(n, f)?;
    if n > ORACLE_MAX_ORDER {
        return Err(SearchError::OracleRange {
            n,
            max: ORACLE_MAX_ORDER,
        });
    }
    let start = Instant::now();
    let perms = all_permutations(n);
    let mut want = vec![1; f];
    want.push(n - f);
    want.sort_unstable();
    let by_index: Vec<Vec<&Vec<usize>>> = (0..n)
        .map(|k| {
            perms
                .iter()
                .filter(|p| p[k] == k && cycle_lengths(p) == want)
                .collect()
        })
        .collect();

    let mut found: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut nodes = 0u64;
    let mut cols: Vec<Vec<usize>> = Vec::with_capacity(n);
    fn rec(
        n: usize,
        by_index: &[Vec<&Vec<usize>>],
        cols: &mut Vec<Vec<usize>>,
        found: &mut Vec<Vec<Vec<usize>>>,
        nodes: &mut u64,
    ) {
        *nodes += 1;
        let k = cols.len();
        if k == n {
            if is_quandle_table(cols) {
                found.push(cols.clone());
            }
            return;
        }
        for p in &by_index[k] {
            cols.push((*p).clone());
            if distributive_so_far(cols, n) {
                rec(n, by_index, cols, found, nodes);
            }
            cols.pop();
        }
    }
    rec(n, &by_index, &mut cols, &mut found, &mut nodes);

    let mut reps: Vec<(Vec<Vec<usize>>, usize)> = Vec::new();
    for t in &found {
        match reps.iter_mut().find(|(r, _)| isomorphic_by_scan(t, r, &perms)) {
            Some((r, size)) => {
                *size += 1;
                if row_major(t) < row_major(r) {
                    *r = t.clone();
                }
            }
            None => reps.push((t.clone(), 1)),
        }
    }
    let classes = reps
        .into_iter()
        .map(|(cols, size)| {
            let table: Vec<Vec<usize>> = (0..n)
                .map(|a| (0..n).map(|b| cols[b][a] + 1).collect())
                .collect();
            IsoClass {
                representative: Quandle::from_table(&table).expect("table axioms checked"),
                size,
            }
        })
        .collect();
    Ok(EnumerationResult {
        n,
        f,
        mode: Mode::BruteForce,
        classes,
        labeled_count: found.len() as u64,
        label_kind: LabelKind::All,
        exhaustive: true,
        stats: SearchStats {
            nodes,
            wall: start.elapsed(),
            ..SearchStats::default()
        },
    })
}

fn row_major(cols: &[Vec<usize>]) -> Vec<usize> {
    let n = cols.len();
    (0..n).flat_map(|a| (0..n).map(move |b| cols[b][a])).collect()
}
