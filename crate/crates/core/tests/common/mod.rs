#![allow(dead_code)]

use std::path::PathBuf;

use cyclic_quandles::perm::Permutation;
use cyclic_quandles::quandle::Quandle;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).expect("fixture readable")
}

pub fn all_permutations(n: usize) -> Vec<Permutation> {
    fn rec(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if left.is_empty() {
            out.push(Permutation::from_images(prefix).unwrap());
            return;
        }
        for k in 0..left.len() {
            let x = left.remove(k);
            prefix.push(x);
            rec(prefix, left, out);
            prefix.pop();
            left.insert(k, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (1..=n).collect(), &mut out);
    out
}

/// Permutations commuting with every `μ_i`, by scanning all of `S_n`.
pub fn centralizer(q: &Quandle) -> Vec<Permutation> {
    all_permutations(q.order())
        .into_iter()
        .filter(|p| q.permutations().iter().all(|m| m.commutes_with(p)))
        .collect()
}

pub fn random_relabeling<R: Rng>(n: usize, rng: &mut R) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::from_images(&images).unwrap()
}
