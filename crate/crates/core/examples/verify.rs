//! Loads a quandle file (table or permutation list) and reports axiom
//! violations, profile and cyclic type.
//!
//! cargo run --example verify -- crates/core/tests/fixtures/table1.txt

use cyclic_quandles::io::parse_quandle;
use cyclic_quandles::quandle::{verify, Quandle};
use cyclic_quandles::Permutation;

fn report(q: &Quandle) {
    let pats: Vec<String> = q.profile().patterns().iter().map(|p| p.to_string()).collect();
    println!("order {} profile {}", q.order(), pats.join(" "));
    match q.cyclic_type_fixed_count() {
        Some(f) => println!("cyclic type ({}, {f})", q.order()),
        None => println!("not of cyclic type"),
    }
}

fn main() {
    if let Some(path) = std::env::args().nth(1) {
        let text = std::fs::read_to_string(&path).expect("readable file");
        match parse_quandle(&text) {
            Ok(q) => report(&q),
            Err(e) => println!("{path}: {e}"),
        }
        return;
    }
    // a bad sequence: the conjugation identity fails
    let perms: Vec<Permutation> = ["(2 3)", "(1 3)", "(1 2 3)"]
        .iter()
        .map(|c| Permutation::parse_cycles(3, c).unwrap())
        .collect();
    for v in verify(&perms) {
        println!("{v}");
    }
    report(&cyclic_quandles::q62());
}
