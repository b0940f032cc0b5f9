//! Isomorphism search with witnesses, and grouping into classes.
//!
//! cargo run --example isomorphism

use cyclic_quandles::io::format_permutations;
use cyclic_quandles::{dedup_up_to_iso, dihedral, find_isomorphism, q62, two_f_canonical, Permutation};

fn main() {
    let q = q62();
    let alpha = Permutation::parse_cycles(6, "(1 5 2)(3 6)").unwrap();
    let r = q.relabel(&alpha);
    print!("{}", format_permutations(&r));
    let w = find_isomorphism(&q, &r).expect("relabeling is an isomorphism");
    println!("{w}");
    println!("back: {}", w.inverse().mapping_line());

    // the canonical n = 2f quandle at f = 2 is the dihedral quandle of order 4
    let d4 = dihedral(4).unwrap();
    let t = two_f_canonical(2).unwrap();
    println!("R_4 ~ two-f 2: {}", find_isomorphism(&d4, &t).is_some());

    let pool = vec![q.clone(), r, d4, t, dihedral(3).unwrap()];
    for c in dedup_up_to_iso(pool) {
        println!("order {} size {}", c.representative.order(), c.size);
    }
}
