//! Enumerates quandles of cyclic type and compares against the
//! brute-force oracle when the order is small enough.
//!
//! cargo run --release --example enumerate -- 6 2

use cyclic_quandles::search::{brute_force_oracle, enumerate, SearchParams};
use cyclic_quandles::structure::is_connected;

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let cells: Vec<(usize, usize)> = match args.as_slice() {
        [n, f] => vec![(*n, *f)],
        _ => vec![(4, 2), (5, 3), (6, 2), (6, 4), (7, 5)],
    };
    for (n, f) in cells {
        let params = SearchParams::new(n, f).without_closed_form();
        let r = enumerate(&params).expect("parameters in range");
        println!("{} mode={} nodes={} wall={:?}", r.machine_line(), r.mode.name(), r.stats.nodes, r.stats.wall);
        for (i, class) in r.classes.iter().enumerate() {
            let q = &class.representative;
            println!("  class {}: size {} connected={}", i + 1, class.size, is_connected(q));
            print!("{}", cyclic_quandles::io::format_permutations(q));
        }
        if n <= 7 {
            let o = brute_force_oracle(n, f).expect("small order");
            println!("  oracle: classes={} labeled={} agree={}", o.class_count(), o.labeled_count, o.same_classes(&r));
        }
    }
}
