//! Removing and adding common fixed points.
//!
//! cargo run --example surgery

use cyclic_quandles::claims::table5;
use cyclic_quandles::io::format_table;
use cyclic_quandles::{
    adjoin_chain, adjoin_common_fixed_point, divisible_family, extract_common_fixed_point, find_isomorphism,
    q62, two_f_canonical, Permutation,
};

fn main() {
    let t5 = table5();
    let small = extract_common_fixed_point(&t5, 1).unwrap();
    print!("{}", format_table(&small));
    println!("is two-f 2: {}", find_isomorphism(&small, &two_f_canonical(2).unwrap()).is_some());

    let mu = Permutation::parse_cycles(4, "(3 4)").unwrap();
    let big = adjoin_common_fixed_point(&two_f_canonical(2).unwrap(), &mu).unwrap();
    print!("{}", format_table(&big));

    for (k, q) in adjoin_chain(&divisible_family(6, 4).unwrap(), 1, 3).unwrap().iter().enumerate() {
        println!("step {k}: order {} fixed {:?}", q.order(), q.cyclic_type_fixed_count());
    }

    // commuting with every permutation is not enough
    let antipodal = Permutation::parse_cycles(6, "(1 3)(2 4)(5 6)").unwrap();
    match adjoin_common_fixed_point(&q62(), &antipodal) {
        Ok(_) => println!("adjoined"),
        Err(e) => println!("rejected: {e}"),
    }
}
