//! The built-in families and the closed-form feasibility rules.
//!
//! cargo run --example families -- 12

use cyclic_quandles::io::format_permutations;
use cyclic_quandles::search::{feasibility_precheck, Feasibility};
use cyclic_quandles::{divisible_family, two_f_canonical, FamilySpec};

fn main() {
    let max_n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(10);

    for spec in ["trivial 3", "dihedral 5", "q62", "two-f 3", "divisible 6 4"] {
        let mut words = spec.split(' ');
        let name = words.next().unwrap();
        let params: Vec<usize> = words.map(|w| w.parse().unwrap()).collect();
        let q = FamilySpec::parse(name, &params).unwrap().build().unwrap();
        println!("{spec}: order {}, cyclic with {:?} fixed points", q.order(), q.cyclic_type_fixed_count());
    }
    print!("{}", format_permutations(&two_f_canonical(2).unwrap()));

    println!("(n-f) | f family:");
    for n in 4..=max_n {
        for f in 2..=n - 2 {
            if let Ok(q) = divisible_family(n, f) {
                println!("  ({n},{f}) ok={}", q.is_cyclic_type(f));
            }
        }
    }

    println!("ruled out without search:");
    for n in 4..=max_n.max(28) {
        for f in 2..=n - 2 {
            if let Ok(Feasibility::Infeasible(rule)) = feasibility_precheck(n, f) {
                if n <= max_n || (n, f) == (28, 7) {
                    println!("  ({n},{f}) {rule}");
                }
            }
        }
    }
}
