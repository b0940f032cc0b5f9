//! Fixed-point sets, associates, orbits and quotients of a few quandles.
//!
//! cargo run --example structure

use cyclic_quandles::io::{format_labeled_quotient, format_table};
use cyclic_quandles::structure::{
    association_classes, check_structure_conditions, fixed_point_sets, normalize_labeling, orbit_certificate,
    quotient,
};
use cyclic_quandles::{dihedral, q62, two_f_canonical, Quandle};

fn show(name: &str, q: &Quandle) {
    println!("== {name}");
    print!("{}", format_table(q));
    for (i, fix) in fixed_point_sets(q).iter().enumerate() {
        println!("F_{} = {fix:?}", i + 1);
    }
    let cert = orbit_certificate(q);
    println!("transitive: {}", cert.is_transitive());
    let classes = association_classes(q).unwrap();
    let r = quotient(q, &classes).unwrap();
    print!("{}", format_labeled_quotient(&r, &classes));
}

fn main() {
    show("octahedron", &q62());
    show("dihedral 4", &dihedral(4).unwrap());

    for (name, q, f) in [("octahedron", q62(), 2), ("two-f 3", two_f_canonical(3).unwrap(), 3)] {
        let (nq, alpha) = normalize_labeling(&q).unwrap();
        let rep = check_structure_conditions(&nq, f).unwrap();
        println!("{name}: relabel {alpha}, conditions {:?}", rep.holds);
        for (h, h2, l) in &rep.associate_exponents {
            println!("  mu_{h} = mu_{h2}^{l}");
        }
    }
}
