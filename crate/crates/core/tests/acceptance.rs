//! One pass/fail line per acceptance criterion. Run with
//! `cargo test --test acceptance`; exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cyclic_quandles::claims::{reproduce, table5};
use cyclic_quandles::constructors::{
    adjoin_chain, adjoin_common_fixed_point, dihedral, divisible_family, extract_common_fixed_point,
    extract_unchecked, q62, two_f_canonical,
};
use cyclic_quandles::io::{format_permutations, format_table, parse_quandle};
use cyclic_quandles::iso::{find_isomorphism, is_isomorphism};
use cyclic_quandles::perm::Permutation;
use cyclic_quandles::quandle::Quandle;
use cyclic_quandles::search::{
    brute_force_oracle, enumerate, feasibility_precheck, ClosedFormRule, EnumerationResult, Feasibility, Mode,
    PruneRule, SearchError, SearchParams,
};
use cyclic_quandles::structure::{
    association_classes, check_structure_conditions, is_connected, normalize_labeling, quotient,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::fixture;

// (classes, labeled) from the generate-and-test oracle, matched by general mode
const FROZEN: [((usize, usize), usize, u64); 3] = [((5, 3), 1, 30), ((6, 4), 4, 220), ((7, 5), 5, 2205)];

type Check = Result<String, String>;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn run(n: usize, f: usize) -> Result<EnumerationResult, String> {
    let r = enumerate(&SearchParams::new(n, f).without_closed_form()).map_err(|e| format!("({n},{f}): {e}"))?;
    ensure(r.exhaustive, format!("({n},{f}) hit the budget"))?;
    Ok(r)
}

fn quotient_by_association(q: &Quandle) -> Result<Quandle, String> {
    let classes = association_classes(q).map_err(|e| e.to_string())?;
    quotient(q, &classes).map_err(|e| e.to_string())
}

fn golden_tables() -> Check {
    let d4 = dihedral(4).unwrap();
    ensure(format_table(&q62()) == fixture("table1.txt"), "q62 differs from table 1")?;
    ensure(format_table(&quotient_by_association(&q62())?) == fixture("table2.txt"), "table 2 differs")?;
    ensure(format_table(&d4) == fixture("table3.txt"), "dihedral(4) differs from table 3")?;
    ensure(format_table(&quotient_by_association(&d4)?) == fixture("table4.txt"), "table 4 differs")?;
    let text = fixture("table5.txt");
    let q = parse_quandle(&text).map_err(|e| e.to_string())?;
    ensure(format_table(&q) == text, "table 5 does not round-trip as a table")?;
    let back = parse_quandle(&format_permutations(&q)).map_err(|e| e.to_string())?;
    ensure(back == q, "table 5 does not round-trip as permutations")?;
    Ok("tables 1-4 byte-exact, table 5 round-trips".into())
}

fn unique_at_6_2() -> Check {
    let r = enumerate(&SearchParams::new(6, 2).mode(Mode::Structured)).map_err(|e| e.to_string())?;
    ensure(r.exhaustive && r.class_count() == 1, format!("{} classes", r.class_count()))?;
    let rep = &r.classes[0].representative;
    ensure(is_connected(rep), "class is not connected")?;
    let w = find_isomorphism(rep, &q62()).ok_or("not isomorphic to q62")?;
    ensure(is_isomorphism(rep, &q62(), w.alpha()), "witness fails")?;
    Ok(format!("1 class, connected, alpha = {}", w.alpha()))
}

fn unique_at_2f() -> Check {
    for f in 2..=4 {
        let r = run(2 * f, f)?;
        ensure(r.class_count() == 1, format!("({},{f}): {} classes", 2 * f, r.class_count()))?;
        let rep = &r.classes[0].representative;
        ensure(!is_connected(rep), format!("({},{f}) connected", 2 * f))?;
        let canon = two_f_canonical(f).unwrap();
        ensure(find_isomorphism(rep, &canon).is_some(), format!("({},{f}) not canonical", 2 * f))?;
        if f == 2 {
            ensure(find_isomorphism(rep, &dihedral(4).unwrap()).is_some(), "(4,2) not dihedral")?;
        }
    }
    Ok("f = 2, 3, 4: one disconnected class each".into())
}

fn non_existence() -> Check {
    for (n, f) in [(9, 3), (12, 4), (8, 2)] {
        ensure(matches!(feasibility_precheck(n, f), Ok(Feasibility::Infeasible(_))), format!("({n},{f}) feasible"))?;
        let r = run(n, f)?;
        ensure(r.class_count() == 0, format!("({n},{f}): {} classes", r.class_count()))?;
    }
    ensure(
        feasibility_precheck(28, 7) == Ok(Feasibility::Infeasible(ClosedFormRule::GcdExponents)),
        "(28,7) not ruled out by the gcd rule",
    )?;
    ensure(
        matches!(enumerate(&SearchParams::new(28, 7)), Err(SearchError::Infeasible { .. })),
        "(28,7) enumerate not infeasible",
    )?;
    Ok("(9,3) (12,4) (8,2) empty by search, (28,7) gcd".into())
}

fn divisibility() -> Check {
    let mut cells = Vec::new();
    for n in 4..=9 {
        for f in 2..=n / 2 {
            if n % f != 0 {
                let r = run(n, f)?;
                ensure(r.class_count() == 0, format!("({n},{f}): {} classes", r.class_count()))?;
                cells.push(format!("({n},{f})"));
            }
        }
    }
    Ok(format!("empty: {}", cells.join(" ")))
}

fn small_range() -> Check {
    let mut built = 0;
    for n in 4..=12 {
        for f in 2..=n - 2 {
            if n <= 2 * f && f % (n - f) == 0 {
                let q = divisible_family(n, f).map_err(|e| format!("divisible({n},{f}): {e}"))?;
                ensure(q.is_cyclic_type(f), format!("divisible({n},{f}) wrong type"))?;
                built += 1;
            }
        }
    }
    let mut counts = Vec::new();
    for ((n, f), classes, labeled) in FROZEN {
        let r = enumerate(&SearchParams::new(n, f).mode(Mode::General)).map_err(|e| e.to_string())?;
        ensure(r.exhaustive, format!("({n},{f}) hit the budget"))?;
        ensure(
            r.class_count() == classes && r.labeled_count == labeled,
            format!("({n},{f}): {} classes / {} labeled", r.class_count(), r.labeled_count),
        )?;
        ensure(r.representatives().all(|q| !is_connected(q)), format!("({n},{f}) has a connected class"))?;
        if n <= 6 {
            ensure(r.same_classes(&brute_force_oracle(n, f).map_err(|e| e.to_string())?), format!("({n},{f}) oracle"))?;
        }
        if (n, f) == (5, 3) {
            ensure(r.representatives().any(|q| find_isomorphism(q, &table5()).is_some()), "table 5 missing")?;
        }
        counts.push(format!("({n},{f})={classes}"));
    }
    Ok(format!("{built} family members, classes {}", counts.join(" ")))
}

fn surgery() -> Check {
    let two = two_f_canonical(2).unwrap();
    let adj = adjoin_common_fixed_point(&two, &Permutation::parse_cycles(4, "(3 4)").unwrap())
        .map_err(|e| e.to_string())?;
    ensure(find_isomorphism(&adj, &table5()).is_some(), "adjoin(two_f(2), (3 4)) is not table 5")?;
    let ext = extract_common_fixed_point(&table5(), 1).map_err(|e| e.to_string())?;
    ensure(find_isomorphism(&ext, &two).is_some(), "extract(table 5, 1) is not two_f(2)")?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x0ad0_1e1e);
    let pool: Vec<Quandle> = cyclic_quandles::claims::corpus()
        .into_iter()
        .map(|(_, q)| q)
        .filter(|q| (2..=6).contains(&q.order()))
        .collect();
    for case in 0..20 {
        let q = pool.choose(&mut rng).unwrap();
        let q = q.relabel(&common::random_relabeling(q.order(), &mut rng));
        let admissible: Vec<Permutation> = common::centralizer(&q)
            .into_iter()
            .filter(|m| (1..=q.order()).all(|i| q.mu(m.apply(i)) == q.mu(i)))
            .collect();
        let mu = admissible.choose(&mut rng).unwrap();
        let a = adjoin_common_fixed_point(&q, mu).map_err(|e| format!("case {case}: {e}"))?;
        let back = extract_unchecked(&a, q.order() + 1).map_err(|e| format!("case {case}: {e}"))?;
        ensure(back == q, format!("case {case}: extract after adjoin changed the quandle"))?;
    }

    let chain = adjoin_chain(&divisible_family(6, 4).unwrap(), 1, 3).map_err(|e| e.to_string())?;
    for (q, (n, f)) in chain[1..].iter().zip([(7, 5), (8, 6), (9, 7)]) {
        ensure(q.order() == n && q.is_cyclic_type(f), format!("chain element of order {} wrong", q.order()))?;
    }
    Ok("table 5 both ways, 20 random round trips, orders 7 8 9".into())
}

fn structure_conditions() -> Check {
    let (nq, _) = normalize_labeling(&q62()).ok_or("q62 does not normalize")?;
    let r = check_structure_conditions(&nq, 2).map_err(|e| e.to_string())?;
    ensure(r.all_hold(), format!("q62 conditions {:?}", r.holds))?;
    ensure(
        !r.associate_exponents.is_empty() && r.associate_exponents.iter().all(|&(_, _, l)| gcd(4, l) == 1),
        "exponent witnesses",
    )?;
    for f in 2..=4 {
        let (q, _) = normalize_labeling(&two_f_canonical(f).unwrap()).ok_or("two_f does not normalize")?;
        let r = check_structure_conditions(&q, f).map_err(|e| e.to_string())?;
        ensure((1..=3).all(|c| r.holds(c)), format!("two_f({f}) conditions {:?}", r.holds))?;
    }
    Ok(format!("q62 all six, {} exponent witnesses; two_f 1-3", r.associate_exponents.len()))
}

fn oracle_equivalence() -> Check {
    let mut compared = 0;
    for n in 4..=6 {
        for f in 2..=n - 2 {
            let slow = brute_force_oracle(n, f).map_err(|e| e.to_string())?;
            match enumerate(&SearchParams::new(n, f)) {
                Ok(fast) => ensure(fast.same_classes(&slow), format!("({n},{f}) differs from the oracle"))?,
                Err(SearchError::Infeasible { .. }) => {
                    ensure(slow.class_count() == 0, format!("({n},{f}) infeasible but oracle found classes"))?
                }
                Err(e) => return Err(e.to_string()),
            }
            compared += 1;
        }
    }
    let mut ablated = 0;
    for n in 4..=9 {
        for f in 2..=n / 2 {
            let base = run(n, f)?;
            for rule in PruneRule::ALL {
                let r = enumerate(&SearchParams::new(n, f).without_closed_form().disable(rule))
                    .map_err(|e| e.to_string())?;
                ensure(r.exhaustive && base.same_classes(&r), format!("({n},{f}) changes without {rule}"))?;
            }
            ablated += 1;
        }
    }
    Ok(format!("{compared} cells match the oracle, {ablated} cells ablated"))
}

fn property_suites() -> Check {
    let outcomes = reproduce("all", 0).map_err(|e| e.to_string())?;
    let props: Vec<_> = outcomes.iter().filter(|o| o.id.starts_with("PROP-")).collect();
    ensure(props.len() == 3, format!("{} property claims", props.len()))?;
    for o in &props {
        ensure(o.passed, o.to_string())?;
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    ensure(failed.is_empty(), format!("failing claims: {failed:?}"))?;
    Ok(format!("{} claims pass", outcomes.len()))
}

fn main() -> ExitCode {
    let criteria: [(fn() -> Check, u64); 10] = [
        (golden_tables, 1),
        (unique_at_6_2, 10),
        (unique_at_2f, 60),
        (non_existence, 300),
        (divisibility, 60),
        (small_range, 600),
        (surgery, 10),
        (structure_conditions, 1),
        (oracle_equivalence, 900),
        (property_suites, 600),
    ];
    let mut failures = 0;
    for (k, (check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut result = check();
        let elapsed = start.elapsed();
        if result.is_ok() && elapsed > Duration::from_secs(*limit) {
            result = Err(format!("took longer than {limit} s"));
        }
        match result {
            Ok(detail) => println!("criterion {}: PASS {detail} ({elapsed:.2?})", k + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL {detail} ({elapsed:.2?})", k + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
