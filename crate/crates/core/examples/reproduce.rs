//! Runs the claim registry: every claim by default, or the ids given.
//!
//! cargo run --release --example reproduce -- T1.1b NE-3F

use cyclic_quandles::claims::reproduce;

fn main() {
    let mut ids: Vec<String> = std::env::args().skip(1).collect();
    if ids.is_empty() {
        ids.push("all".into());
    }
    let mut failed = 0;
    for id in &ids {
        match reproduce(id, 0) {
            Ok(outcomes) => {
                for o in outcomes {
                    failed += usize::from(!o.passed);
                    println!("{o}\n    ({:.2?})", o.elapsed);
                }
            }
            Err(e) => {
                eprintln!("{e}");
                failed += 1;
            }
        }
    }
    std::process::exit(i32::from(failed > 0));
}
