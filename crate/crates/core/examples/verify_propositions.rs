//! Structural checks on every shipped table, plus one deliberately broken
//! mapping file.
//!
//! ```text
//! cargo run --release --example verify_propositions
//! ```

use mdmap::fixtures::{fixture, FIXTURES};
use mdmap::mapping::{check_propositions, parse_mapping_file};

fn main() -> mdmap::Result<()> {
    for (name, _) in FIXTURES {
        let mapping = fixture(name)?;
        let r = check_propositions(mapping.parts());
        let fmt = |d: Option<u32>| d.map_or("-".into(), |v| v.to_string());
        println!(
            "{name:<11} bits {:>2} bijective {:<5} nn-distance even/odd {}/{} (bound {}) {}",
            r.width,
            r.bijective.map_or("-".into(), |b| b.to_string()),
            fmt(r.max_neighbor_distance_even),
            fmt(r.max_neighbor_distance_odd),
            r.neighbor_bound(mapping.m()),
            if r.guard_exceeded {
                "partial"
            } else if r.passed() {
                "pass"
            } else {
                "FAIL"
            }
        );
    }

    // lambda_el pair (1,4) differs in more than the first bit
    let broken = "m=3\nn=2\nconstellation=psk:3\n\
        lambda_er: 2 7 6 5 4 1 0 3\nlambda_or: 4 1 0 3 2 7 6 5\nchi_el: 1 6 7 8\n\
        lambda_el: (2,6) (1,4) (0,5) (3,7)\nlambda_ol: (1,5) (0,4) (3,7) (2,6)\n";
    match parse_mapping_file(broken) {
        Ok(_) => println!("broken file accepted?"),
        Err(e) => println!("broken file rejected: {e}"),
    }
    Ok(())
}
