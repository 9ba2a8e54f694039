//! Check that the bundled certificates close every congruence case.
//!
//! For each case the closure checker decides whether every admissible exponent
//! triple is covered by some certificate (dominated by it and growable in each
//! differing coordinate) or absorbed by the assumed small-order base, and then
//! classifies which method template the basis instantiates.
//!
//! Run with `cargo run --release --example cover_cases`.

use bhr::certs::{bundled, cover_certs, parse_certs};
use bhr::coverage::BaseCap;

fn main() -> bhr::Result<()> {
    for (name, text) in [("{2,4,5}", bundled::U245), ("{3,4,5}", bundled::U345)] {
        let set = parse_certs(text)?.set;
        let results = cover_certs(&set, BaseCap::Standard)?;
        let mut by_method = [0usize; 6];
        for (case, report) in &results {
            if !report.covered {
                println!("{case}: NOT covered, exceptions {:?}", report.exceptions);
                continue;
            }
            by_method[report.method_label.unwrap_or(0) as usize] += 1;
            if !report.assumed_by_cap.is_empty() {
                // These small triples are assumed realizable, not constructed.
                println!(
                    "{case}: method {}, {} small triples under the base assumption",
                    report.method_label.unwrap(),
                    report.assumed_by_cap.len()
                );
            }
        }
        let covered = results.iter().filter(|(_, r)| r.covered).count();
        println!("{name}: {covered}/{} cases covered", results.len());
        for (m, n) in by_method.iter().enumerate().skip(1) {
            if *n > 0 {
                println!("  method {m}: {n} cases");
            }
        }
    }
    Ok(())
}
