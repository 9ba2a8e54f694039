//! Verify the bundled certificate sets for `{2,4,5}` and `{3,4,5}`.
//!
//! Run with `cargo run --release --example verify_tables`.

use bhr::certs::{bundled, parse_certs, verify_certs};

fn main() -> bhr::Result<()> {
    for (name, text) in [("{2,4,5}", bundled::U245), ("{3,4,5}", bundled::U345)] {
        let parsed = parse_certs(text)?;
        println!(
            "{name}: {} congruence cases, {} certificates",
            parsed.set.blocks.len(),
            parsed.set.certificate_count()
        );
        // Strict mode recomputes the full growability profile per certificate.
        let report = verify_certs(&parsed.set, true);
        for cert in &report.certs {
            if !cert.passed() {
                println!("  FAIL {} {:?}: {}", cert.case, cert.exponents, cert.issues.join("; "));
            }
        }
        println!("  {} passed, {} failed", report.passed, report.failed);
    }
    Ok(())
}
