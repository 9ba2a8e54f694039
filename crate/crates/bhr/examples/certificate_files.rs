//! Work with the text interchange format: parse, verify, grow, re-emit.
//!
//! Run with `cargo run --example certificate_files`.

use bhr::certs::{emit_certs, parse_certs, verify_certs, Certificate};
use bhr::core::Realization;
use bhr::growth::{grow_many, growability_profile};

const INPUT: &str = "\
#BHR v1 U=2,4,5 case=1,4,3
; a thirteen-vertex seed
abc=1,8,3 m=-,3,6 path=6 10 5 1 9 11 2 7 3 12 8 4 0
";

fn main() -> bhr::Result<()> {
    let parsed = parse_certs(INPUT)?;
    let report = verify_certs(&parsed.set, true);
    println!("parsed {} certificate(s), verified: {}", report.certs.len(), report.all_passed());

    // Grow each certificate by one 4 and one 5 and emit the grown set.
    let mut set = parsed.set.clone();
    for block in &mut set.blocks {
        for cert in &mut block.certificates {
            let r = Realization::from_path(cert.path.clone())?;
            let grown = grow_many(&r, &[4, 5])?;
            let profile = growability_profile(&grown);
            *cert = Certificate {
                exponents: [cert.exponents[0], cert.exponents[1] + 4, cert.exponents[2] + 5],
                path: grown.path().to_vec(),
                claimed: [2u32, 4, 5].map(|x| (x, profile.smallest_anchor(x))),
                provenance: cert.provenance.clone(),
            };
        }
    }
    println!("grown set:\n{}", emit_certs(&set));

    // Canonical emission round-trips byte for byte.
    assert_eq!(emit_certs(&parse_certs(INPUT)?.set), INPUT);
    println!("canonical round-trip holds");
    Ok(())
}
