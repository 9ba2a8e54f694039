//! Grow a small realization into larger ones.
//!
//! A realization that is x-growable at some anchor embeds into a complete
//! graph with x more vertices and realizes the same multiset plus x extra
//! copies of x. Run with `cargo run --example grow_realization`.

use bhr::core::{induced_multiset, Realization};
use bhr::growth::{grow, grow_many, growability_profile, GrowabilityWitness};

fn main() -> bhr::Result<()> {
    // A 13-vertex path realizing {2, 4^8, 5^3}.
    let seed = Realization::from_path(vec![6, 10, 5, 1, 9, 11, 2, 7, 3, 12, 8, 4, 0])?;
    println!("seed: {seed}");
    println!("realizes: {}", induced_multiset(&seed));

    let profile = growability_profile(&seed);
    for w in profile.witnesses() {
        println!("  witness: {}-growable at {}", w.x, w.m);
    }

    // Grow once for length 4, then once for length 5. The second anchor is 10:
    // the first embedding moved the 5-anchor 6 up by 4.
    let g1 = grow(&seed, &GrowabilityWitness { x: 4, m: 3 })?;
    let g2 = grow(&g1, &GrowabilityWitness { x: 5, m: 10 })?;
    println!("after growing by 4 and 5: {g2}");
    println!("realizes: {}", induced_multiset(&g2));

    // grow_many re-detects anchors itself; here five more fours.
    let big = grow_many(&g2, &[4, 4, 4, 4, 4])?;
    println!("after five more fours: v = {}", big.order());
    println!("realizes: {}", induced_multiset(&big));
    Ok(())
}
