//! Search for realizations with prescribed growability.
//!
//! Run with `cargo run --release --example search_growable`.

use bhr::core::LengthMultiset;
use bhr::growth::{growability_feasible, GrowthFeasibility};
use bhr::search::{find_realization, SearchRequest, SearchStatus};
use std::collections::BTreeSet;

fn main() -> bhr::Result<()> {
    // A {4,5}-growable realization of {2, 4^8, 5^3} in K_13.
    let l = LengthMultiset::from_exponents(&[2, 4, 5], &[1, 8, 3])?;
    let req = SearchRequest::new(l.clone(), [4, 5], 50_000_000, false)?;
    let out = find_realization(&req)?;
    println!("{l}: {:?} after {} nodes", out.status, out.nodes_expanded);
    for (r, profile) in &out.realizations {
        println!("  {r}");
        println!("  growable lengths: {:?}", profile.grow_set());
    }

    // An inadmissible multiset short-circuits without any search.
    let bad = LengthMultiset::from_exponents(&[5], &[9])?;
    let out = find_realization(&SearchRequest::existence(bad.clone()))?;
    println!("{bad}: {:?} after {} nodes", out.status, out.nodes_expanded);

    // The feasibility filter rules out some growability requests outright:
    // at v = 2z no z-growable realization can exist.
    let l = LengthMultiset::from_exponents(&[1, 2, 5], &[1, 1, 7])?;
    let verdict = growability_feasible(&l, &BTreeSet::from([5]))?;
    assert!(matches!(verdict, GrowthFeasibility::Impossible { item: 1 }));
    println!("{l} with required length 5: impossible, rule 1 (v = 2z)");

    // Enumerating all realizations of a small multiset, one per orbit.
    let l = LengthMultiset::from_exponents(&[1, 2, 3], &[2, 2, 1])?;
    let req = SearchRequest::new(l.clone(), [], u64::MAX, true)?;
    let out = find_realization(&req)?;
    println!("{l}: {} realization orbits", out.realizations.len());
    Ok(())
}
