//! Exhaustive enumeration of realization orbits at small order, and a sweep
//! confirming that every admissible multiset with three lengths and v <= 10
//! is realizable.
//!
//! Run with `cargo run --release --example oracle_small`.

use bhr::core::{check_admissibility, LengthMultiset};
use bhr::search::exhaustive_oracle;

fn main() -> bhr::Result<()> {
    let l = LengthMultiset::from_exponents(&[1, 2, 3], &[2, 2, 1])?;
    let orbits = exhaustive_oracle(&l)?;
    println!("{l}:");
    for r in &orbits {
        println!("  {r}");
    }
    println!("{} orbits\n", orbits.len());

    let mut checked = 0;
    for v in 7..=10u32 {
        let max_len = v / 2;
        for x in 1..=max_len {
            for y in x + 1..=max_len {
                for z in y + 1..=max_len {
                    for a in 1..v - 2 {
                        for b in 1..v - 1 - a {
                            let c = v - 1 - a - b;
                            let l = LengthMultiset::from_exponents(&[x, y, z], &[a, b, c])?;
                            if !check_admissibility(&l).admissible {
                                continue;
                            }
                            checked += 1;
                            assert!(
                                !exhaustive_oracle(&l)?.is_empty(),
                                "admissible but unrealizable: {l}"
                            );
                        }
                    }
                }
            }
        }
    }
    println!("every admissible three-length multiset with v <= 10 is realizable ({checked} checked)");
    Ok(())
}
