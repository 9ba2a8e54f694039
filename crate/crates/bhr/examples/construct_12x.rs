//! Closed-form realizations of {1^a, 2^b, x} from σ-blocks, plus the
//! automorphism reductions for {3,6,x} and {2,4,6}.
//!
//! Run with `cargo run --release --example construct_12x`.

use bhr::construct::{build_12x_single, reduce_246, reduce_36x, sigma};
use bhr::core::{induced_multiset, LengthMultiset, Order};

fn main() -> bhr::Result<()> {
    // σ_k permutes {0..k} with consecutive differences {1, 2^(k-1)}.
    for k in [4, 5, 8] {
        println!("sigma_{k} = {:?}", sigma(k)?.values);
    }

    // Splicing σ-blocks into [v-1, ..., x, 0, 1, ..., x-1] trades unit steps
    // for double steps; any admissible count of ones is reachable.
    let v = Order::new(16)?;
    for a in [10, 7, 1] {
        let r = build_12x_single(v, 7, a)?;
        println!("a = {a:>2}: {r}  realizes {}", induced_multiset(&r));
    }

    // {3^a, 6^b, x}: dividing labels by 3 turns the problem into {1^a, 2^b, x'}.
    let l = LengthMultiset::from_exponents(&[3, 6, 5], &[9, 5, 1])?;
    let r = reduce_36x(&l)?;
    println!("{l} via division by 3: {r}");

    // {2^a, 4^b, 6^c} with odd v: double a {1^a, 2^b, 3^c} realization.
    let l = LengthMultiset::from_exponents(&[2, 4, 6], &[4, 4, 4])?;
    let r = reduce_246(&l)?;
    println!("{l} via doubling:       {r}");
    Ok(())
}
