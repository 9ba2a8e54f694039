//! A bounded slice of the finite {1,2,x} check for x = 10: every admissible
//! {1^a, 2^b, 10^c} with a + b <= 3 gets a 10-growable realization within one
//! period of residue classes, which settles those cells for all larger c.
//!
//! Run with `cargo run --release --example prove_12x_slice`.

use bhr::search::{prove_12x, CellStatus};

fn main() -> bhr::Result<()> {
    let report = prove_12x(10, 50_000_000, Some(3))?;
    for cell in &report.cells {
        match &cell.status {
            CellStatus::Realized(r) => {
                println!("(a={}, b={}, c={:>2}): v={} {r}", cell.a, cell.b, cell.c, r.order())
            }
            CellStatus::ClassInadmissible => {
                println!("(a={}, b={}, c={:>2}): whole class inadmissible", cell.a, cell.b, cell.c)
            }
            other => println!("(a={}, b={}, c={:>2}): {other:?}", cell.a, cell.b, cell.c),
        }
    }
    println!(
        "realized {}, inadmissible classes {}, unrealizable {}, out of budget {}",
        report.realized, report.skipped, report.unrealizable, report.out_of_budget
    );
    Ok(())
}
