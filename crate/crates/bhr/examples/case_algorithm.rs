//! Close a congruence case from scratch with the layered search algorithm,
//! then interrupt a run and resume it from a checkpoint.
//!
//! Run with `cargo run --release --example case_algorithm`.

use bhr::certs::{emit_checkpoint, parse_checkpoint};
use bhr::coverage::CaseId;
use bhr::search::{run_case_algorithm, CaseStatus};

fn main() -> bhr::Result<()> {
    let u = [1u32, 2, 3];
    let case = CaseId::new(u, [1, 2, 3])?;
    let result = run_case_algorithm(u, case, 50_000_000, None)?;
    match &result.status {
        CaseStatus::Closed => {
            println!("{case} closed with {} entries:", result.entries.len());
            for e in &result.entries {
                println!(
                    "  {:?} growable in {:?}: {}",
                    e.exponents,
                    e.profile.grow_set(),
                    e.realization
                );
            }
            let closure = result.closure.as_ref().unwrap();
            println!(
                "independently re-certified: covered = {}, method {:?}",
                closure.covered, closure.method_label
            );
        }
        CaseStatus::BudgetExceeded(_) => println!("{case}: out of budget"),
    }

    // A tiny budget stops mid-run; the checkpoint text round-trips and resumes.
    let u = [2u32, 4, 5];
    let case = CaseId::new(u, [1, 1, 1])?;
    let stopped = run_case_algorithm(u, case, 500, None)?;
    let CaseStatus::BudgetExceeded(ck) = &stopped.status else {
        panic!("a 500-node budget cannot close this case");
    };
    let text = emit_checkpoint(ck);
    println!("\ncheckpoint after {} nodes:\n{text}", stopped.nodes_expanded);
    let resumed = run_case_algorithm(u, case, 100_000_000, Some(&parse_checkpoint(&text)?))?;
    println!(
        "resumed run: closed = {}, {} entries",
        matches!(resumed.status, CaseStatus::Closed),
        resumed.entries.len()
    );
    Ok(())
}
