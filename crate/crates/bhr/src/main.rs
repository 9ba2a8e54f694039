//! Command-line front-end. All logic lives in the library; this file parses
//! arguments, prints reports, and maps outcomes to exit codes:
//! 0 = all pass / found, 1 = mathematical failure, 2 = usage error,
//! 3 = budget exceeded.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bhr::certs::{
    cover_certs, emit_certs, parse_certs, verify_certs, CaseBlock, Certificate, CertificateSet,
};
use bhr::core::{LengthMultiset, Order, Realization};
use bhr::coverage::BaseCap;
use bhr::growth::{grow_many, growability_profile};
use bhr::search::{
    exhaustive_oracle, find_realization, prove_12x, CellStatus, SearchRequest, SearchStatus,
};
use bhr::Error;

#[derive(Parser)]
#[command(name = "bhr", about = "Growable realizations of edge-length multisets", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every certificate in a file.
    Verify {
        file: String,
        /// Recompute full growability profiles and flag unwitnessed claims.
        #[arg(long)]
        strict: bool,
    },
    /// Grow every certificate in a file along a schedule of lengths.
    Grow {
        file: String,
        /// Comma-separated grow lengths, applied in order (e.g. 4,5,4).
        #[arg(long, value_delimiter = ',', required = true)]
        schedule: Vec<u32>,
    },
    /// Search for a realization with prescribed growability.
    Search {
        /// Underlying set, e.g. 2,4,5.
        #[arg(long = "U", value_delimiter = ',', required = true)]
        u: Vec<u32>,
        /// Exponents, e.g. 1,8,3.
        #[arg(long, value_delimiter = ',', required = true)]
        abc: Vec<u32>,
        /// Lengths the realization must be growable in.
        #[arg(long, value_delimiter = ',')]
        growable: Vec<u32>,
        /// Node-expansion budget.
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
        /// Enumerate all realizations (one per symmetry orbit).
        #[arg(long)]
        all: bool,
    },
    /// Check case closure for a certificate file and classify the methods.
    Cover {
        file: String,
        /// Shrink the assumed-realizable base to v <= 12.
        #[arg(long)]
        strict_base: bool,
    },
    /// Run the finite {1,2,x} check for an even x.
    Prove12x {
        #[arg(long)]
        x: u32,
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
        /// Restrict to cells with a + b at most this value.
        #[arg(long)]
        max_ab: Option<u32>,
    },
    /// Build a {1^a, 2^(v-2-a), x} realization in closed form.
    Construct12x {
        #[arg(long)]
        v: u32,
        #[arg(long)]
        x: u32,
        #[arg(long)]
        a: u32,
    },
    /// Exhaustively enumerate realization orbits (v <= 12).
    Oracle {
        #[arg(long = "U", value_delimiter = ',', required = true)]
        u: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        abc: Vec<u32>,
    },
}

const EXIT_MATH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::InvalidArgument(_)
                | Error::Unsupported(_)
                | Error::Parse { .. }
                | Error::Refused(_)
                | Error::InadmissibleInput(_) => EXIT_USAGE,
                _ => EXIT_MATH,
            };
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> bhr::Result<u8> {
    match command {
        Command::Verify { file, strict } => cmd_verify(&file, strict),
        Command::Grow { file, schedule } => cmd_grow(&file, &schedule),
        Command::Search { u, abc, growable, budget, all } => {
            cmd_search(&u, &abc, &growable, budget, all)
        }
        Command::Cover { file, strict_base } => cmd_cover(&file, strict_base),
        Command::Prove12x { x, budget, max_ab } => cmd_prove(x, budget, max_ab),
        Command::Construct12x { v, x, a } => cmd_construct(v, x, a),
        Command::Oracle { u, abc } => cmd_oracle(&u, &abc),
    }
}

fn read_set(file: &str) -> bhr::Result<CertificateSet> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {file}: {e}")))?;
    let parsed = parse_certs(&text)?;
    for w in &parsed.warnings {
        eprintln!("warning: {w}");
    }
    Ok(parsed.set)
}

fn cmd_verify(file: &str, strict: bool) -> bhr::Result<u8> {
    let set = read_set(file)?;
    let report = verify_certs(&set, strict);
    for cert in &report.certs {
        if !cert.passed() {
            println!("FAIL {} abc=({},{},{}): {}",
                cert.case,
                cert.exponents[0], cert.exponents[1], cert.exponents[2],
                cert.issues.join("; "));
        }
    }
    println!("{} certificates: {} passed, {} failed", report.certs.len(), report.passed, report.failed);
    Ok(if report.all_passed() { 0 } else { EXIT_MATH })
}

fn cmd_grow(file: &str, schedule: &[u32]) -> bhr::Result<u8> {
    let set = read_set(file)?;
    let u = set.u;
    let mut blocks = Vec::new();
    for block in &set.blocks {
        let mut certificates = Vec::new();
        for cert in &block.certificates {
            let r = Realization::from_path(cert.path.clone())?;
            let grown = grow_many(&r, schedule)?;
            let profile = growability_profile(&grown);
            let mut exponents = cert.exponents;
            for (i, &len) in u.iter().enumerate() {
                let steps = schedule.iter().filter(|&&s| s == len).count() as u32;
                exponents[i] += steps * len;
            }
            let claimed =
                [0usize, 1, 2].map(|i| (u[i], profile.smallest_anchor(u[i])));
            certificates.push(Certificate {
                exponents,
                path: grown.path().to_vec(),
                claimed,
                provenance: cert.provenance.clone(),
            });
        }
        blocks.push(CaseBlock { case: block.case, certificates });
    }
    print!("{}", emit_certs(&CertificateSet::new(u, blocks)));
    Ok(0)
}

fn cmd_search(u: &[u32], abc: &[u32], growable: &[u32], budget: u64, all: bool) -> bhr::Result<u8> {
    if u.len() != abc.len() {
        return Err(Error::InvalidArgument(
            "--U and --abc must have the same number of entries".into(),
        ));
    }
    let l = LengthMultiset::from_exponents(u, abc)?;
    let req = SearchRequest::new(l, growable.iter().copied(), budget, all)?;
    let outcome = find_realization(&req)?;
    print_found(u, abc, &outcome.realizations);
    eprintln!("status: {:?}, nodes expanded: {}", outcome.status, outcome.nodes_expanded);
    Ok(match outcome.status {
        SearchStatus::Found => 0,
        SearchStatus::ExhaustedNone => EXIT_MATH,
        SearchStatus::BudgetExceeded => EXIT_BUDGET,
    })
}

/// Search results print as a certificate section when the underlying set has
/// three lengths, so they can be fed back to `verify`, `grow`, and `cover`.
fn print_found(
    u: &[u32],
    abc: &[u32],
    found: &[(Realization, bhr::growth::GrowabilityProfile)],
) {
    if found.is_empty() {
        return;
    }
    if u.len() == 3 {
        let u3 = [u[0], u[1], u[2]];
        let case = bhr::coverage::CaseId::of(u3, [abc[0], abc[1], abc[2]]).expect("valid triple");
        let certificates = found
            .iter()
            .map(|(r, profile)| Certificate {
                exponents: [abc[0], abc[1], abc[2]],
                path: r.path().to_vec(),
                claimed: [0usize, 1, 2].map(|i| (u3[i], profile.smallest_anchor(u3[i]))),
                provenance: String::new(),
            })
            .collect();
        let set = CertificateSet::new(u3, vec![CaseBlock { case, certificates }]);
        print!("{}", emit_certs(&set));
    } else {
        for (r, _) in found {
            println!("path={}", join(r.path()));
        }
    }
}

fn join(labels: &[u32]) -> String {
    labels.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(" ")
}

fn cmd_cover(file: &str, strict_base: bool) -> bhr::Result<u8> {
    let set = read_set(file)?;
    let cap = if strict_base { BaseCap::Strict } else { BaseCap::Standard };
    let results = cover_certs(&set, cap)?;
    let mut all_covered = true;
    for (case, report) in &results {
        if report.covered {
            let label = report.method_label.map_or("none".to_string(), |m| m.to_string());
            println!("{case}: covered, method {label}");
        } else {
            all_covered = false;
            println!("{case}: NOT covered, first exceptions: {:?}",
                &report.exceptions[..report.exceptions.len().min(5)]);
        }
    }
    let covered = results.iter().filter(|(_, r)| r.covered).count();
    println!("{covered}/{} cases covered", results.len());
    Ok(if all_covered { 0 } else { EXIT_MATH })
}

fn cmd_prove(x: u32, budget: u64, max_ab: Option<u32>) -> bhr::Result<u8> {
    let report = prove_12x(x, budget, max_ab)?;
    let mut by_pair: BTreeMap<(u32, u32), Vec<String>> = BTreeMap::new();
    for cell in &report.cells {
        let entry = by_pair.entry((cell.a, cell.b)).or_default();
        match &cell.status {
            CellStatus::Realized(r) => entry.push(format!("c={} path={}", cell.c, join(r.path()))),
            CellStatus::ClassInadmissible => entry.push(format!("c={} class inadmissible", cell.c)),
            CellStatus::NoGrowableRealization => {
                entry.push(format!("c={} NO {x}-growable realization", cell.c))
            }
            CellStatus::BudgetExceeded => entry.push(format!("c={} budget exceeded", cell.c)),
        }
    }
    for ((a, b), lines) in &by_pair {
        println!("(a={a}, b={b})");
        for line in lines {
            println!("  {line}");
        }
    }
    println!(
        "x={x}: {} realized, {} inadmissible classes, {} unrealizable, {} out of budget",
        report.realized, report.skipped, report.unrealizable, report.out_of_budget
    );
    Ok(if report.unrealizable > 0 {
        EXIT_MATH
    } else if report.out_of_budget > 0 {
        EXIT_BUDGET
    } else {
        0
    })
}

fn cmd_construct(v: u32, x: u32, a: u32) -> bhr::Result<u8> {
    let order = Order::new(v)?;
    let r = bhr::construct::build_12x_single(order, x, a)?;
    let profile = growability_profile(&r);
    println!("path={}", join(r.path()));
    let grow_set: Vec<u32> = profile.grow_set().into_iter().collect();
    eprintln!("realizes {{1^{a}, 2^{}, {x}}}; growable lengths: {:?}", v - 2 - a, grow_set);
    Ok(0)
}

fn cmd_oracle(u: &[u32], abc: &[u32]) -> bhr::Result<u8> {
    let l = LengthMultiset::from_exponents(u, abc)?;
    let orbits = exhaustive_oracle(&l).map_err(|e| match e {
        Error::Refused(msg) => Error::InvalidArgument(msg),
        other => other,
    })?;
    for r in &orbits {
        println!("path={}", join(r.path()));
    }
    println!("{} realization orbits", orbits.len());
    Ok(if orbits.is_empty() { EXIT_MATH } else { 0 })
}
