use bhr::core::*;
use bhr::growth::*;

fn main() {
    // Hunt for a grow step that drops a grow-set element, over all bundled
    // certificate paths and every witness.
    use bhr::certs::*;
    'outer: for text in [bundled::U245, bundled::U345] {
        let parsed = parse_certs(text).unwrap();
        for block in &parsed.set.blocks {
            for cert in &block.certificates {
                let r = Realization::from_path(cert.path.clone()).unwrap();
                let prof = growability_profile(&r);
                let gs = prof.grow_set();
                for w in prof.witnesses() {
                    let g = grow(&r, &GrowabilityWitness { x: w.x, m: w.m }).unwrap();
                    let gs2 = growability_profile(&g).grow_set();
                    if !gs.is_subset(&gs2) {
                        println!("counterexample: {} {:?}", block.case, cert.exponents);
                        println!("  path {r}");
                        println!("  grow-set {:?}, grew at ({}, {})", gs, w.x, w.m);
                        println!("  grown {g}");
                        println!("  new grow-set {:?}", gs2);
                        break 'outer;
                    }
                }
            }
        }
    }
    println!("done");
}
