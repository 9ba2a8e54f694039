//! The certificate interchange format, bundled certificate sets, and the
//! verification and coverage drivers behind the CLI.
//!
//! # Grammar (bit-exact, UTF-8, one record per line)
//!
//! ```text
//! header  := "#BHR v1 U=" x "," y "," z " case=" a0 "," b0 "," c0
//! record  := "abc=" a "," b "," c " m=" m1 "," m2 "," m3 " path=" label {" " label}
//! comment := ";" free text
//! ```
//!
//! A file is a sequence of sections, each a header followed by its records.
//! The three `m` slots match the header's `U` in order; `-` means "no anchor
//! claimed". Comment lines immediately before a record become its provenance
//! and are re-emitted on output; other comments and blank lines are dropped.
//! Emission is canonical: sections ascending by case residues, records by
//! `(v, a, b, c)`. Checkpoint files reuse the record grammar under a
//! `#BHR-CKPT v1 ... next=<layer>` header.
//!
//! Parsing validates structure only (grammar, ranges, congruence with the
//! section header); all mathematics is deferred to [`verify_certs`].

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::core::{
    check_admissibility, induced_multiset, Length, LengthMultiset, Realization, Vertex,
};
use crate::coverage::{
    check_closure, BaseCap, BasisEntry, CaseId, ClosureReport, CoverageBasis, Triple,
};
use crate::growth::{growability_profile, is_growable_at};
use crate::search::Checkpoint;
use crate::{Error, Result};

/// Bundled certificate sets shipped with the crate.
pub mod bundled {
    /// Certificates settling every congruence case for `U = {2, 4, 5}`.
    pub const U245: &str = include_str!("../data/u245.bhr");
    /// Certificates settling every congruence case for `U = {3, 4, 5}`.
    pub const U345: &str = include_str!("../data/u345.bhr");
}

/// One table row: an exponent triple, a path, and the claimed anchors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    pub exponents: Triple,
    /// Raw path labels; validated as a permutation only at verification time.
    pub path: Vec<Vertex>,
    /// Claimed witnesses per length of `U`, in header order; `None` = no claim.
    pub claimed: [(Length, Option<Vertex>); 3],
    pub provenance: String,
}

impl Certificate {
    fn sort_key(&self) -> (usize, Triple) {
        (self.path.len(), self.exponents)
    }
}

/// All certificates of one congruence case.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CaseBlock {
    pub case: CaseId,
    pub certificates: Vec<Certificate>,
}

/// A parsed certificate file: one underlying set, one block per case,
/// canonically ordered.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CertificateSet {
    pub u: [Length; 3],
    pub blocks: Vec<CaseBlock>,
}

impl CertificateSet {
    /// Sorts blocks by residues and records by `(v, a, b, c)`.
    pub fn new(u: [Length; 3], mut blocks: Vec<CaseBlock>) -> Self {
        for block in &mut blocks {
            block.certificates.sort_by_key(Certificate::sort_key);
        }
        blocks.sort_by_key(|b| b.case.residues());
        CertificateSet { u, blocks }
    }

    pub fn certificate_count(&self) -> usize {
        self.blocks.iter().map(|b| b.certificates.len()).sum()
    }
}

/// Parse result: the set plus non-fatal warnings (duplicate triples).
#[derive(Clone, Debug)]
pub struct Parsed {
    pub set: CertificateSet,
    pub warnings: Vec<String>,
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Cursor over one line with 1-based column tracking.
struct Cursor<'a> {
    s: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str, line: usize) -> Self {
        Cursor { s, pos: 0, line }
    }

    fn col(&self) -> usize {
        self.pos + 1
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.s[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            Ok(())
        } else {
            Err(parse_err(self.line, self.col(), format!("expected `{lit}`")))
        }
    }

    fn number(&mut self) -> Result<u32> {
        let rest = &self.s[self.pos..];
        let digits = rest.len() - rest.trim_start_matches(|c: char| c.is_ascii_digit()).len();
        if digits == 0 {
            return Err(parse_err(self.line, self.col(), "expected a number"));
        }
        let n = rest[..digits]
            .parse()
            .map_err(|_| parse_err(self.line, self.col(), "number out of range"))?;
        self.pos += digits;
        Ok(n)
    }

    fn triple(&mut self) -> Result<[u32; 3]> {
        let a = self.number()?;
        self.expect(",")?;
        let b = self.number()?;
        self.expect(",")?;
        let c = self.number()?;
        Ok([a, b, c])
    }

    fn anchor(&mut self) -> Result<Option<u32>> {
        if self.s[self.pos..].starts_with('-') {
            self.pos += 1;
            Ok(None)
        } else {
            Ok(Some(self.number()?))
        }
    }

    fn at_end(&self) -> bool {
        self.pos == self.s.len()
    }
}

/// Parses a certificate file. Structural errors carry line and column;
/// duplicate exponent triples within a case are reported as warnings.
pub fn parse_certs(text: &str) -> Result<Parsed> {
    let mut u: Option<[Length; 3]> = None;
    let mut blocks: Vec<CaseBlock> = Vec::new();
    let mut warnings = Vec::new();
    let mut pending_comment: Vec<String> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        if raw.trim().is_empty() {
            pending_comment.clear();
            continue;
        }
        if let Some(rest) = raw.strip_prefix(';') {
            pending_comment.push(rest.strip_prefix(' ').unwrap_or(rest).to_string());
            continue;
        }
        if raw.starts_with("#BHR-CKPT") {
            return Err(parse_err(line_no, 1, "checkpoint file; use the checkpoint parser"));
        }
        if raw.starts_with('#') {
            let mut cur = Cursor::new(raw, line_no);
            cur.expect("#BHR v1 U=")?;
            let u_line = cur.triple()?;
            cur.expect(" case=")?;
            let residues = cur.triple()?;
            if !cur.at_end() {
                return Err(parse_err(line_no, cur.col(), "trailing input after header"));
            }
            match u {
                None => u = Some(u_line),
                Some(prev) if prev != u_line => {
                    return Err(parse_err(
                        line_no,
                        1,
                        format!("underlying set {u_line:?} differs from {prev:?}"),
                    ))
                }
                _ => {}
            }
            let case = CaseId::new(u_line, residues)
                .map_err(|e| parse_err(line_no, 1, e.to_string()))?;
            if blocks.iter().any(|b| b.case == case) {
                warnings.push(format!("line {line_no}: repeated section for {case}"));
            }
            blocks.push(CaseBlock { case, certificates: Vec::new() });
            pending_comment.clear();
            continue;
        }
        // Record line.
        let Some(block) = blocks.last_mut() else {
            return Err(parse_err(line_no, 1, "record before any section header"));
        };
        let mut cur = Cursor::new(raw, line_no);
        cur.expect("abc=")?;
        let exponents = cur.triple()?;
        cur.expect(" m=")?;
        let m1 = cur.anchor()?;
        cur.expect(",")?;
        let m2 = cur.anchor()?;
        cur.expect(",")?;
        let m3 = cur.anchor()?;
        cur.expect(" path=")?;
        let mut path = Vec::new();
        loop {
            path.push(cur.number()?);
            if cur.at_end() {
                break;
            }
            cur.expect(" ")?;
        }
        if !block.case.contains(exponents) {
            return Err(parse_err(
                line_no,
                5,
                format!("exponents {exponents:?} are not congruent to {}", block.case),
            ));
        }
        if block.certificates.iter().any(|c| c.exponents == exponents) {
            warnings.push(format!(
                "line {line_no}: duplicate exponent triple {exponents:?} in {}",
                block.case
            ));
        }
        let uu = u.expect("section exists");
        block.certificates.push(Certificate {
            exponents,
            path,
            claimed: [(uu[0], m1), (uu[1], m2), (uu[2], m3)],
            provenance: pending_comment.join("\n"),
        });
        pending_comment.clear();
    }

    let u = u.ok_or_else(|| parse_err(1, 1, "no section header found"))?;
    Ok(Parsed { set: CertificateSet::new(u, blocks), warnings })
}

/// Canonical text form; `emit_certs(parse_certs(t).set) == t` for canonical `t`.
pub fn emit_certs(set: &CertificateSet) -> String {
    let mut out = String::new();
    for block in &set.blocks {
        let r = block.case.residues();
        let u = set.u;
        writeln!(out, "#BHR v1 U={},{},{} case={},{},{}", u[0], u[1], u[2], r[0], r[1], r[2])
            .unwrap();
        for cert in &block.certificates {
            for line in cert.provenance.lines() {
                writeln!(out, "; {line}").unwrap();
            }
            let m: Vec<String> = cert
                .claimed
                .iter()
                .map(|(_, a)| a.map_or_else(|| "-".to_string(), |m| m.to_string()))
                .collect();
            let path: Vec<String> = cert.path.iter().map(|h| h.to_string()).collect();
            writeln!(
                out,
                "abc={},{},{} m={} path={}",
                cert.exponents[0],
                cert.exponents[1],
                cert.exponents[2],
                m.join(","),
                path.join(" ")
            )
            .unwrap();
        }
    }
    out
}

/// Verification outcome for one certificate.
#[derive(Clone, Debug)]
pub struct CertReport {
    pub case: CaseId,
    pub exponents: Triple,
    pub provenance: String,
    /// Empty when the certificate passed.
    pub issues: Vec<String>,
}

impl CertReport {
    pub fn passed(&self) -> bool {
        self.issues.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub certs: Vec<CertReport>,
    pub passed: usize,
    pub failed: usize,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Checks every certificate: admissibility, the realization itself, and each
/// claimed witness. Strict mode recomputes the full growability profile and
/// flags claimed grow-lengths that have no anchor anywhere. Uses only the
/// primitive definitions, never the search engine.
pub fn verify_certs(set: &CertificateSet, strict: bool) -> VerifyReport {
    let jobs: Vec<(&CaseId, &Certificate)> = set
        .blocks
        .iter()
        .flat_map(|b| b.certificates.iter().map(move |c| (&b.case, c)))
        .collect();
    let certs: Vec<CertReport> = jobs
        .par_iter()
        .map(|(case, cert)| verify_one(set.u, case, cert, strict))
        .collect();
    let failed = certs.iter().filter(|c| !c.passed()).count();
    VerifyReport { passed: certs.len() - failed, certs, failed }
}

fn verify_one(u: [Length; 3], case: &CaseId, cert: &Certificate, strict: bool) -> CertReport {
    let mut issues = Vec::new();

    let claimed_multiset = LengthMultiset::from_exponents(&u, &cert.exponents);
    match &claimed_multiset {
        Ok(l) => {
            let adm = check_admissibility(l);
            if !adm.admissible {
                for v in &adm.violations {
                    issues.push(format!(
                        "inadmissible: {} multiples of {} exceed the bound {}",
                        v.count, v.divisor, v.bound
                    ));
                }
            }
        }
        Err(e) => issues.push(format!("invalid multiset: {e}")),
    }

    let realization = Realization::from_path(cert.path.clone());
    match (&realization, &claimed_multiset) {
        (Ok(r), Ok(l)) => {
            let found = induced_multiset(r);
            if &found != l {
                // Pinpoint the first multiplicity discrepancy.
                let mut lengths: Vec<Length> =
                    l.counts().keys().chain(found.counts().keys()).copied().collect();
                lengths.sort_unstable();
                lengths.dedup();
                for len in lengths {
                    let (want, got) = (l.multiplicity(len), found.multiplicity(len));
                    if want != got {
                        issues.push(format!(
                            "realization mismatch at length {len}: claimed {want}, path has {got}"
                        ));
                        break;
                    }
                }
            } else {
                let profile = strict.then(|| growability_profile(r));
                for &(x, anchor) in &cert.claimed {
                    let Some(m) = anchor else { continue };
                    if !is_growable_at(r, x, m) {
                        issues.push(match crate::growth::explain_witness(r, x, m) {
                            Some(reason) => format!("claimed witness ({x}, {m}) fails: {reason}"),
                            None => format!("claimed witness ({x}, {m}) fails"),
                        });
                        if let Some(p) = &profile {
                            let anchors: Vec<_> = p.anchors(x).collect();
                            if anchors.is_empty() {
                                issues.push(format!("length {x} has no anchor at all"));
                            } else {
                                issues.push(format!("valid anchors for {x}: {anchors:?}"));
                            }
                        }
                    }
                }
            }
        }
        (Err(e), _) => issues.push(format!("invalid path: {e}")),
        _ => {}
    }

    CertReport {
        case: *case,
        exponents: cert.exponents,
        provenance: cert.provenance.clone(),
        issues,
    }
}

/// Groups a verified set by case and runs the closure checker on each block.
/// Refuses sets that do not verify.
pub fn cover_certs(set: &CertificateSet, cap: BaseCap) -> Result<Vec<(CaseId, ClosureReport)>> {
    let verification = verify_certs(set, false);
    if !verification.all_passed() {
        let first = verification.certs.iter().find(|c| !c.passed()).unwrap();
        return Err(Error::Refused(format!(
            "set does not verify: {} {:?}: {}",
            first.case,
            first.exponents,
            first.issues.join("; ")
        )));
    }
    set.blocks
        .par_iter()
        .map(|block| {
            let entries = block
                .certificates
                .iter()
                .map(|c| {
                    let mut entry = BasisEntry::new(
                        set.u,
                        c.exponents,
                        Realization::from_path(c.path.clone())?,
                    )?;
                    // Coverage follows the growabilities the certificate
                    // claims, not everything the path happens to have.
                    let claimed: Vec<Length> = c
                        .claimed
                        .iter()
                        .filter(|(_, m)| m.is_some())
                        .map(|(x, _)| *x)
                        .collect();
                    entry.profile = entry.profile.restricted_to(claimed.iter());
                    Ok(entry)
                })
                .collect::<Result<Vec<_>>>()?;
            let basis = CoverageBasis::new(entries, cap);
            Ok((block.case, check_closure(&block.case, &basis)))
        })
        .collect()
}

/// Serializes a case-algorithm checkpoint.
pub fn emit_checkpoint(ck: &Checkpoint) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "#BHR-CKPT v1 U={},{},{} case={},{},{} next={}",
        ck.u[0], ck.u[1], ck.u[2], ck.residues[0], ck.residues[1], ck.residues[2], ck.next_layer
    )
    .unwrap();
    for (t, r) in &ck.entries {
        let profile = growability_profile(r);
        let m: Vec<String> = ck
            .u
            .iter()
            .map(|&x| profile.smallest_anchor(x).map_or_else(|| "-".into(), |m| m.to_string()))
            .collect();
        let path: Vec<String> = r.path().iter().map(|h| h.to_string()).collect();
        writeln!(out, "abc={},{},{} m={} path={}", t[0], t[1], t[2], m.join(","), path.join(" "))
            .unwrap();
    }
    out
}

/// Parses a checkpoint produced by [`emit_checkpoint`].
pub fn parse_checkpoint(text: &str) -> Result<Checkpoint> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "empty checkpoint"))?;
    let mut cur = Cursor::new(header, 1);
    cur.expect("#BHR-CKPT v1 U=")?;
    let u = cur.triple()?;
    cur.expect(" case=")?;
    let residues = cur.triple()?;
    cur.expect(" next=")?;
    let next_layer = cur.number()?;
    let mut entries = Vec::new();
    for (i, raw) in lines {
        let line_no = i + 1;
        if raw.trim().is_empty() || raw.starts_with(';') {
            continue;
        }
        let mut cur = Cursor::new(raw, line_no);
        cur.expect("abc=")?;
        let t = cur.triple()?;
        cur.expect(" m=")?;
        let _ = cur.anchor()?;
        cur.expect(",")?;
        let _ = cur.anchor()?;
        cur.expect(",")?;
        let _ = cur.anchor()?;
        cur.expect(" path=")?;
        let mut path = Vec::new();
        loop {
            path.push(cur.number()?);
            if cur.at_end() {
                break;
            }
            cur.expect(" ")?;
        }
        let r = Realization::from_path(path)
            .map_err(|e| parse_err(line_no, 1, e.to_string()))?;
        entries.push((t, r));
    }
    Ok(Checkpoint { u, residues, next_layer, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "#BHR v1 U=2,4,5 case=1,4,3\n\
        abc=1,8,3 m=-,3,6 path=6 10 5 1 9 11 2 7 3 12 8 4 0\n";

    #[test]
    fn parse_emit_round_trip() {
        let parsed = parse_certs(SAMPLE).unwrap();
        assert!(parsed.warnings.is_empty());
        assert_eq!(parsed.set.certificate_count(), 1);
        assert_eq!(emit_certs(&parsed.set), SAMPLE);
        let again = parse_certs(&emit_certs(&parsed.set)).unwrap();
        assert_eq!(again.set, parsed.set);
    }

    #[test]
    fn provenance_round_trips() {
        let text = "#BHR v1 U=2,4,5 case=1,4,3\n\
            ; transcribed row\n\
            abc=1,8,3 m=-,3,6 path=6 10 5 1 9 11 2 7 3 12 8 4 0\n";
        let parsed = parse_certs(text).unwrap();
        assert_eq!(parsed.set.blocks[0].certificates[0].provenance, "transcribed row");
        assert_eq!(emit_certs(&parsed.set), text);
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse_certs("#BHR v1 U=2,4,5 case=1,4,3\nabc=1,8,3 m=-,3,6\n").unwrap_err();
        let Error::Parse { line, msg, .. } = err else { panic!("wrong error kind") };
        assert_eq!(line, 2);
        assert!(msg.contains("path"), "got: {msg}");

        let err = parse_certs("abc=1,1,1 m=-,-,- path=0 1\n").unwrap_err();
        let Error::Parse { line, .. } = err else { panic!("wrong error kind") };
        assert_eq!(line, 1);
    }

    #[test]
    fn incongruent_record_rejected() {
        let err =
            parse_certs("#BHR v1 U=2,4,5 case=1,4,3\nabc=2,8,3 m=-,-,- path=0 1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn duplicate_triple_warns() {
        let text = "#BHR v1 U=2,4,5 case=1,4,3\n\
            abc=1,8,3 m=-,3,6 path=6 10 5 1 9 11 2 7 3 12 8 4 0\n\
            abc=1,8,3 m=-,-,- path=6 10 5 1 9 11 2 7 3 12 8 4 0\n";
        let parsed = parse_certs(text).unwrap();
        assert_eq!(parsed.warnings.len(), 1);
        assert!(parsed.warnings[0].contains("duplicate"));
    }

    #[test]
    fn verify_passes_good_certificate() {
        let parsed = parse_certs(SAMPLE).unwrap();
        let report = verify_certs(&parsed.set, true);
        assert!(report.all_passed(), "{:?}", report.certs[0].issues);
    }

    #[test]
    fn verify_flags_corrupted_path() {
        // Swap two labels of the good path: the multiset changes.
        let text = "#BHR v1 U=2,4,5 case=1,4,3\n\
            abc=1,8,3 m=-,-,- path=6 10 5 1 9 11 2 7 3 12 8 0 4\n";
        let report = verify_certs(&parse_certs(text).unwrap().set, false);
        assert_eq!(report.failed, 1);
        let issue = &report.certs[0].issues[0];
        assert!(issue.contains("realization mismatch at length"), "got: {issue}");
    }

    #[test]
    fn verify_flags_wrong_anchor_with_witness_detail() {
        // 5-growable at 6 is right; claim 7 instead.
        let text = "#BHR v1 U=2,4,5 case=1,4,3\n\
            abc=1,8,3 m=-,-,7 path=6 10 5 1 9 11 2 7 3 12 8 4 0\n";
        let report = verify_certs(&parse_certs(text).unwrap().set, true);
        assert_eq!(report.failed, 1);
        let joined = report.certs[0].issues.join("; ");
        assert!(joined.contains("(5, 7) fails"), "got: {joined}");
        assert!(joined.contains("valid anchors for 5: [6"), "got: {joined}");
    }

    #[test]
    fn checkpoint_round_trip() {
        let ck = Checkpoint {
            u: [2, 4, 5],
            residues: [1, 1, 1],
            next_layer: 2,
            entries: vec![(
                [1, 8, 3],
                Realization::from_path(vec![6, 10, 5, 1, 9, 11, 2, 7, 3, 12, 8, 4, 0]).unwrap(),
            )],
        };
        let text = emit_checkpoint(&ck);
        assert_eq!(parse_checkpoint(&text).unwrap(), ck);
        assert!(parse_certs(&text).is_err());
    }
}
