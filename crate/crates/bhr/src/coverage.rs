//! Congruence cases, the dominance order, and the closure checker.
//!
//! For an ordered underlying set `U = (x, y, z)`, the exponent triples of
//! `{x^a, y^b, z^c}` split into `xyz` congruence *cases* modulo `(x, y, z)`;
//! a [`CaseId`] holds the residues `(a0, b0, c0)` with `0 < a0 <= x` and so on.
//! A basis entry *covers* a target triple when the entry's triple is dominated
//! by the target and the entry is growable in every coordinate where they
//! differ — repeated growing then materializes a realization for the target.
//!
//! # Why the closure scan terminates
//!
//! Whether an entry covers `t` depends on each coordinate of `t` only through
//! "equal to the entry's coordinate or strictly above it". Above
//! `maxEntry_i + period_i` every entry is strictly below `t_i`, so coverage
//! status is constant there: any triple has the same status as its *clamp* into
//! the finite box bounded by `maxEntry_i + period_i`. Exceptions are therefore
//! found by scanning the box and, for each uncovered box point, scanning its
//! fibre (the triples clamping to it) for admissible members above the assumed
//! base cap. Along a fibre, admissibility is decided by finitely many divisor
//! conditions whose margins are affine with non-negative slopes in each free
//! coordinate and whose `d | v` patterns are periodic, so a bounded window scan
//! is exact; the window bounds below come from one full divisor cycle plus
//! enough steps to clear every monotone threshold.

use std::fmt;

use crate::core::{admissible_exponents, Length, Realization};
use crate::growth::GrowabilityProfile;
use crate::{Error, Result};

/// An exponent triple `(a, b, c)` for `{x^a, y^b, z^c}`.
pub type Triple = [u32; 3];

/// One congruence class of exponent triples modulo the ordered underlying set.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CaseId {
    u: [Length; 3],
    residues: [u32; 3],
}

impl CaseId {
    /// Residues must satisfy `0 < residues[i] <= u[i]`.
    pub fn new(u: [Length; 3], residues: [u32; 3]) -> Result<Self> {
        if u.iter().any(|&x| x == 0) {
            return Err(Error::InvalidArgument("underlying set contains 0".into()));
        }
        if u[0] == u[1] || u[1] == u[2] || u[0] == u[2] {
            return Err(Error::InvalidArgument(format!("underlying set {u:?} has repeats")));
        }
        for i in 0..3 {
            if residues[i] == 0 || residues[i] > u[i] {
                return Err(Error::InvalidArgument(format!(
                    "residue {} out of range 1..={}",
                    residues[i], u[i]
                )));
            }
        }
        Ok(CaseId { u, residues })
    }

    /// The case containing the exponent triple `t` for the ordered set `u`.
    pub fn of(u: [Length; 3], t: Triple) -> Result<Self> {
        let mut residues = [0u32; 3];
        for i in 0..3 {
            if t[i] == 0 {
                return Err(Error::InvalidArgument("exponents must be positive".into()));
            }
            residues[i] = (t[i] - 1) % u[i] + 1;
        }
        CaseId::new(u, residues)
    }

    pub fn u(&self) -> [Length; 3] {
        self.u
    }

    pub fn residues(&self) -> [u32; 3] {
        self.residues
    }

    /// True when `t` lies in this congruence class (componentwise, positive).
    pub fn contains(&self, t: Triple) -> bool {
        (0..3).all(|i| t[i] >= 1 && t[i] % self.u[i] == self.residues[i] % self.u[i])
    }

    /// Number of vertices for the triple `t`.
    pub fn order_of(&self, t: Triple) -> u32 {
        t.iter().sum::<u32>() + 1
    }

    pub fn admissible(&self, t: Triple) -> bool {
        admissible_exponents(&self.u, &t)
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "U=({},{},{}) case ({},{},{})",
            self.u[0], self.u[1], self.u[2], self.residues[0], self.residues[1], self.residues[2]
        )
    }
}

/// Componentwise `<=` on exponent triples.
pub fn dominates(t1: Triple, t2: Triple) -> bool {
    (0..3).all(|i| t1[i] <= t2[i])
}

/// A realization together with its exponent triple and computed growability.
#[derive(Clone, Debug)]
pub struct BasisEntry {
    pub exponents: Triple,
    pub realization: Realization,
    pub profile: GrowabilityProfile,
}

impl BasisEntry {
    /// Verifies the realization against `{u^exponents}` and computes its profile.
    pub fn new(u: [Length; 3], exponents: Triple, realization: Realization) -> Result<Self> {
        let l = crate::core::LengthMultiset::from_exponents(&u, &exponents)?;
        if !crate::core::verify_realization(&realization, &l)? {
            return Err(Error::InvalidArgument(format!(
                "path {realization} does not realize {l}"
            )));
        }
        let profile = crate::growth::growability_profile(&realization);
        Ok(BasisEntry { exponents, realization, profile })
    }
}

/// Which orders `v` are assumed realizable without a certificate.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum BaseCap {
    /// `v <= 19` or `v = 23`.
    #[default]
    Standard,
    /// Only `v <= 12`, the locally re-verified range.
    Strict,
}

impl BaseCap {
    pub fn assumes(self, v: u32) -> bool {
        match self {
            BaseCap::Standard => v <= 19 || v == 23,
            BaseCap::Strict => v <= 12,
        }
    }

    fn max_v(self) -> u32 {
        match self {
            BaseCap::Standard => 23,
            BaseCap::Strict => 12,
        }
    }
}

/// A finite set of entries meant to settle one case, plus the assumed base cap.
#[derive(Clone, Debug, Default)]
pub struct CoverageBasis {
    pub entries: Vec<BasisEntry>,
    pub cap: BaseCap,
}

impl CoverageBasis {
    pub fn new(entries: Vec<BasisEntry>, cap: BaseCap) -> Self {
        CoverageBasis { entries, cap }
    }
}

/// True when `entry` covers `target`: dominated componentwise, and growable in
/// the length of every coordinate where the triples differ.
pub fn covers(case: &CaseId, entry: &BasisEntry, target: Triple) -> Result<bool> {
    if !case.contains(entry.exponents) {
        return Err(Error::InvalidArgument(format!(
            "entry triple {:?} is not in {case}",
            entry.exponents
        )));
    }
    if !case.contains(target) {
        return Err(Error::InvalidArgument(format!(
            "target triple {target:?} is not in {case}"
        )));
    }
    if !dominates(entry.exponents, target) {
        return Ok(false);
    }
    let u = case.u();
    Ok((0..3).all(|i| entry.exponents[i] == target[i] || entry.profile.is_growable(u[i])))
}

/// Outcome of the closure decision for one case.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClosureReport {
    pub covered: bool,
    /// Admissible triples that are neither covered nor assumed by the base cap,
    /// ascending; capped at [`MAX_EXCEPTIONS`] entries.
    pub exceptions: Vec<Triple>,
    /// Admissible uncovered triples the base cap absorbed (for transparency).
    pub assumed_by_cap: Vec<Triple>,
    pub method_label: Option<u8>,
}

/// Exception lists are truncated at this many entries.
pub const MAX_EXCEPTIONS: usize = 128;

/// Divisors `d > 1` of at least one element of `u`, bounded by `max(u)`: the
/// only divisors whose condition can ever fail for multisets over `u`.
fn relevant_divisors(u: &[Length; 3]) -> Vec<u32> {
    let mu = *u.iter().max().unwrap();
    (2..=mu).filter(|d| u.iter().any(|&x| x % d == 0)).collect()
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd64(a, b) * b
}

fn gcd64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd64(b, a % b)
    }
}

/// Steps of `period` after which every `d | v` pattern repeats.
fn cycle_steps(u: &[Length; 3], period: u32) -> u32 {
    let mut c = 1u64;
    for d in relevant_divisors(u) {
        c = lcm(c, (d / crate::core::gcd(d, period)) as u64);
    }
    c as u32
}

/// Window length (in steps of `period`) that makes a line or fibre scan exact:
/// one full divisor cycle plus enough steps to clear the monotone thresholds
/// (`v >= 2 max(u)`, the base cap, and every growing divisor margin).
fn scan_steps(u: &[Length; 3], period: u32, v_base: u32, cap_max: u32) -> u32 {
    let z = *u.iter().max().unwrap();
    let cycle = cycle_steps(u, period);
    cycle + (v_base + cap_max + 2 * z + 1).div_ceil(period) + 1
}

/// First admissible triple on the line `base + s·period(axis)`, scanning a
/// window wide enough to be exact; `None` means the whole line is inadmissible.
pub fn first_admissible_on_line(case: &CaseId, base: Triple, axis: usize) -> Option<Triple> {
    let u = case.u();
    let period = u[axis];
    let v_base = case.order_of(base);
    let steps = scan_steps(&u, period, v_base, 0);
    let mut t = base;
    for _ in 0..=steps {
        if case.admissible(t) {
            return Some(t);
        }
        t[axis] += period;
    }
    None
}

/// Decides whether every admissible triple of the case is covered by an entry
/// or absorbed by the base cap. Uncovered admissible triples above the cap are
/// listed as exceptions.
pub fn check_closure(case: &CaseId, basis: &CoverageBasis) -> ClosureReport {
    let mut report = closure_scan(case, basis);
    report.method_label = classify_method(case, basis);
    report
}

fn closure_scan(case: &CaseId, basis: &CoverageBasis) -> ClosureReport {
    let u = case.u();
    let residues = case.residues();

    // Box levels per coordinate: residues up to max entry coordinate plus one
    // period. The top level stands for "strictly above every entry".
    let mut levels: [Vec<u32>; 3] = Default::default();
    for i in 0..3 {
        let max_entry = basis
            .entries
            .iter()
            .map(|e| e.exponents[i])
            .max()
            .unwrap_or(residues[i]);
        let mut vals = Vec::new();
        let mut v = residues[i];
        while v <= max_entry {
            vals.push(v);
            v += u[i];
        }
        vals.push(v); // the free level, one period above every entry
        levels[i] = vals;
    }

    let mut exceptions: Vec<Triple> = Vec::new();
    let mut assumed: Vec<Triple> = Vec::new();

    for &a in &levels[0] {
        for &b in &levels[1] {
            for &c in &levels[2] {
                let t = [a, b, c];
                let covered = basis
                    .entries
                    .iter()
                    .any(|e| covers(case, e, t).expect("box triples are congruent"));
                if covered {
                    continue;
                }
                scan_fibre(case, basis, &levels, t, &mut exceptions, &mut assumed);
            }
        }
    }

    exceptions.sort_unstable();
    exceptions.dedup();
    exceptions.truncate(MAX_EXCEPTIONS);
    assumed.sort_unstable();
    assumed.dedup();
    assumed.truncate(MAX_EXCEPTIONS);
    ClosureReport {
        covered: exceptions.is_empty(),
        exceptions,
        assumed_by_cap: assumed,
        method_label: None,
    }
}

/// Enumerates the fibre of an uncovered box point: coordinates at the free
/// level range over a window of extra periods, pinned coordinates stay fixed.
/// Every member has the same (uncovered) status as the box point.
fn scan_fibre(
    case: &CaseId,
    basis: &CoverageBasis,
    levels: &[Vec<u32>; 3],
    t: Triple,
    exceptions: &mut Vec<Triple>,
    assumed: &mut Vec<Triple>,
) {
    let u = case.u();
    let free: Vec<usize> = (0..3).filter(|&i| t[i] == *levels[i].last().unwrap()).collect();
    let v_base = case.order_of(t);
    let cap_max = basis.cap.max_v();
    let windows: Vec<u32> = free.iter().map(|&i| scan_steps(&u, u[i], v_base, cap_max)).collect();

    let mut steps = vec![0u32; free.len()];
    loop {
        let mut member = t;
        for (k, &i) in free.iter().enumerate() {
            member[i] += steps[k] * u[i];
        }
        if case.admissible(member) {
            if basis.cap.assumes(case.order_of(member)) {
                if assumed.len() < MAX_EXCEPTIONS * 4 {
                    assumed.push(member);
                }
            } else if exceptions.len() < MAX_EXCEPTIONS * 4 {
                exceptions.push(member);
            }
        }
        // Advance the mixed-radix step counter.
        let mut k = 0;
        loop {
            if k == free.len() {
                return;
            }
            steps[k] += 1;
            if steps[k] <= windows[k] {
                break;
            }
            steps[k] = 0;
            k += 1;
        }
    }
}

/// Matches the basis against the five method templates in order and returns the
/// first that fits; `None` when no template matches (closure may still hold).
pub fn classify_method(case: &CaseId, basis: &CoverageBasis) -> Option<u8> {
    if matches_method_1(case, basis) {
        return Some(1);
    }
    for role_z in [2usize, 1, 0] {
        if matches_layered(case, basis, role_z, 1, PlaneRule::FullOnly) {
            return Some(2);
        }
    }
    for role_z in [2usize, 1, 0] {
        if matches_layered(case, basis, role_z, 1, PlaneRule::PairOnly) {
            return Some(3);
        }
    }
    for role_z in [2usize, 1, 0] {
        let max_k = max_layer(case, basis, role_z);
        for k in 2..=max_k {
            if matches_layered(case, basis, role_z, k, PlaneRule::Any) {
                return Some(4);
            }
        }
    }
    if matches_method_5(case, basis) {
        return Some(5);
    }
    None
}

fn entry_at<'a>(
    case: &CaseId,
    basis: &'a CoverageBasis,
    t: Triple,
    grow_lengths: &[Length],
) -> Option<&'a BasisEntry> {
    let _ = case;
    basis
        .entries
        .iter()
        .find(|e| e.exponents == t && grow_lengths.iter().all(|&x| e.profile.is_growable(x)))
}

fn matches_method_1(case: &CaseId, basis: &CoverageBasis) -> bool {
    let u = case.u();
    entry_at(case, basis, case.residues(), &u).is_some()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum PlaneRule {
    /// The bottom plane must be covered by a single entry at the residues.
    FullOnly,
    /// The bottom plane must be covered by a growable pair with capped gaps.
    PairOnly,
    /// Either option per plane.
    Any,
}

/// Shared matcher for methods 2-4: a `U`-growable head entry `k` periods up the
/// `role_z` axis, with each lower plane covered in full or by a pair.
fn matches_layered(
    case: &CaseId,
    basis: &CoverageBasis,
    role_z: usize,
    k: u32,
    rule: PlaneRule,
) -> bool {
    let u = case.u();
    let residues = case.residues();
    let mut head = residues;
    head[role_z] += k * u[role_z];

    let head_ok = entry_at(case, basis, head, &u).is_some() || {
        // Variant: the whole z-column through the residues is inadmissible and
        // two U-growable entries one period up the other two axes stand in.
        k == 1
            && rule == PlaneRule::PairOnly
            && first_admissible_on_line(case, residues, role_z).is_none()
            && {
                let (p, q) = other_axes(role_z);
                let mut h4 = head;
                h4[p] += u[p];
                let mut h5 = head;
                h5[q] += u[q];
                entry_at(case, basis, h4, &u).is_some() && entry_at(case, basis, h5, &u).is_some()
            }
    };
    if !head_ok {
        return false;
    }

    for layer in 0..k {
        let mut base = residues;
        base[role_z] += layer * u[role_z];
        let plane_rule = if layer == 0 { rule } else { PlaneRule::Any };
        if !plane_covered(case, basis, role_z, base, plane_rule) {
            return false;
        }
    }
    true
}

fn other_axes(role_z: usize) -> (usize, usize) {
    match role_z {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// One plane (fixed `role_z` coordinate): covered either by an entry at its
/// base growable in both remaining lengths, or by a pair of such entries up
/// each remaining axis whose finite gap is absorbed by the cap.
fn plane_covered(
    case: &CaseId,
    basis: &CoverageBasis,
    role_z: usize,
    base: Triple,
    rule: PlaneRule,
) -> bool {
    let u = case.u();
    let (p, q) = other_axes(role_z);
    let pair_lengths = [u[p], u[q]];

    let full = entry_at(case, basis, base, &pair_lengths).is_some();
    if full && rule != PlaneRule::PairOnly {
        return true;
    }
    if rule == PlaneRule::FullOnly {
        return false;
    }

    // Smallest multiples up each in-plane axis with a pair-growable entry.
    let along = |axis: usize| -> Option<u32> {
        basis
            .entries
            .iter()
            .filter(|e| {
                pair_lengths.iter().all(|&x| e.profile.is_growable(x))
                    && e.exponents[role_z] == base[role_z]
                    && e.exponents[other_of(axis, role_z)] == base[other_of(axis, role_z)]
                    && e.exponents[axis] > base[axis]
            })
            .map(|e| (e.exponents[axis] - base[axis]) / u[axis])
            .min()
    };
    let (Some(i), Some(j)) = (along(p), along(q)) else {
        return false;
    };
    // Gap triples below both pair entries must be inadmissible or capped.
    for di in 0..i {
        for dj in 0..j {
            let mut t = base;
            t[p] += di * u[p];
            t[q] += dj * u[q];
            if case.admissible(t) && !basis.cap.assumes(case.order_of(t)) {
                return false;
            }
        }
    }
    true
}

/// The in-plane axis that is neither `axis` nor `role_z`.
fn other_of(axis: usize, role_z: usize) -> usize {
    (0..3).find(|&i| i != axis && i != role_z).unwrap()
}

/// Largest multiple of the `role_z` period found among `U`-growable entries
/// directly up the z-column.
fn max_layer(case: &CaseId, basis: &CoverageBasis, role_z: usize) -> u32 {
    let u = case.u();
    let residues = case.residues();
    basis
        .entries
        .iter()
        .filter(|e| {
            u.iter().all(|&x| e.profile.is_growable(x))
                && (0..3).all(|i| i == role_z || e.exponents[i] == residues[i])
        })
        .map(|e| (e.exponents[role_z] - residues[role_z]) / u[role_z])
        .max()
        .unwrap_or(0)
}

/// Method 5: a fully growable entry one period up every axis, per-axis line
/// entries (unless the line is entirely inadmissible) with capped gaps, and a
/// pair-growable entry one period up each pair of axes.
fn matches_method_5(case: &CaseId, basis: &CoverageBasis) -> bool {
    let u = case.u();
    let residues = case.residues();

    let mut center = residues;
    for i in 0..3 {
        center[i] += u[i];
    }
    if entry_at(case, basis, center, &u).is_none() {
        return false;
    }

    for axis in 0..3 {
        if first_admissible_on_line(case, residues, axis).is_none() {
            continue; // the whole line is inadmissible
        }
        let found = basis
            .entries
            .iter()
            .filter(|e| {
                e.profile.is_growable(u[axis])
                    && (0..3).all(|i| i == axis || e.exponents[i] == residues[i])
            })
            .map(|e| (e.exponents[axis] - residues[axis]) / u[axis])
            .min();
        let Some(i) = found else {
            return false;
        };
        for s in 0..i {
            let mut t = residues;
            t[axis] += s * u[axis];
            if case.admissible(t) && !basis.cap.assumes(case.order_of(t)) {
                return false;
            }
        }
    }

    for s in 0..3 {
        for t_axis in s + 1..3 {
            let mut corner = residues;
            corner[s] += u[s];
            corner[t_axis] += u[t_axis];
            if entry_at(case, basis, corner, &[u[s], u[t_axis]]).is_none() {
                return false;
            }
        }
    }
    true
}
