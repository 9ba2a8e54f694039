//! Backtracking search for realizations, the exhaustive small-order oracle,
//! and the case-closing algorithm.
//!
//! The engine extends partial paths at the right end only. Candidate
//! successors are ordered scarcest-remaining-length first, then by ascending
//! label, so rare lengths fail fast. A node is pruned when the unused vertices
//! cannot all be reached from the current end through lengths that still have
//! budget. Symmetry is broken by forcing the first label into the lower half
//! (`h_1 <= v-1-h_1`); complete paths are kept when they are the
//! lexicographic minimum of their reversal/complement orbit, which yields one
//! representative per orbit without a dedup pass.
//!
//! Growability requirements are enforced by a feasibility pre-filter and by
//! post-filtering complete paths. Growability is invariant under reversal but
//! not under complement, so the post-filter inspects both the found path and
//! its complement before rejecting an orbit.
//!
//! Budgets are counted in node expansions (partial-path extensions), never in
//! wall time, and the search itself is single-threaded: outputs are
//! bit-identical across runs and across worker counts.

use std::collections::BTreeSet;

use crate::core::{
    check_admissibility, Length, LengthMultiset, Realization, Vertex,
};
use crate::coverage::{
    check_closure, first_admissible_on_line, BaseCap, BasisEntry, CaseId, ClosureReport,
    CoverageBasis, Triple,
};
use crate::growth::{
    growability_feasible, growability_profile, GrowabilityProfile, GrowthFeasibility,
};
use crate::{Error, Result};

/// Largest order the bitset-based engine accepts.
pub const MAX_SEARCH_ORDER: u32 = 64;
/// Largest order the exhaustive oracle accepts.
pub const ORACLE_CAP: u32 = 12;
/// How many periods a per-axis scan of the case algorithm may climb before the
/// run is declared out of budget.
const STEP_SCAN_CAP: u32 = 16;

/// What to search for: a multiset, required grow lengths, and a node budget.
#[derive(Clone, Debug)]
pub struct SearchRequest {
    pub multiset: LengthMultiset,
    pub required_growability: BTreeSet<Length>,
    pub budget: u64,
    pub want_all: bool,
}

impl SearchRequest {
    pub fn new(
        multiset: LengthMultiset,
        required_growability: impl IntoIterator<Item = Length>,
        budget: u64,
        want_all: bool,
    ) -> Result<Self> {
        let required: BTreeSet<Length> = required_growability.into_iter().collect();
        let u = multiset.underlying_set();
        if let Some(&bad) = required.iter().find(|x| !u.contains(x)) {
            return Err(Error::InvalidArgument(format!(
                "required grow length {bad} is outside the underlying set {u:?}"
            )));
        }
        if budget == 0 {
            return Err(Error::InvalidArgument("budget must be positive".into()));
        }
        Ok(SearchRequest { multiset, required_growability: required, budget, want_all })
    }

    /// Existence search with an effectively unlimited budget.
    pub fn existence(multiset: LengthMultiset) -> Self {
        SearchRequest {
            multiset,
            required_growability: BTreeSet::new(),
            budget: u64::MAX,
            want_all: false,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SearchStatus {
    Found,
    /// The space was fully enumerated and nothing qualified.
    ExhaustedNone,
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub realizations: Vec<(Realization, GrowabilityProfile)>,
    pub nodes_expanded: u64,
}

/// Depth-first search for realizations of `req.multiset`, post-filtered by the
/// required growability set. Inadmissible multisets and requests excluded by
/// the feasibility filter short-circuit to `ExhaustedNone` without search.
pub fn find_realization(req: &SearchRequest) -> Result<SearchOutcome> {
    let l = &req.multiset;
    let v = l.order().get();
    if v > MAX_SEARCH_ORDER {
        return Err(Error::Unsupported(format!(
            "search supports v <= {MAX_SEARCH_ORDER}, got {v}"
        )));
    }
    if !check_admissibility(l).admissible {
        return Ok(SearchOutcome {
            status: SearchStatus::ExhaustedNone,
            realizations: Vec::new(),
            nodes_expanded: 0,
        });
    }
    if !req.required_growability.is_empty() && l.underlying_set().len() == 3 {
        if let GrowthFeasibility::Impossible { .. } =
            growability_feasible(l, &req.required_growability)?
        {
            return Ok(SearchOutcome {
                status: SearchStatus::ExhaustedNone,
                realizations: Vec::new(),
                nodes_expanded: 0,
            });
        }
    }

    let mut dfs = Dfs::new(l, req);
    for start in 0..=(v - 1) / 2 {
        if dfs.done() {
            break;
        }
        dfs.run_from(start);
    }
    let status = if dfs.exceeded && !(dfs.found_one() && !req.want_all) {
        SearchStatus::BudgetExceeded
    } else if dfs.results.is_empty() {
        SearchStatus::ExhaustedNone
    } else {
        SearchStatus::Found
    };
    let mut results = dfs.results;
    results.sort_by(|a, b| a.0.path().cmp(b.0.path()));
    Ok(SearchOutcome { status, realizations: results, nodes_expanded: dfs.nodes })
}

struct Dfs {
    v: u32,
    mask_all: u64,
    path: Vec<Vertex>,
    used: u64,
    remaining: Vec<u32>,
    lengths: Vec<Length>,
    budget: u64,
    nodes: u64,
    exceeded: bool,
    want_all: bool,
    required: Vec<Length>,
    results: Vec<(Realization, GrowabilityProfile)>,
    stop: bool,
}

impl Dfs {
    fn new(l: &LengthMultiset, req: &SearchRequest) -> Self {
        let v = l.order().get();
        let mut remaining = vec![0u32; (v / 2 + 1) as usize];
        for (&len, &mult) in l.counts() {
            remaining[len as usize] = mult;
        }
        Dfs {
            v,
            mask_all: if v == 64 { u64::MAX } else { (1u64 << v) - 1 },
            path: Vec::with_capacity(v as usize),
            used: 0,
            remaining,
            lengths: l.underlying_set(),
            budget: req.budget,
            nodes: 0,
            exceeded: false,
            want_all: req.want_all,
            required: req.required_growability.iter().copied().collect(),
            results: Vec::new(),
            stop: false,
        }
    }

    fn done(&self) -> bool {
        self.stop || self.exceeded
    }

    fn found_one(&self) -> bool {
        !self.results.is_empty()
    }

    fn run_from(&mut self, start: Vertex) {
        self.path.push(start);
        self.used = 1u64 << start;
        self.extend(start);
        self.path.pop();
        self.used = 0;
    }

    fn rot(&self, s: u64, k: u32) -> u64 {
        if k == 0 {
            return s;
        }
        ((s << k) | (s >> (self.v - k))) & self.mask_all
    }

    /// All unused vertices must be reachable from `end` through lengths with
    /// remaining budget. Counts are ignored, so this never over-prunes.
    fn connectable(&self, end: Vertex) -> bool {
        let unused = self.mask_all & !self.used;
        if unused == 0 {
            return true;
        }
        let confine = unused | (1u64 << end);
        let mut reach = 1u64 << end;
        loop {
            let mut next = reach;
            for &len in &self.lengths {
                if self.remaining[len as usize] > 0 {
                    next |= self.rot(reach, len) | self.rot(reach, self.v - len);
                }
            }
            next &= confine;
            if next == reach {
                break;
            }
            reach = next;
        }
        unused & !reach == 0
    }

    fn extend(&mut self, end: Vertex) {
        if self.done() {
            return;
        }
        if self.path.len() == self.v as usize {
            self.complete();
            return;
        }
        if !self.connectable(end) {
            return;
        }
        // Candidates: both neighbours at every length that still has budget,
        // scarcest length first, then ascending label.
        let mut cands: Vec<(u32, Vertex, Length)> = Vec::with_capacity(2 * self.lengths.len());
        for &len in &self.lengths {
            let rem = self.remaining[len as usize];
            if rem == 0 {
                continue;
            }
            let a = (end + len) % self.v;
            let b = (end + self.v - len) % self.v;
            cands.push((rem, a, len));
            if b != a {
                cands.push((rem, b, len));
            }
        }
        cands.sort_unstable_by_key(|&(rem, label, _)| (rem, label));
        for (_, next, len) in cands {
            if self.used & (1u64 << next) != 0 {
                continue;
            }
            if self.nodes >= self.budget {
                self.exceeded = true;
                return;
            }
            self.nodes += 1;
            self.used |= 1u64 << next;
            self.path.push(next);
            self.remaining[len as usize] -= 1;
            self.extend(next);
            self.remaining[len as usize] += 1;
            self.path.pop();
            self.used &= !(1u64 << next);
            if self.done() {
                return;
            }
        }
    }

    fn complete(&mut self) {
        let r = Realization::from_path(self.path.clone()).expect("search paths are permutations");
        if self.want_all {
            // One representative per orbit: keep only the canonical member.
            if &r.canonical() != &r {
                return;
            }
        }
        if let Some(keep) = self.passes_required(&r) {
            self.results.push(keep);
            if !self.want_all {
                self.stop = true;
            }
        }
    }

    /// Checks the growability requirement on the path and, since complement
    /// does not preserve growability, on its complement too.
    fn passes_required(&self, r: &Realization) -> Option<(Realization, GrowabilityProfile)> {
        let profile = growability_profile(r);
        if self.required.iter().all(|&x| profile.is_growable(x)) {
            return Some((r.clone(), profile));
        }
        if self.required.is_empty() {
            return Some((r.clone(), profile));
        }
        let c = r.complemented();
        let profile_c = growability_profile(&c);
        if self.required.iter().all(|&x| profile_c.is_growable(x)) {
            return Some((c, profile_c));
        }
        None
    }
}

/// Complete enumeration of the realizations of `l`, one canonical
/// representative per reversal/complement orbit, ascending.
///
/// This is the independent oracle: plain recursive enumeration with the count
/// bound as its only pruning, kept separate from the engine above so the two
/// can referee each other.
pub fn exhaustive_oracle(l: &LengthMultiset) -> Result<Vec<Realization>> {
    let v = l.order().get();
    if v > ORACLE_CAP {
        return Err(Error::Refused(format!(
            "exhaustive oracle is capped at v <= {ORACLE_CAP}, got {v}"
        )));
    }
    let mut remaining = vec![0u32; (v / 2 + 1) as usize];
    for (&len, &mult) in l.counts() {
        remaining[len as usize] = mult;
    }
    let mut path: Vec<Vertex> = Vec::with_capacity(v as usize);
    let mut used = vec![false; v as usize];
    let mut out: BTreeSet<Realization> = BTreeSet::new();
    for start in 0..v {
        path.push(start);
        used[start as usize] = true;
        oracle_extend(v, &mut path, &mut used, &mut remaining, &mut out);
        used[start as usize] = false;
        path.pop();
    }
    Ok(out.into_iter().collect())
}

fn oracle_extend(
    v: u32,
    path: &mut Vec<Vertex>,
    used: &mut [bool],
    remaining: &mut [u32],
    out: &mut BTreeSet<Realization>,
) {
    if path.len() == v as usize {
        let r = Realization::from_path(path.clone()).unwrap();
        out.insert(r.canonical());
        return;
    }
    let end = *path.last().unwrap();
    for next in 0..v {
        if used[next as usize] {
            continue;
        }
        let len = end.abs_diff(next).min(v - end.abs_diff(next)) as usize;
        if remaining[len] == 0 {
            continue;
        }
        remaining[len] -= 1;
        used[next as usize] = true;
        path.push(next);
        oracle_extend(v, path, used, remaining, out);
        path.pop();
        used[next as usize] = false;
        remaining[len] += 1;
    }
}

/// Serialized frontier of an interrupted case run.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Checkpoint {
    pub u: [Length; 3],
    pub residues: [u32; 3],
    /// Next `z`-layer the algorithm was about to process.
    pub next_layer: u32,
    /// Entries collected so far, as (exponents, path) pairs.
    pub entries: Vec<(Triple, Realization)>,
}

#[derive(Clone, Debug)]
pub enum CaseStatus {
    Closed,
    /// The node budget ran out; the checkpoint resumes the run.
    BudgetExceeded(Checkpoint),
}

/// Result of the case-closing algorithm for one congruence case.
#[derive(Clone, Debug)]
pub struct CaseResult {
    pub case: CaseId,
    pub status: CaseStatus,
    /// Every realization the closure claim relies on.
    pub entries: Vec<BasisEntry>,
    /// Present when the case closed: the independent re-certification.
    pub closure: Option<ClosureReport>,
    pub nodes_expanded: u64,
}

/// Runs the layered case algorithm: look for a fully growable realization at
/// the bottom of the `z`-column; until one exists, cover each `z`-layer with an
/// `{x,y}`-growable corner plus per-row and per-column entries and explicit
/// fillers for the finite admissible gaps. The emitted entry list is handed to
/// the coverage checker, so the closure claim never rests on the search alone.
pub fn run_case_algorithm(
    u: [Length; 3],
    case: CaseId,
    budget: u64,
    resume: Option<&Checkpoint>,
) -> Result<CaseResult> {
    if case.u() != u {
        return Err(Error::InvalidArgument(format!(
            "case {case} does not match the ordered set {u:?}"
        )));
    }
    let residues = case.residues();
    let mut run = CaseRun { u, case, budget, nodes: 0, entries: Vec::new() };
    let mut start_layer = 0u32;
    if let Some(ck) = resume {
        if ck.u != u || ck.residues != residues {
            return Err(Error::InvalidArgument(
                "checkpoint does not belong to this case".into(),
            ));
        }
        for (t, r) in &ck.entries {
            run.entries.push(BasisEntry::new(u, *t, r.clone())?);
        }
        start_layer = ck.next_layer;
    }

    let column_alive = first_admissible_on_line(&case, residues, 2).is_some();
    let mut layer = start_layer;
    loop {
        let mut head = residues;
        head[2] += layer * u[2];

        if column_alive {
            if case.admissible(head) {
                match run.search_entry(head, &u)? {
                    StepOutcome::Found => {
                        let closure = run.certify();
                        return Ok(run.finish_closed(closure));
                    }
                    StepOutcome::NotFound => {}
                    StepOutcome::OutOfBudget => return Ok(run.finish_exceeded(layer)),
                }
            }
        } else if layer > 0 {
            // The z-column is entirely inadmissible: two fully growable
            // entries one period up the other axes close the tail instead.
            let mut h4 = head;
            h4[0] += u[0];
            let mut h5 = head;
            h5[1] += u[1];
            let a = run.search_entry(h4, &u)?;
            let b = run.search_entry(h5, &u)?;
            match (a, b) {
                (StepOutcome::Found, StepOutcome::Found) => {
                    let closure = run.certify();
                    return Ok(run.finish_closed(closure));
                }
                (StepOutcome::OutOfBudget, _) | (_, StepOutcome::OutOfBudget) => {
                    return Ok(run.finish_exceeded(layer))
                }
                _ => {}
            }
        }

        match run.cover_layer(head)? {
            StepOutcome::Found => {}
            StepOutcome::NotFound | StepOutcome::OutOfBudget => {
                return Ok(run.finish_exceeded(layer))
            }
        }
        layer += 1;
        if layer > STEP_SCAN_CAP {
            return Ok(run.finish_exceeded(layer));
        }
    }
}

enum StepOutcome {
    Found,
    NotFound,
    OutOfBudget,
}

struct CaseRun {
    u: [Length; 3],
    case: CaseId,
    budget: u64,
    nodes: u64,
    entries: Vec<BasisEntry>,
}

impl CaseRun {
    fn remaining_budget(&self) -> u64 {
        self.budget.saturating_sub(self.nodes)
    }

    /// Searches for a realization of `{u^t}` growable in every length of
    /// `need`, recording it as a basis entry when found.
    fn search_entry(&mut self, t: Triple, need: &[Length]) -> Result<StepOutcome> {
        if self.remaining_budget() == 0 {
            return Ok(StepOutcome::OutOfBudget);
        }
        if self
            .entries
            .iter()
            .any(|e| e.exponents == t && need.iter().all(|&x| e.profile.is_growable(x)))
        {
            return Ok(StepOutcome::Found);
        }
        let l = LengthMultiset::from_exponents(&self.u, &t)?;
        let req = SearchRequest::new(l, need.iter().copied(), self.remaining_budget(), false)?;
        let outcome = match find_realization(&req) {
            Ok(outcome) => outcome,
            // Cells beyond the engine's order cap stop the run like an
            // exhausted budget; the checkpoint allows picking it back up.
            Err(Error::Unsupported(_)) => return Ok(StepOutcome::OutOfBudget),
            Err(e) => return Err(e),
        };
        self.nodes += outcome.nodes_expanded;
        match outcome.status {
            SearchStatus::Found => {
                let (r, profile) = outcome.realizations.into_iter().next().unwrap();
                self.entries.push(BasisEntry { exponents: t, realization: r, profile });
                Ok(StepOutcome::Found)
            }
            SearchStatus::ExhaustedNone => Ok(StepOutcome::NotFound),
            SearchStatus::BudgetExceeded => Ok(StepOutcome::OutOfBudget),
        }
    }

    /// Covers one `z`-layer: an `{x,y}`-growable corner entry, a `y`-growable
    /// entry per low row and an `x`-growable entry per low column, with plain
    /// realizations filling every admissible gap in between.
    fn cover_layer(&mut self, base: Triple) -> Result<StepOutcome> {
        let (x, y) = (self.u[0], self.u[1]);
        // Step 1: an {x,y}-growable corner, smallest order first.
        let mut corner: Option<(u32, u32)> = None;
        'outer: for total in 0..=2 * STEP_SCAN_CAP {
            for i in 0..=total {
                let j = total - i;
                let mut t = base;
                t[0] += i * x;
                t[1] += j * y;
                if !self.case.admissible(t) {
                    continue;
                }
                match self.search_entry(t, &[x, y])? {
                    StepOutcome::Found => {
                        corner = Some((i, j));
                        break 'outer;
                    }
                    StepOutcome::NotFound => {}
                    StepOutcome::OutOfBudget => return Ok(StepOutcome::OutOfBudget),
                }
            }
        }
        let Some((cap_i, cap_j)) = corner else {
            return Ok(StepOutcome::NotFound);
        };

        // Step 2: rows below the corner, each closed by a y-growable entry.
        for i in 0..cap_i {
            let mut row = base;
            row[0] += i * x;
            if first_admissible_on_line(&self.case, row, 1).is_none() {
                continue;
            }
            match self.close_ray(row, 1, &[y], 0)? {
                StepOutcome::Found => {}
                other => return Ok(other),
            }
        }
        // Step 3: columns below the corner, fillers only from the corner row up.
        for j in 0..cap_j {
            let mut col = base;
            col[1] += j * y;
            if first_admissible_on_line(&self.case, col, 0).is_none() {
                continue;
            }
            match self.close_ray(col, 0, &[x], cap_i)? {
                StepOutcome::Found => {}
                other => return Ok(other),
            }
        }
        Ok(StepOutcome::Found)
    }

    /// Walks `base + s·period(axis)` until an entry growable in `need` exists,
    /// filling admissible gaps at `s >= fill_from` with plain realizations.
    fn close_ray(
        &mut self,
        base: Triple,
        axis: usize,
        need: &[Length],
        fill_from: u32,
    ) -> Result<StepOutcome> {
        for s in 0..=STEP_SCAN_CAP {
            let mut t = base;
            t[axis] += s * self.u[axis];
            if !self.case.admissible(t) {
                continue;
            }
            match self.search_entry(t, need)? {
                StepOutcome::Found => return Ok(StepOutcome::Found),
                StepOutcome::OutOfBudget => return Ok(StepOutcome::OutOfBudget),
                StepOutcome::NotFound => {
                    if s >= fill_from {
                        match self.search_entry(t, &[])? {
                            StepOutcome::Found => {}
                            other => return Ok(other),
                        }
                    }
                }
            }
        }
        Ok(StepOutcome::NotFound)
    }

    fn certify(&self) -> ClosureReport {
        let basis = CoverageBasis::new(self.entries.clone(), BaseCap::Standard);
        check_closure(&self.case, &basis)
    }

    fn finish_closed(self, closure: ClosureReport) -> CaseResult {
        CaseResult {
            case: self.case,
            status: CaseStatus::Closed,
            entries: self.entries,
            closure: Some(closure),
            nodes_expanded: self.nodes,
        }
    }

    fn finish_exceeded(self, next_layer: u32) -> CaseResult {
        let checkpoint = Checkpoint {
            u: self.u,
            residues: self.case.residues(),
            next_layer,
            entries: self
                .entries
                .iter()
                .map(|e| (e.exponents, e.realization.clone()))
                .collect(),
        };
        CaseResult {
            case: self.case,
            status: CaseStatus::BudgetExceeded(checkpoint),
            entries: self.entries,
            closure: None,
            nodes_expanded: self.nodes,
        }
    }
}

/// One `(a, b, c)` cell of the `{1, 2, x}` procedure.
#[derive(Clone, Debug)]
pub struct ProveCell {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub status: CellStatus,
}

#[derive(Clone, Debug)]
pub enum CellStatus {
    /// An `x`-growable realization was found.
    Realized(Realization),
    /// Every member of the residue class `c + i·x` is inadmissible.
    ClassInadmissible,
    /// The cell's space was exhausted with no `x`-growable realization.
    NoGrowableRealization,
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct ProveReport {
    pub x: Length,
    pub cells: Vec<ProveCell>,
    pub realized: usize,
    pub skipped: usize,
    pub unrealizable: usize,
    pub out_of_budget: usize,
}

impl ProveReport {
    pub fn succeeded(&self) -> bool {
        self.unrealizable == 0 && self.out_of_budget == 0
    }
}

/// Finite check for `U = {1, 2, x}` with even `x`: for every `(a, b)` with
/// `a, b >= 1` and `a + b < x - 1` (optionally capped by `max_ab`), find the
/// least admissible `c` and settle one full period of residue classes
/// `c..c+x` with `x`-growable realizations.
///
/// Growing covers each whole class upward, and along a class every divisor
/// margin is constant (each relevant divisor divides `x`), so a class is
/// either settled by its window representative or inadmissible throughout.
/// Together with the external `a + b >= x - 1` result this closes `U`.
pub fn prove_12x(x: Length, budget: u64, max_ab: Option<u32>) -> Result<ProveReport> {
    if x < 4 || x % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "the {{1,2,x}} procedure requires even x >= 4, got {x}"
        )));
    }
    let ab_cap = max_ab.unwrap_or(x - 2).min(x - 2);
    let u = [1u32, 2, x];
    let mut pairs = Vec::new();
    for a in 1..=ab_cap.saturating_sub(1) {
        for b in 1..=(ab_cap - a) {
            pairs.push((a, b));
        }
    }

    use rayon::prelude::*;
    let cell_groups: Vec<Vec<ProveCell>> = pairs
        .par_iter()
        .map(|&(a, b)| prove_cell_group(u, a, b, budget))
        .collect();

    let mut cells = Vec::new();
    for group in cell_groups {
        cells.extend(group);
    }
    let realized = cells.iter().filter(|c| matches!(c.status, CellStatus::Realized(_))).count();
    let skipped =
        cells.iter().filter(|c| matches!(c.status, CellStatus::ClassInadmissible)).count();
    let unrealizable =
        cells.iter().filter(|c| matches!(c.status, CellStatus::NoGrowableRealization)).count();
    let out_of_budget =
        cells.iter().filter(|c| matches!(c.status, CellStatus::BudgetExceeded)).count();
    Ok(ProveReport { x, cells, realized, skipped, unrealizable, out_of_budget })
}

fn prove_cell_group(u: [Length; 3], a: u32, b: u32, budget: u64) -> Vec<ProveCell> {
    let x = u[2];
    // Least admissible c over all residue classes; every relevant divisor
    // divides x, so one full period past v >= 2x decides existence.
    let k = (1..=4 * x).find(|&c| crate::core::admissible_exponents(&u, &[a, b, c]));
    let Some(k) = k else {
        return vec![ProveCell { a, b, c: 0, status: CellStatus::ClassInadmissible }];
    };
    let mut out = Vec::new();
    for c in k..k + x {
        if !crate::core::admissible_exponents(&u, &[a, b, c]) {
            // Margins are constant along the class, so the whole class is out.
            out.push(ProveCell { a, b, c, status: CellStatus::ClassInadmissible });
            continue;
        }
        let status = match LengthMultiset::from_exponents(&u, &[a, b, c])
            .and_then(|l| SearchRequest::new(l, [x], budget, false))
            .and_then(|req| find_realization(&req))
        {
            Ok(outcome) => match outcome.status {
                SearchStatus::Found => {
                    CellStatus::Realized(outcome.realizations.into_iter().next().unwrap().0)
                }
                SearchStatus::ExhaustedNone => CellStatus::NoGrowableRealization,
                SearchStatus::BudgetExceeded => CellStatus::BudgetExceeded,
            },
            Err(_) => CellStatus::BudgetExceeded,
        };
        out.push(ProveCell { a, b, c, status });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn multiset(u: &[Length], exps: &[u32]) -> LengthMultiset {
        LengthMultiset::from_exponents(u, exps).unwrap()
    }

    #[test]
    fn finds_published_growable_realization() {
        let l = multiset(&[2, 4, 5], &[1, 8, 3]);
        let req = SearchRequest::new(l.clone(), [4, 5], u64::MAX, false).unwrap();
        let out = find_realization(&req).unwrap();
        assert!(matches!(out.status, SearchStatus::Found));
        let (r, profile) = &out.realizations[0];
        assert!(crate::core::verify_realization(r, &l).unwrap());
        assert!(profile.is_set_growable(&[4, 5]));
    }

    #[test]
    fn inadmissible_short_circuits() {
        let l = multiset(&[5], &[9]);
        let req = SearchRequest::new(l, [], u64::MAX, false).unwrap();
        let out = find_realization(&req).unwrap();
        assert!(matches!(out.status, SearchStatus::ExhaustedNone));
        assert_eq!(out.nodes_expanded, 0);
    }

    #[test]
    fn finds_simple_realization() {
        let l = multiset(&[1, 2, 3], &[2, 2, 1]);
        let req = SearchRequest::new(l, [], u64::MAX, false).unwrap();
        let out = find_realization(&req).unwrap();
        assert!(matches!(out.status, SearchStatus::Found));
    }

    #[test]
    fn budget_exceeded_reported() {
        let l = multiset(&[1, 2, 3], &[4, 4, 3]);
        let req = SearchRequest::new(l, [], 5, true).unwrap();
        let out = find_realization(&req).unwrap();
        assert!(matches!(out.status, SearchStatus::BudgetExceeded));
        assert!(out.nodes_expanded <= 6);
    }

    #[test]
    fn oracle_all_ones_orbits() {
        // Length 1 also covers the wrap-around edge, so {1^4} in K_5 is
        // realized by every Hamiltonian path of the 5-cycle: three orbits,
        // one of which is the consecutive path.
        let l = multiset(&[1], &[4]);
        let orbits = exhaustive_oracle(&l).unwrap();
        assert_eq!(orbits.len(), 3);
        assert!(orbits.iter().any(|r| r.path() == [0, 1, 2, 3, 4]));
    }

    #[test]
    fn oracle_inadmissible_is_empty() {
        let l = multiset(&[2], &[5]);
        assert!(exhaustive_oracle(&l).unwrap().is_empty());
    }

    #[test]
    fn oracle_cap_enforced() {
        let l = multiset(&[1], &[12]);
        assert!(exhaustive_oracle(&l).is_err());
    }

    #[test]
    fn oracle_count_frozen_for_small_multiset() {
        // Frozen from this complete enumeration (and cross-checked against the
        // engine below): {1, 2^3} in K_5 has exactly 5 realization orbits.
        let l = multiset(&[1, 2], &[1, 3]);
        let orbits = exhaustive_oracle(&l).unwrap();
        for r in &orbits {
            assert!(crate::core::verify_realization(r, &l).unwrap());
            assert_eq!(&r.canonical(), r);
        }
        assert_eq!(orbits.len(), 5);
        let req = SearchRequest::new(l, [], u64::MAX, true).unwrap();
        assert_eq!(find_realization(&req).unwrap().realizations.len(), 5);
    }

    #[test]
    fn engine_matches_oracle_orbits() {
        for (u, exps) in [
            (vec![1u32, 2, 3], vec![2u32, 2, 1]),
            (vec![1, 2, 3], vec![1, 3, 3]),
            (vec![1, 2], vec![3, 4]),
            (vec![1, 3, 4], vec![2, 3, 3]),
            (vec![2, 3], vec![5, 3]),
        ] {
            let l = multiset(&u, &exps);
            let req = SearchRequest::new(l.clone(), [], u64::MAX, true).unwrap();
            let engine: Vec<Realization> = find_realization(&req)
                .unwrap()
                .realizations
                .into_iter()
                .map(|(r, _)| r)
                .collect();
            let oracle = exhaustive_oracle(&l).unwrap();
            assert_eq!(engine, oracle, "mismatch for {l}");
        }
    }

    #[test]
    fn search_is_deterministic() {
        let l = multiset(&[1, 2, 3], &[3, 4, 2]);
        let req = SearchRequest::new(l, [1, 2], u64::MAX, true).unwrap();
        let a = find_realization(&req).unwrap();
        let b = find_realization(&req).unwrap();
        let paths = |o: &SearchOutcome| {
            o.realizations.iter().map(|(r, _)| r.path().to_vec()).collect::<Vec<_>>()
        };
        assert_eq!(paths(&a), paths(&b));
        assert_eq!(a.nodes_expanded, b.nodes_expanded);
    }

    #[test]
    fn case_algorithm_closes_method_1_case() {
        let u = [2u32, 4, 5];
        let case = CaseId::new(u, [2, 4, 5]).unwrap();
        let result = run_case_algorithm(u, case, 50_000_000, None).unwrap();
        assert!(matches!(result.status, CaseStatus::Closed));
        let closure = result.closure.unwrap();
        assert!(closure.covered);
        assert_eq!(closure.method_label, Some(1));
        assert_eq!(result.entries.len(), 1);
        assert_eq!(result.entries[0].exponents, [2, 4, 5]);
    }

    #[test]
    fn case_algorithm_closes_123_case() {
        let u = [1u32, 2, 3];
        let case = CaseId::new(u, [1, 1, 1]).unwrap();
        let result = run_case_algorithm(u, case, 50_000_000, None).unwrap();
        assert!(matches!(result.status, CaseStatus::Closed), "status: {:?}", result.status);
        assert!(result.closure.unwrap().covered);
    }

    #[test]
    fn case_algorithm_budget_and_resume() {
        let u = [2u32, 4, 5];
        let case = CaseId::new(u, [2, 4, 5]).unwrap();
        let result = run_case_algorithm(u, case, 200, None).unwrap();
        let CaseStatus::BudgetExceeded(ck) = &result.status else {
            panic!("tiny budget should not close the case");
        };
        let resumed = run_case_algorithm(u, case, 50_000_000, Some(ck)).unwrap();
        assert!(matches!(resumed.status, CaseStatus::Closed));
        assert!(resumed.closure.unwrap().covered);
    }

    #[test]
    fn prove_12x_smallest_even_case() {
        let report = prove_12x(4, 10_000_000, None).unwrap();
        assert!(report.succeeded());
        assert!(report.realized > 0);
        for cell in &report.cells {
            if let CellStatus::Realized(r) = &cell.status {
                let l = multiset(&[1, 2, 4], &[cell.a, cell.b, cell.c]);
                assert!(crate::core::verify_realization(r, &l).unwrap());
                assert!(growability_profile(r).is_growable(4));
            }
        }
    }
}
