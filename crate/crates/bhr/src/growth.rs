//! Growable realizations: the growth embedding, witness detection, and the
//! grow construction.
//!
//! For `x <= v/2` and an anchor `m` in `0..v`, the *growth embedding* of `K_v`
//! into `K_{v+x}` maps `y ↦ y` for `y <= m` and `y ↦ y+x` otherwise. On the
//! label circle this opens a gap of `x` fresh labels between `m` and `m+1`; an
//! edge `{p, q}` with `p < q` gets longer exactly when `p <= m < q` and
//! `2(q-p) < v` (its short arc crosses the gap).
//!
//! A realization is *`x`-growable at `m`* when each of the `x` labels in
//! `(m-x, m]` meets exactly one lengthened edge and no other edge is lengthened.
//! Growing then inserts `y+x` between each such `y` and its lengthened
//! neighbour, producing a Hamiltonian path in `K_{v+x}` that realizes
//! `L ∪ {x^x}` and keeps every growability the original had.

use std::collections::BTreeSet;

use crate::core::{induced_multiset, Length, LengthMultiset, Order, Realization, Vertex};
use crate::{Error, Result};

/// A pair `(x, m)` certifying `x`-growability at anchor `m`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GrowabilityWitness {
    pub x: Length,
    pub m: Vertex,
}

/// All witnesses of a realization, with `x` restricted to its underlying set.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GrowabilityProfile {
    witnesses: BTreeSet<(Length, Vertex)>,
}

impl GrowabilityProfile {
    pub fn witnesses(&self) -> impl Iterator<Item = GrowabilityWitness> + '_ {
        self.witnesses.iter().map(|&(x, m)| GrowabilityWitness { x, m })
    }

    /// The set `X` of lengths having at least one witness.
    pub fn grow_set(&self) -> BTreeSet<Length> {
        self.witnesses.iter().map(|&(x, _)| x).collect()
    }

    pub fn contains(&self, x: Length, m: Vertex) -> bool {
        self.witnesses.contains(&(x, m))
    }

    pub fn is_growable(&self, x: Length) -> bool {
        self.anchors(x).next().is_some()
    }

    /// True when every length of `xs` has a witness.
    pub fn is_set_growable<'a>(&self, xs: impl IntoIterator<Item = &'a Length>) -> bool {
        xs.into_iter().all(|&x| self.is_growable(x))
    }

    pub fn anchors(&self, x: Length) -> impl Iterator<Item = Vertex> + '_ {
        self.witnesses
            .range((x, 0)..=(x, Vertex::MAX))
            .map(|&(_, m)| m)
    }

    pub fn smallest_anchor(&self, x: Length) -> Option<Vertex> {
        self.anchors(x).next()
    }

    /// The sub-profile containing only witnesses for the given lengths.
    pub fn restricted_to<'a>(&self, lengths: impl IntoIterator<Item = &'a Length>) -> Self {
        let keep: BTreeSet<Length> = lengths.into_iter().copied().collect();
        GrowabilityProfile {
            witnesses: self.witnesses.iter().filter(|(x, _)| keep.contains(x)).copied().collect(),
        }
    }
}

/// Indices of the path edges whose length increases under the `(x, m)` growth
/// embedding, measured in `K_{v+x}`.
pub fn lengthened_edges(r: &Realization, x: Length, m: Vertex) -> Result<Vec<usize>> {
    let v = r.order().get();
    if 2 * x > v {
        return Err(Error::InvalidArgument(format!(
            "grow length {x} exceeds v/2 for v={v}"
        )));
    }
    if m >= v {
        return Err(Error::InvalidArgument(format!("anchor {m} out of range 0..{v}")));
    }
    Ok(r.edges()
        .enumerate()
        .filter(|&(_, (p, q))| edge_lengthened(v, p, q, m))
        .map(|(i, _)| i)
        .collect())
}

/// Whether the edge `{p, q}` gets strictly longer under the `(x, m)` growth
/// embedding, for any `x >= 1`.
///
/// The embedding opens a gap of `x` fresh labels on the circle between `m`
/// and `m+1`; an edge lengthens exactly when its strictly shorter arc passes
/// through the gap. The direct arc `lo..hi` contains the gap when
/// `lo <= m < hi`; otherwise the wrap arc (through `v-1 -> 0`) does.
fn edge_lengthened(v: u32, p: Vertex, q: Vertex, m: Vertex) -> bool {
    let (lo, hi) = if p < q { (p, q) } else { (q, p) };
    let d = hi - lo;
    if lo <= m && m < hi {
        2 * d < v
    } else {
        2 * d > v
    }
}

/// The endpoint of a lengthened edge that can sit in the growth window
/// `(m-x, m]`: the lower endpoint when the direct arc crosses the gap, the
/// upper one when the wrap arc does (then both endpoints are at most `m` and
/// only the upper can reach the window).
fn serving_endpoint(p: Vertex, q: Vertex, m: Vertex) -> Vertex {
    let (lo, hi) = if p < q { (p, q) } else { (q, p) };
    if lo <= m && m < hi {
        lo
    } else {
        hi
    }
}

/// Checks the growability definition directly: every label in `(m-x, m]` meets
/// exactly one lengthened edge, and exactly `x` edges are lengthened in total.
pub fn is_growable_at(r: &Realization, x: Length, m: Vertex) -> bool {
    let v = r.order().get();
    if x == 0 || 2 * x > v || m >= v {
        return false;
    }
    if m + 1 < x {
        // Fewer than x labels below the cut: the window sticks out of range.
        return false;
    }
    let window_lo = m + 1 - x; // window is {window_lo, ..., m}
    let mut touched = vec![0u32; x as usize];
    let mut total = 0u32;
    for (p, q) in r.edges() {
        if edge_lengthened(v, p, q, m) {
            total += 1;
            if total > x {
                return false;
            }
            let y = serving_endpoint(p, q, m);
            if y >= window_lo && y <= m {
                touched[(y - window_lo) as usize] += 1;
            } else {
                return false; // a lengthened edge not matched to any window label
            }
        }
    }
    total == x && touched.iter().all(|&t| t == 1)
}

/// Every witness `(x, m)` with `x` in the underlying set of the induced
/// multiset and `m` in `0..v`.
pub fn growability_profile(r: &Realization) -> GrowabilityProfile {
    let v = r.order().get();
    let mut witnesses = BTreeSet::new();
    for x in induced_multiset(r).underlying_set() {
        for m in 0..v {
            if is_growable_at(r, x, m) {
                witnesses.insert((x, m));
            }
        }
    }
    GrowabilityProfile { witnesses }
}

/// Applies the growth construction at a verified witness.
///
/// The embedding shifts labels above `m` by `x`, then `y+x` is inserted between
/// each window label `y` and its unique lengthened neighbour. The result is a
/// Hamiltonian path on `v+x` vertices realizing `L ∪ {x^x}`.
pub fn grow(r: &Realization, w: &GrowabilityWitness) -> Result<Realization> {
    let v = r.order().get();
    let (x, m) = (w.x, w.m);
    if !is_growable_at(r, x, m) {
        return Err(diagnose_witness_failure(r, x, m));
    }
    let shift = |h: Vertex| if h > m { h + x } else { h };
    let mut out: Vec<Vertex> = Vec::with_capacity((v + x) as usize);
    let path = r.path();
    for i in 0..path.len() {
        let cur = path[i];
        if i > 0 {
            let prev = path[i - 1];
            if edge_lengthened(v, prev, cur, m) {
                // The window label y keeps its old edge through y+x, which
                // restores the stretched length and adds one length-x edge.
                let y = serving_endpoint(prev, cur, m);
                out.push(y + x);
            }
        }
        out.push(shift(cur));
    }
    Realization::new(Order::new(v + x)?, out)
}

/// Human-readable reason a witness fails, or `None` when it is valid.
pub fn explain_witness(r: &Realization, x: Length, m: Vertex) -> Option<String> {
    if is_growable_at(r, x, m) {
        None
    } else {
        Some(diagnose_witness_failure(r, x, m).to_string())
    }
}

fn diagnose_witness_failure(r: &Realization, x: Length, m: Vertex) -> Error {
    let v = r.order().get();
    if x == 0 || 2 * x > v || m >= v || m + 1 < x {
        return Error::Precondition(format!(
            "witness (x={x}, m={m}) out of range for v={v}"
        ));
    }
    let window_lo = m + 1 - x;
    let mut touched = vec![0u32; x as usize];
    let mut strays = 0u32;
    for (p, q) in r.edges() {
        if edge_lengthened(v, p, q, m) {
            let y = serving_endpoint(p, q, m);
            if y >= window_lo && y <= m {
                touched[(y - window_lo) as usize] += 1;
            } else {
                strays += 1;
            }
        }
    }
    for (i, &t) in touched.iter().enumerate() {
        if t != 1 {
            return Error::Precondition(format!(
                "not {x}-growable at {m}: label {} meets {t} lengthened edges, expected 1",
                window_lo + i as u32
            ));
        }
    }
    Error::Precondition(format!(
        "not {x}-growable at {m}: {strays} lengthened edges outside the window"
    ))
}

/// Grows once per scheduled length, re-detecting witnesses before each step.
///
/// Anchors are tried in ascending order and a step commits to the smallest
/// anchor whose grown path is still growable in every length scheduled later.
/// The lookahead matters: growing at an arbitrary witness can lose another
/// grow length for good (a valid realization of the enlarged multiset that is
/// no longer growable the other way), so the blind smallest anchor may
/// dead-end where a later anchor keeps the whole schedule feasible.
pub fn grow_many(r: &Realization, schedule: &[Length]) -> Result<Realization> {
    let start_set = growability_profile(r).grow_set();
    let mut cur = r.clone();
    for (step, &x) in schedule.iter().enumerate() {
        let profile = growability_profile(&cur);
        let anchors: Vec<Vertex> = profile.anchors(x).collect();
        if anchors.is_empty() {
            return Err(if start_set.contains(&x) {
                Error::Internal(format!(
                    "growability for {x} lost at step {step}; intermediate path {cur}"
                ))
            } else {
                Error::Precondition(format!(
                    "schedule length {x} has no witness in the starting realization"
                ))
            });
        }
        let needed: BTreeSet<Length> = schedule[step + 1..].iter().copied().collect();
        let mut next = None;
        for m in anchors {
            let grown = grow(&cur, &GrowabilityWitness { x, m })?;
            if needed.is_empty()
                || growability_profile(&grown).is_set_growable(needed.iter())
            {
                next = Some(grown);
                break;
            }
        }
        match next {
            Some(g) => cur = g,
            None => {
                return Err(Error::Internal(format!(
                    "no {x}-anchor at step {step} keeps {needed:?} growable; path {cur}"
                )))
            }
        }
    }
    Ok(cur)
}

/// Outcome of the structural feasibility filter for `X`-growability.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GrowthFeasibility {
    /// No `X`-growable realization can exist; `item` names the triggered rule.
    Impossible { item: u8 },
    NotExcluded,
}

/// Filters impossible `X`-growability requests for `L = {x^a, y^b, z^c}`,
/// `x < y < z`, `v = a+b+c+1`:
///
/// 1. `z ∈ X` and `v = 2z` — length-`z` edges are never lengthened;
/// 2. `z ∈ X` and `c < z-y` — too few long edges to serve the window;
/// 3. `x ∈ X` and `a+b < z-x-1`;
/// 4. `y ∈ X` and `a+b < z-y-1`.
pub fn growability_feasible(
    l: &LengthMultiset,
    x_set: &BTreeSet<Length>,
) -> Result<GrowthFeasibility> {
    let u = l.underlying_set();
    if u.len() != 3 {
        return Err(Error::Unsupported(format!(
            "feasibility filter requires a three-element underlying set, got {:?}",
            u
        )));
    }
    if let Some(&bad) = x_set.iter().find(|x| !u.contains(x)) {
        return Err(Error::InvalidArgument(format!(
            "required grow length {bad} is not in the underlying set {:?}",
            u
        )));
    }
    let (x, y, z) = (u[0], u[1], u[2]);
    let (a, b, c) = (l.multiplicity(x), l.multiplicity(y), l.multiplicity(z));
    let v = l.order().get();
    if x_set.contains(&z) && v == 2 * z {
        return Ok(GrowthFeasibility::Impossible { item: 1 });
    }
    if x_set.contains(&z) && c < z - y {
        return Ok(GrowthFeasibility::Impossible { item: 2 });
    }
    if x_set.contains(&x) && a + b + x + 1 < z {
        return Ok(GrowthFeasibility::Impossible { item: 3 });
    }
    if x_set.contains(&y) && a + b + y + 1 < z {
        return Ok(GrowthFeasibility::Impossible { item: 4 });
    }
    Ok(GrowthFeasibility::NotExcluded)
}

/// Least count `c` with `c >= (μ-1)·v/μ` for `μ = max(U)`: a realization whose
/// `x`-count reaches this threshold is necessarily `x`-growable.
pub fn forced_growability_bound(u: &[Length], x: Length, v: Order) -> Result<u32> {
    let mu = *u
        .iter()
        .max()
        .ok_or_else(|| Error::InvalidArgument("empty underlying set".into()))?;
    if !u.contains(&x) {
        return Err(Error::InvalidArgument(format!("{x} is not in the underlying set {u:?}")));
    }
    let v = v.get() as u64;
    let mu = mu as u64;
    Ok((((mu - 1) * v).div_ceil(mu)) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::verify_realization;
    use crate::core::Order;

    fn example_path() -> Realization {
        Realization::from_path(vec![6, 10, 5, 1, 9, 11, 2, 7, 3, 12, 8, 4, 0]).unwrap()
    }

    fn grown_example_path() -> Realization {
        Realization::from_path(vec![
            10, 15, 19, 14, 9, 5, 1, 18, 20, 2, 6, 11, 16, 12, 7, 3, 21, 17, 13, 8, 4, 0,
        ])
        .unwrap()
    }

    #[test]
    fn lengthened_edges_of_example() {
        // Recomputing the mapped endpoints in K_17 lengthens exactly the four
        // edges whose lower endpoint lies in {0,1,2,3}.
        let idx = lengthened_edges(&example_path(), 4, 3).unwrap();
        assert_eq!(idx, vec![2, 6, 7, 11]);
    }

    #[test]
    fn lengthened_edges_boundary_anchor() {
        // m = v-1 shifts no label, but the gap still opens on the wrap
        // boundary: edges whose short arc passes v-1 -> 0 stretch.
        let r = example_path();
        assert_eq!(lengthened_edges(&r, 4, 12).unwrap(), vec![3, 5, 8]);
        // A path with no wrap-short edge keeps all its lengths there.
        let r = Realization::from_path((0..9).collect()).unwrap();
        assert!(lengthened_edges(&r, 4, 8).unwrap().is_empty());
    }

    #[test]
    fn lengthened_edges_small_case() {
        let r = Realization::from_path(vec![0, 1, 2, 3]).unwrap();
        assert_eq!(lengthened_edges(&r, 2, 1).unwrap(), vec![1]);
        assert!(lengthened_edges(&r, 3, 1).is_err()); // 2x > v
    }

    #[test]
    fn growable_at_examples() {
        let r = example_path();
        assert!(is_growable_at(&r, 4, 3));
        assert!(is_growable_at(&r, 5, 6));
        assert!(!is_growable_at(&r, 5, 0));
    }

    #[test]
    fn profile_of_example_contains_published_witnesses() {
        let p = growability_profile(&example_path());
        for (x, m) in [(4, 3), (4, 4), (4, 5), (5, 6)] {
            assert!(p.contains(x, m), "missing witness ({x},{m})");
        }
        assert!(p.is_set_growable(&[4, 5]));
    }

    #[test]
    fn profile_of_consecutive_path() {
        let v = 9;
        let r = Realization::from_path((0..v).collect()).unwrap();
        let p = growability_profile(&r);
        for m in 0..v - 1 {
            assert!(p.contains(1, m), "consecutive path should be 1-growable at {m}");
        }
        assert!(!p.contains(1, v - 1));
    }

    #[test]
    fn grow_reproduces_published_composition() {
        let r = example_path();
        let g1 = grow(&r, &GrowabilityWitness { x: 4, m: 3 }).unwrap();
        assert!(verify_realization(
            &g1,
            &induced_multiset(&r).with_added(4, 4).unwrap()
        )
        .unwrap());
        let g2 = grow(&g1, &GrowabilityWitness { x: 5, m: 10 }).unwrap();
        assert_eq!(g2, grown_example_path());
    }

    #[test]
    fn grown_path_keeps_grow_set() {
        let p = growability_profile(&grown_example_path());
        assert!(p.contains(4, 3));
        assert!(p.contains(5, 10));
    }

    #[test]
    fn grow_tiny_path() {
        let r = Realization::from_path(vec![0, 1, 2]).unwrap();
        let g = grow(&r, &GrowabilityWitness { x: 1, m: 1 }).unwrap();
        assert_eq!(g.path(), &[0, 1, 2, 3]);
    }

    #[test]
    fn grow_rejects_bad_witness_with_diagnostic() {
        let r = example_path();
        // m = 0 leaves no room for the window below the cut.
        let err = grow(&r, &GrowabilityWitness { x: 5, m: 0 }).unwrap_err();
        assert!(err.to_string().contains("(x=5, m=0)"), "got: {err}");
        // m = v-1 is the identity embedding: window labels meet no lengthened edge.
        let err = grow(&r, &GrowabilityWitness { x: 5, m: 12 }).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("label 8 meets 0 lengthened edges"), "got: {msg}");
    }

    #[test]
    fn grow_many_examples() {
        let r = example_path();
        let l = induced_multiset(&r);

        let g = grow_many(&r, &[4, 5]).unwrap();
        let target = l.with_added(4, 4).unwrap().with_added(5, 5).unwrap();
        assert!(verify_realization(&g, &target).unwrap());

        assert_eq!(grow_many(&r, &[]).unwrap(), r);

        let g = grow_many(&r, &[4, 4]).unwrap();
        let target = l.with_added(4, 8).unwrap();
        assert_eq!(g.order(), Order::new(21).unwrap());
        assert!(verify_realization(&g, &target).unwrap());
    }

    #[test]
    fn grow_many_rejects_unwitnessed_length() {
        let r = Realization::from_path(vec![0, 1, 2, 3, 4]).unwrap();
        // The consecutive path only has 1-witnesses.
        assert!(grow_many(&r, &[2]).is_err());
    }

    #[test]
    fn feasibility_rules() {
        let l = LengthMultiset::from_exponents(&[1, 2, 5], &[1, 1, 7]).unwrap();
        assert_eq!(
            growability_feasible(&l, &BTreeSet::from([5])).unwrap(),
            GrowthFeasibility::Impossible { item: 1 }
        );

        let l = LengthMultiset::from_exponents(&[1, 5, 6], &[4, 2, 6]).unwrap();
        assert_eq!(
            growability_feasible(&l, &BTreeSet::from([6])).unwrap(),
            GrowthFeasibility::NotExcluded
        );

        let l = LengthMultiset::from_exponents(&[1, 2, 8], &[1, 1, 20]).unwrap();
        assert_eq!(
            growability_feasible(&l, &BTreeSet::from([1])).unwrap(),
            GrowthFeasibility::Impossible { item: 3 }
        );

        let two = LengthMultiset::from_exponents(&[1, 2], &[3, 4]).unwrap();
        assert!(growability_feasible(&two, &BTreeSet::from([1])).is_err());
    }

    #[test]
    fn forced_bound_values() {
        // mu = 2: threshold is ceil(v/2).
        assert_eq!(forced_growability_bound(&[1, 2], 1, Order::new(10).unwrap()).unwrap(), 5);
        assert_eq!(forced_growability_bound(&[1, 2], 2, Order::new(11).unwrap()).unwrap(), 6);
        // mu = 10 with a+b = 8: c = 81 at v = 90 meets the threshold, c = 80 at v = 89 does not.
        assert_eq!(forced_growability_bound(&[1, 2, 10], 10, Order::new(90).unwrap()).unwrap(), 81);
        assert!(80 < forced_growability_bound(&[1, 2, 10], 10, Order::new(89).unwrap()).unwrap());
    }
}
