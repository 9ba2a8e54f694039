//! Edge lengths in `K_v`, length multisets, realizations, and admissibility.
//!
//! Vertices carry the canonical labels `0..v`. The length of the edge `{p, q}` is
//! the circular distance `min(|p-q|, v-|p-q|)`, always in `1..=v/2`. A
//! [`Realization`] is a Hamiltonian path stored as its label sequence; a
//! [`LengthMultiset`] is the multiset it is checked against. Everything here is
//! an immutable value and every operation is pure.

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// A vertex label in `0..v`.
pub type Vertex = u32;
/// An edge length in `1..=v/2`.
pub type Length = u32;

/// The number of vertices of the ambient complete graph. Always at least 2.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Order(u32);

impl Order {
    pub fn new(v: u32) -> Result<Self> {
        if v < 2 {
            return Err(Error::InvalidArgument(format!("order must be >= 2, got {v}")));
        }
        Ok(Order(v))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Largest possible edge length, `floor(v/2)`.
    pub fn max_length(self) -> Length {
        self.0 / 2
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The circular distance between two distinct labels of `K_v`.
pub fn edge_length(v: Order, p: Vertex, q: Vertex) -> Result<Length> {
    let n = v.get();
    if p >= n || q >= n {
        return Err(Error::InvalidArgument(format!(
            "labels must lie in 0..{n}, got {p} and {q}"
        )));
    }
    if p == q {
        return Err(Error::InvalidArgument(format!("labels must be distinct, both are {p}")));
    }
    let d = p.abs_diff(q);
    Ok(d.min(n - d))
}

/// A multiset of edge lengths of total size `v - 1`.
///
/// Keys are the underlying set `U`; values are the (positive) multiplicities.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LengthMultiset {
    v: Order,
    counts: BTreeMap<Length, u32>,
}

impl LengthMultiset {
    /// Builds a multiset for `K_v`, validating the range of every length and
    /// that the multiplicities sum to `v - 1`.
    pub fn new(v: Order, counts: impl IntoIterator<Item = (Length, u32)>) -> Result<Self> {
        let mut map: BTreeMap<Length, u32> = BTreeMap::new();
        for (len, mult) in counts {
            if mult == 0 {
                continue;
            }
            if len < 1 || len > v.max_length() {
                return Err(Error::InvalidArgument(format!(
                    "length {len} out of range 1..={} for v={v}",
                    v.max_length()
                )));
            }
            *map.entry(len).or_insert(0) += mult;
        }
        let total: u32 = map.values().sum();
        if total != v.get() - 1 {
            return Err(Error::InvalidArgument(format!(
                "multiset size {total} != v-1 = {}",
                v.get() - 1
            )));
        }
        Ok(LengthMultiset { v, counts: map })
    }

    /// Builds `{u[0]^exps[0], u[1]^exps[1], ...}` with the order derived from the
    /// exponent sum. Zero exponents are dropped.
    pub fn from_exponents(u: &[Length], exps: &[u32]) -> Result<Self> {
        if u.len() != exps.len() {
            return Err(Error::InvalidArgument(
                "underlying set and exponent list differ in length".into(),
            ));
        }
        let total: u32 = exps.iter().sum();
        let v = Order::new(total + 1)?;
        LengthMultiset::new(v, u.iter().copied().zip(exps.iter().copied()))
    }

    pub(crate) fn from_counts_unchecked(v: Order, counts: BTreeMap<Length, u32>) -> Self {
        LengthMultiset { v, counts }
    }

    pub fn order(&self) -> Order {
        self.v
    }

    pub fn counts(&self) -> &BTreeMap<Length, u32> {
        &self.counts
    }

    pub fn multiplicity(&self, len: Length) -> u32 {
        self.counts.get(&len).copied().unwrap_or(0)
    }

    /// The underlying set `U`, ascending.
    pub fn underlying_set(&self) -> Vec<Length> {
        self.counts.keys().copied().collect()
    }

    /// Product of the elements of the underlying set.
    pub fn pi_u(&self) -> u64 {
        self.counts.keys().map(|&l| l as u64).product()
    }

    pub fn size(&self) -> u32 {
        self.v.get() - 1
    }

    /// The multiset `self ∪ {x^count}` in `K_{v + count}`.
    pub fn with_added(&self, x: Length, count: u32) -> Result<Self> {
        let v = Order::new(self.v.get() + count)?;
        let mut counts = self.counts.clone();
        *counts.entry(x).or_insert(0) += count;
        LengthMultiset::new(v, counts)
    }
}

impl fmt::Display for LengthMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (len, mult)) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if *mult == 1 {
                write!(f, "{len}")?;
            } else {
                write!(f, "{len}^{mult}")?;
            }
        }
        write!(f, "}} (v={})", self.v)
    }
}

/// A Hamiltonian path on `{0, ..., v-1}`, stored as its label sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Realization {
    v: Order,
    path: Vec<Vertex>,
}

impl Realization {
    /// Validates that `path` is a permutation of `0..v`.
    pub fn new(v: Order, path: Vec<Vertex>) -> Result<Self> {
        let n = v.get() as usize;
        if path.len() != n {
            return Err(Error::InvalidArgument(format!(
                "path has {} labels, expected v={}",
                path.len(),
                n
            )));
        }
        let mut seen = vec![false; n];
        for &h in &path {
            if h as usize >= n {
                return Err(Error::InvalidArgument(format!("label {h} out of range 0..{n}")));
            }
            if seen[h as usize] {
                return Err(Error::InvalidArgument(format!("label {h} appears twice")));
            }
            seen[h as usize] = true;
        }
        Ok(Realization { v, path })
    }

    /// Validates a label sequence, deriving `v` from its length.
    pub fn from_path(path: Vec<Vertex>) -> Result<Self> {
        let v = Order::new(path.len() as u32)?;
        Realization::new(v, path)
    }

    pub fn order(&self) -> Order {
        self.v
    }

    pub fn path(&self) -> &[Vertex] {
        &self.path
    }

    /// Consecutive pairs of the path.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.path.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn reversed(&self) -> Realization {
        let mut path = self.path.clone();
        path.reverse();
        Realization { v: self.v, path }
    }

    /// Image under the label reflection `t ↦ v-1-t`.
    pub fn complemented(&self) -> Realization {
        let n = self.v.get();
        let path = self.path.iter().map(|&h| n - 1 - h).collect();
        Realization { v: self.v, path }
    }

    /// Lexicographically least of the four symmetry images
    /// (identity, reversal, complement, reversed complement).
    pub fn canonical(&self) -> Realization {
        let c = self.complemented();
        let mut best = self.clone();
        for cand in [self.reversed(), c.reversed(), c] {
            if cand.path < best.path {
                best = cand;
            }
        }
        best
    }
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, h) in self.path.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{h}")?;
        }
        write!(f, "]")
    }
}

/// The multiset of lengths induced by the consecutive pairs of `r`.
pub fn induced_multiset(r: &Realization) -> LengthMultiset {
    let mut counts: BTreeMap<Length, u32> = BTreeMap::new();
    for (p, q) in r.edges() {
        let len = edge_length(r.v, p, q).expect("realization labels are valid");
        *counts.entry(len).or_insert(0) += 1;
    }
    LengthMultiset::from_counts_unchecked(r.v, counts)
}

/// Exact, multiplicity-sensitive check that `r` realizes `l`.
pub fn verify_realization(r: &Realization, l: &LengthMultiset) -> Result<bool> {
    if r.order() != l.order() {
        return Err(Error::InvalidArgument(format!(
            "order mismatch: realization has v={}, multiset has v={}",
            r.order(),
            l.order()
        )));
    }
    Ok(&induced_multiset(r) == l)
}

/// One failed divisor condition: `count` multiples of `divisor` exceed `bound = v - divisor`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Violation {
    pub divisor: u32,
    pub count: u32,
    pub bound: u32,
}

/// Outcome of the divisor conditions for a multiset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub violations: Vec<Violation>,
}

/// Checks every divisor `d` of `v` with `1 < d <= v`: the number of multiples of
/// `d` in `L`, counted with multiplicity, may not exceed `v - d`. (`d = 1` never
/// violates since `|L| = v-1`; `d = v` never occurs since lengths are below `v`.)
pub fn check_admissibility(l: &LengthMultiset) -> AdmissibilityReport {
    let v = l.order().get();
    let mut violations = Vec::new();
    for d in 2..=v {
        if v % d != 0 {
            continue;
        }
        let count: u32 = l
            .counts()
            .iter()
            .filter(|(&len, _)| len % d == 0)
            .map(|(_, &mult)| mult)
            .sum();
        let bound = v - d;
        if count > bound {
            violations.push(Violation { divisor: d, count, bound });
        }
    }
    AdmissibilityReport { admissible: violations.is_empty(), violations }
}

/// True when `{u[i]^exps[i]}` is an admissible multiset: the largest length fits
/// in `1..=v/2` for `v = sum(exps)+1` and every divisor condition holds.
pub fn admissible_exponents(u: &[Length], exps: &[u32]) -> bool {
    match LengthMultiset::from_exponents(u, exps) {
        Ok(l) => check_admissibility(&l).admissible,
        Err(_) => false,
    }
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Multiplicative inverse of `u` modulo `v`, when `gcd(u, v) = 1`.
pub fn mod_inverse(u: u32, v: u32) -> Result<u32> {
    let u = u % v;
    if gcd(u, v) != 1 {
        return Err(Error::InvalidArgument(format!("{u} is not a unit modulo {v}")));
    }
    // Extended Euclid on (u, v).
    let (mut r0, mut r1) = (u as i64, v as i64);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    Ok(s0.rem_euclid(v as i64) as u32)
}

/// Applies the label automorphism `t ↦ u·t (mod v)` for a unit `u`.
///
/// Induced lengths are mapped by `ℓ ↦ min(uℓ mod v, v - uℓ mod v)`.
pub fn apply_unit_automorphism(r: &Realization, u: u32) -> Result<Realization> {
    let v = r.order().get();
    let u = u % v;
    if gcd(u, v) != 1 {
        return Err(Error::InvalidArgument(format!(
            "gcd({u}, {v}) != 1: not an automorphism of the label group"
        )));
    }
    let path = r
        .path()
        .iter()
        .map(|&h| ((h as u64 * u as u64) % v as u64) as Vertex)
        .collect();
    Ok(Realization { v: r.order(), path })
}

/// Image of a length class under `t ↦ u·t (mod v)`.
pub fn map_length(v: Order, len: Length, u: u32) -> Length {
    let n = v.get();
    let d = ((len as u64 * u as u64) % n as u64) as u32;
    d.min(n - d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(v: u32) -> Order {
        Order::new(v).unwrap()
    }

    /// The 13-vertex path used throughout: realizes {2, 4^8, 5^3}.
    pub(crate) fn example_path() -> Realization {
        Realization::from_path(vec![6, 10, 5, 1, 9, 11, 2, 7, 3, 12, 8, 4, 0]).unwrap()
    }

    #[test]
    fn edge_length_values() {
        assert_eq!(edge_length(ord(13), 6, 10).unwrap(), 4);
        assert_eq!(edge_length(ord(13), 0, 5).unwrap(), 5);
        assert_eq!(edge_length(ord(13), 1, 12).unwrap(), 2);
    }

    #[test]
    fn edge_length_rejects_bad_labels() {
        assert!(edge_length(ord(13), 3, 3).is_err());
        assert!(edge_length(ord(13), 13, 0).is_err());
    }

    #[test]
    fn induced_multiset_of_example() {
        let l = induced_multiset(&example_path());
        assert_eq!(l, LengthMultiset::new(ord(13), [(2, 1), (4, 8), (5, 3)]).unwrap());
    }

    #[test]
    fn induced_multiset_consecutive_and_doubled() {
        let r = Realization::from_path((0..8).collect()).unwrap();
        assert_eq!(induced_multiset(&r), LengthMultiset::new(ord(8), [(1, 7)]).unwrap());

        let r = Realization::from_path(vec![0, 2, 4, 6, 1, 3, 5]).unwrap();
        assert_eq!(induced_multiset(&r), LengthMultiset::new(ord(7), [(2, 6)]).unwrap());
    }

    #[test]
    fn verify_realization_multiplicity_sensitive() {
        let r = example_path();
        let good = LengthMultiset::new(ord(13), [(2, 1), (4, 8), (5, 3)]).unwrap();
        let bad = LengthMultiset::new(ord(13), [(2, 1), (4, 9), (5, 2)]).unwrap();
        assert!(verify_realization(&r, &good).unwrap());
        assert!(!verify_realization(&r, &bad).unwrap());
        let other_v = LengthMultiset::new(ord(12), [(1, 11)]).unwrap();
        assert!(verify_realization(&r, &other_v).is_err());
    }

    #[test]
    fn admissibility_examples() {
        let l = LengthMultiset::new(ord(13), [(2, 1), (4, 8), (5, 3)]).unwrap();
        assert!(check_admissibility(&l).admissible);

        let l = LengthMultiset::new(ord(10), [(5, 9)]).unwrap();
        let rep = check_admissibility(&l);
        assert!(!rep.admissible);
        assert!(rep.violations.contains(&Violation { divisor: 5, count: 9, bound: 5 }));

        let l = LengthMultiset::new(ord(6), [(2, 5)]).unwrap();
        let rep = check_admissibility(&l);
        assert!(!rep.admissible);
        assert!(rep.violations.contains(&Violation { divisor: 2, count: 5, bound: 4 }));
    }

    #[test]
    fn multiset_construction_guards() {
        assert!(LengthMultiset::new(ord(9), [(5, 8)]).is_err()); // 5 > 4
        assert!(LengthMultiset::new(ord(9), [(4, 7)]).is_err()); // size 7 != 8
        // v = 10 from the exponent sum, so length 6 exceeds floor(10/2).
        assert!(LengthMultiset::from_exponents(&[3, 6, 5], &[4, 4, 1]).is_err());
    }

    #[test]
    fn from_exponents_range_check() {
        // v = 10 here, and 6 > floor(10/2) is rejected.
        assert!(LengthMultiset::from_exponents(&[3, 6], &[5, 4]).is_err());
        assert!(LengthMultiset::from_exponents(&[3, 5], &[5, 4]).is_ok());
    }

    #[test]
    fn unit_automorphism_examples() {
        let r = Realization::from_path((0..7).collect()).unwrap();
        let doubled = apply_unit_automorphism(&r, 2).unwrap();
        assert_eq!(doubled.path(), &[0, 2, 4, 6, 1, 3, 5]);
        assert!(verify_realization(
            &doubled,
            &LengthMultiset::new(ord(7), [(2, 6)]).unwrap()
        )
        .unwrap());

        let id = apply_unit_automorphism(&example_path(), 1).unwrap();
        assert_eq!(id, example_path());

        assert!(apply_unit_automorphism(&Realization::from_path((0..6).collect()).unwrap(), 2).is_err());
    }

    #[test]
    fn unit_automorphism_maps_lengths() {
        // A unit permutes the length classes, so multiplicities transport exactly.
        let r = Realization::from_path(vec![0, 1, 2, 4, 6, 8, 10, 12, 9, 5, 3, 7, 11]).unwrap();
        let l = induced_multiset(&r);
        let doubled = apply_unit_automorphism(&r, 2).unwrap();
        let li = induced_multiset(&doubled);
        for (&len, &mult) in l.counts() {
            assert_eq!(li.multiplicity(map_length(r.order(), len, 2)), mult);
        }
    }

    #[test]
    fn mod_inverse_small() {
        assert_eq!(mod_inverse(3, 13).unwrap(), 9);
        assert_eq!(mod_inverse(3, 16).unwrap(), 11);
        assert!(mod_inverse(3, 9).is_err());
    }

    #[test]
    fn canonical_is_orbit_minimum() {
        let r = example_path();
        let canon = r.canonical();
        for img in [r.clone(), r.reversed(), r.complemented(), r.complemented().reversed()] {
            assert!(canon.path() <= img.path());
            assert_eq!(img.canonical(), canon);
        }
    }
}
