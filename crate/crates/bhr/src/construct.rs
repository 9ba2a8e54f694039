//! Closed-form constructions: σ-block realizations of `{1^a, 2^b, x}` and the
//! automorphism reductions for `{3, 6, x}` and `{2, 4, 6}`.
//!
//! The σ-sequence `σ_k` permutes `{0, ..., k}` so that its consecutive
//! differences are `{1, 2^{k-1}}`. Splicing `σ_k + y` over a run of `k+1`
//! consecutive labels therefore converts `k-1` unit steps into double steps,
//! which turns the trivial realization `[v-1, ..., x, 0, 1, ..., x-1]` of
//! `{1^{v-2}, x}` into a realization of `{1^a, 2^{v-2-a}, x}` for any `a >= 2`.
//! `a = 1` needs the two explicit zig-zag paths emitted verbatim.

use crate::core::{
    apply_unit_automorphism, check_admissibility, mod_inverse, verify_realization, Length,
    LengthMultiset, Order, Realization, Vertex,
};
use crate::search::{find_realization, SearchRequest, SearchStatus};
use crate::{Error, Result};

/// The permutation of `{0, ..., k}` whose consecutive absolute differences
/// form the multiset `{1, 2^{k-1}}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SigmaSequence {
    pub k: u32,
    pub values: Vec<u32>,
}

/// Builds `σ_k`: evens ascending, then odds descending (odd `k` pivots on `k`,
/// even `k` on `k-1`).
pub fn sigma(k: u32) -> Result<SigmaSequence> {
    if k == 0 {
        return Err(Error::InvalidArgument("sigma is defined for k >= 1".into()));
    }
    let mut values = Vec::with_capacity(k as usize + 1);
    let mut t = 0;
    while t <= k {
        values.push(t);
        t += 2;
    }
    // Descend through the odd values, starting at the largest odd <= k.
    let mut t = if k % 2 == 1 { k } else { k - 1 };
    loop {
        values.push(t);
        if t < 2 {
            break;
        }
        t -= 2;
    }
    debug_assert_eq!(values.len(), k as usize + 1);
    Ok(SigmaSequence { k, values })
}

impl SigmaSequence {
    /// `σ_k + y`, the block spliced over the run `y, y+1, ..., y+k`.
    pub fn offset(&self, y: u32) -> Vec<u32> {
        self.values.iter().map(|&t| t + y).collect()
    }
}

/// Builds a verified realization of `{1^a, 2^{v-2-a}, x}` for odd `x` with
/// `6 < x <= v/2` and `a >= 1`.
///
/// Starting from `[v-1, ..., x, 0, 1, ..., x-1]`, double steps are introduced
/// by σ-blocks greedily at the right end (keeping label 0 fixed while
/// possible) and then at the left end; `a = 1` uses the explicit
/// parity-dependent path.
pub fn build_12x_single(v: Order, x: Length, a: u32) -> Result<Realization> {
    let n = v.get();
    if x % 2 == 0 || x <= 6 || 2 * x > n {
        return Err(Error::InvalidArgument(format!(
            "construction requires odd x with 6 < x <= v/2, got x={x}, v={n}"
        )));
    }
    if a < 1 || a > n - 2 {
        return Err(Error::InvalidArgument(format!(
            "count of ones must satisfy 1 <= a <= v-2, got a={a}"
        )));
    }
    let b = n - 2 - a;
    let l = LengthMultiset::new(v, [(1, a), (2, b), (x, 1)])?;
    if !check_admissibility(&l).admissible {
        return Err(Error::InvalidArgument(format!("{l} is inadmissible")));
    }

    let r = if a == 1 { explicit_single_one(n, x) } else { splice_blocks(n, x, b) };
    let r = Realization::new(v, r)?;
    debug_assert!(verify_realization(&r, &l).unwrap());
    if !verify_realization(&r, &l)? {
        return Err(Error::Internal(format!("construction failed to realize {l}")));
    }
    Ok(r)
}

/// Base path minus σ-blocks: right block inside `1..x-1` first, remainder at
/// the left end, and only if one more double step is still needed does the
/// right block absorb label 0.
fn splice_blocks(n: u32, x: Length, b: u32) -> Vec<Vertex> {
    let right_cap = x - 3; // block within 1..x-1
    let left_cap = n - x - 2; // block within x..v-1
    let mut t_right = b.min(right_cap);
    let mut t_left = (b - t_right).min(left_cap);
    if b > t_right + t_left {
        debug_assert_eq!(b - t_right - t_left, 1);
        t_right = x - 2; // extend the right block over label 0
        t_left = b - t_right;
    }

    let mut path: Vec<Vertex> = Vec::with_capacity(n as usize);
    // Left run v-1 down to x, possibly starting with a reversed block.
    if t_left > 0 {
        let k = t_left + 1;
        let y = n - 1 - k;
        let mut block = sigma(k).expect("k >= 1").offset(y);
        block.reverse();
        path.extend(block);
        path.extend((x..y).rev());
    } else {
        path.extend((x..n).rev());
    }
    // Right run 0 up to x-1, possibly ending with a block.
    if t_right > 0 {
        let k = t_right + 1;
        let y = x - 1 - k;
        path.extend(0..y);
        path.extend(sigma(k).expect("k >= 1").offset(y));
    } else {
        path.extend(0..x);
    }
    path
}

/// The two verbatim paths realizing `{1, 2^{v-3}, x}`.
fn explicit_single_one(n: u32, x: Length) -> Vec<Vertex> {
    let mut path: Vec<Vertex> = Vec::with_capacity(n as usize);
    let desc = |from: u32, to: u32| (to..=from).rev().step_by(2);
    if n % 2 == 0 {
        // v-2, v-4, ..., x+1, x-1, x-2, x-4, ..., 1, v-1, v-3, ..., x, 0, 2, ..., x-3
        path.extend(desc(n - 2, x + 1));
        path.push(x - 1);
        path.extend(desc(x - 2, 1));
        path.extend(desc(n - 1, x));
        path.extend((0..=x - 3).step_by(2));
    } else {
        // v-2, v-4, ..., x+2, x, 0, 2, ..., x-1, x-2, x-4, ..., 1, v-1, v-3, ..., x+1
        path.extend(desc(n - 2, x + 2));
        path.push(x);
        path.extend((0..=x - 1).step_by(2));
        path.extend(desc(x - 2, 1));
        path.extend(desc(n - 1, x + 1));
    }
    path
}

/// Realizes `{3^a, 6^b, x}` (a single copy of `x`, `3` not dividing `v`) by
/// dividing labels by 3, realizing the reduced multiset `{1^a, 2^b, x'}`, and
/// mapping back with the automorphism `t ↦ 3t`.
pub fn reduce_36x(l: &LengthMultiset) -> Result<Realization> {
    let v = l.order();
    let n = v.get();
    if n % 3 == 0 {
        return Err(Error::InadmissibleInput(format!(
            "v = {n} is a multiple of 3, so {l} is inadmissible"
        )));
    }
    let u = l.underlying_set();
    let x = match u.as_slice() {
        [3, 6, x] | [3, x, 6] | [x, 3, 6] => *x,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "underlying set must be {{3, 6, x}}, got {u:?}"
            )))
        }
    };
    if l.multiplicity(x) != 1 {
        return Err(Error::InvalidArgument(format!(
            "reduction applies to a single copy of x = {x}, got {}",
            l.multiplicity(x)
        )));
    }
    let a = l.multiplicity(3);
    let b = l.multiplicity(6);
    let inv3 = mod_inverse(3, n)?;
    let x_img = crate::core::map_length(v, x, inv3);

    // Reduced multiset {1^a, 2^b, x'}; x' may collide with 1 or 2.
    let mut counts = std::collections::BTreeMap::new();
    *counts.entry(1u32).or_insert(0) += a;
    *counts.entry(2u32).or_insert(0) += b;
    *counts.entry(x_img).or_insert(0) += 1;
    let reduced = LengthMultiset::new(v, counts)?;

    let pre = realize_12x(&reduced, x_img, a)?;
    let out = apply_unit_automorphism(&pre, 3)?;
    if !verify_realization(&out, l)? {
        return Err(Error::Internal(format!(
            "reduction produced {out} which does not realize {l}"
        )));
    }
    Ok(out)
}

/// Realization of the reduced multiset: σ-blocks when their preconditions
/// hold, otherwise the search engine.
fn realize_12x(reduced: &LengthMultiset, x_img: Length, a: u32) -> Result<Realization> {
    let n = reduced.order().get();
    if x_img % 2 == 1 && x_img > 6 && 2 * x_img <= n && a >= 1 && reduced.multiplicity(x_img) == 1
    {
        if let Ok(r) = build_12x_single(reduced.order(), x_img, a) {
            return Ok(r);
        }
    }
    let req = SearchRequest::new(reduced.clone(), [], u64::MAX, false)?;
    let out = find_realization(&req)?;
    match out.status {
        SearchStatus::Found => Ok(out.realizations.into_iter().next().unwrap().0),
        _ => Err(Error::Internal(format!("no realization found for reduced multiset {reduced}"))),
    }
}

/// Realizes `{2^a, 4^b, 6^c}` for odd `v` by finding a `{1^a, 2^b, 3^c}`
/// realization with the search engine and doubling its labels.
pub fn reduce_246(l: &LengthMultiset) -> Result<Realization> {
    let v = l.order();
    let n = v.get();
    if n % 2 == 0 {
        return Err(Error::InadmissibleInput(format!(
            "v = {n} is even, so a multiset over {{2, 4, 6}} is inadmissible"
        )));
    }
    let u = l.underlying_set();
    if u != vec![2, 4, 6] {
        return Err(Error::InvalidArgument(format!(
            "underlying set must be {{2, 4, 6}}, got {u:?}"
        )));
    }
    let (a, b, c) = (l.multiplicity(2), l.multiplicity(4), l.multiplicity(6));
    let pre_l = LengthMultiset::new(v, [(1, a), (2, b), (3, c)])?;
    let req = SearchRequest::new(pre_l.clone(), [], u64::MAX, false)?;
    let out = find_realization(&req)?;
    let pre = match out.status {
        SearchStatus::Found => out.realizations.into_iter().next().unwrap().0,
        SearchStatus::ExhaustedNone => {
            return Err(Error::Internal(format!("no realization exists for {pre_l}")))
        }
        SearchStatus::BudgetExceeded => {
            return Err(Error::Internal(format!("search budget exhausted on {pre_l}")))
        }
    };
    let out = apply_unit_automorphism(&pre, 2)?;
    if !verify_realization(&out, l)? {
        return Err(Error::Internal(format!("doubling produced {out}, not a realization of {l}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::induced_multiset;

    #[test]
    fn sigma_small_values() {
        assert_eq!(sigma(5).unwrap().values, vec![0, 2, 4, 5, 3, 1]);
        assert_eq!(sigma(4).unwrap().values, vec![0, 2, 4, 3, 1]);
        assert_eq!(sigma(1).unwrap().values, vec![0, 1]);
        assert!(sigma(0).is_err());
    }

    #[test]
    fn sigma_difference_multiset() {
        for k in 1..=200u32 {
            let s = sigma(k).unwrap();
            let mut ones = 0;
            let mut twos = 0;
            for w in s.values.windows(2) {
                match w[0].abs_diff(w[1]) {
                    1 => ones += 1,
                    2 => twos += 1,
                    d => panic!("sigma({k}) has difference {d}"),
                }
            }
            assert_eq!((ones, twos), (1, k - 1), "sigma({k})");
            let mut sorted = s.values.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..=k).collect::<Vec<_>>());
        }
    }

    #[test]
    fn published_sixteen_vertex_paths() {
        let v = Order::new(16).unwrap();
        assert_eq!(
            build_12x_single(v, 7, 10).unwrap().path(),
            &[15, 14, 13, 12, 11, 10, 9, 8, 7, 0, 1, 3, 5, 6, 4, 2]
        );
        assert_eq!(
            build_12x_single(v, 7, 7).unwrap().path(),
            &[12, 14, 15, 13, 11, 10, 9, 8, 7, 0, 1, 3, 5, 6, 4, 2]
        );
        assert_eq!(
            build_12x_single(v, 7, 1).unwrap().path(),
            &[14, 12, 10, 8, 6, 5, 3, 1, 15, 13, 11, 9, 7, 0, 2, 4]
        );
    }

    #[test]
    fn construction_rejects_bad_parameters() {
        let v = Order::new(16).unwrap();
        assert!(build_12x_single(v, 8, 5).is_err()); // even x
        assert!(build_12x_single(v, 5, 5).is_err()); // x <= 6
        assert!(build_12x_single(v, 9, 5).is_err()); // 2x > v
        assert!(build_12x_single(v, 7, 0).is_err());
        assert!(build_12x_single(v, 7, 15).is_err());
    }

    #[test]
    fn construction_sweep_small() {
        for n in 14..=30u32 {
            let v = Order::new(n).unwrap();
            for x in (7..=n / 2).step_by(2) {
                for a in 1..=n - 2 {
                    let Ok(l) = LengthMultiset::new(v, [(1, a), (2, n - 2 - a), (x, 1)]) else {
                        continue;
                    };
                    if !check_admissibility(&l).admissible {
                        continue;
                    }
                    let r = build_12x_single(v, x, a).unwrap();
                    assert!(verify_realization(&r, &l).unwrap(), "v={n} x={x} a={a}");
                }
            }
        }
    }

    #[test]
    fn reduce_36x_round_trip() {
        // v = 13, x = 4: dividing by 3 sends 3 -> 1, 6 -> 2, 4 -> 3.
        let l = LengthMultiset::from_exponents(&[3, 6, 4], &[6, 5, 1]).unwrap();
        let r = reduce_36x(&l).unwrap();
        assert!(verify_realization(&r, &l).unwrap());

        // Mapping back by the inverse unit recovers a realization of the
        // reduced multiset.
        let n = l.order().get();
        let inv3 = mod_inverse(3, n).unwrap();
        let back = apply_unit_automorphism(&r, inv3).unwrap();
        let reduced = induced_multiset(&back);
        assert_eq!(reduced.multiplicity(1), 6);
        assert_eq!(reduced.multiplicity(2), 5);
        assert_eq!(reduced.multiplicity(3), 1);
    }

    #[test]
    fn reduce_36x_uses_sigma_blocks_when_possible() {
        // v = 16, x = 5: 5 * inv(3) = 5 * 11 = 55 ≡ 7 (mod 16), an odd image
        // above 6, so the σ construction route applies.
        let l = LengthMultiset::from_exponents(&[3, 6, 5], &[9, 5, 1]).unwrap();
        let r = reduce_36x(&l).unwrap();
        assert!(verify_realization(&r, &l).unwrap());
    }

    #[test]
    fn reduce_36x_rejects_multiples_of_three() {
        let l = LengthMultiset::from_exponents(&[3, 6, 4], &[8, 3, 1]).unwrap();
        assert_eq!(l.order().get(), 13); // sanity: order not divisible by 3
        let bad = LengthMultiset::from_exponents(&[3, 6, 4], &[10, 3, 1]).unwrap();
        assert_eq!(bad.order().get(), 15);
        assert!(matches!(reduce_36x(&bad), Err(Error::InadmissibleInput(_))));
    }

    #[test]
    fn reduce_246_round_trip() {
        let l = LengthMultiset::from_exponents(&[2, 4, 6], &[4, 4, 4]).unwrap();
        assert_eq!(l.order().get(), 13);
        let r = reduce_246(&l).unwrap();
        assert!(verify_realization(&r, &l).unwrap());

        // Doubling then halving is the identity on paths.
        let n = l.order().get();
        let half = mod_inverse(2, n).unwrap();
        let back = apply_unit_automorphism(&apply_unit_automorphism(&r, half).unwrap(), 2).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn reduce_246_rejects_even_order() {
        // Any multiset over {2,4,6} with even v fails the d = 2 condition.
        let l = LengthMultiset::from_exponents(&[2, 4, 6], &[5, 4, 4]).unwrap();
        assert_eq!(l.order().get(), 14);
        assert!(!check_admissibility(&l).admissible);
        assert!(matches!(reduce_246(&l), Err(Error::InadmissibleInput(_))));
    }
}
