#![allow(dead_code)]

use finspace::{Elem, FinitePoset};
use proptest::prelude::*;

/// A poset on `n` points from relations `i < j` picked by `bits`, closed
/// transitively, with ids scrambled by `perm` so they need not follow the order.
pub fn build(n: usize, bits: &[bool], perm: &[usize]) -> FinitePoset {
    let mut pairs = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits[k] {
                pairs.push((perm[i], perm[j]));
            }
            k += 1;
        }
    }
    FinitePoset::from_pairs((0..n).map(|i| format!("p{i}")).collect(), &pairs).unwrap()
}

pub fn poset(max_n: usize) -> impl Strategy<Value = FinitePoset> {
    (1..=max_n).prop_flat_map(|n| {
        let slots = n * (n - 1) / 2;
        (
            Just(n),
            proptest::collection::vec(proptest::bool::weighted(0.45), slots),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        )
            .prop_map(|(n, bits, perm)| build(n, &bits, &perm))
    })
}

pub fn connected_poset(max_n: usize) -> impl Strategy<Value = FinitePoset> {
    poset(max_n).prop_filter("path connected", |p| p.components().len() == 1)
}

/// Adds a point `new` just above `x`: its strict down-set is the down-set of
/// `x`, and it lies below the up-closure of the elements of `above` (each
/// strictly above `x`). The new point is a down-beat point onto `x`.
pub fn add_down_beat(p: &FinitePoset, x: Elem, above: &[Elem]) -> FinitePoset {
    let n = p.len();
    let up: Vec<bool> = (0..n).map(|w| above.iter().any(|&z| p.lt(x, z) && p.leq(z, w))).collect();
    let mut labels = p.labels().to_vec();
    labels.push("new".into());
    FinitePoset::from_relation(labels, |a, b| match (a == n, b == n) {
        (false, false) => p.leq(a, b),
        (false, true) => p.leq(a, x),
        (true, false) => up[b],
        (true, true) => true,
    })
    .unwrap()
}

/// A poset with one extra beat point, up or down, chosen by the seeds.
pub fn with_beat_point(p: &FinitePoset, x: Elem, above: &[Elem], dual: bool) -> FinitePoset {
    if dual {
        add_down_beat(&p.opposite(), x, above).opposite()
    } else {
        add_down_beat(p, x, above)
    }
}
