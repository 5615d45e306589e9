//! Strategies shared by the property suite and the acceptance harness.

#![allow(dead_code)]

use parteq::Partition;
use proptest::prelude::*;

pub fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec((1u64..=40, 1u64..=6), 0..8)
        .prop_map(|pairs| Partition::from_multiplicities(pairs).unwrap())
}

/// A modulus and a partition with no part divisible by it.
pub fn glaisher_input() -> impl Strategy<Value = (u64, Partition)> {
    (2u64..=5).prop_flat_map(|d| {
        let pairs = prop::collection::vec((1u64..=30, 0u64..=40), 0..6);
        pairs.prop_map(move |pairs| {
            let kept = pairs.into_iter().filter(|(j, _)| j % d != 0);
            (d, Partition::from_multiplicities(kept).unwrap())
        })
    })
}

/// A modulus and a partition in which every part occurs fewer than d times.
pub fn glaisher_image() -> impl Strategy<Value = (u64, Partition)> {
    (2u64..=5).prop_flat_map(|d| {
        let pairs = prop::collection::btree_map(1u64..=200, 1..d, 0..6);
        pairs.prop_map(move |map| (d, Partition::from_multiplicities(map).unwrap()))
    })
}

/// (d, m, o) with o a valid input to the finite-bound map.
pub fn finite_input() -> impl Strategy<Value = (u64, u64, Partition)> {
    (2u64..=5, 1u64..=10).prop_flat_map(|(d, m)| {
        let pairs = prop::collection::vec((1..m * d, 0u64..=60), 0..8);
        pairs.prop_map(move |pairs| {
            let kept = pairs.into_iter().filter(|(j, _)| j % d != 0);
            (d, m, Partition::from_multiplicities(kept).unwrap())
        })
    })
}

/// (d, m, δ) with δ a valid input to the finite-bound inverse.
pub fn finite_image() -> impl Strategy<Value = (u64, u64, Partition)> {
    (2u64..=5, 1u64..=10).prop_flat_map(|(d, m)| {
        let pairs = prop::collection::vec((1..=m * d, 0u64..=30), 0..8);
        pairs.prop_map(move |pairs| {
            let bounded = pairs
                .into_iter()
                .map(|(i, c)| if i <= m { (i, c % d) } else { (i, c) });
            let mut p = Partition::empty();
            for (i, c) in bounded {
                // keep the first multiplicity drawn for each part
                if p.multiplicity(i) == 0 {
                    p = p.add(&Partition::from_multiplicities([(i, c)]).unwrap()).unwrap();
                }
            }
            (d, m, p)
        })
    })
}
