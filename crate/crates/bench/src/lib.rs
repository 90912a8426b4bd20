//! Benchmark inputs shared by the criterion targets.

use pgroup_core::corpus::build_family_str;
use pgroup_core::{Element, PcGroup};

pub fn group(spec: &str) -> PcGroup {
    build_family_str(spec)
        .expect("known family")
        .group()
        .expect("consistent")
}

/// `count` pseudo-random elements from a fixed linear congruential stream.
pub fn elements(g: &PcGroup, count: usize) -> Vec<Element> {
    let p = i64::from(g.p());
    let mut state: i64 = 1;
    (0..count)
        .map(|_| {
            let exps: Vec<i64> = (0..g.rank())
                .map(|_| {
                    state = (state * 1_103_515_245 + 12_345) & 0x7fff_ffff;
                    (state >> 16) % p
                })
                .collect();
            g.element(&exps).expect("in range")
        })
        .collect()
}
