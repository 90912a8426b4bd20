use std::fmt;

use serde::Serialize;

use super::collect::Collector;
use super::element::Element;
use super::presentation::PcPresentation;

/// An overlap `g_k g_j g_i` (`k >= j >= i`, 0-based) whose two collections
/// disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapFailure {
    pub triple: (usize, usize, usize),
    pub left: Element,
    pub right: Element,
}

impl fmt::Display for OverlapFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k, j, i) = self.triple;
        write!(
            f,
            "overlap (g{},g{},g{}) collects to {} and {}",
            k + 1,
            j + 1,
            i + 1,
            self.left,
            self.right
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub overlaps_checked: usize,
    pub failures: usize,
    pub first_failure: Option<OverlapFailure>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

struct Kernel<'a> {
    c: Collector,
    pres: &'a PcPresentation,
}

impl Kernel<'_> {
    fn gen(&self, i: usize) -> Vec<u8> {
        let mut v = vec![0; self.pres.rank()];
        v[i] = 1;
        v
    }

    fn mul(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let mut r = a.to_vec();
        self.c.mul_into(&mut r, b);
        r
    }

    fn gen_pow(&self, i: usize, e: u32) -> Vec<u8> {
        let mut r = vec![0; self.pres.rank()];
        for _ in 0..e {
            self.c.mul_gen_into(&mut r, i, 1);
        }
        r
    }
}

/// Runs the overlap tests of a refined pc presentation.
///
/// Triples are visited with `k` ascending, then `j <= k`, then `i <= j`:
/// * `k > j > i`: `(g_k g_j) g_i` against `g_k (g_j g_i)`;
/// * `k = j > i`: `(g_j^p) g_i` against `g_j^(p-1) (g_j g_i)`;
/// * `k > j = i`: `(g_k g_j) g_j^(p-1)` against `g_k (g_j^p)`;
/// * `k = j = i`: `(g_i^p) g_i` against `g_i (g_i^p)`.
///
/// Power words `g^p` enter as the stated relation, everything else is
/// collected.
pub fn check_consistency(pres: &PcPresentation) -> ConsistencyReport {
    let kernel = Kernel {
        c: Collector::new(pres),
        pres,
    };
    let p = pres.p();
    let n = pres.rank();
    let mut report = ConsistencyReport {
        overlaps_checked: 0,
        failures: 0,
        first_failure: None,
    };
    for k in 0..n {
        for j in 0..=k {
            for i in 0..=j {
                let (left, right) = if k > j && j > i {
                    let (gk, gj, gi) = (kernel.gen(k), kernel.gen(j), kernel.gen(i));
                    (
                        kernel.mul(&kernel.mul(&gk, &gj), &gi),
                        kernel.mul(&gk, &kernel.mul(&gj, &gi)),
                    )
                } else if k == j && j > i {
                    let gi = kernel.gen(i);
                    let gj = kernel.gen(j);
                    (
                        kernel.mul(pres.power_word(j), &gi),
                        kernel.mul(&kernel.gen_pow(j, p - 1), &kernel.mul(&gj, &gi)),
                    )
                } else if k > j && j == i {
                    let gk = kernel.gen(k);
                    let gj = kernel.gen(j);
                    (
                        kernel.mul(&kernel.mul(&gk, &gj), &kernel.gen_pow(j, p - 1)),
                        kernel.mul(&gk, pres.power_word(j)),
                    )
                } else {
                    let gi = kernel.gen(i);
                    (
                        kernel.mul(pres.power_word(i), &gi),
                        kernel.mul(&gi, pres.power_word(i)),
                    )
                };
                report.overlaps_checked += 1;
                if left != right {
                    report.failures += 1;
                    if report.first_failure.is_none() {
                        report.first_failure = Some(OverlapFailure {
                            triple: (k, j, i),
                            left: Element::from_exps_unchecked(left),
                            right: Element::from_exps_unchecked(right),
                        });
                    }
                }
            }
        }
    }
    report
}
