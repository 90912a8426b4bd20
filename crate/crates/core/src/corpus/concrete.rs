//! Reading a pc presentation off a concrete group.
//!
//! Given elements `h_1..h_n` of a concrete group that form a pc sequence
//! (every `h_i^p` and `[h_j, h_i]` lies in `<h_{i+1}..>` resp.
//! `<h_{j+1}..>`), all `p^n` normal words are enumerated concretely, which
//! both proves the normal forms distinct and gives a lookup table for the
//! relations. The resulting presentation is then checked against the
//! concrete multiplication.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::pc::{PcGroup, PcPresentation};

/// A group given by explicit multiplication.
pub trait ConcreteGroup {
    type Elem: Clone + Eq + Hash;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, k: u64) -> Self::Elem {
        let mut r = self.identity();
        for _ in 0..k {
            r = self.mul(&r, a);
        }
        r
    }

    /// Inverse by walking the cyclic subgroup.
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        let id = self.identity();
        let mut prev = id.clone();
        let mut x = a.clone();
        while x != id {
            prev = x.clone();
            x = self.mul(&x, a);
        }
        prev
    }

    fn comm(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ab = self.mul(&self.inv(a), &self.inv(b));
        self.mul(&self.mul(&ab, a), b)
    }
}

/// Derives the presentation of `<seq>` with respect to the pc sequence
/// `seq`, then validates it: consistency, and `nf(a) * g_i` against the
/// concrete `a * h_i` for every element `a` and generator `i`.
pub fn presentation_from_sequence<C: ConcreteGroup>(
    group: &C,
    p: u32,
    seq: &[C::Elem],
) -> Result<PcPresentation> {
    let n = seq.len();
    let total = (p as usize)
        .checked_pow(n as u32)
        .filter(|&t| t <= 1 << 22)
        .ok_or_else(|| Error::input("concrete group too large to tabulate"))?;
    let mut lookup: HashMap<C::Elem, Vec<u8>> = HashMap::with_capacity(total);
    let mut concrete = Vec::with_capacity(total);
    tabulate(
        group,
        p,
        seq,
        0,
        group.identity(),
        &mut vec![0; n],
        &mut lookup,
        &mut concrete,
    );
    if lookup.len() != total {
        return Err(Error::input(
            "sequence is not a pc sequence: normal words collide",
        ));
    }
    let find = |x: &C::Elem, what: &str| {
        lookup
            .get(x)
            .cloned()
            .ok_or_else(|| Error::input(format!("{what} leaves the span of the sequence")))
    };
    let mut pres = PcPresentation::new(p, n)?;
    for i in 0..n {
        let w = find(&group.pow(&seq[i], u64::from(p)), "power relation")?;
        pres.set_power(i, w)?;
        for j in i + 1..n {
            let w = find(&group.comm(&seq[j], &seq[i]), "commutator relation")?;
            pres.set_commutator(j, i, w)?;
        }
    }
    let pc = PcGroup::new(pres.clone()).map_err(|e| {
        Error::InvariantViolation(format!("derived presentation is inconsistent: {e}"))
    })?;
    for (idx, a) in concrete.iter().enumerate() {
        let nf = pc.unrank(idx);
        for (i, h) in seq.iter().enumerate() {
            let expected = find(&group.mul(a, h), "product")?;
            let got = pc.mul(&nf, &pc.generator(i));
            if got.exps() != expected.as_slice() {
                return Err(Error::InvariantViolation(format!(
                    "presentation disagrees with the concrete group at {nf} * g{}",
                    i + 1
                )));
            }
        }
    }
    Ok(pres)
}

// Lexicographic enumeration, so `concrete[k]` is the element of rank k.
#[allow(clippy::too_many_arguments)]
fn tabulate<C: ConcreteGroup>(
    group: &C,
    p: u32,
    seq: &[C::Elem],
    depth: usize,
    prefix: C::Elem,
    exps: &mut Vec<u8>,
    lookup: &mut HashMap<C::Elem, Vec<u8>>,
    concrete: &mut Vec<C::Elem>,
) {
    if depth == seq.len() {
        lookup.insert(prefix.clone(), exps.clone());
        concrete.push(prefix);
        return;
    }
    let mut cur = prefix;
    for e in 0..p {
        if e > 0 {
            cur = group.mul(&cur, &seq[depth]);
        }
        exps[depth] = e as u8;
        tabulate(
            group,
            p,
            seq,
            depth + 1,
            cur.clone(),
            exps,
            lookup,
            concrete,
        );
    }
    exps[depth] = 0;
}

/// Square matrices over `Z / modulus`.
pub struct MatrixGroup {
    pub dim: usize,
    pub modulus: u64,
}

pub type Matrix = Vec<u64>;

impl MatrixGroup {
    pub fn unit(&self) -> Matrix {
        let mut m = vec![0; self.dim * self.dim];
        for i in 0..self.dim {
            m[i * self.dim + i] = 1;
        }
        m
    }

    /// `I + c E_ij` (0-based indices).
    pub fn elementary(&self, i: usize, j: usize, c: u64) -> Matrix {
        let mut m = self.unit();
        m[i * self.dim + j] = (m[i * self.dim + j] + c) % self.modulus;
        m
    }
}

impl ConcreteGroup for MatrixGroup {
    type Elem = Matrix;

    fn identity(&self) -> Matrix {
        self.unit()
    }

    fn mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let d = self.dim;
        let mut c = vec![0; d * d];
        for i in 0..d {
            for k in 0..d {
                let x = a[i * d + k];
                if x == 0 {
                    continue;
                }
                for j in 0..d {
                    c[i * d + j] = (c[i * d + j] + x * b[k * d + j]) % self.modulus;
                }
            }
        }
        c
    }
}

/// Permutations of `0..degree`, composed left to right.
pub struct PermGroup {
    pub degree: usize,
}

impl ConcreteGroup for PermGroup {
    type Elem = Vec<u32>;

    fn identity(&self) -> Vec<u32> {
        (0..self.degree as u32).collect()
    }

    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        a.iter().map(|&x| b[x as usize]).collect()
    }
}

/// The split metacyclic group `<a, b | a^(p^m), b^(p^(n+k)), [a, b] = b^(p^n)>`,
/// elements `b^j a^i` stored as `(i, j)`.
pub struct Metacyclic {
    pub a_order: u64,
    pub b_order: u64,
    // a^i b a^-i = b^(r_inv^i)
    pub r_inv: u64,
}

impl Metacyclic {
    pub fn new(p: u64, m: u32, n: u32, k: u32) -> Self {
        let b_order = p.pow(n + k);
        let r = (b_order + 1 - p.pow(n) % b_order) % b_order;
        let r_inv = (1..b_order).find(|x| (x * r) % b_order == 1).expect("unit");
        Metacyclic {
            a_order: p.pow(m),
            b_order,
            r_inv,
        }
    }

    fn r_inv_pow(&self, i: u64) -> u64 {
        let mut acc = 1;
        for _ in 0..i {
            acc = acc * self.r_inv % self.b_order;
        }
        acc
    }
}

impl ConcreteGroup for Metacyclic {
    type Elem = (u64, u64);

    fn identity(&self) -> (u64, u64) {
        (0, 0)
    }

    // b^j1 a^i1 b^j2 a^i2 = b^(j1 + j2 r^-i1) a^(i1 + i2)
    fn mul(&self, x: &(u64, u64), y: &(u64, u64)) -> (u64, u64) {
        let (i1, j1) = *x;
        let (i2, j2) = *y;
        (
            (i1 + i2) % self.a_order,
            (j1 + j2 * self.r_inv_pow(i1)) % self.b_order,
        )
    }
}
