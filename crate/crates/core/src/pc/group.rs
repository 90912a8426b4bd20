use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use super::collect::Collector;
use super::consistency::check_consistency;
use super::element::Element;
use super::presentation::PcPresentation;
use crate::error::{Error, Result};

/// Default bound on the order of any group or subgroup that gets enumerated.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;

/// A word in the generators, exponents arbitrary integers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Word(pub Vec<(usize, i64)>);

/// A consistent pc presentation together with its collector.
///
/// Immutable once built; every operation is a pure function of its inputs.
#[derive(Clone, Debug)]
pub struct PcGroup {
    pres: PcPresentation,
    collector: Collector,
    fingerprint: u64,
    max_order: u64,
}

impl PcGroup {
    /// Validates consistency; an inconsistent presentation is rejected.
    pub fn new(pres: PcPresentation) -> Result<Self> {
        let report = check_consistency(&pres);
        if let Some(fail) = &report.first_failure {
            return Err(Error::Inconsistent(fail.to_string()));
        }
        Ok(Self::from_checked(pres))
    }

    fn from_checked(pres: PcPresentation) -> Self {
        let mut h = DefaultHasher::new();
        pres.hash(&mut h);
        PcGroup {
            collector: Collector::new(&pres),
            fingerprint: h.finish(),
            pres,
            max_order: DEFAULT_MAX_ORDER,
        }
    }

    pub fn with_max_order(mut self, max_order: u64) -> Self {
        self.max_order = max_order;
        self
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.pres
    }

    pub fn p(&self) -> u32 {
        self.pres.p()
    }

    pub fn rank(&self) -> usize {
        self.pres.rank()
    }

    pub fn max_order(&self) -> u64 {
        self.max_order
    }

    pub(crate) fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// `p^n`, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        pow_u128(self.p(), self.rank())
    }

    /// Fails with a size-guard error when `p^log` exceeds the configured limit.
    pub fn guard(&self, what: &str, log: usize) -> Result<()> {
        let order = pow_u128(self.p(), log);
        if order > u128::from(self.max_order) {
            return Err(Error::SizeGuard {
                what: what.to_string(),
                order,
                limit: self.max_order,
            });
        }
        Ok(())
    }

    pub fn identity(&self) -> Element {
        Element::identity(self.rank())
    }

    pub fn generator(&self, i: usize) -> Element {
        Element::generator(self.rank(), i)
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    /// Builds an element from integer exponents, reducing them into `[0, p)`.
    ///
    /// Only the length is checked; use [`PcGroup::validate`] to reject
    /// out-of-range entries instead.
    pub fn element(&self, exps: &[i64]) -> Result<Element> {
        if exps.len() != self.rank() {
            return Err(Error::input(format!(
                "exponent vector has length {}, expected {}",
                exps.len(),
                self.rank()
            )));
        }
        let p = i64::from(self.p());
        Ok(Element::from_exps_unchecked(
            exps.iter().map(|&e| e.rem_euclid(p) as u8).collect(),
        ))
    }

    /// Checks that `a` is a normal form for this group.
    pub fn validate(&self, a: &Element) -> Result<()> {
        if a.rank() != self.rank() {
            return Err(Error::input(format!(
                "element {a} has length {}, expected {}",
                a.rank(),
                self.rank()
            )));
        }
        if let Some(e) = a.exps().iter().find(|&&e| u32::from(e) >= self.p()) {
            return Err(Error::input(format!(
                "element {a} has exponent {e} not below p={}",
                self.p()
            )));
        }
        Ok(())
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.mul(a, b))
    }

    pub fn power(&self, a: &Element, k: i64) -> Result<Element> {
        self.validate(a)?;
        Ok(self.pow(a, k))
    }

    pub fn commutator(&self, a: &Element, b: &Element) -> Result<Element> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.comm(a, b))
    }

    pub fn element_order(&self, a: &Element) -> Result<u128> {
        self.validate(a)?;
        Ok(self.order_of(a))
    }

    // Unchecked kernels used by the rest of the crate on elements that are
    // already known to be normal forms of this group.

    pub(crate) fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut r = a.clone();
        self.collector.mul_into(r.exps_mut(), b.exps());
        r
    }

    pub(crate) fn mul_assign(&self, r: &mut Element, b: &Element) {
        self.collector.mul_into(r.exps_mut(), b.exps());
    }

    /// Inverse by right division, one depth at a time.
    pub(crate) fn inv(&self, a: &Element) -> Element {
        let p = self.p() as u8;
        let mut r = a.clone();
        let mut x = self.identity();
        for i in 0..self.rank() {
            let e = r.exps()[i];
            if e != 0 {
                self.collector.mul_gen_into(r.exps_mut(), i, p - e);
                self.collector.mul_gen_into(x.exps_mut(), i, p - e);
            }
        }
        debug_assert!(r.is_identity());
        x
    }

    pub(crate) fn pow(&self, a: &Element, k: i64) -> Element {
        let base = if k < 0 { self.inv(a) } else { a.clone() };
        let mut k = k.unsigned_abs();
        let mut result = self.identity();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                self.mul_assign(&mut result, &sq);
            }
            k >>= 1;
            if k > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        result
    }

    /// `a^(p^i)`.
    pub(crate) fn pow_p_power(&self, a: &Element, i: u32) -> Element {
        let mut r = a.clone();
        for _ in 0..i {
            if r.is_identity() {
                break;
            }
            r = self.pow(&r, i64::from(self.p()));
        }
        r
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub(crate) fn comm(&self, a: &Element, b: &Element) -> Element {
        let mut r = self.mul(&self.inv(a), &self.inv(b));
        self.mul_assign(&mut r, a);
        self.mul_assign(&mut r, b);
        r
    }

    /// `[a, b]` from precomputed inverses.
    pub(crate) fn comm_with_inverses(
        &self,
        a: &Element,
        a_inv: &Element,
        b: &Element,
        b_inv: &Element,
    ) -> Element {
        let mut r = self.mul(a_inv, b_inv);
        self.mul_assign(&mut r, a);
        self.mul_assign(&mut r, b);
        r
    }

    /// `a^b = b^-1 a b`.
    pub(crate) fn conj(&self, a: &Element, b: &Element) -> Element {
        let mut r = self.inv(b);
        self.mul_assign(&mut r, a);
        self.mul_assign(&mut r, b);
        r
    }

    pub(crate) fn order_of(&self, a: &Element) -> u128 {
        let mut x = a.clone();
        let mut ord: u128 = 1;
        while !x.is_identity() {
            x = self.pow(&x, i64::from(self.p()));
            ord *= u128::from(self.p());
        }
        ord
    }

    /// Collects an arbitrary word into normal form.
    pub fn evaluate(&self, word: &Word) -> Result<Element> {
        let mut r = self.identity();
        for &(g, e) in &word.0 {
            if g >= self.rank() {
                return Err(Error::input(format!("generator g{} out of range", g + 1)));
            }
            let x = self.pow(&self.generator(g), e);
            self.mul_assign(&mut r, &x);
        }
        Ok(r)
    }

    /// Lexicographic rank of a normal form, `sum e_i p^(n-1-i)`.
    pub fn rank_of(&self, a: &Element) -> usize {
        let p = self.p() as usize;
        a.exps().iter().fold(0usize, |acc, &e| acc * p + e as usize)
    }

    pub fn unrank(&self, mut index: usize) -> Element {
        let p = self.p() as usize;
        let mut exps = vec![0u8; self.rank()];
        for slot in exps.iter_mut().rev() {
            *slot = (index % p) as u8;
            index /= p;
        }
        Element::from_exps_unchecked(exps)
    }

    /// All `p^n` normal forms in lexicographic order.
    pub fn enumerate_elements(&self) -> Result<ElementIter> {
        self.guard("group", self.rank())?;
        Ok(ElementIter::new(self.p() as u8, self.rank()))
    }

    pub fn elements(&self) -> Result<Vec<Element>> {
        Ok(self.enumerate_elements()?.collect())
    }
}

pub(crate) fn pow_u128(p: u32, k: usize) -> u128 {
    let mut r: u128 = 1;
    for _ in 0..k {
        r = r.saturating_mul(u128::from(p));
    }
    r
}

/// Odometer over exponent vectors in lexicographic order.
#[derive(Clone, Debug)]
pub struct ElementIter {
    p: u8,
    next: Option<Vec<u8>>,
}

impl ElementIter {
    fn new(p: u8, rank: usize) -> Self {
        ElementIter {
            p,
            next: Some(vec![0; rank]),
        }
    }
}

impl Iterator for ElementIter {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut carried = true;
        for slot in succ.iter_mut().rev() {
            *slot += 1;
            if *slot == self.p {
                *slot = 0;
            } else {
                carried = false;
                break;
            }
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(Element::from_exps_unchecked(current))
    }
}
