use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::special::SpecialSubgroups;
use crate::corpus::{ReportEntry, Verdict};
use crate::error::{Error, Result};
use crate::lattice::Subgroup;
use crate::pc::{Element, ElementSet, PcGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LemmaId {
    Blackburn,
    Powerful,
    Index2,
    Central,
    LN,
    C,
    D,
    R,
    PropDR,
    HallPetrescu,
    Cyclic,
}

impl LemmaId {
    pub const ALL: [LemmaId; 11] = [
        LemmaId::Blackburn,
        LemmaId::Powerful,
        LemmaId::Index2,
        LemmaId::Central,
        LemmaId::LN,
        LemmaId::C,
        LemmaId::D,
        LemmaId::R,
        LemmaId::PropDR,
        LemmaId::HallPetrescu,
        LemmaId::Cyclic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::Blackburn => "blackburn",
            LemmaId::Powerful => "powerful",
            LemmaId::Index2 => "index2",
            LemmaId::Central => "central",
            LemmaId::LN => "LN",
            LemmaId::C => "C",
            LemmaId::D => "D",
            LemmaId::R => "R",
            LemmaId::PropDR => "prop_DR",
            LemmaId::HallPetrescu => "hall_petrescu",
            LemmaId::Cyclic => "cyclic",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = LemmaId::ALL.iter().map(|id| id.name()).collect();
                Error::input(format!("unknown lemma `{s}`; known: {}", known.join(", ")))
            })
    }
}

/// Sampling parameters for the instance-based checks.
#[derive(Clone, Copy, Debug)]
pub struct LemmaConfig {
    pub seed: u64,
    /// Random elements added to the deterministic candidates.
    pub samples: usize,
    /// Groups up to this order get exhaustive subgroup enumeration.
    pub exhaustive_subgroups_up_to: u128,
}

impl Default for LemmaConfig {
    fn default() -> Self {
        LemmaConfig {
            seed: 0,
            samples: 8,
            exhaustive_subgroups_up_to: 256,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartResult {
    pub part: String,
    pub instances: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub group: String,
    pub lemma: LemmaId,
    pub verdict: Verdict,
    pub note: Option<String>,
    pub parts: Vec<PartResult>,
    /// First failing instance, as exponent vectors.
    pub counterexample: Option<Value>,
}

impl LemmaReport {
    pub fn to_entry(&self) -> ReportEntry {
        let mut e = ReportEntry::new(self.group.clone(), self.lemma.name(), self.verdict);
        e.note = self.note.clone();
        e.counterexample = self.counterexample.clone();
        e.details = json!({ "parts": self.parts });
        e
    }
}

/// Accumulates instance outcomes for one lemma.
struct Tally {
    parts: Vec<PartResult>,
    counterexample: Option<Value>,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            parts: Vec::new(),
            counterexample: None,
            notes: Vec::new(),
        }
    }

    fn part(&mut self, name: &str) -> &mut PartResult {
        if let Some(i) = self.parts.iter().position(|p| p.part == name) {
            return &mut self.parts[i];
        }
        self.parts.push(PartResult {
            part: name.to_string(),
            instances: 0,
            failures: 0,
        });
        self.parts.last_mut().unwrap()
    }

    fn check(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> Value) {
        let part = self.part(name);
        part.instances += 1;
        if !ok {
            part.failures += 1;
            if self.counterexample.is_none() {
                let mut ce = witness();
                if let Value::Object(map) = &mut ce {
                    map.insert("part".into(), json!(name));
                }
                self.counterexample = Some(ce);
            }
        }
    }

    fn finish(mut self, group: &str, lemma: LemmaId) -> LemmaReport {
        let checked: usize = self.parts.iter().map(|p| p.instances).sum();
        let failed = self.parts.iter().any(|p| p.failures > 0);
        let verdict = if failed {
            Verdict::Fail
        } else if checked == 0 {
            Verdict::Vacuous
        } else {
            Verdict::Pass
        };
        if verdict == Verdict::Vacuous && self.notes.is_empty() {
            self.notes
                .push("no instance satisfied the hypotheses".into());
        }
        LemmaReport {
            group: group.to_string(),
            lemma,
            verdict,
            note: (!self.notes.is_empty()).then(|| self.notes.join("; ")),
            parts: self.parts,
            counterexample: self.counterexample,
        }
    }
}

fn vacuous(group: &str, lemma: LemmaId, why: String) -> LemmaReport {
    LemmaReport {
        group: group.to_string(),
        lemma,
        verdict: Verdict::Vacuous,
        note: Some(format!("unmet hypothesis: {why}")),
        parts: Vec::new(),
        counterexample: None,
    }
}

fn ex(e: &Element) -> Value {
    json!(e.exps())
}

fn sub(s: &Subgroup) -> Value {
    Value::Array(s.generators().iter().map(ex).collect())
}

/// Data shared by all lemma checks on one group.
struct Ctx<'a> {
    g: &'a PcGroup,
    sp: SpecialSubgroups,
    whole: Subgroup,
    derived_rank: usize,
    derived_powerful: bool,
    witness: Option<Element>,
    candidates: Vec<Element>,
    config: LemmaConfig,
    kx_cache: HashMap<Element, ElementSet>,
}

impl<'a> Ctx<'a> {
    fn new(g: &'a PcGroup, config: LemmaConfig) -> Result<Self> {
        let sp = g.special_subgroups()?;
        let derived_rank = g.generator_rank(&sp.derived)?;
        let derived_powerful = g.is_powerful(&sp.derived)?;
        let witness = match g.witness_constructive_with(&sp) {
            Ok((x, _)) => Some(x),
            Err(Error::Precondition(_)) => None,
            Err(e) => return Err(e),
        };
        let mut candidates: Vec<Element> = witness.iter().cloned().collect();
        candidates.extend(g.generators());
        candidates.extend(sample_elements(g, config.seed, config.samples));
        let mut seen = ElementSet::empty(g);
        candidates.retain(|x| seen.insert(g, x));
        Ok(Ctx {
            g,
            whole: g.whole_group(),
            sp,
            derived_rank,
            derived_powerful,
            witness,
            candidates,
            config,
            kx_cache: HashMap::new(),
        })
    }

    fn kx(&mut self, x: &Element) -> Result<&ElementSet> {
        if !self.kx_cache.contains_key(x) {
            let set = self.g.kx_set(x, &self.whole)?;
            self.kx_cache.insert(x.clone(), set);
        }
        Ok(&self.kx_cache[x])
    }

    /// Normal subgroups of `G'` the covering proofs step through: the pc
    /// chief series cut down to `G'`, and `L >= N >= L^p >= N^p >= ...` for
    /// `L = G'` and each `N max_G G'`. Largest first.
    fn series(&self) -> Result<Vec<Subgroup>> {
        let g = self.g;
        let derived = &self.sp.derived;
        let mut out: Vec<Subgroup> = Vec::new();
        for i in 0..=g.rank() {
            let gi = g.close_owned((i..g.rank()).map(|k| g.generator(k)).collect())?;
            out.push(g.intersection(derived, &gi)?);
        }
        if !derived.is_trivial() {
            for n in g.maximal_normal_under(derived)? {
                let (mut l, mut n) = (derived.clone(), n);
                while !l.is_trivial() {
                    out.push(l.clone());
                    out.push(n.clone());
                    l = g.power_subgroup(&l, 1)?;
                    n = g.power_subgroup(&n, 1)?;
                }
            }
            if g.p() == 2 {
                out.push(g.join(&g.gamma(3)?, &self.sp.derived_p)?);
            }
        }
        out.sort_by(|a, b| {
            b.log_order()
                .cmp(&a.log_order())
                .then_with(|| a.generators().cmp(b.generators()))
        });
        out.dedup();
        Ok(out)
    }

    /// Pairs `N < L` of series members.
    fn pairs(&self) -> Result<Vec<(Subgroup, Subgroup)>> {
        let series = self.series()?;
        let mut out = Vec::new();
        for l in &series {
            for n in &series {
                if n.log_order() < l.log_order() && self.g.is_subgroup_of(n, l)? {
                    out.push((n.clone(), l.clone()));
                }
            }
        }
        Ok(out)
    }
}

fn sample_elements(g: &PcGroup, seed: u64, count: usize) -> Vec<Element> {
    let Ok(order) = usize::try_from(g.order()) else {
        return Vec::new();
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| g.unrank(rng.gen_range(0..order)))
        .collect()
}

/// `{a n : a in A, n in N}` restricted to the test `l in A N`.
fn in_product(g: &PcGroup, a: &ElementSet, n: &Subgroup, l: &Element) -> bool {
    a.iter(g).any(|k| g.member(n, &g.mul(&g.inv(&k), l)))
}

impl PcGroup {
    pub fn verify_lemma(
        &self,
        name: &str,
        id: LemmaId,
        config: LemmaConfig,
    ) -> Result<LemmaReport> {
        Ok(self.verify_lemmas(name, &[id], config)?.remove(0))
    }

    /// Runs several checks on one group, sharing the precomputed subgroups.
    pub fn verify_lemmas(
        &self,
        name: &str,
        ids: &[LemmaId],
        config: LemmaConfig,
    ) -> Result<Vec<LemmaReport>> {
        let mut ctx = Ctx::new(self, config)?;
        ids.iter()
            .map(|&id| {
                let report = match id {
                    LemmaId::Blackburn => lemma_blackburn(&ctx),
                    LemmaId::Powerful => lemma_powerful(&ctx),
                    LemmaId::Index2 => lemma_index2(&mut ctx),
                    LemmaId::Central => lemma_central(&ctx),
                    LemmaId::LN => lemma_ln(&mut ctx),
                    LemmaId::C => lemma_c(&ctx),
                    LemmaId::D => lemma_d(&ctx),
                    LemmaId::R => lemma_r(&ctx),
                    LemmaId::PropDR => lemma_prop_dr(&ctx),
                    LemmaId::HallPetrescu => lemma_hall_petrescu(&ctx),
                    LemmaId::Cyclic => lemma_cyclic(&ctx),
                }?;
                Ok(match report {
                    Ok(tally) => tally.finish(name, id),
                    Err(why) => vacuous(name, id, why),
                })
            })
            .collect()
    }

    /// Generators `a, b` of `H` and `(m, n, k)` with `k > 0`, `n >= m >= 2k`,
    /// `a^(p^m) = b^(p^(n+k)) = 1`, `[a, b] = b^(p^n)` and
    /// `|H| = p^(m+n+k)`, so the relations define `H`. Searched exhaustively.
    pub fn blackburn_pair(&self, h: &Subgroup) -> Result<Option<BlackburnPair>> {
        self.guard("generator pair search (|H|^2)", 2 * h.log_order())?;
        let elems = self.subgroup_elements(h)?;
        let logs: Vec<u32> = elems
            .iter()
            .map(|x| log_p(self.order_of(x), self.p()))
            .collect();
        let total = h.log_order() as u32;
        for (a, &m) in elems.iter().zip(&logs) {
            for (b, &nk) in elems.iter().zip(&logs) {
                if m + nk != total || m == 0 {
                    continue;
                }
                let c = self.comm(a, b);
                let mut bp = b.clone();
                for n in 0..nk {
                    if c == bp {
                        let k = nk - n;
                        if k > 0 && n >= m && m >= 2 * k && self.close([a, b])? == *h {
                            return Ok(Some((a.clone(), b.clone(), m, n, k)));
                        }
                        break;
                    }
                    bp = self.pow(&bp, i64::from(self.p()));
                }
            }
        }
        Ok(None)
    }
}

fn log_p(order: u128, p: u32) -> u32 {
    let mut k = 0;
    let mut x = order;
    while x > 1 {
        x /= u128::from(p);
        k += 1;
    }
    k
}

/// `(a, b, m, n, k)` as returned by [`PcGroup::blackburn_pair`].
pub type BlackburnPair = (Element, Element, u32, u32, u32);

type Outcome = Result<std::result::Result<Tally, String>>;

fn lemma_blackburn(ctx: &Ctx) -> Outcome {
    let g = ctx.g;
    if ctx.derived_rank > 2 {
        return Ok(Err(format!("d(G') = {} > 2", ctx.derived_rank)));
    }
    let mut t = Tally::new();
    let derived = &ctx.sp.derived;
    t.check(
        "G' powerful",
        ctx.derived_powerful,
        || json!({ "derived": sub(derived) }),
    );
    let second = g.commutator_subgroup(derived, derived)?;
    t.check(
        "G'' <= (G')^(p^2)",
        g.is_subgroup_of(&second, &ctx.sp.derived_p2)?,
        || json!({ "second_derived": sub(&second), "derived_p2": sub(&ctx.sp.derived_p2) }),
    );
    if g.is_abelian(derived)? {
        t.check("abelian or metacyclic", true, || Value::Null);
        t.notes.push("G' abelian".into());
    } else {
        let pair = g.blackburn_pair(derived)?;
        if let Some((a, b, m, n, k)) = &pair {
            t.notes.push(format!(
                "G' = <a, b> with a = {a}, b = {b}, (m, n, k) = ({m}, {n}, {k})"
            ));
        }
        t.check(
            "abelian or metacyclic",
            pair.is_some(),
            || json!({ "derived": sub(derived) }),
        );
    }
    Ok(Ok(t))
}

fn lemma_powerful(ctx: &Ctx) -> Outcome {
    let g = ctx.g;
    let whole = &ctx.whole;
    if !g.is_powerful(whole)? {
        return Ok(Err("G is not powerful".into()));
    }
    let mut t = Tally::new();
    let subgroups = if g.order() <= ctx.config.exhaustive_subgroups_up_to {
        t.notes.push("all subgroups".into());
        g.all_subgroups()?
    } else {
        t.notes.push("sampled subgroups".into());
        let mut subs = vec![
            g.trivial_subgroup(),
            whole.clone(),
            ctx.sp.derived.clone(),
            g.center()?,
        ];
        subs.push(g.frattini_rank(whole)?.0);
        for (i, x) in ctx.candidates.iter().enumerate() {
            subs.push(g.close([x])?);
            if let Some(y) = ctx.candidates.get(i + 1) {
                subs.push(g.close([x, y])?);
            }
        }
        subs
    };
    let mut gp = vec![whole.clone()];
    while !gp.last().unwrap().is_trivial() {
        gp.push(g.power_subgroup(gp.last().unwrap(), 1)?);
    }
    let d = g.generator_rank(whole)?;
    for h in &subgroups {
        let powerful = g.is_powerful(h)?;
        if d == 2 {
            t.check(
                "(ii) subgroups of a 2-generator powerful group are powerful",
                powerful,
                || json!({ "H": sub(h) }),
            );
        }
        if !powerful {
            continue;
        }
        let mut hp = h.clone();
        for (i, gpi) in gp.iter().enumerate() {
            let ok = g.is_subgroup_of(&hp, gpi)?
                && gpi.log_order() - hp.log_order() <= whole.log_order() - h.log_order();
            t.check(
                "(i) |G^(p^i) : H^(p^i)| <= |G : H|",
                ok,
                || json!({ "H": sub(h), "i": i }),
            );
            hp = g.power_subgroup(&hp, 1)?;
        }
    }
    Ok(Ok(t))
}

fn lemma_index2(ctx: &mut Ctx) -> Outcome {
    let g = ctx.g;
    let pairs = ctx.pairs()?;
    let mut t = Tally::new();
    for x in ctx.candidates.clone() {
        let kx = ctx.kx(&x)?.clone();
        for (n, l) in &pairs {
            let n_covered = g.subgroup_elements(n)?.iter().all(|y| kx.contains(g, y));
            if !n_covered {
                continue;
            }
            let l_elems = g.subgroup_elements(l)?;
            if !l_elems.iter().all(|y| in_product(g, &kx, n, y)) {
                continue;
            }
            let bad = l_elems.iter().find(|y| !kx.contains(g, y));
            t.check(
                "L subset of K_x(G)",
                bad.is_none(),
                || json!({ "x": ex(&x), "N": sub(n), "L": sub(l), "l": bad.map(ex) }),
            );
        }
    }
    Ok(Ok(t))
}

fn lemma_central(ctx: &Ctx) -> Outcome {
    let g = ctx.g;
    let pairs = ctx.pairs()?;
    let mut families: Vec<Vec<Element>> = g.generators().into_iter().map(|x| vec![x]).collect();
    families.push(g.generators());
    families.push(ctx.sp.c.generators().to_vec());
    families.push(ctx.sp.c_star.generators().to_vec());
    let mut t = Tally::new();
    for x in &ctx.candidates {
        for s in &families {
            let comms: Vec<Element> = s.iter().map(|y| g.comm(x, y)).collect();
            for (n, l) in &pairs {
                let l_elems = g.subgroup_elements(l)?;
                let centralised = l_elems
                    .iter()
                    .all(|y| s.iter().all(|z| g.member(n, &g.comm(y, z))));
                if !centralised {
                    continue;
                }
                let mut gens = n.generators().to_vec();
                gens.extend(comms.iter().cloned());
                if g.close_owned(gens)? != *l {
                    continue;
                }
                let mut sn_gens = n.generators().to_vec();
                sn_gens.extend(s.iter().cloned());
                let sn = g.close_owned(sn_gens)?;
                let mut image = ElementSet::empty(g);
                for y in g.subgroup_elements(&sn)? {
                    image.insert(g, &g.comm(x, &y));
                }
                let bad = l_elems.iter().find(|y| !in_product(g, &image, n, y));
                t.check("L/N inside K_xN(<S>N/N)", bad.is_none(), || {
                    json!({ "x": ex(x), "S": s.iter().map(ex).collect::<Vec<_>>(), "N": sub(n), "L": sub(l), "l": bad.map(ex) })
                });
            }
        }
    }
    Ok(Ok(t))
}

fn lemma_ln(ctx: &mut Ctx) -> Outcome {
    let g = ctx.g;
    let p = i64::from(g.p());
    let mut pairs = Vec::new();
    for (n, l) in ctx.pairs()? {
        if n.log_order() + 1 == l.log_order() && g.is_powerful(&l)? && g.generator_rank(&l)? <= 2 {
            pairs.push((n, l));
        }
    }
    let pool: Vec<Element> = if g.order() <= 64 {
        g.elements()?
    } else {
        let mut v = g.generators();
        v.extend(sample_elements(
            g,
            ctx.config.seed.wrapping_add(1),
            4 * ctx.config.samples,
        ));
        v
    };
    let elems = g.elements()?;
    let mut t = Tally::new();
    for (n, l) in &pairs {
        let mut lp = vec![l.clone()];
        let mut np = vec![n.clone()];
        while !lp.last().unwrap().is_trivial() {
            lp.push(g.power_subgroup(lp.last().unwrap(), 1)?);
            np.push(g.power_subgroup(np.last().unwrap(), 1)?);
        }
        let generates_mod = |c: &Element, top: &Subgroup, bottom: &Subgroup| {
            g.member(top, c) && !g.member(bottom, c)
        };
        for x in ctx.candidates.clone() {
            // (i): L/N = <[x,g]N> and [x,g,g] in N^p give the p^i-th power sections
            for y in &pool {
                let c = g.comm(&x, y);
                if !generates_mod(&c, l, n) || !g.member(&np[1], &g.comm(&c, y)) {
                    continue;
                }
                let mut yi = y.clone();
                for i in 1..lp.len() {
                    yi = g.pow(&yi, p);
                    let mut gens = np[i].generators().to_vec();
                    gens.push(g.comm(&x, &yi));
                    let ok = g.close_owned(gens)? == lp[i];
                    t.check(
                        "(i) L^(p^i)/N^(p^i) = <[x, g^(p^i)] N^(p^i)>",
                        ok,
                        || json!({ "x": ex(&x), "g": ex(y), "N": sub(n), "L": sub(l), "i": i }),
                    );
                }
            }
            // (ii)
            if !g.is_subgroup_of(&lp[1], n)? {
                continue;
            }
            let lp2 = lp.get(2).cloned().unwrap_or_else(|| g.trivial_subgroup());
            let found_g = elems.iter().find(|y| {
                let c = g.comm(&x, y);
                generates_mod(&c, l, n) && g.member(&np[1], &g.comm(&c, y))
            });
            let found_h = elems.iter().find(|y| {
                let c = g.comm(&x, y);
                let gen = if *n == lp[1] {
                    g.member(n, &c)
                } else {
                    generates_mod(&c, n, &lp[1])
                };
                gen && g.member(&lp2, &g.comm(&c, y))
            });
            if let (Some(gg), Some(hh)) = (found_g, found_h) {
                let kx = ctx.kx(&x)?;
                let bad = g
                    .subgroup_elements(l)?
                    .into_iter()
                    .find(|y| !kx.contains(g, y));
                t.check("(ii) L subset of K_x(G)", bad.is_none(), || {
                    json!({ "x": ex(&x), "g": ex(gg), "h": ex(hh), "N": sub(n), "L": sub(l), "l": bad.as_ref().map(ex) })
                });
            }
        }
    }
    Ok(Ok(t))
}

fn lemma_c(ctx: &Ctx) -> Outcome {
    let g = ctx.g;
    if !ctx.derived_powerful {
        return Ok(Err("G' is not powerful".into()));
    }
    let mut t = Tally::new();
    let mut dp = vec![ctx.sp.derived.clone()];
    while !dp.last().unwrap().is_trivial() {
        dp.push(g.power_subgroup(dp.last().unwrap(), 1)?);
    }
    let mut cp = vec![ctx.sp.c.clone()];
    while !cp.last().unwrap().is_trivial() {
        cp.push(g.power_subgroup(cp.last().unwrap(), 1)?);
    }
    let trivial = g.trivial_subgroup();
    let dpow = |i: usize| dp.get(i).unwrap_or(&trivial);
    for (i, di) in dp.iter().enumerate() {
        for (j, cj) in cp.iter().enumerate() {
            let lhs = g.commutator_subgroup(di, cj)?;
            t.check(
                "(i) [(G')^(p^i), C^(p^j)] <= (G')^(p^(i+j+1))",
                g.is_subgroup_of(&lhs, dpow(i + j + 1))?,
                || json!({ "i": i, "j": j }),
            );
        }
    }
    for (j, cj) in cp.iter().enumerate() {
        let lhs = g.commutator_subgroup(&ctx.whole, cj)?;
        t.check(
            "(ii) [G, C^(p^j)] <= (G')^(p^j)",
            g.is_subgroup_of(&lhs, dpow(j))?,
            || json!({ "j": j }),
        );
    }
    if ctx.derived_rank <= 2 {
        let index = ctx.whole.log_order() - ctx.sp.c.log_order();
        t.check(
            "(iii) |G : C| <= p",
            index <= 1,
            || json!({ "C": sub(&ctx.sp.c) }),
        );
    }
    Ok(Ok(t))
}

fn lemma_d(ctx: &Ctx) -> Outcome {
    let g = ctx.g;
    if ctx.sp.derived.is_trivial() {
        return Ok(Err("G is abelian".into()));
    }
    let mut t = Tally::new();
    let d_union = ctx.sp.d_union()?;
    let derived = &ctx.sp.derived;
    let rows = g.all_kx_sets(|x, kx| -> Result<(Element, bool)> {
        let full = g.close_owned(kx.to_vec(g))? == *derived;
        Ok((x.clone(), full == !d_union.contains(g, x)))
    })?;
    for row in rows {
        let (x, ok) = row?;
        t.check("[x,G] = G' iff x not in D", ok, || json!({ "x": ex(&x) }));
    }
    if ctx.derived_rank <= 2 {
        let phi = g.frattini_rank(&ctx.whole)?.0;
        for (tt, dt) in ctx.sp.d_of()? {
            let ok = g.is_subgroup_of(&phi, dt)? && g.is_subgroup_of(dt, &ctx.sp.c)?;
            t.check(
                "(i) Phi(G) <= D(T) <= C",
                ok,
                || json!({ "T": sub(tt), "D(T)": sub(dt) }),
            );
            let even = (ctx.whole.log_order() - dt.log_order()).is_multiple_of(2);
            t.check(
                "(i) log_p |G : D(T)| even",
                even,
                || json!({ "T": sub(tt), "D(T)": sub(dt) }),
            );
        }
        t.check(
            "(ii) D proper subset of G",
            (d_union.len() as u128) < g.order(),
            || json!({}),
        );
    }
    Ok(Ok(t))
}

fn lemma_r(ctx: &Ctx) -> Outcome {
    let g = ctx.g;
    if g.p() != 2 {
        return Ok(Err("p != 2".into()));
    }
    if ctx.derived_rank > 2 {
        return Ok(Err(format!("d(G') = {} > 2", ctx.derived_rank)));
    }
    if ctx.sp.c != ctx.whole {
        return Ok(Err("C != G".into()));
    }
    if ctx.sp.derived_p.is_trivial() {
        return Ok(Err("(G')^2 = 1".into()));
    }
    let mut t = Tally::new();
    let derived_2 = &ctx.sp.derived_p;
    let g2 = g.power_subgroup(&ctx.whole, 1)?;
    let gg2 = g.commutator_subgroup(&ctx.whole, &g2)?;
    t.check(
        "(i) [G, G^2] = (G')^2",
        gg2 == *derived_2,
        || json!({ "[G,G^2]": sub(&gg2) }),
    );
    let r_union = ctx.sp.r_union()?;
    let g2_elems = g.subgroup_elements(&g2)?;
    let rows: Vec<Result<(Element, bool)>> = g
        .elements()?
        .par_iter()
        .map(|x| {
            let comms: Vec<Element> = g2_elems.iter().map(|s| g.comm(x, s)).collect();
            let full = g.close_owned(comms)? == *derived_2;
            Ok((x.clone(), full == !r_union.contains(g, x)))
        })
        .collect();
    for row in rows {
        let (x, ok) = row?;
        t.check(
            "(ii) [x,G^2] = (G')^2 iff x not in R",
            ok,
            || json!({ "x": ex(&x) }),
        );
    }
    let family = ctx.sp.r_of()?;
    for (u, ru) in family {
        let ok = g.is_subgroup_of(&g2, ru)? && *ru != ctx.whole;
        t.check(
            "(iii) G^2 <= R(U) < G",
            ok,
            || json!({ "U": sub(u), "R(U)": sub(ru) }),
        );
    }
    for (a, (u, ru)) in family.iter().enumerate() {
        for (b, (v, rv)) in family.iter().enumerate() {
            if a == b {
                continue;
            }
            let meet = g.intersection(ru, rv)?;
            for (w, rw) in family {
                t.check(
                    "(iv) R(U) n R(V) <= R(W)",
                    g.is_subgroup_of(&meet, rw)?,
                    || json!({ "U": sub(u), "V": sub(v), "W": sub(w) }),
                );
            }
        }
    }
    Ok(Ok(t))
}

fn lemma_prop_dr(ctx: &Ctx) -> Outcome {
    let g = ctx.g;
    if g.p() != 2 {
        return Ok(Err("p != 2".into()));
    }
    if ctx.derived_rank != 2 {
        return Ok(Err(format!("d(G') = {} != 2", ctx.derived_rank)));
    }
    if ctx.sp.c != ctx.whole {
        return Ok(Err("C != G".into()));
    }
    let mut t = Tally::new();
    let derived = &ctx.sp.derived;
    let derived_2 = &ctx.sp.derived_p;
    let g2_elems = g.subgroup_elements(&g.power_subgroup(&ctx.whole, 1)?)?;
    let elems = g.elements()?;
    let mut found = None;
    for x in &elems {
        let kx = g.kx_set(x, &ctx.whole)?;
        if g.close_owned(kx.to_vec(g))? != *derived {
            continue;
        }
        let comms: Vec<Element> = g2_elems.iter().map(|s| g.comm(x, s)).collect();
        if g.close_owned(comms)? == *derived_2 {
            found = Some(x.clone());
            break;
        }
    }
    if let Some(x) = &found {
        t.notes.push(format!("x = {x}"));
    }
    t.check(
        "exists x: [x,G] = G' and [x,G^2] = (G')^2",
        found.is_some(),
        || json!({}),
    );
    if let (Ok(d), Ok(r)) = (ctx.sp.d_union(), ctx.sp.r_union()) {
        let mut dr = d.clone();
        dr.union_with(r);
        t.check(
            "D u R proper subset of G",
            (dr.len() as u128) < g.order(),
            || json!({}),
        );
    }
    Ok(Ok(t))
}

fn lemma_hall_petrescu(ctx: &Ctx) -> Outcome {
    let g = ctx.g;
    if g.p() == 2 {
        return Ok(Err("p = 2".into()));
    }
    if !ctx.derived_powerful {
        return Ok(Err("G' is not powerful".into()));
    }
    let mut t = Tally::new();
    let p = i64::from(g.p());
    let p2 = &ctx.sp.derived_p2;
    let c_elems = g.subgroup_elements(&ctx.sp.c)?;
    let mut xs: Vec<Element> = ctx.witness.iter().cloned().collect();
    xs.extend(
        g.elements()?
            .into_iter()
            .filter(|x| !g.member(&ctx.sp.c, x)),
    );
    if xs.is_empty() {
        xs = ctx.candidates.clone();
    }
    let rows: Vec<Option<(Element, Element)>> = xs
        .par_iter()
        .map(|x| {
            c_elems
                .iter()
                .find(|u| {
                    let lhs = g.pow(&g.comm(x, u), p);
                    let rhs = g.comm(x, &g.pow(u, p));
                    !g.member(p2, &g.mul(&g.inv(&rhs), &lhs))
                })
                .map(|u| (x.clone(), u.clone()))
        })
        .collect();
    for row in rows {
        t.check("[x,u]^p = [x,u^p] mod (G')^(p^2)", row.is_none(), || {
            let (x, u) = row.clone().unwrap();
            json!({ "x": ex(&x), "u": ex(&u) })
        });
    }
    Ok(Ok(t))
}

fn lemma_cyclic(ctx: &Ctx) -> Outcome {
    let g = ctx.g;
    if ctx.derived_rank != 1 {
        return Ok(Err(format!(
            "d(G') = {}, G' is not a nontrivial cyclic group",
            ctx.derived_rank
        )));
    }
    let mut t = Tally::new();
    let sp = &ctx.sp;
    let cstar_index = ctx.whole.log_order() - sp.c_star.log_order();
    t.check(
        "|G : C*| <= p",
        cstar_index <= 1,
        || json!({ "C*": sub(&sp.c_star) }),
    );
    let gc = g.commutator_subgroup(&ctx.whole, &sp.c_star)?;
    t.check(
        "G' = [G, C*]",
        gc == sp.derived,
        || json!({ "[G,C*]": sub(&gc) }),
    );
    let cstar = g.with_inverses(g.subgroup_elements(&sp.c_star)?);
    let derived_set = g.element_set(&sp.derived)?;
    let rows = g.all_kx_sets(|x, kx| {
        let y = g.cyclic_partner(sp, x, &cstar)?;
        let c = g.comm(x, &y);
        let deep = g.member(&sp.derived_p2, &g.comm(&c, &y));
        Some((x.clone(), y, deep, kx == derived_set))
    })?;
    let mut any = false;
    for (x, y, deep, covers) in rows.into_iter().flatten() {
        any = true;
        t.check(
            "[x,y,y] in (G')^(p^2)",
            deep,
            || json!({ "x": ex(&x), "y": ex(&y) }),
        );
        t.check(
            "K_x(G) = G'",
            covers,
            || json!({ "x": ex(&x), "y": ex(&y) }),
        );
    }
    t.check("some x admits y in C* with G' = <[x,y]>", any, || json!({}));
    Ok(Ok(t))
}
