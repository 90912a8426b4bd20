//! Built-in group families and the default corpus.
//!
//! A family spec is `name:arg,arg,...`; specs joined by `*` denote a direct
//! product, e.g. `dihedral:16*quaternion:16`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::concrete::{
    presentation_from_sequence, ConcreteGroup, MatrixGroup, Metacyclic, PermGroup,
};
use crate::error::{Error, Result};
use crate::pc::{is_prime, PcGroup, PcPresentation, MAX_PRIME};

/// Parameters of a built-in group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// `C_{p^k}`.
    Cyclic {
        p: u32,
        k: u32,
    },
    /// `C_p^r`.
    ElemAbelian {
        p: u32,
        r: u32,
    },
    Dihedral {
        order: u64,
    },
    Quaternion {
        order: u64,
    },
    Semidihedral {
        order: u64,
    },
    /// `p^(1+2)` with `[g2, g1] = g3`.
    Heisenberg {
        p: u32,
    },
    /// `p^(1+2r)`; the minus type has `x1^p = z` (and `y1^2 = z` when p = 2).
    Extraspecial {
        p: u32,
        r: u32,
        minus: bool,
    },
    Unitriangular3 {
        p: u32,
    },
    Unitriangular4 {
        p: u32,
    },
    /// `C_p wr C_p`.
    WreathCyclic {
        p: u32,
    },
    /// `<a, b | a^(p^m), b^(p^(n+k)), [a, b] = b^(p^n)>` with `k > 0`, `n >= m >= 2k`.
    BlackburnMetacyclic {
        p: u32,
        m: u32,
        n: u32,
        k: u32,
    },
    /// `(Z/p^e)^d` extended by a single unipotent Jordan block.
    JordanSemidirect {
        p: u32,
        e: u32,
        d: u32,
    },
    Product(Vec<FamilySpec>),
}

pub const FAMILY_NAMES: &[&str] = &[
    "cyclic",
    "elem_abelian",
    "dihedral",
    "quaternion",
    "semidihedral",
    "heisenberg",
    "extraspecial",
    "unitriangular3",
    "unitriangular4",
    "wreath_cyclic",
    "blackburn_metacyclic",
    "jordan_semidirect",
];

/// Invariants recorded with a corpus entry and re-derived when it is built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedInvariants {
    /// `log_p |G|`.
    pub log_order: usize,
    pub class: usize,
    /// `d(G')`.
    pub derived_rank: usize,
    pub derived_powerful: bool,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub family: FamilySpec,
    pub presentation: PcPresentation,
    pub expected: ExpectedInvariants,
}

impl CorpusEntry {
    pub fn group(&self) -> Result<PcGroup> {
        PcGroup::new(self.presentation.clone())
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        match self {
            Cyclic { p, k } => write!(f, "cyclic:{p},{k}"),
            ElemAbelian { p, r } => write!(f, "elem_abelian:{p},{r}"),
            Dihedral { order } => write!(f, "dihedral:{order}"),
            Quaternion { order } => write!(f, "quaternion:{order}"),
            Semidihedral { order } => write!(f, "semidihedral:{order}"),
            Heisenberg { p } => write!(f, "heisenberg:{p}"),
            Extraspecial { p, r, minus } => {
                write!(f, "extraspecial:{p},{r},{}", if *minus { '-' } else { '+' })
            }
            Unitriangular3 { p } => write!(f, "unitriangular3:{p}"),
            Unitriangular4 { p } => write!(f, "unitriangular4:{p}"),
            WreathCyclic { p } => write!(f, "wreath_cyclic:{p}"),
            BlackburnMetacyclic { p, m, n, k } => write!(f, "blackburn_metacyclic:{p},{m},{n},{k}"),
            JordanSemidirect { p, e, d } => write!(f, "jordan_semidirect:{p},{e},{d}"),
            Product(factors) => {
                for (i, x) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let factors: Vec<&str> = s.split('*').map(str::trim).collect();
        if factors.len() > 1 {
            return factors
                .iter()
                .map(|f| parse_single(f))
                .collect::<Result<Vec<_>>>()
                .map(FamilySpec::Product);
        }
        parse_single(s.trim())
    }
}

fn parse_single(s: &str) -> Result<FamilySpec> {
    let (name, args) = s.split_once(':').unwrap_or((s, ""));
    let args: Vec<&str> = if args.is_empty() {
        Vec::new()
    } else {
        args.split(',').map(str::trim).collect()
    };
    let bad = |msg: &str| Error::input(format!("family `{s}`: {msg}"));
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(bad(&format!(
                "expected {n} parameter(s), got {}",
                args.len()
            )))
        }
    };
    let num = |i: usize| -> Result<u64> {
        args[i].parse::<u64>().map_err(|_| {
            bad(&format!(
                "parameter `{}` is not a non-negative integer",
                args[i]
            ))
        })
    };
    let small = |i: usize| -> Result<u32> {
        u32::try_from(num(i)?).map_err(|_| bad("parameter out of range"))
    };
    use FamilySpec::*;
    let spec = match name {
        "cyclic" => {
            arity(2)?;
            Cyclic {
                p: small(0)?,
                k: small(1)?,
            }
        }
        "elem_abelian" => {
            arity(2)?;
            ElemAbelian {
                p: small(0)?,
                r: small(1)?,
            }
        }
        "dihedral" => {
            arity(1)?;
            Dihedral { order: num(0)? }
        }
        "quaternion" => {
            arity(1)?;
            Quaternion { order: num(0)? }
        }
        "semidihedral" => {
            arity(1)?;
            Semidihedral { order: num(0)? }
        }
        "heisenberg" => {
            arity(1)?;
            Heisenberg { p: small(0)? }
        }
        "extraspecial" => {
            arity(3)?;
            let minus = match args[2] {
                "+" => false,
                "-" => true,
                other => return Err(bad(&format!("sign must be `+` or `-`, got `{other}`"))),
            };
            Extraspecial {
                p: small(0)?,
                r: small(1)?,
                minus,
            }
        }
        "unitriangular3" => {
            arity(1)?;
            Unitriangular3 { p: small(0)? }
        }
        "unitriangular4" => {
            arity(1)?;
            Unitriangular4 { p: small(0)? }
        }
        "wreath_cyclic" => {
            arity(1)?;
            WreathCyclic { p: small(0)? }
        }
        "blackburn_metacyclic" => {
            arity(4)?;
            BlackburnMetacyclic {
                p: small(0)?,
                m: small(1)?,
                n: small(2)?,
                k: small(3)?,
            }
        }
        "jordan_semidirect" => {
            arity(3)?;
            JordanSemidirect {
                p: small(0)?,
                e: small(1)?,
                d: small(2)?,
            }
        }
        _ => {
            return Err(Error::input(format!(
                "unknown family `{name}`; known families: {}",
                FAMILY_NAMES.join(", ")
            )))
        }
    };
    Ok(spec)
}

fn check_prime(p: u32) -> Result<()> {
    if p > MAX_PRIME || !is_prime(p) {
        return Err(Error::input(format!("p = {p} is not a supported prime")));
    }
    Ok(())
}

fn log2_exact(order: u64, min: u32) -> Result<usize> {
    if !order.is_power_of_two() || order.trailing_zeros() < min {
        return Err(Error::input(format!(
            "order {order} must be a power of 2 that is at least {}",
            1u64 << min
        )));
    }
    Ok(order.trailing_zeros() as usize)
}

fn check_rank(p: u32, rank: usize) -> Result<()> {
    // keeps every family within u128 orders and the tabulation budget
    if rank > 64 || (p as f64).log2() * rank as f64 > 100.0 {
        return Err(Error::input("family instance is too large"));
    }
    Ok(())
}

/// Binary digits of `v` as a word over `g_{offset+1}, g_{offset+2}, ...`.
fn binary_word(rank: usize, offset: usize, v: u64) -> Vec<u8> {
    let mut w = vec![0; rank];
    for b in 0..64 {
        if v >> b & 1 == 1 {
            w[offset + b] = 1;
        }
    }
    w
}

/// `<s, r>` with `|r| = 2^(k-1)`, `r^s = r^alpha`, `s^2 = r^c`; generators
/// `s, r, r^2, r^4, ...`.
fn dihedral_type(k: usize, alpha: u64, c: u64) -> Result<PcPresentation> {
    let modulus = 1u64 << (k - 1);
    let mut pres = PcPresentation::new(2, k)?;
    pres.set_power(0, binary_word(k, 1, c % modulus))?;
    for i in 1..k {
        if i + 1 < k {
            let mut w = vec![0; k];
            w[i + 1] = 1;
            pres.set_power(i, w)?;
        }
        // [r^m, s] = r^(m (alpha - 1))
        let m = 1u64 << (i - 1);
        let v = (m * ((alpha + modulus - 1) % modulus)) % modulus;
        pres.set_commutator(i, 0, binary_word(k, 1, v))?;
    }
    Ok(pres)
}

fn unit_word(rank: usize, i: usize) -> Vec<u8> {
    let mut w = vec![0; rank];
    w[i] = 1;
    w
}

fn binom_mod(n: u64, k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut c = vec![0u64; (k + 1) as usize];
    c[0] = 1;
    for row in 1..=n {
        for j in (1..=k.min(row) as usize).rev() {
            c[j] = (c[j] + c[j - 1]) % p;
        }
    }
    c[k as usize]
}

/// Builds a presentation for the spec, without checking invariants.
pub fn build_presentation(spec: &FamilySpec) -> Result<PcPresentation> {
    use FamilySpec::*;
    match *spec {
        Cyclic { p, k } => {
            check_prime(p)?;
            check_rank(p, k as usize)?;
            let n = k as usize;
            let mut pres = PcPresentation::new(p, n)?;
            for i in 0..n.saturating_sub(1) {
                pres.set_power(i, unit_word(n, i + 1))?;
            }
            Ok(pres)
        }
        ElemAbelian { p, r } => {
            check_prime(p)?;
            check_rank(p, r as usize)?;
            PcPresentation::new(p, r as usize)
        }
        Dihedral { order } => {
            let k = log2_exact(order, 3)?;
            check_rank(2, k)?;
            dihedral_type(k, (1 << (k - 1)) - 1, 0)
        }
        Quaternion { order } => {
            let k = log2_exact(order, 3)?;
            check_rank(2, k)?;
            dihedral_type(k, (1 << (k - 1)) - 1, 1 << (k - 2))
        }
        Semidihedral { order } => {
            let k = log2_exact(order, 4)?;
            check_rank(2, k)?;
            dihedral_type(k, (1 << (k - 2)) - 1, 0)
        }
        Heisenberg { p } => {
            check_prime(p)?;
            let mut pres = PcPresentation::new(p, 3)?;
            pres.set_commutator(1, 0, unit_word(3, 2))?;
            Ok(pres)
        }
        Extraspecial { p, r, minus } => {
            check_prime(p)?;
            if r == 0 {
                return Err(Error::input("extraspecial groups need r >= 1"));
            }
            let n = 2 * r as usize + 1;
            check_rank(p, n)?;
            let z = n - 1;
            let mut pres = PcPresentation::new(p, n)?;
            for i in 0..r as usize {
                pres.set_commutator(2 * i + 1, 2 * i, unit_word(n, z))?;
            }
            if minus {
                pres.set_power(0, unit_word(n, z))?;
                if p == 2 {
                    pres.set_power(1, unit_word(n, z))?;
                }
            }
            Ok(pres)
        }
        Unitriangular3 { p } => {
            check_prime(p)?;
            check_rank(p, 3)?;
            let g = MatrixGroup {
                dim: 3,
                modulus: u64::from(p),
            };
            let seq = [(0, 1), (1, 2), (0, 2)].map(|(i, j)| g.elementary(i, j, 1));
            presentation_from_sequence(&g, p, &seq)
        }
        Unitriangular4 { p } => {
            check_prime(p)?;
            check_rank(p, 6)?;
            let g = MatrixGroup {
                dim: 4,
                modulus: u64::from(p),
            };
            let seq = [(0, 1), (1, 2), (2, 3), (0, 2), (1, 3), (0, 3)]
                .map(|(i, j)| g.elementary(i, j, 1));
            presentation_from_sequence(&g, p, &seq)
        }
        WreathCyclic { p } => {
            check_prime(p)?;
            check_rank(p, p as usize + 1)?;
            let q = p as usize;
            let g = PermGroup { degree: q * q };
            // point b*p + j: position j of block b
            let sigma: Vec<u32> = (0..q * q)
                .map(|x| (((x / q + 1) % q) * q + x % q) as u32)
                .collect();
            let base = |coeffs: &[u64]| -> Vec<u32> {
                (0..q * q)
                    .map(|x| ((x / q) * q + (x % q + coeffs[x / q] as usize) % q) as u32)
                    .collect()
            };
            let mut seq = vec![sigma];
            for k in 0..q as u64 {
                // (x - 1)^k e_0 in F_p[x] / (x^p - 1)
                let coeffs: Vec<u64> = (0..q as u64)
                    .map(|i| {
                        let c = binom_mod(k, i, u64::from(p));
                        if (k - i.min(k)) % 2 == 1 {
                            (u64::from(p) - c) % u64::from(p)
                        } else {
                            c
                        }
                    })
                    .collect();
                seq.push(base(&coeffs));
            }
            presentation_from_sequence(&g, p, &seq)
        }
        BlackburnMetacyclic { p, m, n, k } => {
            check_prime(p)?;
            if k == 0 || n < m || m < 2 * k {
                return Err(Error::input(format!(
                    "blackburn_metacyclic needs k > 0 and n >= m >= 2k, got m={m}, n={n}, k={k}"
                )));
            }
            check_rank(p, (m + n + k) as usize)?;
            let g = Metacyclic::new(u64::from(p), m, n, k);
            let mut seq = Vec::new();
            for s in 0..m {
                seq.push(g.pow(&(1, 0), u64::from(p).pow(s)));
            }
            for s in 0..n + k {
                seq.push(g.pow(&(0, 1), u64::from(p).pow(s)));
            }
            presentation_from_sequence(&g, p, &seq)
        }
        JordanSemidirect { p, e, d } => {
            check_prime(p)?;
            if e == 0 || d < 2 {
                return Err(Error::input("jordan_semidirect needs e >= 1 and d >= 2"));
            }
            let modulus = u64::from(p)
                .checked_pow(e)
                .ok_or_else(|| Error::input("jordan_semidirect modulus overflows"))?;
            let dim = d as usize + 1;
            let g = MatrixGroup { dim, modulus };
            // affine maps v -> J v + t as (d+1)x(d+1) matrices, J = I + superdiagonal
            let mut jordan = g.unit();
            for i in 0..d as usize - 1 {
                jordan[i * dim + i + 1] = 1;
            }
            let mut top = Vec::new();
            let mut x = jordan;
            while x != g.unit() {
                top.push(x.clone());
                x = g.pow(&x, u64::from(p));
                if top.len() > 64 {
                    return Err(Error::input("jordan_semidirect instance is too large"));
                }
            }
            let mut seq = top;
            for a in 0..e {
                for i in (0..d as usize).rev() {
                    seq.push(g.elementary(i, d as usize, u64::from(p).pow(a)));
                }
            }
            check_rank(p, seq.len())?;
            presentation_from_sequence(&g, p, &seq)
        }
        Product(ref factors) => {
            let Some((first, rest)) = factors.split_first() else {
                return Err(Error::input("empty direct product"));
            };
            let mut pres = build_presentation(first)?;
            for f in rest {
                pres = pres.direct_product(&build_presentation(f)?)?;
            }
            check_rank(pres.p(), pres.rank())?;
            Ok(pres)
        }
    }
}

/// Invariants predicted from the family parameters.
pub fn expected_invariants(spec: &FamilySpec) -> Result<ExpectedInvariants> {
    use FamilySpec::*;
    let inv = |log_order: usize, class: usize, derived_rank: usize| ExpectedInvariants {
        log_order,
        class,
        derived_rank,
        derived_powerful: true,
    };
    Ok(match *spec {
        Cyclic { k, .. } => inv(k as usize, usize::from(k > 0), 0),
        ElemAbelian { r, .. } => inv(r as usize, usize::from(r > 0), 0),
        Dihedral { order } | Quaternion { order } => {
            let k = log2_exact(order, 3)?;
            inv(k, k - 1, 1)
        }
        Semidihedral { order } => {
            let k = log2_exact(order, 4)?;
            inv(k, k - 1, 1)
        }
        Heisenberg { .. } | Unitriangular3 { .. } => inv(3, 2, 1),
        Extraspecial { r, .. } => inv(2 * r as usize + 1, 2, 1),
        Unitriangular4 { .. } => inv(6, 3, 3),
        WreathCyclic { p } => inv(p as usize + 1, p as usize, p as usize - 1),
        BlackburnMetacyclic { m, n, k, .. } => inv((m + n + k) as usize, 2, 1),
        JordanSemidirect { p, e, d } => {
            // |J| is the least p^s with p^e | binom(p^s, i) for 0 < i < d
            let modulus = u64::from(p).pow(e);
            let mut s = 0;
            while (1..u64::from(d))
                .any(|i| !binom_exact(u64::from(p).pow(s), i).is_multiple_of(u128::from(modulus)))
            {
                s += 1;
            }
            inv((e * d + s) as usize, d as usize, d as usize - 1)
        }
        Product(ref factors) => {
            let parts = factors
                .iter()
                .map(expected_invariants)
                .collect::<Result<Vec<_>>>()?;
            ExpectedInvariants {
                log_order: parts.iter().map(|x| x.log_order).sum(),
                class: parts.iter().map(|x| x.class).max().unwrap_or(0),
                derived_rank: parts.iter().map(|x| x.derived_rank).sum(),
                derived_powerful: parts.iter().all(|x| x.derived_powerful),
            }
        }
    })
}

fn binom_exact(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

/// Recomputes the invariants of a group.
pub fn measure_invariants(g: &PcGroup) -> Result<ExpectedInvariants> {
    let derived = g.derived_subgroup()?;
    Ok(ExpectedInvariants {
        log_order: g.rank(),
        class: g.nilpotency_class()?,
        derived_rank: g.generator_rank(&derived)?,
        derived_powerful: g.is_powerful(&derived)?,
    })
}

/// Builds a family instance and checks it against its predicted invariants.
pub fn build_family(spec: &FamilySpec) -> Result<CorpusEntry> {
    let presentation = build_presentation(spec)?;
    let expected = expected_invariants(spec)?;
    let g = PcGroup::new(presentation.clone())
        .map_err(|e| Error::InvariantViolation(format!("{spec}: {e}")))?;
    let measured = measure_invariants(&g)?;
    if measured != expected {
        return Err(Error::InvariantViolation(format!(
            "{spec}: expected {expected:?}, measured {measured:?}"
        )));
    }
    Ok(CorpusEntry {
        name: spec.to_string(),
        family: spec.clone(),
        presentation,
        expected,
    })
}

/// Parses and builds `name:args`.
pub fn build_family_str(spec: &str) -> Result<CorpusEntry> {
    build_family(&spec.parse()?)
}

/// The built-in corpus, in a fixed order.
pub const DEFAULT_CORPUS: &[&str] = &[
    "cyclic:2,3",
    "cyclic:3,2",
    "cyclic:5,2",
    "elem_abelian:2,3",
    "elem_abelian:3,2",
    "dihedral:8",
    "dihedral:16",
    "dihedral:32",
    "dihedral:64",
    "dihedral:128",
    "dihedral:256",
    "dihedral:512",
    "quaternion:8",
    "quaternion:16",
    "quaternion:32",
    "quaternion:64",
    "quaternion:128",
    "quaternion:256",
    "quaternion:512",
    "semidihedral:16",
    "semidihedral:32",
    "semidihedral:64",
    "semidihedral:128",
    "semidihedral:256",
    "semidihedral:512",
    "heisenberg:3",
    "heisenberg:5",
    "extraspecial:2,2,+",
    "extraspecial:2,2,-",
    "extraspecial:3,1,-",
    "extraspecial:3,2,+",
    "extraspecial:5,1,+",
    "unitriangular3:3",
    "unitriangular4:2",
    "unitriangular4:3",
    "wreath_cyclic:2",
    "wreath_cyclic:3",
    "blackburn_metacyclic:2,2,2,1",
    "blackburn_metacyclic:2,2,3,1",
    "blackburn_metacyclic:2,4,4,2",
    "blackburn_metacyclic:3,2,2,1",
    "blackburn_metacyclic:3,2,3,1",
    "jordan_semidirect:2,1,3",
    "jordan_semidirect:2,2,3",
    "dihedral:16*dihedral:8",
    "dihedral:16*dihedral:16",
    "quaternion:16*dihedral:16",
];

pub fn default_corpus() -> Result<Vec<CorpusEntry>> {
    DEFAULT_CORPUS.iter().map(|s| build_family_str(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trip() {
        for s in DEFAULT_CORPUS {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), *s);
        }
    }

    #[test]
    fn bad_specs() {
        assert!("dihedral:12".parse::<FamilySpec>().is_ok());
        assert!(build_family_str("dihedral:12").is_err());
        assert!(build_family_str("dihedral:4").is_err());
        assert!(build_family_str("blackburn_metacyclic:3,1,2,1").is_err());
        assert!(build_family_str("blackburn_metacyclic:3,2,2,0").is_err());
        assert!(build_family_str("cyclic:4,2").is_err());
        assert!("klein:2".parse::<FamilySpec>().is_err());
        assert!("heisenberg:3,3".parse::<FamilySpec>().is_err());
        assert!("extraspecial:3,1,x".parse::<FamilySpec>().is_err());
        assert!(build_family_str("dihedral:8*heisenberg:3").is_err());
    }

    #[test]
    fn dihedral_8_matches_text() {
        let e = build_family_str("dihedral:8").unwrap();
        let text = super::super::format::serialize_presentation(&e.presentation);
        assert_eq!(text, "pcgroup p=2 n=3\npow g2 = g3\ncomm g2 g1 = g3\n");
    }

    #[test]
    fn binomials() {
        assert_eq!(binom_mod(4, 2, 5), 1);
        assert_eq!(binom_mod(3, 1, 3), 0);
        assert_eq!(binom_exact(8, 3), 56);
    }
}
