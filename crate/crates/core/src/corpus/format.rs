//! The `pcgroup` text format.
//!
//! ```text
//! pcgroup p=2 n=3
//! pow g2 = g3
//! comm g2 g1 = g3
//! ```
//!
//! Relation words are `1` or `*`-joined letters `g<k>^<e>` with strictly
//! increasing `k` and `0 < e < p` (`^1` may be omitted). Omitted relations
//! are trivial and `#` starts a comment. The header may carry a trailing
//! `format_version=1`.

use crate::error::{Error, Result};
use crate::pc::{is_prime, PcPresentation, MAX_PRIME};

pub const FORMAT_VERSION: u32 = 1;

struct Cursor<'a> {
    line: usize,
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(line: usize, src: &'a str) -> Self {
        Cursor {
            line,
            chars: src.chars().collect(),
            pos: 0,
            _src: src,
        }
    }

    fn err(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: column + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn word(&mut self) -> (usize, String) {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        (start, self.chars[start..self.pos].iter().collect())
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        let (col, w) = self.word();
        if w != kw {
            return Err(self.err(
                col,
                format!("expected `{kw}`, found `{}`", self.describe(col, &w)),
            ));
        }
        Ok(())
    }

    fn expect_char(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        match self.chars.get(self.pos) {
            Some(&x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(&x) => Err(self.err(self.pos, format!("expected `{c}`, found `{x}`"))),
            None => Err(self.err(self.pos, format!("expected `{c}`, found end of line"))),
        }
    }

    fn number(&mut self) -> Result<(usize, u64)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        if digits.is_empty() {
            return Err(self.err(start, "expected a number"));
        }
        digits
            .parse()
            .map(|v| (start, v))
            .map_err(|_| self.err(start, "number out of range"))
    }

    /// `g<k>`, returned 0-based.
    fn generator(&mut self, rank: usize) -> Result<(usize, usize)> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) != Some(&'g') {
            return Err(self.err(start, "expected a generator `g<k>`"));
        }
        self.pos += 1;
        if !self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            return Err(self.err(start, "expected a generator `g<k>`"));
        }
        let (_, k) = self.number()?;
        if k == 0 || k as usize > rank {
            return Err(self.err(start, format!("generator g{k} out of range 1..={rank}")));
        }
        Ok((start, k as usize - 1))
    }

    fn key_value(&mut self, key: &str) -> Result<(usize, u64)> {
        self.expect_keyword(key)?;
        self.expect_char('=')?;
        self.number()
    }

    fn describe(&self, col: usize, w: &str) -> String {
        if w.is_empty() {
            self.chars
                .get(col)
                .map_or("end of line".to_string(), |c| c.to_string())
        } else {
            w.to_string()
        }
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// Parses a presentation. Consistency is not checked here.
pub fn parse_presentation(text: &str) -> Result<PcPresentation> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)));
    let (p, rank) = loop {
        let Some((no, line)) = lines.next() else {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: "missing `pcgroup` header".into(),
            });
        };
        let mut cur = Cursor::new(no, line);
        if cur.at_end() {
            continue;
        }
        break parse_header(&mut cur)?;
    };
    let mut pres = PcPresentation::new(p, rank).expect("header validated");
    let mut defined_pow = vec![false; rank];
    let mut defined_comm = vec![vec![false; rank]; rank];
    for (no, line) in lines {
        let mut cur = Cursor::new(no, line);
        if cur.at_end() {
            continue;
        }
        let (col, kw) = cur.word();
        match kw.as_str() {
            "pow" => {
                let (gcol, i) = cur.generator(rank)?;
                cur.expect_char('=')?;
                let word = parse_word(&mut cur, p, rank, i)?;
                if std::mem::replace(&mut defined_pow[i], true) {
                    return Err(cur.err(gcol, format!("power relation of g{} given twice", i + 1)));
                }
                pres.set_power(i, word)
                    .map_err(|e| cur.err(gcol, e.to_string()))?;
            }
            "comm" => {
                let (jcol, j) = cur.generator(rank)?;
                let (icol, i) = cur.generator(rank)?;
                if j <= i {
                    return Err(cur.err(
                        icol,
                        format!(
                            "commutator relations are written `comm gj gi` with j > i, got g{} g{}",
                            j + 1,
                            i + 1
                        ),
                    ));
                }
                cur.expect_char('=')?;
                let word = parse_word(&mut cur, p, rank, j)?;
                if std::mem::replace(&mut defined_comm[j][i], true) {
                    return Err(cur.err(
                        jcol,
                        format!("relation [g{}, g{}] given twice", j + 1, i + 1),
                    ));
                }
                pres.set_commutator(j, i, word)
                    .map_err(|e| cur.err(jcol, e.to_string()))?;
            }
            _ => {
                return Err(cur.err(
                    col,
                    format!(
                        "expected `pow` or `comm`, found `{}`",
                        cur.describe(col, &kw)
                    ),
                ))
            }
        }
        if !cur.at_end() {
            let pos = cur.pos;
            return Err(cur.err(pos, "unexpected trailing input"));
        }
    }
    Ok(pres)
}

fn parse_header(cur: &mut Cursor<'_>) -> Result<(u32, usize)> {
    cur.expect_keyword("pcgroup")?;
    let (pcol, p) = cur.key_value("p")?;
    if p > u64::from(MAX_PRIME) || !is_prime(p as u32) {
        return Err(cur.err(
            pcol,
            format!("p={p} is not a supported prime (2..={MAX_PRIME})"),
        ));
    }
    let (ncol, n) = cur.key_value("n")?;
    if n > 64 {
        return Err(cur.err(ncol, format!("rank {n} exceeds 64")));
    }
    if !cur.at_end() {
        let (vcol, v) = cur.key_value("format_version")?;
        if v != u64::from(FORMAT_VERSION) {
            return Err(cur.err(vcol, format!("unsupported format_version {v}")));
        }
        if !cur.at_end() {
            let pos = cur.pos;
            return Err(cur.err(pos, "unexpected trailing input"));
        }
    }
    Ok((p as u32, n as usize))
}

/// Parses a normal-form word whose letters must all exceed `above`.
fn parse_word(cur: &mut Cursor<'_>, p: u32, rank: usize, above: usize) -> Result<Vec<u8>> {
    let mut exps = vec![0u8; rank];
    if cur.peek() == Some('1') {
        cur.number()?;
        return Ok(exps);
    }
    let mut last: Option<usize> = None;
    loop {
        let (col, k) = cur.generator(rank)?;
        if k <= above {
            return Err(cur.err(
                col,
                format!(
                    "depth violation: g{} may not occur in a relation for g{}",
                    k + 1,
                    above + 1
                ),
            ));
        }
        if last.is_some_and(|l| k <= l) {
            return Err(cur.err(col, "letters must appear in increasing generator order"));
        }
        last = Some(k);
        let mut e = 1;
        if cur.peek() == Some('^') {
            cur.expect_char('^')?;
            let (ecol, v) = cur.number()?;
            if v == 0 || v >= u64::from(p) {
                return Err(cur.err(ecol, format!("exponent {v} must satisfy 0 < e < {p}")));
            }
            e = v;
        }
        exps[k] = e as u8;
        if cur.peek() == Some('*') {
            cur.expect_char('*')?;
        } else {
            break;
        }
    }
    Ok(exps)
}

fn format_word(exps: &[u8]) -> String {
    let letters: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(k, &e)| {
            if e == 1 {
                format!("g{}", k + 1)
            } else {
                format!("g{}^{e}", k + 1)
            }
        })
        .collect();
    if letters.is_empty() {
        "1".to_string()
    } else {
        letters.join("*")
    }
}

/// Canonical text: header, nontrivial power relations by generator, then
/// nontrivial commutator relations by `(j, i)`.
pub fn serialize_presentation(pres: &PcPresentation) -> String {
    let mut out = format!("pcgroup p={} n={}\n", pres.p(), pres.rank());
    for i in 0..pres.rank() {
        let w = pres.power_word(i);
        if w.iter().any(|&e| e != 0) {
            out.push_str(&format!("pow g{} = {}\n", i + 1, format_word(w)));
        }
    }
    for j in 0..pres.rank() {
        for i in 0..j {
            let w = pres.comm_word(j, i);
            if w.iter().any(|&e| e != 0) {
                out.push_str(&format!(
                    "comm g{} g{} = {}\n",
                    j + 1,
                    i + 1,
                    format_word(w)
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const D8: &str = "pcgroup p=2 n=3\npow g2 = g3\ncomm g2 g1 = g3\n";

    fn parse_err(text: &str) -> (usize, usize, String) {
        match parse_presentation(text) {
            Err(Error::Parse {
                line,
                column,
                message,
            }) => (line, column, message),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn d8_text() {
        let pres = parse_presentation(D8).unwrap();
        assert_eq!(pres.rank(), 3);
        assert_eq!(pres.power_word(1), &[0, 0, 1]);
        assert_eq!(pres.comm_word(1, 0), &[0, 0, 1]);
        assert!(crate::pc::check_consistency(&pres).passed());
        assert_eq!(serialize_presentation(&pres), D8);
    }

    #[test]
    fn trivial_group() {
        let pres = parse_presentation("pcgroup p=2 n=0").unwrap();
        assert_eq!(pres.rank(), 0);
        assert_eq!(serialize_presentation(&pres), "pcgroup p=2 n=0\n");
    }

    #[test]
    fn comments_blank_lines_and_version() {
        let text = "# dihedral\n\npcgroup p=2 n=3 format_version=1\n  pow g2 = g3 # r^2\ncomm g2 g1=g3\npow g1 = 1\n";
        assert_eq!(
            parse_presentation(text).unwrap(),
            parse_presentation(D8).unwrap()
        );
        let (line, _, msg) = parse_err("pcgroup p=2 n=3 format_version=2\n");
        assert_eq!(line, 1);
        assert!(msg.contains("format_version"));
    }

    #[test]
    fn depth_violation_reports_position() {
        let (line, column, msg) = parse_err("pcgroup p=2 n=3\ncomm g3 g1 = g2\n");
        assert_eq!((line, column), (2, 14));
        assert!(msg.contains("depth violation"), "{msg}");
        let (line, column, _) = parse_err("pcgroup p=2 n=3\npow g2 = g1\n");
        assert_eq!((line, column), (2, 10));
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_err("pcgroup p=4 n=2")
            .2
            .contains("not a supported prime"));
        assert_eq!(parse_err("group p=2 n=2").0, 1);
        assert_eq!(parse_err("").2, "missing `pcgroup` header");
        assert_eq!(parse_err("pcgroup p=3 n=2\npow g1 = g2^3\n").1, 13);
        assert_eq!(parse_err("pcgroup p=3 n=3\npow g1 = g3*g2\n").1, 13);
        assert!(parse_err("pcgroup p=2 n=3\ncomm g1 g2 = g3\n")
            .2
            .contains("j > i"));
        assert!(parse_err("pcgroup p=2 n=3\npow g1 = g2\npow g1 = g3\n")
            .2
            .contains("twice"));
        assert!(parse_err("pcgroup p=2 n=3\nrel g1 = g2\n")
            .2
            .contains("`pow` or `comm`"));
        assert!(parse_err("pcgroup p=2 n=2\npow g3 = 1\n")
            .2
            .contains("out of range"));
        assert!(parse_err("pcgroup p=2 n=2\npow g1 = g2 g2\n")
            .2
            .contains("trailing"));
    }

    #[test]
    fn exponent_formatting() {
        let pres = parse_presentation("pcgroup p=5 n=3\npow g1 = g2^4*g3\n").unwrap();
        assert_eq!(
            serialize_presentation(&pres),
            "pcgroup p=5 n=3\npow g1 = g2^4*g3\n"
        );
    }
}
