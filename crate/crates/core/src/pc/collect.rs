//! Collection from the left with an explicit work stack.
//!
//! The collected prefix is kept as an exponent vector. Each uncollected
//! letter `g_i` is moved into place by conjugating the tail `g_{i+1}..g_n`
//! of the collected part: `r * g_i = r_{<=i} g_i (r_{>i})^{g_i}`, where the
//! conjugated tail is pushed back on the stack as words `g_k [g_k, g_i]`.
//! Every pushed word lives strictly deeper than the letter being collected,
//! so collection terminates for any presentation satisfying the depth
//! constraints, consistent or not.

use super::presentation::PcPresentation;

type Letter = (u32, u8);

#[derive(Clone, Copy)]
struct Frame {
    word: u32,
    pos: u32,
    reps: u32,
}

#[derive(Clone, Debug)]
pub(crate) struct Collector {
    p: u8,
    rank: usize,
    // 0..n: single generators, n..2n: power words, 2n + k*n + i: g_k^{g_i}
    words: Vec<Vec<Letter>>,
    // noncommuting[i][k] for k > i: [g_k, g_i] is nontrivial
    noncommuting: Vec<Vec<bool>>,
}

fn letters_of(exps: &[u8]) -> Vec<Letter> {
    exps.iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(k, &e)| (k as u32, e))
        .collect()
}

impl Collector {
    pub(crate) fn new(pres: &PcPresentation) -> Self {
        let n = pres.rank();
        let mut words = Vec::with_capacity(2 * n + n * n);
        for k in 0..n {
            words.push(vec![(k as u32, 1)]);
        }
        for i in 0..n {
            words.push(letters_of(pres.power_word(i)));
        }
        let mut noncommuting = vec![vec![false; n]; n];
        #[allow(clippy::needless_range_loop)]
        for k in 0..n {
            for i in 0..n {
                if k > i {
                    let comm = letters_of(pres.comm_word(k, i));
                    noncommuting[i][k] = !comm.is_empty();
                    let mut w = vec![(k as u32, 1)];
                    w.extend(comm);
                    words.push(w);
                } else {
                    words.push(Vec::new());
                }
            }
        }
        Collector {
            p: pres.p() as u8,
            rank: n,
            words,
            noncommuting,
        }
    }

    fn pow_id(&self, i: usize) -> u32 {
        (self.rank + i) as u32
    }

    fn conj_id(&self, k: usize, i: usize) -> u32 {
        (2 * self.rank + k * self.rank + i) as u32
    }

    /// Multiplies the normal form `r` in place by the normal form `b`.
    pub(crate) fn mul_into(&self, r: &mut [u8], b: &[u8]) {
        let mut stack: Vec<Frame> = Vec::with_capacity(32);
        for k in (0..self.rank).rev() {
            if b[k] != 0 {
                stack.push(Frame {
                    word: k as u32,
                    pos: 0,
                    reps: u32::from(b[k]),
                });
            }
        }
        self.run(r, &mut stack);
    }

    /// Multiplies `r` in place by `g_i^e`, `0 < e < p`.
    pub(crate) fn mul_gen_into(&self, r: &mut [u8], i: usize, e: u8) {
        let mut stack = vec![Frame {
            word: i as u32,
            pos: 0,
            reps: u32::from(e),
        }];
        self.run(r, &mut stack);
    }

    fn run(&self, r: &mut [u8], stack: &mut Vec<Frame>) {
        while let Some(top) = stack.last_mut() {
            let word = &self.words[top.word as usize];
            if top.pos as usize == word.len() {
                top.reps -= 1;
                top.pos = 0;
                if top.reps == 0 || word.is_empty() {
                    stack.pop();
                }
                continue;
            }
            let (g, e) = word[top.pos as usize];
            top.pos += 1;
            self.collect_letter(r, g as usize, e, stack);
        }
    }

    fn collect_letter(&self, r: &mut [u8], g: usize, e: u8, stack: &mut Vec<Frame>) {
        let p = u16::from(self.p);
        let tail = &r[g + 1..];
        if tail.iter().all(|&x| x == 0) {
            let s = u16::from(r[g]) + u16::from(e);
            if s >= p {
                r[g] = (s - p) as u8;
                self.push_power(g, stack);
            } else {
                r[g] = s as u8;
            }
            return;
        }
        let commutes = tail
            .iter()
            .enumerate()
            .all(|(off, &x)| x == 0 || !self.noncommuting[g][g + 1 + off]);
        if commutes {
            let s = u16::from(r[g]) + u16::from(e);
            if s < p {
                r[g] = s as u8;
                return;
            }
            // g^p has to be inserted between the prefix and the tail
            r[g] = (s - p) as u8;
            self.push_tail(r, g, stack, false);
            self.push_power(g, stack);
            return;
        }
        if e > 1 {
            stack.push(Frame {
                word: g as u32,
                pos: 0,
                reps: u32::from(e - 1),
            });
        }
        self.push_tail(r, g, stack, true);
        r[g] += 1;
        if u16::from(r[g]) == p {
            r[g] = 0;
            self.push_power(g, stack);
        }
    }

    /// Moves the tail `r_{>g}` onto the stack, conjugated by `g_g` when
    /// `conjugate` is set, and clears it from `r`.
    fn push_tail(&self, r: &mut [u8], g: usize, stack: &mut Vec<Frame>, conjugate: bool) {
        for k in (g + 1..self.rank).rev() {
            let x = r[k];
            if x == 0 {
                continue;
            }
            let word = if conjugate && self.noncommuting[g][k] {
                self.conj_id(k, g)
            } else {
                k as u32
            };
            stack.push(Frame {
                word,
                pos: 0,
                reps: u32::from(x),
            });
            r[k] = 0;
        }
    }

    fn push_power(&self, g: usize, stack: &mut Vec<Frame>) {
        let id = self.pow_id(g);
        if !self.words[id as usize].is_empty() {
            stack.push(Frame {
                word: id,
                pos: 0,
                reps: 1,
            });
        }
    }
}
