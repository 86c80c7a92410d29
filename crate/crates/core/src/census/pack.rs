//! Packed coefficient vectors used as deduplication keys.
//!
//! Each coefficient occupies `k` lanes (its base-`p` digits), each lane `w`
//! bits wide. For `p = 2` a lane is one bit and addition is XOR; otherwise a
//! lane holds a residue below `p` with one spare bit of headroom so that two
//! lanes add without spilling, and the wrap-around is done with a mask.
//! Coefficients never straddle a word.

use crate::field::{Fe, FieldSpec};

pub(crate) const MAX_WORDS: usize = 8;

#[derive(Clone, Debug)]
pub(crate) struct Layout {
    p: u64,
    k: usize,
    w: u32,
    lane_mask: u64,
    /// Bit width of one coefficient.
    cw: u32,
    /// Coefficients per word.
    cpw: usize,
    pub len: usize,
    pub words: usize,
    /// `2^(w-1) - p` in every used lane.
    bias: [u64; MAX_WORDS],
    /// `p` in every used lane.
    pees: [u64; MAX_WORDS],
    /// The top bit of every used lane.
    high: [u64; MAX_WORDS],
}

impl Layout {
    /// Layout for `len` coefficients; `None` if it needs more than
    /// [`MAX_WORDS`] words.
    pub fn new(field: &FieldSpec, len: usize) -> Option<Self> {
        let p = field.characteristic() as u64;
        let k = field.degree() as usize;
        let w = if p == 2 { 1 } else { 64 - (2 * p - 2).leading_zeros() };
        let cw = w * k as u32;
        let cpw = (64 / cw) as usize;
        let words = len.div_ceil(cpw).max(1);
        if words > MAX_WORDS {
            return None;
        }
        let mut l = Layout {
            p,
            k,
            w,
            lane_mask: (1u64 << w) - 1,
            cw,
            cpw,
            len,
            words,
            bias: [0; MAX_WORDS],
            pees: [0; MAX_WORDS],
            high: [0; MAX_WORDS],
        };
        if p != 2 {
            for r in 0..len {
                for lane in 0..k {
                    let (wd, sh) = l.lane_pos(r, lane);
                    l.bias[wd] |= ((1u64 << (w - 1)) - p) << sh;
                    l.pees[wd] |= p << sh;
                    l.high[wd] |= (1u64 << (w - 1)) << sh;
                }
            }
        }
        Some(l)
    }

    #[inline]
    fn lane_pos(&self, r: usize, lane: usize) -> (usize, u32) {
        (r / self.cpw, (r % self.cpw) as u32 * self.cw + lane as u32 * self.w)
    }

    #[inline]
    pub fn add<const W: usize>(&self, a: &[u64; W], b: &[u64; W]) -> [u64; W] {
        let mut out = [0u64; W];
        if self.p == 2 {
            for i in 0..W {
                out[i] = a[i] ^ b[i];
            }
        } else {
            for i in 0..W {
                out[i] = self.reduce(a[i] + b[i], i);
            }
        }
        out
    }

    /// Subtracts `p` from every lane that is at least `p`.
    #[inline]
    fn reduce(&self, s: u64, i: usize) -> u64 {
        let t = s + self.bias[i];
        let m = (t & self.high[i]) >> (self.w - 1);
        s - m * self.p
    }

    #[inline]
    pub fn neg<const W: usize>(&self, a: &[u64; W]) -> [u64; W] {
        if self.p == 2 {
            return *a;
        }
        let mut out = [0u64; W];
        for i in 0..W {
            out[i] = self.reduce(self.pees[i] - a[i], i);
        }
        out
    }

    #[inline]
    pub fn sub<const W: usize>(&self, a: &[u64; W], b: &[u64; W]) -> [u64; W] {
        self.add(a, &self.neg(b))
    }

    /// Writes the element with index `v` at coefficient `r`.
    #[inline]
    pub fn set<const W: usize>(&self, key: &mut [u64; W], r: usize, v: Fe) {
        let mut v = v.0 as u64;
        for lane in 0..self.k {
            let (wd, sh) = self.lane_pos(r, lane);
            let digit = v % self.p;
            v /= self.p;
            key[wd] = (key[wd] & !(self.lane_mask << sh)) | (digit << sh);
        }
    }

    #[inline]
    pub fn get<const W: usize>(&self, key: &[u64; W], r: usize) -> Fe {
        let mut v = 0u64;
        for lane in (0..self.k).rev() {
            let (wd, sh) = self.lane_pos(r, lane);
            v = v * self.p + ((key[wd] >> sh) & self.lane_mask);
        }
        Fe(v as u16)
    }

    pub fn pack<const W: usize>(&self, coeffs: &[Fe]) -> [u64; W] {
        let mut key = [0u64; W];
        for (r, &c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                self.set(&mut key, r, c);
            }
        }
        key
    }

    /// Key with only the coefficients at ranks `>= from` kept.
    pub fn suffix_mask<const W: usize>(&self, from: usize) -> [u64; W] {
        let mut m = [0u64; W];
        for r in from..self.len {
            for lane in 0..self.k {
                let (wd, sh) = self.lane_pos(r, lane);
                m[wd] |= self.lane_mask << sh;
            }
        }
        m
    }

    /// `c * key` for `c` in the prime field, by repeated addition.
    pub fn small_multiple<const W: usize>(&self, key: &[u64; W], c: u64) -> [u64; W] {
        let mut acc = [0u64; W];
        for _ in 0..c {
            acc = self.add(&acc, key);
        }
        acc
    }

    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }
}

#[inline]
pub(crate) fn and<const W: usize>(a: &[u64; W], m: &[u64; W]) -> [u64; W] {
    let mut out = [0u64; W];
    for i in 0..W {
        out[i] = a[i] & m[i];
    }
    out
}

/// Runs `$body` with the const `$w` bound to the word count.
macro_rules! with_words {
    ($words:expr, $w:ident, $body:expr) => {
        match $words {
            1 => {
                const $w: usize = 1;
                $body
            }
            2 => {
                const $w: usize = 2;
                $body
            }
            3 => {
                const $w: usize = 3;
                $body
            }
            4 => {
                const $w: usize = 4;
                $body
            }
            5 => {
                const $w: usize = 5;
                $body
            }
            6 => {
                const $w: usize = 6;
                $body
            }
            7 => {
                const $w: usize = 7;
                $body
            }
            8 => {
                const $w: usize = 8;
                $body
            }
            _ => unreachable!("layout word count is at most MAX_WORDS"),
        }
    };
}
pub(crate) use with_words;
