//! Per-polynomial decomposability test over all of `P=`.
//!
//! For `f = g(h)` with `deg g = e` and `deg h = k`, the components of `f` of
//! degree above `(e-1)k` are those of `g_e h^e`. An index from that suffix to
//! the candidate pairs `(h, g_e)` turns the test of `f` into a lookup plus a
//! triangular solve for `g_0..g_(e-1)` against the powers of `h`. The high
//! coefficients of `f` run in an outer loop; when no suffix has candidates,
//! every `f` below that high part is indecomposable.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::decomp::right_components;
use crate::field::{Fe, FieldSpec};
use crate::poly::{monomial_count, MultiPoly};

use super::pack::{and, with_words, Layout};
use super::CensusError;

#[derive(Default, Clone, Copy)]
pub(crate) struct BruteCounts {
    pub decomposable: u64,
    pub superlinear: u64,
    pub indecomposable: u64,
    pub uniqueness_violations: u64,
    /// Decomposable `f` without a normal decomposition whose right component
    /// is indecomposable; always zero.
    pub orphans: u64,
}

impl BruteCounts {
    fn merge(mut self, o: BruteCounts) -> BruteCounts {
        self.decomposable += o.decomposable;
        self.superlinear += o.superlinear;
        self.indecomposable += o.indecomposable;
        self.uniqueness_violations += o.uniqueness_violations;
        self.orphans += o.orphans;
        self
    }
}

struct Candidate<const W: usize> {
    e: u32,
    lead: [u64; W],
    /// `(leading rank, c * h^i for every c)` for `i = e-1` down to `0`.
    powers: Vec<(usize, Vec<[u64; W]>)>,
    indec: bool,
}

struct Index<const W: usize> {
    mask: [u64; W],
    map: HashMap<[u64; W], Vec<u32>>,
}

pub(crate) fn run(
    field: &Arc<FieldSpec>,
    n: usize,
    d: u32,
    workers: usize,
) -> Result<BruteCounts, CensusError> {
    let len = monomial_count(n, d as usize);
    let layout = Layout::new(field, len).ok_or(CensusError::KeyTooWide { coefficients: len })?;
    with_words!(layout.words, W, run_w::<W>(field, n, d, &layout, workers))
}

fn scaled(field: &FieldSpec, p: &MultiPoly, c: Fe) -> Vec<Fe> {
    p.coeffs().iter().map(|&v| field.mul(c, v)).collect()
}

fn run_w<const W: usize>(
    field: &Arc<FieldSpec>,
    n: usize,
    d: u32,
    layout: &Layout,
    workers: usize,
) -> Result<BruteCounts, CensusError> {
    let q = field.size() as u64;
    let len = layout.len;
    let divisors: Vec<u32> = (2..=d).filter(|e| d % e == 0).collect();
    let mut cands: Vec<Candidate<W>> = Vec::new();
    let mut indices: Vec<Index<W>> = Vec::new();
    for &e in &divisors {
        let k = d / e;
        let start = monomial_count(n, (d - k) as usize);
        let mask = layout.suffix_mask::<W>(start);
        let mut map: HashMap<[u64; W], Vec<u32>> = HashMap::new();
        for (h, indec) in right_components(field, n, k)? {
            let h_d = h.with_cap(d)?;
            let mut pw = vec![MultiPoly::constant(field.clone(), n, d, Fe::ONE)?];
            for i in 1..=e as usize {
                pw.push(pw[i - 1].mul_capped(&h_d, d)?);
            }
            let lead_rank = |p: &MultiPoly| p.coeffs().iter().rposition(|c| !c.is_zero()).expect("nonzero");
            let powers: Vec<(usize, Vec<[u64; W]>)> = (0..e as usize)
                .rev()
                .map(|i| {
                    let mults = field.elements().map(|c| layout.pack::<W>(&scaled(field, &pw[i], c))).collect();
                    (lead_rank(&pw[i]), mults)
                })
                .collect();
            for ge in field.nonzero_elements() {
                let lead = layout.pack::<W>(&scaled(field, &pw[e as usize], ge));
                map.entry(and(&lead, &mask)).or_default().push(cands.len() as u32);
                cands.push(Candidate { e, lead, powers: powers.clone(), indec });
            }
        }
        indices.push(Index { mask, map });
    }

    // the shortest suffix belongs to the smallest divisor
    let low = monomial_count(n, (d - d / divisors[0]) as usize);
    let top = monomial_count(n, d as usize - 1);
    let high_digits = len - low;
    let total_high = q.pow(high_digits as u32);
    let block = q.pow(low as u32);
    let chunks = 256u64.min(total_high);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| CensusError::Workers(e.to_string()))?;
    let ctx = Ctx { layout, q, low, top, len, cands: &cands, indices: &indices, d };
    let counts = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let from = total_high * c / chunks;
                let to = total_high * (c + 1) / chunks;
                ctx.scan(from, to, block)
            })
            .reduce(BruteCounts::default, BruteCounts::merge)
    });
    Ok(counts)
}

struct Ctx<'a, const W: usize> {
    layout: &'a Layout,
    q: u64,
    low: usize,
    top: usize,
    len: usize,
    cands: &'a [Candidate<W>],
    indices: &'a [Index<W>],
    d: u32,
}

impl<const W: usize> Ctx<'_, W> {
    /// High parts with index in `from..to`; digit `low` is least significant.
    fn scan(&self, from: u64, to: u64, block: u64) -> BruteCounts {
        let mut out = BruteCounts::default();
        let mut digits = vec![0u16; self.len];
        let mut key = [0u64; W];
        let mut x = from;
        for r in self.low..self.len {
            digits[r] = (x % self.q) as u16;
            x /= self.q;
            self.layout.set(&mut key, r, Fe(digits[r]));
        }
        let mut lists: Vec<&[u32]> = Vec::with_capacity(self.indices.len());
        for _ in from..to {
            if digits[self.top..].iter().any(|&c| c != 0) {
                lists.clear();
                for ix in self.indices {
                    if let Some(v) = ix.map.get(&and(&key, &ix.mask)) {
                        lists.push(v);
                    }
                }
                if lists.is_empty() {
                    out.indecomposable += block;
                } else {
                    self.scan_block(&key, &lists, &mut out);
                }
            }
            // next high part
            let mut r = self.low;
            while r < self.len {
                let v = (digits[r] as u64 + 1) % self.q;
                digits[r] = v as u16;
                self.layout.set(&mut key, r, Fe(v as u16));
                if v != 0 {
                    break;
                }
                r += 1;
            }
        }
        out
    }

    fn scan_block(&self, high: &[u64; W], lists: &[&[u32]], out: &mut BruteCounts) {
        let mut key = *high;
        let mut digits = vec![0u16; self.low];
        loop {
            let (mut any, mut sl, mut indec) = (false, false, 0u32);
            for list in lists {
                for &ci in list.iter() {
                    let c = &self.cands[ci as usize];
                    if self.matches(&key, c) {
                        any = true;
                        sl |= c.e < self.d;
                        indec += c.indec as u32;
                    }
                }
            }
            if any {
                out.decomposable += 1;
                out.superlinear += sl as u64;
                if indec > 1 {
                    out.uniqueness_violations += 1;
                }
                if indec == 0 {
                    out.orphans += 1;
                }
            } else {
                out.indecomposable += 1;
            }
            let mut r = 0;
            loop {
                if r == self.low {
                    return;
                }
                let v = (digits[r] as u64 + 1) % self.q;
                digits[r] = v as u16;
                self.layout.set(&mut key, r, Fe(v as u16));
                if v != 0 {
                    break;
                }
                r += 1;
            }
        }
    }

    #[inline]
    fn matches(&self, f: &[u64; W], c: &Candidate<W>) -> bool {
        let mut r = self.layout.sub(f, &c.lead);
        for (rank, mults) in &c.powers {
            let v = self.layout.get(&r, *rank);
            if !v.is_zero() {
                r = self.layout.sub(&r, &mults[v.0 as usize]);
            }
        }
        r.iter().all(|&w| w == 0)
    }
}
