//! Image of the composition maps by exhaustive composition.
//!
//! Work is split by the top homogeneous form of `f = g(h)`, which is
//! `g_e H^e` for the top form `H` of `h`. Each unit `(e, H, g_e)` lands in
//! the bucket of its top form, buckets are disjoint pieces of the image, and
//! each bucket is deduplicated on its own by sorting.
//!
//! Inside a unit the lower coefficients of `h` run through an odometer; the
//! powers `h^i` are updated incrementally with
//! `(h + c x^a)^i = sum_j binomial(i, j) c^j x^(ja) h^(i-j)`, and the keys
//! for all lower coefficients of `g` come from a second odometer over
//! precomputed packed multiples of the powers.
//!
//! The image is closed under `f -> a f + b`. Only `g0 = 0` and top forms
//! whose last nonzero coefficient is 1 are enumerated; every count is then
//! multiplied by `q(q-1)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::field::{Fe, FieldSpec};
use crate::poly::{homogeneous_count, monomial_count, MonomialTable, MultiPoly};

use super::pack::{with_words, Layout};
use super::CensusError;

pub(crate) struct EnumCounts {
    pub per_divisor: BTreeMap<u32, u64>,
    pub union_all: Option<u64>,
    pub union_sl: u64,
}

#[derive(Clone)]
struct Unit {
    e: u32,
    /// Coefficients of `h`'s top form on ranks `b(n,k-1)..b(n,k)`.
    top: Vec<Fe>,
    ge: Fe,
}

struct Ctx {
    field: Arc<FieldSpec>,
    n: usize,
    d: u32,
    len: usize,
    layout: Layout,
    /// `prod[s * len + t]` is the rank of the product of ranks `s` and `t`.
    prod: Vec<u32>,
}

/// Monic homogeneous forms of degree `k`: nonzero vectors over the top block
/// whose last nonzero entry is 1.
fn monic_forms(q: u32, len: usize) -> Vec<Vec<Fe>> {
    let mut out = Vec::new();
    let mut v = vec![0u16; len];
    loop {
        // advance as a base-q counter, first entry least significant
        let mut i = 0;
        loop {
            if i == len {
                return out;
            }
            v[i] += 1;
            if (v[i] as u32) < q {
                break;
            }
            v[i] = 0;
            i += 1;
        }
        if v.iter().rev().find(|&&c| c != 0) == Some(&1) {
            out.push(v.iter().map(|&c| Fe(c)).collect());
        }
    }
}

pub(crate) fn run(
    field: &Arc<FieldSpec>,
    n: usize,
    d: u32,
    divisors: &[u32],
    with_full: bool,
    workers: usize,
) -> Result<EnumCounts, CensusError> {
    let len = monomial_count(n, d as usize);
    let layout = Layout::new(field, len).ok_or(CensusError::KeyTooWide { coefficients: len })?;
    let table = MonomialTable::new(n, d);
    let prod = table.product_table().into_iter().map(|r| r as u32).collect();
    let ctx = Ctx { field: field.clone(), n, d, len, layout, prod };

    let q = field.size();
    let top_d = monomial_count(n, d as usize - 1);
    let mut buckets: BTreeMap<Vec<u16>, Vec<Unit>> = BTreeMap::new();
    for &e in divisors {
        let k = d / e;
        let lo = monomial_count(n, k as usize - 1);
        for top in monic_forms(q, homogeneous_count(n, k as usize)) {
            let mut coeffs = vec![Fe::ZERO; len];
            coeffs[lo..lo + top.len()].copy_from_slice(&top);
            let hh = MultiPoly::from_coeffs(field.clone(), n, d, coeffs).expect("valid");
            let mut pw = MultiPoly::constant(field.clone(), n, d, Fe::ONE).expect("valid");
            for _ in 0..e {
                pw = pw.mul_capped(&hh, d).expect("degree fits");
            }
            for ge in field.nonzero_elements() {
                let key: Vec<u16> = pw.coeffs()[top_d..].iter().map(|&c| field.mul(ge, c).0).collect();
                buckets.entry(key).or_default().push(Unit { e, top: top.clone(), ge });
            }
        }
    }

    // a f has top form a T, so only top forms whose last nonzero entry is 1
    // are needed; the other q-1 scalings are counted by multiplication
    let buckets: Vec<Vec<Unit>> = buckets
        .into_iter()
        .filter(|(key, _)| key.iter().rev().find(|&&c| c != 0) == Some(&1))
        .map(|(_, units)| units)
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| CensusError::Workers(e.to_string()))?;
    let results: Vec<BucketCounts> = with_words!(ctx.layout.words, W, {
        pool.install(|| buckets.par_iter().map(|b| run_bucket::<W>(&ctx, b)).collect())
    });

    let mut per_divisor: BTreeMap<u32, u64> = divisors.iter().map(|&e| (e, 0)).collect();
    let (mut union_all, mut union_sl) = (0u64, 0u64);
    for r in results {
        for (e, c) in r.per_e {
            *per_divisor.get_mut(&e).expect("known divisor") += c;
        }
        union_all += r.union_all;
        union_sl += r.union_sl;
    }
    // translates by the constant term and scalings of the top form
    let orbit = q as u64 * (q as u64 - 1);
    for c in per_divisor.values_mut() {
        *c *= orbit;
    }
    Ok(EnumCounts { per_divisor, union_all: with_full.then_some(union_all * orbit), union_sl: union_sl * orbit })
}

struct BucketCounts {
    per_e: Vec<(u32, u64)>,
    union_all: u64,
    union_sl: u64,
}

fn run_bucket<const W: usize>(ctx: &Ctx, units: &[Unit]) -> BucketCounts {
    let q = ctx.field.size() as u64;
    let mut lists: BTreeMap<u32, Vec<[u64; W]>> = BTreeMap::new();
    for u in units {
        let k = ctx.d / u.e;
        let lo = monomial_count(ctx.n, k as usize - 1);
        let size = q.pow(lo as u32 - 1) * q.pow(u.e - 1);
        let list = lists.entry(u.e).or_default();
        list.reserve(size as usize);
        run_unit::<W>(ctx, u, list);
    }
    let mut per_e = Vec::new();
    for (&e, list) in lists.iter_mut() {
        list.sort_unstable();
        list.dedup();
        per_e.push((e, list.len() as u64));
    }
    let all: Vec<&[[u64; W]]> = lists.values().map(|v| v.as_slice()).collect();
    let sl: Vec<&[[u64; W]]> = lists.iter().filter(|(&e, _)| e < ctx.d).map(|(_, v)| v.as_slice()).collect();
    BucketCounts { per_e, union_all: union_len(&all), union_sl: union_len(&sl) }
}

/// Size of the union of sorted, deduplicated lists.
fn union_len<T: Ord>(lists: &[&[T]]) -> u64 {
    match lists.len() {
        0 => return 0,
        1 => return lists[0].len() as u64,
        _ => {}
    }
    let mut pos = vec![0usize; lists.len()];
    let mut count = 0u64;
    loop {
        let mut min: Option<&T> = None;
        for (l, &p) in lists.iter().zip(&pos) {
            if let Some(x) = l.get(p) {
                if min.map_or(true, |m| x < m) {
                    min = Some(x);
                }
            }
        }
        let Some(m) = min else { return count };
        count += 1;
        for (l, p) in lists.iter().zip(pos.iter_mut()) {
            if l.get(*p) == Some(m) {
                *p += 1;
            }
        }
    }
}

fn run_unit<const W: usize>(ctx: &Ctx, u: &Unit, out: &mut Vec<[u64; W]>) {
    let field = &*ctx.field;
    let layout = &ctx.layout;
    let q = field.size();
    let e = u.e as usize;
    let k = ctx.d / u.e;
    let len = ctx.len;
    let lo = monomial_count(ctx.n, k as usize - 1);

    // powers h^0..h^e as dense vectors and as packed keys
    let mut pw = vec![vec![Fe::ZERO; len]; e + 1];
    pw[0][0] = Fe::ONE;
    pw[1][lo..lo + u.top.len()].copy_from_slice(&u.top);
    for i in 2..=e {
        let (done, rest) = pw.split_at_mut(i);
        mul_into(ctx, &done[i - 1], &done[1], &mut rest[0], (i - 1) * k as usize, k as usize);
    }
    let mut keys: Vec<[u64; W]> = pw.iter().map(|v| layout.pack::<W>(v)).collect();
    // support bound of h^i: ranks below b(n, i k)
    let support: Vec<usize> = (0..=e).map(|i| monomial_count(ctx.n, i * k as usize)).collect();

    // binomial(i, j) mod p
    let binom: Vec<Vec<Fe>> = (0..=e)
        .map(|i| (0..=i).map(|j| field.times(Fe::ONE, binom_mod(i as u64, j as u64, field.characteristic() as u64))).collect())
        .collect();
    // rank of x^(j a) for each free rank a
    let powrank: Vec<Vec<u32>> = (0..lo)
        .map(|a| {
            let mut v = vec![0u32; e + 1];
            for j in 1..=e {
                v[j] = ctx.prod[v[j - 1] as usize * len + a];
            }
            v
        })
        .collect();

    let mut digits = vec![0u16; lo];
    let mut mults: Vec<Vec<[u64; W]>> = vec![vec![[0u64; W]; q as usize]; e];
    let mut partial = vec![[0u64; W]; e + 1];
    let mut g = vec![0usize; e];
    let mut dpow = vec![Fe::ONE; e + 1];
    loop {
        emit::<W>(ctx, &pw, &keys, u.ge, &mut mults, &mut partial, &mut g, out);
        // next h: odometer over ranks 1..lo, rank 1 fastest
        let mut r = 1;
        loop {
            if r >= lo {
                return;
            }
            let old = Fe(digits[r]);
            let new = Fe(if digits[r] as u32 + 1 == q { 0 } else { digits[r] + 1 });
            digits[r] = new.0;
            let delta = field.sub(new, old);
            for j in 1..=e {
                dpow[j] = field.mul(dpow[j - 1], delta);
            }
            for i in (2..=e).rev() {
                let (lower, upper) = pw.split_at_mut(i);
                let target = &mut upper[0];
                for j in 1..=i {
                    let c = field.mul(binom[i][j], dpow[j]);
                    if c.is_zero() {
                        continue;
                    }
                    let shift = powrank[r][j] as usize;
                    let src = &lower[i - j];
                    for (s, &v) in src[..support[i - j]].iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        let t = ctx.prod[s * len + shift] as usize;
                        target[t] = field.add(target[t], field.mul(c, v));
                        layout.set(&mut keys[i], t, target[t]);
                    }
                }
            }
            pw[1][r] = new;
            layout.set(&mut keys[1], r, new);
            if new.0 != 0 {
                break;
            }
            r += 1;
        }
    }
}

#[allow(clippy::too_many_arguments)]
#[inline]
fn emit<const W: usize>(
    ctx: &Ctx,
    pw: &[Vec<Fe>],
    keys: &[[u64; W]],
    ge: Fe,
    mults: &mut [Vec<[u64; W]>],
    partial: &mut [[u64; W]],
    g: &mut [usize],
    out: &mut Vec<[u64; W]>,
) {
    let layout = &ctx.layout;
    let field = &*ctx.field;
    let q = field.size() as usize;
    let e = g.len();
    for i in 0..e {
        if layout.is_prime_field() {
            for c in 1..q {
                mults[i][c] = layout.add(&mults[i][c - 1], &keys[i]);
            }
        } else {
            for c in 1..q {
                let scaled: Vec<Fe> = pw[i].iter().map(|&v| field.mul(Fe(c as u16), v)).collect();
                mults[i][c] = layout.pack::<W>(&scaled);
            }
        }
    }
    partial[e] = if layout.is_prime_field() {
        layout.small_multiple(&keys[e], ge.0 as u64)
    } else {
        let scaled: Vec<Fe> = pw[e].iter().map(|&v| field.mul(ge, v)).collect();
        layout.pack::<W>(&scaled)
    };
    for i in (0..e).rev() {
        g[i] = 0;
        partial[i] = partial[i + 1];
    }
    // g0 = 0: the constant term of g(h) is g0 alone since h is original, so
    // the images with other g0 are translates counted by the caller
    loop {
        out.push(partial[0]);
        let mut i = 1;
        loop {
            if i == e {
                return;
            }
            g[i] += 1;
            if g[i] < q {
                break;
            }
            g[i] = 0;
            i += 1;
        }
        for j in (0..=i).rev() {
            partial[j] = layout.add(&partial[j + 1], &mults[j][g[j]]);
        }
    }
}

/// `out = a * b` where `a` is supported below `b(n, da)` and `b` below
/// `b(n, db)`.
fn mul_into(ctx: &Ctx, a: &[Fe], b: &[Fe], out: &mut [Fe], da: usize, db: usize) {
    let f = &*ctx.field;
    let (la, lb) = (monomial_count(ctx.n, da), monomial_count(ctx.n, db));
    for (s, &x) in a[..la].iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (t, &y) in b[..lb].iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let r = ctx.prod[s * ctx.len + t] as usize;
            out[r] = f.add(out[r], f.mul(x, y));
        }
    }
}

/// `binomial(n, k) mod p` by Lucas' theorem.
fn binom_mod(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        let mut c = 1u64;
        for i in 0..b {
            c = c * (a - i) / (i + 1);
        }
        acc = acc * (c % p) % p;
        n /= p;
        k /= p;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lucas() {
        assert_eq!(binom_mod(4, 2, 2), 0);
        assert_eq!(binom_mod(6, 3, 5), 0);
        assert_eq!(binom_mod(6, 3, 7), 6);
        assert_eq!(binom_mod(3, 1, 3), 0);
        assert_eq!(binom_mod(5, 2, 3), 1);
    }

    #[test]
    fn forms() {
        assert_eq!(monic_forms(2, 2).len(), 3);
        assert_eq!(monic_forms(3, 3).len(), 13);
    }
}
