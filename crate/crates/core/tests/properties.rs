use std::sync::Arc;

use polydecomp::decomp::{decompose_with_left_degree, normalize};
use polydecomp::field::{Fe, FieldSpec};
use polydecomp::poly::{compose, monomial_count, MultiPoly, UniPoly};
use proptest::prelude::*;

const SIZES: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

fn field(i: usize) -> Arc<FieldSpec> {
    Arc::new(FieldSpec::with_size(SIZES[i]).unwrap())
}

fn multi(f: &Arc<FieldSpec>, n: usize, cap: u32, raw: &[u64]) -> MultiPoly {
    let len = monomial_count(n, cap as usize);
    let coeffs = (0..len).map(|i| f.element(raw[i % raw.len()].wrapping_mul(i as u64 + 1))).collect();
    MultiPoly::from_coeffs(f.clone(), n, cap, coeffs).unwrap()
}

fn uni(f: &Arc<FieldSpec>, e: usize, raw: &[u64]) -> UniPoly {
    let mut c: Vec<Fe> = (0..=e).map(|i| f.element(raw[i % raw.len()] >> 3)).collect();
    if c[e].is_zero() {
        c[e] = f.one();
    }
    UniPoly::new(f.clone(), c)
}

fn point(f: &Arc<FieldSpec>, n: usize, raw: &[u64]) -> Vec<Fe> {
    (0..n).map(|i| f.element(raw[i % raw.len()] >> 7)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_commutes_with_evaluation(
        fi in 0..SIZES.len(), n in 1usize..4, k in 1u32..4, e in 1usize..4,
        raw in prop::collection::vec(any::<u64>(), 1..16),
    ) {
        let f = field(fi);
        let h = multi(&f, n, k, &raw);
        let g = uni(&f, e, &raw);
        let gh = compose(&g, &h, e as u32 * k).unwrap();
        let x = point(&f, n, &raw);
        prop_assert_eq!(gh.eval(&x).unwrap(), g.eval(h.eval(&x).unwrap()));
    }

    #[test]
    fn affine_map_is_pointwise(
        fi in 0..SIZES.len(), n in 1usize..4, k in 0u32..4, a in any::<u64>(), b in any::<u64>(),
        raw in prop::collection::vec(any::<u64>(), 1..16),
    ) {
        let f = field(fi);
        let h = multi(&f, n, k, &raw);
        let (a, b) = (f.element(a), f.element(b));
        let x = point(&f, n, &raw);
        prop_assert_eq!(h.affine(a, b).eval(&x).unwrap(), f.add(f.mul(a, h.eval(&x).unwrap()), b));
    }

    #[test]
    fn normalize_keeps_the_composition(
        fi in 0..SIZES.len(), k in 1u32..3, e in 2usize..4,
        raw in prop::collection::vec(any::<u64>(), 1..16),
    ) {
        let f = field(fi);
        let h = multi(&f, 2, k, &raw);
        prop_assume!(h.degree().finite() == Some(k));
        let g = uni(&f, e, &raw);
        let dec = normalize(&g, &h).unwrap();
        prop_assert!(dec.is_normal());
        prop_assert_eq!(dec.compose().unwrap(), compose(&g, &h, e as u32 * k).unwrap());
        prop_assert_eq!(dec.left_degree(), e as u32);
    }

    #[test]
    fn decomposition_recovers_the_normal_pair(
        fi in 0..3usize, k in 1u32..3, e in 2u32..4,
        raw in prop::collection::vec(any::<u64>(), 1..16),
    ) {
        let f = field(fi);
        let h = multi(&f, 2, k, &raw);
        prop_assume!(h.degree().finite() == Some(k));
        let g = uni(&f, e as usize, &raw);
        let dec = normalize(&g, &h).unwrap();
        let fx = dec.compose().unwrap();
        let found = decompose_with_left_degree(&fx, e).unwrap();
        prop_assert!(found.iter().any(|d| d.h == dec.h && d.g == dec.g));
        for d in &found {
            prop_assert_eq!(d.compose().unwrap(), fx.clone());
        }
    }

    #[test]
    fn encode_and_render_round_trip(
        fi in 0..SIZES.len(), n in 1usize..4, cap in 0u32..5,
        raw in prop::collection::vec(any::<u64>(), 1..16),
    ) {
        let f = field(fi);
        let p = multi(&f, n, cap, &raw);
        prop_assert_eq!(MultiPoly::decode(&p.encode(), f.clone(), n, cap).unwrap(), p.clone());
        prop_assert_eq!(MultiPoly::parse(&p.render(), f, n, cap).unwrap(), p);
    }
}
