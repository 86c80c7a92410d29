use num_bigint::BigUint;
use polydecomp::census::{
    census_bruteforce, census_enumeration, census_recursion, exact_space_size, indec_monic_original_count,
    indec_monic_original_count_enumerated, CensusConfig,
};
use polydecomp::formulas::Params;

fn cfg(workers: usize) -> CensusConfig {
    CensusConfig::default().with_workers(workers).with_budget(1 << 24)
}

#[test]
fn methods_agree_where_feasible() {
    let mut compared = 0;
    for n in [2, 3] {
        for d in [2, 3, 4, 6] {
            for q in [2, 3] {
                let p = Params::new(n, d, Some(q)).unwrap();
                let rec = census_recursion(&p).unwrap();
                let Ok(e) = census_enumeration(&p, false, &cfg(2)) else { continue };
                assert!(e.counts_agree(&rec), "({n},{d},{q}) {:?} vs {:?}", e.d_count, rec.d_count);
                assert_eq!(e.i_count.clone().unwrap() + e.d_count.clone().unwrap(), exact_space_size(&p).unwrap());
                if let Ok(b) = census_bruteforce(&p, &cfg(2).with_budget(1 << 20)) {
                    assert!(e.counts_agree(&b), "({n},{d},{q})");
                    assert_eq!(b.uniqueness_violations, Some(0));
                }
                compared += 1;
            }
        }
    }
    assert!(compared >= 10, "{compared}");
}

#[test]
fn worker_count_does_not_change_reports() {
    let p = Params::new(2, 6, Some(2)).unwrap();
    let a = census_enumeration(&p, false, &cfg(1)).unwrap();
    let b = census_enumeration(&p, false, &cfg(4)).unwrap();
    assert_eq!(a.per_divisor_image_sizes, b.per_divisor_image_sizes);
    assert_eq!((a.d_count, a.d_sl_count), (b.d_count, b.d_sl_count));
    let p = Params::new(2, 4, Some(2)).unwrap();
    let a = census_bruteforce(&p, &cfg(1)).unwrap();
    let b = census_bruteforce(&p, &cfg(3)).unwrap();
    assert_eq!((a.d_count, a.i_count, a.uniqueness_violations), (b.d_count, b.i_count, b.uniqueness_violations));
}

#[test]
fn indecomposable_right_components() {
    for q in [2, 3] {
        for k in 1..=3 {
            assert_eq!(
                indec_monic_original_count(2, k, q).unwrap(),
                indec_monic_original_count_enumerated(2, k, q, 1 << 20).unwrap(),
                "k={k} q={q}"
            );
        }
    }
    assert_eq!(indec_monic_original_count(3, 1, 2).unwrap(), BigUint::from(7u32));
}
