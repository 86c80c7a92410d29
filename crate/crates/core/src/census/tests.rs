use super::*;

fn p(n: u32, d: u32, q: u64) -> Params {
    Params::new(n, d, Some(q)).unwrap()
}

fn cfg() -> CensusConfig {
    CensusConfig::default().with_workers(2)
}

fn big(v: u64) -> Option<BigUint> {
    Some(BigUint::from(v))
}

#[test]
fn streams() {
    let f2 = Arc::new(FieldSpec::with_size(2).unwrap());
    let lin: Vec<String> = enumerate_p0(f2.clone(), 2, 1, 1 << 10).unwrap().map(|h| h.render()).collect();
    assert_eq!(lin.len(), 3);
    for s in ["x1", "x2", "x1 + x2"] {
        assert!(lin.contains(&s.to_string()), "{s} in {lin:?}");
    }
    assert_eq!(enumerate_p0(f2.clone(), 2, 2, 1 << 10).unwrap().count(), 28);
    assert_eq!(enumerate_puni_eq(f2.clone(), 2, 1 << 10).unwrap().count(), 4);
    match enumerate_p0(f2, 2, 2, 10) {
        Err(CensusError::BudgetExceeded { required, .. }) => assert_eq!(required, BigUint::from(28u32)),
        _ => panic!("expected a budget error"),
    }
}

#[test]
fn enumeration_examples() {
    let r = census_enumeration(&p(2, 2, 2), false, &cfg()).unwrap();
    assert_eq!(r.d_count, big(12));
    assert_eq!(census_enumeration(&p(2, 5, 2), false, &cfg()).unwrap().d_count, big(96));
    let r = census_enumeration(&p(2, 4, 2), false, &cfg()).unwrap();
    assert_eq!(r.d_count, big(136));
    assert_eq!(r.i_count, big(31608));
    let sl = census_enumeration(&p(2, 4, 2), true, &cfg()).unwrap();
    assert_eq!(sl.d_count, None);
    assert_eq!(sl.d_sl_count, r.d_sl_count);
    assert_eq!(Some(sl.per_divisor_image_sizes[&2].clone()), r.d_sl_count);
}

#[test]
fn bruteforce_examples() {
    let e = census_enumeration(&p(2, 2, 2), false, &cfg()).unwrap();
    let b = census_bruteforce(&p(2, 2, 2), &cfg()).unwrap();
    assert!(b.counts_agree(&e));
    assert_eq!(census_bruteforce(&p(2, 3, 2), &cfg()).unwrap().d_count, big(24));
    let b = census_bruteforce(&p(2, 4, 2), &cfg()).unwrap();
    assert_eq!((b.d_count.clone(), b.i_count.clone()), (big(136), big(31608)));
    assert_eq!(b.uniqueness_violations, Some(0));
}

#[test]
fn recursion_examples() {
    assert_eq!(census_recursion(&p(2, 4, 2)).unwrap().d_count, big(136));
    assert_eq!(census_recursion(&p(2, 6, 2)).unwrap().d_count, big(2240));
    assert_eq!(census_recursion(&p(2, 7, 3)).unwrap().d_count, big(17496));
    assert_eq!(census_recursion(&p(2, 4, 2)).unwrap().d_sl_count, None);
}

#[test]
fn indecomposable_monic_original() {
    for (k, want) in [(1, 3u32), (2, 22), (3, 468)] {
        assert_eq!(indec_monic_original_count(2, k, 2).unwrap(), BigUint::from(want));
        assert_eq!(indec_monic_original_count_enumerated(2, k, 2, 1 << 12).unwrap(), BigUint::from(want));
    }
}

#[test]
fn small_methods_agree_and_are_worker_independent() {
    for (n, d, q) in [(2, 2, 3), (2, 3, 3), (2, 4, 3), (3, 2, 2), (3, 3, 2), (3, 4, 2), (2, 6, 2)] {
        let pr = p(n, d, q);
        let e1 = census_enumeration(&pr, false, &CensusConfig::default().with_workers(1)).unwrap();
        let e3 = census_enumeration(&pr, false, &CensusConfig::default().with_workers(3)).unwrap();
        assert_eq!(e1.per_divisor_image_sizes, e3.per_divisor_image_sizes);
        assert!(e1.counts_agree(&e3));
        assert!(e1.counts_agree(&census_recursion(&pr).unwrap()), "{n} {d} {q}");
        if exact_space_size(&pr).unwrap() <= BigUint::from(1u32 << 20) {
            let b = census_bruteforce(&pr, &cfg()).unwrap();
            assert!(e1.counts_agree(&b), "{n} {d} {q}: {:?} vs {:?}", e1.d_count, b.d_count);
            assert_eq!(b.uniqueness_violations, Some(0));
        }
    }
}

#[test]
fn verify_examples() {
    for (n, d, q) in [(2, 6, 2), (2, 5, 2), (2, 5, 3), (2, 9, 2), (3, 4, 2)] {
        let v = verify(&p(n, d, q), &cfg()).unwrap();
        assert!(v.all_pass(), "{n} {d} {q}: {:#?}", v.checks);
    }
    let v = verify(&p(2, 6, 2), &cfg()).unwrap();
    let lower = v.checks.iter().find(|c| c.name == "lower").unwrap();
    assert_eq!((lower.lhs.as_str(), lower.rhs.as_str()), ("960", "2240"));
}

#[test]
fn report_json_uses_decimal_strings() {
    let r = census_enumeration(&p(2, 4, 2), false, &cfg()).unwrap();
    let j = r.to_json();
    assert_eq!(j["d_count"], "136");
    assert_eq!(j["method"], "enumeration");
    assert_eq!(j["per_divisor_image_sizes"]["2"], r.per_divisor_image_sizes[&2].to_string());
}
