//! One pass/fail line per acceptance criterion.
//!
//! Every comparison is exact. Values marked as oracles are computed here
//! with plain big-integer arithmetic, independent of the library. A criterion
//! that cannot be met within the census budget prints FAIL with the reason;
//! the test itself only fails on a wrong value, a failed inequality or a
//! method disagreement.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use polydecomp::census::{
    census_bruteforce, census_enumeration, census_recursion, verify_with, CensusConfig, CensusError, CensusReport,
};
use polydecomp::formulas::{
    self, beta, beta_star, bounds, dim_decomposables, dim_superlinear, exact_two_prime, landmarks,
    max_u_over_divisors, rival_exponents, sl_bounds, space_sizes, u_int, Params, QNum,
};

const ENUM_BUDGET: u64 = 1 << 30;
const BRUTE_BUDGET: u64 = 1 << 28;

#[derive(Default)]
struct Outcome {
    pass: bool,
    /// Only budget infeasibility kept the criterion from passing.
    infeasible_only: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, infeasible_only: false, detail: detail.into() }
    }
}

fn p(n: u32, d: u32, q: u64) -> Params {
    Params::new(n, d, Some(q)).unwrap()
}

fn binom(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1)) as u64
}

fn big(q: u64, e: u64) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

fn is_prime(d: u32) -> bool {
    d >= 2 && (2..d).take_while(|k| k * k <= d).all(|k| d % k != 0)
}

fn count(r: &CensusReport) -> BigUint {
    r.d_count.clone().expect("full census")
}

fn infeasible(e: &CensusError) -> bool {
    matches!(e, CensusError::BudgetExceeded { .. } | CensusError::KeyTooWide { .. })
}

struct Runner {
    cfg: CensusConfig,
    enums: HashMap<(u32, u32, u64, bool), Result<CensusReport, CensusError>>,
    /// Count fields of every census run, in order, for the determinism check.
    trace: Vec<String>,
}

impl Runner {
    fn new(workers: usize) -> Self {
        Runner { cfg: CensusConfig::default().with_workers(workers).with_budget(ENUM_BUDGET), enums: HashMap::new(), trace: vec![] }
    }

    fn log(&mut self, r: &CensusReport) {
        self.trace.push(format!(
            "{} {} {} {} {:?} {:?} {:?} {:?} {:?}",
            r.params.n, r.params.d, r.params.q.unwrap(), r.method, r.d_count, r.d_sl_count, r.i_count,
            r.per_divisor_image_sizes, r.uniqueness_violations
        ));
    }

    fn enumeration(&mut self, n: u32, d: u32, q: u64, sl: bool) -> Result<CensusReport, CensusError> {
        if !self.enums.contains_key(&(n, d, q, sl)) {
            let r = census_enumeration(&p(n, d, q), sl, &self.cfg);
            if let Ok(rep) = &r {
                self.log(rep);
            }
            self.enums.insert((n, d, q, sl), r);
        }
        self.enums[&(n, d, q, sl)].clone()
    }

    fn bruteforce(&mut self, n: u32, d: u32, q: u64) -> Result<CensusReport, CensusError> {
        let r = census_bruteforce(&p(n, d, q), &self.cfg.clone().with_budget(BRUTE_BUDGET));
        if let Ok(rep) = &r {
            self.log(rep);
        }
        r
    }

    fn recursion(&mut self, n: u32, d: u32, q: u64) -> CensusReport {
        let r = census_recursion(&p(n, d, q)).unwrap();
        self.log(&r);
        r
    }
}

fn criterion_1(run: &mut Runner) -> Outcome {
    let start = Instant::now();
    let mut bad = vec![];
    let mut shown = vec![];
    for (n, d, q) in [(2u32, 2u32, 2u64), (2, 3, 2), (2, 3, 3), (2, 5, 2), (2, 7, 3), (3, 2, 2), (3, 3, 2)] {
        // oracle: alpha = q^(b(n,1)+d-1) - q^(b(n,1)+d-1-b(n-1,1)) = q^(n+d) - q^d
        let oracle = big(q, (n + d) as u64) - big(q, d as u64);
        let alpha = bounds(&p(n, d, q)).unwrap().alpha.to_biguint(64).unwrap();
        let c = count(&run.enumeration(n, d, q, false).unwrap());
        if c != oracle || alpha != oracle {
            bad.push(format!("({n},{d},{q}): #D={c} alpha={alpha} oracle={oracle}"));
        }
        if [(2, 5, 2), (2, 7, 3)].contains(&(n, d, q)) {
            shown.push(format!("({n},{d},{q}) #D={c}"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = bad.is_empty() && secs < 10.0;
    Outcome::new(ok, format!("7 prime-degree instances, #D = alpha exactly; {}; {secs:.2}s {}", shown.join(", "), bad.join("; ")))
}

const GRID_D: [u32; 6] = [4, 6, 8, 9, 10, 12];

/// `#D` for the bracket grid: enumeration, or the recursion when enumeration
/// exceeds the budget.
fn grid_count(run: &mut Runner, n: u32, d: u32, q: u64) -> (BigUint, bool, f64) {
    match run.enumeration(n, d, q, false) {
        Ok(r) => (count(&r), true, r.elapsed.as_secs_f64()),
        Err(e) if infeasible(&e) => (count(&run.recursion(n, d, q)), false, 0.0),
        Err(e) => panic!("{e}"),
    }
}

fn num(q: u64, v: &BigUint) -> QNum {
    QNum::int(q, BigInt::from(v.clone()))
}

fn criterion_2_3(run: &mut Runner) -> (Outcome, Outcome) {
    let (mut bad2, mut bad3, mut no_enum, mut slow) = (vec![], vec![], vec![], vec![]);
    for n in [2u32, 3] {
        for q in [2u64, 3] {
            for d in GRID_D {
                let (c, by_enum, secs) = grid_count(run, n, d, q);
                let b = bounds(&p(n, d, q)).unwrap();
                let cn = num(q, &c);
                if b.lower.cmp_num(&cn).is_gt() || cn.cmp_num(&b.upper).is_gt() {
                    bad2.push(format!("({n},{d},{q}) #D={c} not in [{}, {}]", b.lower, b.upper));
                }
                let i = space_sizes(n, d, q).unwrap().exact.sub(&cn);
                if i.cmp_num(&b.indec_lower).is_lt() {
                    bad3.push(format!("({n},{d},{q})"));
                }
                if !by_enum {
                    no_enum.push(format!("({n},{d},{q})"));
                }
                if secs > 60.0 {
                    slow.push(format!("({n},{d},{q}) {secs:.0}s"));
                }
            }
        }
    }
    // spot values
    let b = bounds(&p(2, 4, 2)).unwrap();
    let spot4 = (b.lower.to_string(), b.upper.to_string()) == ("56".into(), "168".into());
    let b = bounds(&p(2, 6, 2)).unwrap();
    let spot6 = (b.lower.to_string(), b.upper.to_string()) == ("960".into(), "2880".into());
    let c4 = grid_count(run, 2, 4, 2).0;
    let c6 = grid_count(run, 2, 6, 2).0;
    let spots = spot4 && spot6 && c4 == BigUint::from(136u32) && c6 == BigUint::from(2240u32);
    let i4 = BigUint::from(31744u32) - &c4;
    let spot3 = i4 == BigUint::from(31608u32) && formulas::bounds(&p(2, 4, 2)).unwrap().indec_lower.to_string() == "31520";

    let wrong2 = !bad2.is_empty() || !spots || !slow.is_empty();
    let mut o2 = Outcome::new(
        !wrong2 && no_enum.is_empty(),
        format!(
            "24 grid instances, alpha(1-beta) <= #D <= alpha(1+beta) holds on {}; (2,4,2) 136 in [56,168], (2,6,2) 2240 in [960,2880]; enumeration over budget {} at {} (recursion count used) {}{}",
            24 - bad2.len(),
            ENUM_BUDGET,
            if no_enum.is_empty() { "none".to_string() } else { no_enum.join(" ") },
            bad2.join("; "),
            slow.join(" "),
        ),
    );
    o2.infeasible_only = !wrong2;
    let wrong3 = !bad3.is_empty() || !spot3;
    let mut o3 = Outcome::new(
        !wrong3 && no_enum.is_empty(),
        format!(
            "#I >= #P= - 2 alpha holds on {} of 24; (2,4,2) 31608 >= 31520; enumeration over budget at {} {}",
            24 - bad3.len(),
            no_enum.len(),
            bad3.join(" ")
        ),
    );
    o3.infeasible_only = !wrong3;
    (o2, o3)
}

fn criterion_4(run: &mut Runner) -> Outcome {
    let (mut bad, mut over, mut held) = (vec![], vec![], 0);
    for q in [2u64, 3] {
        for d in [4u32, 6, 8, 9, 12] {
            let r = match run.enumeration(2, d, q, true) {
                Ok(r) => r,
                Err(e) if infeasible(&e) => {
                    over.push(format!("(2,{d},{q})"));
                    continue;
                }
                Err(e) => panic!("{e}"),
            };
            let sl = r.d_sl_count.clone().unwrap();
            let s = sl_bounds(&p(2, d, q)).unwrap();
            let x = num(q, &sl);
            let exact = space_sizes(2, d, q).unwrap().exact;
            let indec_ok = exact.sub(&x).cmp_num(&exact.sub(&s.alpha_sl.scale(&BigRational::from_integer(2.into())))).is_ge();
            if s.lower.cmp_num(&x).is_gt() || x.cmp_num(&s.upper).is_gt() || !indec_ok {
                bad.push(format!("(2,{d},{q}) #D^sl={sl} bracket [{}, {}]", s.lower, s.upper));
            } else {
                held += 1;
            }
        }
    }
    let mut o = Outcome::new(
        bad.is_empty() && over.is_empty(),
        format!(
            "superlinear brackets and #I^sl bound hold on {held} of 10; enumeration over budget at {} {}",
            if over.is_empty() { "none".into() } else { over.join(" ") },
            bad.join("; ")
        ),
    );
    o.infeasible_only = bad.is_empty();
    o
}

fn criterion_5(run: &mut Runner) -> Outcome {
    let mut bad = vec![];
    let mut vals = vec![];
    for (n, d, q) in [(2u32, 4u32, 2u64), (2, 6, 2), (2, 6, 3), (2, 9, 2), (3, 6, 2)] {
        let c = count(&run.enumeration(n, d, q, false).unwrap());
        let t = exact_two_prime(&p(n, d, q)).unwrap().count.to_biguint(1 << 12).unwrap();
        if c != t {
            bad.push(format!("({n},{d},{q}) census {c} formula {t}"));
        }
        vals.push(format!("({n},{d},{q})={c}"));
    }
    let spot = vals[0].ends_with("=136") && vals[1].ends_with("=2240");
    Outcome::new(bad.is_empty() && spot, format!("exact two-prime count = census #D: {} {}", vals.join(" "), bad.join("; ")))
}

fn criterion_6(run: &mut Runner) -> Outcome {
    let (mut bad, mut over, mut triangles) = (vec![], vec![], 0);
    for d in [2u32, 3, 4, 6] {
        let e = run.enumeration(2, d, 2, false).unwrap();
        let b = run.bruteforce(2, d, 2).unwrap();
        let r = run.recursion(2, d, 2);
        if e.counts_agree(&b) && e.counts_agree(&r) && b.counts_agree(&r) && e.d_sl_count == b.d_sl_count {
            triangles += 1;
        } else {
            bad.push(format!("(2,{d},2) enum {:?} brute {:?} rec {:?}", e.d_count, b.d_count, r.d_count));
        }
    }
    let mut pairs = 0;
    for q in [2u64, 3] {
        for d in [8u32, 9, 10, 12] {
            let r = run.recursion(2, d, q);
            match run.enumeration(2, d, q, false) {
                Ok(e) if e.counts_agree(&r) => pairs += 1,
                Ok(e) => bad.push(format!("(2,{d},{q}) enum {:?} rec {:?}", e.d_count, r.d_count)),
                Err(e) if infeasible(&e) => over.push(format!("(2,{d},{q})")),
                Err(e) => panic!("{e}"),
            }
        }
    }
    let mut o = Outcome::new(
        bad.is_empty() && over.is_empty(),
        format!(
            "enumeration = bruteforce = recursion on {triangles} of 4; recursion = enumeration on {pairs} of 8; enumeration over budget at {} {}",
            if over.is_empty() { "none".into() } else { over.join(" ") },
            bad.join("; ")
        ),
    );
    o.infeasible_only = bad.is_empty();
    o
}

fn criterion_7(run: &mut Runner) -> Outcome {
    let start = Instant::now();
    let mut parts = vec![];
    let mut ok = true;
    for d in [2u32, 3, 4, 6] {
        let r = run.bruteforce(2, d, 2).unwrap();
        let v = r.uniqueness_violations.unwrap();
        let total = r.d_count.clone().unwrap() + r.i_count.clone().unwrap();
        // oracle: #P= = 2^b(2,d) - 2^b(2,d-1)
        let exact = big(2, binom(d as u64 + 2, 2)) - big(2, binom(d as u64 + 1, 2));
        ok &= v == 0 && total == exact;
        parts.push(format!("d={d}: {v} of {total}"));
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome::new(ok && secs < 300.0, format!("uniqueness violations over all of P=(2,d,F2): {}; {secs:.1}s", parts.join(", ")))
}

fn criterion_8() -> Outcome {
    let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
    let vals = [(2u32, 22i64), (5, 10), (10, 12)];
    let mut ok = vals.iter().all(|&(e, v)| u_int(2, 10, e).unwrap() == r(v, 1));
    let lm = landmarks(10).unwrap();
    ok &= lm.l_star == r(5, 2);
    ok &= lm.s_0.shift().is_zero() && lm.s_0.coeff().is_one() && lm.s_0.radicand() == 10;
    ok &= lm.l_0.shift().is_one() && lm.l_0.coeff().is_one() && lm.l_0.radicand() == 6;
    ok &= formulas::u(2, 10, &lm.l_star).unwrap() == r(33, 2);
    Outcome::new(ok, format!("u(2)=22 u(5)=10 u(10)=12, l*={}, s0={}, l0={}", lm.l_star, lm.s_0, lm.l_0))
}

/// `b(n,k)` for the oracle.
fn b(n: u32, k: u32) -> u64 {
    binom((n + k) as u64, k as u64)
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut bad = vec![];
    for n in 2..=8u32 {
        for d in 2..=500u32 {
            // oracle: integer maximum of b(n, d/e) + e - 1 over divisors
            let best = (2..=d).filter(|e| d % e == 0).map(|e| b(n, d / e) + e as u64 - 1).max().unwrap();
            let (e, v) = max_u_over_divisors(n, d).unwrap();
            let dim = dim_decomposables(n, d).unwrap();
            let m = p(n, d, 2).m;
            let um = u_int(n, d, m).unwrap();
            if v != BigUint::from(best) || dim != v || um != BigRational::from_integer(BigInt::from(best)) {
                bad.push(format!("({n},{d}) e={e} u={v} dim={dim} oracle={best}"));
            }
        }
    }
    let collide = u_int(2, 36, 9).unwrap() == BigRational::from_integer(23.into())
        && u_int(2, 36, 18).unwrap() == BigRational::from_integer(23.into());
    let secs = start.elapsed().as_secs_f64();
    Outcome::new(
        bad.is_empty() && collide && secs < 30.0,
        format!("max over divisors = u(m) = dim for 3493 (n,d); u(2,36)(9) = u(2,36)(18) = 23: {collide}; {secs:.1}s {}", bad.join("; ")),
    )
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let (mut bad, mut checked) = (vec![], 0u64);
    let one = |q| QNum::small(q, 1);
    for n in 2..=8u32 {
        for d in 2..=500u32 {
            let dim = dim_decomposables(n, d).unwrap();
            for q in [2u64, 3, 4, 5] {
                let pr = p(n, d, q);
                let bt = beta(&pr).unwrap();
                let alpha = formulas::alpha(&pr).unwrap();
                let mut fails = vec![];
                if bt.cmp_num(&one(q)).is_gt() {
                    fails.push("beta<=1");
                }
                if !pr.is_prime_degree() && beta_star(&pr).unwrap().cmp_from(&bt).is_gt() {
                    fails.push("beta<=beta*");
                }
                if alpha.max_exponent().map(|e| BigInt::from(e)) != Some(BigInt::from(dim.clone())) {
                    fails.push("alpha exponent");
                }
                let s = space_sizes(n, d, q).unwrap();
                if s.monic_original.scale(&BigRational::from_integer(BigInt::from(q * (q - 1)))) != s.exact {
                    fails.push("#P0 q(q-1)");
                }
                if !fails.is_empty() {
                    bad.push(format!("({n},{d},{q}) {}", fails.join(",")));
                }
                checked += 1;
            }
        }
    }
    let mut rival_bad = vec![];
    for d in (4..=500u32).filter(|&d| !is_prime(d)) {
        if !rival_exponents(d).unwrap().ordered() {
            rival_bad.push(d);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let first = bad.iter().take(5).cloned().collect::<Vec<_>>().join("; ");
    Outcome::new(
        bad.is_empty() && rival_bad.is_empty() && secs < 60.0,
        format!(
            "{checked} (n,d,q): {} violations; rival ordering fails at {:?}; {secs:.1}s {first}",
            bad.len(),
            rival_bad
        ),
    )
}

fn criterion_11() -> Outcome {
    let pr = p(2, 25, 2);
    let t = exact_two_prime(&pr).unwrap().count;
    let bd = bounds(&pr).unwrap();
    let in_bracket = bd.lower.cmp_num(&t).is_le() && t.cmp_num(&bd.upper).is_le();
    let value = t.to_biguint(64) == Some(BigUint::from(133691904u64));
    // oracle: alpha^sl = q^(C(a+2,2)+l-1) (1 - q^(-a-1)) with l = a = 5,
    // beta^sl = q^(-(d+l-2)/2) since d = l^2
    let s = sl_bounds(&pr).unwrap();
    let alpha_sl = big(2, binom(7, 2) + 4) - big(2, binom(7, 2) + 4 - 6);
    let sl_ok = s.alpha_sl.to_biguint(64) == Some(alpha_sl.clone())
        && s.beta_sl.to_rational(64) == Some(BigRational::new(1.into(), BigInt::from(2u32).pow(14u32)));
    let dims = dim_decomposables(2, 25).unwrap() == BigUint::from(27u32)
        && dim_superlinear(2, 25).unwrap() == Some(BigUint::from(25u32));
    Outcome::new(
        in_bracket && value && sl_ok && dims,
        format!(
            "(2,25,2): exact #D={t} in [{}, {}]; alpha^sl={} beta^sl={}; dim 27 > dim^sl 25: {dims}",
            bd.lower, bd.upper, s.alpha_sl, s.beta_sl
        ),
    )
}

fn criteria_1_to_6(run: &mut Runner) -> Vec<Outcome> {
    let c1 = criterion_1(run);
    let (c2, c3) = criterion_2_3(run);
    let c4 = criterion_4(run);
    let c5 = criterion_5(run);
    let c6 = criterion_6(run);
    vec![c1, c2, c3, c4, c5, c6]
}

#[test]
fn acceptance() {
    let mut one = Runner::new(1);
    let mut outcomes = criteria_1_to_6(&mut one);
    let traced = one.trace.len();
    outcomes.push(criterion_7(&mut one));
    outcomes.push(criterion_8());
    outcomes.push(criterion_9());
    outcomes.push(criterion_10());
    outcomes.push(criterion_11());

    let mut four = Runner::new(4);
    let again = criteria_1_to_6(&mut four);
    let identical = one.trace[..traced] == four.trace[..]
        && again.iter().zip(&outcomes).all(|(a, b)| a.pass == b.pass && a.detail.len() > 0 && b.detail.len() > 0);
    outcomes.push(Outcome::new(identical, format!("{traced} census reports for criteria 1-6 identical at workers 1 and 4")));

    // also run the verifier over the feasible grid as a cross-check
    for (n, d, q) in [(2u32, 6u32, 2u64), (2, 9, 2), (3, 4, 2)] {
        let r = one.enumeration(n, d, q, false).unwrap();
        let v = verify_with(&p(n, d, q), &r, r.d_sl_count.clone()).unwrap();
        assert!(v.all_pass(), "({n},{d},{q}) {:?}", v.checks);
    }

    println!();
    for (i, o) in outcomes.iter().enumerate() {
        println!("criterion {:>2} {}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail.trim_end());
    }
    let wrong: Vec<usize> =
        outcomes.iter().enumerate().filter(|(_, o)| !o.pass && !o.infeasible_only).map(|(i, _)| i + 1).collect();
    assert!(wrong.is_empty(), "criteria failing on values, not budget: {wrong:?}");
}
