use num_bigint::BigUint;
use pdigits::digits::LogBase;
use pdigits::search::{digit_census, find_min_n, verify_theorem, Method, Searcher};
use pdigits::{leading_digits, DigitString, Kind, Membership, SequenceTable};
use proptest::prelude::*;

/// First `n` whose base-`b` spelling starts with `f`.
fn naive(values: &[BigUint], f: &DigitString) -> Option<u64> {
    let want = f.value().to_str_radix(f.base());
    values
        .iter()
        .position(|v| v.to_str_radix(f.base()).starts_with(&want))
        .map(|n| n as u64)
}

fn values(kind: Kind, n: u64) -> Vec<BigUint> {
    let mut t = SequenceTable::new(kind);
    t.extend(n).unwrap();
    t.values().to_vec()
}

#[test]
fn agrees_with_naive_scan() {
    for (kind, base, t, n) in [
        (Kind::Partition, 10, 1, 200),
        (Kind::PlanePartition, 10, 1, 200),
        (Kind::Partition, 10, 2, 2000),
        (Kind::Partition, 16, 2, 2000),
        (Kind::Partition, 2, 4, 200),
        (Kind::PlanePartition, 7, 2, 400),
    ] {
        let vals = values(kind, n);
        let mut s = Searcher::new(kind);
        for f in DigitString::all(base, t).unwrap() {
            let Some(want) = naive(&vals, &f) else {
                assert!(s.find_min_n(&f, n).is_err(), "{kind} {f}");
                continue;
            };
            let got = s.find_min_n(&f, n).unwrap();
            assert_eq!(got.n_min, Some(want), "{kind} {f}");
            let lead = leading_digits(&vals[want as usize], base, t).unwrap();
            assert_eq!(lead, f);
        }
    }
}

#[test]
fn verify_matches_single_searches() {
    let report = verify_theorem(Kind::PlanePartition, 10, 1).unwrap();
    assert!(report.all_within_bound);
    assert_eq!(report.results.len(), 9);
    for r in &report.results {
        let single = find_min_n(Kind::PlanePartition, &r.f, 1000).unwrap();
        assert_eq!(single.n_min, r.n_min);
        assert_eq!(single.value_digit_count, r.value_digit_count);
    }
    assert_eq!(
        report.max_n_min,
        report.results.iter().filter_map(|r| r.n_min).max()
    );
}

#[test]
fn both_decision_paths_occur() {
    let r = verify_theorem(Kind::Partition, 10, 1).unwrap();
    let methods: Vec<Method> = r.results.iter().filter_map(|r| r.method).collect();
    assert!(methods.contains(&Method::Exact));
    assert!(methods.contains(&Method::AsymptoticConfirmedExact));
}

#[test]
fn certified_membership_audit() {
    // every certified verdict agrees with exact digits on 10^4 table values
    let vals = values(Kind::Partition, 10_000);
    for base in [3u32, 10] {
        let log = LogBase::new(base, 192).unwrap();
        let intervals: Vec<_> = DigitString::all(base, 2)
            .unwrap()
            .map(|f| (log.target_interval(&f).unwrap(), f))
            .collect();
        for v in vals.iter().skip(20) {
            let lead = leading_digits(v, base, 2).unwrap();
            let x = log.frac_log(v).unwrap().value;
            for (iv, f) in &intervals {
                match iv.classify(&x) {
                    Membership::Inside => assert_eq!(&lead, f),
                    Membership::Outside => assert_ne!(&lead, f),
                    Membership::Undecided => {}
                }
            }
        }
    }
}

#[test]
fn census_accounting() {
    let c = digit_census(Kind::PlanePartition, 10, 2, 300).unwrap();
    assert_eq!(c.total() + c.short_values, 300);
    let vals = values(Kind::PlanePartition, 300);
    let short = vals[1..].iter().filter(|v| v.to_string().len() < 2).count() as u64;
    assert_eq!(c.short_values, short);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn raising_the_limit_keeps_n_min(f in 1u32..100, extra in 0u64..500) {
        let f = DigitString::parse(&f.to_string(), 10).unwrap();
        let first = find_min_n(Kind::Partition, &f, 2000).unwrap();
        let n = first.n_min.unwrap();
        let again = find_min_n(Kind::Partition, &f, n + extra).unwrap();
        prop_assert_eq!(again.n_min, Some(n));
        prop_assert!(find_min_n(Kind::Partition, &f, n.saturating_sub(1)).is_err() || n == 0);
    }
}
