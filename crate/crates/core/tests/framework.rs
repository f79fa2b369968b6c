mod common;

use num_bigint::BigUint;
use pdigits::asymptotics::eval_constants;
use pdigits::digits::LogBase;
use pdigits::framework::{
    compute_bounds, find_m_a_delta, find_m_a_delta_with_fallback, instantiate_p, instantiate_pl,
    theorem_bound, uniform_delta,
};
use pdigits::search::Searcher;
use pdigits::{leading_digits, Ball, DigitString, Kind, SequenceTable};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const P: u32 = 128;

fn ceil_big(x: &Ball) -> BigUint {
    x.ceil_upper().try_into().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_form_dominates_the_framework(b in 2u32..=100, t in 1u32..=8) {
        prop_assume!(!(b == 2 && t == 1));
        let delta = uniform_delta::<Ball>(b, t, P);
        let bp = compute_bounds(&instantiate_p::<Ball>(b, P).unwrap(), &delta).unwrap();
        let np = theorem_bound(Kind::Partition, b, t).unwrap();
        let two_l2 = (bp.l2.clone() + Ball::from_int(1, P)).mul_u64(2);
        prop_assert!(ceil_big(&two_l2) <= np);
        prop_assert!(bp.bound <= np);

        let constants = eval_constants(P).unwrap();
        let bpl = compute_bounds(&instantiate_pl(b, &constants).unwrap(), &delta).unwrap();
        let npl = theorem_bound(Kind::PlanePartition, b, t).unwrap();
        prop_assert!(ceil_big(&bpl.l2.mul_u64(2)) <= npl);
    }

    #[test]
    fn bound_shrinks_as_delta_grows(b in 2u32..=40, d1 in 1i64..999, d2 in 1i64..999) {
        let (lo, hi) = (d1.min(d2), d1.max(d2));
        let params = instantiate_p::<Ball>(b, P).unwrap();
        let small = compute_bounds(&params, &Ball::from_ratio_i64(lo, 1000, P)).unwrap();
        let large = compute_bounds(&params, &Ball::from_ratio_i64(hi, 1000, P)).unwrap();
        prop_assert!(large.bound <= small.bound);
    }

    #[test]
    fn scale_relations(b in 2u32..=40, d in 1i64..999, lambda in 1i64..50) {
        let params = instantiate_p::<f64>(b, ()).unwrap();
        let delta = d as f64 / 1000.0;
        let lam = lambda as f64 / 10.0;
        let one = compute_bounds(&params, &delta).unwrap();
        let scaled = compute_bounds(&params, &(delta / lam)).unwrap();
        let close = |x: f64, y: f64| (x / y - 1.0).abs() < 1e-10;
        prop_assert!(close(one.l3, one.d.powf(2.0)));
        prop_assert!(close(scaled.l2, lam.powf(2.0) * one.l2));
        prop_assert!(close(scaled.l4, lam.powf(2.0) * one.l4));
    }
}

#[test]
fn golden_ratio() {
    let g = |m: u64, prec: u32| {
        (Ball::from_int(5, prec).sqrt() - Ball::from_int(1, prec))
            .div_u64(2)
            .mul_u64(m)
    };
    let a = Ball::zero(P);
    let d = Ball::from_ratio_i64(1, 2, P);
    assert_eq!(find_m_a_delta(g, 1, &a, &d, 10).unwrap(), Some(2));
    assert_eq!(find_m_a_delta(g, 2, &a, &d, 10).unwrap(), Some(2));
}

#[test]
fn matches_exact_search_on_partitions() {
    let mut table = SequenceTable::new(Kind::Partition);
    table.extend(400).unwrap();
    let log = LogBase::new(10, 192).unwrap();
    for f in DigitString::all(10, 1).unwrap() {
        let window = log.target_interval(&f).unwrap();
        let g = |m: u64, prec: u32| {
            Ball::ln_biguint(&table.values()[m as usize], prec) / Ball::ln_u64(10, prec)
        };
        let exact = |m: u64, _| Ok(leading_digits(&table.values()[m as usize], 10, 1)? == f);
        let m = find_m_a_delta_with_fallback(g, 4, &window.lo, &window.delta(), 400, exact)
            .unwrap()
            .unwrap();
        // the first n >= 4 found by a plain digit scan
        let naive = (4..=400)
            .find(|&n| table.values()[n].to_string().starts_with(&f.to_string()))
            .unwrap() as u64;
        assert_eq!(m, naive, "f = {f}");
        let n_min = Searcher::new(Kind::Partition)
            .find_min_n(&f, 400)
            .unwrap()
            .n_min
            .unwrap();
        if n_min >= 4 {
            assert_eq!(m, n_min, "f = {f}");
        }
    }
}

#[test]
fn synthetic_instances_hit_below_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..40 {
        let inst = common::Instance::random(&mut rng, common::adversary(i));
        let (hit, limit) = inst.run(P);
        assert!(
            hit.is_some_and(|m| m <= limit),
            "{inst:?}: {hit:?} > {limit}"
        );
    }
}

#[test]
fn plane_partition_l4_overtakes_l2() {
    // L4 / L2 grows like (b^t / ln b)^(3/2); the two cross near b^t / ln b = 37.1
    let constants = eval_constants(P).unwrap();
    let check = |b: u32, t: u32| {
        let delta = uniform_delta::<Ball>(b, t, P);
        let bounds = compute_bounds(&instantiate_pl(b, &constants).unwrap(), &delta).unwrap();
        bounds.l4.certainly_lt(&bounds.l2)
    };
    // b^t / ln b is 23.1 at (2, 4) and 46.2 at (2, 5)
    assert!(check(10, 1) && check(16, 1) && check(2, 3) && check(2, 4));
    assert!(!check(2, 5) && !check(10, 2) && !check(16, 2));
}
