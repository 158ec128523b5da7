mod common;

use num_bigint::BigUint;
use proptest::collection::vec;
use proptest::prelude::*;
use sumset::lunar::{lunar_divisor_count_enumerated, lunar_mul};
use sumset::multiset::{
    beta_b, multisum, setarray_divisor_count, setarray_divisor_count_formula,
    setarray_divisor_count_headstrong, setarray_divisor_count_reduced, setarray_divisors,
    star_collapse, to_set_array, SetArray,
};
use sumset::FiniteSet;

fn multiset(height: usize, max: usize) -> impl Strategy<Value = SetArray> {
    vec(0..=height as u32, 0..=max + 1).prop_map(move |f| to_set_array(&f, height).unwrap())
}

fn pair() -> impl Strategy<Value = (SetArray, SetArray)> {
    (1usize..=4).prop_flat_map(|h| (multiset(h, 8), multiset(h, 8)))
}

/// Every multiset of the given height with elements in `[0, max]`.
fn all_multisets(height: usize, max: u32) -> Vec<SetArray> {
    let radix = height as u64 + 1;
    let width = max as usize + 1;
    (0..radix.pow(width as u32))
        .map(|mut code| {
            let f: Vec<u32> = (0..width)
                .map(|_| {
                    let d = (code % radix) as u32;
                    code /= radix;
                    d
                })
                .collect();
            to_set_array(&f, height).unwrap()
        })
        .collect()
}

fn is_chain(x: &SetArray) -> bool {
    x.coords().windows(2).all(|w| w[1].is_subset(&w[0]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn beta_b_is_a_homomorphism((x, y) in pair()) {
        let s = multisum(&x, &y).unwrap();
        prop_assert!(is_chain(&s));
        prop_assert_eq!(beta_b(&s), lunar_mul(&beta_b(&x), &beta_b(&y)).unwrap());
    }

    #[test]
    fn text_round_trip((x, _y) in pair()) {
        prop_assert_eq!(x.to_string().parse::<SetArray>().unwrap(), x.clone());
        prop_assert_eq!(SetArray::from_lunar(&beta_b(&x)).unwrap(), x);
    }
}

#[test]
fn brute_force_agrees_with_lunar_enumeration() {
    // Two independent searches: chains of sets, and digit strings.
    for h in 1..=3usize {
        let max = if h == 3 { 3 } else { 5 };
        for x in all_multisets(h, max).iter().filter(|x| !x.is_zero()) {
            assert_eq!(
                setarray_divisor_count(x).unwrap(),
                lunar_divisor_count_enumerated(&beta_b(x)).unwrap(),
                "{x}"
            );
        }
    }
}

#[test]
fn formula_matches_brute_force() {
    for h in [2usize, 3] {
        for bits in 1u128..64 {
            let a = FiniteSet::from_bits(bits);
            let x = SetArray::from_set(&a, h).unwrap();
            let brute = BigUint::from(setarray_divisor_count(&x).unwrap());
            assert_eq!(setarray_divisor_count_formula(&a, h).unwrap(), brute, "{x}");
            assert_eq!(setarray_divisor_count_reduced(&a, h).unwrap(), brute, "{x}");
            if let Some(v) = setarray_divisor_count_headstrong(&a, h).unwrap() {
                assert_eq!(v, brute, "{x}");
            }
        }
    }
}

#[test]
fn collapse_never_loses_divisors() {
    for (h, max) in [(1usize, 6u32), (2, 6), (3, 5)] {
        for x in all_multisets(h, max).iter().filter(|x| !x.is_zero()) {
            let star = star_collapse(x);
            let ds = setarray_divisors(x).unwrap();
            let star_ds = setarray_divisors(&star).unwrap();
            assert!(ds.iter().all(|d| star_ds.contains(d)), "{x}");
            if x.coords().len() > 1 && !x.coords()[1].is_empty() {
                assert!(star_ds.len() > ds.len(), "{x}");
            } else {
                assert_eq!(star_ds.len(), ds.len(), "{x}");
            }
        }
    }
}

#[test]
fn height_two_maximum() {
    for k in 0..=5u32 {
        let full = SetArray::from_set(&FiniteSet::interval(k).unwrap(), 2).unwrap();
        let best = setarray_divisor_count_formula(&FiniteSet::interval(k).unwrap(), 2).unwrap();
        for x in all_multisets(2, k).iter().filter(|x| !x.is_zero() && **x != full) {
            assert!(BigUint::from(setarray_divisor_count(x).unwrap()) < best, "{x} vs [{k}]");
        }
    }
}
