mod common;

use common::{all_sets, bits_to_vec, divisibility_table, naive_sum, set};
use proptest::collection::btree_set;
use proptest::prelude::*;
use sumset::set::{
    divides, divisor_count, divisor_count_exhaustive, divisors, is_irreducible, sum,
};
use sumset::{Error, FiniteSet};

fn small_set(max: u32) -> impl Strategy<Value = FiniteSet> {
    btree_set(0..=max, 1..8).prop_map(|s| FiniteSet::new(s).unwrap())
}

proptest! {
    #[test]
    fn sum_matches_definition(a in small_set(20), b in small_set(20)) {
        let got = sum(&a, &b).unwrap().to_vec();
        prop_assert_eq!(got, naive_sum(&a.to_vec(), &b.to_vec()));
    }

    #[test]
    fn sum_commutes_and_associates(a in small_set(20), b in small_set(20), c in small_set(20)) {
        prop_assert_eq!(sum(&a, &b).unwrap(), sum(&b, &a).unwrap());
        let left = sum(&sum(&a, &b).unwrap(), &c).unwrap();
        let right = sum(&a, &sum(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn sum_extremes(a in small_set(40), b in small_set(40)) {
        let s = sum(&a, &b).unwrap();
        prop_assert_eq!(s.max_element().unwrap(), a.max_element().unwrap() + b.max_element().unwrap());
        prop_assert_eq!(s.min_element().unwrap(), a.min_element().unwrap() + b.min_element().unwrap());
    }

    #[test]
    fn display_parse_round_trip(a in btree_set(0u32..=127, 0..12)) {
        let a = FiniteSet::new(a).unwrap();
        prop_assert_eq!(a.to_string().parse::<FiniteSet>().unwrap(), a);
    }

    #[test]
    fn every_divisor_has_a_cofactor(a in small_set(14)) {
        for b in divisors(&a).unwrap() {
            let q = sumset::set::quotient_max(&a, &b).unwrap();
            prop_assert_eq!(sum(&b, &q).unwrap(), a);
        }
    }

    #[test]
    fn divisors_include_trivial_ones(a in small_set(30)) {
        let ds = divisors(&a).unwrap();
        prop_assert!(ds.contains(&set(&[0])));
        prop_assert!(ds.contains(&a));
        if a != set(&[0]) {
            prop_assert!(divisor_count(&a).unwrap() >= 2);
        }
    }

    #[test]
    fn ordering_is_size_then_lexicographic(a in small_set(30), b in small_set(30)) {
        let key = |s: &FiniteSet| (s.len(), s.to_vec());
        prop_assert_eq!(a.cmp(&b), key(&a).cmp(&key(&b)));
    }
}

#[test]
fn divides_agrees_with_pair_table() {
    let table = divisibility_table(10);
    for a in all_sets(10) {
        let fa = FiniteSet::from_bits(a);
        let top = 127 - a.leading_zeros();
        for b in all_sets(top) {
            let want = table.contains(&(b, a));
            assert_eq!(divides(&FiniteSet::from_bits(b), &fa).unwrap(), want, "{b:b} | {a:b}");
        }
    }
}

#[test]
fn divisor_lists_agree_with_pair_table() {
    let table = divisibility_table(10);
    for a in all_sets(10) {
        let fa = FiniteSet::from_bits(a);
        let mut want: Vec<FiniteSet> = table
            .iter()
            .filter(|(_, s)| *s == a)
            .map(|(b, _)| FiniteSet::from_bits(*b))
            .collect();
        want.sort();
        want.dedup();
        assert_eq!(divisors(&fa).unwrap(), want, "{fa}");
        assert_eq!(divisor_count(&fa).unwrap(), want.len() as u64);
    }
}

#[test]
fn shifted_identity_up_to_twelve() {
    for a in all_sets(12) {
        let a = FiniteSet::from_bits(a);
        let r = a.min_element().unwrap() as u64;
        let core = a.shift_down(r as u32);
        assert_eq!(divisor_count_exhaustive(&a).unwrap(), (r + 1) * divisor_count_exhaustive(&core).unwrap());
        assert_eq!(divisor_count(&a).unwrap(), divisor_count_exhaustive(&a).unwrap());
    }
}

#[test]
fn interval_counts() {
    // Column sums of the F table / row sums of the H table.
    let want = [1u64, 2, 3, 5, 8, 14, 24, 43, 77, 140];
    for (k, &d) in want.iter().enumerate() {
        let full = FiniteSet::interval(k as u32).unwrap();
        assert_eq!(divisor_count_exhaustive(&full).unwrap(), d);
        assert_eq!(divisor_count(&full).unwrap(), d);
    }
}

#[test]
fn interval_doubling_and_step_bounds() {
    let d: Vec<u64> = (0..=16)
        .map(|k| divisor_count(&FiniteSet::interval(k).unwrap()).unwrap())
        .collect();
    for k in 1..=16 {
        assert!(2 * d[k - 1] >= d[k], "k = {k}");
        if k > 1 {
            assert!(2 * d[k - 1] > d[k], "k = {k}");
        }
    }
    for k in 1..=16usize {
        for j in 1..=k {
            let lhs = (j as u64 + 1) * d[k - j];
            let rhs = 2 * d[k - 1];
            assert!(lhs <= rhs, "k = {k}, j = {j}");
            assert_eq!(lhs == rhs, j == 1 || (k, j) == (3, 2), "k = {k}, j = {j}");
        }
    }
}

#[test]
fn irreducible_matches_factor_search() {
    let k = 10;
    let mut reducible = std::collections::HashSet::new();
    for b in all_sets(k).filter(|b| b.count_ones() >= 2) {
        let mb = 127 - b.leading_zeros();
        for c in all_sets(k - mb).filter(|c| c.count_ones() >= 2) {
            let s = naive_sum(&bits_to_vec(b), &bits_to_vec(c));
            reducible.insert(s.iter().fold(0u128, |acc, &x| acc | 1 << x));
        }
    }
    for a in all_sets(k).filter(|a| a.count_ones() >= 2) {
        assert_eq!(
            is_irreducible(&FiniteSet::from_bits(a)).unwrap(),
            !reducible.contains(&a),
            "{a:b}"
        );
    }
    assert!(matches!(is_irreducible(&set(&[3])), Err(Error::Precondition(_))));
}

#[test]
fn capacity_and_empty_errors() {
    assert!(matches!(sum(&FiniteSet::empty(), &set(&[0])), Err(Error::EmptyOperand(_))));
    assert!(matches!(sum(&set(&[100]), &set(&[30])), Err(Error::Capacity { .. })));
    assert!(matches!(divisors(&set(&[64])), Err(Error::Capacity { .. })));
    assert!(sumset::set::divisors_bounded(&set(&[0, 64]), 64).is_ok());
}
