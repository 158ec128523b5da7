mod common;

use num_bigint::{BigInt, BigUint};
use sumset::compositions::{
    bounded_comp_count, composition_to_divisor, divisor_to_composition, enumerate_headstrong,
    fib_general, headstrong_by_parts, headstrong_count, headstrong_triangle, leading_diagonal,
    reconstruct_diagonal, weighted_row_sum, Composition, TriangleTable,
};
use sumset::set::{divisor_count, divisors, sum};
use sumset::FiniteSet;

const TABLE_F: [[u64; 10]; 5] = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    [0, 1, 1, 2, 3, 5, 8, 13, 21, 34],
    [0, 0, 1, 1, 2, 4, 7, 13, 24, 44],
    [0, 0, 0, 1, 1, 2, 4, 8, 15, 29],
    [0, 0, 0, 0, 1, 1, 2, 4, 8, 16],
];

const TABLE_H: [&[u64]; 10] = [
    &[1],
    &[1, 1],
    &[1, 1, 1],
    &[1, 2, 1, 1],
    &[1, 2, 3, 1, 1],
    &[1, 3, 4, 4, 1, 1],
    &[1, 3, 6, 7, 5, 1, 1],
    &[1, 4, 8, 11, 11, 6, 1, 1],
    &[1, 4, 11, 17, 19, 16, 7, 1, 1],
    &[1, 5, 13, 26, 32, 31, 22, 8, 1, 1],
];

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// Every composition of `n`, unrestricted.
fn all_compositions(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (1..=n)
        .flat_map(|first| {
            all_compositions(n - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

#[test]
fn tables_reproduce() {
    for (n, row) in TABLE_F.iter().enumerate() {
        for (k, &v) in row.iter().enumerate() {
            assert_eq!(fib_general(n as u32 + 1, k as u32 + 1), big(v), "F({}, {})", n + 1, k + 1);
        }
    }
    let t = TriangleTable::fibonacci(5, 10);
    assert_eq!(t.get(3, 10), Some(&big(44)));
    let h = headstrong_triangle(10);
    for (n, row) in TABLE_H.iter().enumerate() {
        let want: Vec<BigUint> = row.iter().map(|&v| big(v)).collect();
        assert_eq!(h[n], want, "row {}", n + 1);
        for (m, &v) in row.iter().enumerate() {
            assert_eq!(headstrong_by_parts(n as u32 + 1, m as u32 + 1), big(v));
        }
    }
}

#[test]
fn counts_agree_with_brute_force() {
    for n in 1..=16u32 {
        let all = all_compositions(n);
        let headstrong: Vec<&Vec<u32>> = all.iter().filter(|c| c.iter().all(|&p| p <= c[0])).collect();
        assert_eq!(headstrong_count(n), big(headstrong.len() as u64));
        for first in 1..=n {
            let with_first = headstrong.iter().filter(|c| c[0] == first).count();
            assert_eq!(fib_general(first, n), big(with_first as u64), "F({first}, {n})");
        }
        for m in 1..=n {
            let parts = headstrong.iter().filter(|c| c.len() == m as usize).count();
            assert_eq!(headstrong_by_parts(n, m), big(parts as u64));
            for s in 1..=n {
                let bounded = all.iter().filter(|c| c.len() == m as usize && c.iter().all(|&p| p <= s)).count();
                assert_eq!(bounded_comp_count(n, m, s), big(bounded as u64), "C({n}, {m}, {s})");
            }
        }
    }
}

#[test]
fn enumeration_consistency() {
    for n in 1..=18u32 {
        let listed = enumerate_headstrong(n).unwrap();
        let by_parts: BigUint = (1..=n).map(|m| headstrong_by_parts(n, m)).sum();
        assert_eq!(big(listed.len() as u64), headstrong_count(n));
        assert_eq!(by_parts, headstrong_count(n));
        assert!(listed.iter().all(Composition::is_headstrong));
        assert!(listed.iter().all(|c| c.total() == n));
        assert!(listed.windows(2).all(|w| w[0] != w[1]));
        if n > 1 {
            for m in 2..=n {
                let via_bounded: BigUint = (1..n).map(|s| bounded_comp_count(n - s, m - 1, s)).sum();
                assert_eq!(via_bounded, headstrong_by_parts(n, m), "H({n}, {m})");
            }
        }
    }
}

#[test]
fn interval_counts_are_headstrong_counts() {
    for k in 0..=14u32 {
        let d = divisor_count(&FiniteSet::interval(k).unwrap()).unwrap();
        assert_eq!(headstrong_count(k + 1), big(d));
    }
}

#[test]
fn fibonacci_inequalities() {
    for n in 1..=8u32 {
        for k in n..=40 {
            let (f, g) = (fib_general(n, k), fib_general(n, k + 1));
            assert!(big(2) * &f >= g, "2F({n},{k}) ≥ F({n},{})", k + 1);
            if k >= 2 * n {
                assert!(big(2) * &f > g, "strict at ({n},{k})");
            }
            if n > 1 && k > n {
                assert!(big(3) * &f <= big(2) * &g, "3F ≤ 2F' at ({n},{k})");
                assert_eq!(big(3) * &f == big(2) * &g, (n, k) == (2, 4), "equality at ({n},{k})");
            }
        }
    }
}

#[test]
fn bijection_round_trip() {
    for n in 0..=14u32 {
        let full = FiniteSet::interval(n).unwrap();
        let comps = enumerate_headstrong(n + 1).unwrap();
        let divs = divisors(&full).unwrap();
        assert_eq!(comps.len(), divs.len());
        let mut images = Vec::new();
        for c in &comps {
            let (a, b) = composition_to_divisor(c).unwrap();
            assert_eq!(sum(&a, &b).unwrap(), full);
            assert_eq!(b, FiniteSet::interval(c.parts()[0] - 1).unwrap());
            assert_eq!(a.len() as usize, c.len(), "part count ↔ cardinality");
            assert_eq!(&divisor_to_composition(&a, n).unwrap(), c);
            images.push(a);
        }
        images.sort();
        assert_eq!(images, divs);
    }
}

#[test]
fn weighted_sum_growth() {
    for b in 2..=10u64 {
        for n in 1..=20u32 {
            assert!(big(2) * weighted_row_sum(n, b) < weighted_row_sum(n + 1, b), "n = {n}, b = {b}");
        }
    }
}

#[test]
fn diagonals_self_generate() {
    let h = headstrong_triangle(30);
    let to_int = |v: &BigUint| BigInt::from(v.clone());
    for d in 1..=9usize {
        let len = 12;
        // Diagonal d + 1: H(d + j, j) for j = 1..=len.
        let diagonal: Vec<BigInt> = (1..=len).map(|j| to_int(&h[d + j - 1][j - 1])).collect();
        let row: Vec<BigInt> = h[d - 1].iter().map(to_int).collect();
        assert_eq!(reconstruct_diagonal(&row, len), diagonal, "d = {d}");
        let lead = leading_diagonal(&diagonal);
        assert_eq!(&lead[..d], &row[..], "d = {d}");
        assert!(lead[d..].iter().all(|x| *x == BigInt::from(0)));
    }
}

#[test]
fn large_values_stay_exact() {
    // F(2, k) is the Fibonacci number F_{k-1}.
    let (mut a, mut b) = (big(0), big(1));
    for k in 2..=200u32 {
        assert_eq!(fib_general(2, k), b.clone(), "k = {k}");
        let next = &a + &b;
        a = b;
        b = next;
    }
}
