//! Headstrong compositions and the integer tables that count them.
//!
//! `F(n, k)` counts headstrong compositions of `k` whose first part is `n`;
//! `H(n, m)` counts headstrong compositions of `n` with `m` parts. Both are
//! exact (`BigUint`); `F(2, ·)` leaves `u64` near `k = 93`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::set::{self, FiniteSet, MAX_ELEMENT};

/// Largest `n` accepted by [`enumerate_headstrong`].
pub const ENUMERATION_BOUND: u32 = 26;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Precondition("a composition needs at least one part".into()));
        }
        if let Some(i) = parts.iter().position(|&p| p == 0) {
            return Err(Error::Precondition(format!("part {} is zero", i + 1)));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// First part at least as large as every other part.
    pub fn is_headstrong(&self) -> bool {
        let first = self.parts[0];
        self.parts.iter().all(|&p| p <= first)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for Composition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

/// `F(n, 1), …, F(n, k_max)`.
pub fn fib_row(n: u32, k_max: u32) -> Vec<BigUint> {
    let n = n.max(1) as usize;
    let mut row: Vec<BigUint> = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max as usize {
        let value = match k.cmp(&n) {
            std::cmp::Ordering::Less => BigUint::zero(),
            std::cmp::Ordering::Equal => BigUint::one(),
            std::cmp::Ordering::Greater => {
                // F(n, k - j) for j = 1..=n, where indices below 1 contribute 0.
                let lo = k.saturating_sub(n).max(1);
                row[lo - 1..k - 1].iter().sum()
            }
        };
        row.push(value);
    }
    row
}

/// The generalized Fibonacci number `F(n, k)`.
pub fn fib_general(n: u32, k: u32) -> BigUint {
    if k == 0 {
        return BigUint::zero();
    }
    fib_row(n, k).pop().unwrap_or_default()
}

/// `Σ_m F(m, n)`, the number of headstrong compositions of `n`.
pub fn headstrong_count(n: u32) -> BigUint {
    (1..=n).map(|m| fib_general(m, n)).sum()
}

/// Rows `1..=n_max` of the `H` triangle; row `n` holds `H(n, 1), …, H(n, n)`.
pub fn headstrong_triangle(n_max: u32) -> Vec<Vec<BigUint>> {
    let n_max = n_max as usize;
    let binom = binomials(n_max);
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut row = Vec::with_capacity(n);
        for m in 1..=n {
            let value = if m == 1 || m == n {
                BigUint::one()
            } else {
                let prev = &rows[n - m - 1];
                // C(m-1, j-1) vanishes for j > m.
                (1..=(n - m).min(m))
                    .map(|j| &prev[j - 1] * &binom[m - 1][j - 1])
                    .sum()
            };
            row.push(value);
        }
        rows.push(row);
    }
    rows
}

fn binomials(n: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![BigUint::one(); i + 1];
        for j in 1..i {
            row[j] = &rows[i - 1][j - 1] + &rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

/// `H(n, m)` through the recurrence (⋆).
pub fn headstrong_by_parts(n: u32, m: u32) -> BigUint {
    if m == 0 || m > n {
        return BigUint::zero();
    }
    headstrong_triangle(n).pop().expect("n ≥ 1")[m as usize - 1].clone()
}

/// `C(n, m, s)`: compositions of `n` into `m` parts, each in `[1, s]`.
pub fn bounded_comp_count(n: u32, m: u32, s: u32) -> BigUint {
    if m == 0 {
        return if n == 0 { BigUint::one() } else { BigUint::zero() };
    }
    if n < m || s == 0 || u64::from(n) > u64::from(m) * u64::from(s) {
        return BigUint::zero();
    }
    let n = n as usize;
    // ways[t] = compositions of t into the parts placed so far
    let mut ways = vec![BigUint::zero(); n + 1];
    ways[0] = BigUint::one();
    for _ in 0..m {
        let mut next = vec![BigUint::zero(); n + 1];
        for (t, w) in ways.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for part in 1..=s as usize {
                if t + part > n {
                    break;
                }
                next[t + part] += w;
            }
        }
        ways = next;
    }
    ways.swap_remove(n)
}

/// All headstrong compositions of `n`, ordered by length, then by
/// decreasing parts: `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
pub fn enumerate_headstrong(n: u32) -> Result<Vec<Composition>> {
    if n == 0 {
        return Err(Error::Precondition("compositions need n ≥ 1".into()));
    }
    if n > ENUMERATION_BOUND {
        return Err(Error::Budget(format!(
            "headstrong enumeration is limited to n ≤ {ENUMERATION_BOUND}, got {n}"
        )));
    }
    let mut out = Vec::new();
    for first in 1..=n {
        let mut tail = Vec::new();
        extend_tails(n - first, first, &mut tail, &mut |rest| {
            let mut parts = Vec::with_capacity(rest.len() + 1);
            parts.push(first);
            parts.extend_from_slice(rest);
            out.push(Composition { parts });
        });
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.parts.cmp(&a.parts)));
    Ok(out)
}

fn extend_tails(remaining: u32, cap: u32, tail: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    if remaining == 0 {
        emit(tail);
        return;
    }
    for p in 1..=cap.min(remaining) {
        tail.push(p);
        extend_tails(remaining - p, cap, tail, emit);
        tail.pop();
    }
}

/// Headstrong `(c₁, …, c_k)` of `n + 1` to the factorization `A + B = [n]`
/// with `A = {n+1−c₁, n+1−(c₁+c₂), …, 0}` and `B = [c₁ − 1]`.
pub fn composition_to_divisor(c: &Composition) -> Result<(FiniteSet, FiniteSet)> {
    if !c.is_headstrong() {
        return Err(Error::NotHeadstrong(c.to_string()));
    }
    let total = c.total();
    if total > MAX_ELEMENT + 1 {
        return Err(Error::Capacity {
            element: u64::from(total) - 1,
            bound: MAX_ELEMENT,
        });
    }
    let mut acc = 0;
    let a = FiniteSet::new(c.parts.iter().map(|&p| {
        acc += p;
        total - acc
    }))?;
    let b = FiniteSet::interval(c.parts[0] - 1)?;
    Ok((a, b))
}

/// Inverse of [`composition_to_divisor`] on the `A` component.
pub fn divisor_to_composition(a: &FiniteSet, n: u32) -> Result<Composition> {
    let target = FiniteSet::interval(n)?;
    if !a.is_zero_rooted() || !set::divides(a, &target)? {
        return Err(Error::Precondition(format!("{a} does not divide [{n}]")));
    }
    let elems = a.to_vec();
    let mut parts = Vec::with_capacity(elems.len());
    parts.push(n + 1 - elems[elems.len() - 1]);
    parts.extend(elems.windows(2).rev().map(|w| w[1] - w[0]));
    Ok(Composition { parts })
}

/// Rows `Δ⁰f, Δ¹f, …`, stopping at length 1 or at the first all-zero row.
pub fn difference_table(seq: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut rows = vec![seq.to_vec()];
    loop {
        let last = rows.last().expect("nonempty");
        if last.len() <= 1 || (rows.len() > 1 && last.iter().all(Zero::is_zero)) {
            return rows;
        }
        let next = last.windows(2).map(|w| &w[1] - &w[0]).collect();
        rows.push(next);
    }
}

/// First entries of each row of the difference table.
pub fn leading_diagonal(seq: &[BigInt]) -> Vec<BigInt> {
    difference_table(seq).into_iter().map(|r| r[0].clone()).collect()
}

/// `f(1), …, f(length)` with `f(n) = Σ_k row[k]·C(n−1, k)`.
pub fn reconstruct_diagonal(row: &[BigInt], length: usize) -> Vec<BigInt> {
    let binom = binomials(length.saturating_sub(1));
    (1..=length)
        .map(|n| {
            row.iter()
                .take(n)
                .enumerate()
                .map(|(k, d)| d * BigInt::from(binom[n - 1][k].clone()))
                .sum()
        })
        .collect()
}

/// `Σ_m H(n, m)·bᵐ`.
pub fn weighted_row_sum(n: u32, b: u64) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    let row = headstrong_triangle(n).pop().expect("n ≥ 1");
    weighted(&row, b)
}

pub(crate) fn weighted(row: &[BigUint], b: u64) -> BigUint {
    let b = BigUint::from(b);
    let mut power = b.clone();
    let mut total = BigUint::zero();
    for h in row {
        total += h * &power;
        power *= &b;
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    F,
    H,
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableKind::F => "F",
            TableKind::H => "H",
        })
    }
}

/// `F(n, k)` (a rectangle) or `H(n, m)` (a triangle), rows and columns
/// counted from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleTable {
    kind: TableKind,
    rows: Vec<Vec<BigUint>>,
}

impl TriangleTable {
    /// `F(1..=rows, 1..=cols)`.
    pub fn fibonacci(rows: u32, cols: u32) -> Self {
        TriangleTable {
            kind: TableKind::F,
            rows: (1..=rows).map(|n| fib_row(n, cols)).collect(),
        }
    }

    /// `H(n, m)` for `1 ≤ m ≤ n ≤ rows`.
    pub fn headstrong(rows: u32) -> Self {
        TriangleTable {
            kind: TableKind::H,
            rows: headstrong_triangle(rows),
        }
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.rows
    }

    /// Entry at 1-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> Option<&BigUint> {
        self.rows.get(row.checked_sub(1)?)?.get(col.checked_sub(1)?)
    }

    /// Row-major entries; for `H` this is the OEIS A184957 ordering.
    pub fn flattened(&self) -> Vec<BigUint> {
        self.rows.iter().flatten().cloned().collect()
    }

    fn width(&self) -> usize {
        self.rows.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Header `n,1,2,…`, one line per row; short `H` rows are padded with
    /// empty cells.
    pub fn to_csv(&self) -> String {
        let width = self.width();
        let mut out = String::from("n");
        for c in 1..=width {
            out.push_str(&format!(",{c}"));
        }
        out.push('\n');
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(&(i + 1).to_string());
            for c in 0..width {
                out.push(',');
                if let Some(v) = row.get(c) {
                    out.push_str(&v.to_string());
                }
            }
            out.push('\n');
        }
        out
    }

    /// Space-aligned columns for terminals.
    pub fn to_plain(&self) -> String {
        let width = self.width();
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect();
        let label = match self.kind {
            TableKind::F => "n\\k",
            TableKind::H => "n\\m",
        };
        let mut col_width = vec![0usize; width + 1];
        col_width[0] = label.len().max(self.rows.len().to_string().len());
        for c in 1..=width {
            col_width[c] = c.to_string().len();
            for row in &cells {
                if let Some(v) = row.get(c - 1) {
                    col_width[c] = col_width[c].max(v.len());
                }
            }
        }
        let mut lines = Vec::with_capacity(self.rows.len() + 1);
        let mut header = format!("{label:<w$}", w = col_width[0]);
        for c in 1..=width {
            header.push_str(&format!(" {c:>w$}", w = col_width[c]));
        }
        lines.push(header);
        for (i, row) in cells.iter().enumerate() {
            let mut line = format!("{:<w$}", i + 1, w = col_width[0]);
            for (c, v) in row.iter().enumerate() {
                line.push_str(&format!(" {v:>w$}", w = col_width[c + 1]));
            }
            lines.push(line);
        }
        let mut out = lines.join("\n");
        out.push('\n');
        out
    }

    /// `{"table":"H","rows":[{"n":1,"values":[1]},…]}` with exact integers.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serializes")
    }
}

struct ExactRow<'a>(usize, &'a [BigUint]);

impl Serialize for ExactRow<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("n", &self.0)?;
        map.serialize_entry("values", &ExactValues(self.1))?;
        map.end()
    }
}

struct ExactValues<'a>(&'a [BigUint]);

impl Serialize for ExactValues<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for v in self.0 {
            seq.serialize_element(&exact_number(v))?;
        }
        seq.end()
    }
}

/// A JSON number carrying every digit of `v`.
pub fn exact_number(v: &BigUint) -> serde_json::Number {
    v.to_string().parse().expect("decimal digits form a JSON number")
}

impl Serialize for TriangleTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<ExactRow> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| ExactRow(i + 1, r))
            .collect();
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("table", &self.kind.to_string())?;
        map.serialize_entry("rows", &rows)?;
        map.end()
    }
}
