//! Finite subsets of ℕ and their sumset (Minkowski) arithmetic.
//!
//! A [`FiniteSet`] is a fixed-width bit vector: bit `i` is set iff `i` is an
//! element. Sumsets, translations and the divisibility test all reduce to
//! word-level shifts and masks.
//!
//! Divisibility is decided by deconvolution: for `b` and `a`, the maximal
//! candidate cofactor is `q = {c : b + {c} ⊆ a}`. Every cofactor of `b` in
//! `a` is a subset of `q`, and the sumset is monotone under inclusion, so `b`
//! divides `a` iff `b + q == a`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, ParseError, Result};

/// Largest element a [`FiniteSet`] can physically hold.
pub const MAX_ELEMENT: u32 = 127;

/// Default bound on the largest element accepted by divisor enumeration.
pub const DEFAULT_ELEMENT_BOUND: u32 = 63;

/// Largest `max(a)` for which [`divisor_count_exhaustive`] will search every
/// candidate subset of `[0, max(a)]`.
pub const EXHAUSTIVE_SEARCH_BOUND: u32 = 20;

/// A finite subset of ℕ with elements in `0..=MAX_ELEMENT`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FiniteSet {
    bits: u128,
}

impl FiniteSet {
    pub const fn empty() -> Self {
        FiniteSet { bits: 0 }
    }

    pub const fn from_bits(bits: u128) -> Self {
        FiniteSet { bits }
    }

    pub fn new<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self> {
        let mut bits = 0u128;
        for e in elements {
            if e > MAX_ELEMENT {
                return Err(Error::Capacity {
                    element: e as u64,
                    bound: MAX_ELEMENT,
                });
            }
            bits |= 1 << e;
        }
        Ok(FiniteSet { bits })
    }

    pub fn singleton(e: u32) -> Result<Self> {
        Self::new([e])
    }

    /// The full interval `[k] = {0, …, k}`.
    pub fn interval(k: u32) -> Result<Self> {
        if k > MAX_ELEMENT {
            return Err(Error::Capacity {
                element: k as u64,
                bound: MAX_ELEMENT,
            });
        }
        Ok(FiniteSet { bits: low_mask(k) })
    }

    /// `[k+] = {1, …, k}`; empty for `k = 0`.
    pub fn interval_plus(k: u32) -> Result<Self> {
        Ok(FiniteSet {
            bits: Self::interval(k)?.bits & !1,
        })
    }

    pub const fn bits(&self) -> u128 {
        self.bits
    }

    pub const fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub const fn len(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn contains(&self, e: u32) -> bool {
        e <= MAX_ELEMENT && self.bits >> e & 1 == 1
    }

    pub fn min_element(&self) -> Option<u32> {
        (!self.is_empty()).then(|| self.bits.trailing_zeros())
    }

    pub fn max_element(&self) -> Option<u32> {
        (!self.is_empty()).then(|| 127 - self.bits.leading_zeros())
    }

    /// A set is 0-rooted when its minimum is 0.
    pub fn is_zero_rooted(&self) -> bool {
        self.bits & 1 == 1
    }

    pub fn iter(&self) -> Elements {
        Elements { bits: self.bits }
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &FiniteSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn union(&self, other: &FiniteSet) -> FiniteSet {
        FiniteSet::from_bits(self.bits | other.bits)
    }

    pub fn intersection(&self, other: &FiniteSet) -> FiniteSet {
        FiniteSet::from_bits(self.bits & other.bits)
    }

    pub fn difference(&self, other: &FiniteSet) -> FiniteSet {
        FiniteSet::from_bits(self.bits & !other.bits)
    }

    /// `self − {r}`, dropping elements that would go negative.
    pub fn shift_down(&self, r: u32) -> FiniteSet {
        if r > MAX_ELEMENT {
            return FiniteSet::empty();
        }
        FiniteSet::from_bits(self.bits >> r)
    }

    /// `self + {j}`.
    pub fn shift_up(&self, j: u32) -> Result<FiniteSet> {
        match self.max_element() {
            None => Ok(*self),
            Some(m) if m as u64 + j as u64 > MAX_ELEMENT as u64 => Err(Error::Capacity {
                element: m as u64 + j as u64,
                bound: MAX_ELEMENT,
            }),
            Some(_) => Ok(FiniteSet::from_bits(self.bits << j)),
        }
    }

    /// The 0-rooted core `self − {min(self)}`.
    pub fn core(&self) -> FiniteSet {
        match self.min_element() {
            Some(r) => self.shift_down(r),
            None => *self,
        }
    }
}

/// Ascending iterator over the elements of a [`FiniteSet`].
#[derive(Clone)]
pub struct Elements {
    bits: u128,
}

impl Iterator for Elements {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.bits == 0 {
            return None;
        }
        let e = self.bits.trailing_zeros();
        self.bits &= self.bits - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.bits.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

impl<'a> IntoIterator for &'a FiniteSet {
    type Item = u32;
    type IntoIter = Elements;

    fn into_iter(self) -> Elements {
        self.iter()
    }
}

/// Ordered by cardinality, then lexicographically on the ascending element
/// lists.
impl Ord for FiniteSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.bits ^ other.bits;
            if diff == 0 {
                Ordering::Equal
            } else if self.bits >> diff.trailing_zeros() & 1 == 1 {
                // With equal cardinalities, whoever owns the lowest
                // differing element has the smaller list at that position.
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for FiniteSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for FiniteSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Accepts `0,2,3`, `{0,2,3}`, `{}`, `[k]` and `[k+]`.
impl FromStr for FiniteSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Cursor::new(s);
        p.skip_ws();
        let set = match p.peek() {
            Some('[') => p.interval()?,
            Some('{') => p.braced()?,
            _ => p.bare_list()?,
        };
        p.skip_ws();
        if let Some(c) = p.peek() {
            return Err(p.error(format!("unexpected {c:?}")).into());
        }
        Ok(set)
    }
}

/// Small recursive-descent reader shared by the textual formats in this
/// crate.
pub(crate) struct Cursor<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(input: &'a str) -> Self {
        Cursor { input, pos: 0 }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn rest(&self) -> &'a str {
        &self.input[self.pos..]
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.input, self.pos, message)
    }

    pub(crate) fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        ParseError::new(self.input, pos, message)
    }

    pub(crate) fn expect(&mut self, want: char) -> std::result::Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected {want:?}, found {c:?}"))),
            None => Err(self.error(format!("expected {want:?}, found end of input"))),
        }
    }

    pub(crate) fn number(&mut self) -> std::result::Result<u64, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(match self.peek() {
                Some(c) => self.error(format!("expected a natural number, found {c:?}")),
                None => self.error("expected a natural number, found end of input"),
            });
        }
        self.input[start..self.pos]
            .parse()
            .map_err(|_| ParseError::new(self.input, start, "number too large"))
    }

    fn element(&mut self) -> Result<u32> {
        let n = self.number()?;
        if n > MAX_ELEMENT as u64 {
            return Err(Error::Capacity {
                element: n,
                bound: MAX_ELEMENT,
            });
        }
        Ok(n as u32)
    }

    fn interval(&mut self) -> Result<FiniteSet> {
        self.expect('[')?;
        self.skip_ws();
        let k = self.element()?;
        self.skip_ws();
        let plus = self.peek() == Some('+');
        if plus {
            self.bump();
            self.skip_ws();
        }
        self.expect(']')?;
        if plus {
            FiniteSet::interval_plus(k)
        } else {
            FiniteSet::interval(k)
        }
    }

    pub(crate) fn braced(&mut self) -> Result<FiniteSet> {
        self.expect('{')?;
        self.skip_ws();
        if self.peek() == Some('}') {
            self.bump();
            return Ok(FiniteSet::empty());
        }
        let set = self.list()?;
        self.skip_ws();
        self.expect('}')?;
        Ok(set)
    }

    fn bare_list(&mut self) -> Result<FiniteSet> {
        if self.peek().is_none() {
            return Err(self.error("empty set literal; write {} for the empty set").into());
        }
        self.list()
    }

    fn list(&mut self) -> Result<FiniteSet> {
        let mut bits = 0u128;
        loop {
            self.skip_ws();
            bits |= 1 << self.element()?;
            self.skip_ws();
            if self.peek() == Some(',') {
                self.bump();
            } else {
                return Ok(FiniteSet::from_bits(bits));
            }
        }
    }
}

#[inline]
pub(crate) fn low_mask(k: u32) -> u128 {
    if k >= 127 {
        u128::MAX
    } else {
        (1u128 << (k + 1)) - 1
    }
}

#[inline]
fn sum_bits(a: u128, b: u128) -> u128 {
    let (small, large) = if a.count_ones() <= b.count_ones() {
        (a, b)
    } else {
        (b, a)
    };
    let mut out = 0;
    let mut rest = small;
    while rest != 0 {
        out |= large << rest.trailing_zeros();
        rest &= rest - 1;
    }
    out
}

/// Maximal cofactor candidate for nonempty `b`, `a` with `max(b) ≤ max(a)`.
#[inline]
fn quotient_bits(a: u128, b: u128) -> u128 {
    let top_a = 127 - a.leading_zeros();
    let top_b = 127 - b.leading_zeros();
    let mut q = low_mask(top_a - top_b);
    let mut rest = b;
    while rest != 0 && q != 0 {
        q &= a >> rest.trailing_zeros();
        rest &= rest - 1;
    }
    q
}

/// Divisibility on raw bit patterns; both arguments must be nonempty.
#[inline]
pub(crate) fn divides_bits(b: u128, a: u128) -> bool {
    if b.leading_zeros() < a.leading_zeros() || b.trailing_zeros() > a.trailing_zeros() {
        return false;
    }
    let q = quotient_bits(a, b);
    q != 0 && sum_bits(b, q) == a
}

/// Sumset `a + b = {x + y : x ∈ a, y ∈ b}`.
pub fn sum(a: &FiniteSet, b: &FiniteSet) -> Result<FiniteSet> {
    let (Some(ma), Some(mb)) = (a.max_element(), b.max_element()) else {
        return Err(Error::EmptyOperand("sum"));
    };
    if ma + mb > MAX_ELEMENT {
        return Err(Error::Capacity {
            element: (ma + mb) as u64,
            bound: MAX_ELEMENT,
        });
    }
    Ok(FiniteSet::from_bits(sum_bits(a.bits, b.bits)))
}

/// The largest `c ⊆ [0, max(a) − max(b)]` with `b + c ⊆ a`. May be empty.
pub fn quotient_max(a: &FiniteSet, b: &FiniteSet) -> Result<FiniteSet> {
    let (Some(max_a), Some(max_b)) = (a.max_element(), b.max_element()) else {
        return Err(Error::EmptyOperand("quotient_max"));
    };
    if max_b > max_a {
        return Err(Error::Precondition(format!(
            "max of divisor ({max_b}) exceeds max of dividend ({max_a})"
        )));
    }
    let (min_a, min_b) = (a.min_element().unwrap_or(0), b.min_element().unwrap_or(0));
    if min_b > min_a {
        return Err(Error::Precondition(format!(
            "min of divisor ({min_b}) exceeds min of dividend ({min_a})"
        )));
    }
    Ok(FiniteSet::from_bits(quotient_bits(a.bits, b.bits)))
}

/// Whether some `c` satisfies `b + c = a`.
pub fn divides(b: &FiniteSet, a: &FiniteSet) -> Result<bool> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyOperand("divides"));
    }
    Ok(divides_bits(b.bits, a.bits))
}

/// Visits every divisor of a nonempty 0-rooted `core` that contains 0.
/// Any such divisor is a subset of `core`, so only subsets are tried.
fn for_each_core_divisor(core: u128, mut visit: impl FnMut(u128) -> bool) {
    let free = core & !1;
    let mut sub = free;
    loop {
        let cand = sub | 1;
        if divides_bits(cand, core) && !visit(cand) {
            return;
        }
        if sub == 0 {
            return;
        }
        sub = (sub - 1) & free;
    }
}

fn check_bound(a: &FiniteSet, bound: u32) -> Result<u32> {
    let max = a.max_element().ok_or(Error::EmptyOperand("divisor enumeration"))?;
    if max > bound.min(MAX_ELEMENT) {
        return Err(Error::Capacity {
            element: max as u64,
            bound,
        });
    }
    Ok(max)
}

/// All divisors of `a`, ordered by cardinality then lexicographically.
pub fn divisors(a: &FiniteSet) -> Result<Vec<FiniteSet>> {
    divisors_bounded(a, DEFAULT_ELEMENT_BOUND)
}

/// [`divisors`] with an explicit element bound.
pub fn divisors_bounded(a: &FiniteSet, bound: u32) -> Result<Vec<FiniteSet>> {
    check_bound(a, bound)?;
    let r = a.min_element().unwrap_or(0);
    let core = a.core();
    let mut out = Vec::new();
    for_each_core_divisor(core.bits, |d| {
        for j in 0..=r {
            out.push(FiniteSet::from_bits(d << j));
        }
        true
    });
    out.sort_unstable();
    Ok(out)
}

/// The number of divisors `d(a)`, computed as `(min(a) + 1) · d(core)`.
pub fn divisor_count(a: &FiniteSet) -> Result<u64> {
    divisor_count_bounded(a, DEFAULT_ELEMENT_BOUND)
}

pub fn divisor_count_bounded(a: &FiniteSet, bound: u32) -> Result<u64> {
    check_bound(a, bound)?;
    let r = a.min_element().unwrap_or(0) as u64;
    let mut n = 0u64;
    for_each_core_divisor(a.core().bits, |_| {
        n += 1;
        true
    });
    Ok((r + 1) * n)
}

/// `d(a)` by testing every nonempty candidate in `[0, max(a)]`, with no
/// reduction to the 0-rooted core.
pub fn divisor_count_exhaustive(a: &FiniteSet) -> Result<u64> {
    let max = check_bound(a, EXHAUSTIVE_SEARCH_BOUND)?;
    let top = low_mask(max);
    Ok((1..=top).filter(|&b| divides_bits(b, a.bits)).count() as u64)
}

/// No factorization with both factors of size at least 2 exists.
pub fn is_irreducible(a: &FiniteSet) -> Result<bool> {
    if a.len() < 2 {
        return Err(Error::Precondition(format!(
            "reducibility needs at least two elements, got {a}"
        )));
    }
    check_bound(a, DEFAULT_ELEMENT_BOUND)?;
    Ok(core_irreducible(a.core().bits))
}

fn core_irreducible(core: u128) -> bool {
    let mut n = 0;
    for_each_core_divisor(core, |_| {
        n += 1;
        n <= 2
    });
    n == 2
}

/// The number of irreducible `A ⊆ [k]` with `max(A) = k` and `|A| ≥ 2`.
pub fn count_irreducible(k: u32) -> Result<u64> {
    count_irreducible_bounded(k, DEFAULT_ELEMENT_BOUND)
}

pub fn count_irreducible_bounded(k: u32, bound: u32) -> Result<u64> {
    if k == 0 {
        return Err(Error::Precondition("count_irreducible needs k ≥ 1".into()));
    }
    if k > bound.min(MAX_ELEMENT) {
        return Err(Error::Capacity {
            element: k as u64,
            bound,
        });
    }
    Ok(sets_with_max(k)
        .filter(|a| a.count_ones() >= 2 && core_irreducible(a >> a.trailing_zeros()))
        .count() as u64)
}

/// Every subset of `[k]` whose maximum is `k`, as raw bits.
pub(crate) fn sets_with_max(k: u32) -> impl Iterator<Item = u128> {
    let top = 1u128 << k;
    (0..top).map(move |low| low | top)
}
