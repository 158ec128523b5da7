//! Base-b lunar ("dismal") arithmetic.
//!
//! Addition is the digitwise max; digit multiplication is the min, and long
//! multiplication accumulates columns with max, so there are never carries.
//! In base 2 lunar multiplication is the sumset under [`beta`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::multiset;
use crate::set::{Cursor, FiniteSet, MAX_ELEMENT};

pub const MAX_BASE: u32 = 36;

/// Default cap on the number of candidate divisors tried by
/// [`lunar_divisors`].
pub const DEFAULT_CANDIDATE_BUDGET: u64 = 1 << 22;

/// A lunar number: digits least-significant first, with no most-significant
/// zero. Zero has no digits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LunarNumber {
    base: u32,
    digits: Vec<u8>,
}

impl LunarNumber {
    /// Builds a number from least-significant-first digits.
    pub fn new(base: u32, mut digits: Vec<u8>) -> Result<Self> {
        check_base(base)?;
        if let Some(&d) = digits.iter().find(|&&d| d as u32 >= base) {
            return Err(Error::InvalidDigit {
                digit: d as u32,
                base,
            });
        }
        while digits.last() == Some(&0) {
            digits.pop();
        }
        Ok(LunarNumber { base, digits })
    }

    pub fn zero(base: u32) -> Result<Self> {
        Self::new(base, Vec::new())
    }

    /// The multiplicative identity, the single digit `base − 1`.
    pub fn one(base: u32) -> Result<Self> {
        Self::new(base, vec![(base - 1) as u8])
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// Least-significant-first digits.
    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn digit(&self, i: usize) -> u8 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    /// Number of digits; zero has none.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    fn same_base(&self, other: &LunarNumber) -> Result<()> {
        if self.base != other.base {
            return Err(Error::BaseMismatch(self.base, other.base));
        }
        Ok(())
    }
}

fn check_base(base: u32) -> Result<()> {
    if !(2..=MAX_BASE).contains(&base) {
        return Err(Error::InvalidBase(base));
    }
    Ok(())
}

fn digit_char(d: u8) -> char {
    char::from_digit(d as u32, MAX_BASE).expect("digit below 36")
}

/// Most-significant first, lexicographic on digit strings within a length.
impl Ord for LunarNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.base
            .cmp(&other.base)
            .then(self.len().cmp(&other.len()))
            .then_with(|| self.digits.iter().rev().cmp(other.digits.iter().rev()))
    }
}

impl PartialOrd for LunarNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LunarNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            f.write_str("0")?;
        }
        for &d in self.digits.iter().rev() {
            write!(f, "{}", digit_char(d))?;
        }
        write!(f, "@{}", self.base)
    }
}

impl fmt::Debug for LunarNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for LunarNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses `digits@base`, e.g. `12468@10` or `1011110@2`. Digits above 9 are
/// written `a`–`z`.
impl FromStr for LunarNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Cursor::new(s);
        p.skip_ws();
        let mut raw = Vec::new();
        while let Some(c) = p.peek() {
            if !c.is_ascii_alphanumeric() {
                break;
            }
            raw.push((p.pos(), c));
            p.bump();
        }
        if raw.is_empty() {
            return Err(p.error("expected digits").into());
        }
        p.expect('@')?;
        let base_pos = p.pos();
        let base = p.number()?;
        p.skip_ws();
        if let Some(c) = p.peek() {
            return Err(p.error(format!("unexpected {c:?}")).into());
        }
        if !(2..=MAX_BASE as u64).contains(&base) {
            return Err(p.error_at(base_pos, format!("unsupported base {base}")).into());
        }
        let base = base as u32;
        let mut digits = Vec::with_capacity(raw.len());
        for &(pos, c) in raw.iter().rev() {
            match c.to_digit(MAX_BASE) {
                Some(d) if d < base => digits.push(d as u8),
                _ => {
                    return Err(p
                        .error_at(pos, format!("{c:?} is not a base-{base} digit"))
                        .into())
                }
            }
        }
        LunarNumber::new(base, digits)
    }
}

/// Digitwise max.
pub fn lunar_add(x: &LunarNumber, y: &LunarNumber) -> Result<LunarNumber> {
    x.same_base(y)?;
    let n = x.len().max(y.len());
    let digits = (0..n).map(|i| x.digit(i).max(y.digit(i))).collect();
    LunarNumber::new(x.base, digits)
}

/// Digit `j` of the product is `max_{i+k=j} min(x_i, y_k)`. Zero absorbs.
pub fn lunar_mul(x: &LunarNumber, y: &LunarNumber) -> Result<LunarNumber> {
    x.same_base(y)?;
    if x.is_zero() || y.is_zero() {
        return LunarNumber::zero(x.base);
    }
    let mut digits = vec![0u8; x.len() + y.len() - 1];
    for (i, &a) in x.digits.iter().enumerate() {
        for (k, &b) in y.digits.iter().enumerate() {
            let c = &mut digits[i + k];
            *c = (*c).max(a.min(b));
        }
    }
    LunarNumber::new(x.base, digits)
}

/// The binary lunar number whose digit `i` is 1 iff `i ∈ a`.
pub fn beta(a: &FiniteSet) -> LunarNumber {
    let len = a.max_element().map_or(0, |m| m as usize + 1);
    let digits = (0..len).map(|i| a.contains(i as u32) as u8).collect();
    LunarNumber { base: 2, digits }
}

/// Inverse of [`beta`].
pub fn beta_inv(x: &LunarNumber) -> Result<FiniteSet> {
    if x.base != 2 {
        return Err(Error::Precondition(format!(
            "beta_inv needs a base-2 number, got base {}",
            x.base
        )));
    }
    if x.len() > MAX_ELEMENT as usize + 1 {
        return Err(Error::Capacity {
            element: x.len() as u64 - 1,
            bound: MAX_ELEMENT,
        });
    }
    FiniteSet::new(
        x.digits
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 1)
            .map(|(i, _)| i as u32),
    )
}

/// The digitwise-maximal `z` with `len(n) − len(y) + 1` digit positions such
/// that `y ⊗ z ≤ n` digitwise. `y` divides `n` iff `y ⊗ z == n`.
pub fn lunar_quotient_max(n: &LunarNumber, y: &LunarNumber) -> Result<LunarNumber> {
    n.same_base(y)?;
    if y.is_zero() {
        return Err(Error::Precondition("divisor must be nonzero".into()));
    }
    if y.len() > n.len() {
        return Err(Error::Precondition(format!(
            "divisor has {} digits but the dividend only {}",
            y.len(),
            n.len()
        )));
    }
    LunarNumber::new(n.base, quotient_digits(&n.digits, &y.digits, n.base as u8 - 1))
}

fn quotient_digits(n: &[u8], y: &[u8], top: u8) -> Vec<u8> {
    (0..=n.len() - y.len())
        .map(|j| {
            y.iter()
                .enumerate()
                .filter(|&(i, &yi)| yi > n[i + j])
                .map(|(i, _)| n[i + j])
                .min()
                .unwrap_or(top)
        })
        .collect()
}

/// Whether `y ⊗ z == n` for some `z`; `n` and `y` are canonical and nonzero.
fn divides_digits(y: &[u8], n: &[u8], top: u8) -> bool {
    if y.len() > n.len() {
        return false;
    }
    let z = quotient_digits(n, y, top);
    let mut prod = vec![0u8; n.len()];
    for (i, &a) in y.iter().enumerate() {
        for (k, &b) in z.iter().enumerate() {
            let c = &mut prod[i + k];
            *c = (*c).max(a.min(b));
        }
    }
    prod == n
}

/// Whether `y` is a lunar divisor of `n`.
pub fn lunar_divides(y: &LunarNumber, n: &LunarNumber) -> Result<bool> {
    y.same_base(n)?;
    if y.is_zero() || n.is_zero() {
        return Err(Error::Precondition("lunar divisibility needs nonzero operands".into()));
    }
    Ok(divides_digits(&y.digits, &n.digits, n.base as u8 - 1))
}

fn candidate_count(base: u32, len: usize) -> Option<u64> {
    // (b − 1) · b^(l − 1) candidates with l digits, summed over l ≤ len.
    let b = base as u64;
    let mut total = 0u64;
    let mut power = 1u64;
    for _ in 0..len {
        total = total.checked_add((b - 1).checked_mul(power)?)?;
        power = power.checked_mul(b)?;
    }
    Some(total)
}

fn for_each_candidate(base: u32, len: usize, mut visit: impl FnMut(&[u8])) {
    let top = (base - 1) as u8;
    for l in 1..=len {
        // Odometer over digits 0..l-1 with the leading digit in 1..=top.
        let mut digits = vec![0u8; l];
        digits[l - 1] = 1;
        loop {
            visit(&digits);
            let mut i = 0;
            loop {
                if i == l {
                    break;
                }
                if digits[i] < top {
                    digits[i] += 1;
                    break;
                }
                digits[i] = if i == l - 1 { 1 } else { 0 };
                i += 1;
            }
            if i == l {
                break;
            }
        }
    }
}

/// Every lunar divisor of `n`, by trying each candidate with at most
/// `len(n)` digits. Sorted by length, then by digit string.
pub fn lunar_divisors(n: &LunarNumber) -> Result<Vec<LunarNumber>> {
    lunar_divisors_budgeted(n, DEFAULT_CANDIDATE_BUDGET)
}

pub fn lunar_divisors_budgeted(n: &LunarNumber, budget: u64) -> Result<Vec<LunarNumber>> {
    check_enumerable(n, budget)?;
    let top = n.base as u8 - 1;
    let mut out = Vec::new();
    for_each_candidate(n.base, n.len(), |y| {
        if divides_digits(y, &n.digits, top) {
            out.push(LunarNumber {
                base: n.base,
                digits: y.to_vec(),
            });
        }
    });
    out.sort();
    Ok(out)
}

fn check_enumerable(n: &LunarNumber, budget: u64) -> Result<()> {
    if n.is_zero() {
        return Err(Error::Precondition("zero has no divisor count".into()));
    }
    match candidate_count(n.base, n.len()) {
        Some(c) if c <= budget => Ok(()),
        _ => Err(Error::Budget(format!(
            "{} digits in base {} exceed the candidate budget of {budget}",
            n.len(),
            n.base
        ))),
    }
}

/// `d_b(n)` by raw candidate enumeration.
pub fn lunar_divisor_count_enumerated(n: &LunarNumber) -> Result<u64> {
    lunar_divisor_count_enumerated_budgeted(n, DEFAULT_CANDIDATE_BUDGET)
}

pub fn lunar_divisor_count_enumerated_budgeted(n: &LunarNumber, budget: u64) -> Result<u64> {
    check_enumerable(n, budget)?;
    let top = n.base as u8 - 1;
    let mut count = 0;
    for_each_candidate(n.base, n.len(), |y| {
        if divides_digits(y, &n.digits, top) {
            count += 1;
        }
    });
    Ok(count)
}

/// `d_b(n)`, the number of lunar divisors of `n`.
///
/// When every digit of `n` is 0 or 1 the number is a plain set of height
/// `b − 1`, and the count is `Σ (b − 1)^|B|` over the sumset divisors `B` of
/// that set. Other inputs are enumerated.
pub fn lunar_divisor_count(n: &LunarNumber) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::Precondition("zero has no divisor count".into()));
    }
    if n.digits.iter().all(|&d| d <= 1) {
        let support = FiniteSet::new(
            n.digits
                .iter()
                .enumerate()
                .filter(|(_, &d)| d == 1)
                .map(|(i, _)| i as u32),
        )?;
        return multiset::setarray_divisor_count_formula(&support, n.base as usize - 1);
    }
    lunar_divisor_count_enumerated(n).map(BigUint::from)
}
