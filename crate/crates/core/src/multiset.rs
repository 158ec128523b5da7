//! Multisets of bounded multiplicity as set-arrays.
//!
//! A multiset `f` with multiplicities at most `b` is stored as the chain
//! `A₁ ⊇ A₂ ⊇ … ⊇ A_b` where `a ∈ A_i ⟺ f(a) ≥ i`. Multisets add
//! coordinatewise, with the empty set absorbing (`S + ∅ = ∅`); that
//! convention exists only here, plain sumsets reject empty operands.
//!
//! Reading off multiplicities as digits gives a base-(b+1) lunar number, and
//! the multisum becomes lunar multiplication.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::compositions;
use crate::error::{Error, Result};
use crate::lunar::{LunarNumber, MAX_BASE};
use crate::set::{self, Cursor, FiniteSet, MAX_ELEMENT};

/// Tallest array whose [`beta_b`] image still has a printable base.
pub const MAX_HEIGHT: usize = MAX_BASE as usize - 1;

/// Limits for the brute-force divisor search in [`setarray_divisors`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_height: usize,
    pub max_element: u32,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_height: 3,
            max_element: 6,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetArray {
    coords: Vec<FiniteSet>,
}

impl SetArray {
    /// Validates the descending-chain shape of `coords`.
    pub fn new(coords: Vec<FiniteSet>) -> Result<Self> {
        check_height(coords.len())?;
        for (i, pair) in coords.windows(2).enumerate() {
            if !pair[1].is_subset(&pair[0]) {
                return Err(Error::BrokenChain(i + 2));
            }
        }
        Ok(SetArray { coords })
    }

    /// The zero multiset: every coordinate empty.
    pub fn zero(height: usize) -> Result<Self> {
        check_height(height)?;
        Ok(SetArray {
            coords: vec![FiniteSet::empty(); height],
        })
    }

    /// The neutral element `({0}, …, {0})`: the multiset with 0 repeated
    /// `height` times.
    pub fn neutral(height: usize) -> Result<Self> {
        check_height(height)?;
        Ok(SetArray {
            coords: vec![FiniteSet::from_bits(1); height],
        })
    }

    /// `(a, ∅, …, ∅)`.
    pub fn from_set(a: &FiniteSet, height: usize) -> Result<Self> {
        let mut out = Self::zero(height)?;
        out.coords[0] = *a;
        Ok(out)
    }

    pub fn height(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[FiniteSet] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords[0].is_empty()
    }

    pub fn multiplicity(&self, e: u32) -> u32 {
        self.coords.iter().filter(|c| c.contains(e)).count() as u32
    }

    /// `f(0), f(1), …, f(max)`; empty for the zero multiset.
    pub fn multiplicities(&self) -> Vec<u32> {
        let len = self.coords[0].max_element().map_or(0, |m| m + 1);
        (0..len).map(|e| self.multiplicity(e)).collect()
    }

    /// Reads a base-(h+1) lunar number as a height-h array.
    pub fn from_lunar(n: &LunarNumber) -> Result<Self> {
        let f: Vec<u32> = n.digits().iter().map(|&d| d as u32).collect();
        to_set_array(&f, n.base() as usize - 1)
    }
}

fn check_height(height: usize) -> Result<()> {
    if !(1..=MAX_HEIGHT).contains(&height) {
        return Err(Error::Precondition(format!(
            "set-array height must be in 1..={MAX_HEIGHT}, got {height}"
        )));
    }
    Ok(())
}

impl fmt::Display for SetArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")@{}", self.height())
    }
}

impl fmt::Debug for SetArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for SetArray {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses `({0,1,2},{0,1},{})@3`; the height after `@` must match the
/// number of coordinates.
impl FromStr for SetArray {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Cursor::new(s);
        p.skip_ws();
        p.expect('(')?;
        let mut coords = Vec::new();
        loop {
            p.skip_ws();
            coords.push(p.braced()?);
            p.skip_ws();
            match p.peek() {
                Some(',') => {
                    p.bump();
                }
                _ => break,
            }
        }
        p.expect(')')?;
        p.skip_ws();
        p.expect('@')?;
        p.skip_ws();
        let height_pos = p.pos();
        let height = p.number()?;
        p.skip_ws();
        if let Some(c) = p.peek() {
            return Err(p.error(format!("unexpected {c:?}")).into());
        }
        if height != coords.len() as u64 {
            return Err(p
                .error_at(
                    height_pos,
                    format!("declared height {height} but {} coordinates", coords.len()),
                )
                .into());
        }
        SetArray::new(coords)
    }
}

/// Chain representation of a multiplicity function `f` (`f[e]` is the
/// multiplicity of `e`).
pub fn to_set_array(f: &[u32], height: usize) -> Result<SetArray> {
    check_height(height)?;
    if f.len() > MAX_ELEMENT as usize + 1 && f[MAX_ELEMENT as usize + 1..].iter().any(|&m| m > 0) {
        return Err(Error::Capacity {
            element: f.len() as u64 - 1,
            bound: MAX_ELEMENT,
        });
    }
    let mut bits = vec![0u128; height];
    for (e, &m) in f.iter().enumerate() {
        if m as usize > height {
            return Err(Error::MultiplicityOverflow {
                element: e,
                multiplicity: m,
                height,
            });
        }
        for level in bits.iter_mut().take(m as usize) {
            *level |= 1 << e;
        }
    }
    Ok(SetArray {
        coords: bits.into_iter().map(FiniteSet::from_bits).collect(),
    })
}

/// Coordinatewise sumset with `S + ∅ = ∅`.
pub fn multisum(x: &SetArray, y: &SetArray) -> Result<SetArray> {
    if x.height() != y.height() {
        return Err(Error::HeightMismatch(x.height(), y.height()));
    }
    let coords = x
        .coords
        .iter()
        .zip(&y.coords)
        .map(|(a, b)| {
            if a.is_empty() || b.is_empty() {
                Ok(FiniteSet::empty())
            } else {
                set::sum(a, b)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SetArray { coords })
}

/// The base-(h+1) lunar number whose digit `i` is the multiplicity of `i`.
pub fn beta_b(x: &SetArray) -> LunarNumber {
    let digits = x.multiplicities().into_iter().map(|m| m as u8).collect();
    LunarNumber::new(x.height() as u32 + 1, digits).expect("multiplicities stay below the base")
}

/// `(A₁, ∅, …, ∅)`. Every divisor of `x` divides the result.
pub fn star_collapse(x: &SetArray) -> SetArray {
    let mut coords = vec![FiniteSet::empty(); x.height()];
    coords[0] = x.coords[0];
    SetArray { coords }
}

/// All divisors of `x` found by brute force over candidate chains inside
/// `[0, max(A₁)]`, sorted by their lunar image.
pub fn setarray_divisors(x: &SetArray) -> Result<Vec<SetArray>> {
    setarray_divisors_budgeted(x, SearchBudget::default())
}

pub fn setarray_divisors_budgeted(x: &SetArray, budget: SearchBudget) -> Result<Vec<SetArray>> {
    let mut out = Vec::new();
    search_divisors(x, budget, |y| out.push(SetArray::new(y.to_vec()).expect("chain")))?;
    out.sort_by_cached_key(beta_b);
    Ok(out)
}

/// `d(x)` by the same brute-force search, without materializing the list.
pub fn setarray_divisor_count(x: &SetArray) -> Result<u64> {
    setarray_divisor_count_budgeted(x, SearchBudget::default())
}

pub fn setarray_divisor_count_budgeted(x: &SetArray, budget: SearchBudget) -> Result<u64> {
    let mut n = 0;
    search_divisors(x, budget, |_| n += 1)?;
    Ok(n)
}

fn search_divisors(
    x: &SetArray,
    budget: SearchBudget,
    mut emit: impl FnMut(&[FiniteSet]),
) -> Result<()> {
    let h = x.height();
    let Some(top) = x.coords[0].max_element() else {
        return Err(Error::Precondition(
            "the zero multiset has no divisor count".into(),
        ));
    };
    if h > budget.max_height || top > budget.max_element {
        return Err(Error::Budget(format!(
            "set-array divisor search is limited to height {} and elements up to {}; got height {h}, max element {top}",
            budget.max_height, budget.max_element
        )));
    }
    let target: Vec<u128> = x.coords.iter().map(FiniteSet::bits).collect();
    let width = top as usize + 1;
    // Odometer over multiplicity vectors in [0, h]^width.
    let mut mult = vec![0usize; width];
    let mut coords = vec![0u128; h];
    loop {
        coords.iter_mut().for_each(|c| *c = 0);
        for (e, &m) in mult.iter().enumerate() {
            for c in coords.iter_mut().take(m) {
                *c |= 1 << e;
            }
        }
        if coords[0] != 0 && has_chain_cofactor(&target, &coords) {
            let y: Vec<FiniteSet> = coords.iter().copied().map(FiniteSet::from_bits).collect();
            emit(&y);
        }
        let mut i = 0;
        while i < width && mult[i] == h {
            mult[i] = 0;
            i += 1;
        }
        if i == width {
            return Ok(());
        }
        mult[i] += 1;
    }
}

enum Options {
    /// `Y_i = X_i = ∅`: any `Z_i` works, and `∅` is always chain-compatible.
    Free,
    Sets(Vec<u128>),
}

/// Whether some chain `Z` satisfies `Y + Z = X`. Each coordinate's valid
/// cofactors are listed by brute force, then a descending selection is
/// sought from the last coordinate upward.
fn has_chain_cofactor(x: &[u128], y: &[u128]) -> bool {
    let mut options = Vec::with_capacity(x.len());
    for (&xi, &yi) in x.iter().zip(y) {
        let opt = match (yi == 0, xi == 0) {
            (true, true) => Options::Free,
            (true, false) => return false,
            (false, true) => Options::Sets(vec![0]),
            (false, false) => {
                let cofactors = exact_cofactors(xi, yi);
                if cofactors.is_empty() {
                    return false;
                }
                Options::Sets(cofactors)
            }
        };
        options.push(opt);
    }
    select_chain(&options, options.len(), 0)
}

fn select_chain(options: &[Options], level: usize, below: u128) -> bool {
    if level == 0 {
        return true;
    }
    match &options[level - 1] {
        Options::Free => select_chain(options, level - 1, 0),
        Options::Sets(sets) => sets
            .iter()
            .filter(|&&c| below & !c == 0)
            .any(|&c| select_chain(options, level - 1, c)),
    }
}

/// Every nonempty `c` with `y + c = x`, for nonempty `x`, `y`.
fn exact_cofactors(x: u128, y: u128) -> Vec<u128> {
    let (xs, ys) = (FiniteSet::from_bits(x), FiniteSet::from_bits(y));
    let Ok(q) = set::quotient_max(&xs, &ys) else {
        return Vec::new();
    };
    let q = q.bits();
    let mut out = Vec::new();
    let mut sub = q;
    while sub != 0 {
        if set::sum(&ys, &FiniteSet::from_bits(sub)).is_ok_and(|s| s == xs) {
            out.push(sub);
        }
        sub = (sub - 1) & q;
    }
    out
}

fn weight_sum(divisors: &[FiniteSet], height: usize) -> BigUint {
    let b = BigUint::from(height);
    divisors
        .iter()
        .fold(BigUint::zero(), |acc, d| acc + b.pow(d.len()))
}

/// `d((a, ∅, …, ∅))` in height `b`: `Σ b^|B|` over the divisors `B` of `a`.
pub fn setarray_divisor_count_formula(a: &FiniteSet, b: usize) -> Result<BigUint> {
    if a.is_empty() {
        return Err(Error::EmptyOperand("setarray_divisor_count_formula"));
    }
    Ok(weight_sum(&set::divisors(a)?, b))
}

/// The same count as `(r + 1) · Σ b^|B|` over divisors of the 0-rooted core,
/// `r = min(a)`.
pub fn setarray_divisor_count_reduced(a: &FiniteSet, b: usize) -> Result<BigUint> {
    let r = a.min_element().ok_or(Error::EmptyOperand("setarray_divisor_count_reduced"))?;
    Ok(BigUint::from(r + 1) * weight_sum(&set::divisors(&a.core())?, b))
}

/// When `a − {r}` is the full interval `[n]`, the count is
/// `(r + 1) · Σ_m H(n + 1, m) b^m`; `None` for other shapes.
pub fn setarray_divisor_count_headstrong(a: &FiniteSet, b: usize) -> Result<Option<BigUint>> {
    let r = a.min_element().ok_or(Error::EmptyOperand("setarray_divisor_count_headstrong"))?;
    let core = a.core();
    let n = core.max_element().unwrap_or(0);
    if core != FiniteSet::interval(n)? {
        return Ok(None);
    }
    let weighted = compositions::weighted_row_sum(n + 1, b as u64);
    Ok(Some(BigUint::from(r + 1) * weighted))
}
