//! k-promotion: turning factors of a 0-rooted `A ⊆ [k]` into factors of
//! `[k]`.
//!
//! For `B + C = A` with `max B ≤ max C`, promoting `C` appends every missing
//! element of `[k]` below `max B`, plus every missing element at or above
//! `max B` shifted down by `max B`. The result `C_B` satisfies
//! `B + C_B = [k]`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::set::{self, FiniteSet, MAX_ELEMENT};

/// Brute-force cofactor search gives up past this many quotient bits.
pub const COFACTOR_SEARCH_BITS: u32 = 24;

/// `a = b + c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub a: FiniteSet,
    pub b: FiniteSet,
    pub c: FiniteSet,
}

impl Factorization {
    pub fn new(b: FiniteSet, c: FiniteSet) -> Result<Self> {
        Ok(Factorization {
            a: set::sum(&b, &c)?,
            b,
            c,
        })
    }
}

/// The factors of `[k]` produced from one divisor `B` of `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PromotedFamily {
    pub divisor: FiniteSet,
    pub members: BTreeSet<FiniteSet>,
}

fn check_context(a: &FiniteSet, k: u32) -> Result<()> {
    if k > MAX_ELEMENT {
        return Err(Error::Capacity {
            element: u64::from(k),
            bound: MAX_ELEMENT,
        });
    }
    if !a.is_zero_rooted() {
        return Err(Error::Precondition(format!("{a} is not 0-rooted")));
    }
    if a.max_element().unwrap_or(0) > k {
        return Err(Error::Precondition(format!("{a} is not contained in [{k}]")));
    }
    Ok(())
}

/// Every `c` with `b + c = a`, in set order.
pub fn cofactors(a: &FiniteSet, b: &FiniteSet) -> Result<Vec<FiniteSet>> {
    let q = match set::quotient_max(a, b) {
        Ok(q) => q,
        Err(Error::Precondition(_)) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    if q.len() > COFACTOR_SEARCH_BITS {
        return Err(Error::Budget(format!(
            "cofactor search over {} candidate elements exceeds {COFACTOR_SEARCH_BITS}",
            q.len()
        )));
    }
    let q = q.bits();
    let mut out = Vec::new();
    let mut sub = q;
    while sub != 0 {
        let c = FiniteSet::from_bits(sub);
        if set::sum(b, &c)? == *a {
            out.push(c);
        }
        sub = (sub - 1) & q;
    }
    out.sort();
    Ok(out)
}

/// Every factorization `a = b + c`, ordered by `b` then `c`.
pub fn factorizations(a: &FiniteSet) -> Result<Vec<Factorization>> {
    let mut out = Vec::new();
    for b in set::divisors(a)? {
        for c in cofactors(a, &b)? {
            out.push(Factorization { a: *a, b, c });
        }
    }
    Ok(out)
}

/// `base_factor ∪ (([k]∖a) ∩ [0, other_max)) ∪ {s − other_max : s ∈ [k]∖a, s ≥ other_max}`.
///
/// `base_factor` must divide `a` with a cofactor of maximum `other_max`.
pub fn promote(a: &FiniteSet, k: u32, base_factor: &FiniteSet, other_max: u32) -> Result<FiniteSet> {
    check_context(a, k)?;
    let top = a.max_element().expect("0-rooted sets are nonempty");
    let base_top = base_factor
        .max_element()
        .ok_or(Error::EmptyOperand("promote"))?;
    if !base_factor.is_zero_rooted()
        || u64::from(base_top) + u64::from(other_max) != u64::from(top)
        || !set::divides(base_factor, a)?
    {
        return Err(Error::Precondition(format!(
            "{base_factor} with a cofactor of maximum {other_max} does not factor {a}"
        )));
    }
    let missing = FiniteSet::interval(k)?.difference(a);
    let below = missing.bits() & set::low_mask(other_max);
    let shifted = missing.shift_down(other_max).bits();
    Ok(FiniteSet::from_bits(base_factor.bits() | below | shifted))
}

/// `F(b)`: for each cofactor `c`, keep `b` when `max b ≤ max c` and add its
/// promotion when `max b ≥ max c`.
pub fn promoted_family(a: &FiniteSet, k: u32, b: &FiniteSet) -> Result<PromotedFamily> {
    check_context(a, k)?;
    let cs = cofactors(a, b)?;
    if cs.is_empty() {
        return Err(Error::Precondition(format!("{b} does not divide {a}")));
    }
    let b_max = b.max_element().expect("divisors are nonempty");
    let mut members = BTreeSet::new();
    for c in cs {
        let c_max = c.max_element().expect("cofactors are nonempty");
        if b_max <= c_max {
            members.insert(*b);
        }
        if b_max >= c_max {
            members.insert(promote(a, k, b, c_max)?);
        }
    }
    Ok(PromotedFamily {
        divisor: *b,
        members,
    })
}

/// A factor of `[k]` that no promoted family of a proper `a ⊊ [k]` reaches.
pub fn witness_factor(k: u32, a: &FiniteSet) -> Result<FiniteSet> {
    if k < 3 {
        return Err(Error::Precondition(format!("witness factors need k ≥ 3, got {k}")));
    }
    check_context(a, k)?;
    let full = FiniteSet::interval(k)?;
    if *a == full {
        return Err(Error::Precondition(format!("{a} is the full interval [{k}]")));
    }
    if k % 2 == 1 {
        return FiniteSet::new([0, (k + 1) / 2]);
    }
    if *a == full.difference(&FiniteSet::singleton(2)?) {
        return FiniteSet::new([0, 2]);
    }
    FiniteSet::new(std::iter::once(0).chain((1..k).step_by(2)))
}

/// Families of distinct divisors are pairwise disjoint, every member divides
/// `[k]`, and for `a ⊊ [k]` with `k ≥ 3` the witness factor is missed.
pub fn verify_promotion_disjointness(a: &FiniteSet, k: u32) -> Result<bool> {
    check_context(a, k)?;
    let full = FiniteSet::interval(k)?;
    let mut seen = BTreeSet::new();
    for b in set::divisors(a)? {
        for m in promoted_family(a, k, &b)?.members {
            if !set::divides(&m, &full)? || !seen.insert(m) {
                return Ok(false);
            }
        }
    }
    if k >= 3 && *a != full && seen.contains(&witness_factor(k, a)?) {
        return Ok(false);
    }
    Ok(true)
}

/// `b + promote(a, k, c, max b) = [k]` for every factorization with
/// `max b ≤ max c`.
pub fn promotion_lemma_holds(a: &FiniteSet, k: u32) -> Result<bool> {
    check_context(a, k)?;
    let full = FiniteSet::interval(k)?;
    for f in factorizations(a)? {
        let (b_max, c_max) = (f.b.max_element().unwrap_or(0), f.c.max_element().unwrap_or(0));
        if b_max <= c_max && set::sum(&f.b, &promote(a, k, &f.c, b_max)?)? != full {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> FiniteSet {
        text.parse().unwrap()
    }

    fn members(xs: &[&str]) -> BTreeSet<FiniteSet> {
        xs.iter().map(|x| s(x)).collect()
    }

    #[test]
    fn promote_examples() {
        let a = s("0,3,4,7");
        assert_eq!(promote(&a, 7, &s("0,4"), 3).unwrap(), s("0,1,2,3,4"));
        assert_eq!(promote(&a, 8, &s("0,4"), 3).unwrap(), s("0,1,2,3,4,5"));
        assert_eq!(
            promote(&s("0,1,3,4,6"), 6, &s("0,3"), 3).unwrap(),
            s("0,2,3")
        );
        let full = FiniteSet::interval(5).unwrap();
        for f in factorizations(&full).unwrap() {
            let m = f.b.max_element().unwrap();
            assert_eq!(promote(&full, 5, &f.c, m).unwrap(), f.c);
        }
    }

    #[test]
    fn promote_rejects_bad_context() {
        let a = s("0,3,4,7");
        assert!(promote(&a, 7, &s("0,4"), 2).is_err());
        assert!(promote(&a, 7, &s("0,1"), 6).is_err());
        assert!(promote(&a, 6, &s("0,4"), 3).is_err());
        assert!(promote(&s("1,4"), 7, &s("0,3"), 1).is_err());
        assert!(promote(&a, 7, &FiniteSet::empty(), 7).is_err());
    }

    #[test]
    fn family_examples() {
        let a = s("0,2,3,4,5,6");
        assert_eq!(
            promoted_family(&a, 6, &s("0,2,3")).unwrap().members,
            members(&["0,2,3", "0,1,2,3"])
        );
        assert_eq!(
            promoted_family(&a, 6, &s("0,2")).unwrap().members,
            members(&["0,2"])
        );
        assert_eq!(
            promoted_family(&a, 6, &s("0,3,4")).unwrap().members,
            members(&["0,1,3,4"])
        );
        let full = FiniteSet::interval(6).unwrap();
        for b in set::divisors(&full).unwrap() {
            assert_eq!(
                promoted_family(&full, 6, &b).unwrap().members,
                BTreeSet::from([b])
            );
        }
        assert!(promoted_family(&a, 6, &s("0,1")).is_err());
    }

    #[test]
    fn witness_examples() {
        assert_eq!(witness_factor(7, &s("0,3,4,7")).unwrap(), s("0,4"));
        assert_eq!(witness_factor(7, &s("0")).unwrap(), s("0,4"));
        assert_eq!(witness_factor(6, &s("0,1,3,4,5,6")).unwrap(), s("0,2"));
        assert_eq!(witness_factor(6, &s("0,1,3,4,6")).unwrap(), s("0,1,3,5"));
        assert!(witness_factor(2, &s("0")).is_err());
        assert!(witness_factor(6, &FiniteSet::interval(6).unwrap()).is_err());
        for k in 3..12 {
            let w = witness_factor(k, &s("0")).unwrap();
            assert!(set::divides(&w, &FiniteSet::interval(k).unwrap()).unwrap());
        }
    }

    #[test]
    fn disjointness_examples() {
        assert!(verify_promotion_disjointness(&s("0,2,3,4,5,6"), 6).unwrap());
        for k in 0..8 {
            assert!(verify_promotion_disjointness(&FiniteSet::interval(k).unwrap(), k).unwrap());
        }
        assert!(promotion_lemma_holds(&s("0,3,4,7"), 9).unwrap());
    }

    #[test]
    fn cofactor_listing() {
        let a = s("0,2,3,4,5,6");
        assert_eq!(cofactors(&a, &s("0,2,3")).unwrap(), vec![s("0,2,3")]);
        assert_eq!(
            cofactors(&a, &s("0,2")).unwrap(),
            vec![s("0,3,4"), s("0,2,3,4")]
        );
        assert!(cofactors(&a, &s("0,1")).unwrap().is_empty());
        let f = Factorization::new(s("0,2"), s("0,1")).unwrap();
        assert_eq!(f.a, s("0,1,2,3"));
    }
}
