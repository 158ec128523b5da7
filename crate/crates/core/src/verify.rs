//! Exhaustive sweeps behind the maximality theorems, plus two evidence
//! probes for open conjectures.
//!
//! Work is spread over the current rayon pool. Every result is sorted before
//! it reaches a report, so output does not depend on the worker count.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::multiset::{self, SearchBudget, SetArray};
use crate::promotion;
use crate::set::{self, FiniteSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    Crlodd,
    Crleven,
    L15,
    Bases,
    Odd2,
    Pi2,
}

impl Target {
    pub const ALL: [Target; 6] = [
        Target::Crlodd,
        Target::Crleven,
        Target::L15,
        Target::Bases,
        Target::Odd2,
        Target::Pi2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Crlodd => "crlodd",
            Target::Crleven => "crleven",
            Target::L15 => "l15",
            Target::Bases => "bases",
            Target::Odd2 => "odd2",
            Target::Pi2 => "pi2",
        }
    }

    /// Sweep bound used when none is given; also the default cap.
    pub fn default_k(self) -> u32 {
        match self {
            Target::Crlodd | Target::Odd2 | Target::Pi2 => 14,
            Target::Crleven | Target::L15 => 12,
            Target::Bases => 5,
        }
    }

    /// Bound past which the sweep is refused even with a raised cap.
    pub fn hard_limit(self) -> u32 {
        match self {
            Target::Crlodd | Target::Crleven | Target::Odd2 | Target::Pi2 => 24,
            Target::L15 => set::EXHAUSTIVE_SEARCH_BOUND,
            Target::Bases => SearchBudget::default().max_element,
        }
    }

    /// Theorem checks report pass/fail; the rest only gather evidence.
    pub fn is_theorem(self) -> bool {
        !matches!(self, Target::Odd2 | Target::Pi2)
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Target::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                let names: Vec<&str> = Target::ALL.iter().map(|t| t.name()).collect();
                Error::Precondition(format!(
                    "unknown verification target {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

impl Serialize for Target {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    EvidenceOnly,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::EvidenceOnly => "evidence-only",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Counterexample {
    pub k: u32,
    pub subject: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRange {
    pub k_min: u32,
    pub k_max: u32,
    pub description: String,
}

/// The deterministic part of a verification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportData {
    pub target: Target,
    pub range: SweepRange,
    pub status: Status,
    pub counterexamples: Vec<Counterexample>,
    pub evidence: Vec<Value>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunMetadata {
    pub elapsed_seconds: f64,
    pub worker_count: usize,
}

/// Serialized as `{"data": …, "metadata": …}`; only `metadata` varies
/// between identical runs.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub data: ReportData,
    pub metadata: RunMetadata,
}

impl VerificationReport {
    pub fn status(&self) -> Status {
        self.data.status
    }

    pub fn counterexamples(&self) -> &[Counterexample] {
        &self.data.counterexamples
    }
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("data", &self.data)?;
        map.serialize_entry("metadata", &self.metadata)?;
        map.end()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = &self.data;
        writeln!(f, "target: {}", d.target)?;
        writeln!(f, "range: k = {}..={} ({})", d.range.k_min, d.range.k_max, d.range.description)?;
        writeln!(f, "status: {}", d.status)?;
        writeln!(f, "counterexamples: {}", d.counterexamples.len())?;
        for c in &d.counterexamples {
            writeln!(f, "  k={} {}: {}", c.k, c.subject, c.detail)?;
        }
        if !d.evidence.is_empty() {
            writeln!(f, "evidence:")?;
            for row in &d.evidence {
                writeln!(f, "  {row}")?;
            }
        }
        for n in &d.notes {
            writeln!(f, "note: {n}")?;
        }
        writeln!(
            f,
            "elapsed: {:.3}s on {} worker(s)",
            self.metadata.elapsed_seconds, self.metadata.worker_count
        )
    }
}

/// Runs `target` up to `k` (default: the target's acceptance bound). `cap`
/// raises or lowers the largest `k` accepted.
pub fn verify(target: Target, k: Option<u32>, cap: Option<u32>) -> Result<VerificationReport> {
    let cap = cap.unwrap_or(target.default_k());
    let k = k.unwrap_or_else(|| target.default_k().min(cap));
    if k > cap {
        return Err(Error::Budget(format!(
            "{target} with k = {k} exceeds the budget cap {cap}; raise it with --max-k"
        )));
    }
    if k > target.hard_limit() {
        return Err(Error::Budget(format!(
            "{target} supports k ≤ {}, got {k}",
            target.hard_limit()
        )));
    }
    let start = Instant::now();
    let data = match target {
        Target::Crlodd => crlodd(k)?,
        Target::Crleven => crleven(k)?,
        Target::L15 => l15(k)?,
        Target::Bases => bases(k)?,
        Target::Odd2 => odd2(k)?,
        Target::Pi2 => pi2(k)?,
    };
    Ok(VerificationReport {
        data,
        metadata: RunMetadata {
            elapsed_seconds: start.elapsed().as_secs_f64(),
            worker_count: rayon::current_num_threads(),
        },
    })
}

fn theorem(
    target: Target,
    range: SweepRange,
    mut counterexamples: Vec<Counterexample>,
    notes: Vec<String>,
) -> ReportData {
    counterexamples.sort();
    let status = if counterexamples.is_empty() {
        Status::Pass
    } else {
        Status::Fail
    };
    ReportData {
        target,
        range,
        status,
        counterexamples,
        evidence: Vec::new(),
        notes,
    }
}

/// `(d, a)` for every 0-rooted `a` with maximum `m`, sorted.
fn zero_rooted_counts(m: u32) -> Result<Vec<(u64, FiniteSet)>> {
    let top = 1u64 << m;
    let mut out: Vec<(u64, FiniteSet)> = (0..top.max(1))
        .into_par_iter()
        .filter(|low| low & 1 == 1 || m == 0)
        .map(|low| {
            let a = FiniteSet::from_bits(u128::from(low) | (1u128 << m));
            set::divisor_count(&a).map(|d| (d, a))
        })
        .collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

/// The largest `d` over a slice of `(d, a)` pairs, skipping `skip`; ties keep
/// the smallest set.
fn best_excluding(counts: &[(u64, FiniteSet)], skip: &FiniteSet) -> Option<(u64, FiniteSet)> {
    counts
        .iter()
        .filter(|(_, a)| a != skip)
        .fold(None, |best: Option<(u64, FiniteSet)>, &(d, a)| match best {
            Some((bd, _)) if bd >= d => best,
            _ => Some((d, a)),
        })
}

fn crlodd(k_max: u32) -> Result<ReportData> {
    let mut counterexamples = Vec::new();
    // Best rival over all 0-rooted a with max(a) ≤ k, a ≠ [k].
    let mut rival: Option<(u64, FiniteSet)> = None;
    let mut prev_interval: Option<(u64, FiniteSet)> = None;
    for k in 0..=k_max {
        let counts = zero_rooted_counts(k)?;
        let full = FiniteSet::interval(k)?;
        let d_full = set::divisor_count(&full)?;
        for cand in [best_excluding(&counts, &full), prev_interval.take()]
            .into_iter()
            .flatten()
        {
            if rival.is_none_or(|(d, a)| cand.0 > d || (cand.0 == d && cand.1 < a)) {
                rival = Some(cand);
            }
        }
        if let Some((d, a)) = rival {
            if d >= d_full {
                counterexamples.push(Counterexample {
                    k,
                    subject: a.to_string(),
                    detail: format!("d = {d} but d([{k}]) = {d_full}"),
                });
            }
        }
        prev_interval = Some((d_full, full));
    }

    let promo_k = k_max.min(10);
    let promo: Vec<Counterexample> = (0..=promo_k)
        .flat_map(|k| (0..=k).map(move |m| (k, m)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(k, m)| -> Result<Vec<Counterexample>> {
            let mut bad = Vec::new();
            for a in set::sets_with_max(m).filter(|a| a & 1 == 1) {
                let a = FiniteSet::from_bits(a);
                if !promotion::verify_promotion_disjointness(&a, k)? {
                    bad.push(Counterexample {
                        k,
                        subject: a.to_string(),
                        detail: "promoted families overlap or reach the witness factor".into(),
                    });
                }
                if !promotion::promotion_lemma_holds(&a, k)? {
                    bad.push(Counterexample {
                        k,
                        subject: a.to_string(),
                        detail: "a promoted factor does not complete [k]".into(),
                    });
                }
            }
            Ok(bad)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    counterexamples.extend(promo);

    Ok(theorem(
        Target::Crlodd,
        SweepRange {
            k_min: 0,
            k_max,
            description: format!(
                "all 0-rooted A with max(A) ≤ k: d(A) < d([k]) unless A = [k]; promotion families for k ≤ {promo_k}"
            ),
        },
        counterexamples,
        Vec::new(),
    ))
}

/// Ties for the maximum of `d` over subsets of `[k]` that are known to occur.
fn documented_ties(k: u32) -> Vec<FiniteSet> {
    let parse = |s: &str| s.parse::<FiniteSet>().expect("literal");
    match k {
        1 => vec![parse("1"), parse("0,1")],
        3 => vec![parse("2,3"), parse("1,2,3")],
        _ => Vec::new(),
    }
}

fn crleven(k_max: u32) -> Result<ReportData> {
    let mut counterexamples = Vec::new();
    let mut notes = Vec::new();
    for k in 1..=k_max {
        let top = 1u64 << (k + 1);
        let counts: Vec<(u64, u128)> = (1..top)
            .into_par_iter()
            .map(|bits| set::divisor_count(&FiniteSet::from_bits(bits.into())).map(|d| (d, bits.into())))
            .collect::<Result<_>>()?;
        let best = counts.iter().map(|c| c.0).max().unwrap_or(0);
        let mut maximizers: Vec<FiniteSet> = counts
            .iter()
            .filter(|c| c.0 == best)
            .map(|c| FiniteSet::from_bits(c.1))
            .collect();
        maximizers.sort();
        let plus = FiniteSet::interval_plus(k)?;
        let mut expected = documented_ties(k);
        if expected.is_empty() {
            expected.push(plus);
        }
        expected.sort();
        if maximizers != expected {
            let listed: Vec<String> = maximizers.iter().map(ToString::to_string).collect();
            counterexamples.push(Counterexample {
                k,
                subject: listed.join(" "),
                detail: format!(
                    "maximum d = {best} attained here; expected only {}",
                    expected.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
                ),
            });
        } else if expected.len() > 1 {
            let listed: Vec<String> = expected.iter().map(ToString::to_string).collect();
            notes.push(format!("k = {k}: tie d = {best} at {}", listed.join(" and ")));
        }
    }
    Ok(theorem(
        Target::Crleven,
        SweepRange {
            k_min: 1,
            k_max,
            description: "all nonempty A ⊆ [k]: maximum of d at [k+]".into(),
        },
        counterexamples,
        notes,
    ))
}

fn l15(k: u32) -> Result<ReportData> {
    let top = 1u64 << (k + 1);
    let counterexamples: Vec<Counterexample> = (1..top)
        .into_par_iter()
        .map(|bits| -> Result<Option<Counterexample>> {
            let a = FiniteSet::from_bits(bits.into());
            let r = a.min_element().expect("nonempty");
            let direct = set::divisor_count_exhaustive(&a)?;
            let reduced = u64::from(r + 1) * set::divisor_count_exhaustive(&a.core())?;
            Ok((direct != reduced).then(|| Counterexample {
                k,
                subject: a.to_string(),
                detail: format!("d(A) = {direct} but (r+1)·d(A−r) = {reduced}"),
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(theorem(
        Target::L15,
        SweepRange {
            k_min: k,
            k_max: k,
            description: "all nonempty A ⊆ [k]: d(A) = (min A + 1)·d(A − min A)".into(),
        },
        counterexamples,
        Vec::new(),
    ))
}

/// Every nonzero multiplicity vector over `[0, m]` with entries in
/// `[0, height]` whose top entry is nonzero.
fn multisets_with_max(m: u32, height: usize) -> Vec<Vec<u32>> {
    let width = m as usize + 1;
    let radix = height as u64 + 1;
    let total = radix.pow(width as u32);
    (0..total)
        .map(|mut code| {
            (0..width)
                .map(|_| {
                    let digit = (code % radix) as u32;
                    code /= radix;
                    digit
                })
                .collect::<Vec<u32>>()
        })
        .filter(|f| f[width - 1] != 0)
        .collect()
}

fn bases(k_max: u32) -> Result<ReportData> {
    const HEIGHT: usize = 2;
    let mut counterexamples = Vec::new();
    let mut rival: Option<(u64, String)> = None;
    let mut prev_interval: Option<(u64, String)> = None;
    for k in 0..=k_max {
        let full = SetArray::from_set(&FiniteSet::interval(k)?, HEIGHT)?;
        let formula = multiset::setarray_divisor_count_formula(&FiniteSet::interval(k)?, HEIGHT)?;
        let formula = u64::try_from(formula).expect("small");
        let mut counts: Vec<(u64, String)> = multisets_with_max(k, HEIGHT)
            .into_par_iter()
            .map(|f| -> Result<Option<(u64, String)>> {
                let x = multiset::to_set_array(&f, HEIGHT)?;
                if x == full {
                    return Ok(None);
                }
                let d = multiset::setarray_divisor_count(&x)?;
                Ok(Some((d, x.to_string())))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        counts.sort();
        if let Some(prev) = prev_interval.take() {
            counts.push(prev);
        }
        for (d, x) in counts {
            if rival.as_ref().is_none_or(|(rd, _)| d > *rd) {
                rival = Some((d, x));
            }
        }
        if let Some((d, x)) = &rival {
            if *d >= formula {
                counterexamples.push(Counterexample {
                    k,
                    subject: x.clone(),
                    detail: format!("d = {d} but the formula gives {formula} at ([{k}],{{}})"),
                });
            }
        }
        let brute = multiset::setarray_divisor_count(&full)?;
        if brute != formula {
            counterexamples.push(Counterexample {
                k,
                subject: full.to_string(),
                detail: format!("brute force {brute} differs from the formula {formula}"),
            });
        }
        prev_interval = Some((formula, full.to_string()));
    }

    // Formula against brute force on (a, ∅, …) for every 0-rooted a.
    let shapes: Vec<(usize, u128)> = [2usize, 3]
        .into_iter()
        .flat_map(|h| {
            (0..=k_max).flat_map(move |m| set::sets_with_max(m).filter(|a| a & 1 == 1).map(move |a| (h, a)))
        })
        .collect();
    let mismatches: Vec<Counterexample> = shapes
        .into_par_iter()
        .map(|(h, bits)| -> Result<Option<Counterexample>> {
            let a = FiniteSet::from_bits(bits);
            let x = SetArray::from_set(&a, h)?;
            let formula = multiset::setarray_divisor_count_formula(&a, h)?;
            let brute = BigUint::from(multiset::setarray_divisor_count(&x)?);
            Ok((formula != brute).then(|| Counterexample {
                k: a.max_element().unwrap_or(0),
                subject: x.to_string(),
                detail: format!("formula {formula}, brute force {brute}"),
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    counterexamples.extend(mismatches);

    Ok(theorem(
        Target::Bases,
        SweepRange {
            k_min: 0,
            k_max,
            description: "all nonzero height-2 multisets with max ≤ k: unique maximum of d at ([k],{}); formula vs brute force for heights 2 and 3".into(),
        },
        counterexamples,
        Vec::new(),
    ))
}

fn odd2(k_max: u32) -> Result<ReportData> {
    let mut evidence = Vec::new();
    let mut misses = Vec::new();
    for k in 3..=k_max {
        // Odd k-digit binary numbers: 0 and k − 1 both present.
        let counts: Vec<(u64, u128)> = set::sets_with_max(k - 1)
            .filter(|a| a & 1 == 1)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|bits| set::divisor_count(&FiniteSet::from_bits(bits)).map(|d| (d, bits)))
            .collect::<Result<_>>()?;
        let mut values: Vec<u64> = counts.iter().map(|c| c.0).collect();
        values.sort_unstable();
        values.dedup();
        let largest = values[values.len() - 1];
        let second = values.len().checked_sub(2).map(|i| values[i]);
        let at = |d: u64| {
            let mut xs: Vec<u128> = counts.iter().filter(|c| c.0 == d).map(|c| c.1).collect();
            xs.sort_unstable();
            xs
        };
        let probe = (1u128 << k) - 3;
        let second_at = second.map(at).unwrap_or_default();
        let hit = second_at.contains(&probe);
        if !hit {
            misses.push(k);
        }
        evidence.push(json!({
            "k": k,
            "largest": { "d": largest, "at": at(largest).iter().map(ToString::to_string).collect::<Vec<_>>() },
            "second": { "d": second, "at": second_at.iter().map(ToString::to_string).collect::<Vec<_>>() },
            "two_pow_k_minus_3": probe.to_string(),
            "second_includes_two_pow_k_minus_3": hit,
        }));
    }
    let notes = vec![if misses.is_empty() {
        "2^k − 3 attains the second-largest value for every k swept".to_string()
    } else {
        format!(
            "2^k − 3 misses the second-largest value at k = {}",
            misses.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        )
    }];
    Ok(ReportData {
        target: Target::Odd2,
        range: SweepRange {
            k_min: 3,
            k_max,
            description: "odd k-digit binary numbers n: where the second-largest d₂(n) occurs".into(),
        },
        status: Status::EvidenceOnly,
        counterexamples: Vec::new(),
        evidence,
        notes,
    })
}

fn pi2(k_max: u32) -> Result<ReportData> {
    let mut rows: Vec<(u32, u64)> = (1..=k_max)
        .into_par_iter()
        .map(|k| set::count_irreducible(k).map(|c| (k, c)))
        .collect::<Result<_>>()?;
    rows.sort_unstable();
    let evidence = rows
        .into_iter()
        .map(|(k, count)| {
            let conjectured = 1u64 << (k - 1);
            json!({
                "k": k,
                "irreducible": count,
                "conjectured": conjectured,
                "ratio": count as f64 / conjectured as f64,
            })
        })
        .collect();
    Ok(ReportData {
        target: Target::Pi2,
        range: SweepRange {
            k_min: 1,
            k_max,
            description: "irreducible A with max(A) = k (binary numbers of k + 1 digits) against 2^(k−1)".into(),
        },
        status: Status::EvidenceOnly,
        counterexamples: Vec::new(),
        evidence,
        notes: Vec::new(),
    })
}
