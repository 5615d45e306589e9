//! The partition classes A(n,k,d,m) and B(n,k,d,m).
//!
//! A(n,k,d,m): partitions of n with exactly k parts divisible by d, every
//! other part strictly below m·d.
//!
//! B(n,k,d,m) depends on how m compares with k:
//! - m < k: the largest part is k·d and every part above m·d is divisible by d;
//! - m ≥ k: part k occurs at least d times, no part exceeds m·d, and each part
//!   i with k < i ≤ m occurs fewer than d times.
//!
//! Taking m > n removes the bound and recovers the unbounded statement
//! (k parts divisible by d versus k being the largest part that occurs at
//! least d times).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// The quadruple (n, k, d, m) that selects a pair of classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct ClassParams {
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub m: u64,
}

#[derive(Deserialize)]
struct RawParams {
    n: u64,
    k: u64,
    d: u64,
    m: u64,
}

impl TryFrom<RawParams> for ClassParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        ClassParams::new(raw.n, raw.k, raw.d, raw.m)
    }
}

impl ClassParams {
    /// Validates k, d, m ≥ 1 and that k·d and m·d fit in a `u64`.
    pub fn new(n: u64, k: u64, d: u64, m: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("k must be at least 1".into()));
        }
        if d == 0 {
            return Err(Error::Domain("d must be at least 1".into()));
        }
        if m == 0 {
            return Err(Error::Domain("m must be at least 1".into()));
        }
        k.checked_mul(d).ok_or(Error::Overflow("k*d exceeds u64"))?;
        m.checked_mul(d).ok_or(Error::Overflow("m*d exceeds u64"))?;
        Ok(ClassParams { n, k, d, m })
    }

    /// m·d, the bound on parts outside the d-divisible ones.
    pub fn md(&self) -> u64 {
        self.m * self.d
    }

    pub fn kd(&self) -> u64 {
        self.k * self.d
    }
}

impl fmt::Display for ClassParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.n, self.k, self.d, self.m)
    }
}

/// Parses `"n,k,d,m"`.
impl FromStr for ClassParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut values = [0u64; 4];
        let mut fields = s.split(',');
        let mut offset = 0;
        for (i, slot) in values.iter_mut().enumerate() {
            let field = fields
                .next()
                .ok_or_else(|| Error::parse(s.len(), format!("expected 4 fields, found {i}")))?;
            if field.is_empty() || !field.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::parse(offset, format!("field {field:?} is not a decimal integer")));
            }
            *slot = field
                .parse()
                .map_err(|_| Error::parse(offset, "value does not fit in 64 bits"))?;
            offset += field.len() + 1;
        }
        if fields.next().is_some() {
            return Err(Error::parse(offset - 1, "expected exactly 4 fields"));
        }
        let [n, k, d, m] = values;
        ClassParams::new(n, k, d, m)
    }
}

pub fn is_in_a(p: &Partition, params: &ClassParams) -> bool {
    if p.weight() != params.n {
        return false;
    }
    let md = params.md();
    let mut divisible = 0u64;
    for (&part, &mult) in p.iter() {
        if part % params.d == 0 {
            divisible += mult;
        } else if part >= md {
            return false;
        }
    }
    divisible == params.k
}

pub fn is_in_b(p: &Partition, params: &ClassParams) -> bool {
    if p.weight() != params.n {
        return false;
    }
    let ClassParams { k, d, m, .. } = *params;
    let md = params.md();
    if m < k {
        if p.largest_part() != Some(params.kd()) {
            return false;
        }
        p.iter().all(|(&part, _)| part <= md || part % d == 0)
    } else {
        if p.multiplicity(k) < d {
            return false;
        }
        if p.largest_part().is_some_and(|largest| largest > md) {
            return false;
        }
        p.iter()
            .filter(|(&part, _)| k < part && part <= m)
            .all(|(_, &mult)| mult < d)
    }
}

/// Cap on the number of partitions a single enumeration may produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(10_000_000);

    /// Reads `PARTEQ_BUDGET`, falling back to the default when unset.
    pub fn from_env() -> Result<Budget> {
        match std::env::var("PARTEQ_BUDGET") {
            Ok(v) => v
                .trim()
                .parse()
                .map(Budget)
                .map_err(|_| Error::parse(0, format!("PARTEQ_BUDGET={v:?} is not a nonnegative integer"))),
            Err(_) => Ok(Budget::DEFAULT),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

/// Number of partitions of `n` into parts at most `max_part`, or `None`
/// once it is known to exceed `cap`.
fn count_within(n: u64, max_part: u64, cap: u64) -> Option<u64> {
    let max_part = max_part.min(n);
    if n == 0 || max_part == 1 {
        return Some(1);
    }
    if max_part == 2 {
        return Some(n / 2 + 1).filter(|&c| c <= cap);
    }
    // Each partition into parts <= t is hit by at most t! of the
    // C(n+t-1, t-1) ordered t-tuples summing to n, so the count is at
    // least n^(t-1) / (t! (t-1)!).
    let mut power = 1u128;
    let mut factorials = 1u128;
    for t in 2..=max_part.min(16) {
        power = power.saturating_mul(u128::from(n));
        factorials *= u128::from(t) * u128::from(t - 1);
        if power / factorials > u128::from(cap) {
            return None;
        }
    }
    // Add one part size at a time; each pass can only increase the count.
    let size = n as usize + 1;
    let limit = cap.saturating_add(1);
    let mut ways = vec![0u64; size];
    ways[0] = 1;
    for part in 1..=max_part as usize {
        for total in part..size {
            ways[total] = (ways[total] + ways[total - part]).min(limit);
        }
        if ways[size - 1] > cap {
            return None;
        }
    }
    Some(ways[size - 1])
}

/// All partitions of `n` with parts at most `max_part` (`None` for no
/// bound), in descending lexicographic order of their part sequences.
///
/// Fails with [`Error::BudgetExceeded`] before yielding anything if there
/// are more than `budget` such partitions.
pub fn enumerate_partitions(n: u64, max_part: Option<u64>, budget: Budget) -> Result<Partitions> {
    let max_part = max_part.unwrap_or(n).min(n);
    if n == 0 {
        return Ok(Partitions { runs: Some(Vec::new()) });
    }
    if max_part == 0 {
        return Ok(Partitions { runs: None });
    }
    match count_within(n, max_part, budget.0) {
        None => Err(Error::BudgetExceeded { cap: budget.0 }),
        Some(0) => Ok(Partitions { runs: None }),
        Some(_) => {
            let mut runs = vec![(max_part, n / max_part)];
            if !n.is_multiple_of(max_part) {
                runs.push((n % max_part, 1));
            }
            Ok(Partitions { runs: Some(runs) })
        }
    }
}

/// Iterator returned by [`enumerate_partitions`].
#[derive(Debug, Clone)]
pub struct Partitions {
    // next partition to yield as (part, multiplicity) runs, descending
    runs: Option<Vec<(u64, u64)>>,
}

impl Partitions {
    fn advance(runs: &mut Vec<(u64, u64)>) -> bool {
        let mut freed = 0u64;
        if let Some(&(1, ones)) = runs.last() {
            runs.pop();
            freed = ones;
        }
        let Some(last) = runs.last_mut() else {
            return false;
        };
        let part = last.0;
        last.1 -= 1;
        if last.1 == 0 {
            runs.pop();
        }
        freed += part;
        let size = part - 1;
        runs.push((size, freed / size));
        if !freed.is_multiple_of(size) {
            runs.push((freed % size, 1));
        }
        true
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let runs = self.runs.as_mut()?;
        let current =
            Partition::from_multiplicities(runs.iter().copied()).expect("runs sum to n");
        if !Self::advance(runs) {
            self.runs = None;
        }
        Some(current)
    }
}

/// Members of A(params), in enumeration order.
pub fn enumerate_a(
    params: &ClassParams,
    budget: Budget,
) -> Result<impl Iterator<Item = Partition>> {
    let params = *params;
    Ok(enumerate_partitions(params.n, None, budget)?.filter(move |p| is_in_a(p, &params)))
}

/// Members of B(params), in enumeration order.
pub fn enumerate_b(
    params: &ClassParams,
    budget: Budget,
) -> Result<impl Iterator<Item = Partition>> {
    let params = *params;
    // No member of B has a part above max(k·d, m·d).
    let bound = params.kd().max(params.md());
    Ok(enumerate_partitions(params.n, Some(bound), budget)?.filter(move |p| is_in_b(p, &params)))
}

pub fn count_a(params: &ClassParams, budget: Budget) -> Result<u64> {
    Ok(enumerate_a(params, budget)?.count() as u64)
}

pub fn count_b(params: &ClassParams, budget: Budget) -> Result<u64> {
    Ok(enumerate_b(params, budget)?.count() as u64)
}
