//! Integer partitions stored as a part → multiplicity map.
//!
//! The canonical text form lists tokens `p` or `p^c` (with `c >= 2`) in
//! strictly descending order of part, separated by single spaces. The
//! empty partition renders as the empty string. `"15^2 12 7^4 1"` is the
//! partition 15+15+12+7+7+7+7+1.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition of a nonnegative integer.
///
/// Every stored part and multiplicity is at least 1, and the weight is
/// known to fit in a `u64`; every constructor checks both.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Partition {
    entries: BTreeMap<u64, u64>,
    weight: u64,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a partition from `(part, multiplicity)` pairs in any order.
    /// Repeated parts are merged and zero multiplicities are dropped.
    pub fn from_multiplicities<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut p = Partition::empty();
        for (part, mult) in pairs {
            p.insert(part, mult)?;
        }
        Ok(p)
    }

    /// Builds a partition from a flat list of parts.
    pub fn from_parts(parts: &[u64]) -> Result<Self> {
        Self::from_multiplicities(parts.iter().map(|&p| (p, 1)))
    }

    fn insert(&mut self, part: u64, mult: u64) -> Result<()> {
        if mult == 0 {
            return Ok(());
        }
        if part == 0 {
            return Err(Error::Domain("parts must be at least 1".into()));
        }
        let added = part
            .checked_mul(mult)
            .ok_or(Error::Overflow("partition weight exceeds u64"))?;
        self.weight = self
            .weight
            .checked_add(added)
            .ok_or(Error::Overflow("partition weight exceeds u64"))?;
        let slot = self.entries.entry(part).or_insert(0);
        // cannot overflow: slot * part <= weight
        *slot += mult;
        Ok(())
    }

    /// Sum of all parts counted with multiplicity.
    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of parts counted with multiplicity.
    pub fn num_parts(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn num_distinct_parts(&self) -> usize {
        self.entries.len()
    }

    pub fn multiplicity(&self, part: u64) -> u64 {
        self.entries.get(&part).copied().unwrap_or(0)
    }

    pub fn largest_part(&self) -> Option<u64> {
        self.entries.keys().next_back().copied()
    }

    pub fn smallest_part(&self) -> Option<u64> {
        self.entries.keys().next().copied()
    }

    /// `(part, multiplicity)` pairs in ascending order of part.
    pub fn iter(&self) -> btree_map::Iter<'_, u64, u64> {
        self.entries.iter()
    }

    /// `(part, multiplicity)` pairs in descending order of part.
    pub fn iter_desc(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.entries.iter().rev().map(|(&p, &c)| (p, c))
    }

    /// Every part repeated by its multiplicity, largest first.
    pub fn parts_desc(&self) -> impl Iterator<Item = u64> + '_ {
        self.iter_desc()
            .flat_map(|(p, c)| std::iter::repeat_n(p, c as usize))
    }

    /// Splits into the parts satisfying `pred` and the rest.
    pub fn split_by<F>(&self, mut pred: F) -> (Partition, Partition)
    where
        F: FnMut(u64) -> bool,
    {
        let mut yes = Partition::empty();
        let mut no = Partition::empty();
        for (&part, &mult) in &self.entries {
            let side = if pred(part) { &mut yes } else { &mut no };
            side.entries.insert(part, mult);
            side.weight += part * mult;
        }
        (yes, no)
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let mut out = Partition::empty();
        let mut taller = 0u64;
        let mut desc = self.iter_desc().peekable();
        while let Some((part, mult)) = desc.next() {
            taller += mult;
            let next = desc.peek().map_or(0, |&(p, _)| p);
            // `taller` columns of height `part - next` each.
            out.entries.insert(taller, part - next);
        }
        out.weight = self.weight;
        out
    }

    /// Multiset union: multiplicities add.
    pub fn add(&self, other: &Partition) -> Result<Partition> {
        let mut out = self.clone();
        for (&part, &mult) in &other.entries {
            out.insert(part, mult)?;
        }
        Ok(out)
    }

    /// Multiset difference. Fails unless `other` is a sub-multiset of `self`.
    pub fn subtract(&self, other: &Partition) -> Result<Partition> {
        let mut out = self.clone();
        for (&part, &mult) in &other.entries {
            let available = out.multiplicity(part);
            if mult > available {
                return Err(Error::NotSubpartition {
                    part,
                    needed: mult,
                    available,
                });
            }
            if mult == available {
                out.entries.remove(&part);
            } else {
                out.entries.insert(part, available - mult);
            }
            out.weight -= part * mult;
        }
        Ok(out)
    }

    /// Canonical text form.
    pub fn render(&self) -> String {
        self.to_string()
    }

    /// Parses the canonical text form. Only canonical strings are accepted,
    /// so `parse(s).render() == s` whenever parsing succeeds.
    pub fn parse(text: &str) -> Result<Partition> {
        let bytes = text.as_bytes();
        let mut out = Partition::empty();
        let mut pos = 0usize;
        let mut previous: Option<u64> = None;
        if bytes.is_empty() {
            return Ok(out);
        }
        loop {
            let token_start = pos;
            let (part, next) = parse_number(bytes, pos, "part")?;
            pos = next;
            let mut mult = 1;
            if bytes.get(pos) == Some(&b'^') {
                let (c, next) = parse_number(bytes, pos + 1, "multiplicity")?;
                if c < 2 {
                    return Err(Error::parse(
                        pos + 1,
                        "multiplicity suffix must be at least 2",
                    ));
                }
                mult = c;
                pos = next;
            }
            if let Some(prev) = previous {
                if part >= prev {
                    return Err(Error::parse(
                        token_start,
                        format!("parts must be strictly descending ({part} after {prev})"),
                    ));
                }
            }
            previous = Some(part);
            out.insert(part, mult)
                .map_err(|e| Error::parse(token_start, e.to_string()))?;
            match bytes.get(pos) {
                None => return Ok(out),
                Some(b' ') if pos + 1 < bytes.len() => pos += 1,
                Some(b' ') => return Err(Error::parse(pos, "trailing space")),
                Some(&b) => {
                    return Err(Error::parse(
                        pos,
                        format!("unexpected character {:?}", b as char),
                    ))
                }
            }
        }
    }
}

/// Reads a positive decimal integer without leading zeros starting at `pos`.
fn parse_number(bytes: &[u8], pos: usize, what: &str) -> Result<(u64, usize)> {
    let digits = bytes[pos.min(bytes.len())..]
        .iter()
        .take_while(|b| b.is_ascii_digit())
        .count();
    if digits == 0 {
        let found = match bytes.get(pos) {
            Some(&b) => format!("{:?}", b as char),
            None => "end of input".to_owned(),
        };
        return Err(Error::parse(pos, format!("expected {what}, found {found}")));
    }
    if bytes[pos] == b'0' {
        let message = if digits == 1 {
            format!("{what} must be at least 1")
        } else {
            format!("{what} has a leading zero")
        };
        return Err(Error::parse(pos, message));
    }
    let mut value: u64 = 0;
    for &b in &bytes[pos..pos + digits] {
        value = value
            .checked_mul(10)
            .and_then(|v| v.checked_add(u64::from(b - b'0')))
            .ok_or_else(|| Error::parse(pos, format!("{what} does not fit in 64 bits")))?;
    }
    Ok((value, pos + digits))
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (part, mult)) in self.iter_desc().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if mult == 1 {
                write!(f, "{part}")?;
            } else {
                write!(f, "{part}^{mult}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({:?})", self.to_string())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::parse(s)
    }
}

/// JSON form: array of `[part, multiplicity]` pairs, descending by part.
impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.entries.len()))?;
        for (part, mult) in self.iter_desc() {
            seq.serialize_element(&[part, mult])?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PairsVisitor;

        impl<'de> Visitor<'de> for PairsVisitor {
            type Value = Partition;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an array of [part, multiplicity] pairs, descending by part")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Partition, A::Error> {
                let mut out = Partition::empty();
                let mut previous: Option<u64> = None;
                while let Some([part, mult]) = seq.next_element::<[u64; 2]>()? {
                    if part == 0 || mult == 0 {
                        return Err(de::Error::custom("parts and multiplicities must be at least 1"));
                    }
                    if previous.is_some_and(|prev| part >= prev) {
                        return Err(de::Error::custom("parts must be strictly descending"));
                    }
                    previous = Some(part);
                    out.insert(part, mult).map_err(de::Error::custom)?;
                }
                Ok(out)
            }
        }

        deserializer.deserialize_seq(PairsVisitor)
    }
}

/// Serde adapter that writes a [`Partition`] as its canonical text form.
///
/// ```ignore
/// #[serde(with = "parteq::partition::text")]
/// kappa: Partition,
/// ```
pub mod text {
    use super::Partition;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &Partition, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(p)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Partition, D::Error> {
        let s = <std::borrow::Cow<'de, str>>::deserialize(deserializer)?;
        Partition::parse(&s).map_err(de::Error::custom)
    }
}
