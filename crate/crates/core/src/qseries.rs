//! Truncated formal power series in q with exact integer coefficients, and
//! the two sides of the generating-function identities for A and B.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// c_0 + c_1 q + … + c_N q^N, computed modulo q^(N+1).
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coefficients: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(degree: usize) -> Self {
        TruncatedSeries {
            coefficients: vec![BigInt::zero(); degree + 1],
        }
    }

    pub fn one(degree: usize) -> Self {
        Self::monomial(0, degree)
    }

    /// q^exponent, which is zero when `exponent > degree`.
    pub fn monomial(exponent: u64, degree: usize) -> Self {
        let mut s = Self::zero(degree);
        if exponent <= degree as u64 {
            s.coefficients[exponent as usize] = BigInt::one();
        }
        s
    }

    /// 1 − q^exponent.
    pub fn one_minus_power(exponent: u64, degree: usize) -> Self {
        let mut s = Self::one(degree);
        if exponent <= degree as u64 {
            s.coefficients[exponent as usize] -= 1;
        }
        s
    }

    /// Pads or truncates `coefficients` to length `degree + 1`.
    pub fn from_coefficients<I>(coefficients: I, degree: usize) -> Self
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        let mut coefficients: Vec<BigInt> = coefficients
            .into_iter()
            .take(degree + 1)
            .map(Into::into)
            .collect();
        coefficients.resize(degree + 1, BigInt::zero());
        TruncatedSeries { coefficients }
    }

    /// The truncation degree N.
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn coefficient(&self, exponent: usize) -> Result<&BigInt> {
        self.coefficients.get(exponent).ok_or(Error::OutOfRange {
            exponent,
            degree: self.degree(),
        })
    }

    /// Drops every term above q^degree. Never raises the degree.
    pub fn truncate(&self, degree: usize) -> Self {
        let degree = degree.min(self.degree());
        TruncatedSeries {
            coefficients: self.coefficients[..=degree].to_vec(),
        }
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }

    /// Cauchy product modulo q^(N+1).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let degree = self.degree();
        let mut out = Self::zero(degree);
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients[..=degree - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coefficients[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse; needs c_0 = ±1 so the result stays integral.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coefficients[0];
        if !(c0.is_one() || (-c0).is_one()) {
            return Err(Error::NotInvertible(c0.to_string()));
        }
        // c0 is its own inverse
        let degree = self.degree();
        let mut out = Self::zero(degree);
        out.coefficients[0] = c0.clone();
        for e in 1..=degree {
            let mut acc = BigInt::zero();
            for i in 1..=e {
                let c = &self.coefficients[i];
                if !c.is_zero() {
                    acc += c * &out.coefficients[e - i];
                }
            }
            out.coefficients[e] = -(c0 * acc);
        }
        Ok(out)
    }

    /// Index of the first coefficient where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Result<Option<usize>> {
        self.check_degree(other)?;
        Ok(self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .position(|(a, b)| a != b))
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} + O(q^{})", self.degree() + 1)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (e, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if wrote {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let abs = c.abs();
            match (e, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{abs}q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{abs}q^{e}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    truncation_degree: usize,
    coefficients: Vec<String>,
}

/// `{"truncation_degree": N, "coefficients": ["c_0", …, "c_N"]}` with
/// decimal-string coefficients.
impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SeriesJson {
            truncation_degree: self.degree(),
            coefficients: self.coefficients.iter().map(ToString::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = SeriesJson::deserialize(deserializer)?;
        if raw.coefficients.len() != raw.truncation_degree.saturating_add(1) {
            return Err(de::Error::custom(format!(
                "expected {} coefficients for truncation degree {}, found {}",
                raw.truncation_degree.saturating_add(1),
                raw.truncation_degree,
                raw.coefficients.len()
            )));
        }
        let coefficients = raw
            .coefficients
            .iter()
            .map(|s| parse_decimal(s).ok_or_else(|| de::Error::custom(format!("bad coefficient {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries { coefficients })
    }
}

/// Strict decimal integer: optional '-', no leading zeros, no "-0".
fn parse_decimal(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    let canonical = !digits.is_empty()
        && digits.bytes().all(|b| b.is_ascii_digit())
        && (digits == "0" || !digits.starts_with('0'))
        && !(s.starts_with('-') && digits == "0");
    if !canonical {
        return None;
    }
    s.parse().ok()
}

/// Number of factors in a q-Pochhammer symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Length {
    Finite(u64),
    Infinite,
}

/// (q^offset; q^step)_length = Π_{0 ≤ j < length} (1 − q^(offset + j·step)).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PochhammerSpec {
    pub offset: u64,
    pub step: u64,
    pub length: Length,
}

impl PochhammerSpec {
    pub fn finite(offset: u64, step: u64, length: u64) -> Self {
        PochhammerSpec {
            offset,
            step,
            length: Length::Finite(length),
        }
    }

    pub fn infinite(offset: u64, step: u64) -> Self {
        PochhammerSpec {
            offset,
            step,
            length: Length::Infinite,
        }
    }

    /// Exponents of the factors that are visible at truncation degree N.
    fn exponents(&self, degree: usize) -> impl Iterator<Item = u64> {
        let count = match self.length {
            Length::Finite(len) => len,
            Length::Infinite => u64::MAX,
        };
        let (offset, step, limit) = (self.offset, self.step, degree as u64);
        (0..count)
            .map(move |j| j.checked_mul(step).and_then(|js| js.checked_add(offset)))
            .take_while(move |e| e.is_some_and(|e| e <= limit))
            .flatten()
    }
}

/// The product, truncated at degree N. An empty product is 1.
pub fn pochhammer(spec: PochhammerSpec, degree: usize) -> Result<TruncatedSeries> {
    if spec.offset == 0 || spec.step == 0 {
        return Err(Error::Domain(format!(
            "Pochhammer offset and step must be positive, got {spec:?}"
        )));
    }
    let mut out = TruncatedSeries::one(degree);
    for e in spec.exponents(degree) {
        out = out.mul(&TruncatedSeries::one_minus_power(e, degree))?;
    }
    Ok(out)
}

/// `s / (q^offset; q^step)_length`, inverting one factor at a time.
fn divide_by_pochhammer(s: &TruncatedSeries, spec: PochhammerSpec) -> TruncatedSeries {
    let degree = s.degree();
    let mut out = s.clone();
    for e in spec.exponents(degree) {
        let inverse = TruncatedSeries::one_minus_power(e, degree)
            .inverse()
            .expect("constant term is 1");
        out = out.mul(&inverse).expect("equal degrees");
    }
    out
}

fn times_pochhammer(s: &TruncatedSeries, spec: PochhammerSpec) -> TruncatedSeries {
    let factor = pochhammer(spec, s.degree()).expect("positive offset and step");
    s.mul(&factor).expect("equal degrees")
}

/// q^(dk) / (q^d;q^d)_k · (q^d;q^d)_m / (q;q)_(dm): the coefficient of q^n
/// counts A(n,k,d,m).
pub fn lhs_series(k: u64, d: u64, m: u64, degree: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::monomial(d.saturating_mul(k), degree);
    s = divide_by_pochhammer(&s, PochhammerSpec::finite(d, d, k));
    s = times_pochhammer(&s, PochhammerSpec::finite(d, d, m));
    divide_by_pochhammer(&s, PochhammerSpec::finite(1, 1, d.saturating_mul(m)))
}

/// The product form that enumerates B(n,k,d,m), one branch per case:
///
/// - m < k: q^(kd) / (q^(d(m+1)); q^d)_(k−m) · 1 / (q;q)_(md)
/// - m ≥ k: q^(kd) / (q;q)_k · (q^(d(k+1)); q^d)_(m−k) / (q^(k+1); q)_(m−k)
///   · 1 / (q^(m+1); q)_(md−m)
pub fn rhs_series(k: u64, d: u64, m: u64, degree: usize) -> TruncatedSeries {
    let md = d.saturating_mul(m);
    let s = TruncatedSeries::monomial(d.saturating_mul(k), degree);
    if m < k {
        let s = divide_by_pochhammer(&s, PochhammerSpec::finite(d.saturating_mul(m + 1), d, k - m));
        divide_by_pochhammer(&s, PochhammerSpec::finite(1, 1, md))
    } else {
        let s = divide_by_pochhammer(&s, PochhammerSpec::finite(1, 1, k));
        let s = times_pochhammer(&s, PochhammerSpec::finite(d.saturating_mul(k + 1), d, m - k));
        let s = divide_by_pochhammer(&s, PochhammerSpec::finite(k + 1, 1, m - k));
        divide_by_pochhammer(&s, PochhammerSpec::finite(m + 1, 1, md - m))
    }
}

/// Left side of the unbounded (d = 2) identity:
/// q^(2k) / (q²;q²)_k · (q²;q²)_∞ / (q;q)_∞.
pub fn solution_i_lhs(k: u64, degree: usize) -> TruncatedSeries {
    let s = TruncatedSeries::monomial(k.saturating_mul(2), degree);
    let s = divide_by_pochhammer(&s, PochhammerSpec::finite(2, 2, k));
    let s = times_pochhammer(&s, PochhammerSpec::infinite(2, 2));
    divide_by_pochhammer(&s, PochhammerSpec::infinite(1, 1))
}

/// Right side: q^(2k) / (q;q)_k · (q^(2(k+1)); q²)_∞ / (q^(k+1); q)_∞.
pub fn solution_i_rhs(k: u64, degree: usize) -> TruncatedSeries {
    let s = TruncatedSeries::monomial(k.saturating_mul(2), degree);
    let s = divide_by_pochhammer(&s, PochhammerSpec::finite(1, 1, k));
    let s = times_pochhammer(&s, PochhammerSpec::infinite(k.saturating_add(1).saturating_mul(2), 2));
    divide_by_pochhammer(&s, PochhammerSpec::infinite(k.saturating_add(1), 1))
}

/// Outcome of comparing two series term by term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub degree: usize,
    /// First exponent where the sides differ, with both coefficients.
    pub mismatch: Option<(usize, BigInt, BigInt)>,
}

impl Comparison {
    pub fn of(lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> Result<Self> {
        let mismatch = lhs.first_difference(rhs)?.map(|e| {
            (e, lhs.coefficients[e].clone(), rhs.coefficients[e].clone())
        });
        Ok(Comparison {
            degree: lhs.degree(),
            mismatch,
        })
    }

    pub fn agrees(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares both sides of the bounded identity up to q^degree.
pub fn compare_bounded(k: u64, d: u64, m: u64, degree: usize) -> Comparison {
    Comparison::of(&lhs_series(k, d, m, degree), &rhs_series(k, d, m, degree))
        .expect("equal degrees")
}

/// Compares both sides of the unbounded d = 2 identity up to q^degree.
pub fn compare_solution_i(k: u64, degree: usize) -> Comparison {
    Comparison::of(&solution_i_lhs(k, degree), &solution_i_rhs(k, degree))
        .expect("equal degrees")
}

pub fn solution_i_check(k: u64, degree: usize) -> bool {
    compare_solution_i(k, degree).agrees()
}
