//! Parameter grids for `parteq verify` and the per-point report.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use parteq::qseries::{lhs_series, rhs_series};
use parteq::{count_a, count_b, verify_bijection, Budget, ClassParams, Error, TruncatedSeries};
use rayon::prelude::*;
use serde::Serialize;

/// Inclusive integer interval written `a` or `a..b` (also `a..=b`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: u64,
    pub hi: u64,
}

impl Interval {
    pub fn iter(&self) -> RangeInclusive<u64> {
        self.lo..=self.hi
    }
}

impl FromStr for Interval {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let number = |t: &str| {
            t.parse::<u64>()
                .map_err(|_| format!("{t:?} is not a nonnegative integer"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (number(lo)?, number(hi.strip_prefix('=').unwrap_or(hi))?),
            None => {
                let v = number(s)?;
                (v, v)
            }
        };
        if hi < lo {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Interval { lo, hi })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Clone, Debug)]
pub struct GridSpec {
    pub n: Interval,
    pub k: Interval,
    pub d: Interval,
    pub m: Interval,
    pub degree: usize,
    pub budget: Budget,
}

impl GridSpec {
    pub fn new(
        n: Interval,
        k: Interval,
        d: Interval,
        m: Interval,
        degree: usize,
        budget: Budget,
    ) -> Result<Self, String> {
        for (name, range) in [("k", k), ("d", d), ("m", m)] {
            if range.lo == 0 {
                return Err(format!("{name} must be at least 1, got range {range}"));
            }
        }
        Ok(GridSpec {
            n,
            k,
            d,
            m,
            degree,
            budget,
        })
    }

    /// Grid points ordered by (n, k, d, m).
    pub fn points(&self) -> Result<Vec<ClassParams>, Error> {
        let mut out = Vec::new();
        for n in self.n.iter() {
            for k in self.k.iter() {
                for d in self.d.iter() {
                    for m in self.m.iter() {
                        out.push(ClassParams::new(n, k, d, m)?);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// One line of `verify` output.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyRecord {
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub m: u64,
    pub count_a: Option<u64>,
    pub count_b: Option<u64>,
    /// Coefficient of q^n on the A side of the product identity.
    pub series_a: Option<String>,
    /// Coefficient of q^n on the B side.
    pub series_b: Option<String>,
    /// `None` when the bijection does not apply (d = 1).
    pub round_trip: Option<bool>,
    pub pass: bool,
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
    #[serde(skip)]
    pub budget_exceeded: bool,
}

type SeriesPair = (TruncatedSeries, TruncatedSeries);

fn evaluate(
    ps: &ClassParams,
    spec: &GridSpec,
    series: &BTreeMap<(u64, u64, u64), SeriesPair>,
    timing: bool,
) -> VerifyRecord {
    let start = Instant::now();
    let mut record = VerifyRecord {
        n: ps.n,
        k: ps.k,
        d: ps.d,
        m: ps.m,
        count_a: None,
        count_b: None,
        series_a: None,
        series_b: None,
        round_trip: None,
        pass: false,
        error: None,
        elapsed_ms: None,
        budget_exceeded: false,
    };
    let outcome = (|| -> Result<(), Error> {
        let (lhs, rhs) = &series[&(ps.k, ps.d, ps.m)];
        record.series_a = Some(lhs.coefficient(ps.n as usize)?.to_string());
        record.series_b = Some(rhs.coefficient(ps.n as usize)?.to_string());
        record.count_a = Some(count_a(ps, spec.budget)?);
        record.count_b = Some(count_b(ps, spec.budget)?);
        if ps.d >= 2 {
            let check = verify_bijection(ps, spec.budget)?;
            record.round_trip = Some(check.passed());
            if let Some(why) = check.failure {
                record.error = Some(why);
            }
        }
        Ok(())
    })();
    if let Err(e) = outcome {
        record.budget_exceeded = matches!(e, Error::BudgetExceeded { .. });
        record.error = Some(format!("{}: {e}", e.kind()));
    }
    let counts_agree = match (record.count_a, record.count_b, &record.series_a, &record.series_b) {
        (Some(a), Some(b), Some(sa), Some(sb)) => {
            let a = a.to_string();
            a == b.to_string() && &a == sa && &a == sb
        }
        _ => false,
    };
    if record.error.is_none() && !counts_agree {
        record.error = Some("counts disagree".into());
    }
    record.pass = record.error.is_none() && counts_agree && record.round_trip != Some(false);
    if timing {
        record.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    record
}

/// Evaluates every grid point in parallel; results come back in grid order.
pub fn run(spec: &GridSpec, timing: bool) -> Result<Vec<VerifyRecord>, Error> {
    let points = spec.points()?;
    let mut shapes: Vec<(u64, u64, u64)> = points.iter().map(|p| (p.k, p.d, p.m)).collect();
    shapes.sort_unstable();
    shapes.dedup();
    let series: BTreeMap<_, _> = shapes
        .into_par_iter()
        .map(|(k, d, m)| {
            let pair = (lhs_series(k, d, m, spec.degree), rhs_series(k, d, m, spec.degree));
            ((k, d, m), pair)
        })
        .collect();
    Ok(points
        .par_iter()
        .map(|ps| evaluate(ps, spec, &series, timing))
        .collect())
}
