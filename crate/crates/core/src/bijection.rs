//! The weight-preserving bijection A(n,k,d,m) → B(n,k,d,m) and its inverse.
//!
//! A partition λ ∈ A splits as λ = μ + o, where μ holds the k parts
//! divisible by d. The conjugate μ* has every multiplicity divisible by d
//! and largest part k. Parts of μ* up to min(m,k) stay as they are (μ*₀);
//! a part i with m < i ≤ k occurring d·q times becomes the part d·i
//! occurring q times (ε). The remainder o goes through the finite-bound
//! Glaisher map to give δ, and the image is κ = μ*₀ + ε + δ.
//!
//! The finite-bound Glaisher map writes each multiplicity N_j of a part j
//! in base d, but only up to the exponent L_j with m < j·d^L_j ≤ m·d; all
//! higher digits are lumped into an overflow count M_j on the part j·d^L_j.

use serde::{Deserialize, Serialize};

use std::collections::HashSet;

use crate::classes::{enumerate_a, enumerate_b, is_in_a, is_in_b, Budget, ClassParams};
use crate::error::{Error, Result};
use crate::partition::{self, Partition};

fn require_modulus(d: u64) -> Result<()> {
    if d < 2 {
        return Err(Error::Domain(format!("Glaisher maps need d >= 2, got {d}")));
    }
    Ok(())
}

/// Splits `value` as `core * d^exponent` with `d ∤ core`.
fn strip_powers(mut value: u64, d: u64) -> (u64, u32) {
    let mut exponent = 0;
    while value.is_multiple_of(d) {
        value /= d;
        exponent += 1;
    }
    (value, exponent)
}

/// Classical Glaisher map: no part divisible by `d` → every multiplicity
/// below `d`. Each multiplicity is expanded in base `d`; digit `a_l` of the
/// multiplicity of `j` becomes `a_l` copies of `j·d^l`.
pub fn glaisher_forward(o: &Partition, d: u64) -> Result<Partition> {
    require_modulus(d)?;
    let mut pairs = Vec::new();
    for (&j, &count) in o.iter() {
        if j % d == 0 {
            return Err(Error::Domain(format!("part {j} is divisible by d = {d}")));
        }
        let mut rest = count;
        let mut part = j;
        while rest > 0 {
            pairs.push((part, rest % d));
            rest /= d;
            if rest > 0 {
                part = part
                    .checked_mul(d)
                    .ok_or(Error::Overflow("Glaisher part exceeds u64"))?;
            }
        }
    }
    Partition::from_multiplicities(pairs)
}

/// Inverse of [`glaisher_forward`].
pub fn glaisher_inverse(delta: &Partition, d: u64) -> Result<Partition> {
    require_modulus(d)?;
    let mut pairs = Vec::new();
    for (&part, &count) in delta.iter() {
        if count >= d {
            return Err(Error::Domain(format!(
                "part {part} occurs {count} times, needs fewer than d = {d}"
            )));
        }
        let (j, l) = strip_powers(part, d);
        // count * d^l <= count * part, which is bounded by the weight
        pairs.push((j, count * d.pow(l)));
    }
    Partition::from_multiplicities(pairs)
}

/// Base-d record for one part `j` (d ∤ j, j < m·d) of the input to the
/// finite-bound Glaisher map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseDDecomposition {
    pub j: u64,
    /// The unique L ≥ 0 with m < j·d^L ≤ m·d.
    pub levels: u32,
    /// a_{j,0} … a_{j,L-1}, each below d.
    pub digits: Vec<u64>,
    /// M_j, the multiplicity left for the part j·d^L.
    pub overflow: u64,
}

impl BaseDDecomposition {
    /// Decomposes the multiplicity `count` of part `j`.
    pub fn new(j: u64, count: u64, d: u64, m: u64) -> Result<Self> {
        let levels = Self::levels_for(j, d, m)?;
        let mut digits = Vec::with_capacity(levels as usize);
        let mut rest = count;
        for _ in 0..levels {
            digits.push(rest % d);
            rest /= d;
        }
        Ok(BaseDDecomposition {
            j,
            levels,
            digits,
            overflow: rest,
        })
    }

    /// L_j for a part `j` with d ∤ j and 1 ≤ j < m·d.
    pub fn levels_for(j: u64, d: u64, m: u64) -> Result<u32> {
        require_modulus(d)?;
        let md = m.checked_mul(d).ok_or(Error::Overflow("m*d exceeds u64"))?;
        if j == 0 || j.is_multiple_of(d) || j >= md {
            return Err(Error::Domain(format!(
                "part {j} must be positive, not divisible by {d}, and below {md}"
            )));
        }
        let mut levels = 0;
        let mut scaled = j;
        while scaled <= m {
            // scaled <= m keeps scaled * d <= m * d
            scaled *= d;
            levels += 1;
        }
        Ok(levels)
    }

    /// j·d^L, the part carrying the overflow.
    pub fn top_part(&self, d: u64) -> u64 {
        self.j * d.pow(self.levels)
    }

    /// Σ a_l·d^l + M·d^L, which equals the original multiplicity.
    pub fn reconstruct(&self, d: u64) -> u64 {
        let low: u64 = self
            .digits
            .iter()
            .enumerate()
            .map(|(l, &a)| a * d.pow(l as u32))
            .sum();
        low + self.overflow * d.pow(self.levels)
    }

    /// `(part, multiplicity)` pairs contributed to δ.
    pub fn emitted(&self, d: u64) -> impl Iterator<Item = (u64, u64)> + '_ {
        let low = self
            .digits
            .iter()
            .enumerate()
            .map(move |(l, &a)| (self.j * d.pow(l as u32), a));
        low.chain(std::iter::once((self.top_part(d), self.overflow)))
    }
}

/// Base-d decompositions of every part of `o`, ascending by part.
pub fn decompose(o: &Partition, d: u64, m: u64) -> Result<Vec<BaseDDecomposition>> {
    o.iter()
        .map(|(&j, &count)| BaseDDecomposition::new(j, count, d, m))
        .collect()
}

/// Finite-bound Glaisher map. Input: no part divisible by `d`, every part
/// below `m·d`. Output: every part at most `m·d`, parts up to `m` occur
/// fewer than `d` times.
pub fn finite_glaisher_forward(o: &Partition, d: u64, m: u64) -> Result<Partition> {
    let mut pairs = Vec::new();
    for record in decompose(o, d, m)? {
        pairs.extend(record.emitted(d));
    }
    Partition::from_multiplicities(pairs)
}

/// Inverse of [`finite_glaisher_forward`].
pub fn finite_glaisher_inverse(delta: &Partition, d: u64, m: u64) -> Result<Partition> {
    require_modulus(d)?;
    let md = m.checked_mul(d).ok_or(Error::Overflow("m*d exceeds u64"))?;
    let mut pairs = Vec::new();
    for (&part, &count) in delta.iter() {
        if part > md {
            return Err(Error::Domain(format!("part {part} exceeds m*d = {md}")));
        }
        if part <= m && count >= d {
            return Err(Error::Domain(format!(
                "part {part} <= m occurs {count} times, needs fewer than d = {d}"
            )));
        }
        let (j, l) = strip_powers(part, d);
        let levels = BaseDDecomposition::levels_for(j, d, m)?;
        let consistent = if part > m { l == levels } else { l < levels };
        if !consistent {
            return Err(Error::Domain(format!(
                "part {part} = {j}*{d}^{l} does not sit at a valid level (L = {levels})"
            )));
        }
        let scale = d.pow(l);
        let contribution = count
            .checked_mul(scale)
            .ok_or(Error::Overflow("multiplicity exceeds u64"))?;
        pairs.push((j, contribution));
    }
    Partition::from_multiplicities(pairs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Inverse,
}

/// Every intermediate subpartition of one application of [`phi`] or
/// [`phi_inverse`]. `epsilon` is stored with its rescaled parts d·i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionTrace {
    pub params: ClassParams,
    pub direction: Direction,
    #[serde(with = "partition::text")]
    pub lambda: Partition,
    #[serde(with = "partition::text")]
    pub mu: Partition,
    #[serde(with = "partition::text")]
    pub o: Partition,
    #[serde(with = "partition::text")]
    pub mu_star: Partition,
    #[serde(with = "partition::text")]
    pub mu_star_0: Partition,
    #[serde(with = "partition::text")]
    pub epsilon: Partition,
    #[serde(with = "partition::text")]
    pub delta: Partition,
    #[serde(with = "partition::text")]
    pub kappa: Partition,
}

/// Parts d·i with multiplicity q back to parts i with multiplicity d·q.
fn unscale_epsilon(epsilon: &Partition, d: u64) -> Result<Partition> {
    let mut pairs = Vec::with_capacity(epsilon.num_distinct_parts());
    for (&part, &q) in epsilon.iter() {
        if part % d != 0 {
            return Err(Error::Internal(format!("epsilon part {part} not divisible by {d}")));
        }
        let mult = q
            .checked_mul(d)
            .ok_or(Error::Overflow("multiplicity exceeds u64"))?;
        pairs.push((part / d, mult));
    }
    Partition::from_multiplicities(pairs)
}

impl BijectionTrace {
    /// Checks the structural relations between the recorded pieces.
    pub fn validate(&self) -> Result<()> {
        let ClassParams { n, k, d, m } = self.params;
        if d < 2 {
            return Err(Error::UnsupportedModulus(d));
        }
        let md = self.params.md();
        let fail = |what: &str| Err(Error::Internal(format!("trace check failed: {what}")));

        if self.mu.add(&self.o)? != self.lambda {
            return fail("lambda != mu + o");
        }
        if self.mu.conjugate() != self.mu_star {
            return fail("mu_star != conjugate(mu)");
        }
        if self.mu_star_0.add(&unscale_epsilon(&self.epsilon, d)?)? != self.mu_star {
            return fail("mu_star != mu_star_0 + unscaled epsilon");
        }
        if self.mu_star_0.add(&self.epsilon)?.add(&self.delta)? != self.kappa {
            return fail("kappa != mu_star_0 + epsilon + delta");
        }
        if self.lambda.weight() != n || self.kappa.weight() != n {
            return fail("weights differ from n");
        }
        if self.mu.iter().any(|(&p, _)| p % d != 0) {
            return fail("mu has a part not divisible by d");
        }
        if self.o.iter().any(|(&p, _)| p % d == 0 || p >= md) {
            return fail("o has a part divisible by d or at least m*d");
        }
        if self.epsilon.is_empty() != (m >= k) {
            return fail("epsilon must be empty exactly when m >= k");
        }
        if finite_glaisher_forward(&self.o, d, m)? != self.delta {
            return fail("delta is not the finite Glaisher image of o");
        }
        Ok(())
    }
}

/// The bijection A(params) → B(params).
pub fn phi(lambda: &Partition, params: &ClassParams) -> Result<(Partition, BijectionTrace)> {
    let ClassParams { k, d, m, .. } = *params;
    if d < 2 {
        return Err(Error::UnsupportedModulus(d));
    }
    if !is_in_a(lambda, params) {
        return Err(Error::NotInClassA(format!("({params}): {lambda}")));
    }
    let cutoff = m.min(k);

    let (mu, o) = lambda.split_by(|part| part % d == 0);
    let mu_star = mu.conjugate();

    let mut kept = Vec::new();
    let mut rescaled = Vec::new();
    for (&i, &count) in mu_star.iter() {
        if count % d != 0 {
            return Err(Error::Internal(format!(
                "conjugate part {i} occurs {count} times, not a multiple of {d}"
            )));
        }
        if i <= cutoff {
            kept.push((i, count));
        } else {
            rescaled.push((d * i, count / d));
        }
    }
    let mu_star_0 = Partition::from_multiplicities(kept)?;
    let epsilon = Partition::from_multiplicities(rescaled)?;
    let delta = finite_glaisher_forward(&o, d, m)?;
    let kappa = mu_star_0.add(&epsilon)?.add(&delta)?;

    if !is_in_b(&kappa, params) {
        return Err(Error::Internal(format!(
            "image {kappa} of {lambda} is not in B({params})"
        )));
    }
    let trace = BijectionTrace {
        params: *params,
        direction: Direction::Forward,
        lambda: lambda.clone(),
        mu,
        o,
        mu_star,
        mu_star_0,
        epsilon,
        delta,
        kappa: kappa.clone(),
    };
    Ok((kappa, trace))
}

/// The inverse bijection B(params) → A(params).
pub fn phi_inverse(kappa: &Partition, params: &ClassParams) -> Result<(Partition, BijectionTrace)> {
    let ClassParams { k, d, m, .. } = *params;
    if d < 2 {
        return Err(Error::UnsupportedModulus(d));
    }
    if !is_in_b(kappa, params) {
        return Err(Error::NotInClassB(format!("({params}): {kappa}")));
    }
    let cutoff = m.min(k);
    let md = params.md();

    let mut kept = Vec::new();
    let mut rest = Vec::new();
    let mut scaled = Vec::new();
    for (&i, &count) in kappa.iter() {
        if i <= cutoff {
            let r = count % d;
            kept.push((i, count - r));
            rest.push((i, r));
        } else if i <= md {
            rest.push((i, count));
        } else {
            // only reachable when m < k; membership makes d | i
            scaled.push((i, count));
        }
    }
    // q_k > 0: part k keeps at least one d-fold block in μ*₀
    if m >= k && kappa.multiplicity(k) / d == 0 {
        return Err(Error::Internal(format!("part {k} has no d-fold block")));
    }
    let mu_star_0 = Partition::from_multiplicities(kept)?;
    let delta = Partition::from_multiplicities(rest)?;
    let epsilon = Partition::from_multiplicities(scaled)?;
    let mu_star = mu_star_0.add(&unscale_epsilon(&epsilon, d)?)?;
    let mu = mu_star.conjugate();
    let o = finite_glaisher_inverse(&delta, d, m)?;
    let lambda = mu.add(&o)?;

    if !is_in_a(&lambda, params) {
        return Err(Error::Internal(format!(
            "preimage {lambda} of {kappa} is not in A({params})"
        )));
    }
    let trace = BijectionTrace {
        params: *params,
        direction: Direction::Inverse,
        lambda: lambda.clone(),
        mu,
        o,
        mu_star,
        mu_star_0,
        epsilon,
        delta,
        kappa: kappa.clone(),
    };
    Ok((lambda, trace))
}

/// Outcome of checking [`phi`] against a whole class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionCheck {
    /// |A(params)|.
    pub size: u64,
    /// First problem found, if any.
    pub failure: Option<String>,
}

impl BijectionCheck {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Maps every member of A(params) through [`phi`] and back, and checks
/// that the images are distinct and are exactly the members of B(params).
///
/// Enumeration and modulus errors are returned as `Err`; anything wrong
/// with the maps themselves is reported in [`BijectionCheck::failure`].
pub fn verify_bijection(params: &ClassParams, budget: Budget) -> Result<BijectionCheck> {
    if params.d < 2 {
        return Err(Error::UnsupportedModulus(params.d));
    }
    let members_b: HashSet<Partition> = enumerate_b(params, budget)?.collect();
    let mut images = HashSet::new();
    let mut size = 0u64;
    let fail = |size, why: String| Ok(BijectionCheck { size, failure: Some(why) });
    for lambda in enumerate_a(params, budget)? {
        size += 1;
        let kappa = match phi(&lambda, params) {
            Ok((kappa, _)) => kappa,
            Err(e) => return fail(size, format!("phi({lambda}): {e}")),
        };
        match phi_inverse(&kappa, params) {
            Ok((back, _)) if back == lambda => {}
            Ok((back, _)) => return fail(size, format!("{lambda} -> {kappa} -> {back}")),
            Err(e) => return fail(size, format!("phi_inverse({kappa}): {e}")),
        }
        if !images.insert(kappa.clone()) {
            return fail(size, format!("{kappa} is the image of two partitions"));
        }
    }
    if images != members_b {
        let missing = members_b.difference(&images).next().map(Partition::render);
        let missing = missing.unwrap_or_default();
        return fail(size, format!("image misses members of B, e.g. {missing:?}"));
    }
    Ok(BijectionCheck { size, failure: None })
}
