//! Ideals of the naturals, i.e. additive submonoids of N0, in canonical form.
//!
//! A nonzero ideal is stored as its period `d` (gcd of the generators) and
//! the unique minimal generating set of the reduced monoid `I / d`, together
//! with the Apéry set of that monoid with respect to its smallest generator.
//! Membership is then a single table lookup.

use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Largest smallest-generator (after reduction) for which an Apéry table is built.
pub const APERY_LIMIT: u64 = 4_000_000;
/// Largest threshold a membership scan may walk up to.
pub const SCAN_LIMIT: u64 = 40_000_000;
/// Sporadic sets longer than this are not materialized.
pub const SPORADIC_LIMIT: usize = 4096;

const INF: u64 = u64::MAX;

#[derive(Debug, Clone)]
pub struct NatMonoid {
    period: u64,
    mingens: Vec<u64>,
    apery: Arc<Vec<u64>>,
}

impl PartialEq for NatMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.period == other.period && self.mingens == other.mingens
    }
}

impl Eq for NatMonoid {}

struct AperyBuilder {
    m: u64,
    apery: Vec<u64>,
    gens: Vec<u64>,
}

impl AperyBuilder {
    fn new(m: u64) -> Result<Self> {
        if m > APERY_LIMIT {
            return Err(Error::TooLarge(format!("numerical monoid with smallest generator {m} (limit {APERY_LIMIT})")));
        }
        let mut apery = vec![INF; m as usize];
        apery[0] = 0;
        Ok(AperyBuilder { m, apery, gens: vec![m] })
    }

    fn contains(&self, y: u64) -> bool {
        y >= self.apery[(y % self.m) as usize]
    }

    /// Round-robin relaxation: within each residue cycle of `+g`, start at
    /// the current minimum and go around once.
    fn push(&mut self, g: u64) {
        self.gens.push(g);
        let m = self.m;
        let r = g % m;
        if r == 0 {
            return;
        }
        let cycles = m.gcd(&r);
        let len = m / cycles;
        for start in 0..cycles {
            let mut best = start;
            let mut cur = start;
            for _ in 0..len {
                if self.apery[cur as usize] < self.apery[best as usize] {
                    best = cur;
                }
                cur = (cur + r) % m;
            }
            if self.apery[best as usize] == INF {
                continue;
            }
            cur = best;
            for _ in 1..len {
                let next = (cur + r) % m;
                let cand = self.apery[cur as usize].saturating_add(g);
                if cand < self.apery[next as usize] {
                    self.apery[next as usize] = cand;
                }
                cur = next;
            }
        }
    }

    fn finish(self, period: u64) -> NatMonoid {
        NatMonoid { period, mingens: self.gens, apery: Arc::new(self.apery) }
    }
}

impl NatMonoid {
    /// Monoid generated by `gens`. Zeros are ignored; at least one generator
    /// must be nonzero.
    pub fn generated(gens: &[u64]) -> Result<Self> {
        let nonzero: Vec<u64> = gens.iter().copied().filter(|&g| g != 0).collect();
        let period = nonzero.iter().fold(0u64, |acc, &g| acc.gcd(&g));
        if period == 0 {
            return Err(Error::Precondition("the zero ideal has no periodic form".into()));
        }
        let mut reduced: Vec<u64> = nonzero.iter().map(|g| g / period).collect();
        reduced.sort_unstable();
        reduced.dedup();
        let mut b = AperyBuilder::new(reduced[0])?;
        for &g in &reduced[1..] {
            if !b.contains(g) {
                b.push(g);
            }
        }
        Ok(b.finish(period))
    }

    /// Monoid of period `period` whose reduced members are given by `member`.
    /// Every reduced `y >= threshold` must be a member.
    pub fn from_predicate(period: u64, threshold: u64, member: impl Fn(u64) -> bool) -> Result<Self> {
        if threshold > SCAN_LIMIT {
            return Err(Error::TooLarge(format!("membership scan up to {threshold} (limit {SCAN_LIMIT})")));
        }
        let mut b: Option<AperyBuilder> = None;
        let mut y = 1u64;
        loop {
            if let Some(b) = &b {
                if y >= threshold + b.m {
                    break;
                }
            }
            if member(y) {
                match &mut b {
                    None => b = Some(AperyBuilder::new(y)?),
                    Some(b) => {
                        if !b.contains(y) {
                            b.push(y);
                        }
                    }
                }
            }
            y += 1;
        }
        Ok(b.expect("threshold members exist").finish(period))
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    /// Minimal generators in original units, ascending.
    pub fn minimal_generators(&self) -> Vec<u64> {
        self.mingens.iter().map(|g| g * self.period).collect()
    }

    /// The ideal is `dN0` for its period `d`.
    pub fn is_full_multiples(&self) -> bool {
        self.mingens == [1]
    }

    fn smallest(&self) -> u64 {
        self.mingens[0]
    }

    pub fn contains(&self, x: u64) -> bool {
        if x == 0 {
            return true;
        }
        if !x.is_multiple_of(self.period) {
            return false;
        }
        let y = x / self.period;
        y >= self.apery[(y % self.smallest()) as usize]
    }

    pub fn contains_big(&self, x: &BigUint) -> bool {
        match x.to_u64() {
            Some(x) => self.contains(x),
            // beyond u64 every multiple of the period is past the conductor
            None => (x % self.period).bits() == 0,
        }
    }

    /// Reduced Frobenius number plus one; zero when the reduced monoid is N0.
    fn reduced_conductor(&self) -> u64 {
        let max = *self.apery.iter().max().expect("nonempty apery set");
        (max + 1).saturating_sub(self.smallest())
    }

    /// Least `C` such that every multiple of the period that is `>= C` is a member.
    pub fn conductor(&self) -> u64 {
        self.reduced_conductor() * self.period
    }

    /// Members strictly between 0 and the conductor, or `None` past `limit`.
    pub fn sporadic(&self, limit: usize) -> Option<Vec<u64>> {
        let rc = self.reduced_conductor();
        if rc as usize > limit.saturating_mul(8) {
            return None;
        }
        let out: Vec<u64> =
            (1..rc).filter(|&y| y >= self.apery[(y % self.smallest()) as usize]).map(|y| y * self.period).collect();
        (out.len() <= limit).then_some(out)
    }
}
