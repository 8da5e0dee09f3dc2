//! Seeded property suites over the ideal engine, and the FId construction.

mod fid;
mod laws;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::content::Polynomial;
use crate::error::{Error, Result};
use crate::ideal::{FgIdeal, VerificationLevel};
use crate::semiring::{Carrier, Element, SemiringRef};

pub use fid::{build_fid, fid_idempotency, fid_suite, weak_gaussian_check, FidSemiring};
pub use laws::{
    cancellation_laws, cancellation_suite, gilmer_tsang_suite, locally_valuation_suite, prufer_laws, prufer_suite,
    valuation_check, valuation_laws, LawCheck,
};

/// Suite names accepted by [`run_suite`].
pub const SUITES: &[&str] =
    &["prufer", "cancellation", "valuation", "locally-valuation", "gilmer-tsang", "fid", "fid-idempotency"];

pub fn run_suite(name: &str, s: &SemiringRef, sampler: &Sampler) -> Result<SuiteReport> {
    match name {
        "prufer" => prufer_suite(s, sampler),
        "cancellation" => cancellation_suite(s, sampler),
        "valuation" => valuation_check(s, sampler),
        "locally-valuation" => locally_valuation_suite(s, None, sampler),
        "gilmer-tsang" => gilmer_tsang_suite(s, sampler),
        "fid" => fid_suite(s, sampler),
        "fid-idempotency" => fid_idempotency(s, sampler),
        _ => Err(Error::Precondition(format!("unknown suite `{name}`; known suites: {}", SUITES.join(", ")))),
    }
}

/// Deterministic source of sample inputs. Sample `i` draws from its own
/// stream seeded by `(seed, i)`, so serial and parallel runs agree.
#[derive(Debug, Clone)]
pub struct Sampler {
    pub seed: u64,
    pub samples: usize,
    pub min_gens: usize,
    pub max_gens: usize,
    /// Overrides the per-carrier magnitude bound.
    pub bound: Option<u64>,
    pub max_deg: usize,
}

/// Magnitude bounds: small for the naturals, where ideal arithmetic scales
/// with the generators, larger for gcd-naturals.
pub const NATURALS_BOUND: u64 = 20;
pub const GCD_BOUND: u64 = 1000;
pub const MIN_PLUS_BOUND: u64 = 20;

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

impl Sampler {
    pub fn new(seed: u64, samples: usize) -> Self {
        Sampler { seed, samples, min_gens: 1, max_gens: 4, bound: None, max_deg: 2 }
    }

    pub fn with_bound(mut self, bound: u64) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn rng(&self, index: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(splitmix(self.seed ^ splitmix(index)))
    }

    fn bound_for(&self, s: &SemiringRef) -> u64 {
        self.bound.unwrap_or(match s.carrier() {
            Carrier::Naturals => NATURALS_BOUND,
            Carrier::MinPlus(_) => MIN_PLUS_BOUND,
            _ => GCD_BOUND,
        })
    }

    pub fn element(&self, s: &SemiringRef, rng: &mut ChaCha8Rng) -> Result<Element> {
        let bound = self.bound_for(s);
        Ok(match s.carrier() {
            Carrier::Naturals | Carrier::GcdNaturals => Element::nat(rng.gen_range(0..=bound)),
            Carrier::MinPlus(k) => {
                if rng.gen_ratio(1, 16) {
                    Element::bottom()
                } else {
                    Element::tuple(&(0..*k).map(|_| rng.gen_range(0..=bound)).collect::<Vec<_>>())
                }
            }
            Carrier::Fid(base) => Element::ideal(self.ideal_with(base, rng, 1, 2)?),
            _ => {
                let els = s.elements().expect("finite carrier");
                els[rng.gen_range(0..els.len())].clone()
            }
        })
    }

    pub fn nonzero_element(&self, s: &SemiringRef, rng: &mut ChaCha8Rng) -> Result<Element> {
        for _ in 0..1000 {
            let x = self.element(s, rng)?;
            if !s.is_zero(&x) {
                return Ok(x);
            }
        }
        Err(Error::Precondition(format!("could not sample a nonzero element of {}", s.id())))
    }

    fn ideal_with(&self, s: &SemiringRef, rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> Result<FgIdeal> {
        let n = rng.gen_range(lo..=hi.max(lo));
        let gens = (0..n).map(|_| self.element(s, rng)).collect::<Result<Vec<_>>>()?;
        FgIdeal::new(s, gens)
    }

    pub fn ideal(&self, s: &SemiringRef, rng: &mut ChaCha8Rng) -> Result<FgIdeal> {
        self.ideal_with(s, rng, self.min_gens, self.max_gens)
    }

    pub fn nonzero_ideal(&self, s: &SemiringRef, rng: &mut ChaCha8Rng) -> Result<FgIdeal> {
        let n = rng.gen_range(self.min_gens..=self.max_gens.max(self.min_gens));
        let gens = (0..n).map(|_| self.nonzero_element(s, rng)).collect::<Result<Vec<_>>>()?;
        FgIdeal::new(s, gens)
    }

    /// Nonzero polynomial of degree at most `max_deg`.
    pub fn polynomial(&self, s: &SemiringRef, rng: &mut ChaCha8Rng) -> Result<Polynomial> {
        let d = rng.gen_range(0..=self.max_deg);
        let mut coeffs = (0..d).map(|_| self.element(s, rng)).collect::<Result<Vec<_>>>()?;
        coeffs.push(self.nonzero_element(s, rng)?);
        Polynomial::new(s, coeffs)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawResult {
    pub id: String,
    pub pass: u64,
    pub fail: u64,
    pub skipped: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    pub verification: VerificationLevel,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub semiring: String,
    pub seed: u64,
    pub samples: usize,
    pub laws: Vec<LawResult>,
    /// Wall time; left out unless requested so that reports stay
    /// byte-identical across runs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ms: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.laws.iter().all(|l| l.fail == 0)
    }

    pub fn law(&self, id: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.id == id)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.laws.iter().filter(|l| l.fail > 0).map(|l| l.id.as_str()).collect()
    }

    pub fn with_timing(mut self, ms: u64) -> Self {
        self.ms = Some(ms);
        self
    }
}

#[derive(Debug, Clone)]
enum Outcome {
    Pass(VerificationLevel),
    Fail(Value, VerificationLevel),
    Skip,
}

/// Per-sample recorder of law outcomes.
pub(crate) struct Rec<'a> {
    ids: &'a [String],
    out: Vec<(usize, Outcome)>,
}

impl Rec<'_> {
    fn index(&self, id: &str) -> usize {
        self.ids.iter().position(|x| x == id).unwrap_or_else(|| panic!("undeclared law {id}"))
    }

    pub(crate) fn check(&mut self, id: &str, ok: bool, level: VerificationLevel, cex: impl FnOnce() -> Value) {
        let i = self.index(id);
        self.out.push((i, if ok { Outcome::Pass(level) } else { Outcome::Fail(cex(), level) }));
    }

    pub(crate) fn skip(&mut self, id: &str) {
        let i = self.index(id);
        self.out.push((i, Outcome::Skip));
    }

    pub(crate) fn record(&mut self, c: &LawCheck, ctx: impl FnOnce() -> Value) {
        match c.holds {
            None => self.skip(c.id),
            Some(ok) => self.check(c.id, ok, c.level, || {
                let mut v = ctx();
                if let (Value::Object(m), Some(w)) = (&mut v, &c.witness) {
                    m.insert("witness".into(), Value::String(w.clone()));
                }
                v
            }),
        }
    }
}

/// Runs `f` once per sample in parallel and merges outcomes in sample order.
pub(crate) fn run_samples<F>(
    suite: &str,
    s: &SemiringRef,
    sampler: &Sampler,
    ids: Vec<String>,
    f: F,
) -> Result<SuiteReport>
where
    F: Fn(u64, &mut ChaCha8Rng, &mut Rec) -> Result<()> + Sync,
{
    let per: Vec<Result<Vec<(usize, Outcome)>>> = (0..sampler.samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sampler.rng(i);
            let mut rec = Rec { ids: &ids, out: Vec::new() };
            f(i, &mut rng, &mut rec)?;
            Ok(rec.out)
        })
        .collect();
    let mut laws: Vec<LawResult> = ids
        .iter()
        .map(|id| LawResult {
            id: id.clone(),
            pass: 0,
            fail: 0,
            skipped: 0,
            counterexample: None,
            verification: VerificationLevel::Exact,
        })
        .collect();
    for sample in per {
        for (i, o) in sample? {
            let law = &mut laws[i];
            match o {
                Outcome::Pass(level) => {
                    law.pass += 1;
                    law.verification = law.verification.combine(level);
                }
                Outcome::Fail(cex, level) => {
                    law.fail += 1;
                    law.verification = law.verification.combine(level);
                    law.counterexample.get_or_insert(cex);
                }
                Outcome::Skip => law.skipped += 1,
            }
        }
    }
    Ok(SuiteReport {
        suite: suite.to_string(),
        semiring: s.id().to_string(),
        seed: sampler.seed,
        samples: sampler.samples,
        laws,
        ms: None,
        notes: Vec::new(),
    })
}

pub(crate) fn ids(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests;
