use std::collections::HashMap;

use serde_json::json;

use super::{ids, prufer_laws, prufer_suite, run_samples, Sampler, SuiteReport};
use crate::content::gaussian_pair;
use crate::error::{Error, Result};
use crate::ideal::{self, add_ideals, enumerate_ideals, mul_ideals, FgIdeal, VerificationLevel};
use crate::semiring::{Carrier, FiniteSemiringTable, Semiring, SemiringRef};

/// `FId(S)`. For a finite base the ideals are listed and `semiring` is a
/// table whose index `i` stands for `ideals[i]`.
#[derive(Debug, Clone)]
pub struct FidSemiring {
    pub semiring: SemiringRef,
    pub ideals: Option<Vec<FgIdeal>>,
}

/// The semiring of finitely generated ideals of `s` under ideal sum and
/// product.
pub fn build_fid(s: &SemiringRef) -> Result<FidSemiring> {
    if !s.flags().finite {
        if let Carrier::Fid(_) = s.carrier() {
            if !s.is_prufer_known() {
                return Err(Error::unsupported(s.id(), "FId needs decidable ideal equality"));
            }
        }
        return Ok(FidSemiring { semiring: Semiring::fid(s.clone()), ideals: None });
    }
    let ideals = enumerate_ideals(s)?;
    let index: HashMap<String, usize> = ideals.iter().enumerate().map(|(i, x)| (x.canonical().key(), i)).collect();
    let pos = |x: &FgIdeal| index[&x.canonical().key()];
    let n = ideals.len();
    let mut add = vec![vec![0; n]; n];
    let mut mul = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            add[a][b] = pos(&add_ideals(&ideals[a], &ideals[b])?);
            mul[a][b] = pos(&mul_ideals(&ideals[a], &ideals[b])?);
        }
    }
    let zero = pos(&FgIdeal::zero(s));
    let one = pos(&FgIdeal::unit(s));
    let table = FiniteSemiringTable::new(add, mul, zero, one)?;
    let semiring = Semiring::finite_table(format!("fid({})", s.id()), table)?;
    Ok(FidSemiring { semiring, ideals: Some(ideals) })
}

/// Laws on `F = FId(S)` for a Prüfer base: idempotent sum
/// (`F1`), `(I+J)^2 = I^2 + J^2` (`F2`), `IJ in (I^2, J^2)` (`F3`), Gaussian
/// pairs (`F4`), subtractivity of sampled ideals of `F` (`F5`) and the
/// Prüfer laws on `F` (`F6`).
pub fn fid_suite(s: &SemiringRef, sampler: &Sampler) -> Result<SuiteReport> {
    let base = prufer_suite(s, sampler)?;
    if !base.all_pass() {
        return Err(Error::Precondition(format!(
            "the fid suite needs a Prüfer base; on {} the prufer suite fails {}",
            s.id(),
            base.failing().join(", ")
        )));
    }
    let f = build_fid(s)?.semiring;
    let sub_level =
        if f.flags().finite { VerificationLevel::Exact } else { VerificationLevel::Bounded(sampler.bound_for(s)) };
    let law_ids = ids(&["F1", "F2", "F3", "F4", "F5", "F6"]);
    let mut report = run_samples("fid", &f, sampler, law_ids, |_, rng, rec| {
        let (a, b) = (sampler.element(&f, rng)?, sampler.element(&f, rng)?);
        let ctx = || json!({ "I": a.to_string(), "J": b.to_string() });
        rec.check("F1", f.add(&a, &a)? == a, VerificationLevel::Exact, ctx);
        let sum = f.add(&a, &b)?;
        let (a2, b2) = (f.mul(&a, &a)?, f.mul(&b, &b)?);
        rec.check("F2", f.mul(&sum, &sum)? == f.add(&a2, &b2)?, VerificationLevel::Exact, ctx);
        let squares = FgIdeal::new(&f, vec![a2, b2])?;
        rec.check("F3", squares.contains(&f.mul(&a, &b)?)?, VerificationLevel::Exact, ctx);

        let (p, q) = (sampler.polynomial(&f, rng)?, sampler.polynomial(&f, rng)?);
        let out = gaussian_pair(&p, &q)?;
        rec.check(
            "F4",
            out.holds,
            VerificationLevel::Exact,
            || json!({ "f": p.to_string(), "g": q.to_string(), "witness": out.witness }),
        );

        let h = sampler.ideal(&f, rng)?;
        let (x, y) = (sampler.element(&f, rng)?, sampler.element(&f, rng)?);
        let subtractive = if f.flags().finite {
            ideal::is_subtractive(&h, 0)?.0
        } else {
            !(h.contains(&x)? && h.contains(&f.add(&x, &y)?)?) || h.contains(&y)?
        };
        rec.check(
            "F5",
            subtractive,
            sub_level,
            || json!({ "ideal": h.to_string(), "a": x.to_string(), "b": y.to_string() }),
        );

        let (i, j, k) = (sampler.ideal(&f, rng)?, sampler.ideal(&f, rng)?, sampler.ideal(&f, rng)?);
        let checks = prufer_laws(&i, &j, &k)?;
        let bad = checks.iter().find(|c| c.holds == Some(false));
        let level = checks.iter().fold(VerificationLevel::Exact, |l, c| l.combine(c.level));
        rec.check("F6", bad.is_none(), level, || {
            let c = bad.expect("failing law");
            json!({ "I": i.to_string(), "J": j.to_string(), "K": k.to_string(), "law": c.id, "witness": c.witness })
        });
        Ok(())
    })?;
    report.notes.push("F3 checks IJ in (I^2, J^2) for all sampled I, J".into());
    Ok(report)
}

/// `I + I = I` on `FId(S)`, which holds for every base.
pub fn fid_idempotency(s: &SemiringRef, sampler: &Sampler) -> Result<SuiteReport> {
    let f = build_fid(s)?.semiring;
    run_samples("fid-idempotency", &f, sampler, ids(&["F1"]), |_, rng, rec| {
        let a = sampler.element(&f, rng)?;
        rec.check("F1", f.add(&a, &a)? == a, VerificationLevel::Exact, || json!({ "I": a.to_string() }));
        Ok(())
    })
}

/// Every prime ideal of the finite semiring `s` is subtractive.
pub fn weak_gaussian_check(s: &SemiringRef) -> Result<bool> {
    if !s.flags().finite {
        return Err(Error::unsupported(s.id(), "weak Gaussian check (finite carriers only)"));
    }
    for i in enumerate_ideals(s)? {
        if ideal::is_prime(&i)? && !ideal::is_subtractive(&i, 0)?.0 {
            return Ok(false);
        }
    }
    Ok(true)
}
