use serde_json::{json, Value};

use super::{ids, run_samples, Rec, Sampler, SuiteReport};
use crate::content::{ab_in_squares, gaussian_pair};
use crate::error::{Error, Result};
use crate::fraction::{inverse_candidate, is_invertible, localize_ideal, FractionalIdeal};
use crate::ideal::{self, add_ideals, colon, intersect, mul_ideals, FgIdeal, VerificationLevel};
use crate::semiring::{is_local, maximal_ideals, Carrier, Element, SemiringRef};

/// Outcome of one law on one concrete input. `holds` is `None` when the
/// input does not meet the law's hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawCheck {
    pub id: &'static str,
    pub holds: Option<bool>,
    pub witness: Option<String>,
    pub level: VerificationLevel,
}

impl LawCheck {
    fn skipped(id: &'static str) -> Self {
        LawCheck { id, holds: None, witness: None, level: VerificationLevel::Exact }
    }

    fn verdict(id: &'static str, ok: bool, witness: Option<String>) -> Self {
        LawCheck { id, holds: Some(ok), witness: if ok { None } else { witness }, level: VerificationLevel::Exact }
    }

    fn at(mut self, level: VerificationLevel) -> Self {
        self.level = level;
        self
    }
}

fn same_ideal(id: &'static str, lhs: &FgIdeal, rhs: &FgIdeal) -> Result<LawCheck> {
    let w = ideal::difference_witness(lhs, rhs)?;
    Ok(LawCheck::verdict(id, w.is_none(), w.map(|e| e.to_string())))
}

fn require_semidomain(s: &SemiringRef, suite: &str) -> Result<()> {
    if s.flags().semidomain {
        Ok(())
    } else {
        Err(Error::Precondition(format!("the {suite} suite needs a semidomain; {} is not one", s.id())))
    }
}

fn show(i: &FgIdeal) -> Value {
    Value::String(i.to_string())
}

/// The six ideal identities characterizing Prüfer semirings, plus
/// invertibility of `I`.
pub fn prufer_laws(i: &FgIdeal, j: &FgIdeal, k: &FgIdeal) -> Result<Vec<LawCheck>> {
    let l1 = same_ideal("L1", &intersect(i, &add_ideals(j, k)?)?, &add_ideals(&intersect(i, j)?, &intersect(i, k)?)?)?;
    let l2 = same_ideal("L2", &mul_ideals(i, &intersect(j, k)?)?, &intersect(&mul_ideals(i, j)?, &mul_ideals(i, k)?)?)?;
    let l3 = same_ideal("L3", &mul_ideals(&add_ideals(i, j)?, &intersect(i, j)?)?, &mul_ideals(i, j)?)?;
    let (ijk, v1) = colon(&add_ideals(i, j)?, k)?;
    let (ik, v2) = colon(i, k)?;
    let (jk, v3) = colon(j, k)?;
    let l4 = same_ideal("L4", &ijk, &add_ideals(&ik, &jk)?)?.at(v1.combine(v2).combine(v3));
    let (ij, v1) = colon(i, j)?;
    let (ji, v2) = colon(j, i)?;
    let l5 = same_ideal("L5", &add_ideals(&ij, &ji)?, &FgIdeal::unit(i.semiring()))?.at(v1.combine(v2));
    let (kij, v1) = colon(k, &intersect(i, j)?)?;
    let (ki, v2) = colon(k, i)?;
    let (kj, v3) = colon(k, j)?;
    let l6 = same_ideal("L6", &kij, &add_ideals(&ki, &kj)?)?.at(v1.combine(v2).combine(v3));
    let inv = if i.is_zero_ideal() {
        LawCheck::skipped("INV")
    } else {
        LawCheck::verdict("INV", is_invertible(i)?, Some(i.to_string()))
    };
    Ok(vec![l1, l2, l3, l4, l5, l6, inv])
}

pub fn prufer_suite(s: &SemiringRef, sampler: &Sampler) -> Result<SuiteReport> {
    require_semidomain(s, "prufer")?;
    run_samples("prufer", s, sampler, ids(&["L1", "L2", "L3", "L4", "L5", "L6", "INV"]), |_, rng, rec| {
        let (i, j, k) = (sampler.ideal(s, rng)?, sampler.ideal(s, rng)?, sampler.ideal(s, rng)?);
        for c in prufer_laws(&i, &j, &k)? {
            rec.record(&c, || json!({ "I": show(&i), "J": show(&j), "K": show(&k) }));
        }
        Ok(())
    })
}

fn invertible(i: &FgIdeal) -> Result<bool> {
    Ok(!i.is_zero_ideal() && is_invertible(i)?)
}

/// `C1`: `[IJ : I] = J` for invertible `I`. `C2`: for `I` inside an invertible
/// `K` (here `I` is replaced by `I ∩ K`), `K^-1 I` is an ideal `Q` of `S`
/// with `I = KQ`.
pub fn cancellation_laws(i: &FgIdeal, j: &FgIdeal, k: &FgIdeal) -> Result<Vec<LawCheck>> {
    let c1 = if invertible(i)? {
        let (c, level) = colon(&mul_ideals(i, j)?, i)?;
        same_ideal("C1", &c, j)?.at(level)
    } else {
        LawCheck::skipped("C1")
    };
    let c2 = if invertible(k)? {
        let sub = intersect(i, k)?;
        let q = inverse_candidate(k)?.mul(&FractionalIdeal::from_ideal(sub.clone()))?.to_integral()?;
        match q {
            Some(q) => same_ideal("C2", &mul_ideals(k, &q)?, &sub)?,
            None => LawCheck::verdict("C2", false, Some(format!("K^-1 {sub} is not inside S"))),
        }
    } else {
        LawCheck::skipped("C2")
    };
    Ok(vec![c1, c2])
}

pub fn cancellation_suite(s: &SemiringRef, sampler: &Sampler) -> Result<SuiteReport> {
    run_samples("cancellation", s, sampler, ids(&["C1", "C2"]), |_, rng, rec| {
        let (i, j, k) = (sampler.ideal(s, rng)?, sampler.ideal(s, rng)?, sampler.ideal(s, rng)?);
        for c in cancellation_laws(&i, &j, &k)? {
            rec.record(&c, || json!({ "I": show(&i), "J": show(&j), "K": show(&k) }));
        }
        Ok(())
    })
}

/// `V1`: `<a>` and `<b>` are comparable. `V2`: `<a, b>` is principal. On a
/// local semidomain the two agree pair by pair (`AGREE`).
pub fn valuation_laws(s: &SemiringRef, a: &Element, b: &Element, local: Option<bool>) -> Result<Vec<LawCheck>> {
    let pa = FgIdeal::principal(s, a.clone())?;
    let pb = FgIdeal::principal(s, b.clone())?;
    let v1 = pa.contains(b)? || pb.contains(a)?;
    let ab = FgIdeal::new(s, vec![a.clone(), b.clone()])?;
    let v2 = ab.is_principal();
    let agree = match local {
        Some(true) => LawCheck::verdict("AGREE", v1 == v2, Some(format!("V1 {v1}, V2 {v2}"))),
        _ => LawCheck::skipped("AGREE"),
    };
    Ok(vec![
        LawCheck::verdict("V1", v1, Some(format!("{a}, {b}"))),
        LawCheck::verdict("V2", v2, Some(ab.to_string())),
        agree,
    ])
}

pub fn valuation_check(s: &SemiringRef, sampler: &Sampler) -> Result<SuiteReport> {
    require_semidomain(s, "valuation")?;
    let local = is_local(s).ok();
    let mut report = run_samples("valuation", s, sampler, ids(&["V1", "V2", "AGREE"]), |_, rng, rec| {
        let (a, b) = (sampler.nonzero_element(s, rng)?, sampler.nonzero_element(s, rng)?);
        for c in valuation_laws(s, &a, &b, local)? {
            rec.record(&c, || json!({ "a": a.to_string(), "b": b.to_string() }));
        }
        Ok(())
    })?;
    report.notes.push(match local {
        Some(true) => "local: V1 and V2 must agree".into(),
        Some(false) => "not local: no equivalence asserted".into(),
        None => "locality unknown: no equivalence asserted".into(),
    });
    Ok(report)
}

fn default_primes(s: &SemiringRef) -> Result<Vec<FgIdeal>> {
    match s.carrier() {
        Carrier::GcdNaturals => [2u64, 3, 5, 7].iter().map(|&p| FgIdeal::principal(s, Element::nat(p))).collect(),
        Carrier::MinPlus(_) | Carrier::Naturals => Ok(maximal_ideals(s, None)?.ideals),
        _ => Err(Error::unsupported(s.id(), "locally-valuation suite (gcd-naturals, min-plus(k), naturals)")),
    }
}

/// Valuation laws on each localization `S_P`, and agreement of the outcome
/// with the Prüfer suite on `S`.
pub fn locally_valuation_suite(
    s: &SemiringRef,
    primes: Option<Vec<FgIdeal>>,
    sampler: &Sampler,
) -> Result<SuiteReport> {
    require_semidomain(s, "locally-valuation")?;
    let primes = match primes {
        Some(p) => p,
        None => default_primes(s)?,
    };
    let mut law_ids = Vec::new();
    for p in &primes {
        law_ids.push(format!("V1@{p}"));
        law_ids.push(format!("V2@{p}"));
    }
    law_ids.push("PRUFER-AGREE".into());
    let mut report = run_samples("locally-valuation", s, sampler, law_ids, |_, rng, rec| {
        let (a, b) = (sampler.nonzero_element(s, rng)?, sampler.nonzero_element(s, rng)?);
        let pa = FgIdeal::principal(s, a.clone())?;
        let pb = FgIdeal::principal(s, b.clone())?;
        let ab = FgIdeal::new(s, vec![a.clone(), b.clone()])?;
        for p in &primes {
            let la = localize_ideal(&pa, p)?.ideal;
            let lb = localize_ideal(&pb, p)?.ideal;
            let lab = localize_ideal(&ab, p)?.ideal;
            let v1 = ideal::is_subset(&la, &lb)? || ideal::is_subset(&lb, &la)?;
            let ctx =
                || json!({ "a": a.to_string(), "b": b.to_string(), "localized": [la.to_string(), lb.to_string()] });
            rec.check(&format!("V1@{p}"), v1, VerificationLevel::Exact, ctx);
            rec.check(
                &format!("V2@{p}"),
                lab.is_principal(),
                VerificationLevel::Exact,
                || json!({ "a": a.to_string(), "b": b.to_string(), "localized": lab.to_string() }),
            );
        }
        Ok(())
    })?;
    let locally = report.laws.iter().all(|l| l.fail == 0);
    let prufer = prufer_suite(s, sampler)?.all_pass();
    let agree = report.laws.last_mut().expect("PRUFER-AGREE");
    if locally == prufer {
        agree.pass = 1;
    } else {
        agree.fail = 1;
        agree.counterexample = Some(json!({ "prufer": prufer, "locally_valuation": locally }));
        report.notes.push("internal inconsistency: Prüfer and locally-valuation outcomes differ".into());
    }
    report.notes.push(format!("primes: {}", primes.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")));
    Ok(report)
}

const GT_LAWS: [&str; 4] = ["G1", "G2", "G3", "G4"];

/// Gilmer–Tsang: on a subtractive semidomain with `ab in (a^2, b^2)`,
/// invertibility, cancellation, colon recovery and the Gaussian property of
/// sampled inputs must pass or fail together.
pub fn gilmer_tsang_suite(s: &SemiringRef, sampler: &Sampler) -> Result<SuiteReport> {
    require_semidomain(s, "gilmer-tsang")?;
    let bound = sampler.bound_for(s);
    let law_ids = ids(&["H-SUB", "H-SQ", "G1", "G2", "G3", "G4", "AGREE"]);
    let mut report = run_samples("gilmer-tsang", s, sampler, law_ids, |_, rng, rec: &mut Rec| {
        let h = sampler.ideal(s, rng)?;
        let (sub, level) = ideal::is_subtractive(&h, bound)?;
        rec.check("H-SUB", sub, level, || json!({ "I": show(&h) }));
        let (a, b) = (sampler.element(s, rng)?, sampler.element(s, rng)?);
        rec.check(
            "H-SQ",
            ab_in_squares(s, &a, &b)?,
            VerificationLevel::Exact,
            || json!({ "a": a.to_string(), "b": b.to_string() }),
        );

        let i = sampler.nonzero_ideal(s, rng)?;
        let (j, k) = (sampler.ideal(s, rng)?, sampler.ideal(s, rng)?);
        let ctx = || json!({ "I": show(&i), "J": show(&j), "K": show(&k) });
        rec.check("G1", is_invertible(&i)?, VerificationLevel::Exact, ctx);
        let ij = mul_ideals(&i, &j)?;
        let (recovered, level) = colon(&ij, &i)?;
        let mut cancels = true;
        for other in [&k, &recovered] {
            if mul_ideals(&i, other)? == ij && *other != j {
                cancels = false;
            }
        }
        rec.check("G2", cancels, level, ctx);
        rec.check("G3", recovered == j, level, || json!({ "I": show(&i), "J": show(&j), "colon": show(&recovered) }));
        let (f, g) = (sampler.polynomial(s, rng)?, sampler.polynomial(s, rng)?);
        let out = gaussian_pair(&f, &g)?;
        rec.check(
            "G4",
            out.holds,
            VerificationLevel::Exact,
            || json!({ "f": f.to_string(), "g": g.to_string(), "witness": out.witness }),
        );
        Ok(())
    })?;
    let hypotheses = report.laws[..2].iter().all(|l| l.fail == 0);
    if !hypotheses {
        for law in report.laws.iter_mut().skip(2) {
            law.skipped += law.pass + law.fail;
            law.pass = 0;
            law.fail = 0;
            law.counterexample = None;
        }
        let failed = report.failing().join(", ");
        report.notes.push(format!("hypotheses fail ({failed}); statements G1-G4 skipped"));
        return Ok(report);
    }
    let failing: Vec<&str> = GT_LAWS.iter().copied().filter(|id| report.law(id).is_some_and(|l| l.fail > 0)).collect();
    let consistent = failing.is_empty() || failing.len() == GT_LAWS.len();
    let agree = report.laws.last_mut().expect("AGREE");
    if consistent {
        agree.pass = 1;
    } else {
        agree.fail = 1;
        agree.counterexample = Some(json!({ "failing": failing }));
        report.notes.push("internal inconsistency: the four equivalent statements disagree".into());
    }
    Ok(report)
}
