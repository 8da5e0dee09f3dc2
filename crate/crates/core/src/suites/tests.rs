use super::*;
use crate::ideal::FgIdeal;
use crate::semiring::Semiring;

fn nats(s: &SemiringRef, g: &[u64]) -> FgIdeal {
    FgIdeal::new(s, g.iter().map(|&x| Element::nat(x)).collect()).unwrap()
}

fn check<'a>(cs: &'a [LawCheck], id: &str) -> &'a LawCheck {
    cs.iter().find(|c| c.id == id).unwrap()
}

#[test]
fn sampler_streams_are_reproducible() {
    let s = Semiring::naturals();
    let a = Sampler::new(7, 10);
    let draw = |sm: &Sampler, i| {
        let mut r = sm.rng(i);
        (0..5).map(|_| sm.element(&s, &mut r).unwrap()).collect::<Vec<_>>()
    };
    assert_eq!(draw(&a, 3), draw(&a.clone(), 3));
    assert_ne!(draw(&a, 3), draw(&a, 4));
    assert_ne!(draw(&a, 3), draw(&Sampler::new(8, 10), 3));
}

#[test]
fn prufer_positive_on_gcd() {
    let r = prufer_suite(&Semiring::gcd_naturals(), &Sampler::new(42, 100)).unwrap();
    assert!(r.all_pass(), "{r:?}");
    assert_eq!(r.laws.len(), 7);
    assert!(r.laws.iter().all(|l| l.verification == VerificationLevel::Exact));
}

#[test]
fn prufer_negative_pinned_witnesses() {
    let n = Semiring::naturals();
    let cs = prufer_laws(&nats(&n, &[2]), &nats(&n, &[3]), &nats(&n, &[5])).unwrap();
    assert_eq!(check(&cs, "L1").holds, Some(false));
    assert_eq!(check(&cs, "L1").witness.as_deref(), Some("8"));
    let cs = prufer_laws(&nats(&n, &[2]), &nats(&n, &[3]), &nats(&n, &[1])).unwrap();
    assert_eq!(check(&cs, "L3").witness.as_deref(), Some("6"));
    let r = prufer_suite(&n, &Sampler::new(42, 60)).unwrap();
    for id in ["L1", "L2", "L3", "L5"] {
        assert!(r.law(id).unwrap().fail > 0, "{id} should fail on the naturals");
        assert!(r.law(id).unwrap().counterexample.is_some());
    }
}

#[test]
fn cancellation_examples() {
    let g = Semiring::gcd_naturals();
    let cs = cancellation_laws(&nats(&g, &[4, 6]), &nats(&g, &[5]), &nats(&g, &[3])).unwrap();
    assert!(cs.iter().all(|c| c.holds == Some(true)));
    let m = Semiring::min_plus(2).unwrap();
    let i = FgIdeal::principal(&m, Element::tuple(&[1, 1])).unwrap();
    let j = FgIdeal::new(&m, vec![Element::tuple(&[0, 2]), Element::tuple(&[2, 0])]).unwrap();
    assert_eq!(check(&cancellation_laws(&i, &j, &j).unwrap(), "C1").holds, Some(true));
    let n = Semiring::naturals();
    let cs = cancellation_laws(&nats(&n, &[2, 3]), &nats(&n, &[1]), &nats(&n, &[2, 3])).unwrap();
    assert_eq!(check(&cs, "C1").holds, None);
    assert!(cancellation_suite(&g, &Sampler::new(1, 50)).unwrap().all_pass());
}

#[test]
fn valuation_examples() {
    let r = valuation_check(&Semiring::min_plus(1).unwrap(), &Sampler::new(42, 100)).unwrap();
    assert!(r.all_pass());
    assert!(r.law("AGREE").unwrap().pass > 0);
    let r = valuation_check(&Semiring::min_plus(2).unwrap(), &Sampler::new(42, 100)).unwrap();
    assert!(r.law("V1").unwrap().fail > 0 && r.law("V2").unwrap().fail == 0);
    assert_eq!(r.law("AGREE").unwrap().skipped, 100);
    let n = Semiring::naturals();
    let cs = valuation_laws(&n, &Element::nat(2), &Element::nat(3), Some(true)).unwrap();
    assert_eq!(check(&cs, "V1").holds, Some(false));
    assert_eq!(check(&cs, "V2").holds, Some(false));
    assert_eq!(check(&cs, "AGREE").holds, Some(true));
}

#[test]
fn locally_valuation_examples() {
    let r = locally_valuation_suite(&Semiring::gcd_naturals(), None, &Sampler::new(42, 50)).unwrap();
    assert!(r.all_pass(), "{r:?}");
    assert_eq!(r.laws.len(), 9);
    let r = locally_valuation_suite(&Semiring::min_plus(2).unwrap(), None, &Sampler::new(42, 50)).unwrap();
    assert!(r.all_pass(), "{r:?}");
    let r = locally_valuation_suite(&Semiring::naturals(), None, &Sampler::new(42, 50)).unwrap();
    assert!(!r.all_pass());
    assert_eq!(r.law("PRUFER-AGREE").unwrap().pass, 1);
}

#[test]
fn gilmer_tsang_examples() {
    for s in [Semiring::gcd_naturals(), Semiring::min_plus(2).unwrap(), Semiring::boolean()] {
        let r = gilmer_tsang_suite(&s, &Sampler::new(42, 60)).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.law("AGREE").unwrap().pass, 1);
    }
    let r = gilmer_tsang_suite(&Semiring::naturals(), &Sampler::new(42, 30)).unwrap();
    assert!(r.law("H-SUB").unwrap().fail > 0);
    assert_eq!(r.law("G1").unwrap().skipped, 30);
}

#[test]
fn fid_construction() {
    let b = build_fid(&Semiring::boolean()).unwrap();
    assert_eq!(b.semiring.order(), Some(2));
    let c = build_fid(&Semiring::chain(3).unwrap()).unwrap();
    assert_eq!(c.semiring.order(), Some(3));
    assert!(c.semiring.table().unwrap().verify_axioms().is_empty());
    let g = build_fid(&Semiring::gcd_naturals()).unwrap().semiring;
    let x = Element::ideal(nats(&Semiring::gcd_naturals(), &[4, 6]));
    let y = Element::ideal(nats(&Semiring::gcd_naturals(), &[2]));
    assert_eq!(x, y);
    assert_eq!(g.add(&x, &Element::ideal(nats(&Semiring::gcd_naturals(), &[3]))).unwrap(), g.one());
    assert!(build_fid(&Semiring::fid(Semiring::naturals())).is_err());
}

#[test]
fn fid_suites() {
    for s in [Semiring::gcd_naturals(), Semiring::min_plus(1).unwrap(), Semiring::boolean()] {
        let r = fid_suite(&s, &Sampler::new(42, 40)).unwrap();
        assert!(r.all_pass(), "{r:?}");
    }
    assert!(fid_suite(&Semiring::naturals(), &Sampler::new(42, 40)).is_err());
    assert!(fid_idempotency(&Semiring::naturals(), &Sampler::new(42, 40)).unwrap().all_pass());
}

#[test]
fn weak_gaussian_examples() {
    assert!(weak_gaussian_check(&Semiring::boolean()).unwrap());
    assert!(weak_gaussian_check(&Semiring::chain(3).unwrap()).unwrap());
    assert!(weak_gaussian_check(&Semiring::naturals()).is_err());
}

#[test]
fn reports_serialize_without_timing() {
    let r = valuation_check(&Semiring::gcd_naturals(), &Sampler::new(3, 5)).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert!(v.get("ms").is_none());
    assert_eq!(v["laws"][0]["verification"], "exact");
    let v = serde_json::to_value(r.with_timing(12)).unwrap();
    assert_eq!(v["ms"], 12);
}

#[test]
fn unknown_suite() {
    assert!(run_suite("nope", &Semiring::boolean(), &Sampler::new(1, 1)).is_err());
}
