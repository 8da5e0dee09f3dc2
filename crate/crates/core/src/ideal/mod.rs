//! Finitely generated ideals: canonical forms, membership and the four ideal
//! operations.

pub mod finite;
pub mod nat;

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use serde_json::json;

use crate::error::{Error, Result};
use crate::semiring::{Carrier, Element, SemiringRef, Tropical};
use finite::{bit, closure, generators_of, members};
pub use nat::NatMonoid;

/// Default cap on the order of finite tables whose ideals are enumerated.
pub const DEFAULT_ENUMERATION_CAP: usize = 8;

/// How a yes/no answer was obtained: by an exhaustive argument, or by a scan
/// that only covered values up to a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerificationLevel {
    Exact,
    Bounded(u64),
}

impl VerificationLevel {
    /// The weaker of two levels.
    pub fn combine(self, other: Self) -> Self {
        match (self, other) {
            (VerificationLevel::Exact, x) | (x, VerificationLevel::Exact) => x,
            (VerificationLevel::Bounded(a), VerificationLevel::Bounded(b)) => VerificationLevel::Bounded(a.min(b)),
        }
    }
}

impl fmt::Display for VerificationLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerificationLevel::Exact => f.write_str("exact"),
            VerificationLevel::Bounded(b) => write!(f, "bounded({b})"),
        }
    }
}

impl Serialize for VerificationLevel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CanonicalForm {
    /// `{ s * g : s in S }`
    Principal(Element),
    /// nonzero ideal of the naturals
    NatPeriodic(NatMonoid),
    /// member bitset over the indices of a finite table
    FiniteClosure(u64),
}

impl CanonicalForm {
    pub fn kind(&self) -> &'static str {
        match self {
            CanonicalForm::Principal(_) => "principal",
            CanonicalForm::NatPeriodic(_) => "nat-periodic",
            CanonicalForm::FiniteClosure(_) => "finite-closure",
        }
    }

    /// String key, stable across runs; used to order and hash ideals.
    pub fn key(&self) -> String {
        match self {
            CanonicalForm::Principal(g) => format!("p:{g}"),
            CanonicalForm::NatPeriodic(m) => format!("n:{:?}", m.minimal_generators()),
            CanonicalForm::FiniteClosure(mask) => format!("f:{mask:016x}"),
        }
    }

    pub fn data_json(&self) -> serde_json::Value {
        match self {
            CanonicalForm::Principal(g) => json!(g.to_string()),
            CanonicalForm::NatPeriodic(m) => json!({
                "d": m.period(),
                "conductor": m.conductor(),
                "sporadic": m.sporadic(nat::SPORADIC_LIMIT),
                "minimal_generators": m.minimal_generators(),
            }),
            CanonicalForm::FiniteClosure(mask) => json!(members(*mask).collect::<Vec<_>>()),
        }
    }

    pub fn to_json(&self, verification: VerificationLevel) -> serde_json::Value {
        json!({ "kind": self.kind(), "data": self.data_json(), "verification": verification })
    }
}

/// A finitely generated ideal with its canonical form.
#[derive(Debug, Clone)]
pub struct FgIdeal {
    semiring: SemiringRef,
    generators: Vec<Element>,
    canonical: CanonicalForm,
}

impl PartialEq for FgIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.semiring.same(&other.semiring) && self.canonical == other.canonical
    }
}

impl Eq for FgIdeal {}

impl fmt::Display for FgIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

fn nat_u64(s: &SemiringRef, x: &BigUint) -> Result<u64> {
    x.to_u64().ok_or_else(|| Error::TooLarge(format!("generator {x} of an ideal of {} exceeds 64 bits", s.id())))
}

impl FgIdeal {
    /// Builds the ideal generated by `gens` (the `mk_ideal` operation).
    /// Generators are sorted and deduplicated; zero generators are dropped
    /// unless every generator is zero.
    pub fn new(s: &SemiringRef, gens: Vec<Element>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        for g in &gens {
            s.check(g)?;
        }
        let zero = s.zero();
        let mut gens = gens;
        gens.sort();
        gens.dedup();
        if gens.iter().any(|g| *g != zero) {
            gens.retain(|g| *g != zero);
        } else {
            gens = vec![zero.clone()];
        }
        let canonical = if let Carrier::FiniteTable(t) = s.carrier() {
            CanonicalForm::FiniteClosure(closure(t, gens.iter().fold(0, |m, g| m | bit(table_index(g)))))
        } else if gens[0] == zero {
            CanonicalForm::Principal(zero)
        } else {
            match s.carrier() {
                Carrier::Naturals => {
                    let v =
                        gens.iter().map(|g| nat_u64(s, g.as_nat().expect("checked"))).collect::<Result<Vec<_>>>()?;
                    CanonicalForm::NatPeriodic(NatMonoid::generated(&v)?)
                }
                Carrier::Fid(base) if !base.is_prufer_known() => {
                    return Err(Error::unsupported(
                        s.id(),
                        "ideals of FId over a base without a Prüfer classification",
                    ));
                }
                // principal-friendly: <a, b> = <a + b>
                _ => CanonicalForm::Principal(s.sum(&gens)?),
            }
        };
        Ok(FgIdeal { semiring: s.clone(), generators: gens, canonical })
    }

    pub fn principal(s: &SemiringRef, g: Element) -> Result<Self> {
        Self::new(s, vec![g])
    }

    pub fn zero(s: &SemiringRef) -> Self {
        if let Some(t) = s.table() {
            return Self::from_mask(s, bit(t.zero()));
        }
        FgIdeal { semiring: s.clone(), generators: vec![s.zero()], canonical: CanonicalForm::Principal(s.zero()) }
    }

    pub fn unit(s: &SemiringRef) -> Self {
        Self::new(s, vec![s.one()]).expect("the unit ideal is always constructible")
    }

    fn from_mask(s: &SemiringRef, mask: u64) -> Self {
        let t = s.table().expect("finite table");
        let generators = generators_of(t, mask).into_iter().map(Element::Index).collect();
        FgIdeal { semiring: s.clone(), generators, canonical: CanonicalForm::FiniteClosure(mask) }
    }

    fn from_monoid(s: &SemiringRef, m: NatMonoid) -> Self {
        let generators = m.minimal_generators().into_iter().map(Element::nat).collect();
        FgIdeal { semiring: s.clone(), generators, canonical: CanonicalForm::NatPeriodic(m) }
    }

    pub fn semiring(&self) -> &SemiringRef {
        &self.semiring
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn canonical(&self) -> &CanonicalForm {
        &self.canonical
    }

    pub fn is_zero_ideal(&self) -> bool {
        matches!(&self.canonical, CanonicalForm::Principal(g) if self.semiring.is_zero(g))
            || matches!(&self.canonical, CanonicalForm::FiniteClosure(m) if *m == bit(self.semiring.table().unwrap().zero()))
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.contains(&self.semiring.one()).unwrap_or(false)
    }

    /// Generators after canonical reduction: the principal generator, the
    /// minimal generators of a monoid, or a greedy generating set of a closure.
    pub fn effective_generators(&self) -> Vec<Element> {
        match &self.canonical {
            CanonicalForm::Principal(g) => vec![g.clone()],
            CanonicalForm::NatPeriodic(m) => m.minimal_generators().into_iter().map(Element::nat).collect(),
            CanonicalForm::FiniteClosure(mask) => generators_of(self.semiring.table().expect("finite table"), *mask)
                .into_iter()
                .map(Element::Index)
                .collect(),
        }
    }

    /// A single generator if the ideal is principal.
    pub fn principal_generator(&self) -> Option<Element> {
        match &self.canonical {
            CanonicalForm::Principal(g) => Some(g.clone()),
            CanonicalForm::NatPeriodic(m) => m.is_full_multiples().then(|| Element::nat(m.period())),
            CanonicalForm::FiniteClosure(mask) => {
                let t = self.semiring.table().expect("finite table");
                members(*mask).find(|&a| closure(t, bit(a)) == *mask).map(Element::Index)
            }
        }
    }

    pub fn is_principal(&self) -> bool {
        self.principal_generator().is_some()
    }

    /// Exact membership test.
    pub fn contains(&self, x: &Element) -> Result<bool> {
        self.semiring.check(x)?;
        Ok(match &self.canonical {
            CanonicalForm::Principal(g) => divides(&self.semiring, g, x)?,
            CanonicalForm::NatPeriodic(m) => m.contains_big(x.as_nat().expect("checked")),
            CanonicalForm::FiniteClosure(mask) => mask & bit(table_index(x)) != 0,
        })
    }
}

fn table_index(e: &Element) -> usize {
    match e {
        Element::Index(i) => *i,
        _ => unreachable!("table elements are indices"),
    }
}

/// `x` lies in the principal ideal `<g>`, i.e. `x = s g` for some `s`.
fn divides(s: &SemiringRef, g: &Element, x: &Element) -> Result<bool> {
    Ok(match (s.carrier(), g, x) {
        (Carrier::Naturals | Carrier::GcdNaturals, Element::Nat(g), Element::Nat(x)) => {
            if g.is_zero() {
                x.is_zero()
            } else {
                (x % g).is_zero()
            }
        }
        (Carrier::MinPlus(_), Element::Trop(g), Element::Trop(x)) => match (g, x) {
            (_, Tropical::Bottom) => true,
            (Tropical::Bottom, _) => false,
            (Tropical::Finite(g), Tropical::Finite(x)) => g.iter().zip(x).all(|(a, b)| a <= b),
        },
        (Carrier::Boolean, Element::Bit(g), Element::Bit(x)) => *g || !*x,
        (Carrier::DivisorLattice(_), Element::Divisor(g), Element::Divisor(x)) => g % x == 0,
        (Carrier::PowersetLattice(_), Element::Subset(g), Element::Subset(x)) => x & !g == 0,
        (Carrier::FiniteTable(t), Element::Index(g), Element::Index(x)) => (0..t.order()).any(|a| t.mul(a, *g) == *x),
        // over a Prüfer base, X = Y G for an ideal Y iff X is inside G
        (Carrier::Fid(_), Element::Ideal(g), Element::Ideal(x)) => is_subset(x, g)?,
        _ => unreachable!("carrier checked by caller"),
    })
}

fn ensure_same(i: &FgIdeal, j: &FgIdeal) -> Result<()> {
    i.semiring.ensure_same(&j.semiring)
}

/// Builds the ideal generated by `gens` over `s`.
pub fn mk_ideal(s: &SemiringRef, gens: Vec<Element>) -> Result<FgIdeal> {
    FgIdeal::new(s, gens)
}

pub fn add_ideals(i: &FgIdeal, j: &FgIdeal) -> Result<FgIdeal> {
    ensure_same(i, j)?;
    let mut gens = i.effective_generators();
    gens.extend(j.effective_generators());
    FgIdeal::new(&i.semiring, gens)
}

pub fn mul_ideals(i: &FgIdeal, j: &FgIdeal) -> Result<FgIdeal> {
    ensure_same(i, j)?;
    let s = &i.semiring;
    let (a, b) = (i.effective_generators(), j.effective_generators());
    let mut gens = Vec::with_capacity(a.len() * b.len());
    for x in &a {
        for y in &b {
            gens.push(s.mul(x, y)?);
        }
    }
    FgIdeal::new(s, gens)
}

/// `I^e` by repeated multiplication, canonicalizing after every step.
pub fn pow_ideal(i: &FgIdeal, e: u32) -> Result<FgIdeal> {
    (0..e).try_fold(FgIdeal::unit(&i.semiring), |acc, _| mul_ideals(&acc, i))
}

pub fn equals(i: &FgIdeal, j: &FgIdeal) -> Result<bool> {
    ensure_same(i, j)?;
    Ok(i.canonical == j.canonical)
}

pub fn is_subset(i: &FgIdeal, j: &FgIdeal) -> Result<bool> {
    ensure_same(i, j)?;
    for g in i.effective_generators() {
        if !j.contains(&g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An effective generator of one side missing from the other, if any.
pub fn difference_witness(i: &FgIdeal, j: &FgIdeal) -> Result<Option<Element>> {
    ensure_same(i, j)?;
    for g in i.effective_generators() {
        if !j.contains(&g)? {
            return Ok(Some(g));
        }
    }
    for g in j.effective_generators() {
        if !i.contains(&g)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

fn checked_mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or_else(|| Error::Overflow("naturals ideal arithmetic".into()))
}

fn mul_contains(m: &NatMonoid, a: u64, b: u64) -> bool {
    match a.checked_mul(b) {
        Some(x) => m.contains(x),
        None => m.contains_big(&(BigUint::from(a) * b)),
    }
}

pub fn intersect(i: &FgIdeal, j: &FgIdeal) -> Result<FgIdeal> {
    ensure_same(i, j)?;
    let s = &i.semiring;
    if i.is_zero_ideal() || j.is_zero_ideal() {
        return Ok(FgIdeal::zero(s));
    }
    match (&i.canonical, &j.canonical) {
        (CanonicalForm::Principal(a), CanonicalForm::Principal(b)) => {
            let meet = match (s.carrier(), a, b) {
                (Carrier::GcdNaturals, Element::Nat(a), Element::Nat(b)) => Element::Nat(a.lcm(b)),
                (Carrier::MinPlus(_), Element::Trop(Tropical::Finite(a)), Element::Trop(Tropical::Finite(b))) => {
                    Element::Trop(Tropical::Finite(a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()))
                }
                (Carrier::Fid(_), Element::Ideal(a), Element::Ideal(b)) => Element::ideal(intersect(a, b)?),
                // lattices and boolean: <a> /\ <b> = <a meet b>
                (Carrier::Boolean | Carrier::DivisorLattice(_) | Carrier::PowersetLattice(_), _, _) => s.mul(a, b)?,
                _ => return Err(Error::unsupported(s.id(), "intersection of these canonical forms")),
            };
            FgIdeal::principal(s, meet)
        }
        (CanonicalForm::NatPeriodic(a), CanonicalForm::NatPeriodic(b)) => {
            let l = a.period().lcm(&b.period());
            let threshold = a.conductor().max(b.conductor()).div_ceil(l);
            let m = NatMonoid::from_predicate(l, threshold, |y| mul_contains(a, y, l) && mul_contains(b, y, l))?;
            Ok(FgIdeal::from_monoid(s, m))
        }
        (CanonicalForm::FiniteClosure(a), CanonicalForm::FiniteClosure(b)) => Ok(FgIdeal::from_mask(s, a & b)),
        _ => Err(Error::unsupported(s.id(), "intersection of mixed canonical forms")),
    }
}

/// The colon ideal `[I : J] = { s : sJ is inside I }`.
pub fn colon(i: &FgIdeal, j: &FgIdeal) -> Result<(FgIdeal, VerificationLevel)> {
    ensure_same(i, j)?;
    let s = &i.semiring;
    let exact = VerificationLevel::Exact;
    if j.is_zero_ideal() {
        return Ok((FgIdeal::unit(s), exact));
    }
    match (&i.canonical, &j.canonical) {
        (CanonicalForm::Principal(a), CanonicalForm::Principal(b)) => {
            let (g, level) = match (s.carrier(), a, b) {
                (Carrier::GcdNaturals, Element::Nat(a), Element::Nat(b)) => (Element::Nat(a / a.gcd(b)), exact),
                (Carrier::Naturals, _, _) => return Ok((FgIdeal::zero(s), exact)),
                (Carrier::MinPlus(_), Element::Trop(a), Element::Trop(Tropical::Finite(b))) => match a {
                    Tropical::Bottom => (s.zero(), exact),
                    Tropical::Finite(a) => (
                        Element::Trop(Tropical::Finite(a.iter().zip(b).map(|(x, y)| x.saturating_sub(*y)).collect())),
                        exact,
                    ),
                },
                (Carrier::PowersetLattice(n), Element::Subset(a), Element::Subset(b)) => {
                    (Element::Subset((!b | a) & crate::semiring::full_mask(*n)), exact)
                }
                (Carrier::Boolean | Carrier::DivisorLattice(_), _, _) => {
                    // relative pseudocomplement: join of every s with s*b <= a
                    let mut acc = s.zero();
                    for x in s.elements().expect("finite lattice") {
                        if i.contains(&s.mul(&x, b)?)? {
                            acc = s.add(&acc, &x)?;
                        }
                    }
                    (acc, exact)
                }
                (Carrier::Fid(_), Element::Ideal(a), Element::Ideal(b)) => {
                    let (c, level) = colon(a, b)?;
                    (Element::ideal(c), level)
                }
                _ => return Err(Error::unsupported(s.id(), "colon of these canonical forms")),
            };
            Ok((FgIdeal::principal(s, g)?, level))
        }
        (CanonicalForm::NatPeriodic(a), CanonicalForm::NatPeriodic(b)) => {
            let bgens = b.minimal_generators();
            let d = a.period();
            let step = bgens.iter().fold(1u64, |acc, &g| acc.lcm(&(d / d.gcd(&g))));
            // every multiple s of `step` has d | s*g; past the conductor all of them are members
            let bmin = bgens[0];
            let threshold = a.conductor().div_ceil(checked_mul(step, bmin)?);
            let m = NatMonoid::from_predicate(step, threshold, |y| match y.checked_mul(step) {
                Some(sv) => bgens.iter().all(|&g| mul_contains(a, sv, g)),
                None => false,
            })?;
            let result = FgIdeal::from_monoid(s, m);
            debug_assert!(is_subset(&mul_ideals(&result, j)?, i)?);
            Ok((result, exact))
        }
        (CanonicalForm::FiniteClosure(a), _) => {
            let t = s.table().expect("finite table");
            let jg: Vec<usize> = j.effective_generators().iter().map(table_index).collect();
            let mask =
                (0..t.order()).filter(|&x| jg.iter().all(|&g| a & bit(t.mul(x, g)) != 0)).fold(0u64, |m, x| m | bit(x));
            Ok((FgIdeal::from_mask(s, mask), exact))
        }
        // the zero ideal of the naturals against a nonzero J
        (CanonicalForm::Principal(_), CanonicalForm::NatPeriodic(_)) => Ok((FgIdeal::zero(s), exact)),
        _ => Err(Error::unsupported(s.id(), "colon of mixed canonical forms")),
    }
}

/// Whether `a + b in I` and `a in I` imply `b in I`. Every carrier here has
/// an exact rule or is finite, so `_bound` is not consulted; see
/// [`subtractive_scan`] for the bounded pair scan.
pub fn is_subtractive(i: &FgIdeal, _bound: u64) -> Result<(bool, VerificationLevel)> {
    let s = &i.semiring;
    let exact = VerificationLevel::Exact;
    match s.carrier() {
        Carrier::Naturals => Ok((
            match &i.canonical {
                CanonicalForm::NatPeriodic(m) => m.is_full_multiples(),
                _ => true,
            },
            exact,
        )),
        // m | gcd(a, b) and gcd(a, b) | b
        Carrier::GcdNaturals => Ok((true, exact)),
        // ideals are down-sets of the additive order and b <= a + b
        Carrier::MinPlus(_) => Ok((true, exact)),
        Carrier::Fid(base) if base.is_prufer_known() => Ok((true, exact)),
        Carrier::Fid(_) => Err(Error::unsupported(s.id(), "subtractivity in FId without a Prüfer base")),
        _ => {
            let els = s.elements().expect("finite carrier");
            for a in &els {
                if !i.contains(a)? {
                    continue;
                }
                for b in &els {
                    if i.contains(&s.add(a, b)?)? && !i.contains(b)? {
                        return Ok((false, exact));
                    }
                }
            }
            Ok((true, exact))
        }
    }
}

/// Bounded pair scan for subtractivity: `a` and `b` range over elements whose
/// integer components are at most `bound`. Used to cross-check the proof rules.
pub fn subtractive_scan(i: &FgIdeal, bound: u64) -> Result<(bool, VerificationLevel)> {
    let s = &i.semiring;
    let els: Vec<Element> = match s.carrier() {
        Carrier::Naturals | Carrier::GcdNaturals => (0..=bound).map(Element::nat).collect(),
        Carrier::MinPlus(k) => {
            let mut v = vec![Element::bottom()];
            let mut cur = vec![0u64; *k];
            loop {
                v.push(Element::tuple(&cur));
                let mut p = 0;
                while p < *k && cur[p] == bound {
                    cur[p] = 0;
                    p += 1;
                }
                if p == *k {
                    break;
                }
                cur[p] += 1;
            }
            v
        }
        _ => return is_subtractive(i, bound),
    };
    let members: Vec<bool> = els.iter().map(|x| i.contains(x)).collect::<Result<_>>()?;
    for (a, _) in els.iter().zip(&members).filter(|(_, m)| **m) {
        for (b, bm) in els.iter().zip(&members) {
            if !bm && i.contains(&s.add(a, b)?)? {
                return Ok((false, VerificationLevel::Exact));
            }
        }
    }
    Ok((true, VerificationLevel::Bounded(bound)))
}

fn is_prime_u64(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Prime ideal test: proper, and `ab in P` implies `a in P` or `b in P`.
pub fn is_prime(i: &FgIdeal) -> Result<bool> {
    let s = &i.semiring;
    if i.is_unit_ideal() {
        return Ok(false);
    }
    match (s.carrier(), &i.canonical) {
        (Carrier::GcdNaturals, CanonicalForm::Principal(Element::Nat(p))) => {
            Ok(p.is_zero() || p.to_u64().is_some_and(is_prime_u64) || (p.bits() > 64 && big_is_prime(p)))
        }
        // nonzero primes of N0 are pN0 and N0 \ {1}
        (Carrier::Naturals, CanonicalForm::Principal(_)) => Ok(true),
        (Carrier::Naturals, CanonicalForm::NatPeriodic(m)) => Ok((m.is_full_multiples() && is_prime_u64(m.period()))
            || (m.period() == 1 && m.minimal_generators() == [2, 3])),
        (Carrier::MinPlus(_), CanonicalForm::Principal(Element::Trop(t))) => Ok(match t {
            Tropical::Bottom => true,
            Tropical::Finite(c) => c.iter().filter(|&&x| x != 0).count() == 1 && c.iter().all(|&x| x <= 1),
        }),
        (Carrier::Fid(_), _) => Err(Error::unsupported(s.id(), "primality of ideals of FId")),
        _ => {
            let els = s.elements().ok_or_else(|| Error::unsupported(s.id(), "primality test"))?;
            let inside: Vec<bool> = els.iter().map(|x| i.contains(x)).collect::<Result<_>>()?;
            for (x, xi) in els.iter().zip(&inside) {
                for (y, yi) in els.iter().zip(&inside) {
                    if !xi && !yi && i.contains(&s.mul(x, y)?)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

fn big_is_prime(p: &BigUint) -> bool {
    let mut d = BigUint::from(2u32);
    while &d * &d <= *p {
        if (p % &d).is_zero() {
            return false;
        }
        d += 1u32;
    }
    true
}

/// All ideals of a finite semiring (tables up to [`DEFAULT_ENUMERATION_CAP`]).
pub fn enumerate_ideals(s: &SemiringRef) -> Result<Vec<FgIdeal>> {
    enumerate_ideals_capped(s, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_ideals_capped(s: &SemiringRef, cap: usize) -> Result<Vec<FgIdeal>> {
    match s.carrier() {
        Carrier::FiniteTable(t) => {
            if t.order() > cap {
                return Err(Error::TooLarge(format!("ideal enumeration of order {} (cap {cap})", t.order())));
            }
            Ok(finite::all_ideals(t).into_iter().map(|m| FgIdeal::from_mask(s, m)).collect())
        }
        // principal-friendly: exactly one ideal per element
        _ => {
            let els =
                s.elements().ok_or_else(|| Error::unsupported(s.id(), "ideal enumeration of an infinite carrier"))?;
            els.into_iter().map(|g| FgIdeal::principal(s, g)).collect()
        }
    }
}
