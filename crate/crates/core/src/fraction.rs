//! Fractions over a semidomain, fractional ideals, invertibility and
//! localization at maximal ideals.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ideal::{self, CanonicalForm, FgIdeal};
use crate::semiring::{is_local, maximal_ideals, Carrier, Element, Semiring, SemiringRef, Tropical};

fn require_semidomain(s: &SemiringRef) -> Result<()> {
    if s.flags().semidomain {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{} is not a semidomain", s.id())))
    }
}

fn require_mc(s: &SemiringRef, d: &Element) -> Result<()> {
    if s.is_mc(d)? {
        Ok(())
    } else {
        Err(Error::Precondition(format!("denominator {d} is not multiplicatively cancellable in {}", s.id())))
    }
}

/// `num / den` in the semifield of fractions; `den` is always MC.
#[derive(Debug, Clone)]
pub struct Fraction {
    semiring: SemiringRef,
    num: Element,
    den: Element,
}

impl Fraction {
    pub fn new(s: &SemiringRef, num: Element, den: Element) -> Result<Self> {
        require_semidomain(s)?;
        s.check(&num)?;
        require_mc(s, &den)?;
        let (num, den) = normalize(s, num, den)?;
        Ok(Fraction { semiring: s.clone(), num, den })
    }

    /// `a / 1`
    pub fn whole(s: &SemiringRef, a: Element) -> Result<Self> {
        Self::new(s, a, s.one())
    }

    pub fn num(&self) -> &Element {
        &self.num
    }

    pub fn den(&self) -> &Element {
        &self.den
    }

    pub fn semiring(&self) -> &SemiringRef {
        &self.semiring
    }

    fn same(&self, other: &Self) -> Result<()> {
        self.semiring.ensure_same(&other.semiring)
    }

    /// `[a,b] + [c,d] = [ad + bc, bd]`
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        let s = &self.semiring;
        let num = s.add(&s.mul(&self.num, &other.den)?, &s.mul(&self.den, &other.num)?)?;
        Self::new(s, num, s.mul(&self.den, &other.den)?)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        let s = &self.semiring;
        Self::new(s, s.mul(&self.num, &other.num)?, s.mul(&self.den, &other.den)?)
    }

    /// `a/b = c/d` iff `ad = bc`; all denominators are MC, so no extra
    /// witness `t` is needed.
    pub fn eq(&self, other: &Self) -> Result<bool> {
        self.same(other)?;
        let s = &self.semiring;
        Ok(s.mul(&self.num, &other.den)? == s.mul(&self.den, &other.num)?)
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::new(&self.semiring, self.den.clone(), self.num.clone())
    }

    /// The element of `S` this fraction equals, if any.
    pub fn as_element(&self) -> Result<Option<Element>> {
        div_exact(&self.semiring, &self.num, &self.den)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn normalize(s: &SemiringRef, num: Element, den: Element) -> Result<(Element, Element)> {
    if s.is_zero(&num) {
        return Ok((num, s.one()));
    }
    Ok(match (s.carrier(), num, den) {
        (Carrier::Naturals | Carrier::GcdNaturals, Element::Nat(a), Element::Nat(b)) => {
            let g = a.gcd(&b);
            (Element::Nat(a / &g), Element::Nat(b / g))
        }
        (Carrier::MinPlus(_), Element::Trop(Tropical::Finite(a)), Element::Trop(Tropical::Finite(b))) => {
            let m: Vec<u64> = a.iter().zip(&b).map(|(x, y)| *x.min(y)).collect();
            (
                Element::tuple(&a.iter().zip(&m).map(|(x, y)| x - y).collect::<Vec<_>>()),
                Element::tuple(&b.iter().zip(&m).map(|(x, y)| x - y).collect::<Vec<_>>()),
            )
        }
        // a finite semidomain is a semifield: every nonzero denominator is a unit
        (Carrier::FiniteTable(t), Element::Index(a), Element::Index(b)) => {
            let inv = (0..t.order()).find(|&x| t.mul(b, x) == t.one()).expect("finite MC elements are units");
            (Element::Index(t.mul(a, inv)), s.one())
        }
        (_, a, b) => (a, b),
    })
}

/// `x / d` as an element of `S` when `d` divides `x`.
pub fn div_exact(s: &SemiringRef, x: &Element, d: &Element) -> Result<Option<Element>> {
    s.check(x)?;
    s.check(d)?;
    if *d == s.one() {
        return Ok(Some(x.clone()));
    }
    Ok(match (s.carrier(), x, d) {
        (Carrier::Naturals | Carrier::GcdNaturals, Element::Nat(x), Element::Nat(d)) => {
            if d.is_zero() {
                x.is_zero().then(|| Element::Nat(BigUint::zero()))
            } else {
                let (q, r) = x.div_rem(d);
                r.is_zero().then_some(Element::Nat(q))
            }
        }
        (Carrier::MinPlus(_), Element::Trop(x), Element::Trop(d)) => match (x, d) {
            (Tropical::Bottom, _) => Some(Element::bottom()),
            (_, Tropical::Bottom) => None,
            (Tropical::Finite(x), Tropical::Finite(d)) => {
                x.iter().zip(d).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(|v| Element::tuple(&v))
            }
        },
        _ => {
            if let Some(els) = s.elements() {
                let mut found = None;
                for y in els {
                    if s.mul(d, &y)? == *x {
                        found = Some(y);
                        break;
                    }
                }
                found
            } else {
                return Err(Error::unsupported(s.id(), "exact division"));
            }
        }
    })
}

/// `(1/d) I` with `d` an MC element.
#[derive(Debug, Clone)]
pub struct FractionalIdeal {
    num: FgIdeal,
    den: Element,
}

impl FractionalIdeal {
    pub fn new(num: FgIdeal, den: Element) -> Result<Self> {
        let s = num.semiring().clone();
        require_mc(&s, &den)?;
        Ok(FractionalIdeal { num, den })
    }

    pub fn from_ideal(i: FgIdeal) -> Self {
        let one = i.semiring().one();
        FractionalIdeal { num: i, den: one }
    }

    /// `S` itself, the identity of the monoid of fractional ideals.
    pub fn whole(s: &SemiringRef) -> Self {
        Self::from_ideal(FgIdeal::unit(s))
    }

    pub fn num(&self) -> &FgIdeal {
        &self.num
    }

    pub fn den(&self) -> &Element {
        &self.den
    }

    pub fn semiring(&self) -> &SemiringRef {
        self.num.semiring()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let s = self.semiring();
        Self::new(ideal::mul_ideals(&self.num, &other.num)?, s.mul(&self.den, &other.den)?)
    }

    /// `(I, d) = (I', d')` iff `d' I = d I'`.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        let s = self.semiring();
        let lhs = ideal::mul_ideals(&FgIdeal::principal(s, other.den.clone())?, &self.num)?;
        let rhs = ideal::mul_ideals(&FgIdeal::principal(s, self.den.clone())?, &other.num)?;
        ideal::equals(&lhs, &rhs)
    }

    pub fn is_whole(&self) -> Result<bool> {
        self.equals(&FractionalIdeal::whole(self.semiring()))
    }

    /// The ideal of `S` this fractional ideal equals, if it lies inside `S`.
    pub fn to_integral(&self) -> Result<Option<FgIdeal>> {
        let s = self.semiring();
        let mut gens = Vec::new();
        for g in self.num.effective_generators() {
            match div_exact(s, &g, &self.den)? {
                Some(q) => gens.push(q),
                None => return Ok(None),
            }
        }
        FgIdeal::new(s, gens).map(Some)
    }

    /// Generators as fractions `g / d`.
    pub fn fraction_generators(&self) -> Result<Vec<Fraction>> {
        let s = self.semiring();
        self.num.effective_generators().into_iter().map(|g| Fraction::new(s, g, self.den.clone())).collect()
    }
}

impl fmt::Display for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1/{}){}", self.den, self.num)
    }
}

impl Serialize for FractionalIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn require_nonzero(i: &FgIdeal) -> Result<()> {
    if i.is_zero_ideal() {
        Err(Error::Precondition("the zero ideal has no inverse".into()))
    } else {
        Ok(())
    }
}

/// `J = { x in F(S) : xI is inside S }`, written over a single MC denominator.
pub fn inverse_candidate(i: &FgIdeal) -> Result<FractionalIdeal> {
    let s = i.semiring();
    require_semidomain(s)?;
    require_nonzero(i)?;
    let unit = FgIdeal::unit(s);
    match i.canonical() {
        CanonicalForm::Principal(g) => FractionalIdeal::new(unit, g.clone()),
        // I has period d and contains every large multiple of d, so x I in N0
        // forces x d in Z; conversely (1/d) I is inside N0
        CanonicalForm::NatPeriodic(m) => FractionalIdeal::new(unit, Element::nat(m.period())),
        // nonzero ideals of a finite semidomain are the whole semifield
        CanonicalForm::FiniteClosure(_) => Ok(FractionalIdeal::whole(s)),
    }
}

/// Whether `I J = S` for some fractional ideal `J`.
pub fn is_invertible(i: &FgIdeal) -> Result<bool> {
    let s = i.semiring();
    require_nonzero(i)?;
    match inverse_candidate(i) {
        Ok(j) => FractionalIdeal::from_ideal(i.clone()).mul(&j)?.is_whole(),
        // a principal ideal <a> is invertible iff a is MC
        Err(Error::Precondition(_)) if i.is_principal() => s.is_mc(&i.principal_generator().expect("principal")),
        Err(e) => Err(e),
    }
}

fn is_unit_fraction(x: &Fraction) -> Result<bool> {
    let s = x.semiring();
    match x.as_element()? {
        Some(e) => s.is_unit(&e),
        None => Ok(false),
    }
}

/// Generator extraction on a local semidomain: given `IJ = S`, some product
/// `s_i t_j` of generators is a unit, and then `I = <s_i>`.
pub fn extract_generator_local(i: &FgIdeal, j: &FractionalIdeal) -> Result<Element> {
    let s = i.semiring();
    require_semidomain(s)?;
    if !is_local(s)? {
        return Err(Error::Precondition(format!("{} is not local", s.id())));
    }
    if !FractionalIdeal::from_ideal(i.clone()).mul(j)?.is_whole()? {
        return Err(Error::Precondition(format!("{i} times {j} is not S")));
    }
    let ts = j.fraction_generators()?;
    for si in i.generators() {
        let si_frac = Fraction::whole(s, si.clone())?;
        for t in &ts {
            if is_unit_fraction(&si_frac.mul(t)?)? {
                let candidate = FgIdeal::principal(s, si.clone())?;
                if !ideal::equals(&candidate, i)? {
                    return Err(Error::Precondition(format!("<{si}> differs from {i}")));
                }
                return Ok(si.clone());
            }
        }
    }
    Err(Error::Precondition(format!("no unit term in {i} times {j}")))
}

/// Generator extraction on `min-plus(k)`, a semilocal weak Gaussian
/// semidomain: picks `b_i` with `a_i b_i` outside the i-th maximal ideal,
/// forms `v = sum u_i b_i` and returns `v^-1`.
pub fn extract_generator_semilocal(i: &FgIdeal) -> Result<Element> {
    let s = i.semiring();
    let Carrier::MinPlus(k) = s.carrier() else {
        return Err(Error::unsupported(s.id(), "semilocal generator extraction (only min-plus(k))"));
    };
    let k = *k;
    require_nonzero(i)?;
    let inv = inverse_candidate(i)?;
    let bs = inv.fraction_generators()?;
    let maximal = maximal_ideals(s, None)?.ideals;
    let mut v: Option<Fraction> = None;
    for (idx, m) in maximal.iter().enumerate() {
        let mut b_i = None;
        'search: for a in i.generators() {
            for b in &bs {
                let ab = Fraction::whole(s, a.clone())?.mul(b)?;
                if let Some(e) = ab.as_element()? {
                    if !m.contains(&e)? {
                        b_i = Some(b.clone());
                        break 'search;
                    }
                }
            }
        }
        let b_i = b_i.ok_or_else(|| Error::Precondition(format!("{i} times its inverse lies in {m}")))?;
        // u_i: outside m_i, inside every other maximal ideal
        let mut u = vec![1u64; k];
        u[idx] = 0;
        let term = Fraction::whole(s, Element::tuple(&u))?.mul(&b_i)?;
        v = Some(match v {
            None => term,
            Some(acc) => acc.add(&term)?,
        });
    }
    let v = v.expect("min-plus(k) has k >= 1 maximal ideals");
    let mut products = Vec::new();
    for a in i.generators() {
        let p = Fraction::whole(s, a.clone())?.mul(&v)?;
        products.push(p.as_element()?.ok_or_else(|| Error::Precondition(format!("v = {v} does not map {i} into S")))?);
    }
    if !FgIdeal::new(s, products)?.is_unit_ideal() {
        return Err(Error::Precondition(format!("v I != S for v = {v}")));
    }
    let g = v.inverse()?.as_element()?.ok_or_else(|| Error::Precondition(format!("inverse of {v} is not in S")))?;
    if !ideal::equals(&FgIdeal::principal(s, g.clone())?, i)? {
        return Err(Error::Precondition(format!("<{g}> differs from {i}")));
    }
    Ok(g)
}

/// An ideal of a localization `S_P`, with the localized semiring given up to
/// isomorphism by a built-in carrier.
#[derive(Debug, Clone)]
pub struct Localized {
    pub semiring: SemiringRef,
    pub ideal: FgIdeal,
}

fn p_adic_valuation(n: &BigUint, p: u64) -> u64 {
    let mut n = n.clone();
    let mut v = 0;
    let p = BigUint::from(p);
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// The extension `I_P` of `I` to the localization at the prime `P`.
///
/// gcd-naturals at `<p>` maps through the p-adic valuation onto
/// `min-plus(1)`; `min-plus(k)` at its i-th maximal ideal projects onto
/// coordinate `i`; the naturals at `<2,3>` and a finite semidomain at `{0}`
/// invert only units, so the localization is the identity.
pub fn localize_ideal(i: &FgIdeal, p: &FgIdeal) -> Result<Localized> {
    let s = i.semiring();
    s.ensure_same(p.semiring())?;
    require_semidomain(s)?;
    if !ideal::is_prime(p)? {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    let identity = || Ok(Localized { semiring: s.clone(), ideal: i.clone() });
    let mp1 = || Semiring::min_plus(1);
    match (s.carrier(), p.canonical()) {
        (Carrier::GcdNaturals, CanonicalForm::Principal(Element::Nat(q))) if !q.is_zero() => {
            let q = q.to_u64().ok_or_else(|| Error::TooLarge(format!("prime {q}")))?;
            let t = mp1()?;
            let g = match i.canonical() {
                CanonicalForm::Principal(Element::Nat(g)) if g.is_zero() => Element::bottom(),
                CanonicalForm::Principal(Element::Nat(g)) => Element::tuple(&[p_adic_valuation(g, q)]),
                _ => unreachable!("gcd-naturals ideals are principal"),
            };
            Ok(Localized { ideal: FgIdeal::principal(&t, g)?, semiring: t })
        }
        (Carrier::MinPlus(_), CanonicalForm::Principal(Element::Trop(Tropical::Finite(e)))) => {
            let coord = e.iter().position(|&x| x == 1).expect("prime ideals of min-plus are coordinate up-sets");
            let t = mp1()?;
            let g = match i.canonical() {
                CanonicalForm::Principal(Element::Trop(Tropical::Finite(g))) => Element::tuple(&[g[coord]]),
                _ => Element::bottom(),
            };
            Ok(Localized { ideal: FgIdeal::principal(&t, g)?, semiring: t })
        }
        (Carrier::Naturals, CanonicalForm::NatPeriodic(m)) if m.period() == 1 => identity(),
        (Carrier::FiniteTable(_) | Carrier::Boolean | Carrier::DivisorLattice(_) | Carrier::PowersetLattice(_), _)
            if p.is_zero_ideal() =>
        {
            identity()
        }
        _ => Err(Error::unsupported(s.id(), format!("localization at {p}"))),
    }
}

fn prime_factors(n: &BigUint) -> Vec<u64> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = 2u64;
    while BigUint::from(d) * d <= n {
        if (&n % d).is_zero() {
            out.push(d);
            while (&n % d).is_zero() {
                n /= d;
            }
        }
        d += 1;
    }
    if n > BigUint::one() {
        out.push(n.to_u64().expect("cofactor below the trial bound squared"));
    }
    out
}

/// The maximal ideals containing `I`. gcd-naturals: one per prime divisor
/// of the generator.
pub fn maximal_ideals_over(i: &FgIdeal) -> Result<Vec<FgIdeal>> {
    let s = i.semiring();
    if let Carrier::GcdNaturals = s.carrier() {
        let Some(Element::Nat(g)) = i.principal_generator() else { unreachable!() };
        if g.is_zero() {
            return Err(Error::Precondition("every maximal ideal contains the zero ideal".into()));
        }
        return prime_factors(&g).into_iter().map(|p| FgIdeal::principal(s, Element::nat(p))).collect();
    }
    let mut out = Vec::new();
    for m in maximal_ideals(s, None)?.ideals {
        if ideal::is_subset(i, &m)? {
            out.push(m);
        }
    }
    Ok(out)
}

/// Whether `I_m` is principal for every listed maximal ideal. The list must
/// include every maximal ideal containing `I`; elsewhere `I_m` is the unit
/// ideal.
pub fn locally_principal_check(i: &FgIdeal, primes: &[FgIdeal]) -> Result<bool> {
    require_nonzero(i)?;
    for m in maximal_ideals_over(i)? {
        if !primes.contains(&m) {
            return Err(Error::Precondition(format!("prime list is missing {m}, which contains {i}")));
        }
    }
    for p in primes {
        if !localize_ideal(i, p)?.ideal.is_principal() {
            return Ok(false);
        }
    }
    Ok(true)
}
