//! Concrete semirings, element arithmetic and element-level predicates.

mod element;
mod spectrum;
mod table;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

pub use element::{Element, Tropical};
pub use spectrum::{is_local, maximal_ideals, MaximalIdeals};
pub use table::{FiniteSemiringTable, Violation, MAX_TABLE_ORDER};

use crate::error::{Error, Result};
use crate::ideal::{self, FgIdeal};

pub type SemiringRef = Arc<Semiring>;

/// Largest `n` accepted for `powerset-lattice(n)`.
pub const MAX_POWERSET: u32 = 12;

#[derive(Debug, Clone)]
pub enum Carrier {
    Naturals,
    Boolean,
    GcdNaturals,
    MinPlus(usize),
    FiniteTable(Arc<FiniteSemiringTable>),
    DivisorLattice(u64),
    PowersetLattice(u32),
    Fid(SemiringRef),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub finite: bool,
    pub semidomain: bool,
    pub principal_friendly: bool,
    pub membership_exact: bool,
}

/// A semiring descriptor: carrier, capability flags and a stable identifier.
#[derive(Debug)]
pub struct Semiring {
    id: String,
    carrier: Carrier,
    flags: Flags,
    divisors: Vec<u64>,
}

impl fmt::Display for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}

/// Names accepted by [`Semiring::from_name`].
pub const CATALOG: &[&str] = &[
    "naturals (nat)",
    "boolean (bool)",
    "gcd-naturals (gcd)",
    "min-plus(k) (minplus(k))",
    "divisor-lattice(n) (divisors(n))",
    "powerset-lattice(n) (powerset(n))",
    "chain(n)",
    "fid(<name>)",
];

impl Semiring {
    fn build(id: String, carrier: Carrier, flags: Flags) -> SemiringRef {
        Arc::new(Semiring { id, carrier, flags, divisors: Vec::new() })
    }

    pub fn naturals() -> SemiringRef {
        Self::build(
            "naturals".into(),
            Carrier::Naturals,
            Flags { finite: false, semidomain: true, principal_friendly: false, membership_exact: true },
        )
    }

    pub fn boolean() -> SemiringRef {
        Self::build(
            "boolean".into(),
            Carrier::Boolean,
            Flags { finite: true, semidomain: true, principal_friendly: true, membership_exact: true },
        )
    }

    pub fn gcd_naturals() -> SemiringRef {
        Self::build(
            "gcd-naturals".into(),
            Carrier::GcdNaturals,
            Flags { finite: false, semidomain: true, principal_friendly: true, membership_exact: true },
        )
    }

    pub fn min_plus(k: usize) -> Result<SemiringRef> {
        if k == 0 {
            return Err(Error::Precondition("min-plus(k) needs k >= 1".into()));
        }
        Ok(Self::build(
            format!("min-plus({k})"),
            Carrier::MinPlus(k),
            Flags { finite: false, semidomain: true, principal_friendly: true, membership_exact: true },
        ))
    }

    pub fn divisor_lattice(n: u64) -> Result<SemiringRef> {
        if n < 2 {
            return Err(Error::Precondition("divisor-lattice(n) needs n >= 2 so that zero != one".into()));
        }
        let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
        let flags =
            Flags { finite: true, semidomain: divisors.len() == 2, principal_friendly: true, membership_exact: true };
        Ok(Arc::new(Semiring {
            id: format!("divisor-lattice({n})"),
            carrier: Carrier::DivisorLattice(n),
            flags,
            divisors,
        }))
    }

    pub fn powerset_lattice(n: u32) -> Result<SemiringRef> {
        if n == 0 || n > MAX_POWERSET {
            return Err(Error::Precondition(format!("powerset-lattice(n) needs 1 <= n <= {MAX_POWERSET}")));
        }
        Ok(Self::build(
            format!("powerset-lattice({n})"),
            Carrier::PowersetLattice(n),
            Flags { finite: true, semidomain: n == 1, principal_friendly: true, membership_exact: true },
        ))
    }

    /// Wraps a table. The table must satisfy the axioms; flags are computed
    /// by exhaustive scans.
    pub fn finite_table(id: impl Into<String>, table: FiniteSemiringTable) -> Result<SemiringRef> {
        if let Some(v) = table.verify_axioms().first() {
            return Err(Error::MalformedTable(format!("axiom `{}` fails at {:?}", v.axiom, v.witness)));
        }
        let n = table.order();
        let semidomain = (0..n).filter(|&a| a != table.zero()).all(|a| table_is_mc(&table, a));
        let mut s = Semiring {
            id: id.into(),
            carrier: Carrier::FiniteTable(Arc::new(table)),
            flags: Flags { finite: true, semidomain, principal_friendly: false, membership_exact: true },
            divisors: Vec::new(),
        };
        let tmp =
            Arc::new(Semiring { id: s.id.clone(), carrier: s.carrier.clone(), flags: s.flags, divisors: Vec::new() });
        s.flags.principal_friendly = ideal::finite::all_ideals_principal(&tmp);
        Ok(Arc::new(s))
    }

    /// The 3-element chain and friends, as tables.
    pub fn chain(n: usize) -> Result<SemiringRef> {
        Self::finite_table(format!("chain({n})"), FiniteSemiringTable::chain(n)?)
    }

    /// The semiring of finitely generated ideals over an infinite base. Finite
    /// bases go through [`crate::suites::build_fid`], which emits a table.
    pub fn fid(base: SemiringRef) -> SemiringRef {
        let prufer = base.is_prufer_known();
        Self::build(
            format!("fid({})", base.id),
            Carrier::Fid(base),
            Flags { finite: false, semidomain: prufer, principal_friendly: prufer, membership_exact: prufer },
        )
    }

    /// Looks up a built-in by name, e.g. `nat`, `min-plus(2)`, `fid(gcd)`.
    pub fn from_name(name: &str) -> Result<SemiringRef> {
        let name = name.trim();
        let unknown = || Error::UnknownSemiring(name.to_string());
        let arg = |prefixes: &[&str]| -> Option<&str> {
            prefixes
                .iter()
                .find_map(|p| name.strip_prefix(p).and_then(|r| r.strip_prefix('(')).and_then(|r| r.strip_suffix(')')))
        };
        match name {
            "naturals" | "nat" | "N" => return Ok(Self::naturals()),
            "boolean" | "bool" | "B" => return Ok(Self::boolean()),
            "gcd-naturals" | "gcd" => return Ok(Self::gcd_naturals()),
            _ => {}
        }
        if let Some(a) = arg(&["min-plus", "minplus"]) {
            return Self::min_plus(a.trim().parse().map_err(|_| unknown())?);
        }
        if let Some(a) = arg(&["divisor-lattice", "divisors"]) {
            return Self::divisor_lattice(a.trim().parse().map_err(|_| unknown())?);
        }
        if let Some(a) = arg(&["powerset-lattice", "powerset"]) {
            return Self::powerset_lattice(a.trim().parse().map_err(|_| unknown())?);
        }
        if let Some(a) = arg(&["chain"]) {
            return Self::chain(a.trim().parse().map_err(|_| unknown())?);
        }
        if let Some(a) = arg(&["fid"]) {
            let base = Self::from_name(a)?;
            if base.flags.finite {
                return crate::suites::build_fid(&base).map(|f| f.semiring);
            }
            return Ok(Self::fid(base));
        }
        Err(unknown())
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn table(&self) -> Option<&FiniteSemiringTable> {
        match &self.carrier {
            Carrier::FiniteTable(t) => Some(t),
            _ => None,
        }
    }

    pub fn fid_base(&self) -> Option<&SemiringRef> {
        match &self.carrier {
            Carrier::Fid(b) => Some(b),
            _ => None,
        }
    }

    pub fn same(&self, other: &Semiring) -> bool {
        self.id == other.id
    }

    pub(crate) fn ensure_same(&self, other: &Semiring) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::CarrierMismatch(format!("{} vs {}", self.id, other.id)))
        }
    }

    /// Every nonzero finitely generated ideal is known to be invertible:
    /// principal-friendly semidomains (MC generators), finite semidomains
    /// (which are semifields) and FId over such a base.
    pub fn is_prufer_known(&self) -> bool {
        match &self.carrier {
            Carrier::Fid(b) => b.is_prufer_known(),
            Carrier::Naturals => false,
            _ => self.flags.semidomain && (self.flags.principal_friendly || self.flags.finite),
        }
    }

    /// Additive idempotence (`a + a = a`) holds for the whole carrier.
    pub fn is_additively_idempotent(&self) -> bool {
        match &self.carrier {
            Carrier::Naturals => false,
            Carrier::FiniteTable(t) => (0..t.order()).all(|a| t.add(a, a) == a),
            _ => true,
        }
    }

    pub fn zero(&self) -> Element {
        match &self.carrier {
            Carrier::Naturals | Carrier::GcdNaturals => Element::Nat(BigUint::zero()),
            Carrier::Boolean => Element::Bit(false),
            Carrier::MinPlus(_) => Element::bottom(),
            Carrier::FiniteTable(t) => Element::Index(t.zero()),
            Carrier::DivisorLattice(_) => Element::Divisor(1),
            Carrier::PowersetLattice(_) => Element::Subset(0),
            Carrier::Fid(b) => Element::ideal(FgIdeal::zero(b)),
        }
    }

    pub fn one(&self) -> Element {
        match &self.carrier {
            Carrier::Naturals | Carrier::GcdNaturals => Element::Nat(BigUint::one()),
            Carrier::Boolean => Element::Bit(true),
            Carrier::MinPlus(k) => Element::tuple(&vec![0; *k]),
            Carrier::FiniteTable(t) => Element::Index(t.one()),
            Carrier::DivisorLattice(n) => Element::Divisor(*n),
            Carrier::PowersetLattice(n) => Element::Subset(full_mask(*n)),
            Carrier::Fid(b) => Element::ideal(FgIdeal::unit(b)),
        }
    }

    pub fn is_zero(&self, a: &Element) -> bool {
        *a == self.zero()
    }

    /// Checks that `a` is an element of this carrier.
    pub fn check(&self, a: &Element) -> Result<()> {
        let ok = match (&self.carrier, a) {
            (Carrier::Naturals | Carrier::GcdNaturals, Element::Nat(_)) => true,
            (Carrier::Boolean, Element::Bit(_)) => true,
            (Carrier::MinPlus(_), Element::Trop(Tropical::Bottom)) => true,
            (Carrier::MinPlus(k), Element::Trop(Tropical::Finite(c))) => c.len() == *k,
            (Carrier::FiniteTable(t), Element::Index(i)) => *i < t.order(),
            (Carrier::DivisorLattice(n), Element::Divisor(d)) => *d >= 1 && n % d == 0,
            (Carrier::PowersetLattice(n), Element::Subset(m)) => m & !full_mask(*n) == 0,
            (Carrier::Fid(b), Element::Ideal(i)) => i.semiring().same(b),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::NotInCarrier { element: a.to_string(), semiring: self.id.clone() })
        }
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (&self.carrier, a, b) {
            (Carrier::Naturals, Element::Nat(x), Element::Nat(y)) => Element::Nat(x + y),
            (Carrier::GcdNaturals, Element::Nat(x), Element::Nat(y)) => Element::Nat(x.gcd(y)),
            (Carrier::Boolean, Element::Bit(x), Element::Bit(y)) => Element::Bit(*x || *y),
            (Carrier::MinPlus(_), Element::Trop(x), Element::Trop(y)) => Element::Trop(match (x, y) {
                (Tropical::Bottom, t) | (t, Tropical::Bottom) => t.clone(),
                (Tropical::Finite(u), Tropical::Finite(v)) => {
                    Tropical::Finite(u.iter().zip(v).map(|(p, q)| *p.min(q)).collect())
                }
            }),
            (Carrier::FiniteTable(t), Element::Index(x), Element::Index(y)) => Element::Index(t.add(*x, *y)),
            (Carrier::DivisorLattice(_), Element::Divisor(x), Element::Divisor(y)) => Element::Divisor(x.lcm(y)),
            (Carrier::PowersetLattice(_), Element::Subset(x), Element::Subset(y)) => Element::Subset(x | y),
            (Carrier::Fid(_), Element::Ideal(x), Element::Ideal(y)) => Element::ideal(ideal::add_ideals(x, y)?),
            _ => unreachable!("checked above"),
        })
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (&self.carrier, a, b) {
            (Carrier::Naturals | Carrier::GcdNaturals, Element::Nat(x), Element::Nat(y)) => Element::Nat(x * y),
            (Carrier::Boolean, Element::Bit(x), Element::Bit(y)) => Element::Bit(*x && *y),
            (Carrier::MinPlus(_), Element::Trop(x), Element::Trop(y)) => Element::Trop(match (x, y) {
                (Tropical::Bottom, _) | (_, Tropical::Bottom) => Tropical::Bottom,
                (Tropical::Finite(u), Tropical::Finite(v)) => Tropical::Finite(
                    u.iter()
                        .zip(v)
                        .map(|(p, q)| p.checked_add(*q).ok_or_else(|| Error::Overflow(self.id.clone())))
                        .collect::<Result<_>>()?,
                ),
            }),
            (Carrier::FiniteTable(t), Element::Index(x), Element::Index(y)) => Element::Index(t.mul(*x, *y)),
            (Carrier::DivisorLattice(_), Element::Divisor(x), Element::Divisor(y)) => Element::Divisor(x.gcd(y)),
            (Carrier::PowersetLattice(_), Element::Subset(x), Element::Subset(y)) => Element::Subset(x & y),
            (Carrier::Fid(_), Element::Ideal(x), Element::Ideal(y)) => Element::ideal(ideal::mul_ideals(x, y)?),
            _ => unreachable!("checked above"),
        })
    }

    /// Sum of a nonempty list; the zero element for an empty one.
    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a Element>) -> Result<Element> {
        items.into_iter().try_fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    pub fn pow(&self, a: &Element, e: u32) -> Result<Element> {
        (0..e).try_fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Multiplicative cancellability: `ab = ac` implies `b = c`.
    pub fn is_mc(&self, a: &Element) -> Result<bool> {
        self.check(a)?;
        Ok(match (&self.carrier, a) {
            (Carrier::Naturals | Carrier::GcdNaturals, Element::Nat(n)) => !n.is_zero(),
            (Carrier::MinPlus(_), Element::Trop(t)) => *t != Tropical::Bottom,
            (Carrier::Boolean, Element::Bit(b)) => *b,
            (Carrier::FiniteTable(t), Element::Index(i)) => table_is_mc(t, *i),
            // a /\ a = a /\ top, so only the top element cancels
            (Carrier::DivisorLattice(_) | Carrier::PowersetLattice(_), _) => *a == self.one(),
            (Carrier::Fid(base), Element::Ideal(i)) => return fid_is_mc(base, i),
            _ => unreachable!("checked above"),
        })
    }

    pub fn is_unit(&self, a: &Element) -> Result<bool> {
        self.check(a)?;
        Ok(match (&self.carrier, a) {
            (Carrier::FiniteTable(t), Element::Index(i)) => (0..t.order()).any(|b| t.mul(*i, b) == t.one()),
            // IJ is contained in I, so IJ = S forces I = S
            (Carrier::Fid(_), Element::Ideal(i)) => i.is_unit_ideal(),
            _ => *a == self.one(),
        })
    }

    /// All elements of a finite carrier, in carrier order.
    pub fn elements(&self) -> Option<Vec<Element>> {
        match &self.carrier {
            Carrier::Boolean => Some(vec![Element::Bit(false), Element::Bit(true)]),
            Carrier::FiniteTable(t) => Some((0..t.order()).map(Element::Index).collect()),
            Carrier::DivisorLattice(_) => Some(self.divisors.iter().map(|&d| Element::Divisor(d)).collect()),
            Carrier::PowersetLattice(n) => {
                let mut v: Vec<Element> = (0..=full_mask(*n)).map(Element::Subset).collect();
                v.sort();
                Some(v)
            }
            _ => None,
        }
    }

    /// Number of elements of a finite carrier.
    pub fn order(&self) -> Option<usize> {
        match &self.carrier {
            Carrier::Boolean => Some(2),
            Carrier::FiniteTable(t) => Some(t.order()),
            Carrier::DivisorLattice(_) => Some(self.divisors.len()),
            Carrier::PowersetLattice(n) => Some(1 << n),
            _ => None,
        }
    }
}

pub(crate) fn full_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn table_is_mc(t: &FiniteSemiringTable, a: usize) -> bool {
    let n = t.order();
    let mut seen = vec![false; n];
    for b in 0..n {
        let p = t.mul(a, b);
        if seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

/// Bound on generators used when searching for a cancellation failure in
/// FId over a base without a Prüfer classification.
const FID_MC_SCAN_BOUND: u64 = 6;

fn fid_is_mc(base: &SemiringRef, i: &FgIdeal) -> Result<bool> {
    if i.is_zero_ideal() {
        return Ok(false);
    }
    if base.is_prufer_known() || i.principal_generator().is_some_and(|g| base.is_mc(&g).unwrap_or(false)) {
        // invertible ideals are cancellation ideals
        return Ok(true);
    }
    if !matches!(base.carrier, Carrier::Naturals) {
        return Err(Error::unsupported(&base.id, "cancellation test in FId"));
    }
    // bounded search for IB = IC with B != C among small 1- and 2-generated ideals
    let mut pool = Vec::new();
    for a in 1..=FID_MC_SCAN_BOUND {
        pool.push(FgIdeal::new(base, vec![Element::nat(a)])?);
        for b in a + 1..=FID_MC_SCAN_BOUND {
            pool.push(FgIdeal::new(base, vec![Element::nat(a), Element::nat(b)])?);
        }
    }
    let products = pool.iter().map(|b| ideal::mul_ideals(i, b)).collect::<Result<Vec<_>>>()?;
    for x in 0..pool.len() {
        for y in x + 1..pool.len() {
            if products[x] == products[y] && pool[x] != pool[y] {
                return Ok(false);
            }
        }
    }
    Err(Error::Undecided(format!("no cancellation failure for {i} among ideals generated below {FID_MC_SCAN_BOUND}")))
}
