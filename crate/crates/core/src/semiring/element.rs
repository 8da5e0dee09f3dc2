use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigUint;

use crate::ideal::FgIdeal;

/// A min-plus value: `Bottom` is the additive identity (+infinity).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tropical {
    Bottom,
    Finite(Vec<u64>),
}

/// An element of one of the built-in carriers. Which variants are valid
/// depends on the semiring; see [`crate::Semiring::check`].
#[derive(Debug, Clone)]
pub enum Element {
    /// naturals, and gcd-naturals where `n` stands for the ideal `nZ`
    Nat(BigUint),
    Bit(bool),
    Trop(Tropical),
    /// index into a finite table
    Index(usize),
    /// divisor of the divisor-lattice modulus
    Divisor(u64),
    /// subset of `{1..n}` as a bitmask, bit `i-1` for member `i`
    Subset(u64),
    /// finitely generated ideal of the base semiring of an `fid` carrier
    Ideal(Arc<FgIdeal>),
}

impl Element {
    pub fn nat(n: u64) -> Self {
        Element::Nat(BigUint::from(n))
    }

    pub fn tuple(coords: &[u64]) -> Self {
        Element::Trop(Tropical::Finite(coords.to_vec()))
    }

    pub fn bottom() -> Self {
        Element::Trop(Tropical::Bottom)
    }

    pub fn subset(members: &[u32]) -> Self {
        Element::Subset(members.iter().fold(0u64, |m, &i| m | (1 << (i - 1))))
    }

    pub fn ideal(i: FgIdeal) -> Self {
        Element::Ideal(Arc::new(i))
    }

    pub fn as_nat(&self) -> Option<&BigUint> {
        match self {
            Element::Nat(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_ideal(&self) -> Option<&FgIdeal> {
        match self {
            Element::Ideal(i) => Some(i),
            _ => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Element::Nat(_) => 0,
            Element::Bit(_) => 1,
            Element::Trop(_) => 2,
            Element::Index(_) => 3,
            Element::Divisor(_) => 4,
            Element::Subset(_) => 5,
            Element::Ideal(_) => 6,
        }
    }
}

fn subset_members(mask: u64) -> Vec<u32> {
    (0..64).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Element::Nat(a), Element::Nat(b)) => a == b,
            (Element::Bit(a), Element::Bit(b)) => a == b,
            (Element::Trop(a), Element::Trop(b)) => a == b,
            (Element::Index(a), Element::Index(b)) => a == b,
            (Element::Divisor(a), Element::Divisor(b)) => a == b,
            (Element::Subset(a), Element::Subset(b)) => a == b,
            (Element::Ideal(a), Element::Ideal(b)) => a.canonical() == b.canonical(),
            _ => false,
        }
    }
}

impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rank().hash(state);
        match self {
            Element::Nat(n) => n.hash(state),
            Element::Bit(b) => b.hash(state),
            Element::Trop(t) => t.hash(state),
            Element::Index(i) => i.hash(state),
            Element::Divisor(d) => d.hash(state),
            Element::Subset(s) => s.hash(state),
            Element::Ideal(i) => i.canonical().key().hash(state),
        }
    }
}

impl Ord for Element {
    /// Carrier order used for generator normalization: integers numerically,
    /// tuples lexicographically (bottom first), subsets by size then members.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Element::Nat(a), Element::Nat(b)) => a.cmp(b),
            (Element::Bit(a), Element::Bit(b)) => a.cmp(b),
            (Element::Trop(a), Element::Trop(b)) => a.cmp(b),
            (Element::Index(a), Element::Index(b)) => a.cmp(b),
            (Element::Divisor(a), Element::Divisor(b)) => a.cmp(b),
            (Element::Subset(a), Element::Subset(b)) => {
                a.count_ones().cmp(&b.count_ones()).then_with(|| subset_members(*a).cmp(&subset_members(*b)))
            }
            (Element::Ideal(a), Element::Ideal(b)) => a.canonical().key().cmp(&b.canonical().key()),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Nat(n) => write!(f, "{n}"),
            Element::Bit(b) => write!(f, "{}", u8::from(*b)),
            Element::Trop(Tropical::Bottom) => f.write_str("bottom"),
            Element::Trop(Tropical::Finite(c)) => write_tuple(f, c.iter()),
            Element::Index(i) => write!(f, "{i}"),
            Element::Divisor(d) => write!(f, "{d}"),
            Element::Subset(0) => f.write_str("bottom"),
            Element::Subset(m) => write_tuple(f, subset_members(*m).iter()),
            Element::Ideal(i) => write!(f, "{i}"),
        }
    }
}

fn write_tuple<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: impl Iterator<Item = T>) -> fmt::Result {
    f.write_str("(")?;
    for (k, x) in items.enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}
