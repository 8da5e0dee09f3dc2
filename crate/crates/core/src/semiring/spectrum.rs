use super::{Carrier, Element, Semiring, SemiringRef};
use crate::error::{Error, Result};
use crate::ideal::{self, FgIdeal};

/// Maximal ideals of a semiring. `partial` is set when the list is a
/// truncation of an infinite spectrum.
#[derive(Debug, Clone)]
pub struct MaximalIdeals {
    pub ideals: Vec<FgIdeal>,
    pub partial: bool,
}

/// Lists the maximal ideals. `gcd-naturals` has one per prime and needs
/// `prime_bound`; the result is then flagged partial.
pub fn maximal_ideals(s: &SemiringRef, prime_bound: Option<u64>) -> Result<MaximalIdeals> {
    let ideals = match s.carrier() {
        // every n >= 2 is 2a + 3b, and 1 is the only unit
        Carrier::Naturals => vec![FgIdeal::new(s, vec![Element::nat(2), Element::nat(3)])?],
        Carrier::MinPlus(k) => (0..*k)
            .map(|i| {
                let mut e = vec![0; *k];
                e[i] = 1;
                FgIdeal::new(s, vec![Element::tuple(&e)])
            })
            .collect::<Result<_>>()?,
        Carrier::GcdNaturals => {
            let bound = prime_bound.ok_or_else(|| {
                Error::unsupported(s.id(), "maximal ideals need a prime bound (one maximal ideal per prime)")
            })?;
            let ideals = primes_up_to(bound)
                .into_iter()
                .map(|p| FgIdeal::new(s, vec![Element::nat(p)]))
                .collect::<Result<_>>()?;
            return Ok(MaximalIdeals { ideals, partial: true });
        }
        Carrier::Fid(_) => return Err(Error::unsupported(s.id(), "maximal ideals of FId over an infinite base")),
        _ => finite_maximal(s)?,
    };
    Ok(MaximalIdeals { ideals, partial: false })
}

fn finite_maximal(s: &SemiringRef) -> Result<Vec<FgIdeal>> {
    let proper: Vec<FgIdeal> = ideal::enumerate_ideals(s)?.into_iter().filter(|i| !i.is_unit_ideal()).collect();
    let mut out = Vec::new();
    for i in &proper {
        let mut maximal = true;
        for j in &proper {
            if i != j && ideal::is_subset(i, j)? {
                maximal = false;
                break;
            }
        }
        if maximal {
            out.push(i.clone());
        }
    }
    Ok(out)
}

/// True iff the semiring has exactly one maximal ideal.
pub fn is_local(s: &SemiringRef) -> Result<bool> {
    if let Carrier::GcdNaturals = s.carrier() {
        // <2> and <3> are distinct maximal ideals
        return Ok(false);
    }
    Ok(maximal_ideals(s, None)?.ideals.len() == 1)
}

pub(crate) fn primes_up_to(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            (i * i..=n).step_by(i).for_each(|j| sieve[j] = false);
        }
        i += 1;
    }
    (2..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

impl Semiring {
    /// Whether the semiring is known to have finitely many maximal ideals.
    pub fn is_semilocal(self: &SemiringRef) -> bool {
        !matches!(self.carrier(), Carrier::GcdNaturals | Carrier::Fid(_))
    }
}
