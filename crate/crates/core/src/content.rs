//! Polynomials over a semiring, content ideals and the Gaussian and
//! Dedekind–Mertens checks.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ideal::{self, FgIdeal};
use crate::semiring::{Carrier, Element, SemiringRef};

/// Dense polynomial; `coeffs[i]` is the coefficient of `X^i` and trailing
/// zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone)]
pub struct Polynomial {
    semiring: SemiringRef,
    coeffs: Vec<Element>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.semiring.same(&other.semiring) && self.coeffs == other.coeffs
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn new(s: &SemiringRef, coeffs: Vec<Element>) -> Result<Self> {
        for c in &coeffs {
            s.check(c)?;
        }
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| s.is_zero(c)) {
            coeffs.pop();
        }
        Ok(Polynomial { semiring: s.clone(), coeffs })
    }

    pub fn semiring(&self) -> &SemiringRef {
        &self.semiring
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::Precondition("the zero polynomial has no content".into()))
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("poly[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn poly_mul(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.semiring.ensure_same(&g.semiring)?;
    let s = &f.semiring;
    if f.is_zero() || g.is_zero() {
        return Polynomial::new(s, Vec::new());
    }
    let mut out = vec![s.zero(); f.coeffs.len() + g.coeffs.len() - 1];
    for (i, a) in f.coeffs.iter().enumerate() {
        for (j, b) in g.coeffs.iter().enumerate() {
            out[i + j] = s.add(&out[i + j], &s.mul(a, b)?)?;
        }
    }
    Polynomial::new(s, out)
}

/// The ideal generated by the coefficients.
pub fn content(f: &Polynomial) -> Result<FgIdeal> {
    f.nonzero()?;
    FgIdeal::new(&f.semiring, f.coeffs.clone())
}

/// Content of a product, which is zero when `fg` vanishes through zero
/// divisors.
fn product_content(f: &Polynomial, g: &Polynomial) -> Result<FgIdeal> {
    let fg = poly_mul(f, g)?;
    if fg.is_zero() {
        return Ok(FgIdeal::zero(&fg.semiring));
    }
    content(&fg)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairOutcome {
    pub holds: bool,
    /// an element of one side missing from the other
    pub witness: Option<String>,
}

/// `c(fg) = c(f) c(g)`. The inclusion `c(fg)` inside `c(f) c(g)` always
/// holds; a failure of it is reported as an error.
pub fn gaussian_pair(f: &Polynomial, g: &Polynomial) -> Result<PairOutcome> {
    f.nonzero()?;
    g.nonzero()?;
    let lhs = product_content(f, g)?;
    let rhs = ideal::mul_ideals(&content(f)?, &content(g)?)?;
    if !ideal::is_subset(&lhs, &rhs)? {
        return Err(Error::Eval(format!("c(fg) is not inside c(f)c(g) for f = {f}, g = {g}")));
    }
    for x in rhs.effective_generators() {
        if !lhs.contains(&x)? {
            return Ok(PairOutcome { holds: false, witness: Some(x.to_string()) });
        }
    }
    Ok(PairOutcome { holds: true, witness: None })
}

/// `c(f)^(m+1) c(g) = c(f)^m c(fg)` with `m = deg g`.
pub fn dm_pair(f: &Polynomial, g: &Polynomial) -> Result<PairOutcome> {
    f.nonzero()?;
    g.nonzero()?;
    let m = g.degree().expect("nonzero") as u32;
    let cf = content(f)?;
    let cfm = ideal::pow_ideal(&cf, m)?;
    let lhs = ideal::mul_ideals(&ideal::mul_ideals(&cfm, &cf)?, &content(g)?)?;
    let rhs = ideal::mul_ideals(&cfm, &product_content(f, g)?)?;
    let witness = ideal::difference_witness(&lhs, &rhs)?;
    Ok(PairOutcome { holds: witness.is_none(), witness: witness.map(|w| w.to_string()) })
}

/// `ab` lies in the ideal `(a^2, b^2)`.
pub fn ab_in_squares(s: &SemiringRef, a: &Element, b: &Element) -> Result<bool> {
    let sq = FgIdeal::new(s, vec![s.mul(a, a)?, s.mul(b, b)?])?;
    sq.contains(&s.mul(a, b)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchKind {
    Gaussian,
    Dm,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    pub found: bool,
    pub f: Option<Polynomial>,
    pub g: Option<Polynomial>,
    pub witness: Option<String>,
    pub checked_count: u64,
}

/// Coefficients used by the searches: integers up to `bound`, tuples with
/// coordinates up to `bound` plus bottom, or every element of a finite carrier.
pub fn coefficient_range(s: &SemiringRef, bound: u64) -> Result<Vec<Element>> {
    if let Some(els) = s.elements() {
        return Ok(els);
    }
    match s.carrier() {
        Carrier::Naturals | Carrier::GcdNaturals => Ok((0..=bound).map(Element::nat).collect()),
        Carrier::MinPlus(k) => {
            let mut out = vec![Element::bottom()];
            let mut cur = vec![0u64; *k];
            loop {
                out.push(Element::tuple(&cur));
                let Some(p) = (0..*k).rev().find(|&p| cur[p] < bound) else { break };
                cur[p] += 1;
                cur[p + 1..].iter_mut().for_each(|x| *x = 0);
            }
            Ok(out)
        }
        _ => Err(Error::unsupported(s.id(), "coefficient enumeration")),
    }
}

/// All polynomials of exact degree `d` over `range`, in lexicographic order
/// of coefficient tuples.
fn polys_of_degree(s: &SemiringRef, range: &[Element], d: usize) -> Result<Vec<Polynomial>> {
    let zero = s.zero();
    let nonzero: Vec<&Element> = range.iter().filter(|c| **c != zero).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; d + 1];
    loop {
        let mut coeffs: Vec<Element> = idx[..d].iter().map(|&i| range[i].clone()).collect();
        coeffs.push(nonzero[idx[d]].clone());
        out.push(Polynomial::new(s, coeffs)?);
        let mut p = d as isize;
        loop {
            if p < 0 {
                return Ok(out);
            }
            let u = p as usize;
            let lim = if u == d { nonzero.len() } else { range.len() };
            idx[u] += 1;
            if idx[u] < lim {
                break;
            }
            idx[u] = 0;
            p -= 1;
        }
    }
}

/// First failing pair in the order (deg f + deg g, deg f, coefficients of f,
/// coefficients of g). The Gaussian condition is symmetric in `f` and `g`,
/// so that search only visits pairs with `f` not after `g`, which keeps the
/// order-minimal counterexample; `checked_count` counts visited pairs.
pub fn search(s: &SemiringRef, kind: SearchKind, max_deg: usize, coeff_bound: u64) -> Result<SearchOutcome> {
    let range = coefficient_range(s, coeff_bound)?;
    if range.iter().all(|c| s.is_zero(c)) {
        return Err(Error::Precondition("coefficient range has no nonzero element".into()));
    }
    let by_deg = (0..=max_deg).map(|d| polys_of_degree(s, &range, d)).collect::<Result<Vec<_>>>()?;
    let check = |f: &Polynomial, g: &Polynomial| match kind {
        SearchKind::Gaussian => gaussian_pair(f, g),
        SearchKind::Dm => dm_pair(f, g),
    };
    let symmetric = kind == SearchKind::Gaussian;
    let mut checked = 0u64;
    for total in 0..=2 * max_deg {
        for df in 0..=total.min(max_deg) {
            let dg = total - df;
            if dg > max_deg || (symmetric && df > dg) {
                continue;
            }
            let (fs, gs) = (&by_deg[df], &by_deg[dg]);
            let start = |fi: usize| if symmetric && df == dg { fi } else { 0 };
            let hit = (0..fs.len()).into_par_iter().map(|fi| -> Result<Option<(usize, usize, PairOutcome)>> {
                for (gi, g) in gs.iter().enumerate().skip(start(fi)) {
                    let out = check(&fs[fi], g)?;
                    if !out.holds {
                        return Ok(Some((fi, gi, out)));
                    }
                }
                Ok(None)
            });
            let hit = hit.find_map_first(|r| match r {
                Ok(None) => None,
                other => Some(other),
            });
            match hit {
                None => {
                    checked += (0..fs.len()).map(|fi| (gs.len() - start(fi)) as u64).sum::<u64>();
                }
                Some(r) => {
                    let (fi, gi, out) = r?.expect("only hits are kept");
                    checked += (0..fi).map(|x| (gs.len() - start(x)) as u64).sum::<u64>();
                    checked += (gi - start(fi) + 1) as u64;
                    return Ok(SearchOutcome {
                        found: true,
                        f: Some(fs[fi].clone()),
                        g: Some(gs[gi].clone()),
                        witness: out.witness,
                        checked_count: checked,
                    });
                }
            }
        }
    }
    Ok(SearchOutcome { found: false, f: None, g: None, witness: None, checked_count: checked })
}

pub fn gaussian_search(s: &SemiringRef, max_deg: usize, coeff_bound: u64) -> Result<SearchOutcome> {
    search(s, SearchKind::Gaussian, max_deg, coeff_bound)
}

pub fn dm_search(s: &SemiringRef, max_deg: usize, coeff_bound: u64) -> Result<SearchOutcome> {
    search(s, SearchKind::Dm, max_deg, coeff_bound)
}
