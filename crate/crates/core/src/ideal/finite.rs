//! Ideal closures in finite table semirings, as bitsets over element indices.

use std::collections::BTreeSet;

use crate::semiring::{FiniteSemiringTable, SemiringRef};

#[inline]
pub(crate) fn bit(i: usize) -> u64 {
    1u64 << i
}

pub(crate) fn members(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

/// Smallest ideal containing `mask`: close under `s*a` and `a+b`.
pub fn closure(t: &FiniteSemiringTable, mask: u64) -> u64 {
    let n = t.order();
    let mut cur = mask | bit(t.zero());
    loop {
        let mut next = cur;
        for a in members(cur) {
            for s in 0..n {
                next |= bit(t.mul(s, a));
            }
            for b in members(cur) {
                next |= bit(t.add(a, b));
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// A small generating set for the ideal `mask`, chosen greedily in index order.
pub fn generators_of(t: &FiniteSemiringTable, mask: u64) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut have = closure(t, 0);
    for a in members(mask) {
        if have & bit(a) == 0 {
            gens.push(a);
            have = closure(t, have | bit(a));
        }
    }
    if gens.is_empty() {
        gens.push(t.zero());
    }
    gens
}

/// Every ideal of the table, as sorted bitsets. Every ideal of a finite
/// semiring is a finite sum of principal ideals, so closing the principal
/// ideals under pairwise sums is complete.
pub fn all_ideals(t: &FiniteSemiringTable) -> Vec<u64> {
    let mut found: BTreeSet<u64> = (0..t.order()).map(|a| closure(t, bit(a))).collect();
    let mut frontier: Vec<u64> = found.iter().copied().collect();
    let principal = frontier.clone();
    while let Some(i) = frontier.pop() {
        for &p in &principal {
            let s = closure(t, i | p);
            if found.insert(s) {
                frontier.push(s);
            }
        }
    }
    found.into_iter().collect()
}

pub(crate) fn all_ideals_principal(s: &SemiringRef) -> bool {
    match s.table() {
        Some(t) => {
            let principal: BTreeSet<u64> = (0..t.order()).map(|a| closure(t, bit(a))).collect();
            all_ideals(t).iter().all(|i| principal.contains(i))
        }
        None => s.flags().principal_friendly,
    }
}
