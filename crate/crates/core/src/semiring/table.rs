//! Finite semirings given by explicit operation tables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order a table may have; ideal closures are stored as `u64` bitsets.
pub const MAX_TABLE_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteSemiringTable {
    order: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    zero: usize,
    one: usize,
}

/// One failed axiom together with the elements that witness the failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<usize>,
}

impl FiniteSemiringTable {
    /// Builds a table after checking dimensions and index ranges. Axioms are
    /// not checked here; see [`FiniteSemiringTable::verify_axioms`].
    pub fn new(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>, zero: usize, one: usize) -> Result<Self> {
        let order = add.len();
        if order < 2 {
            return Err(Error::MalformedTable(format!("order must be at least 2, got {order}")));
        }
        if order > MAX_TABLE_ORDER {
            return Err(Error::MalformedTable(format!("order {order} exceeds {MAX_TABLE_ORDER}")));
        }
        if mul.len() != order {
            return Err(Error::MalformedTable(format!(
                "addition has {order} rows but multiplication has {}",
                mul.len()
            )));
        }
        for (name, t) in [("addition", &add), ("multiplication", &mul)] {
            for (i, row) in t.iter().enumerate() {
                if row.len() != order {
                    return Err(Error::MalformedTable(format!(
                        "{name} row {i} has {} entries, expected {order}",
                        row.len()
                    )));
                }
                if let Some(&v) = row.iter().find(|&&v| v >= order) {
                    return Err(Error::MalformedTable(format!("{name} row {i} has out-of-range entry {v}")));
                }
            }
        }
        if zero >= order || one >= order {
            return Err(Error::MalformedTable("zero/one index out of range".into()));
        }
        Ok(FiniteSemiringTable { order, add, mul, zero, one })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    /// Parses the text format:
    ///
    /// ```text
    /// order n
    /// zero i
    /// one j
    /// <n addition rows>
    /// <n multiplication rows>
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let mut header = |key: &str| -> Result<usize> {
            let line = lines.next().ok_or_else(|| Error::MalformedTable(format!("missing `{key}` line")))?;
            let mut parts = line.split_whitespace();
            if parts.next() != Some(key) {
                return Err(Error::MalformedTable(format!("expected `{key} <int>`, got `{line}`")));
            }
            let v = parts
                .next()
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::MalformedTable(format!("bad value in `{line}`")))?;
            if parts.next().is_some() {
                return Err(Error::MalformedTable(format!("trailing tokens in `{line}`")));
            }
            Ok(v)
        };
        let order = header("order")?;
        let zero = header("zero")?;
        let one = header("one")?;
        if order > MAX_TABLE_ORDER {
            return Err(Error::MalformedTable(format!("order {order} exceeds {MAX_TABLE_ORDER}")));
        }
        let mut rows = Vec::with_capacity(2 * order);
        for line in lines {
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| Error::MalformedTable(format!("bad entry `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.len() != 2 * order {
            return Err(Error::MalformedTable(format!("expected {} table rows, found {}", 2 * order, rows.len())));
        }
        let mul = rows.split_off(order);
        Self::new(rows, mul, zero, one)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("order {}\nzero {}\none {}\n", self.order, self.zero, self.one);
        for row in self.add.iter().chain(self.mul.iter()) {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    /// Exhaustively checks the commutative-semiring axioms. The result lists the
    /// first witness found for every violated axiom, in a fixed order.
    pub fn verify_axioms(&self) -> Vec<Violation> {
        let n = self.order;
        let (z, o) = (self.zero, self.one);
        let mut out = Vec::new();
        let mut report = |axiom: &str, witness: Option<Vec<usize>>| {
            if let Some(witness) = witness {
                out.push(Violation { axiom: axiom.to_string(), witness });
            }
        };
        report("zero-one-distinct", (z == o).then(|| vec![z]));
        let pairs = || (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));
        let triples = || pairs().flat_map(move |(a, b)| (0..n).map(move |c| (a, b, c)));

        report("add-commutative", pairs().find(|&(a, b)| self.add(a, b) != self.add(b, a)).map(|(a, b)| vec![a, b]));
        report(
            "add-associative",
            triples()
                .find(|&(a, b, c)| self.add(self.add(a, b), c) != self.add(a, self.add(b, c)))
                .map(|(a, b, c)| vec![a, b, c]),
        );
        report("add-identity", (0..n).find(|&a| self.add(z, a) != a || self.add(a, z) != a).map(|a| vec![a]));
        report("mul-commutative", pairs().find(|&(a, b)| self.mul(a, b) != self.mul(b, a)).map(|(a, b)| vec![a, b]));
        report(
            "mul-associative",
            triples()
                .find(|&(a, b, c)| self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)))
                .map(|(a, b, c)| vec![a, b, c]),
        );
        report("mul-identity", (0..n).find(|&a| self.mul(o, a) != a || self.mul(a, o) != a).map(|a| vec![a]));
        report(
            "distributive",
            triples()
                .find(|&(a, b, c)| self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)))
                .map(|(a, b, c)| vec![a, b, c]),
        );
        report("absorbing", (0..n).find(|&a| self.mul(z, a) != z || self.mul(a, z) != z).map(|a| vec![a]));
        out
    }

    /// Relabels elements by `perm` (old index -> new index).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.order;
        let mut add = vec![vec![0; n]; n];
        let mut mul = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                add[perm[a]][perm[b]] = perm[self.add[a][b]];
                mul[perm[a]][perm[b]] = perm[self.mul[a][b]];
            }
        }
        FiniteSemiringTable { order: n, add, mul, zero: perm[self.zero], one: perm[self.one] }
    }

    /// Row-major encoding of both tables, used to compare labelings.
    pub fn encoding(&self) -> Vec<usize> {
        self.add.iter().chain(self.mul.iter()).flatten().copied().collect()
    }

    pub fn boolean() -> Self {
        Self::new(vec![vec![0, 1], vec![1, 1]], vec![vec![0, 0], vec![0, 1]], 0, 1).expect("valid boolean table")
    }

    /// The chain `0 < 1 < ... < n-1` as a distributive lattice (join = max,
    /// meet = min), relabeled so that the top element has index 1.
    pub fn chain(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::MalformedTable("a chain needs at least two elements".into()));
        }
        // label(rank): bottom -> 0, top -> 1, middle ranks -> 2..
        let label = |r: usize| {
            if r == 0 {
                0
            } else if r == n - 1 {
                1
            } else {
                r + 1
            }
        };
        let mut rank = vec![0; n];
        for r in 0..n {
            rank[label(r)] = r;
        }
        let add = (0..n).map(|a| (0..n).map(|b| label(rank[a].max(rank[b]))).collect()).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| label(rank[a].min(rank[b]))).collect()).collect();
        Self::new(add, mul, 0, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_table_is_a_semiring() {
        assert!(FiniteSemiringTable::boolean().verify_axioms().is_empty());
    }

    #[test]
    fn broken_absorption_is_reported() {
        let t = FiniteSemiringTable::new(vec![vec![0, 1], vec![1, 1]], vec![vec![0, 1], vec![1, 1]], 0, 1).unwrap();
        let v = t.verify_axioms();
        assert!(v.contains(&Violation { axiom: "absorbing".into(), witness: vec![1] }), "{v:?}");
    }

    #[test]
    fn single_cell_mutation_of_chain_breaks_axioms() {
        let t = FiniteSemiringTable::chain(3).unwrap();
        assert!(t.verify_axioms().is_empty());
        // off-diagonal changes break commutativity at the very least; the
        // diagonal cell m*m -> 0 yields another valid semiring and is skipped
        for a in 0..3 {
            for b in 0..3 {
                for v in 0..3 {
                    if v == t.mul(a, b) || a == b {
                        continue;
                    }
                    let mut mul = t.mul_table().to_vec();
                    mul[a][b] = v;
                    let m = FiniteSemiringTable::new(t.add_table().to_vec(), mul, 0, 1).unwrap();
                    assert!(!m.verify_axioms().is_empty(), "mutation ({a},{b})->{v} went unnoticed");
                }
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let t = FiniteSemiringTable::chain(3).unwrap();
        assert_eq!(FiniteSemiringTable::parse(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn malformed_dimensions() {
        assert!(matches!(
            FiniteSemiringTable::parse("order 2\nzero 0\none 1\n0 1\n1 1\n0 0\n"),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            FiniteSemiringTable::new(vec![vec![0, 1], vec![1]], vec![vec![0, 0], vec![0, 1]], 0, 1),
            Err(Error::MalformedTable(_))
        ));
        assert!(FiniteSemiringTable::new(vec![vec![0, 2], vec![1, 1]], vec![vec![0, 0], vec![0, 1]], 0, 1).is_err());
    }
}
