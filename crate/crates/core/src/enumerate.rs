//! Exhaustive search for small finite commutative semirings, their
//! classification, and identity falsification over carrier families.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::content::{coefficient_range, search, SearchKind};
use crate::error::{Error, Result};
use crate::expr::{eval_expr, Env, Expr, Value as ExprValue};
use crate::ideal::{self, enumerate_ideals, FgIdeal};
use crate::semiring::{Carrier, Element, FiniteSemiringTable, Semiring, SemiringRef};
use crate::suites::{weak_gaussian_check, Sampler};

const UNSET: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct EnumerationTask {
    pub order: usize,
    /// Keep only tables in canonical form. Without pruning every labeled
    /// table is generated and classes are merged afterwards.
    pub prune: bool,
    pub node_budget: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl EnumerationTask {
    pub fn new(order: usize) -> Self {
        EnumerationTask { order, prune: true, node_budget: None, time_limit: None }
    }
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub order: usize,
    /// One table per isomorphism class, each in canonical labeling, sorted
    /// by encoding.
    pub tables: Vec<FiniteSemiringTable>,
    /// Set when a resource cap stopped the search; `tables` is then incomplete.
    pub partial: bool,
    pub nodes: u64,
}

/// Permutations of `0..n` that fix 0 and 1.
fn relabelings(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for k in 0..rest.len() {
            let x = rest.remove(k);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(k, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (2..n).collect(), &mut vec![0, 1], &mut out);
    out
}

/// Lexicographically least encoding over relabelings fixing 0 and 1.
pub fn canonical_form(t: &FiniteSemiringTable) -> FiniteSemiringTable {
    relabelings(t.order())
        .iter()
        .map(|p| t.permuted(p))
        .min_by(|a, b| a.encoding().cmp(&b.encoding()))
        .expect("at least the identity")
}

struct Search<'a> {
    n: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    /// Cells still to fill: (is_mul, a, b) with a <= b.
    cells: &'a [(bool, usize, usize)],
    perms: &'a [Vec<usize>],
    prune: bool,
    found: Vec<FiniteSemiringTable>,
    nodes: &'a AtomicU64,
    stop: &'a AtomicBool,
    budget: Option<u64>,
    deadline: Option<Instant>,
}

impl Search<'_> {
    fn set(&mut self, is_mul: bool, a: usize, b: usize, v: usize) {
        let t = if is_mul { &mut self.mul } else { &mut self.add };
        t[a][b] = v;
        t[b][a] = v;
    }

    /// Associativity of both operations and distributivity on every triple
    /// whose cells are already filled.
    fn consistent(&self) -> bool {
        let n = self.n;
        let get = |t: &Vec<Vec<usize>>, a: usize, b: usize| if a == UNSET || b == UNSET { UNSET } else { t[a][b] };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for t in [&self.add, &self.mul] {
                        let l = get(t, get(t, a, b), c);
                        let r = get(t, a, get(t, b, c));
                        if l != UNSET && r != UNSET && l != r {
                            return false;
                        }
                    }
                    let l = get(&self.mul, a, get(&self.add, b, c));
                    let r = get(&self.add, get(&self.mul, a, b), get(&self.mul, a, c));
                    if l != UNSET && r != UNSET && l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn over_budget(&self) -> bool {
        let used = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let out = self.budget.is_some_and(|b| used > b) || self.deadline.is_some_and(|d| Instant::now() > d);
        if out {
            self.stop.store(true, Ordering::Relaxed);
        }
        out
    }

    fn run(&mut self, k: usize) {
        if self.stop.load(Ordering::Relaxed) || self.over_budget() {
            return;
        }
        if !self.consistent() {
            return;
        }
        if k == self.cells.len() {
            let t = FiniteSemiringTable::new(self.add.clone(), self.mul.clone(), 0, 1).expect("well-formed");
            if self.prune {
                let enc = t.encoding();
                if self.perms.iter().any(|p| t.permuted(p).encoding() < enc) {
                    return;
                }
            }
            self.found.push(t);
            return;
        }
        let (is_mul, a, b) = self.cells[k];
        for v in 0..self.n {
            self.set(is_mul, a, b, v);
            self.run(k + 1);
        }
        self.set(is_mul, a, b, UNSET);
    }
}

/// All commutative semirings of the given order up to isomorphism, with
/// zero at index 0 and one at index 1. The search fills the table cells not
/// fixed by the identity laws and backtracks as soon as associativity or
/// distributivity fails on filled cells.
pub fn enumerate_semirings(task: &EnumerationTask) -> Result<Enumeration> {
    let n = task.order;
    if n < 2 {
        return Err(Error::Precondition("order must be at least 2".into()));
    }
    let mut add = vec![vec![UNSET; n]; n];
    let mut mul = vec![vec![UNSET; n]; n];
    for x in 0..n {
        add[0][x] = x;
        add[x][0] = x;
        mul[0][x] = 0;
        mul[x][0] = 0;
        mul[1][x] = x;
        mul[x][1] = x;
    }
    let mut cells = Vec::new();
    for a in 1..n {
        for b in a..n {
            cells.push((false, a, b));
        }
    }
    for a in 2..n {
        for b in a..n {
            cells.push((true, a, b));
        }
    }
    let perms = relabelings(n);
    let nodes = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let deadline = task.time_limit.map(|d| Instant::now() + d);
    // Fan out over the value of the first free cell, 1 + 1.
    let branches: Vec<Vec<FiniteSemiringTable>> = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut s = Search {
                n,
                add: add.clone(),
                mul: mul.clone(),
                cells: &cells,
                perms: &perms,
                prune: task.prune,
                found: Vec::new(),
                nodes: &nodes,
                stop: &stop,
                budget: task.node_budget,
                deadline,
            };
            s.set(false, 1, 1, v);
            s.run(1);
            s.found
        })
        .collect();
    let mut tables: Vec<FiniteSemiringTable> = branches.into_iter().flatten().collect();
    if !task.prune {
        let classes: BTreeSet<Vec<usize>> = tables.iter().map(|t| canonical_form(t).encoding()).collect();
        tables = classes.into_iter().map(decode(n)).collect();
    }
    tables.sort_by_key(|t| t.encoding());
    Ok(Enumeration { order: n, tables, partial: stop.load(Ordering::Relaxed), nodes: nodes.load(Ordering::Relaxed) })
}

fn decode(n: usize) -> impl Fn(Vec<usize>) -> FiniteSemiringTable {
    move |enc| {
        let rows: Vec<Vec<usize>> = enc.chunks(n).map(<[usize]>::to_vec).collect();
        let (add, mul) = rows.split_at(n);
        FiniteSemiringTable::new(add.to_vec(), mul.to_vec(), 0, 1).expect("valid encoding")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundedFlag {
    Holds,
    Fails,
    /// No counterexample up to the degree bound on a non-subtractive table.
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationRecord {
    pub id: String,
    pub order: usize,
    pub table: String,
    pub semidomain: bool,
    pub subtractive: bool,
    pub weak_gaussian: bool,
    pub degree: usize,
    pub gaussian_up_to: BoundedFlag,
    pub dm_up_to: BoundedFlag,
    /// A DM counterexample on a subtractive table.
    pub violation: bool,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub counterexamples: BTreeMap<String, Value>,
}

fn subtractive_witness(i: &FgIdeal) -> Result<Option<Value>> {
    let s = i.semiring();
    let els = s.elements().expect("finite carrier");
    for a in &els {
        if !i.contains(a)? {
            continue;
        }
        for b in &els {
            if !i.contains(b)? && i.contains(&s.add(a, b)?)? {
                return Ok(Some(json!({ "ideal": i.to_string(), "a": a.to_string(), "b": b.to_string() })));
            }
        }
    }
    Ok(None)
}

/// Classifies a verified table: semidomain, subtractive and weak Gaussian by
/// full scans; Gaussian and Dedekind-Mertens over all polynomial pairs up to
/// degree `d`.
pub fn classify(id: &str, t: &FiniteSemiringTable, d: usize) -> Result<ClassificationRecord> {
    let s = Semiring::finite_table(id, t.clone())?;
    let mut cex = BTreeMap::new();
    let els = s.elements().expect("finite carrier");

    let mut semidomain = true;
    for a in els.iter().filter(|a| !s.is_zero(a)) {
        if !s.is_mc(a)? {
            semidomain = false;
            cex.insert("semidomain".into(), json!({ "not_cancellable": a.to_string() }));
            break;
        }
    }

    let ideals = enumerate_ideals(&s)?;
    let mut subtractive = true;
    for i in &ideals {
        if let Some(w) = subtractive_witness(i)? {
            subtractive = false;
            cex.insert("subtractive".into(), w);
            break;
        }
    }
    let weak_gaussian = weak_gaussian_check(&s)?;
    if !weak_gaussian {
        for i in &ideals {
            if ideal::is_prime(i)? {
                if let Some(w) = subtractive_witness(i)? {
                    cex.insert("weak_gaussian".into(), w);
                    break;
                }
            }
        }
    }

    let mut bounded = |kind: SearchKind, key: &str| -> Result<bool> {
        let out = search(&s, kind, d, 0)?;
        if out.found {
            cex.insert(key.into(), serde_json::to_value(&out).expect("serializable"));
        }
        Ok(out.found)
    };
    let gaussian_fails = bounded(SearchKind::Gaussian, "gaussian")?;
    let dm_fails = bounded(SearchKind::Dm, "dm")?;
    let gaussian_up_to = if gaussian_fails { BoundedFlag::Fails } else { BoundedFlag::Holds };
    let dm_up_to = match (dm_fails, subtractive) {
        (true, _) => BoundedFlag::Fails,
        (false, true) => BoundedFlag::Holds,
        (false, false) => BoundedFlag::Unresolved,
    };
    Ok(ClassificationRecord {
        id: id.to_string(),
        order: t.order(),
        table: t.to_text(),
        semidomain,
        subtractive,
        weak_gaussian,
        degree: d,
        gaussian_up_to,
        dm_up_to,
        violation: subtractive && dm_fails,
        counterexamples: cex,
    })
}

/// Classifies every table of an enumeration, in parallel, keeping order.
pub fn classify_all(e: &Enumeration, d: usize) -> Result<Vec<ClassificationRecord>> {
    e.tables.par_iter().enumerate().map(|(k, t)| classify(&table_id(e.order, k), t, d)).collect()
}

pub fn table_id(order: usize, index: usize) -> String {
    format!("order{order}-{index}")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub semiring: String,
    pub assignment: BTreeMap<String, String>,
    /// `sweep` for the deterministic pass over small principal ideals,
    /// otherwise `sample <i>`.
    pub stage: String,
}

/// Small elements of `s` in a fixed order, at most `limit` of them.
fn small_elements(s: &SemiringRef, limit: usize) -> Result<Vec<Element>> {
    let els = match s.carrier() {
        Carrier::Fid(base) => small_elements(base, limit)?
            .into_iter()
            .map(|x| FgIdeal::principal(base, x).map(Element::ideal))
            .collect::<Result<Vec<_>>>()?,
        _ => match s.elements() {
            Some(els) => els,
            None => coefficient_range(s, 4)?,
        },
    };
    Ok(els.into_iter().take(limit).collect())
}

/// Looks for an assignment of ideals to the variables of `expr` that makes
/// it false: first all combinations of small principal ideals, then sampled
/// finitely generated ideals. Carriers are tried in the given order.
pub fn falsify(expr: &Expr, family: &[SemiringRef], sampler: &Sampler) -> Result<Option<Counterexample>> {
    let vars = expr.variables();
    for s in family {
        let holds = |env: &Env| -> Result<bool> {
            match eval_expr(expr, s, env)? {
                ExprValue::Bool(b, _) => Ok(b),
                ExprValue::Ideal(..) => Err(Error::Eval(format!("`{expr}` is not a comparison"))),
            }
        };
        let report = |env: &Env, stage: String| Counterexample {
            semiring: s.id().to_string(),
            assignment: env.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            stage,
        };
        // Keep the sweep to a few thousand assignments.
        let per_var = if vars.is_empty() { 1 } else { (4096f64.powf(1.0 / vars.len() as f64)) as usize };
        let small = small_elements(s, per_var.max(2))?
            .into_iter()
            .map(|x| FgIdeal::principal(s, x))
            .collect::<Result<Vec<_>>>()?;
        let total = small.len().pow(vars.len() as u32);
        let sweep = (0..total).into_par_iter().map(|mut code| -> Result<Option<Env>> {
            let mut env = Env::new();
            for v in vars.iter().rev() {
                env.insert(v.clone(), small[code % small.len()].clone());
                code /= small.len();
            }
            Ok(if holds(&env)? { None } else { Some(env) })
        });
        if let Some(hit) = sweep.find_map_first(|r| r.transpose()) {
            return Ok(Some(report(&hit?, "sweep".into())));
        }
        let sampled = (0..sampler.samples as u64).into_par_iter().map(|i| -> Result<Option<(u64, Env)>> {
            let mut rng = sampler.rng(i);
            let mut env = Env::new();
            for v in &vars {
                env.insert(v.clone(), sampler.ideal(s, &mut rng)?);
            }
            Ok(if holds(&env)? { None } else { Some((i, env)) })
        });
        if let Some(hit) = sampled.find_map_first(|r| r.transpose()) {
            let (i, env) = hit?;
            return Ok(Some(report(&env, format!("sample {i}"))));
        }
    }
    Ok(None)
}
