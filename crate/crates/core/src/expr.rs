//! Ideal-algebra expressions: `+` sum, `*` product, `^` intersection,
//! `:` colon, `==` equality and `<=` inclusion.
//!
//! ```text
//! expr   := sum (("==" | "<=") sum)?
//! sum    := term ("+" term)*
//! term   := factor (("*" | "^" | ":") factor)*
//! factor := ideal | "(" expr ")"
//! ideal  := "<" elem ("," elem)* ">" | VAR
//! elem   := INT | "(" INT ("," INT)* ")" | "bottom"
//! ```

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::ideal::{self, FgIdeal, VerificationLevel};
use crate::semiring::{Carrier, Element, SemiringRef};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lit {
    Int(BigUint),
    Tuple(Vec<BigUint>),
    Bottom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Sum,
    Product,
    Intersect,
    Colon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Subset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Ideal(Vec<Lit>),
    Var(String),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Compare(CmpOp, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Sum => "+",
            BinOp::Product => "*",
            BinOp::Intersect => "^",
            BinOp::Colon => ":",
        }
    }
}

impl CmpOp {
    fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "==",
            CmpOp::Subset => "<=",
        }
    }
}

impl Expr {
    pub fn binary(op: BinOp, l: Expr, r: Expr) -> Self {
        Expr::Binary(op, Box::new(l), Box::new(r))
    }

    pub fn compare(op: CmpOp, l: Expr, r: Expr) -> Self {
        Expr::Compare(op, Box::new(l), Box::new(r))
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Compare(..) => 0,
            Expr::Binary(BinOp::Sum, ..) => 1,
            Expr::Binary(..) => 2,
            _ => 3,
        }
    }

    /// Variable names in sorted order.
    pub fn variables(&self) -> Vec<String> {
        fn walk(e: &Expr, out: &mut Vec<String>) {
            match e {
                Expr::Var(v) => out.push(v.clone()),
                Expr::Ideal(_) => {}
                Expr::Binary(_, l, r) | Expr::Compare(_, l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out.sort();
        out.dedup();
        out
    }

    /// Number of ideal literals and variables.
    pub fn leaves(&self) -> usize {
        match self {
            Expr::Var(_) | Expr::Ideal(_) => 1,
            Expr::Binary(_, l, r) | Expr::Compare(_, l, r) => l.leaves() + r.leaves(),
        }
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lit::Int(n) => write!(f, "{n}"),
            Lit::Bottom => f.write_str("bottom"),
            Lit::Tuple(c) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Left operands need parentheses only below the parent's precedence,
        // right operands also at equal precedence since operators associate
        // to the left. Comparisons do not chain.
        let side = |f: &mut fmt::Formatter<'_>, e: &Expr, wrap: bool| {
            if wrap {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        let p = self.precedence();
        match self {
            Expr::Var(v) => f.write_str(v),
            Expr::Ideal(lits) => {
                let parts: Vec<String> = lits.iter().map(|l| l.to_string()).collect();
                write!(f, "<{}>", parts.join(","))
            }
            Expr::Binary(op, l, r) => {
                side(f, l, l.precedence() < p)?;
                write!(f, " {} ", op.symbol())?;
                side(f, r, r.precedence() <= p)
            }
            Expr::Compare(op, l, r) => {
                side(f, l, l.precedence() == 0)?;
                write!(f, " {} ", op.symbol())?;
                side(f, r, r.precedence() == 0)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigUint),
    Ident(String),
    Sym(&'static str),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("`{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::End => "end of input".into(),
        }
    }
}

struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(input: &str) -> std::result::Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Int(s.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            let next = chars.get(i + 1).copied();
            let sym = match (c, next) {
                ('=', Some('=')) => "==",
                ('<', Some('=')) => "<=",
                ('<', _) => "<",
                ('>', _) => ">",
                ('(', _) => "(",
                (')', _) => ")",
                (',', _) => ",",
                ('+', _) => "+",
                ('*', _) => "*",
                ('^', _) => "^",
                (':', _) => ":",
                _ => {
                    return Err(ParseError {
                        line: tl,
                        col: tc,
                        expected: vec!["a token".into()],
                        found: format!("`{c}`"),
                    })
                }
            };
            i += sym.len();
            Tok::Sym(sym)
        };
        col += i - start;
        out.push(Token { tok, line: tl, col: tc });
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    /// Tokens tried at the current position, reported on failure.
    tried: Vec<&'static str>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        self.tried.clear();
        t
    }

    fn eat(&mut self, sym: &'static str) -> bool {
        if *self.peek() == Tok::Sym(sym) {
            self.bump();
            true
        } else {
            self.tried.push(sym);
            false
        }
    }

    fn fail<T>(&mut self, extra: &[&'static str]) -> std::result::Result<T, ParseError> {
        self.tried.extend_from_slice(extra);
        let mut expected: Vec<String> = self.tried.iter().map(|s| format!("`{s}`")).collect();
        expected.sort();
        expected.dedup();
        let t = &self.toks[self.pos];
        Err(ParseError { line: t.line, col: t.col, expected, found: t.tok.describe() })
    }

    fn expect(&mut self, sym: &'static str) -> std::result::Result<(), ParseError> {
        if self.eat(sym) {
            Ok(())
        } else {
            self.fail(&[])
        }
    }

    fn expr(&mut self) -> std::result::Result<Expr, ParseError> {
        let l = self.sum()?;
        for (sym, op) in [("==", CmpOp::Eq), ("<=", CmpOp::Subset)] {
            if self.eat(sym) {
                return Ok(Expr::compare(op, l, self.sum()?));
            }
        }
        Ok(l)
    }

    fn sum(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut l = self.term()?;
        while self.eat("+") {
            l = Expr::binary(BinOp::Sum, l, self.term()?);
        }
        Ok(l)
    }

    fn term(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut l = self.factor()?;
        'outer: loop {
            for (sym, op) in [("*", BinOp::Product), ("^", BinOp::Intersect), (":", BinOp::Colon)] {
                if self.eat(sym) {
                    l = Expr::binary(op, l, self.factor()?);
                    continue 'outer;
                }
            }
            return Ok(l);
        }
    }

    fn factor(&mut self) -> std::result::Result<Expr, ParseError> {
        if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(e);
        }
        if self.eat("<") {
            let mut lits = vec![self.elem()?];
            while self.eat(",") {
                lits.push(self.elem()?);
            }
            self.expect(">")?;
            return Ok(Expr::Ideal(lits));
        }
        if let Tok::Ident(name) = self.peek().clone() {
            self.bump();
            return Ok(Expr::Var(name));
        }
        self.fail(&["identifier"])
    }

    fn int(&mut self) -> std::result::Result<BigUint, ParseError> {
        if let Tok::Int(n) = self.peek().clone() {
            self.bump();
            Ok(n)
        } else {
            self.fail(&["integer"])
        }
    }

    fn elem(&mut self) -> std::result::Result<Lit, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Lit::Int(n))
            }
            Tok::Ident(s) if s == "bottom" => {
                self.bump();
                Ok(Lit::Bottom)
            }
            _ => {
                if self.eat("(") {
                    let mut c = vec![self.int()?];
                    while self.eat(",") {
                        c.push(self.int()?);
                    }
                    self.expect(")")?;
                    Ok(Lit::Tuple(c))
                } else {
                    self.fail(&["integer", "bottom"])
                }
            }
        }
    }
}

pub fn parse_expr(input: &str) -> std::result::Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(input)?, pos: 0, tried: Vec::new() };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail(&["end of input"]);
    }
    Ok(e)
}

/// Parses a single ideal literal such as `<2,3>` over `s`.
pub fn parse_ideal(s: &SemiringRef, input: &str) -> Result<FgIdeal> {
    match parse_expr(input)? {
        Expr::Ideal(lits) => ideal_from_lits(s, &lits),
        other => Err(Error::Eval(format!("`{other}` is not an ideal literal"))),
    }
}

#[derive(Debug, Clone)]
pub enum Value {
    Ideal(FgIdeal, VerificationLevel),
    Bool(bool, VerificationLevel),
}

impl Value {
    pub fn level(&self) -> VerificationLevel {
        match self {
            Value::Ideal(_, l) | Value::Bool(_, l) => *l,
        }
    }
}

pub type Env = BTreeMap<String, FgIdeal>;

fn small(s: &SemiringRef, n: &BigUint) -> Result<u64> {
    n.to_u64().ok_or_else(|| Error::TooLarge(format!("literal {n} for {}", s.id())))
}

/// Reads an element literal in the notation of `s`.
pub fn lit_element(s: &SemiringRef, lit: &Lit) -> Result<Element> {
    let bad = || Error::NotInCarrier { element: lit.to_string(), semiring: s.id().to_string() };
    let el = match (s.carrier(), lit) {
        (Carrier::Naturals | Carrier::GcdNaturals, Lit::Int(n)) => Element::Nat(n.clone()),
        (Carrier::Boolean, Lit::Int(n)) if *n <= BigUint::from(1u8) => Element::Bit(*n == BigUint::from(1u8)),
        (Carrier::MinPlus(_), Lit::Bottom) => Element::bottom(),
        (Carrier::MinPlus(1), Lit::Int(n)) => Element::tuple(&[small(s, n)?]),
        (Carrier::MinPlus(_), Lit::Tuple(c)) => {
            Element::tuple(&c.iter().map(|x| small(s, x)).collect::<Result<Vec<_>>>()?)
        }
        (Carrier::FiniteTable(_), Lit::Int(n)) => Element::Index(small(s, n)? as usize),
        (Carrier::DivisorLattice(_), Lit::Int(n)) => Element::Divisor(small(s, n)?),
        (Carrier::PowersetLattice(_), Lit::Bottom) => Element::Subset(0),
        (Carrier::PowersetLattice(n), Lit::Int(_) | Lit::Tuple(_)) => {
            let members = lit_members(lit);
            if !members.iter().all(|x| *x >= BigUint::from(1u8) && *x <= BigUint::from(*n)) {
                return Err(bad());
            }
            Element::subset(&members.iter().map(|x| x.to_u32().expect("bounded")).collect::<Vec<_>>())
        }
        (Carrier::Fid(base), _) => Element::ideal(FgIdeal::principal(base, lit_element(base, lit)?)?),
        _ => return Err(bad()),
    };
    s.check(&el).map_err(|_| bad())?;
    Ok(el)
}

fn lit_members(lit: &Lit) -> Vec<BigUint> {
    match lit {
        Lit::Int(n) => vec![n.clone()],
        Lit::Tuple(c) => c.clone(),
        Lit::Bottom => Vec::new(),
    }
}

pub fn ideal_from_lits(s: &SemiringRef, lits: &[Lit]) -> Result<FgIdeal> {
    let gens = lits.iter().map(|l| lit_element(s, l)).collect::<Result<Vec<_>>>()?;
    FgIdeal::new(s, gens)
}

/// Evaluates bottom-up. Ideal operands give ideals, comparisons give
/// booleans; the verification level is the weakest one met on the way.
pub fn eval_expr(e: &Expr, s: &SemiringRef, env: &Env) -> Result<Value> {
    let ideal_of = |e: &Expr| -> Result<(FgIdeal, VerificationLevel)> {
        match eval_expr(e, s, env)? {
            Value::Ideal(i, l) => Ok((i, l)),
            Value::Bool(..) => Err(Error::Eval(format!("`{e}` is a comparison, not an ideal"))),
        }
    };
    match e {
        Expr::Ideal(lits) => Ok(Value::Ideal(ideal_from_lits(s, lits)?, VerificationLevel::Exact)),
        Expr::Var(v) => {
            let i = env.get(v).ok_or_else(|| Error::Eval(format!("unbound variable `{v}`")))?;
            if !i.semiring().same(s) {
                return Err(Error::CarrierMismatch(format!(
                    "`{v}` is an ideal of {}, expected {}",
                    i.semiring().id(),
                    s.id()
                )));
            }
            Ok(Value::Ideal(i.clone(), VerificationLevel::Exact))
        }
        Expr::Binary(op, l, r) => {
            let ((a, la), (b, lb)) = (ideal_of(l)?, ideal_of(r)?);
            let level = la.combine(lb);
            let (out, lo) = match op {
                BinOp::Sum => (ideal::add_ideals(&a, &b)?, VerificationLevel::Exact),
                BinOp::Product => (ideal::mul_ideals(&a, &b)?, VerificationLevel::Exact),
                BinOp::Intersect => (ideal::intersect(&a, &b)?, VerificationLevel::Exact),
                BinOp::Colon => ideal::colon(&a, &b)?,
            };
            Ok(Value::Ideal(out, level.combine(lo)))
        }
        Expr::Compare(op, l, r) => {
            let ((a, la), (b, lb)) = (ideal_of(l)?, ideal_of(r)?);
            let v = match op {
                CmpOp::Eq => ideal::equals(&a, &b)?,
                CmpOp::Subset => ideal::is_subset(&a, &b)?,
            };
            Ok(Value::Bool(v, la.combine(lb)))
        }
    }
}
