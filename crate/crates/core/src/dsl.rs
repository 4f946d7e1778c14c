//! A small expression language for q-series.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := "-" unary | factor
//! factor := atom ("^" factor)?
//! atom   := INT | NAME | "(" expr ")" | NAME "(" expr ("," expr)* ")"
//! ```
//!
//! `q` is the series variable, `z`, `x`, `y` are auxiliary variables and any
//! other name is an integer parameter. Calls: `poch(a, step, count)` with
//! `count` an integer or `inf`, `qbinom(m, k)`, `binom(m, k)` and
//! `sum(var, lo, hi, body)`. Exponents, counts and bounds are integers.
//! The name `trunc` is bound to the truncation order unless given
//! explicitly, which lets infinite sums be written as `sum(n, 0, trunc, ..)`.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::series::{poch_series, qbinom, AuxVar, Monomial, MultiSeries, SeriesError, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(i64),
    Name(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(v) => write!(f, "integer {v}"),
            Tok::Name(n) => write!(f, "name {n:?}"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut text = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                text.push(d);
                chars.next();
                column += 1;
            }
            let v = text.parse().map_err(|_| ParseError {
                line: l,
                column: col,
                message: format!("integer literal {text} is too large"),
                expected: Vec::new(),
            })?;
            out.push(Spanned { tok: Tok::Int(v), line: l, column: col });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut text = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                text.push(d);
                chars.next();
                column += 1;
            }
            out.push(Spanned { tok: Tok::Name(text), line: l, column: col });
        } else if "+-*^(),".contains(c) {
            chars.next();
            column += 1;
            out.push(Spanned { tok: Tok::Sym(c), line: l, column: col });
        } else {
            return Err(ParseError {
                line: l,
                column: col,
                message: format!("unexpected character {c:?}"),
                expected: Vec::new(),
            });
        }
    }
    out.push(Spanned { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let here = &self.toks[self.pos];
        ParseError {
            line: here.line,
            column: here.column,
            message: format!("unexpected {}", here.tok),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[&format!("'{c}'")]))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            return Ok(Expr::Pow(Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(Expr::Int(v))
            }
            Tok::Name(name) => {
                self.bump();
                if !self.eat('(') {
                    return Ok(Expr::Var(name));
                }
                let mut args = alloc::vec![self.expr()?];
                while self.eat(',') {
                    args.push(self.expr()?);
                }
                if !self.eat(')') {
                    return Err(self.error(&["','", "')'"]));
                }
                Ok(Expr::Call(name, args))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(self.error(&["integer", "name", "'('", "'-'"])),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(e)
}

// precedence levels for printing
const P_ADD: u8 = 1;
const P_MUL: u8 = 2;
const P_NEG: u8 = 3;
const P_POW: u8 = 4;
const P_ATOM: u8 = 5;

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => P_ADD,
        Expr::Mul(..) => P_MUL,
        Expr::Neg(_) => P_NEG,
        Expr::Int(v) if *v < 0 => P_NEG,
        Expr::Pow(..) => P_POW,
        _ => P_ATOM,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if prec(e) < min {
        f.write_str("(")?;
        write_at(f, e, 0)?;
        return f.write_str(")");
    }
    match e {
        Expr::Int(v) => write!(f, "{v}"),
        Expr::Var(n) => f.write_str(n),
        Expr::Neg(x) => {
            f.write_str("-")?;
            write_at(f, x, P_NEG)
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            write_at(f, a, P_ADD)?;
            f.write_str(if matches!(e, Expr::Add(..)) { " + " } else { " - " })?;
            write_at(f, b, P_MUL)
        }
        Expr::Mul(a, b) => {
            write_at(f, a, P_MUL)?;
            f.write_str(" * ")?;
            write_at(f, b, P_NEG)
        }
        Expr::Pow(a, b) => {
            write_at(f, a, P_ATOM)?;
            f.write_str("^")?;
            write_at(f, b, P_NEG)
        }
        Expr::Call(name, args) => {
            write!(f, "{name}(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write_at(f, a, 0)?;
            }
            f.write_str(")")
        }
    }
}

/// Prints with the fewest parentheses that reparse to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(f, self, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    UnboundVariable(String),
    /// A series-valued expression where an integer was required.
    NonIntegerExponent(String),
    NonConvergent,
    BadCall(String),
    Overflow,
    Series(SeriesError),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::UnboundVariable(v) => write!(f, "unbound variable {v}"),
            EvalError::NonIntegerExponent(e) => write!(f, "{e} is not an integer expression"),
            EvalError::NonConvergent => f.write_str("infinite product does not converge"),
            EvalError::BadCall(msg) => f.write_str(msg),
            EvalError::Overflow => f.write_str("integer overflow"),
            EvalError::Series(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for EvalError {}

impl From<SeriesError> for EvalError {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::NonConvergent => EvalError::NonConvergent,
            other => EvalError::Series(other),
        }
    }
}

type EResult<T> = Result<T, EvalError>;

struct Env<'a> {
    params: &'a BTreeMap<String, i64>,
    locals: Vec<(String, i64)>,
    trunc: i64,
}

impl Env<'_> {
    fn int(&self, name: &str) -> Option<i64> {
        if let Some((_, v)) = self.locals.iter().rev().find(|(n, _)| n == name) {
            return Some(*v);
        }
        if let Some(v) = self.params.get(name) {
            return Some(*v);
        }
        (name == "trunc").then_some(self.trunc)
    }
}

fn is_series_var(name: &str) -> bool {
    name == "q" || AuxVar::from_name(name).is_some()
}

fn call_arity(name: &str, args: &[Expr], n: usize) -> EResult<()> {
    if args.len() != n {
        return Err(EvalError::BadCall(format!("{name} takes {n} arguments, got {}", args.len())));
    }
    Ok(())
}

fn binom_int(m: i64, k: i64) -> EResult<i64> {
    if k < 0 || m < 0 || k > m {
        return Ok(0);
    }
    let k = k.min(m - k);
    let mut acc: i128 = 1;
    for j in 0..k {
        acc = acc * i128::from(m - j) / i128::from(j + 1);
        if acc > i128::from(i64::MAX) {
            return Err(EvalError::Overflow);
        }
    }
    Ok(acc as i64)
}

fn sum_var(e: &Expr) -> EResult<String> {
    match e {
        Expr::Var(v) if !is_series_var(v) => Ok(v.clone()),
        other => Err(EvalError::BadCall(format!("sum index must be a plain name, got {other}"))),
    }
}

fn eval_int(e: &Expr, env: &mut Env<'_>) -> EResult<i64> {
    let not_int = || EvalError::NonIntegerExponent(e.to_string());
    match e {
        Expr::Int(v) => Ok(*v),
        Expr::Var(v) if is_series_var(v) => Err(not_int()),
        Expr::Var(v) => env.int(v).ok_or_else(|| EvalError::UnboundVariable(v.clone())),
        Expr::Neg(x) => eval_int(x, env)?.checked_neg().ok_or(EvalError::Overflow),
        Expr::Add(a, b) => eval_int(a, env)?.checked_add(eval_int(b, env)?).ok_or(EvalError::Overflow),
        Expr::Sub(a, b) => eval_int(a, env)?.checked_sub(eval_int(b, env)?).ok_or(EvalError::Overflow),
        Expr::Mul(a, b) => eval_int(a, env)?.checked_mul(eval_int(b, env)?).ok_or(EvalError::Overflow),
        Expr::Pow(a, b) => {
            let (base, k) = (eval_int(a, env)?, eval_int(b, env)?);
            let k = u32::try_from(k).map_err(|_| not_int())?;
            base.checked_pow(k).ok_or(EvalError::Overflow)
        }
        Expr::Call(name, args) => match name.as_str() {
            "binom" => {
                call_arity(name, args, 2)?;
                binom_int(eval_int(&args[0], env)?, eval_int(&args[1], env)?)
            }
            "sum" => {
                call_arity(name, args, 4)?;
                let var = sum_var(&args[0])?;
                let (lo, hi) = (eval_int(&args[1], env)?, eval_int(&args[2], env)?);
                let mut acc: i64 = 0;
                for i in lo..=hi {
                    env.locals.push((var.clone(), i));
                    let v = eval_int(&args[3], env);
                    env.locals.pop();
                    acc = acc.checked_add(v?).ok_or(EvalError::Overflow)?;
                }
                Ok(acc)
            }
            _ => Err(not_int()),
        },
    }
}

/// A lower bound on the `q`-valuation of `e`, or `None` when no cheap bound
/// is known. Used to skip products and summands that vanish below `trunc`.
fn min_q(e: &Expr, env: &mut Env<'_>) -> Option<i64> {
    match e {
        Expr::Int(_) => Some(0),
        Expr::Var(v) if v == "q" => Some(1),
        Expr::Var(_) => Some(0),
        Expr::Neg(x) => min_q(x, env),
        Expr::Add(a, b) | Expr::Sub(a, b) => Some(min_q(a, env)?.min(min_q(b, env)?)),
        Expr::Mul(a, b) => Some(min_q(a, env)?.saturating_add(min_q(b, env)?)),
        Expr::Pow(a, b) => {
            let k = eval_int(b, env).ok()?;
            let v = min_q(a, env)?;
            match k {
                0 => Some(0),
                k if k > 0 => v.checked_mul(k),
                _ if v == 0 => Some(0),
                _ => None,
            }
        }
        Expr::Call(name, args) => match name.as_str() {
            "qbinom" | "binom" => Some(0),
            "poch" => (min_q(args.first()?, env)? >= 0).then_some(0),
            "sum" if args.len() == 4 => {
                let var = sum_var(&args[0]).ok()?;
                let lo = eval_int(&args[1], env).ok()?;
                let hi = eval_int(&args[2], env).ok()?;
                let mut best = i64::MAX;
                for i in lo..=hi {
                    env.locals.push((var.clone(), i));
                    let v = min_q(&args[3], env);
                    env.locals.pop();
                    best = best.min(v?);
                }
                Some(best)
            }
            _ => None,
        },
    }
}

fn vanishes(e: &Expr, env: &mut Env<'_>) -> bool {
    min_q(e, env).is_some_and(|v| v >= env.trunc)
}

fn as_term(s: &MultiSeries) -> Option<Term> {
    s.as_term()
}

/// `1 / (a; q^step)_count` for a single-term base, one geometric factor at a
/// time.
fn inv_poch_term(a: Term, step: u32, count: Option<u32>, trunc: i64) -> EResult<MultiSeries> {
    let mut acc = MultiSeries::one().truncate(trunc);
    let mut k: u32 = 0;
    loop {
        if count.is_some_and(|c| k >= c) {
            break;
        }
        let f = a.shift(i64::from(step) * i64::from(k));
        if count.is_none() {
            if f.q_exp <= 0 || step == 0 {
                return Err(EvalError::NonConvergent);
            }
            if f.q_exp >= trunc {
                break;
            }
        }
        acc = if f.q_exp > 0 { acc.div_one_minus(&f)? } else { acc.mul_one_minus(&f).invert_unit()? };
        k += 1;
    }
    Ok(acc)
}

struct PochArgs {
    base: MultiSeries,
    step: u32,
    count: Option<u32>,
}

fn poch_args(args: &[Expr], env: &mut Env<'_>) -> EResult<PochArgs> {
    call_arity("poch", args, 3)?;
    let base = eval_series(&args[0], env)?;
    let step = eval_int(&args[1], env)?;
    let step = u32::try_from(step)
        .ok()
        .filter(|s| *s > 0)
        .ok_or_else(|| EvalError::BadCall(format!("poch step must be a positive integer, got {step}")))?;
    let count = match &args[2] {
        Expr::Var(v) if v == "inf" => None,
        other => {
            let c = eval_int(other, env)?;
            Some(u32::try_from(c).map_err(|_| EvalError::BadCall(format!("poch count must be nonnegative, got {c}")))?)
        }
    };
    Ok(PochArgs { base, step, count })
}

fn eval_series(e: &Expr, env: &mut Env<'_>) -> EResult<MultiSeries> {
    let trunc = env.trunc;
    let out = match e {
        Expr::Int(v) => MultiSeries::constant(*v),
        Expr::Var(v) if v == "q" => MultiSeries::from(Term::q(1)),
        Expr::Var(v) => match AuxVar::from_name(v) {
            Some(a) => MultiSeries::from(Term::new(1, Monomial::var(a), 0)),
            None => MultiSeries::constant(env.int(v).ok_or_else(|| EvalError::UnboundVariable(v.clone()))?),
        },
        Expr::Neg(x) => -eval_series(x, env)?,
        Expr::Add(a, b) => &eval_series(a, env)? + &eval_series(b, env)?,
        Expr::Sub(a, b) => &eval_series(a, env)? - &eval_series(b, env)?,
        Expr::Mul(a, b) => {
            if vanishes(e, env) {
                return Ok(MultiSeries::zero_to(trunc));
            }
            &eval_series(a, env)? * &eval_series(b, env)?
        }
        Expr::Pow(a, b) => {
            let k = eval_int(b, env)?;
            match (&**a, k) {
                (Expr::Call(name, args), k) if k < 0 && name == "poch" => {
                    let p = poch_args(args, env)?;
                    let inv = match as_term(&p.base) {
                        Some(t) => inv_poch_term(t, p.step, p.count, trunc)?,
                        None => poch_series(&p.base.truncate(trunc), p.step, p.count, trunc)?.invert_unit()?,
                    };
                    inv.pow(-k)?
                }
                _ => {
                    let base = eval_series(a, env)?;
                    if k < 0 && base.as_term().is_none() {
                        base.truncate(trunc).pow(k)?
                    } else {
                        base.pow(k)?
                    }
                }
            }
        }
        Expr::Call(name, args) => match name.as_str() {
            "poch" => {
                let p = poch_args(args, env)?;
                if p.count.is_none() && p.base.as_term().is_some_and(|t| t.q_exp <= 0) {
                    return Err(EvalError::NonConvergent);
                }
                poch_series(&p.base.truncate(trunc), p.step, p.count, trunc)?
            }
            "qbinom" => {
                call_arity(name, args, 2)?;
                let (m, k) = (eval_int(&args[0], env)?, eval_int(&args[1], env)?);
                MultiSeries::from(qbinom(m, k))
            }
            "binom" => MultiSeries::constant(eval_int(e, env)?),
            "sum" => {
                call_arity(name, args, 4)?;
                let var = sum_var(&args[0])?;
                let (lo, hi) = (eval_int(&args[1], env)?, eval_int(&args[2], env)?);
                let mut acc = MultiSeries::zero_to(trunc);
                for i in lo..=hi {
                    env.locals.push((var.clone(), i));
                    let v = if vanishes(&args[3], env) { Ok(None) } else { eval_series(&args[3], env).map(Some) };
                    env.locals.pop();
                    if let Some(v) = v? {
                        acc = &acc + &v;
                    }
                }
                acc
            }
            other => return Err(EvalError::BadCall(format!("unknown function {other}"))),
        },
    };
    // exact intermediates stay exact so negative powers of monomials lose
    // nothing; the top level truncates
    Ok(if out.is_exact() { out } else { out.truncate(trunc) })
}

/// Expand `e` below `q^trunc` under the integer `bindings`.
pub fn eval(e: &Expr, bindings: &BTreeMap<String, i64>, trunc: i64) -> Result<MultiSeries, EvalError> {
    let mut env = Env { params: bindings, locals: Vec::new(), trunc };
    Ok(eval_series(e, &mut env)?.truncate(trunc))
}

/// Integer value of `e`, for expressions free of `q` and the auxiliary
/// variables.
pub fn eval_integer(e: &Expr, bindings: &BTreeMap<String, i64>) -> Result<BigInt, EvalError> {
    let mut env = Env { params: bindings, locals: Vec::new(), trunc: 0 };
    eval_int(e, &mut env).map(BigInt::from)
}

/// Textual `(lhs, rhs)` of every registered identity. Parameterised ones
/// use `n`; infinite sums run to `trunc`.
pub fn identity_text(id: &str) -> Option<(&'static str, &'static str)> {
    const THM21_LHS: &str = "sum(s, 0, n, q^s * poch(-q^(s+1), 1, n-s) * qbinom(n+s, s))";
    const STAIRCASE: &str = "sum(t, 0, n, q^binom(t+1, 2) * qbinom(2*n+1, n+1+t))";
    const SQUARE: &str = "poch(-q, 1, n)^2";
    Some(match id {
        "ay1" => (
            "sum(n, 1, trunc, q^n * poch(z*q^n, 1, n+1)^(-1) * poch(z*q^(2*n+2), 2, inf)^(-1))",
            "sum(n, 0, trunc, z^n * q^(2*n^2+2*n+1) * poch(q, 2, n+1)^(-1) * poch(z*q, 2, n+1)^(-1))",
        ),
        "ay2" => (
            "sum(n, 0, trunc, q^n * poch(-z*q^(n+1), 1, n) * poch(-z*q^(2*n+2), 2, inf))",
            "sum(n, 0, trunc, z^n * q^(n^2+n) * poch(q, 2, n+1)^(-1))",
        ),
        "ay3" => ("sum(s, 0, n, q^s * poch(q, 1, n+s) * poch(q^2, 2, s)^(-1))", "poch(q^2, 2, n)"),
        "thm21" => (THM21_LHS, SQUARE),
        "lemma22" => (THM21_LHS, STAIRCASE),
        "middle" => (STAIRCASE, SQUARE),
        "q1limit" => ("sum(s, 0, n, 2^(n-s) * binom(n+s, s))", "sum(t, 0, n, binom(2*n+1, n+1+t))"),
        "omega" => (
            "sum(n, 0, trunc, z^n * q^(2*n^2+2*n) * poch(q, 2, n+1)^(-1) * poch(z*q, 2, n+1)^(-1))",
            "sum(n, 0, trunc, z^n * q^n * poch(q, 2, n+1)^(-1))",
        ),
        "omega1" => (
            "sum(n, 0, trunc, z^(2*n+1) * q^((2*n+1)^2) * poch(q^2, 4, n+1)^(-1) * poch(z^2*q^2, 4, n+1)^(-1))",
            "sum(n, 0, trunc, z^(2*n+1) * q^(2*n+1) * poch(q^2, 4, n+1)^(-1))",
        ),
        "nu1" => (
            "sum(n, 0, trunc, q^(n^2+n) * poch(-z*q, 2, n+1)^(-1))",
            "sum(n, 0, trunc, poch(z^(-1)*q, 2, n) * (-z*q)^n)",
        ),
        "nu2" => {
            ("sum(n, 0, trunc, z^n * q^(n^2+n) * poch(-q, 2, n+1)^(-1))", "sum(n, 0, trunc, poch(z*q, 2, n) * (-q)^n)")
        }
        "nu3" => (
            "sum(n, 0, trunc, q^(n^2+n) * x^n * poch(y*q, 2, n+1)^(-1))",
            "sum(n, 0, trunc, poch(-x*q*y^(-1), 2, n) * (y*q)^n)",
        ),
        "qbinom_thm" => ("poch(z, 1, n)", "sum(t, 0, n, qbinom(n, t) * (-1)^t * z^t * q^binom(t, 2))"),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{poch_finite, QSeries};

    fn ev(s: &str, trunc: i64) -> MultiSeries {
        eval(&parse(s).unwrap(), &BTreeMap::new(), trunc).unwrap()
    }

    fn q(c: &[i64]) -> MultiSeries {
        MultiSeries::from(QSeries::from_slice(c))
    }

    #[test]
    fn parses_calls_and_precedence() {
        let e = parse("qbinom(n+s, s)").unwrap();
        assert!(matches!(&e, Expr::Call(name, args) if name == "qbinom" && args.len() == 2));
        assert_eq!(ev("1-q^2", 10), q(&[1, 0, -1]).truncate(10));
        assert_eq!(parse("a-b-c").unwrap(), parse("(a-b)-c").unwrap());
        assert_eq!(parse("a^b^c").unwrap(), parse("a^(b^c)").unwrap());
        assert_eq!(parse("-q^2").unwrap(), Expr::Neg(Box::new(parse("q^2").unwrap())));
        assert_eq!(parse("q^-1*q").unwrap(), parse("(q^(-1))*q").unwrap());
        assert_eq!(parse("a^-b^c").unwrap(), parse("a^(-(b^c))").unwrap());
    }

    #[test]
    fn parse_errors_have_positions() {
        let err = parse("poch(q,1,").unwrap_err();
        assert_eq!((err.line, err.column), (1, 10));
        let err = parse("qbinom(2,1").unwrap_err();
        assert_eq!(err.column, 11);
        assert!(err.expected.iter().any(|e| e == "')'"));
        let err = parse("1 +\n  $").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        assert!(parse("q q").is_err());
    }

    #[test]
    fn printing_round_trips() {
        for s in [
            "a-(b-c)",
            "(-q)^2",
            "-q^2",
            "q^(-1)",
            "q^-x^2",
            "q^(-1*x)",
            "(a^b)^c",
            "a*(b*c)",
            "a * -b",
            "poch(-x*q*y^(-1), 2, n) * (y*q)^n",
            "sum(t, 0, n, q^binom(t+1, 2) * qbinom(2*n+1, n+1+t))",
            "--q",
        ] {
            let e = parse(s).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{s} printed as {e}");
        }
        assert_eq!(parse("q^(-1)").unwrap().to_string(), "q^-1");
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(ev("poch(q,1,2)", 50), poch_finite(Term::q(1), 1, 2).truncate(50));
        assert_eq!(ev("poch(q,1,2)", 50), q(&[1, -1, -1, 1]).truncate(50));
        assert_eq!(ev("qbinom(5,0)", 10), q(&[1]).truncate(10));
        assert_eq!(ev("binom(5,2) + sum(i, 1, 3, i)", 10), q(&[16]).truncate(10));
        assert_eq!(ev("(1-q)^(-1)", 5), q(&[1, 1, 1, 1, 1]).truncate(5));
        assert_eq!(ev("q^(-1) * q", 5), q(&[1]).truncate(5));
    }

    #[test]
    fn evaluation_errors() {
        let run = |s: &str| eval(&parse(s).unwrap(), &BTreeMap::new(), 10);
        assert_eq!(run("n + q"), Err(EvalError::UnboundVariable("n".into())));
        assert!(matches!(run("q^q"), Err(EvalError::NonIntegerExponent(_))));
        assert_eq!(run("poch(q^0, 1, inf)"), Err(EvalError::NonConvergent));
        assert_eq!(run("poch(1+q, 1, inf)"), Err(EvalError::NonConvergent));
        assert!(matches!(run("foo(1)"), Err(EvalError::BadCall(_))));
        assert!(matches!(run("sum(q, 0, 1, 1)"), Err(EvalError::BadCall(_))));
    }

    #[test]
    fn trunc_is_bound_unless_given() {
        let e = parse("trunc").unwrap();
        assert_eq!(eval(&e, &BTreeMap::new(), 7).unwrap(), q(&[7]).truncate(7));
        let b: BTreeMap<String, i64> = [("trunc".into(), 3)].into_iter().collect();
        assert_eq!(eval(&e, &b, 7).unwrap(), q(&[3]).truncate(7));
    }

    #[test]
    fn every_identity_has_text() {
        for case in crate::identities::REGISTRY {
            let (l, r) = identity_text(case.id).unwrap();
            parse(l).unwrap();
            parse(r).unwrap();
        }
    }
}
