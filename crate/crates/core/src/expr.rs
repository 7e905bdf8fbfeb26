//! Exact-arithmetic expressions over a tree's degree data.
//!
//! Expressions are data: a small AST evaluated over [`TreeStats`] in exact
//! rational arithmetic, with a parenthesized prefix syntax so claims can be
//! stored in files, e.g.
//! `(>= irr (- M1 (/ (+ (* 2 m n n (- Delta 1)) (- delta 1)) (+ n Delta))))`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::indices::TreeStats;

/// Which end of the sorted degree sequence `d[1]` refers to.
///
/// `NonDecreasing` (the default) reads `d[1]` as the minimum degree and
/// `d[n]` as the maximum; `NonIncreasing` reverses that.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reading {
    NonDecreasing,
    NonIncreasing,
}

impl Reading {
    pub fn label(self) -> &'static str {
        match self {
            Reading::NonDecreasing => "nondecreasing",
            Reading::NonIncreasing => "nonincreasing",
        }
    }

    pub fn parse(text: &str) -> Option<Reading> {
        match text {
            "nondecreasing" => Some(Reading::NonDecreasing),
            "nonincreasing" => Some(Reading::NonIncreasing),
            _ => None,
        }
    }
}

/// Tree-level quantities an expression can reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    /// Vertex count.
    N,
    /// Edge count.
    M,
    /// Maximum degree.
    MaxDeg,
    /// Minimum degree.
    MinDeg,
    /// `(Delta + delta) / 2`.
    Lambda,
    Irr,
    IrrT,
    M1,
    /// First Zagreb computed over edges; independent route from `M1`.
    M1Edge,
    M2,
    F,
    Sigma,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(Var),
    /// A summation index, bound by an enclosing `Sum`.
    Idx(String),
    /// 1-based access into the sorted degree sequence.
    Deg(Box<Expr>),
    Neg(Box<Expr>),
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Abs(Box<Expr>),
    Binom(Box<Expr>, Box<Expr>),
    Max(Box<Expr>, Box<Expr>),
    Min(Box<Expr>, Box<Expr>),
    Sum {
        var: String,
        from: Box<Expr>,
        to: Box<Expr>,
        body: Box<Expr>,
    },
}

/// Relation between two expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Eq,
    Le,
    Ge,
}

impl Rel {
    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Eq => "=",
            Rel::Le => "<=",
            Rel::Ge => ">=",
        }
    }

    pub fn holds(self, lhs: &BigRational, rhs: &BigRational) -> bool {
        match self {
            Rel::Eq => lhs == rhs,
            Rel::Le => lhs <= rhs,
            Rel::Ge => lhs >= rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    DegreeIndexOutOfRange { index: BigInt, n: usize },
    NonIntegerDegreeIndex,
    DivisionByZero,
    NonIntegerExponent,
    ExponentOutOfRange,
    NonIntegerSumBound,
    SumBoundOutOfRange,
    NonIntegerBinomialCount,
    NegativeBinomialCount,
    UnboundIndex(String),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::DegreeIndexOutOfRange { index, n } => {
                write!(f, "degree index {index} out of range [1, {n}]")
            }
            EvalError::NonIntegerDegreeIndex => write!(f, "degree index is not an integer"),
            EvalError::DivisionByZero => write!(f, "division by zero"),
            EvalError::NonIntegerExponent => write!(f, "exponent is not an integer"),
            EvalError::ExponentOutOfRange => write!(f, "exponent too large"),
            EvalError::NonIntegerSumBound => write!(f, "summation bound is not an integer"),
            EvalError::SumBoundOutOfRange => write!(f, "summation bound out of range"),
            EvalError::NonIntegerBinomialCount => write!(f, "binomial count is not an integer"),
            EvalError::NegativeBinomialCount => write!(f, "binomial count is negative"),
            EvalError::UnboundIndex(name) => write!(f, "unbound index variable '{name}'"),
        }
    }
}

impl std::error::Error for EvalError {}

fn as_integer(x: &BigRational) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

fn rat(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

/// Evaluates `expr` over one tree's stats. Exact: no floating point.
pub fn eval(expr: &Expr, stats: &TreeStats, reading: Reading) -> Result<BigRational, EvalError> {
    let mut env: Vec<(String, BigInt)> = Vec::new();
    eval_inner(expr, stats, reading, &mut env)
}

fn eval_inner(
    expr: &Expr,
    stats: &TreeStats,
    reading: Reading,
    env: &mut Vec<(String, BigInt)>,
) -> Result<BigRational, EvalError> {
    match expr {
        Expr::Int(k) => Ok(rat(k.clone())),
        Expr::Var(v) => Ok(match v {
            Var::N => rat(BigInt::from(stats.n)),
            Var::M => rat(BigInt::from(stats.m)),
            Var::MaxDeg => rat(BigInt::from(stats.max_degree)),
            Var::MinDeg => rat(BigInt::from(stats.min_degree)),
            Var::Lambda => BigRational::new(
                BigInt::from(stats.max_degree) + BigInt::from(stats.min_degree),
                BigInt::from(2),
            ),
            Var::Irr => rat(stats.irr.clone()),
            Var::IrrT => rat(stats.irr_t.clone()),
            Var::M1 => rat(stats.m1.clone()),
            Var::M1Edge => rat(stats.m1_edge.clone()),
            Var::M2 => rat(stats.m2.clone()),
            Var::F => rat(stats.forgotten.clone()),
            Var::Sigma => rat(stats.sigma.clone()),
        }),
        Expr::Idx(name) => env
            .iter()
            .rev()
            .find(|(k, _)| k == name)
            .map(|(_, v)| rat(v.clone()))
            .ok_or_else(|| EvalError::UnboundIndex(name.clone())),
        Expr::Deg(idx) => {
            let idx = eval_inner(idx, stats, reading, env)?;
            let idx = as_integer(&idx).ok_or(EvalError::NonIntegerDegreeIndex)?;
            let n = stats.n;
            let pos = idx
                .to_usize()
                .filter(|&i| i >= 1 && i <= n)
                .ok_or_else(|| EvalError::DegreeIndexOutOfRange {
                    index: idx.clone(),
                    n,
                })?;
            let d = match reading {
                Reading::NonDecreasing => stats.degrees[pos - 1],
                Reading::NonIncreasing => stats.degrees[n - pos],
            };
            Ok(rat(BigInt::from(d)))
        }
        Expr::Neg(e) => Ok(-eval_inner(e, stats, reading, env)?),
        Expr::Add(terms) => {
            let mut acc = BigRational::zero();
            for t in terms {
                acc += eval_inner(t, stats, reading, env)?;
            }
            Ok(acc)
        }
        Expr::Mul(factors) => {
            let mut acc = BigRational::one();
            for t in factors {
                acc *= eval_inner(t, stats, reading, env)?;
            }
            Ok(acc)
        }
        Expr::Sub(a, b) => {
            Ok(eval_inner(a, stats, reading, env)? - eval_inner(b, stats, reading, env)?)
        }
        Expr::Div(a, b) => {
            let num = eval_inner(a, stats, reading, env)?;
            let den = eval_inner(b, stats, reading, env)?;
            if den.is_zero() {
                return Err(EvalError::DivisionByZero);
            }
            Ok(num / den)
        }
        Expr::Pow(base, exp) => {
            let base = eval_inner(base, stats, reading, env)?;
            let exp = eval_inner(exp, stats, reading, env)?;
            let exp = as_integer(&exp).ok_or(EvalError::NonIntegerExponent)?;
            let e = exp.to_i64().ok_or(EvalError::ExponentOutOfRange)?;
            if e.unsigned_abs() > 4096 {
                return Err(EvalError::ExponentOutOfRange);
            }
            if e < 0 && base.is_zero() {
                return Err(EvalError::DivisionByZero);
            }
            let mut acc = BigRational::one();
            for _ in 0..e.unsigned_abs() {
                acc *= &base;
            }
            Ok(if e < 0 { acc.recip() } else { acc })
        }
        Expr::Abs(e) => Ok(eval_inner(e, stats, reading, env)?.abs()),
        Expr::Binom(x, k) => {
            let x = eval_inner(x, stats, reading, env)?;
            let k = eval_inner(k, stats, reading, env)?;
            let k = as_integer(&k).ok_or(EvalError::NonIntegerBinomialCount)?;
            if k.is_negative() {
                return Err(EvalError::NegativeBinomialCount);
            }
            let k = k.to_u64().ok_or(EvalError::ExponentOutOfRange)?;
            // x (x-1) ... (x-k+1) / k!
            let mut acc = BigRational::one();
            for j in 0..k {
                acc *= &x - rat(BigInt::from(j));
                acc /= rat(BigInt::from(j + 1));
            }
            Ok(acc)
        }
        Expr::Max(a, b) => {
            let a = eval_inner(a, stats, reading, env)?;
            let b = eval_inner(b, stats, reading, env)?;
            Ok(a.max(b))
        }
        Expr::Min(a, b) => {
            let a = eval_inner(a, stats, reading, env)?;
            let b = eval_inner(b, stats, reading, env)?;
            Ok(a.min(b))
        }
        Expr::Sum {
            var,
            from,
            to,
            body,
        } => {
            let from = eval_inner(from, stats, reading, env)?;
            let to = eval_inner(to, stats, reading, env)?;
            let from = as_integer(&from).ok_or(EvalError::NonIntegerSumBound)?;
            let to = as_integer(&to).ok_or(EvalError::NonIntegerSumBound)?;
            let from = from.to_i64().ok_or(EvalError::SumBoundOutOfRange)?;
            let to = to.to_i64().ok_or(EvalError::SumBoundOutOfRange)?;
            let mut acc = BigRational::zero();
            // empty when from > to
            for i in from..=to {
                env.push((var.clone(), BigInt::from(i)));
                let term = eval_inner(body, stats, reading, env);
                env.pop();
                acc += term?;
            }
            Ok(acc)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub reason: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "expression syntax error: {}", self.reason)
    }
}

impl std::error::Error for SyntaxError {}

fn syntax(reason: impl Into<String>) -> SyntaxError {
    SyntaxError {
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum SExpr {
    Atom(String),
    List(Vec<SExpr>),
}

fn tokenize(src: &str) -> Result<Vec<String>, SyntaxError> {
    let mut tokens = Vec::new();
    let mut cur = String::new();
    for ch in src.chars() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    tokens.push(std::mem::take(&mut cur));
                }
                tokens.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    tokens.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    Ok(tokens)
}

fn parse_sexpr(tokens: &[String], pos: &mut usize) -> Result<SExpr, SyntaxError> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| syntax("unexpected end of input"))?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos).map(|s| s.as_str()) {
                    Some(")") => {
                        *pos += 1;
                        return Ok(SExpr::List(items));
                    }
                    Some(_) => items.push(parse_sexpr(tokens, pos)?),
                    None => return Err(syntax("missing closing parenthesis")),
                }
            }
        }
        ")" => Err(syntax("unexpected ')'")),
        _ => Ok(SExpr::Atom(tok.clone())),
    }
}

fn read_one(src: &str) -> Result<SExpr, SyntaxError> {
    let tokens = tokenize(src)?;
    let mut pos = 0;
    let e = parse_sexpr(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(syntax("trailing tokens after expression"));
    }
    Ok(e)
}

fn var_of(name: &str) -> Option<Var> {
    Some(match name {
        "n" => Var::N,
        "m" => Var::M,
        "Delta" => Var::MaxDeg,
        "delta" => Var::MinDeg,
        "lambda" => Var::Lambda,
        "irr" => Var::Irr,
        "irrT" => Var::IrrT,
        "M1" => Var::M1,
        "M1edge" => Var::M1Edge,
        "M2" => Var::M2,
        "F" => Var::F,
        "sigma" => Var::Sigma,
        _ => return None,
    })
}

fn build(sexpr: &SExpr) -> Result<Expr, SyntaxError> {
    match sexpr {
        SExpr::Atom(a) => {
            if let Ok(k) = a.parse::<BigInt>() {
                return Ok(Expr::Int(k));
            }
            if let Some(v) = var_of(a) {
                return Ok(Expr::Var(v));
            }
            // anything else is a summation index reference
            if a.chars().all(|c| c.is_ascii_alphabetic()) {
                return Ok(Expr::Idx(a.clone()));
            }
            Err(syntax(format!("unrecognized atom '{a}'")))
        }
        SExpr::List(items) => {
            let (head, args) = items
                .split_first()
                .ok_or_else(|| syntax("empty expression '()'"))?;
            let op = match head {
                SExpr::Atom(op) => op.as_str(),
                SExpr::List(_) => return Err(syntax("operator must be an atom")),
            };
            let exprs = |args: &[SExpr]| -> Result<Vec<Expr>, SyntaxError> {
                args.iter().map(build).collect()
            };
            let two = |args: &[SExpr], op: &str| -> Result<(Box<Expr>, Box<Expr>), SyntaxError> {
                if args.len() != 2 {
                    return Err(syntax(format!("'{op}' takes exactly two arguments")));
                }
                Ok((Box::new(build(&args[0])?), Box::new(build(&args[1])?)))
            };
            match op {
                "+" => {
                    if args.is_empty() {
                        return Err(syntax("'+' needs at least one argument"));
                    }
                    Ok(Expr::Add(exprs(args)?))
                }
                "*" => {
                    if args.is_empty() {
                        return Err(syntax("'*' needs at least one argument"));
                    }
                    Ok(Expr::Mul(exprs(args)?))
                }
                "-" => match args.len() {
                    1 => Ok(Expr::Neg(Box::new(build(&args[0])?))),
                    2 => {
                        let (a, b) = two(args, "-")?;
                        Ok(Expr::Sub(a, b))
                    }
                    _ => Err(syntax("'-' takes one or two arguments")),
                },
                "/" => {
                    let (a, b) = two(args, "/")?;
                    Ok(Expr::Div(a, b))
                }
                "pow" => {
                    let (a, b) = two(args, "pow")?;
                    Ok(Expr::Pow(a, b))
                }
                "abs" => {
                    if args.len() != 1 {
                        return Err(syntax("'abs' takes one argument"));
                    }
                    Ok(Expr::Abs(Box::new(build(&args[0])?)))
                }
                "binom" => {
                    let (a, b) = two(args, "binom")?;
                    Ok(Expr::Binom(a, b))
                }
                "max" => {
                    let (a, b) = two(args, "max")?;
                    Ok(Expr::Max(a, b))
                }
                "min" => {
                    let (a, b) = two(args, "min")?;
                    Ok(Expr::Min(a, b))
                }
                "d" => {
                    if args.len() != 1 {
                        return Err(syntax("'d' takes one index argument"));
                    }
                    Ok(Expr::Deg(Box::new(build(&args[0])?)))
                }
                "sum" => {
                    if args.len() != 4 {
                        return Err(syntax("'sum' takes (sum i from to body)"));
                    }
                    let var = match &args[0] {
                        SExpr::Atom(a) if var_of(a).is_none() && a.parse::<BigInt>().is_err() => {
                            a.clone()
                        }
                        _ => return Err(syntax("'sum' index must be a fresh symbol")),
                    };
                    Ok(Expr::Sum {
                        var,
                        from: Box::new(build(&args[1])?),
                        to: Box::new(build(&args[2])?),
                        body: Box::new(build(&args[3])?),
                    })
                }
                other => Err(syntax(format!("unknown operator '{other}'"))),
            }
        }
    }
}

/// Checks that every index reference is bound by an enclosing `sum`.
fn check_bound(expr: &Expr, bound: &mut Vec<String>) -> Result<(), SyntaxError> {
    match expr {
        Expr::Idx(name) => {
            if bound.iter().any(|b| b == name) {
                Ok(())
            } else {
                Err(syntax(format!("unbound symbol '{name}'")))
            }
        }
        Expr::Int(_) | Expr::Var(_) => Ok(()),
        Expr::Deg(e) | Expr::Neg(e) | Expr::Abs(e) => check_bound(e, bound),
        Expr::Add(v) | Expr::Mul(v) => v.iter().try_for_each(|e| check_bound(e, bound)),
        Expr::Sub(a, b)
        | Expr::Div(a, b)
        | Expr::Pow(a, b)
        | Expr::Binom(a, b)
        | Expr::Max(a, b)
        | Expr::Min(a, b) => {
            check_bound(a, bound)?;
            check_bound(b, bound)
        }
        Expr::Sum {
            var,
            from,
            to,
            body,
        } => {
            check_bound(from, bound)?;
            check_bound(to, bound)?;
            bound.push(var.clone());
            let r = check_bound(body, bound);
            bound.pop();
            r
        }
    }
}

/// Parses one expression from prefix syntax.
pub fn parse(src: &str) -> Result<Expr, SyntaxError> {
    let expr = build(&read_one(src)?)?;
    check_bound(&expr, &mut Vec::new())?;
    Ok(expr)
}

/// Parses a relation form `(= lhs rhs)`, `(<= lhs rhs)`, or `(>= lhs rhs)`.
pub fn parse_relation(src: &str) -> Result<(Rel, Expr, Expr), SyntaxError> {
    let sexpr = read_one(src)?;
    let SExpr::List(items) = &sexpr else {
        return Err(syntax("expected a relation list"));
    };
    let [head, lhs, rhs] = items.as_slice() else {
        return Err(syntax("relation takes (rel lhs rhs)"));
    };
    let rel = match head {
        SExpr::Atom(a) => match a.as_str() {
            "=" => Rel::Eq,
            "<=" => Rel::Le,
            ">=" => Rel::Ge,
            other => return Err(syntax(format!("unknown relation '{other}'"))),
        },
        SExpr::List(_) => return Err(syntax("relation must be an atom")),
    };
    let lhs = build(lhs)?;
    let rhs = build(rhs)?;
    check_bound(&lhs, &mut Vec::new())?;
    check_bound(&rhs, &mut Vec::new())?;
    Ok((rel, lhs, rhs))
}
