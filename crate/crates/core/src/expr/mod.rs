//! Expression language for Finsler functions `F(x, y)`.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' rational)?
//! atom   := number | 'x' index | 'y' index | 'sqrt' '(' expr ')'
//!         | 'abs' '(' expr ')' | '(' expr ')' | '-' atom
//! rational := integer ('/' positive-integer)?
//! ```
//!
//! Variables are written one-based (`x1`, `y3`) and stored zero-based.
//! The exponent after `^` greedily takes a following `/integer`, so
//! `y1^2/3` is `y1^(2/3)`; write `(y1^2)/3` for the quotient.

mod eval;
mod parse;

use std::fmt;

use crate::scalar::Rational;

pub use eval::EvalError;
pub use parse::{parse, ParseError};

/// Byte range `[start, end)` into the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }

    pub fn join(self, other: SourceSpan) -> SourceSpan {
        SourceSpan::new(self.start.min(other.start), self.end.max(other.end))
    }

    /// The spanned slice of `source`, if the span lies inside it.
    pub fn snippet<'a>(&self, source: &'a str) -> Option<&'a str> {
        source.get(self.start..self.end)
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Constant(f64),
    /// Zero-based index of `x^{i+1}`.
    VarX(usize),
    /// Zero-based index of `y^{i+1}`.
    VarY(usize),
    Add(Box<Expression>, Box<Expression>),
    Sub(Box<Expression>, Box<Expression>),
    Mul(Box<Expression>, Box<Expression>),
    Div(Box<Expression>, Box<Expression>),
    Neg(Box<Expression>),
    Pow(Box<Expression>, Rational),
    Sqrt(Box<Expression>),
    Abs(Box<Expression>),
}

/// Immutable expression tree. Equality is structural and ignores spans.
#[derive(Debug, Clone)]
pub struct Expression {
    kind: ExprKind,
    span: SourceSpan,
}

impl PartialEq for Expression {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expression {
    pub fn new(kind: ExprKind, span: SourceSpan) -> Self {
        Expression { kind, span }
    }

    pub fn kind(&self) -> &ExprKind {
        &self.kind
    }

    pub fn span(&self) -> SourceSpan {
        self.span
    }

    /// Smallest `n` such that every variable index fits.
    pub fn min_dimension(&self) -> usize {
        match &self.kind {
            ExprKind::Constant(_) => 0,
            ExprKind::VarX(i) | ExprKind::VarY(i) => i + 1,
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
                a.min_dimension().max(b.min_dimension())
            }
            ExprKind::Neg(a) | ExprKind::Pow(a, _) | ExprKind::Sqrt(a) | ExprKind::Abs(a) => {
                a.min_dimension()
            }
        }
    }

    /// True if no `x` variable occurs.
    pub fn is_x_independent(&self) -> bool {
        match &self.kind {
            ExprKind::VarX(_) => false,
            ExprKind::Constant(_) | ExprKind::VarY(_) => true,
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
                a.is_x_independent() && b.is_x_independent()
            }
            ExprKind::Neg(a) | ExprKind::Pow(a, _) | ExprKind::Sqrt(a) | ExprKind::Abs(a) => {
                a.is_x_independent()
            }
        }
    }
}

/// Fully parenthesized form that re-parses to the same tree.
impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Constant(c) => write!(f, "{c}"),
            ExprKind::VarX(i) => write!(f, "x{}", i + 1),
            ExprKind::VarY(i) => write!(f, "y{}", i + 1),
            ExprKind::Add(a, b) => write!(f, "({a} + {b})"),
            ExprKind::Sub(a, b) => write!(f, "({a} - {b})"),
            ExprKind::Mul(a, b) => write!(f, "({a} * {b})"),
            ExprKind::Div(a, b) => write!(f, "({a} / {b})"),
            ExprKind::Neg(a) => write!(f, "(-{a})"),
            ExprKind::Pow(a, p) => write!(f, "(({a})^{p})"),
            ExprKind::Sqrt(a) => write!(f, "sqrt({a})"),
            ExprKind::Abs(a) => write!(f, "abs({a})"),
        }
    }
}
