use std::fmt;

use super::{ExprKind, Expression, SourceSpan};
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at {span}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
}

impl ParseError {
    fn new(span: SourceSpan, message: impl Into<String>) -> Self {
        ParseError {
            span,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    /// Numeric literal; `integer` when it is a bare digit string.
    Number { value: f64, integer: Option<u64> },
    X(u64),
    Y(u64),
    Sqrt,
    Abs,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Number { value, .. } => write!(f, "number {value}"),
            Tok::X(i) => write!(f, "x{i}"),
            Tok::Y(i) => write!(f, "y{i}"),
            Tok::Sqrt => f.write_str("'sqrt'"),
            Tok::Abs => f.write_str("'abs'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, SourceSpan::new(i, i + 1)));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == b'.' {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let mut integer = true;
            if i < bytes.len() && bytes[i] == b'.' {
                integer = false;
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    integer = false;
                    i = j;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let span = SourceSpan::new(start, i);
            let lit = &text[start..i];
            let value: f64 = lit
                .parse()
                .map_err(|_| ParseError::new(span, format!("malformed number '{lit}'")))?;
            let integer = if integer { lit.parse::<u64>().ok() } else { None };
            out.push((Tok::Number { value, integer }, span));
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                i += 1;
            }
            let word = &text[start..i];
            let tok = match word {
                "sqrt" => Tok::Sqrt,
                "abs" => Tok::Abs,
                "x" | "y" => {
                    let ds = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let span = SourceSpan::new(start, i);
                    if ds == i {
                        return Err(ParseError::new(
                            span,
                            format!("variable '{word}' needs an index"),
                        ));
                    }
                    let idx: u64 = text[ds..i]
                        .parse()
                        .map_err(|_| ParseError::new(span, "variable index too large"))?;
                    if word == "x" {
                        Tok::X(idx)
                    } else {
                        Tok::Y(idx)
                    }
                }
                _ => {
                    return Err(ParseError::new(
                        SourceSpan::new(start, i),
                        format!("unknown identifier '{word}'"),
                    ))
                }
            };
            out.push((tok, SourceSpan::new(start, i)));
            continue;
        }
        let ch = text[i..].chars().next().unwrap_or('?');
        return Err(ParseError::new(
            SourceSpan::new(i, i + ch.len_utf8()),
            format!("unexpected character '{ch}'"),
        ));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    dim: usize,
    text: &'a str,
}

/// Parses `text` as a function of `x1..xn, y1..yn`.
pub fn parse(text: &str, n: usize) -> Result<Expression, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        dim: n,
        text,
    };
    if p.toks.is_empty() {
        return Err(ParseError::new(SourceSpan::new(0, text.len()), "empty expression"));
    }
    let e = p.expr()?;
    if let Some((tok, span)) = p.peek_full() {
        return Err(ParseError::new(span, format!("unexpected {tok} after expression")));
    }
    Ok(e)
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_full(&self) -> Option<(Tok, SourceSpan)> {
        self.toks.get(self.pos).cloned()
    }

    fn end_span(&self) -> SourceSpan {
        SourceSpan::new(self.text.len(), self.text.len())
    }

    fn bump(&mut self) -> Option<(Tok, SourceSpan)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<SourceSpan, ParseError> {
        match self.bump() {
            Some((t, span)) if t == want => Ok(span),
            Some((t, span)) => Err(ParseError::new(span, format!("expected {want}, found {t}"))),
            None => Err(ParseError::new(
                self.end_span(),
                format!("expected {want}, found end of input"),
            )),
        }
    }

    fn expr(&mut self) -> Result<Expression, ParseError> {
        let mut lhs = self.term()?;
        while let Some(op) = self.peek() {
            let add = match op {
                Tok::Plus => true,
                Tok::Minus => false,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            let span = lhs.span.join(rhs.span);
            let kind = if add {
                ExprKind::Add(Box::new(lhs), Box::new(rhs))
            } else {
                ExprKind::Sub(Box::new(lhs), Box::new(rhs))
            };
            lhs = Expression::new(kind, span);
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expression, ParseError> {
        let mut lhs = self.factor()?;
        while let Some(op) = self.peek() {
            let mul = match op {
                Tok::Star => true,
                Tok::Slash => false,
                _ => break,
            };
            self.bump();
            let rhs = self.factor()?;
            let span = lhs.span.join(rhs.span);
            let kind = if mul {
                ExprKind::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                ExprKind::Div(Box::new(lhs), Box::new(rhs))
            };
            lhs = Expression::new(kind, span);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expression, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let (exp, exp_span) = self.rational()?;
        let span = base.span.join(exp_span);
        Ok(Expression::new(ExprKind::Pow(Box::new(base), exp), span))
    }

    fn integer_literal(&mut self) -> Result<(u64, SourceSpan), ParseError> {
        match self.bump() {
            Some((
                Tok::Number {
                    integer: Some(v), ..
                },
                span,
            )) => Ok((v, span)),
            Some((t, span)) => Err(ParseError::new(
                span,
                format!("expected integer exponent, found {t}"),
            )),
            None => Err(ParseError::new(
                self.end_span(),
                "expected integer exponent, found end of input",
            )),
        }
    }

    fn rational(&mut self) -> Result<(crate::scalar::Rational, SourceSpan), ParseError> {
        let mut negative = false;
        let mut start: Option<SourceSpan> = None;
        if self.peek() == Some(&Tok::Minus) {
            let (_, s) = self.bump().expect("peeked");
            negative = true;
            start = Some(s);
        }
        let (num, num_span) = self.integer_literal()?;
        let mut span = start.map_or(num_span, |s| s.join(num_span));
        let mut den = 1u64;
        let next_is_int = matches!(
            self.toks.get(self.pos + 1),
            Some((Tok::Number { integer: Some(_), .. }, _))
        );
        if self.peek() == Some(&Tok::Slash) && next_is_int {
            self.bump();
            let (d, d_span) = self.integer_literal()?;
            if d == 0 {
                return Err(ParseError::new(d_span, "exponent denominator must be positive"));
            }
            den = d;
            span = span.join(d_span);
        }
        let num = i64::try_from(num)
            .map_err(|_| ParseError::new(span, "exponent too large"))?;
        let num = if negative { -num } else { num };
        let r = Rational::new(num, den).expect("den > 0");
        Ok((r, span))
    }

    fn variable(&self, idx: u64, span: SourceSpan) -> Result<usize, ParseError> {
        if idx == 0 {
            return Err(ParseError::new(span, "variable indices start at 1"));
        }
        if idx as usize > self.dim {
            return Err(ParseError::new(
                span,
                format!("variable index {idx} exceeds dimension {}", self.dim),
            ));
        }
        Ok(idx as usize - 1)
    }

    fn atom(&mut self) -> Result<Expression, ParseError> {
        let Some((tok, span)) = self.bump() else {
            return Err(ParseError::new(
                self.end_span(),
                "expected operand, found end of input",
            ));
        };
        match tok {
            Tok::Number { value, .. } => Ok(Expression::new(ExprKind::Constant(value), span)),
            Tok::X(i) => Ok(Expression::new(ExprKind::VarX(self.variable(i, span)?), span)),
            Tok::Y(i) => Ok(Expression::new(ExprKind::VarY(self.variable(i, span)?), span)),
            Tok::Sqrt | Tok::Abs => {
                self.expect(Tok::LParen)?;
                let inner = self.expr()?;
                let close = self.expect(Tok::RParen)?;
                let kind = if tok == Tok::Sqrt {
                    ExprKind::Sqrt(Box::new(inner))
                } else {
                    ExprKind::Abs(Box::new(inner))
                };
                Ok(Expression::new(kind, span.join(close)))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Minus => {
                let inner = self.atom()?;
                let s = span.join(inner.span);
                Ok(Expression::new(ExprKind::Neg(Box::new(inner)), s))
            }
            other => Err(ParseError::new(span, format!("expected operand, found {other}"))),
        }
    }
}
