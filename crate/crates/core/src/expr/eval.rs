use super::{ExprKind, Expression, SourceSpan};
use crate::scalar::{DomainFault, Scalar};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("DomainError: {fault} at {span}")]
    Domain { fault: DomainFault, span: SourceSpan },
    #[error("expression needs dimension {needed}, got x of length {x_len} and y of length {y_len}")]
    Dimension {
        needed: usize,
        x_len: usize,
        y_len: usize,
    },
}

impl EvalError {
    /// Human-readable message quoting the offending subexpression.
    pub fn describe(&self, source: &str) -> String {
        match self {
            EvalError::Domain { fault, span } => match span.snippet(source) {
                Some(s) if !s.is_empty() => format!("DomainError: {fault} (`{s}` at {span})"),
                _ => self.to_string(),
            },
            EvalError::Dimension { .. } => self.to_string(),
        }
    }
}

impl Expression {
    /// Evaluates the tree at `(x, y)` over any [`Scalar`].
    pub fn evaluate<S: Scalar>(&self, x: &[S], y: &[S]) -> Result<S, EvalError> {
        let needed = self.min_dimension();
        if x.len() != y.len() || x.len() < needed {
            return Err(EvalError::Dimension {
                needed,
                x_len: x.len(),
                y_len: y.len(),
            });
        }
        self.eval_inner(x, y)
    }

    fn eval_inner<S: Scalar>(&self, x: &[S], y: &[S]) -> Result<S, EvalError> {
        // faults are attributed to the operand that left the domain
        let at = |span: SourceSpan| move |fault| EvalError::Domain { fault, span };
        Ok(match &self.kind {
            ExprKind::Constant(c) => S::from_f64(*c),
            ExprKind::VarX(i) => x[*i].clone(),
            ExprKind::VarY(i) => y[*i].clone(),
            ExprKind::Add(a, b) => a.eval_inner(x, y)? + b.eval_inner(x, y)?,
            ExprKind::Sub(a, b) => a.eval_inner(x, y)? - b.eval_inner(x, y)?,
            ExprKind::Mul(a, b) => a.eval_inner(x, y)? * b.eval_inner(x, y)?,
            ExprKind::Div(a, b) => {
                let num = a.eval_inner(x, y)?;
                let den = b.eval_inner(x, y)?;
                num.try_div(&den).map_err(at(b.span))?
            }
            ExprKind::Neg(a) => -a.eval_inner(x, y)?,
            ExprKind::Pow(a, p) => a.eval_inner(x, y)?.try_pow(*p).map_err(at(a.span))?,
            ExprKind::Sqrt(a) => a.eval_inner(x, y)?.try_sqrt().map_err(at(a.span))?,
            ExprKind::Abs(a) => a.eval_inner(x, y)?.try_abs().map_err(at(a.span))?,
        })
    }
}
