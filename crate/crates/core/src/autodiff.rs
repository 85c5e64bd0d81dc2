//! Mixed partial derivatives of scalar fields on `TM`.
//!
//! Coordinates are ordered `(x¹..xⁿ, y¹..yⁿ)`, so variable `i` is `xⁱ⁺¹`
//! for `i < n` and `yⁱ⁻ⁿ⁺¹` otherwise. [`partial`] is exact (jet
//! arithmetic, no truncation error); [`fd_partial`] is an independent
//! central-difference estimate used as a test oracle.

use crate::expr::{EvalError, Expression};
use crate::jet::{Jet, JetSpace, MultiIndex, MAX_ORDER};
use crate::scalar::Scalar;

/// Highest order [`fd_partial`] accepts.
pub const MAX_FD_ORDER: usize = 3;

/// Default finite-difference step before coordinate scaling.
pub const DEFAULT_FD_STEP: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DiffError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("derivative order {order} exceeds the maximum {max}")]
    OrderExceeded { order: usize, max: usize },
    #[error("multi-index has {got} variables, expected {expected}")]
    IndexShape { got: usize, expected: usize },
}

/// A coordinate on `TM`, zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coord {
    X(usize),
    Y(usize),
}

impl Coord {
    pub fn var(self, n: usize) -> usize {
        match self {
            Coord::X(i) => i,
            Coord::Y(i) => n + i,
        }
    }
}

/// `∂^α` over the `2n` coordinates of `TM`, e.g. `alpha(3, &[Coord::Y(0), Coord::Y(1)])`.
pub fn alpha(n: usize, coords: &[Coord]) -> MultiIndex {
    let vars: Vec<usize> = coords.iter().map(|c| c.var(n)).collect();
    MultiIndex::from_vars(2 * n, &vars)
}

/// A scalar field on `TM` that can be evaluated over any [`Scalar`].
pub trait ScalarField {
    fn eval<S: Scalar>(&self, x: &[S], y: &[S]) -> Result<S, EvalError>;
}

impl ScalarField for Expression {
    fn eval<S: Scalar>(&self, x: &[S], y: &[S]) -> Result<S, EvalError> {
        self.evaluate(x, y)
    }
}

impl<F: ScalarField> ScalarField for &F {
    fn eval<S: Scalar>(&self, x: &[S], y: &[S]) -> Result<S, EvalError> {
        (**self).eval(x, y)
    }
}

/// `f²` for a field `f`.
#[derive(Debug, Clone, Copy)]
pub struct Squared<F>(pub F);

impl<F: ScalarField> ScalarField for Squared<F> {
    fn eval<S: Scalar>(&self, x: &[S], y: &[S]) -> Result<S, EvalError> {
        let v = self.0.eval(x, y)?;
        Ok(v.clone() * v)
    }
}

/// The field `(x, y) ↦ g_ij(x, y) = ½ ∂²F²/∂yⁱ∂yʲ`, itself computed with
/// an order-2 jet over whatever scalar the caller evaluates it with.
#[derive(Debug, Clone, Copy)]
pub struct MetricComponent<F> {
    pub finsler: F,
    pub i: usize,
    pub j: usize,
}

impl<F: ScalarField> ScalarField for MetricComponent<F> {
    fn eval<S: Scalar>(&self, x: &[S], y: &[S]) -> Result<S, EvalError> {
        let n = x.len();
        let (xj, yj) = seed(x, y, 2);
        let f = self.finsler.eval(&xj, &yj)?;
        let f2 = f.clone() * f;
        let a = alpha(n, &[Coord::Y(self.i), Coord::Y(self.j)]);
        let d = f2.partial(&a).expect("order-2 jet carries second derivatives");
        Ok(d * S::from_f64(0.5))
    }
}

/// Seeds coordinate jets of the given order at `(x, y)`.
pub fn seed<T: Scalar>(x: &[T], y: &[T], order: usize) -> (Vec<Jet<T>>, Vec<Jet<T>>) {
    let n = x.len();
    let space = JetSpace::shared(2 * n);
    let xs = x
        .iter()
        .enumerate()
        .map(|(i, v)| Jet::variable(&space, order, i, v.clone()))
        .collect();
    let ys = y
        .iter()
        .enumerate()
        .map(|(i, v)| Jet::variable(&space, order, n + i, v.clone()))
        .collect();
    (xs, ys)
}

/// Evaluates `f` as a jet of the given order at `(x, y)`.
pub fn jet_of<F: ScalarField>(
    f: &F,
    x: &[f64],
    y: &[f64],
    order: usize,
) -> Result<Jet<f64>, DiffError> {
    if order > MAX_ORDER {
        return Err(DiffError::OrderExceeded {
            order,
            max: MAX_ORDER,
        });
    }
    let (xj, yj) = seed(x, y, order);
    Ok(f.eval(&xj, &yj)?)
}

/// Exact mixed partial `∂^α f` at `(x, y)`.
pub fn partial<F: ScalarField>(
    f: &F,
    alpha: &MultiIndex,
    x: &[f64],
    y: &[f64],
) -> Result<f64, DiffError> {
    check_shape(alpha, x.len())?;
    let jet = jet_of(f, x, y, alpha.order())?;
    Ok(jet.partial(alpha).expect("jet order equals |α|"))
}

fn check_shape(alpha: &MultiIndex, n: usize) -> Result<(), DiffError> {
    if alpha.nvars() != 2 * n {
        return Err(DiffError::IndexShape {
            got: alpha.nvars(),
            expected: 2 * n,
        });
    }
    Ok(())
}

/// A batch of partials at one base point, served by a single jet.
#[derive(Debug, Clone)]
pub struct DerivativeRequest {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub alphas: Vec<MultiIndex>,
}

impl DerivativeRequest {
    pub fn new(x: Vec<f64>, y: Vec<f64>, alphas: Vec<MultiIndex>) -> Self {
        DerivativeRequest { x, y, alphas }
    }

    /// All multi-indices of order `≤ order` over `2n` variables.
    pub fn all_upto(x: Vec<f64>, y: Vec<f64>, order: usize) -> Result<Self, DiffError> {
        if order > MAX_ORDER {
            return Err(DiffError::OrderExceeded {
                order,
                max: MAX_ORDER,
            });
        }
        let space = JetSpace::shared(2 * x.len());
        let alphas = (0..space.len(order))
            .map(|i| space.monomial(i).clone())
            .collect();
        Ok(DerivativeRequest { x, y, alphas })
    }

    pub fn max_order(&self) -> usize {
        self.alphas.iter().map(MultiIndex::order).max().unwrap_or(0)
    }

    pub fn evaluate<F: ScalarField>(&self, f: &F) -> Result<Vec<f64>, DiffError> {
        for a in &self.alphas {
            check_shape(a, self.x.len())?;
        }
        let jet = jet_of(f, &self.x, &self.y, self.max_order())?;
        Ok(self
            .alphas
            .iter()
            .map(|a| jet.partial(a).expect("within jet order"))
            .collect())
    }
}

/// Central-difference estimate of `∂^α f` with one Richardson step.
///
/// Each differentiated direction uses a central first difference with step
/// `h · max(1, |coordinate|)`; nesting them gives an `O(h²)` estimate,
/// and combining steps `h` and `h/2` as `(4 D(h/2) − D(h)) / 3` raises it
/// to `O(h⁴)`. Uses `2^(|α|+1)` evaluations of `f`.
pub fn fd_partial<F: ScalarField>(
    f: &F,
    alpha: &MultiIndex,
    x: &[f64],
    y: &[f64],
    h: f64,
) -> Result<f64, DiffError> {
    check_shape(alpha, x.len())?;
    if alpha.order() > MAX_FD_ORDER {
        return Err(DiffError::OrderExceeded {
            order: alpha.order(),
            max: MAX_FD_ORDER,
        });
    }
    let n = x.len();
    let mut z: Vec<f64> = x.iter().chain(y).copied().collect();
    let vars = alpha.vars();
    let steps: Vec<f64> = z.iter().map(|c| h * c.abs().max(1.0)).collect();
    let coarse = nested_difference(f, n, &mut z, &vars, &steps, 1.0)?;
    let fine = nested_difference(f, n, &mut z, &vars, &steps, 0.5)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

fn nested_difference<F: ScalarField>(
    f: &F,
    n: usize,
    z: &mut [f64],
    vars: &[usize],
    steps: &[f64],
    scale: f64,
) -> Result<f64, DiffError> {
    let Some((&v, rest)) = vars.split_first() else {
        return Ok(f.eval(&z[..n], &z[n..])?);
    };
    let h = steps[v] * scale;
    let base = z[v];
    z[v] = base + h;
    let plus = nested_difference(f, n, z, rest, steps, scale);
    z[v] = base - h;
    let minus = nested_difference(f, n, z, rest, steps, scale);
    z[v] = base;
    Ok((plus? - minus?) / (2.0 * h))
}
