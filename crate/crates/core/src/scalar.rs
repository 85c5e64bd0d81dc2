//! Numeric abstraction shared by plain evaluation and jet evaluation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Why a scalar operation has no value (or no derivative) at its argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainFault {
    SqrtOfNegative,
    DivisionByZero,
    NegativeBaseFractionalPower,
    /// The value exists but the requested derivatives do not (sqrt, abs or a
    /// fractional power at 0).
    NotDifferentiable,
}

impl fmt::Display for DomainFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DomainFault::SqrtOfNegative => "sqrt of negative",
            DomainFault::DivisionByZero => "division by zero",
            DomainFault::NegativeBaseFractionalPower => "fractional power of negative base",
            DomainFault::NotDifferentiable => "not differentiable at 0",
        };
        f.write_str(s)
    }
}

/// A reduced fraction `num/den` with `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: u64,
}

impl Rational {
    pub fn new(num: i64, den: u64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        let g = gcd(num.unsigned_abs(), den).max(1);
        Some(Rational {
            num: num / g as i64,
            den: den / g,
        })
    }

    pub fn integer(num: i64) -> Self {
        Rational { num, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A commutative ring with fallible division, square root, absolute value
/// and fractional powers.
///
/// Implemented by `f64` and by [`Jet<T>`](crate::jet::Jet) for any scalar
/// `T`, so one expression tree evaluates to plain values, truncated Taylor
/// expansions, or jets of jets.
pub trait Scalar:
    Clone
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(v: f64) -> Self;

    /// The primal (order-zero) value.
    fn value(&self) -> f64;

    fn try_div(&self, rhs: &Self) -> Result<Self, DomainFault>;

    fn try_sqrt(&self) -> Result<Self, DomainFault>;

    fn try_abs(&self) -> Result<Self, DomainFault>;

    /// `self^p` for a non-integer rational `p`.
    fn try_powf(&self, p: Rational) -> Result<Self, DomainFault>;

    /// `self^p` for any rational `p`. Integer exponents go through repeated
    /// multiplication so they stay exact (and differentiable) at zero.
    fn try_pow(&self, p: Rational) -> Result<Self, DomainFault> {
        if !p.is_integer() {
            return self.try_powf(p);
        }
        let e = p.num();
        let base = if e < 0 {
            Self::from_f64(1.0).try_div(self)?
        } else {
            self.clone()
        };
        Ok(powi(base, e.unsigned_abs()))
    }
}

fn powi<S: Scalar>(base: S, mut e: u64) -> S {
    if e == 0 {
        return S::from_f64(1.0);
    }
    let mut acc: Option<S> = None;
    let mut sq = base;
    loop {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => sq.clone(),
                Some(a) => a * sq.clone(),
            });
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        sq = sq.clone() * sq;
    }
    acc.expect("e > 0")
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }

    fn value(&self) -> f64 {
        *self
    }

    fn try_div(&self, rhs: &Self) -> Result<Self, DomainFault> {
        if *rhs == 0.0 {
            Err(DomainFault::DivisionByZero)
        } else {
            Ok(self / rhs)
        }
    }

    fn try_sqrt(&self) -> Result<Self, DomainFault> {
        if *self < 0.0 {
            Err(DomainFault::SqrtOfNegative)
        } else {
            Ok(self.sqrt())
        }
    }

    fn try_abs(&self) -> Result<Self, DomainFault> {
        Ok(self.abs())
    }

    fn try_powf(&self, p: Rational) -> Result<Self, DomainFault> {
        if *self < 0.0 {
            return Err(DomainFault::NegativeBaseFractionalPower);
        }
        if *self == 0.0 && p.num() < 0 {
            return Err(DomainFault::DivisionByZero);
        }
        Ok(self.powf(p.to_f64()))
    }
}
