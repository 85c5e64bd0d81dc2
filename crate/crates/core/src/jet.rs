//! Truncated multivariate Taylor jets.
//!
//! A [`Jet`] of order `K` over `m` variables stores every Taylor coefficient
//! `c_α = ∂^α f / α!` with `|α| ≤ K`, densely, in graded order. Because the
//! monomials of degree `≤ d` form a prefix of that order, truncating a jet to
//! a lower order is a `Vec::truncate`, and the product table of the largest
//! order serves every smaller order as a prefix.
//!
//! Jets are generic over their coefficient type, so `Jet<Jet<f64>>` nests
//! one expansion inside another.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use crate::scalar::{DomainFault, Rational, Scalar};

/// Highest total derivative order a jet can carry.
pub const MAX_ORDER: usize = 4;

/// Exponent vector of a monomial / mixed partial derivative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u8>);

impl MultiIndex {
    pub fn zero(nvars: usize) -> Self {
        MultiIndex(vec![0; nvars])
    }

    pub fn from_exponents(exponents: Vec<u8>) -> Self {
        MultiIndex(exponents)
    }

    /// Builds `∂_{v1} ∂_{v2} ...` from a list of variable indices (repeats
    /// allowed, order irrelevant).
    pub fn from_vars(nvars: usize, vars: &[usize]) -> Self {
        let mut e = vec![0u8; nvars];
        for &v in vars {
            assert!(v < nvars, "variable {v} out of range for {nvars} variables");
            e[v] += 1;
        }
        MultiIndex(e)
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn order(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    /// `α!`
    pub fn factorial(&self) -> f64 {
        self.0
            .iter()
            .map(|&e| (1..=e as u64).product::<u64>() as f64)
            .product()
    }

    /// Expands the multi-index into a sorted list of variable indices.
    pub fn vars(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(v, &e)| std::iter::repeat_n(v, e as usize))
            .collect()
    }
}

/// Monomial bookkeeping for jets over a fixed number of variables.
pub struct JetSpace {
    nvars: usize,
    monomials: Vec<MultiIndex>,
    index: HashMap<MultiIndex, usize>,
    count_upto: [usize; MAX_ORDER + 1],
    /// `(i, j, k)` with `monomial[i] + monomial[j] = monomial[k]`, sorted by `k`.
    products: Vec<(u32, u32, u32)>,
    /// Range of `products` whose result index is `k`.
    product_ranges: Vec<(usize, usize)>,
    /// `raise[idx * nvars + v]`: index of `monomial[idx] + e_v`, or `u32::MAX`.
    raise: Vec<u32>,
}

impl fmt::Debug for JetSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JetSpace")
            .field("nvars", &self.nvars)
            .field("monomials", &self.monomials.len())
            .finish()
    }
}

impl JetSpace {
    fn build(nvars: usize) -> Self {
        let mut monomials = Vec::new();
        for d in 0..=MAX_ORDER {
            let mut cur = vec![0u8; nvars];
            push_degree(&mut monomials, &mut cur, 0, d);
        }
        let index: HashMap<MultiIndex, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut count_upto = [0usize; MAX_ORDER + 1];
        for m in &monomials {
            for (d, c) in count_upto.iter_mut().enumerate() {
                if m.order() <= d {
                    *c += 1;
                }
            }
        }

        let mut products = Vec::new();
        for (i, a) in monomials.iter().enumerate() {
            for (j, b) in monomials.iter().enumerate() {
                if a.order() + b.order() > MAX_ORDER {
                    continue;
                }
                let sum: Vec<u8> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
                let k = index[&MultiIndex(sum)];
                products.push((i as u32, j as u32, k as u32));
            }
        }
        products.sort_by_key(|&(i, j, k)| (k, i, j));
        let mut product_ranges = vec![(0, 0); monomials.len()];
        let mut start = 0;
        while start < products.len() {
            let k = products[start].2;
            let mut end = start;
            while end < products.len() && products[end].2 == k {
                end += 1;
            }
            product_ranges[k as usize] = (start, end);
            start = end;
        }

        let mut raise = vec![u32::MAX; monomials.len() * nvars];
        for (idx, m) in monomials.iter().enumerate() {
            for v in 0..nvars {
                let mut e = m.0.clone();
                e[v] += 1;
                if let Some(&k) = index.get(&MultiIndex(e)) {
                    raise[idx * nvars + v] = k as u32;
                }
            }
        }

        JetSpace {
            nvars,
            monomials,
            index,
            count_upto,
            products,
            product_ranges,
            raise,
        }
    }

    /// Process-wide cached space for `nvars` variables.
    pub fn shared(nvars: usize) -> Arc<JetSpace> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<JetSpace>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        guard
            .entry(nvars)
            .or_insert_with(|| Arc::new(JetSpace::build(nvars)))
            .clone()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of coefficients of a jet of the given order.
    pub fn len(&self, order: usize) -> usize {
        self.count_upto[order]
    }

    pub fn monomial(&self, idx: usize) -> &MultiIndex {
        &self.monomials[idx]
    }

    pub fn index_of(&self, alpha: &MultiIndex) -> Option<usize> {
        self.index.get(alpha).copied()
    }

    fn products_upto(&self, order: usize) -> &[(u32, u32, u32)] {
        let len = self.count_upto[order];
        let end = self.product_ranges[len - 1].1;
        &self.products[..end]
    }

    fn products_into(&self, k: usize) -> &[(u32, u32, u32)] {
        let (s, e) = self.product_ranges[k];
        &self.products[s..e]
    }
}

fn push_degree(out: &mut Vec<MultiIndex>, cur: &mut Vec<u8>, pos: usize, remaining: usize) {
    if cur.is_empty() {
        if remaining == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return;
    }
    if pos + 1 == cur.len() {
        cur[pos] = remaining as u8;
        out.push(MultiIndex(cur.clone()));
        cur[pos] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        cur[pos] = e as u8;
        push_degree(out, cur, pos + 1, remaining - e);
    }
    cur[pos] = 0;
}

/// Truncated Taylor expansion of a scalar field at a point.
#[derive(Clone)]
pub struct Jet<T> {
    /// `None` marks a constant: `coeffs == [c]` and every derivative is zero
    /// at every order.
    space: Option<Arc<JetSpace>>,
    order: usize,
    coeffs: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Jet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Jet")
            .field("order", &self.order)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

impl<T: Scalar> Jet<T> {
    pub fn constant(value: T) -> Self {
        Jet {
            space: None,
            order: MAX_ORDER,
            coeffs: vec![value],
        }
    }

    /// The coordinate function `v ↦ value + (v - v₀)` seeded at `value`.
    pub fn variable(space: &Arc<JetSpace>, order: usize, var: usize, value: T) -> Self {
        assert!(order <= MAX_ORDER, "jet order {order} exceeds {MAX_ORDER}");
        assert!(var < space.nvars, "variable {var} out of range");
        let len = space.len(order);
        let mut coeffs = vec![T::from_f64(0.0); len];
        coeffs[0] = value;
        if order >= 1 {
            let k = space.raise[var] as usize;
            coeffs[k] = T::from_f64(1.0);
        }
        Jet {
            space: Some(space.clone()),
            order,
            coeffs,
        }
    }

    pub fn from_coeffs(space: &Arc<JetSpace>, order: usize, coeffs: Vec<T>) -> Self {
        assert_eq!(coeffs.len(), space.len(order), "coefficient count mismatch");
        Jet {
            space: Some(space.clone()),
            order,
            coeffs,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.space.is_none()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn space(&self) -> Option<&Arc<JetSpace>> {
        self.space.as_ref()
    }

    pub fn primal(&self) -> &T {
        &self.coeffs[0]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Taylor coefficient `c_α`; `None` if `|α|` exceeds the jet's order.
    pub fn coefficient(&self, alpha: &MultiIndex) -> Option<T> {
        if alpha.order() > self.order {
            return None;
        }
        match &self.space {
            None => Some(if alpha.order() == 0 {
                self.coeffs[0].clone()
            } else {
                T::from_f64(0.0)
            }),
            Some(space) => {
                let idx = space.index_of(alpha)?;
                Some(self.coeffs[idx].clone())
            }
        }
    }

    /// Mixed partial derivative `∂^α` at the expansion point.
    pub fn partial(&self, alpha: &MultiIndex) -> Option<T> {
        self.coefficient(alpha)
            .map(|c| c * T::from_f64(alpha.factorial()))
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut out = self.clone();
        if order < out.order {
            out.order = order;
            if let Some(space) = &out.space {
                out.coeffs.truncate(space.len(order));
            }
        }
        out
    }

    /// Jet of `∂f/∂v`, one order lower.
    pub fn derivative(&self, var: usize) -> Self {
        let Some(space) = &self.space else {
            return Jet::constant(T::from_f64(0.0));
        };
        assert!(self.order >= 1, "cannot differentiate an order-0 jet");
        let order = self.order - 1;
        let len = space.len(order);
        let nv = space.nvars;
        let coeffs = (0..len)
            .map(|idx| {
                let k = space.raise[idx * nv + var] as usize;
                let e = space.monomials[idx].0[var] as f64 + 1.0;
                self.coeffs[k].clone() * T::from_f64(e)
            })
            .collect();
        Jet {
            space: Some(space.clone()),
            order,
            coeffs,
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        let f = T::from_f64(s);
        Jet {
            space: self.space.clone(),
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.clone() * f.clone()).collect(),
        }
    }

    fn shared_space(&self, other: &Self) -> Option<Arc<JetSpace>> {
        match (&self.space, &other.space) {
            (Some(a), Some(b)) => {
                assert_eq!(a.nvars, b.nvars, "jets over different variable sets");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    fn coeff_or_zero(&self, k: usize) -> T {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| T::from_f64(0.0))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        let space = self.shared_space(other);
        let order = self.order.min(other.order);
        let len = space.as_ref().map_or(1, |s| s.len(order));
        let coeffs = (0..len)
            .map(|k| f(self.coeff_or_zero(k), other.coeff_or_zero(k)))
            .collect();
        Jet {
            space,
            order,
            coeffs,
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        match (&self.space, &other.space) {
            (None, _) => {
                let c = self.coeffs[0].clone();
                other.map_coeffs(|x| c.clone() * x)
            }
            (_, None) => {
                let c = other.coeffs[0].clone();
                self.map_coeffs(|x| x * c.clone())
            }
            (Some(space), Some(_)) => {
                let space = self.shared_space(other).unwrap_or_else(|| space.clone());
                let order = self.order.min(other.order);
                let len = space.len(order);
                let mut out = vec![T::from_f64(0.0); len];
                for &(i, j, k) in space.products_upto(order) {
                    let (i, j, k) = (i as usize, j as usize, k as usize);
                    out[k] = out[k].clone() + self.coeffs[i].clone() * other.coeffs[j].clone();
                }
                Jet {
                    space: Some(space),
                    order,
                    coeffs: out,
                }
            }
        }
    }

    fn map_coeffs(&self, f: impl Fn(T) -> T) -> Self {
        Jet {
            space: self.space.clone(),
            order: self.order,
            coeffs: self.coeffs.iter().cloned().map(f).collect(),
        }
    }

    fn is_differentiated(&self) -> bool {
        self.space.is_some() && self.order >= 1
    }

    /// Univariate composition `g(self)` from the Taylor coefficients
    /// `taylor[k] = g^(k)(a₀)/k!` of `g` at the primal value.
    fn compose(&self, taylor: &[T]) -> Self {
        let Some(space) = &self.space else {
            return Jet::constant(taylor[0].clone());
        };
        let mut h = self.clone();
        h.coeffs[0] = T::from_f64(0.0);
        let len = space.len(self.order);
        let mut out = vec![T::from_f64(0.0); len];
        out[0] = taylor[0].clone();
        let mut power: Option<Jet<T>> = None;
        for c in taylor.iter().take(self.order + 1).skip(1) {
            let p = match power {
                None => h.clone(),
                Some(p) => p.mul_ref(&h),
            };
            for (o, pk) in out.iter_mut().zip(&p.coeffs) {
                *o = o.clone() + c.clone() * pk.clone();
            }
            power = Some(p);
        }
        Jet {
            space: Some(space.clone()),
            order: self.order,
            coeffs: out,
        }
    }
}

impl<T: Scalar> Add for Jet<T> {
    type Output = Jet<T>;
    fn add(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a + b)
    }
}

impl<T: Scalar> Sub for Jet<T> {
    type Output = Jet<T>;
    fn sub(self, rhs: Self) -> Self {
        self.zip_with(&rhs, |a, b| a - b)
    }
}

impl<T: Scalar> Mul for Jet<T> {
    type Output = Jet<T>;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<'a, T: Scalar> Add<&'a Jet<T>> for &'a Jet<T> {
    type Output = Jet<T>;
    fn add(self, rhs: &Jet<T>) -> Jet<T> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<'a, T: Scalar> Sub<&'a Jet<T>> for &'a Jet<T> {
    type Output = Jet<T>;
    fn sub(self, rhs: &Jet<T>) -> Jet<T> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<'a, T: Scalar> Mul<&'a Jet<T>> for &'a Jet<T> {
    type Output = Jet<T>;
    fn mul(self, rhs: &Jet<T>) -> Jet<T> {
        self.mul_ref(rhs)
    }
}

impl<T: Scalar> Neg for Jet<T> {
    type Output = Jet<T>;
    fn neg(self) -> Self {
        self.map_coeffs(|c| -c)
    }
}

impl<T: Scalar> Scalar for Jet<T> {
    fn from_f64(v: f64) -> Self {
        Jet::constant(T::from_f64(v))
    }

    fn value(&self) -> f64 {
        self.coeffs[0].value()
    }

    fn try_div(&self, rhs: &Self) -> Result<Self, DomainFault> {
        let Some(rspace) = &rhs.space else {
            let c = &rhs.coeffs[0];
            let coeffs = self
                .coeffs
                .iter()
                .map(|a| a.try_div(c))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(Jet {
                space: self.space.clone(),
                order: self.order,
                coeffs,
            });
        };
        let space = self.shared_space(rhs).unwrap_or_else(|| rspace.clone());
        let order = self.order.min(rhs.order);
        let len = space.len(order);
        let b0 = &rhs.coeffs[0];
        // q * b = a, solved coefficient by coefficient in graded order
        let mut q: Vec<T> = Vec::with_capacity(len);
        for k in 0..len {
            let ak = self.coeff_or_zero(k);
            let mut acc: Option<T> = None;
            for &(i, j, _) in space.products_into(k) {
                if j == 0 {
                    continue;
                }
                let t = q[i as usize].clone() * rhs.coeffs[j as usize].clone();
                acc = Some(match acc {
                    None => t,
                    Some(s) => s + t,
                });
            }
            let num = match acc {
                None => ak,
                Some(s) => ak - s,
            };
            q.push(num.try_div(b0)?);
        }
        Ok(Jet {
            space: Some(space),
            order,
            coeffs: q,
        })
    }

    fn try_sqrt(&self) -> Result<Self, DomainFault> {
        let s0 = self.coeffs[0].try_sqrt()?;
        let Some(space) = &self.space else {
            return Ok(Jet::constant(s0));
        };
        if self.order >= 1 && s0.value() == 0.0 {
            return Err(DomainFault::NotDifferentiable);
        }
        let len = space.len(self.order);
        let two_s0 = s0.clone() * T::from_f64(2.0);
        let mut s: Vec<T> = Vec::with_capacity(len);
        s.push(s0);
        // s * s = a; the two terms pairing s_k with s_0 give 2 s_0 s_k
        for k in 1..len {
            let mut rest = self.coeffs[k].clone();
            for &(i, j, _) in space.products_into(k) {
                if i == 0 || j == 0 {
                    continue;
                }
                rest = rest - s[i as usize].clone() * s[j as usize].clone();
            }
            s.push(rest.try_div(&two_s0)?);
        }
        Ok(Jet {
            space: Some(space.clone()),
            order: self.order,
            coeffs: s,
        })
    }

    fn try_abs(&self) -> Result<Self, DomainFault> {
        let v = self.value();
        if v > 0.0 {
            Ok(self.clone())
        } else if v < 0.0 {
            Ok(-self.clone())
        } else if self.is_differentiated() {
            Err(DomainFault::NotDifferentiable)
        } else {
            Ok(self.map_coeffs(|c| c.try_abs().unwrap_or(c)))
        }
    }

    fn try_powf(&self, p: Rational) -> Result<Self, DomainFault> {
        let a0 = &self.coeffs[0];
        let head = a0.try_powf(p)?;
        if !self.is_differentiated() {
            return Ok(self.compose(&[head]));
        }
        if a0.value() == 0.0 {
            return Err(DomainFault::NotDifferentiable);
        }
        // g(t) = t^p: g^(k)(a)/k! = binom(p, k) a^p / a^k
        let pf = p.to_f64();
        let mut taylor = Vec::with_capacity(self.order + 1);
        taylor.push(head.clone());
        let mut binom = 1.0;
        let mut cur = head;
        for k in 0..self.order {
            binom *= (pf - k as f64) / (k as f64 + 1.0);
            cur = cur.try_div(a0)?;
            taylor.push(cur.clone() * T::from_f64(binom));
        }
        Ok(self.compose(&taylor))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize) -> Arc<JetSpace> {
        JetSpace::shared(n)
    }

    #[test]
    fn graded_order_prefix() {
        let s = space(3);
        assert_eq!(s.len(0), 1);
        assert_eq!(s.len(1), 4);
        assert_eq!(s.len(2), 10);
        assert_eq!(s.len(4), 35);
        for idx in 0..s.len(4) {
            let d = s.monomial(idx).order();
            assert!(idx < s.len(d));
            if d > 0 {
                assert!(idx >= s.len(d - 1));
            }
        }
    }

    #[test]
    fn product_of_polynomials() {
        // f = (1 + x + 2y)(3 - y) at (x, y) = (0, 0) via shifted variables
        let s = space(2);
        let x = Jet::variable(&s, 2, 0, 0.0);
        let y = Jet::variable(&s, 2, 1, 0.0);
        let one = Jet::constant(1.0);
        let three = Jet::constant(3.0);
        let f = (&(&one + &x) + &y.scale(2.0)) * (&three - &y);
        let c = |e: Vec<u8>| f.coefficient(&MultiIndex(e)).unwrap();
        assert_eq!(c(vec![0, 0]), 3.0);
        assert_eq!(c(vec![1, 0]), 3.0);
        assert_eq!(c(vec![0, 1]), 5.0);
        assert_eq!(c(vec![1, 1]), -1.0);
        assert_eq!(c(vec![0, 2]), -2.0);
        assert_eq!(c(vec![2, 0]), 0.0);
    }

    #[test]
    fn division_inverts_multiplication() {
        let s = space(2);
        let x = Jet::variable(&s, 4, 0, 0.7);
        let y = Jet::variable(&s, 4, 1, -1.3);
        let a = &(&x * &y) + &Jet::constant(2.0);
        let b = &(&x * &x) + &y;
        let q = a.try_div(&b).unwrap();
        let back = &q * &b;
        for (u, v) in back.coeffs().iter().zip(a.coeffs()) {
            assert!((u - v).abs() < 1e-12, "{u} vs {v}");
        }
    }

    #[test]
    fn sqrt_squares_back() {
        let s = space(2);
        let x = Jet::variable(&s, 4, 0, 1.5);
        let y = Jet::variable(&s, 4, 1, 0.5);
        let a = &(&x * &x) + &y;
        let r = a.try_sqrt().unwrap();
        let back = &r * &r;
        for (u, v) in back.coeffs().iter().zip(a.coeffs()) {
            assert!((u - v).abs() < 1e-12);
        }
    }

    #[test]
    fn univariate_powf_derivatives() {
        // d^k/dx^k x^(3/2) at x = 4
        let s = space(1);
        let x = Jet::variable(&s, 4, 0, 4.0);
        let p = x.try_powf(Rational::new(3, 2).unwrap()).unwrap();
        let d = |k: u8| p.partial(&MultiIndex(vec![k])).unwrap();
        assert!((d(0) - 8.0).abs() < 1e-12);
        assert!((d(1) - 1.5 * 2.0).abs() < 1e-12);
        assert!((d(2) - 0.75 / 2.0).abs() < 1e-12);
        assert!((d(3) - (-0.375 / 8.0)).abs() < 1e-12);
        assert!((d(4) - (0.5625 / 32.0)).abs() < 1e-12);
    }

    #[test]
    fn non_differentiable_points() {
        let s = space(1);
        let z = Jet::variable(&s, 1, 0, 0.0);
        assert_eq!(z.try_sqrt().unwrap_err(), DomainFault::NotDifferentiable);
        assert_eq!(z.try_abs().unwrap_err(), DomainFault::NotDifferentiable);
        let z0 = Jet::variable(&s, 0, 0, 0.0);
        assert_eq!(z0.try_sqrt().unwrap().value(), 0.0);
        assert_eq!(z0.try_abs().unwrap().value(), 0.0);
        let neg = Jet::variable(&s, 2, 0, -1.0);
        assert_eq!(neg.try_sqrt().unwrap_err(), DomainFault::SqrtOfNegative);
    }

    #[test]
    fn derivative_lowers_order() {
        let s = space(2);
        let x = Jet::variable(&s, 3, 0, 2.0);
        let y = Jet::variable(&s, 3, 1, 3.0);
        let f = &(&x * &x) * &y; // x^2 y
        let fx = f.derivative(0); // 2xy
        assert_eq!(fx.order(), 2);
        assert_eq!(fx.value(), 12.0);
        let fxy = fx.derivative(1); // 2x
        assert_eq!(fxy.value(), 4.0);
        assert_eq!(fxy.partial(&MultiIndex(vec![1, 0])).unwrap(), 2.0);
    }

    #[test]
    fn constants_mix_with_jets() {
        let s = space(1);
        let x = Jet::variable(&s, 2, 0, 3.0);
        let c = Jet::constant(2.0);
        let q = c.try_div(&x).unwrap(); // 2/x
        assert!((q.partial(&MultiIndex(vec![1])).unwrap() + 2.0 / 9.0).abs() < 1e-15);
        assert!((q.partial(&MultiIndex(vec![2])).unwrap() - 4.0 / 27.0).abs() < 1e-15);
        assert_eq!(c.derivative(0).value(), 0.0);
    }
}
