//! Truncated Taylor series at a point.
//!
//! Coefficients are scaled derivatives, c_i = f^(i)(t0)/i!, so products are
//! plain Cauchy products and nothing grows like a factorial.  Binary
//! operations on jets of different orders truncate to the smaller order.

use crate::scalar::{factorial, Scalar};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum JetError {
    #[error("singular denominator: constant term is zero")]
    SingularDenominator,
    #[error("inner series of a composition must vanish at the base point")]
    NonZeroConstant,
    #[error("series reversion needs a nonzero linear term")]
    NotInvertible,
    #[error("jet of order {have} is too short, need order {need}")]
    InsufficientOrder { have: usize, need: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Jet<T = f64> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Jet<T> {
    /// Panics on an empty coefficient list; a jet has at least c0.
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least one coefficient");
        Jet { coeffs }
    }

    pub fn zero(k: usize) -> Self {
        Jet::new(vec![T::zero(); k + 1])
    }

    pub fn constant(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[0] = c;
        Jet::new(v)
    }

    /// The jet of the identity map t -> t at t0.
    pub fn variable(t0: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[0] = t0;
        if k >= 1 {
            v[1] = T::one();
        }
        Jet::new(v)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// c_i, or zero past the order.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn value(&self) -> T {
        self.coeffs[0].clone()
    }

    /// f^(i)(t0) = i!·c_i.
    pub fn derivative_value(&self, i: usize) -> T {
        self.coeff(i) * factorial::<T>(i)
    }

    pub fn truncate(&self, k: usize) -> Self {
        let mut v: Vec<T> = self.coeffs.iter().take(k + 1).cloned().collect();
        v.resize(k + 1, T::zero());
        Jet::new(v)
    }

    /// Jet of f′, one order shorter (order 0 stays order 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Jet::zero(0);
        }
        Jet::new(
            (1..=self.order())
                .map(|i| self.coeffs[i].clone() * T::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, k: &T) -> Self {
        Jet::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn add_constant(&self, c: &T) -> Self {
        let mut v = self.coeffs.clone();
        v[0] = v[0].clone() + c.clone();
        Jet::new(v)
    }

    pub fn div(&self, b: &Self) -> Result<Self, JetError> {
        let k = self.order().min(b.order());
        let b0 = b.coeffs[0].clone();
        if b0.is_zero() {
            return Err(JetError::SingularDenominator);
        }
        let mut q: Vec<T> = Vec::with_capacity(k + 1);
        for n in 0..=k {
            let mut acc = self.coeffs[n].clone();
            for j in 1..=n {
                acc = acc - b.coeffs[j].clone() * q[n - j].clone();
            }
            q.push(acc / b0.clone());
        }
        Ok(Jet::new(q))
    }

    pub fn recip(&self) -> Result<Self, JetError> {
        Jet::constant(T::one(), self.order()).div(self)
    }

    pub fn powi(&self, n: i32) -> Result<Self, JetError> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let mut acc = Jet::constant(T::one(), self.order());
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// self ∘ inner, where inner has zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, JetError> {
        if !inner.coeffs[0].is_zero() {
            return Err(JetError::NonZeroConstant);
        }
        let k = self.order().min(inner.order());
        let inner = inner.truncate(k);
        let mut acc = Jet::constant(self.coeff(k), k);
        for i in (0..k).rev() {
            acc = (&acc * &inner).add_constant(&self.coeffs[i]);
        }
        Ok(acc)
    }

    /// Compositional inverse r with self ∘ r = identity, for c0 = 0, c1 ≠ 0.
    pub fn revert(&self) -> Result<Self, JetError> {
        if !self.coeffs[0].is_zero() {
            return Err(JetError::NonZeroConstant);
        }
        let k = self.order();
        if k == 0 {
            return Ok(Jet::zero(0));
        }
        let c1 = self.coeffs[1].clone();
        if c1.is_zero() {
            return Err(JetError::NotInvertible);
        }
        let mut r = Jet::zero(k);
        r.coeffs[1] = T::one() / c1.clone();
        // (self∘r)_n = c1 r_n + terms in r_1..r_{n-1}
        for n in 2..=k {
            let comp = self.compose(&r)?;
            r.coeffs[n] = -comp.coeffs[n].clone() / c1.clone();
        }
        Ok(r)
    }

    /// Index of the first coefficient that is exactly nonzero.
    pub fn exact_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Divide by h^v, dropping v leading coefficients (which the caller
    /// asserts are zero); the order shrinks by v.
    pub fn shift_down(&self, v: usize) -> Result<Self, JetError> {
        if v > self.order() {
            return Err(JetError::InsufficientOrder {
                have: self.order(),
                need: v,
            });
        }
        Ok(Jet::new(self.coeffs[v..].to_vec()))
    }
}

impl Jet<f64> {
    pub fn from_f64(coeffs: &[f64]) -> Self {
        Jet::new(coeffs.to_vec())
    }

    /// Evaluate the truncated series at offset h.
    pub fn eval_offset(&self, h: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * h + c)
    }

    /// f^p for real p, requiring f(t0) > 0.
    ///
    /// b_n = 1/(n a0) Σ_{j=1..n} (p j − (n − j)) a_j b_{n−j}
    pub fn pow_frac(&self, p: f64) -> Result<Self, JetError> {
        let a = &self.coeffs;
        let a0 = a[0];
        if a0 == 0.0 {
            return Err(JetError::SingularDenominator);
        }
        let k = self.order();
        let mut b = Vec::with_capacity(k + 1);
        b.push(a0.powf(p));
        for n in 1..=k {
            let mut acc = 0.0;
            for j in 1..=n {
                acc += (p * j as f64 - (n - j) as f64) * a[j] * b[n - j];
            }
            b.push(acc / (n as f64 * a0));
        }
        Ok(Jet::new(b))
    }

    /// |f|^p, sign-corrected so it is valid whenever f(t0) ≠ 0.
    pub fn abs_pow(&self, p: f64) -> Result<Self, JetError> {
        let a0 = self.coeffs[0];
        if a0 == 0.0 {
            return Err(JetError::SingularDenominator);
        }
        if a0 < 0.0 {
            (-self).pow_frac(p)
        } else {
            self.pow_frac(p)
        }
    }

    pub fn sqrt(&self) -> Result<Self, JetError> {
        self.pow_frac(0.5)
    }

    /// Largest |c_i| ρ^i, a scale for comparing coefficients at radius ρ.
    pub fn scaled_max(&self, rho: f64) -> f64 {
        let mut m: f64 = 0.0;
        let mut r = 1.0;
        for c in &self.coeffs {
            m = m.max(c.abs() * r);
            r *= rho;
        }
        m
    }
}

impl<T: Scalar> Add for &Jet<T> {
    type Output = Jet<T>;
    fn add(self, rhs: &Jet<T>) -> Jet<T> {
        let k = self.order().min(rhs.order());
        Jet::new(
            (0..=k)
                .map(|i| self.coeffs[i].clone() + rhs.coeffs[i].clone())
                .collect(),
        )
    }
}

impl<T: Scalar> Sub for &Jet<T> {
    type Output = Jet<T>;
    fn sub(self, rhs: &Jet<T>) -> Jet<T> {
        let k = self.order().min(rhs.order());
        Jet::new(
            (0..=k)
                .map(|i| self.coeffs[i].clone() - rhs.coeffs[i].clone())
                .collect(),
        )
    }
}

impl<T: Scalar> Mul for &Jet<T> {
    type Output = Jet<T>;
    fn mul(self, rhs: &Jet<T>) -> Jet<T> {
        let k = self.order().min(rhs.order());
        let mut v = vec![T::zero(); k + 1];
        for (i, a) in self.coeffs.iter().take(k + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..=(k - i) {
                v[i + j] = v[i + j].clone() + a.clone() * rhs.coeffs[j].clone();
            }
        }
        Jet::new(v)
    }
}

impl<T: Scalar> Neg for &Jet<T> {
    type Output = Jet<T>;
    fn neg(self) -> Jet<T> {
        Jet::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::scalar::rational;
    use approx::assert_relative_eq;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn close(a: &Jet, b: &[f64], tol: f64) {
        assert_eq!(a.order() + 1, b.len(), "order mismatch: {:?}", a);
        for (x, y) in a.coeffs().iter().zip(b) {
            assert!((x - y).abs() <= tol * (1.0 + y.abs()), "{:?} vs {:?}", a, b);
        }
    }

    #[test]
    fn polynomial_jets() {
        let t2 = Poly::from_f64(&[0.0, 0.0, 1.0]);
        close(&t2.jet(&0.0, 3), &[0.0, 0.0, 1.0, 0.0], 0.0);
        close(&t2.jet(&1.0, 2), &[1.0, 2.0, 1.0], 0.0);
        let p = Poly::from_f64(&[0.0, 0.0, 0.1, 0.0, 1.0]);
        close(&p.jet(&0.5, 2), &[0.0875, 0.6, 1.6], 1e-15);
        assert_eq!(Poly::<f64>::zero().jet(&0.3, 2).coeffs(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn basic_arithmetic() {
        let a = Jet::from_f64(&[1.0, 1.0, 0.0]);
        close(&(&a * &a), &[1.0, 2.0, 1.0], 0.0);
        close(&a.recip().unwrap(), &[1.0, -1.0, 1.0], 0.0);
        let z = Jet::from_f64(&[0.0, 1.0, 0.0]);
        assert_eq!(a.div(&z), Err(JetError::SingularDenominator));
    }

    #[test]
    fn fractional_powers() {
        let a = Jet::from_f64(&[1.0, 4.0, 2.0]);
        close(&a.pow_frac(1.5).unwrap(), &[1.0, 6.0, 9.0], 1e-15);
        close(&Jet::from_f64(&[-1.0, 0.0, 0.0]).abs_pow(1.5).unwrap(), &[1.0, 0.0, 0.0], 0.0);
        close(&Jet::from_f64(&[4.0, 0.0, 0.0]).abs_pow(1.5).unwrap(), &[8.0, 0.0, 0.0], 1e-15);
        close(&Jet::from_f64(&[1.0, 2.0, 0.0]).abs_pow(1.5).unwrap(), &[1.0, 3.0, 1.5], 1e-15);
        assert!(Jet::from_f64(&[0.0, 1.0]).abs_pow(1.5).is_err());
    }

    #[test]
    fn pow_frac_matches_finite_differences() {
        // (1+4t+2t²)^{3/2} near t = 0
        let f = |t: f64| (1.0 + 4.0 * t + 2.0 * t * t).powf(1.5);
        let h = 1e-4;
        let d1 = (f(h) - f(-h)) / (2.0 * h);
        let d2 = (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
        let j = Jet::from_f64(&[1.0, 4.0, 2.0]).pow_frac(1.5).unwrap();
        assert_relative_eq!(j.derivative_value(1), d1, max_relative = 1e-6);
        assert_relative_eq!(j.derivative_value(2), d2, max_relative = 1e-5);
    }

    #[test]
    fn composition_and_reversion() {
        // exp-like: (1 + h + h²/2) ∘ (2h) = 1 + 2h + 2h²
        let outer = Jet::from_f64(&[1.0, 1.0, 0.5]);
        let inner = Jet::from_f64(&[0.0, 2.0, 0.0]);
        close(&outer.compose(&inner).unwrap(), &[1.0, 2.0, 2.0], 0.0);
        assert_eq!(
            outer.compose(&Jet::from_f64(&[1.0, 1.0, 0.0])),
            Err(JetError::NonZeroConstant)
        );
        let f = Jet::from_f64(&[0.0, 1.0, 1.0, 0.0, 0.0, 0.0]);
        let r = f.revert().unwrap();
        let id = f.compose(&r).unwrap();
        close(&id, &[0.0, 1.0, 0.0, 0.0, 0.0, 0.0], 1e-14);
        // inverse of h + h² is (√(1+4u) − 1)/2 = u − u² + 2u³ − 5u⁴ + 14u⁵
        close(&r, &[0.0, 1.0, -1.0, 2.0, -5.0, 14.0], 1e-12);
    }

    #[test]
    fn exact_rational_mode() {
        let a: Jet<BigRational> = Jet::new(vec![rational(1, 1), rational(1, 3), rational(0, 1)]);
        let inv = a.recip().unwrap();
        assert_eq!(inv.coeffs(), &[rational(1, 1), rational(-1, 3), rational(1, 9)]);
        let p: Poly<BigRational> = Poly::new(vec![rational(0, 1), rational(1, 2), rational(0, 1), rational(1, 1)]);
        let j = p.jet(&rational(1, 2), 3);
        assert_eq!(j.coeffs(), &[rational(3, 8), rational(5, 4), rational(3, 2), rational(1, 1)]);
    }

    fn poly_strategy() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-2.0f64..2.0, 1..=7)
    }

    proptest! {
        #[test]
        fn product_jet_is_jet_of_product(p in poly_strategy(), q in poly_strategy(), t0 in -1.0f64..1.0) {
            let (p, q) = (Poly::new(p), Poly::new(q));
            let k = 8;
            let lhs = &p.jet(&t0, k) * &q.jet(&t0, k);
            let rhs = p.mul(&q).jet(&t0, k);
            let scale = 1.0 + rhs.coeffs().iter().fold(0.0f64, |m, c| m.max(c.abs()));
            for (a, b) in lhs.coeffs().iter().zip(rhs.coeffs()) {
                prop_assert!((a - b).abs() <= 1e-12 * scale);
            }
        }

        #[test]
        fn division_round_trips(a in prop::collection::vec(-2.0f64..2.0, 6), b in prop::collection::vec(-2.0f64..2.0, 6)) {
            prop_assume!(b[0].abs() > 0.1);
            let b0 = b[0];
            let (a, b) = (Jet::new(a), Jet::new(b));
            let back = &a.div(&b).unwrap() * &b;
            let scale = 1.0 + a.coeffs().iter().fold(0.0f64, |m, c| m.max(c.abs()));
            // the quotient can grow like (|b|/b0)^k; allow for that growth
            let growth = b.coeffs().iter().fold(1.0f64, |m, c| m.max(c.abs() / b0.abs())).powi(5);
            for (x, y) in back.coeffs().iter().zip(a.coeffs()) {
                prop_assert!((x - y).abs() <= 1e-10 * scale * growth);
            }
        }

        #[test]
        fn coefficients_match_central_differences(p in poly_strategy(), t0 in -1.0f64..1.0) {
            let pr: Poly<BigRational> = Poly::new(p.iter().map(|c| BigRational::from_float(*c).unwrap()).collect());
            let p = Poly::new(p);
            let j = p.jet(&t0, 3);
            let fd = crate::verify::central_differences(|t| pr.eval(t), t0, 1e-4);
            for (i, d) in fd.iter().enumerate() {
                let exact = j.derivative_value(i);
                let floor = p.derivative_scale(i, t0);
                prop_assert!((exact - d).abs() <= 1e-5 * exact.abs().max(floor), "i={} exact={} fd={}", i, exact, d);
            }
        }
    }
}
