//! Dense univariate polynomials with ascending coefficients.

use crate::jet::Jet;
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly<T = f64> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial c·t^n.
    pub fn monomial(c: T, n: usize) -> Self {
        let mut v = vec![T::zero(); n + 1];
        v[n] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * T::from_i64(i as i64))
            .collect();
        Poly::new(v)
    }

    pub fn scale(&self, k: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v)
    }

    /// p(t0 + h) as a polynomial in h.
    pub fn taylor_shift(&self, t0: &T) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        // repeated synthetic division
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                c[j] = c[j].clone() + t0.clone() * c[j + 1].clone();
            }
        }
        Poly::new(c)
    }

    /// Order-k Taylor jet at t0: coefficient i is p^(i)(t0)/i!.
    pub fn jet(&self, t0: &T, k: usize) -> Jet<T> {
        let shifted = self.taylor_shift(t0);
        Jet::new((0..=k).map(|i| shifted.coeff(i)).collect())
    }

    /// q(t) = p(-t).
    pub fn reflect(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// (p(a) - p(b)) / (a - b), which stays defined on the diagonal.
    pub fn divided_difference(&self, a: &T, b: &T) -> T {
        // S_k = a^{k-1} + a^{k-2} b + ... + b^{k-1} obeys S_k = a S_{k-1} + b^{k-1}
        let mut total = T::zero();
        let mut s = T::zero();
        let mut bpow = T::one();
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            if k > 1 {
                bpow = bpow * b.clone();
            }
            s = s * a.clone() + bpow.clone();
            total = total + c.clone() * s.clone();
        }
        total
    }
}

impl Poly<f64> {
    pub fn from_f64(coeffs: &[f64]) -> Self {
        Poly::new(coeffs.to_vec())
    }

    pub fn evalf(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    /// Σ|c_i||t|^i, the natural scale for rounding error of `evalf(t)`.
    pub fn magnitude_at(&self, t: f64) -> f64 {
        let at = t.abs();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * at + c.abs())
    }

    /// Σ_j |c_j| j!/(j−i)! |t|^{j−i}: a size for p^(i)(t) that ignores cancellation.
    pub fn derivative_scale(&self, i: usize, t: f64) -> f64 {
        let mut d = self.clone();
        for _ in 0..i {
            d = d.derivative();
        }
        d.magnitude_at(t)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}
