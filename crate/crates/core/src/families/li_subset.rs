//! Lightlike inflections of order k are vertices of order exactly 2k.
//!
//! Checked exactly on f = t + t^{k+2}, whose graph has a lightlike
//! inflection of order k at 0, both through jet arithmetic on g and through
//! the closed Leibniz expansion of g^(n) in the scaled coefficients a_i.

use crate::jet::Jet;
use crate::mink::g_numerator_jet;
use crate::scalar::{factorial, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiOrderCheck {
    pub k: u32,
    /// g^(j)(0) for j = 0..=2k, as exact fractions.
    pub derivatives: Vec<String>,
    pub expected_top: String,
    pub lower_vanish: bool,
    pub top_matches: bool,
    pub leibniz_agrees: bool,
}

impl LiOrderCheck {
    pub fn pass(&self) -> bool {
        self.lower_vanish && self.top_matches && self.leibniz_agrees
    }
}

fn binom(n: usize, k: usize) -> BigRational {
    factorial::<BigRational>(n) / (factorial::<BigRational>(k) * factorial::<BigRational>(n - k))
}

/// g^(n)(0) from the scaled Taylor coefficients a_i of f at 0.
pub fn g_derivative_leibniz(a: &[BigRational], n: usize) -> BigRational {
    let ai = |i: usize| a.get(i).cloned().unwrap_or_else(BigRational::zero);
    let f = |j: usize| factorial::<BigRational>(j) * ai(j);
    let mut total = f(n + 3);
    for i in 0..=n {
        let m = n - i;
        let inner = (0..=m).fold(BigRational::zero(), |acc, l| acc + binom(m, l) * f(m - l + 1) * f(l + 1));
        total = total - binom(n, i) * f(i + 3) * inner;
    }
    let three = BigRational::from_i64(3);
    for j in 0..=n {
        let inner = (0..=j).fold(BigRational::zero(), |acc, l| acc + binom(j, l) * f(j - l + 2) * f(l + 2));
        total = total + three.clone() * binom(n, j) * f(n - j + 1) * inner;
    }
    total
}

pub fn check_li_order(k: u32) -> LiOrderCheck {
    let k_us = k as usize;
    let order = 2 * k_us + 3;
    let mut a = vec![BigRational::zero(); order + 4];
    a[1] = BigRational::one();
    a[k_us + 2] = BigRational::one();
    let f = Jet::new(a[..=order + 3].to_vec());
    let g = g_numerator_jet(&f);
    let derivs: Vec<BigRational> = (0..=2 * k_us).map(|j| g.coeff(j) * factorial::<BigRational>(j)).collect();
    let kk = BigInt::from(k);
    let expected = factorial::<BigRational>(2 * k_us)
        * BigRational::from_integer((&kk + 2u32) * (&kk + 2u32) * (&kk + 1u32) * (&kk + 3u32));
    let lower_vanish = derivs[..2 * k_us].iter().all(|d| d.is_zero());
    let top_matches = derivs[2 * k_us] == expected;
    let leibniz_agrees = (0..=2 * k_us).all(|n| g_derivative_leibniz(&a, n) == derivs[n]);
    LiOrderCheck {
        k,
        derivatives: derivs.iter().map(|d| d.to_string()).collect(),
        expected_top: expected.to_string(),
        lower_vanish,
        top_matches,
        leibniz_agrees,
    }
}

/// Checks for k = 1..=kmax.
pub fn verify_li_subset_v(kmax: u32) -> Vec<LiOrderCheck> {
    (1..=kmax).map(check_li_order).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_orders() {
        let c = check_li_order(1);
        assert!(c.pass(), "{:?}", c);
        assert_eq!(c.derivatives[2], "144");
        assert_eq!(c.derivatives[1], "0");
        let c = check_li_order(2);
        assert!(c.pass());
        assert_eq!(c.derivatives[4], "5760");
    }

    #[test]
    fn up_to_six() {
        assert!(verify_li_subset_v(6).iter().all(LiOrderCheck::pass));
    }

    #[test]
    fn leibniz_matches_jets_on_a_generic_graph() {
        let a: Vec<BigRational> = [0, 2, -1, 3, 5, -2, 1, 4, 0, 1]
            .iter()
            .map(|&v| BigRational::from_i64(v) / BigRational::from_i64(3))
            .collect();
        let g = g_numerator_jet(&Jet::new(a.clone()));
        for n in 0..=5 {
            assert_eq!(g_derivative_leibniz(&a, n), g.coeff(n) * factorial::<BigRational>(n));
        }
    }
}
