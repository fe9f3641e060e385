//! Univariate polynomials over the rationals, coefficients ascending.
//!
//! Just enough for characteristic polynomials: evaluation, derivative,
//! monic Euclidean gcd (squarefreeness), and Descartes sign counts.

use num_traits::{Signed, Zero};

use super::rational::Rational;

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Degree, or `None` for the zero polynomial.
pub fn poly_degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn poly_eval(p: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn poly_derivative(p: &[Rational]) -> Vec<Rational> {
    if p.len() <= 1 {
        return vec![];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * Rational::from_integer(k.into()))
        .collect()
}

/// p(−t): flips the sign of odd-degree coefficients.
pub fn poly_negate_variable(p: &[Rational]) -> Vec<Rational> {
    p.iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
        .collect()
}

fn poly_rem(num: &[Rational], den: &[Rational]) -> Vec<Rational> {
    let dd = poly_degree(den).expect("division by zero polynomial");
    let lead = den[dd].clone();
    let mut rem = trim(num.to_vec());
    while let Some(rd) = poly_degree(&rem) {
        if rd < dd {
            break;
        }
        let factor = &rem[rd] / &lead;
        let shift = rd - dd;
        for k in 0..=dd {
            let t = &den[k] * &factor;
            rem[k + shift] -= t;
        }
        rem = trim(rem);
    }
    rem
}

/// Monic gcd via the Euclidean algorithm; returns `[1]` for coprime inputs
/// and the zero polynomial only when both inputs are zero.
pub fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(d) = poly_degree(&a) {
        let lead = a[d].clone();
        for c in a.iter_mut() {
            *c /= lead.clone();
        }
    }
    a
}

/// No repeated roots: gcd(p, p′) is constant.
pub fn poly_is_squarefree(p: &[Rational]) -> bool {
    match poly_degree(p) {
        None => false,
        Some(0) => true,
        Some(_) => {
            let g = poly_gcd(p, &poly_derivative(p));
            poly_degree(&g) == Some(0)
        }
    }
}

/// Descartes sign variations of the nonzero coefficients.  For a polynomial
/// with all roots real this counts the positive roots with multiplicity.
pub fn sign_variations(p: &[Rational]) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for c in p.iter().filter(|c| !c.is_zero()) {
        let pos = c.is_positive();
        if let Some(prev) = last {
            if prev != pos {
                count += 1;
            }
        }
        last = Some(pos);
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, rat_i};

    fn p(coeffs: &[i64]) -> Vec<Rational> {
        coeffs.iter().map(|&c| rat_i(c)).collect()
    }

    #[test]
    fn eval_and_derivative() {
        // 2 − 3t + t³
        let f = p(&[2, -3, 0, 1]);
        assert_eq!(poly_eval(&f, &rat_i(2)), rat_i(4));
        assert_eq!(poly_eval(&f, &rat(1, 2)), rat_i(2) - rat(3, 2) + rat(1, 8));
        assert_eq!(poly_derivative(&f), p(&[-3, 0, 3]));
    }

    #[test]
    fn gcd_detects_common_factor() {
        // (t−1)(t−2) and (t−1)(t+3) share (t−1).
        let a = p(&[2, -3, 1]);
        let b = p(&[-3, 2, 1]);
        assert_eq!(poly_gcd(&a, &b), p(&[-1, 1]));
        // Coprime pair.
        assert_eq!(poly_gcd(&p(&[1, 1]), &p(&[2, 1])), p(&[1]));
    }

    #[test]
    fn squarefree_examples() {
        assert!(poly_is_squarefree(&p(&[2, -3, 1]))); // (t−1)(t−2)
        assert!(!poly_is_squarefree(&p(&[1, -2, 1]))); // (t−1)²
        assert!(!poly_is_squarefree(&p(&[0, 0, 1]))); // t²
        assert!(poly_is_squarefree(&p(&[0, 1]))); // t
        assert!(!poly_is_squarefree(&p(&[])));
    }

    #[test]
    fn descartes_counts() {
        // t² − t − 1: one positive, one negative root.
        let f = p(&[-1, -1, 1]);
        assert_eq!(sign_variations(&f), 1);
        assert_eq!(sign_variations(&poly_negate_variable(&f)), 1);
        // (t−1)(t−2)(t−3): three positive roots.
        let g = p(&[-6, 11, -6, 1]);
        assert_eq!(sign_variations(&g), 3);
        assert_eq!(sign_variations(&poly_negate_variable(&g)), 0);
    }
}
