//! Rational dual numbers a + b·ε with ε² = 0.
//!
//! Running a rational computation on duals carries one exact directional
//! derivative alongside the value; this is how the curvature pipeline and the
//! prolongation evaluator are differentiated without any symbolic machinery.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct DualScalar {
    pub val: Rational,
    pub der: Rational,
}

impl DualScalar {
    pub fn new(val: Rational, der: Rational) -> Self {
        DualScalar { val, der }
    }

    pub fn constant(val: Rational) -> Self {
        DualScalar { val, der: Rational::zero() }
    }

    /// Multiplicative inverse; requires an invertible value part:
    /// (a + bε)⁻¹ = a⁻¹ − a⁻²b·ε.
    pub fn recip(&self) -> Self {
        assert!(!self.val.is_zero(), "dual number with zero value part has no inverse");
        let iv = self.val.recip();
        let der = -(&iv * &iv * &self.der);
        DualScalar { val: iv, der }
    }
}

impl Add for DualScalar {
    type Output = DualScalar;
    fn add(self, rhs: DualScalar) -> DualScalar {
        DualScalar { val: self.val + rhs.val, der: self.der + rhs.der }
    }
}

impl Sub for DualScalar {
    type Output = DualScalar;
    fn sub(self, rhs: DualScalar) -> DualScalar {
        DualScalar { val: self.val - rhs.val, der: self.der - rhs.der }
    }
}

impl Mul for DualScalar {
    type Output = DualScalar;
    fn mul(self, rhs: DualScalar) -> DualScalar {
        let der = &self.val * &rhs.der + &self.der * &rhs.val;
        DualScalar { val: self.val * rhs.val, der }
    }
}

impl Neg for DualScalar {
    type Output = DualScalar;
    fn neg(self) -> DualScalar {
        DualScalar { val: -self.val, der: -self.der }
    }
}

impl fmt::Debug for DualScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}ε)", self.val, self.der)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{rat, rat_i};
    use crate::exact::univariate::{poly_derivative, poly_eval};
    use proptest::prelude::*;

    #[test]
    fn product_rule() {
        let a = DualScalar::new(rat(2, 3), rat_i(5));
        let b = DualScalar::new(rat(7, 2), rat(-1, 4));
        let p = a.clone() * b.clone();
        assert_eq!(p.val, rat(7, 3));
        // a·b' + a'·b = (2/3)(−1/4) + 5·(7/2)
        assert_eq!(p.der, rat(-1, 6) + rat(35, 2));
    }

    #[test]
    fn reciprocal() {
        let a = DualScalar::new(rat_i(4), rat_i(3));
        let r = a.clone().recip();
        assert_eq!(r.val, rat(1, 4));
        assert_eq!(r.der, rat(-3, 16));
        let prod = a * r;
        assert_eq!(prod.val, rat_i(1));
        assert_eq!(prod.der, rat_i(0));
    }

    fn eval_dual(p: &[Rational], x: &DualScalar) -> DualScalar {
        let mut acc = DualScalar::constant(rat_i(0));
        for c in p.iter().rev() {
            acc = acc * x.clone() + DualScalar::constant(c.clone());
        }
        acc
    }

    proptest! {
        /// Chain rule: evaluating p(q(·)) on the dual (a, b) yields derivative
        /// p′(q(a))·q′(a)·b exactly.
        #[test]
        fn chain_rule(
            pc in proptest::collection::vec((-9i64..10, 1i64..5), 1..6),
            qc in proptest::collection::vec((-9i64..10, 1i64..5), 1..6),
            a in -6i64..7,
            b in -6i64..7,
        ) {
            let p: Vec<Rational> = pc.iter().map(|&(n, d)| rat(n, d)).collect();
            let q: Vec<Rational> = qc.iter().map(|&(n, d)| rat(n, d)).collect();
            let x = DualScalar::new(rat_i(a), rat_i(b));
            let inner = eval_dual(&q, &x);
            let outer = eval_dual(&p, &inner);
            let qa = poly_eval(&q, &rat_i(a));
            prop_assert_eq!(outer.val.clone(), poly_eval(&p, &qa));
            let want = poly_eval(&poly_derivative(&p), &qa) * poly_eval(&poly_derivative(&q), &rat_i(a)) * rat_i(b);
            prop_assert_eq!(outer.der, want);
        }
    }
}
