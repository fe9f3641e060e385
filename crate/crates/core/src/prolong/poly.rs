//! Multivariate rational polynomials and polynomial vector fields.
//!
//! These exist to feed the prolongation with honest vector fields: jets are
//! extracted exactly (the coordinate for β is β!·coefficient), brackets are
//! computed symbolically, and evaluation is generic over the scalar so the
//! same field can be evaluated on rationals or dual numbers.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;

use crate::exact::{ExactScalar, Rational};
use crate::jetspace::VectorFieldJet;
use crate::multiindex::{enumerate, MultiIndex};

/// Polynomial in n variables; exponent → coefficient, zero coefficients
/// never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        MultiPoly { n, terms: BTreeMap::new() }
    }

    pub fn monomial(n: usize, exponents: MultiIndex, coeff: Rational) -> Self {
        assert_eq!(exponents.dim(), n, "exponent dimension mismatch");
        let mut p = Self::zero(n);
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::monomial(n, MultiIndex::zero(n), c)
    }

    /// The coordinate function x_dir.
    pub fn coordinate(n: usize, dir: usize) -> Self {
        Self::monomial(n, MultiIndex::unit(n, dir), Rational::from_integer(1.into()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &MultiIndex) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, other.n);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        MultiPoly { n: self.n, terms }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.n);
        }
        MultiPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.scale(&Rational::from_integer((-1).into())))
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, other.n);
        let mut terms: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.add(eb);
                let entry = terms.entry(e.clone()).or_insert_with(Rational::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    terms.remove(&e);
                }
            }
        }
        MultiPoly { n: self.n, terms }
    }

    /// ∂/∂x_dir.
    pub fn partial(&self, dir: usize) -> MultiPoly {
        assert!(dir < self.n, "direction out of range");
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if let Some(down) = e.sub_unit_checked(dir) {
                let factor = Rational::from_integer(e.entry(dir).into());
                terms.insert(down, c * factor);
            }
        }
        MultiPoly { n: self.n, terms }
    }

    /// Iterated partial D^β.
    pub fn partial_multi(&self, beta: &MultiIndex) -> MultiPoly {
        let mut p = self.clone();
        for dir in 0..self.n {
            for _ in 0..beta.entry(dir) {
                p = p.partial(dir);
            }
        }
        p
    }

    pub fn eval<F: ExactScalar>(&self, x: &[F]) -> F {
        assert_eq!(x.len(), self.n, "evaluation point dimension mismatch");
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut term = F::from_rational(c);
            for (dir, &exp) in e.entries().iter().enumerate() {
                for _ in 0..exp {
                    term = term * x[dir].clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// D^β p(0) = β! · coeff(β).
    pub fn derivative_at_origin(&self, beta: &MultiIndex) -> Rational {
        self.coeff(beta) * Rational::from_integer(beta.factorial())
    }
}

/// A vector field with polynomial components u = Σ_h u_h ∂/∂x_h.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialVectorField {
    components: Vec<MultiPoly>,
}

impl PolynomialVectorField {
    pub fn new(components: Vec<MultiPoly>) -> Self {
        assert!(!components.is_empty(), "need at least one component");
        let n = components.len();
        assert!(components.iter().all(|p| p.n() == n), "component arity mismatch");
        PolynomialVectorField { components }
    }

    /// Linear field u_h = Σ_i B[h][i]·x_i.
    pub fn linear(b: &[Vec<Rational>]) -> Self {
        let n = b.len();
        let components = b
            .iter()
            .map(|row| {
                assert_eq!(row.len(), n, "square coefficient matrix required");
                let mut p = MultiPoly::zero(n);
                for (i, c) in row.iter().enumerate() {
                    p = p.add(&MultiPoly::monomial(n, MultiIndex::unit(n, i), c.clone()));
                }
                p
            })
            .collect();
        PolynomialVectorField::new(components)
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, h: usize) -> &MultiPoly {
        &self.components[h]
    }

    /// Exact order-s jet at the origin.
    pub fn jet_at_origin(&self, s: u32) -> VectorFieldJet {
        let n = self.n();
        let mut jet = VectorFieldJet::zero(n, s);
        for (h, comp) in self.components.iter().enumerate() {
            for beta in enumerate(n, s) {
                let v = comp.derivative_at_origin(&beta);
                if !v.is_zero() {
                    jet.set_coord(h, &beta, v);
                }
            }
        }
        jet
    }

    /// Lie bracket [X, Y]_i = Σ_j (X_j ∂Y_i/∂x_j − Y_j ∂X_i/∂x_j).
    pub fn bracket(&self, other: &PolynomialVectorField) -> PolynomialVectorField {
        assert_eq!(self.n(), other.n());
        let n = self.n();
        let components = (0..n)
            .map(|i| {
                let mut acc = MultiPoly::zero(n);
                for j in 0..n {
                    acc = acc.add(&self.components[j].mul(&other.components[i].partial(j)));
                    acc = acc.sub(&other.components[j].mul(&self.components[i].partial(j)));
                }
                acc
            })
            .collect();
        PolynomialVectorField::new(components)
    }

    pub fn eval<F: ExactScalar>(&self, x: &[F]) -> Vec<F> {
        self.components.iter().map(|p| p.eval(x)).collect()
    }
}

/// Random polynomial vector field of total degree ≤ max_deg: numerators in
/// [−5, 5], denominators in {1, 2, 3}, every monomial drawn independently.
pub fn random_field(rng: &mut impl Rng, n: usize, max_deg: u32) -> PolynomialVectorField {
    let components = (0..n)
        .map(|_| {
            let mut p = MultiPoly::zero(n);
            for e in enumerate(n, max_deg) {
                let num = rng.random_range(-5i64..=5);
                let den = rng.random_range(1i64..=3);
                p = p.add(&MultiPoly::monomial(n, e, Rational::new(num.into(), den.into())));
            }
            p
        })
        .collect();
    PolynomialVectorField::new(components)
}
