//! Algebraic curvature tensors.
//!
//! A [`CurvatureTensor`] stores dense components R_{ijkl} and guarantees, by
//! validation at every construction site, the full symmetry package:
//! antisymmetry in (i,j) and in (k,l), pair-exchange symmetry, and the first
//! Bianchi identity R_{ijkl} + R_{iklj} + R_{iljk} = 0.
//!
//! Random tensors are drawn by sampling a symmetric matrix on the space of
//! index pairs (a random element of S²Λ²) and removing its totally
//! antisymmetric part, which is exactly the Bianchi projection.

use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::GeometryError;
use crate::exact::{format_rational, parse_rational, rat, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensor {
    n: usize,
    comp: Vec<Rational>,
}

/// Strictly increasing index pairs (i < j).
pub(crate) fn strict_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

impl CurvatureTensor {
    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "dimension must be positive");
        CurvatureTensor { n, comp: vec![Rational::zero(); n * n * n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn idx(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        debug_assert!(i < self.n && j < self.n && k < self.n && l < self.n);
        ((i * self.n + j) * self.n + k) * self.n + l
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &Rational {
        &self.comp[self.idx(i, j, k, l)]
    }

    pub fn is_zero(&self) -> bool {
        self.comp.iter().all(Zero::is_zero)
    }

    /// Build from arbitrary dense components, validating all symmetries.
    pub fn from_fn(
        n: usize,
        mut f: impl FnMut(usize, usize, usize, usize) -> Rational,
    ) -> Result<Self, GeometryError> {
        let mut t = CurvatureTensor::zero(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let idx = t.idx(i, j, k, l);
                        t.comp[idx] = f(i, j, k, l);
                    }
                }
            }
        }
        t.validate()?;
        Ok(t)
    }

    pub(crate) fn validate(&self) -> Result<(), GeometryError> {
        let n = self.n;
        let bad = |kind: &str, i: usize, j: usize, k: usize, l: usize| {
            Err(GeometryError::InvalidCurvature(format!(
                "{kind} fails at ({}, {}, {}, {})",
                i + 1,
                j + 1,
                k + 1,
                l + 1
            )))
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        if self.get(i, j, k, l) != &-self.get(j, i, k, l).clone() {
                            return bad("antisymmetry in the first pair", i, j, k, l);
                        }
                        if self.get(i, j, k, l) != &-self.get(i, j, l, k).clone() {
                            return bad("antisymmetry in the second pair", i, j, k, l);
                        }
                        if self.get(i, j, k, l) != self.get(k, l, i, j) {
                            return bad("pair-exchange symmetry", i, j, k, l);
                        }
                        let cyc = self.get(i, j, k, l) + self.get(i, k, l, j) + self.get(i, l, j, k);
                        if !cyc.is_zero() {
                            return bad("first Bianchi identity", i, j, k, l);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Canonical slots (i < j, k < l, (i,j) ≤ (k,l) lexicographically); every
    /// component is, up to sign, one of these.
    pub fn canonical_slots(n: usize) -> Vec<(usize, usize, usize, usize)> {
        let pairs = strict_pairs(n);
        let mut out = Vec::new();
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for &(k, l) in &pairs[a..] {
                out.push((i, j, k, l));
            }
        }
        out
    }

    /// Write a component and its full symmetry orbit; errors if a previously
    /// written slot would be overwritten with a different value.
    fn set_orbit(
        &mut self,
        written: &mut [bool],
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        v: &Rational,
    ) -> Result<(), GeometryError> {
        let slots = [
            (i, j, k, l, false),
            (j, i, k, l, true),
            (i, j, l, k, true),
            (j, i, l, k, false),
            (k, l, i, j, false),
            (l, k, i, j, true),
            (k, l, j, i, true),
            (l, k, j, i, false),
        ];
        for (a, b, c, d, neg) in slots {
            let idx = self.idx(a, b, c, d);
            let val = if neg { -v.clone() } else { v.clone() };
            if written[idx] {
                if self.comp[idx] != val {
                    return Err(GeometryError::InvalidCurvature(format!(
                        "conflicting values for component ({}, {}, {}, {})",
                        a + 1,
                        b + 1,
                        c + 1,
                        d + 1
                    )));
                }
            } else {
                self.comp[idx] = val;
                written[idx] = true;
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut components = Vec::new();
        for (i, j, k, l) in Self::canonical_slots(self.n) {
            let v = self.get(i, j, k, l);
            if !v.is_zero() {
                components.push(ComponentJson {
                    i: i + 1,
                    j: j + 1,
                    k: k + 1,
                    l: l + 1,
                    value: format_rational(v),
                });
            }
        }
        let doc = CurvatureJson { n: self.n, components };
        serde_json::to_string_pretty(&doc).expect("serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, GeometryError> {
        let doc: CurvatureJson = serde_json::from_str(text)?;
        if doc.n == 0 {
            return Err(GeometryError::InvalidCurvature("dimension must be positive".into()));
        }
        let mut t = CurvatureTensor::zero(doc.n);
        let mut written = vec![false; t.comp.len()];
        for c in &doc.components {
            for idx in [c.i, c.j, c.k, c.l] {
                if idx == 0 || idx > doc.n {
                    return Err(GeometryError::InvalidCurvature(format!(
                        "index {idx} out of range for dimension {}",
                        doc.n
                    )));
                }
            }
            let v = parse_rational(&c.value)
                .map_err(|e| GeometryError::InvalidCurvature(e.to_string()))?;
            t.set_orbit(&mut written, c.i - 1, c.j - 1, c.k - 1, c.l - 1, &v)?;
        }
        t.validate()?;
        Ok(t)
    }

    /// Constant-curvature tensor R_{ijkl} = K (g_{ik} g_{jl} − g_{il} g_{jk})
    /// for a diagonal metric.
    pub fn constant_curvature(diag: &[i64], kappa: &Rational) -> Self {
        let n = diag.len();
        let g = |a: usize, b: usize| {
            if a == b {
                Rational::from_integer(diag[a].into())
            } else {
                Rational::zero()
            }
        };
        Self::from_fn(n, |i, j, k, l| (g(i, k) * g(j, l) - g(i, l) * g(j, k)) * kappa)
            .expect("constant-curvature tensor satisfies all symmetries")
    }
}

#[derive(Serialize, Deserialize)]
struct CurvatureJson {
    n: usize,
    components: Vec<ComponentJson>,
}

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    i: usize,
    j: usize,
    k: usize,
    l: usize,
    value: String,
}

/// Extend a symmetric matrix on the space of strict pairs to a tensor with
/// both pair antisymmetries, then remove its totally antisymmetric part (the
/// Bianchi projection). The result is a valid curvature tensor.
pub(crate) fn from_pair_matrix(n: usize, s: &[Vec<Rational>]) -> CurvatureTensor {
    let pairs = strict_pairs(n);
    let m = pairs.len();
    assert_eq!(s.len(), m, "pair-matrix size mismatch");
    let mut pair_pos = vec![vec![usize::MAX; n]; n];
    for (a, &(i, j)) in pairs.iter().enumerate() {
        pair_pos[i][j] = a;
        pair_pos[j][i] = a;
    }
    let raw = |i: usize, j: usize, k: usize, l: usize| -> Rational {
        if i == j || k == l {
            return Rational::zero();
        }
        let v = &s[pair_pos[i][j]][pair_pos[k][l]];
        if (i < j) == (k < l) {
            v.clone()
        } else {
            -v.clone()
        }
    };
    CurvatureTensor::from_fn(n, |i, j, k, l| {
        let third = rat(1, 3);
        let b = (raw(i, j, k, l) + raw(i, k, l, j) + raw(i, l, j, k)) * &third;
        raw(i, j, k, l) - b
    })
    .expect("Bianchi projection of an S²Λ² element is a curvature tensor")
}

/// Random algebraic curvature tensor: a symmetric matrix over the pair space
/// (numerators −9…9, denominators 1…3) with its totally antisymmetric part
/// removed.
pub fn random_curvature(rng: &mut impl Rng, n: usize) -> CurvatureTensor {
    let m = strict_pairs(n).len();
    let mut s = vec![vec![Rational::zero(); m]; m];
    for a in 0..m {
        for b in a..m {
            let v = rat(rng.random_range(-9i64..=9), rng.random_range(1i64..=3));
            s[a][b] = v.clone();
            s[b][a] = v;
        }
    }
    from_pair_matrix(n, &s)
}
