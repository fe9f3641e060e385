//! Coordinates on jet bundles.
//!
//! A point of the order-r metric jet bundle over an n-manifold is recorded in
//! the standard chart as base coordinates x_i together with fiber coordinates
//! y^{jk}_α = ∂^{|α|} g_{jk}/∂x^α for j ≤ k and |α| ≤ r; the symmetric
//! completion y^{jk}_α = y^{kj}_α for j > k is handled by the accessors.
//! Only the fiber data is stored: every construction here is invariant under
//! translating the base point, so the base coordinates are taken to be the
//! origin throughout.
//!
//! Row/column layouts fix, once and for all, how jets and tangent vectors
//! flatten into the vectors and matrices used by the prolongation map:
//! rows are the n base directions followed by fiber slots ordered pair-major
//! (pairs (j,k), j ≤ k, in row-major order) and multi-index-minor (graded
//! lexicographic); columns are vector-field jet slots ordered component-major
//! and multi-index-minor.

mod io;

pub use io::{metric_point_from_json, metric_point_to_json};

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::exact::{format_rational, ExactMatrix, ExactScalar, Rational};
use crate::exact::{poly_negate_variable, sign_variations};
use crate::multiindex::{choose_usize, JetIndexSet, MultiIndex};

/// Dimension of the order-r metric jet bundle: n + n(n+1)/2 · C(n+r, r).
pub fn dim_metric_jet(n: usize, r: u32) -> usize {
    n + sym_pair_count(n) * choose_usize(n as u64 + r as u64, r as u64)
}

/// Dimension of the order-s vector-field jet space: n · C(n+s, s).
pub fn dim_vf_jet(n: usize, s: u32) -> usize {
    n * choose_usize(n as u64 + s as u64, s as u64)
}

/// Number of unordered index pairs (j ≤ k).
pub fn sym_pair_count(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Position of the pair (j, k) in row-major upper-triangular order; indices
/// are 0-based and swapped into j ≤ k automatically.
pub fn sym_pair_index(n: usize, j: usize, k: usize) -> usize {
    let (j, k) = if j <= k { (j, k) } else { (k, j) };
    assert!(k < n, "pair index out of range");
    // Row j of the upper triangle starts at Σ_{t<j} (n−t) = j(2n−j+1)/2.
    j * (2 * n - j + 1) / 2 + (k - j)
}

/// Upper-triangular pairs (j ≤ k) in row-major order.
pub fn sym_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |j| (j..n).map(move |k| (j, k)))
}

#[derive(Debug, Error)]
pub enum JetError {
    #[error("zero-jet block is singular")]
    SingularZeroJet,
    #[error("declared signature ({0}, {1}) does not match the zero-jet block, which has signature ({2}, {3})")]
    SignatureMismatch(usize, usize, usize, usize),
    #[error("signature ({0}, {1}) does not sum to the dimension {2}")]
    BadSignature(usize, usize, usize),
    #[error("coordinate ({0}, {1}) out of range for dimension {2}")]
    PairOutOfRange(usize, usize, usize),
    #[error("multi-index {0} does not match dimension {1} and order bound {2}")]
    BadMultiIndex(String, usize, u32),
    #[error("duplicate coordinate entry for ({0}, {1}, {2})")]
    DuplicateCoord(usize, usize, String),
    #[error("invalid rational: {0}")]
    BadRational(#[from] crate::exact::ParseRationalError),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("dimension must be positive")]
    ZeroDimension,
}

/// Fiber coordinates y^{jk}_α of a metric jet, generic in the scalar so the
/// same container carries rational points and dual-number seedings.
/// Storage is pair-major, multi-index-minor.
#[derive(Clone, Debug)]
pub struct JetCoords<F> {
    n: usize,
    r: u32,
    set: Arc<JetIndexSet>,
    vals: Vec<F>,
}

impl<F: ExactScalar> JetCoords<F> {
    pub fn zero(n: usize, r: u32) -> Self {
        assert!(n > 0, "dimension must be positive");
        let set = Arc::new(JetIndexSet::new(n, r));
        let vals = vec![F::zero(); sym_pair_count(n) * set.len()];
        JetCoords { n, r, set, vals }
    }

    /// Build coordinates by evaluating f on every slot (j ≤ k, |α| ≤ r) in
    /// storage order.
    pub fn from_fn(n: usize, r: u32, mut f: impl FnMut(usize, usize, &MultiIndex) -> F) -> Self {
        let set = Arc::new(JetIndexSet::new(n, r));
        let mut vals = Vec::with_capacity(sym_pair_count(n) * set.len());
        for (j, k) in sym_pairs(n) {
            for alpha in set.iter() {
                vals.push(f(j, k, alpha));
            }
        }
        JetCoords { n, r, set, vals }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn index_set(&self) -> &JetIndexSet {
        &self.set
    }

    fn slot(&self, j: usize, k: usize, alpha: &MultiIndex) -> usize {
        let pair = sym_pair_index(self.n, j, k);
        let a = self
            .set
            .rank(alpha)
            .unwrap_or_else(|| panic!("multi-index {alpha} out of range for order {}", self.r));
        pair * self.set.len() + a
    }

    /// y^{jk}_α with symmetric completion for j > k.
    pub fn get(&self, j: usize, k: usize, alpha: &MultiIndex) -> &F {
        &self.vals[self.slot(j, k, alpha)]
    }

    pub fn set_coord(&mut self, j: usize, k: usize, alpha: &MultiIndex, v: F) {
        let s = self.slot(j, k, alpha);
        self.vals[s] = v;
    }

    /// Flattened fiber coordinates in storage order.
    pub fn vals(&self) -> &[F] {
        &self.vals
    }

    /// The n×n zero-jet block g_{jk} = y^{jk}_0.
    pub fn zero_jet(&self) -> Vec<Vec<F>> {
        let o = MultiIndex::zero(self.n);
        (0..self.n)
            .map(|j| (0..self.n).map(|k| self.get(j, k, &o).clone()).collect())
            .collect()
    }

    /// Forget derivatives above order new_r (graded enumeration makes the
    /// lower orders a prefix of each pair block).
    pub fn truncate(&self, new_r: u32) -> Self {
        assert!(new_r <= self.r, "cannot truncate upward");
        let set = Arc::new(JetIndexSet::new(self.n, new_r));
        let old = self.set.len();
        let mut vals = Vec::with_capacity(sym_pair_count(self.n) * set.len());
        for pair in 0..sym_pair_count(self.n) {
            vals.extend_from_slice(&self.vals[pair * old..pair * old + set.len()]);
        }
        JetCoords { n: self.n, r: new_r, set, vals }
    }

    pub fn map<G: ExactScalar>(&self, mut f: impl FnMut(&F) -> G) -> JetCoords<G> {
        JetCoords {
            n: self.n,
            r: self.r,
            set: Arc::clone(&self.set),
            vals: self.vals.iter().map(&mut f).collect(),
        }
    }
}

impl<F: ExactScalar> PartialEq for JetCoords<F> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.r == other.r && self.vals == other.vals
    }
}

/// Signature (n⁺, n⁻) of an invertible symmetric rational matrix, from
/// Descartes sign variations of the characteristic polynomial — exact
/// because all eigenvalues of a symmetric matrix are real.
pub fn signature_of(g: &[Vec<Rational>]) -> Result<(usize, usize), JetError> {
    let n = g.len();
    let m = ExactMatrix::from_rows(g.to_vec());
    debug_assert!({
        let mut sym = true;
        for i in 0..n {
            for j in 0..n {
                sym &= g[i][j] == g[j][i];
            }
        }
        sym
    });
    let chi = m.char_poly();
    if chi[0].is_zero() {
        return Err(JetError::SingularZeroJet);
    }
    let plus = sign_variations(&chi);
    let minus = sign_variations(&poly_negate_variable(&chi));
    debug_assert_eq!(plus + minus, n);
    Ok((plus, minus))
}

/// A rational point of the order-r metric jet bundle.  Invariants: the
/// zero-jet block is invertible and symmetric, and `signature` is its actual
/// signature.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricJetPoint {
    coords: JetCoords<Rational>,
    signature: (usize, usize),
}

impl MetricJetPoint {
    pub fn from_coords(coords: JetCoords<Rational>) -> Result<Self, JetError> {
        let signature = signature_of(&coords.zero_jet())?;
        Ok(MetricJetPoint { coords, signature })
    }

    /// The flat point: diag(+1 … +1, −1 … −1) with all derivatives zero.
    pub fn flat(n: usize, signature: (usize, usize), r: u32) -> Self {
        assert!(n > 0 && signature.0 + signature.1 == n, "signature must sum to n");
        let mut coords = JetCoords::zero(n, r);
        let o = MultiIndex::zero(n);
        for i in 0..n {
            let v = if i < signature.0 { 1 } else { -1 };
            coords.set_coord(i, i, &o, Rational::from_integer(v.into()));
        }
        MetricJetPoint { coords, signature }
    }

    pub fn n(&self) -> usize {
        self.coords.n
    }

    pub fn r(&self) -> u32 {
        self.coords.r
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn coords(&self) -> &JetCoords<Rational> {
        &self.coords
    }

    pub fn get(&self, j: usize, k: usize, alpha: &MultiIndex) -> &Rational {
        self.coords.get(j, k, alpha)
    }

    pub fn zero_jet(&self) -> Vec<Vec<Rational>> {
        self.coords.zero_jet()
    }

    pub fn truncate(&self, new_r: u32) -> Self {
        MetricJetPoint { coords: self.coords.truncate(new_r), signature: self.signature }
    }

    /// Is this point in normal form at the origin: zero-jet diag(±1) and all
    /// first derivatives zero?
    pub fn is_normal_form(&self) -> bool {
        let n = self.n();
        let o = MultiIndex::zero(n);
        for (j, k) in sym_pairs(n) {
            let g = self.get(j, k, &o);
            let ok = if j == k {
                g == &Rational::from_integer(1.into()) || g == &Rational::from_integer((-1).into())
            } else {
                g.is_zero()
            };
            if !ok {
                return false;
            }
        }
        if self.r() == 0 {
            return true;
        }
        for (j, k) in sym_pairs(n) {
            for d in 0..n {
                if !self.get(j, k, &MultiIndex::unit(n, d)).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// The order-s jet at the origin of a vector field u = Σ u_h ∂/∂x_h: slots
/// are the partial derivatives D^β u_h for |β| ≤ s, stored component-major
/// and multi-index-minor — exactly the column layout of the prolongation
/// matrix, so the stored vector doubles as the coordinate vector.
#[derive(Clone, Debug)]
pub struct VectorFieldJet {
    n: usize,
    s: u32,
    set: Arc<JetIndexSet>,
    vals: Vec<Rational>,
}

impl PartialEq for VectorFieldJet {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.s == other.s && self.vals == other.vals
    }
}

impl VectorFieldJet {
    pub fn zero(n: usize, s: u32) -> Self {
        assert!(n > 0, "dimension must be positive");
        let set = Arc::new(JetIndexSet::new(n, s));
        let vals = vec![Rational::zero(); n * set.len()];
        VectorFieldJet { n, s, set, vals }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.s
    }

    pub fn index_set(&self) -> &JetIndexSet {
        &self.set
    }

    fn slot(&self, h: usize, beta: &MultiIndex) -> usize {
        assert!(h < self.n, "component out of range");
        let b = self
            .set
            .rank(beta)
            .unwrap_or_else(|| panic!("multi-index {beta} out of range for order {}", self.s));
        h * self.set.len() + b
    }

    /// D^β u_h at the origin.
    pub fn get(&self, h: usize, beta: &MultiIndex) -> &Rational {
        &self.vals[self.slot(h, beta)]
    }

    pub fn set_coord(&mut self, h: usize, beta: &MultiIndex, v: Rational) {
        let s = self.slot(h, beta);
        self.vals[s] = v;
    }

    /// The jet as a column vector in the standard layout.
    pub fn as_column(&self) -> &[Rational] {
        &self.vals
    }

    pub fn from_column(n: usize, s: u32, vals: Vec<Rational>) -> Self {
        let set = Arc::new(JetIndexSet::new(n, s));
        assert_eq!(vals.len(), n * set.len(), "column length mismatch");
        VectorFieldJet { n, s, set, vals }
    }

    /// Standard basis jet for the given column index.
    pub fn basis(n: usize, s: u32, col: usize) -> Self {
        let mut jet = Self::zero(n, s);
        assert!(col < jet.vals.len(), "column out of range");
        jet.vals[col] = Rational::from_integer(1.into());
        jet
    }

    pub fn truncate(&self, new_s: u32) -> Self {
        assert!(new_s <= self.s, "cannot truncate upward");
        let set = Arc::new(JetIndexSet::new(self.n, new_s));
        let old = self.set.len();
        let mut vals = Vec::with_capacity(self.n * set.len());
        for h in 0..self.n {
            vals.extend_from_slice(&self.vals[h * old..h * old + set.len()]);
        }
        VectorFieldJet { n: self.n, s: new_s, set, vals }
    }
}

/// A tangent vector to the metric jet bundle at a point, split into base
/// components dx_i and fiber components dy^{jk}_α.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentVector {
    dx: Vec<Rational>,
    dy: JetCoords<Rational>,
}

impl TangentVector {
    pub fn new(dx: Vec<Rational>, dy: JetCoords<Rational>) -> Self {
        assert_eq!(dx.len(), dy.n(), "base component count mismatch");
        TangentVector { dx, dy }
    }

    pub fn zero(n: usize, r: u32) -> Self {
        TangentVector { dx: vec![Rational::zero(); n], dy: JetCoords::zero(n, r) }
    }

    pub fn n(&self) -> usize {
        self.dy.n()
    }

    pub fn r(&self) -> u32 {
        self.dy.r()
    }

    pub fn dx(&self, i: usize) -> &Rational {
        &self.dx[i]
    }

    pub fn dy(&self, j: usize, k: usize, alpha: &MultiIndex) -> &Rational {
        self.dy.get(j, k, alpha)
    }

    pub fn dy_coords(&self) -> &JetCoords<Rational> {
        &self.dy
    }

    /// Flatten to the standard row layout: base first, then fiber.
    pub fn to_coord_vec(&self) -> Vec<Rational> {
        let mut v = self.dx.clone();
        v.extend_from_slice(self.dy.vals());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.dx.iter().all(Zero::is_zero) && self.dy.vals().iter().all(Zero::is_zero)
    }

    pub fn sub(&self, other: &TangentVector) -> TangentVector {
        assert_eq!(self.n(), other.n());
        assert_eq!(self.r(), other.r());
        let dx = self.dx.iter().zip(&other.dx).map(|(a, b)| a - b).collect();
        let mut dy = self.dy.clone();
        for (slot, v) in dy.vals.iter_mut().zip(other.dy.vals()) {
            *slot -= v;
        }
        TangentVector { dx, dy }
    }

    pub fn scale(&self, c: &Rational) -> TangentVector {
        let dx = self.dx.iter().map(|a| a * c).collect();
        let dy = self.dy.map(|a| a * c);
        TangentVector { dx, dy }
    }

    pub fn add(&self, other: &TangentVector) -> TangentVector {
        self.sub(&other.scale(&Rational::from_integer((-1).into())))
    }
}

/// Row labels of the prolongation matrix, in layout order.
#[derive(Clone, Debug, PartialEq)]
pub enum RowLabel {
    Base(usize),
    Fiber { j: usize, k: usize, alpha: MultiIndex },
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowLabel::Base(i) => write!(f, "x_{}", i + 1),
            RowLabel::Fiber { j, k, alpha } => {
                if alpha.is_zero() {
                    write!(f, "y^{{{}{}}}", j + 1, k + 1)
                } else {
                    write!(f, "y^{{{}{}}}_{}", j + 1, k + 1, alpha)
                }
            }
        }
    }
}

/// Column labels of the prolongation matrix, in layout order.
#[derive(Clone, Debug, PartialEq)]
pub struct ColLabel {
    pub comp: usize,
    pub beta: MultiIndex,
}

impl fmt::Display for ColLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.beta.is_zero() {
            write!(f, "u_{}", self.comp + 1)
        } else {
            write!(f, "D^{}u_{}", self.beta, self.comp + 1)
        }
    }
}

pub fn layout(n: usize, r: u32) -> Vec<RowLabel> {
    let set = JetIndexSet::new(n, r);
    let mut rows = Vec::with_capacity(dim_metric_jet(n, r));
    for i in 0..n {
        rows.push(RowLabel::Base(i));
    }
    for (j, k) in sym_pairs(n) {
        for alpha in set.iter() {
            rows.push(RowLabel::Fiber { j, k, alpha: alpha.clone() });
        }
    }
    rows
}

pub fn vf_layout(n: usize, s: u32) -> Vec<ColLabel> {
    let set = JetIndexSet::new(n, s);
    let mut cols = Vec::with_capacity(dim_vf_jet(n, s));
    for comp in 0..n {
        for beta in set.iter() {
            cols.push(ColLabel { comp, beta: beta.clone() });
        }
    }
    cols
}

/// Pretty form "g = diag(+1^p, −1^m)" helper used by reports.
pub fn signature_string(sig: (usize, usize)) -> String {
    format!("({},{})", sig.0, sig.1)
}

pub fn format_coord(q: &Rational) -> String {
    format_rational(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_i};

    #[test]
    fn dims_match_closed_forms() {
        assert_eq!(dim_metric_jet(2, 2), 20);
        assert_eq!(dim_metric_jet(2, 1), 11);
        assert_eq!(dim_metric_jet(3, 2), 63);
        assert_eq!(dim_metric_jet(4, 2), 154);
        assert_eq!(dim_metric_jet(3, 3), 123);
        assert_eq!(dim_metric_jet(4, 4), 704);
        assert_eq!(dim_vf_jet(2, 2), 12);
        assert_eq!(dim_vf_jet(3, 3), 60);
        assert_eq!(dim_vf_jet(2, 3), 20);
        assert_eq!(dim_vf_jet(4, 5), 504);
    }

    #[test]
    fn pair_indexing_is_row_major_upper_triangular() {
        assert_eq!(sym_pair_index(3, 0, 0), 0);
        assert_eq!(sym_pair_index(3, 0, 2), 2);
        assert_eq!(sym_pair_index(3, 1, 1), 3);
        assert_eq!(sym_pair_index(3, 2, 2), 5);
        // Symmetric completion.
        assert_eq!(sym_pair_index(3, 2, 0), sym_pair_index(3, 0, 2));
        let pairs: Vec<_> = sym_pairs(3).collect();
        assert_eq!(pairs, vec![(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]);
        for (t, (j, k)) in pairs.iter().enumerate() {
            assert_eq!(sym_pair_index(3, *j, *k), t);
        }
    }

    #[test]
    fn layout_lengths_and_labels() {
        let rows = layout(2, 1);
        assert_eq!(rows.len(), dim_metric_jet(2, 1));
        assert_eq!(rows[0].to_string(), "x_1");
        assert_eq!(rows[2].to_string(), "y^{11}");
        assert_eq!(rows[3].to_string(), "y^{11}_(1,0)");
        let cols = vf_layout(2, 2);
        assert_eq!(cols.len(), dim_vf_jet(2, 2));
        assert_eq!(cols[0].to_string(), "u_1");
        assert_eq!(cols[1].to_string(), "D^(1,0)u_1");
        assert_eq!(cols[6].to_string(), "u_2");
    }

    #[test]
    fn symmetric_access() {
        let mut c = JetCoords::<Rational>::zero(2, 1);
        let a = MultiIndex::unit(2, 1);
        c.set_coord(1, 0, &a, rat(5, 3));
        assert_eq!(c.get(0, 1, &a), &rat(5, 3));
        assert_eq!(c.get(1, 0, &a), &rat(5, 3));
    }

    #[test]
    fn signature_examples() {
        let id3: Vec<Vec<Rational>> = (0..3)
            .map(|i| (0..3).map(|j| rat_i(i64::from(i == j))).collect())
            .collect();
        assert_eq!(signature_of(&id3).unwrap(), (3, 0));
        let fib = vec![vec![rat_i(1), rat_i(1)], vec![rat_i(1), rat_i(0)]];
        assert_eq!(signature_of(&fib).unwrap(), (1, 1));
        let lorentz = vec![vec![rat_i(-1), rat_i(0)], vec![rat_i(0), rat_i(4)]];
        assert_eq!(signature_of(&lorentz).unwrap(), (1, 1));
        let sing = vec![vec![rat_i(1), rat_i(2)], vec![rat_i(2), rat_i(4)]];
        assert!(matches!(signature_of(&sing), Err(JetError::SingularZeroJet)));
    }

    #[test]
    fn flat_points() {
        let p = MetricJetPoint::flat(3, (2, 1), 2);
        assert_eq!(p.signature(), (2, 1));
        assert_eq!(p.get(2, 2, &MultiIndex::zero(3)), &rat_i(-1));
        assert_eq!(p.get(0, 1, &MultiIndex::zero(3)), &rat_i(0));
        assert!(p.is_normal_form());
        assert_eq!(signature_of(&p.zero_jet()).unwrap(), (2, 1));
    }

    #[test]
    fn from_coords_validates_and_computes_signature() {
        let mut c = JetCoords::<Rational>::zero(2, 0);
        let o = MultiIndex::zero(2);
        c.set_coord(0, 0, &o, rat_i(1));
        c.set_coord(0, 1, &o, rat_i(1));
        c.set_coord(1, 1, &o, rat_i(0));
        let p = MetricJetPoint::from_coords(c.clone()).unwrap();
        assert_eq!(p.signature(), (1, 1));
        assert!(!p.is_normal_form());

        c.set_coord(0, 0, &o, rat_i(0));
        c.set_coord(0, 1, &o, rat_i(0));
        assert!(matches!(MetricJetPoint::from_coords(c), Err(JetError::SingularZeroJet)));
    }

    #[test]
    fn truncation_keeps_lower_orders() {
        let mut c = JetCoords::<Rational>::zero(2, 2);
        let o = MultiIndex::zero(2);
        c.set_coord(0, 0, &o, rat_i(1));
        c.set_coord(1, 1, &o, rat_i(1));
        c.set_coord(0, 1, &MultiIndex::new(vec![1, 1]), rat(7, 2));
        c.set_coord(1, 1, &MultiIndex::unit(2, 0), rat(-2, 5));
        let p = MetricJetPoint::from_coords(c).unwrap();
        let q = p.truncate(1);
        assert_eq!(q.r(), 1);
        assert_eq!(q.get(1, 1, &MultiIndex::unit(2, 0)), &rat(-2, 5));
        assert_eq!(q.signature(), p.signature());
        let z = q.truncate(0);
        assert_eq!(z.zero_jet(), p.zero_jet());
    }

    #[test]
    fn vf_jet_column_layout() {
        let mut jet = VectorFieldJet::zero(2, 1);
        jet.set_coord(1, &MultiIndex::unit(2, 0), rat_i(4));
        // Column order: u_1, D^(1,0)u_1, D^(0,1)u_1, u_2, D^(1,0)u_2, D^(0,1)u_2.
        assert_eq!(
            jet.as_column(),
            &[rat_i(0), rat_i(0), rat_i(0), rat_i(0), rat_i(4), rat_i(0)]
        );
        let b = VectorFieldJet::basis(2, 1, 4);
        assert_eq!(b.get(1, &MultiIndex::unit(2, 0)), &rat_i(1));
        assert_eq!(b.as_column().iter().filter(|v| !v.is_zero()).count(), 1);
        let back = VectorFieldJet::from_column(2, 1, jet.as_column().to_vec());
        assert_eq!(back, jet);
    }

    #[test]
    fn tangent_vector_flattening() {
        let mut dy = JetCoords::<Rational>::zero(2, 0);
        dy.set_coord(0, 1, &MultiIndex::zero(2), rat_i(3));
        let v = TangentVector::new(vec![rat_i(1), rat_i(2)], dy);
        assert_eq!(
            v.to_coord_vec(),
            vec![rat_i(1), rat_i(2), rat_i(0), rat_i(3), rat_i(0)]
        );
        assert!(v.sub(&v).is_zero());
    }
}
