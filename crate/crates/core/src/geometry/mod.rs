//! Curvature of metric jets and the pointwise equations cutting out kernels
//! of the prolonged action.
//!
//! Conventions, fixed once and used everywhere:
//!
//! * Christoffel symbols  Γ^i_{jk} = ½ Σ_l g^{il}(∂_j g_{lk} + ∂_k g_{jl} − ∂_l g_{jk});
//! * curvature            R^i_{jkl} = ∂_k Γ^i_{lj} − ∂_l Γ^i_{kj} + Σ_m (Γ^i_{km} Γ^m_{lj} − Γ^i_{lm} Γ^m_{kj}),
//!   lowered as R_{ijkl} = Σ_m g_{im} R^m_{jkl};
//! * Ricci                r_{ab} = Σ_{z,w} g^{zw} R_{zawb}, with the associated
//!   endomorphism g^{-1}r and scalar curvature Σ g^{ab} r_{ab}.
//!
//! Everything is evaluated at the origin of a single jet: a jet of order r
//! determines Γ (r ≥ 1), the full curvature tensor (r ≥ 2) and its first
//! covariant derivative (r ≥ 3) exactly, with no approximation anywhere.
//!
//! The functions with an `_in` suffix are generic over the scalar, so the
//! same code path evaluates on rational points and on dual-number seedings
//! (for derivatives of curvature along jet-space directions).

mod curvature;

pub use curvature::{random_curvature, CurvatureTensor};

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{invert_small, rat, ExactMatrix, ExactScalar, Rational};
use crate::exact::{poly_is_squarefree, DualScalar};
use crate::jetspace::{JetCoords, JetError, MetricJetPoint, VectorFieldJet};
use crate::multiindex::MultiIndex;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("operation needs jet order at least {required}, point has order {actual}")]
    NeedsOrder { required: u32, actual: u32 },
    #[error("zero-jet block is singular")]
    SingularMetric,
    #[error("point is not in normal form (orthonormal zero-jet, vanishing first derivatives)")]
    NotNormalForm,
    #[error("diagonal entries must be +1 or -1")]
    BadDiagonal,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("invalid curvature data: {0}")]
    InvalidCurvature(String),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Jet(#[from] JetError),
}

#[inline]
fn i3(n: usize, a: usize, b: usize, c: usize) -> usize {
    (a * n + b) * n + c
}

#[inline]
fn i4(n: usize, a: usize, b: usize, c: usize, d: usize) -> usize {
    ((a * n + b) * n + c) * n + d
}

/// The directions of a multi-index, ascending, one entry per unit of order
/// (so (1, 2, 0) yields [0, 1, 1]).
fn directions(alpha: &MultiIndex) -> Vec<usize> {
    let mut out = Vec::with_capacity(alpha.order() as usize);
    for t in 0..alpha.dim() {
        for _ in 0..alpha.entry(t) {
            out.push(t);
        }
    }
    out
}

/// Square matrix over the scalar type, dense row-major.
type Matrix<F> = Vec<Vec<F>>;

/// Zero-jet block and its inverse.
fn metric_blocks<F: ExactScalar>(y: &JetCoords<F>) -> Result<(Matrix<F>, Matrix<F>), GeometryError> {
    let g = y.zero_jet();
    let ginv = invert_small(&g).ok_or(GeometryError::SingularMetric)?;
    Ok((g, ginv))
}

struct Connection<F> {
    g: Vec<Vec<F>>,
    /// Γ^i_{jk} at index (i, j, k).
    gamma: Vec<F>,
    /// ∂_p Γ^i_{jk} at index (p, i, j, k); populated when the jet order
    /// admits second derivatives of the metric.
    dgamma: Vec<F>,
}

fn connection<F: ExactScalar>(y: &JetCoords<F>, with_derivatives: bool) -> Result<Connection<F>, GeometryError> {
    let n = y.n();
    let required = if with_derivatives { 2 } else { 1 };
    if y.r() < required {
        return Err(GeometryError::NeedsOrder { required, actual: y.r() });
    }
    let (g, ginv) = metric_blocks(y)?;
    let half = F::from_rational(&rat(1, 2));

    // First partials ∂_p g_{ab}.
    let dg = |p: usize, a: usize, b: usize| y.get(a, b, &MultiIndex::unit(n, p));

    let mut gamma = vec![F::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in j..n {
                let mut acc = F::zero();
                for l in 0..n {
                    let sym = dg(j, l, k).clone() + dg(k, j, l).clone() - dg(l, j, k).clone();
                    acc = acc + ginv[i][l].clone() * sym;
                }
                let v = half.clone() * acc;
                gamma[i3(n, i, j, k)] = v.clone();
                gamma[i3(n, i, k, j)] = v;
            }
        }
    }

    let mut dgamma = Vec::new();
    if with_derivatives {
        // ∂_p g^{il} = −Σ_{a,b} g^{ia} (∂_p g_{ab}) g^{bl}.
        let mut dginv = vec![vec![vec![F::zero(); n]; n]; n];
        for p in 0..n {
            for i in 0..n {
                for l in 0..n {
                    let mut acc = F::zero();
                    for a in 0..n {
                        for b in 0..n {
                            acc = acc + ginv[i][a].clone() * dg(p, a, b).clone() * ginv[b][l].clone();
                        }
                    }
                    dginv[p][i][l] = F::zero() - acc;
                }
            }
        }
        let ddg = |p: usize, q: usize, a: usize, b: usize| {
            y.get(a, b, &MultiIndex::unit(n, p).add_unit(q))
        };
        dgamma = vec![F::zero(); n * n * n * n];
        for p in 0..n {
            for i in 0..n {
                for j in 0..n {
                    for k in j..n {
                        let mut acc = F::zero();
                        for l in 0..n {
                            let sym = dg(j, l, k).clone() + dg(k, j, l).clone() - dg(l, j, k).clone();
                            let dsym = ddg(p, j, l, k).clone() + ddg(p, k, j, l).clone()
                                - ddg(p, l, j, k).clone();
                            acc = acc + dginv[p][i][l].clone() * sym + ginv[i][l].clone() * dsym;
                        }
                        let v = half.clone() * acc;
                        dgamma[i4(n, p, i, j, k)] = v.clone();
                        dgamma[i4(n, p, i, k, j)] = v;
                    }
                }
            }
        }
    }

    Ok(Connection { g, gamma, dgamma })
}

/// Christoffel symbols Γ^i_{jk} as a flat array indexed by (i, j, k).
pub fn christoffel_in<F: ExactScalar>(y: &JetCoords<F>) -> Result<Vec<F>, GeometryError> {
    Ok(connection(y, false)?.gamma)
}

/// Lowered curvature components R_{ijkl} as a flat array indexed by
/// (i, j, k, l).
pub fn riemann_in<F: ExactScalar>(y: &JetCoords<F>) -> Result<Vec<F>, GeometryError> {
    let n = y.n();
    let conn = connection(y, true)?;
    let gm = |i: usize, j: usize, k: usize| &conn.gamma[i3(n, i, j, k)];
    let dgm = |p: usize, i: usize, j: usize, k: usize| &conn.dgamma[i4(n, p, i, j, k)];

    let mut up = vec![F::zero(); n * n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut acc = dgm(k, i, l, j).clone() - dgm(l, i, k, j).clone();
                    for m in 0..n {
                        acc = acc + gm(i, k, m).clone() * gm(m, l, j).clone()
                            - gm(i, l, m).clone() * gm(m, k, j).clone();
                    }
                    up[i4(n, i, j, k, l)] = acc;
                }
            }
        }
    }
    let mut low = vec![F::zero(); n * n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut acc = F::zero();
                    for m in 0..n {
                        acc = acc + conn.g[i][m].clone() * up[i4(n, m, j, k, l)].clone();
                    }
                    low[i4(n, i, j, k, l)] = acc;
                }
            }
        }
    }
    Ok(low)
}

/// Ricci tensor r_{ab} = Σ_{z,w} g^{zw} R_{zawb}.
pub fn ricci_in<F: ExactScalar>(y: &JetCoords<F>) -> Result<Vec<Vec<F>>, GeometryError> {
    let n = y.n();
    let low = riemann_in(y)?;
    let (_, ginv) = metric_blocks(y)?;
    let mut ric = vec![vec![F::zero(); n]; n];
    for a in 0..n {
        for b in 0..n {
            let mut acc = F::zero();
            for z in 0..n {
                for w in 0..n {
                    acc = acc + ginv[z][w].clone() * low[i4(n, z, a, w, b)].clone();
                }
            }
            ric[a][b] = acc;
        }
    }
    Ok(ric)
}

/// Scalar curvature Σ g^{ab} r_{ab}.
pub fn scalar_curvature_in<F: ExactScalar>(y: &JetCoords<F>) -> Result<F, GeometryError> {
    let n = y.n();
    let ric = ricci_in(y)?;
    let (_, ginv) = metric_blocks(y)?;
    let mut acc = F::zero();
    for a in 0..n {
        for b in 0..n {
            acc = acc + ginv[a][b].clone() * ric[a][b].clone();
        }
    }
    Ok(acc)
}

/// Kretschmann scalar Σ R_{ijkl} R^{ijkl}.
pub fn kretschmann_in<F: ExactScalar>(y: &JetCoords<F>) -> Result<F, GeometryError> {
    let n = y.n();
    let low = riemann_in(y)?;
    let (_, ginv) = metric_blocks(y)?;
    // Raise one index at a time.
    let mut cur = low.clone();
    for slot in 0..4 {
        let mut next = vec![F::zero(); n * n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut acc = F::zero();
                        for m in 0..n {
                            let src = match slot {
                                0 => i4(n, m, j, k, l),
                                1 => i4(n, i, m, k, l),
                                2 => i4(n, i, j, m, l),
                                _ => i4(n, i, j, k, m),
                            };
                            let contract = match slot {
                                0 => &ginv[i][m],
                                1 => &ginv[j][m],
                                2 => &ginv[k][m],
                                _ => &ginv[l][m],
                            };
                            acc = acc + contract.clone() * cur[src].clone();
                        }
                        next[i4(n, i, j, k, l)] = acc;
                    }
                }
            }
        }
        cur = next;
    }
    let mut acc = F::zero();
    for (a, b) in low.iter().zip(cur.iter()) {
        acc = acc + a.clone() * b.clone();
    }
    Ok(acc)
}

/// Christoffel symbols of a rational jet point.
#[derive(Clone, Debug, PartialEq)]
pub struct ChristoffelSymbols {
    n: usize,
    comp: Vec<Rational>,
}

impl ChristoffelSymbols {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.comp[i3(self.n, i, j, k)]
    }

    pub fn is_zero(&self) -> bool {
        self.comp.iter().all(Zero::is_zero)
    }
}

pub fn christoffel(point: &MetricJetPoint) -> Result<ChristoffelSymbols, GeometryError> {
    let comp = christoffel_in(point.coords())?;
    Ok(ChristoffelSymbols { n: point.n(), comp })
}

pub fn riemann(point: &MetricJetPoint) -> Result<CurvatureTensor, GeometryError> {
    let n = point.n();
    let low = riemann_in(point.coords())?;
    Ok(CurvatureTensor::from_fn(n, |i, j, k, l| low[i4(n, i, j, k, l)].clone())
        .expect("curvature of a metric jet satisfies all symmetries"))
}

/// Ricci tensor together with the endomorphism g^{-1} r.
#[derive(Clone, Debug, PartialEq)]
pub struct RicciData {
    pub tensor: Vec<Vec<Rational>>,
    pub endomorphism: Vec<Vec<Rational>>,
}

pub fn ricci(point: &MetricJetPoint) -> Result<RicciData, GeometryError> {
    let n = point.n();
    let tensor = ricci_in(point.coords())?;
    let (_, ginv) = metric_blocks(point.coords())?;
    let mut endo = vec![vec![Rational::zero(); n]; n];
    for a in 0..n {
        for b in 0..n {
            let mut acc = Rational::zero();
            for c in 0..n {
                acc += &ginv[a][c] * &tensor[c][b];
            }
            endo[a][b] = acc;
        }
    }
    Ok(RicciData { tensor, endomorphism: endo })
}

pub fn scalar_curvature(point: &MetricJetPoint) -> Result<Rational, GeometryError> {
    scalar_curvature_in(point.coords())
}

pub fn kretschmann(point: &MetricJetPoint) -> Result<Rational, GeometryError> {
    kretschmann_in(point.coords())
}

/// Whether the characteristic polynomial of the Ricci endomorphism is
/// squarefree, i.e. all its eigenvalues are pairwise distinct.
pub fn ricci_generic(point: &MetricJetPoint) -> Result<bool, GeometryError> {
    let data = ricci(point)?;
    let chi = ExactMatrix::from_rows(data.endomorphism).char_poly();
    Ok(poly_is_squarefree(&chi))
}

/// Ricci tensor determined algebraically by a curvature tensor at an
/// orthonormal zero-jet diag(ε₁, …, εₙ).
pub fn ricci_of_curvature(diag: &[i64], r: &CurvatureTensor) -> Vec<Vec<Rational>> {
    let n = r.n();
    assert_eq!(diag.len(), n, "diagonal length mismatch");
    let mut ric = vec![vec![Rational::zero(); n]; n];
    for a in 0..n {
        for b in 0..n {
            let mut acc = Rational::zero();
            for z in 0..n {
                // g^{zz} = ±1 equals g_{zz} on an orthonormal diagonal.
                acc += Rational::from_integer(diag[z].into()) * r.get(z, a, z, b);
            }
            ric[a][b] = acc;
        }
    }
    ric
}

fn check_diag(diag: &[i64]) -> Result<(), GeometryError> {
    if diag.is_empty() {
        return Err(GeometryError::DimensionMismatch);
    }
    if diag.iter().any(|&d| d != 1 && d != -1) {
        return Err(GeometryError::BadDiagonal);
    }
    Ok(())
}

/// The order-2 jet in normal form whose curvature at the origin is the given
/// tensor: zero-jet diag(ε), vanishing first derivatives, and
/// ∂²g_{pq}/∂x_a∂x_b = (1/3)(R_{pabq} + R_{pbaq}).
pub fn two_jet_from_curvature(
    diag: &[i64],
    r: &CurvatureTensor,
) -> Result<MetricJetPoint, GeometryError> {
    check_diag(diag)?;
    let n = r.n();
    if diag.len() != n {
        return Err(GeometryError::DimensionMismatch);
    }
    let third = rat(1, 3);
    let coords = JetCoords::from_fn(n, 2, |p, q, alpha| match alpha.order() {
        0 => {
            if p == q {
                Rational::from_integer(diag[p].into())
            } else {
                Rational::zero()
            }
        }
        1 => Rational::zero(),
        _ => {
            let dir = directions(alpha);
            let (a, b) = (dir[0], dir[1]);
            (r.get(p, a, b, q) + r.get(p, b, a, q)) * &third
        }
    });
    Ok(MetricJetPoint::from_coords(coords)?)
}

/// Cyclic sum ∇_m R_{ijkl} + ∇_k R_{ijlm} + ∇_l R_{ijmk}, which vanishes for
/// the covariant derivative of an actual metric's curvature.
fn second_bianchi_defect(dr: &[CurvatureTensor], i: usize, j: usize, k: usize, l: usize, m: usize) -> Rational {
    dr[m].get(i, j, k, l) + dr[k].get(i, j, l, m) + dr[l].get(i, j, m, k)
}

/// The order-3 jet in normal form realizing a curvature tensor and its first
/// covariant derivative at the origin. The third-order coordinates are
/// ∂³g_{pq}/∂x_a∂x_b∂x_c =
///   (1/6)[∇_a(R_{pbcq} + R_{pcbq}) + ∇_b(R_{pacq} + R_{pcaq}) + ∇_c(R_{pabq} + R_{pbaq})].
pub fn three_jet_from_curvature(
    diag: &[i64],
    r: &CurvatureTensor,
    dr: &[CurvatureTensor],
) -> Result<MetricJetPoint, GeometryError> {
    check_diag(diag)?;
    let n = r.n();
    if diag.len() != n || dr.len() != n || dr.iter().any(|t| t.n() != n) {
        return Err(GeometryError::DimensionMismatch);
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    for m in 0..n {
                        if !second_bianchi_defect(dr, i, j, k, l, m).is_zero() {
                            return Err(GeometryError::InvalidCurvature(
                                "covariant-derivative data violates the second Bianchi identity"
                                    .into(),
                            ));
                        }
                    }
                }
            }
        }
    }
    let two = two_jet_from_curvature(diag, r)?;
    let sixth = rat(1, 6);
    let coords = JetCoords::from_fn(n, 3, |p, q, alpha| {
        if alpha.order() <= 2 {
            return two.get(p, q, alpha).clone();
        }
        let dir = directions(alpha);
        let (a, b, c) = (dir[0], dir[1], dir[2]);
        let term = |m: usize, s: usize, t: usize| dr[m].get(p, s, t, q) + dr[m].get(p, t, s, q);
        (term(a, b, c) + term(b, a, c) + term(c, a, b)) * &sixth
    });
    Ok(MetricJetPoint::from_coords(coords)?)
}

/// First covariant derivative of curvature, one tensor (∇_m R)_{ijkl} per
/// direction m. Needs an order-3 jet.
pub fn nabla_r(point: &MetricJetPoint) -> Result<Vec<CurvatureTensor>, GeometryError> {
    let n = point.n();
    if point.r() < 3 {
        return Err(GeometryError::NeedsOrder { required: 3, actual: point.r() });
    }
    let y = point.coords();
    let gamma = christoffel_in(y)?;
    let low = riemann_in(&y.truncate(2))?;
    let gm = |a: usize, b: usize, c: usize| &gamma[i3(n, a, b, c)];
    let rr = |a: usize, b: usize, c: usize, d: usize| &low[i4(n, a, b, c, d)];

    let mut out = Vec::with_capacity(n);
    for m in 0..n {
        // Coordinate derivative of curvature in direction m via dual numbers:
        // seed each jet coordinate with its neighbour one order up.
        let seeded = JetCoords::from_fn(n, 2, |p, q, alpha| {
            DualScalar::new(y.get(p, q, alpha).clone(), y.get(p, q, &alpha.add_unit(m)).clone())
        });
        let dual = riemann_in(&seeded)?;
        let tensor = CurvatureTensor::from_fn(n, |i, j, k, l| {
            let d = &dual[i4(n, i, j, k, l)];
            debug_assert_eq!(&d.val, rr(i, j, k, l));
            let mut acc = d.der.clone();
            for a in 0..n {
                acc -= gm(a, m, i) * rr(a, j, k, l)
                    + gm(a, m, j) * rr(i, a, k, l)
                    + gm(a, m, k) * rr(i, j, a, l)
                    + gm(a, m, l) * rr(i, j, k, a);
            }
            acc
        })
        .expect("covariant derivative of curvature satisfies the algebraic symmetries");
        out.push(tensor);
    }
    Ok(out)
}

/// Whether ∇R has any nonzero component at the point.
pub fn nabla_r_nonzero(point: &MetricJetPoint) -> Result<bool, GeometryError> {
    Ok(nabla_r(point)?.iter().any(|t| !t.is_zero()))
}

/// A curvature tensor whose Ricci tensor at the orthonormal zero-jet diag(ε)
/// equals the given symmetric matrix, if one exists.
pub fn curvature_with_ricci(
    diag: &[i64],
    target: &[Vec<Rational>],
) -> Result<Option<CurvatureTensor>, GeometryError> {
    check_diag(diag)?;
    let n = diag.len();
    if target.len() != n || target.iter().any(|row| row.len() != n) {
        return Err(GeometryError::DimensionMismatch);
    }
    for a in 0..n {
        for b in a + 1..n {
            if target[a][b] != target[b][a] {
                return Err(GeometryError::InvalidCurvature(
                    "target Ricci tensor must be symmetric".into(),
                ));
            }
        }
    }
    // Unknowns: the upper triangle of a symmetric matrix on the pair space;
    // each unit matrix maps to a curvature tensor through the Bianchi
    // projection, and Ricci is linear in that tensor.
    let pairs = curvature::strict_pairs(n);
    let m = pairs.len();
    let mut basis = Vec::new();
    for a in 0..m {
        for b in a..m {
            let mut s = vec![vec![Rational::zero(); m]; m];
            s[a][b] = Rational::one();
            s[b][a] = Rational::one();
            basis.push(curvature::from_pair_matrix(n, &s));
        }
    }
    let sym_slots: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let mut rows = vec![vec![Rational::zero(); basis.len()]; sym_slots.len()];
    for (col, tensor) in basis.iter().enumerate() {
        let ric = ricci_of_curvature(diag, tensor);
        for (row, &(a, b)) in sym_slots.iter().enumerate() {
            rows[row][col] = ric[a][b].clone();
        }
    }
    let rhs: Vec<Rational> =
        sym_slots.iter().map(|&(a, b)| target[a][b].clone()).collect();
    let Some(sol) = ExactMatrix::from_rows(rows).solve(&rhs) else {
        return Ok(None);
    };
    let mut s = vec![vec![Rational::zero(); m]; m];
    for (idx, (a, b)) in (0..m).flat_map(|a| (a..m).map(move |b| (a, b))).enumerate() {
        s[a][b] = sol[idx].clone();
        s[b][a] = sol[idx].clone();
    }
    let tensor = curvature::from_pair_matrix(n, &s);
    debug_assert_eq!(ricci_of_curvature(diag, &tensor), target);
    Ok(Some(tensor))
}

/// Orbit of an index 4-tuple under the order-8 group generated by the cyclic
/// shift (i,j,k,l) ↦ (j,k,l,i) and the reversal (i,j,k,l) ↦ (i,l,k,j). Both
/// generators flip the sign of the curvature residual, so each orbit element
/// carries the sign s with residual(element) = s · residual(t). The flag
/// marks orbits where the two signs collide, forcing the residual to vanish.
pub fn residual_orbit(t: [usize; 4]) -> (Vec<([usize; 4], i8)>, bool) {
    let gamma = |u: [usize; 4]| [u[1], u[2], u[3], u[0]];
    let tau = |u: [usize; 4]| [u[0], u[3], u[2], u[1]];
    let mut map: BTreeMap<[usize; 4], i8> = BTreeMap::new();
    map.insert(t, 1);
    let mut queue = vec![t];
    let mut forced = false;
    while let Some(u) = queue.pop() {
        let su = map[&u];
        for v in [gamma(u), tau(u)] {
            match map.get(&v) {
                Some(&s) => {
                    if s != -su {
                        forced = true;
                    }
                }
                None => {
                    map.insert(v, -su);
                    queue.push(v);
                }
            }
        }
    }
    (map.into_iter().collect(), forced)
}

/// Lexicographically smallest orbit element, the sign relating the residuals
/// (residual(t) = sign · residual(rep)), and the forced-vanishing flag.
pub fn residual_orbit_representative(t: [usize; 4]) -> ([usize; 4], i8, bool) {
    let (orbit, forced) = residual_orbit(t);
    let (rep, sign) = orbit[0];
    (rep, sign, forced)
}

/// The curvature obstruction attached to a first-derivative matrix
/// b[h][i] = ∂u_h/∂x_i at an index tuple (i, j, k, l):
/// Σ_h (b_{hi} R_{hkjl} + b_{hj} R_{hlik} + b_{hk} R_{hilj} + b_{hl} R_{hjki}).
pub fn curvature_residual(
    b: &[Vec<Rational>],
    r: &CurvatureTensor,
    t: [usize; 4],
) -> Rational {
    let [i, j, k, l] = t;
    let mut acc = Rational::zero();
    for h in 0..r.n() {
        acc += &b[h][i] * r.get(h, k, j, l)
            + &b[h][j] * r.get(h, l, i, k)
            + &b[h][k] * r.get(h, i, l, j)
            + &b[h][l] * r.get(h, j, k, i);
    }
    acc
}

/// The matrix of first derivatives b[h][i] = ∂u_h/∂x_i of a vector-field jet.
pub fn first_order_matrix(jet: &VectorFieldJet) -> Vec<Vec<Rational>> {
    let n = jet.n();
    let mut b = vec![vec![Rational::zero(); n]; n];
    if jet.order() >= 1 {
        for (h, row) in b.iter_mut().enumerate() {
            for (i, entry) in row.iter_mut().enumerate() {
                *entry = jet.get(h, &MultiIndex::unit(n, i)).clone();
            }
        }
    }
    b
}

/// Residuals of the pointwise kernel equations for a vector-field jet at a
/// normal-form point: the value of the field, the diagonal Killing
/// combinations ε_i ∂u_i/∂x_j + ε_j ∂u_j/∂x_i, every derivative of order ≥ 2,
/// and (when the point carries curvature) the curvature obstructions.
#[derive(Clone, Debug)]
pub struct KernelReport {
    /// (component h, u_h(0)).
    pub values: Vec<(usize, Rational)>,
    /// (i, j, ε_i ∂u_i/∂x_j + ε_j ∂u_j/∂x_i) for i ≤ j.
    pub killing: Vec<(usize, usize, Rational)>,
    /// (component h, β, ∂^β u_h) for |β| ≥ 2.
    pub higher_order: Vec<(usize, MultiIndex, Rational)>,
    /// Curvature obstructions, present when the point has order ≥ 2.
    pub curvature: Option<CurvatureResiduals>,
}

#[derive(Clone, Debug)]
pub struct CurvatureResiduals {
    /// Residuals at canonical tuples (the smallest element of each orbit).
    pub canonical: Vec<([usize; 4], Rational)>,
    /// Whether every residual matches its orbit representative up to the
    /// orbit sign, with forced-vanishing orbits actually vanishing.
    pub orbit_consistent: bool,
}

impl KernelReport {
    pub fn passes(&self) -> bool {
        self.values.iter().all(|(_, v)| v.is_zero())
            && self.killing.iter().all(|(_, _, v)| v.is_zero())
            && self.higher_order.iter().all(|(_, _, v)| v.is_zero())
            && self
                .curvature
                .as_ref()
                .is_none_or(|c| c.orbit_consistent && c.canonical.iter().all(|(_, v)| v.is_zero()))
    }
}

/// Evaluate the kernel equations for a vector-field jet at a normal-form
/// metric jet point.
pub fn kernel_equation_check(
    point: &MetricJetPoint,
    jet: &VectorFieldJet,
) -> Result<KernelReport, GeometryError> {
    let n = point.n();
    if jet.n() != n {
        return Err(GeometryError::DimensionMismatch);
    }
    if !point.is_normal_form() {
        return Err(GeometryError::NotNormalForm);
    }
    let eps: Vec<Rational> = (0..n)
        .map(|i| point.get(i, i, &MultiIndex::zero(n)).clone())
        .collect();

    let values: Vec<(usize, Rational)> =
        (0..n).map(|h| (h, jet.get(h, &MultiIndex::zero(n)).clone())).collect();

    let b = first_order_matrix(jet);
    let mut killing = Vec::new();
    for i in 0..n {
        for j in i..n {
            killing.push((i, j, &eps[i] * &b[i][j] + &eps[j] * &b[j][i]));
        }
    }

    let mut higher_order = Vec::new();
    for h in 0..n {
        for beta in jet.index_set().iter() {
            if beta.order() >= 2 {
                higher_order.push((h, beta.clone(), jet.get(h, beta).clone()));
            }
        }
    }

    let curvature = if point.r() >= 2 {
        let r = riemann(point)?;
        let mut canonical = Vec::new();
        let mut orbit_consistent = true;
        let mut residuals: BTreeMap<[usize; 4], Rational> = BTreeMap::new();
        let mut tuples = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let t = [i, j, k, l];
                        residuals.insert(t, curvature_residual(&b, &r, t));
                        tuples.push(t);
                    }
                }
            }
        }
        for &t in &tuples {
            let (rep, sign, forced) = residual_orbit_representative(t);
            let expect = if sign == 1 { residuals[&rep].clone() } else { -residuals[&rep].clone() };
            if residuals[&t] != expect || (forced && !residuals[&t].is_zero()) {
                orbit_consistent = false;
            }
            if rep == t {
                canonical.push((t, residuals[&t].clone()));
            }
        }
        Some(CurvatureResiduals { canonical, orbit_consistent })
    } else {
        None
    };

    Ok(KernelReport { values, killing, higher_order, curvature })
}
