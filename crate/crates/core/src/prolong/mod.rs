//! Prolongation of vector fields to the metric jet bundle.
//!
//! A vector field u = Σ u_h ∂/∂x_h on the base acts on metrics by pullback
//! along its flow; differentiating that action gives a vector field ū on
//! every jet bundle J^r.  At a fixed point its components are
//!
//!   dx_i = u_i ,
//!   dy^{ij}_α = −Σ_h { Σ_{β≤α} C(α,β) [ D^{β+(i)}u_h · y^{hj}_{α−β}
//!                                     + D^{β+(j)}u_h · y^{ih}_{α−β} ]
//!             + Σ_{0<β≤α} C(α,β) D^β u_h · y^{ij}_{α−β+(h)} } ,
//!
//! which depends on u only through its (r+1)-jet.  [`lift`] evaluates this
//! linear dependence on one jet; [`phi_matrix`] materializes it as a matrix
//! in the standard layouts; [`lift_eval`] evaluates it at arbitrary scalar
//! coordinates (e.g. dual numbers) for a polynomial field; and
//! [`bracket_residual`] checks the Lie-algebra homomorphism property
//! [X̄, Ȳ] = [X, Y]̄ exactly at a point.

mod poly;

pub use poly::{random_field, MultiPoly, PolynomialVectorField};

use num_traits::{One, Zero};

use crate::exact::{DualScalar, ExactMatrix, ExactScalar, Rational};
use crate::jetspace::{
    dim_metric_jet, dim_vf_jet, sym_pairs, JetCoords, MetricJetPoint, TangentVector,
    VectorFieldJet,
};
use crate::multiindex::{JetIndexSet, MultiIndex};

/// One fiber component dy^{ij}_α of the prolongation, generic in the scalar
/// and in how derivative/coordinate values are looked up.
fn fiber_component<F, D, Y>(n: usize, deriv: &D, y: &Y, i: usize, j: usize, alpha: &MultiIndex) -> F
where
    F: ExactScalar,
    D: Fn(usize, &MultiIndex) -> F,
    Y: Fn(usize, usize, &MultiIndex) -> F,
{
    let mut acc = F::zero();
    for h in 0..n {
        for beta in alpha.dominated() {
            let coeff = F::from_bigint(&alpha.binomial(&beta));
            let rest = alpha.sub_checked(&beta).expect("dominated() yields β ≤ α");
            let t1 = deriv(h, &beta.add_unit(i)) * y(h, j, &rest);
            let t2 = deriv(h, &beta.add_unit(j)) * y(i, h, &rest);
            acc = acc + coeff.clone() * (t1 + t2);
            if !beta.is_zero() {
                acc = acc + coeff * deriv(h, &beta) * y(i, j, &rest.add_unit(h));
            }
        }
    }
    -acc
}

/// Tangent vector at `point` induced by an (r+1)-jet of a vector field.
pub fn lift(point: &MetricJetPoint, jet: &VectorFieldJet) -> TangentVector {
    let n = point.n();
    assert_eq!(jet.n(), n, "dimension mismatch");
    assert_eq!(jet.order(), point.r() + 1, "need an (r+1)-jet to move an r-jet of metrics");
    let deriv = |h: usize, beta: &MultiIndex| jet.get(h, beta).clone();
    let y = |a: usize, b: usize, alpha: &MultiIndex| point.get(a, b, alpha).clone();
    let dx: Vec<Rational> = (0..n).map(|i| jet.get(i, &MultiIndex::zero(n)).clone()).collect();
    let dy = JetCoords::from_fn(n, point.r(), |i, j, alpha| fiber_component(n, &deriv, &y, i, j, alpha));
    TangentVector::new(dx, dy)
}

/// Order-zero case written out separately (dy_{ij} = −Σ_h (∂u_h/∂x_i y_{hj}
/// + ∂u_h/∂x_j y_{ih})), kept as an independently coded cross-check.
pub fn lift0(point: &MetricJetPoint, jet: &VectorFieldJet) -> TangentVector {
    let n = point.n();
    assert_eq!(point.r(), 0, "lift0 is the order-zero lift");
    assert_eq!(jet.n(), n, "dimension mismatch");
    assert_eq!(jet.order(), 1, "need a 1-jet");
    let o = MultiIndex::zero(n);
    let dx: Vec<Rational> = (0..n).map(|i| jet.get(i, &o).clone()).collect();
    let mut dy = JetCoords::zero(n, 0);
    for (i, j) in sym_pairs(n) {
        let mut acc = Rational::zero();
        for h in 0..n {
            acc += jet.get(h, &MultiIndex::unit(n, i)) * point.get(h, j, &o);
            acc += jet.get(h, &MultiIndex::unit(n, j)) * point.get(i, h, &o);
        }
        dy.set_coord(i, j, &o, -acc);
    }
    TangentVector::new(dx, dy)
}

/// The prolongation map at `point` as a dim J^r × dim(vector-field jets)
/// matrix over the rationals, rows and columns in the standard layouts.
pub fn phi_matrix(point: &MetricJetPoint) -> ExactMatrix {
    let n = point.n();
    let r = point.r();
    let col_set = JetIndexSet::new(n, r + 1);
    let row_set = point.coords().index_set();
    let m_alpha = row_set.len();
    let m_beta = col_set.len();
    let mut m = ExactMatrix::zeros(dim_metric_jet(n, r), dim_vf_jet(n, r + 1));
    // Base rows: dx_i picks out the value u_i, the β = 0 column of component i.
    for i in 0..n {
        m.set(i, i * m_beta, Rational::one());
    }
    // Fiber rows: scatter each term of the formula into its column.
    for (pair_idx, (i, j)) in sym_pairs(n).enumerate() {
        for (a_idx, alpha) in row_set.iter().enumerate() {
            let row = n + pair_idx * m_alpha + a_idx;
            let mut add = |col: usize, v: Rational| {
                let cur = m.get(row, col) - v;
                m.set(row, col, cur);
            };
            for h in 0..n {
                for beta in alpha.dominated() {
                    let c = Rational::from_integer(alpha.binomial(&beta));
                    let rest = alpha.sub_checked(&beta).expect("dominated() yields β ≤ α");
                    let col1 = h * m_beta + col_set.rank(&beta.add_unit(i)).expect("|β|+1 ≤ r+1");
                    add(col1, &c * point.get(h, j, &rest));
                    let col2 = h * m_beta + col_set.rank(&beta.add_unit(j)).expect("|β|+1 ≤ r+1");
                    add(col2, &c * point.get(i, h, &rest));
                    if !beta.is_zero() {
                        let col3 = h * m_beta + col_set.rank(&beta).expect("|β| ≤ r+1");
                        add(col3, &c * point.get(i, j, &rest.add_unit(h)));
                    }
                }
            }
        }
    }
    m
}

/// Evaluate the prolongation of a polynomial field at arbitrary coordinates
/// (x, y) over any exact scalar: returns (dx_i, dy^{jk}_α) with |α| ≤ r.
pub fn lift_eval<F: ExactScalar>(
    vf: &PolynomialVectorField,
    r: u32,
    x: &[F],
    y: &JetCoords<F>,
) -> (Vec<F>, JetCoords<F>) {
    let n = vf.n();
    assert_eq!(x.len(), n, "dimension mismatch");
    assert_eq!(y.n(), n, "dimension mismatch");
    assert_eq!(y.r(), r, "coordinate order mismatch");
    // All partials of each component to order r+1, evaluated at x, built by
    // walking the graded enumeration (each β > 0 differentiates a predecessor).
    let set = JetIndexSet::new(n, r + 1);
    let mut derivs: Vec<Vec<F>> = Vec::with_capacity(n);
    for h in 0..n {
        let mut polys: Vec<MultiPoly> = Vec::with_capacity(set.len());
        let mut evals: Vec<F> = Vec::with_capacity(set.len());
        for beta in set.iter() {
            let p = match beta.entries().iter().position(|&e| e > 0) {
                None => vf.component(h).clone(),
                Some(dir) => {
                    let prev = beta.sub_unit_checked(dir).expect("entry positive");
                    polys[set.rank(&prev).expect("lower order present")].partial(dir)
                }
            };
            evals.push(p.eval(x));
            polys.push(p);
        }
        derivs.push(evals);
    }
    let deriv = |h: usize, beta: &MultiIndex| derivs[h][set.rank(beta).expect("|β| ≤ r+1")].clone();
    let yget = |a: usize, b: usize, alpha: &MultiIndex| y.get(a, b, alpha).clone();
    let dx: Vec<F> = (0..n).map(|i| derivs[i][0].clone()).collect();
    let dy = JetCoords::from_fn(n, r, |i, j, alpha| fiber_component(n, &deriv, &yget, i, j, alpha));
    (dx, dy)
}

/// [X̄, Ȳ]_p − [X, Y]̄_p, computed exactly: each prolonged coordinate
/// function is differentiated along the other lift with dual numbers.  A
/// zero residual at `point` is the homomorphism property there.
pub fn bracket_residual(
    x_field: &PolynomialVectorField,
    y_field: &PolynomialVectorField,
    point: &MetricJetPoint,
) -> TangentVector {
    let n = point.n();
    assert_eq!(x_field.n(), n, "dimension mismatch");
    assert_eq!(y_field.n(), n, "dimension mismatch");
    let r = point.r();
    let s = r + 1;

    let vx = lift(point, &x_field.jet_at_origin(s));
    let vy = lift(point, &y_field.jet_at_origin(s));

    // Derivative of every coordinate component of the lift of `field` along
    // the tangent vector `dir` at `point`.
    let directional = |field: &PolynomialVectorField, dir: &TangentVector, value_check: &TangentVector| {
        let xs: Vec<DualScalar> =
            (0..n).map(|i| DualScalar::new(Rational::zero(), dir.dx(i).clone())).collect();
        let ys = JetCoords::from_fn(n, r, |j, k, alpha| {
            DualScalar::new(point.get(j, k, alpha).clone(), dir.dy(j, k, alpha).clone())
        });
        let (dx, dy) = lift_eval(field, r, &xs, &ys);
        // Value parts must reproduce the plain lift at the point.
        for (i, d) in dx.iter().enumerate() {
            assert_eq!(&d.val, value_check.dx(i), "lift/lift_eval disagree");
        }
        let der_dx: Vec<Rational> = dx.into_iter().map(|d| d.der).collect();
        let mut der_dy = JetCoords::<Rational>::zero(n, r);
        for (j, k) in sym_pairs(n) {
            for alpha in ys.index_set().iter() {
                let d = dy.get(j, k, alpha);
                assert_eq!(&d.val, value_check.dy(j, k, alpha), "lift/lift_eval disagree");
                der_dy.set_coord(j, k, alpha, d.der.clone());
            }
        }
        TangentVector::new(der_dx, der_dy)
    };

    // X̄_p(Ȳ(c)) − Ȳ_p(X̄(c)) coordinatewise …
    let xy = directional(y_field, &vx, &vy);
    let yx = directional(x_field, &vy, &vx);
    // … minus the lift of the bracket.
    let vb = lift(point, &x_field.bracket(y_field).jet_at_origin(s));
    xy.sub(&yx).sub(&vb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{det_small, rat, rat_i};
    use crate::jetspace::signature_of;
    use crate::multiindex::enumerate;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_point(rng: &mut impl Rng, n: usize, r: u32) -> MetricJetPoint {
        loop {
            let coords = JetCoords::from_fn(n, r, |_, _, _| {
                rat(rng.random_range(-6i64..=6), rng.random_range(1i64..=3))
            });
            if signature_of(&coords.zero_jet()).is_ok() {
                return MetricJetPoint::from_coords(coords).unwrap();
            }
        }
    }

    fn random_jet(rng: &mut impl Rng, n: usize, s: u32) -> VectorFieldJet {
        let mut jet = VectorFieldJet::zero(n, s);
        for h in 0..n {
            for beta in enumerate(n, s) {
                jet.set_coord(h, &beta, rat(rng.random_range(-6i64..=6), rng.random_range(1i64..=3)));
            }
        }
        jet
    }

    /// Independent transliteration of the first-order prolongation:
    /// dy_{ij}   = −Σ_h (u_{h,i} y_{hj} + u_{h,j} y_{ih}),
    /// dy_{ij,k} = −Σ_h (u_{h,ik} y_{hj} + u_{h,jk} y_{ih}
    ///                   + u_{h,i} y_{hj,k} + u_{h,j} y_{ih,k} + u_{h,k} y_{ij,h}).
    fn lift_order1_reference(point: &MetricJetPoint, jet: &VectorFieldJet) -> TangentVector {
        let n = point.n();
        let o = MultiIndex::zero(n);
        let u = |h: usize, dirs: &[usize]| {
            let mut b = MultiIndex::zero(n);
            for &d in dirs {
                b = b.add_unit(d);
            }
            jet.get(h, &b).clone()
        };
        let y0 = |a: usize, b: usize| point.get(a, b, &o).clone();
        let y1 = |a: usize, b: usize, k: usize| point.get(a, b, &MultiIndex::unit(n, k)).clone();
        let dx: Vec<Rational> = (0..n).map(|i| u(i, &[])).collect();
        let mut dy = JetCoords::zero(n, 1);
        for (i, j) in sym_pairs(n) {
            let mut v0 = Rational::zero();
            for h in 0..n {
                v0 += u(h, &[i]) * y0(h, j) + u(h, &[j]) * y0(i, h);
            }
            dy.set_coord(i, j, &o, -v0);
            for k in 0..n {
                let mut v1 = Rational::zero();
                for h in 0..n {
                    v1 += u(h, &[i, k]) * y0(h, j)
                        + u(h, &[j, k]) * y0(i, h)
                        + u(h, &[i]) * y1(h, j, k)
                        + u(h, &[j]) * y1(i, h, k)
                        + u(h, &[k]) * y1(i, j, h);
                }
                dy.set_coord(i, j, &MultiIndex::unit(n, k), -v1);
            }
        }
        TangentVector::new(dx, dy)
    }

    #[test]
    fn order1_matches_reference_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for n in [2usize, 3] {
            for _ in 0..6 {
                let point = random_point(&mut rng, n, 1);
                let jet = random_jet(&mut rng, n, 2);
                assert_eq!(lift(&point, &jet), lift_order1_reference(&point, &jet));
            }
        }
    }

    /// Pinned values at the flat Euclidean plane, order 1.
    #[test]
    fn flat_plane_second_order_seeds() {
        let point = MetricJetPoint::flat(2, (2, 0), 1);

        // Seed ∂²u_1/∂x_1² = 1: the only response is dy^{11}_{(1,0)} = −2.
        let mut jet = VectorFieldJet::zero(2, 2);
        jet.set_coord(0, &MultiIndex::new(vec![2, 0]), rat_i(1));
        let v = lift(&point, &jet);
        let mut dy = JetCoords::zero(2, 1);
        dy.set_coord(0, 0, &MultiIndex::new(vec![1, 0]), rat_i(-2));
        assert_eq!(v, TangentVector::new(vec![rat_i(0), rat_i(0)], dy));

        // Seed ∂²u_2/∂x_1∂x_2 = 1: dy^{22}_{(1,0)} = −2 and dy^{12}_{(0,1)} = −1.
        let mut jet = VectorFieldJet::zero(2, 2);
        jet.set_coord(1, &MultiIndex::new(vec![1, 1]), rat_i(1));
        let v = lift(&point, &jet);
        let mut dy = JetCoords::zero(2, 1);
        dy.set_coord(1, 1, &MultiIndex::new(vec![1, 0]), rat_i(-2));
        dy.set_coord(0, 1, &MultiIndex::new(vec![0, 1]), rat_i(-1));
        assert_eq!(v, TangentVector::new(vec![rat_i(0), rat_i(0)], dy));
    }

    #[test]
    fn lift_is_linear_in_the_jet() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let point = random_point(&mut rng, 2, 2);
        let j1 = random_jet(&mut rng, 2, 3);
        let j2 = random_jet(&mut rng, 2, 3);
        let (a, b) = (rat(3, 2), rat(-5, 7));
        let mut combo = VectorFieldJet::zero(2, 3);
        for h in 0..2 {
            for beta in enumerate(2, 3) {
                combo.set_coord(h, &beta, j1.get(h, &beta) * &a + j2.get(h, &beta) * &b);
            }
        }
        let lhs = lift(&point, &combo);
        let rhs = lift(&point, &j1).scale(&a).add(&lift(&point, &j2).scale(&b));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn lift_projects_to_lower_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for n in [2usize, 3] {
            let point = random_point(&mut rng, n, 2);
            let jet = random_jet(&mut rng, n, 3);
            let full = lift(&point, &jet);
            for r_low in 0..=1u32 {
                let low = lift(&point.truncate(r_low), &jet.truncate(r_low + 1));
                for i in 0..n {
                    assert_eq!(low.dx(i), full.dx(i));
                }
                for (j, k) in sym_pairs(n) {
                    for alpha in enumerate(n, r_low) {
                        assert_eq!(low.dy(j, k, &alpha), full.dy(j, k, &alpha));
                    }
                }
            }
        }
    }

    #[test]
    fn lift0_agrees_with_general_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for n in [2usize, 3, 4] {
            let point = random_point(&mut rng, n, 0);
            let jet = random_jet(&mut rng, n, 1);
            assert_eq!(lift0(&point, &jet), lift(&point, &jet));
        }
    }

    #[test]
    fn matrix_columns_are_lifts_of_basis_jets() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for (n, r) in [(2usize, 0u32), (2, 1), (2, 2), (3, 1)] {
            let point = random_point(&mut rng, n, r);
            let m = phi_matrix(&point);
            assert_eq!(m.nrows(), dim_metric_jet(n, r));
            assert_eq!(m.ncols(), dim_vf_jet(n, r + 1));
            for col in 0..m.ncols() {
                let v = lift(&point, &VectorFieldJet::basis(n, r + 1, col)).to_coord_vec();
                for row in 0..m.nrows() {
                    assert_eq!(m.get(row, col), &v[row], "entry ({row}, {col})");
                }
            }
        }
    }

    #[test]
    fn matrix_times_jet_is_lift() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let point = random_point(&mut rng, 3, 2);
        let jet = random_jet(&mut rng, 3, 3);
        let m = phi_matrix(&point);
        assert_eq!(m.mul_vec(jet.as_column()), lift(&point, &jet).to_coord_vec());
    }

    #[test]
    fn example_dimensions() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let point = random_point(&mut rng, 2, 1);
        let m = phi_matrix(&point);
        assert_eq!((m.nrows(), m.ncols()), (11, 12));
        assert_eq!(m.rank_exact(), 11);
    }

    #[test]
    fn lift_eval_at_origin_matches_jet_lift() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for (n, r) in [(2usize, 1u32), (3, 2)] {
            let point = random_point(&mut rng, n, r);
            let field = random_field(&mut rng, n, (r + 2).min(3));
            let (dx, dy) = lift_eval(
                &field,
                r,
                &vec![Rational::zero(); n],
                point.coords(),
            );
            let via_jet = lift(&point, &field.jet_at_origin(r + 1));
            assert_eq!(TangentVector::new(dx, dy), via_jet);
        }
    }

    #[test]
    fn bracket_residual_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for (n, r) in [(2usize, 0u32), (2, 1), (2, 2), (3, 1)] {
            let point = random_point(&mut rng, n, r);
            let xf = random_field(&mut rng, n, 3);
            let yf = random_field(&mut rng, n, 3);
            let res = bracket_residual(&xf, &yf, &point);
            assert!(res.is_zero(), "nonzero bracket residual at n={n}, r={r}");
        }
    }

    /// Transport of the metric determinant under the order-zero lift:
    /// d(det y)[lift0(u)] = −2 (Σ_h ∂u_h/∂x_h) · det y.
    #[test]
    fn determinant_transport() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for n in [2usize, 3] {
            for _ in 0..5 {
                let point = random_point(&mut rng, n, 0);
                let jet = random_jet(&mut rng, n, 1);
                let v = lift0(&point, &jet);
                let o = MultiIndex::zero(n);
                let dual: Vec<Vec<DualScalar>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| DualScalar::new(point.get(i, j, &o).clone(), v.dy(i, j, &o).clone()))
                            .collect()
                    })
                    .collect();
                let det = det_small(&dual);
                let div: Rational = (0..n).map(|h| jet.get(h, &MultiIndex::unit(n, h)).clone()).sum();
                let det0 = det_small(&point.zero_jet());
                assert_eq!(det.der, -rat_i(2) * div * det0);
            }
        }
    }
}
