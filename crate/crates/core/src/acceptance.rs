//! End-to-end verification suite.
//!
//! Each criterion exercises the public engine with fixed seeds and a fixed
//! runtime budget, and reports one pass/fail line. The integration test
//! target runs every criterion and asserts the outcome and the budget; the
//! command-line `verify` subcommand prints the same lines.

use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counting::{
    analyze_point, count_table, i_closed, i_empirical, sample_point, weyl_count, weyl_dim,
    RankPolicy,
};
use crate::exact::{det_small, rat, rat_i, DualScalar, Rational};
use crate::geometry::{
    curvature_residual, first_order_matrix, kernel_equation_check, random_curvature, riemann,
    residual_orbit, scalar_curvature, scalar_curvature_in, kretschmann_in, two_jet_from_curvature,
    CurvatureTensor,
};
use crate::jetspace::{
    dim_metric_jet, dim_vf_jet, sym_pairs, JetCoords, MetricJetPoint, VectorFieldJet,
};
use crate::multiindex::MultiIndex;
use crate::prolong::{bracket_residual, lift, lift0, phi_matrix, random_field};

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub details: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionResult {
    /// One human-readable line: status, id, name, timing, details.
    pub fn line(&self) -> String {
        format!(
            "{} {:>2}  {:<32} {:>7.2?} (budget {:?})  {}",
            if self.pass { "ok  " } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed,
            self.budget,
            self.details
        )
    }
}

pub const CRITERIA: [(usize, &str, u64); 13] = [
    (1, "low-order-surjectivity", 1),
    (2, "line-triviality", 1),
    (3, "surface-order-two-kernel", 2),
    (4, "injectivity-order-two", 10),
    (5, "injectivity-order-three", 10),
    (6, "full-count-table", 60),
    (7, "surface-residual-degeneracy", 1),
    (8, "residual-orbit-symmetry", 1),
    (9, "bracket-homomorphism", 10),
    (10, "first-integral-oracle", 10),
    (11, "determinant-transport", 1),
    (12, "weyl-accounting", 1),
    (13, "curvature-seeding-roundtrip", 2),
];

/// Run one criterion (1-based id).
pub fn run_criterion(id: usize) -> CriterionResult {
    let (_, name, budget_s) = CRITERIA[id - 1];
    let start = Instant::now();
    let (pass, details) = match id {
        1 => c01_low_order_surjectivity(),
        2 => c02_line_triviality(),
        3 => c03_surface_order_two_kernel(),
        4 => c04_injectivity_order_two(),
        5 => c05_injectivity_order_three(),
        6 => c06_full_count_table(),
        7 => c07_surface_residual_degeneracy(),
        8 => c08_residual_orbit_symmetry(),
        9 => c09_bracket_homomorphism(),
        10 => c10_first_integral_oracle(),
        11 => c11_determinant_transport(),
        12 => c12_weyl_accounting(),
        _ => c13_curvature_seeding_roundtrip(),
    };
    CriterionResult {
        id,
        name,
        pass,
        details,
        elapsed: start.elapsed(),
        budget: Duration::from_secs(budget_s),
    }
}

/// Run the whole suite in order.
pub fn run_all() -> Vec<CriterionResult> {
    (1..=CRITERIA.len()).map(run_criterion).collect()
}

fn signatures(n: usize) -> [(usize, usize); 2] {
    [(n, 0), (n - 1, 1)]
}

/// Criterion 1: At orders 0 and 1 the action is transitive: the prolongation matrix
/// reaches the full jet dimension at every sampled point of both signatures.
fn c01_low_order_surjectivity() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut checked = 0;
    for n in 1..=4 {
        for sig in signatures(n) {
            for r in [0u32, 1] {
                let target = dim_metric_jet(n, r);
                for _ in 0..5 {
                    let p = sample_point(&mut rng, n, sig, r);
                    let m = phi_matrix(&p);
                    if m.rank_exact() != target {
                        return (false, format!("rank deficit at n={n}, r={r}, sig={sig:?}"));
                    }
                    checked += 1;
                }
                if i_closed(n, r) != 0 {
                    return (false, format!("nonzero closed form at n={n}, r={r}"));
                }
            }
        }
    }
    (true, format!("{checked} points reached full jet dimension at orders 0 and 1"))
}

/// Criterion 2: On a line the prolongation is bijective at every order.
fn c02_line_triviality() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for r in 0..=5u32 {
        let dim = dim_metric_jet(1, r);
        if dim != r as usize + 2 || dim_vf_jet(1, r + 1) != dim {
            return (false, format!("dimension bookkeeping broken at r={r}"));
        }
        for sig in [(1, 0), (0, 1)] {
            for _ in 0..5 {
                let p = sample_point(&mut rng, 1, sig, r);
                if phi_matrix(&p).rank_exact() != dim {
                    return (false, format!("not bijective at r={r}, sig={sig:?}"));
                }
            }
        }
        if i_closed(1, r) != 0 {
            return (false, format!("nonzero count at r={r}"));
        }
    }
    (true, "rank r+2 (square, bijective) at 60 points, r ≤ 5".into())
}

/// Criterion 3: n=2, r=2: rank 19 universally, one-dimensional kernel satisfying the
/// pointwise equations with ∂u₂/∂x₁ as the free parameter.
fn c03_surface_order_two_kernel() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut points: Vec<MetricJetPoint> = Vec::new();
    for sig in signatures(2) {
        for _ in 0..5 {
            points.push(sample_point(&mut rng, 2, sig, 2));
        }
    }
    points.push(MetricJetPoint::flat(2, (2, 0), 2));
    points.push(MetricJetPoint::flat(2, (1, 1), 2));
    let kappa = CurvatureTensor::constant_curvature(&[1, 1], &rat(3, 2));
    points.push(two_jet_from_curvature(&[1, 1], &kappa).expect("seeded point"));

    for p in &points {
        let m = phi_matrix(p);
        let kernel = m.kernel_basis();
        if m.rank_exact() != 19 || kernel.len() != 1 {
            return (false, "rank or kernel dimension off".into());
        }
        let jet = VectorFieldJet::from_column(2, 3, kernel[0].clone());
        let b = first_order_matrix(&jet);
        if b[1][0].is_zero() {
            return (false, "kernel generator has no ∂u₂/∂x₁ component".into());
        }
        if p.is_normal_form() {
            let report = kernel_equation_check(p, &jet).expect("normal-form point");
            if !report.passes() {
                return (false, format!("kernel equations violated: {report:?}"));
            }
        }
    }
    if i_closed(2, 2) != 1 {
        return (false, "closed form disagrees".into());
    }
    let normal = points.iter().filter(|p| p.is_normal_form()).count();
    (true, format!(
        "rank 19 and 1-dim kernel at {} points ({} normal-form, equations verified); i(2,2)=1",
        points.len(),
        normal
    ))
}

/// Criterion 4: r=2, n ∈ {3,4}: generic injectivity with a Ricci witness, flat control
/// with the isometry-algebra kernel.
fn c04_injectivity_order_two() -> (bool, String) {
    for n in [3usize, 4] {
        let cert = i_empirical(n, 2, (n, 0), 10, 104, RankPolicy::standard());
        let expected_i = if n == 3 { 3 } else { 14 };
        if !cert.pass
            || cert.i_empirical != expected_i
            || cert.observed_rank != dim_vf_jet(n, 3)
            || cert.witness.ricci_generic != Some(true)
        {
            return (false, format!("generic certificate failed at n={n}: {cert:?}"));
        }
        if cert.observed_ranks.iter().any(|&rk| rk != cert.observed_rank) {
            return (false, format!("rank not maximal at every sample, n={n}"));
        }
        let flat = analyze_point(&MetricJetPoint::flat(n, (n, 0), 2), RankPolicy::standard());
        if flat.kernel_dim != n * (n - 1) / 2 || flat.rank >= dim_vf_jet(n, 3) {
            return (false, format!("flat control failed at n={n}: {flat:?}"));
        }
    }
    (true, "i(3,2)=3, i(4,2)=14 with Ricci witnesses; flat kernels dim 3 and 6".into())
}

/// Criterion 5: r=3: generic injectivity with the ∇R witness at n=2; counts 2 and 18.
fn c05_injectivity_order_three() -> (bool, String) {
    let surface = i_empirical(2, 3, (2, 0), 5, 105, RankPolicy::standard());
    if !surface.pass || surface.i_empirical != 2 || surface.witness.nabla_r_nonzero != Some(true) {
        return (false, format!("n=2 certificate failed: {surface:?}"));
    }
    let three = i_empirical(3, 3, (2, 1), 5, 105, RankPolicy::standard());
    if !three.pass || three.i_empirical != 18 {
        return (false, format!("n=3 certificate failed: {three:?}"));
    }
    if dim_metric_jet(3, 3) != 123 || dim_vf_jet(3, 4) != 105 || i_closed(3, 3) != 18 {
        return (false, "dimension bookkeeping broken".into());
    }
    (true, "i(2,3)=2 with ∇R≠0 witness; i(3,3)=123−105=18 (Lorentzian samples)".into())
}

/// Criterion 6: The full table for 1 ≤ n ≤ 4, 0 ≤ r ≤ 4 with modular certificates.
fn c06_full_count_table() -> (bool, String) {
    let certs = count_table(4, 4, |n| (n, 0), 5, 106, RankPolicy::standard());
    for cert in &certs {
        if !cert.pass {
            return (false, format!("cell (n={}, r={}) failed: {cert:?}", cert.n, cert.r));
        }
    }
    let largest = certs.iter().find(|c| c.n == 4 && c.r == 4).expect("cell present");
    (true, format!(
        "all {} cells match the closed form; largest instance 704×504 rank {}",
        certs.len(),
        largest.observed_rank
    ))
}

/// Criterion 7: n=2: the curvature obstruction vanishes identically on the solutions
/// of the first-order equations, for every index tuple, scale and signature.
fn c07_surface_residual_degeneracy() -> (bool, String) {
    let kappas = [rat_i(2), rat_i(-3), rat(5, 7), rat(-1, 2), rat_i(1)];
    let mut checked = 0;
    for diag in [[1i64, 1], [1, -1]] {
        for kappa in &kappas {
            let r = CurvatureTensor::constant_curvature(&diag, kappa);
            // The metric-skew family is one-dimensional: B₂₁ = 1,
            // B₁₂ = −ε₁ε₂; linearity extends the check to every solution.
            let mut b = vec![vec![Rational::zero(); 2]; 2];
            b[1][0] = Rational::one();
            b[0][1] = rat_i(-diag[0] * diag[1]);
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        for l in 0..2 {
                            if !curvature_residual(&b, &r, [i, j, k, l]).is_zero() {
                                return (false, format!(
                                    "nonzero residual at ({i},{j},{k},{l}), diag {diag:?}, κ={kappa}"
                                ));
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    (true, format!("{checked} residuals vanish exactly (all 16 tuples × 5 scales × 2 signatures)"))
}

/// Criterion 8: n=3: the residual transforms by the sign character of the order-8
/// tuple group, exhaustively over all 81 tuples.
fn c08_residual_orbit_symmetry() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    for _ in 0..3 {
        let r = random_curvature(&mut rng, 3);
        let mut b = vec![vec![Rational::zero(); 3]; 3];
        for row in b.iter_mut() {
            for entry in row.iter_mut() {
                *entry = rat(rng.random_range(-7i64..=7), rng.random_range(1i64..=3));
            }
        }
        let gamma = |u: [usize; 4]| [u[1], u[2], u[3], u[0]];
        let tau = |u: [usize; 4]| [u[0], u[3], u[2], u[1]];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let t = [i, j, k, l];
                        let res = curvature_residual(&b, &r, t);
                        if curvature_residual(&b, &r, gamma(t)) != -res.clone()
                            || curvature_residual(&b, &r, tau(t)) != -res.clone()
                        {
                            return (false, format!("sign character broken at {t:?}"));
                        }
                        let (orbit, forced) = residual_orbit(t);
                        for &(u, sign) in &orbit {
                            let expect = if sign == 1 { res.clone() } else { -res.clone() };
                            if curvature_residual(&b, &r, u) != expect {
                                return (false, format!("orbit sign broken at {t:?} → {u:?}"));
                            }
                        }
                        if forced && !res.is_zero() {
                            return (false, format!("forced-zero orbit nonzero at {t:?}"));
                        }
                    }
                }
            }
        }
    }
    (true, "all 81 tuples × 3 random (R, B) draws: residual(γt)=−residual(t), residual(τt)=−residual(t)".into())
}

/// Criterion 9: The lift is a Lie-algebra homomorphism: [X̄, Ȳ] = [X, Y]̄ at the point,
/// for random polynomial fields.
fn c09_bracket_homomorphism() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let mut pairs = 0;
    for trial in 0..20 {
        let n = 2 + (trial % 2);
        let r = (trial / 2) % 3;
        let sig = signatures(n)[trial % 2];
        let p = sample_point(&mut rng, n, sig, r as u32);
        let x = random_field(&mut rng, n, 3);
        let y = random_field(&mut rng, n, 3);
        if !bracket_residual(&x, &y, &p).is_zero() {
            return (false, format!("nonzero bracket residual at trial {trial}"));
        }
        pairs += 1;
    }
    (true, format!("{pairs} random degree-≤3 pairs, n ∈ {{2,3}}, r ∈ {{0,1,2}}: exact zero"))
}

/// Criterion 10: Scalar curvature is a first integral of every prolonged field, and on
/// surfaces its gradient spans the one-dimensional invariant cotangent space
/// together with the Kretschmann gradient.
fn c10_first_integral_oracle() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    let mut vectors = 0;
    for n in [2usize, 3] {
        for t in 0..5 {
            let p = sample_point(&mut rng, n, signatures(n)[t % 2], 2);
            for _ in 0..2 {
                let vf = random_field(&mut rng, n, 3);
                let tangent = lift(&p, &vf.jet_at_origin(3));
                let seeded = JetCoords::from_fn(n, 2, |j, k, alpha| {
                    DualScalar::new(p.get(j, k, alpha).clone(), tangent.dy(j, k, alpha).clone())
                });
                let scal = scalar_curvature_in(&seeded).expect("invertible zero-jet");
                if !scal.der.is_zero() {
                    return (false, format!("d(Scal) ≠ 0 along a lift at n={n}"));
                }
                vectors += 1;
            }
        }
    }

    // Gradients over all fiber coordinates of J² at n=2.
    for t in 0..10 {
        let p = sample_point(&mut rng, 2, signatures(2)[t % 2], 2);
        let mut grad_scal = Vec::new();
        let mut grad_kret = Vec::new();
        for (j, k) in sym_pairs(2) {
            for alpha in p.coords().index_set().clone().iter() {
                let seeded = JetCoords::from_fn(2, 2, |a, b, beta| {
                    let der = if (a, b) == (j, k) && beta == alpha {
                        Rational::one()
                    } else {
                        Rational::zero()
                    };
                    DualScalar::new(p.get(a, b, beta).clone(), der)
                });
                grad_scal.push(scalar_curvature_in(&seeded).expect("invertible").der);
                grad_kret.push(kretschmann_in(&seeded).expect("invertible").der);
            }
        }
        for a in 0..grad_scal.len() {
            for b in a + 1..grad_scal.len() {
                if &grad_kret[a] * &grad_scal[b] != &grad_kret[b] * &grad_scal[a] {
                    return (false, format!("gradients not proportional at sample {t}"));
                }
            }
        }
    }
    (true, format!(
        "{vectors} lifted directions annihilate Scal; Kretschmann ∥ Scal gradients at 10 surface points"
    ))
}

/// Criterion 11: Transport of the fiber determinant: its derivative along a lifted
/// field is −2 (div u) det, exactly.
fn c11_determinant_transport() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(111);
    for trial in 0..20 {
        let n = 2 + (trial % 3);
        let p = sample_point(&mut rng, n, signatures(n)[trial % 2], 0);
        let mut jet = VectorFieldJet::zero(n, 1);
        for h in 0..n {
            jet.set_coord(h, &MultiIndex::zero(n), rat(rng.random_range(-5i64..=5), 2));
            for i in 0..n {
                jet.set_coord(
                    h,
                    &MultiIndex::unit(n, i),
                    rat(rng.random_range(-5i64..=5), rng.random_range(1i64..=2)),
                );
            }
        }
        let tangent = lift0(&p, &jet);
        let zero = MultiIndex::zero(n);
        let g: Vec<Vec<DualScalar>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| DualScalar::new(p.get(j, k, &zero).clone(), tangent.dy(j, k, &zero).clone()))
                    .collect()
            })
            .collect();
        let det = det_small(&g);
        let div: Rational = (0..n).map(|h| jet.get(h, &MultiIndex::unit(n, h)).clone()).sum();
        if det.der != rat_i(-2) * &div * &det.val {
            return (false, format!("transport identity violated at trial {trial}"));
        }
    }
    (true, "20 random cases, n ∈ {2,3,4}: d(det) = −2(div u)·det exactly".into())
}

/// Criterion 12: Second-order counts agree with pointwise curvature accounting:
/// n eigenvalues plus the Weyl components.
fn c12_weyl_accounting() -> (bool, String) {
    if weyl_dim(4) != 10 {
        return (false, "classical Weyl dimension at n=4 is off".into());
    }
    for n in 3..=8 {
        if weyl_count(n) != i_closed(n, 2) {
            return (false, format!("accounting fails at n={n}"));
        }
    }
    (true, "n + (n⁴−7n²−6n)/12 = i(n,2) for 3 ≤ n ≤ 8; value 14 at n=4".into())
}

/// Criterion 13: Normal-form seeding inverts curvature extraction exactly.
fn c13_curvature_seeding_roundtrip() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(113);
    for trial in 0..25 {
        let n = 2 + (trial % 3);
        let r = random_curvature(&mut rng, n);
        let diag: Vec<i64> =
            (0..n).map(|_| if rng.random_range(0..2) == 0 { 1 } else { -1 }).collect();
        let p = two_jet_from_curvature(&diag, &r).expect("valid seed");
        if riemann(&p).expect("order two") != r {
            return (false, format!("roundtrip failed at trial {trial}, n={n}"));
        }
        if scalar_curvature(&p).is_err() {
            return (false, "scalar evaluation failed".into());
        }
    }
    (true, "riemann ∘ two_jet_from_curvature = id for 25 random tensors, n ∈ {2,3,4}".into())
}
