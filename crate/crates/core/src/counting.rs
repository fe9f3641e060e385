//! Counting functionally independent scalar invariants of metric jets.
//!
//! The number of independent invariants of order r in dimension n is the
//! codimension of the generic orbit of the prolonged action inside the jet
//! space: i(n, r) = dim J^r − max rank Φ^r. The closed forms implemented
//! here and the empirically observed ranks at random rational jets must
//! agree, and [`i_empirical`] produces a certificate recording both sides
//! together with the genericity witnesses that back the rank claim.
//!
//! Rank policy: the rank of an integer matrix modulo a prime never exceeds
//! its rational rank, so full column rank modulo a single 61-bit prime
//! already certifies exact injectivity. Only when the modular rank falls
//! short (degenerate points, or the genuinely non-injective low-order cases)
//! is the exact fraction-free elimination run.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::exact::{rat, ExactMatrix, Rational, PRIMES_61BIT};
use crate::geometry::{nabla_r_nonzero, ricci_generic};
use crate::jetspace::{dim_metric_jet, dim_vf_jet, JetCoords, MetricJetPoint};
use crate::multiindex::choose;
use crate::prolong::phi_matrix;

/// Closed-form count of functionally independent invariants of order r in
/// dimension n.
pub fn i_closed_form(n: usize, r: u32) -> BigInt {
    assert!(n >= 1, "dimension must be positive");
    if r <= 1 || n == 1 {
        return BigInt::zero();
    }
    if n == 2 {
        if r == 2 {
            // The prolonged action has a one-dimensional kernel here, which
            // shifts the count off the generic two-dimensional formula.
            return BigInt::from(1);
        }
        let r = i64::from(r);
        return BigInt::from((r + 1) * (r - 2) / 2);
    }
    let big_n = BigInt::from(n);
    let big_r = BigInt::from(r);
    let c = choose((n + r as usize) as u64, r as u64);
    let one = BigInt::from(1);
    let numer = ((&big_r - &one) * &big_n * &big_n - (&big_r + &one) * &big_n) * c;
    let denom = BigInt::from(2) * (big_r + 1);
    let (q, rem) = numer.div_rem(&denom);
    assert!(rem.is_zero(), "closed form must be an integer");
    big_n + q
}

/// Closed-form count as a machine integer.
pub fn i_closed(n: usize, r: u32) -> usize {
    i_closed_form(n, r).to_usize().expect("count fits in usize")
}

/// The rank of Φ^r at a generic jet: the full jet dimension while the action
/// is transitive (r ≤ 1, and every order when n = 1), the dimension of the
/// acting vector-field jets once the prolongation is injective, and 19 in
/// the single intermediate case n = 2, r = 2.
pub fn expected_rank(n: usize, r: u32) -> usize {
    assert!(n >= 1, "dimension must be positive");
    if n == 1 || r <= 1 {
        return dim_metric_jet(n, r);
    }
    if n == 2 && r == 2 {
        return 19;
    }
    dim_vf_jet(n, r + 1)
}

/// Dimension of the space of Weyl tensors at a point, (n⁴ − 7n² − 6n)/12.
pub fn weyl_dim(n: usize) -> usize {
    assert!(n >= 3, "Weyl tensors need dimension at least three");
    (n * n * n * n - 7 * n * n - 6 * n) / 12
}

/// Independent second-order invariants predicted by curvature accounting:
/// n eigenvalue-type invariants plus one per Weyl component.
pub fn weyl_count(n: usize) -> usize {
    n + weyl_dim(n)
}

fn random_rational(rng: &mut impl Rng, max_num: i64, max_den: i64) -> Rational {
    rat(rng.random_range(-max_num..=max_num), rng.random_range(1..=max_den))
}

/// Random jet with an exact prescribed signature: the zero-jet is MᵀDM for a
/// random unit-determinant shear product M and a diagonal D with the given
/// signs (randomly scaled), higher coordinates are uniform small rationals.
pub fn sample_point(
    rng: &mut impl Rng,
    n: usize,
    signature: (usize, usize),
    r: u32,
) -> MetricJetPoint {
    let (plus, minus) = signature;
    assert_eq!(plus + minus, n, "signature must sum to the dimension");
    let mut d = Vec::with_capacity(n);
    for i in 0..n {
        let scale = rat(rng.random_range(1i64..=4), rng.random_range(1i64..=3));
        d.push(if i < plus { scale } else { -scale });
    }
    let mut m = vec![vec![Rational::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::from_integer(1.into());
    }
    if n > 1 {
        for _ in 0..2 * n {
            let i = rng.random_range(0..n);
            let mut j = rng.random_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let c = random_rational(rng, 3, 2);
            for col in 0..n {
                let t = &c * &m[j][col];
                m[i][col] += t;
            }
        }
    }
    let zero_jet: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| &m[k][i] * &d[k] * &m[k][j]).sum())
                .collect()
        })
        .collect();
    let coords = JetCoords::from_fn(n, r, |j, k, alpha| {
        if alpha.is_zero() {
            zero_jet[j][k].clone()
        } else {
            random_rational(rng, 20, 3)
        }
    });
    let point = MetricJetPoint::from_coords(coords)
        .expect("a congruence of an invertible diagonal is invertible");
    debug_assert_eq!(point.signature(), signature);
    point
}

/// How a rank value was certified.
#[derive(Clone, Debug, Serialize)]
pub struct RankEvidence {
    /// 61-bit primes used for modular elimination.
    pub primes: Vec<u64>,
    /// Whether the exact fraction-free elimination was run.
    pub exact: bool,
}

/// Analysis of the prolongation matrix at one jet.
#[derive(Clone, Debug, Serialize)]
pub struct PointAnalysis {
    pub rank: usize,
    pub kernel_dim: usize,
    pub evidence: RankEvidence,
}

/// How hard to work for a rank certificate.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RankPolicy {
    /// Number of distinct 61-bit primes whose modular ranks must agree.
    pub primes: usize,
    /// Re-run the exact elimination even when the modular rank certifies
    /// itself, for matrices of at most [`EXACT_RECHECK_COLS`] columns.
    pub exact_recheck: bool,
}

/// Column bound below which `exact_recheck` repeats the exact elimination.
pub const EXACT_RECHECK_COLS: usize = 120;

impl RankPolicy {
    /// One prime, exact elimination only when the modular rank fails to
    /// certify itself.
    pub fn standard() -> Self {
        Self { primes: 1, exact_recheck: false }
    }

    /// Three agreeing primes plus an exact recheck at moderate sizes.
    pub fn paranoid() -> Self {
        Self { primes: 3, exact_recheck: true }
    }

    /// A custom number of agreeing primes, no unconditional recheck.
    pub fn with_primes(primes: usize) -> Self {
        assert!(primes >= 1, "at least one prime is required");
        Self { primes, exact_recheck: false }
    }
}

impl Default for RankPolicy {
    fn default() -> Self {
        Self::standard()
    }
}

/// Exact rank of a matrix: modular first, falling back to the fraction-free
/// elimination whenever the modular result does not certify itself by
/// reaching full column rank. The policy controls how many primes must
/// agree and whether moderate sizes are re-checked exactly regardless.
pub fn certified_rank(matrix: &ExactMatrix, policy: RankPolicy) -> (usize, RankEvidence) {
    let mut primes = Vec::new();
    let mut modular: Option<usize> = None;
    for &p in PRIMES_61BIT.iter() {
        if primes.len() == policy.primes {
            break;
        }
        match matrix.rank_mod_prime(p) {
            Ok(rk) => {
                if let Some(prev) = modular {
                    assert_eq!(prev, rk, "modular ranks disagree between primes");
                }
                modular = Some(rk);
                primes.push(p);
            }
            Err(_) => continue,
        }
    }
    let modular = modular.expect("some 61-bit prime avoids all denominators");
    let needs_exact = modular < matrix.ncols()
        || (policy.exact_recheck && matrix.ncols() <= EXACT_RECHECK_COLS);
    if !needs_exact {
        return (modular, RankEvidence { primes, exact: false });
    }
    let exact = matrix.rank_exact();
    assert!(modular <= exact, "modular rank can only underestimate");
    (exact, RankEvidence { primes, exact: true })
}

/// The deterministic jet sampled by trial `trial` of a certification run
/// with the given seed: each trial draws from its own generator stream, so
/// individual samples can be reproduced without replaying earlier trials.
pub fn trial_point(
    n: usize,
    r: u32,
    signature: (usize, usize),
    seed: u64,
    trial: usize,
) -> MetricJetPoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    sample_point(&mut rng, n, signature, r)
}

/// Rank and kernel data of Φ^r at one jet.
pub fn analyze_point(point: &MetricJetPoint, policy: RankPolicy) -> PointAnalysis {
    let matrix = phi_matrix(point);
    let (rank, evidence) = certified_rank(&matrix, policy);
    PointAnalysis { rank, kernel_dim: matrix.ncols() - rank, evidence }
}

/// Genericity witnesses evaluated at a maximal-rank sample.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    /// Ricci endomorphism has squarefree characteristic polynomial
    /// (evaluated for n ≥ 3, r ≥ 2).
    pub ricci_generic: Option<bool>,
    /// ∇R does not vanish (evaluated for r ≥ 3).
    pub nabla_r_nonzero: Option<bool>,
}

impl WitnessReport {
    pub fn all_hold(&self) -> bool {
        self.ricci_generic.unwrap_or(true) && self.nabla_r_nonzero.unwrap_or(true)
    }
}

/// Certificate tying the closed-form invariant count to observed ranks at
/// random rational jets of a prescribed signature.
#[derive(Clone, Debug, Serialize)]
pub struct CountCertificate {
    pub n: usize,
    pub r: u32,
    pub signature: (usize, usize),
    pub jet_dim: usize,
    pub vf_jet_dim: usize,
    pub expected_rank: usize,
    pub observed_ranks: Vec<usize>,
    pub observed_rank: usize,
    pub i_closed: usize,
    pub i_empirical: usize,
    pub trials: usize,
    pub seed: u64,
    pub primes: Vec<u64>,
    pub exact_elimination_used: bool,
    pub witness: WitnessReport,
    pub pass: bool,
}

/// Estimate the invariant count by sampling: each trial draws a random jet
/// from its own deterministic stream of the seeded generator, ranks Φ^r, and
/// the best rank over all trials is compared with the closed form.
pub fn i_empirical(
    n: usize,
    r: u32,
    signature: (usize, usize),
    trials: usize,
    seed: u64,
    policy: RankPolicy,
) -> CountCertificate {
    assert!(trials >= 1, "at least one trial is required");
    let point_at = |trial: usize| trial_point(n, r, signature, seed, trial);
    let analyses: Vec<PointAnalysis> = (0..trials)
        .into_par_iter()
        .map(|trial| analyze_point(&point_at(trial), policy))
        .collect();
    let observed_ranks: Vec<usize> = analyses.iter().map(|a| a.rank).collect();
    let observed_rank = *observed_ranks.iter().max().expect("at least one trial");
    let best_trial = observed_ranks.iter().position(|&rk| rk == observed_rank).unwrap();

    let mut primes: Vec<u64> = Vec::new();
    let mut exact_used = false;
    for a in &analyses {
        exact_used |= a.evidence.exact;
        for &p in &a.evidence.primes {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }

    let witness_point = point_at(best_trial);
    let ricci_w = if n >= 3 && r >= 2 {
        Some(ricci_generic(&witness_point).expect("witness point supports Ricci"))
    } else {
        None
    };
    let nabla_w = if r >= 3 && n >= 2 {
        Some(nabla_r_nonzero(&witness_point).expect("witness point supports ∇R"))
    } else {
        None
    };
    let witness = WitnessReport { ricci_generic: ricci_w, nabla_r_nonzero: nabla_w };

    let jet_dim = dim_metric_jet(n, r);
    let i_emp = jet_dim - observed_rank;
    let i_cl = i_closed(n, r);
    let pass = i_emp == i_cl && observed_rank == expected_rank(n, r) && witness.all_hold();
    CountCertificate {
        n,
        r,
        signature,
        jet_dim,
        vf_jet_dim: dim_vf_jet(n, r + 1),
        expected_rank: expected_rank(n, r),
        observed_ranks,
        observed_rank,
        i_closed: i_cl,
        i_empirical: i_emp,
        trials,
        seed,
        primes,
        exact_elimination_used: exact_used,
        witness,
        pass,
    }
}

/// Certificates for the full table 1 ≤ n ≤ n_max, 0 ≤ r ≤ r_max.
pub fn count_table(
    n_max: usize,
    r_max: u32,
    signature_of: impl Fn(usize) -> (usize, usize),
    trials: usize,
    seed: u64,
    policy: RankPolicy,
) -> Vec<CountCertificate> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for r in 0..=r_max {
            out.push(i_empirical(n, r, signature_of(n), trials, seed, policy));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    

    #[test]
    fn closed_form_reproduces_known_counts() {
        let table = [
            (2, 2, 1),
            (2, 3, 2),
            (2, 4, 5),
            (2, 5, 9),
            (3, 2, 3),
            (3, 3, 18),
            (3, 4, 45),
            (4, 2, 14),
            (4, 3, 74),
            (4, 4, 200),
            (5, 2, 40),
        ];
        for (n, r, expected) in table {
            assert_eq!(i_closed(n, r), expected, "i({n}, {r})");
        }
        for n in 1..=6 {
            assert_eq!(i_closed(n, 0), 0);
            assert_eq!(i_closed(n, 1), 0);
        }
        for r in 0..=6 {
            assert_eq!(i_closed(1, r), 0);
        }
    }

    #[test]
    fn closed_form_is_jet_dimension_minus_expected_rank() {
        // The two piecewise definitions come from independent statements;
        // they must satisfy i = dim J^r − rank across the whole grid.
        for n in 1..=6 {
            for r in 0..=6 {
                assert_eq!(
                    i_closed(n, r),
                    dim_metric_jet(n, r) - expected_rank(n, r),
                    "grid cell ({n}, {r})"
                );
            }
        }
    }

    #[test]
    fn expected_rank_matches_known_matrix_shapes() {
        assert_eq!(expected_rank(2, 0), 5);
        assert_eq!(expected_rank(2, 1), 11);
        assert_eq!(expected_rank(2, 2), 19);
        assert_eq!(expected_rank(2, 3), 30);
        assert_eq!(expected_rank(3, 2), 60);
        assert_eq!(expected_rank(4, 2), 140);
        assert_eq!(expected_rank(1, 4), 6);
    }

    #[test]
    fn weyl_accounting_matches_second_order_counts() {
        assert_eq!(weyl_dim(3), 0);
        assert_eq!(weyl_dim(4), 10);
        assert_eq!(weyl_dim(5), 35);
        for n in 3..=8 {
            assert_eq!(weyl_count(n), i_closed(n, 2), "n = {n}");
        }
    }

    #[test]
    fn sampled_points_have_requested_signature() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for (n, sig) in [(2, (2, 0)), (2, (1, 1)), (3, (2, 1)), (4, (2, 2)), (1, (0, 1))] {
            for _ in 0..3 {
                let p = sample_point(&mut rng, n, sig, 2);
                assert_eq!(p.n(), n);
                assert_eq!(p.signature(), sig);
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_per_seed_and_stream() {
        let mut a = ChaCha8Rng::seed_from_u64(5);
        a.set_stream(7);
        let mut b = ChaCha8Rng::seed_from_u64(5);
        b.set_stream(7);
        assert_eq!(sample_point(&mut a, 3, (3, 0), 2), sample_point(&mut b, 3, (3, 0), 2));
        let mut c = ChaCha8Rng::seed_from_u64(5);
        c.set_stream(8);
        assert_ne!(sample_point(&mut a, 3, (3, 0), 2), sample_point(&mut c, 3, (3, 0), 2));
    }

    #[test]
    fn transitive_orders_reach_full_rank() {
        let cert = i_empirical(2, 0, (2, 0), 2, 41, RankPolicy::standard());
        assert!(cert.pass);
        assert_eq!(cert.observed_rank, 5);
        assert_eq!(cert.i_empirical, 0);
        let cert = i_empirical(2, 1, (1, 1), 2, 41, RankPolicy::standard());
        assert!(cert.pass);
        assert_eq!(cert.observed_rank, 11);
        // One dimension: bijective at every order.
        let cert = i_empirical(1, 3, (1, 0), 2, 41, RankPolicy::standard());
        assert!(cert.pass);
        assert_eq!(cert.i_empirical, 0);
    }

    #[test]
    fn surface_second_order_has_one_invariant() {
        let cert = i_empirical(2, 2, (2, 0), 3, 42, RankPolicy::standard());
        assert!(cert.pass, "certificate: {cert:?}");
        assert_eq!(cert.observed_rank, 19);
        assert_eq!(cert.i_empirical, 1);
        // Rank 19 < 20 columns: the fallback exact elimination must have run.
        assert!(cert.exact_elimination_used);
        let analysis = analyze_point(
            &sample_point(&mut ChaCha8Rng::seed_from_u64(43), 2, (1, 1), 2),
            RankPolicy::standard(),
        );
        assert_eq!(analysis.rank, 19);
        assert_eq!(analysis.kernel_dim, 1);
    }

    #[test]
    fn three_dimensional_second_order_count_with_witness() {
        let cert = i_empirical(3, 2, (3, 0), 2, 44, RankPolicy::standard());
        assert!(cert.pass, "certificate: {cert:?}");
        assert_eq!(cert.i_empirical, 3);
        assert_eq!(cert.witness.ricci_generic, Some(true));
        assert!(!cert.exact_elimination_used, "injectivity certified modularly");
        assert!(!cert.primes.is_empty());
    }

    #[test]
    fn paranoid_mode_uses_three_primes_and_exact_check() {
        let cert = i_empirical(2, 2, (2, 0), 1, 45, RankPolicy::paranoid());
        assert!(cert.pass);
        assert!(cert.primes.len() >= 3);
        assert!(cert.exact_elimination_used);
    }

    #[test]
    fn certificates_are_reproducible() {
        let a = i_empirical(2, 3, (2, 0), 2, 46, RankPolicy::standard());
        let b = i_empirical(2, 3, (2, 0), 2, 46, RankPolicy::standard());
        assert_eq!(a.observed_ranks, b.observed_ranks);
        assert_eq!(a.i_empirical, b.i_empirical);
        assert_eq!(a.i_empirical, 2);
        assert_eq!(a.witness.nabla_r_nonzero, Some(true));
        assert!(a.pass);
    }
}
