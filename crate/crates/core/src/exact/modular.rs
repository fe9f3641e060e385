//! Rank certificates modulo large primes.
//!
//! Reducing a rational matrix mod p and eliminating over GF(p) gives a rank
//! that is ≤ the exact rank (specialization can only kill minors, never
//! create them), so a full-column-rank result mod a single prime is already
//! a proof of exact injectivity.  Primes are 61–62 bits so products fit u128.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

use super::rational::Rational;

/// Primes strictly between 2^61 and 2^62.
pub const PRIMES_61BIT: [u64; 16] = [
    2377900603251621949,
    2449958197289549893,
    2522015791327477843,
    2594073385365405929,
    2666130979403333873,
    2738188573441261817,
    2810246167479189841,
    2882303761517117849,
    2954361355555045829,
    3026418949592973769,
    3098476543630901717,
    3170534137668829697,
    3242591731706757641,
    3314649325744685623,
    3386706919782613571,
    3458764513820541517,
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModReduceError {
    #[error("prime {prime} divides a denominator in the matrix")]
    PrimeDividesDenominator { prime: u64 },
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Inverse of a mod p (p prime, a ≢ 0) by the extended Euclidean algorithm.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "zero has no modular inverse");
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "{a} not invertible mod {p}");
    s0.rem_euclid(p as i128) as u64
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("mod_floor result fits u64")
}

/// num·den⁻¹ mod p, or an error when p divides the denominator.
pub fn reduce_rational(q: &Rational, p: u64) -> Result<u64, ModReduceError> {
    let den = bigint_mod(q.denom(), p);
    if den == 0 {
        return Err(ModReduceError::PrimeDividesDenominator { prime: p });
    }
    Ok(mul_mod(bigint_mod(q.numer(), p), inv_mod(den, p), p))
}

/// Rank over GF(p) by Gaussian elimination.
pub fn rank_mod(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(sel) = (rank..nrows).find(|&i| !m[i][col].is_multiple_of(p)) else {
            continue;
        };
        m.swap(rank, sel);
        let pinv = inv_mod(m[rank][col], p);
        for i in rank + 1..nrows {
            if m[i][col].is_multiple_of(p) {
                continue;
            }
            let factor = mul_mod(m[i][col], pinv, p);
            for j in col..ncols {
                let sub = mul_mod(factor, m[rank][j], p);
                m[i][j] = (m[i][j] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn primes_are_61_bit_and_prime() {
        for &p in &PRIMES_61BIT {
            assert!(p > 1 << 61 && p < 1 << 62);
            // Trial division by small primes plus a Fermat check base 2.
            for d in 2u64..20_000 {
                assert!(p % d != 0, "{p} divisible by {d}");
            }
            let mut acc: u64 = 1;
            let mut base: u64 = 2;
            let mut e = p - 1;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_mod(acc, base, p);
                }
                base = mul_mod(base, base, p);
                e >>= 1;
            }
            assert_eq!(acc, 1, "{p} fails Fermat base 2");
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let p = PRIMES_61BIT[0];
        for a in [1u64, 2, 3, 12345, p - 1, 1 << 60] {
            assert_eq!(mul_mod(a, inv_mod(a, p), p), 1);
        }
    }

    #[test]
    fn reduction_detects_bad_prime() {
        let p = PRIMES_61BIT[3];
        let q = Rational::new(BigInt::from(1), BigInt::from(p));
        assert_eq!(reduce_rational(&q, p), Err(ModReduceError::PrimeDividesDenominator { prime: p }));
        assert_eq!(reduce_rational(&rat(-1, 2), 5), Ok(2));
    }

    #[test]
    fn rank_small_example() {
        // [[2,4],[1,2]] has rank 1 over any field not of characteristic 2.
        let p = 99991;
        let rows = vec![vec![2, 4], vec![1, 2]];
        assert_eq!(rank_mod(&rows, p), 1);
        let rows = vec![vec![2, 4], vec![1, 3]];
        assert_eq!(rank_mod(&rows, p), 2);
    }
}
