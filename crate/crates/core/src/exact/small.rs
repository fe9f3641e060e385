//! Small dense helpers generic over the scalar, for the geometry pipeline
//! (n ≤ a handful): cofactor determinants and Gauss–Jordan inversion work
//! over any [`ExactScalar`], in particular over dual numbers.

use super::scalar::ExactScalar;

/// Determinant by Laplace expansion along the first row.  Exponential in the
/// size — intended for the base-manifold dimension only.
pub fn det_small<F: ExactScalar>(m: &[Vec<F>]) -> F {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix required");
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = F::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<F>> = (1..n)
            .map(|i| (0..n).filter(|&c| c != j).map(|c| m[i][c].clone()).collect())
            .collect();
        let term = m[0][j].clone() * det_small(&minor);
        det = if j % 2 == 0 { det + term } else { det - term };
    }
    det
}

/// Gauss–Jordan inverse, choosing invertible pivots; `None` when the matrix
/// is singular (for duals: when the value-part matrix is singular).
pub fn invert_small<F: ExactScalar>(m: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix required");
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut inv: Vec<Vec<F>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
        .collect();
    for col in 0..n {
        let sel = (col..n).find(|&i| a[i][col].is_invertible())?;
        a.swap(col, sel);
        inv.swap(col, sel);
        let piv = a[col][col].inv();
        for j in 0..n {
            a[col][j] = a[col][j].clone() * piv.clone();
            inv[col][j] = inv[col][j].clone() * piv.clone();
        }
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..n {
                a[i][j] = a[i][j].clone() - f.clone() * a[col][j].clone();
                inv[i][j] = inv[i][j].clone() - f.clone() * inv[col][j].clone();
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::dual::DualScalar;
    use crate::exact::rational::{rat_i, Rational};

    fn rows(vals: &[&[i64]]) -> Vec<Vec<Rational>> {
        vals.iter().map(|r| r.iter().map(|&v| rat_i(v)).collect()).collect()
    }

    #[test]
    fn determinants() {
        assert_eq!(det_small(&rows(&[&[5]])), rat_i(5));
        assert_eq!(det_small(&rows(&[&[1, 2], &[3, 4]])), rat_i(-2));
        assert_eq!(det_small(&rows(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, -1]])), rat_i(-6));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = rows(&[&[2, 1], &[1, 1]]);
        let inv = invert_small(&a).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let mut s = Rational::from_integer(0.into());
                for (k, invk) in inv.iter().enumerate() {
                    s += &a[i][k] * &invk[j];
                }
                assert_eq!(s, rat_i(i64::from(i == j)));
            }
        }
        assert_eq!(invert_small(&rows(&[&[1, 2], &[2, 4]])), None);
    }

    #[test]
    fn dual_determinant_tracks_derivative() {
        // det [[t, 1], [1, t]] = t² − 1, derivative 2t at t = 3 is 6.
        let t = DualScalar::new(rat_i(3), rat_i(1));
        let one = DualScalar::constant(rat_i(1));
        let m = vec![vec![t.clone(), one.clone()], vec![one, t]];
        let d = det_small(&m);
        assert_eq!(d.val, rat_i(8));
        assert_eq!(d.der, rat_i(6));
    }

    #[test]
    fn dual_inverse_needs_invertible_value_part() {
        // Value part singular, but ε-part would make it look usable: reject.
        let eps = DualScalar::new(rat_i(0), rat_i(1));
        let m = vec![vec![eps.clone(), eps.clone()], vec![eps.clone(), eps]];
        assert_eq!(invert_small(&m), None);
    }
}
