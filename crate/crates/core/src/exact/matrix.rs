//! Dense rational matrices with fraction-free rank/kernel computations.
//!
//! Rank, determinant and kernel all run through Bareiss elimination on a
//! per-row denominator-cleared integer copy: intermediate entries are minors
//! of that integer matrix, every division is exact, and no rounding exists
//! anywhere.  The characteristic polynomial uses the Faddeev–LeVerrier
//! recurrence over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modular::{rank_mod, reduce_rational, ModReduceError};
use super::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        ExactMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        assert!(!rows.is_empty(), "empty matrix");
        let cols = rows[0].len();
        assert!(cols > 0, "empty matrix");
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let nrows = rows.len();
        ExactMatrix { rows: nrows, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * other.get(k, j);
                    out.data[i * other.cols + j] += t;
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        (0..self.rows).map(|i| self.get(i, i).clone()).sum()
    }

    /// Per-row denominator clearing; returns the integer matrix only (row
    /// scaling by positive factors preserves rank and kernel).
    fn cleared_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let mut lcm = BigInt::one();
                for q in self.row(i) {
                    lcm = lcm.lcm(q.denom());
                }
                self.row(i)
                    .iter()
                    .map(|q| q.numer() * (&lcm / q.denom()))
                    .collect()
            })
            .collect()
    }

    /// Exact rank via fraction-free elimination.
    pub fn rank_exact(&self) -> usize {
        bareiss(self.cleared_rows()).pivots.len()
    }

    /// Rank after reduction mod p; errors if p divides any denominator.
    pub fn rank_mod_prime(&self, p: u64) -> Result<usize, ModReduceError> {
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row: Result<Vec<u64>, _> = self.row(i).iter().map(|q| reduce_rational(q, p)).collect();
            rows.push(row?);
        }
        Ok(rank_mod(&rows, p))
    }

    /// Basis of the right kernel {v : Av = 0}, one primitive integer vector
    /// per free column (first nonzero entry positive), in column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let ech = bareiss(self.cleared_rows());
        let pivot_col: Vec<usize> = ech.pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::with_capacity(self.cols - pivot_col.len());
        for free in (0..self.cols).filter(|c| !pivot_col.contains(c)) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for &(pr, pc) in ech.pivots.iter().rev() {
                let mut s = Rational::zero();
                for j in pc + 1..self.cols {
                    if !v[j].is_zero() && !ech.mat[pr][j].is_zero() {
                        s += Rational::from_integer(ech.mat[pr][j].clone()) * &v[j];
                    }
                }
                v[pc] = -s / Rational::from_integer(ech.mat[pr][pc].clone());
            }
            normalize_primitive(&mut v);
            debug_assert!(self.mul_vec(&v).iter().all(Zero::is_zero));
            basis.push(v);
        }
        basis
    }

    /// Determinant of a square matrix.
    pub fn det_exact(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut scale = Rational::one();
        let int_rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let mut lcm = BigInt::one();
                for q in self.row(i) {
                    lcm = lcm.lcm(q.denom());
                }
                scale *= Rational::from_integer(lcm.clone());
                self.row(i).iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
            })
            .collect();
        let ech = bareiss(int_rows);
        if ech.pivots.len() < self.rows {
            return Rational::zero();
        }
        let (pr, pc) = *ech.pivots.last().unwrap();
        let mut det = Rational::from_integer(ech.mat[pr][pc].clone()) / scale;
        if ech.swaps % 2 == 1 {
            det = -det;
        }
        det
    }

    /// Coefficients of det(tI − A), ascending in t, by Faddeev–LeVerrier.
    pub fn char_poly(&self) -> Vec<Rational> {
        assert_eq!(self.rows, self.cols, "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let mut coeff = vec![Rational::zero(); n + 1];
        coeff[n] = Rational::one();
        let mut mk = ExactMatrix::identity(n);
        for k in 1..=n {
            mk = self.mul(&mk);
            let c = -mk.trace() / Rational::from_integer(BigInt::from(k));
            coeff[n - k] = c.clone();
            if k < n {
                for i in 0..n {
                    let t = mk.get(i, i) + &c;
                    mk.set(i, i, t);
                }
            }
        }
        coeff
    }

    /// Any solution of Ax = b (free variables set to zero), or `None` when
    /// the system is inconsistent.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(rhs.len(), self.rows, "right-hand side length mismatch");
        let mut m: Vec<Vec<Rational>> = (0..self.rows)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(rhs[i].clone());
                row
            })
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut pr = 0;
        for pc in 0..self.cols {
            let Some(sel) = (pr..self.rows).find(|&i| !m[i][pc].is_zero()) else {
                continue;
            };
            m.swap(pr, sel);
            let inv = m[pr][pc].recip();
            for j in pc..=self.cols {
                m[pr][j] *= inv.clone();
            }
            for i in 0..self.rows {
                if i != pr && !m[i][pc].is_zero() {
                    let f = m[i][pc].clone();
                    for j in pc..=self.cols {
                        let t = &m[pr][j] * &f;
                        m[i][j] -= t;
                    }
                }
            }
            pivots.push((pr, pc));
            pr += 1;
            if pr == self.rows {
                break;
            }
        }
        if m.iter().skip(pr).any(|row| !row[self.cols].is_zero()) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for &(r, c) in &pivots {
            x[c] = m[r][self.cols].clone();
        }
        Some(x)
    }
}

impl std::fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

struct Echelon {
    mat: Vec<Vec<BigInt>>,
    /// (row, column) of each pivot in elimination order.
    pivots: Vec<(usize, usize)>,
    swaps: usize,
}

/// Fraction-free (Bareiss) row echelon form.  After step k every entry is a
/// (k+1)×(k+1) minor of the input, so the division by the previous pivot is
/// exact; the debug assertion guards that invariant.
fn bareiss(mut mat: Vec<Vec<BigInt>>) -> Echelon {
    let nrows = mat.len();
    let ncols = if nrows == 0 { 0 } else { mat[0].len() };
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut prev = BigInt::one();
    let mut pr = 0;
    for pc in 0..ncols {
        if pr == nrows {
            break;
        }
        let Some(sel) = (pr..nrows).find(|&i| !mat[i][pc].is_zero()) else {
            continue;
        };
        if sel != pr {
            mat.swap(pr, sel);
            swaps += 1;
        }
        let pivot = mat[pr][pc].clone();
        for i in pr + 1..nrows {
            if mat[i][pc].is_zero() && pivot.is_one() && prev.is_one() {
                // Fast path: nothing to eliminate and no rescaling needed.
                continue;
            }
            for j in pc + 1..ncols {
                let t = &mat[i][j] * &pivot - &mat[i][pc] * &mat[pr][j];
                let (q, r) = t.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division not exact");
                mat[i][j] = q;
            }
            mat[i][pc] = BigInt::zero();
        }
        prev = pivot;
        pivots.push((pr, pc));
        pr += 1;
    }
    Echelon { mat, pivots, swaps }
}

/// Scale a rational vector to a primitive integer vector whose first nonzero
/// entry is positive.
fn normalize_primitive(v: &mut [Rational]) {
    let mut lcm = BigInt::one();
    for q in v.iter() {
        lcm = lcm.lcm(q.denom());
    }
    let mut gcd = BigInt::zero();
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    if gcd.is_zero() {
        return;
    }
    let flip = ints.iter().find(|x| !x.is_zero()).map(|x| x.is_negative()).unwrap_or(false);
    for (slot, x) in v.iter_mut().zip(ints) {
        let mut scaled = &x / &gcd;
        if flip {
            scaled = -scaled;
        }
        *slot = Rational::from_integer(scaled);
    }
}
