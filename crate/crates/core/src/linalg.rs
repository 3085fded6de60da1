//! Dense exact linear algebra over the rationals.
//!
//! Everything the ring and model code needs reduces to row reduction:
//! ranks, kernels, canonical quotient bases, unique solves and the inertia of
//! a symmetric form. Matrices here are small, so dense storage is fine.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub type Vector = Vec<BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vector>,
}

/// Positive, negative and zero counts of a real symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

pub fn zero_vector(n: usize) -> Vector {
    vec![BigRational::zero(); n]
}

pub fn is_zero_vector(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn axpy(y: &mut [BigRational], a: &BigRational, x: &[BigRational]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![zero_vector(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigRational::one();
        }
        m
    }

    /// Builds from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vector>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i][j] = v;
    }

    pub fn into_rows(self) -> Vec<Vector> {
        self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vector {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.data[i][j] == self.data[j][i]))
    }

    /// Reduces to reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.data[i][c].is_zero()) else {
                continue;
            };
            self.data.swap(r, p);
            let inv = self.data[r][c].recip();
            for x in self.data[r].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = self.data[r].clone();
            for i in 0..self.rows {
                if i != r && !self.data[i][c].is_zero() {
                    let f = -self.data[i][c].clone();
                    axpy(&mut self.data[i], &f, &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Canonical basis of the right kernel `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vector> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = zero_vector(self.cols);
                v[f] = BigRational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.data[r][f].clone();
                }
                v
            })
            .collect()
    }

    /// The unique solution of `A x = b`, if there is exactly one.
    pub fn solve_unique(&self, b: &[BigRational]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for (row, (src, bi)) in aug.data.iter_mut().zip(self.data.iter().zip(b)) {
            row[..self.cols].clone_from_slice(src);
            row[self.cols] = bi.clone();
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) || pivots.len() != self.cols {
            return None;
        }
        Some((0..self.cols).map(|i| aug.data[i][self.cols].clone()).collect())
    }

    pub fn determinant(&self) -> BigRational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = BigRational::one();
        for c in 0..self.cols {
            let Some(p) = (c..self.rows).find(|&i| !m.data[i][c].is_zero()) else {
                return BigRational::zero();
            };
            if p != c {
                m.data.swap(p, c);
                det = -det;
            }
            det *= &m.data[c][c];
            let inv = m.data[c][c].recip();
            let pivot_row = m.data[c].clone();
            for i in c + 1..self.rows {
                if !m.data[i][c].is_zero() {
                    let f = -(&m.data[i][c] * &inv);
                    axpy(&mut m.data[i], &f, &pivot_row);
                }
            }
        }
        det
    }

    /// Inertia of a symmetric matrix by congruence diagonalisation.
    ///
    /// # Panics
    /// Panics if the matrix is not symmetric.
    pub fn inertia(&self) -> Inertia {
        assert!(self.is_symmetric(), "inertia of a non-symmetric matrix");
        let mut a = self.clone();
        let n = self.rows;
        let mut out = Inertia {
            positive: 0,
            negative: 0,
            zero: 0,
        };
        let mut k = 0;
        while k < n {
            if a.data[k][k].is_zero() {
                // Find a nonzero diagonal entry below, else create one from an
                // off-diagonal entry: replacing e_k by e_k +/- e_j gives
                // a_kk' = a_kk +/- 2 a_kj + a_jj, and one sign is nonzero.
                if let Some(j) = (k + 1..n).find(|&j| !a.data[j][j].is_zero()) {
                    a.swap_sym(k, j);
                } else if let Some(j) = (k + 1..n).find(|&j| !a.data[k][j].is_zero()) {
                    a.add_sym(k, j, &BigRational::one());
                } else {
                    out.zero += 1;
                    k += 1;
                    continue;
                }
            }
            let pivot = a.data[k][k].clone();
            if pivot.is_positive() {
                out.positive += 1;
            } else {
                out.negative += 1;
            }
            for j in k + 1..n {
                if !a.data[k][j].is_zero() {
                    let f = -(&a.data[k][j] / &pivot);
                    a.add_sym(j, k, &f);
                }
            }
            k += 1;
        }
        out
    }

    fn swap_sym(&mut self, i: usize, j: usize) {
        self.data.swap(i, j);
        for row in self.data.iter_mut() {
            row.swap(i, j);
        }
    }

    /// Row and column operation `e_i += f e_j`.
    fn add_sym(&mut self, i: usize, j: usize, f: &BigRational) {
        let rj = self.data[j].clone();
        axpy(&mut self.data[i], f, &rj);
        for row in self.data.iter_mut() {
            let add = &row[j] * f;
            row[i] += add;
        }
    }
}

/// Canonical basis of `span(rows)`: the nonzero rows of its RREF.
pub fn row_space_basis(cols: usize, rows: &[Vector]) -> Vec<Vector> {
    let mut m = Matrix::from_rows(cols, rows.to_vec());
    let r = m.rref().len();
    m.data.truncate(r);
    m.data
}

/// Canonical representatives of a basis of `span(sub) / (span(sub) ∩ span(modulo))`.
///
/// Each vector of `sub` is reduced against the RREF of `modulo` (clearing its
/// pivot columns), and the reduced vectors are put in RREF. The result is
/// independent of the bases chosen for both spans.
pub fn quotient_basis(cols: usize, sub: &[Vector], modulo: &[Vector]) -> Vec<Vector> {
    let mut b = Matrix::from_rows(cols, modulo.to_vec());
    let pivots = b.rref();
    let reduced: Vec<Vector> = sub
        .iter()
        .map(|v| reduce_against(v, &b, &pivots))
        .collect();
    row_space_basis(cols, &reduced)
}

/// Reduces `v` against an RREF matrix with the given pivot columns.
pub fn reduce_against(v: &[BigRational], rref: &Matrix, pivots: &[usize]) -> Vector {
    let mut w = v.to_vec();
    for (r, &pc) in pivots.iter().enumerate() {
        if !w[pc].is_zero() {
            let f = -w[pc].clone();
            axpy(&mut w, &f, &rref.data[r]);
        }
    }
    w
}

/// True iff `v` lies in the span of `rows`.
pub fn in_span(cols: usize, rows: &[Vector], v: &[BigRational]) -> bool {
    let mut b = Matrix::from_rows(cols, rows.to_vec());
    let pivots = b.rref();
    is_zero_vector(&reduce_against(v, &b, &pivots))
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_kernel() {
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(is_zero_vector(&m.mul_vec(&k[0])));
        assert_eq!(k[0], vec![integer(-1), integer(-1), integer(1)]);
    }

    #[test]
    fn solve_and_determinant() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 3]]);
        assert_eq!(m.determinant(), integer(5));
        let x = m.solve_unique(&[integer(3), integer(4)]).unwrap();
        assert_eq!(x, vec![integer(1), integer(1)]);
        let singular = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(singular.determinant(), integer(0));
        assert!(singular.solve_unique(&[integer(1), integer(1)]).is_none());
    }

    #[test]
    fn inertia_cases() {
        let hyperbolic = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            hyperbolic.inertia(),
            Inertia { positive: 1, negative: 1, zero: 0 }
        );
        let quadric = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(quadric.inertia(), Inertia { positive: 2, negative: 0, zero: 0 });
        let odd = Matrix::from_i64(&[&[2, 1], &[1, 0]]);
        assert_eq!(odd.inertia(), Inertia { positive: 1, negative: 1, zero: 0 });
        let degenerate = Matrix::from_i64(&[&[0, 0, 0], &[0, -3, 0], &[0, 0, 0]]);
        assert_eq!(degenerate.inertia(), Inertia { positive: 0, negative: 1, zero: 2 });
        // a_kk + 2 a_kj + a_jj = 0 on the first try: [[0,1,..],[1,-2,..]]
        let tricky = Matrix::from_i64(&[&[0, 1], &[1, -2]]);
        assert_eq!(tricky.inertia(), Inertia { positive: 1, negative: 1, zero: 0 });
    }

    #[test]
    fn quotient_is_canonical() {
        let sub = vec![
            vec![integer(1), integer(1), integer(0)],
            vec![integer(0), integer(1), integer(1)],
        ];
        let modulo = vec![vec![integer(1), integer(0), integer(0)]];
        let q1 = quotient_basis(3, &sub, &modulo);
        let sub2 = vec![
            vec![integer(1), integer(2), integer(1)],
            vec![integer(2), integer(1), integer(-1)],
        ];
        let q2 = quotient_basis(3, &sub2, &modulo);
        assert_eq!(q1, q2);
        assert_eq!(q1.len(), 2);
        assert!(in_span(3, &sub, &[integer(1), integer(2), integer(1)]));
        assert!(!in_span(3, &sub, &[integer(0), integer(0), integer(1)]));
    }
}
