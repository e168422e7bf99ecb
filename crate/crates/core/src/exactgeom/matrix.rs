//! Dense rational matrices and fraction-free elimination.
//!
//! Rank and determinants go through Bareiss elimination on integer rows:
//! every rational row is first scaled by the lcm of its denominators, which
//! changes neither the rank nor whether a minor vanishes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::{abs_gcd_normalize, Rational};
use crate::error::{DiscError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(DiscError::pre(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.entries[i * size + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from row vectors; `cols` is needed when there are no rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(DiscError::pre(format!("row of length {} in a {cols}-column matrix", row.len())));
            }
            entries.extend(row);
        }
        Ok(Self { rows: n, cols, entries })
    }

    pub fn from_i64_rows(cols: usize, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
            .collect();
        Self::from_rows(cols, rows).expect("rows match column count")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[Rational]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn scale_row(&mut self, row: usize, factor: &Rational) {
        for x in &mut self.entries[row * self.cols..(row + 1) * self.cols] {
            *x *= factor;
        }
    }

    /// The submatrix made of the listed rows, in the listed order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            entries.extend_from_slice(self.row(r));
        }
        Self { rows: rows.len(), cols: self.cols, entries }
    }

    pub fn with_row(&self, row: &[Rational]) -> Result<Self> {
        if row.len() != self.cols {
            return Err(DiscError::pre("appended row has the wrong length"));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(row);
        Ok(Self { rows: self.rows + 1, cols: self.cols, entries })
    }

    /// Rows scaled to integers (row-wise denominators cleared).
    pub fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        self.iter_rows().map(integer_row).collect()
    }
}

/// Clears the denominators of one row. The result is a positive rational
/// multiple of the input.
pub fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
}

/// Fraction-free forward elimination in place. Returns the rank and the
/// number of row swaps performed.
///
/// After step `r` every entry below the pivot row is a `(r+1)`-minor of the
/// input, which is why the division by the previous pivot is exact.
pub fn bareiss_eliminate(a: &mut [Vec<BigInt>]) -> (usize, usize) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut swaps = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            swaps += 1;
        }
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let num = pivot * &row[j] - &lead * &pivot_row[j];
                debug_assert!((&num % &prev).is_zero(), "inexact Bareiss division");
                row[j] = num / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot.clone();
        rank += 1;
    }
    (rank, swaps)
}

pub fn integer_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a = rows.to_vec();
    bareiss_eliminate(&mut a).0
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn integer_determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = rows.to_vec();
    let (rank, swaps) = bareiss_eliminate(&mut a);
    if rank < n {
        return BigInt::zero();
    }
    let det = a[n - 1][n - 1].clone();
    if swaps % 2 == 1 {
        -det
    } else {
        det
    }
}

/// Exact rank of a rational matrix.
pub fn rank(m: &RationalMatrix) -> usize {
    integer_rank(&m.integer_rows())
}

/// Exact determinant of a square rational matrix.
pub fn determinant(m: &RationalMatrix) -> Result<Rational> {
    if m.rows != m.cols {
        return Err(DiscError::pre(format!("determinant of a {}x{} matrix", m.rows, m.cols)));
    }
    let mut scale = BigInt::one();
    let rows: Vec<Vec<BigInt>> = m
        .iter_rows()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            scale *= &lcm;
            row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
        })
        .collect();
    Ok(Rational::new(integer_determinant(&rows), scale))
}

/// Whether `v` lies in the row space of `basis_rows`.
pub fn in_span(v: &[Rational], basis_rows: &RationalMatrix) -> Result<bool> {
    if v.len() != basis_rows.cols {
        return Err(DiscError::pre(format!(
            "vector of length {} against {}-column basis",
            v.len(),
            basis_rows.cols
        )));
    }
    if v.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    let mut rows = basis_rows.integer_rows();
    let before = integer_rank(&rows);
    rows.push(integer_row(v));
    Ok(integer_rank(&rows) == before)
}

/// Reduced row echelon form over the rationals. Returns the nonzero rows
/// and their pivot columns.
pub fn rref(m: &RationalMatrix) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut a: Vec<Vec<Rational>> = m.iter_rows().map(<[Rational]>::to_vec).collect();
    let rows = a.len();
    let cols = m.cols;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Integer basis of the right null space `{x : m x = 0}`, one primitive
/// vector per free column.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<BigInt>> {
    let (reduced, pivots) = rref(m);
    let cols = m.cols;
    let mut basis = Vec::with_capacity(cols - pivots.len());
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut x = vec![Rational::zero(); cols];
        x[free] = Rational::one();
        for (row, &p) in reduced.iter().zip(&pivots) {
            x[p] = -row[free].clone();
        }
        let mut v = integer_row(&x);
        abs_gcd_normalize(&mut v);
        basis.push(v);
    }
    basis
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rational::{int, rational};
    use proptest::prelude::*;

    fn largest_nonvanishing_minor(m: &RationalMatrix) -> usize {
        // Exhaustive: try every square submatrix, largest first.
        let top = m.rows().min(m.cols());
        for size in (1..=top).rev() {
            for rs in crate::circuits::subsets_of_size(m.rows(), size) {
                let rsel: Vec<usize> = (0..m.rows()).filter(|i| rs >> i & 1 == 1).collect();
                for cs in crate::circuits::subsets_of_size(m.cols(), size) {
                    let csel: Vec<usize> = (0..m.cols()).filter(|j| cs >> j & 1 == 1).collect();
                    let mut entries = Vec::new();
                    for &i in &rsel {
                        for &j in &csel {
                            entries.push(m.get(i, j).clone());
                        }
                    }
                    let sub = RationalMatrix::new(size, size, entries).unwrap();
                    if !cofactor_det(&sub).is_zero() {
                        return size;
                    }
                }
            }
        }
        0
    }

    // Laplace expansion, independent of elimination.
    fn cofactor_det(m: &RationalMatrix) -> Rational {
        let n = m.rows();
        if n == 0 {
            return int(1);
        }
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut total = int(0);
        for j in 0..n {
            let mut entries = Vec::new();
            for i in 1..n {
                for c in (0..n).filter(|&c| c != j) {
                    entries.push(m.get(i, c).clone());
                }
            }
            let minor = RationalMatrix::new(n - 1, n - 1, entries).unwrap();
            let term = m.get(0, j) * cofactor_det(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RationalMatrix::zeros(3, 3)), 0);
        assert_eq!(rank(&RationalMatrix::identity(4)), 4);
        let m = RationalMatrix::from_i64_rows(2, &[&[1, 2], &[2, 4], &[1, 0]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&RationalMatrix::zeros(0, 3)), 0);
    }

    #[test]
    fn in_span_examples() {
        let e2 = RationalMatrix::from_i64_rows(2, &[&[0, 1]]);
        assert!(in_span(&[int(0), int(0)], &e2).unwrap());
        assert!(!in_span(&[int(1), int(0)], &e2).unwrap());
        let b = RationalMatrix::from_i64_rows(2, &[&[1, 2]]);
        assert!(in_span(&[int(3), int(6)], &b).unwrap());
        assert!(in_span(&[int(0), int(0)], &RationalMatrix::zeros(0, 2)).unwrap());
        assert!(in_span(&[int(1)], &b).is_err());
    }

    #[test]
    fn determinant_with_fractions() {
        let m = RationalMatrix::new(2, 2, vec![rational(1, 2), int(1), rational(1, 3), int(2)]).unwrap();
        assert_eq!(determinant(&m).unwrap(), rational(2, 3));
        assert_eq!(determinant(&m).unwrap(), cofactor_det(&m));
        let swap = RationalMatrix::from_i64_rows(2, &[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&swap).unwrap(), int(-1));
    }

    #[test]
    fn kernel_is_orthogonal_and_complementary() {
        let m = RationalMatrix::from_i64_rows(4, &[&[1, 2, 0, -1], &[2, 4, 1, 0]]);
        let ker = kernel_basis(&m);
        assert_eq!(ker.len(), 4 - rank(&m));
        for row in m.integer_rows() {
            for x in &ker {
                assert!(dot(&row, x).is_zero());
            }
        }
    }

    fn small_matrix() -> impl Strategy<Value = RationalMatrix> {
        (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-3i64..=3, 1i64..=3), r * c).prop_map(move |xs| {
                let entries = xs.into_iter().map(|(p, q)| rational(p, q)).collect();
                RationalMatrix::new(r, c, entries).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_matches_minor_search(m in small_matrix()) {
            prop_assert_eq!(rank(&m), largest_nonvanishing_minor(&m));
        }

        #[test]
        fn determinant_matches_laplace(xs in proptest::collection::vec(-20i64..=20, 16)) {
            let m = RationalMatrix::new(4, 4, xs.into_iter().map(int).collect()).unwrap();
            prop_assert_eq!(determinant(&m).unwrap(), cofactor_det(&m));
        }

        #[test]
        fn row_scaling_keeps_span(m in small_matrix(), row in 0usize..5, p in 1i64..5, q in 1i64..5) {
            let row = row % m.rows();
            let v: Vec<Rational> = m.row(row).iter().map(|x| x * rational(2, 1) + int(1)).collect();
            let mut scaled = m.clone();
            scaled.scale_row(row, &rational(-p, q));
            prop_assert_eq!(in_span(&v, &m).unwrap(), in_span(&v, &scaled).unwrap());
            prop_assert_eq!(rank(&m), rank(&scaled));
        }
    }
}
