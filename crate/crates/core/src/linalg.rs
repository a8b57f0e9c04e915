//! Dense exact linear algebra: echelon forms, kernels, and subspace arithmetic.
//!
//! Subspaces are stored by the reduced row echelon form of a basis, so two
//! subspaces are equal exactly when their representations are.

use crate::error::{Error, Result};
use crate::scalar::{mul, Field};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<T>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn mul_mat(&self, other: &Self) -> Result<Self> {
        if other.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &mul(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot<T: Field>(a: &[T], b: &[T]) -> T {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &mul(x, y);
        }
    }
    acc
}

/// Reduced row echelon form by Gauss–Jordan elimination, with its pivot columns.
pub fn rref<T: Field>(m: &Matrix<T>) -> (Matrix<T>, Vec<usize>) {
    let mut rows = m.to_rows();
    let pivots = rref_rows(&mut rows, m.cols);
    let reduced = Matrix {
        rows: m.rows,
        cols: m.cols,
        data: rows.into_iter().flatten().collect(),
    };
    (reduced, pivots)
}

/// In-place Gauss–Jordan on a list of rows. Zero rows end up at the bottom.
fn rref_rows<T: Field>(rows: &mut [Vec<T>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = T::one() / rows[r][col].clone();
        if !inv.is_one() {
            for x in rows[r][col..].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let support: Vec<usize> = (col..cols).filter(|&k| !rows[r][k].is_zero()).collect();
        let (before, rest) = rows.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().expect("pivot row exists");
        for other in before.iter_mut().chain(after.iter_mut()) {
            if other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for &k in &support {
                other[k] -= &mul(&factor, &pivot_row[k]);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// A linear subspace of `T^n`, held as the nonzero rows of an RREF basis matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<T> {
    ambient_dim: usize,
    basis: Vec<Vec<T>>,
}

impl<T: Field> Subspace<T> {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::from_vectors(ambient_dim, Matrix::identity(ambient_dim).to_rows())
            .expect("identity rows have the ambient length")
    }

    /// The span of `vectors`, canonicalized.
    pub fn from_vectors(ambient_dim: usize, vectors: Vec<Vec<T>>) -> Result<Self> {
        let mut rows = vectors;
        for v in &rows {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
        }
        let rank = rref_rows(&mut rows, ambient_dim).len();
        rows.truncate(rank);
        Ok(Self {
            ambient_dim,
            basis: rows,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    pub fn contains(&self, v: &[T]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Ok(rref_rows(&mut rows, self.ambient_dim).len() == self.dim())
    }

    fn check_same_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }
}

/// `{v : m·v = 0}`; its dimension is `cols − rank(m)`.
pub fn kernel_basis<T: Field>(m: &Matrix<T>) -> Subspace<T> {
    let (reduced, pivots) = rref(m);
    let mut vectors = Vec::new();
    let mut next_pivot = 0;
    for free in 0..m.cols {
        if next_pivot < pivots.len() && pivots[next_pivot] == free {
            next_pivot += 1;
            continue;
        }
        let mut v = vec![T::zero(); m.cols];
        v[free] = T::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -reduced[(r, free)].clone();
        }
        vectors.push(v);
    }
    Subspace::from_vectors(m.cols, vectors).expect("kernel vectors have column length")
}

pub fn subspace_sum<T: Field>(a: &Subspace<T>, b: &Subspace<T>) -> Result<Subspace<T>> {
    a.check_same_ambient(b)?;
    let vectors = a.basis.iter().chain(&b.basis).cloned().collect();
    Subspace::from_vectors(a.ambient_dim, vectors)
}

/// `a ∩ b` by Zassenhaus elimination on `[a | a]` stacked over `[b | 0]`.
pub fn subspace_intersection<T: Field>(a: &Subspace<T>, b: &Subspace<T>) -> Result<Subspace<T>> {
    a.check_same_ambient(b)?;
    let n = a.ambient_dim;
    let mut rows: Vec<Vec<T>> = a
        .basis
        .iter()
        .map(|v| v.iter().chain(v).cloned().collect())
        .chain(b.basis.iter().map(|v| {
            v.iter()
                .cloned()
                .chain(std::iter::repeat_n(T::zero(), n))
                .collect()
        }))
        .collect();
    let pivots = rref_rows(&mut rows, 2 * n);
    let meet = pivots
        .iter()
        .enumerate()
        .filter(|(_, &p)| p >= n)
        .map(|(r, _)| rows[r][n..].to_vec())
        .collect();
    Subspace::from_vectors(n, meet)
}

/// `a ∩ span{e_k : k ∈ keep}`.
///
/// Eliminates with the dropped coordinates ordered first: the echelon rows
/// whose pivot lands on a kept coordinate vanish on every dropped one and span
/// the intersection. Agrees with [`subspace_intersection`] against the
/// coordinate subspace.
pub fn intersect_coordinate_subspace<T: Field>(
    a: &Subspace<T>,
    keep: &[usize],
) -> Result<Subspace<T>> {
    let n = a.ambient_dim;
    let mut kept = vec![false; n];
    for &k in keep {
        if k >= n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: k + 1,
            });
        }
        kept[k] = true;
    }
    let order: Vec<usize> = (0..n)
        .filter(|&k| !kept[k])
        .chain((0..n).filter(|&k| kept[k]))
        .collect();
    let dropped = kept.iter().filter(|&&k| !k).count();
    let mut rows: Vec<Vec<T>> = a
        .basis
        .iter()
        .map(|v| order.iter().map(|&k| v[k].clone()).collect())
        .collect();
    let pivots = rref_rows(&mut rows, n);
    let meet = pivots
        .iter()
        .enumerate()
        .filter(|(_, &p)| p >= dropped)
        .map(|(r, _)| {
            let mut v = vec![T::zero(); n];
            for (pos, &k) in order.iter().enumerate() {
                v[k] = rows[r][pos].clone();
            }
            v
        })
        .collect();
    Subspace::from_vectors(n, meet)
}

/// True iff `Σ dim(parts) = dim(whole)` and the parts sum to `whole`.
pub fn is_direct_sum<T: Field>(parts: &[Subspace<T>], whole: &Subspace<T>) -> Result<bool> {
    let mut total = Subspace::zero(whole.ambient_dim);
    let mut dims = 0;
    for part in parts {
        total = subspace_sum(&total, part)?;
        dims += part.dim();
    }
    Ok(dims == whole.dim() && total == *whole)
}

/// A projection onto the quotient by `relations`.
///
/// Rows are indexed by the non-pivot coordinates of the relations' RREF; the
/// row for coordinate `k` is `e_k − Σ_r w_r[k]·e_{p_r}`. The kernel is exactly
/// `relations`, and restricted to the non-pivot coordinates it is the identity.
pub fn quotient_projection<T: Field>(relations: &Subspace<T>) -> Matrix<T> {
    let n = relations.ambient_dim;
    let pivots: Vec<usize> = relations
        .basis
        .iter()
        .map(|row| {
            row.iter()
                .position(|x| !x.is_zero())
                .expect("basis rows are nonzero")
        })
        .collect();
    let complement: Vec<usize> = (0..n).filter(|k| !pivots.contains(k)).collect();
    let mut p = Matrix::zeros(complement.len(), n);
    for (i, &k) in complement.iter().enumerate() {
        p[(i, k)] = T::one();
        for (row, &pivot) in relations.basis.iter().zip(&pivots) {
            if !row[k].is_zero() {
                p[(i, pivot)] = -row[k].clone();
            }
        }
    }
    p
}

/// Exact determinant by elimination with row swaps.
pub fn determinant<T: Field>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut rows = m.to_rows();
    let mut det = T::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !rows[i][col].is_zero()) else {
            return Ok(T::zero());
        };
        if p != col {
            rows.swap(p, col);
            det = -det;
        }
        let pivot = rows[col][col].clone();
        det *= &pivot;
        let (top, bottom) = rows.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in bottom.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone() / pivot.clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero() {
                    *x -= &mul(&factor, p);
                }
            }
        }
    }
    Ok(det)
}

/// One solution of `m·x = rhs`, with every free variable set to zero, or
/// `None` when the system is inconsistent.
pub fn solve<T: Field>(m: &Matrix<T>, rhs: &[T]) -> Result<Option<Vec<T>>> {
    if rhs.len() != m.rows {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: rhs.len(),
        });
    }
    let mut rows: Vec<Vec<T>> = (0..m.rows)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(rhs[i].clone());
            r
        })
        .collect();
    let pivots = rref_rows(&mut rows, m.cols + 1);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![T::zero(); m.cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = rows[r][m.cols].clone();
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::{One, Zero};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn qf(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows[0].len();
        Matrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn span(n: usize, vs: &[&[i64]]) -> Subspace<Rational> {
        Subspace::from_vectors(
            n,
            vs.iter()
                .map(|v| v.iter().map(|&x| q(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rref_examples() {
        assert_eq!(
            rref(&mat(&[&[1, 0], &[0, 1]])),
            (mat(&[&[1, 0], &[0, 1]]), vec![0, 1])
        );
        assert_eq!(
            rref(&mat(&[&[1, 2], &[2, 4]])),
            (mat(&[&[1, 2], &[0, 0]]), vec![0])
        );
        assert_eq!(
            rref(&mat(&[&[0, 1], &[1, 0]])),
            (mat(&[&[1, 0], &[0, 1]]), vec![0, 1])
        );
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(
            kernel_basis(&Matrix::<Rational>::identity(3)),
            Subspace::zero(3)
        );
        assert_eq!(kernel_basis(&mat(&[&[1, 1]])), span(2, &[&[1, -1]]));
        let k = kernel_basis(&mat(&[&[1, 2], &[2, 4]]));
        assert_eq!(k, span(2, &[&[-2, 1]]));
        assert_eq!(k.basis()[0], vec![q(1), qf(-1, 2)]);
    }

    #[test]
    fn sum_and_intersection_examples() {
        let e = |i: usize| {
            let mut v = [0i64; 3];
            v[i] = 1;
            v
        };
        let (e1, e2, e3) = (e(0), e(1), e(2));
        assert_eq!(
            subspace_sum(&span(3, &[&e1]), &span(3, &[&e2])).unwrap(),
            span(3, &[&e1, &e2])
        );
        assert_eq!(
            subspace_sum(&span(3, &[&e1]), &span(3, &[&e1])).unwrap(),
            span(3, &[&e1])
        );
        let v = span(3, &[&[1, 2, 3], &[0, 1, 1]]);
        assert_eq!(subspace_sum(&Subspace::zero(3), &v).unwrap(), v);

        assert_eq!(
            subspace_intersection(&span(3, &[&e1, &e2]), &span(3, &[&e2, &e3])).unwrap(),
            span(3, &[&e2])
        );
        assert_eq!(subspace_intersection(&v, &v).unwrap(), v);
        assert_eq!(
            subspace_intersection(&span(3, &[&e1]), &span(3, &[&e2])).unwrap(),
            Subspace::zero(3)
        );
        assert!(subspace_sum(&Subspace::<Rational>::zero(2), &Subspace::zero(3)).is_err());
        assert!(subspace_intersection(&Subspace::<Rational>::zero(2), &Subspace::zero(3)).is_err());
    }

    #[test]
    fn direct_sum_examples() {
        let whole = Subspace::<Rational>::full(2);
        assert!(is_direct_sum(&[span(2, &[&[1, 0]]), span(2, &[&[0, 1]])], &whole).unwrap());
        assert!(!is_direct_sum(&[span(2, &[&[1, 0]]), span(2, &[&[1, 0]])], &whole).unwrap());
        assert!(is_direct_sum(&[span(2, &[&[1, 1]]), span(2, &[&[0, 1]])], &whole).unwrap());
        assert!(is_direct_sum(&[span(3, &[&[1, 0, 0]])], &whole).is_err());
    }

    #[test]
    fn projection_examples() {
        assert_eq!(
            quotient_projection(&Subspace::<Rational>::zero(3)),
            Matrix::identity(3)
        );
        assert_eq!(quotient_projection(&span(2, &[&[1, 0]])), mat(&[&[0, 1]]));
        let p = quotient_projection(&span(2, &[&[1, 1]]));
        assert_eq!(p.mul_vec(&[q(1), q(1)]).unwrap(), vec![q(0)]);
        assert_eq!(p.rank(), 1);
    }

    #[test]
    fn determinant_examples() {
        assert!(determinant(&Matrix::<Rational>::identity(4))
            .unwrap()
            .is_one());
        assert_eq!(determinant(&mat(&[&[0, 1], &[1, 0]])).unwrap(), q(-1));
        assert_eq!(determinant(&mat(&[&[1, 2], &[2, 4]])).unwrap(), q(0));
        assert!(matches!(
            determinant(&mat(&[&[1, 2]])),
            Err(Error::NotSquare { rows: 1, cols: 2 })
        ));
    }

    #[test]
    fn solve_sets_free_variables_to_zero() {
        let m = mat(&[&[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(
            solve(&m, &[q(3), q(2)]).unwrap(),
            Some(vec![q(3), q(0), q(2)])
        );
        let singular = mat(&[&[1, 2], &[2, 4]]);
        assert_eq!(solve(&singular, &[q(1), q(3)]).unwrap(), None);
        assert!(solve(&singular, &[q(1)]).is_err());
    }

    #[test]
    fn contains_checks_membership() {
        let v = span(3, &[&[1, 1, 0]]);
        assert!(v.contains(&[q(2), q(2), q(0)]).unwrap());
        assert!(!v.contains(&[q(1), q(0), q(0)]).unwrap());
        assert!(v.contains(&[Rational::zero(), q(0), q(0)]).unwrap());
    }
}
