//! Dense exact linear algebra: row reduction, rank, kernels and coordinates.
//!
//! Elimination is deterministic: pivots are taken leftmost-column first, and within a
//! column from the topmost eligible row. Kernel bases are therefore reproducible.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
            for s in row {
                if s.spec() != field {
                    return Err(Error::MixedFields(field.to_string(), s.spec().to_string()));
                }
                entries.push(s);
            }
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            entries,
        })
    }

    /// Builds a matrix from small integers.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Matrix {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|v| field.from_i64(*v)).collect())
            .collect();
        Matrix::from_rows(field, data).expect("rectangular input")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = &out.entries[i * other.cols + j] + &(a * b);
                        out.entries[i * other.cols + j] = v;
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * k).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }
}

/// Result of [`rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn rref(m: &Matrix) -> Echelon {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                a.entries.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = a.get(r, c).inv().expect("pivot is nonzero");
        for j in c..cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c).clone();
            if factor.is_zero() {
                continue;
            }
            for j in c..cols {
                let pv = a.get(r, j);
                if pv.is_zero() {
                    continue;
                }
                let v = a.get(i, j) - &(&factor * pv);
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon {
        matrix: a,
        rank: pivots.len(),
        pivots,
    }
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).rank
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    pub vectors: Vec<Vec<Scalar>>,
    pub rank: usize,
}

/// Canonical kernel basis: one vector per free column, in increasing column order,
/// with a 1 in its own free column and 0 in every other free column.
pub fn kernel_basis(m: &Matrix) -> KernelBasis {
    let ech = rref(m);
    let cols = m.cols;
    let field = m.field;
    let mut is_pivot = vec![false; cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let vectors = (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (row, &p) in ech.pivots.iter().enumerate() {
                v[p] = -ech.matrix.get(row, free);
            }
            v
        })
        .collect();
    KernelBasis {
        vectors,
        rank: ech.rank,
    }
}

/// Outcome of [`expand_in_basis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expansion {
    Coordinates(Vec<Scalar>),
    /// The target is outside the span; `residual` is the target minus its best
    /// partial reconstruction on the pivot coordinates, and is nonzero.
    NotInSpan {
        residual: Vec<Scalar>,
    },
}

impl Expansion {
    pub fn coordinates(self) -> Option<Vec<Scalar>> {
        match self {
            Expansion::Coordinates(c) => Some(c),
            Expansion::NotInSpan { .. } => None,
        }
    }
}

/// Solves `Σ c_i basis_i = target` exactly. Basis vectors must be linearly independent.
pub fn expand_in_basis(
    field: FieldSpec,
    basis: &[Vec<Scalar>],
    target: &[Scalar],
) -> Result<Expansion> {
    let dim = target.len();
    for b in basis {
        if b.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: b.len(),
            });
        }
    }
    let k = basis.len();
    // Augmented system: columns are basis vectors, then the target.
    let mut aug = Matrix::zeros(field, dim, k + 1);
    for (j, b) in basis.iter().enumerate() {
        for (i, v) in b.iter().enumerate() {
            aug.set(i, j, v.clone());
        }
    }
    for (i, v) in target.iter().enumerate() {
        aug.set(i, k, v.clone());
    }
    let ech = rref(&aug);
    if ech.pivots.contains(&k) {
        let mut coords = vec![field.zero(); k];
        for (row, &p) in ech.pivots.iter().enumerate() {
            if p < k {
                coords[p] = ech.matrix.get(row, k).clone();
            }
        }
        let mut residual = target.to_vec();
        for (c, b) in coords.iter().zip(basis) {
            for (r, v) in residual.iter_mut().zip(b) {
                *r = &*r - &(c * v);
            }
        }
        return Ok(Expansion::NotInSpan { residual });
    }
    let mut coords = vec![field.zero(); k];
    for (row, &p) in ech.pivots.iter().enumerate() {
        coords[p] = ech.matrix.get(row, k).clone();
    }
    Ok(Expansion::Coordinates(coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rational;

    fn is_rref(e: &Echelon) -> bool {
        let m = &e.matrix;
        for (row, &p) in e.pivots.iter().enumerate() {
            if !m.get(row, p).is_one() {
                return false;
            }
            if (0..p).any(|c| !m.get(row, c).is_zero()) {
                return false;
            }
            if (0..m.rows()).any(|r| r != row && !m.get(r, p).is_zero()) {
                return false;
            }
        }
        (e.rank..m.rows()).all(|r| m.row(r).iter().all(Scalar::is_zero))
            && e.pivots.windows(2).all(|w| w[0] < w[1])
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(Q, 3);
        let e = rref(&id);
        assert_eq!(e.matrix, id);
        assert_eq!((e.rank, e.pivots.clone()), (3, vec![0, 1, 2]));

        let z = Matrix::zeros(Q, 2, 5);
        let e = rref(&z);
        assert_eq!(e.matrix, z);
        assert_eq!(e.rank, 0);
        assert!(e.pivots.is_empty());

        let m = Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]);
        let e = rref(&m);
        assert_eq!(e.matrix, Matrix::from_i64(Q, &[&[1, 2], &[0, 0]]));
        assert_eq!(e.rank, 1);
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&Matrix::identity(Q, 4));
        assert!(k.vectors.is_empty());
        assert_eq!(k.rank, 4);

        let k = kernel_basis(&Matrix::zeros(Q, 2, 3));
        assert_eq!(k.vectors.len(), 3);
        for (i, v) in k.vectors.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(x.is_one(), i == j);
            }
        }

        let k = kernel_basis(&Matrix::from_i64(Q, &[&[1, 2]]));
        assert_eq!(k.rank, 1);
        assert_eq!(k.vectors, vec![vec![Q.from_i64(-2), Q.from_i64(1)]]);
    }

    #[test]
    fn expansion_examples() {
        let e1 = vec![Q.one(), Q.zero()];
        let e2 = vec![Q.zero(), Q.one()];
        let t = vec![Q.from_i64(1), Q.from_i64(2)];
        assert_eq!(
            expand_in_basis(Q, &[e1.clone(), e2.clone()], &t).unwrap(),
            Expansion::Coordinates(vec![Q.from_i64(1), Q.from_i64(2)])
        );
        match expand_in_basis(Q, std::slice::from_ref(&e1), &e2).unwrap() {
            Expansion::NotInSpan { residual } => assert_eq!(residual, e2),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            expand_in_basis(Q, &[], &[Q.zero(), Q.zero()]).unwrap(),
            Expansion::Coordinates(vec![])
        );
        assert!(matches!(
            expand_in_basis(Q, &[vec![Q.one()]], &e1),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    fn f7_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(0i64..7, r * c).prop_map(move |v| {
                let f = FieldSpec::Prime(7);
                let rows = v
                    .chunks(c)
                    .map(|ch| ch.iter().map(|x| f.from_i64(*x)).collect())
                    .collect();
                Matrix::from_rows(f, rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in f7_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(k.rank + k.vectors.len(), m.cols());
            for v in &k.vectors {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
            }
            // independence: the kernel vectors stacked as rows have full rank
            if !k.vectors.is_empty() {
                let km = Matrix::from_rows(m.field(), k.vectors.clone()).unwrap();
                prop_assert_eq!(rank(&km), k.vectors.len());
            }
        }

        #[test]
        fn rref_is_idempotent(m in f7_matrix()) {
            let once = rref(&m);
            prop_assert!(is_rref(&once));
            let twice = rref(&once.matrix);
            prop_assert_eq!(&twice.matrix, &once.matrix);
            prop_assert_eq!(twice.pivots, once.pivots);
        }

        #[test]
        fn expansion_recovers_coefficients(m in f7_matrix(), seed in proptest::collection::vec(0i64..7, 6)) {
            let f = m.field();
            // Independent basis: rows of the rref.
            let e = rref(&m);
            let basis: Vec<Vec<Scalar>> = (0..e.rank).map(|r| e.matrix.row(r).to_vec()).collect();
            let coeffs: Vec<Scalar> = (0..basis.len()).map(|i| f.from_i64(seed[i % seed.len()])).collect();
            let mut target = vec![f.zero(); m.cols()];
            for (c, b) in coeffs.iter().zip(&basis) {
                for (t, x) in target.iter_mut().zip(b) {
                    *t = &*t + &(c * x);
                }
            }
            prop_assert_eq!(expand_in_basis(f, &basis, &target).unwrap(), Expansion::Coordinates(coeffs));
        }
    }
}
