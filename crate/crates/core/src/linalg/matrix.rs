use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::{abs_max, abs_p, PadicAbs, Prime, Rational};

/// A vector in `Q_p^d` with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<Rational>);

impl Vector {
    pub fn new(entries: Vec<Rational>) -> Self {
        Vector(entries)
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Vector(entries.iter().map(|&x| Rational::from_integer(x)).collect())
    }

    pub fn zeros(d: usize) -> Self {
        Vector(vec![Rational::zero(); d])
    }

    /// The `i`-th standard basis vector of length `d`.
    pub fn basis(d: usize, i: usize) -> Self {
        let mut v = Vector::zeros(d);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Vector {
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn negate(&self) -> Vector {
        Vector(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        check_len(self.dim(), other.dim())?;
        Ok(Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }
}

impl Index<usize> for Vector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// The symmetric bilinear form `sum_j x_j y_j` (no conjugation).
pub fn inner_product(x: &Vector, y: &Vector) -> Result<Rational> {
    check_len(x.dim(), y.dim())?;
    Ok(x.iter().zip(y.iter()).map(|(a, b)| a * b).sum())
}

/// Max-norm `max_j |x_j|_p`. The empty vector has norm `Zero`.
pub fn sup_norm(x: &Vector, p: Prime) -> PadicAbs {
    abs_max(x.iter().map(|c| abs_p(c, p))).unwrap_or(PadicAbs::Zero)
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Rational::one())
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            check_len(c, row.len())?;
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    /// If the matrix equals `b * I`, returns `b`.
    pub fn as_scalar(&self) -> Option<Rational> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let b = self.get(0, 0);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expected_zero = i != j;
                let x = self.get(i, j);
                if (expected_zero && !x.is_zero()) || (!expected_zero && x != b) {
                    return None;
                }
            }
        }
        Some(b.clone())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        check_len(self.cols, other.rows)?;
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] += &(a * other.get(k, j));
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        check_len(self.cols, x.dim())?;
        Ok(Vector::new(
            (0..self.rows)
                .map(|i| self.row(i).iter().zip(x.iter()).map(|(a, b)| a * b).sum())
                .collect(),
        ))
    }

    pub fn sub_scalar(&self, c: &Rational) -> Result<Matrix> {
        self.require_square()?;
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = out.get(i, i) - c;
            out.set(i, i, v);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        check_len(self.rows, other.rows)?;
        check_len(self.cols, other.cols)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub(crate) fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Rational>>::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

fn common_dim(vectors: &[Vector]) -> Result<usize> {
    let first = vectors.first().ok_or(Error::NoVectors)?;
    let d = first.dim();
    for v in vectors {
        check_len(d, v.dim())?;
    }
    Ok(d)
}

/// Frame operator `S = sum_j tau_j tau_j^T` as a `d x d` matrix.
pub fn frame_operator(vectors: &[Vector]) -> Result<Matrix> {
    let d = common_dim(vectors)?;
    let mut s = Matrix::zeros(d, d);
    for v in vectors {
        for i in 0..d {
            if v[i].is_zero() {
                continue;
            }
            for j in i..d {
                let idx = i * d + j;
                s.data[idx] += &(&v[i] * &v[j]);
            }
        }
    }
    for i in 0..d {
        for j in 0..i {
            let x = s.get(j, i).clone();
            s.set(i, j, x);
        }
    }
    Ok(s)
}

/// Gram matrix `G_jk = <tau_j, tau_k>`.
pub fn gram_matrix(vectors: &[Vector]) -> Result<Matrix> {
    common_dim(vectors)?;
    let n = vectors.len();
    let mut g = Matrix::zeros(n, n);
    for j in 0..n {
        for k in j..n {
            let ip = inner_product(&vectors[j], &vectors[k])?;
            g.set(k, j, ip.clone());
            g.set(j, k, ip);
        }
    }
    Ok(g)
}

pub fn trace(m: &Matrix) -> Result<Rational> {
    m.require_square()?;
    Ok((0..m.rows).map(|i| m.get(i, i)).sum())
}

/// `Tr(M^2)`. Symmetric input takes the sum-of-squares shortcut.
pub fn trace_of_square(m: &Matrix) -> Result<Rational> {
    m.require_square()?;
    if m.is_symmetric() {
        return Ok(m.data.iter().map(Rational::square).sum());
    }
    let n = m.rows;
    let mut acc = Rational::zero();
    for i in 0..n {
        for k in 0..n {
            acc += &(m.get(i, k) * m.get(k, i));
        }
    }
    Ok(acc)
}
