use std::fmt;

use super::howell::Submodule;
use super::zm::Zm;
use crate::error::{Error, Result};

/// A Z/m-linear map `(Z/m)^cols -> (Z/m)^rows`, stored row-major.
///
/// Column `j` is the image of the domain basis vector `e_j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    ring: Zm,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl LinearMap {
    pub fn new(ring: Zm, rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::shape(format!(
                "{rows}x{cols} map needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let entries = entries.into_iter().map(|v| ring.reduce(v)).collect();
        Ok(Self {
            ring,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(ring: Zm, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(ring.reduce(f(r, c)));
            }
        }
        Self {
            ring,
            rows,
            cols,
            entries,
        }
    }

    /// Builds the map whose `j`-th column is `columns[j]`.
    pub fn from_columns(ring: Zm, codomain: usize, columns: &[Vec<u64>]) -> Result<Self> {
        if let Some(bad) = columns.iter().position(|c| c.len() != codomain) {
            return Err(Error::shape(format!(
                "column {bad} has length {} but codomain rank is {codomain}",
                columns[bad].len()
            )));
        }
        Ok(Self::from_fn(ring, codomain, columns.len(), |r, c| columns[c][r]))
    }

    pub fn zero(ring: Zm, rows: usize, cols: usize) -> Self {
        Self {
            ring,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(ring: Zm, n: usize) -> Self {
        Self::from_fn(ring, n, n, |r, c| u64::from(r == c))
    }

    pub fn ring(&self) -> Zm {
        self.ring
    }

    pub fn domain_rank(&self) -> usize {
        self.cols
    }

    pub fn codomain_rank(&self) -> usize {
        self.rows
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    /// Applies the map to a coordinate vector.
    ///
    /// Panics if `v` does not have the domain rank.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols, "vector length does not match domain rank");
        let z = self.ring;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| z.mul_add(acc, a, b))
            })
            .collect()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> LinearMap {
        assert_eq!(
            self.cols, inner.rows,
            "cannot compose {}x{} after {}x{}",
            self.rows, self.cols, inner.rows, inner.cols
        );
        let z = self.ring;
        Self::from_fn(z, self.rows, inner.cols, |r, c| {
            (0..self.cols).fold(0, |acc, k| z.mul_add(acc, self.get(r, k), inner.get(k, c)))
        })
    }

    fn zip_with(&self, other: &LinearMap, f: impl Fn(u64, u64) -> u64) -> LinearMap {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "map shapes differ"
        );
        LinearMap {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        let z = self.ring;
        self.zip_with(other, |a, b| z.add(a, b))
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        let z = self.ring;
        self.zip_with(other, |a, b| z.sub(a, b))
    }

    pub fn neg(&self) -> LinearMap {
        let z = self.ring;
        LinearMap {
            entries: self.entries.iter().map(|&a| z.neg(a)).collect(),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> LinearMap {
        Self::from_fn(self.ring, self.cols, self.rows, |r, c| self.get(c, r))
    }

    /// `[top; bottom]`: the map `v ↦ (top(v), bottom(v))`.
    pub fn stack(top: &LinearMap, bottom: &LinearMap) -> LinearMap {
        assert_eq!(top.cols, bottom.cols, "stacked maps need a common domain");
        let mut entries = top.entries.clone();
        entries.extend_from_slice(&bottom.entries);
        LinearMap {
            ring: top.ring,
            rows: top.rows + bottom.rows,
            cols: top.cols,
            entries,
        }
    }

    /// `diag(a, b)`: `(u, v) ↦ (a(u), b(v))`.
    pub fn block_diagonal(a: &LinearMap, b: &LinearMap) -> LinearMap {
        Self::from_fn(a.ring, a.rows + b.rows, a.cols + b.cols, |r, c| {
            match (r < a.rows, c < a.cols) {
                (true, true) => a.get(r, c),
                (false, false) => b.get(r - a.rows, c - a.cols),
                _ => 0,
            }
        })
    }

    pub fn kernel(&self) -> Submodule {
        super::howell::kernel(self)
    }

    pub fn image(&self) -> Submodule {
        Submodule::span(self.ring, self.rows, &self.columns())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.ring, self.rows)
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearMap[Z/{}; {}x{}](", self.ring.modulus(), self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", self.row(r))?;
        }
        write!(f, ")")
    }
}

/// Element-wise arithmetic on coordinate vectors.
pub mod vec_ops {
    use super::Zm;

    pub fn add(z: Zm, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| z.add(x, y)).collect()
    }

    pub fn sub(z: Zm, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| z.sub(x, y)).collect()
    }

    pub fn neg(z: Zm, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&x| z.neg(x)).collect()
    }

    pub fn scale(z: Zm, k: u64, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&x| z.mul(k, x)).collect()
    }

    /// `a + k*b` in place.
    pub fn axpy(z: Zm, a: &mut [u64], k: u64, b: &[u64]) {
        for (x, &y) in a.iter_mut().zip(b) {
            *x = z.mul_add(*x, k, y);
        }
    }

    pub fn is_zero(a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn unit_vector(n: usize, i: usize) -> Vec<u64> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }

    pub fn concat(a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut v = a.to_vec();
        v.extend_from_slice(b);
        v
    }
}

/// Iterates over every vector of `(Z/m)^n` in lexicographic order
/// (first coordinate most significant).
pub fn all_vectors(z: Zm, n: usize) -> impl Iterator<Item = Vec<u64>> {
    let m = z.modulus();
    let total = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    (0..total).map(move |idx| index_to_vector(m, n, idx))
}

pub fn index_to_vector(m: u64, n: usize, mut idx: u128) -> Vec<u64> {
    let mut v = vec![0u64; n];
    for slot in v.iter_mut().rev() {
        *slot = (idx % m as u128) as u64;
        idx /= m as u128;
    }
    v
}
