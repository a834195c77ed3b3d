//! Dense linear algebra over a prime field `𝔽_ℓ` for small dimensions.
//!
//! Subspaces are stored as reduced row-echelon bases, so equality of subspaces
//! is structural.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::factored_real::primes;

pub type Vector = Vec<u64>;

fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Square or rectangular matrix with entries in `0..ell`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    pub ell: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix(mod {}) {:?}", self.ell, self.to_rows())
    }
}

impl Matrix {
    pub fn zero(ell: u64, rows: usize, cols: usize) -> Self {
        assert!(primes::is_prime(ell), "{ell} is not prime");
        Matrix {
            ell,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(ell: u64, n: usize) -> Self {
        let mut m = Self::zero(ell, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Entries are reduced mod `ell`; negative inputs are allowed.
    pub fn from_rows(ell: u64, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        let mut m = Self::zero(ell, r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x.rem_euclid(ell as i64) as u64);
            }
        }
        m
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Self {
        assert!(a.rows == b.rows && c.rows == d.rows && a.cols == c.cols && b.cols == d.cols);
        let mut m = Self::zero(a.ell, a.rows + c.rows, a.cols + b.cols);
        for (blk, r0, c0) in [
            (a, 0, 0),
            (b, 0, a.cols),
            (c, a.rows, 0),
            (d, a.rows, a.cols),
        ] {
            for i in 0..blk.rows {
                for j in 0..blk.cols {
                    m.set(r0 + i, c0 + j, blk.get(i, j));
                }
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = x % self.ell;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        assert_eq!(self.ell, other.ell, "field mismatch");
        let p = self.ell;
        let mut out = Matrix::zero(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.get(k, j)) % p;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = (*x + y) % self.ell;
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = (*x + self.ell - y) % self.ell;
        }
        out
    }

    /// `self - I`.
    pub fn minus_identity(&self) -> Matrix {
        assert!(self.is_square());
        self.sub(&Matrix::identity(self.ell, self.rows))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.ell, self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.ell, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[u64]) -> Vector {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum::<u64>() % self.ell)
            .collect()
    }

    pub fn rank(&self) -> usize {
        rref(self.ell, self.to_rows()).len()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let p = self.ell;
        let mut a: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| u64::from(i == j)));
                r
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r][col] != 0)?;
            a.swap(col, pivot);
            let inv = inv_mod(a[col][col], p);
            for x in a[col].iter_mut() {
                *x = *x * inv % p;
            }
            for r in 0..n {
                if r != col && a[r][col] != 0 {
                    let f = a[r][col];
                    for c in 0..2 * n {
                        a[r][c] = (a[r][c] + p * p - f * a[col][c]) % p;
                    }
                }
            }
        }
        let mut out = Matrix::zero(p, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, a[i][n + j]);
            }
        }
        Some(out)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Conjugate `P M P⁻¹`.
    pub fn conjugate_by(&self, p: &Matrix) -> Matrix {
        let inv = p.inverse().expect("conjugating matrix must be invertible");
        p.mul(self).mul(&inv)
    }

    /// Null space `{v : M v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let p = self.ell;
        let rows = rref(p, self.to_rows());
        let pivots: Vec<usize> = rows
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).unwrap())
            .collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (r, &pc) in rows.iter().zip(&pivots) {
                v[pc] = (p - r[free]) % p;
            }
            basis.push(v);
        }
        Subspace::span(p, self.cols, basis)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.ell, self.rows, self.transpose().to_rows())
    }
}

/// Reduced row echelon form; zero rows dropped.
pub fn rref(p: u64, mut rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut lead = 0;
    for col in 0..cols {
        let Some(pivot) = (lead..rows.len()).find(|&r| !rows[r][col].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(lead, pivot);
        let inv = inv_mod(rows[lead][col] % p, p);
        for x in rows[lead].iter_mut() {
            *x = *x % p * inv % p;
        }
        for r in 0..rows.len() {
            if r != lead && !rows[r][col].is_multiple_of(p) {
                let f = rows[r][col] % p;
                for c in 0..cols {
                    rows[r][c] = (rows[r][c] % p + p * p - f * rows[lead][c]) % p;
                }
            }
        }
        lead += 1;
        if lead == rows.len() {
            break;
        }
    }
    rows.truncate(lead);
    rows
}

/// Subspace of `𝔽_ℓ^n` with a reduced row-echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    pub ell: u64,
    pub ambient: usize,
    basis: Vec<Vector>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(mod {}, n={}) {:?}",
            self.ell, self.ambient, self.basis
        )
    }
}

impl Subspace {
    pub fn span(ell: u64, ambient: usize, vectors: Vec<Vector>) -> Self {
        assert!(
            vectors.iter().all(|v| v.len() == ambient),
            "vector length mismatch"
        );
        let basis = if vectors.is_empty() {
            vec![]
        } else {
            rref(ell, vectors)
        };
        Subspace {
            ell,
            ambient,
            basis,
        }
    }

    pub fn zero(ell: u64, ambient: usize) -> Self {
        Self::span(ell, ambient, vec![])
    }

    pub fn full(ell: u64, ambient: usize) -> Self {
        Matrix::identity(ell, ambient).image()
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ell: u64, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vecs = indices
            .into_iter()
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Self::span(ell, ambient, vecs)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains_vector(&self, v: &[u64]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rref(self.ell, rows).len() == self.dim()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains_vector(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.ell, self.ambient, v)
    }

    /// Intersection via the kernel of `[A^T | -B^T]`.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Subspace::zero(self.ell, self.ambient);
        }
        let p = self.ell;
        let mut m = Matrix::zero(p, self.ambient, a + b);
        for i in 0..self.ambient {
            for (j, v) in self.basis.iter().enumerate() {
                m.set(i, j, v[i]);
            }
            for (j, v) in other.basis.iter().enumerate() {
                m.set(i, a + j, (p - v[i]) % p);
            }
        }
        let vecs = m
            .kernel()
            .basis
            .iter()
            .map(|coeffs| {
                let mut out = vec![0u64; self.ambient];
                for (c, v) in coeffs[..a].iter().zip(&self.basis) {
                    for (o, x) in out.iter_mut().zip(v) {
                        *o = (*o + c * x) % p;
                    }
                }
                out
            })
            .collect();
        Subspace::span(p, self.ambient, vecs)
    }

    /// `M(self)`.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols, self.ambient);
        Subspace::span(
            self.ell,
            m.rows,
            self.basis.iter().map(|v| m.apply(v)).collect(),
        )
    }

    pub fn is_stable_under(&self, m: &Matrix) -> bool {
        self.basis.iter().all(|v| self.contains_vector(&m.apply(v)))
    }

    /// Whether `m` fixes every vector of the subspace.
    pub fn is_fixed_by(&self, m: &Matrix) -> bool {
        self.basis.iter().all(|v| m.apply(v) == *v)
    }

    /// Number of elements, `ℓ^dim`.
    pub fn cardinality(&self) -> u64 {
        self.ell.pow(self.dim() as u32)
    }

    /// Every vector of the subspace.
    pub fn vectors(&self) -> Vec<Vector> {
        let mut out = vec![vec![0u64; self.ambient]];
        for b in &self.basis {
            let mut next = Vec::with_capacity(out.len() * self.ell as usize);
            for v in &out {
                for c in 0..self.ell {
                    next.push(
                        v.iter()
                            .zip(b)
                            .map(|(x, y)| (x + c * y) % self.ell)
                            .collect(),
                    );
                }
            }
            out = next;
        }
        out
    }
}

/// All vectors of `𝔽_ℓ^n`.
pub fn all_vectors(ell: u64, n: usize) -> Vec<Vector> {
    Subspace::full(ell, n).vectors()
}

/// Every subspace of `𝔽_ℓ^n`, enumerated as distinct RREF bases.
pub fn all_subspaces(ell: u64, n: usize) -> Vec<Subspace> {
    let mut layer = vec![Subspace::zero(ell, n)];
    let mut out = layer.clone();
    let vectors = all_vectors(ell, n);
    for _ in 0..n {
        let mut next = std::collections::HashSet::new();
        for s in &layer {
            for v in &vectors {
                if !s.contains_vector(v) {
                    next.insert(s.sum(&Subspace::span(ell, n, vec![v.clone()])));
                }
            }
        }
        layer = next.into_iter().collect();
        out.extend(layer.iter().cloned());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Gaussian binomial coefficient, the number of `k`-dimensional subspaces.
    fn gaussian(n: u32, k: u32, q: u64) -> u64 {
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num *= q.pow(n - i) - 1;
            den *= q.pow(i + 1) - 1;
        }
        num / den
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for (q, n) in [(2u64, 3usize), (3, 2), (3, 3), (5, 2)] {
            let subs = all_subspaces(q, n);
            for k in 0..=n {
                let c = subs.iter().filter(|s| s.dim() == k).count() as u64;
                assert_eq!(c, gaussian(n as u32, k as u32, q), "q={q} n={n} k={k}");
            }
        }
    }

    #[test]
    fn inverse_round_trips() {
        let m = Matrix::from_rows(5, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let sing = Matrix::from_rows(5, &[vec![1, 2], vec![2, 4]]);
        assert!(sing.inverse().is_none());
        assert_eq!(sing.rank(), 1);
    }

    #[test]
    fn kernel_and_image_dimensions() {
        let n = Matrix::from_rows(3, &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        assert_eq!(n.kernel().dim(), 1);
        assert_eq!(n.image().dim(), 2);
        assert!(n.kernel().contains_vector(&[1, 0, 0]));
    }

    #[test]
    fn intersection_brute_force() {
        let subs = all_subspaces(3, 3);
        let vecs = all_vectors(3, 3);
        for a in subs.iter().step_by(3) {
            for b in subs.iter().step_by(5) {
                let i = a.intersection(b);
                let count = vecs
                    .iter()
                    .filter(|v| a.contains_vector(v) && b.contains_vector(v))
                    .count();
                assert_eq!(i.cardinality() as usize, count);
                assert_eq!(a.dim() + b.dim(), i.dim() + a.sum(b).dim());
            }
        }
    }

    #[test]
    fn block_matrices() {
        let i = Matrix::identity(5, 2);
        let z = Matrix::zero(5, 2, 2);
        let s = Matrix::block(&i, &i, &z, &i);
        assert_eq!(s.rows, 4);
        assert!(s.minus_identity().mul(&s.minus_identity()).is_zero());
        assert_eq!(
            s.minus_identity().kernel(),
            Subspace::coordinate(5, 4, [0, 1])
        );
    }
}
