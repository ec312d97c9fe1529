//! Dense matrices over a [`ScalarRing`] and exact Gaussian elimination.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::{Scalar, ScalarRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("linear solving needs a field, got {0}")]
    NotAField(ScalarRing),
    #[error("shape mismatch: expected {expected}, got {found}")]
    ShapeMismatch { expected: String, found: String },
    #[error("enumeration of {states} states exceeds the budget of {budget}")]
    EnumerationBudgetExceeded { states: u128, budget: u128 },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: ScalarRing,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.ring)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zero(ring: ScalarRing, rows: usize, cols: usize) -> Self {
        Matrix {
            ring,
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: ScalarRing, n: usize) -> Self {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: ScalarRing, rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::ShapeMismatch {
                    expected: format!("{cols} columns"),
                    found: format!("{} columns", row.len()),
                });
            }
            entries.extend(row);
        }
        Ok(Matrix {
            ring,
            rows: nrows,
            cols,
            entries,
        })
    }

    /// Matrix whose `i`-th column is `columns[i]`.
    pub fn from_columns(ring: ScalarRing, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zero(ring, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, x) in col.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
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

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        self.entries[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|r| {
                let mut acc = self.ring.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions");
        let mut out = Matrix::zero(self.ring, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + &(a * b);
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shapes");
        Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * k).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-self.ring.one())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column counts");
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix {
            ring: self.ring,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Reduced row echelon form and the pivot columns. Requires a field.
    pub fn rref(&self) -> Result<(Matrix, Vec<usize>), LinalgError> {
        if !self.ring.is_field() {
            return Err(LinalgError::NotAField(self.ring));
        }
        Ok(self.rref_over_fraction_field())
    }

    /// Elimination treating the entries as elements of the fraction field;
    /// integer matrices are eliminated over Q.
    fn rref_over_fraction_field(&self) -> (Matrix, Vec<usize>) {
        let ring = if self.ring == ScalarRing::Integers {
            ScalarRing::Rationals
        } else {
            self.ring
        };
        let mut m = Matrix {
            ring,
            ..self.clone()
        };
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            if p != lead {
                for k in 0..m.cols {
                    m.entries.swap(p * m.cols + k, lead * m.cols + k);
                }
            }
            let inv = m.get(lead, c).inv().expect("nonzero pivot");
            for k in c..m.cols {
                let v = m.get(lead, k) * &inv;
                m.set(lead, k, v);
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for k in c..m.cols {
                    let v = m.get(r, k) - &(&factor * m.get(lead, k));
                    m.set(r, k, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    /// Rank over the fraction field (so integer matrices are allowed).
    pub fn rank(&self) -> usize {
        self.rref_over_fraction_field().1.len()
    }

    /// Kernel basis over the fraction field, in reduced echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref_over_fraction_field();
        let ring = r.ring;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let raw: Vec<Vec<Scalar>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![ring.zero(); self.cols];
                v[f] = ring.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f);
                }
                v
            })
            .collect();
        canonical_span(ring, self.cols, raw)
    }
}

/// Reduced echelon basis of the span of `vectors` (length `dim` each).
pub fn canonical_span(ring: ScalarRing, dim: usize, vectors: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(ring, vectors).expect("uniform lengths");
    debug_assert_eq!(m.cols(), dim);
    let (r, pivots) = m.rref_over_fraction_field();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Solution set `particular + span(kernel_basis)` of a linear system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineSolutionSet {
    #[serde(skip)]
    ring: ScalarRing,
    dim: usize,
    /// `None` when the system is inconsistent.
    #[serde(serialize_with = "ser_opt_vec")]
    pub particular: Option<Vec<Scalar>>,
    #[serde(serialize_with = "ser_vecs")]
    pub kernel_basis: Vec<Vec<Scalar>>,
}

fn ser_opt_vec<S: serde::Serializer>(v: &Option<Vec<Scalar>>, s: S) -> Result<S::Ok, S::Error> {
    let strings: Option<Vec<String>> = v.as_ref().map(|v| v.iter().map(|x| x.to_string()).collect());
    strings.serialize(s)
}

fn ser_vecs<S: serde::Serializer>(v: &[Vec<Scalar>], s: S) -> Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = v.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
    strings.serialize(s)
}

impl AffineSolutionSet {
    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }

    /// Dimension of the solution set, `None` if empty.
    pub fn dimension(&self) -> Option<usize> {
        self.particular.as_ref().map(|_| self.kernel_basis.len())
    }

    /// Number of members over a prime field, `None` over infinite fields.
    pub fn cardinality(&self) -> Option<u128> {
        let p = self.ring.modulus()? as u128;
        Some(match self.dimension() {
            None => 0,
            Some(k) => p.checked_pow(k as u32).unwrap_or(u128::MAX),
        })
    }

    /// Whether `v` lies in the set.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        let Some(p) = &self.particular else {
            return false;
        };
        let diff: Vec<Scalar> = v.iter().zip(p).map(|(a, b)| a - b).collect();
        if self.kernel_basis.is_empty() {
            return diff.iter().all(Scalar::is_zero);
        }
        let mut rows = self.kernel_basis.clone();
        rows.push(diff);
        let m = Matrix::from_rows(self.ring, rows).expect("uniform");
        m.rank() == self.kernel_basis.len()
    }

    /// All members over a prime field, lexicographically sorted. Refuses if
    /// the number of states exceeds `budget`.
    pub fn enumerate(&self, budget: u128) -> Result<Vec<Vec<Scalar>>, LinalgError> {
        let Some(p) = self.ring.modulus() else {
            return Err(LinalgError::NotAField(self.ring));
        };
        let Some(base) = &self.particular else {
            return Ok(Vec::new());
        };
        let states = self.cardinality().unwrap_or(u128::MAX);
        if states > budget {
            return Err(LinalgError::EnumerationBudgetExceeded { states, budget });
        }
        let k = self.kernel_basis.len();
        let mut out = Vec::with_capacity(states as usize);
        let mut digits = vec![0u64; k];
        loop {
            let mut v = base.clone();
            for (d, basis) in digits.iter().zip(&self.kernel_basis) {
                if *d == 0 {
                    continue;
                }
                let c = self.ring.from_i64(*d as i64);
                for (x, b) in v.iter_mut().zip(basis) {
                    *x += &(&c * b);
                }
            }
            out.push(v);
            // odometer
            let mut i = 0;
            loop {
                if i == k {
                    out.sort();
                    return Ok(out);
                }
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }
}

/// Full solution set of `a · v = rhs` by exact elimination.
pub fn solve_affine(a: &Matrix, rhs: &[Scalar]) -> Result<AffineSolutionSet, LinalgError> {
    let ring = a.ring();
    if !ring.is_field() {
        return Err(LinalgError::NotAField(ring));
    }
    if rhs.len() != a.rows() {
        return Err(LinalgError::ShapeMismatch {
            expected: format!("right-hand side of length {}", a.rows()),
            found: format!("length {}", rhs.len()),
        });
    }
    let n = a.cols();
    let mut aug = Matrix::zero(ring, a.rows(), n + 1);
    for (r, value) in rhs.iter().enumerate() {
        for c in 0..n {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, n, value.clone());
    }
    let (red, pivots) = aug.rref()?;
    let kernel_basis = a.kernel_basis();
    if pivots.last() == Some(&n) {
        return Ok(AffineSolutionSet {
            ring,
            dim: n,
            particular: None,
            kernel_basis,
        });
    }
    let mut particular = vec![ring.zero(); n];
    for (row, &pc) in pivots.iter().enumerate() {
        particular[pc] = red.get(row, n).clone();
    }
    Ok(AffineSolutionSet {
        ring,
        dim: n,
        particular: Some(particular),
        kernel_basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> ScalarRing {
        ScalarRing::PrimeField(2)
    }

    fn v(ring: ScalarRing, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| ring.from_i64(x)).collect()
    }

    #[test]
    fn identity_system_has_unique_solution() {
        let q = ScalarRing::Rationals;
        let b = v(q, &[3, -1, 2]);
        let set = solve_affine(&Matrix::identity(q, 3), &b).unwrap();
        assert_eq!(set.particular, Some(b));
        assert!(set.kernel_basis.is_empty());
    }

    #[test]
    fn zero_system_is_everything() {
        let q = ScalarRing::Rationals;
        let set = solve_affine(&Matrix::zero(q, 2, 3), &v(q, &[0, 0])).unwrap();
        assert_eq!(set.particular, Some(v(q, &[0, 0, 0])));
        assert_eq!(set.kernel_basis, vec![v(q, &[1, 0, 0]), v(q, &[0, 1, 0]), v(q, &[0, 0, 1])]);
    }

    #[test]
    fn single_equation_over_f2() {
        let a = Matrix::from_rows(f2(), vec![v(f2(), &[1, 1])]).unwrap();
        let set = solve_affine(&a, &v(f2(), &[1])).unwrap();
        assert_eq!(set.particular, Some(v(f2(), &[1, 0])));
        assert_eq!(set.kernel_basis, vec![v(f2(), &[1, 1])]);
        assert_eq!(set.enumerate(16).unwrap(), vec![v(f2(), &[0, 1]), v(f2(), &[1, 0])]);
    }

    #[test]
    fn inconsistent_system_detected() {
        let q = ScalarRing::Rationals;
        let a = Matrix::from_rows(q, vec![v(q, &[1, 1]), v(q, &[2, 2])]).unwrap();
        let set = solve_affine(&a, &v(q, &[1, 3])).unwrap();
        assert!(!set.is_consistent());
        assert_eq!(set.dimension(), None);
    }

    #[test]
    fn integers_are_rejected_by_the_solver() {
        let z = ScalarRing::Integers;
        let err = solve_affine(&Matrix::identity(z, 1), &v(z, &[1])).unwrap_err();
        assert_eq!(err, LinalgError::NotAField(z));
    }

    #[test]
    fn apply_over_f2() {
        let m = Matrix::from_rows(f2(), vec![v(f2(), &[1, 1]), v(f2(), &[0, 1])]).unwrap();
        assert_eq!(m.mul_vec(&v(f2(), &[0, 1])), v(f2(), &[1, 1]));
    }

    #[test]
    fn enumeration_budget_enforced() {
        let set = solve_affine(&Matrix::zero(f2(), 1, 5), &v(f2(), &[0])).unwrap();
        assert!(matches!(
            set.enumerate(31),
            Err(LinalgError::EnumerationBudgetExceeded { states: 32, budget: 31 })
        ));
    }

    #[test]
    fn kernel_basis_is_reduced() {
        let q = ScalarRing::Rationals;
        // x + 2y - z = 0
        let a = Matrix::from_rows(q, vec![v(q, &[1, 2, -1])]).unwrap();
        let kb = a.kernel_basis();
        assert_eq!(kb, vec![v(q, &[1, 0, 1]), v(q, &[0, 1, 2])]);
    }
}
