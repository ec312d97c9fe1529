//! Finite-dimensional associative algebras given by structure constants,
//! their elements, and linear maps between them.
//!
//! Matrices of linear maps follow one convention throughout the crate:
//! entry `(k, i)` is the coefficient of output basis vector `k` in the
//! image of input basis vector `i`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalar::{Scalar, ScalarError, ScalarRing};
use crate::witness::fmt_coords;

pub const DEFAULT_DIM_CAP: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("associativity fails on basis ({}, {}, {}): (b{}b{})b{} = {} but b{}(b{}b{}) = {}",
        .i + 1, .j + 1, .k + 1, .i + 1, .j + 1, .k + 1, fmt_coords(.left), .i + 1, .j + 1, .k + 1, fmt_coords(.right))]
    AssociativityViolation {
        i: usize,
        j: usize,
        k: usize,
        left: Vec<Scalar>,
        right: Vec<Scalar>,
    },
    #[error("element of dimension {found} used with an algebra of dimension {expected}")]
    AlgebraMismatch { expected: usize, found: usize },
    #[error("linear map with domain dimension {expected} applied to a vector of dimension {found}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("scalars from {found} used with an algebra over {expected}")]
    RingMismatch { expected: ScalarRing, found: ScalarRing },
    #[error("dimension {dim} exceeds the cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("value {value} is not an element of {ring}")]
    ForeignScalar { value: String, ring: ScalarRing },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Coordinates of an algebra element in the fixed basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    coords: Vec<Scalar>,
}

impl Element {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Element { coords }
    }

    pub fn zero(ring: ScalarRing, dim: usize) -> Self {
        Element {
            coords: vec![ring.zero(); dim],
        }
    }

    pub fn basis(ring: ScalarRing, dim: usize, i: usize) -> Self {
        let mut e = Element::zero(ring, dim);
        e.coords[i] = ring.one();
        e
    }

    pub fn from_i64s(ring: ScalarRing, xs: &[i64]) -> Self {
        Element {
            coords: xs.iter().map(|&x| ring.from_i64(x)).collect(),
        }
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn coord(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }

    pub fn scale(&self, k: &Scalar) -> Element {
        Element {
            coords: self.coords.iter().map(|x| x * k).collect(),
        }
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "element dimensions");
        Element {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        assert_eq!(self.dim(), rhs.dim(), "element dimensions");
        Element {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_coords(&self.coords))
    }
}

/// An associative algebra `b_i b_j = Σ_k c[i][j][k] b_k`, not necessarily
/// unital.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    ring: ScalarRing,
    dim: usize,
    labels: Vec<String>,
    sc: Vec<Scalar>,
    // nonzero entries of b_i b_j, indexed by i * dim + j
    table: Vec<Vec<(usize, Scalar)>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("name", &self.name)
            .field("ring", &self.ring)
            .field("dim", &self.dim)
            .field("labels", &self.labels)
            .finish()
    }
}

impl Algebra {
    /// Builds an algebra from a dense `d × d × d` table, rejecting
    /// non-associative tables.
    pub fn new(
        name: impl Into<String>,
        ring: ScalarRing,
        sc: Vec<Vec<Vec<Scalar>>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, AlgebraError> {
        Self::with_cap(name, ring, sc, labels, DEFAULT_DIM_CAP)
    }

    pub fn with_cap(
        name: impl Into<String>,
        ring: ScalarRing,
        sc: Vec<Vec<Vec<Scalar>>>,
        labels: Option<Vec<String>>,
        cap: usize,
    ) -> Result<Self, AlgebraError> {
        let d = sc.len();
        for (i, plane) in sc.iter().enumerate() {
            if plane.len() != d {
                return Err(AlgebraError::BadShape(format!("sc[{}] has {} rows, expected {d}", i + 1, plane.len())));
            }
            for (j, row) in plane.iter().enumerate() {
                if row.len() != d {
                    return Err(AlgebraError::BadShape(format!(
                        "sc[{}][{}] has {} entries, expected {d}",
                        i + 1,
                        j + 1,
                        row.len()
                    )));
                }
            }
        }
        let entries = sc.into_iter().enumerate().flat_map(|(i, plane)| {
            plane
                .into_iter()
                .enumerate()
                .flat_map(move |(j, row)| row.into_iter().enumerate().map(move |(k, v)| (i, j, k, v)))
        });
        Self::from_entries(name, ring, d, entries, labels, cap)
    }

    /// Builds an algebra from `(i, j, k, value)` entries (0-based); omitted
    /// entries are zero and repeated entries are summed.
    pub fn from_entries(
        name: impl Into<String>,
        ring: ScalarRing,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        labels: Option<Vec<String>>,
        cap: usize,
    ) -> Result<Self, AlgebraError> {
        let alg = Self::from_entries_unchecked(name, ring, dim, entries, labels, cap)?;
        alg.check_associativity()?;
        Ok(alg)
    }

    fn from_entries_unchecked(
        name: impl Into<String>,
        ring: ScalarRing,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        labels: Option<Vec<String>>,
        cap: usize,
    ) -> Result<Self, AlgebraError> {
        if dim == 0 {
            return Err(AlgebraError::BadShape("dimension must be positive".into()));
        }
        if dim > cap {
            return Err(AlgebraError::DimensionCap { dim, cap });
        }
        let labels = match labels {
            Some(l) if l.len() != dim => {
                return Err(AlgebraError::BadShape(format!("{} basis labels for dimension {dim}", l.len())));
            }
            Some(l) => l,
            None => (1..=dim).map(|i| format!("b{i}")).collect(),
        };
        let mut sc = vec![ring.zero(); dim * dim * dim];
        for (i, j, k, v) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(AlgebraError::BadShape(format!(
                    "index ({}, {}, {}) out of range for dimension {dim}",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            if !ring.contains(&v) {
                return Err(AlgebraError::ForeignScalar {
                    value: v.to_string(),
                    ring,
                });
            }
            let slot = &mut sc[(i * dim + j) * dim + k];
            *slot += &v;
        }
        let table = (0..dim * dim)
            .map(|ij| {
                (0..dim)
                    .filter_map(|k| {
                        let v = &sc[ij * dim + k];
                        (!v.is_zero()).then(|| (k, v.clone()))
                    })
                    .collect()
            })
            .collect();
        Ok(Algebra {
            name: name.into(),
            ring,
            dim,
            labels,
            sc,
            table,
        })
    }

    /// The zero-multiplication algebra of the given dimension.
    pub fn zero_mult(name: impl Into<String>, ring: ScalarRing, dim: usize) -> Result<Self, AlgebraError> {
        Self::from_entries(name, ring, dim, std::iter::empty(), None, DEFAULT_DIM_CAP.max(dim))
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn sc(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.sc[(i * self.dim + j) * self.dim + k]
    }

    /// Nonzero entries `(i, j, k, c)` in lexicographic order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        let d = self.dim;
        self.table
            .iter()
            .enumerate()
            .flat_map(move |(ij, row)| row.iter().map(move |(k, v)| (ij / d, ij % d, *k, v)))
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.ring, self.dim)
    }

    pub fn basis(&self, i: usize) -> Element {
        Element::basis(self.ring, self.dim, i)
    }

    /// Validates coordinates against this algebra.
    pub fn element(&self, coords: Vec<Scalar>) -> Result<Element, AlgebraError> {
        let e = Element::new(coords);
        self.check_element(&e)?;
        Ok(e)
    }

    pub fn from_i64s(&self, xs: &[i64]) -> Result<Element, AlgebraError> {
        self.element(xs.iter().map(|&x| self.ring.from_i64(x)).collect())
    }

    pub fn check_element(&self, x: &Element) -> Result<(), AlgebraError> {
        if x.dim() != self.dim {
            return Err(AlgebraError::AlgebraMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        if let Some(bad) = x.coords().iter().find(|c| !self.ring.contains(c)) {
            return Err(AlgebraError::ForeignScalar {
                value: bad.to_string(),
                ring: self.ring,
            });
        }
        Ok(())
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        for e in [x, y] {
            if e.dim() != self.dim {
                return Err(AlgebraError::AlgebraMismatch {
                    expected: self.dim,
                    found: e.dim(),
                });
            }
        }
        Ok(self.product(x, y))
    }

    /// Product without dimension checks.
    pub fn product(&self, x: &Element, y: &Element) -> Element {
        let mut out = vec![self.ring.zero(); self.dim];
        for (i, xi) in x.coords().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords().iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let xy = xi * yj;
                for (k, c) in &self.table[i * self.dim + j] {
                    out[*k] += &(&xy * c);
                }
            }
        }
        Element::new(out)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Element {
        let mut out = self.zero();
        for (k, c) in &self.table[i * self.dim + j] {
            out.coords[*k] = c.clone();
        }
        out
    }

    /// Checks `(b_i b_j) b_k = b_i (b_j b_k)` for all basis triples.
    pub fn check_associativity(&self) -> Result<(), AlgebraError> {
        let basis: Vec<Element> = (0..self.dim).map(|i| self.basis(i)).collect();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.basis_product(i, j);
                for k in 0..self.dim {
                    let left = self.product(&ij, &basis[k]);
                    let right = self.product(&basis[i], &self.basis_product(j, k));
                    if left != right {
                        return Err(AlgebraError::AssociativityViolation {
                            i,
                            j,
                            k,
                            left: left.into_coords(),
                            right: right.into_coords(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// The map `b ↦ a b`.
    pub fn left_mul_map(&self, a: &Element) -> LinMap {
        LinMap::from_images(self.ring, self.dim, (0..self.dim).map(|i| self.product(a, &self.basis(i))).collect())
    }

    /// The map `b ↦ b a`.
    pub fn right_mul_map(&self, a: &Element) -> LinMap {
        LinMap::from_images(self.ring, self.dim, (0..self.dim).map(|i| self.product(&self.basis(i), a)).collect())
    }

    fn annihilator_of(&self, left: bool, right: bool) -> Vec<Element> {
        // unknowns: coordinates of a; one equation per (side, j, k)
        let d = self.dim;
        let mut rows = Vec::new();
        for j in 0..d {
            for k in 0..d {
                if left {
                    rows.push((0..d).map(|i| self.sc(i, j, k).clone()).collect());
                }
                if right {
                    rows.push((0..d).map(|i| self.sc(j, i, k).clone()).collect());
                }
            }
        }
        let m = Matrix::from_rows(self.ring, rows).expect("uniform rows");
        m.kernel_basis()
            .into_iter()
            .map(|v| {
                if self.ring == ScalarRing::Integers {
                    Element::new(primitive_integer(v))
                } else {
                    Element::new(v)
                }
            })
            .collect()
    }

    /// Basis of `{a | ab = ba = 0 for all b}`. Over the integers the basis
    /// vectors are primitive integer vectors spanning the same rational
    /// subspace.
    pub fn annihilator(&self) -> Vec<Element> {
        self.annihilator_of(true, true)
    }

    /// Basis of `{a | aA = 0}`.
    pub fn left_annihilator(&self) -> Vec<Element> {
        self.annihilator_of(true, false)
    }

    /// Basis of `{a | Aa = 0}`.
    pub fn right_annihilator(&self) -> Vec<Element> {
        self.annihilator_of(false, true)
    }

    /// `aA = 0 ⟹ a = 0` and `Aa = 0 ⟹ a = 0`.
    pub fn is_nondegenerate(&self) -> bool {
        self.left_annihilator().is_empty() && self.right_annihilator().is_empty()
    }

    /// Human-readable linear combination of basis labels.
    pub fn format_element(&self, x: &Element) -> String {
        format_combination(x.coords(), &self.labels)
    }
}

pub(crate) fn format_combination(coords: &[Scalar], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, label) in coords.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let text = c.to_string();
        let (neg, mag) = match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, text),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            out.push_str(&mag);
            out.push('*');
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn primitive_integer(v: Vec<Scalar>) -> Vec<Scalar> {
    let rats: Vec<BigRational> = v
        .into_iter()
        .map(|x| match x {
            Scalar::Rational(r) => r,
            Scalar::Residue { .. } => unreachable!("integer kernel"),
        })
        .collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let gcd = if gcd.is_zero() { BigInt::one() } else { gcd };
    ints.into_iter()
        .map(|x| Scalar::Rational(BigRational::from_integer(x / &gcd)))
        .collect()
}

/// A linear map between coordinate spaces, stored as its matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinMap {
    matrix: Matrix,
}

impl fmt::Debug for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinMap({:?})", self.matrix)
    }
}

impl LinMap {
    pub fn from_matrix(matrix: Matrix) -> Self {
        LinMap { matrix }
    }

    pub fn identity(ring: ScalarRing, dim: usize) -> Self {
        LinMap {
            matrix: Matrix::identity(ring, dim),
        }
    }

    pub fn zero(ring: ScalarRing, codomain: usize, domain: usize) -> Self {
        LinMap {
            matrix: Matrix::zero(ring, codomain, domain),
        }
    }

    /// The map sending basis vector `i` to `images[i]`.
    pub fn from_images(ring: ScalarRing, codomain: usize, images: Vec<Element>) -> Self {
        let cols: Vec<Vec<Scalar>> = images.into_iter().map(Element::into_coords).collect();
        LinMap {
            matrix: Matrix::from_columns(ring, codomain, &cols),
        }
    }

    pub fn from_fn(ring: ScalarRing, codomain: usize, domain: usize, f: impl Fn(usize) -> Element) -> Self {
        Self::from_images(ring, codomain, (0..domain).map(f).collect())
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn ring(&self) -> ScalarRing {
        self.matrix.ring()
    }

    pub fn domain_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn codomain_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.domain_dim() == self.codomain_dim() && self.matrix == Matrix::identity(self.ring(), self.domain_dim())
    }

    /// Image of basis vector `i`.
    pub fn image(&self, i: usize) -> Element {
        Element::new(self.matrix.column(i))
    }

    pub fn apply(&self, x: &Element) -> Result<Element, AlgebraError> {
        if x.dim() != self.domain_dim() {
            return Err(AlgebraError::DomainMismatch {
                expected: self.domain_dim(),
                found: x.dim(),
            });
        }
        Ok(self.at(x))
    }

    /// Application without dimension checks.
    pub fn at(&self, x: &Element) -> Element {
        Element::new(self.matrix.mul_vec(x.coords()))
    }

    /// `self ∘ g`: applies `g` first.
    pub fn compose(&self, g: &LinMap) -> Result<LinMap, AlgebraError> {
        if g.codomain_dim() != self.domain_dim() {
            return Err(AlgebraError::DomainMismatch {
                expected: self.domain_dim(),
                found: g.codomain_dim(),
            });
        }
        Ok(self.after(g))
    }

    /// Composition without dimension checks.
    pub fn after(&self, g: &LinMap) -> LinMap {
        LinMap {
            matrix: self.matrix.mul(&g.matrix),
        }
    }

    fn check_same_shape(&self, g: &LinMap) -> Result<(), AlgebraError> {
        if (self.domain_dim(), self.codomain_dim()) != (g.domain_dim(), g.codomain_dim()) {
            return Err(AlgebraError::DomainMismatch {
                expected: self.domain_dim(),
                found: g.domain_dim(),
            });
        }
        Ok(())
    }

    pub fn add(&self, g: &LinMap) -> Result<LinMap, AlgebraError> {
        self.check_same_shape(g)?;
        Ok(self.plus(g))
    }

    pub fn plus(&self, g: &LinMap) -> LinMap {
        LinMap {
            matrix: self.matrix.add(&g.matrix),
        }
    }

    pub fn minus(&self, g: &LinMap) -> LinMap {
        LinMap {
            matrix: self.matrix.add(&g.matrix.neg()),
        }
    }

    pub fn scale(&self, k: &Scalar) -> LinMap {
        LinMap {
            matrix: self.matrix.scale(k),
        }
    }

    /// `n`-fold composite of an endomorphism; `pow(0)` is the identity.
    pub fn pow(&self, n: u32) -> LinMap {
        let mut acc = LinMap::identity(self.ring(), self.domain_dim());
        for _ in 0..n {
            acc = self.after(&acc);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> ScalarRing {
        ScalarRing::PrimeField(2)
    }

    fn unital_line(ring: ScalarRing) -> Algebra {
        Algebra::from_entries("u", ring, 1, [(0, 0, 0, ring.one())], None, 64).unwrap()
    }

    #[test]
    fn zero_multiplication_line_is_accepted() {
        let a = Algebra::zero_mult("z", f2(), 1).unwrap();
        let u = a.basis(0);
        assert!(a.mul(&u, &u).unwrap().is_zero());
        assert_eq!(a.annihilator().len(), 1);
        assert!(!a.is_nondegenerate());
    }

    #[test]
    fn unital_line_is_nondegenerate() {
        let a = unital_line(ScalarRing::Rationals);
        assert!(a.is_nondegenerate());
        assert!(a.annihilator().is_empty());
    }

    #[test]
    fn rejects_non_associative_table() {
        // b1 b1 = b2, b1 b2 = b1, b2 b1 = 0
        let q = ScalarRing::Rationals;
        let err = Algebra::from_entries("bad", q, 2, [(0, 0, 1, q.one()), (0, 1, 0, q.one())], None, 64).unwrap_err();
        assert!(matches!(err, AlgebraError::AssociativityViolation { .. }));
    }

    #[test]
    fn rejects_bad_shape_and_cap() {
        let q = ScalarRing::Rationals;
        assert!(matches!(Algebra::new("x", q, vec![], None), Err(AlgebraError::BadShape(_))));
        let sc = vec![vec![vec![q.zero(); 2]; 2]; 1];
        assert!(matches!(Algebra::new("x", q, sc, None), Err(AlgebraError::BadShape(_))));
        let err = Algebra::from_entries("x", q, 3, std::iter::empty(), None, 2).unwrap_err();
        assert_eq!(err, AlgebraError::DimensionCap { dim: 3, cap: 2 });
    }

    #[test]
    fn mismatched_elements_are_rejected() {
        let a = unital_line(f2());
        let x = Element::zero(f2(), 2);
        assert_eq!(
            a.mul(&x, &a.basis(0)).unwrap_err(),
            AlgebraError::AlgebraMismatch { expected: 1, found: 2 }
        );
    }

    #[test]
    fn compose_applies_right_argument_first() {
        let q = ScalarRing::Rationals;
        let swap = LinMap::from_images(q, 2, vec![Element::from_i64s(q, &[0, 1]), Element::from_i64s(q, &[1, 0])]);
        let proj = LinMap::from_images(q, 2, vec![Element::from_i64s(q, &[1, 0]), Element::zero(q, 2)]);
        let x = Element::from_i64s(q, &[3, 5]);
        let pf = proj.compose(&swap).unwrap();
        assert_eq!(pf.apply(&x).unwrap(), Element::from_i64s(q, &[5, 0]));
        assert!(swap.compose(&LinMap::zero(q, 2, 2)).unwrap().is_zero());
    }

    #[test]
    fn integer_annihilator_is_primitive() {
        let z = ScalarRing::Integers;
        let a = Algebra::zero_mult("z", z, 2).unwrap();
        let ann = a.annihilator();
        assert_eq!(ann, vec![Element::from_i64s(z, &[1, 0]), Element::from_i64s(z, &[0, 1])]);
    }

    #[test]
    fn formatting_uses_labels() {
        let q = ScalarRing::Rationals;
        let labels = vec!["x".to_string(), "y".to_string()];
        let coords = vec![q.from_i64(-1), q.from_fraction(2, 3).unwrap()];
        assert_eq!(format_combination(&coords, &labels), "-x + 2/3*y");
        assert_eq!(format_combination(&[q.zero(), q.zero()], &labels), "0");
    }
}
