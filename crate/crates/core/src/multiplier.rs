//! Double operators, the bimultiplication and double-homothetism axioms,
//! the multiplier product, and homothetic data.
//!
//! A double operator `σ` is a pair of linear maps: `left` is `a ↦ aσ` and
//! `right` is `a ↦ σa`. All axioms are checked on basis elements, which
//! suffices by bilinearity.

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element, LinMap};
use crate::linalg::{solve_affine, AffineSolutionSet, LinalgError, Matrix};
use crate::scalar::Scalar;
use crate::witness::{Verdict, Witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DatumError {
    #[error("not a double homothetism: {0}")]
    NotHomothetism(Witness),
    #[error("sigma does not commute with s: {0}")]
    CommutationFails(Witness),
    #[error("sigma^2 = sigma + s fails: {0}")]
    QuadraticFails(Witness),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultiplierError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DoubleOperator {
    /// `a ↦ aσ`
    pub left: LinMap,
    /// `a ↦ σa`
    pub right: LinMap,
}

impl DoubleOperator {
    pub fn new(alg: &Algebra, left: LinMap, right: LinMap) -> Result<Self, AlgebraError> {
        let d = alg.dim();
        for m in [&left, &right] {
            if m.domain_dim() != d || m.codomain_dim() != d {
                return Err(AlgebraError::DomainMismatch {
                    expected: d,
                    found: if m.domain_dim() != d { m.domain_dim() } else { m.codomain_dim() },
                });
            }
            if m.ring() != alg.ring() {
                return Err(AlgebraError::RingMismatch {
                    expected: alg.ring(),
                    found: m.ring(),
                });
            }
        }
        Ok(DoubleOperator { left, right })
    }

    pub fn identity(alg: &Algebra) -> Self {
        let id = LinMap::identity(alg.ring(), alg.dim());
        DoubleOperator {
            left: id.clone(),
            right: id,
        }
    }

    pub fn zero(alg: &Algebra) -> Self {
        let z = LinMap::zero(alg.ring(), alg.dim(), alg.dim());
        DoubleOperator {
            left: z.clone(),
            right: z,
        }
    }

    pub fn dim(&self) -> usize {
        self.left.domain_dim()
    }

    /// `aσ`
    pub fn act_right_of(&self, a: &Element) -> Element {
        self.left.at(a)
    }

    /// `σa`
    pub fn act_left_of(&self, a: &Element) -> Element {
        self.right.at(a)
    }

    pub fn plus(&self, other: &DoubleOperator) -> DoubleOperator {
        DoubleOperator {
            left: self.left.plus(&other.left),
            right: self.right.plus(&other.right),
        }
    }

    pub fn scale(&self, k: &Scalar) -> DoubleOperator {
        DoubleOperator {
            left: self.left.scale(k),
            right: self.right.scale(k),
        }
    }

    /// Both matrices flattened row-major, `left` first.
    pub fn to_vector(&self) -> Vec<Scalar> {
        let d = self.dim();
        let mut v = Vec::with_capacity(2 * d * d);
        for m in [&self.left, &self.right] {
            for r in 0..d {
                v.extend(m.matrix().row(r).iter().cloned());
            }
        }
        v
    }

    pub fn from_vector(alg: &Algebra, v: &[Scalar]) -> DoubleOperator {
        let d = alg.dim();
        assert_eq!(v.len(), 2 * d * d, "vector length");
        let block = |off: usize| {
            let rows = (0..d).map(|r| v[off + r * d..off + (r + 1) * d].to_vec()).collect();
            LinMap::from_matrix(Matrix::from_rows(alg.ring(), rows).expect("square"))
        };
        DoubleOperator {
            left: block(0),
            right: block(d * d),
        }
    }
}

/// Checks `σ(ab) = (σa)b`, `(ab)σ = a(bσ)` and `a(σb) = (aσ)b` on all basis
/// pairs.
pub fn is_bimultiplication(alg: &Algebra, sigma: &DoubleOperator) -> Verdict {
    let d = alg.dim();
    for i in 0..d {
        let bi = alg.basis(i);
        for j in 0..d {
            let bj = alg.basis(j);
            let ij = alg.basis_product(i, j);
            let l = sigma.act_left_of(&ij);
            let r = alg.product(&sigma.act_left_of(&bi), &bj);
            if l != r {
                return Err(Witness::new("sigma(ab) = (sigma a)b", vec![i, j], l.into_coords(), r.into_coords()));
            }
            let l = sigma.act_right_of(&ij);
            let r = alg.product(&bi, &sigma.act_right_of(&bj));
            if l != r {
                return Err(Witness::new("(ab)sigma = a(b sigma)", vec![i, j], l.into_coords(), r.into_coords()));
            }
            let l = alg.product(&bi, &sigma.act_left_of(&bj));
            let r = alg.product(&sigma.act_right_of(&bi), &bj);
            if l != r {
                return Err(Witness::new("a(sigma b) = (a sigma)b", vec![i, j], l.into_coords(), r.into_coords()));
            }
        }
    }
    Ok(())
}

/// Bimultiplication plus `σ(aσ) = (σa)σ` on all basis elements.
pub fn is_double_homothetism(alg: &Algebra, sigma: &DoubleOperator) -> Verdict {
    is_bimultiplication(alg, sigma)?;
    for i in 0..alg.dim() {
        let bi = alg.basis(i);
        let l = sigma.act_left_of(&sigma.act_right_of(&bi));
        let r = sigma.act_right_of(&sigma.act_left_of(&bi));
        if l != r {
            return Err(Witness::new("sigma(a sigma) = (sigma a)sigma", vec![i], l.into_coords(), r.into_coords()));
        }
    }
    Ok(())
}

/// The inner homothetism of `a`: `b ↦ ba` on the left slot and `b ↦ ab` on
/// the right slot.
pub fn inner(alg: &Algebra, a: &Element) -> Result<DoubleOperator, AlgebraError> {
    alg.check_element(a)?;
    Ok(DoubleOperator {
        left: alg.right_mul_map(a),
        right: alg.left_mul_map(a),
    })
}

/// `σ1σ2 = (σ2.left ∘ σ1.left, σ1.right ∘ σ2.right)`.
pub fn mult_product(s1: &DoubleOperator, s2: &DoubleOperator) -> Result<DoubleOperator, AlgebraError> {
    if s1.dim() != s2.dim() {
        return Err(AlgebraError::AlgebraMismatch {
            expected: s1.dim(),
            found: s2.dim(),
        });
    }
    Ok(DoubleOperator {
        left: s2.left.after(&s1.left),
        right: s1.right.after(&s2.right),
    })
}

/// A double homothetism `σ` with `s` such that `σs = sσ` and `σ² = σ + s̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotheticDatum {
    sigma: DoubleOperator,
    s: Element,
}

impl HomotheticDatum {
    pub fn sigma(&self) -> &DoubleOperator {
        &self.sigma
    }

    pub fn s(&self) -> &Element {
        &self.s
    }

    /// Skips the axiom checks; meant for building deliberately broken
    /// extensions.
    pub fn new_unchecked(sigma: DoubleOperator, s: Element) -> Self {
        HomotheticDatum { sigma, s }
    }
}

/// Checks the datum axioms, reporting the first failure.
pub fn check_datum(alg: &Algebra, sigma: &DoubleOperator, s: &Element) -> Result<(), DatumError> {
    alg.check_element(s)?;
    if sigma.dim() != alg.dim() {
        return Err(AlgebraError::AlgebraMismatch {
            expected: alg.dim(),
            found: sigma.dim(),
        }
        .into());
    }
    is_double_homothetism(alg, sigma).map_err(DatumError::NotHomothetism)?;
    let l = sigma.act_left_of(s);
    let r = sigma.act_right_of(s);
    if l != r {
        return Err(DatumError::CommutationFails(Witness::new(
            "sigma s = s sigma",
            vec![],
            l.into_coords(),
            r.into_coords(),
        )));
    }
    for i in 0..alg.dim() {
        let bi = alg.basis(i);
        let l = sigma.act_right_of(&sigma.act_right_of(&bi));
        let r = &sigma.act_right_of(&bi) + &alg.product(&bi, s);
        if l != r {
            return Err(DatumError::QuadraticFails(Witness::new(
                "a sigma^2 = a sigma + as",
                vec![i],
                l.into_coords(),
                r.into_coords(),
            )));
        }
        let l = sigma.act_left_of(&sigma.act_left_of(&bi));
        let r = &sigma.act_left_of(&bi) + &alg.product(s, &bi);
        if l != r {
            return Err(DatumError::QuadraticFails(Witness::new(
                "sigma^2 a = sigma a + sa",
                vec![i],
                l.into_coords(),
                r.into_coords(),
            )));
        }
    }
    Ok(())
}

pub fn make_datum(alg: &Algebra, sigma: DoubleOperator, s: Element) -> Result<HomotheticDatum, DatumError> {
    check_datum(alg, &sigma, &s)?;
    Ok(HomotheticDatum { sigma, s })
}

/// The space of all bimultiplications as the solution set of a linear
/// system in the `2d²` matrix entries (layout of [`DoubleOperator::to_vector`]).
pub fn bimultiplication_space(alg: &Algebra) -> Result<AffineSolutionSet, MultiplierError> {
    let d = alg.dim();
    let ring = alg.ring();
    let n = 2 * d * d;
    let lv = |k: usize, i: usize| k * d + i;
    let rv = |k: usize, i: usize| d * d + k * d + i;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for t in 0..d {
                // R(b_i b_j) - R(b_i) b_j
                let mut row = vec![ring.zero(); n];
                for k in 0..d {
                    row[rv(t, k)] += alg.sc(i, j, k);
                    row[rv(k, i)] -= alg.sc(k, j, t);
                }
                rows.push(row);
                // L(b_i b_j) - b_i L(b_j)
                let mut row = vec![ring.zero(); n];
                for k in 0..d {
                    row[lv(t, k)] += alg.sc(i, j, k);
                    row[lv(k, j)] -= alg.sc(i, k, t);
                }
                rows.push(row);
                // b_i R(b_j) - L(b_i) b_j
                let mut row = vec![ring.zero(); n];
                for m in 0..d {
                    row[rv(m, j)] += alg.sc(i, m, t);
                    row[lv(m, i)] -= alg.sc(m, j, t);
                }
                rows.push(row);
            }
        }
    }
    let a = Matrix::from_rows(ring, rows).expect("uniform rows");
    Ok(solve_affine(&a, &vec![ring.zero(); a.rows()])?)
}

/// All idempotent bimultiplications over a prime field, by enumerating the
/// bimultiplication space (at most `budget` states) and keeping the
/// solutions of `σσ = σ`. Sorted by [`DoubleOperator::to_vector`].
pub fn enumerate_idempotent_multipliers(alg: &Algebra, budget: u128) -> Result<Vec<DoubleOperator>, MultiplierError> {
    let space = bimultiplication_space(alg)?;
    let all = space.enumerate(budget)?;
    Ok(all
        .iter()
        .map(|v| DoubleOperator::from_vector(alg, v))
        .filter(|s| mult_product(s, s).map(|p| &p == s).unwrap_or(false))
        .collect())
}
