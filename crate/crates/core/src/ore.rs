//! Nonunital Ore extensions `R[x; α, δ]`.
//!
//! Elements are left-coefficient polynomials `Σ a_n xⁿ` with coefficients in
//! `R`. Since `R` need not be unital, `x` itself is not an element; it acts
//! through [`OreRing::x_left`] and [`OreRing::x_right`]. Products follow
//! `(a xᵐ)(b xⁿ) = Σ_i a Γᵐᵢ(b) x^{n+i}` where `Γᵐᵢ` is the sum of all
//! composites of `i` copies of `α` and `m − i` copies of `δ`.

use std::fmt;
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::algebra::{format_combination, Algebra, AlgebraError, Element, LinMap};
use crate::scalar::Scalar;
use crate::skewderiv::{SkewDerivation, SkewError};

pub const DEFAULT_DEGREE_CAP: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OreError {
    #[error("Gamma index ({m}, {i}) out of range")]
    IndexOutOfRange { m: usize, i: usize },
    #[error("degree {degree} exceeds the cap of {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("polynomial coefficients of dimension {found} used with a ring over an algebra of dimension {expected}")]
    RingMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Skew(#[from] SkewError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Coefficients `a_0, …, a_n` of `Σ a_i xⁱ`, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrePoly {
    coeffs: Vec<Element>,
}

impl OrePoly {
    pub fn zero() -> Self {
        OrePoly { coeffs: Vec::new() }
    }

    /// Builds a polynomial, trimming trailing zero coefficients.
    pub fn from_coeffs(mut coeffs: Vec<Element>) -> Self {
        while coeffs.last().is_some_and(Element::is_zero) {
            coeffs.pop();
        }
        OrePoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, n: usize) -> Option<&Element> {
        self.coeffs.get(n)
    }

    pub fn add(&self, other: &OrePoly) -> OrePoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(match (self.coeffs.get(k), other.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        OrePoly::from_coeffs(out)
    }

    pub fn neg(&self) -> OrePoly {
        OrePoly {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn sub(&self, other: &OrePoly) -> OrePoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Scalar) -> OrePoly {
        OrePoly::from_coeffs(self.coeffs.iter().map(|a| a.scale(k)).collect())
    }

    /// Applies `f` coefficient-wise.
    pub fn map_coeffs(&self, f: impl Fn(&Element) -> Element) -> OrePoly {
        OrePoly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl fmt::Display for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(n, a)| format!("{a}·x^{n}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `R[x; α, δ]` with a lazily grown table of the operators `Γᵐᵢ`.
pub struct OreRing {
    alg: Arc<Algebra>,
    alpha: LinMap,
    delta: LinMap,
    degree_cap: usize,
    // row m holds Γᵐ₀ … Γᵐₘ
    gamma: RwLock<Vec<Vec<LinMap>>>,
}

impl fmt::Debug for OreRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OreRing")
            .field("algebra", &self.alg.name())
            .field("degree_cap", &self.degree_cap)
            .finish()
    }
}

impl Clone for OreRing {
    fn clone(&self) -> Self {
        OreRing {
            alg: Arc::clone(&self.alg),
            alpha: self.alpha.clone(),
            delta: self.delta.clone(),
            degree_cap: self.degree_cap,
            gamma: RwLock::new(self.gamma.read().expect("gamma cache").clone()),
        }
    }
}

impl OreRing {
    /// Requires `α` to be an endomorphism and `δ` an `α`-skew derivation.
    pub fn new(alg: Arc<Algebra>, alpha: LinMap, delta: LinMap) -> Result<Self, OreError> {
        let sd = SkewDerivation::new(&alg, alpha, delta)?;
        let d = alg.dim();
        let ring = alg.ring();
        Ok(OreRing {
            alg,
            alpha: sd.alpha,
            delta: sd.delta,
            degree_cap: DEFAULT_DEGREE_CAP,
            gamma: RwLock::new(vec![vec![LinMap::identity(ring, d)]]),
        })
    }

    pub fn with_degree_cap(mut self, cap: usize) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn alpha(&self) -> &LinMap {
        &self.alpha
    }

    pub fn delta(&self) -> &LinMap {
        &self.delta
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    fn fill_gamma(&self, m: usize) {
        if self.gamma.read().expect("gamma cache").len() > m {
            return;
        }
        let mut table = self.gamma.write().expect("gamma cache");
        while table.len() <= m {
            let prev = table.last().expect("row zero");
            let k = prev.len();
            let ring = self.alg.ring();
            let d = self.alg.dim();
            let row: Vec<LinMap> = (0..=k)
                .map(|i| {
                    let mut acc = LinMap::zero(ring, d, d);
                    if i >= 1 {
                        acc = acc.plus(&self.alpha.after(&prev[i - 1]));
                    }
                    if i < k {
                        acc = acc.plus(&self.delta.after(&prev[i]));
                    }
                    acc
                })
                .collect();
            table.push(row);
        }
    }

    /// `Γᵐᵢ` via `Γᵐᵢ = α∘Γ^{m−1}_{i−1} + δ∘Γ^{m−1}_i`, `Γ⁰₀ = id`.
    pub fn gamma(&self, m: usize, i: usize) -> Result<LinMap, OreError> {
        if i > m {
            return Err(OreError::IndexOutOfRange { m, i });
        }
        if m > self.degree_cap {
            return Err(OreError::DegreeCapExceeded {
                degree: m,
                cap: self.degree_cap,
            });
        }
        self.fill_gamma(m);
        Ok(self.gamma.read().expect("gamma cache")[m][i].clone())
    }

    fn check_poly(&self, p: &OrePoly) -> Result<(), OreError> {
        for a in p.coeffs() {
            if a.dim() != self.alg.dim() {
                return Err(OreError::RingMismatch {
                    expected: self.alg.dim(),
                    found: a.dim(),
                });
            }
        }
        if let Some(deg) = p.degree() {
            if deg > self.degree_cap {
                return Err(OreError::DegreeCapExceeded {
                    degree: deg,
                    cap: self.degree_cap,
                });
            }
        }
        Ok(())
    }

    /// Validates coefficients against the algebra and trims.
    pub fn poly(&self, coeffs: Vec<Element>) -> Result<OrePoly, OreError> {
        for a in &coeffs {
            self.alg.check_element(a)?;
        }
        let p = OrePoly::from_coeffs(coeffs);
        self.check_poly(&p)?;
        Ok(p)
    }

    /// `a xⁿ`
    pub fn monomial(&self, a: Element, n: usize) -> OrePoly {
        let mut coeffs = vec![self.alg.zero(); n];
        coeffs.push(a);
        OrePoly::from_coeffs(coeffs)
    }

    pub fn ore_mul(&self, p: &OrePoly, q: &OrePoly) -> Result<OrePoly, OreError> {
        self.check_poly(p)?;
        self.check_poly(q)?;
        let (Some(dp), Some(dq)) = (p.degree(), q.degree()) else {
            return Ok(OrePoly::zero());
        };
        if dp + dq > self.degree_cap {
            return Err(OreError::DegreeCapExceeded {
                degree: dp + dq,
                cap: self.degree_cap,
            });
        }
        self.fill_gamma(dp);
        let table = self.gamma.read().expect("gamma cache");
        let mut out = vec![self.alg.zero(); dp + dq + 1];
        for (m, a) in p.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (n, b) in q.coeffs().iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                for (i, g) in table[m].iter().enumerate() {
                    let term = self.alg.product(a, &g.at(b));
                    out[n + i] = &out[n + i] + &term;
                }
            }
        }
        Ok(OrePoly::from_coeffs(out))
    }

    /// `x·p`: `x(a xⁿ) = α(a)x^{n+1} + δ(a)xⁿ`.
    pub fn x_left(&self, p: &OrePoly) -> OrePoly {
        let mut out = vec![self.alg.zero(); p.coeffs().len() + 1];
        for (n, a) in p.coeffs().iter().enumerate() {
            out[n + 1] = &out[n + 1] + &self.alpha.at(a);
            out[n] = &out[n] + &self.delta.at(a);
        }
        OrePoly::from_coeffs(out)
    }

    /// `p·x`: `(a xⁿ)x = a x^{n+1}`.
    pub fn x_right(&self, p: &OrePoly) -> OrePoly {
        if p.is_zero() {
            return OrePoly::zero();
        }
        let mut coeffs = vec![self.alg.zero()];
        coeffs.extend(p.coeffs().iter().cloned());
        OrePoly::from_coeffs(coeffs)
    }

    /// Pretty form `a·x^n + …` using the algebra's basis labels.
    pub fn format(&self, p: &OrePoly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(n, a)| {
                let c = format_combination(a.coords(), self.alg.labels());
                let c = if c.contains(' ') { format!("({c})") } else { c };
                match n {
                    0 => c,
                    1 => format!("{c}·x"),
                    _ => format!("{c}·x^{n}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}
