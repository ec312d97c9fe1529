//! Skew derivations and their extensions to a homothetic extension.
//!
//! An endomorphism `α` of `R` extends to `R(σ,s)` as
//! `α_S(a + ξ𝛔) = α(a) + ξw + ξς𝛔` exactly when
//!
//! * (i) `α(s) − ςs = w² + ςwσ + ςσw − w`
//! * (ii) `α(aσ) = α(a)(ςσ + w)`
//! * (iii) `α(σa) = (ςσ + w)α(a)`
//!
//! and an `α`-skew derivation `δ` then extends as
//! `δ_S(a + ξ𝛔) = δ(a) + ξe + ξμ𝛔` exactly when
//!
//! * (a) `δ(s) − μs = eσ + ςσe + we + μwσ − e`
//! * (b) `δ(aσ) = δ(a)σ + α(a)(e + μσ)`
//! * (c) `δ(σa) = (w + ςσ)δ(a) + (e + μσ)a`
//!
//! with `μ = 0` when `ς = 1`. Conditions (ii), (iii) are linear in `w`
//! and (a)–(c) are linear in `e`, which is what the solvers exploit.

use std::fmt;

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element, LinMap};
use crate::homext::{ExtAlgebra, ExtElement};
use crate::linalg::{solve_affine, AffineSolutionSet, LinalgError, Matrix};
use crate::multiplier::{is_bimultiplication, DoubleOperator, HomotheticDatum};
use crate::scalar::{Scalar, ScalarRing};
use crate::witness::{Verdict, Witness};

pub const DEFAULT_ENUM_CAP: u128 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkewError {
    #[error("varsigma must be 0 or 1, got {0}")]
    BadVarsigma(String),
    #[error("mu must vanish when varsigma = 1, got {0}")]
    MuConstraintViolated(String),
    #[error("the endomorphism does not extend: {0}")]
    EndoPreconditionFailed(Witness),
    #[error("extension conditions fail: {0}")]
    ConditionsFail(Witness),
    #[error("not an algebra endomorphism: {0}")]
    NotAnEndomorphism(Witness),
    #[error("not a skew derivation: {0}")]
    NotASkewDerivation(Witness),
    #[error("not a bimultiplication: {0}")]
    NotABimultiplication(Witness),
    #[error("{map} does not map R into R (column {})", .column + 1)]
    NotRestrictable { map: String, column: usize },
    #[error("the @sigma coefficient of alpha_S(@sigma) is {0}, which is not idempotent")]
    NonIdempotentVarsigma(String),
    #[error("solving over {0} is not supported; use Q or F<p>")]
    NotAField(ScalarRing),
    #[error("enumeration of {states} candidates exceeds the budget of {budget}")]
    EnumerationBudgetExceeded { states: u128, budget: u128 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<LinalgError> for SkewError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::NotAField(r) => SkewError::NotAField(r),
            LinalgError::EnumerationBudgetExceeded { states, budget } => {
                SkewError::EnumerationBudgetExceeded { states, budget }
            }
            LinalgError::ShapeMismatch { expected, found } => {
                SkewError::Algebra(AlgebraError::BadShape(format!("expected {expected}, found {found}")))
            }
        }
    }
}

/// The type `ς` of an extended endomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Varsigma {
    Zero,
    One,
}

impl Varsigma {
    pub fn from_scalar(x: &Scalar) -> Result<Self, SkewError> {
        if x.is_zero() {
            Ok(Varsigma::Zero)
        } else if x.is_one() {
            Ok(Varsigma::One)
        } else {
            Err(SkewError::BadVarsigma(x.to_string()))
        }
    }

    pub fn from_u8(x: u8) -> Result<Self, SkewError> {
        match x {
            0 => Ok(Varsigma::Zero),
            1 => Ok(Varsigma::One),
            _ => Err(SkewError::BadVarsigma(x.to_string())),
        }
    }

    pub fn scalar(self, ring: ScalarRing) -> Scalar {
        match self {
            Varsigma::Zero => ring.zero(),
            Varsigma::One => ring.one(),
        }
    }

    pub fn is_one(self) -> bool {
        self == Varsigma::One
    }
}

impl fmt::Display for Varsigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Varsigma::Zero => "0",
            Varsigma::One => "1",
        })
    }
}

fn witness(cond: &str, basis: Vec<usize>, l: Element, r: Element) -> Witness {
    Witness::new(cond, basis, l.into_coords(), r.into_coords())
}

/// `f(ab) = f(a)f(b)` on all basis pairs.
pub fn is_endomorphism(alg: &Algebra, f: &LinMap) -> Verdict {
    let imgs: Vec<Element> = (0..alg.dim()).map(|i| f.image(i)).collect();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let l = f.at(&alg.basis_product(i, j));
            let r = alg.product(&imgs[i], &imgs[j]);
            if l != r {
                return Err(witness("f(ab) = f(a)f(b)", vec![i, j], l, r));
            }
        }
    }
    Ok(())
}

/// `δ(ab) = δ(a)b + α(a)δ(b)` on all basis pairs.
pub fn is_skew_derivation(alg: &Algebra, alpha: &LinMap, delta: &LinMap) -> Verdict {
    for i in 0..alg.dim() {
        let (ai, di) = (alpha.image(i), delta.image(i));
        for j in 0..alg.dim() {
            let l = delta.at(&alg.basis_product(i, j));
            let r = &alg.product(&di, &alg.basis(j)) + &alg.product(&ai, &delta.image(j));
            if l != r {
                return Err(witness("delta(ab) = delta(a)b + alpha(a)delta(b)", vec![i, j], l, r));
            }
        }
    }
    Ok(())
}

fn check_endo_shape(alg: &Algebra, f: &LinMap) -> Result<(), AlgebraError> {
    if f.domain_dim() != alg.dim() || f.codomain_dim() != alg.dim() {
        return Err(AlgebraError::DomainMismatch {
            expected: alg.dim(),
            found: f.domain_dim(),
        });
    }
    if f.ring() != alg.ring() {
        return Err(AlgebraError::RingMismatch {
            expected: alg.ring(),
            found: f.ring(),
        });
    }
    Ok(())
}

/// A pair `(α, δ)` with `α` an endomorphism and `δ` an `α`-skew derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewDerivation {
    pub alpha: LinMap,
    pub delta: LinMap,
}

impl SkewDerivation {
    pub fn new(alg: &Algebra, alpha: LinMap, delta: LinMap) -> Result<Self, SkewError> {
        check_endo_shape(alg, &alpha)?;
        check_endo_shape(alg, &delta)?;
        is_endomorphism(alg, &alpha).map_err(SkewError::NotAnEndomorphism)?;
        is_skew_derivation(alg, &alpha, &delta).map_err(SkewError::NotASkewDerivation)?;
        Ok(SkewDerivation { alpha, delta })
    }
}

/// Conditions (i)–(iii) for extending `α` with parameters `w`, `ς`.
pub fn check_endo_ext(
    alg: &Algebra,
    datum: &HomotheticDatum,
    alpha: &LinMap,
    w: &Element,
    varsigma: Varsigma,
) -> Verdict {
    let sig = datum.sigma();
    let s = datum.s();
    let vs = varsigma.scalar(alg.ring());
    let l = &alpha.at(s) - &s.scale(&vs);
    let r = &(&(&alg.product(w, w) + &sig.act_right_of(w).scale(&vs)) + &sig.act_left_of(w).scale(&vs)) - w;
    if l != r {
        return Err(witness("(i) alpha(s) - vs*s = w^2 + vs*w sigma + vs*sigma w - w", vec![], l, r));
    }
    for i in 0..alg.dim() {
        let bi = alg.basis(i);
        let ai = alpha.image(i);
        let l = alpha.at(&sig.act_right_of(&bi));
        let r = &sig.act_right_of(&ai).scale(&vs) + &alg.product(&ai, w);
        if l != r {
            return Err(witness("(ii) alpha(a sigma) = alpha(a)(vs*sigma + w)", vec![i], l, r));
        }
        let l = alpha.at(&sig.act_left_of(&bi));
        let r = &sig.act_left_of(&ai).scale(&vs) + &alg.product(w, &ai);
        if l != r {
            return Err(witness("(iii) alpha(sigma a) = (vs*sigma + w)alpha(a)", vec![i], l, r));
        }
    }
    Ok(())
}

fn check_mu(varsigma: Varsigma, mu: &Scalar) -> Result<(), SkewError> {
    if varsigma.is_one() && !mu.is_zero() {
        return Err(SkewError::MuConstraintViolated(mu.to_string()));
    }
    Ok(())
}

/// Conditions (a)–(c) for extending `δ` with parameters `e`, `μ`. The outer
/// error reports a violated precondition; the inner verdict the conditions.
#[allow(clippy::too_many_arguments)]
pub fn check_deriv_ext(
    alg: &Algebra,
    datum: &HomotheticDatum,
    alpha: &LinMap,
    w: &Element,
    varsigma: Varsigma,
    delta: &LinMap,
    e: &Element,
    mu: &Scalar,
) -> Result<Verdict, SkewError> {
    check_mu(varsigma, mu)?;
    check_endo_ext(alg, datum, alpha, w, varsigma).map_err(SkewError::EndoPreconditionFailed)?;
    Ok(deriv_conditions(alg, datum, alpha, w, varsigma, delta, e, mu))
}

#[allow(clippy::too_many_arguments)]
fn deriv_conditions(
    alg: &Algebra,
    datum: &HomotheticDatum,
    alpha: &LinMap,
    w: &Element,
    varsigma: Varsigma,
    delta: &LinMap,
    e: &Element,
    mu: &Scalar,
) -> Verdict {
    let sig = datum.sigma();
    let s = datum.s();
    let vs = varsigma.scalar(alg.ring());
    let l = &delta.at(s) - &s.scale(mu);
    let r = &(&(&(&sig.act_right_of(e) + &sig.act_left_of(e).scale(&vs)) + &alg.product(w, e))
        + &sig.act_right_of(w).scale(mu))
        - e;
    if l != r {
        return Err(witness("(a) delta(s) - mu*s = e sigma + vs*sigma e + we + mu*w sigma - e", vec![], l, r));
    }
    for i in 0..alg.dim() {
        let bi = alg.basis(i);
        let (ai, di) = (alpha.image(i), delta.image(i));
        let l = delta.at(&sig.act_right_of(&bi));
        let r = &(&sig.act_right_of(&di) + &alg.product(&ai, e)) + &sig.act_right_of(&ai).scale(mu);
        if l != r {
            return Err(witness("(b) delta(a sigma) = delta(a)sigma + alpha(a)(e + mu*sigma)", vec![i], l, r));
        }
        let l = delta.at(&sig.act_left_of(&bi));
        let r = &(&(&alg.product(w, &di) + &sig.act_left_of(&di).scale(&vs)) + &alg.product(e, &bi))
            + &sig.act_left_of(&bi).scale(mu);
        if l != r {
            return Err(witness("(c) delta(sigma a) = (w + vs*sigma)delta(a) + (e + mu*sigma)a", vec![i], l, r));
        }
    }
    Ok(())
}

/// The compatibility data `(α, w; δ, e, μ)` of type `ς` over a datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quintuple {
    pub datum: HomotheticDatum,
    pub alpha: LinMap,
    pub delta: LinMap,
    pub w: Element,
    pub e: Element,
    pub varsigma: Varsigma,
    pub mu: Scalar,
}

impl Quintuple {
    /// Validates every condition: `α` an endomorphism, `δ` an `α`-skew
    /// derivation, (i)–(iii), the `μ` constraint and (a)–(c).
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        alg: &Algebra,
        datum: &HomotheticDatum,
        alpha: LinMap,
        delta: LinMap,
        w: Element,
        e: Element,
        varsigma: Varsigma,
        mu: Scalar,
    ) -> Result<Self, SkewError> {
        alg.check_element(&w)?;
        alg.check_element(&e)?;
        SkewDerivation::new(alg, alpha.clone(), delta.clone())?;
        check_deriv_ext(alg, datum, &alpha, &w, varsigma, &delta, &e, &mu)?.map_err(SkewError::ConditionsFail)?;
        Ok(Quintuple {
            datum: datum.clone(),
            alpha,
            delta,
            w,
            e,
            varsigma,
            mu,
        })
    }

    pub fn check(&self, alg: &Algebra) -> Result<Verdict, SkewError> {
        check_deriv_ext(alg, &self.datum, &self.alpha, &self.w, self.varsigma, &self.delta, &self.e, &self.mu)
    }
}

/// `α_S(a + ξ𝛔) = α(a) + ξw + ξς𝛔` without any checks.
pub fn endo_extension_map(ext: &ExtAlgebra, alpha: &LinMap, w: &Element, varsigma: Varsigma) -> LinMap {
    let ring = ext.base().ring();
    let d = ext.base().dim();
    LinMap::from_fn(ring, d + 1, d + 1, |i| {
        if i < d {
            ext.to_element(&ext.iota(&alpha.image(i)))
        } else {
            ext.to_element(&ExtElement::new(w.clone(), varsigma.scalar(ring)))
        }
    })
}

/// `δ_S(a + ξ𝛔) = δ(a) + ξe + ξμ𝛔` without any checks.
pub fn deriv_extension_map(ext: &ExtAlgebra, delta: &LinMap, e: &Element, mu: &Scalar) -> LinMap {
    let ring = ext.base().ring();
    let d = ext.base().dim();
    LinMap::from_fn(ring, d + 1, d + 1, |i| {
        if i < d {
            ext.to_element(&ext.iota(&delta.image(i)))
        } else {
            ext.to_element(&ExtElement::new(e.clone(), mu.clone()))
        }
    })
}

/// The extension `α_S`, verified to be an endomorphism of `S`.
pub fn extend_endo(ext: &ExtAlgebra, alpha: &LinMap, w: &Element, varsigma: Varsigma) -> Result<LinMap, SkewError> {
    check_endo_shape(ext.base(), alpha)?;
    ext.base().check_element(w)?;
    check_endo_ext(ext.base(), ext.datum(), alpha, w, varsigma).map_err(SkewError::ConditionsFail)?;
    let map = endo_extension_map(ext, alpha, w, varsigma);
    is_endomorphism(ext.as_algebra(), &map).map_err(SkewError::ConditionsFail)?;
    Ok(map)
}

/// The extension `δ_S`, verified to be an `α_S`-skew derivation of `S`.
pub fn extend_deriv(ext: &ExtAlgebra, q: &Quintuple) -> Result<LinMap, SkewError> {
    let alg = ext.base();
    q.check(alg)?.map_err(SkewError::ConditionsFail)?;
    let alpha_s = endo_extension_map(ext, &q.alpha, &q.w, q.varsigma);
    let delta_s = deriv_extension_map(ext, &q.delta, &q.e, &q.mu);
    is_skew_derivation(ext.as_algebra(), &alpha_s, &delta_s).map_err(SkewError::ConditionsFail)?;
    Ok(delta_s)
}

/// Either every solution, or the linear relaxation when the quadratic
/// filter cannot be enumerated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WSolutions {
    Listed(Vec<Element>),
    Indeterminate(AffineSolutionSet),
}

impl WSolutions {
    pub fn listed(&self) -> Option<&[Element]> {
        match self {
            WSolutions::Listed(v) => Some(v),
            WSolutions::Indeterminate(_) => None,
        }
    }
}

fn endo_ext_linear_system(alg: &Algebra, datum: &HomotheticDatum, alpha: &LinMap, varsigma: Varsigma) -> (Matrix, Vec<Scalar>) {
    let d = alg.dim();
    let sig = datum.sigma();
    let vs = varsigma.scalar(alg.ring());
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..d {
        let bi = alg.basis(i);
        let ai = alpha.image(i);
        // α(a)w = α(aσ) − ς α(a)σ
        let target = &alpha.at(&sig.act_right_of(&bi)) - &sig.act_right_of(&ai).scale(&vs);
        let cols: Vec<Element> = (0..d).map(|m| alg.product(&ai, &alg.basis(m))).collect();
        for t in 0..d {
            rows.push(cols.iter().map(|c| c.coord(t).clone()).collect());
            rhs.push(target.coord(t).clone());
        }
        // wα(a) = α(σa) − ς σα(a)
        let target = &alpha.at(&sig.act_left_of(&bi)) - &sig.act_left_of(&ai).scale(&vs);
        let cols: Vec<Element> = (0..d).map(|m| alg.product(&alg.basis(m), &ai)).collect();
        for t in 0..d {
            rows.push(cols.iter().map(|c| c.coord(t).clone()).collect());
            rhs.push(target.coord(t).clone());
        }
    }
    (Matrix::from_rows(alg.ring(), rows).expect("uniform rows"), rhs)
}

/// The solution set of the linear conditions (ii), (iii) in `w`.
pub fn endo_ext_linear_part(
    alg: &Algebra,
    datum: &HomotheticDatum,
    alpha: &LinMap,
    varsigma: Varsigma,
) -> Result<AffineSolutionSet, SkewError> {
    check_endo_shape(alg, alpha)?;
    let (m, rhs) = endo_ext_linear_system(alg, datum, alpha, varsigma);
    Ok(solve_affine(&m, &rhs)?)
}

/// All `w` for which `α` extends with type `ς`, in lexicographic order of
/// coordinates. Over a prime field the affine solution set of (ii), (iii)
/// is enumerated (at most `enum_cap` candidates) and filtered by (i).
pub fn solve_endo_ext(
    alg: &Algebra,
    datum: &HomotheticDatum,
    alpha: &LinMap,
    varsigma: Varsigma,
    enum_cap: u128,
) -> Result<WSolutions, SkewError> {
    let set = endo_ext_linear_part(alg, datum, alpha, varsigma)?;
    let keep = |v: &Vec<Scalar>| check_endo_ext(alg, datum, alpha, &Element::new(v.clone()), varsigma).is_ok();
    match alg.ring() {
        ScalarRing::PrimeField(_) => {
            let all = set.enumerate(enum_cap)?;
            Ok(WSolutions::Listed(all.into_iter().filter(keep).map(Element::new).collect()))
        }
        ScalarRing::Rationals => match &set.particular {
            None => Ok(WSolutions::Listed(Vec::new())),
            Some(p) if set.kernel_basis.is_empty() => {
                let found = if keep(p) { vec![Element::new(p.clone())] } else { Vec::new() };
                Ok(WSolutions::Listed(found))
            }
            Some(_) => Ok(WSolutions::Indeterminate(set)),
        },
        ScalarRing::Integers => Err(SkewError::NotAField(ScalarRing::Integers)),
    }
}

/// The linear system (a)–(c) in `e` for fixed `(α, w, ς, δ, μ)`, without
/// checking that `α` extends.
#[allow(clippy::too_many_arguments)]
pub fn deriv_ext_system(
    alg: &Algebra,
    datum: &HomotheticDatum,
    alpha: &LinMap,
    w: &Element,
    varsigma: Varsigma,
    delta: &LinMap,
    mu: &Scalar,
) -> Result<AffineSolutionSet, SkewError> {
    let (m, rhs) = deriv_rows(alg, datum, alpha, w, varsigma, delta, Some(mu));
    Ok(solve_affine(&m, &rhs)?)
}

// Rows of (a)–(c). With `mu = None` the last unknown is μ itself.
fn deriv_rows(
    alg: &Algebra,
    datum: &HomotheticDatum,
    alpha: &LinMap,
    w: &Element,
    varsigma: Varsigma,
    delta: &LinMap,
    mu: Option<&Scalar>,
) -> (Matrix, Vec<Scalar>) {
    let d = alg.dim();
    let ring = alg.ring();
    let sig = datum.sigma();
    let s = datum.s();
    let vs = varsigma.scalar(ring);
    let zero = ring.zero();
    let mu_val = mu.unwrap_or(&zero);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs = Vec::new();
    let mut push = |cols: &[Element], mu_col: Option<Element>, target: Element| {
        for t in 0..d {
            let mut row: Vec<Scalar> = cols.iter().map(|c| c.coord(t).clone()).collect();
            if mu.is_none() {
                row.push(mu_col.as_ref().map_or(ring.zero(), |m| m.coord(t).clone()));
            }
            rows.push(row);
            rhs.push(target.coord(t).clone());
        }
    };
    // (a): eσ + ςσe + we − e + μ(s + wσ) = δ(s)
    let cols: Vec<Element> = (0..d)
        .map(|m| {
            let bm = alg.basis(m);
            &(&(&sig.act_right_of(&bm) + &sig.act_left_of(&bm).scale(&vs)) + &alg.product(w, &bm)) - &bm
        })
        .collect();
    let mu_term = s + &sig.act_right_of(w);
    let target = &delta.at(s) - &mu_term.scale(mu_val);
    push(&cols, Some(mu_term), target);
    for i in 0..d {
        let bi = alg.basis(i);
        let (ai, di) = (alpha.image(i), delta.image(i));
        // (b): α(a)e + μα(a)σ = δ(aσ) − δ(a)σ
        let cols: Vec<Element> = (0..d).map(|m| alg.product(&ai, &alg.basis(m))).collect();
        let mu_term = sig.act_right_of(&ai);
        let target = &(&delta.at(&sig.act_right_of(&bi)) - &sig.act_right_of(&di)) - &mu_term.scale(mu_val);
        push(&cols, Some(mu_term), target);
        // (c): ea + μσa = δ(σa) − wδ(a) − ςσδ(a)
        let cols: Vec<Element> = (0..d).map(|m| alg.product(&alg.basis(m), &bi)).collect();
        let mu_term = sig.act_left_of(&bi);
        let target = &(&(&delta.at(&sig.act_left_of(&bi)) - &alg.product(w, &di)) - &sig.act_left_of(&di).scale(&vs))
            - &mu_term.scale(mu_val);
        push(&cols, Some(mu_term), target);
    }
    (Matrix::from_rows(ring, rows).expect("uniform rows"), rhs)
}

/// All `e` for which `δ` extends, after checking the preconditions on
/// `μ` and on `(α, w, ς)`.
#[allow(clippy::too_many_arguments)]
pub fn solve_deriv_ext(
    alg: &Algebra,
    datum: &HomotheticDatum,
    alpha: &LinMap,
    w: &Element,
    varsigma: Varsigma,
    delta: &LinMap,
    mu: &Scalar,
) -> Result<AffineSolutionSet, SkewError> {
    check_endo_shape(alg, alpha)?;
    check_endo_shape(alg, delta)?;
    alg.check_element(w)?;
    check_mu(varsigma, mu)?;
    check_endo_ext(alg, datum, alpha, w, varsigma).map_err(SkewError::EndoPreconditionFailed)?;
    deriv_ext_system(alg, datum, alpha, w, varsigma, delta, mu)
}

/// For `ς = 0`, the joint solution set in `(e, μ)`; the last coordinate
/// is `μ`.
pub fn solve_deriv_ext_free_mu(
    alg: &Algebra,
    datum: &HomotheticDatum,
    alpha: &LinMap,
    w: &Element,
    delta: &LinMap,
) -> Result<AffineSolutionSet, SkewError> {
    check_endo_shape(alg, alpha)?;
    check_endo_shape(alg, delta)?;
    alg.check_element(w)?;
    check_endo_ext(alg, datum, alpha, w, Varsigma::Zero).map_err(SkewError::EndoPreconditionFailed)?;
    let (m, rhs) = deriv_rows(alg, datum, alpha, w, Varsigma::Zero, delta, None);
    Ok(solve_affine(&m, &rhs)?)
}

/// Explicit members of a solution set: all of them over a prime field
/// (within `enum_cap`), the unique one over `Q`, or `None` when the set is
/// an infinite affine subspace.
pub fn members(set: &AffineSolutionSet, enum_cap: u128) -> Result<Option<Vec<Element>>, SkewError> {
    if set.ring().modulus().is_some() {
        return Ok(Some(set.enumerate(enum_cap)?.into_iter().map(Element::new).collect()));
    }
    Ok(match &set.particular {
        None => Some(Vec::new()),
        Some(p) if set.kernel_basis.is_empty() => Some(vec![Element::new(p.clone())]),
        Some(_) => None,
    })
}

/// The inner `α_S`-skew derivation `u ↦ α_S(u)c − cu` of `S` together with
/// the data it induces on `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerExtDerivation {
    pub map: LinMap,
    pub restriction: LinMap,
    pub varsigma: Varsigma,
    pub w: Element,
    /// `e` read off from `δ_S(𝛔)`.
    pub e: Element,
    pub mu: Scalar,
    /// `ςσb − bσ + wb + ζ(wσ + (ς−1)s)`
    pub e_closed_form: Element,
    /// `ζ(ς − 1)`
    pub mu_closed_form: Scalar,
}

/// Reads `(ς, w)` off `α_S(𝛔) = w + ς𝛔`, checking that `α_S` preserves `R`.
pub fn sigma_image_parts(ext: &ExtAlgebra, map: &LinMap, name: &str) -> Result<(Element, Scalar), SkewError> {
    let d = ext.base().dim();
    for i in 0..d {
        if !map.image(i).coord(d).is_zero() {
            return Err(SkewError::NotRestrictable {
                map: name.to_string(),
                column: i,
            });
        }
    }
    let top = ext.from_element(&map.image(d));
    Ok((top.a, top.xi))
}

fn restrict(ext: &ExtAlgebra, map: &LinMap) -> LinMap {
    let d = ext.base().dim();
    LinMap::from_fn(ext.base().ring(), d, d, |i| ext.from_element(&map.image(i)).a)
}

pub fn inner_ext_derivation(ext: &ExtAlgebra, alpha_s: &LinMap, c: &ExtElement) -> Result<InnerExtDerivation, SkewError> {
    let s_alg = ext.as_algebra();
    check_endo_shape(s_alg, alpha_s)?;
    ext.base().check_element(&c.a)?;
    is_endomorphism(s_alg, alpha_s).map_err(SkewError::NotAnEndomorphism)?;
    let (w, vs_scalar) = sigma_image_parts(ext, alpha_s, "alpha_S")?;
    let varsigma = Varsigma::from_scalar(&vs_scalar).map_err(|_| SkewError::NonIdempotentVarsigma(vs_scalar.to_string()))?;
    let c_el = ext.to_element(c);
    let n = s_alg.dim();
    let map = LinMap::from_fn(s_alg.ring(), n, n, |j| {
        &s_alg.product(&alpha_s.image(j), &c_el) - &s_alg.product(&c_el, &s_alg.basis(j))
    });
    let (e, mu) = {
        let top = ext.from_element(&map.image(n - 1));
        (top.a, top.xi)
    };
    let alg = ext.base();
    let sig = ext.datum().sigma();
    let ring = alg.ring();
    let vs = varsigma.scalar(ring);
    let b = &c.a;
    let zeta = &c.xi;
    let vs_minus_one = &vs - &ring.one();
    let e_closed_form = &(&(&sig.act_left_of(b).scale(&vs) - &sig.act_right_of(b)) + &alg.product(&w, b))
        + &(&sig.act_right_of(&w) + &ext.datum().s().scale(&vs_minus_one)).scale(zeta);
    let mu_closed_form = zeta * &vs_minus_one;
    Ok(InnerExtDerivation {
        restriction: restrict(ext, &map),
        map,
        varsigma,
        w,
        e,
        mu,
        e_closed_form,
        mu_closed_form,
    })
}

/// `a ↦ α(a)σ − σa`, a skew derivation whenever `σ` is a bimultiplication.
pub fn homothetic_derivation(alg: &Algebra, alpha: &LinMap, sigma: &DoubleOperator) -> Result<LinMap, SkewError> {
    check_endo_shape(alg, alpha)?;
    is_endomorphism(alg, alpha).map_err(SkewError::NotAnEndomorphism)?;
    is_bimultiplication(alg, sigma).map_err(SkewError::NotABimultiplication)?;
    let d = alg.dim();
    let map = LinMap::from_fn(alg.ring(), d, d, |i| {
        &sigma.act_right_of(&alpha.image(i)) - &sigma.act_left_of(&alg.basis(i))
    });
    is_skew_derivation(alg, alpha, &map).map_err(SkewError::ConditionsFail)?;
    Ok(map)
}

/// Recovers the quintuple from a pair of maps on `S` that preserve `R`.
pub fn restrict_and_extract(ext: &ExtAlgebra, alpha_s: &LinMap, delta_s: &LinMap) -> Result<Quintuple, SkewError> {
    let s_alg = ext.as_algebra();
    check_endo_shape(s_alg, alpha_s)?;
    check_endo_shape(s_alg, delta_s)?;
    let (w, vs) = sigma_image_parts(ext, alpha_s, "alpha_S")?;
    let (e, mu) = sigma_image_parts(ext, delta_s, "delta_S")?;
    let varsigma = Varsigma::from_scalar(&vs).map_err(|_| SkewError::NonIdempotentVarsigma(vs.to_string()))?;
    Quintuple::new(
        ext.base(),
        ext.datum(),
        restrict(ext, alpha_s),
        restrict(ext, delta_s),
        w,
        e,
        varsigma,
        mu,
    )
}
