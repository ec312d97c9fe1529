//! The homothetic extension `R(σ,s) = R ⊕ 𝔽𝛔` with product
//! `(a,ξ)(b,ζ) = (ab + ζ·aσ + ξ·σb + ξζ·s, ξζ)`.
//!
//! `𝛔` occupies the extra basis slot after the basis of `R` and is printed
//! as `@sigma`.

use std::fmt;

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element, LinMap, DEFAULT_DIM_CAP};
use crate::linalg::{canonical_span, Matrix};
use crate::multiplier::{DoubleOperator, HomotheticDatum};
use crate::report::{CheckRecord, Report};
use crate::scalar::Scalar;

pub const SIGMA_LABEL: &str = "@sigma";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `a + ξ𝛔`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtElement {
    pub a: Element,
    pub xi: Scalar,
}

impl ExtElement {
    pub fn new(a: Element, xi: Scalar) -> Self {
        ExtElement { a, xi }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.xi.is_zero()
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*{}", self.a, self.xi, SIGMA_LABEL)
    }
}

/// Structure constants of the extension without checking the datum
/// axioms; the associativity gate of [`Algebra`] still runs.
pub fn extension_algebra(base: &Algebra, sigma: &DoubleOperator, s: &Element) -> Result<Algebra, AlgebraError> {
    base.check_element(s)?;
    let d = base.dim();
    if sigma.dim() != d {
        return Err(AlgebraError::AlgebraMismatch {
            expected: d,
            found: sigma.dim(),
        });
    }
    let ring = base.ring();
    let mut entries: Vec<(usize, usize, usize, Scalar)> =
        base.nonzero_entries().map(|(i, j, k, c)| (i, j, k, c.clone())).collect();
    for i in 0..d {
        let bi = base.basis(i);
        for (k, c) in sigma.act_right_of(&bi).coords().iter().enumerate() {
            entries.push((i, d, k, c.clone()));
        }
        for (k, c) in sigma.act_left_of(&bi).coords().iter().enumerate() {
            entries.push((d, i, k, c.clone()));
        }
    }
    for (k, c) in s.coords().iter().enumerate() {
        entries.push((d, d, k, c.clone()));
    }
    entries.push((d, d, d, ring.one()));
    let mut labels = base.labels().to_vec();
    labels.push(SIGMA_LABEL.to_string());
    Algebra::from_entries(
        format!("{}(sigma,s)", base.name()),
        ring,
        d + 1,
        entries.into_iter().filter(|e| !e.3.is_zero()),
        Some(labels),
        DEFAULT_DIM_CAP.max(d + 1),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtAlgebra {
    base: Algebra,
    datum: HomotheticDatum,
    ext: Algebra,
}

impl ExtAlgebra {
    pub fn new(base: &Algebra, datum: &HomotheticDatum) -> Result<Self, ExtError> {
        let ext = extension_algebra(base, datum.sigma(), datum.s())?;
        Ok(ExtAlgebra {
            base: base.clone(),
            datum: datum.clone(),
            ext,
        })
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn datum(&self) -> &HomotheticDatum {
        &self.datum
    }

    /// The `(d+1)`-dimensional structure-constant algebra.
    pub fn as_algebra(&self) -> &Algebra {
        &self.ext
    }

    /// Index of the `𝛔` basis slot.
    pub fn sigma_index(&self) -> usize {
        self.base.dim()
    }

    pub fn sigma(&self) -> ExtElement {
        ExtElement::new(self.base.zero(), self.base.ring().one())
    }

    pub fn ext_mul(&self, u: &ExtElement, v: &ExtElement) -> Result<ExtElement, AlgebraError> {
        self.base.check_element(&u.a)?;
        self.base.check_element(&v.a)?;
        Ok(self.product(u, v))
    }

    /// `(ab + ζ·aσ + ξ·σb + ξζ·s, ξζ)` without validation.
    pub fn product(&self, u: &ExtElement, v: &ExtElement) -> ExtElement {
        let sig = self.datum.sigma();
        let mut a = self.base.product(&u.a, &v.a);
        if !v.xi.is_zero() {
            a = &a + &sig.act_right_of(&u.a).scale(&v.xi);
        }
        if !u.xi.is_zero() {
            a = &a + &sig.act_left_of(&v.a).scale(&u.xi);
        }
        let xz = &u.xi * &v.xi;
        if !xz.is_zero() {
            a = &a + &self.datum.s().scale(&xz);
        }
        ExtElement::new(a, xz)
    }

    pub fn iota(&self, a: &Element) -> ExtElement {
        ExtElement::new(a.clone(), self.base.ring().zero())
    }

    pub fn pi(&self, u: &ExtElement) -> Scalar {
        u.xi.clone()
    }

    pub fn to_element(&self, u: &ExtElement) -> Element {
        let mut c = u.a.coords().to_vec();
        c.push(u.xi.clone());
        Element::new(c)
    }

    pub fn from_element(&self, x: &Element) -> ExtElement {
        let d = self.base.dim();
        ExtElement::new(Element::new(x.coords()[..d].to_vec()), x.coord(d).clone())
    }

    /// `ι` as a matrix `R → S`.
    pub fn iota_map(&self) -> LinMap {
        let d = self.base.dim();
        LinMap::from_fn(self.base.ring(), d + 1, d, |i| self.to_element(&self.iota(&self.base.basis(i))))
    }

    /// `π` as a matrix `S → 𝔽`.
    pub fn pi_map(&self) -> LinMap {
        let d = self.base.dim();
        let ring = self.base.ring();
        LinMap::from_fn(ring, 1, d + 1, |i| Element::new(vec![if i == d { ring.one() } else { ring.zero() }]))
    }

    /// Exactness of `0 → R → S → 𝔽 → 0` together with the ideal property
    /// of `ι(R)`.
    pub fn check_exactness(&self) -> Report {
        let mut rep = Report::new("check exactness");
        let d = self.base.dim();
        let ring = self.base.ring();
        let ext = &self.ext;

        let iota = self.iota_map();
        rep.push(CheckRecord::from_bool(
            "iota injective",
            iota.matrix().rank() == d,
            format!("rank {} < {d}", iota.matrix().rank()),
        ));

        let mut iota_mult = Ok(());
        'outer: for i in 0..d {
            for j in 0..d {
                let l = self.product(&self.iota(&self.base.basis(i)), &self.iota(&self.base.basis(j)));
                let r = self.iota(&self.base.basis_product(i, j));
                if l != r {
                    iota_mult = Err(crate::witness::Witness::new(
                        "iota(a)iota(b) = iota(ab)",
                        vec![i, j],
                        self.to_element(&l).into_coords(),
                        self.to_element(&r).into_coords(),
                    ));
                    break 'outer;
                }
            }
        }
        rep.push(CheckRecord::from_verdict("iota multiplicative", iota_mult));

        rep.push(CheckRecord::from_bool(
            "pi surjective",
            self.pi(&self.sigma()).is_one(),
            "pi(@sigma) != 1",
        ));

        let mut pi_mult = true;
        for i in 0..=d {
            for j in 0..=d {
                let p = ext.basis_product(i, j);
                let lhs = p.coord(d).clone();
                let rhs = ext.basis(i).coord(d) * ext.basis(j).coord(d);
                pi_mult &= lhs == rhs;
            }
        }
        rep.push(CheckRecord::from_bool("pi multiplicative", pi_mult, "pi(uv) != pi(u)pi(v)"));

        let composite = self.pi_map().after(&iota);
        rep.push(CheckRecord::from_bool("pi o iota = 0", composite.is_zero(), "nonzero composite"));

        let ker = self.pi_map().matrix().kernel_basis();
        let im: Vec<Vec<Scalar>> = (0..d).map(|i| iota.image(i).into_coords()).collect();
        let im = canonical_span(ring, d + 1, im);
        let ker = canonical_span(ring, d + 1, ker);
        rep.push(CheckRecord::from_bool("ker pi = im iota", ker == im, "subspaces differ"));

        let mut ideal = true;
        for i in 0..d {
            for j in 0..=d {
                ideal &= ext.basis_product(i, j).coord(d).is_zero();
                ideal &= ext.basis_product(j, i).coord(d).is_zero();
            }
        }
        rep.push(CheckRecord::from_bool("iota(R) is an ideal", ideal, "product leaves iota(R)"));
        rep
    }

    /// Whether the `d+1` coordinate vectors `images[i]` define an algebra
    /// isomorphism from this extension onto their span inside `target`.
    pub fn is_isomorphism_onto_image(&self, target: &Algebra, images: &[Element]) -> bool {
        let n = self.ext.dim();
        if images.len() != n {
            return false;
        }
        let cols: Vec<Vec<Scalar>> = images.iter().map(|e| e.coords().to_vec()).collect();
        let m = Matrix::from_columns(target.ring(), target.dim(), &cols);
        if m.rank() != n {
            return false;
        }
        let f = LinMap::from_matrix(m);
        (0..n).all(|i| {
            (0..n).all(|j| f.at(&self.ext.basis_product(i, j)) == target.product(&images[i], &images[j]))
        })
    }
}
