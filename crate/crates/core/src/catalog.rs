//! Worked examples: the matrix-unit algebras ℸ_n with their idempotent
//! multipliers ε_k, extensions of the zero endomorphism of ℸ_n, right-linear
//! derivations, and zero-multiplication algebras split into four blocks.

use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element, LinMap, DEFAULT_DIM_CAP};
use crate::homext::{ExtAlgebra, ExtElement};
use crate::linalg::{LinalgError, Matrix};
use crate::multiplier::{make_datum, DatumError, DoubleOperator, HomotheticDatum};
use crate::scalar::{Scalar, ScalarRing};
use crate::skewderiv::{
    check_deriv_ext, check_endo_ext, extend_deriv, extend_endo, is_skew_derivation, Quintuple, SkewError, Varsigma,
};
use crate::witness::Verdict;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("n must be at least 3, got {0}")]
    BadN(usize),
    #[error("k must satisfy 2 <= k <= n-1 = {}, got {k}", .n - 1)]
    BadK { n: usize, k: usize },
    #[error("bad family parameters: {0}")]
    BadFamilyParams(String),
    #[error("bad block dimensions: {0}")]
    BadDims(String),
    #[error("matrix units do not close under multiplication: e{0}{1} * e{2}{3}")]
    NotClosed(usize, usize, usize, usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Datum(#[from] DatumError),
    #[error(transparent)]
    Skew(#[from] SkewError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn unit_label(n: usize, a: usize, b: usize) -> String {
    if n >= 10 {
        format!("e{a}_{b}")
    } else {
        format!("e{a}{b}")
    }
}

/// The span of the given `n × n` matrix units (1-based `(row, col)`), which
/// must be closed under multiplication.
pub fn matrix_unit_algebra(
    name: &str,
    ring: ScalarRing,
    n: usize,
    units: &[(usize, usize)],
) -> Result<Algebra, CatalogError> {
    let mut entries = Vec::new();
    for (i, &(a, b)) in units.iter().enumerate() {
        for (j, &(c, d)) in units.iter().enumerate() {
            if b != c {
                continue;
            }
            let k = units.iter().position(|&u| u == (a, d)).ok_or(CatalogError::NotClosed(a, b, c, d))?;
            entries.push((i, j, k, ring.one()));
        }
    }
    let labels = units.iter().map(|&(a, b)| unit_label(n, a, b)).collect();
    Ok(Algebra::from_entries(name, ring, units.len(), entries, Some(labels), DEFAULT_DIM_CAP.max(units.len()))?)
}

/// ℸ_n with basis `e11, …, e1n, e2n, …, enn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Daleth {
    n: usize,
    algebra: Algebra,
}

pub fn daleth_units(n: usize) -> Vec<(usize, usize)> {
    (1..=n).map(|i| (1, i)).chain((2..=n).map(|j| (j, n))).collect()
}

pub fn daleth(n: usize, ring: ScalarRing) -> Result<Daleth, CatalogError> {
    if n < 3 {
        return Err(CatalogError::BadN(n));
    }
    let algebra = matrix_unit_algebra(&format!("daleth{n}"), ring, n, &daleth_units(n))?;
    Ok(Daleth { n, algebra })
}

impl Daleth {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn ring(&self) -> ScalarRing {
        self.algebra.ring()
    }

    /// Position of the unit `e_ab` in the basis.
    pub fn index(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.n;
        match (a, b) {
            (1, b) if (1..=n).contains(&b) => Some(b - 1),
            (a, b) if b == n && (2..=n).contains(&a) => Some(n + a - 2),
            _ => None,
        }
    }

    /// The unit `e_ab`; panics outside the span.
    pub fn e(&self, a: usize, b: usize) -> Element {
        let i = self.index(a, b).unwrap_or_else(|| panic!("e{a}{b} is not in daleth{}", self.n));
        self.algebra.basis(i)
    }

    /// Builds `Σ c · e_ab` from `(a, b, c)` triples.
    pub fn combination(&self, terms: &[(usize, usize, Scalar)]) -> Element {
        let mut x = self.algebra.zero();
        for (a, b, c) in terms {
            x = &x + &self.e(*a, *b).scale(c);
        }
        x
    }

    fn check_k(&self, k: usize) -> Result<(), CatalogError> {
        if k < 2 || k + 1 > self.n {
            return Err(CatalogError::BadK { n: self.n, k });
        }
        Ok(())
    }

    /// Multiplication by `e_kk`: `x ε_k = ξ_k e_1k` and `ε_k x = ξ^k e_kn`.
    pub fn epsilon(&self, k: usize) -> Result<DoubleOperator, CatalogError> {
        self.check_k(k)?;
        let ring = self.ring();
        let d = self.algebra.dim();
        let i1k = self.index(1, k).expect("in span");
        let ikn = self.index(k, self.n).expect("in span");
        let keep = |idx: usize| {
            LinMap::from_fn(ring, d, d, |i| if i == idx { self.algebra.basis(i) } else { self.algebra.zero() })
        };
        Ok(DoubleOperator {
            left: keep(i1k),
            right: keep(ikn),
        })
    }

    /// The datum `(ε_k, 0)`.
    pub fn epsilon_datum(&self, k: usize) -> Result<HomotheticDatum, CatalogError> {
        Ok(make_datum(&self.algebra, self.epsilon(k)?, self.algebra.zero())?)
    }

    /// ℸ_n ⊕ 𝔽e_kk inside the full matrix algebra, with `e_kk` last.
    pub fn with_diagonal_unit(&self, k: usize) -> Result<Algebra, CatalogError> {
        self.check_k(k)?;
        let mut units = daleth_units(self.n);
        units.push((k, k));
        matrix_unit_algebra(&format!("daleth{}+e{k}{k}", self.n), self.ring(), self.n, &units)
    }

    /// `(ℸ_n(ε_k, 0), images)` where the images realise `x + ξ𝛔 ↦ x + ξe_kk`.
    pub fn extension_embedding(&self, k: usize) -> Result<(ExtAlgebra, Algebra, Vec<Element>), CatalogError> {
        let ext = ExtAlgebra::new(&self.algebra, &self.epsilon_datum(k)?).map_err(|e| match e {
            crate::homext::ExtError::Algebra(a) => CatalogError::Algebra(a),
        })?;
        let target = self.with_diagonal_unit(k)?;
        let images = (0..target.dim()).map(|i| target.basis(i)).collect();
        Ok((ext, target, images))
    }

    /// The right-linear map `δ(e_1i) = γ_1 e_1i`, `δ(e_jn) = γ_j e_jn`.
    pub fn rlin_derivation(&self, gammas: &[Scalar]) -> Result<LinMap, CatalogError> {
        if gammas.len() != self.n {
            return Err(CatalogError::BadFamilyParams(format!(
                "{} gammas given, expected {}",
                gammas.len(),
                self.n
            )));
        }
        let d = self.algebra.dim();
        let n = self.n;
        let map = LinMap::from_fn(self.ring(), d, d, |i| {
            let g = if i < n { &gammas[0] } else { &gammas[i - n + 1] };
            self.algebra.basis(i).scale(g)
        });
        let zero = LinMap::zero(self.ring(), d, d);
        is_skew_derivation(&self.algebra, &zero, &map).map_err(SkewError::NotASkewDerivation)?;
        Ok(map)
    }
}

/// Right-module endomorphisms `f(ab) = f(a)b` of ℸ_n, compared with the
/// diagonal family of [`Daleth::rlin_derivation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightLinearAudit {
    pub dimension: usize,
    pub diagonal_dimension: usize,
    /// A right-linear map outside the diagonal family, if any.
    pub outside_example: Option<LinMap>,
}

impl RightLinearAudit {
    pub fn complete(&self) -> bool {
        self.outside_example.is_none()
    }
}

pub fn right_linear_audit(dal: &Daleth) -> RightLinearAudit {
    let alg = dal.algebra();
    let d = alg.dim();
    let ring = alg.ring();
    // unknowns: f[t][m] at t * d + m
    let mut rows = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for t in 0..d {
                let mut row = vec![ring.zero(); d * d];
                for k in 0..d {
                    row[t * d + k] += alg.sc(i, j, k);
                    row[k * d + i] -= alg.sc(k, j, t);
                }
                rows.push(row);
            }
        }
    }
    let kernel = Matrix::from_rows(ring, rows).expect("uniform").kernel_basis();
    let diagonal = |v: &[Scalar]| -> bool {
        let n = dal.n();
        (0..d).all(|t| {
            (0..d).all(|m| {
                let x = &v[t * d + m];
                if t != m {
                    return x.is_zero();
                }
                // first block shares γ_1
                if t < n {
                    x == &v[0]
                } else {
                    true
                }
            })
        })
    };
    let outside = kernel.iter().find(|v| !diagonal(v)).map(|v| {
        let rows = (0..d).map(|t| v[t * d..(t + 1) * d].to_vec()).collect();
        LinMap::from_matrix(Matrix::from_rows(ring, rows).expect("square"))
    });
    RightLinearAudit {
        dimension: kernel.len(),
        diagonal_dimension: dal.n(),
        outside_example: outside,
    }
}

/// Parameters of an extension `θ^ς` of the zero endomorphism of ℸ_n to
/// ℸ_n(ε_k, 0), described by `w = θ^ς(𝛔) − ς𝛔`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaFamily {
    /// `ς = 0`, `w = p e11 + q enn`.
    Zero { p: Scalar, q: Scalar },
    /// `ς = 1`, `w = υ e1k`.
    One { upsilon: Scalar },
    /// `ς = 1`, `w = e11 + Σ_{j=2..n} υ_j e1j`; `upsilon[j-2] = υ_j`.
    Two { upsilon: Vec<Scalar> },
    /// `ς = 1`, `w = υ_n e1n + Σ_{j=2..n-1} υ^j ejn + enn`;
    /// `upsilon_up[j-2] = υ^j`.
    Three { upsilon_n: Scalar, upsilon_up: Vec<Scalar> },
    /// `ς = 1`, `w = e11 + Σ_{j≠k} (υ_j e1j − υ_jυ^j e1n + υ^j ejn) + enn`
    /// over `j = 2..n-1`; entries at `j = k` must be zero.
    Four { lower: Vec<Scalar>, upper: Vec<Scalar> },
}

impl ThetaFamily {
    pub fn varsigma(&self) -> Varsigma {
        match self {
            ThetaFamily::Zero { .. } => Varsigma::Zero,
            _ => Varsigma::One,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ThetaFamily::Zero { .. } => "theta0",
            ThetaFamily::One { .. } => "1",
            ThetaFamily::Two { .. } => "2",
            ThetaFamily::Three { .. } => "3",
            ThetaFamily::Four { .. } => "4",
        }
    }

    fn check_lengths(&self, n: usize, k: usize) -> Result<(), CatalogError> {
        let bad = |what: &str, got: usize, want: usize| {
            Err(CatalogError::BadFamilyParams(format!("{what} has {got} entries, expected {want}")))
        };
        match self {
            ThetaFamily::Two { upsilon } if upsilon.len() != n - 1 => bad("upsilon", upsilon.len(), n - 1),
            ThetaFamily::Three { upsilon_up, .. } if upsilon_up.len() != n - 2 => bad("upsilon_up", upsilon_up.len(), n - 2),
            ThetaFamily::Four { lower, upper } => {
                if lower.len() != n - 2 {
                    return bad("lower", lower.len(), n - 2);
                }
                if upper.len() != n - 2 {
                    return bad("upper", upper.len(), n - 2);
                }
                if !lower[k - 2].is_zero() || !upper[k - 2].is_zero() {
                    return Err(CatalogError::BadFamilyParams(format!("family 4 has no j = k = {k} term")));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// `w` for these parameters (no validation beyond lengths).
    pub fn w(&self, dal: &Daleth, k: usize) -> Result<Element, CatalogError> {
        self.build_w(dal, k, true)
    }

    /// `w` exactly as the family is usually displayed: identical to
    /// [`ThetaFamily::w`] except that family 3 lacks the `enn` term.
    pub fn reference_w(&self, dal: &Daleth, k: usize) -> Result<Element, CatalogError> {
        self.build_w(dal, k, false)
    }

    fn build_w(&self, dal: &Daleth, k: usize, corner: bool) -> Result<Element, CatalogError> {
        dal.check_k(k)?;
        let n = dal.n();
        self.check_lengths(n, k)?;
        let ring = dal.ring();
        let one = ring.one();
        let mut terms: Vec<(usize, usize, Scalar)> = Vec::new();
        match self {
            ThetaFamily::Zero { p, q } => {
                terms.push((1, 1, p.clone()));
                terms.push((n, n, q.clone()));
            }
            ThetaFamily::One { upsilon } => terms.push((1, k, upsilon.clone())),
            ThetaFamily::Two { upsilon } => {
                terms.push((1, 1, one));
                for j in 2..=n {
                    terms.push((1, j, upsilon[j - 2].clone()));
                }
            }
            ThetaFamily::Three { upsilon_n, upsilon_up } => {
                terms.push((1, n, upsilon_n.clone()));
                for j in 2..n {
                    terms.push((j, n, upsilon_up[j - 2].clone()));
                }
                if corner {
                    terms.push((n, n, one));
                }
            }
            ThetaFamily::Four { lower, upper } => {
                terms.push((1, 1, one.clone()));
                for j in (2..n).filter(|&j| j != k) {
                    let (l, u) = (&lower[j - 2], &upper[j - 2]);
                    terms.push((1, j, l.clone()));
                    terms.push((1, n, -(l * u)));
                    terms.push((j, n, u.clone()));
                }
                terms.push((n, n, one));
            }
        }
        Ok(dal.combination(&terms))
    }

    /// Every parameter choice of this family's shape over a prime field.
    pub fn sweep(family: u8, n: usize, k: usize, ring: ScalarRing) -> Vec<ThetaFamily> {
        let elems: Vec<Scalar> = ring.elements().expect("prime field").collect();
        let tuples = |len: usize| -> Vec<Vec<Scalar>> {
            let mut out = vec![Vec::new()];
            for _ in 0..len {
                out = out
                    .into_iter()
                    .flat_map(|v| {
                        elems.iter().map(move |x| {
                            let mut v = v.clone();
                            v.push(x.clone());
                            v
                        })
                    })
                    .collect();
            }
            out
        };
        match family {
            0 => {
                let bits = [ring.zero(), ring.one()];
                bits.iter()
                    .flat_map(|p| bits.iter().map(move |q| ThetaFamily::Zero { p: p.clone(), q: q.clone() }))
                    .collect()
            }
            1 => elems.iter().map(|u| ThetaFamily::One { upsilon: u.clone() }).collect(),
            2 => tuples(n - 1).into_iter().map(|upsilon| ThetaFamily::Two { upsilon }).collect(),
            3 => tuples(n - 1)
                .into_iter()
                .map(|mut v| {
                    let upsilon_n = v.remove(0);
                    ThetaFamily::Three { upsilon_n, upsilon_up: v }
                })
                .collect(),
            4 => {
                let free = n - 3;
                let expand = |v: &[Scalar]| {
                    let mut out = Vec::with_capacity(n - 2);
                    let mut it = v.iter();
                    for j in 2..n {
                        out.push(if j == k { ring.zero() } else { it.next().expect("length").clone() });
                    }
                    out
                };
                tuples(2 * free)
                    .into_iter()
                    .map(|v| ThetaFamily::Four {
                        lower: expand(&v[..free]),
                        upper: expand(&v[free..]),
                    })
                    .collect()
            }
            _ => Vec::new(),
        }
    }

    /// The obstruction stated for extending the right-linear derivation
    /// with the given `γ`: `true` when an extension is asserted to exist.
    pub fn reference_extends(&self, n: usize, k: usize, gammas: &[Scalar]) -> bool {
        let gn = &gammas[n - 1];
        match self {
            ThetaFamily::Zero { .. } | ThetaFamily::One { .. } => true,
            ThetaFamily::Two { upsilon } => (&gammas[k - 1] * &upsilon[k - 2]).is_zero(),
            ThetaFamily::Three { upsilon_n, upsilon_up } => {
                (upsilon_n * gn).is_zero()
                    && (2..n).filter(|&j| j != k).all(|j| (&upsilon_up[j - 2] * gn).is_zero())
            }
            ThetaFamily::Four { lower, upper } => {
                (2..n).filter(|&j| j != k).all(|j| (&(gn * &lower[j - 2]) * &upper[j - 2]).is_zero())
            }
        }
    }

    /// The `e = δ_S(𝛔) − μ𝛔` stated for families 1 to 4.
    pub fn reference_e(&self, dal: &Daleth, k: usize, gammas: &[Scalar]) -> Option<Element> {
        let n = dal.n();
        let g = |i: usize| gammas[i - 1].clone();
        let terms: Vec<(usize, usize, Scalar)> = match self {
            ThetaFamily::Zero { .. } => return None,
            ThetaFamily::One { upsilon } => vec![(1, k, -(&g(k) * upsilon))],
            ThetaFamily::Two { upsilon } => {
                let mut t = vec![(1, 1, -g(1))];
                for i in (2..=n).filter(|&i| i != k) {
                    t.push((1, i, -(&g(i) * &upsilon[i - 2])));
                }
                t
            }
            ThetaFamily::Three { upsilon_up, .. } => vec![(k, n, -(&upsilon_up[k - 2] * &g(n)))],
            ThetaFamily::Four { lower, upper } => {
                let mut t = vec![(1, 1, -g(1))];
                for j in (2..n).filter(|&j| j != k) {
                    t.push((1, j, -(&g(j) * &lower[j - 2])));
                    t.push((j, n, -(&g(n) * &upper[j - 2])));
                }
                t.push((n, n, -g(n)));
                t
            }
        };
        Some(dal.combination(&terms))
    }
}

/// Validated `(w, ς)` for a family member: `check_endo_ext` must accept
/// `(α = 0, w, ς)` over `(ε_k, 0)`.
pub fn theta_family(dal: &Daleth, k: usize, family: &ThetaFamily) -> Result<(Element, Varsigma), CatalogError> {
    let w = family.w(dal, k)?;
    let vs = family.varsigma();
    let datum = dal.epsilon_datum(k)?;
    let alg = dal.algebra();
    let zero = LinMap::zero(alg.ring(), alg.dim(), alg.dim());
    check_endo_ext(alg, &datum, &zero, &w, vs)
        .map_err(|wit| CatalogError::BadFamilyParams(format!("w = {} does not extend: {wit}", alg.format_element(&w))))?;
    Ok((w, vs))
}

/// The stated θ⁰ extension data for `w = p e11 + q enn`: `μ = 0` when
/// `pq = 0`, and the corresponding `e` (as a function of `μ` when
/// `p = q = 1`).
pub fn reference_theta0(dal: &Daleth, k: usize, p: &Scalar, q: &Scalar, gammas: &[Scalar], mu: &Scalar) -> (Option<Scalar>, Element) {
    let n = dal.n();
    let ring = dal.ring();
    let g = |i: usize| gammas[i - 1].clone();
    if (p * q).is_zero() {
        let e = dal.combination(&[(1, 1, -(p * &g(1))), (1, n, g(k)), (n, n, -(q * &g(n)))]);
        (Some(ring.zero()), e)
    } else {
        let mut terms = vec![(1, 1, -(&g(1) + mu))];
        for j in (2..n).filter(|&j| j != k) {
            terms.push((1, j, -mu.clone()));
        }
        terms.push((1, k, &g(k) - mu));
        terms.push((n, n, -(&g(n) + mu)));
        (None, dal.combination(&terms))
    }
}

/// Dimensions of the blocks `A_1 ⊕ A_2 ⊕ A_3 ⊕ A_4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroMultSpec {
    pub dims: [usize; 4],
    pub ring: ScalarRing,
}

/// The zero-multiplication algebra `A_1 ⊕ … ⊕ A_4` with the datum
/// `σ→ = ω1π1 + ω3π3`, `σ← = ω2π2 + ω3π3`, `s = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroMult {
    pub spec: ZeroMultSpec,
    pub algebra: Algebra,
    pub datum: HomotheticDatum,
}

/// A `4 × 4` grid of block maps; `blocks[i][j]` is `A_{i+1} → A_{j+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMaps {
    pub blocks: Vec<Vec<Matrix>>,
}

impl BlockMaps {
    pub fn zero(spec: &ZeroMultSpec) -> Self {
        BlockMaps {
            blocks: (0..4)
                .map(|i| (0..4).map(|j| Matrix::zero(spec.ring, spec.dims[j], spec.dims[i])).collect())
                .collect(),
        }
    }

    /// Identity on each `A_i → A_i` block.
    pub fn identity_diagonal(spec: &ZeroMultSpec) -> Self {
        let mut b = Self::zero(spec);
        for i in 0..4 {
            b.blocks[i][i] = Matrix::identity(spec.ring, spec.dims[i]);
        }
        b
    }

    /// Splits an arbitrary map on `R` into its blocks.
    pub fn from_map(zm: &ZeroMult, f: &LinMap) -> Self {
        let spec = &zm.spec;
        let blocks = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        let mut m = Matrix::zero(spec.ring, spec.dims[j], spec.dims[i]);
                        for c in 0..spec.dims[i] {
                            for r in 0..spec.dims[j] {
                                m.set(r, c, f.matrix().get(zm.offset(j) + r, zm.offset(i) + c).clone());
                            }
                        }
                        m
                    })
                    .collect()
            })
            .collect();
        BlockMaps { blocks }
    }

    /// `α_ij(x)` for `x ∈ A_i`.
    pub fn apply(&self, i: usize, j: usize, x: &[Scalar]) -> Vec<Scalar> {
        self.blocks[i][j].mul_vec(x)
    }
}

impl ZeroMult {
    pub fn new(spec: ZeroMultSpec) -> Result<Self, CatalogError> {
        if !spec.ring.is_field() {
            return Err(CatalogError::Linalg(LinalgError::NotAField(spec.ring)));
        }
        let dim: usize = spec.dims.iter().sum();
        if dim == 0 {
            return Err(CatalogError::BadDims("all blocks are empty".into()));
        }
        let mut labels = Vec::with_capacity(dim);
        for (b, &di) in spec.dims.iter().enumerate() {
            for t in 0..di {
                labels.push(if di == 1 { format!("a{}", b + 1) } else { format!("a{}_{}", b + 1, t + 1) });
            }
        }
        let algebra = Algebra::from_entries(
            format!("zero{}{}{}{}", spec.dims[0], spec.dims[1], spec.dims[2], spec.dims[3]),
            spec.ring,
            dim,
            std::iter::empty(),
            Some(labels),
            DEFAULT_DIM_CAP.max(dim),
        )?;
        let mut zm = ZeroMult {
            spec,
            datum: HomotheticDatum::new_unchecked(DoubleOperator::zero(&algebra), algebra.zero()),
            algebra,
        };
        let proj = |blocks: &[usize]| {
            LinMap::from_fn(spec.ring, dim, dim, |i| {
                if blocks.contains(&zm.block_of(i)) {
                    zm.algebra.basis(i)
                } else {
                    zm.algebra.zero()
                }
            })
        };
        let sigma = DoubleOperator {
            left: proj(&[1, 2]),
            right: proj(&[0, 2]),
        };
        zm.datum = make_datum(&zm.algebra, sigma, zm.algebra.zero())?;
        Ok(zm)
    }

    /// First coordinate of block `i` (0-based).
    pub fn offset(&self, i: usize) -> usize {
        self.spec.dims[..i].iter().sum()
    }

    pub fn block_of(&self, coord: usize) -> usize {
        let mut acc = 0;
        for (b, &d) in self.spec.dims.iter().enumerate() {
            acc += d;
            if coord < acc {
                return b;
            }
        }
        panic!("coordinate {coord} out of range")
    }

    /// `π_i(a)`
    pub fn pi(&self, i: usize, a: &Element) -> Vec<Scalar> {
        a.coords()[self.offset(i)..self.offset(i) + self.spec.dims[i]].to_vec()
    }

    /// `ω_i(x)`
    pub fn omega(&self, i: usize, x: &[Scalar]) -> Element {
        let mut out = self.algebra.zero().into_coords();
        out[self.offset(i)..self.offset(i) + self.spec.dims[i]].clone_from_slice(x);
        Element::new(out)
    }

    pub fn extension(&self) -> ExtAlgebra {
        ExtAlgebra::new(&self.algebra, &self.datum).expect("valid datum")
    }

    fn assemble(&self, f: impl Fn(&Element) -> [Vec<Scalar>; 4]) -> LinMap {
        let d = self.algebra.dim();
        LinMap::from_fn(self.spec.ring, d, d, |i| {
            let parts = f(&self.algebra.basis(i));
            let mut out = self.algebra.zero();
            for (b, p) in parts.iter().enumerate() {
                out = &out + &self.omega(b, p);
            }
            out
        })
    }

    /// `α = ς Σ_i ω_i α_ii π_i + (1−ς) Σ_j ω_j α_4j π_4`.
    pub fn alpha_from_blocks(&self, vs: Varsigma, blocks: &BlockMaps) -> LinMap {
        self.assemble(|a| {
            std::array::from_fn(|j| match vs {
                Varsigma::One => blocks.apply(j, j, &self.pi(j, a)),
                Varsigma::Zero => blocks.apply(3, j, &self.pi(3, a)),
            })
        })
    }

    /// `δ = ω2d22π2 + ω4d44π4 + ς(ω1d11π1 + ω3d33π3) + (1−ς)(ω3d23π2 + ω1d41π4)
    ///     + μ(ω1π1 + ω3π3 − ω2α42π4 − ω3α43π4)`.
    pub fn delta_from_blocks(&self, vs: Varsigma, mu: &Scalar, d: &BlockMaps, alpha: &BlockMaps) -> LinMap {
        let ring = self.spec.ring;
        let add = |x: Vec<Scalar>, y: Vec<Scalar>| -> Vec<Scalar> { x.iter().zip(&y).map(|(a, b)| a + b).collect() };
        let scale = |x: Vec<Scalar>, k: &Scalar| -> Vec<Scalar> { x.iter().map(|a| a * k).collect() };
        let one = ring.one();
        let (t, u) = match vs {
            Varsigma::One => (one.clone(), ring.zero()),
            Varsigma::Zero => (ring.zero(), one.clone()),
        };
        self.assemble(|a| {
            let a1 = self.pi(0, a);
            let a2 = self.pi(1, a);
            let a3 = self.pi(2, a);
            let a4 = self.pi(3, a);
            let c1 = add(
                add(scale(d.apply(0, 0, &a1), &t), scale(d.apply(3, 0, &a4), &u)),
                scale(a1.clone(), mu),
            );
            let c2 = add(d.apply(1, 1, &a2), scale(alpha.apply(3, 1, &a4), &-mu.clone()));
            let c3 = add(
                add(scale(d.apply(2, 2, &a3), &t), scale(d.apply(1, 2, &a2), &u)),
                scale(add(a3.clone(), scale(alpha.apply(3, 2, &a4), &-one.clone())), mu),
            );
            let c4 = d.apply(3, 3, &a4);
            [c1, c2, c3, c4]
        })
    }

    /// `w = ς(w_1 + w_2)` with `w_i = π_i(source)`.
    pub fn w_from(&self, vs: Varsigma, source: &Element) -> Element {
        match vs {
            Varsigma::One => &self.omega(0, &self.pi(0, source)) + &self.omega(1, &self.pi(1, source)),
            Varsigma::Zero => self.algebra.zero(),
        }
    }

    /// `e = ςe_1 + e_2 + (1−ς)e_3` with `e_i = π_i(source)`.
    pub fn e_from(&self, vs: Varsigma, source: &Element) -> Element {
        let side = match vs {
            Varsigma::One => 0,
            Varsigma::Zero => 2,
        };
        &self.omega(side, &self.pi(side, source)) + &self.omega(1, &self.pi(1, source))
    }

    /// `α_S(a + k𝛔)` evaluated component-wise:
    /// `(ς(a11 + kw1) + (1−ς)a41, ς(a22 + kw2) + (1−ς)a42, ςa33 + (1−ς)a43, a44) + kς𝛔`.
    pub fn alpha_s_components(&self, vs: Varsigma, blocks: &BlockMaps, w: &Element) -> LinMap {
        let ext = self.extension();
        let ring = self.spec.ring;
        let n = self.algebra.dim() + 1;
        LinMap::from_fn(ring, n, n, |i| {
            let u = ext.from_element(&ext.as_algebra().basis(i));
            let k = &u.xi;
            let parts: [Vec<Scalar>; 4] = std::array::from_fn(|j| {
                let mut c = match vs {
                    Varsigma::One => blocks.apply(j, j, &self.pi(j, &u.a)),
                    Varsigma::Zero => blocks.apply(3, j, &self.pi(3, &u.a)),
                };
                if vs.is_one() && j < 2 {
                    for (x, wj) in c.iter_mut().zip(self.pi(j, w)) {
                        *x += &(k * &wj);
                    }
                }
                c
            });
            let mut a = self.algebra.zero();
            for (b, p) in parts.iter().enumerate() {
                a = &a + &self.omega(b, p);
            }
            ext.to_element(&ExtElement::new(a, k * &vs.scalar(ring)))
        })
    }

    /// `δ_S(a + k𝛔)` evaluated component-wise:
    /// `(ς(aδ11 + ke1) + (1−ς)aδ41 + μa1, aδ22 − μa42 + ke2,
    ///   ςaδ33 + (1−ς)(aδ23 + ke3) + μ(a3 − a43), aδ44) + kμ𝛔`.
    pub fn delta_s_components(
        &self,
        vs: Varsigma,
        mu: &Scalar,
        d: &BlockMaps,
        alpha: &BlockMaps,
        e_source: &Element,
    ) -> LinMap {
        let ext = self.extension();
        let ring = self.spec.ring;
        let n = self.algebra.dim() + 1;
        let one = ring.one();
        let (t, u) = match vs {
            Varsigma::One => (one.clone(), ring.zero()),
            Varsigma::Zero => (ring.zero(), one.clone()),
        };
        let lin = |parts: &[(&Scalar, Vec<Scalar>)], len: usize| -> Vec<Scalar> {
            let mut out = vec![ring.zero(); len];
            for (c, v) in parts {
                for (o, x) in out.iter_mut().zip(v) {
                    *o += &(*c * x);
                }
            }
            out
        };
        let neg_mu = -mu.clone();
        LinMap::from_fn(ring, n, n, |i| {
            let el = ext.from_element(&ext.as_algebra().basis(i));
            let k = &el.xi;
            let a = &el.a;
            let (a1, a2, a3, a4) = (self.pi(0, a), self.pi(1, a), self.pi(2, a), self.pi(3, a));
            let e_parts: Vec<Vec<Scalar>> = (0..4).map(|b| self.pi(b, e_source)).collect();
            let dims = self.spec.dims;
            let tk = &t * k;
            let uk = &u * k;
            let c1 = lin(
                &[(&t, d.apply(0, 0, &a1)), (&tk, e_parts[0].clone()), (&u, d.apply(3, 0, &a4)), (mu, a1.clone())],
                dims[0],
            );
            let c2 = lin(&[(&one, d.apply(1, 1, &a2)), (&neg_mu, alpha.apply(3, 1, &a4)), (k, e_parts[1].clone())], dims[1]);
            let c3 = lin(
                &[
                    (&t, d.apply(2, 2, &a3)),
                    (&u, d.apply(1, 2, &a2)),
                    (&uk, e_parts[2].clone()),
                    (mu, a3.clone()),
                    (&neg_mu, alpha.apply(3, 2, &a4)),
                ],
                dims[2],
            );
            let c4 = d.apply(3, 3, &a4);
            let mut out = self.algebra.zero();
            for (b, p) in [c1, c2, c3, c4].iter().enumerate() {
                out = &out + &self.omega(b, p);
            }
            ext.to_element(&ExtElement::new(out, k * mu))
        })
    }
}

pub fn zero_mult_example(spec: ZeroMultSpec) -> Result<(Algebra, HomotheticDatum), CatalogError> {
    let zm = ZeroMult::new(spec)?;
    Ok((zm.algebra, zm.datum))
}

/// The block-built endomorphism together with its extension audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroMultEndo {
    pub alpha: LinMap,
    pub w: Element,
    pub verdict: Verdict,
    /// `extend_endo` output when the conditions hold.
    pub alpha_s: Option<LinMap>,
    pub alpha_s_components: LinMap,
}

pub fn zero_mult_endo(zm: &ZeroMult, vs: Varsigma, blocks: &BlockMaps, w_source: &Element) -> ZeroMultEndo {
    let alpha = zm.alpha_from_blocks(vs, blocks);
    let w = zm.w_from(vs, w_source);
    let verdict = check_endo_ext(&zm.algebra, &zm.datum, &alpha, &w, vs);
    let alpha_s = extend_endo(&zm.extension(), &alpha, &w, vs).ok();
    ZeroMultEndo {
        alpha_s_components: zm.alpha_s_components(vs, blocks, &w),
        alpha,
        w,
        verdict,
        alpha_s,
    }
}

/// The block-built derivation together with its extension audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroMultDeriv {
    pub endo: ZeroMultEndo,
    pub delta: LinMap,
    pub e: Element,
    pub mu: Scalar,
    pub verdict: Result<Verdict, SkewError>,
    pub quintuple: Option<Quintuple>,
    pub delta_s: Option<LinMap>,
    pub delta_s_components: LinMap,
}

#[allow(clippy::too_many_arguments)]
pub fn zero_mult_deriv(
    zm: &ZeroMult,
    vs: Varsigma,
    mu: &Scalar,
    d_blocks: &BlockMaps,
    alpha_blocks: &BlockMaps,
    w_source: &Element,
    e_source: &Element,
) -> ZeroMultDeriv {
    let endo = zero_mult_endo(zm, vs, alpha_blocks, w_source);
    let delta = zm.delta_from_blocks(vs, mu, d_blocks, alpha_blocks);
    let e = zm.e_from(vs, e_source);
    let verdict = check_deriv_ext(&zm.algebra, &zm.datum, &endo.alpha, &endo.w, vs, &delta, &e, mu);
    let quintuple = Quintuple::new(
        &zm.algebra,
        &zm.datum,
        endo.alpha.clone(),
        delta.clone(),
        endo.w.clone(),
        e.clone(),
        vs,
        mu.clone(),
    )
    .ok();
    let delta_s = quintuple.as_ref().and_then(|q| extend_deriv(&zm.extension(), q).ok());
    ZeroMultDeriv {
        delta_s_components: zm.delta_s_components(vs, mu, d_blocks, alpha_blocks, e_source),
        endo,
        delta,
        e,
        mu: mu.clone(),
        verdict,
        quintuple,
        delta_s,
    }
}
