//! From a compatible quintuple of type 1 to a homothetic datum `(σ̃, s)` on
//! the Ore extension `R[x; α, δ]`, and the embedding
//! `φ: R[x](σ̃, s) → S[x; α_S, δ_S]` with `S = R(σ, s)`.
//!
//! Every graded identity is checked on monomials up to a degree cap.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{Algebra, Element, LinMap};
use crate::homext::{ExtAlgebra, ExtElement, ExtError};
use crate::linalg::Matrix;
use crate::ore::{OreError, OrePoly, OreRing};
use crate::report::{CheckRecord, Report};
use crate::scalar::{Scalar, ScalarRing};
use crate::skewderiv::{extend_deriv, extend_endo, Quintuple, SkewError, Varsigma};
use crate::witness::Witness;

pub const DEFAULT_VERIFY_DEGREE: usize = 6;
pub const DEFAULT_SAMPLES: usize = 200;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BridgeError {
    #[error("the quintuple has type 0; the bridge needs type 1")]
    ContextNotType1,
    #[error("the quintuple has type 1; the probe needs type 0")]
    ContextNotType0,
    #[error("quintuple fails its compatibility conditions: {0}")]
    PreconditionFailed(Witness),
    #[error(transparent)]
    Skew(#[from] SkewError),
    #[error(transparent)]
    Ore(#[from] OreError),
    #[error(transparent)]
    Ext(#[from] ExtError),
}

/// `P + ξ𝛔` in `R[x](σ̃, s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreHomElement {
    pub poly: OrePoly,
    pub xi: Scalar,
}

/// Scalar polynomial coefficients, trailing zeros trimmed.
pub type ScalarPoly = Vec<Scalar>;

fn trim(mut v: ScalarPoly) -> ScalarPoly {
    while v.last().is_some_and(Scalar::is_zero) {
        v.pop();
    }
    v
}

#[derive(Clone, Debug)]
pub struct BridgeContext {
    ext: ExtAlgebra,
    quintuple: Quintuple,
    alpha_s: LinMap,
    delta_s: LinMap,
    ore_r: OreRing,
    ore_s: OreRing,
    degree: usize,
}

fn checked_extensions(alg: &Algebra, q: &Quintuple) -> Result<(ExtAlgebra, LinMap, LinMap), BridgeError> {
    q.check(alg)?.map_err(BridgeError::PreconditionFailed)?;
    let ext = ExtAlgebra::new(alg, &q.datum)?;
    let alpha_s = extend_endo(&ext, &q.alpha, &q.w, q.varsigma)?;
    let delta_s = extend_deriv(&ext, q)?;
    Ok((ext, alpha_s, delta_s))
}

impl BridgeContext {
    /// Checks are run up to degree `degree`; the Ore rings allow twice that.
    pub fn new(alg: &Algebra, q: Quintuple, degree: usize) -> Result<Self, BridgeError> {
        if q.varsigma != Varsigma::One {
            return Err(BridgeError::ContextNotType1);
        }
        let (ext, alpha_s, delta_s) = checked_extensions(alg, &q)?;
        let cap = 2 * degree + 2;
        let ore_r = OreRing::new(Arc::new(alg.clone()), q.alpha.clone(), q.delta.clone())?.with_degree_cap(cap);
        let ore_s =
            OreRing::new(Arc::new(ext.as_algebra().clone()), alpha_s.clone(), delta_s.clone())?.with_degree_cap(cap);
        Ok(BridgeContext {
            ext,
            quintuple: q,
            alpha_s,
            delta_s,
            ore_r,
            ore_s,
            degree,
        })
    }

    pub fn base(&self) -> &Algebra {
        self.ext.base()
    }

    pub fn ext(&self) -> &ExtAlgebra {
        &self.ext
    }

    pub fn quintuple(&self) -> &Quintuple {
        &self.quintuple
    }

    pub fn alpha_s(&self) -> &LinMap {
        &self.alpha_s
    }

    pub fn delta_s(&self) -> &LinMap {
        &self.delta_s
    }

    pub fn ore_r(&self) -> &OreRing {
        &self.ore_r
    }

    pub fn ore_s(&self) -> &OreRing {
        &self.ore_s
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn ring(&self) -> ScalarRing {
        self.base().ring()
    }

    pub fn iota_prime(&self, p: &OrePoly) -> OrePoly {
        p.map_coeffs(|a| self.ext.to_element(&self.ext.iota(a)))
    }

    /// The `𝛔`-coordinates as a scalar polynomial.
    pub fn pi_prime(&self, p: &OrePoly) -> ScalarPoly {
        let d = self.base().dim();
        trim(p.coeffs().iter().map(|c| c.coord(d).clone()).collect())
    }

    /// `(a + ζ𝛔)xⁿ ↦ axⁿ`
    pub fn p_split(&self, p: &OrePoly) -> OrePoly {
        p.map_coeffs(|c| self.ext.from_element(c).a)
    }

    /// `ζxⁿ ↦ ζ𝛔xⁿ`
    pub fn j_split(&self, f: &[Scalar]) -> OrePoly {
        OrePoly::from_coeffs(
            f.iter()
                .map(|z| self.ext.to_element(&ExtElement::new(self.base().zero(), z.clone())))
                .collect(),
        )
    }

    /// `𝛔` as a constant of `S[x]`.
    pub fn sigma_poly(&self) -> OrePoly {
        self.ore_s.monomial(self.ext.to_element(&self.ext.sigma()), 0)
    }

    /// `σ̃P = p(𝛔 ι′P)`
    pub fn sigma_tilde_left(&self, p: &OrePoly) -> Result<OrePoly, BridgeError> {
        Ok(self.p_split(&self.ore_s.ore_mul(&self.sigma_poly(), &self.iota_prime(p))?))
    }

    /// `Pσ̃ = p(ι′P 𝛔)`
    pub fn sigma_tilde_right(&self, p: &OrePoly) -> Result<OrePoly, BridgeError> {
        Ok(self.p_split(&self.ore_s.ore_mul(&self.iota_prime(p), &self.sigma_poly())?))
    }

    /// `Γ̄ⁿᵢ = p(Γ[α_S, δ_S]ⁿᵢ(𝛔))`
    pub fn gamma_bar(&self, n: usize, i: usize) -> Result<Element, BridgeError> {
        let g = self.ore_s.gamma(n, i)?;
        Ok(self.ext.from_element(&g.image(self.ext.sigma_index())).a)
    }

    fn constant(&self, a: &Element) -> OrePoly {
        self.ore_r.monomial(a.clone(), 0)
    }

    /// `(P + ξ𝛔)(Q + ζ𝛔) = PQ + ζPσ̃ + ξσ̃Q + ξζs + ξζ𝛔`
    pub fn hom_mul(&self, u: &OreHomElement, v: &OreHomElement) -> Result<OreHomElement, BridgeError> {
        let mut poly = self.ore_r.ore_mul(&u.poly, &v.poly)?;
        if !v.xi.is_zero() {
            poly = poly.add(&self.sigma_tilde_right(&u.poly)?.scale(&v.xi));
        }
        if !u.xi.is_zero() {
            poly = poly.add(&self.sigma_tilde_left(&v.poly)?.scale(&u.xi));
        }
        let xz = &u.xi * &v.xi;
        if !xz.is_zero() {
            poly = poly.add(&self.constant(self.quintuple.datum.s()).scale(&xz));
        }
        Ok(OreHomElement { poly, xi: xz })
    }

    /// `φ(P + ξ𝛔) = ι′P + ξ𝛔`
    pub fn phi(&self, u: &OreHomElement) -> OrePoly {
        self.iota_prime(&u.poly).add(&self.sigma_poly().scale(&u.xi))
    }

    /// `(axⁿ)σ̃` from `x̄σ̃ = (w̄ + σ̃)x̄ + ē` alone, starting at `aσ̃ = aσ`.
    pub fn recursive_right_action(&self, a: &Element, n: usize) -> Result<OrePoly, BridgeError> {
        let sigma = self.quintuple.datum.sigma();
        let mut acc = self.constant(&sigma.act_right_of(a));
        let w = self.constant(&self.quintuple.w);
        let e = self.constant(&self.quintuple.e);
        for m in 1..=n {
            let prev = self.ore_r.monomial(a.clone(), m - 1);
            let inner = self.ore_r.ore_mul(&prev, &w)?.add(&acc);
            acc = self.ore_r.x_right(&inner).add(&self.ore_r.ore_mul(&prev, &e)?);
        }
        Ok(acc)
    }

    /// `b_i xⁿ` for `n ≤ max_degree`, ordered by degree then basis index.
    pub fn monomials(&self, max_degree: usize) -> Vec<(usize, usize, OrePoly)> {
        let d = self.base().dim();
        (0..=max_degree)
            .flat_map(|n| (0..d).map(move |i| (n, i)))
            .map(|(n, i)| (n, i, self.ore_r.monomial(self.base().basis(i), n)))
            .collect()
    }

    pub fn random_poly(&self, rng: &mut ChaCha8Rng, max_degree: usize) -> OrePoly {
        let deg = rng.gen_range(0..=max_degree);
        let d = self.base().dim();
        let ring = self.ring();
        OrePoly::from_coeffs(
            (0..=deg)
                .map(|_| Element::new((0..d).map(|_| random_scalar(ring, rng)).collect()))
                .collect(),
        )
    }

    pub fn random_hom_element(&self, rng: &mut ChaCha8Rng, max_degree: usize) -> OreHomElement {
        let poly = self.random_poly(rng, max_degree);
        OreHomElement {
            poly,
            xi: random_scalar(self.ring(), rng),
        }
    }
}

pub fn random_scalar(ring: ScalarRing, rng: &mut impl Rng) -> Scalar {
    match ring.modulus() {
        Some(p) => ring.from_i64(rng.gen_range(0..p as i64)),
        None => ring.from_i64(rng.gen_range(-2..=2)),
    }
}

fn flatten(p: &OrePoly, d: usize, len: usize, ring: ScalarRing) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(len * d);
    for n in 0..len {
        match p.coeff(n) {
            Some(c) => out.extend(c.coords().iter().cloned()),
            None => out.extend((0..d).map(|_| ring.zero())),
        }
    }
    out
}

fn poly_witness(condition: &str, basis: Vec<usize>, lhs: &OrePoly, rhs: &OrePoly, d: usize, ring: ScalarRing) -> Witness {
    let len = lhs.coeffs().len().max(rhs.coeffs().len());
    Witness::new(condition, basis, flatten(lhs, d, len, ring), flatten(rhs, d, len, ring))
}

/// Collects the first failing instance of a polynomial identity.
struct Identity<'a> {
    name: &'a str,
    condition: &'a str,
    d: usize,
    ring: ScalarRing,
    failure: Option<Witness>,
    error: Option<BridgeError>,
    count: usize,
}

impl<'a> Identity<'a> {
    fn new(name: &'a str, condition: &'a str, ctx: &BridgeContext) -> Self {
        Identity {
            name,
            condition,
            d: ctx.base().dim(),
            ring: ctx.ring(),
            failure: None,
            error: None,
            count: 0,
        }
    }

    fn test(&mut self, basis: Vec<usize>, f: impl FnOnce() -> Result<(OrePoly, OrePoly), BridgeError>) {
        if self.failure.is_some() || self.error.is_some() {
            return;
        }
        match f() {
            Ok((l, r)) => {
                self.count += 1;
                if l != r {
                    self.failure = Some(poly_witness(self.condition, basis, &l, &r, self.d, self.ring));
                }
            }
            Err(e) => self.error = Some(e),
        }
    }

    fn record(self, range: &str) -> CheckRecord {
        if let Some(e) = self.error {
            return CheckRecord::fail(self.name, e.to_string());
        }
        match self.failure {
            Some(w) => CheckRecord::from_verdict(self.name, Err(w)),
            None => CheckRecord::pass(self.name).with_detail(format!("{} instances, {range}", self.count)),
        }
    }
}

fn bool_record(name: &str, ok: bool, detail: String, fail_detail: &str) -> CheckRecord {
    if ok {
        CheckRecord::pass(name).with_detail(detail)
    } else {
        CheckRecord::fail(name, fail_detail)
    }
}

/// Runs every check of the bridge up to the context's degree, sampling
/// `samples` random pairs with a ChaCha stream seeded by `seed`.
pub fn verify_diagram(ctx: &BridgeContext, samples: usize, seed: u64) -> Report {
    let mut rep = Report::new(format!("bridge-verify degree<={}", ctx.degree));
    let big_d = ctx.degree;
    let d = ctx.base().dim();
    let ring = ctx.ring();
    let alg = ctx.base();
    let sigma = ctx.quintuple.datum.sigma();
    let s = ctx.constant(ctx.quintuple.datum.s());
    let mons = ctx.monomials(big_d);
    let range = format!("degrees <= {big_d}");
    let r = &ctx.ore_r;

    // σ̃ on R and on monomials
    let mut id = Identity::new("sigma~ restricts to sigma on R", "sigma~ a = sigma a, a sigma~ = a sigma", ctx);
    for i in 0..d {
        let a = alg.basis(i);
        id.test(vec![i], || Ok((ctx.sigma_tilde_left(&ctx.constant(&a))?, ctx.constant(&sigma.act_left_of(&a)))));
        id.test(vec![i], || Ok((ctx.sigma_tilde_right(&ctx.constant(&a))?, ctx.constant(&sigma.act_right_of(&a)))));
    }
    rep.push(id.record("degree 0"));

    let mut id = Identity::new("sigma~ left action on monomials", "sigma~(a x^n) = (sigma a) x^n", ctx);
    for (n, i, m) in &mons {
        id.test(vec![*n, *i], || {
            Ok((ctx.sigma_tilde_left(m)?, r.monomial(sigma.act_left_of(&alg.basis(*i)), *n)))
        });
    }
    rep.push(id.record(&range));

    // (σ̃, s) is a homothetic datum on the truncation
    let pairs: Vec<_> = mons
        .iter()
        .flat_map(|a| mons.iter().map(move |b| (a, b)))
        .filter(|((n, ..), (m, ..))| n + m <= big_d)
        .collect();
    let mut b1 = Identity::new("sigma~ bimultiplication: sigma~(PQ) = (sigma~P)Q", "sigma~(PQ) = (sigma~P)Q", ctx);
    let mut b2 = Identity::new("sigma~ bimultiplication: (PQ)sigma~ = P(Qsigma~)", "(PQ)sigma~ = P(Qsigma~)", ctx);
    let mut b3 = Identity::new("sigma~ bimultiplication: P(sigma~Q) = (Psigma~)Q", "P(sigma~Q) = (Psigma~)Q", ctx);
    for ((n, i, p), (m, j, q)) in &pairs {
        let idx = vec![*n, *i, *m, *j];
        b1.test(idx.clone(), || {
            Ok((ctx.sigma_tilde_left(&r.ore_mul(p, q)?)?, r.ore_mul(&ctx.sigma_tilde_left(p)?, q)?))
        });
        b2.test(idx.clone(), || {
            Ok((ctx.sigma_tilde_right(&r.ore_mul(p, q)?)?, r.ore_mul(p, &ctx.sigma_tilde_right(q)?)?))
        });
        b3.test(idx, || {
            Ok((r.ore_mul(p, &ctx.sigma_tilde_left(q)?)?, r.ore_mul(&ctx.sigma_tilde_right(p)?, q)?))
        });
    }
    rep.push(b1.record(&range));
    rep.push(b2.record(&range));
    rep.push(b3.record(&range));

    let mut hom = Identity::new("sigma~ double homothetism", "sigma~(P sigma~) = (sigma~ P)sigma~", ctx);
    let mut sq_l = Identity::new("datum: sigma~^2 = sigma~ + s on the left", "sigma~(sigma~P) = sigma~P + sP", ctx);
    let mut sq_r = Identity::new("datum: sigma~^2 = sigma~ + s on the right", "(Psigma~)sigma~ = Psigma~ + Ps", ctx);
    for (n, i, p) in &mons {
        let idx = vec![*n, *i];
        hom.test(idx.clone(), || {
            Ok((ctx.sigma_tilde_left(&ctx.sigma_tilde_right(p)?)?, ctx.sigma_tilde_right(&ctx.sigma_tilde_left(p)?)?))
        });
        sq_l.test(idx.clone(), || {
            let once = ctx.sigma_tilde_left(p)?;
            Ok((ctx.sigma_tilde_left(&once)?, once.add(&r.ore_mul(&s, p)?)))
        });
        sq_r.test(idx, || {
            let once = ctx.sigma_tilde_right(p)?;
            Ok((ctx.sigma_tilde_right(&once)?, once.add(&r.ore_mul(p, &s)?)))
        });
    }
    rep.push(hom.record(&range));
    let mut comm = Identity::new("datum: sigma~ s = s sigma~", "sigma~ s = s sigma~", ctx);
    comm.test(vec![], || Ok((ctx.sigma_tilde_left(&s)?, ctx.sigma_tilde_right(&s)?)));
    rep.push(comm.record("constant s"));
    rep.push(sq_l.record(&range));
    rep.push(sq_r.record(&range));

    // x̄σ̃ = (w̄ + σ̃)x̄ + ē
    let w = ctx.constant(&ctx.quintuple.w);
    let e = ctx.constant(&ctx.quintuple.e);
    let mut xl = Identity::new("x sigma~ = (w + sigma~)x + e, left action", "(Px)sigma~ = (Pw + Psigma~)x + Pe", ctx);
    let mut xr = Identity::new("x sigma~ = (w + sigma~)x + e, right action", "x(sigma~P) = w(xP) + sigma~(xP) + eP", ctx);
    for (n, i, p) in mons.iter().filter(|(n, ..)| *n < big_d) {
        let idx = vec![*n, *i];
        xl.test(idx.clone(), || {
            let lhs = ctx.sigma_tilde_right(&r.x_right(p))?;
            let inner = r.ore_mul(p, &w)?.add(&ctx.sigma_tilde_right(p)?);
            Ok((lhs, r.x_right(&inner).add(&r.ore_mul(p, &e)?)))
        });
        xr.test(idx, || {
            let lhs = r.x_left(&ctx.sigma_tilde_left(p)?);
            let xp = r.x_left(p);
            let rhs = r.ore_mul(&w, &xp)?.add(&ctx.sigma_tilde_left(&xp)?).add(&r.ore_mul(&e, p)?);
            Ok((lhs, rhs))
        });
    }
    rep.push(xl.record(&format!("degrees < {big_d}")));
    rep.push(xr.record(&format!("degrees < {big_d}")));

    let mut uq = Identity::new("uniqueness: recursion reproduces sigma~", "(a x^n)sigma~ by recursion = definitional", ctx);
    for (n, i, p) in &mons {
        uq.test(vec![*n, *i], || Ok((ctx.recursive_right_action(&alg.basis(*i), *n)?, ctx.sigma_tilde_right(p)?)));
    }
    rep.push(uq.record(&range));

    // x̄ⁿσ̃ = σ̃x̄ⁿ + Σ Γ̄ⁿᵢ x̄ⁱ
    let mut xn = Identity::new("x^n sigma~ = sigma~ x^n + sum Gamma-bar x^i", "(P x^n)sigma~ = (P sigma~)x^n + sum P Gamma-bar^n_i x^i", ctx);
    for n in 1..=big_d.min(5) {
        for (m, i, p) in mons.iter().filter(|(m, ..)| m + n <= big_d) {
            xn.test(vec![n, *m, *i], || {
                let mut xp = p.clone();
                let mut right = ctx.sigma_tilde_right(p)?;
                for _ in 0..n {
                    xp = r.x_right(&xp);
                    right = r.x_right(&right);
                }
                let lhs = ctx.sigma_tilde_right(&xp)?;
                for k in 0..=n {
                    let g = ctx.constant(&ctx.gamma_bar(n, k)?);
                    let mut term = r.ore_mul(p, &g)?;
                    for _ in 0..k {
                        term = r.x_right(&term);
                    }
                    right = right.add(&term);
                }
                Ok((lhs, right))
            });
        }
    }
    rep.push(xn.record(&format!("n <= {}", big_d.min(5))));

    let mut g0 = Identity::new("Gamma-bar^n_0 = delta^(n-1)(e)", "Gamma-bar^n_0 = delta^(n-1)(e)", ctx);
    for n in 1..=big_d.min(5) {
        g0.test(vec![n], || {
            let lhs = ctx.gamma_bar(n, 0)?;
            let rhs = ctx.quintuple.delta.pow(n as u32 - 1).at(&ctx.quintuple.e);
            Ok((ctx.constant(&lhs), ctx.constant(&rhs)))
        });
    }
    rep.push(g0.record(&format!("n <= {}", big_d.min(5))));

    // bottom row 0 → R[x] → S[x] → 𝔽[x] → 0
    let images: Vec<Vec<Scalar>> = mons
        .iter()
        .map(|(_, _, m)| flatten(&ctx.iota_prime(m), d + 1, big_d + 1, ring))
        .collect();
    let rank = Matrix::from_rows(ring, images).map(|m| m.rank()).unwrap_or(0);
    rep.push(bool_record(
        "bottom row: iota' injective",
        rank == mons.len(),
        format!("rank {rank} on {} monomials", mons.len()),
        &format!("rank {rank} < {}", mons.len()),
    ));
    let s_mons: Vec<OrePoly> = (0..=big_d)
        .flat_map(|n| (0..=d).map(move |i| (n, i)))
        .map(|(n, i)| ctx.ore_s.monomial(ctx.ext.as_algebra().basis(i), n))
        .collect();
    let surj = (0..=big_d).all(|n| {
        let mut f = vec![ring.zero(); n + 1];
        f[n] = ring.one();
        ctx.pi_prime(&ctx.j_split(&f)) == f
    });
    rep.push(bool_record("bottom row: pi' surjective", surj, range.clone(), "pi'(j(x^n)) != x^n"));
    let zero_comp = mons.iter().all(|(_, _, m)| ctx.pi_prime(&ctx.iota_prime(m)).is_empty());
    rep.push(bool_record("bottom row: pi' o iota' = 0", zero_comp, range.clone(), "nonzero composite"));
    let split = s_mons
        .iter()
        .all(|p| &ctx.iota_prime(&ctx.p_split(p)).add(&ctx.j_split(&ctx.pi_prime(p))) == p);
    let retract = mons.iter().all(|(_, _, m)| &ctx.p_split(&ctx.iota_prime(m)) == m);
    rep.push(bool_record(
        "bottom row: ker pi' = im iota' (iota'p + j pi' = id, p iota' = id)",
        split && retract,
        range.clone(),
        "splitting identities fail",
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = big_d / 2;
    let mut iota_mul = Identity::new("bottom row: iota' multiplicative", "iota'(PQ) = iota'(P)iota'(Q)", ctx);
    let mut pi_mul = true;
    let mut ideal = true;
    let mut top_pi = true;
    let mut top_iota = Identity::new("top row: iota multiplicative", "iota(PQ) = iota(P)iota(Q)", ctx);
    let mut top_ideal = true;
    let mut phi_mul = Identity::new("phi multiplicative", "phi(uv) = phi(u)phi(v)", ctx);
    let s_ring = &ctx.ore_s;
    for t in 0..samples {
        let p = ctx.random_poly(&mut rng, half);
        let q = ctx.random_poly(&mut rng, half);
        iota_mul.test(vec![t], || {
            Ok((ctx.iota_prime(&r.ore_mul(&p, &q)?), s_ring.ore_mul(&ctx.iota_prime(&p), &ctx.iota_prime(&q))?))
        });
        let sp = s_random(ctx, &mut rng, half);
        let sq = s_random(ctx, &mut rng, half);
        if let Ok(prod) = s_ring.ore_mul(&sp, &sq) {
            pi_mul &= ctx.pi_prime(&prod) == scalar_poly_mul(&ctx.pi_prime(&sp), &ctx.pi_prime(&sq), ring);
        }
        if let (Ok(l), Ok(rr)) = (s_ring.ore_mul(&ctx.iota_prime(&p), &sp), s_ring.ore_mul(&sp, &ctx.iota_prime(&p))) {
            ideal &= ctx.pi_prime(&l).is_empty() && ctx.pi_prime(&rr).is_empty();
        }

        let u = ctx.random_hom_element(&mut rng, half);
        let v = ctx.random_hom_element(&mut rng, half);
        match ctx.hom_mul(&u, &v) {
            Ok(uv) => {
                top_pi &= uv.xi == &u.xi * &v.xi;
                let pu = OreHomElement { poly: p.clone(), xi: ring.zero() };
                let l = ctx.hom_mul(&pu, &v);
                let rr = ctx.hom_mul(&v, &pu);
                top_ideal &= matches!((&l, &rr), (Ok(a), Ok(b)) if a.xi.is_zero() && b.xi.is_zero());
                phi_mul.test(vec![t], || Ok((ctx.phi(&uv), s_ring.ore_mul(&ctx.phi(&u), &ctx.phi(&v))?)));
            }
            Err(e) => {
                phi_mul.test(vec![t], || Err(e));
            }
        }
        let pq = OreHomElement { poly: q.clone(), xi: ring.zero() };
        let pp = OreHomElement { poly: p.clone(), xi: ring.zero() };
        top_iota.test(vec![t], || Ok((ctx.hom_mul(&pp, &pq)?.poly, r.ore_mul(&p, &q)?)));
    }
    let sampled = format!("{samples} samples, degrees <= {half}");
    rep.push(iota_mul.record(&sampled));
    rep.push(bool_record("bottom row: pi' multiplicative", pi_mul, sampled.clone(), "pi'(PQ) != pi'(P)pi'(Q)"));
    rep.push(bool_record("bottom row: iota'(R[x]) is an ideal", ideal, sampled.clone(), "product leaves ker pi'"));

    // top row 0 → R[x] → R[x](σ̃,s) → 𝔽 → 0
    rep.push(top_iota.record(&sampled));
    rep.push(bool_record("top row: pi multiplicative", top_pi, sampled.clone(), "pi(uv) != pi(u)pi(v)"));
    rep.push(bool_record("top row: iota(R[x]) is an ideal", top_ideal, sampled.clone(), "product leaves R[x]"));
    rep.push(CheckRecord::pass("top row: iota injective, pi surjective, ker pi = im iota").with_detail("by construction of P + xi*sigma"));

    // φ
    let mut phi_images: Vec<Vec<Scalar>> = mons
        .iter()
        .map(|(_, _, m)| flatten(&ctx.phi(&OreHomElement { poly: m.clone(), xi: ring.zero() }), d + 1, big_d + 1, ring))
        .collect();
    let phi_sigma = ctx.phi(&OreHomElement { poly: OrePoly::zero(), xi: ring.one() });
    phi_images.push(flatten(&phi_sigma, d + 1, big_d + 1, ring));
    let prank = Matrix::from_rows(ring, phi_images).map(|m| m.rank()).unwrap_or(0);
    rep.push(bool_record(
        "phi injective",
        prank == mons.len() + 1,
        format!("rank {prank} on monomials and sigma, {range}"),
        &format!("rank {prank} < {}", mons.len() + 1),
    ));
    rep.push(phi_mul.record(&sampled));
    let phi_const = (0..d).all(|i| {
        let a = alg.basis(i);
        ctx.phi(&OreHomElement { poly: ctx.constant(&a), xi: ring.zero() }) == ctx.iota_prime(&ctx.constant(&a))
    }) && phi_sigma == ctx.sigma_poly();
    rep.push(bool_record("phi is the identity on R(sigma,s)", phi_const, "constants".into(), "phi moves a constant"));

    // squares
    let left_sq = mons.iter().all(|(_, _, m)| {
        ctx.phi(&OreHomElement { poly: m.clone(), xi: ring.zero() }) == ctx.iota_prime(m)
    });
    rep.push(bool_record("left square commutes: phi o iota = iota'", left_sq, range.clone(), "phi(P) != iota'(P)"));
    let mut right_sq = true;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for _ in 0..samples {
        let u = ctx.random_hom_element(&mut rng, big_d);
        right_sq &= ctx.pi_prime(&ctx.phi(&u)) == trim(vec![u.xi.clone()]);
    }
    rep.push(bool_record(
        "right square commutes: pi' o phi = incl o pi",
        right_sq,
        format!("{samples} samples, degrees <= {big_d}"),
        "pi'(phi(u)) != pi(u)",
    ));
    rep
}

fn s_random(ctx: &BridgeContext, rng: &mut ChaCha8Rng, max_degree: usize) -> OrePoly {
    let deg = rng.gen_range(0..=max_degree);
    let n = ctx.ext.as_algebra().dim();
    let ring = ctx.ring();
    OrePoly::from_coeffs(
        (0..=deg)
            .map(|_| Element::new((0..n).map(|_| random_scalar(ring, rng)).collect()))
            .collect(),
    )
}

pub fn scalar_poly_mul(f: &[Scalar], g: &[Scalar], ring: ScalarRing) -> ScalarPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ring.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] += &(a * b);
        }
    }
    trim(out)
}

/// Compares `Γ̄ⁿₙ` with `Σ_{i=0}^{n} αⁱ(w)` and with `Σ_{i=0}^{n−1} αⁱ(w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaBarConvention {
    /// `(n, matches Σ₀ⁿ, matches Σ₀^{n−1})`
    pub rows: Vec<(usize, bool, bool)>,
}

impl GammaBarConvention {
    pub fn inclusive_always(&self) -> bool {
        self.rows.iter().all(|r| r.1)
    }

    pub fn exclusive_always(&self) -> bool {
        self.rows.iter().all(|r| r.2)
    }

    /// Whether the two ranges are ever told apart by this data.
    pub fn discriminating(&self) -> bool {
        self.rows.iter().any(|r| r.1 != r.2)
    }
}

pub fn gamma_bar_convention(ctx: &BridgeContext, max_n: usize) -> Result<GammaBarConvention, BridgeError> {
    let alpha = &ctx.quintuple.alpha;
    let w = &ctx.quintuple.w;
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let g = ctx.gamma_bar(n, n)?;
        let mut partial = ctx.base().zero();
        for i in 0..n {
            partial = &partial + &alpha.pow(i as u32).at(w);
        }
        let full = &partial + &alpha.pow(n as u32).at(w);
        rows.push((n, g == full, g == partial));
    }
    Ok(GammaBarConvention { rows })
}

/// Diagnostics for a type-0 quintuple: `π′((a + ζ𝛔)xⁿ) = ζμⁿ`.
pub fn probe_type0(alg: &Algebra, q: &Quintuple, degree: usize) -> Result<Report, BridgeError> {
    if q.varsigma != Varsigma::Zero {
        return Err(BridgeError::ContextNotType0);
    }
    let (ext, alpha_s, delta_s) = checked_extensions(alg, q)?;
    let ring = alg.ring();
    let d = alg.dim();
    let s_ring = OreRing::new(Arc::new(ext.as_algebra().clone()), alpha_s, delta_s)?.with_degree_cap(2 * degree + 2);
    let mu = q.mu.clone();
    let pi_prime = |p: &OrePoly| -> Scalar {
        let mut acc = ring.zero();
        for (n, c) in p.coeffs().iter().enumerate() {
            acc += &(c.coord(d) * &mu.pow(n as u32));
        }
        acc
    };
    let mut rep = Report::new(format!("probe-type0 mu={mu}"));
    rep.section("pi'", vec![format!("pi'((a + z*{}) x^n) = z * {mu}^n", crate::homext::SIGMA_LABEL)]);

    let sig = ext.to_element(&ext.sigma());
    let iota_zero = (0..=degree)
        .flat_map(|n| (0..d).map(move |i| (n, i)))
        .all(|(n, i)| pi_prime(&s_ring.monomial(ext.to_element(&ext.iota(&alg.basis(i))), n)).is_zero());
    rep.push(CheckRecord::from_bool("pi' o iota' = 0", iota_zero, "nonzero on im iota'"));

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut mult = true;
    for _ in 0..DEFAULT_SAMPLES {
        let p = random_s_poly(&mut rng, ext.as_algebra(), degree / 2);
        let r = random_s_poly(&mut rng, ext.as_algebra(), degree / 2);
        let prod = s_ring.ore_mul(&p, &r)?;
        mult &= pi_prime(&prod) == &pi_prime(&p) * &pi_prime(&r);
    }
    rep.push(CheckRecord::from_bool("pi' multiplicative", mult, "pi'(PQ) != pi'(P)pi'(Q)"));

    // The image is spanned by π′(𝛔xⁿ) = μⁿ, all constants; x is never hit.
    let images: Vec<String> = (0..=degree).map(|n| format!("pi'(sigma x^{n}) = {}", pi_prime(&s_ring.monomial(sig.clone(), n)))).collect();
    rep.section("images", images);
    rep.push(CheckRecord::pass("pi' not surjective onto F[x]").with_detail("image is contained in F"));

    let kernel = if mu.is_zero() {
        s_ring.monomial(sig.clone(), 1)
    } else {
        s_ring.monomial(sig.clone(), 1).sub(&s_ring.monomial(sig.scale(&mu), 0))
    };
    let outside = kernel.coeffs().iter().any(|c| !c.coord(d).is_zero());
    rep.push(CheckRecord::from_bool(
        "kernel element outside im iota'",
        pi_prime(&kernel).is_zero() && outside,
        "candidate not in ker pi' or inside im iota'",
    ));
    rep.section("kernel element", vec![s_ring.format(&kernel)]);
    Ok(rep)
}

fn random_s_poly(rng: &mut ChaCha8Rng, alg: &Algebra, max_degree: usize) -> OrePoly {
    let deg = rng.gen_range(0..=max_degree);
    OrePoly::from_coeffs(
        (0..=deg)
            .map(|_| Element::new((0..alg.dim()).map(|_| random_scalar(alg.ring(), rng)).collect()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{daleth, theta_family, ThetaFamily};
    use crate::skewderiv::solve_deriv_ext;

    fn family_one(ring: ScalarRing, upsilon: i64, gammas: &[i64]) -> (Algebra, Quintuple) {
        let dal = daleth(3, ring).unwrap();
        let fam = ThetaFamily::One { upsilon: ring.from_i64(upsilon) };
        let (w, vs) = theta_family(&dal, 2, &fam).unwrap();
        let gam: Vec<Scalar> = gammas.iter().map(|&g| ring.from_i64(g)).collect();
        let delta = dal.rlin_derivation(&gam).unwrap();
        let alg = dal.algebra().clone();
        let datum = dal.epsilon_datum(2).unwrap();
        let zero = LinMap::zero(ring, alg.dim(), alg.dim());
        let set = solve_deriv_ext(&alg, &datum, &zero, &w, vs, &delta, &ring.zero()).unwrap();
        let e = Element::new(set.enumerate(16).unwrap().remove(0));
        let q = Quintuple::new(&alg, &datum, zero, delta, w, e, vs, ring.zero()).unwrap();
        (alg, q)
    }

    #[test]
    fn family_one_diagram_passes() {
        let (alg, q) = family_one(ScalarRing::PrimeField(2), 1, &[1, 1, 0]);
        let ctx = BridgeContext::new(&alg, q, 4).unwrap();
        let rep = verify_diagram(&ctx, 20, 1);
        assert!(rep.all_passed(), "{}", rep.render_text());
    }

    #[test]
    fn gamma_bar_low_degree() {
        let (alg, q) = family_one(ScalarRing::PrimeField(3), 2, &[1, 2, 1]);
        let ctx = BridgeContext::new(&alg, q.clone(), 3).unwrap();
        assert_eq!(ctx.gamma_bar(1, 0).unwrap(), q.e);
        assert_eq!(ctx.gamma_bar(1, 1).unwrap(), q.w);
    }

    #[test]
    fn splitting_identities() {
        let (alg, q) = family_one(ScalarRing::PrimeField(2), 1, &[0, 1, 1]);
        let ctx = BridgeContext::new(&alg, q, 3).unwrap();
        let p = ctx.ore_r().monomial(alg.basis(2), 2);
        assert_eq!(ctx.p_split(&ctx.iota_prime(&p)), p);
        assert!(ctx.pi_prime(&ctx.iota_prime(&p)).is_empty());
        let one = ScalarRing::PrimeField(2).one();
        let f = vec![ScalarRing::PrimeField(2).zero(), one];
        assert_eq!(ctx.pi_prime(&ctx.j_split(&f)), f);
    }
}
