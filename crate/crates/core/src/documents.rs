//! Catalog examples rendered as documents.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, LinMap};
use crate::bridge::random_scalar;
use crate::catalog::{daleth, theta_family, BlockMaps, CatalogError, ThetaFamily, ZeroMult, ZeroMultSpec};
use crate::dsl::{AlgebraDef, DatumDef, Definition, Document, DopDef, MapDef, QuintupleDef};
use crate::linalg::Matrix;
use crate::multiplier::{DoubleOperator, HomotheticDatum};
use crate::scalar::{Scalar, ScalarRing};
use crate::skewderiv::{members, solve_deriv_ext, solve_deriv_ext_free_mu, Varsigma};

fn push_datum(doc: &mut Document, alg_name: &str, sigma: &DoubleOperator, datum: &HomotheticDatum, dop_name: &str) {
    doc.push(Definition::Map(MapDef::from_map("sigma_left", alg_name, &sigma.left)));
    doc.push(Definition::Map(MapDef::from_map("sigma_right", alg_name, &sigma.right)));
    doc.push(Definition::Dop(DopDef {
        name: dop_name.into(),
        on: alg_name.into(),
        left: "sigma_left".into(),
        right: "sigma_right".into(),
    }));
    doc.push(Definition::Datum(DatumDef {
        name: "D".into(),
        dop: dop_name.into(),
        s: datum.s().coords().to_vec(),
    }));
}

#[allow(clippy::too_many_arguments)]
fn push_quintuple(doc: &mut Document, on: &str, alpha: &LinMap, delta: &LinMap, w: &Element, e: &Element, vs: Varsigma, mu: Scalar) {
    doc.push(Definition::Map(MapDef::from_map("alpha", on, alpha)));
    doc.push(Definition::Map(MapDef::from_map("delta", on, delta)));
    doc.push(Definition::Quintuple(QuintupleDef {
        name: "q".into(),
        datum: "D".into(),
        alpha: "alpha".into(),
        delta: "delta".into(),
        w: w.coords().to_vec(),
        e: e.coords().to_vec(),
        varsigma: vs,
        mu,
    }));
}

/// Parameters of a θ family as a flat list, in the order documented on
/// [`ThetaFamily`]; family 4 lists `υ_j` then `υʲ` for `j ≠ k`.
pub fn family_from_params(family: u8, n: usize, k: usize, ring: ScalarRing, params: &[Scalar]) -> Result<ThetaFamily, CatalogError> {
    let want = match family {
        0 => 2,
        1 => 1,
        2 | 3 => n - 1,
        4 => 2 * (n - 3),
        _ => return Err(CatalogError::BadFamilyParams(format!("unknown family {family}"))),
    };
    if params.len() != want {
        return Err(CatalogError::BadFamilyParams(format!(
            "family {family} takes {want} parameters, got {}",
            params.len()
        )));
    }
    let p = params.to_vec();
    Ok(match family {
        0 => ThetaFamily::Zero { p: p[0].clone(), q: p[1].clone() },
        1 => ThetaFamily::One { upsilon: p[0].clone() },
        2 => ThetaFamily::Two { upsilon: p },
        3 => ThetaFamily::Three {
            upsilon_n: p[0].clone(),
            upsilon_up: p[1..].to_vec(),
        },
        _ => {
            let zero = ring.zero();
            let free = n - 3;
            let expand = |v: &[Scalar]| {
                let mut it = v.iter();
                (2..n)
                    .map(|j| if j == k { zero.clone() } else { it.next().expect("length").clone() })
                    .collect::<Vec<_>>()
            };
            ThetaFamily::Four {
                lower: expand(&p[..free]),
                upper: expand(&p[free..]),
            }
        }
    })
}

/// ℸ_n with `(ε_k, 0)`; with a family and `γ`, also the quintuple
/// `(0, w; δ_γ, e, μ)` using the first solution of (a)–(c).
pub fn daleth_document(
    n: usize,
    k: usize,
    ring: ScalarRing,
    family: Option<(&ThetaFamily, &[Scalar])>,
    enum_cap: u128,
) -> Result<Document, CatalogError> {
    let dal = daleth(n, ring)?;
    let alg = dal.algebra();
    let name = alg.name().to_string();
    let datum = dal.epsilon_datum(k)?;
    let mut doc = Document::default();
    doc.push(Definition::Algebra(AlgebraDef::from_algebra(&name, alg)));
    push_datum(&mut doc, &name, datum.sigma(), &datum, &format!("eps{k}"));
    if let Some((fam, gammas)) = family {
        let (w, vs) = theta_family(&dal, k, fam)?;
        let delta = dal.rlin_derivation(gammas)?;
        let zero = LinMap::zero(ring, alg.dim(), alg.dim());
        let (e, mu) = match vs {
            Varsigma::One => {
                let set = solve_deriv_ext(alg, &datum, &zero, &w, vs, &delta, &ring.zero())?;
                let e = members(&set, enum_cap)?.and_then(|m| m.into_iter().next());
                (e, ring.zero())
            }
            Varsigma::Zero => {
                let set = solve_deriv_ext_free_mu(alg, &datum, &zero, &w, &delta)?;
                match members(&set, enum_cap)?.and_then(|m| m.into_iter().next()) {
                    Some(v) => {
                        let d = alg.dim();
                        (Some(Element::new(v.coords()[..d].to_vec())), v.coord(d).clone())
                    }
                    None => (None, ring.zero()),
                }
            }
        };
        let e = e.ok_or_else(|| CatalogError::BadFamilyParams("delta does not extend for these parameters".into()))?;
        push_quintuple(&mut doc, &name, &zero, &delta, &w, &e, vs, mu);
    }
    Ok(doc)
}

fn random_blocks(zm: &ZeroMult, rng: &mut ChaCha8Rng, diagonal_only: bool, vs: Varsigma) -> BlockMaps {
    let spec = zm.spec;
    let mut b = BlockMaps::zero(&spec);
    for i in 0..4 {
        for j in 0..4 {
            let used = match vs {
                Varsigma::One => i == j,
                Varsigma::Zero => i == 3 || (!diagonal_only && (i, j) == (1, 2)) || i == j,
            };
            if !used || spec.dims[i] == 0 || spec.dims[j] == 0 {
                continue;
            }
            let rows = (0..spec.dims[j])
                .map(|_| (0..spec.dims[i]).map(|_| random_scalar(spec.ring, rng)).collect())
                .collect();
            b.blocks[i][j] = Matrix::from_rows(spec.ring, rows).expect("uniform");
        }
    }
    b
}

/// The zero-multiplication algebra with its datum; with `ς`, also a
/// quintuple built from seeded random blocks.
pub fn zero_mult_document(spec: ZeroMultSpec, varsigma: Option<Varsigma>, seed: u64) -> Result<Document, CatalogError> {
    let zm = ZeroMult::new(spec)?;
    let name = zm.algebra.name().to_string();
    let mut doc = Document::default();
    doc.push(Definition::Algebra(AlgebraDef::from_algebra(&name, &zm.algebra)));
    push_datum(&mut doc, &name, zm.datum.sigma(), &zm.datum, "sigma");
    if let Some(vs) = varsigma {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ab = random_blocks(&zm, &mut rng, true, vs);
        let db = random_blocks(&zm, &mut rng, false, vs);
        let dim = zm.algebra.dim();
        let src_w = Element::new((0..dim).map(|_| random_scalar(spec.ring, &mut rng)).collect());
        let src_e = Element::new((0..dim).map(|_| random_scalar(spec.ring, &mut rng)).collect());
        let mu = match vs {
            Varsigma::One => spec.ring.zero(),
            Varsigma::Zero => random_scalar(spec.ring, &mut rng),
        };
        let alpha = zm.alpha_from_blocks(vs, &ab);
        let delta = zm.delta_from_blocks(vs, &mu, &db, &ab);
        let w = zm.w_from(vs, &src_w);
        let e = zm.e_from(vs, &src_e);
        push_quintuple(&mut doc, &name, &alpha, &delta, &w, &e, vs, mu);
    }
    Ok(doc)
}
