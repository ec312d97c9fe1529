#![allow(dead_code)]

use homext::algebra::{Element, LinMap};
use homext::catalog::{daleth, BlockMaps, Daleth, ThetaFamily, ZeroMult, ZeroMultSpec};
use homext::linalg::Matrix;
use homext::scalar::{Scalar, ScalarRing};
use homext::skewderiv::{members, solve_deriv_ext, Quintuple, Varsigma};

pub const F2: ScalarRing = ScalarRing::PrimeField(2);
pub const F3: ScalarRing = ScalarRing::PrimeField(3);
pub const Q: ScalarRing = ScalarRing::Rationals;

pub fn elems(ring: ScalarRing) -> Vec<Scalar> {
    ring.elements().expect("finite field").collect()
}

/// Every vector in `ring^len`, in lexicographic order.
pub fn all_vectors(ring: ScalarRing, len: usize) -> Vec<Vec<Scalar>> {
    let es = elems(ring);
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                es.iter().map(move |x| {
                    let mut v = v.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect();
    }
    out
}

/// The family-1 quintuple `(0, υ e1k; δ_γ, e, 0)` on ℸ_n with the solver's
/// unique `e`.
pub fn family1_quintuple(n: usize, k: usize, ring: ScalarRing, upsilon: i64, gammas: &[i64]) -> (Daleth, Quintuple) {
    let dal = daleth(n, ring).unwrap();
    let alg = dal.algebra();
    let datum = dal.epsilon_datum(k).unwrap();
    let fam = ThetaFamily::One {
        upsilon: ring.from_i64(upsilon),
    };
    let w = fam.w(&dal, k).unwrap();
    let g: Vec<Scalar> = gammas.iter().map(|&x| ring.from_i64(x)).collect();
    let delta = dal.rlin_derivation(&g).unwrap();
    let zero = LinMap::zero(ring, alg.dim(), alg.dim());
    let set = solve_deriv_ext(alg, &datum, &zero, &w, Varsigma::One, &delta, &ring.zero()).unwrap();
    let e = members(&set, 1 << 20).unwrap().unwrap().remove(0);
    let q = Quintuple::new(alg, &datum, zero, delta, w, e, Varsigma::One, ring.zero()).unwrap();
    (dal, q)
}

/// Dense block with entries `(i * 7 + j * 3 + shift) mod 5 - 2`.
pub fn block(ring: ScalarRing, rows: usize, cols: usize, shift: i64) -> Matrix {
    Matrix::from_rows(
        ring,
        (0..rows)
            .map(|i| (0..cols).map(|j| ring.from_i64((i as i64 * 7 + j as i64 * 3 + shift).rem_euclid(5) - 2)).collect())
            .collect(),
    )
    .unwrap()
}

/// Blocks filled at the positions a quintuple of type `vs` may use.
pub fn zero_mult_blocks(zm: &ZeroMult, vs: Varsigma, diagonal_only: bool, shift: i64) -> BlockMaps {
    let spec = zm.spec;
    let mut b = BlockMaps::zero(&spec);
    for i in 0..4 {
        for j in 0..4 {
            let used = match vs {
                Varsigma::One => i == j,
                Varsigma::Zero => i == j || i == 3 || (!diagonal_only && (i, j) == (1, 2)),
            };
            if used && spec.dims[i] > 0 && spec.dims[j] > 0 {
                b.blocks[i][j] = block(spec.ring, spec.dims[j], spec.dims[i], shift + (4 * i + j) as i64);
            }
        }
    }
    b
}

/// A zero-multiplication quintuple of type `vs` built from deterministic
/// blocks; `alpha_identity` replaces the α blocks by identities.
pub fn zero_mult_quintuple(
    spec: ZeroMultSpec,
    vs: Varsigma,
    mu: i64,
    alpha_identity: bool,
) -> (ZeroMult, Quintuple) {
    let zm = ZeroMult::new(spec).unwrap();
    let ring = spec.ring;
    let ab = if alpha_identity {
        BlockMaps::identity_diagonal(&spec)
    } else {
        zero_mult_blocks(&zm, vs, true, 1)
    };
    let db = zero_mult_blocks(&zm, vs, false, 2);
    let dim = zm.algebra.dim();
    let src = |shift: i64| Element::new((0..dim).map(|i| ring.from_i64((i as i64 + shift) % 3)).collect());
    let mu = ring.from_i64(mu);
    let alpha = zm.alpha_from_blocks(vs, &ab);
    let delta = zm.delta_from_blocks(vs, &mu, &db, &ab);
    let w = zm.w_from(vs, &src(1));
    let e = zm.e_from(vs, &src(2));
    let q = Quintuple::new(&zm.algebra, &zm.datum, alpha, delta, w, e, vs, mu).unwrap();
    (zm, q)
}

/// Written to the stderr handle directly so the line survives test capture.
pub fn report_line(n: u32, ok: bool, detail: &str) {
    use std::io::Write;
    let line = format!("criterion {n}: {} -- {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
}
