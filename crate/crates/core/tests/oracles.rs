mod common;

use common::*;
use homext::algebra::{Element, LinMap};
use homext::catalog::{daleth, daleth_units, right_linear_audit};
use homext::multiplier::{inner, is_double_homothetism};
use homext::skewderiv::{is_skew_derivation, Varsigma};

/// Product of matrix units `e_ab e_cd = [b = c] e_ad`.
fn unit_product(units: &[(usize, usize)], i: usize, j: usize) -> Option<usize> {
    let (a, b) = units[i];
    let (c, d) = units[j];
    (b == c).then(|| units.iter().position(|&u| u == (a, d)).expect("closed"))
}

#[test]
fn daleth_products_match_matrix_units() {
    for n in 3..=6 {
        let dal = daleth(n, Q).unwrap();
        let alg = dal.algebra();
        let units = daleth_units(n);
        for i in 0..units.len() {
            for j in 0..units.len() {
                let want = match unit_product(&units, i, j) {
                    Some(k) => alg.basis(k),
                    None => alg.zero(),
                };
                assert_eq!(alg.basis_product(i, j), want, "n={n} {i} {j}");
            }
        }
    }
}

#[test]
fn epsilon_is_not_inner() {
    for n in [3, 4] {
        let dal = daleth(n, F2).unwrap();
        let alg = dal.algebra();
        let inners: Vec<_> = all_vectors(F2, alg.dim())
            .into_iter()
            .map(|v| inner(alg, &Element::new(v)).unwrap())
            .collect();
        assert_eq!(inners.len(), 1 << alg.dim());
        for k in 2..n {
            let eps = dal.epsilon(k).unwrap();
            assert!(is_double_homothetism(alg, &eps).is_ok());
            assert!(!inners.contains(&eps), "eps{k} is inner on daleth{n}");
        }
    }
}

#[test]
fn extension_embeds_into_matrices() {
    for n in 3..=5 {
        let dal = daleth(n, Q).unwrap();
        for k in 2..n {
            let (ext, target, images) = dal.extension_embedding(k).unwrap();
            assert!(ext.is_isomorphism_onto_image(&target, &images));
        }
    }
}

/// Rank of a matrix over F2 by elimination on bit rows.
fn rank_f2(mut rows: Vec<Vec<u8>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] == 1) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] == 1 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn right_linear_dimension_by_elimination() {
    let units = daleth_units(3);
    let d = units.len();
    // Unknown F[t][i]; constraint coordinate s of F(b_i b_j) = F(b_i) b_j.
    let mut rows = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for s in 0..d {
                let mut row = vec![0u8; d * d];
                if let Some(k) = unit_product(&units, i, j) {
                    row[s * d + k] ^= 1;
                }
                for t in 0..d {
                    if unit_product(&units, t, j) == Some(s) {
                        row[t * d + i] ^= 1;
                    }
                }
                rows.push(row);
            }
        }
    }
    let dimension = d * d - rank_f2(rows);
    let dal = daleth(3, F2).unwrap();
    let audit = right_linear_audit(&dal);
    assert_eq!(audit.dimension, dimension);
    assert_eq!(dimension, 7);
    assert_eq!(audit.diagonal_dimension, 3);
    let outside = audit.outside_example.expect("a non-diagonal map");
    let zero = LinMap::zero(F2, d, d);
    assert!(is_skew_derivation(dal.algebra(), &zero, &outside).is_ok());
}

#[test]
fn rlin_family_is_right_linear() {
    for ring in [F2, F3] {
        let dal = daleth(4, ring).unwrap();
        let zero = LinMap::zero(ring, dal.algebra().dim(), dal.algebra().dim());
        for g in all_vectors(ring, 4) {
            let delta = dal.rlin_derivation(&g).unwrap();
            assert!(is_skew_derivation(dal.algebra(), &zero, &delta).is_ok());
        }
    }
}

#[test]
fn zero_mult_quintuples_are_valid() {
    use homext::catalog::ZeroMultSpec;
    for ring in [F2, F3, Q] {
        for dims in [[1, 1, 1, 1], [2, 1, 1, 2], [1, 2, 2, 1]] {
            for vs in [Varsigma::Zero, Varsigma::One] {
                let (zm, q) = zero_mult_quintuple(ZeroMultSpec { dims, ring }, vs, if vs.is_one() { 0 } else { 1 }, false);
                assert!(q.check(&zm.algebra).unwrap().is_ok());
                assert_eq!(q.mu, if vs.is_one() { ring.zero() } else { ring.one() });
            }
        }
    }
}
