//! Worked examples checked against independently computed values.

use num_rational::BigRational;
use num_traits::Zero;

use g2::chevalley::{explicit, IntMatrix, DIM};
use g2::group::{root_matrix, GroupElement};
use g2::linalg::rank_mod_p;
use g2::replay::elimination::Ledger;
use g2::replay::normalizer::{normalizer_system, TorusBasis, EQUATION_ROOTS, ZEROED};
use g2::replay::prod2::{prod2_assemble, prod2_extract, TorusUnipotentParams};
use g2::replay::shapes::shapes;
use g2::replay::templates::Var;
use g2::replay::{involution_split, weyl_hblock};
use g2::ring::{RingDescriptor, RingValue};
use g2::rootsys::Root;

/// Counting the signs on the diagonal of h_{αi}(−1).
#[test]
fn torus_involution_split_by_counting_signs() {
    let d = RingDescriptor::zmod(5, 2).unwrap();
    for h in [explicit::h1_minus_one(), explicit::h2_minus_one()] {
        let plus = (0..DIM).filter(|&i| *h.get(i, i) == 1).count();
        let minus = (0..DIM).filter(|&i| *h.get(i, i) == -1).count();
        assert_eq!((plus, minus), (6, 8));
        assert_eq!(involution_split(&GroupElement::from_int(&h, d)).unwrap(), (plus, minus));
    }
}

#[test]
fn identity_involution() {
    let d = RingDescriptor::zmod(7, 1).unwrap();
    assert_eq!(involution_split(&GroupElement::identity(d)).unwrap(), (14, 0));
}

#[test]
fn hblocks_square_to_identity() {
    for i in 1..=2 {
        let b = weyl_hblock(Root::simple(i)).unwrap();
        let sq = [
            [b[0][0] * b[0][0] + b[0][1] * b[1][0], b[0][0] * b[0][1] + b[0][1] * b[1][1]],
            [b[1][0] * b[0][0] + b[1][1] * b[1][0], b[1][0] * b[0][1] + b[1][1] * b[1][1]],
        ];
        assert_eq!(sq, [[1, 0], [0, 1]]);
    }
}

/// Commutant dimension by rank of the commutation equations mod a large prime.
fn commutant_dim_mod_p(gs: &[IntMatrix]) -> usize {
    let mut rows = Vec::new();
    for g in gs {
        for i in 0..DIM {
            for j in 0..DIM {
                // (K g − g K)_{ij} as a row over the 196 entries of K
                let mut row = vec![BigRational::zero(); DIM * DIM];
                for k in 0..DIM {
                    row[i * DIM + k] += BigRational::from_integer((*g.get(k, j)).into());
                    row[k * DIM + j] -= BigRational::from_integer((*g.get(i, k)).into());
                }
                rows.push(row);
            }
        }
    }
    DIM * DIM - rank_mod_p(&rows, 1_000_000_007)
}

#[test]
fn commutant_dimensions() {
    let dims: Vec<usize> =
        shapes().iter().map(|s| commutant_dim_mod_p(&s.constraints.iter().map(|(_, g)| g.clone()).collect::<Vec<_>>())).collect();
    assert_eq!(dims, [52, 52, 14]);
}

#[test]
fn literal_conditions_two_and_four() {
    let (h1, x2) = (explicit::h1_minus_one(), explicit::x2());
    assert!(h1.mul(&x2).mul(&h1).mul(&x2).is_identity());
    let x112 = root_matrix(Root::from_index(4), &1i64);
    assert_eq!(x2.mul(&x112), x112.mul(&x2));
}

#[test]
fn u2_is_read_from_row_twelve() {
    let d = RingDescriptor::zmod(5, 2).unwrap();
    // direct product: only x_{−α2}(5) is non-trivial
    let direct = root_matrix(Root::from_index(-2), &RingValue::from_i64(d, 5));
    let mut p = TorusUnipotentParams::trivial(d);
    p.u[1] = RingValue::from_i64(d, 5);
    let x = prod2_assemble(&p).unwrap();
    assert_eq!(x.matrix, direct);
    assert_eq!(direct.get(11, 9).to_i64_centered(), Some(5));
    assert_eq!(prod2_extract(&x).unwrap().u[1], RingValue::from_i64(d, 5));
}

#[test]
fn normalizer_unknown_count() {
    let (_, ncols) = normalizer_system(TorusBasis::Paper, &EQUATION_ROOTS);
    assert_eq!(ncols, 196 - ZEROED.len() + 4 * 14);
    assert_eq!(ncols, 237);
}

#[test]
fn half_plus_third() {
    let q = RingDescriptor::Rationals;
    let s = &RingValue::parse(q, "1/2").unwrap() + &RingValue::parse(q, "1/3").unwrap();
    assert_eq!(s, RingValue::parse(q, "5/6").unwrap());
}

#[test]
fn shipped_ledger_examples() {
    let l = Ledger::paper();
    let find = |v: Var| l.steps.iter().find(|s| s.target == v).unwrap();
    let z33 = find(Var::z(33));
    assert_eq!((z33.condition.to_string().as_str(), z33.row, z33.col, z33.expected_residue), ("Con2", 3, 3, 1));
    let y1 = find(Var::y(1));
    assert_eq!((y1.condition.to_string().as_str(), y1.row, y1.col, y1.expected_residue), ("Con3", 1, 1, 1));
    assert_eq!(Var::y(37).residue(), 3);
}
