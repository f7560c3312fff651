//! Splitting by an involution: e = (1 + a)/2 and the ranks of its eigenspaces.

use num_rational::BigRational;

use crate::chevalley::DIM;
use crate::group::{GroupElement, RMatrix};
use crate::linalg::{rank_fraction_free, rank_mod_p};
use crate::matrix::Matrix;
use crate::ring::{RingDescriptor, RingValue, Scalar};

use rand::Rng;

use crate::group::{random_element, torus_element};
use crate::report::Report;
use crate::rootsys::Root;

use super::ReplayError;

fn residue_rank(m: &RMatrix) -> usize {
    let desc = m.proto().descriptor().residue_field();
    let rows: Vec<Vec<BigRational>> = (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|v| match v.residue().as_rational() {
                    Some(q) => q.clone(),
                    None => BigRational::from_integer(v.residue().as_residue().unwrap().into()),
                })
                .collect()
        })
        .collect();
    match desc {
        RingDescriptor::ZMod { p, .. } => rank_mod_p(&rows, p),
        _ => rank_fraction_free(&rows),
    }
}

/// (dim V0, dim V1) of the residue-field eigenspaces for +1 and −1.
///
/// Verifies a² = E and that e = (1+a)/2 is idempotent over the ring itself.
pub fn involution_split(a: &GroupElement) -> Result<(usize, usize), ReplayError> {
    let m = &a.matrix;
    let desc = a.descriptor();
    if !desc.is_local() {
        return Err(ReplayError::NotLocal(desc));
    }
    let one = RingValue::one(desc);
    let e = Matrix::identity(DIM, &one);
    let sq = m.mul(m);
    if let Some((i, j)) = sq.first_difference(&e) {
        return Err(ReplayError::NotInvolution(i + 1, j + 1));
    }
    let half = one.int_like(2).try_inverse().ok_or(ReplayError::NoHalf(desc))?;
    let e0 = e.add(m).scale(&half);
    let e1 = e.sub(&e0);
    assert_eq!(e0.mul(&e0), e0, "(1+a)/2 must be idempotent when a² = E");
    let r0 = residue_rank(&e0);
    let r1 = residue_rank(&e1);
    debug_assert_eq!(r0 + r1, DIM);
    Ok((r0, r1))
}

/// Ranks of the reduced involution ā computed directly in the residue field.
pub fn reduced_split(a: &GroupElement) -> (usize, usize) {
    let m = &a.matrix;
    let red = m.map(|v| v.residue());
    let one = red.proto().one_like();
    let e = Matrix::identity(DIM, &one);
    (residue_rank(&e.add(&red)), residue_rank(&e.sub(&red)))
}

/// (6,8) for both h_{αi}(−1), and invariance of the split under random conjugation.
pub fn involution_report<R: Rng + ?Sized>(desc: RingDescriptor, trials: usize, rng: &mut R) -> Report {
    Report::timed("involutions", |r| {
        let m1 = RingValue::from_i64(desc, -1);
        for i in 1..=2 {
            let a = torus_element(Root::simple(i), &m1).expect("−1 is a unit");
            let split = involution_split(&a);
            let name = format!("h_a{i}(-1) splits as (6,8) over {desc}");
            match split {
                Ok(s) => r.check_with(name, s == (6, 8) && reduced_split(&a) == s, format!("{s:?}")),
                Err(e) => {
                    r.fail(name, e.to_string());
                    continue;
                }
            }
            let mut bad = None;
            for _ in 0..trials {
                let g = random_element(desc, 6, rng);
                let c = a.conjugate(&g).map_err(ReplayError::from).and_then(|c| involution_split(&c));
                match c {
                    Ok((6, 8)) => {}
                    other => {
                        bad = Some(format!("{other:?}"));
                        break;
                    }
                }
            }
            r.check(format!("split of h_a{i}(-1) invariant under {trials} random conjugations"), bad.is_none(), || bad.unwrap());
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_involutions_split_six_eight() {
        let d = RingDescriptor::zmod(5, 2).unwrap();
        let m1 = RingValue::from_i64(d, -1);
        for i in 1..=2 {
            let a = torus_element(Root::simple(i), &m1).unwrap();
            assert_eq!(involution_split(&a).unwrap(), (6, 8));
            assert_eq!(reduced_split(&a), (6, 8));
        }
        assert_eq!(involution_split(&GroupElement::identity(d)).unwrap(), (14, 0));
    }
}
