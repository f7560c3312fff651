//! The four normalizing basis changes C1..C4 and their commutation with w1, w2.

use crate::chevalley::{lift, DIM};
use crate::matrix::Matrix;
use crate::report::Report;
use crate::ring::{Laurent, Scalar};
use crate::rootsys::{all_roots, Root};

use super::frame;

/// C1 (long-root 2×2 blocks) and C2 (short-root blocks): [[1, p], [p, 1]].
pub fn block_change<T: Scalar>(long: bool, p: &T) -> Matrix<T> {
    let mut m = Matrix::identity(DIM, p);
    for r in all_roots().into_iter().filter(|r| r.is_positive() && r.is_long() == long) {
        let i = r.position();
        m.set(i, i + 1, p.clone());
        m.set(i + 1, i, p.clone());
    }
    m
}

/// C3 (scalar `a` on long-root places) and C4 (scalar on short-root places).
pub fn scalar_change<T: Scalar>(long: bool, a: &T) -> Matrix<T> {
    let mut m = Matrix::identity(DIM, a);
    for r in all_roots().into_iter().filter(|r: &Root| r.is_long() == long) {
        m.set(r.position(), r.position(), a.clone());
    }
    m
}

pub fn basis_changes<T: Scalar>(p: &T, q: &T, a: &T, b: &T) -> [Matrix<T>; 4] {
    [block_change(true, p), block_change(false, q), scalar_change(true, a), scalar_change(false, b)]
}

/// C1..C4 with independent symbolic parameters commute with w1, w2 and pairwise.
pub fn basis_change_commute() -> Report {
    Report::timed("basis changes", |r| {
        let [p, q, a, b] = [0, 1, 2, 3].map(Laurent::var);
        let cs = basis_changes(&p, &q, &a, &b);
        let one = Laurent::int(1);
        let f = frame();
        let ws = [("w1", lift(&f.w1, &one)), ("w2", lift(&f.w2, &one))];
        for (k, c) in cs.iter().enumerate() {
            for (wn, w) in &ws {
                let d = c.bracket(w);
                r.check(format!("C{} commutes with {wn}", k + 1), d.is_zero(), || witness(&d));
            }
        }
        for i in 0..4 {
            for j in i + 1..4 {
                let d = cs[i].bracket(&cs[j]);
                r.check(format!("C{}·C{} = C{}·C{}", i + 1, j + 1, j + 1, i + 1), d.is_zero(), || witness(&d));
            }
        }
        let zero = Laurent::int(0);
        r.check(
            "C1, C2 at parameter 0 are E",
            block_change(true, &zero).is_identity() && block_change(false, &zero).is_identity(),
            String::new,
        );
        r.check(
            "C3, C4 at parameter 1 are E",
            scalar_change(true, &one).is_identity() && scalar_change(false, &one).is_identity(),
            String::new,
        );
    })
}

fn witness(d: &Matrix<Laurent>) -> String {
    d.nonzero_positions().first().map(|&(i, j)| format!("commutator ({},{}) = {}", i + 1, j + 1, d.get(i, j))).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_basis_changes_commute() {
        let r = basis_change_commute();
        assert!(r.all_pass(), "{}", r.to_text());
    }
}
