//! The linearized normalizer system: Z·x − x·(Z + a1T1 + a2T2 + Σ b_j X_{αj} + Σ c_j X_{−αj}) = 0
//! for x = x_α(1), α ∈ {α1, α2, −α1, −α2}, with 15 entries of Z forced to zero.

use num_rational::BigRational;

use crate::chevalley::{Chevalley, IntMatrix, DIM};
use crate::group::root_matrix;
use crate::linalg::{modular_rank_check, rank_fraction_free};
use crate::matrix::Matrix;
use crate::report::Report;
use crate::ring::int;
use crate::rootsys::Root;

/// Positions (1-based) of Z fixed to zero.
pub const ZEROED: [(usize, usize); 15] = [
    (4, 6),
    (4, 12),
    (8, 8),
    (10, 8),
    (10, 10),
    (10, 12),
    (12, 4),
    (12, 6),
    (12, 8),
    (12, 10),
    (12, 12),
    (12, 14),
    (14, 6),
    (14, 8),
    (14, 12),
];

/// Which pair of diagonal matrices plays the torus directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorusBasis {
    /// T1 = diag[1,1,0,0,1,1,2,2,3,3,3,3,0,0], T2 = diag[0,0,1,1,1,1,1,1,1,1,2,2,0,0].
    Paper,
    /// H_i = [X_{αi}, X_{−αi}].
    Derived,
}

pub fn torus_directions(basis: TorusBasis) -> [IntMatrix; 2] {
    match basis {
        TorusBasis::Paper => {
            [Matrix::diag(vec![1, 1, 0, 0, 1, 1, 2, 2, 3, 3, 3, 3, 0, 0]), Matrix::diag(vec![0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 0, 0])]
        }
        TorusBasis::Derived => {
            let ch = Chevalley::get();
            [ch.h(1).clone(), ch.h(2).clone()]
        }
    }
}

pub const EQUATION_ROOTS: [i32; 4] = [1, 2, -1, -2];

#[derive(Debug, Clone)]
pub struct NormalizerOutcome {
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub kernel_dimension: usize,
    pub modular_ranks: Vec<(u64, usize)>,
    pub reconstruction_verified: bool,
}

impl NormalizerOutcome {
    pub fn methods_agree(&self) -> bool {
        self.modular_ranks.iter().all(|&(_, r)| r == self.rank)
    }
}

/// Builds the system for the listed equation roots; column order is the
/// free entries of Z (row-major) followed by 14 coefficients per equation.
pub fn normalizer_system(basis: TorusBasis, roots: &[i32]) -> (Vec<Vec<BigRational>>, usize) {
    let free: Vec<(usize, usize)> =
        (0..DIM).flat_map(|i| (0..DIM).map(move |j| (i, j))).filter(|&(i, j)| !ZEROED.contains(&(i + 1, j + 1))).collect();
    let ch = Chevalley::get();
    let mut dirs: Vec<IntMatrix> = torus_directions(basis).to_vec();
    dirs.extend((1..=6).map(|k| ch.x(Root::from_index(k)).clone()));
    dirs.extend((1..=6).map(|k| ch.x(Root::from_index(-k)).clone()));
    let per_eq = dirs.len();
    let ncols = free.len() + per_eq * roots.len();
    let mut rows = Vec::with_capacity(DIM * DIM * roots.len());
    for (e, &a) in roots.iter().enumerate() {
        let x = root_matrix(Root::from_index(a), &1i64);
        let xd: Vec<IntMatrix> = dirs.iter().map(|d| x.mul(d)).collect();
        for i in 0..DIM {
            for j in 0..DIM {
                let mut row = vec![int(0); ncols];
                for (c, &(p, q)) in free.iter().enumerate() {
                    // (Z x)_ij − (x Z)_ij, Z = e_pq
                    let mut v = 0;
                    if p == i {
                        v += x.get(q, j);
                    }
                    if q == j {
                        v -= x.get(i, p);
                    }
                    if v != 0 {
                        row[c] = int(v);
                    }
                }
                for (k, m) in xd.iter().enumerate() {
                    let v = *m.get(i, j);
                    if v != 0 {
                        row[free.len() + e * per_eq + k] = int(-v);
                    }
                }
                if row.iter().any(|v| !num_traits::Zero::is_zero(v)) {
                    rows.push(row);
                }
            }
        }
    }
    (rows, ncols)
}

pub fn normalizer_kernel_with(basis: TorusBasis, roots: &[i32]) -> NormalizerOutcome {
    let (rows, ncols) = normalizer_system(basis, roots);
    let rank = rank_fraction_free(&rows);
    let m = modular_rank_check(&rows, ncols);
    NormalizerOutcome {
        unknowns: ncols,
        equations: DIM * DIM * roots.len(),
        rank,
        kernel_dimension: ncols - rank,
        modular_ranks: m.ranks,
        reconstruction_verified: m.reconstruction_verified,
    }
}

/// (rank, kernel dimension) of the full system with the printed T1, T2.
pub fn normalizer_kernel() -> (usize, usize) {
    let o = normalizer_kernel_with(TorusBasis::Paper, &EQUATION_ROOTS);
    (o.rank, o.kernel_dimension)
}

fn describe(o: &NormalizerOutcome) -> String {
    let mods: Vec<String> = o.modular_ranks.iter().map(|(p, r)| format!("{r} mod {p}")).collect();
    format!(
        "{} unknowns, {} scalar equations, rank {} (Bareiss), {}; kernel dimension {}",
        o.unknowns,
        o.equations,
        o.rank,
        mods.join(", "),
        o.kernel_dimension
    )
}

pub fn normalizer_report() -> Report {
    Report::timed("normalizer", |r| {
        let paper = normalizer_kernel_with(TorusBasis::Paper, &EQUATION_ROOTS);
        r.check_with("unknown count = 237", paper.unknowns == 237, format!("{}", paper.unknowns));
        r.check_with("kernel dimension 0 with T1, T2", paper.kernel_dimension == 0, describe(&paper));
        r.check_with(
            "fraction-free and modular ranks agree",
            paper.methods_agree() && paper.reconstruction_verified,
            format!("{:?}", paper.modular_ranks),
        );
        let derived = normalizer_kernel_with(TorusBasis::Derived, &EQUATION_ROOTS);
        r.note("derived torus generators H1, H2 in place of T1, T2", describe(&derived));
        r.check("derived variant: fraction-free and modular ranks agree", derived.methods_agree(), || {
            format!("{:?}", derived.modular_ranks)
        });
        let dropped = normalizer_kernel_with(TorusBasis::Paper, &EQUATION_ROOTS[..3]);
        r.check_with("dropping the −α2 equation leaves a kernel", dropped.kernel_dimension > 0, describe(&dropped));
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn system_dimensions() {
        let (rows, ncols) = normalizer_system(TorusBasis::Paper, &EQUATION_ROOTS);
        assert_eq!(ncols, 237);
        assert!(rows.len() <= 4 * 196);
    }

    #[test]
    fn torus_directions_differ_from_derived() {
        let [t1, _] = torus_directions(TorusBasis::Paper);
        let [h1, _] = torus_directions(TorusBasis::Derived);
        // T1 is even under α ↔ −α, H1 is odd
        assert_eq!(t1.get(0, 0), t1.get(1, 1));
        assert_eq!(*h1.get(0, 0), -*h1.get(1, 1));
    }
}
