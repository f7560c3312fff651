//! Mechanical replay of the rigidity proof: every computational claim is
//! re-derived here and reported as a pass/fail check.

pub mod basis_change;
pub mod conditions;
pub mod elimination;
pub mod hblock;
pub mod involution;
pub mod normalizer;
pub mod prod2;
pub mod relations;
pub mod shapes;
pub mod suite;
pub mod templates;
pub mod torus_image;
pub mod units;

use std::sync::OnceLock;

use crate::chevalley::{explicit, int_inverse, IntMatrix};

pub use basis_change::basis_change_commute;
pub use conditions::{verify_conditions, Con8Form, Condition};
pub use elimination::{run_elimination, EliminationOptions, EliminationState, EliminationStep, Ledger};
pub use hblock::weyl_hblock;
pub use involution::involution_split;
pub use normalizer::{normalizer_kernel, normalizer_report, TorusBasis};
pub use prod2::{prod2_assemble, prod2_extract, TorusUnipotentParams};
pub use relations::relations_report;
pub use shapes::verify_block_shapes;
pub use suite::{verify_paper, SuiteOptions};
pub use torus_image::verify_torus_image;
pub use units::{generate_matrix_units, UnitExpr};

/// The fixed integer matrices the conditions are written in.
#[derive(Debug, Clone)]
pub struct Frame {
    pub x1: IntMatrix,
    pub x2: IntMatrix,
    pub w1: IntMatrix,
    pub w2: IntMatrix,
    pub w1_inv: IntMatrix,
    pub w2_inv: IntMatrix,
    pub h1: IntMatrix,
    pub h2: IntMatrix,
}

pub fn frame() -> &'static Frame {
    static F: OnceLock<Frame> = OnceLock::new();
    F.get_or_init(|| {
        let w1 = explicit::w1();
        let w2 = explicit::w2();
        Frame {
            x1: explicit::x1(),
            x2: explicit::x2(),
            w1_inv: int_inverse(&w1),
            w2_inv: int_inverse(&w2),
            w1,
            w2,
            h1: explicit::h1_minus_one(),
            h2: explicit::h2_minus_one(),
        }
    })
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum ReplayError {
    #[error("element is not an involution: a² − E has entry ({0},{1}) ≠ 0")]
    NotInvolution(usize, usize),
    #[error("2 is not invertible in {0}")]
    NoHalf(crate::ring::RingDescriptor),
    #[error("{0} is not a local ring")]
    NotLocal(crate::ring::RingDescriptor),
    #[error("weyl_hblock is defined for a1 and a2 only, got {0}")]
    NotSimple(crate::rootsys::Root),
    #[error("ledger line {line}: {why}")]
    Ledger { line: usize, why: String },
    #[error("input not in the asserted normal form: {0}")]
    NotNormalForm(String),
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
    #[error(transparent)]
    Ring(#[from] crate::ring::RingError),
}

/// Coefficient rows of a matrix whose entries are linear forms in
/// `nvars` Laurent variables: one row per entry (row-major), one column per variable.
pub(crate) fn linear_rows(m: &crate::matrix::Matrix<crate::ring::Laurent>, nvars: u32) -> Vec<Vec<num_rational::BigRational>> {
    m.entries().map(|(_, _, v)| (0..nvars).map(|k| v.0.linear_coeff(k)).collect()).collect()
}

/// Rows of the linear system K·g − g·K = 0 (g ∈ `gs`) in the 196 entries of K.
pub(crate) fn commutation_rows(gs: &[IntMatrix]) -> Vec<Vec<num_rational::BigRational>> {
    use crate::chevalley::DIM;
    use crate::ring::int;
    let mut rows = Vec::new();
    for g in gs {
        for i in 0..DIM {
            for j in 0..DIM {
                let mut row = vec![int(0); DIM * DIM];
                for k in 0..DIM {
                    // (K g)_ij = Σ_k K_ik g_kj ; (g K)_ij = Σ_k g_ik K_kj
                    row[i * DIM + k] += int(*g.get(k, j));
                    row[k * DIM + j] -= int(*g.get(i, k));
                }
                if row.iter().any(|x| !num_traits::Zero::is_zero(x)) {
                    rows.push(row);
                }
            }
        }
    }
    rows
}
