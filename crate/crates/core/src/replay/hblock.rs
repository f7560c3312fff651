//! The action of w_{αi}(1) on the Cartan part (positions 13, 14).

use crate::chevalley::{H1_POS, H2_POS};
use crate::group::weyl_matrix;
use crate::report::Report;
use crate::rootsys::Root;

use super::ReplayError;

pub fn weyl_hblock(a: Root) -> Result<[[i64; 2]; 2], ReplayError> {
    if a != Root::simple(1) && a != Root::simple(2) {
        return Err(ReplayError::NotSimple(a));
    }
    let w = weyl_matrix(a, &1i64).expect("1 is a unit");
    let p = [H1_POS, H2_POS];
    Ok(p.map(|i| p.map(|j| *w.get(i, j))))
}

/// The displayed blocks, and that each squares to the identity.
pub fn hblock_report() -> Report {
    Report::timed("weyl h-blocks", |r| {
        for (i, expect) in [(1, [[-1, 3], [0, 1]]), (2, [[1, 0], [1, -1]])] {
            let b = weyl_hblock(Root::simple(i)).expect("simple root");
            r.check_with(format!("w_a{i}(1) on positions 13,14"), b == expect, format!("{b:?}"));
            let sq = [0, 1].map(|p| [0, 1].map(|q| b[p][0] * b[0][q] + b[p][1] * b[1][q]));
            r.check_with(format!("block(a{i})² = E"), sq == [[1, 0], [0, 1]], format!("{sq:?}"));
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn displayed_blocks() {
        assert_eq!(weyl_hblock(Root::simple(1)).unwrap(), [[-1, 3], [0, 1]]);
        assert_eq!(weyl_hblock(Root::simple(2)).unwrap(), [[1, 0], [1, -1]]);
        assert!(weyl_hblock(Root::from_index(3)).is_err());
    }
}
