//! Block shapes: the templates commute with their defining elements, span the
//! whole commutant, and reproduce the true generators at the residues.

use crate::chevalley::{lift, to_rational, IntMatrix, DIM};
use crate::group::{root_matrix, weyl_matrix};
use crate::linalg::rank_fraction_free;
use crate::matrix::Matrix;
use crate::report::Report;
use crate::ring::Laurent;
use crate::rootsys::Root;

use super::templates::{ht_template, x1_template, x2_template, Var, Variant};
use super::{commutation_rows, frame, linear_rows};

/// Dimension over Q of {K : K g = g K for all g}.
pub fn commutant_dim(gs: &[IntMatrix]) -> usize {
    DIM * DIM - rank_fraction_free(&commutation_rows(gs))
}

pub struct Shape {
    pub name: &'static str,
    pub constraints: Vec<(&'static str, IntMatrix)>,
    pub nvars: u32,
    pub build: fn(Variant) -> Matrix<Laurent>,
    pub expected_dim: usize,
}

fn sym_x1(v: Variant) -> Matrix<Laurent> {
    x1_template(|i| Laurent::var(i as u32 - 1), v)
}
fn sym_x2(v: Variant) -> Matrix<Laurent> {
    x2_template(|i| Laurent::var(i as u32 - 1), v)
}
fn sym_ht(v: Variant) -> Matrix<Laurent> {
    ht_template(|i| Laurent::var(i as u32 - 1), v)
}

pub fn shapes() -> Vec<Shape> {
    let f = frame();
    let w = |n: i32| weyl_matrix(Root::from_index(n), &1i64).unwrap();
    vec![
        Shape { name: "x1", constraints: vec![("h_a1(-1)", f.h1.clone()), ("w_a6(1)", w(6))], nvars: 52, build: sym_x1, expected_dim: 52 },
        Shape { name: "x2", constraints: vec![("h_a2(-1)", f.h2.clone()), ("w_a4(1)", w(4))], nvars: 52, build: sym_x2, expected_dim: 52 },
        Shape {
            name: "h_t",
            constraints: vec![
                ("h_a1(-1)", f.h1.clone()),
                ("h_a2(-1)", f.h2.clone()),
                ("w_a6(1)", w(6)),
                ("x_a6(1)", root_matrix(Root::from_index(6), &1i64)),
            ],
            nvars: 14,
            build: sym_ht,
            expected_dim: 14,
        },
    ]
}

fn commutes(t: &Matrix<Laurent>, g: &IntMatrix) -> Option<(usize, usize)> {
    let g = lift(g, &Laurent::int(1));
    t.bracket(&g).nonzero_positions().first().copied()
}

pub fn verify_block_shapes() -> Report {
    Report::timed("block shapes", |r| {
        for s in shapes() {
            for variant in [Variant::Corrected, Variant::Printed] {
                let t = (s.build)(variant);
                let bad: Vec<String> = s
                    .constraints
                    .iter()
                    .filter_map(|(n, g)| commutes(&t, g).map(|(i, j)| format!("{n} at ({},{})", i + 1, j + 1)))
                    .collect();
                let names: Vec<&str> = s.constraints.iter().map(|c| c.0).collect();
                let label = format!("{} template commutes with {}", s.name, names.join(", "));
                match variant {
                    Variant::Corrected => r.check(label, bad.is_empty(), || bad.join("; ")),
                    Variant::Printed => r.note(
                        format!("{label} (as printed)"),
                        if bad.is_empty() { "holds".into() } else { format!("fails: {}", bad.join("; ")) },
                    ),
                }
            }
            let gs: Vec<IntMatrix> = s.constraints.iter().map(|c| c.1.clone()).collect();
            let dim = commutant_dim(&gs);
            r.check_with(
                format!("{} commutant dimension = {}", s.name, s.expected_dim),
                dim == s.expected_dim,
                format!("exact rank gives {dim}"),
            );
            let rank = rank_fraction_free(&linear_rows(&(s.build)(Variant::Corrected), s.nvars));
            r.check_with(format!("{} template spans the commutant", s.name), rank == dim, format!("parameter map rank {rank}"));
        }
        let f = frame();
        let at = |v: Var| crate::ring::int(v.residue());
        for (name, t, truth) in [
            ("x1", x1_template(|i| at(Var::y(i)), Variant::Corrected), to_rational(&f.x1)),
            ("x2", x2_template(|i| at(Var::z(i)), Variant::Corrected), to_rational(&f.x2)),
        ] {
            r.check(format!("{name} template at residues = x_{}(1)", if name == "x1" { "a1" } else { "a2" }), t == truth, || {
                let (i, j) = t.first_difference(&truth).unwrap();
                format!("({},{}): template {} vs {}", i + 1, j + 1, t.get(i, j), truth.get(i, j))
            });
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_pass() {
        let r = verify_block_shapes();
        assert!(r.all_pass(), "{}", r.to_text());
    }
}
