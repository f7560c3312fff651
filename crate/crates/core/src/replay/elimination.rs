//! The elimination chain: each ledger step reads one entry of one condition's
//! defect, solves it for its target parameter and substitutes globally.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::chevalley::{to_rational, DIM};
use crate::linalg::{nullspace, rank_fraction_free, rref};
use crate::matrix::Matrix;
use crate::report::Report;
use crate::ring::{int, Poly, RingDescriptor, RingValue};

use super::conditions::{defects, holding_con8_form, Con8Form, Condition};
use super::templates::{elimination_vars, is_normalized, x1_template, x2_template, Family, Var, Variant, NORMALIZED};
use super::{commutation_rows, frame, linear_rows, ReplayError};

const SHIPPED_LEDGER: &str = include_str!("../../data/elimination_ledger.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationStep {
    pub condition: Condition,
    /// 1-based defect position.
    pub row: usize,
    pub col: usize,
    pub target: Var,
    pub expected_residue: i64,
}

impl fmt::Display for EliminationStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{}): {} = {}", self.condition, self.row, self.col, self.target, self.expected_residue)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ledger {
    pub steps: Vec<EliminationStep>,
}

impl Ledger {
    /// The shipped sequence.
    pub fn paper() -> Ledger {
        Ledger::parse(SHIPPED_LEDGER).expect("shipped ledger is valid")
    }

    /// `ConN row col variable residue` per line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Ledger, ReplayError> {
        let mut steps = Vec::new();
        let mut seen = BTreeSet::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let err = |why: String| ReplayError::Ledger { line, why };
            let body = raw.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            let f: Vec<&str> = body.split_whitespace().collect();
            if f.len() != 5 {
                return Err(err(format!("expected 5 fields, found {}", f.len())));
            }
            let condition: Condition = f[0].parse().map_err(err)?;
            let pos = |s: &str| -> Result<usize, ReplayError> {
                match s.parse::<usize>() {
                    Ok(v) if (1..=DIM).contains(&v) => Ok(v),
                    _ => Err(err(format!("position `{s}` outside 1..{DIM}"))),
                }
            };
            let (row, col) = (pos(f[1])?, pos(f[2])?);
            let target: Var = f[3].parse().map_err(err)?;
            let expected_residue: i64 = f[4].parse().map_err(|_| err(format!("bad residue `{}`", f[4])))?;
            if is_normalized(target) {
                return Err(err(format!("{target} is fixed by the normalization")));
            }
            if expected_residue != target.residue() {
                return Err(err(format!("{target} has residue {}, ledger says {expected_residue}", target.residue())));
            }
            if !seen.insert(target) {
                return Err(err(format!("{target} appears twice")));
            }
            steps.push(EliminationStep { condition, row, col, target, expected_residue });
        }
        Ok(Ledger { steps })
    }
}

#[derive(Debug, Clone)]
pub struct EliminationOptions {
    /// Truncation degree d of trunc(100, d).
    pub degree: u32,
    /// Form of Con8 to use; `None` picks the one holding for the true elements.
    pub con8: Option<Con8Form>,
    /// After the same-condition scan fails, also scan the other conditions.
    pub allow_cross_condition: bool,
}

impl Default for EliminationOptions {
    fn default() -> Self {
        EliminationOptions { degree: 2, con8: None, allow_cross_condition: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pivot {
    Stated,
    SameCondition { row: usize, col: usize },
    CrossCondition { condition: Condition, row: usize, col: usize },
}

#[derive(Debug, Clone)]
pub struct LoggedStep {
    pub index: usize,
    pub step: EliminationStep,
    pub pivot: Pivot,
    /// Coefficient of the target's ε at ε = 0.
    pub unit: BigRational,
}

#[derive(Debug, Clone)]
pub struct Abort {
    pub index: usize,
    pub step: EliminationStep,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct EliminationState {
    pub ring: RingDescriptor,
    pub con8: Con8Form,
    pub assignment: BTreeMap<Var, RingValue>,
    pub log: Vec<LoggedStep>,
    pub aborted: Option<Abort>,
    /// All 8 × 196 defect entries vanish after the run.
    pub defects_vanish: bool,
}

impl EliminationState {
    pub fn completed(&self) -> bool {
        self.aborted.is_none()
    }

    pub fn fallback_count(&self) -> usize {
        self.log.iter().filter(|s| s.pivot != Pivot::Stated).count()
    }

    /// Variables whose value is not the constant residue.
    pub fn residue_mismatches(&self) -> Vec<Var> {
        self.assignment.iter().filter(|(v, x)| x.as_poly().is_none_or(|p| *p != Poly::from_int(v.residue()))).map(|(v, _)| *v).collect()
    }

    /// Every assignment evaluated at ε = 0 equals its residue.
    pub fn residues_consistent(&self) -> bool {
        self.assignment.iter().all(|(v, x)| x.as_poly().is_some_and(|p| p.constant_term() == int(v.residue())))
    }
}

struct Engine {
    d: u32,
    /// defect[c][i*14+j]
    defect: Vec<Vec<Poly>>,
    assignment: Vec<Poly>,
}

impl Engine {
    fn solvable(&self, f: &Poly, k: u32) -> Option<BigRational> {
        let c = f.linear_coeff(k);
        (!c.is_zero() && f.constant_term().is_zero()).then_some(c)
    }

    /// Solves f = 0 for ε_k by the fixed-point iteration s ← s − f(s)/c.
    fn solve(&self, f: &Poly, k: u32, c: &BigRational) -> Poly {
        let trunc = Some(self.d);
        let cinv = c.recip();
        let mut s = Poly::zero();
        for _ in 0..=self.d {
            let r = f.substitute(k, &s, trunc);
            if r.is_zero() {
                return s;
            }
            s = s.sub(&r.scale(&cinv));
        }
        debug_assert!(f.substitute(k, &s, trunc).is_zero());
        s
    }

    fn substitute(&mut self, k: u32, s: &Poly) {
        let trunc = Some(self.d);
        let mut powers = vec![Poly::from_int(1), s.clone()];
        for e in 2..self.d as usize {
            let next = powers[e - 1].mul(s, trunc);
            powers.push(next);
        }
        let apply = |p: &mut Poly| {
            if p.contains_var(k) {
                *p = p.substitute_with_powers(k, &powers, trunc);
            }
        };
        self.defect.par_iter_mut().for_each(|m| m.iter_mut().for_each(apply));
        self.assignment.iter_mut().for_each(apply);
    }
}

fn seeded_templates(desc: RingDescriptor) -> (Matrix<RingValue>, Matrix<RingValue>) {
    let index: BTreeMap<Var, u32> = elimination_vars().into_iter().enumerate().map(|(i, v)| (v, i as u32)).collect();
    let value = |v: Var| -> RingValue {
        if let Some(&(_, _, fixed)) = NORMALIZED.iter().find(|&&(f, i, _)| f == v.family && i == v.index) {
            return RingValue::from_i64(desc, fixed);
        }
        let e = RingValue::var(desc, index[&v]).expect("ε index in range");
        &RingValue::from_i64(desc, v.residue()) + &e
    };
    (x1_template(|i| value(Var::y(i)), Variant::Corrected), x2_template(|i| value(Var::z(i)), Variant::Corrected))
}

fn initial_engine(d: u32, con8: Con8Form) -> Engine {
    let desc = RingDescriptor::trunc(100, d).expect("valid truncation");
    let (x1, x2) = seeded_templates(desc);
    let defect = defects(&x1, &x2, con8, true)
        .into_iter()
        .map(|m| m.entries().map(|(_, _, v)| v.as_poly().expect("truncated ring").clone()).collect())
        .collect();
    let assignment = elimination_vars().iter().enumerate().map(|(k, v)| Poly::from_int(v.residue()).add(&Poly::var(k as u32))).collect();
    Engine { d, defect, assignment }
}

/// Runs the ledger over trunc(100, d).
pub fn run_elimination(ledger: &Ledger, opts: &EliminationOptions) -> EliminationState {
    let con8 = opts.con8.or_else(holding_con8_form).unwrap_or(Con8Form::Literal);
    let desc = RingDescriptor::trunc(100, opts.degree).expect("valid truncation");
    let mut eng = initial_engine(opts.degree, con8);
    let vars = elimination_vars();
    let index: BTreeMap<Var, u32> = vars.iter().enumerate().map(|(i, v)| (*v, i as u32)).collect();
    let mut log = Vec::new();
    let mut aborted = None;

    for (n, step) in ledger.steps.iter().enumerate() {
        let k = index[&step.target];
        let c = step.condition.index();
        let at = (step.row - 1) * DIM + (step.col - 1);
        let mut found: Option<(Pivot, usize, usize, BigRational)> = eng.solvable(&eng.defect[c][at], k).map(|u| (Pivot::Stated, c, at, u));
        if found.is_none() {
            found = (0..DIM * DIM).find_map(|e| {
                eng.solvable(&eng.defect[c][e], k).map(|u| (Pivot::SameCondition { row: e / DIM + 1, col: e % DIM + 1 }, c, e, u))
            });
        }
        if found.is_none() && opts.allow_cross_condition {
            found = Condition::ALL.iter().filter(|o| o.index() != c).find_map(|o| {
                (0..DIM * DIM).find_map(|e| {
                    eng.solvable(&eng.defect[o.index()][e], k)
                        .map(|u| (Pivot::CrossCondition { condition: *o, row: e / DIM + 1, col: e % DIM + 1 }, o.index(), e, u))
                })
            });
        }
        let Some((pivot, ci, e, unit)) = found else {
            let stated = &eng.defect[c][at];
            let reason = if stated.is_zero() {
                format!("{}({},{}) is identically zero", step.condition, step.row, step.col)
            } else if !stated.contains_var(k) {
                format!("{} is absent from {}({},{})", step.target, step.condition, step.row, step.col)
            } else {
                format!("coefficient of {} in {}({},{}) is not a unit", step.target, step.condition, step.row, step.col)
            };
            let scope = if opts.allow_cross_condition { "any condition" } else { "that condition" };
            aborted = Some(Abort {
                index: n + 1,
                step: step.clone(),
                reason: format!("{reason}; no entry of {scope} has a unit coefficient of {}", step.target),
            });
            break;
        };
        let f = eng.defect[ci][e].clone();
        let s = eng.solve(&f, k, &unit);
        eng.substitute(k, &s);
        log.push(LoggedStep { index: n + 1, step: step.clone(), pivot, unit });
    }

    let assignment =
        vars.iter().zip(&eng.assignment).map(|(v, p)| (*v, RingValue::from_poly(desc, p.clone()).expect("within truncation"))).collect();
    let defects_vanish = eng.defect.iter().all(|m| m.iter().all(Poly::is_zero));
    EliminationState { ring: desc, con8, assignment, log, aborted, defects_vanish }
}

/// Ledger steps whose stated entry, at the true point before any
/// substitution, has no linear term in the step's target.
pub fn stated_entries_without_target(ledger: &Ledger, con8: Option<Con8Form>) -> Vec<EliminationStep> {
    let con8 = con8.or_else(holding_con8_form).unwrap_or(Con8Form::Literal);
    let eng = initial_engine(2, con8);
    let index: BTreeMap<Var, u32> = elimination_vars().into_iter().enumerate().map(|(i, v)| (v, i as u32)).collect();
    ledger
        .steps
        .iter()
        .filter(|s| {
            let at = (s.row - 1) * DIM + (s.col - 1);
            eng.defect[s.condition.index()][at].linear_coeff(index[&s.target]).is_zero()
        })
        .cloned()
        .collect()
}

/// Why the chain cannot determine all 100 parameters: the linearization's
/// rank, and the conjugation symmetries by the centralizer of {w1, w2}.
#[derive(Debug, Clone)]
pub struct SymmetryDiagnostic {
    pub linear_rank: usize,
    pub centralizer_dim: usize,
    /// Dimension of the tangent directions that respect the normalization.
    pub residual_dim: usize,
    /// Those directions are annihilated by the linearization.
    pub residual_in_kernel: bool,
    /// They span the whole kernel.
    pub residual_spans_kernel: bool,
    pub kernel_basis: Vec<BTreeMap<Var, BigRational>>,
}

/// Unique solution of A·x = b, if consistent.
fn solve_unique(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a[0].len();
    let aug: Vec<Vec<BigRational>> = a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    let (red, piv) = rref(&aug);
    if piv.contains(&n) || piv.len() < n {
        return None;
    }
    let mut x = vec![int(0); n];
    for (r, &p) in piv.iter().enumerate() {
        x[p] = red[r][n].clone();
    }
    Some(x)
}

pub fn residual_symmetry() -> SymmetryDiagnostic {
    let eng = initial_engine(2, holding_con8_form().unwrap_or(Con8Form::Literal));
    let lin: Vec<Vec<BigRational>> =
        eng.defect.iter().flatten().filter(|p| !p.is_zero()).map(|p| (0..100).map(|k| p.linear_coeff(k)).collect()).collect();
    let linear_rank = rank_fraction_free(&lin);

    let f = frame();
    let cent = nullspace(&commutation_rows(&[f.w1.clone(), f.w2.clone()]), DIM * DIM);
    let a1 = linear_rows(&(super::shapes::shapes()[0].build)(Variant::Corrected), 52);
    let a2 = linear_rows(&(super::shapes::shapes()[1].build)(Variant::Corrected), 52);
    let (x1, x2) = (to_rational(&f.x1), to_rational(&f.x2));
    let tangents: Vec<Vec<BigRational>> = cent
        .iter()
        .map(|k| {
            let km = Matrix::from_fn(DIM, DIM, |i, j| k[i * DIM + j].clone());
            let b1: Vec<BigRational> = km.bracket(&x1).entries().map(|(_, _, v)| v.clone()).collect();
            let b2: Vec<BigRational> = km.bracket(&x2).entries().map(|(_, _, v)| v.clone()).collect();
            let mut t = solve_unique(&a1, &b1).expect("conjugation preserves the x1 shape");
            t.extend(solve_unique(&a2, &b2).expect("conjugation preserves the x2 shape"));
            t
        })
        .collect();
    let norm_slots: Vec<usize> = NORMALIZED.iter().map(|&(f, i, _)| Var { family: f, index: i }.slot()).collect();
    let constraint: Vec<Vec<BigRational>> = norm_slots.iter().map(|&s| tangents.iter().map(|t| t[s].clone()).collect()).collect();
    let combos = nullspace(&constraint, tangents.len());
    let vars = elimination_vars();
    let residual: Vec<Vec<BigRational>> = combos
        .iter()
        .map(|c| vars.iter().map(|v| tangents.iter().zip(c).fold(int(0), |acc, (t, w)| acc + &t[v.slot()] * w)).collect())
        .filter(|v: &Vec<BigRational>| v.iter().any(|x| !x.is_zero()))
        .collect();
    let residual_dim = rank_fraction_free(&residual);
    let residual_in_kernel =
        residual.iter().all(|v| lin.iter().all(|row| row.iter().zip(v).fold(int(0), |acc, (a, b)| acc + a * b).is_zero()));
    let kernel = nullspace(&lin, 100);
    let residual_spans_kernel = residual_in_kernel && residual_dim == kernel.len();
    let kernel_basis =
        kernel.iter().map(|v| vars.iter().zip(v).filter(|(_, x)| !x.is_zero()).map(|(var, x)| (*var, x.clone())).collect()).collect();
    SymmetryDiagnostic { linear_rank, centralizer_dim: cent.len(), residual_dim, residual_in_kernel, residual_spans_kernel, kernel_basis }
}

fn render_kernel(v: &BTreeMap<Var, BigRational>) -> String {
    v.iter().map(|(k, x)| format!("{x}·{k}")).collect::<Vec<_>>().join(" + ")
}

/// Report for `verify elimination`: the ledger run at the requested degree,
/// the d = 3 guard run when `guard` is set, and the rank diagnostic.
pub fn elimination_report(ledger: &Ledger, opts: &EliminationOptions, guard: bool) -> Report {
    Report::timed("elimination", |r| {
        let st = run_elimination(ledger, opts);
        let n = ledger.steps.len();
        let ys = ledger.steps.iter().filter(|s| s.target.family == Family::Y).count();
        r.check_with(
            "ledger covers the 100 unknowns once each",
            n == 100,
            format!("{n} steps ({ys} y, {} z), con8 form {:?}", n - ys, st.con8),
        );
        match &st.aborted {
            None => r.check_with("ledger replayed to the end", true, format!("{} steps over {}", st.log.len(), st.ring)),
            Some(a) => r.fail(
                "ledger replayed to the end",
                format!("aborted at step {} {}: {} (after {} steps)", a.index, a.step, a.reason, st.log.len()),
            ),
        }
        r.check_with(
            "every executed pivot is a unit at ε = 0",
            st.log.iter().all(|s| !s.unit.is_zero()),
            format!("{} pivots", st.log.len()),
        );
        let fallbacks: Vec<String> = st
            .log
            .iter()
            .filter(|s| s.pivot != Pivot::Stated)
            .map(|s| match &s.pivot {
                Pivot::SameCondition { row, col } => format!("#{} {} via ({row},{col})", s.index, s.step.target),
                Pivot::CrossCondition { condition, row, col } => format!("#{} {} via {condition}({row},{col})", s.index, s.step.target),
                Pivot::Stated => unreachable!(),
            })
            .collect();
        r.note(format!("fallback-scanned steps: {}", fallbacks.len()), fallbacks.join(", "));
        r.check("assignments agree with residues modulo the radical", st.residues_consistent(), || "constant terms differ".into());
        let bad = st.residue_mismatches();
        r.check_with(
            "final assignment = residue list",
            st.completed() && bad.is_empty() && st.defects_vanish,
            if bad.is_empty() {
                "all 100 variables at their residues".to_string()
            } else {
                format!(
                    "{} variables still carry ε terms, e.g. {}",
                    bad.len(),
                    bad.iter().take(6).map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
                )
            },
        );
        let outcome = |s: &EliminationState| match &s.aborted {
            None => format!("completed, {} fallbacks", s.fallback_count()),
            Some(a) => format!("aborted at step {} {} after {} fallbacks", a.index, a.step, s.fallback_count()),
        };
        if guard {
            let st3 = run_elimination(ledger, &EliminationOptions { degree: 3, ..opts.clone() });
            let same = st.completed() && st3.completed() && bad.is_empty() && st3.residue_mismatches().is_empty();
            r.check_with(
                "d = 3 run gives the identical final assignment",
                same,
                format!("d = 2: {}; d = 3: {}", outcome(&st), outcome(&st3)),
            );
        }
        if !opts.allow_cross_condition {
            let cross = run_elimination(ledger, &EliminationOptions { allow_cross_condition: true, ..opts.clone() });
            r.note("diagnostic run with cross-condition pivot scan", format!("{} steps executed; {}", cross.log.len(), outcome(&cross)));
        }
        let missing = stated_entries_without_target(ledger, opts.con8);
        r.note(
            format!("stated entries linear in their target at the true point: {} of {n}", n - missing.len()),
            missing.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "),
        );
        let diag = residual_symmetry();
        r.note(
            "linearized rank of Con1..Con8 in the 100 unknowns",
            format!("{} (kernel dimension {})", diag.linear_rank, 100 - diag.linear_rank),
        );
        r.note(
            "centralizer of {w1, w2}",
            format!(
                "dimension {}; {} conjugation directions survive the normalization; annihilated by the linearization: {}; span the kernel: {}",
                diag.centralizer_dim, diag.residual_dim, diag.residual_in_kernel, diag.residual_spans_kernel
            ),
        );
        for (i, v) in diag.kernel_basis.iter().enumerate() {
            r.note(format!("kernel vector {}", i + 1), render_kernel(v));
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledger_parses_and_is_a_permutation() {
        let l = Ledger::paper();
        assert_eq!(l.steps.len(), 100);
        let targets: BTreeSet<Var> = l.steps.iter().map(|s| s.target).collect();
        assert_eq!(targets, elimination_vars().into_iter().collect());
        assert_eq!(l.steps[0].to_string(), "(Con1,14,3): y22 = 0");
    }

    #[test]
    fn ledger_rejects_bad_lines() {
        assert!(Ledger::parse("Con1 14 3 y22").is_err());
        assert!(Ledger::parse("Con1 15 3 y22 0").is_err());
        assert!(Ledger::parse("Con1 1 3 y1 0").is_err());
        assert!(Ledger::parse("Con1 1 3 y16 1").is_err());
        assert!(Ledger::parse("Con1 1 3 y22 0\nCon2 1 1 y22 0").is_err());
        assert!(Ledger::parse("# only a comment\n").unwrap().steps.is_empty());
    }
}
