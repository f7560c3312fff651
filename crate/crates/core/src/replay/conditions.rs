//! The eight matrix conditions Con1..Con8 satisfied by the images of
//! x_{α1}(1), x_{α2}(1), as defect matrices LHS − RHS.

use std::fmt;
use std::str::FromStr;

use crate::chevalley::{lift, DIM};
use crate::matrix::Matrix;
use crate::report::Report;
use crate::ring::Scalar;

use super::frame;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    Con1,
    Con2,
    Con3,
    Con4,
    Con5,
    Con6,
    Con7,
    Con8,
}

impl Condition {
    pub const ALL: [Condition; 8] = [
        Condition::Con1,
        Condition::Con2,
        Condition::Con3,
        Condition::Con4,
        Condition::Con5,
        Condition::Con6,
        Condition::Con7,
        Condition::Con8,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn statement(self) -> &'static str {
        match self {
            Condition::Con1 => "x2·x12 = x12·x2",
            Condition::Con2 => "h1·x2·h1·x2 = E",
            Condition::Con3 => "h2·x1·h2·x1 = E",
            Condition::Con4 => "x2·x112 = x112·x2",
            Condition::Con5 => "x2·x1112 = x11122·x1112·x2",
            Condition::Con6 => "x1112·x1 = x1·x1112",
            Condition::Con7 => "x1·x112 = x1112³·x112·x1",
            Condition::Con8 => "w1³ = x1·w1·x1·w1³·x1",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Con{}", self.index() + 1)
    }
}

impl FromStr for Condition {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let n: usize = s
            .trim()
            .strip_prefix("Con")
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| format!("`{s}` is not a condition name (Con1..Con8)"))?;
        Condition::ALL.get(n.wrapping_sub(1)).copied().ok_or_else(|| format!("no condition {s}"))
    }
}

/// Con8 as printed (w1³ on the left) or as the Steinberg identity (w1 on the left).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Con8Form {
    Literal,
    Corrected,
}

/// All eight defects for candidate images `x1`, `x2`; `parallel` switches
/// the heavy products to the row-parallel kernel.
pub fn defects<T: Scalar>(x1: &Matrix<T>, x2: &Matrix<T>, form: Con8Form, parallel: bool) -> Vec<Matrix<T>> {
    let f = frame();
    let p = x1.proto();
    let [w1, w2, w1i, w2i, h1, h2] = [&f.w1, &f.w2, &f.w1_inv, &f.w2_inv, &f.h1, &f.h2].map(|m| lift(m, p));
    let e = Matrix::identity(DIM, p);
    let mul = |a: &Matrix<T>, b: &Matrix<T>| if parallel { a.par_mul(b) } else { a.mul(b) };

    let x12 = w2.mul(x1).mul(&w2i);
    let x112 = w1.mul(&x12).mul(&w1i);
    let x1112 = w1.mul(x2).mul(&w1i);
    let x11122 = w2.mul(&x1112).mul(&w2i);
    let w1_3 = w1.mul(&w1).mul(&w1);

    let con1 = mul(x2, &x12).sub(&mul(&x12, x2));
    let con2 = mul(&h1.mul(x2).mul(&h1), x2).sub(&e);
    let con3 = mul(&h2.mul(x1).mul(&h2), x1).sub(&e);
    let con4 = mul(x2, &x112).sub(&mul(&x112, x2));
    let con5 = mul(x2, &x1112).sub(&mul(&mul(&x11122, &x1112), x2));
    let con6 = mul(&x1112, x1).sub(&mul(x1, &x1112));
    let cube = mul(&mul(&x1112, &x1112), &x1112);
    let con7 = mul(x1, &x112).sub(&mul(&mul(&cube, &x112), x1));
    let lhs8 = if form == Con8Form::Literal { w1_3.clone() } else { w1.clone() };
    let x1w1 = x1.mul(&w1);
    let con8 = lhs8.sub(&mul(&mul(&x1w1, &x1.mul(&w1_3)), x1));
    vec![con1, con2, con3, con4, con5, con6, con7, con8]
}

fn first_nonzero<T: Scalar>(m: &Matrix<T>) -> String {
    match m.nonzero_positions().first() {
        Some(&(i, j)) => format!("defect entry ({},{}) = {:?}", i + 1, j + 1, m.get(i, j)),
        None => "defect is zero".into(),
    }
}

/// Checks Con1..Con8 for the true elements over the integers, Con8 in both forms.
pub fn verify_conditions() -> Report {
    Report::timed("conditions", |r| {
        let f = frame();
        let lit = defects(&f.x1, &f.x2, Con8Form::Literal, false);
        for (c, d) in Condition::ALL.iter().zip(&lit).take(7) {
            r.check(format!("{c}: {}", c.statement()), d.is_zero(), || first_nonzero(d));
        }
        let literal_ok = lit[7].is_zero();
        let cor = defects(&f.x1, &f.x2, Con8Form::Corrected, false);
        let corrected_ok = cor[7].is_zero();
        let outcome = |ok: bool, d: &Matrix<i64>| if ok { "holds".to_string() } else { format!("fails, {}", first_nonzero(d)) };
        r.note("Con8 literal: w1³ = x1·w1·x1·w1³·x1", outcome(literal_ok, &lit[7]));
        r.note("Con8 corrected: w1 = x1·w1·x1·w1³·x1", outcome(corrected_ok, &cor[7]));
        r.check_with(
            "Con8 holds in at least one form",
            literal_ok || corrected_ok,
            format!("literal {}, corrected {}", if literal_ok { "holds" } else { "fails" }, if corrected_ok { "holds" } else { "fails" }),
        );
    })
}

/// The Con8 form that holds for the true elements (literal preferred).
pub fn holding_con8_form() -> Option<Con8Form> {
    let f = frame();
    [Con8Form::Literal, Con8Form::Corrected].into_iter().find(|&form| defects(&f.x1, &f.x2, form, false)[7].is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn condition_names_parse() {
        assert_eq!("Con3".parse::<Condition>().unwrap(), Condition::Con3);
        assert!("Con9".parse::<Condition>().is_err());
        assert!("Con0".parse::<Condition>().is_err());
        assert_eq!(Condition::Con8.to_string(), "Con8");
    }

    #[test]
    fn literal_con8_holds_for_printed_w1() {
        assert_eq!(holding_con8_form(), Some(Con8Form::Literal));
    }
}
