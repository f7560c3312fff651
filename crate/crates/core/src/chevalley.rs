//! Chevalley basis of the G2 Lie algebra in its 14-dimensional adjoint
//! representation. Signs are pinned by two explicit unipotents x_{α1}(1),
//! x_{α2}(1) and two explicit Weyl representatives; every other generator is
//! obtained by conjugation and a nilpotent logarithm.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::matrix::Matrix;
use crate::report::Report;
use crate::ring::{int, rational_to_i64, Scalar};
use crate::rootsys::{all_roots, cartan_int, sum, Root};

pub const DIM: usize = 14;
/// 0-based positions of the Cartan basis vectors V1 = h1, V2 = h2.
pub const H1_POS: usize = 12;
pub const H2_POS: usize = 13;

pub type IntMatrix = Matrix<i64>;

#[derive(Debug, Clone, Error)]
pub enum ChevalleyError {
    #[error("matrix is not integral: {0}")]
    NotIntegral(String),
    #[error("not unipotent: {0}")]
    NotUnipotent(String),
    #[error("{0}")]
    PropertyViolated(String),
}

/// Builds a 14×14 integer matrix from 1-based (coefficient, row, col) terms.
pub fn from_terms(terms: &[(i64, usize, usize)], identity: bool) -> IntMatrix {
    let mut m = if identity { Matrix::identity(DIM, &0) } else { Matrix::zeros(DIM, DIM, &0) };
    for &(c, i, j) in terms {
        let v = *m.get(i - 1, j - 1) + c;
        m.set(i - 1, j - 1, v);
    }
    m
}

/// The explicitly printed matrices that pin all signs.
pub mod explicit {
    use super::*;

    pub fn x1() -> IntMatrix {
        from_terms(
            &[
                (-1, 1, 2),
                (-2, 1, 13),
                (3, 1, 14),
                (-1, 4, 6),
                (-1, 4, 8),
                (-1, 4, 10),
                (3, 5, 3),
                (2, 6, 8),
                (3, 6, 10),
                (-3, 7, 3),
                (-2, 7, 5),
                (3, 8, 10),
                (1, 9, 3),
                (1, 9, 5),
                (-1, 9, 7),
                (1, 13, 2),
            ],
            true,
        )
    }

    pub fn x2() -> IntMatrix {
        from_terms(&[(1, 2, 6), (-1, 3, 4), (1, 3, 13), (-2, 3, 14), (-1, 5, 1), (1, 10, 12), (-1, 11, 9), (1, 14, 4)], true)
    }

    pub fn w1() -> IntMatrix {
        from_terms(
            &[
                (-1, 1, 2),
                (-1, 2, 1),
                (1, 3, 9),
                (1, 4, 10),
                (-1, 9, 3),
                (-1, 10, 4),
                (1, 5, 7),
                (1, 6, 8),
                (-1, 7, 5),
                (-1, 8, 6),
                (1, 11, 11),
                (1, 12, 12),
                (-1, 13, 13),
                (1, 14, 14),
                (3, 13, 14),
            ],
            false,
        )
    }

    pub fn w2() -> IntMatrix {
        from_terms(
            &[
                (-1, 3, 4),
                (-1, 4, 3),
                (1, 1, 5),
                (1, 2, 6),
                (-1, 5, 1),
                (-1, 6, 2),
                (1, 7, 7),
                (1, 8, 8),
                (1, 9, 11),
                (1, 10, 12),
                (-1, 11, 9),
                (-1, 12, 10),
                (1, 13, 13),
                (-1, 14, 14),
                (1, 14, 13),
            ],
            false,
        )
    }

    pub fn h1_minus_one() -> IntMatrix {
        Matrix::diag(vec![1, 1, -1, -1, -1, -1, -1, -1, -1, -1, 1, 1, 1, 1])
    }

    pub fn h2_minus_one() -> IntMatrix {
        Matrix::diag(vec![-1, -1, 1, 1, -1, -1, 1, 1, -1, -1, -1, -1, 1, 1])
    }
}

fn to_q(m: &IntMatrix) -> Matrix<BigRational> {
    m.map(|&x| int(x))
}

fn to_int(m: &Matrix<BigRational>, what: &str) -> Result<IntMatrix, ChevalleyError> {
    let mut out = Matrix::zeros(m.rows(), m.cols(), &0);
    for (i, j, v) in m.entries() {
        let x = rational_to_i64(v).ok_or_else(|| ChevalleyError::NotIntegral(format!("{what} entry ({},{}) = {v}", i + 1, j + 1)))?;
        out.set(i, j, x);
    }
    Ok(out)
}

/// Inverse of an integer matrix with integer inverse (Weyl representatives).
pub fn int_inverse(m: &IntMatrix) -> IntMatrix {
    let inv = to_q(m).inverse().expect("invertible over Q");
    to_int(&inv, "inverse").expect("unimodular")
}

/// log(U) = Σ_{k≥1} (−1)^{k+1} (U−E)^k / k for unipotent U.
pub fn nilpotent_log(u: &IntMatrix) -> Result<IntMatrix, ChevalleyError> {
    let q = to_q(u);
    let n = q.sub(&Matrix::identity(DIM, &int(0)));
    let mut acc = Matrix::zeros(DIM, DIM, &int(0));
    let mut pw = n.clone();
    for k in 1..=DIM {
        if pw.is_zero() {
            return to_int(&acc, "logarithm");
        }
        let c = if k % 2 == 1 { int(1) } else { int(-1) } / int(k as i64);
        acc = acc.add(&pw.scale(&c));
        pw = pw.mul(&n);
    }
    Err(ChevalleyError::NotUnipotent("U − E is not nilpotent".into()))
}

/// X^j / j! for j = 0..=3, checked integral, and the vanishing of X^4.
pub fn divided_powers(x: &IntMatrix) -> Result<[IntMatrix; 4], ChevalleyError> {
    let q = to_q(x);
    let mut pw = Matrix::identity(DIM, &int(0));
    let mut out: Vec<IntMatrix> = Vec::with_capacity(4);
    let mut fact = 1i64;
    for j in 0..4 {
        if j > 0 {
            pw = pw.mul(&q);
            fact *= j as i64;
        }
        out.push(to_int(&pw.scale(&(int(1) / int(fact))), "divided power")?);
    }
    if !pw.mul(&q).is_zero() {
        return Err(ChevalleyError::NotUnipotent("X^4 ≠ 0".into()));
    }
    Ok(out.try_into().unwrap())
}

#[derive(Debug, Clone)]
pub struct AdjointGenerator {
    pub root: Root,
    pub matrix: IntMatrix,
    pub divided_powers: [IntMatrix; 4],
}

impl AdjointGenerator {
    fn new(root: Root, matrix: IntMatrix) -> Result<Self, ChevalleyError> {
        let divided_powers = divided_powers(&matrix)?;
        Ok(AdjointGenerator { root, matrix, divided_powers })
    }

    /// exp(X) at t = 1 over the integers.
    pub fn unipotent(&self) -> IntMatrix {
        self.divided_powers.iter().skip(1).fold(self.divided_powers[0].clone(), |a, b| a.add(b))
    }
}

#[derive(Debug, Clone, Default)]
pub struct StructureConstants {
    /// [x_α, x_β] = N_{α,β} x_{α+β}
    pub n: BTreeMap<(Root, Root), i64>,
    /// [h_i, x_α] = c x_α, keyed by (i, α) with i ∈ {1, 2}
    pub cartan_action: BTreeMap<(usize, Root), i64>,
    /// [x_α, x_{−α}] = n1 h1 + n2 h2
    pub coroot: BTreeMap<Root, (i64, i64)>,
}

#[derive(Debug, Clone)]
pub struct Chevalley {
    gens: Vec<AdjointGenerator>,
    h: [IntMatrix; 2],
    pub constants: StructureConstants,
}

fn conj(w: &IntMatrix, winv: &IntMatrix, m: &IntMatrix) -> IntMatrix {
    w.mul(m).mul(winv)
}

/// Scalar c with a = c·b, if any (b ≠ 0).
fn ratio(a: &IntMatrix, b: &IntMatrix) -> Option<i64> {
    let (i, j) = *b.nonzero_positions().first()?;
    let (num, den) = (*a.get(i, j), *b.get(i, j));
    if num % den != 0 {
        return None;
    }
    let c = num / den;
    (a.sub(&b.map(|x| x * c)).is_zero()).then_some(c)
}

impl Chevalley {
    /// The generators, built once.
    pub fn get() -> &'static Chevalley {
        static CELL: OnceLock<Chevalley> = OnceLock::new();
        CELL.get_or_init(|| build_generators().expect("generator construction is consistent"))
    }

    pub fn gen(&self, r: Root) -> &AdjointGenerator {
        &self.gens[r.position()]
    }

    pub fn x(&self, r: Root) -> &IntMatrix {
        &self.gen(r).matrix
    }

    pub fn generators(&self) -> &[AdjointGenerator] {
        &self.gens
    }

    /// H_i = [X_{αi}, X_{−αi}], i ∈ {1, 2}.
    pub fn h(&self, i: usize) -> &IntMatrix {
        &self.h[i - 1]
    }
}

pub fn build_generators() -> Result<Chevalley, ChevalleyError> {
    let w1 = explicit::w1();
    let w2 = explicit::w2();
    let (w1i, w2i) = (int_inverse(&w1), int_inverse(&w2));

    let x1 = explicit::x1();
    let x2 = explicit::x2();
    // x_{−α}(1) = w x_α(−1) w⁻¹ for the simple roots
    let lx1 = nilpotent_log(&x1)?;
    let lx2 = nilpotent_log(&x2)?;
    let inv_unip = |x: &IntMatrix| -> Result<IntMatrix, ChevalleyError> {
        let d = divided_powers(x)?;
        Ok(d[0].sub(&d[1]).add(&d[2]).sub(&d[3]))
    };
    let mut unip: BTreeMap<i32, IntMatrix> = BTreeMap::new();
    unip.insert(1, x1);
    unip.insert(2, x2);
    unip.insert(-1, conj(&w1, &w1i, &inv_unip(&lx1)?));
    unip.insert(-2, conj(&w2, &w2i, &inv_unip(&lx2)?));
    // α1+α2 = w2·α1, 2α1+α2 = w1·(α1+α2), 3α1+α2 = w1·α2, 3α1+2α2 = w2·(3α1+α2)
    let scheme: [(i32, &IntMatrix, &IntMatrix, i32); 4] = [(3, &w2, &w2i, 1), (4, &w1, &w1i, 3), (5, &w1, &w1i, 2), (6, &w2, &w2i, 5)];
    for (k, w, wi, src) in scheme {
        for s in [1, -1] {
            let u = conj(w, wi, &unip[&(s * src)]);
            unip.insert(s * k, u);
        }
    }

    let mut gens = Vec::with_capacity(12);
    for r in all_roots() {
        gens.push(AdjointGenerator::new(r, nilpotent_log(&unip[&r.index()])?)?);
    }
    let h = [gens[0].matrix.bracket(&gens[1].matrix), gens[2].matrix.bracket(&gens[3].matrix)];
    let mut ch = Chevalley { gens, h, constants: StructureConstants::default() };
    ch.constants = derive_constants(&ch)?;
    let report = verify_chevalley_properties_of(&ch);
    if let Some(f) = report.failures().next() {
        return Err(ChevalleyError::PropertyViolated(format!("{}: {}", f.name, f.witness.clone().unwrap_or_default())));
    }
    Ok(ch)
}

fn derive_constants(ch: &Chevalley) -> Result<StructureConstants, ChevalleyError> {
    let mut sc = StructureConstants::default();
    for a in all_roots() {
        for b in all_roots() {
            if let Some(c) = sum(&a, &b) {
                let br = ch.x(a).bracket(ch.x(b));
                let n = ratio(&br, ch.x(c))
                    .ok_or_else(|| ChevalleyError::PropertyViolated(format!("[x_{a}, x_{b}] is not a multiple of x_{c}")))?;
                sc.n.insert((a, b), n);
            }
        }
        for i in 1..=2 {
            let br = ch.h(i).bracket(ch.x(a));
            let c =
                ratio(&br, ch.x(a)).ok_or_else(|| ChevalleyError::PropertyViolated(format!("x_{a} is not an eigenvector of ad h{i}")))?;
            sc.cartan_action.insert((i, a), c);
        }
        let br = ch.x(a).bracket(ch.x(a.neg()));
        let (h1, h2) = (ch.h(1), ch.h(2));
        // h1, h2 are diagonal; solve on two generic diagonal entries
        let (p, q) = (0usize, 2usize);
        let det = h1.get(p, p) * h2.get(q, q) - h2.get(p, p) * h1.get(q, q);
        let n1 = (br.get(p, p) * h2.get(q, q) - h2.get(p, p) * br.get(q, q)) / det;
        let n2 = (h1.get(p, p) * br.get(q, q) - br.get(p, p) * h1.get(q, q)) / det;
        sc.coroot.insert(a, (n1, n2));
    }
    Ok(sc)
}

/// Checks properties 1)–6) of a Chevalley basis on the built matrices.
pub fn verify_chevalley_properties() -> Report {
    verify_chevalley_properties_of(Chevalley::get())
}

fn verify_chevalley_properties_of(ch: &Chevalley) -> Report {
    Report::timed("chevalley properties", |r| {
        let z = Matrix::zeros(DIM, DIM, &0i64);
        let hs = [ch.h(1).clone(), ch.h(2).clone()];

        // 1) [h_i, h_j] = 0
        let mut bad = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                if hs[i].bracket(&hs[j]) != z {
                    bad.push(format!("[h{},h{}]", i + 1, j + 1));
                }
            }
        }
        r.check("property 1: [h_i, h_j] = 0", bad.is_empty(), || bad.join(", "));

        // 2) [h_i, x_α] = ⟨α, α_i⟩ x_α
        let mut bad = Vec::new();
        let mut literal_bad = 0;
        for a in all_roots() {
            for i in 1..=2 {
                let br = hs[i - 1].bracket(ch.x(a));
                let ai = Root::simple(i);
                let expect = ch.x(a).map(|x| x * cartan_int(&a, &ai) as i64);
                if br != expect {
                    bad.push(format!("[h{i}, x_{a}]"));
                }
                if br != ch.x(a).map(|x| x * cartan_int(&ai, &a) as i64) {
                    literal_bad += 1;
                }
            }
        }
        r.check("property 2: [h_i, x_a] = <a, a_i> x_a", bad.is_empty(), || bad.join(", "));
        r.note(
            "property 2 with the transposed pairing <a_i, a>",
            format!("fails on {literal_bad} of 24 (i, a) pairs; the standard pairing <a, a_i> is the consistent one"),
        );

        // 3) [x_α, x_{−α}] = n1 h1 + n2 h2 with (n1, n2) the coroot coordinates
        let mut bad = Vec::new();
        let mut root_coords_hold = Vec::new();
        for a in all_roots() {
            let br = ch.x(a).bracket(ch.x(a.neg()));
            let (n1, n2) = a.coroot_coords();
            let expect = hs[0].map(|x| x * n1 as i64).add(&hs[1].map(|x| x * n2 as i64));
            if br != expect {
                bad.push(format!("[x_{a}, x_{}]", a.neg()));
            }
            let lit = hs[0].map(|x| x * a.n1 as i64).add(&hs[1].map(|x| x * a.n2 as i64));
            if br == lit {
                root_coords_hold.push(a.name());
            }
        }
        r.check("property 3: [x_a, x_-a] = n1 h1 + n2 h2 (coroot coordinates)", bad.is_empty(), || bad.join(", "));
        r.note(
            "property 3 with root coordinates in place of coroot coordinates",
            format!("holds only for {}", root_coords_hold.join(", ")),
        );

        // 4) α+β ∉ Φ, β ≠ −α ⇒ [x_α, x_β] = 0
        let mut bad = Vec::new();
        for a in all_roots() {
            for b in all_roots() {
                if b != a.neg() && sum(&a, &b).is_none() && ch.x(a).bracket(ch.x(b)) != z {
                    bad.push(format!("[x_{a}, x_{b}]"));
                }
            }
        }
        r.check("property 4: a+b not a root => [x_a, x_b] = 0", bad.is_empty(), || bad.join(", "));

        // 5) same length, α+β ∈ Φ ⇒ [x_α, x_β] = c x_{α+β}, c ≠ 0
        // 6) long α, short β ⇒ bracket is an integral combination along α+β, α+2β, …
        let mut bad5 = Vec::new();
        let mut bad6 = Vec::new();
        let mut consts5 = Vec::new();
        for a in all_roots() {
            for b in all_roots() {
                let Some(c) = sum(&a, &b) else { continue };
                let br = ch.x(a).bracket(ch.x(b));
                let n = ratio(&br, ch.x(c)).filter(|&n| n != 0);
                if a.is_long() == b.is_long() {
                    match n {
                        Some(n) => consts5.push(format!("N({a},{b})={n}")),
                        None => bad5.push(format!("[x_{a}, x_{b}]")),
                    }
                } else if a.is_long() && n.is_none() {
                    bad6.push(format!("[x_{a}, x_{b}]"));
                }
            }
        }
        r.check("property 5: equal lengths => [x_a, x_b] = c x_(a+b)", bad5.is_empty(), || bad5.join(", "));
        r.check("property 6: long a, short b => [x_a, x_b] in Z x_(a+b)", bad6.is_empty(), || bad6.join(", "));
        r.note("property 5 constants", consts5.join(" "));

        // integrality and nilpotency of the divided powers
        let mut bad = Vec::new();
        for g in &ch.gens {
            let cube = g.matrix.pow(3);
            if g.root.is_long() && cube != z {
                bad.push(format!("X_{}^3 ≠ 0", g.root));
            }
            if cube.mul(&g.matrix) != z {
                bad.push(format!("X_{}^4 ≠ 0", g.root));
            }
        }
        r.check("nilpotency: X^3 = 0 (long), X^4 = 0 (all)", bad.is_empty(), || bad.join(", "));
    })
}

/// Divided-power exponential evaluated in any ring: Σ_j t^j X^j/j!.
pub fn exp_in<T: Scalar>(g: &AdjointGenerator, t: &T) -> Matrix<T> {
    let mut out = Matrix::zeros(DIM, DIM, t);
    let powers = [t.one_like(), t.clone(), t.mul(t), t.mul(t).mul(t)];
    for (j, d) in g.divided_powers.iter().enumerate() {
        for (r, c, &v) in d.entries() {
            if v != 0 {
                let cur = out.get(r, c).add(&powers[j].mul(&t.int_like(v)));
                out.set(r, c, cur);
            }
        }
    }
    out
}

/// Lifts an integer matrix into the ring of `proto`.
pub fn lift<T: Scalar>(m: &IntMatrix, proto: &T) -> Matrix<T> {
    m.map(|&x| proto.int_like(x))
}

pub fn to_rational(m: &IntMatrix) -> Matrix<BigRational> {
    to_q(m)
}

pub fn is_integral_zero(m: &Matrix<BigRational>) -> bool {
    m.entries().all(|(_, _, v)| Zero::is_zero(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_unipotents_round_trip() {
        let ch = Chevalley::get();
        assert_eq!(ch.gen(Root::simple(1)).unipotent(), explicit::x1());
        assert_eq!(ch.gen(Root::simple(2)).unipotent(), explicit::x2());
    }

    #[test]
    fn coroot_rule_for_a1() {
        let ch = Chevalley::get();
        assert_eq!(ch.constants.coroot[&Root::simple(1)], (1, 0));
        assert_eq!(ch.x(Root::simple(1)).bracket(ch.x(Root::from_index(-1))), *ch.h(1));
    }

    #[test]
    fn structure_constant_from_x2() {
        let ch = Chevalley::get();
        // the conjugation-defined X_{α3} is −ad(v3): the basis reading of x_{α2}(1)
        // (entry −e_{5,1}) gives −1 against v3, the generator bracket gives +1
        assert_eq!(*ch.x(Root::simple(2)).get(4, 0), -1);
        assert_eq!(ch.constants.n[&(Root::simple(2), Root::simple(1))], 1);
        assert_eq!(ch.constants.cartan_action[&(1, Root::simple(1))], 2);
    }

    #[test]
    fn cartan_diagonals() {
        let ch = Chevalley::get();
        assert_eq!(*ch.h(1), Matrix::diag(vec![2, -2, -3, 3, -1, 1, 1, -1, 3, -3, 0, 0, 0, 0]));
        assert_eq!(*ch.h(2), Matrix::diag(vec![-1, 1, 2, -2, 1, -1, 0, 0, -1, 1, 1, -1, 0, 0]));
    }

    #[test]
    fn all_properties_hold() {
        let r = verify_chevalley_properties();
        assert!(r.all_pass(), "{}", r.to_text());
    }
}
