//! Elements of the adjoint Chevalley group G(R) as 14×14 matrices over a
//! [`RingValue`] ring: x_α(t), w_α(t), h_α(t), words, and JSON interchange.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::chevalley::{exp_in, lift, Chevalley, IntMatrix, DIM};
use crate::matrix::Matrix;
use crate::ring::{RingDescriptor, RingError, RingValue, Scalar};
use crate::rootsys::{Root, RootError};

pub type RMatrix = Matrix<RingValue>;

#[derive(Debug, Clone, Error)]
pub enum GroupError {
    #[error("atom {atom}: parameter {value} is not a unit")]
    NotUnit { atom: usize, value: String },
    #[error("parameter `{0}` is not bound (use --param {0}=<value>)")]
    UnboundParam(String),
    #[error("cannot parse word: {0}")]
    Parse(String),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("matrix is not invertible over {0}")]
    NotInvertible(RingDescriptor),
    #[error("bad matrix document: {0}")]
    Document(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomKind {
    X,
    W,
    H,
}

impl AtomKind {
    fn letter(self) -> char {
        match self {
            AtomKind::X => 'x',
            AtomKind::W => 'w',
            AtomKind::H => 'h',
        }
    }
}

/// A generator with its evaluated parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub kind: AtomKind,
    pub root: Root,
    pub param: RingValue,
}

impl Atom {
    /// x(α,t)⁻¹ = x(α,−t), w(α,t)⁻¹ = w(α,−t), h(α,t)⁻¹ = h(α,t⁻¹).
    pub fn inverse(&self) -> Result<Atom, RingError> {
        let param = match self.kind {
            AtomKind::X | AtomKind::W => self.param.negate(),
            AtomKind::H => self.param.inv()?,
        };
        Ok(Atom { param, ..self.clone() })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.kind.letter(), self.root, self.param)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub matrix: RMatrix,
    pub word: Option<Vec<Atom>>,
}

impl GroupElement {
    pub fn identity(desc: RingDescriptor) -> Self {
        GroupElement { matrix: Matrix::identity(DIM, &RingValue::one(desc)), word: Some(Vec::new()) }
    }

    /// Wraps a matrix after checking invertibility.
    pub fn from_matrix(m: RMatrix) -> Result<Self, GroupError> {
        let desc = m.proto().descriptor();
        m.inverse().ok_or(GroupError::NotInvertible(desc))?;
        Ok(GroupElement { matrix: m, word: None })
    }

    pub fn from_int(m: &IntMatrix, desc: RingDescriptor) -> Self {
        GroupElement { matrix: lift(m, &RingValue::one(desc)), word: None }
    }

    pub fn descriptor(&self) -> RingDescriptor {
        self.matrix.proto().descriptor()
    }

    pub fn multiply(&self, o: &GroupElement) -> Result<GroupElement, GroupError> {
        if self.descriptor() != o.descriptor() {
            return Err(RingError::DescriptorMismatch(self.descriptor(), o.descriptor()).into());
        }
        let word = match (&self.word, &o.word) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        Ok(GroupElement { matrix: self.matrix.mul(&o.matrix), word })
    }

    pub fn inverse(&self) -> Result<GroupElement, GroupError> {
        let matrix = self.matrix.inverse().ok_or(GroupError::NotInvertible(self.descriptor()))?;
        let word = match &self.word {
            Some(w) => Some(w.iter().rev().map(Atom::inverse).collect::<Result<Vec<_>, _>>()?),
            None => None,
        };
        Ok(GroupElement { matrix, word })
    }

    /// h g h⁻¹
    pub fn conjugate(&self, h: &GroupElement) -> Result<GroupElement, GroupError> {
        h.multiply(self)?.multiply(&h.inverse()?)
    }

    /// g h g⁻¹ h⁻¹
    pub fn commutator(&self, h: &GroupElement) -> Result<GroupElement, GroupError> {
        self.multiply(h)?.multiply(&self.inverse()?)?.multiply(&h.inverse()?)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// Re-evaluates the annotation; true when absent.
    pub fn word_consistent(&self) -> bool {
        match &self.word {
            None => true,
            Some(atoms) => eval_atoms(atoms, self.descriptor()).is_ok_and(|g| g.matrix == self.matrix),
        }
    }
}

fn atom_matrix(a: &Atom) -> Result<RMatrix, GroupError> {
    Ok(match a.kind {
        AtomKind::X => root_matrix(a.root, &a.param),
        AtomKind::W => weyl_matrix(a.root, &a.param).ok_or_else(|| not_unit(0, &a.param))?,
        AtomKind::H => torus_matrix(a.root, &a.param).ok_or_else(|| not_unit(0, &a.param))?,
    })
}

fn not_unit(atom: usize, v: &RingValue) -> GroupError {
    GroupError::NotUnit { atom, value: v.to_string() }
}

fn eval_atoms(atoms: &[Atom], desc: RingDescriptor) -> Result<GroupElement, GroupError> {
    let mut m = Matrix::identity(DIM, &RingValue::one(desc));
    for (i, a) in atoms.iter().enumerate() {
        if a.param.descriptor() != desc {
            return Err(RingError::DescriptorMismatch(a.param.descriptor(), desc).into());
        }
        let am = atom_matrix(a).map_err(|e| match e {
            GroupError::NotUnit { value, .. } => GroupError::NotUnit { atom: i + 1, value },
            other => other,
        })?;
        m = m.mul(&am);
    }
    Ok(GroupElement { matrix: m, word: Some(atoms.to_vec()) })
}

/// x_α(t) = Σ_j t^j X_α^j / j!
pub fn root_matrix<T: Scalar>(a: Root, t: &T) -> Matrix<T> {
    exp_in(Chevalley::get().gen(a), t)
}

/// w_α(t) = x_α(t) x_{−α}(−t⁻¹) x_α(t); `None` when t is not a unit.
pub fn weyl_matrix<T: Scalar>(a: Root, t: &T) -> Option<Matrix<T>> {
    let tinv = t.try_inverse()?;
    let x = root_matrix(a, t);
    Some(x.mul(&root_matrix(a.neg(), &tinv.neg())).mul(&x))
}

/// h_α(t) = w_α(t) w_α(1)⁻¹, using w_α(1)⁻¹ = w_α(−1).
pub fn torus_matrix<T: Scalar>(a: Root, t: &T) -> Option<Matrix<T>> {
    let w = weyl_matrix(a, t)?;
    let minus_one = t.int_like(-1);
    Some(w.mul(&weyl_matrix(a, &minus_one)?))
}

pub fn root_element(a: Root, t: &RingValue) -> GroupElement {
    GroupElement { matrix: root_matrix(a, t), word: Some(vec![Atom { kind: AtomKind::X, root: a, param: t.clone() }]) }
}

pub fn weyl_element(a: Root, t: &RingValue) -> Result<GroupElement, GroupError> {
    Ok(GroupElement {
        matrix: weyl_matrix(a, t).ok_or_else(|| not_unit(1, t))?,
        word: Some(vec![Atom { kind: AtomKind::W, root: a, param: t.clone() }]),
    })
}

pub fn torus_element(a: Root, t: &RingValue) -> Result<GroupElement, GroupError> {
    Ok(GroupElement {
        matrix: torus_matrix(a, t).ok_or_else(|| not_unit(1, t))?,
        word: Some(vec![Atom { kind: AtomKind::H, root: a, param: t.clone() }]),
    })
}

/// Fundamental-coweight torus element t_i(s): acts on v_β by s^{n_i(β)}
/// where β = n1 α1 + n2 α2, trivially on the Cartan part.
/// In terms of h's: t1(s) = h_{α1}(s)² h_{α2}(s)³, t2(s) = h_{α1}(s) h_{α2}(s)².
pub fn coweight_torus<T: Scalar>(i: usize, s: &T) -> Option<Matrix<T>> {
    let sinv = s.try_inverse()?;
    let mut m = Matrix::identity(DIM, s);
    for r in crate::rootsys::all_roots() {
        let e = if i == 1 { r.n1 } else { r.n2 };
        let base = if e >= 0 { s } else { &sinv };
        let mut v = s.one_like();
        for _ in 0..e.abs() {
            v = v.mul(base);
        }
        m.set(r.position(), r.position(), v);
    }
    Some(m)
}

/// Parameter of a word atom before binding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamExpr {
    Literal(String),
    Name { name: String, negate: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordAtom {
    pub kind: AtomKind,
    pub root: Root,
    pub param: ParamExpr,
    pub inverse: bool,
}

/// Parsed word such as `x(a1,1) w(a2,1) h(a1,-1) x(-a3,t)^-1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupWord {
    pub atoms: Vec<WordAtom>,
}

impl FromStr for GroupWord {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, GroupError> {
        let mut atoms = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == '*' || c == '·');
            if rest.is_empty() {
                break;
            }
            let kind = match rest.chars().next().unwrap() {
                'x' => AtomKind::X,
                'w' => AtomKind::W,
                'h' => AtomKind::H,
                c => return Err(GroupError::Parse(format!("unexpected `{c}` (atoms are x(..), w(..), h(..))"))),
            };
            let open = rest[1..].trim_start();
            let body_start = open.strip_prefix('(').ok_or_else(|| GroupError::Parse(format!("expected `(` after `{}`", kind.letter())))?;
            let close = body_start.find(')').ok_or_else(|| GroupError::Parse("missing `)`".into()))?;
            let body = &body_start[..close];
            let (root, param) = body.split_once(',').ok_or_else(|| GroupError::Parse(format!("expected (root,param) in `{body}`")))?;
            let root: Root = root.trim().parse()?;
            let param = param.trim();
            if param.is_empty() {
                return Err(GroupError::Parse("empty parameter".into()));
            }
            let param = if param.starts_with(|c: char| c.is_ascii_digit())
                || param.starts_with("-") && param[1..].starts_with(|c: char| c.is_ascii_digit())
            {
                ParamExpr::Literal(param.to_string())
            } else {
                let (negate, name) = match param.strip_prefix('-') {
                    Some(n) => (true, n.trim()),
                    None => (false, param),
                };
                if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(GroupError::Parse(format!("bad parameter `{param}`")));
                }
                ParamExpr::Name { name: name.to_string(), negate }
            };
            rest = &body_start[close + 1..];
            let mut inverse = false;
            if let Some(r) = rest.strip_prefix("^-1") {
                inverse = true;
                rest = r;
            }
            atoms.push(WordAtom { kind, root, param, inverse });
        }
        Ok(GroupWord { atoms })
    }
}

impl GroupWord {
    /// Binds parameters in `desc` and returns the concrete atom list.
    pub fn bind(&self, desc: RingDescriptor, params: &BTreeMap<String, RingValue>) -> Result<Vec<Atom>, GroupError> {
        let mut out = Vec::with_capacity(self.atoms.len());
        for (i, wa) in self.atoms.iter().enumerate() {
            let param = match &wa.param {
                ParamExpr::Literal(s) => RingValue::parse(desc, s)?,
                ParamExpr::Name { name, negate } => {
                    let v = params.get(name).ok_or_else(|| GroupError::UnboundParam(name.clone()))?;
                    if v.descriptor() != desc {
                        return Err(RingError::DescriptorMismatch(v.descriptor(), desc).into());
                    }
                    if *negate {
                        v.negate()
                    } else {
                        v.clone()
                    }
                }
            };
            let atom = Atom { kind: wa.kind, root: wa.root, param };
            if atom.kind != AtomKind::X && !atom.param.is_unit() {
                return Err(not_unit(i + 1, &atom.param));
            }
            out.push(if wa.inverse { atom.inverse()? } else { atom });
        }
        Ok(out)
    }
}

/// Left-to-right product of the word's atoms.
pub fn evaluate_word(word: &GroupWord, desc: RingDescriptor, params: &BTreeMap<String, RingValue>) -> Result<GroupElement, GroupError> {
    eval_atoms(&word.bind(desc, params)?, desc)
}

/// `{ "ring": "...", "entries": [[...], ...] }`
pub fn matrix_to_json(m: &RMatrix) -> Value {
    let entries: Vec<Value> = (0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(RingValue::to_json).collect())).collect();
    json!({ "ring": m.proto().descriptor().to_string(), "entries": entries })
}

pub fn matrix_from_json(v: &Value) -> Result<RMatrix, GroupError> {
    let ring = v.get("ring").and_then(Value::as_str).ok_or_else(|| GroupError::Document("missing \"ring\"".into()))?;
    let desc = RingDescriptor::parse(ring)?;
    let rows = v.get("entries").and_then(Value::as_array).ok_or_else(|| GroupError::Document("missing \"entries\"".into()))?;
    if rows.len() != DIM {
        return Err(GroupError::Document(format!("expected {DIM} rows, found {}", rows.len())));
    }
    let mut out = Vec::with_capacity(DIM);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| GroupError::Document(format!("row {} is not an array", i + 1)))?;
        if row.len() != DIM {
            return Err(GroupError::Document(format!("row {} has {} entries", i + 1, row.len())));
        }
        out.push(row.iter().map(|x| RingValue::from_json(desc, x)).collect::<Result<Vec<_>, _>>()?);
    }
    Ok(Matrix::from_rows(out))
}

/// Product of `len` random root elements x_α(t) and one random h_α(u).
pub fn random_element<R: Rng + ?Sized>(desc: RingDescriptor, len: usize, rng: &mut R) -> GroupElement {
    let roots = crate::rootsys::all_roots();
    let a = *roots.choose(rng).unwrap();
    let mut m = torus_matrix(a, &RingValue::random_unit(desc, rng)).expect("random_unit is a unit");
    for _ in 0..len {
        let b = *roots.choose(rng).unwrap();
        m = m.mul(&root_matrix(b, &RingValue::random(desc, rng)));
    }
    GroupElement { matrix: m, word: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::explicit;

    fn q() -> RingDescriptor {
        RingDescriptor::Rationals
    }

    fn one() -> RingValue {
        RingValue::one(q())
    }

    #[test]
    fn explicit_unipotents() {
        let a1 = Root::simple(1);
        assert_eq!(root_element(a1, &one()).matrix, lift(&explicit::x1(), &one()));
        assert_eq!(root_element(Root::simple(2), &one()).matrix, lift(&explicit::x2(), &one()));
        assert!(root_element(a1, &RingValue::zero(q())).is_identity());
    }

    #[test]
    fn weyl_and_torus_simple() {
        let a2 = Root::simple(2);
        assert_eq!(weyl_element(a2, &one()).unwrap().matrix, lift(&explicit::w2(), &one()));
        let m1 = RingValue::from_i64(q(), -1);
        let a1 = Root::simple(1);
        assert_eq!(torus_element(a1, &m1).unwrap().matrix, lift(&explicit::h1_minus_one(), &one()));
        assert_eq!(torus_element(a2, &m1).unwrap().matrix, lift(&explicit::h2_minus_one(), &one()));
        let w = weyl_element(a1, &one()).unwrap();
        assert_eq!(w.multiply(&w).unwrap().matrix, lift(&explicit::h1_minus_one(), &one()));
        assert!(torus_element(a1, &one()).unwrap().is_identity());
        assert!(weyl_element(a1, &RingValue::zero(q())).is_err());
    }

    #[test]
    fn word_parsing_and_inverse() {
        let w: GroupWord = "x(a1,1) w(a2,1)  h(a1,-1)*x(-a3,t)^-1".parse().unwrap();
        assert_eq!(w.atoms.len(), 4);
        assert!(w.atoms[3].inverse);
        let mut params = BTreeMap::new();
        params.insert("t".to_string(), RingValue::parse(q(), "2/3").unwrap());
        let g = evaluate_word(&w, q(), &params).unwrap();
        assert!(g.word_consistent());
        let prod = g.multiply(&g.inverse().unwrap()).unwrap();
        assert!(prod.is_identity());
        assert!(evaluate_word(&"h(a1,0)".parse().unwrap(), q(), &params).is_err());
        assert!(matches!(evaluate_word(&"x(a1,s)".parse().unwrap(), q(), &params), Err(GroupError::UnboundParam(_))));
        assert!("y(a1,1)".parse::<GroupWord>().is_err());
    }

    #[test]
    fn conjugation_example() {
        let w2 = weyl_element(Root::simple(2), &one()).unwrap();
        let c = root_element(Root::simple(1), &one()).conjugate(&w2).unwrap();
        let a3 = Root::from_index(3);
        let plus = root_element(a3, &one()).matrix;
        let minus = root_element(a3, &one().negate()).matrix;
        assert!(c.matrix == plus || c.matrix == minus);
    }

    #[test]
    fn coweight_torus_matches_h_products() {
        let s = RingValue::parse(q(), "2/5").unwrap();
        let (a1, a2) = (Root::simple(1), Root::simple(2));
        let h1 = torus_matrix(a1, &s).unwrap();
        let h2 = torus_matrix(a2, &s).unwrap();
        assert_eq!(coweight_torus(1, &s).unwrap(), h1.mul(&h1).mul(&h2).mul(&h2).mul(&h2));
        assert_eq!(coweight_torus(2, &s).unwrap(), h1.mul(&h2).mul(&h2));
    }

    #[test]
    fn json_roundtrip() {
        let d = RingDescriptor::zmod(5, 2).unwrap();
        let g = root_element(Root::from_index(-4), &RingValue::from_i64(d, 7));
        let back = matrix_from_json(&matrix_to_json(&g.matrix)).unwrap();
        assert_eq!(back, g.matrix);
    }
}
