//! The Lie algebra of cyclic coinvariants.
//!
//! `(V^{(x) l})_{Z/l}` has the necklaces of length `l` as a basis in every
//! characteristic, so an element is a finite combination of canonical
//! necklaces. A length-`l` necklace has degree `l - 2`.
//!
//! Lengths 0 and 1 are admitted as well. The derivations `D_x` lower the
//! length by one, so without them `D_x` of a degree-0 element would have
//! nowhere to land. The bracket formula vanishes identically on the length-0
//! part.
//!
//! The bracket of two necklaces `a = a_1 .. a_l` and `b = b_1 .. b_m` is
//!
//! ```text
//! [a, b] = sum_{i, j} <a_i, b_j> class( D_{i,i}(a) D_{j,j}(b) )
//! ```
//!
//! where `D_{i,i}(a) = a_{i+1} .. a_l a_1 .. a_{i-1}` is `a` cut open at `i`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg;
use crate::matalg::Matrix;
use crate::scalar::{FieldSpec, Scalar};
use crate::space::SymplecticSpace;
use crate::tensor::{all_words, same_space, Sign, TensorElem};
use crate::word::{Letter, Word};

/// A word that is the least of its rotations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Necklace(Word);

impl Necklace {
    /// The least rotation of `w`.
    pub fn canonicalize(w: &Word) -> Necklace {
        Necklace(w.least_rotation())
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Which pairing the bracket contracts letters with.
///
/// Only [`Pairing::Form`] is the real bracket. `UpperTriangle` reads the
/// Gram matrix as `G[min(a, b)][max(a, b)]`, which flips the sign of every
/// lower-triangle entry and leaves a symmetric pairing; the verification
/// suites use it to prove they can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Pairing {
    #[default]
    Form,
    UpperTriangle,
}

impl Pairing {
    fn eval(self, space: &SymplecticSpace, a: Letter, b: Letter) -> &Scalar {
        match self {
            Pairing::Form => space.form(a, b),
            Pairing::UpperTriangle => space.form(a.min(b), a.max(b)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Homogeneous(i64),
    /// Mixed lengths, or the zero element.
    Mixed,
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Homogeneous(d) => write!(f, "{d}"),
            Degree::Mixed => write!(f, "mixed"),
        }
    }
}

/// An element of the coinvariant algebra.
#[derive(Clone, Debug)]
pub struct CoinvElem {
    space: Arc<SymplecticSpace>,
    terms: BTreeMap<Necklace, Scalar>,
}

impl PartialEq for CoinvElem {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.terms == other.terms
    }
}

impl Eq for CoinvElem {}

impl CoinvElem {
    pub fn zero(space: Arc<SymplecticSpace>) -> Self {
        CoinvElem {
            space,
            terms: BTreeMap::new(),
        }
    }

    /// The class of a single word.
    pub fn from_word(space: Arc<SymplecticSpace>, w: &Word) -> Self {
        let mut a = CoinvElem::zero(space);
        let one = Scalar::one(a.field());
        a.add_word(w, &one);
        a
    }

    /// The projection `T(V) -> L(V)` sending each word to its class.
    pub fn project(t: &TensorElem) -> Self {
        let mut a = CoinvElem::zero(t.space().clone());
        for (w, c) in t.terms() {
            a.add_word(w, c);
        }
        a
    }

    pub fn space(&self) -> &Arc<SymplecticSpace> {
        &self.space
    }

    pub fn field(&self) -> FieldSpec {
        self.space.field()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Necklace, &Scalar)> {
        self.terms.iter()
    }

    /// Coefficient of the class of `w`.
    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms
            .get(&Necklace::canonicalize(w))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field()))
    }

    /// Adds `c * class(w)`.
    pub fn add_word(&mut self, w: &Word, c: &Scalar) {
        assert!(
            self.space.check_word(w).is_ok(),
            "word uses a letter outside the space"
        );
        self.add_necklace(Necklace::canonicalize(w), c);
    }

    fn add_necklace(&mut self, n: Necklace, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&n) {
            Some(existing) => {
                let sum = &*existing + c;
                if sum.is_zero() {
                    self.terms.remove(&n);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(n, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> CoinvElem {
        let mut out = CoinvElem::zero(self.space.clone());
        for (n, k) in &self.terms {
            out.add_necklace(n.clone(), &(k * c));
        }
        out
    }

    fn combine(&self, other: &CoinvElem, sign: &Scalar) -> CoinvElem {
        assert!(same_space(&self.space, &other.space), "operands live in different spaces");
        let mut out = self.clone();
        for (n, c) in &other.terms {
            out.add_necklace(n.clone(), &(c * sign));
        }
        out
    }

    /// The part made of necklaces of length `l`.
    pub fn component(&self, l: usize) -> CoinvElem {
        CoinvElem {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(n, _)| n.len() == l)
                .map(|(n, c)| (n.clone(), c.clone()))
                .collect(),
        }
    }

    /// `l - 2` when every necklace has length `l`.
    pub fn degree(&self) -> Degree {
        let mut lens = self.terms.keys().map(Necklace::len);
        let Some(first) = lens.next() else {
            return Degree::Mixed;
        };
        if lens.all(|l| l == first) {
            Degree::Homogeneous(first as i64 - 2)
        } else {
            Degree::Mixed
        }
    }

    /// Whether any necklace has length below 2, i.e. outside the
    /// conventionally graded part.
    pub fn has_short_terms(&self) -> bool {
        self.terms.keys().any(|n| n.len() < 2)
    }

    pub fn bracket(&self, other: &CoinvElem) -> CoinvElem {
        self.bracket_with(other, Pairing::Form)
    }

    pub fn bracket_with(&self, other: &CoinvElem, pairing: Pairing) -> CoinvElem {
        assert!(same_space(&self.space, &other.space), "operands live in different spaces");
        let mut out = CoinvElem::zero(self.space.clone());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let coeff = ca * cb;
                accumulate_bracket(&mut out, a.word(), b.word(), &coeff, pairing);
            }
        }
        out
    }

    /// The bracket formula applied to the given representatives, without
    /// canonicalizing the inputs first.
    pub fn bracket_words(space: &Arc<SymplecticSpace>, u: &Word, v: &Word) -> CoinvElem {
        let mut out = CoinvElem::zero(space.clone());
        let one = Scalar::one(space.field());
        accumulate_bracket(&mut out, u, v, &one, Pairing::Form);
        out
    }

    /// The derivation `D_x`: delete one occurrence of `x` at a time and read
    /// the rest cyclically from just after it.
    pub fn derivation(&self, x: Letter) -> CoinvElem {
        let mut out = CoinvElem::zero(self.space.clone());
        for (n, c) in &self.terms {
            accumulate_derivation(&mut out, x, n.word(), c);
        }
        out
    }

    /// `D_x` applied to a specific representative.
    pub fn derivation_word(space: &Arc<SymplecticSpace>, x: Letter, w: &Word) -> CoinvElem {
        let mut out = CoinvElem::zero(space.clone());
        let one = Scalar::one(space.field());
        accumulate_derivation(&mut out, x, w, &one);
        out
    }

    /// The trace `N`: the sum of all `l` rotations of a representative. It
    /// lands in the rotation-invariant tensors. The length-0 part maps to 0
    /// (the sum over rotations is empty).
    pub fn trace(&self) -> TensorElem {
        let mut out = TensorElem::zero(self.space.clone());
        for (n, c) in &self.terms {
            for rot in n.word().rotations() {
                out.add_term(rot, c);
            }
        }
        out
    }

    /// `N` applied to a specific representative.
    pub fn trace_word(space: &Arc<SymplecticSpace>, w: &Word) -> TensorElem {
        let mut out = TensorElem::zero(space.clone());
        let one = Scalar::one(space.field());
        for rot in w.rotations() {
            out.add_term(rot, &one);
        }
        out
    }

    /// `iota` on a representative, then re-canonicalized.
    pub fn iota(&self) -> CoinvElem {
        let mut out = CoinvElem::zero(self.space.clone());
        for (n, c) in &self.terms {
            let c = if n.len() % 2 == 0 { c.clone() } else { -c };
            out.add_word(&n.word().reversed(), &c);
        }
        out
    }

    pub fn is_iota_eigenvector(&self, sign: Sign) -> bool {
        let image = self.iota();
        match sign {
            Sign::Plus => image == *self,
            Sign::Minus => image == -self,
        }
    }

    /// Projection `(a + sign * iota(a)) / 2` onto an eigenspace of `iota`.
    pub fn p_projection(&self, sign: Sign) -> Result<CoinvElem> {
        self.field().require_odd_characteristic()?;
        let half = Scalar::from_i64(self.field(), 2).inv()?;
        let s = Scalar::from_i64(self.field(), sign.value());
        Ok((self + &self.iota().scale(&s)).scale(&half))
    }

    /// `L(phi)`: apply `phi` letter by letter, then take classes.
    pub fn induced_map(&self, phi: &FormMap) -> Result<CoinvElem> {
        if !same_space(&self.space, &phi.source) {
            return Err(Error::SpaceMismatch);
        }
        let mut out = CoinvElem::zero(phi.target.clone());
        for (n, c) in &self.terms {
            for (w, k) in phi.expand_word(n.word()) {
                out.add_word(&w, &(&k * c));
            }
        }
        Ok(out)
    }

    /// The degree-0 identification with `sp(V)`:
    /// `class(u v) -> (w -> <u, w> v + <v, w> u)`, as a matrix acting on
    /// coordinate columns.
    pub fn sp_iso(&self) -> Result<Matrix<Scalar>> {
        if self.terms.keys().any(|n| n.len() != 2) {
            return Err(Error::NotDegreeZero);
        }
        if !self.space.is_nondegenerate() {
            return Err(Error::DegenerateForm);
        }
        let r = self.space.dim();
        let field = self.field();
        let mut m = Matrix::zero(r, field);
        for (n, c) in &self.terms {
            let (u, v) = (n.word().letters()[0], n.word().letters()[1]);
            for k in 0..r as Letter {
                let add_v = self.space.form(u, k) * c;
                let add_u = self.space.form(v, k) * c;
                let (vi, ui, ki) = (v as usize, u as usize, k as usize);
                m.set(vi, ki, m.get(vi, ki) + &add_v);
                m.set(ui, ki, m.get(ui, ki) + &add_u);
            }
        }
        Ok(m)
    }

    /// Canonical JSON: `[{"coeff": .., "necklace": ..}, ..]` sorted by
    /// necklace length, then lexicographically.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(n, c)| {
                    json!({
                        "necklace": self.space.format_word(n.word()),
                        "coeff": c.to_string(),
                    })
                })
                .collect(),
        )
    }
}

fn accumulate_bracket(out: &mut CoinvElem, u: &Word, v: &Word, coeff: &Scalar, pairing: Pairing) {
    let space = out.space.clone();
    for (i, &a) in u.letters().iter().enumerate() {
        let mut cut_u = None;
        for (j, &b) in v.letters().iter().enumerate() {
            let g = pairing.eval(&space, a, b);
            if g.is_zero() {
                continue;
            }
            let left = cut_u.get_or_insert_with(|| u.cut_at(i));
            let w = left.concat(&v.cut_at(j));
            out.add_necklace(Necklace::canonicalize(&w), &(coeff * g));
        }
    }
}

fn accumulate_derivation(out: &mut CoinvElem, x: Letter, w: &Word, coeff: &Scalar) {
    for (i, &a) in w.letters().iter().enumerate() {
        if a == x {
            out.add_necklace(Necklace::canonicalize(&w.cut_at(i)), coeff);
        }
    }
}

impl Add for &CoinvElem {
    type Output = CoinvElem;
    fn add(self, rhs: &CoinvElem) -> CoinvElem {
        self.combine(rhs, &Scalar::one(self.field()))
    }
}

impl Sub for &CoinvElem {
    type Output = CoinvElem;
    fn sub(self, rhs: &CoinvElem) -> CoinvElem {
        self.combine(rhs, &-Scalar::one(self.field()))
    }
}

impl Neg for &CoinvElem {
    type Output = CoinvElem;
    fn neg(self) -> CoinvElem {
        self.scale(&-Scalar::one(self.field()))
    }
}

/// Text form: `2*yy - 1/3*xxyy`, or `0`.
impl fmt::Display for CoinvElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .terms
            .iter()
            .map(|(n, c)| (self.space.format_word(n.word()), c));
        write_terms(f, terms)
    }
}

pub(crate) fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a Scalar)>,
) -> fmt::Result {
    let mut first = true;
    for (w, c) in terms {
        let text = c.to_string();
        let (negative, magnitude) = match text.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, text),
        };
        match (first, negative) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        if magnitude == "1" {
            write!(f, "{w}")?;
        } else {
            write!(f, "{magnitude}*{w}")?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let space = self.space().clone();
        write_terms(f, self.terms().map(|(w, c)| (space.format_word(w), c)))
    }
}

/// Canonical JSON for a tensor: `[{"coeff": .., "word": ..}, ..]`.
pub fn tensor_to_json(t: &TensorElem) -> Value {
    Value::Array(
        t.terms()
            .map(|(w, c)| json!({ "word": t.space().format_word(w), "coeff": c.to_string() }))
            .collect(),
    )
}

/// A linear map `phi: V -> W` preserving the forms,
/// `<phi e_i, phi e_j>_W = <e_i, e_j>_V`.
///
/// `matrix[k][i]` is the `f_k` coordinate of `phi(e_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormMap {
    source: Arc<SymplecticSpace>,
    target: Arc<SymplecticSpace>,
    matrix: Vec<Vec<Scalar>>,
}

impl FormMap {
    pub fn new(
        source: Arc<SymplecticSpace>,
        target: Arc<SymplecticSpace>,
        matrix: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        let (dv, dw) = (source.dim(), target.dim());
        if matrix.len() != dw || matrix.iter().any(|r| r.len() != dv) {
            return Err(Error::Shape(format!("linear map must be {dw}x{dv}")));
        }
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(source.field(), target.field()));
        }
        for row in &matrix {
            for c in row {
                if c.field() != source.field() {
                    return Err(Error::FieldMismatch(source.field(), c.field()));
                }
            }
        }
        let field = source.field();
        for i in 0..dv {
            for j in 0..dv {
                let mut acc = Scalar::zero(field);
                for k in 0..dw {
                    for l in 0..dw {
                        let g = target.form(k as Letter, l as Letter);
                        if !g.is_zero() {
                            acc = &acc + &(&(&matrix[k][i] * &matrix[l][j]) * g);
                        }
                    }
                }
                if &acc != source.form(i as Letter, j as Letter) {
                    return Err(Error::NotFormPreserving { i, j });
                }
            }
        }
        Ok(FormMap {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(space: Arc<SymplecticSpace>) -> Self {
        let field = space.field();
        let r = space.dim();
        let matrix = (0..r)
            .map(|k| {
                (0..r)
                    .map(|i| if i == k { Scalar::one(field) } else { Scalar::zero(field) })
                    .collect()
            })
            .collect();
        FormMap {
            source: space.clone(),
            target: space,
            matrix,
        }
    }

    /// The symplectic transvection `w -> w + c <v, w> v`, which preserves any
    /// alternating form.
    pub fn transvection(space: Arc<SymplecticSpace>, v: &[Scalar], c: &Scalar) -> Result<Self> {
        let r = space.dim();
        if v.len() != r {
            return Err(Error::Shape(format!("vector must have {r} entries")));
        }
        let field = space.field();
        let mut matrix = vec![vec![Scalar::zero(field); r]; r];
        for i in 0..r {
            // <v, e_i>
            let mut pair = Scalar::zero(field);
            for (k, vk) in v.iter().enumerate() {
                pair = &pair + &(vk * space.form(k as Letter, i as Letter));
            }
            for k in 0..r {
                let delta = if k == i { Scalar::one(field) } else { Scalar::zero(field) };
                matrix[k][i] = &delta + &(&(c * &pair) * &v[k]);
            }
        }
        FormMap::new(space.clone(), space, matrix)
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &FormMap) -> Result<FormMap> {
        if !same_space(&first.target, &self.source) {
            return Err(Error::SpaceMismatch);
        }
        let field = self.source.field();
        let (rows, inner, cols) = (self.matrix.len(), first.matrix.len(), first.source.dim());
        let matrix = (0..rows)
            .map(|k| {
                (0..cols)
                    .map(|i| {
                        (0..inner).fold(Scalar::zero(field), |acc, m| {
                            &acc + &(&self.matrix[k][m] * &first.matrix[m][i])
                        })
                    })
                    .collect()
            })
            .collect();
        FormMap::new(first.source.clone(), self.target.clone(), matrix)
    }

    pub fn source(&self) -> &Arc<SymplecticSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SymplecticSpace> {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    /// `phi(a_1) (x) ... (x) phi(a_l)` expanded multilinearly.
    pub fn expand_word(&self, w: &Word) -> Vec<(Word, Scalar)> {
        let field = self.source.field();
        let mut partial = vec![(Vec::<Letter>::new(), Scalar::one(field))];
        for &a in w.letters() {
            let mut next = Vec::new();
            for (prefix, c) in &partial {
                for (k, row) in self.matrix.iter().enumerate() {
                    let m = &row[a as usize];
                    if m.is_zero() {
                        continue;
                    }
                    let mut letters = prefix.clone();
                    letters.push(k as Letter);
                    next.push((letters, c * m));
                }
            }
            partial = next;
        }
        partial
            .into_iter()
            .map(|(letters, c)| (Word::new(letters), c))
            .collect()
    }
}

/// Number of necklaces of length `l` over `dim` letters, by enumeration.
pub fn graded_dimension(dim: usize, l: usize) -> usize {
    all_words(dim, l)
        .into_iter()
        .filter(|w| w.least_rotation() == *w)
        .count()
}

/// The necklace basis of `(V^{(x) l})_{Z/l}`, in canonical order.
pub fn necklace_basis(dim: usize, l: usize) -> Vec<Necklace> {
    all_words(dim, l)
        .into_iter()
        .filter(|w| w.least_rotation() == *w)
        .map(Necklace)
        .collect()
}

/// `(1/l) sum_{d | l} phi(d) dim^{l/d}`, the necklace count by Burnside.
pub fn burnside_count(dim: usize, l: usize) -> u128 {
    if l == 0 {
        return 1;
    }
    let totient = |mut n: usize| {
        let mut result = n;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                while n.is_multiple_of(p) {
                    n /= p;
                }
                result -= result / p;
            }
            p += 1;
        }
        if n > 1 {
            result -= result / n;
        }
        result
    };
    let mut sum: u128 = 0;
    for d in (1..=l).filter(|&d| l.is_multiple_of(d)) {
        sum += totient(d) as u128 * (dim as u128).pow((l / d) as u32);
    }
    sum / l as u128
}

/// `dim V^{(x) l} - rank span{ w - sigma(w) }` over `field`, computed by
/// exact elimination on the quotient presentation.
pub fn quotient_dimension(field: FieldSpec, dim: usize, l: usize) -> usize {
    let words = all_words(dim, l);
    let index = |w: &Word| {
        w.letters()
            .iter()
            .fold(0usize, |acc, &a| acc * dim + a as usize)
    };
    let one = Scalar::one(field);
    let rows = words.iter().map(|w| {
        let mut row = linalg::SparseRow::new();
        let (i, j) = (index(w), index(&w.rotate(1)));
        if i != j {
            row.insert(i, one.clone());
            row.insert(j, -&one);
        }
        row
    });
    words.len() - linalg::sparse_rank(rows)
}
