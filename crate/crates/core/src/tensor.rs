//! Elements of the tensor algebra `T(V)`, read as noncommutative polynomials
//! in the basis letters.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matalg::Matrix;
use crate::scalar::{FieldSpec, Jet, Ring, Scalar};
use crate::space::SymplecticSpace;
use crate::word::{Letter, SegmentConvention, Word};

/// Eigenvalue selector for the involution `iota`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn opposite(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `(-1)^l`.
    pub fn of_parity(l: usize) -> Sign {
        if l.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// A finite combination of words with nonzero coefficients.
#[derive(Clone, Debug)]
pub struct TensorElem {
    space: Arc<SymplecticSpace>,
    terms: BTreeMap<Word, Scalar>,
}

impl PartialEq for TensorElem {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.terms == other.terms
    }
}

impl Eq for TensorElem {}

pub(crate) fn same_space(a: &Arc<SymplecticSpace>, b: &Arc<SymplecticSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl TensorElem {
    pub fn zero(space: Arc<SymplecticSpace>) -> Self {
        TensorElem {
            space,
            terms: BTreeMap::new(),
        }
    }

    /// `c * w`. Panics if `w` uses a letter outside the space.
    pub fn monomial(space: Arc<SymplecticSpace>, w: Word, c: Scalar) -> Self {
        let mut t = TensorElem::zero(space);
        t.add_term(w, &c);
        t
    }

    pub fn from_word(space: Arc<SymplecticSpace>, w: Word) -> Self {
        let one = Scalar::one(space.field());
        TensorElem::monomial(space, w, one)
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field()))
    }

    /// Adds `c * w`, dropping the entry if it cancels.
    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        assert!(
            self.space.check_word(&w).is_ok(),
            "word uses a letter outside the space"
        );
        add_into(&mut self.terms, w, c);
    }

    pub fn scale(&self, c: &Scalar) -> TensorElem {
        self.map_terms(|w, k| Some((w.clone(), k * c)))
    }

    fn map_terms(&self, f: impl Fn(&Word, &Scalar) -> Option<(Word, Scalar)>) -> TensorElem {
        let mut out = TensorElem::zero(self.space.clone());
        for (w, c) in &self.terms {
            if let Some((w2, c2)) = f(w, c) {
                add_into(&mut out.terms, w2, &c2);
            }
        }
        out
    }

    fn combine(&self, other: &TensorElem, sign: &Scalar) -> TensorElem {
        assert!(same_space(&self.space, &other.space), "tensor operands live in different spaces");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_into(&mut out.terms, w.clone(), &(c * sign));
        }
        out
    }

    /// The length shared by all words, or `None` when mixed or zero.
    pub fn homogeneous_len(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(Word::len);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    /// Whether every word has length `l` (true for zero).
    pub fn is_homogeneous_of(&self, l: usize) -> bool {
        self.terms.keys().all(|w| w.len() == l)
    }

    /// The concatenation (tensor) product.
    pub fn concat(&self, other: &TensorElem) -> TensorElem {
        assert!(same_space(&self.space, &other.space), "tensor operands live in different spaces");
        let mut out = TensorElem::zero(self.space.clone());
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                add_into(&mut out.terms, u.concat(v), &(a * b));
            }
        }
        out
    }

    /// `sigma^r` applied to every word.
    pub fn rotate(&self, r: i64) -> TensorElem {
        self.map_terms(|w, c| Some((w.rotate(r), c.clone())))
    }

    /// `iota(a_1 ... a_l) = (-1)^l a_l ... a_1`, extended linearly.
    pub fn iota(&self) -> TensorElem {
        self.map_terms(|w, c| {
            let c = if w.len() % 2 == 0 { c.clone() } else { -c };
            Some((w.reversed(), c))
        })
    }

    /// `I(a_1 ... a_l) = a_l ... a_1`, extended linearly.
    pub fn unsigned_reverse(&self) -> TensorElem {
        self.map_terms(|w, c| Some((w.reversed(), c.clone())))
    }

    /// Whether `iota(self) = sign * self`.
    pub fn is_iota_eigenvector(&self, sign: Sign) -> bool {
        let target = match sign {
            Sign::Plus => self.clone(),
            Sign::Minus => -self,
        };
        self.iota() == target
    }

    /// Writes a homogeneous `t` of length `l >= 1` as `sum_i e_i (x) p_i` and
    /// returns `p_1 .. p_r`.
    pub fn first_letter_decompose(&self, l: usize) -> Result<Vec<TensorElem>> {
        if l == 0 || !self.is_homogeneous_of(l) {
            return Err(Error::NotHomogeneous(l));
        }
        let mut parts = vec![TensorElem::zero(self.space.clone()); self.space.dim()];
        for (w, c) in &self.terms {
            let (&first, rest) = w.letters().split_first().expect("l >= 1");
            add_into(&mut parts[first as usize].terms, Word::new(rest.to_vec()), c);
        }
        Ok(parts)
    }

    /// `sum_i e_i (x) p_i`, the inverse of [`TensorElem::first_letter_decompose`].
    pub fn reassemble(space: &Arc<SymplecticSpace>, parts: &[TensorElem]) -> TensorElem {
        let mut out = TensorElem::zero(space.clone());
        for (i, p) in parts.iter().enumerate() {
            let head = Word::new(vec![i as Letter]);
            for (w, c) in &p.terms {
                add_into(&mut out.terms, head.concat(w), c);
            }
        }
        out
    }

    /// Evaluates the noncommutative polynomial with `e_i -> assignment[i]`.
    /// The empty word evaluates to the identity.
    pub fn nc_eval<R: Ring>(&self, assignment: &[Matrix<R>]) -> Result<Matrix<R>> {
        let (n, ctx) = check_assignment(&self.space, assignment)?;
        let mut acc = Matrix::zero(n, ctx.clone());
        for (w, c) in &self.terms {
            let term = eval_word_unchecked(w, assignment, n, &ctx)?;
            acc = acc.add(&term.scale(c))?;
        }
        Ok(acc)
    }
}

fn add_into(terms: &mut BTreeMap<Word, Scalar>, w: Word, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&w) {
        Some(existing) => {
            let sum = &*existing + c;
            if sum.is_zero() {
                terms.remove(&w);
            } else {
                *existing = sum;
            }
        }
        None => {
            terms.insert(w, c.clone());
        }
    }
}

impl Add for &TensorElem {
    type Output = TensorElem;
    fn add(self, rhs: &TensorElem) -> TensorElem {
        self.combine(rhs, &Scalar::one(self.field()))
    }
}

impl Sub for &TensorElem {
    type Output = TensorElem;
    fn sub(self, rhs: &TensorElem) -> TensorElem {
        self.combine(rhs, &-Scalar::one(self.field()))
    }
}

impl Neg for &TensorElem {
    type Output = TensorElem;
    fn neg(self) -> TensorElem {
        self.scale(&-Scalar::one(self.field()))
    }
}

fn check_assignment<R: Ring>(
    space: &SymplecticSpace,
    assignment: &[Matrix<R>],
) -> Result<(usize, R::Ctx)> {
    if assignment.len() != space.dim() {
        return Err(Error::Shape(format!(
            "need {} matrices, got {}",
            space.dim(),
            assignment.len()
        )));
    }
    let first = &assignment[0];
    for m in assignment {
        first.check_compatible(m)?;
    }
    if first.field() != space.field() {
        return Err(Error::FieldMismatch(space.field(), first.field()));
    }
    Ok((first.n(), first.ctx().clone()))
}

fn eval_word_unchecked<R: Ring>(
    w: &Word,
    assignment: &[Matrix<R>],
    n: usize,
    ctx: &R::Ctx,
) -> Result<Matrix<R>> {
    let mut letters = w.letters().iter();
    let Some(&first) = letters.next() else {
        return Ok(Matrix::identity(n, ctx.clone()));
    };
    let mut acc = assignment[first as usize].clone();
    for &a in letters {
        acc = acc.mul(&assignment[a as usize])?;
    }
    Ok(acc)
}

/// Evaluates a single word as an ordered matrix product.
pub fn eval_word<R: Ring>(
    space: &SymplecticSpace,
    w: &Word,
    assignment: &[Matrix<R>],
) -> Result<Matrix<R>> {
    let (n, ctx) = check_assignment(space, assignment)?;
    space.check_word(w)?;
    eval_word_unchecked(w, assignment, n, &ctx)
}

/// The first-order expansion of a monomial `g` of length `n`:
///
/// `g(B + eps U) = g(B) + eps * sum_k D_{n,k}(g)(B) U_{g_k} D_{k,1}(g)(B)`
///
/// computed term by term, as a jet matrix of order 2.
pub fn expand_first_order(
    space: &SymplecticSpace,
    w: &Word,
    base: &[Matrix<Scalar>],
    direction: &[Matrix<Scalar>],
) -> Result<Matrix<Jet>> {
    expand_first_order_with(space, w, base, direction, SegmentConvention::EmptyWord)
}

pub fn expand_first_order_with(
    space: &SymplecticSpace,
    w: &Word,
    base: &[Matrix<Scalar>],
    direction: &[Matrix<Scalar>],
    convention: SegmentConvention,
) -> Result<Matrix<Jet>> {
    let (n, field) = check_assignment(space, base)?;
    let (n2, _) = check_assignment(space, direction)?;
    if n != n2 || base[0].field() != direction[0].field() {
        return Err(Error::Shape("base and direction differ in size or field".into()));
    }
    space.check_word(w)?;
    let value = eval_word_unchecked(w, base, n, &field)?;
    let mut first_order = Matrix::zero(n, field);
    let len = w.len();
    for k in 1..=len {
        let prefix = w.segment_with(len, k, convention)?;
        let suffix = w.segment_with(k, 1, convention)?;
        let (Some(prefix), Some(suffix)) = (prefix, suffix) else {
            continue;
        };
        let letter = w.letters()[k - 1] as usize;
        let term = eval_word_unchecked(&prefix, base, n, &field)?
            .mul(&direction[letter])?
            .mul(&eval_word_unchecked(&suffix, base, n, &field)?)?;
        first_order = first_order.add(&term)?;
    }
    Matrix::<Jet>::from_coefficients(&[value, first_order])
}

/// All words of length `l` over `dim` letters, in lexicographic order.
pub fn all_words(dim: usize, l: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..l {
        out = out
            .iter()
            .flat_map(|w| (0..dim).map(move |a| w.concat(&Word::new(vec![a as Letter]))))
            .collect();
    }
    out
}

pub(crate) fn word_index(w: &Word, dim: usize) -> usize {
    w.letters()
        .iter()
        .fold(0, |acc, &a| acc * dim + a as usize)
}

/// A basis of the `sign`-eigenspace of `iota` on `V^{(x) l}`.
///
/// Words are paired with their reversals: a non-palindromic pair `{w, rev w}`
/// contributes `w + sign * iota(w)`, a palindrome contributes itself when
/// `(-1)^l` equals `sign`. Needs `2` to be invertible.
pub fn iota_eigenbasis(space: &Arc<SymplecticSpace>, l: usize, sign: Sign) -> Result<Vec<TensorElem>> {
    space.field().require_odd_characteristic()?;
    let s = Scalar::from_i64(space.field(), sign.value());
    let mut basis = Vec::new();
    for w in all_words(space.dim(), l) {
        let rev = w.reversed();
        if w.is_palindrome() {
            if Sign::of_parity(l) == sign {
                basis.push(TensorElem::from_word(space.clone(), w));
            }
        } else if w < rev {
            let t = TensorElem::from_word(space.clone(), w);
            basis.push(&t + &t.iota().scale(&s));
        }
    }
    Ok(basis)
}

/// A basis of the `sigma`-invariant subspace `(V^{(x) l})^{Z/l}`, computed
/// as the kernel of `sigma - id` by exact elimination.
pub fn cyclic_invariant_basis(space: &Arc<SymplecticSpace>, l: usize) -> Vec<TensorElem> {
    let field = space.field();
    let words = all_words(space.dim(), l);
    let size = words.len();
    let mut rows = vec![vec![Scalar::zero(field); size]; size];
    for (col, w) in words.iter().enumerate() {
        let target = word_index(&w.rotate(1), space.dim());
        rows[target][col] = &rows[target][col] + &Scalar::one(field);
        rows[col][col] = &rows[col][col] - &Scalar::one(field);
    }
    linalg::kernel(&rows, size, field)
        .into_iter()
        .map(|v| {
            let mut t = TensorElem::zero(space.clone());
            for (w, c) in words.iter().zip(v) {
                t.add_term(w.clone(), &c);
            }
            t
        })
        .collect()
}

/// Coordinates of homogeneous elements of length `l` in the word basis.
pub fn coordinates(elems: &[TensorElem], dim: usize, l: usize) -> Vec<Vec<Scalar>> {
    let size = dim.pow(l as u32);
    elems
        .iter()
        .map(|t| {
            let mut row = vec![Scalar::zero(t.field()); size];
            for (w, c) in t.terms() {
                row[word_index(w, dim)] = c.clone();
            }
            row
        })
        .collect()
}
