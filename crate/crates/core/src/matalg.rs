//! Square matrices over a [`Ring`] and the classical algebras `gl_n`, `so_n`,
//! `sp_n`.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg;
use crate::sample;
use crate::scalar::{FieldSpec, Jet, JetCtx, Ring, Scalar};

/// An `n x n` matrix with entries in `R`, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R: Ring> {
    n: usize,
    ctx: R::Ctx,
    entries: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zero(n: usize, ctx: R::Ctx) -> Self {
        Matrix {
            n,
            entries: vec![R::zero(&ctx); n * n],
            ctx,
        }
    }

    pub fn identity(n: usize, ctx: R::Ctx) -> Self {
        let mut m = Matrix::zero(n, ctx);
        for i in 0..n {
            m.entries[i * n + i] = R::one(&m.ctx);
        }
        m
    }

    pub fn from_fn(n: usize, ctx: R::Ctx, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let e = f(i, j);
                assert!(e.ctx() == ctx, "entry ring differs from matrix ring");
                entries.push(e);
            }
        }
        Matrix { n, ctx, entries }
    }

    /// Builds a matrix from rows; rejects empty, ragged or mixed-ring input.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Shape("matrix must have at least one row".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Shape(format!(
                "expected {n} entries per row, found {}",
                bad.len()
            )));
        }
        let ctx = rows[0][0].ctx();
        if rows.iter().flatten().any(|e| e.ctx() != ctx) {
            return Err(Error::RingMismatch);
        }
        Ok(Matrix {
            n,
            ctx,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &R::Ctx {
        &self.ctx
    }

    pub fn field(&self) -> FieldSpec {
        R::field_of(&self.ctx)
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        assert!(value.ctx() == self.ctx, "entry ring differs from matrix ring");
        self.entries[i * self.n + j] = value;
    }

    pub fn rows(&self) -> Vec<Vec<R>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(R::is_zero)
    }

    /// Same size and same ring.
    pub fn check_compatible(&self, other: &Matrix<R>) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Shape(format!("{}x{} vs {}x{}", self.n, self.n, other.n, other.n)));
        }
        if self.ctx != other.ctx {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    fn zip_with(&self, other: &Matrix<R>, f: impl Fn(&R, &R) -> R) -> Result<Matrix<R>> {
        self.check_compatible(other)?;
        Ok(Matrix {
            n: self.n,
            ctx: self.ctx.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Matrix<R>) -> Result<Matrix<R>> {
        self.zip_with(other, R::add)
    }

    pub fn sub(&self, other: &Matrix<R>) -> Result<Matrix<R>> {
        self.zip_with(other, R::sub)
    }

    pub fn mul(&self, other: &Matrix<R>) -> Result<Matrix<R>> {
        self.check_compatible(other)?;
        let n = self.n;
        let mut out: Matrix<R> = Matrix::zero(n, self.ctx.clone());
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * n + j;
                        out.entries[idx] = out.entries[idx].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Matrix<R>) -> Result<Matrix<R>> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn neg(&self) -> Matrix<R> {
        self.map(R::neg)
    }

    pub fn transpose(&self) -> Matrix<R> {
        Matrix::from_fn(self.n, self.ctx.clone(), |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix<R> {
        self.map(|e| e.scale(s))
    }

    pub fn map(&self, f: impl Fn(&R) -> R) -> Matrix<R> {
        Matrix {
            n: self.n,
            ctx: self.ctx.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl Matrix<Scalar> {
    /// The matrix viewed as a constant jet matrix of the given order.
    pub fn lift(&self, order: usize) -> Matrix<Jet> {
        Matrix {
            n: self.n,
            ctx: JetCtx {
                field: self.ctx,
                order,
            },
            entries: self
                .entries
                .iter()
                .map(|e| Jet::constant(e.clone(), order))
                .collect(),
        }
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_i64(field, x)).collect())
                .collect(),
        )
    }

    pub fn inverse(&self) -> Result<Matrix<Scalar>> {
        let inv = linalg::inverse(&self.rows(), self.ctx)?;
        Matrix::from_rows(inv)
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.rows(), self.n)
    }
}

impl Matrix<Jet> {
    /// `sum_k eps^k C_k` for the given coefficient matrices.
    pub fn from_coefficients(coeffs: &[Matrix<Scalar>]) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::Shape("need at least one coefficient".into()))?;
        for c in coeffs {
            first.check_compatible(c)?;
        }
        let order = coeffs.len();
        Ok(Matrix::from_fn(
            first.n,
            JetCtx {
                field: first.ctx,
                order,
            },
            |i, j| {
                Jet::new(coeffs.iter().map(|c| c.get(i, j).clone()).collect())
                    .expect("coefficients share a field")
            },
        ))
    }

    /// The `eps^k` coefficient matrix.
    pub fn coefficient(&self, k: usize) -> Matrix<Scalar> {
        Matrix::from_fn(self.n, self.ctx.field, |i, j| self.get(i, j).coeff(k).clone())
    }

    /// Multiplication by `eps`.
    pub fn shift(&self) -> Matrix<Jet> {
        self.map(Jet::shift)
    }
}

/// Rows separated by `;`, entries by `,`.
impl fmt::Display for Matrix<Scalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Gl,
    So,
    Sp,
}

/// One of `gl_n`, `so_n = { M : M^t = -M }` or
/// `sp_n = { M : M^t J + J M = 0 }`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalAlgebra {
    kind: AlgebraKind,
    n: usize,
    field: FieldSpec,
    form: Option<Matrix<Scalar>>,
    form_inv: Option<Matrix<Scalar>>,
}

impl ClassicalAlgebra {
    pub fn gl(field: FieldSpec, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidAlgebra("size must be positive".into()));
        }
        Ok(ClassicalAlgebra {
            kind: AlgebraKind::Gl,
            n,
            field,
            form: None,
            form_inv: None,
        })
    }

    /// `so_n`. Characteristic 2 is rejected since skew and symmetric coincide
    /// there.
    pub fn so(field: FieldSpec, n: usize) -> Result<Self> {
        field.require_odd_characteristic()?;
        let mut g = ClassicalAlgebra::gl(field, n)?;
        g.kind = AlgebraKind::So;
        Ok(g)
    }

    /// `sp_n` with the default form `J = [[0, I], [-I, 0]]`.
    pub fn sp(field: FieldSpec, n: usize) -> Result<Self> {
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::InvalidAlgebra(format!("sp_n needs even n, got {n}")));
        }
        let h = n / 2;
        let j = Matrix::from_fn(n, field, |r, c| {
            if c == r + h {
                Scalar::one(field)
            } else if r == c + h {
                -Scalar::one(field)
            } else {
                Scalar::zero(field)
            }
        });
        ClassicalAlgebra::sp_with_form(j)
    }

    /// `sp_n` for an explicit invertible alternating form matrix.
    pub fn sp_with_form(j: Matrix<Scalar>) -> Result<Self> {
        let field = j.field();
        field.require_odd_characteristic()?;
        let n = j.n();
        for r in 0..n {
            for c in 0..n {
                let alt = if r == c {
                    j.get(r, c).is_zero()
                } else {
                    j.get(r, c) == &-j.get(c, r)
                };
                if !alt {
                    return Err(Error::InvalidAlgebra("J is not alternating".into()));
                }
            }
        }
        let inv = j
            .inverse()
            .map_err(|_| Error::InvalidAlgebra("J is not invertible".into()))?;
        Ok(ClassicalAlgebra {
            kind: AlgebraKind::Sp,
            n,
            field,
            form: Some(j),
            form_inv: Some(inv),
        })
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn form(&self) -> Option<&Matrix<Scalar>> {
        self.form.as_ref()
    }

    /// Exact membership test. A size or field mismatch is simply "not a member".
    pub fn contains(&self, m: &Matrix<Scalar>) -> bool {
        if m.n() != self.n || m.field() != self.field {
            return false;
        }
        match self.kind {
            AlgebraKind::Gl => true,
            AlgebraKind::So => m.transpose() == m.neg(),
            AlgebraKind::Sp => {
                let j = self.form.as_ref().expect("sp carries its form");
                let lhs = m.transpose().mul(j).and_then(|a| a.add(&j.mul(m)?));
                lhs.map(|s| s.is_zero()).unwrap_or(false)
            }
        }
    }

    /// A deterministic random member: unconstrained for `gl`, an explicit
    /// skew matrix for `so`, and `J^{-1} S` with `S` symmetric for `sp`.
    pub fn random_element(&self, seed: u64, bound: u32) -> Matrix<Scalar> {
        let mut rng = sample::trial_rng(seed, 0);
        self.random_element_with(&mut rng, bound)
    }

    pub fn random_element_with<G: Rng + ?Sized>(&self, rng: &mut G, bound: u32) -> Matrix<Scalar> {
        let n = self.n;
        let field = self.field;
        match self.kind {
            AlgebraKind::Gl => sample::matrix(rng, field, n, bound),
            AlgebraKind::So => {
                let mut m = Matrix::zero(n, field);
                for i in 0..n {
                    for j in i + 1..n {
                        let c = sample::scalar(rng, field, bound);
                        m.set(j, i, -&c);
                        m.set(i, j, c);
                    }
                }
                m
            }
            AlgebraKind::Sp => {
                let mut s = Matrix::zero(n, field);
                for i in 0..n {
                    for j in i..n {
                        let c = sample::scalar(rng, field, bound);
                        s.set(j, i, c.clone());
                        s.set(i, j, c);
                    }
                }
                let inv = self.form_inv.as_ref().expect("sp carries its form");
                inv.mul(&s).expect("sizes agree")
            }
        }
    }
}

impl fmt::Display for ClassicalAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            AlgebraKind::Gl => "gl",
            AlgebraKind::So => "so",
            AlgebraKind::Sp => "sp",
        };
        write!(f, "{name}_{} over {}", self.n, self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    #[test]
    fn commutator_examples() {
        let e12 = Matrix::from_i64(q(), &[&[0, 1], &[0, 0]]).unwrap();
        let e21 = Matrix::from_i64(q(), &[&[0, 0], &[1, 0]]).unwrap();
        let h = Matrix::from_i64(q(), &[&[1, 0], &[0, -1]]).unwrap();
        assert_eq!(e12.commutator(&e21).unwrap(), h);
        assert!(h.commutator(&h).unwrap().is_zero());
        assert_eq!(e12.transpose().transpose(), e12);
        assert_eq!(e12.transpose(), e21);
    }

    #[test]
    fn mismatches_are_errors() {
        let a = Matrix::<Scalar>::identity(2, q());
        let b = Matrix::<Scalar>::identity(3, q());
        assert!(matches!(a.mul(&b), Err(Error::Shape(_))));
        let c = Matrix::<Scalar>::identity(2, FieldSpec::prime(5).unwrap());
        assert_eq!(a.add(&c), Err(Error::RingMismatch));
        assert!(Matrix::<Scalar>::from_rows(vec![]).is_err());
        assert!(Matrix::from_rows(vec![vec![Scalar::one(q())], vec![]]).is_err());
    }

    #[test]
    fn membership_examples() {
        let so3 = ClassicalAlgebra::so(q(), 3).unwrap();
        let skew = Matrix::from_i64(q(), &[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]).unwrap();
        assert!(so3.contains(&skew));
        assert!(!so3.contains(&Matrix::identity(3, q())));
        let sp2 = ClassicalAlgebra::sp(q(), 2).unwrap();
        let h = Matrix::from_i64(q(), &[&[1, 0], &[0, -1]]).unwrap();
        assert!(sp2.contains(&h));
        assert!(!sp2.contains(&Matrix::identity(2, q())));
        assert!(ClassicalAlgebra::gl(q(), 2).unwrap().contains(&h));
        assert!(!so3.contains(&h));
    }

    #[test]
    fn invalid_algebras() {
        assert!(ClassicalAlgebra::sp(q(), 3).is_err());
        assert_eq!(
            ClassicalAlgebra::so(FieldSpec::prime(2).unwrap(), 3),
            Err(Error::CharacteristicTwo)
        );
        let singular = Matrix::from_i64(q(), &[&[0, 0], &[0, 0]]).unwrap();
        assert!(ClassicalAlgebra::sp_with_form(singular).is_err());
        let sym = Matrix::from_i64(q(), &[&[0, 1], &[1, 0]]).unwrap();
        assert!(ClassicalAlgebra::sp_with_form(sym).is_err());
    }

    fn algebras(field: FieldSpec) -> Vec<ClassicalAlgebra> {
        vec![
            ClassicalAlgebra::so(field, 3).unwrap(),
            ClassicalAlgebra::so(field, 4).unwrap(),
            ClassicalAlgebra::sp(field, 2).unwrap(),
            ClassicalAlgebra::sp(field, 4).unwrap(),
            ClassicalAlgebra::gl(field, 3).unwrap(),
        ]
    }

    #[test]
    fn random_elements_are_members_and_deterministic() {
        for field in [q(), FieldSpec::prime(5).unwrap(), FieldSpec::prime(7).unwrap()] {
            for g in algebras(field) {
                for seed in 0..100 {
                    let m = g.random_element(seed, 5);
                    assert!(g.contains(&m), "{g} seed {seed}");
                    assert_eq!(m, g.random_element(seed, 5));
                }
            }
        }
    }

    #[test]
    fn random_so2_is_multiple_of_rotation_generator() {
        let so2 = ClassicalAlgebra::so(q(), 2).unwrap();
        let gen = Matrix::from_i64(q(), &[&[0, 1], &[-1, 0]]).unwrap();
        for seed in 0..20 {
            let m = so2.random_element(seed, 5);
            let c = m.get(0, 1).clone();
            assert_eq!(m, gen.scale(&c));
        }
    }

    #[test]
    fn random_rational_entries_respect_height_bound() {
        let gl = ClassicalAlgebra::gl(q(), 3).unwrap();
        for seed in 0..20 {
            let m = gl.random_element(seed, 3);
            for row in m.rows() {
                for e in row {
                    let r = e.as_rational().unwrap();
                    assert!(r.numer().magnitude() <= &3u32.into());
                    assert!(r.denom().magnitude() <= &3u32.into());
                }
            }
        }
    }

    #[test]
    fn classical_algebras_closed_under_commutator() {
        for field in [q(), FieldSpec::prime(5).unwrap(), FieldSpec::prime(7).unwrap()] {
            for g in algebras(field) {
                for seed in 0..100 {
                    let a = g.random_element(2 * seed, 4);
                    let b = g.random_element(2 * seed + 1, 4);
                    assert!(g.contains(&a.commutator(&b).unwrap()), "{g}");
                }
            }
        }
    }

    #[test]
    fn jet_lift_and_coefficients() {
        let a = Matrix::from_i64(q(), &[&[1, 2], &[3, 4]]).unwrap();
        let b = Matrix::from_i64(q(), &[&[0, 1], &[1, 0]]).unwrap();
        let j = Matrix::<Jet>::from_coefficients(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(j.coefficient(0), a);
        assert_eq!(j.coefficient(1), b);
        // (A + eps B)^2 = A^2 + eps (AB + BA)
        let sq = j.mul(&j).unwrap();
        assert_eq!(sq.coefficient(0), a.mul(&a).unwrap());
        assert_eq!(
            sq.coefficient(1),
            a.mul(&b).unwrap().add(&b.mul(&a).unwrap()).unwrap()
        );
        assert_eq!(a.lift(2).coefficient(0), a);
        assert!(a.lift(2).coefficient(1).is_zero());
    }

    #[test]
    fn display_format() {
        let a = Matrix::from_i64(q(), &[&[1, -2], &[0, 4]]).unwrap();
        assert_eq!(a.to_string(), "1,-2;0,4");
    }
}
