//! The planar case `V = span{x, y}`, `<x, y> = 1`: every class `a` gives a
//! vector field `F_a` on pairs of matrices.
//!
//! Write `N(a) = x p_a - y q_a`. Then
//! `F_a(X, Y) = (X - eps q_a(X, Y), Y - eps p_a(X, Y))`, whose tangent vector
//! is `V_a = (-q_a, -p_a)`. The checks here are that `V_a` is tangent to the
//! fibres of `(X, Y) -> [X, Y]` and that `a -> F_a` respects brackets.
//!
//! Three independent routes compute the bracket of two fields:
//! - directional derivatives of `V_b` along `V_a` with dual-number matrices,
//! - literal composition `F_a(F_b(X, Y))` over `K[eps]/eps^3`,
//! - the closed-form triple sum over `D_{i,k}(a) D_{j,j}(b) D_{k,i}(a)`, which
//!   reads segments through a [`SegmentConvention`].

use crate::coinv::CoinvElem;
use crate::error::{Error, Result};
use crate::matalg::{ClassicalAlgebra, Matrix};
use crate::sample;
use crate::scalar::{Jet, Ring, Scalar};
use crate::space::SymplecticSpace;
use crate::tensor::{eval_word, Sign, TensorElem};
use crate::word::{Letter, SegmentConvention, Word};

const X: Letter = 0;
const Y: Letter = 1;

/// Relates the directional-derivative bracket to the algebra bracket:
///
/// `DV_b[V_a] - DV_a[V_b] = VF_BRACKET_SIGN * V_{[a, b]}`.
///
/// Composition gives `F_a F_b - F_b F_a = eps^2 (DV_a[V_b] - DV_b[V_a])`, and
/// that commutator is `eps^2 V_{[a, b]}`, hence `-1`.
pub const VF_BRACKET_SIGN: i64 = -1;

/// `p_a` and `q_a` with `x p_a - y q_a = N(a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PQPair {
    pub p: TensorElem,
    pub q: TensorElem,
}

/// A tangent vector at a pair of matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct VFValue<R: Ring> {
    pub first: Matrix<R>,
    pub second: Matrix<R>,
}

impl<R: Ring> VFValue<R> {
    pub fn is_zero(&self) -> bool {
        self.first.is_zero() && self.second.is_zero()
    }

    pub fn add(&self, other: &VFValue<R>) -> Result<VFValue<R>> {
        Ok(VFValue {
            first: self.first.add(&other.first)?,
            second: self.second.add(&other.second)?,
        })
    }

    pub fn sub(&self, other: &VFValue<R>) -> Result<VFValue<R>> {
        Ok(VFValue {
            first: self.first.sub(&other.first)?,
            second: self.second.sub(&other.second)?,
        })
    }

    pub fn scale(&self, s: &Scalar) -> VFValue<R> {
        VFValue {
            first: self.first.scale(s),
            second: self.second.scale(s),
        }
    }
}

impl VFValue<Jet> {
    pub fn coefficient(&self, k: usize) -> VFValue<Scalar> {
        VFValue {
            first: self.first.coefficient(k),
            second: self.second.coefficient(k),
        }
    }
}

fn require_plane(space: &SymplecticSpace) -> Result<()> {
    if space.is_standard_plane() {
        Ok(())
    } else {
        Err(Error::NotPlanar)
    }
}

/// Groups the rotations of each necklace by first letter:
/// `p_a = sum_i [a_i = x] D_{i,i}(a)`, `q_a = -sum_i [a_i = y] D_{i,i}(a)`.
pub fn pq_decompose(a: &CoinvElem) -> Result<PQPair> {
    let space = a.space();
    require_plane(space)?;
    let mut p = TensorElem::zero(space.clone());
    let mut q = TensorElem::zero(space.clone());
    for (n, c) in a.terms() {
        let w = n.word();
        for (i, &letter) in w.letters().iter().enumerate() {
            match letter {
                X => p.add_term(w.cut_at(i), c),
                _ => q.add_term(w.cut_at(i), &-c),
            }
        }
    }
    Ok(PQPair { p, q })
}

/// `x p - y q`.
pub fn pq_reassemble(pq: &PQPair) -> TensorElem {
    TensorElem::reassemble(pq.p.space(), &[pq.p.clone(), -&pq.q])
}

/// `V_a(X, Y) = (-q_a(X, Y), -p_a(X, Y))` over any matrix ring.
pub fn vf_value<R: Ring>(pq: &PQPair, x: &Matrix<R>, y: &Matrix<R>) -> Result<VFValue<R>> {
    let assignment = [x.clone(), y.clone()];
    Ok(VFValue {
        first: pq.q.nc_eval(&assignment)?.neg(),
        second: pq.p.nc_eval(&assignment)?.neg(),
    })
}

pub fn vf_value_of(a: &CoinvElem, x: &Matrix<Scalar>, y: &Matrix<Scalar>) -> Result<VFValue<Scalar>> {
    vf_value(&pq_decompose(a)?, x, y)
}

/// The `eps` coefficient of `[X - eps q(X, Y), Y - eps p(X, Y)]`, which is
/// `-([X, p] + [q, Y])`.
pub fn tangency_defect(a: &CoinvElem, x: &Matrix<Scalar>, y: &Matrix<Scalar>) -> Result<Matrix<Scalar>> {
    let pq = pq_decompose(a)?;
    let assignment = [x.clone(), y.clone()];
    let p = pq.p.nc_eval(&assignment)?;
    let q = pq.q.nc_eval(&assignment)?;
    Ok(x.commutator(&p)?.add(&q.commutator(y)?)?.neg())
}

/// `DV_a[U]` at `(X, Y)`: the `eps` coefficient of `V_a(X + eps U_1, Y + eps U_2)`.
pub fn directional_derivative(
    pq: &PQPair,
    x: &Matrix<Scalar>,
    y: &Matrix<Scalar>,
    along: &VFValue<Scalar>,
) -> Result<VFValue<Scalar>> {
    let xj = Matrix::<Jet>::from_coefficients(&[x.clone(), along.first.clone()])?;
    let yj = Matrix::<Jet>::from_coefficients(&[y.clone(), along.second.clone()])?;
    Ok(vf_value(pq, &xj, &yj)?.coefficient(1))
}

/// `DV_b[V_a] - DV_a[V_b]` at `(X, Y)`.
pub fn vf_bracket(a: &CoinvElem, b: &CoinvElem, x: &Matrix<Scalar>, y: &Matrix<Scalar>) -> Result<VFValue<Scalar>> {
    let (pa, pb) = (pq_decompose(a)?, pq_decompose(b)?);
    let va = vf_value(&pa, x, y)?;
    let vb = vf_value(&pb, x, y)?;
    directional_derivative(&pb, x, y, &va)?.sub(&directional_derivative(&pa, x, y, &vb)?)
}

/// `[F_a, F_b](X, Y) - VF_BRACKET_SIGN * V_{[a, b]}(X, Y)`, via dual numbers.
pub fn vf_bracket_defect(
    a: &CoinvElem,
    b: &CoinvElem,
    x: &Matrix<Scalar>,
    y: &Matrix<Scalar>,
) -> Result<VFValue<Scalar>> {
    vf_bracket_defect_signed(a, b, x, y, VF_BRACKET_SIGN)
}

pub fn vf_bracket_defect_signed(
    a: &CoinvElem,
    b: &CoinvElem,
    x: &Matrix<Scalar>,
    y: &Matrix<Scalar>,
    sign: i64,
) -> Result<VFValue<Scalar>> {
    let lhs = vf_bracket(a, b, x, y)?;
    let rhs = vf_value_of(&a.bracket(b), x, y)?;
    lhs.sub(&rhs.scale(&Scalar::from_i64(x.field(), sign)))
}

fn apply_field(pq: &PQPair, point: &VFValue<Jet>) -> Result<VFValue<Jet>> {
    let v = vf_value(pq, &point.first, &point.second)?;
    Ok(VFValue {
        first: point.first.add(&v.first.shift())?,
        second: point.second.add(&v.second.shift())?,
    })
}

/// `F_a(F_b(X, Y))` over `K[eps]/eps^3`.
pub fn compose_fields(a: &PQPair, b: &PQPair, x: &Matrix<Scalar>, y: &Matrix<Scalar>) -> Result<VFValue<Jet>> {
    let start = VFValue {
        first: x.lift(3),
        second: y.lift(3),
    };
    apply_field(a, &apply_field(b, &start)?)
}

/// The `eps^2` coefficient of `F_a F_b - F_b F_a` minus `V_{[a, b]}`.
pub fn composition_defect(
    a: &CoinvElem,
    b: &CoinvElem,
    x: &Matrix<Scalar>,
    y: &Matrix<Scalar>,
) -> Result<VFValue<Scalar>> {
    let (pa, pb) = (pq_decompose(a)?, pq_decompose(b)?);
    let ab = compose_fields(&pa, &pb, x, y)?;
    let ba = compose_fields(&pb, &pa, x, y)?;
    let commutator = ab.sub(&ba)?.coefficient(2);
    commutator.sub(&vf_value_of(&a.bracket(b), x, y)?)
}

/// `sum_{i, j, k != i} c_{ijk} D_{i,k}(u) D_{j,j}(v) D_{k,i}(u)` evaluated at
/// `(X, Y)`, where `c_{ijk} = [u_i = head] * pair(u_k, v_j)`.
fn spliced_sum(
    space: &SymplecticSpace,
    u: &Word,
    v: &Word,
    head: Letter,
    pair: impl Fn(Letter, Letter) -> Scalar,
    assignment: &[Matrix<Scalar>],
    convention: SegmentConvention,
) -> Result<Matrix<Scalar>> {
    let field = space.field();
    let n = assignment[0].n();
    let mut acc = Matrix::zero(n, field);
    let (l, m) = (u.len(), v.len());
    for i in 1..=l {
        if u.letters()[i - 1] != head {
            continue;
        }
        for j in 1..=m {
            let middle = v.segment(j, j)?;
            for k in (1..=l).filter(|&k| k != i) {
                let g = pair(u.letters()[k - 1], v.letters()[j - 1]);
                if g.is_zero() {
                    continue;
                }
                let (Some(left), Some(right)) =
                    (u.segment_with(i, k, convention)?, u.segment_with(k, i, convention)?)
                else {
                    continue;
                };
                let w = Word::join([&left, &middle, &right]);
                acc = acc.add(&eval_word(space, &w, assignment)?.scale(&g))?;
            }
        }
    }
    Ok(acc)
}

/// The closed-form `eps^2` coefficient of `F_a F_b - F_b F_a`, summed over
/// representative pairs.
pub fn closed_form_commutator(
    a: &CoinvElem,
    b: &CoinvElem,
    x: &Matrix<Scalar>,
    y: &Matrix<Scalar>,
    convention: SegmentConvention,
) -> Result<VFValue<Scalar>> {
    let space = a.space();
    require_plane(space)?;
    let assignment = [x.clone(), y.clone()];
    let field = space.field();
    let form = |s: Letter, t: Letter| space.form(s, t).clone();
    let mut first = Matrix::zero(x.n(), field);
    let mut second = Matrix::zero(x.n(), field);
    for (na, ca) in a.terms() {
        for (nb, cb) in b.terms() {
            let (u, v) = (na.word(), nb.word());
            let c = ca * cb;
            // first component: [u_i = y] <u_k, v_j>  minus  [v_j = y] <v_k, u_i>
            let f = spliced_sum(space, u, v, Y, form, &assignment, convention)?
                .sub(&spliced_sum(space, v, u, Y, form, &assignment, convention)?)?;
            // second component: [u_i = x] <v_j, u_k>  minus  [v_j = x] <u_i, v_k>
            let s = spliced_sum(space, u, v, X, |s, t| form(t, s), &assignment, convention)?
                .sub(&spliced_sum(space, v, u, X, |s, t| form(t, s), &assignment, convention)?)?;
            first = first.add(&f.scale(&c))?;
            second = second.add(&s.scale(&c))?;
        }
    }
    Ok(VFValue { first, second })
}

/// The closed-form commutator minus `V_{[a, b]}`.
pub fn closed_form_defect(
    a: &CoinvElem,
    b: &CoinvElem,
    x: &Matrix<Scalar>,
    y: &Matrix<Scalar>,
    convention: SegmentConvention,
) -> Result<VFValue<Scalar>> {
    closed_form_commutator(a, b, x, y, convention)?.sub(&vf_value_of(&a.bracket(b), x, y)?)
}

/// Whether `p(X_1, .., X_r)` lies in `g` for random `X_i` in `g`, one tuple
/// per seed. `p` must be a `-1` eigenvector of `iota`.
pub fn g_closure_check(p: &TensorElem, g: &ClassicalAlgebra, seeds: &[u64]) -> Result<bool> {
    g.field().require_odd_characteristic()?;
    if p.field() != g.field() {
        return Err(Error::FieldMismatch(p.field(), g.field()));
    }
    if !p.is_iota_eigenvector(Sign::Minus) {
        return Err(Error::Precondition("p is not in the -1 eigenspace of iota".into()));
    }
    for &seed in seeds {
        let mut rng = sample::trial_rng(seed, 0);
        let tuple: Vec<Matrix<Scalar>> = (0..p.space().dim())
            .map(|_| g.random_element_with(&mut rng, 5))
            .collect();
        if !g.contains(&p.nc_eval(&tuple)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For `a` fixed by `iota` and `X, Y` in `g`: both components of `V_a(X, Y)`
/// lie in `g`, and `V_a` is tangent to the commutator fibres there.
pub fn proposition_check(
    a: &CoinvElem,
    g: &ClassicalAlgebra,
    x: &Matrix<Scalar>,
    y: &Matrix<Scalar>,
) -> Result<bool> {
    require_plane(a.space())?;
    g.field().require_odd_characteristic()?;
    if a.iota() != *a {
        return Err(Error::Precondition("class is not fixed by iota".into()));
    }
    if !g.contains(x) || !g.contains(y) {
        return Err(Error::Precondition(format!("X and Y must lie in {g}")));
    }
    let v = vf_value_of(a, x, y)?;
    Ok(g.contains(&v.first) && g.contains(&v.second) && tangency_defect(a, x, y)?.is_zero())
}
