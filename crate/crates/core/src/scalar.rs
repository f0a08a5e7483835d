//! Exact coefficient arithmetic.
//!
//! Two kinds of field are supported: the rationals, backed by arbitrary
//! precision integers, and prime fields `F_p` with `p < 2^32`. On top of the
//! field sits [`Jet`], the truncated polynomial ring `K[eps]/(eps^k)` used for
//! exact first and second order expansions.
//!
//! Matrices and noncommutative evaluation are generic over the [`Ring`] trait,
//! which both [`Scalar`] and [`Jet`] implement.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field: `Q` or a prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    // `None` for the rationals.
    modulus: Option<u64>,
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { modulus: None };

    /// The prime field `F_p`. Rejects composite `p` and `p >= 2^32`.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 32 {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec { modulus: Some(p) })
    }

    pub fn is_rationals(&self) -> bool {
        self.modulus.is_none()
    }

    /// `p` for `F_p`, `None` for `Q`.
    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn characteristic(&self) -> u64 {
        self.modulus.unwrap_or(0)
    }

    /// Errors when 2 is not invertible.
    pub fn require_odd_characteristic(&self) -> Result<()> {
        if self.characteristic() == 2 {
            Err(Error::CharacteristicTwo)
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            None => write!(f, "Q"),
            Some(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn reduce_bigint(n: &BigInt, m: u64) -> u64 {
    let r = n % BigInt::from(m);
    let r = if r.is_negative() { r + BigInt::from(m) } else { r };
    u64::try_from(r).expect("residue fits in u64")
}

/// An exact element of a [`FieldSpec`].
///
/// Rationals are kept in lowest terms with a positive denominator (the
/// normalization of `BigRational`); residues live in `0..p`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Self {
        Scalar::from_i64(field, 0)
    }

    pub fn one(field: FieldSpec) -> Self {
        Scalar::from_i64(field, 1)
    }

    pub fn from_i64(field: FieldSpec, n: i64) -> Self {
        Scalar::from_bigint(field, &BigInt::from(n))
    }

    pub fn from_bigint(field: FieldSpec, n: &BigInt) -> Self {
        match field.modulus {
            None => Scalar::Rational(BigRational::from_integer(n.clone())),
            Some(p) => Scalar::Modular {
                value: reduce_bigint(n, p),
                modulus: p,
            },
        }
    }

    /// `num / den` in `field`; errors when `den` vanishes in the field.
    pub fn from_fraction(field: FieldSpec, num: &BigInt, den: &BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match field.modulus {
            None => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            Some(_) => {
                let n = Scalar::from_bigint(field, num);
                let d = Scalar::from_bigint(field, den);
                n.checked_div(&d)
            }
        }
    }

    /// Maps a rational into `field`. Fails if the denominator is divisible by `p`.
    pub fn from_rational(field: FieldSpec, q: &BigRational) -> Result<Self> {
        Scalar::from_fraction(field, q.numer(), q.denom())
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::RATIONALS,
            Scalar::Modular { modulus, .. } => FieldSpec {
                modulus: Some(*modulus),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    /// The rational value, if this is an element of `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Modular { .. } => None,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular {
                    value: (a + b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular {
                    value: a * b % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: mod_pow(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::one(self.field());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

// Operator forms panic on a field mismatch; use the `checked_*` methods when
// the operands come from untrusted input.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar addition across fields")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar subtraction across fields")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar multiplication across fields")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

/// Parses `integer` or `integer/integer` into `field`.
///
/// Both ASCII `-` and U+2212 are accepted as the minus sign.
pub fn parse_scalar(text: &str, field: FieldSpec) -> Result<Scalar> {
    let normalized = text.trim().replace('\u{2212}', "-");
    let (num, den) = match normalized.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (normalized.as_str(), None),
    };
    let parse_int = |s: &str, offset: usize| -> Result<BigInt> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(offset, format!("malformed integer {s:?}")));
        }
        s.parse::<BigInt>()
            .map_err(|e| Error::parse(offset, e.to_string()))
    };
    let n = parse_int(num, 0)?;
    match den {
        None => Ok(Scalar::from_bigint(field, &n)),
        Some(d) => {
            let offset = num.len() + 1;
            let d = parse_int(d, offset)?;
            if d.is_zero() {
                return Err(Error::parse(offset, "zero denominator"));
            }
            Scalar::from_fraction(field, &n, &d).map_err(|e| Error::parse(offset, e.to_string()))
        }
    }
}

/// A commutative ring usable as a matrix entry type.
///
/// `Ctx` carries whatever is needed to build constants (the field, and for
/// jets the truncation order); two elements can only be combined when their
/// contexts agree.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn field_of(ctx: &Self::Ctx) -> FieldSpec;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
    fn is_zero(&self) -> bool;
}

impl Ring for Scalar {
    type Ctx = FieldSpec;

    fn ctx(&self) -> FieldSpec {
        self.field()
    }
    fn field_of(ctx: &FieldSpec) -> FieldSpec {
        *ctx
    }
    fn zero(ctx: &FieldSpec) -> Self {
        Scalar::zero(*ctx)
    }
    fn one(ctx: &FieldSpec) -> Self {
        Scalar::one(*ctx)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct JetCtx {
    pub field: FieldSpec,
    pub order: usize,
}

/// An element `c_0 + c_1 eps + ... + c_{k-1} eps^{k-1}` of `K[eps]/(eps^k)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Jet {
    coeffs: Vec<Scalar>,
}

impl Jet {
    /// Builds a jet of order `coeffs.len()`.
    pub fn new(coeffs: Vec<Scalar>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::OrderMismatch(0, 1));
        };
        let field = first.field();
        if let Some(bad) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(Jet { coeffs })
    }

    pub fn constant(c: Scalar, order: usize) -> Self {
        assert!(order >= 1, "jet order must be at least 1");
        let field = c.field();
        let mut coeffs = vec![Scalar::zero(field); order];
        coeffs[0] = c;
        Jet { coeffs }
    }

    /// `eps` itself (zero when `order == 1`).
    pub fn epsilon(field: FieldSpec, order: usize) -> Self {
        let mut j = Jet::constant(Scalar::zero(field), order);
        if order > 1 {
            j.coeffs[1] = Scalar::one(field);
        }
        j
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.coeffs[0].field()
    }

    pub fn coeff(&self, k: usize) -> &Scalar {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    fn check(&self, other: &Jet) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field(), other.field()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Jet) -> Result<Jet> {
        self.check(other)?;
        Ok(Jet {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_mul(&self, other: &Jet) -> Result<Jet> {
        self.check(other)?;
        let k = self.order();
        let mut coeffs = vec![Scalar::zero(self.field()); k];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(k - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        Ok(Jet { coeffs })
    }

    /// Multiplication by `eps`.
    pub fn shift(&self) -> Jet {
        let k = self.order();
        let mut coeffs = vec![Scalar::zero(self.field()); k];
        coeffs[1..].clone_from_slice(&self.coeffs[..k - 1]);
        Jet { coeffs }
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})e")?,
                _ => write!(f, "({c})e^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Ring for Jet {
    type Ctx = JetCtx;

    fn ctx(&self) -> JetCtx {
        JetCtx {
            field: self.field(),
            order: self.order(),
        }
    }
    fn field_of(ctx: &JetCtx) -> FieldSpec {
        ctx.field
    }
    fn zero(ctx: &JetCtx) -> Self {
        Jet::constant(Scalar::zero(ctx.field), ctx.order)
    }
    fn one(ctx: &JetCtx) -> Self {
        Jet::constant(Scalar::one(ctx.field), ctx.order)
    }
    fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("jet operands must match")
    }
    fn sub(&self, other: &Self) -> Self {
        self.checked_add(&Ring::neg(other)).expect("jet operands must match")
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("jet operands must match")
    }
    fn neg(&self) -> Self {
        Jet {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn scale(&self, s: &Scalar) -> Self {
        Jet {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(text: &str) -> Scalar {
        parse_scalar(text, FieldSpec::RATIONALS).unwrap()
    }

    fn fp(p: u64, n: i64) -> Scalar {
        Scalar::from_i64(FieldSpec::prime(p).unwrap(), n)
    }

    #[test]
    fn rational_and_modular_examples() {
        assert_eq!(&q("2/3") + &q("1/6"), q("5/6"));
        assert_eq!(&fp(5, 3) * &fp(5, 4), fp(5, 2));
        assert_eq!(fp(7, 3).inv().unwrap(), fp(7, 5));
    }

    #[test]
    fn parse_reduces() {
        assert_eq!(q("\u{2212}3/6"), q("-1/2"));
        assert_eq!(q("-3/6").to_string(), "-1/2");
        assert_eq!(q("4/-6").to_string(), "-2/3");
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(parse_scalar("7", f5).unwrap(), fp(5, 2));
        assert_eq!(parse_scalar("-1", f5).unwrap(), fp(5, 4));
        assert_eq!(parse_scalar("1/2", f5).unwrap(), fp(5, 3));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_scalar("1/0", FieldSpec::RATIONALS),
            Err(Error::Parse { .. })
        ));
        assert!(parse_scalar("abc", FieldSpec::RATIONALS).is_err());
        assert!(parse_scalar("", FieldSpec::RATIONALS).is_err());
        assert!(parse_scalar("1/", FieldSpec::RATIONALS).is_err());
        // 5 vanishes in F_5
        assert!(parse_scalar("1/5", FieldSpec::prime(5).unwrap()).is_err());
    }

    #[test]
    fn division_by_zero_and_mixed_fields() {
        assert_eq!(q("0").inv(), Err(Error::DivisionByZero));
        assert_eq!(q("3").checked_div(&q("0")), Err(Error::DivisionByZero));
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(
            q("1").checked_add(&fp(5, 1)),
            Err(Error::FieldMismatch(FieldSpec::RATIONALS, f5))
        );
        assert!(fp(5, 1).checked_mul(&fp(7, 1)).is_err());
    }

    #[test]
    fn prime_field_construction() {
        assert!(FieldSpec::prime(2).is_ok());
        assert_eq!(FieldSpec::prime(1), Err(Error::NotPrime(1)));
        assert_eq!(FieldSpec::prime(9), Err(Error::NotPrime(9)));
        assert!(FieldSpec::prime(4_294_967_291).is_ok());
        assert!(matches!(
            FieldSpec::prime(1 << 32),
            Err(Error::ModulusTooLarge(_))
        ));
    }

    #[test]
    fn large_rationals_do_not_overflow() {
        let big = q("123456789012345678901234567890/11");
        let sq = &big * &big;
        assert_eq!(
            sq.to_string(),
            "15241578753238836750495351562536198787501905199875019052100/121"
        );
    }

    fn random_scalar(rng: &mut ChaCha8Rng, field: FieldSpec) -> Scalar {
        match field.modulus() {
            None => {
                let n = rng.random_range(-50i64..=50);
                let d = rng.random_range(1i64..=12);
                Scalar::from_fraction(field, &n.into(), &d.into()).unwrap()
            }
            Some(p) => Scalar::from_i64(field, rng.random_range(0..p as i64)),
        }
    }

    #[test]
    fn field_axioms_on_seeded_triples() {
        let fields = [
            FieldSpec::RATIONALS,
            FieldSpec::prime(2).unwrap(),
            FieldSpec::prime(3).unwrap(),
            FieldSpec::prime(5).unwrap(),
            FieldSpec::prime(7).unwrap(),
        ];
        for field in fields {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            for _ in 0..200 {
                let a = random_scalar(&mut rng, field);
                let b = random_scalar(&mut rng, field);
                let c = random_scalar(&mut rng, field);
                assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                assert_eq!(&a + &b, &b + &a);
                if !a.is_zero() {
                    assert!((&a * &a.inv().unwrap()).is_one());
                }
            }
        }
    }

    fn random_jet(rng: &mut ChaCha8Rng, field: FieldSpec, k: usize) -> Jet {
        Jet::new((0..k).map(|_| random_scalar(rng, field)).collect()).unwrap()
    }

    #[test]
    fn jet_examples() {
        let f = FieldSpec::RATIONALS;
        let one = Scalar::one(f);
        let e2 = Jet::epsilon(f, 2);
        let one_plus = Ring::add(&Jet::constant(one.clone(), 2), &e2);
        let one_minus = Ring::sub(&Jet::constant(one.clone(), 2), &e2);
        assert_eq!(Ring::mul(&one_plus, &one_minus), Jet::constant(one.clone(), 2));
        assert!(Ring::is_zero(&Ring::mul(&e2, &e2)));

        let e3 = Jet::epsilon(f, 3);
        let x = Ring::add(&Jet::constant(one.clone(), 3), &e3);
        let sq = Ring::mul(&x, &x);
        assert_eq!(
            sq.coeffs(),
            &[one.clone(), Scalar::from_i64(f, 2), one.clone()]
        );
        assert_eq!(e3.shift(), Ring::mul(&e3, &e3));
    }

    #[test]
    fn jet_order_mismatch() {
        let f = FieldSpec::RATIONALS;
        assert_eq!(
            Jet::epsilon(f, 2).checked_mul(&Jet::epsilon(f, 3)),
            Err(Error::OrderMismatch(2, 3))
        );
        assert!(Jet::new(vec![]).is_err());
    }

    #[test]
    fn jet_ring_laws() {
        for field in [FieldSpec::RATIONALS, FieldSpec::prime(5).unwrap()] {
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for k in [2, 3] {
                for _ in 0..100 {
                    let a = random_jet(&mut rng, field, k);
                    let b = random_jet(&mut rng, field, k);
                    let c = random_jet(&mut rng, field, k);
                    assert_eq!(Ring::mul(&Ring::mul(&a, &b), &c), Ring::mul(&a, &Ring::mul(&b, &c)));
                    assert_eq!(
                        Ring::mul(&a, &Ring::add(&b, &c)),
                        Ring::add(&Ring::mul(&a, &b), &Ring::mul(&a, &c))
                    );
                    let ab = Ring::mul(&a, &b);
                    let expected = &(a.coeff(0) * b.coeff(1)) + &(a.coeff(1) * b.coeff(0));
                    assert_eq!(ab.coeff(1), &expected);
                }
            }
        }
    }

    #[test]
    fn constant_jets_behave_like_scalars() {
        let f = FieldSpec::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let a = random_scalar(&mut rng, f);
            let b = random_scalar(&mut rng, f);
            let ja = Jet::constant(a.clone(), 3);
            let jb = Jet::constant(b.clone(), 3);
            assert_eq!(Ring::mul(&ja, &jb), Jet::constant(&a * &b, 3));
            assert_eq!(Ring::add(&ja, &jb), Jet::constant(&a + &b, 3));
        }
    }
}
