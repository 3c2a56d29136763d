//! Exact scalars: rationals and elements of quadratic extensions `Q[t]/(t^2 + c1 t + c0)`.
//!
//! [`Rational`] keeps an inline `i64` representation whenever the reduced value fits and only
//! falls back to arbitrary precision on overflow, so the common small-integer elimination work
//! never allocates. The representation is canonical: two rationals are equal iff their
//! representations are identical.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    /// Reduced fraction with positive denominator.
    Small(i64, i64),
    /// Only used when the reduced value does not fit the small form.
    Big(Box<BigRational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational::Small(0, 1);
    pub const ONE: Rational = Rational::Small(1, 1);

    pub fn from_int(n: i64) -> Self {
        Rational::Small(n, 1)
    }

    /// Builds `num/den`, reducing. Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        if num == 0 {
            return Rational::ZERO;
        }
        let g = gcd_u128(num.unsigned_abs(), den.unsigned_abs()) as i128;
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(BigRational::new_raw(n.into(), d.into()))),
        }
    }

    /// Canonicalizes an arbitrary-precision value, demoting it to the small form when it fits.
    pub fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(r)),
        }
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        Ok(Self::from_big(BigRational::new(num, den)))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(n, _) => BigInt::from(*n),
            Rational::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, d) => BigInt::from(*d),
            Rational::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(n, _) => *n < 0,
            Rational::Big(b) => b.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(b) => b.is_integer(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        match self {
            Rational::Small(0, _) => Err(Error::DivisionByZero),
            Rational::Small(n, d) => Ok(Self::from_i128(*d as i128, *n as i128)),
            Rational::Big(b) => Ok(Self::from_big(b.recip())),
        }
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut out = Rational::ONE;
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    /// Exact square root, if the value is the square of a rational.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer();
        let d = self.denom();
        let rn = n.sqrt();
        let rd = d.sqrt();
        if &rn * &rn == n && &rd * &rd == d {
            Some(Self::from_big(BigRational::new(rn, rd)))
        } else {
            None
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        match (self, rhs) {
            (Rational::Small(0, _), r) | (r, Rational::Small(0, _)) => r.clone(),
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if b == d {
                    Rational::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    Rational::from_i128(
                        (*a as i128) * (*d as i128) + (*c as i128) * (*b as i128),
                        (*b as i128) * (*d as i128),
                    )
                }
            }
            _ => Rational::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        match (self, rhs) {
            (Rational::Small(0, _), _) | (_, Rational::Small(0, _)) => Rational::ZERO,
            (Rational::Small(1, 1), r) | (r, Rational::Small(1, 1)) => r.clone(),
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                let g1 = gcd_u128(a.unsigned_abs(), d.unsigned_abs()) as i128;
                let g2 = gcd_u128(c.unsigned_abs(), b.unsigned_abs()) as i128;
                let n = (a / g1) * (c / g2);
                let den = (b / g2) * (d / g1);
                match (i64::try_from(n), i64::try_from(den)) {
                    (Ok(n), Ok(den)) => Rational::Small(n, den),
                    _ => Rational::Big(Box::new(BigRational::new_raw(n.into(), den.into()))),
                }
            }
            _ => Rational::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self * &rhs.recip().expect("division by zero rational")
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            Rational::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational::Small(m, *d),
                None => Rational::from_big(-self.to_big()),
            },
            Rational::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Rational, Add, add);
forward_owned!(Rational, Sub, sub);
forward_owned!(Rational, Mul, mul);
forward_owned!(Rational, Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Rational::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The quadratic field `Q[t]/(t^2 + c1 t + c0)`; construction rejects reducible polynomials.
#[derive(Clone)]
pub struct QuadField(Arc<QuadFieldData>);

#[derive(PartialEq, Eq, Hash)]
struct QuadFieldData {
    c0: Rational,
    c1: Rational,
}

impl QuadField {
    pub fn new(c0: Rational, c1: Rational) -> Result<Self> {
        let disc = &(&c1 * &c1) - &(&Rational::from_int(4) * &c0);
        if disc.sqrt().is_some() {
            return Err(Error::ReducibleField { c0: c0.to_string(), c1: c1.to_string() });
        }
        Ok(QuadField(Arc::new(QuadFieldData { c0, c1 })))
    }

    /// `Q(i)`, i.e. `t^2 + 1 = 0`.
    pub fn gaussian() -> Self {
        QuadField::new(Rational::ONE, Rational::ZERO).expect("t^2+1 is irreducible over Q")
    }

    pub fn c0(&self) -> &Rational {
        &self.0.c0
    }

    pub fn c1(&self) -> &Rational {
        &self.0.c1
    }

    /// The generator `t` as a scalar.
    pub fn gen(&self) -> Scalar {
        Scalar::from_parts(Rational::ZERO, Rational::ONE, Some(self))
    }
}

impl PartialEq for QuadField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for QuadField {}

impl fmt::Debug for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[t]/(t^2+({})t+({}))", self.0.c1, self.0.c0)
    }
}

/// Which field a set of scalars lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldDescriptor {
    Rational,
    Quadratic(QuadField),
}

impl FieldDescriptor {
    /// The smallest field containing both, or an error if two distinct extensions meet.
    pub fn join(&self, other: &FieldDescriptor) -> Result<FieldDescriptor> {
        match (self, other) {
            (FieldDescriptor::Rational, f) | (f, FieldDescriptor::Rational) => Ok(f.clone()),
            (FieldDescriptor::Quadratic(a), FieldDescriptor::Quadratic(b)) if a == b => {
                Ok(self.clone())
            }
            _ => Err(Error::FieldMismatch),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct ExtElement {
    a: Rational,
    b: Rational,
    field: QuadField,
}

/// An exact field element: a rational, or `a + b t` in a quadratic extension with `b != 0`.
///
/// Elements whose `t`-coordinate vanishes are always stored as rationals, so equality is
/// structural.
#[derive(Clone, PartialEq, Eq)]
pub enum Scalar {
    Rat(Rational),
    Ext(Box<ExtElement>),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub const fn zero() -> Self {
        Scalar::Rat(Rational::ZERO)
    }

    pub const fn one() -> Self {
        Scalar::Rat(Rational::ONE)
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rat(Rational::from_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::Rat(Rational::new(n, d))
    }

    /// `a + b t`; the field may be omitted only when `b` is zero.
    pub fn from_parts(a: Rational, b: Rational, field: Option<&QuadField>) -> Self {
        if b.is_zero() {
            return Scalar::Rat(a);
        }
        let field = field.expect("nonzero t-coordinate needs a quadratic field").clone();
        Scalar::Ext(Box::new(ExtElement { a, b, field }))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Ext(_) => None,
        }
    }

    /// Coordinates `(a, b)` of `a + b t`.
    pub fn coords(&self) -> (Rational, Rational) {
        match self {
            Scalar::Rat(r) => (r.clone(), Rational::ZERO),
            Scalar::Ext(e) => (e.a.clone(), e.b.clone()),
        }
    }

    pub fn field(&self) -> FieldDescriptor {
        match self {
            Scalar::Rat(_) => FieldDescriptor::Rational,
            Scalar::Ext(e) => FieldDescriptor::Quadratic(e.field.clone()),
        }
    }

    fn pick_field<'a>(a: &'a Scalar, b: &'a Scalar) -> Option<&'a QuadField> {
        match (a, b) {
            (Scalar::Ext(x), Scalar::Ext(y)) => {
                assert!(x.field == y.field, "mixing scalars from different quadratic fields");
                Some(&x.field)
            }
            (Scalar::Ext(x), _) | (_, Scalar::Ext(x)) => Some(&x.field),
            _ => None,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rat(r) => Ok(Scalar::Rat(r.recip()?)),
            Scalar::Ext(e) => {
                // conjugate of a + b t is (a - b c1) - b t; norm a^2 - c1 a b + c0 b^2
                let c0 = e.field.c0();
                let c1 = e.field.c1();
                let norm = &(&(&e.a * &e.a) - &(&(c1 * &e.a) * &e.b)) + &(&(c0 * &e.b) * &e.b);
                let ninv = norm.recip()?;
                let ca = &e.a - &(&e.b * c1);
                let cb = -&e.b;
                Ok(Scalar::from_parts(&ca * &ninv, &cb * &ninv, Some(&e.field)))
            }
        }
    }

    pub fn pow(&self, e: i32) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rat(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (self, rhs) {
            return Scalar::Rat(a + b);
        }
        let f = Scalar::pick_field(self, rhs);
        let (a1, b1) = self.coords();
        let (a2, b2) = rhs.coords();
        Scalar::from_parts(&a1 + &a2, &b1 + &b2, f)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (self, rhs) {
            return Scalar::Rat(a - b);
        }
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Rat(r), Scalar::Ext(e)) | (Scalar::Ext(e), Scalar::Rat(r)) => {
                Scalar::from_parts(r * &e.a, r * &e.b, Some(&e.field))
            }
            (Scalar::Ext(x), Scalar::Ext(y)) => {
                assert!(x.field == y.field, "mixing scalars from different quadratic fields");
                // (a1 + b1 t)(a2 + b2 t) with t^2 = -c1 t - c0
                let bb = &x.b * &y.b;
                let a = &(&x.a * &y.a) - &(&bb * x.field.c0());
                let b = &(&(&x.a * &y.b) + &(&x.b * &y.a)) - &(&bb * x.field.c1());
                Scalar::from_parts(a, b, Some(&x.field))
            }
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Ext(e) => Scalar::from_parts(-&e.a, -&e.b, Some(&e.field)),
        }
    }
}

forward_owned!(Scalar, Add, add);
forward_owned!(Scalar, Sub, sub);
forward_owned!(Scalar, Mul, mul);
forward_owned!(Scalar, Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    /// `num/den` for rationals, `a+b*t` (or `a-b*t`) for extension elements.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Ext(e) => {
                if e.b.is_negative() {
                    write!(f, "{}-{}*t", e.a, -&e.b)
                } else {
                    write!(f, "{}+{}*t", e.a, e.b)
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
