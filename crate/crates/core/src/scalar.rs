//! Exact field scalars: rationals or residues modulo an odd prime.
//!
//! Values built from integer literals start out rational and are coerced
//! into `F_p` the first time they meet a modular value, so constants can be
//! written once and reused over every supported field.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::FmkError;

/// The base field: `Q` or `F_p` with `p` an odd prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

impl Field {
    /// Reads `FMK_FIELD` if set.
    pub fn from_env() -> Result<Option<Field>, FmkError> {
        match std::env::var("FMK_FIELD") {
            Ok(s) if !s.trim().is_empty() => s.parse().map(Some),
            _ => Ok(None),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn int(&self, n: i64) -> Scalar {
        Scalar::from_i64(n).in_field(*self)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest supported modulus; keeps products inside `u128` comfortably and
/// the primality test cheap.
pub const MAX_PRIME: u64 = 1 << 31;

impl FromStr for Field {
    type Err = FmkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        let rest = s
            .strip_prefix("p=")
            .or_else(|| s.strip_prefix("P="))
            .ok_or_else(|| FmkError::Field(format!("expected `q` or `p=<odd prime>`, got `{s}`")))?;
        let p: u64 = rest
            .parse()
            .map_err(|_| FmkError::Field(format!("not an integer: `{rest}`")))?;
        if p == 2 {
            return Err(FmkError::Field("characteristic 2 is not supported".into()));
        }
        if p > MAX_PRIME || !is_prime(p) {
            return Err(FmkError::Field(format!("{p} is not a supported odd prime")));
        }
        Ok(Field::Prime(p))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "p={p}"),
        }
    }
}

/// An exact field element.
#[derive(Clone, Debug)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Q(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Q(BigRational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Scalar::Q(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::Q(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    /// Maps the value into `field`.
    ///
    /// Panics if a rational's denominator vanishes modulo `p`.
    pub fn in_field(&self, field: Field) -> Scalar {
        match (self, field) {
            (Scalar::Q(_), Field::Rational) => self.clone(),
            (Scalar::Q(q), Field::Prime(p)) => {
                let n = bigint_mod(q.numer(), p);
                let d = bigint_mod(q.denom(), p);
                assert!(d != 0, "denominator {} vanishes modulo {p}", q.denom());
                Scalar::Fp { v: ((n as u128 * mod_pow(d, p - 2, p) as u128) % p as u128) as u64, p }
            }
            (Scalar::Fp { p, .. }, Field::Prime(p2)) if *p == p2 => self.clone(),
            (Scalar::Fp { p, .. }, f) => panic!("cannot move an element of F_{p} into {f}"),
        }
    }

    pub fn field(&self) -> Option<Field> {
        match self {
            Scalar::Q(_) => None,
            Scalar::Fp { p, .. } => Some(Field::Prime(*p)),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { v, p } => Scalar::Fp { v: mod_pow(*v, p - 2, *p), p: *p },
        })
    }

    /// Brings both operands into a common field.
    fn unify<'a>(a: &'a Scalar, b: &'a Scalar) -> (std::borrow::Cow<'a, Scalar>, std::borrow::Cow<'a, Scalar>) {
        use std::borrow::Cow;
        match (a, b) {
            (Scalar::Q(_), Scalar::Fp { p, .. }) => (Cow::Owned(a.in_field(Field::Prime(*p))), Cow::Borrowed(b)),
            (Scalar::Fp { p, .. }, Scalar::Q(_)) => (Cow::Borrowed(a), Cow::Owned(b.in_field(Field::Prime(*p)))),
            _ => (Cow::Borrowed(a), Cow::Borrowed(b)),
        }
    }

    fn add_ref(&self, other: &Scalar) -> Scalar {
        let (a, b) = Scalar::unify(self, other);
        match (a.as_ref(), b.as_ref()) {
            (Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            (Scalar::Fp { v: x, p }, Scalar::Fp { v: y, p: p2 }) => {
                assert_eq!(p, p2, "mixed prime fields");
                Scalar::Fp { v: ((*x as u128 + *y as u128) % *p as u128) as u64, p: *p }
            }
            _ => unreachable!(),
        }
    }

    fn mul_ref(&self, other: &Scalar) -> Scalar {
        let (a, b) = Scalar::unify(self, other);
        match (a.as_ref(), b.as_ref()) {
            (Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            (Scalar::Fp { v: x, p }, Scalar::Fp { v: y, p: p2 }) => {
                assert_eq!(p, p2, "mixed prime fields");
                Scalar::Fp { v: ((*x as u128 * *y as u128) % *p as u128) as u64, p: *p }
            }
            _ => unreachable!(),
        }
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Q(q) => Scalar::Q(-q),
            Scalar::Fp { v, p } => Scalar::Fp { v: if *v == 0 { 0 } else { p - v }, p: *p },
        }
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self * &i)
    }

    /// Canonical text form: `a` or `a/b` for rationals, the residue for `F_p`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Small integer value if the scalar is one.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(q) if q.is_integer() => q.numer().to_i64(),
            Scalar::Q(_) => None,
            Scalar::Fp { v, .. } => i64::try_from(*v).ok(),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Q(q) if q.is_negative())
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Scalar::unify(self, other);
        match (a.as_ref(), b.as_ref()) {
            (Scalar::Q(x), Scalar::Q(y)) => x == y,
            (Scalar::Fp { v: x, p }, Scalar::Fp { v: y, p: p2 }) => p == p2 && x == y,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Q(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = FmkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || FmkError::Parse { offset: 0, message: format!("invalid scalar `{s}`") };
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Scalar::Q(BigRational::new(n, d)))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_i64(n)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$f(rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$f(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$f(rhs)
            }
        }
    };
}

impl Scalar {
    fn sub_ref(&self, other: &Scalar) -> Scalar {
        self.add_ref(&other.neg_ref())
    }
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = self.add_ref(rhs);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = self.sub_ref(rhs);
    }
}
