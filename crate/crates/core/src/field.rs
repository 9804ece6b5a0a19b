//! Exact scalars over the rationals and over prime fields `F_p` with `p >= 5`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest accepted prime modulus. Residues then multiply without overflow in `u64`.
pub const MAX_MODULUS: u64 = u32::MAX as u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    /// Prime field `F_p`. Rejects composites and `p < 5`, since 2 and 3 must be invertible.
    pub fn prime(p: u64) -> Result<Self> {
        if p < 5 {
            return Err(Error::InvalidField(format!(
                "modulus {p} too small: 2 and 3 must be invertible, need p >= 5"
            )));
        }
        if p > MAX_MODULUS {
            return Err(Error::InvalidField(format!(
                "modulus {p} exceeds {MAX_MODULUS}"
            )));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("modulus {p} is not prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            FieldSpec::Rational => None,
            FieldSpec::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Scalar::Prime {
                value: reduce_i64(v, p),
                modulus: p,
            },
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    pub fn parse(&self, text: &str) -> Result<Scalar> {
        Scalar::parse(*self, text)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
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

fn reduce_i64(v: i64, p: u64) -> u64 {
    (v as i128).rem_euclid(p as i128) as u64
}

fn reduce_big(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

/// Modular inverse by the extended Euclidean algorithm; `None` for zero.
pub(crate) fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// An exact field element. Representations are canonical: reduced fractions with
/// positive denominator, or residues in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

/// Checked arithmetic entry point; `b` is required for binary operations and ignored otherwise.
pub fn scalar_arith(op: ArithOp, a: &Scalar, b: Option<&Scalar>) -> Result<Scalar> {
    let need_b = || b.ok_or_else(|| Error::Parse(format!("{op:?} needs a second operand")));
    match op {
        ArithOp::Add => a.checked_add(need_b()?),
        ArithOp::Sub => a.checked_sub(need_b()?),
        ArithOp::Mul => a.checked_mul(need_b()?),
        ArithOp::Div => a.checked_div(need_b()?),
        ArithOp::Neg => Ok(-a),
        ArithOp::Inv => a.inv(),
    }
}

impl Scalar {
    pub fn spec(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Prime { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    /// Parses `-?[0-9]+(/[0-9]+)?` into the given field.
    pub fn parse(spec: FieldSpec, text: &str) -> Result<Scalar> {
        let bad = || {
            Error::Parse(format!(
                "`{text}` is not a scalar of the form -?[0-9]+(/[0-9]+)?"
            ))
        };
        let (num_text, den_text) = match text.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (text, None),
        };
        let digits = num_text.strip_prefix('-').unwrap_or(num_text);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if let Some(d) = den_text {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
        }
        let num: BigInt = num_text.parse().map_err(|_| bad())?;
        let den: BigInt = match den_text {
            Some(d) => d.parse().map_err(|_| bad())?,
            None => BigInt::one(),
        };
        match spec {
            FieldSpec::Rational => {
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            FieldSpec::Prime(p) => {
                let d = reduce_big(&den, p);
                let dinv = inv_mod(d, p).ok_or(Error::DivisionByZero)?;
                Ok(Scalar::Prime {
                    value: reduce_big(&num, p) * dinv % p,
                    modulus: p,
                })
            }
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.spec() == other.spec() {
            Ok(())
        } else {
            Err(Error::MixedFields(
                self.spec().to_string(),
                other.spec().to_string(),
            ))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self * other)
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Prime { value, modulus } => inv_mod(*value, *modulus)
                .map(|value| Scalar::Prime {
                    value,
                    modulus: *modulus,
                })
                .ok_or(Error::DivisionByZero),
        }
    }

    /// Multiplies by a small integer.
    pub fn scale(&self, k: i64) -> Scalar {
        self * &self.spec().from_i64(k)
    }

    /// Sign of a rational value; residues are reported as non-negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Prime { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mixed(a: &Scalar, b: &Scalar) -> ! {
    panic!(
        "scalar arithmetic across fields: {} vs {}",
        a.spec(),
        b.spec()
    )
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Prime {
                    value: a,
                    modulus: p,
                },
                Scalar::Prime {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Scalar::Prime {
                value: (a + b) % p,
                modulus: *p,
            },
            _ => mixed(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Prime {
                    value: a,
                    modulus: p,
                },
                Scalar::Prime {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Scalar::Prime {
                value: a * b % p,
                modulus: *p,
            },
            _ => mixed(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(t: &str) -> Scalar {
        Scalar::parse(FieldSpec::Rational, t).unwrap()
    }

    #[test]
    fn rational_add() {
        assert_eq!(q("1/2") + q("1/3"), q("5/6"));
        assert_eq!(q("1/2").to_string(), "1/2");
    }

    #[test]
    fn prime_inverse() {
        let f7 = FieldSpec::prime(7).unwrap();
        let three = f7.from_i64(3);
        assert_eq!(three.inv().unwrap(), f7.from_i64(5));
        let r = scalar_arith(ArithOp::Inv, &three, None).unwrap();
        assert_eq!(r.to_string(), "5");
    }

    #[test]
    fn division_by_zero() {
        let x = q("3");
        assert_eq!(
            scalar_arith(ArithOp::Div, &x, Some(&q("0"))),
            Err(Error::DivisionByZero)
        );
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_fields_rejected() {
        let f7 = FieldSpec::prime(7).unwrap();
        let r = q("1").checked_add(&f7.one());
        assert!(matches!(r, Err(Error::MixedFields(..))));
    }

    #[test]
    fn parsing() {
        assert_eq!(q("-6/4").to_string(), "-3/2");
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.parse("10").unwrap().to_string(), "3");
        assert_eq!(f7.parse("-1").unwrap().to_string(), "6");
        assert_eq!(f7.parse("1/3").unwrap().to_string(), "5");
        assert_eq!(f7.parse("1/7"), Err(Error::DivisionByZero));
        assert_eq!(FieldSpec::Rational.parse("2/0"), Err(Error::DivisionByZero));
        for bad in ["", "-", "1/", "/2", "1.5", "+3", "1/-2", " 1", "0x10"] {
            assert!(
                matches!(FieldSpec::Rational.parse(bad), Err(Error::Parse(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn small_and_composite_moduli_rejected() {
        for p in [0, 1, 2, 3, 4, 9, 15, 25] {
            assert!(FieldSpec::prime(p).is_err(), "{p}");
        }
        for p in [5, 7, 11, 101, 65537] {
            let f = FieldSpec::prime(p).unwrap();
            assert!(!f.from_i64(2).is_zero() && !f.from_i64(3).is_zero());
            f.from_i64(2).inv().unwrap();
            f.from_i64(3).inv().unwrap();
        }
    }

    fn field_strategy() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![
            Just(FieldSpec::Rational),
            Just(FieldSpec::Prime(7)),
            Just(FieldSpec::Prime(101)),
        ]
    }

    fn scalar_in(spec: FieldSpec) -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20)
            .prop_map(move |(n, d)| spec.from_ratio(n, d).unwrap_or_else(|_| spec.from_i64(n)))
    }

    fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
        field_strategy().prop_flat_map(|f| (scalar_in(f), scalar_in(f), scalar_in(f)))
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in triple()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn print_parse_roundtrip((a, _, _) in triple()) {
            let text = a.to_string();
            let back = Scalar::parse(a.spec(), &text).unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
