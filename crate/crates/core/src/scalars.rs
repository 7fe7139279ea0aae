//! Exact scalars over odd prime fields `Z_p` and the rationals, plus the
//! quadratic-residue primitives (Legendre symbol, table square roots).
//!
//! Two further descriptors, `R` and `Cbar`, name the real and algebraically
//! closed fields. They carry no arithmetic: their form entries are stored as
//! rationals and only the closed-form index table reads them (by sign).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest prime accepted by [`FieldCtx::prime`].
pub const MAX_PRIME: u32 = 97;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    PrimeField(u32),
    Rationals,
    RealSymbolic,
    AlgClosedSymbolic,
}

/// Field descriptor together with its arithmetic context.
///
/// For prime fields the context holds a square-root table: `roots[a]` is the
/// smaller root of `a` (the one in `[0, p/2]`) when `a` is a square.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    kind: FieldKind,
    roots: Option<Arc<[Option<u32>]>>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for FieldCtx {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A field element in canonical form.
///
/// Residues are kept in `[0, p)` next to their modulus so that mixing two
/// prime fields is detected; rationals are always reduced with a positive
/// denominator (guaranteed by `BigRational`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Residue { value: u32, modulus: u32 },
    Rational(BigRational),
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let num = q.numer().sqrt();
    let den = q.denom().sqrt();
    if &(&num * &num) == q.numer() && &(&den * &den) == q.denom() {
        Some(BigRational::new(num, den))
    } else {
        None
    }
}

impl FieldCtx {
    /// `Z_p` for an odd prime `p <= 97`.
    pub fn prime(p: u64) -> Result<Self> {
        if p < 3 || p > MAX_PRIME as u64 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        let p = p as u32;
        let mut roots = vec![None; p as usize];
        for r in 0..=p / 2 {
            let sq = (r * r % p) as usize;
            if roots[sq].is_none() {
                roots[sq] = Some(r);
            }
        }
        Ok(FieldCtx {
            kind: FieldKind::PrimeField(p),
            roots: Some(roots.into()),
        })
    }

    pub fn rationals() -> Self {
        FieldCtx { kind: FieldKind::Rationals, roots: None }
    }

    pub fn real_symbolic() -> Self {
        FieldCtx { kind: FieldKind::RealSymbolic, roots: None }
    }

    pub fn alg_closed_symbolic() -> Self {
        FieldCtx { kind: FieldKind::AlgClosedSymbolic, roots: None }
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn modulus(&self) -> Option<u32> {
        match self.kind {
            FieldKind::PrimeField(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self.kind, FieldKind::RealSymbolic | FieldKind::AlgClosedSymbolic)
    }

    /// Error unless the field supports element arithmetic.
    pub fn require_arithmetic(&self) -> Result<()> {
        if self.is_symbolic() {
            Err(Error::UnsupportedField(format!("{self} has no element arithmetic")))
        } else {
            Ok(())
        }
    }

    fn require_prime(&self) -> Result<u32> {
        self.modulus()
            .ok_or_else(|| Error::UnsupportedField(format!("{self} is not a prime field")))
    }

    /// Whether `a` is represented in this field's storage. Symbolic fields
    /// store their (sign-bearing) labels as rationals.
    pub fn contains(&self, a: &Scalar) -> bool {
        match (self.kind, a) {
            (FieldKind::PrimeField(p), Scalar::Residue { modulus, .. }) => p == *modulus,
            (FieldKind::PrimeField(_), Scalar::Rational(_)) => false,
            (_, Scalar::Rational(_)) => true,
            (_, Scalar::Residue { .. }) => false,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.kind {
            FieldKind::PrimeField(p) => Scalar::Residue {
                value: v.rem_euclid(p as i64) as u32,
                modulus: p,
            },
            _ => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self.kind {
            FieldKind::PrimeField(p) => {
                let pb = BigInt::from(p);
                let num = q.numer().mod_floor(&pb).to_u64().unwrap();
                let den = q.denom().mod_floor(&pb).to_u64().unwrap();
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                let inv = pow_mod(den, p as u64 - 2, p as u64);
                Ok(Scalar::Residue { value: (num * inv % p as u64) as u32, modulus: p })
            }
            _ => Ok(Scalar::Rational(q.clone())),
        }
    }

    /// Parses the canonical text of a scalar: an integer or `num/den`.
    /// Over `Z_p` any rational with denominator prime to `p` is accepted and
    /// reduced.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::Parse(format!("invalid scalar {text:?}"));
        let q = match text.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(text.parse().map_err(|_| bad())?),
        };
        self.from_rational(&q)
    }

    /// Parses a comma-separated list of scalars.
    pub fn parse_list(&self, text: &str) -> Result<Vec<Scalar>> {
        if text.trim().is_empty() {
            return Ok(Vec::new());
        }
        text.split(',').map(|s| self.parse_scalar(s)).collect()
    }

    /// Exact field operation `a op b`.
    pub fn arith(&self, a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
        self.require_arithmetic()?;
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::MixedFields);
        }
        match op {
            ArithOp::Add => a.checked_add(b),
            ArithOp::Sub => a.checked_sub(b),
            ArithOp::Mul => a.checked_mul(b),
            ArithOp::Div => a.checked_div(b),
        }
    }

    /// Legendre symbol of `a` modulo `p`.
    pub fn legendre(&self, a: &Scalar) -> Result<i8> {
        let p = self.require_prime()?;
        let v = self.residue_of(a, p)?;
        Ok(match (v, self.table_root(v)) {
            (0, _) => 0,
            (_, Some(_)) => 1,
            (_, None) => -1,
        })
    }

    /// Square root from the table: the representative in `[0, p/2]`.
    pub fn sqrt_mod(&self, a: &Scalar) -> Result<Option<Scalar>> {
        let p = self.require_prime()?;
        let v = self.residue_of(a, p)?;
        Ok(self.table_root(v).map(|r| Scalar::Residue { value: r, modulus: p }))
    }

    /// Square root in either arithmetic field: table lookup over `Z_p`,
    /// perfect-square test over the rationals.
    pub fn sqrt(&self, a: &Scalar) -> Result<Option<Scalar>> {
        match self.kind {
            FieldKind::PrimeField(_) => self.sqrt_mod(a),
            FieldKind::Rationals => match a {
                Scalar::Rational(q) => Ok(rational_sqrt(q).map(Scalar::Rational)),
                Scalar::Residue { .. } => Err(Error::MixedFields),
            },
            _ => self.require_arithmetic().map(|_| None),
        }
    }

    /// `p mod 4`, which is 1 or 3 for an odd prime.
    pub fn p_mod4_class(&self) -> Result<u32> {
        Ok(self.require_prime()? % 4)
    }

    /// All residues `0..p` in canonical order.
    pub fn elements(&self) -> Result<impl Iterator<Item = Scalar>> {
        let p = self.require_prime()?;
        Ok((0..p).map(move |value| Scalar::Residue { value, modulus: p }))
    }

    /// Raw root table lookup for a residue already reduced mod `p`.
    pub(crate) fn table_root(&self, v: u32) -> Option<u32> {
        self.roots.as_ref().and_then(|t| t[v as usize])
    }

    fn residue_of(&self, a: &Scalar, p: u32) -> Result<u32> {
        match a {
            Scalar::Residue { value, modulus } if *modulus == p => Ok(*value),
            _ => Err(Error::MixedFields),
        }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::PrimeField(p) => write!(f, "Zp:{p}"),
            FieldKind::Rationals => f.write_str("Q"),
            FieldKind::RealSymbolic => f.write_str("R"),
            FieldKind::AlgClosedSymbolic => f.write_str("Cbar"),
        }
    }
}

impl FromStr for FieldCtx {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q" => Ok(Self::rationals()),
            "R" => Ok(Self::real_symbolic()),
            "Cbar" => Ok(Self::alg_closed_symbolic()),
            _ => {
                let p = s
                    .strip_prefix("Zp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown field descriptor {s:?}")))?;
                Self::prime(p)
            }
        }
    }
}

impl Serialize for FieldCtx {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Residue { value, .. } => *value == 0,
            Scalar::Rational(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Residue { value, .. } => *value == 1,
            Scalar::Rational(q) => q.is_one(),
        }
    }

    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }

    /// Sign of a rational scalar; `None` for residues, which are unordered.
    pub fn sign(&self) -> Option<Ordering> {
        self.as_rational().map(|q| q.cmp(&BigRational::zero()))
    }

    fn zip_residue(&self, other: &Scalar) -> Result<Option<(u64, u64, u64)>> {
        match (self, other) {
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                if p == q {
                    Ok(Some((*a as u64, *b as u64, *p as u64)))
                } else {
                    Err(Error::MixedFields)
                }
            }
            (Scalar::Rational(_), Scalar::Rational(_)) => Ok(None),
            _ => Err(Error::MixedFields),
        }
    }

    fn residue_result(v: u64, p: u64) -> Scalar {
        Scalar::Residue { value: (v % p) as u32, modulus: p as u32 }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        Ok(match self.zip_residue(other)? {
            Some((a, b, p)) => Self::residue_result(a + b, p),
            None => Scalar::Rational(self.as_rational().unwrap() + other.as_rational().unwrap()),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        Ok(match self.zip_residue(other)? {
            Some((a, b, p)) => Self::residue_result(a + p - b, p),
            None => Scalar::Rational(self.as_rational().unwrap() - other.as_rational().unwrap()),
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        Ok(match self.zip_residue(other)? {
            Some((a, b, p)) => Self::residue_result(a * b, p),
            None => Scalar::Rational(self.as_rational().unwrap() * other.as_rational().unwrap()),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        if other.is_zero() {
            // still report a field mismatch first
            self.zip_residue(other)?;
            return Err(Error::DivisionByZero);
        }
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Residue { value, modulus } => {
                let p = *modulus as u64;
                Self::residue_result(pow_mod(*value as u64, p - 2, p), p)
            }
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
        })
    }

    pub fn square(&self) -> Scalar {
        self * self
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
            Scalar::Rational(q) => Scalar::Rational(-q),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

// Operator sugar for code whose scalars were validated against one field at
// construction time; a mismatch here is a bug, so these panic.
macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect(concat!("scalar ", stringify!($method)))
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);
scalar_binop!(Div, div, checked_div);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Residue { value, .. } => write!(f, "{value}"),
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Renders scalars as a comma-separated list, the inverse of
/// [`FieldCtx::parse_list`].
pub fn format_list(xs: &[Scalar]) -> String {
    xs.iter().map(Scalar::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(p: u64) -> FieldCtx {
        FieldCtx::prime(p).unwrap()
    }

    #[test]
    fn arith_examples() {
        let f7 = zp(7);
        let r = f7.arith(&f7.from_i64(3), &f7.from_i64(5), ArithOp::Mul).unwrap();
        assert_eq!(r, f7.from_i64(1));

        let q = FieldCtx::rationals();
        let a = q.parse_scalar("2/3").unwrap();
        let b = q.parse_scalar("1/6").unwrap();
        assert_eq!(q.arith(&a, &b, ArithOp::Add).unwrap(), q.parse_scalar("5/6").unwrap());

        let f5 = zp(5);
        let r = f5.arith(&f5.from_i64(2), &f5.from_i64(3), ArithOp::Div).unwrap();
        assert_eq!(r, f5.from_i64(4));
    }

    #[test]
    fn arith_errors() {
        let f5 = zp(5);
        let f7 = zp(7);
        assert!(matches!(
            f5.arith(&f5.one(), &f5.zero(), ArithOp::Div),
            Err(Error::DivisionByZero)
        ));
        assert!(matches!(
            f5.arith(&f5.one(), &f7.one(), ArithOp::Add),
            Err(Error::MixedFields)
        ));
        assert!(matches!(
            f5.one().checked_mul(&FieldCtx::rationals().one()),
            Err(Error::MixedFields)
        ));
        let r = FieldCtx::real_symbolic();
        assert!(matches!(
            r.arith(&r.one(), &r.one(), ArithOp::Add),
            Err(Error::UnsupportedField(_))
        ));
    }

    #[test]
    fn prime_validation() {
        for bad in [0, 1, 2, 4, 9, 91, 101] {
            assert!(FieldCtx::prime(bad).is_err(), "{bad}");
        }
        for good in [3, 5, 7, 11, 13, 97] {
            assert!(FieldCtx::prime(good).is_ok(), "{good}");
        }
    }

    #[test]
    fn legendre_examples() {
        let f7 = zp(7);
        assert_eq!(f7.legendre(&f7.from_i64(2)).unwrap(), 1);
        assert_eq!(f7.legendre(&f7.from_i64(-1)).unwrap(), -1);
        let f5 = zp(5);
        assert_eq!(f5.legendre(&f5.zero()).unwrap(), 0);
        assert!(matches!(
            FieldCtx::rationals().legendre(&FieldCtx::rationals().one()),
            Err(Error::UnsupportedField(_))
        ));
    }

    #[test]
    fn sqrt_examples() {
        let f7 = zp(7);
        assert_eq!(f7.sqrt_mod(&f7.from_i64(2)).unwrap(), Some(f7.from_i64(3)));
        let f5 = zp(5);
        assert_eq!(f5.sqrt_mod(&f5.zero()).unwrap(), Some(f5.zero()));
        assert_eq!(f5.sqrt_mod(&f5.from_i64(3)).unwrap(), None);
        assert!(FieldCtx::rationals().sqrt_mod(&FieldCtx::rationals().one()).is_err());

        let q = FieldCtx::rationals();
        assert_eq!(
            q.sqrt(&q.parse_scalar("9/4").unwrap()).unwrap(),
            Some(q.parse_scalar("3/2").unwrap())
        );
        assert_eq!(q.sqrt(&q.from_i64(2)).unwrap(), None);
        assert_eq!(q.sqrt(&q.from_i64(-4)).unwrap(), None);
    }

    #[test]
    fn mod4_examples() {
        assert_eq!(zp(5).p_mod4_class().unwrap(), 1);
        assert_eq!(zp(7).p_mod4_class().unwrap(), 3);
        assert_eq!(zp(13).p_mod4_class().unwrap(), 1);
        assert!(FieldCtx::rationals().p_mod4_class().is_err());
    }

    #[test]
    fn legendre_is_multiplicative() {
        for p in [3, 5, 7, 11, 13] {
            let f = zp(p);
            let nonzero: Vec<_> = f.elements().unwrap().skip(1).collect();
            for a in &nonzero {
                for b in &nonzero {
                    let lhs = f.legendre(&(a * b)).unwrap();
                    let rhs = f.legendre(a).unwrap() * f.legendre(b).unwrap();
                    assert_eq!(lhs, rhs, "p={p} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn minus_one_is_square_iff_p_is_1_mod_4() {
        for p in [3, 5, 7, 11, 13] {
            let f = zp(p);
            let is_square = f.legendre(&f.from_i64(-1)).unwrap() == 1;
            assert_eq!(is_square, p % 4 == 1, "p={p}");
        }
    }

    #[test]
    fn sqrt_agrees_with_legendre() {
        for p in [3, 5, 7, 11, 13, 97] {
            let f = zp(p);
            for a in f.elements().unwrap() {
                let root = f.sqrt_mod(&a).unwrap();
                assert_eq!(root.is_some(), f.legendre(&a).unwrap() >= 0);
                if let Some(r) = root {
                    assert_eq!(r.square(), a);
                    assert!(r.residue().unwrap() <= p as u32 / 2);
                }
            }
        }
    }

    #[test]
    fn descriptor_round_trip() {
        for text in ["Zp:7", "Q", "R", "Cbar", "Zp:97"] {
            assert_eq!(text.parse::<FieldCtx>().unwrap().to_string(), text);
        }
        for bad in ["Zp:8", "q", "Zp:", "Z7", "Zp:2"] {
            assert!(bad.parse::<FieldCtx>().is_err(), "{bad}");
        }
    }

    #[test]
    fn scalar_text() {
        let f7 = zp(7);
        assert_eq!(f7.parse_scalar("-1").unwrap().to_string(), "6");
        assert_eq!(f7.parse_scalar("1/2").unwrap().to_string(), "4");
        assert!(matches!(f7.parse_scalar("1/7"), Err(Error::DivisionByZero)));
        let q = FieldCtx::rationals();
        assert_eq!(q.parse_scalar("4/-6").unwrap().to_string(), "-2/3");
        assert_eq!(q.parse_scalar("3").unwrap().to_string(), "3");
        assert!(q.parse_scalar("x").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn rationals_agree_with_integers(a in -10_000i64..10_000, b in -10_000i64..10_000) {
                let q = FieldCtx::rationals();
                let (x, y) = (q.from_i64(a), q.from_i64(b));
                prop_assert_eq!(&x + &y, q.from_i64(a + b));
                prop_assert_eq!(&x - &y, q.from_i64(a - b));
                prop_assert_eq!(&x * &y, q.from_i64(a * b));
            }

            #[test]
            fn residues_agree_with_integers(a in -1000i64..1000, b in -1000i64..1000, pi in 0usize..5) {
                let p = [3u64, 5, 7, 11, 97][pi];
                let f = FieldCtx::prime(p).unwrap();
                let (x, y) = (f.from_i64(a), f.from_i64(b));
                prop_assert_eq!(&x * &y, f.from_i64(a * b));
                prop_assert_eq!(&x - &y, f.from_i64(a - b));
                if !y.is_zero() {
                    prop_assert_eq!(&(&x / &y) * &y, x);
                }
            }
        }
    }
}
