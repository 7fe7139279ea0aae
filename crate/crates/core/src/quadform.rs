//! Constructive solvers for diagonal quadratic forms `sum d_i x_i^2`.
//!
//! Over `Z_p` every question is settled by enumeration (`p <= 97`); ternary
//! forms are always isotropic there, so the solvers never come back empty for
//! three or more variables. Over the rationals only the binary and unary cases
//! are decided exactly; larger forms get a height-bounded search whose failure
//! is reported as [`Solution::Undecided`].

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::{rational_sqrt, FieldCtx, FieldKind, Scalar};

/// Default height bound for the rational searches.
pub const DEFAULT_HEIGHT_BOUND: u64 = 1000;

/// Outcome of a solver that may be unable to decide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "value", rename_all = "lowercase")]
pub enum Solution<T> {
    Found(T),
    Absent,
    Undecided,
}

impl<T> Solution<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Solution::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Solution::Found(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Solution<U> {
        match self {
            Solution::Found(t) => Solution::Found(f(t)),
            Solution::Absent => Solution::Absent,
            Solution::Undecided => Solution::Undecided,
        }
    }
}

/// A nondegenerate diagonal form `(d_1, ..., d_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalForm {
    ctx: FieldCtx,
    d: Vec<Scalar>,
}

impl DiagonalForm {
    pub fn new(ctx: FieldCtx, d: Vec<Scalar>) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        for (i, x) in d.iter().enumerate() {
            if !ctx.contains(x) {
                return Err(Error::MixedFields);
            }
            if x.is_zero() {
                return Err(Error::DegenerateForm(i + 1));
            }
        }
        Ok(DiagonalForm { ctx, d })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.d
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    /// `sum d_i x_i^2`.
    pub fn evaluate(&self, x: &[Scalar]) -> Result<Scalar> {
        self.ctx.require_arithmetic()?;
        if x.len() != self.d.len() {
            return Err(Error::DimensionMismatch { expected: self.d.len(), found: x.len() });
        }
        x.iter().zip(&self.d).try_fold(self.ctx.zero(), |acc, (xi, di)| {
            acc.checked_add(&di.checked_mul(&xi.checked_mul(xi)?)?)
        })
    }
}

/// Nonzero `x` with `sum d_i x_i^2 = 0`, searching rationals up to the
/// default height bound.
pub fn isotropic_vector(form: &DiagonalForm) -> Result<Solution<Vec<Scalar>>> {
    isotropic_vector_bounded(form, DEFAULT_HEIGHT_BOUND)
}

/// As [`isotropic_vector`] with an explicit rational height bound (ignored
/// over `Z_p`).
///
/// Over `Z_p` the answer is the lexicographically smallest solution when
/// `m <= 3`; for `m > 3` the ternary subform on the first three coordinates
/// is solved and the rest padded with zeros.
pub fn isotropic_vector_bounded(form: &DiagonalForm, bound: u64) -> Result<Solution<Vec<Scalar>>> {
    let ctx = form.ctx();
    let m = form.len();
    match ctx.kind() {
        FieldKind::PrimeField(p) => {
            if m == 1 {
                return Ok(Solution::Absent);
            }
            let k = m.min(3);
            let d: Vec<u32> = form.d[..k].iter().map(|x| x.residue().unwrap()).collect();
            Ok(match fp_isotropic(ctx, p, &d) {
                Some(x) => Solution::Found(pad(ctx, x, m)),
                None => Solution::Absent,
            })
        }
        FieldKind::Rationals => {
            let d: Vec<&BigRational> = form.d.iter().map(|x| x.as_rational().unwrap()).collect();
            match m {
                1 => Ok(Solution::Absent),
                2 => {
                    // d1 x^2 + d2 y^2 = 0 has a nonzero solution iff -d2/d1 is a square
                    let ratio = -(d[1] / d[0]);
                    Ok(match rational_sqrt(&ratio) {
                        Some(s) => Solution::Found(vec![Scalar::Rational(s), ctx.one()]),
                        None => Solution::Absent,
                    })
                }
                _ => Ok(
                    match rational_ternary_search(&[d[0], d[1], d[2]], bound, |_| true) {
                        Some(v) => Solution::Found(pad(ctx, v.into_iter().map(int_scalar).collect(), m)),
                        None => Solution::Undecided,
                    },
                ),
            }
        }
        _ => Err(Error::UnsupportedField(format!("{ctx} has no element arithmetic"))),
    }
}

/// `(x, y)` with `a x^2 + b y^2 = c` over `Z_p`, lexicographically smallest.
pub fn represent(a: &Scalar, b: &Scalar, c: &Scalar, ctx: &FieldCtx) -> Result<Option<(Scalar, Scalar)>> {
    let p = ctx
        .modulus()
        .ok_or_else(|| Error::UnsupportedField(format!("{ctx} is not a prime field")))?;
    for s in [a, b, c] {
        if !ctx.contains(s) {
            return Err(Error::MixedFields);
        }
        if s.is_zero() {
            return Err(Error::ConstraintViolated("represent needs nonzero a, b, c".into()));
        }
    }
    let (a, c) = (a.residue().unwrap() as u64, c.residue().unwrap() as u64);
    let b_inv = b.inv()?.residue().unwrap() as u64;
    let p64 = p as u64;
    for x in 0..p64 {
        let rest = (c + p64 * p64 - a * x % p64 * x % p64) % p64 * b_inv % p64;
        if let Some(y) = ctx.table_root(rest as u32) {
            return Ok(Some((ctx.from_i64(x as i64), ctx.from_i64(y as i64))));
        }
    }
    Ok(None)
}

/// `l` with `sum d_i l_i^2 = 1`.
pub fn unit_representation(form: &DiagonalForm) -> Result<Solution<Vec<Scalar>>> {
    unit_representation_bounded(form, DEFAULT_HEIGHT_BOUND)
}

pub fn unit_representation_bounded(form: &DiagonalForm, bound: u64) -> Result<Solution<Vec<Scalar>>> {
    let ctx = form.ctx();
    let m = form.len();
    let d = form.coefficients();
    ctx.require_arithmetic()?;
    if m == 1 {
        let target = d[0].inv()?;
        return Ok(match ctx.sqrt(&target)? {
            Some(l) => Solution::Found(vec![l]),
            None => Solution::Absent,
        });
    }
    match ctx.kind() {
        FieldKind::PrimeField(_) => Ok(match represent(&d[0], &d[1], &ctx.one(), ctx)? {
            Some((x, y)) => Solution::Found(pad(ctx, vec![x, y], m)),
            None => Solution::Absent,
        }),
        _ => {
            // d1 x^2 + d2 y^2 - z^2 = 0 with z != 0 gives l = (x/z, y/z)
            let minus_one = -BigRational::one();
            let coeffs = [d[0].as_rational().unwrap(), d[1].as_rational().unwrap(), &minus_one];
            Ok(match rational_ternary_search(&coeffs, bound, |v| v[2] != 0) {
                Some(v) => {
                    let z = BigRational::from_integer(BigInt::from(v[2]));
                    let l = v[..2]
                        .iter()
                        .map(|x| Scalar::Rational(BigRational::from_integer(BigInt::from(*x)) / &z))
                        .collect();
                    Solution::Found(pad(ctx, l, m))
                }
                None => Solution::Undecided,
            })
        }
    }
}

fn pad(ctx: &FieldCtx, mut x: Vec<Scalar>, m: usize) -> Vec<Scalar> {
    x.resize(m, ctx.zero());
    x
}

fn int_scalar(v: i128) -> Scalar {
    Scalar::Rational(BigRational::from_integer(BigInt::from(v)))
}

/// Lexicographically smallest nonzero solution of `sum d_i x_i^2 = 0` over
/// `Z_p`: the prefix is enumerated in order and the last coordinate is read
/// off the root table.
fn fp_isotropic(ctx: &FieldCtx, p: u32, d: &[u32]) -> Option<Vec<Scalar>> {
    let p64 = p as u64;
    let k = d.len();
    let last_inv = ctx.from_i64(d[k - 1] as i64).inv().ok()?.residue().unwrap() as u64;
    let mut prefix = vec![0u64; k - 1];
    loop {
        if prefix.iter().any(|&x| x != 0) {
            let partial: u64 = prefix.iter().zip(d).map(|(x, di)| *di as u64 * (x * x % p64) % p64).sum();
            // d_k z^2 = -partial
            let target = (p64 - partial % p64) % p64 * last_inv % p64;
            if let Some(r) = ctx.table_root(target as u32) {
                let mut out: Vec<Scalar> = prefix.iter().map(|&x| ctx.from_i64(x as i64)).collect();
                out.push(ctx.from_i64(r as i64));
                return Some(out);
            }
        }
        // odometer, last prefix coordinate fastest
        let mut i = k - 1;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            prefix[i] += 1;
            if prefix[i] < p64 {
                break;
            }
            prefix[i] = 0;
        }
    }
}

/// Order key for integers in search order `0, 1, -1, 2, -2, ...`.
fn order_key(x: i128) -> u128 {
    if x > 0 {
        (2 * x - 1) as u128
    } else {
        (2 * -x) as u128
    }
}

/// Height-bounded search for a nonzero integer vector with
/// `c0 x^2 + c1 y^2 + c2 z^2 = 0`, where `|x|, |y| <= bound` and `z` is solved
/// exactly. Returns the solution minimal in (height, lexicographic order).
/// Only solutions accepted by `accept` are considered.
pub(crate) fn rational_ternary_search(
    c: &[&BigRational; 3],
    bound: u64,
    accept: impl Fn(&[i128; 3]) -> bool,
) -> Option<[i128; 3]> {
    // clear denominators: scaling the form does not change its zeros
    let lcm = c.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Option<Vec<i128>> = c.iter().map(|q| (q.numer() * (&lcm / q.denom())).to_i128()).collect();
    let [a, b, cz]: [i128; 3] = ints?.try_into().ok()?;
    let bound = bound.min(i64::MAX as u64) as i128;

    let mut best: Option<(i128, [u128; 3], [i128; 3])> = None;
    for h in 0..=bound {
        for x in -h..=h {
            let ys: Vec<i128> = if x.abs() == h { (-h..=h).collect() } else { vec![-h, h] };
            for y in ys {
                let Some(z) = solve_last(a, b, cz, x, y) else { continue };
                let v = [x, y, z];
                if v == [0, 0, 0] || !accept(&v) {
                    continue;
                }
                let height = v.iter().map(|t| t.abs()).max().unwrap();
                let key = [order_key(x), order_key(y), order_key(z)];
                if best.as_ref().map_or(true, |(bh, bk, _)| (height, key) < (*bh, *bk)) {
                    best = Some((height, key, v));
                }
            }
        }
        if let Some((height, _, v)) = &best {
            // later shells only contain heights > h
            if *height <= h {
                return Some(*v);
            }
        }
    }
    best.map(|(_, _, v)| v)
}

/// The smallest-order integer `z` with `a x^2 + b y^2 + c z^2 = 0`, if any.
fn solve_last(a: i128, b: i128, c: i128, x: i128, y: i128) -> Option<i128> {
    let s = a.checked_mul(x.checked_mul(x)?)?.checked_add(b.checked_mul(y.checked_mul(y)?)?)?;
    let t = s.checked_neg()?;
    if t % c != 0 {
        return None;
    }
    let q = t / c;
    if q < 0 {
        return None;
    }
    let r = (q as u128).sqrt();
    (r * r == q as u128).then_some(r as i128)
}

/// Whether the form is definite over the reals (all coefficients share a sign).
pub fn is_definite(form: &DiagonalForm) -> bool {
    let signs: Vec<_> = form.d.iter().filter_map(|x| x.as_rational()).map(|q| q.is_positive()).collect();
    signs.len() == form.len() && (signs.iter().all(|&s| s) || signs.iter().all(|&s| !s))
}
