//! The Jordan algebra `J_{n+1}(f) = F*1 + V` of a nondegenerate diagonal
//! bilinear form `f = (d_1, ..., d_n)` on `V`.
//!
//! Product: `(a + v)(b + u) = (ab + f(v, u)) * 1 + (a u + b v)`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::{format_list, FieldCtx, Scalar};

/// Largest supported `n = dim V`.
pub const MAX_DIM: usize = 16;

/// Diagonal entries of `f`; `(v, u) = sum d_i v_i u_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct BilinearForm(Vec<Scalar>);

impl BilinearForm {
    pub fn new(ctx: &FieldCtx, d: Vec<Scalar>) -> Result<Self> {
        for (i, x) in d.iter().enumerate() {
            if !ctx.contains(x) {
                return Err(Error::MixedFields);
            }
            if x.is_zero() {
                return Err(Error::DegenerateForm(i + 1));
            }
        }
        Ok(BilinearForm(d))
    }

    pub fn parse(ctx: &FieldCtx, text: &str) -> Result<Self> {
        Self::new(ctx, ctx.parse_list(text)?)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `d_i`, 1-based to match the basis `e_1..e_n`.
    pub fn d(&self, i: usize) -> &Scalar {
        &self.0[i - 1]
    }

    pub fn pair(&self, v: &[Scalar], u: &[Scalar]) -> Result<Scalar> {
        for w in [v, u] {
            if w.len() != self.0.len() {
                return Err(Error::DimensionMismatch { expected: self.0.len(), found: w.len() });
            }
        }
        let mut it = self.0.iter().zip(v).zip(u);
        let Some(((d, a), b)) = it.next() else {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        };
        let first = d.checked_mul(a)?.checked_mul(b)?;
        it.try_fold(first, |acc, ((d, a), b)| acc.checked_add(&d.checked_mul(a)?.checked_mul(b)?))
    }

    /// The restriction of the form to the given 1-based indices.
    pub fn restrict(&self, indices: &[usize]) -> BilinearForm {
        BilinearForm(indices.iter().map(|&i| self.d(i).clone()).collect())
    }
}

impl fmt::Display for BilinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_list(&self.0))
    }
}

/// `bilinear(v, u) = sum d_i v_i u_i`.
pub fn bilinear(v: &[Scalar], u: &[Scalar], form: &BilinearForm) -> Result<Scalar> {
    form.pair(v, u)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliffordAlgebra {
    ctx: FieldCtx,
    form: BilinearForm,
}

/// `alpha * 1 + sum v_i e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AlgebraElement {
    pub alpha: Scalar,
    pub v: Vec<Scalar>,
}

impl CliffordAlgebra {
    pub fn new(ctx: FieldCtx, form: BilinearForm) -> Result<Self> {
        ctx.require_arithmetic()?;
        let n = form.len();
        if n < 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: n });
        }
        if n > MAX_DIM {
            return Err(Error::DimensionMismatch { expected: MAX_DIM, found: n });
        }
        if form.entries().iter().any(|d| !ctx.contains(d)) {
            return Err(Error::MixedFields);
        }
        Ok(CliffordAlgebra { ctx, form })
    }

    /// Convenience constructor from integer entries.
    pub fn from_ints(ctx: &FieldCtx, d: &[i64]) -> Result<Self> {
        let form = BilinearForm::new(ctx, d.iter().map(|&x| ctx.from_i64(x)).collect())?;
        Self::new(ctx.clone(), form)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    /// `n = dim V`; the algebra has dimension `n + 1`.
    pub fn n(&self) -> usize {
        self.form.len()
    }

    pub fn dim(&self) -> usize {
        self.n() + 1
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement { alpha: self.ctx.zero(), v: vec![self.ctx.zero(); self.n()] }
    }

    pub fn one(&self) -> AlgebraElement {
        self.basis(0)
    }

    /// Basis vector `b_i` in the order `1, e_1, ..., e_n`.
    pub fn basis(&self, i: usize) -> AlgebraElement {
        let mut x = self.zero();
        if i == 0 {
            x.alpha = self.ctx.one();
        } else {
            x.v[i - 1] = self.ctx.one();
        }
        x
    }

    /// Element from its coordinates in the basis `1, e_1, ..., e_n`.
    pub fn element(&self, coords: Vec<Scalar>) -> Result<AlgebraElement> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: coords.len() });
        }
        if coords.iter().any(|c| !self.ctx.contains(c)) {
            return Err(Error::MixedFields);
        }
        let mut it = coords.into_iter();
        let alpha = it.next().unwrap();
        Ok(AlgebraElement { alpha, v: it.collect() })
    }

    pub fn element_from_ints(&self, coords: &[i64]) -> Result<AlgebraElement> {
        self.element(coords.iter().map(|&c| self.ctx.from_i64(c)).collect())
    }

    fn check(&self, x: &AlgebraElement) -> Result<()> {
        if x.v.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: x.v.len() });
        }
        if !self.ctx.contains(&x.alpha) || x.v.iter().any(|c| !self.ctx.contains(c)) {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    /// Checked Jordan product.
    pub fn product(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    /// Unchecked product for elements already known to belong here.
    pub(crate) fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let alpha = &x.alpha * &y.alpha + self.form.pair(&x.v, &y.v).expect("element dimension");
        let v = x.v.iter().zip(&y.v).map(|(xv, yv)| &x.alpha * yv + &y.alpha * xv).collect();
        AlgebraElement { alpha, v }
    }

    /// `(t(x), n(x))` with `x^2 - t x + n 1 = 0`: `t = 2 alpha`,
    /// `n = alpha^2 - (v, v)`.
    pub fn trace_norm(&self, x: &AlgebraElement) -> Result<(Scalar, Scalar)> {
        self.check(x)?;
        let t = &x.alpha + &x.alpha;
        let n = x.alpha.square() - self.form.pair(&x.v, &x.v)?;
        Ok((t, n))
    }

    /// Parses `"alpha; v1,v2,...,vn"`.
    pub fn parse_element(&self, text: &str) -> Result<AlgebraElement> {
        let (alpha, v) = text
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected \"alpha; v1,...,vn\", got {text:?}")))?;
        let x = AlgebraElement { alpha: self.ctx.parse_scalar(alpha)?, v: self.ctx.parse_list(v)? };
        self.check(&x)?;
        Ok(x)
    }

    /// The subalgebra `span{1, e_i : i in indices}` as an algebra in its own
    /// right (indices are 1-based).
    pub fn subalgebra(&self, indices: &[usize]) -> Result<CliffordAlgebra> {
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > self.n()) {
            return Err(Error::DimensionMismatch { expected: self.n(), found: bad });
        }
        CliffordAlgebra::new(self.ctx.clone(), self.form.restrict(indices))
    }
}

impl AlgebraElement {
    pub fn coords(&self) -> impl Iterator<Item = &Scalar> {
        std::iter::once(&self.alpha).chain(&self.v)
    }

    /// Coordinate `i` in the basis `1, e_1, ..., e_n`.
    pub fn coord(&self, i: usize) -> &Scalar {
        if i == 0 {
            &self.alpha
        } else {
            &self.v[i - 1]
        }
    }

    pub fn coord_mut(&mut self, i: usize) -> &mut Scalar {
        if i == 0 {
            &mut self.alpha
        } else {
            &mut self.v[i - 1]
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            alpha: &self.alpha + &other.alpha,
            v: self.v.iter().zip(&other.v).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            alpha: &self.alpha - &other.alpha,
            v: self.v.iter().zip(&other.v).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        AlgebraElement { alpha: c * &self.alpha, v: self.v.iter().map(|a| c * a).collect() }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; {}", self.alpha, format_list(&self.v))
    }
}
