//! Linear operators on `J_{n+1}(f)` and the Rota-Baxter identity
//!
//! ```text
//! R(x) R(y) = R( R(x) y + x R(y) + lambda x y )
//! ```
//!
//! Operators are dense: column `j` is the image of the basis vector `b_j` in
//! the order `1, e_1, ..., e_n`.

mod diagnostics;
mod file;
pub(crate) mod linalg;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::jordan::{AlgebraElement, CliffordAlgebra};
use crate::scalars::Scalar;

pub use diagnostics::{check_remark2, lemma_diagnostics, Flag, LemmaFlags};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinOperator {
    algebra: CliffordAlgebra,
    cols: Vec<AlgebraElement>,
}

impl LinOperator {
    pub fn zero(algebra: &CliffordAlgebra) -> Self {
        LinOperator { algebra: algebra.clone(), cols: vec![algebra.zero(); algebra.dim()] }
    }

    pub fn identity(algebra: &CliffordAlgebra) -> Self {
        let cols = (0..algebra.dim()).map(|i| algebra.basis(i)).collect();
        LinOperator { algebra: algebra.clone(), cols }
    }

    /// Operator from the images of `1, e_1, ..., e_n`.
    pub fn from_columns(algebra: &CliffordAlgebra, cols: Vec<AlgebraElement>) -> Result<Self> {
        if cols.len() != algebra.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), found: cols.len() });
        }
        let cols = cols
            .into_iter()
            .map(|c| algebra.element(c.coords().cloned().collect()))
            .collect::<Result<_>>()?;
        Ok(LinOperator { algebra: algebra.clone(), cols })
    }

    /// Operator from matrix rows: `rows[i][j]` is the `b_i` coordinate of
    /// `R(b_j)`.
    pub fn from_rows(algebra: &CliffordAlgebra, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let dim = algebra.dim();
        if rows.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: rows.len() });
        }
        if let Some(r) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: r.len() });
        }
        let cols = (0..dim)
            .map(|j| algebra.element(rows.iter().map(|r| r[j].clone()).collect()))
            .collect::<Result<_>>()?;
        Ok(LinOperator { algebra: algebra.clone(), cols })
    }

    pub fn from_int_rows(algebra: &CliffordAlgebra, rows: &[&[i64]]) -> Result<Self> {
        let ctx = algebra.ctx();
        let rows = rows.iter().map(|r| r.iter().map(|&x| ctx.from_i64(x)).collect()).collect();
        Self::from_rows(algebra, rows)
    }

    pub fn algebra(&self) -> &CliffordAlgebra {
        &self.algebra
    }

    /// `R(b_j)`.
    pub fn column(&self, j: usize) -> &AlgebraElement {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[AlgebraElement] {
        &self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        self.cols[j].coord(i)
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.algebra.dim())
            .map(|i| self.cols.iter().map(|c| c.coord(i).clone()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(AlgebraElement::is_zero)
    }

    /// Matrix-vector action in the fixed basis.
    pub fn apply(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        if x.v.len() != self.algebra.n() {
            return Err(Error::DimensionMismatch { expected: self.algebra.n(), found: x.v.len() });
        }
        if x.coords().any(|c| !self.algebra.ctx().contains(c)) {
            return Err(Error::MixedFields);
        }
        Ok(self.act(x))
    }

    pub(crate) fn act(&self, x: &AlgebraElement) -> AlgebraElement {
        x.coords()
            .zip(&self.cols)
            .filter(|(c, _)| !c.is_zero())
            .fold(self.algebra.zero(), |acc, (c, col)| acc.add(&col.scale(c)))
    }

    /// `self o other`.
    pub fn compose(&self, other: &LinOperator) -> LinOperator {
        LinOperator {
            algebra: self.algebra.clone(),
            cols: other.cols.iter().map(|c| self.act(c)).collect(),
        }
    }

    pub fn power(&self, k: u32) -> LinOperator {
        (0..k).fold(LinOperator::identity(&self.algebra), |acc, _| self.compose(&acc))
    }

    /// Same matrix, reinterpreted on another algebra of the same dimension
    /// and field.
    pub fn with_algebra(&self, algebra: &CliffordAlgebra) -> Result<LinOperator> {
        Self::from_columns(algebra, self.cols.clone())
    }
}

impl Serialize for LinOperator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LinOperator", 3)?;
        st.serialize_field("field", self.algebra.ctx())?;
        st.serialize_field("form", self.algebra.form())?;
        st.serialize_field("rows", &self.rows())?;
        st.end()
    }
}

/// Verdict of [`check_rb`].
#[derive(Clone, Debug, Serialize)]
pub struct RBReport {
    pub is_rb: bool,
    pub weight: Scalar,
    /// Ordered basis index pairs `(i, j)` whose residual is nonzero.
    pub failing_pairs: Vec<(usize, usize)>,
    pub nilpotency_index: Option<usize>,
    pub lemma_flags: LemmaFlags,
}

/// `R(x)R(y) - R(R(x)y + xR(y) + lambda xy)`.
pub fn rb_residual(r: &LinOperator, x: &AlgebraElement, y: &AlgebraElement, weight: &Scalar) -> AlgebraElement {
    let j = r.algebra();
    let (rx, ry) = (r.act(x), r.act(y));
    let lhs = j.mul(&rx, &ry);
    let mut inner = j.mul(&rx, y).add(&j.mul(x, &ry));
    if !weight.is_zero() {
        inner = inner.add(&j.mul(x, y).scale(weight));
    }
    lhs.sub(&r.act(&inner))
}

/// Checks the Rota-Baxter identity of the given weight on every ordered pair
/// of basis vectors, which suffices by bilinearity.
///
/// `weight` must belong to the operator's field.
pub fn check_rb(r: &LinOperator, weight: &Scalar) -> RBReport {
    let j = r.algebra();
    assert!(j.ctx().contains(weight), "weight from a different field");
    let failing_pairs: Vec<_> = (0..j.dim())
        .flat_map(|a| (0..j.dim()).map(move |b| (a, b)))
        .filter(|&(a, b)| !rb_residual(r, &j.basis(a), &j.basis(b), weight).is_zero())
        .collect();
    RBReport {
        is_rb: failing_pairs.is_empty(),
        weight: weight.clone(),
        failing_pairs,
        nilpotency_index: nilpotency_index(r),
        lemma_flags: lemma_diagnostics(r),
    }
}

/// Weight-zero shorthand for [`check_rb`]'s verdict.
pub fn is_rb_zero(r: &LinOperator) -> bool {
    let j = r.algebra();
    let zero = j.ctx().zero();
    (0..j.dim()).all(|a| (0..j.dim()).all(|b| rb_residual(r, &j.basis(a), &j.basis(b), &zero).is_zero()))
}

/// Smallest `s >= 1` with `R^s = 0`, searched up to `s = n + 2`.
pub fn nilpotency_index(r: &LinOperator) -> Option<usize> {
    let cap = r.algebra().n() + 2;
    let mut acc = r.clone();
    for s in 1..=cap {
        if acc.is_zero() {
            return Some(s);
        }
        acc = r.compose(&acc);
    }
    None
}

/// Extends an RB-operator `P` on `B = span{1, e_i : i in split}` to the whole
/// algebra by `R(b + c) = P(b)`, where `C` is spanned by the remaining `e_j`.
///
/// `split` lists 1-based indices; `P`'s algebra must be the restriction of
/// `algebra` to them (in that order). The containments `BC, CB ⊆ ker P + C`
/// are checked on basis vectors.
pub fn extend_by_zero(p: &LinOperator, algebra: &CliffordAlgebra, split: &[usize]) -> Result<LinOperator> {
    let sub = algebra.subalgebra(split)?;
    let mut sorted = split.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != split.len() {
        return Err(Error::HypothesisViolated("split indices repeat".into()));
    }
    if p.algebra() != &sub {
        return Err(Error::HypothesisViolated(format!(
            "operator lives on form ({}) but the split selects ({})",
            p.algebra().form(),
            sub.form()
        )));
    }
    if !is_rb_zero(p) {
        return Err(Error::HypothesisViolated("P is not a weight-zero RB-operator on B".into()));
    }

    // position in the full basis of each B basis vector
    let embed: Vec<usize> = std::iter::once(0).chain(split.iter().copied()).collect();
    let lift = |x: &AlgebraElement| {
        let mut out = algebra.zero();
        for (k, &i) in embed.iter().enumerate() {
            *out.coord_mut(i) = x.coord(k).clone();
        }
        out
    };
    let complement: Vec<usize> = (1..=algebra.n()).filter(|i| !split.contains(i)).collect();
    for (k, &bi) in embed.iter().enumerate() {
        for &cj in &complement {
            let b = algebra.basis(bi);
            let c = algebra.basis(cj);
            for prod in [algebra.mul(&b, &c), algebra.mul(&c, &b)] {
                // B-part of the product, expressed in B's own basis
                let b_part = sub
                    .element(embed.iter().map(|&i| prod.coord(i).clone()).collect())
                    .expect("subalgebra coordinates");
                if !p.act(&b_part).is_zero() {
                    return Err(Error::HypothesisViolated(format!(
                        "product of b_{bi} (B index {k}) and e_{cj} leaves ker P + C"
                    )));
                }
            }
        }
    }

    let mut cols = vec![algebra.zero(); algebra.dim()];
    for (k, &i) in embed.iter().enumerate() {
        cols[i] = lift(p.column(k));
    }
    let r = LinOperator { algebra: algebra.clone(), cols };
    debug_assert!(is_rb_zero(&r));
    Ok(r)
}
