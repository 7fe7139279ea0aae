//! Structural consequences of the weight-zero RB identity, evaluated
//! exactly on a concrete operator.
//!
//! Every check is reported as data. On an operator that is not RB the
//! flags are informative only.

use serde::Serialize;

use super::{is_rb_zero, linalg, LinOperator};
use crate::error::{Error, Result};
use crate::jordan::AlgebraElement;
use crate::scalars::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    Pass,
    Fail,
    NotApplicable,
}

impl Flag {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Flag::Pass
        } else {
            Flag::Fail
        }
    }

    pub fn is_fail(self) -> bool {
        self == Flag::Fail
    }
}

/// Outcome of each structural check; `R(1) = k`, `R(e_i) = alpha_0 + sum alpha_j e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaFlags {
    /// `1` is not in the image of `R`.
    pub unit_not_in_image: Flag,
    /// `dim ker R >= 2`.
    pub kernel_dim_at_least_two: Flag,
    /// If `R(1)` is a scalar then `R(1) = 0` and `R^2 = 0`.
    pub scalar_unit_image: Flag,
    /// `R(1)R(1) = 2 R^2(1)`.
    pub unit_square: Flag,
    /// `R(1)R(1) = R^2(1) = (k, k) = 0` when `R(1) != 0`.
    pub unit_image_isotropic: Flag,
    /// `R(1)R(e_i) = alpha_0 R(1)` and `(k, R(e_i) - alpha_0) = 0` when `R(1) != 0`.
    pub unit_times_column: Flag,
    /// `R^2(e_i) = (alpha_0 - d_i k_i) R(1)` when `R(1) != 0`.
    pub column_square_image: Flag,
    /// For `i != j`: `R(e_i)R(e_j) = alpha_0 R(e_j) + beta_0 R(e_i)`,
    /// `(v, u) = alpha_0 beta_0` and `d_j alpha_j + d_i beta_i = 0` when `R(1) != 0`.
    pub column_pairs: Flag,
    /// `R(e_i)^2 = 2 alpha_0 R(e_i)`, `(v, v) = alpha_0^2`, `alpha_i = 0` when `R(1) != 0`.
    pub column_squares: Flag,
    /// The `V`-block in the basis `e_i / sqrt(d_i)` is skew-symmetric, when
    /// `R^2 != 0` and every `d_i` is a square.
    pub skew_block: Flag,
    /// `R^3 = 0`.
    pub cube_vanishes: Flag,
}

impl LemmaFlags {
    pub fn all_pass(&self) -> bool {
        self.iter().all(|(_, f)| !f.is_fail())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, Flag)> {
        [
            ("unit_not_in_image", self.unit_not_in_image),
            ("kernel_dim_at_least_two", self.kernel_dim_at_least_two),
            ("scalar_unit_image", self.scalar_unit_image),
            ("unit_square", self.unit_square),
            ("unit_image_isotropic", self.unit_image_isotropic),
            ("unit_times_column", self.unit_times_column),
            ("column_square_image", self.column_square_image),
            ("column_pairs", self.column_pairs),
            ("column_squares", self.column_squares),
            ("skew_block", self.skew_block),
            ("cube_vanishes", self.cube_vanishes),
        ]
        .into_iter()
    }
}

pub fn lemma_diagnostics(r: &LinOperator) -> LemmaFlags {
    let j = r.algebra();
    let ctx = j.ctx();
    let n = j.n();
    let rows = r.rows();
    let r2 = r.compose(r);
    let unit_image = r.column(0);

    let unit_not_in_image = Flag::from_bool(!linalg::in_column_space(&rows, j.one().coords().cloned().collect::<Vec<_>>().as_slice()));
    let kernel_dim = j.dim() - linalg::rank(&rows);
    let kernel_dim_at_least_two = Flag::from_bool(kernel_dim >= 2);

    let scalar_unit_image = if unit_image.v.iter().all(Scalar::is_zero) {
        Flag::from_bool(unit_image.is_zero() && r2.is_zero())
    } else {
        Flag::NotApplicable
    };

    let two = ctx.from_i64(2);
    let r2_unit = r2.column(0);
    let unit_square = Flag::from_bool(j.mul(unit_image, unit_image) == r2_unit.scale(&two));

    let cube_vanishes = Flag::from_bool(r.compose(&r2).is_zero());

    let (unit_image_isotropic, unit_times_column, column_square_image, column_pairs, column_squares) =
        if unit_image.is_zero() {
            let na = Flag::NotApplicable;
            (na, na, na, na, na)
        } else {
            let k = &unit_image.v;
            let isotropic = j.mul(unit_image, unit_image).is_zero()
                && r2_unit.is_zero()
                && j.form().pair(k, k).unwrap().is_zero();

            let vector_part = |x: &AlgebraElement| x.v.clone();
            let mut times_column = true;
            let mut square_image = true;
            let mut squares = true;
            for i in 1..=n {
                let col = r.column(i);
                let a0 = &col.alpha;
                let v = vector_part(col);
                times_column &= j.mul(unit_image, col) == unit_image.scale(a0)
                    && j.form().pair(k, &v).unwrap().is_zero();
                let coeff = a0 - &(j.form().d(i) * &k[i - 1]);
                square_image &= r2.column(i) == &unit_image.scale(&coeff);
                squares &= j.mul(col, col) == col.scale(&(a0 * &two))
                    && j.form().pair(&v, &v).unwrap() == a0.square()
                    && col.v[i - 1].is_zero();
            }

            let mut pairs = true;
            for i in 1..=n {
                for jj in (1..=n).filter(|&jj| jj != i) {
                    let (ci, cj) = (r.column(i), r.column(jj));
                    let (a0, b0) = (&ci.alpha, &cj.alpha);
                    pairs &= j.mul(ci, cj) == cj.scale(a0).add(&ci.scale(b0))
                        && j.form().pair(&ci.v, &cj.v).unwrap() == a0 * b0
                        && (j.form().d(jj) * &ci.v[jj - 1] + j.form().d(i) * &cj.v[i - 1]).is_zero();
                }
            }
            (
                Flag::from_bool(isotropic),
                Flag::from_bool(times_column),
                Flag::from_bool(square_image),
                Flag::from_bool(pairs),
                Flag::from_bool(squares),
            )
        };

    let skew_block = match check_remark2(r) {
        Ok(ok) => Flag::from_bool(ok),
        Err(_) => Flag::NotApplicable,
    };

    LemmaFlags {
        unit_not_in_image,
        kernel_dim_at_least_two,
        scalar_unit_image,
        unit_square,
        unit_image_isotropic,
        unit_times_column,
        column_square_image,
        column_pairs,
        column_squares,
        skew_block,
        cube_vanishes,
    }
}

/// Rescales the basis to `e_i' = e_i / sqrt(d_i)` and tests whether the
/// `n x n` block of `R` on `V` is skew-symmetric (zero diagonal included).
///
/// Requires `R` to be a weight-zero RB-operator with `R^2 != 0` and every
/// `d_i` to have a square root in the field.
pub fn check_remark2(r: &LinOperator) -> Result<bool> {
    let j = r.algebra();
    let ctx = j.ctx();
    if !is_rb_zero(r) {
        return Err(Error::NotApplicable("operator is not a weight-zero RB-operator".into()));
    }
    if r.compose(r).is_zero() {
        return Err(Error::NotApplicable("R^2 = 0".into()));
    }
    let mut roots = Vec::with_capacity(j.n());
    for (i, d) in j.form().entries().iter().enumerate() {
        match ctx.sqrt(d)? {
            Some(s) => roots.push(s),
            None => return Err(Error::NotApplicable(format!("d_{} = {d} has no square root", i + 1))),
        }
    }
    // block entry (i, l) in the new basis: M_il * s_i / s_l
    let scaled = |i: usize, l: usize| r.entry(i, l) * &roots[i - 1] / &roots[l - 1];
    Ok((1..=j.n()).all(|i| (i..=j.n()).all(|l| (scaled(i, l) + scaled(l, i)).is_zero())))
}
