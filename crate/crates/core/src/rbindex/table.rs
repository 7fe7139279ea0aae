//! Closed-form values of `rb(J_{n+1}(f))`.
//!
//! | field | case | value |
//! |---|---|---|
//! | `R` | all `d_i < 0` | 1 |
//! | `R`, `n >= 3` | all `d_i > 0`, or exactly one positive | 2 |
//! | `R`, `n >= 3` | otherwise | 3 |
//! | `R`, `n = 2` | some `d_i > 0` | 2 |
//! | algebraically closed | `n = 2` / `n >= 3` | 2 / 3 |
//! | `Z_p` | `n = 2` | 2 |
//! | `Z_p`, `n = 3` | residues among `d_1, d_2, d_3`: even if `p = 1 mod 4`, odd if `p = 3 mod 4` | 2 |
//! | `Z_p`, `n = 3` | the other parity | 3 |
//! | `Z_p` | `n >= 4` | 3 |

use std::cmp::Ordering;

use super::{Method, RbIndexVerdict};
use crate::constructions::{find_index2_witness, find_index3_witness};
use crate::error::{Error, Result};
use crate::jordan::{BilinearForm, CliffordAlgebra};
use crate::quadform::DEFAULT_HEIGHT_BOUND;
use crate::rbop::LinOperator;
use crate::scalars::{FieldCtx, FieldKind, Scalar};

const RATIONALS_UNSUPPORTED: &str = "no closed form for rb over Q: whether R^2 != 0 is possible depends on \
     the arithmetic of the d_i (for f = (1,-3,1) the natural candidates reduce to the Pell equation \
     x^2 - 3y^2 = -1, which has no rational solution); use a prime field, or `construct --auto` over Q";

fn verdict(value: usize, witness: Option<LinOperator>, note: Option<String>) -> RbIndexVerdict {
    RbIndexVerdict { value, method: Method::TheoremTable, witness, census: None, note }
}

fn witness_for(algebra: &CliffordAlgebra, value: usize) -> Result<Option<LinOperator>> {
    match value {
        2 => find_index2_witness(algebra, DEFAULT_HEIGHT_BOUND),
        3 => find_index3_witness(algebra, DEFAULT_HEIGHT_BOUND),
        _ => Ok(None),
    }
}

fn with_witness(algebra: &CliffordAlgebra, value: usize) -> Result<RbIndexVerdict> {
    let witness = witness_for(algebra, value)?;
    let note = (witness.is_none() && value > 1).then(|| "no explicit witness found".to_string());
    Ok(verdict(value, witness, note))
}

/// `rb(J_{n+1}(f))` from the case table. Over `Z_p` every value above 1
/// carries an explicit operator of that index; over `R` and algebraically
/// closed fields the form entries are read as signs only.
pub fn rb_index_table(ctx: &FieldCtx, form: &BilinearForm) -> Result<RbIndexVerdict> {
    let n = form.len();
    if n < 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: n });
    }
    if form.entries().iter().any(|d| !ctx.contains(d)) {
        return Err(Error::MixedFields);
    }
    match ctx.kind() {
        FieldKind::Rationals => Err(Error::UnsupportedField(RATIONALS_UNSUPPORTED.into())),
        FieldKind::AlgClosedSymbolic => Ok(verdict(if n == 2 { 2 } else { 3 }, None, None)),
        FieldKind::RealSymbolic => real_table(form),
        FieldKind::PrimeField(_) => {
            let algebra = CliffordAlgebra::new(ctx.clone(), form.clone())?;
            let value = match n {
                2 => 2,
                3 => {
                    let residues = form.entries().iter().filter(|d| matches!(ctx.legendre(d), Ok(1))).count();
                    let even = residues % 2 == 0;
                    match (ctx.p_mod4_class()?, even) {
                        (1, true) | (3, false) => 2,
                        _ => 3,
                    }
                }
                _ => 3,
            };
            with_witness(&algebra, value)
        }
    }
}

fn real_table(form: &BilinearForm) -> Result<RbIndexVerdict> {
    let n = form.len();
    let positive = form.entries().iter().filter(|d| d.sign() == Some(Ordering::Greater)).count();
    if positive == 0 {
        return Ok(verdict(1, None, None));
    }
    if n >= 3 {
        let value = if positive == n || positive == 1 { 2 } else { 3 };
        return Ok(verdict(value, None, None));
    }
    // n = 2: try the same entries over Q for an explicit square-zero operator
    let q = FieldCtx::rationals();
    let rational: Vec<Scalar> = form.entries().to_vec();
    let algebra = CliffordAlgebra::new(q.clone(), BilinearForm::new(&q, rational)?)?;
    let witness = find_index2_witness(&algebra, DEFAULT_HEIGHT_BOUND)?;
    let note = (positive == 2).then(|| {
        "positive definite J_3: a nonzero square-zero RB-operator exists (witness over Q when found), \
         so the value is 2, not 1"
            .to_string()
    });
    Ok(verdict(2, witness, note))
}
