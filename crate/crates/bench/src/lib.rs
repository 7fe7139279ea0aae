//! Shared fixtures for the benchmarks.

use rbj_core::{BilinearForm, CliffordAlgebra, FieldCtx, LinOperator};

pub fn algebra(p: u64, d: &[i64]) -> CliffordAlgebra {
    let ctx = FieldCtx::prime(p).expect("prime");
    let form = BilinearForm::new(&ctx, d.iter().map(|&x| ctx.from_i64(x)).collect()).expect("nondegenerate");
    CliffordAlgebra::new(ctx, form).expect("algebra")
}

/// An RB-operator over `Z_7` with `f = (-1,-1,-1)` and nilpotency index 3.
pub fn golden() -> LinOperator {
    let j = algebra(7, &[-1, -1, -1]);
    LinOperator::from_int_rows(&j, &[&[0, 1, 2, 3], &[1, 0, 3, 5], &[2, 4, 0, 1], &[3, 2, 6, 0]]).expect("fixture")
}
