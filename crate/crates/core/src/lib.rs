//! Rota-Baxter operators of weight zero on the Clifford-type Jordan algebras
//! `J_{n+1}(f) = F*1 + V`, with `f` a nondegenerate diagonal form.
//!
//! * [`scalars`]: exact arithmetic in `Z_p` and `Q`, plus symbolic `R` and
//!   algebraically closed field tags used by the case table.
//! * [`quadform`]: isotropic vectors and representations for diagonal forms.
//! * [`jordan`]: the algebra itself.
//! * [`rbop`]: operators, the RB identity check and structural diagnostics.
//! * [`constructions`]: explicit operator families.
//! * [`rbindex`]: the nilpotency index, by case table and by exhaustive search.
//!
//! ```
//! use rbj_core::rbindex::rb_index_table;
//! use rbj_core::{check_rb, nilpotency_index, BilinearForm, CliffordAlgebra, FieldCtx, LinOperator};
//!
//! let ctx = FieldCtx::prime(7)?;
//! let form = BilinearForm::parse(&ctx, "-1,-1,-1")?;
//! let j = CliffordAlgebra::new(ctx.clone(), form.clone())?;
//! let r = LinOperator::from_int_rows(&j, &[&[0, 1, 2, 3], &[1, 0, 3, 5], &[2, 4, 0, 1], &[3, 2, 6, 0]])?;
//! assert!(check_rb(&r, &ctx.zero()).is_rb);
//! assert_eq!(nilpotency_index(&r), Some(3));
//! assert_eq!(rb_index_table(&ctx, &form)?.value, 3);
//! # Ok::<(), rbj_core::Error>(())
//! ```

pub mod constructions;
pub mod error;
pub mod jordan;
pub mod quadform;
pub mod rbindex;
pub mod rbop;
pub mod scalars;

pub use error::{Error, Result};
pub use jordan::{AlgebraElement, BilinearForm, CliffordAlgebra};
pub use quadform::{DiagonalForm, Solution};
pub use rbindex::{Census, RbIndexVerdict, SearchConfig};
pub use rbop::{check_rb, is_rb_zero, nilpotency_index, LinOperator, RBReport};
pub use scalars::{FieldCtx, FieldKind, Scalar};
