//! Plain-text operator files:
//!
//! ```text
//! field Zp:7
//! form 6,6,6
//! 0,1,2,3
//! 1,0,3,5
//! 2,4,0,1
//! 3,2,6,0
//! ```
//!
//! The matrix rows follow the basis order `1, e_1, ..., e_n`. Blank lines and
//! lines starting with `#` are ignored.

use super::LinOperator;
use crate::error::{Error, Result};
use crate::jordan::{BilinearForm, CliffordAlgebra};
use crate::scalars::{format_list, FieldCtx};

impl LinOperator {
    pub fn to_file_string(&self) -> String {
        let mut out = format!("field {}\nform {}\n", self.algebra.ctx(), self.algebra.form());
        for row in self.rows() {
            out.push_str(&format_list(&row));
            out.push('\n');
        }
        out
    }

    pub fn parse_file(text: &str) -> Result<LinOperator> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let mut header = |key: &str| -> Result<String> {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing `{key}` line")))?;
            line.strip_prefix(key)
                .filter(|rest| rest.starts_with(char::is_whitespace))
                .map(|rest| rest.trim().to_string())
                .ok_or_else(|| Error::Parse(format!("expected `{key} ...`, got {line:?}")))
        };
        let ctx: FieldCtx = header("field")?.parse()?;
        let form = BilinearForm::parse(&ctx, &header("form")?)?;
        let algebra = CliffordAlgebra::new(ctx.clone(), form)?;
        let rows = lines.map(|l| ctx.parse_list(l)).collect::<Result<Vec<_>>>()?;
        LinOperator::from_rows(&algebra, rows)
    }
}
