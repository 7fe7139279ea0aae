//! Flat `u32` arithmetic for `J_{n+1}(f)` over `Z_p`, used by the searches.
//!
//! Matrices are column-major slices of length `dim * dim`: entry `i` of
//! column `j` (the `b_i` coordinate of `R(b_j)`) lives at `j * dim + i`.

use crate::jordan::{AlgebraElement, CliffordAlgebra, MAX_DIM};
use crate::rbop::LinOperator;

pub(crate) const MAX_BASIS: usize = MAX_DIM + 1;

pub(crate) type Vector = [u32; MAX_BASIS];

#[derive(Clone, Debug)]
pub(crate) struct FpKernel {
    pub p: u32,
    pub n: usize,
    pub dim: usize,
    pub d: Vec<u32>,
}

impl FpKernel {
    pub fn new(algebra: &CliffordAlgebra) -> Option<Self> {
        let p = algebra.ctx().modulus()?;
        let d = algebra.form().entries().iter().map(|x| x.residue().unwrap()).collect();
        Some(FpKernel { p, n: algebra.n(), dim: algebra.dim(), d })
    }

    #[inline]
    fn reduce(&self, x: u32) -> u32 {
        x % self.p
    }

    /// `(x, y)` on the vector parts.
    #[inline]
    pub fn pair(&self, x: &[u32], y: &[u32]) -> u32 {
        let mut acc = 0u32;
        for i in 0..self.n {
            acc += self.d[i] * (x[i + 1] * y[i + 1] % self.p);
        }
        self.reduce(acc)
    }

    /// Norm `alpha^2 - (v, v)`.
    #[inline]
    pub fn norm(&self, x: &[u32]) -> u32 {
        self.reduce(x[0] * x[0] + self.p - self.pair(x, x))
    }

    #[inline]
    pub fn mul(&self, x: &[u32], y: &[u32], out: &mut Vector) {
        out[0] = self.reduce(x[0] * y[0] + self.pair(x, y));
        for i in 1..self.dim {
            out[i] = self.reduce(x[0] * y[i] + y[0] * x[i]);
        }
    }

    #[inline]
    pub fn column<'a>(&self, m: &'a [u32], j: usize) -> &'a [u32] {
        &m[j * self.dim..(j + 1) * self.dim]
    }

    #[inline]
    pub fn apply(&self, m: &[u32], x: &[u32], out: &mut Vector) {
        out[..self.dim].fill(0);
        for j in 0..self.dim {
            let c = x[j];
            if c != 0 {
                let col = self.column(m, j);
                for i in 0..self.dim {
                    out[i] = self.reduce(out[i] + c * col[i]);
                }
            }
        }
    }

    /// Weight-zero RB identity on the basis pair `(a, b)`.
    pub fn pair_ok(&self, m: &[u32], a: usize, b: usize) -> bool {
        let (ra, rb) = (self.column(m, a), self.column(m, b));
        let mut lhs = [0; MAX_BASIS];
        self.mul(ra, rb, &mut lhs);
        let mut ea = [0; MAX_BASIS];
        let mut eb = [0; MAX_BASIS];
        ea[a] = 1;
        eb[b] = 1;
        let mut s1 = [0; MAX_BASIS];
        let mut s2 = [0; MAX_BASIS];
        self.mul(ra, &eb, &mut s1);
        self.mul(&ea, rb, &mut s2);
        for i in 0..self.dim {
            s1[i] = self.reduce(s1[i] + s2[i]);
        }
        let mut rhs = [0; MAX_BASIS];
        self.apply(m, &s1, &mut rhs);
        lhs[..self.dim] == rhs[..self.dim]
    }

    /// Identity on `(e_i, e_j)`, `i, j >= 1`, touching only columns `0, i, j`:
    /// `R(e_i)R(e_j) = (d_j a_j + d_i b_i) R(1) + a_0 R(e_j) + b_0 R(e_i)`.
    #[inline]
    pub fn local_pair_ok(&self, m: &[u32], i: usize, j: usize) -> bool {
        self.local_pair_ok_cols(self.column(m, 0), self.column(m, i), i, self.column(m, j), j)
    }

    /// [`Self::local_pair_ok`] on explicit columns `c0 = R(1)`, `ci`, `cj`.
    #[inline]
    pub fn local_pair_ok_cols(&self, c0: &[u32], ci: &[u32], i: usize, cj: &[u32], j: usize) -> bool {
        let coeff = self.reduce(self.d[j - 1] * ci[j] + self.d[i - 1] * cj[i]);
        let rhs = |t: usize| self.reduce(coeff * c0[t] + ci[0] * cj[t] + cj[0] * ci[t]);
        // scalar part first, it fails most often
        if self.reduce(ci[0] * cj[0] + self.pair(ci, cj)) != rhs(0) {
            return false;
        }
        (1..self.dim).all(|t| self.reduce(ci[0] * cj[t] + cj[0] * ci[t]) == rhs(t))
    }

    /// Full weight-zero check. Pairs among `e_i` come first since they fail
    /// most often; commutativity makes `(a, b)` and `(b, a)` equivalent.
    pub fn is_rb(&self, m: &[u32]) -> bool {
        for a in (1..self.dim).rev() {
            for b in (1..=a).rev() {
                if !self.local_pair_ok(m, a, b) {
                    return false;
                }
            }
        }
        (0..self.dim).all(|b| self.pair_ok(m, 0, b))
    }

    pub fn compose(&self, a: &[u32], b: &[u32], out: &mut [u32]) {
        let mut tmp = [0; MAX_BASIS];
        for j in 0..self.dim {
            self.apply(a, self.column(b, j), &mut tmp);
            out[j * self.dim..(j + 1) * self.dim].copy_from_slice(&tmp[..self.dim]);
        }
    }

    pub fn nilpotency_index(&self, m: &[u32]) -> Option<usize> {
        let mut acc = m.to_vec();
        let mut next = vec![0; m.len()];
        for s in 1..=self.n + 2 {
            if acc.iter().all(|&x| x == 0) {
                return Some(s);
            }
            self.compose(m, &acc, &mut next);
            std::mem::swap(&mut acc, &mut next);
        }
        None
    }

    #[cfg(test)]
    pub fn is_square_zero(&self, m: &[u32]) -> bool {
        let mut tmp = [0; MAX_BASIS];
        (0..self.dim).all(|j| {
            self.apply(m, self.column(m, j), &mut tmp);
            tmp[..self.dim].iter().all(|&x| x == 0)
        })
    }

    pub fn to_operator(&self, algebra: &CliffordAlgebra, m: &[u32]) -> LinOperator {
        let ctx = algebra.ctx();
        let cols = (0..self.dim)
            .map(|j| {
                let col = self.column(m, j);
                AlgebraElement {
                    alpha: ctx.from_i64(col[0] as i64),
                    v: col[1..].iter().map(|&x| ctx.from_i64(x as i64)).collect(),
                }
            })
            .collect();
        LinOperator::from_columns(algebra, cols).expect("kernel matrix matches algebra")
    }

    #[cfg(test)]
    pub fn from_operator(&self, r: &LinOperator) -> Vec<u32> {
        r.columns().iter().flat_map(|c| c.coords().map(|x| x.residue().unwrap())).collect()
    }
}
