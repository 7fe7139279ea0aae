//! Explicit families of weight-zero RB-operators on `J_{n+1}(f)`.
//!
//! * [`build_j3`]: the square-zero family that exhausts all RB-operators on
//!   `J_3(f)`.
//! * [`build_example4`]: a split `f = (d_1..d_p | d_{p+1}..d_n)` with
//!   `sum_{i<=p} d_i l_i^2 = 1` and an isotropic tail `k` gives an operator
//!   with `R^2 != 0`.
//! * [`build_example5`]: on `J_4(f)` from an all-nonzero isotropic `k` and a
//!   root of `x^2 + d_1 d_2 d_3`.
//! * [`build_bigc`]: the split operator written with square roots of `d_i`
//!   and of `-1`.
//!
//! Every builder verifies its output with the RB check before returning it.

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jordan::{AlgebraElement, CliffordAlgebra};
use crate::quadform::{
    isotropic_vector_bounded, rational_ternary_search, unit_representation_bounded, DiagonalForm, Solution,
    DEFAULT_HEIGHT_BOUND,
};
use crate::rbop::{extend_by_zero, is_rb_zero, LinOperator};
use crate::scalars::{FieldKind, Scalar};

/// `R(1) = 0`, `R(e_1) = k w`, `R(e_2) = l w` with `w = a + b e_1 + c e_2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct J3Params {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub k: Scalar,
    pub l: Scalar,
}

/// Split point `p` (`1 <= p < n`), the unit part `l_1..l_p` and the isotropic
/// tail `k_{p+1}..k_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Example4Params {
    pub split: usize,
    pub l: Vec<Scalar>,
    pub k: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Example5Params {
    pub k: [Scalar; 3],
    pub x0: Scalar,
}

fn require_n(algebra: &CliffordAlgebra, n: usize) -> Result<()> {
    if algebra.n() == n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: n, found: algebra.n() })
    }
}

fn require_members(algebra: &CliffordAlgebra, xs: &[&Scalar]) -> Result<()> {
    if xs.iter().all(|x| algebra.ctx().contains(x)) {
        Ok(())
    } else {
        Err(Error::MixedFields)
    }
}

fn verified(r: LinOperator, what: &str) -> Result<LinOperator> {
    if is_rb_zero(&r) {
        Ok(r)
    } else {
        Err(Error::ConstraintViolated(format!("{what} output failed the RB identity")))
    }
}

pub fn build_j3(algebra: &CliffordAlgebra, params: &J3Params) -> Result<LinOperator> {
    require_n(algebra, 2)?;
    let J3Params { a, b, c, k, l } = params;
    require_members(algebra, &[a, b, c, k, l])?;
    let (d1, d2) = (algebra.form().d(1), algebra.form().d(2));
    if !(a.square() - d1 * &b.square() - d2 * &c.square()).is_zero() {
        return Err(Error::ConstraintViolated("a^2 - d_1 b^2 - d_2 c^2 != 0".into()));
    }
    if !(k * b + l * c).is_zero() {
        return Err(Error::ConstraintViolated("k b + l c != 0".into()));
    }
    let w = algebra.element(vec![a.clone(), b.clone(), c.clone()])?;
    let r = LinOperator::from_columns(algebra, vec![algebra.zero(), w.scale(k), w.scale(l)])?;
    let r = verified(r, "square-zero family")?;
    debug_assert!(r.compose(&r).is_zero());
    Ok(r)
}

/// Parameters for a nonzero member of the `J_3` family, from an isotropic
/// vector `(a, b, c)` of `(1, -d_1, -d_2)`. If `b != 0` take `l = 1`,
/// `k = -c/b`; otherwise `k = 1`, `l = -b/c = 0`.
pub fn solve_j3_params(algebra: &CliffordAlgebra) -> Result<Solution<J3Params>> {
    solve_j3_params_bounded(algebra, DEFAULT_HEIGHT_BOUND)
}

pub fn solve_j3_params_bounded(algebra: &CliffordAlgebra, bound: u64) -> Result<Solution<J3Params>> {
    require_n(algebra, 2)?;
    let ctx = algebra.ctx();
    let form = DiagonalForm::new(
        ctx.clone(),
        vec![ctx.one(), -algebra.form().d(1), -algebra.form().d(2)],
    )?;
    Ok(isotropic_vector_bounded(&form, bound)?.map(|x| {
        let [a, b, c]: [Scalar; 3] = x.try_into().expect("ternary solution");
        let (k, l) = if !b.is_zero() {
            (-(&c / &b), ctx.one())
        } else {
            (ctx.one(), -(&b / &c))
        };
        J3Params { a, b, c, k, l }
    }))
}

/// Recovers `J_3` family parameters reproducing `r`, if any exist.
pub fn match_j3_family(r: &LinOperator) -> Option<J3Params> {
    let algebra = r.algebra();
    if algebra.n() != 2 || !r.column(0).is_zero() {
        return None;
    }
    let ctx = algebra.ctx();
    let (c1, c2) = (r.column(1), r.column(2));
    let (w, k, l) = if !c1.is_zero() {
        // c2 must be a multiple of c1
        let pivot = (0..3).find(|&i| !c1.coord(i).is_zero())?;
        let s = c2.coord(pivot) / c1.coord(pivot);
        (c1.clone(), ctx.one(), s)
    } else if !c2.is_zero() {
        (c2.clone(), ctx.zero(), ctx.one())
    } else {
        (algebra.zero(), ctx.zero(), ctx.zero())
    };
    let params = J3Params { a: w.alpha.clone(), b: w.v[0].clone(), c: w.v[1].clone(), k, l };
    match build_j3(algebra, &params) {
        Ok(built) if &built == r => Some(params),
        _ => None,
    }
}

/// The split operator on arbitrary disjoint index sets `unit_idx` (carrying
/// `l`) and `iso_idx` (carrying `k`); indices outside both map to zero.
fn split_operator(
    algebra: &CliffordAlgebra,
    unit_idx: &[usize],
    l: &[Scalar],
    iso_idx: &[usize],
    k: &[Scalar],
) -> Result<LinOperator> {
    let ctx = algebra.ctx();
    let form = algebra.form();
    require_members(algebra, &l.iter().chain(k).collect::<Vec<_>>())?;
    let unit_sum = unit_idx
        .iter()
        .zip(l)
        .fold(ctx.zero(), |acc, (&i, li)| acc + form.d(i) * &li.square());
    if !unit_sum.is_one() {
        return Err(Error::ConstraintViolated("sum d_i l_i^2 != 1".into()));
    }
    let iso_sum = iso_idx
        .iter()
        .zip(k)
        .fold(ctx.zero(), |acc, (&j, kj)| acc + form.d(j) * &kj.square());
    if !iso_sum.is_zero() {
        return Err(Error::ConstraintViolated("sum d_j k_j^2 != 0".into()));
    }
    if k.iter().all(Scalar::is_zero) {
        return Err(Error::ConstraintViolated("all k_j are zero".into()));
    }

    let mut kvec = algebra.zero();
    for (&j, kj) in iso_idx.iter().zip(k) {
        *kvec.coord_mut(j) = kj.clone();
    }
    let mut one_plus_l = algebra.one();
    for (&i, li) in unit_idx.iter().zip(l) {
        *one_plus_l.coord_mut(i) = li.clone();
    }
    let mut cols = vec![algebra.zero(); algebra.dim()];
    cols[0] = kvec.clone();
    for (&i, li) in unit_idx.iter().zip(l) {
        cols[i] = kvec.scale(&(form.d(i) * li));
    }
    for (&j, kj) in iso_idx.iter().zip(k) {
        cols[j] = one_plus_l.scale(&-(form.d(j) * kj));
    }
    verified(LinOperator::from_columns(algebra, cols)?, "split construction")
}

pub fn build_example4(algebra: &CliffordAlgebra, params: &Example4Params) -> Result<LinOperator> {
    let n = algebra.n();
    let p = params.split;
    if p == 0 || p >= n {
        return Err(Error::ConstraintViolated(format!("split {p} outside 1..{n}")));
    }
    if params.l.len() != p || params.k.len() != n - p {
        return Err(Error::DimensionMismatch { expected: n, found: params.l.len() + params.k.len() });
    }
    let unit_idx: Vec<usize> = (1..=p).collect();
    let iso_idx: Vec<usize> = (p + 1..=n).collect();
    let r = split_operator(algebra, &unit_idx, &params.l, &iso_idx, &params.k)?;
    debug_assert!(!r.compose(&r).is_zero());
    Ok(r)
}

/// Solves for split-construction parameters at the given split point.
pub fn solve_example4_params(algebra: &CliffordAlgebra, split: usize) -> Result<Solution<Example4Params>> {
    solve_example4_params_bounded(algebra, split, DEFAULT_HEIGHT_BOUND)
}

pub fn solve_example4_params_bounded(
    algebra: &CliffordAlgebra,
    split: usize,
    bound: u64,
) -> Result<Solution<Example4Params>> {
    let n = algebra.n();
    if split == 0 || split >= n {
        return Err(Error::ConstraintViolated(format!("split {split} outside 1..{n}")));
    }
    let unit_idx: Vec<usize> = (1..=split).collect();
    let iso_idx: Vec<usize> = (split + 1..=n).collect();
    Ok(solve_split(algebra, &unit_idx, &iso_idx, bound)?.map(|(l, k)| Example4Params { split, l, k }))
}

fn solve_split(
    algebra: &CliffordAlgebra,
    unit_idx: &[usize],
    iso_idx: &[usize],
    bound: u64,
) -> Result<Solution<(Vec<Scalar>, Vec<Scalar>)>> {
    let ctx = algebra.ctx();
    let unit_form = DiagonalForm::new(ctx.clone(), algebra.form().restrict(unit_idx).entries().to_vec())?;
    let iso_form = DiagonalForm::new(ctx.clone(), algebra.form().restrict(iso_idx).entries().to_vec())?;
    let l = match unit_representation_bounded(&unit_form, bound)? {
        Solution::Found(l) => l,
        Solution::Absent => return Ok(Solution::Absent),
        Solution::Undecided => return Ok(Solution::Undecided),
    };
    Ok(isotropic_vector_bounded(&iso_form, bound)?.map(|k| (l, k)))
}

pub fn build_example5(algebra: &CliffordAlgebra, params: &Example5Params) -> Result<LinOperator> {
    require_n(algebra, 3)?;
    let ctx = algebra.ctx();
    let Example5Params { k, x0 } = params;
    require_members(algebra, &[&k[0], &k[1], &k[2], x0])?;
    if k.iter().any(Scalar::is_zero) {
        return Err(Error::ConstraintViolated("every k_i must be nonzero".into()));
    }
    let d: Vec<&Scalar> = (1..=3).map(|i| algebra.form().d(i)).collect();
    let iso = (0..3).fold(ctx.zero(), |acc, i| acc + d[i] * &k[i].square());
    if !iso.is_zero() {
        return Err(Error::ConstraintViolated("d_1 k_1^2 + d_2 k_2^2 + d_3 k_3^2 != 0".into()));
    }
    if !(x0.square() + d[0] * d[1] * d[2]).is_zero() {
        return Err(Error::ConstraintViolated("x0^2 + d_1 d_2 d_3 != 0".into()));
    }
    let lambda = &k[0] * &k[1] * &k[2] * x0;

    // primed basis e_i' = e_i / (k_i d_i); R(e_i') = -1 + lambda/(d_i k_i^2) * (e_{i+1}' - e_{i-1}')
    let primed: Vec<Scalar> = (0..3).map(|i| (&k[i] * d[i]).inv().expect("nonzero")).collect();
    let mut cols: Vec<AlgebraElement> = Vec::with_capacity(4);
    let mut unit = algebra.zero();
    unit.v = k.to_vec();
    cols.push(unit);
    for i in 0..3 {
        let next = (i + 1) % 3;
        let prev = (i + 2) % 3;
        let coeff = &lambda / &k[i];
        let mut col = algebra.zero();
        col.alpha = -(&k[i] * d[i]);
        col.v[next] = &coeff * &primed[next];
        col.v[prev] = -(&coeff * &primed[prev]);
        cols.push(col);
    }
    let r = verified(LinOperator::from_columns(algebra, cols)?, "cyclic construction")?;
    debug_assert!(!r.compose(&r).is_zero());
    Ok(r)
}

/// Parameters for [`build_example5`]: `x0` the table root of `-d_1 d_2 d_3`
/// and `k` the lexicographically smallest all-nonzero isotropic vector.
/// Over the rationals `k` comes from a height-bounded search.
pub fn solve_example5_params(algebra: &CliffordAlgebra) -> Result<Solution<Example5Params>> {
    solve_example5_params_bounded(algebra, DEFAULT_HEIGHT_BOUND)
}

pub fn solve_example5_params_bounded(algebra: &CliffordAlgebra, bound: u64) -> Result<Solution<Example5Params>> {
    require_n(algebra, 3)?;
    let ctx = algebra.ctx();
    let d = algebra.form().entries();
    let Some(x0) = ctx.sqrt(&-(&d[0] * &d[1] * &d[2]))? else {
        return Ok(Solution::Absent);
    };
    match ctx.kind() {
        FieldKind::PrimeField(_) => {
            let nonzero: Vec<Scalar> = ctx.elements()?.skip(1).collect();
            for k1 in &nonzero {
                for k2 in &nonzero {
                    let rest = -(&d[0] * &k1.square() + &d[1] * &k2.square()) / &d[2];
                    if let Some(k3) = ctx.sqrt(&rest)?.filter(|k3| !k3.is_zero()) {
                        return Ok(Solution::Found(Example5Params {
                            k: [k1.clone(), k2.clone(), k3],
                            x0,
                        }));
                    }
                }
            }
            Ok(Solution::Absent)
        }
        _ => {
            let q: Vec<&BigRational> = d.iter().map(|x| x.as_rational().unwrap()).collect();
            Ok(match rational_ternary_search(&[q[0], q[1], q[2]], bound, |v| v.iter().all(|&t| t != 0)) {
                Some(v) => Solution::Found(Example5Params {
                    k: v.map(|t| ctx.from_i64(t as i64)),
                    x0,
                }),
                None => Solution::Undecided,
            })
        }
    }
}

/// The split operator built from square roots: with `s_i = sqrt(d_i)` and
/// `i = sqrt(-1)`,
///
/// ```text
/// P(1)   = e_2/s_2 + i e_3/s_3       P(e_1) = s_1 P(1)
/// P(e_2) = -s_2 (1 + e_1/s_1)        P(e_3) = -i s_3 (1 + e_1/s_1)
/// ```
pub fn build_bigc(algebra: &CliffordAlgebra) -> Result<LinOperator> {
    require_n(algebra, 3)?;
    let ctx = algebra.ctx();
    let mut missing = Vec::new();
    let mut roots = Vec::new();
    for (idx, d) in algebra.form().entries().iter().enumerate() {
        match ctx.sqrt(d)? {
            Some(s) => roots.push(s),
            None => missing.push(format!("sqrt(d_{}) = sqrt({d})", idx + 1)),
        }
    }
    let i = ctx.sqrt(&-ctx.one())?;
    if i.is_none() {
        missing.push("sqrt(-1)".into());
    }
    if !missing.is_empty() {
        return Err(Error::MissingRoots(format!("{} not in {ctx}", missing.join(", "))));
    }
    let i = i.unwrap();
    let l = vec![roots[0].inv()?];
    let k = vec![roots[1].inv()?, &i / &roots[2]];
    build_example4(algebra, &Example4Params { split: 1, l, k })
}

fn subsets_by_size(n: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (1u32..(1 << n) - 1)
        .map(|mask| (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect())
        .collect();
    all.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

/// Searches the explicit constructions for an operator with `R^2 != 0`:
/// first the split construction over every index partition (unit part,
/// isotropic part of size at least two), then the cyclic construction on
/// every triple of indices extended by zero.
///
/// `bound` limits the rational searches; it is irrelevant over `Z_p`.
pub fn find_index3_witness(algebra: &CliffordAlgebra, bound: u64) -> Result<Option<LinOperator>> {
    let n = algebra.n();
    for unit_idx in subsets_by_size(n) {
        let iso_idx: Vec<usize> = (1..=n).filter(|i| !unit_idx.contains(i)).collect();
        if iso_idx.len() < 2 {
            continue;
        }
        if let Solution::Found((l, k)) = solve_split(algebra, &unit_idx, &iso_idx, bound)? {
            return split_operator(algebra, &unit_idx, &l, &iso_idx, &k).map(Some);
        }
    }
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                let sub = algebra.subalgebra(&[a, b, c])?;
                if let Solution::Found(params) = solve_example5_params_bounded(&sub, bound)? {
                    let p = build_example5(&sub, &params)?;
                    return extend_by_zero(&p, algebra, &[a, b, c]).map(Some);
                }
            }
        }
    }
    Ok(None)
}

/// A nonzero square-zero operator: the `J_3` family on the first index pair
/// that admits one, extended by zero.
pub fn find_index2_witness(algebra: &CliffordAlgebra, bound: u64) -> Result<Option<LinOperator>> {
    let n = algebra.n();
    for a in 1..=n {
        for b in a + 1..=n {
            let sub = algebra.subalgebra(&[a, b])?;
            if let Solution::Found(params) = solve_j3_params_bounded(&sub, bound)? {
                let p = build_j3(&sub, &params)?;
                return extend_by_zero(&p, algebra, &[a, b]).map(Some);
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rbop::nilpotency_index;
    use crate::scalars::FieldCtx;

    fn zp(p: u64) -> FieldCtx {
        FieldCtx::prime(p).unwrap()
    }

    fn ints(ctx: &FieldCtx, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| ctx.from_i64(x)).collect()
    }

    fn j3_params(ctx: &FieldCtx, v: [i64; 5]) -> J3Params {
        let [a, b, c, k, l] = v.map(|x| ctx.from_i64(x));
        J3Params { a, b, c, k, l }
    }

    #[test]
    fn j3_examples() {
        let q = FieldCtx::rationals();
        let j = CliffordAlgebra::from_ints(&q, &[1, 1]).unwrap();
        let r = build_j3(&j, &j3_params(&q, [1, 1, 0, 0, 1])).unwrap();
        assert!(!r.is_zero());
        assert_eq!(nilpotency_index(&r), Some(2));

        let r = build_j3(&j, &j3_params(&q, [1, 1, 0, 0, 0])).unwrap();
        assert!(r.is_zero());

        let f5 = zp(5);
        let j = CliffordAlgebra::from_ints(&f5, &[1, 1]).unwrap();
        let r = build_j3(&j, &j3_params(&f5, [0, 1, 2, 3, 1])).unwrap();
        assert_eq!(nilpotency_index(&r), Some(2));
    }

    #[test]
    fn j3_rejects_bad_params() {
        let q = FieldCtx::rationals();
        let j = CliffordAlgebra::from_ints(&q, &[1, 1]).unwrap();
        assert!(matches!(build_j3(&j, &j3_params(&q, [1, 0, 0, 1, 1])), Err(Error::ConstraintViolated(_))));
        assert!(matches!(build_j3(&j, &j3_params(&q, [1, 1, 0, 1, 1])), Err(Error::ConstraintViolated(_))));
        let j4 = CliffordAlgebra::from_ints(&q, &[1, 1, 1]).unwrap();
        assert!(build_j3(&j4, &j3_params(&q, [0; 5])).is_err());
    }

    #[test]
    fn j3_solver() {
        let f3 = zp(3);
        let j = CliffordAlgebra::from_ints(&f3, &[1, 1]).unwrap();
        let params = solve_j3_params(&j).unwrap().found().unwrap();
        let r = build_j3(&j, &params).unwrap();
        assert!(!r.is_zero());

        let q = FieldCtx::rationals();
        let j = CliffordAlgebra::from_ints(&q, &[1, 1]).unwrap();
        let params = solve_j3_params(&j).unwrap().found().unwrap();
        assert_eq!((params.a.clone(), params.b.clone(), params.c.clone()), (q.one(), q.zero(), q.one()));
        assert!(!build_j3(&j, &params).unwrap().is_zero());

        let j = CliffordAlgebra::from_ints(&q, &[-1, -1]).unwrap();
        assert_eq!(solve_j3_params_bounded(&j, 40).unwrap(), Solution::Undecided);
    }

    #[test]
    fn j3_family_match() {
        let f5 = zp(5);
        let j = CliffordAlgebra::from_ints(&f5, &[1, 1]).unwrap();
        let r = build_j3(&j, &j3_params(&f5, [0, 1, 2, 3, 1])).unwrap();
        let params = match_j3_family(&r).unwrap();
        assert_eq!(build_j3(&j, &params).unwrap(), r);
        assert!(match_j3_family(&LinOperator::zero(&j)).is_some());
        assert!(match_j3_family(&LinOperator::identity(&j)).is_none());
    }

    #[test]
    fn example4_split_form() {
        let f5 = zp(5);
        let j = CliffordAlgebra::from_ints(&f5, &[1, 1, 1, 1]).unwrap();
        let params = Example4Params { split: 1, l: ints(&f5, &[1]), k: ints(&f5, &[1, 2, 0]) };
        let r = build_example4(&j, &params).unwrap();
        let expected = LinOperator::from_columns(
            &j,
            vec![
                j.element_from_ints(&[0, 0, 1, 2, 0]).unwrap(),
                j.element_from_ints(&[0, 0, 1, 2, 0]).unwrap(),
                j.element_from_ints(&[4, 4, 0, 0, 0]).unwrap(),
                j.element_from_ints(&[3, 3, 0, 0, 0]).unwrap(),
                j.zero(),
            ],
        )
        .unwrap();
        assert_eq!(r, expected);
        assert_eq!(nilpotency_index(&r), Some(3));
    }

    #[test]
    fn example4_rational() {
        let q = FieldCtx::rationals();
        let j = CliffordAlgebra::from_ints(&q, &[1, 1, -1]).unwrap();
        let params = Example4Params { split: 1, l: ints(&q, &[1]), k: ints(&q, &[1, 1]) };
        let r = build_example4(&j, &params).unwrap();
        assert_eq!(nilpotency_index(&r), Some(3));

        let auto = solve_example4_params(&j, 1).unwrap().found().unwrap();
        assert!(build_example4(&j, &auto).is_ok());
    }

    #[test]
    fn example4_rejects() {
        let f5 = zp(5);
        let j = CliffordAlgebra::from_ints(&f5, &[1, 1, 1, 1]).unwrap();
        let zero_k = Example4Params { split: 1, l: ints(&f5, &[1]), k: ints(&f5, &[0, 0, 0]) };
        assert!(matches!(build_example4(&j, &zero_k), Err(Error::ConstraintViolated(_))));
        let bad_l = Example4Params { split: 1, l: ints(&f5, &[2]), k: ints(&f5, &[1, 2, 0]) };
        assert!(matches!(build_example4(&j, &bad_l), Err(Error::ConstraintViolated(_))));
        let bad_split = Example4Params { split: 4, l: ints(&f5, &[1, 0, 0, 0]), k: vec![] };
        assert!(build_example4(&j, &bad_split).is_err());
    }

    #[test]
    fn example5_reproduces_golden() {
        let f7 = zp(7);
        let j = CliffordAlgebra::from_ints(&f7, &[-1, -1, -1]).unwrap();
        let params = Example5Params { k: [1, 2, 3].map(|x| f7.from_i64(x)), x0: f7.one() };
        let r = build_example5(&j, &params).unwrap();
        let expected =
            LinOperator::from_int_rows(&j, &[&[0, 1, 2, 3], &[1, 0, 3, 5], &[2, 4, 0, 1], &[3, 2, 6, 0]]).unwrap();
        assert_eq!(r, expected);
    }

    #[test]
    fn example5_rejects() {
        let f7 = zp(7);
        let j = CliffordAlgebra::from_ints(&f7, &[-1, -1, -1]).unwrap();
        let bad_k = Example5Params { k: [1, 1, 1].map(|x| f7.from_i64(x)), x0: f7.one() };
        assert!(matches!(build_example5(&j, &bad_k), Err(Error::ConstraintViolated(_))));
        let bad_x = Example5Params { k: [1, 2, 3].map(|x| f7.from_i64(x)), x0: f7.from_i64(2) };
        assert!(matches!(build_example5(&j, &bad_x), Err(Error::ConstraintViolated(_))));
        let zero_k = Example5Params { k: [0, 0, 0].map(|x| f7.from_i64(x)), x0: f7.one() };
        assert!(build_example5(&j, &zero_k).is_err());
    }

    #[test]
    fn example5_auto() {
        let f7 = zp(7);
        let j = CliffordAlgebra::from_ints(&f7, &[-1, -1, -1]).unwrap();
        let params = solve_example5_params(&j).unwrap().found().unwrap();
        assert!(build_example5(&j, &params).is_ok());
        // -1 * 1 * 1 * ... : x^2 = -d1 d2 d3 = -1 has no root mod 7
        let j = CliffordAlgebra::from_ints(&f7, &[1, 1, 1]).unwrap();
        assert_eq!(solve_example5_params(&j).unwrap(), Solution::Absent);
    }

    #[test]
    fn bigc_examples() {
        let f5 = zp(5);
        let j = CliffordAlgebra::from_ints(&f5, &[1, 1, 1]).unwrap();
        let r = build_bigc(&j).unwrap();
        assert_eq!(r.column(0), &j.element_from_ints(&[0, 0, 1, 2]).unwrap());
        assert_eq!(r.column(2), &j.element_from_ints(&[4, 4, 0, 0]).unwrap());
        assert_eq!(r.column(3), &j.element_from_ints(&[3, 3, 0, 0]).unwrap());
        assert_eq!(nilpotency_index(&r), Some(3));

        let f7 = zp(7);
        for d in [[1, 1, 1], [2, 2, 2]] {
            let j = CliffordAlgebra::from_ints(&f7, &d).unwrap();
            assert!(matches!(build_bigc(&j), Err(Error::MissingRoots(_))));
        }
    }

    #[test]
    fn index3_witness_all_nonresidues_p7() {
        // n = 4, every d_i a nonresidue mod 7: only the cyclic construction applies
        let f7 = zp(7);
        let j = CliffordAlgebra::from_ints(&f7, &[3, 3, 5, 6]).unwrap();
        let r = find_index3_witness(&j, 0).unwrap().unwrap();
        assert_eq!(nilpotency_index(&r), Some(3));
    }

    #[test]
    fn index3_witness_absent_for_even_case() {
        // (1,1,2) mod 5: residue count 2, no witness exists
        let f5 = zp(5);
        let j = CliffordAlgebra::from_ints(&f5, &[1, 1, 2]).unwrap();
        assert!(find_index3_witness(&j, 0).unwrap().is_none());
    }
}
