//! Complete enumeration of weight-zero RB-operators over `Z_p`.
//!
//! Naive mode walks all `p^((n+1)^2)` matrices. Pruned mode fixes `R(1)`
//! first, filters each later column by the enabled [`PruningRules`] and,
//! whenever a column is placed, drops candidates for the later columns that
//! break the identity on `(e_i, e_j)` with it.
//! Every leaf gets the full RB check, so both modes count exactly the same
//! operators.
//!
//! Work is split into contiguous shards of `R(1)` values. Shards share only
//! the node budget and are merged in order, so results do not depend on
//! `parallel_width`.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use super::kernel::{FpKernel, Vector, MAX_BASIS};
use super::{Census, Certification, Method, RbIndexVerdict, SearchConfig, SearchMode};
use crate::constructions::find_index3_witness;
use crate::error::{Error, Result};
use crate::jordan::{BilinearForm, CliffordAlgebra};
use crate::quadform::DEFAULT_HEIGHT_BOUND;
use crate::scalars::FieldCtx;

const FLUSH_EVERY: u64 = 1 << 14;

fn prime_algebra(ctx: &FieldCtx, form: &BilinearForm) -> Result<(CliffordAlgebra, FpKernel)> {
    if ctx.modulus().is_none() {
        return Err(Error::UnsupportedField(format!("exhaustive search needs a prime field, got {ctx}")));
    }
    let algebra = CliffordAlgebra::new(ctx.clone(), form.clone())?;
    let kernel = FpKernel::new(&algebra).expect("prime field");
    Ok((algebra, kernel))
}

fn checked_pow(p: u32, e: usize) -> Option<u64> {
    (p as u64).checked_pow(e as u32)
}

/// Every vector of `Z_p^dim`, first coordinate varying slowest.
fn all_vectors(p: u32, dim: usize) -> Vec<Vec<u32>> {
    let total = checked_pow(p, dim).expect("vector space size") as usize;
    let mut out = Vec::with_capacity(total);
    let mut v = vec![0u32; dim];
    for _ in 0..total {
        out.push(v.clone());
        for t in (0..dim).rev() {
            v[t] += 1;
            if v[t] < p {
                break;
            }
            v[t] = 0;
        }
    }
    out
}

struct Budget<'a> {
    limit: u64,
    used: &'a AtomicU64,
    stop: &'a AtomicBool,
    local: u64,
}

impl Budget<'_> {
    /// Counts one node; false once the shared limit is exhausted.
    #[inline]
    fn tick(&mut self) -> bool {
        self.local += 1;
        if self.local == FLUSH_EVERY {
            self.flush();
        }
        !self.stop.load(Ordering::Relaxed)
    }

    fn flush(&mut self) {
        let total = self.used.fetch_add(self.local, Ordering::Relaxed) + self.local;
        self.local = 0;
        if total > self.limit {
            self.stop.store(true, Ordering::Relaxed);
        }
    }
}

struct Recorder<'a> {
    kernel: &'a FpKernel,
    algebra: &'a CliffordAlgebra,
    collect: bool,
    census: Census,
}

impl Recorder<'_> {
    fn leaf(&mut self, m: &[u32]) {
        self.census.candidates_checked += 1;
        if !self.kernel.is_rb(m) {
            return;
        }
        match self.kernel.nilpotency_index(m) {
            Some(s) => {
                *self.census.by_index.entry(s).or_default() += 1;
                if !self.census.first_by_index.contains_key(&s) {
                    self.census.first_by_index.insert(s, self.kernel.to_operator(self.algebra, m));
                }
            }
            None => self.census.non_nilpotent += 1,
        }
        if self.collect {
            self.census.operators.push(self.kernel.to_operator(self.algebra, m));
        }
    }
}

/// Runs `work` on contiguous chunks of `units`, one thread per chunk, and
/// merges the censuses in chunk order.
fn sharded<T: Sync>(
    units: &[T],
    width: usize,
    seed: &Census,
    work: impl Fn(&[T], Census) -> Census + Sync,
) -> Census {
    let width = width.clamp(1, units.len().max(1));
    if width == 1 {
        return work(units, seed.clone());
    }
    let chunk = units.len().div_ceil(width);
    let parts: Vec<Census> = std::thread::scope(|s| {
        let handles: Vec<_> = units
            .chunks(chunk)
            .map(|c| {
                let work = &work;
                let seed = seed.clone();
                s.spawn(move || work(c, seed))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("search shard panicked")).collect()
    });
    let mut total = seed.clone();
    for part in parts {
        total.merge(part);
    }
    total
}

fn naive(algebra: &CliffordAlgebra, kernel: &FpKernel, cfg: &SearchConfig) -> Census {
    let (p, dim) = (kernel.p, kernel.dim);
    let seed = Census::empty(p, algebra.form().clone(), Certification::Naive);
    let col0 = all_vectors(p, dim);
    let mut census = sharded(&col0, cfg.parallel_width, &seed, |chunk, census| {
        let mut rec = Recorder { kernel, algebra, collect: cfg.collect_operators, census };
        let mut m = vec![0u32; dim * dim];
        for c in chunk {
            m[..dim].copy_from_slice(c);
            m[dim..].fill(0);
            'odometer: loop {
                rec.leaf(&m);
                for t in (dim..dim * dim).rev() {
                    m[t] += 1;
                    if m[t] < p {
                        continue 'odometer;
                    }
                    m[t] = 0;
                }
                break;
            }
        }
        rec.census
    });
    census.complete = true;
    census
}

struct Pruner<'a> {
    kernel: &'a FpKernel,
    cfg: &'a SearchConfig,
    /// Columns allowed for `R(e_i)` before any dependence on `R(1)`.
    base: &'a [Vec<u32>],
}

impl Pruner<'_> {
    fn unit_ok(&self, c: &[u32]) -> bool {
        let (k, rules) = (self.kernel, &self.cfg.pruning);
        if rules.unit_image && c.iter().any(|&x| x != 0) && (c[0] != 0 || k.pair(c, c) != 0) {
            return false;
        }
        !rules.norm_zero || k.norm(c) == 0
    }

    /// Candidates for `R(e_i)` given `R(1) = c`, including the identity on
    /// `(e_i, e_i)`.
    fn column_candidates(&self, c: &[u32], i: usize) -> Vec<&[u32]> {
        let (k, rules) = (self.kernel, &self.cfg.pruning);
        let unit_nonzero = c.iter().any(|&x| x != 0);
        self.base
            .iter()
            .map(Vec::as_slice)
            .filter(|x| !(unit_nonzero && rules.column_squares) || x[i] == 0)
            .filter(|x| !(unit_nonzero && rules.unit_pairing) || k.pair(c, x) == 0)
            .filter(|x| !rules.pair_identity || k.local_pair_ok_cols(c, x, i, x, i))
            .collect()
    }

    /// Conditions linking `R(e_i) = ci` and `R(e_j) = cj` for `i != j`.
    #[inline]
    fn compatible(&self, c0: &[u32], ci: &[u32], i: usize, cj: &[u32], j: usize, unit_nonzero: bool) -> bool {
        let (k, rules) = (self.kernel, &self.cfg.pruning);
        if unit_nonzero && rules.column_pairs {
            let p = k.p;
            if (k.d[j - 1] * ci[j] + k.d[i - 1] * cj[i]) % p != 0 || k.pair(ci, cj) != ci[0] * cj[0] % p {
                return false;
            }
        }
        !rules.pair_identity || k.local_pair_ok_cols(c0, ci, i, cj, j)
    }

    /// With every column but the last placed, the identity on `(1, e_b)`,
    /// `b < n`, reads `R(e_b)_n R(e_n) = r_b` for a known vector `r_b`:
    /// `R(1) R(e_b) - d_b k_b R(1) - k_0 R(e_b) - sum_{t<n} R(e_b)_t R(e_t)`
    /// (for `b = 0`: `R(1)^2 / 2 - sum_{t<n} R(1)_t R(e_t)`).
    fn last_column_residuals(&self, m: &[u32]) -> Vec<Vector> {
        let k = self.kernel;
        let (p, dim, n) = (k.p, k.dim, k.dim - 1);
        let c0 = k.column(m, 0);
        let half = (p + 1) / 2;
        (0..n)
            .map(|b| {
                let cb = k.column(m, b);
                let mut r = [0; MAX_BASIS];
                k.mul(c0, cb, &mut r);
                for t in 0..dim {
                    r[t] = if b == 0 {
                        r[t] * half % p
                    } else {
                        (r[t] + 2 * p * p - k.d[b - 1] * c0[b] % p * c0[t] % p - c0[0] * cb[t] % p) % p
                    };
                }
                for s in 0..n {
                    let cs = k.column(m, s);
                    for t in 0..dim {
                        r[t] = (r[t] + p * p - cb[s] * cs[t]) % p;
                    }
                }
                r
            })
            .collect()
    }

    fn solves_last(&self, m: &[u32], residuals: &[Vector], x: &[u32]) -> bool {
        let k = self.kernel;
        let n = k.dim - 1;
        residuals.iter().enumerate().all(|(b, r)| {
            let coeff = k.column(m, b)[n];
            (0..k.dim).all(|t| coeff * x[t] % k.p == r[t])
        })
    }

    /// Places column `i` from `lists[0]` and narrows the lists of the later
    /// columns to candidates compatible with it.
    fn dfs(
        &self,
        m: &mut [u32],
        i: usize,
        lists: &[Vec<&[u32]>],
        unit_nonzero: bool,
        rec: &mut Recorder,
        budget: &mut Budget,
    ) -> bool {
        let dim = self.kernel.dim;
        if i == dim {
            rec.leaf(m);
            return true;
        }
        let c0 = m[..dim].to_vec();
        let last = if i + 1 == dim && self.cfg.pruning.pair_identity { self.last_column_residuals(m) } else { Vec::new() };
        for &x in &lists[0] {
            if !last.is_empty() && !self.solves_last(m, &last, x) {
                continue;
            }
            if !budget.tick() {
                return false;
            }
            let mut next = Vec::with_capacity(lists.len() - 1);
            for (t, later) in lists[1..].iter().enumerate() {
                let j = i + 1 + t;
                let kept: Vec<&[u32]> =
                    later.iter().copied().filter(|y| self.compatible(&c0, x, i, y, j, unit_nonzero)).collect();
                if kept.is_empty() {
                    break;
                }
                next.push(kept);
            }
            if next.len() < lists.len() - 1 {
                continue;
            }
            m[i * dim..(i + 1) * dim].copy_from_slice(x);
            if !self.dfs(m, i + 1, &next, unit_nonzero, rec, budget) {
                return false;
            }
        }
        true
    }
}

fn pruned(algebra: &CliffordAlgebra, kernel: &FpKernel, cfg: &SearchConfig) -> Result<Census> {
    let (p, dim) = (kernel.p, kernel.dim);
    let seed = Census::empty(p, algebra.form().clone(), Certification::Pruned);
    match checked_pow(p, dim) {
        Some(size) if size <= 1 << 26 => {}
        _ => {
            return Err(Error::BudgetExceeded { explored: 0, partial: Box::new(seed) });
        }
    }
    let all = all_vectors(p, dim);
    let base: Vec<Vec<u32>> = if cfg.pruning.norm_zero {
        all.iter().filter(|x| kernel.norm(x) == 0).cloned().collect()
    } else {
        all.clone()
    };
    let pruner = Pruner { kernel, cfg, base: &base };
    let col0: Vec<&Vec<u32>> = all.iter().filter(|c| pruner.unit_ok(c)).collect();

    let used = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let mut census = sharded(&col0, cfg.parallel_width, &seed, |chunk, census| {
        let mut rec = Recorder { kernel, algebra, collect: cfg.collect_operators, census };
        let mut budget = Budget { limit: cfg.max_pruned_nodes, used: &used, stop: &stop, local: 0 };
        let mut m = vec![0u32; dim * dim];
        for c in chunk {
            m[..dim].copy_from_slice(c);
            let unit_nonzero = c.iter().any(|&x| x != 0);
            let lists: Vec<Vec<&[u32]>> = (1..dim).map(|i| pruner.column_candidates(c, i)).collect();
            if lists.iter().any(Vec::is_empty) {
                continue;
            }
            if !pruner.dfs(&mut m, 1, &lists, unit_nonzero, &mut rec, &mut budget) {
                break;
            }
        }
        budget.flush();
        rec.census
    });
    if stop.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded { explored: used.load(Ordering::Relaxed), partial: Box::new(census) });
    }
    census.complete = true;
    Ok(census)
}

/// Counts every weight-zero RB-operator on `J_{n+1}(f)` over `Z_p` by
/// nilpotency index.
pub fn census(ctx: &FieldCtx, form: &BilinearForm, cfg: &SearchConfig) -> Result<Census> {
    let (algebra, kernel) = prime_algebra(ctx, form)?;
    let space = checked_pow(kernel.p, kernel.dim * kernel.dim);
    let fits = space.is_some_and(|s| s <= cfg.max_naive_space);
    let over_budget = || Error::BudgetExceeded {
        explored: 0,
        partial: Box::new(Census::empty(kernel.p, form.clone(), Certification::Naive)),
    };
    match cfg.mode {
        SearchMode::Naive if fits => Ok(naive(&algebra, &kernel, cfg)),
        SearchMode::Naive => Err(over_budget()),
        SearchMode::Auto if fits => Ok(naive(&algebra, &kernel, cfg)),
        SearchMode::Auto if !cfg.pruning.any() => Err(over_budget()),
        SearchMode::Auto | SearchMode::Pruned => pruned(&algebra, &kernel, cfg),
    }
}

fn verdict_from_census(census: Census) -> Result<RbIndexVerdict> {
    if census.non_nilpotent > 0 {
        return Err(Error::ConstraintViolated(format!(
            "{} RB-operators on ({}) are not nilpotent",
            census.non_nilpotent, census.form
        )));
    }
    let value = census.max_index().expect("the zero operator is always counted");
    Ok(RbIndexVerdict {
        value,
        method: Method::BruteForce,
        witness: census.first_by_index.get(&value).cloned(),
        census: Some(census),
        note: None,
    })
}

/// `rb(J)` as the largest nilpotency index over a complete enumeration.
pub fn rb_index_bruteforce(ctx: &FieldCtx, form: &BilinearForm, cfg: &SearchConfig) -> Result<RbIndexVerdict> {
    verdict_from_census(census(ctx, form, cfg)?)
}

/// Brute force when it fits the budget. Otherwise an explicit operator with
/// `R^2 != 0` certifies the value 3, the largest possible; without one the
/// budget error is returned.
pub fn rb_index_certified(ctx: &FieldCtx, form: &BilinearForm, cfg: &SearchConfig) -> Result<RbIndexVerdict> {
    match census(ctx, form, cfg) {
        Ok(c) => verdict_from_census(c),
        Err(Error::BudgetExceeded { explored, partial }) => {
            let algebra = CliffordAlgebra::new(ctx.clone(), form.clone())?;
            match find_index3_witness(&algebra, DEFAULT_HEIGHT_BOUND)? {
                Some(w) => Ok(RbIndexVerdict {
                    value: 3,
                    method: Method::Constructive,
                    witness: Some(w),
                    census: None,
                    note: Some(format!("search stopped after {explored} nodes; value certified by the witness")),
                }),
                None => Err(Error::BudgetExceeded { explored, partial }),
            }
        }
        Err(e) => Err(e),
    }
}
