//! The nilpotency index `rb(J_{n+1}(f))`: the smallest `s` such that every
//! weight-zero RB-operator `R` satisfies `R^s = 0`.
//!
//! [`rb_index_table`] evaluates the closed-form case analysis;
//! [`rb_index_bruteforce`] and [`census`] enumerate every RB-operator over a
//! small prime field and serve as an independent certificate.

mod kernel;
mod search;
mod table;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::jordan::BilinearForm;
use crate::rbop::LinOperator;

pub use search::{census, rb_index_bruteforce, rb_index_certified};
pub use table::rb_index_table;

/// Default cap on `p^((n+1)^2)` for plain enumeration.
pub const DEFAULT_NAIVE_SPACE: u64 = 100_000_000;
/// Default cap on partial assignments visited by the pruned search.
pub const DEFAULT_PRUNED_NODES: u64 = 20_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    Naive,
    Pruned,
    Constructive,
}

impl fmt::Display for Certification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certification::Naive => "naive",
            Certification::Pruned => "pruned",
            Certification::Constructive => "constructive",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    TheoremTable,
    BruteForce,
    Constructive,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::TheoremTable => "table",
            Method::BruteForce => "brute",
            Method::Constructive => "constructive",
        })
    }
}

/// Counts of weight-zero RB-operators on one algebra, by nilpotency index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub p: u32,
    pub form: BilinearForm,
    pub by_index: BTreeMap<usize, u64>,
    /// RB-operators with no vanishing power up to `n + 2`. Always zero on
    /// `J_{n+1}(f)`; kept so a regression shows up in the output.
    pub non_nilpotent: u64,
    pub certification: Certification,
    /// False for the partial census carried by a budget error.
    pub complete: bool,
    /// Candidates that reached the full RB check.
    pub candidates_checked: u64,
    /// Every operator found, in enumeration order, when requested.
    #[serde(skip)]
    pub operators: Vec<LinOperator>,
    /// The first operator found with each index.
    #[serde(skip)]
    pub first_by_index: BTreeMap<usize, LinOperator>,
}

impl Census {
    pub(crate) fn empty(p: u32, form: BilinearForm, certification: Certification) -> Self {
        Census {
            p,
            form,
            by_index: BTreeMap::new(),
            non_nilpotent: 0,
            certification,
            complete: false,
            candidates_checked: 0,
            operators: Vec::new(),
            first_by_index: BTreeMap::new(),
        }
    }

    pub fn total(&self) -> u64 {
        self.by_index.values().sum::<u64>() + self.non_nilpotent
    }

    pub fn max_index(&self) -> Option<usize> {
        self.by_index.keys().next_back().copied()
    }

    pub fn count(&self, index: usize) -> u64 {
        self.by_index.get(&index).copied().unwrap_or(0)
    }

    /// Adds `other` after `self`. Associative, so shard order fixes the result.
    pub(crate) fn merge(&mut self, other: Census) {
        for (k, v) in other.by_index {
            *self.by_index.entry(k).or_default() += v;
        }
        self.non_nilpotent += other.non_nilpotent;
        self.candidates_checked += other.candidates_checked;
        self.operators.extend(other.operators);
        for (k, r) in other.first_by_index {
            self.first_by_index.entry(k).or_insert(r);
        }
    }

    /// Rows `(p, form, index, count, certified)` for the census CSV.
    pub fn csv_rows(&self) -> Vec<CensusRow> {
        self.by_index
            .iter()
            .map(|(&index, &count)| CensusRow {
                p: self.p,
                form: self.form.to_string(),
                index,
                count,
                certified: self.certification,
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub p: u32,
    pub form: String,
    pub index: usize,
    pub count: u64,
    pub certified: Certification,
}

/// Necessary conditions the pruned search may apply to partial assignments.
/// Each one holds for every weight-zero RB-operator, so any combination keeps
/// the enumeration complete.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PruningRules {
    /// `R(1) = 0`, or `R(1)` has zero scalar part and `(R(1), R(1)) = 0`.
    pub unit_image: bool,
    /// Every column `alpha + v` has `alpha^2 = (v, v)`.
    pub norm_zero: bool,
    /// When `R(1) = k != 0`: `(k, R(e_i) - alpha_0) = 0`.
    pub unit_pairing: bool,
    /// When `R(1) != 0`: the `e_i` coordinate of `R(e_i)` is zero.
    pub column_squares: bool,
    /// When `R(1) != 0`: `d_j alpha_j + d_i beta_i = 0` and `(v, u) = alpha_0 beta_0`.
    pub column_pairs: bool,
    /// The identity on `(e_i, e_j)` as soon as columns `0, i, j` are fixed.
    pub pair_identity: bool,
}

impl PruningRules {
    pub fn all() -> Self {
        PruningRules {
            unit_image: true,
            norm_zero: true,
            unit_pairing: true,
            column_squares: true,
            column_pairs: true,
            pair_identity: true,
        }
    }

    pub fn none() -> Self {
        PruningRules {
            unit_image: false,
            norm_zero: false,
            unit_pairing: false,
            column_squares: false,
            column_pairs: false,
            pair_identity: false,
        }
    }

    pub fn any(&self) -> bool {
        self.unit_image
            || self.norm_zero
            || self.unit_pairing
            || self.column_squares
            || self.column_pairs
            || self.pair_identity
    }
}

impl Default for PruningRules {
    fn default() -> Self {
        Self::all()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// Plain enumeration when it fits `max_naive_space`, else pruned.
    #[default]
    Auto,
    Naive,
    Pruned,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub max_naive_space: u64,
    pub max_pruned_nodes: u64,
    pub pruning: PruningRules,
    pub mode: SearchMode,
    /// Number of shards; each runs on its own thread.
    pub parallel_width: usize,
    /// Keep every operator found in [`Census::operators`].
    pub collect_operators: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_naive_space: DEFAULT_NAIVE_SPACE,
            max_pruned_nodes: DEFAULT_PRUNED_NODES,
            pruning: PruningRules::all(),
            mode: SearchMode::Auto,
            parallel_width: std::thread::available_parallelism().map_or(1, |n| n.get()),
            collect_operators: false,
        }
    }
}

impl SearchConfig {
    pub fn naive() -> Self {
        SearchConfig { mode: SearchMode::Naive, pruning: PruningRules::none(), ..Self::default() }
    }

    pub fn pruned() -> Self {
        SearchConfig { mode: SearchMode::Pruned, ..Self::default() }
    }

    pub fn collecting(mut self) -> Self {
        self.collect_operators = true;
        self
    }
}

/// `rb(J)` together with how it was obtained.
#[derive(Clone, Debug, Serialize)]
pub struct RbIndexVerdict {
    pub value: usize,
    pub method: Method,
    /// An operator with nilpotency index `value`, when one was built or found.
    pub witness: Option<LinOperator>,
    pub census: Option<Census>,
    pub note: Option<String>,
}
