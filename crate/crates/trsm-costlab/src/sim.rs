//! Analytic recursion-tree simulator charging `(F, W, S)` along the
//! critical path of the recursive TRSM, with a CARMA-style matmul
//! sub-recursion for the update step.
//!
//! Charging rules (all shapes power-of-two):
//!
//! - TRSM, p = 1: `(n^2·k, 0, 0)`, the local solve.
//! - TRSM k-split (k >= n, k >= 2, and forced below the base size): both
//!   processor halves solve `(n, k/2, p/2)` independently; the critical path
//!   is one half plus an exchange of the per-processor share of the
//!   triangular operand, `n^2/(2p)` words.
//! - TRSM n-split (n > n0): solve the top half, multiply
//!   `(m=n/2, q=n/2, r=k)` to update the bottom right-hand sides, then solve
//!   the bottom half: three dependent phases on all p processors.
//! - Matmul, p = 1: `(2·m·q·r, 0, 0)`.
//! - Matmul split: halve the largest dimension of at least 2 (ties resolved
//!   m, then r, then q) together with p, and exchange the per-processor
//!   share of the operand not indexed by the split dimension (`q·r/p`,
//!   `m·q/p`, or `m·r/p`).
//!
//! Every halving step exchanges between exactly two halves, so group-2
//! collectives make [`CommModel::Tree`] coincide with
//! [`CommModel::Pairwise`] here; log-p factors arise across recursion
//! levels, not within one exchange. Reduction additions after q-splits are
//! not charged, which keeps `F = n^2·k/p` an exact invariant.
//!
//! This is a documented owner-computes model of the recursion's
//! communication, not a reconstruction of any particular production
//! schedule; reports carry the tag `carma-owner-computes`. Absolute
//! constants are model-specific, so the rest of the crate checks
//! self-consistency invariants and growth exponents against it, never
//! constants.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{bounds_report, BoundsReport};
use crate::classify::{classify, Classification, RuleSet};
use crate::cost::{CostVector, ProblemShape};

/// How an exchange within a processor group is charged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CommModel {
    /// One message carrying the per-processor share: `(W=w, S=1)`.
    Pairwise,
    /// A log-depth collective: `(W=w·log2(g), S=log2(g))`.
    Tree,
}

impl CommModel {
    pub fn as_str(self) -> &'static str {
        match self {
            CommModel::Pairwise => "pairwise",
            CommModel::Tree => "tree",
        }
    }
}

impl fmt::Display for CommModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Rectangular matmul instance `C (m×r) += A (m×q) · B (q×r)` on p
/// processors. Dimensions are named to avoid clashing with TRSM's n and k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MatmulShape {
    pub m: u64,
    pub q: u64,
    pub r: u64,
    pub p: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("{what} must be a power of two (got {value})")]
    NotPowerOfTwo { what: &'static str, value: u64 },
    #[error("exchange group must be a power of two of at least 2 (got {0})")]
    InvalidGroup(u64),
    #[error(
        "over-decomposed: no split applicable at n={n}, k={k}, p={p} \
         (p exceeds available parallelism)"
    )]
    OverDecomposed { n: u64, k: u64, p: u64 },
    #[error("over-decomposed matmul: all dimensions below 2 at m={m}, q={q}, r={r}, p={p}")]
    OverDecomposedMatmul { m: u64, q: u64, r: u64, p: u64 },
}

fn require_pow2(what: &'static str, value: u64) -> Result<(), SimError> {
    if value.is_power_of_two() {
        Ok(())
    } else {
        Err(SimError::NotPowerOfTwo { what, value })
    }
}

/// Cost of exchanging `words_per_proc` words within a group.
pub fn exchange_cost(
    words_per_proc: f64,
    group: u64,
    model: CommModel,
) -> Result<CostVector, SimError> {
    if group < 2 || !group.is_power_of_two() {
        return Err(SimError::InvalidGroup(group));
    }
    let rounds = match model {
        CommModel::Pairwise => 1.0,
        CommModel::Tree => (group as f64).log2(),
    };
    Ok(CostVector::new(0.0, words_per_proc * rounds, rounds))
}

// Every split in the recursion exchanges between two halves.
fn halving_exchange(words_per_proc: f64, model: CommModel) -> CostVector {
    exchange_cost(words_per_proc, 2, model).expect("group 2 is always valid")
}

// Exact f64 of a u64 product; shapes are powers of two so this is a dyadic
// value well inside the exact-integer range.
fn prod_f64(a: u64, b: u64) -> f64 {
    (a as u128 * b as u128) as f64
}

/// Which matmul dimension a split halves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MmDim {
    M,
    R,
    Q,
}

// Largest dimension of at least 2, tie-broken in the fixed order m, r, q.
fn mm_split_dim(m: u64, q: u64, r: u64) -> Option<(MmDim, u64)> {
    let mut best: Option<(MmDim, u64)> = None;
    for (dim, val) in [(MmDim::M, m), (MmDim::R, r), (MmDim::Q, q)] {
        if val >= 2 && best.is_none_or(|(_, bv)| val > bv) {
            best = Some((dim, val));
        }
    }
    best
}

/// Critical-path cost of the CARMA-style matmul recursion.
pub fn mm_cost(shape: MatmulShape, model: CommModel) -> Result<CostVector, SimError> {
    require_pow2("m", shape.m)?;
    require_pow2("q", shape.q)?;
    require_pow2("r", shape.r)?;
    require_pow2("p", shape.p)?;
    mm_cost_inner(shape.m, shape.q, shape.r, shape.p, model)
}

fn mm_cost_inner(m: u64, q: u64, r: u64, p: u64, model: CommModel) -> Result<CostVector, SimError> {
    if p == 1 {
        return Ok(CostVector::new(2.0 * prod_f64(m, q) * r as f64, 0.0, 0.0));
    }
    let (dim, _) = mm_split_dim(m, q, r).ok_or(SimError::OverDecomposedMatmul { m, q, r, p })?;
    let share = match dim {
        MmDim::M => prod_f64(q, r),
        MmDim::R => prod_f64(m, q),
        MmDim::Q => prod_f64(m, r),
    } / p as f64;
    let child = match dim {
        MmDim::M => mm_cost_inner(m / 2, q, r, p / 2, model)?,
        MmDim::R => mm_cost_inner(m, q, r / 2, p / 2, model)?,
        MmDim::Q => mm_cost_inner(m, q / 2, r, p / 2, model)?,
    };
    Ok(halving_exchange(share, model).seq(child))
}

/// Critical-path cost of the recursive TRSM. Requires power-of-two
/// `n, k, p, n0`; fails with [`SimError::OverDecomposed`] when p cannot be
/// consumed by k-splits (equivalently when k < p).
pub fn trsm_cost(shape: &ProblemShape, model: CommModel) -> Result<CostVector, SimError> {
    validate_sim_shape(shape)?;
    trsm_cost_inner(shape.n, shape.k, shape.p, shape.n0, model)
}

fn validate_sim_shape(shape: &ProblemShape) -> Result<(), SimError> {
    require_pow2("n", shape.n)?;
    require_pow2("k", shape.k)?;
    require_pow2("p", shape.p)?;
    require_pow2("n0", shape.n0)?;
    Ok(())
}

fn trsm_cost_inner(
    n: u64,
    k: u64,
    p: u64,
    n0: u64,
    model: CommModel,
) -> Result<CostVector, SimError> {
    if p == 1 {
        return Ok(CostVector::new(prod_f64(n, n) * k as f64, 0.0, 0.0));
    }
    if k >= n && k >= 2 {
        return ksplit_cost(n, k, p, n0, model);
    }
    if n > n0 && n >= 2 {
        let half = trsm_cost_inner(n / 2, k, p, n0, model)?;
        let update = mm_cost_inner(n / 2, n / 2, k, p, model)?;
        return Ok(half.seq(update).seq(half));
    }
    if k >= 2 {
        return ksplit_cost(n, k, p, n0, model);
    }
    Err(SimError::OverDecomposed { n, k, p })
}

fn ksplit_cost(n: u64, k: u64, p: u64, n0: u64, model: CommModel) -> Result<CostVector, SimError> {
    // Replicate the triangular operand: n^2/2 words total, per-processor
    // share n^2/(2p).
    let share = prod_f64(n, n) / (2 * p) as f64;
    let child = trsm_cost_inner(n, k / 2, p / 2, n0, model)?;
    Ok(halving_exchange(share, model).seq(child))
}

/// How a recursion node splits its work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NodeKind {
    /// Local leaf work; no communication.
    Base,
    /// Parallel halving of the right-hand sides.
    KSplit,
    /// Sequential top-solve / update / bottom-solve.
    NSplit,
    /// Parallel halving of one matmul dimension.
    MmSplit(MmDim),
}

/// Problem attached to a recursion node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NodeShape {
    Trsm { n: u64, k: u64, p: u64 },
    Matmul { m: u64, q: u64, r: u64, p: u64 },
}

impl fmt::Display for NodeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeShape::Trsm { n, k, p } => write!(f, "trsm(n={n}, k={k}, p={p})"),
            NodeShape::Matmul { m, q, r, p } => write!(f, "mm(m={m}, q={q}, r={r}, p={p})"),
        }
    }
}

/// Fully materialized recursion tree: every node, including both parallel
/// children. Folding it is the independent oracle for [`trsm_cost`], which
/// walks only one child of each parallel split.
#[derive(Debug, Clone, PartialEq)]
pub struct RecursionTree {
    pub kind: NodeKind,
    pub shape: NodeShape,
    /// Cost charged at this node itself (exchange at splits, work at leaves).
    pub local: CostVector,
    pub children: Vec<RecursionTree>,
}

impl RecursionTree {
    /// Folds the tree: sequential children via `seq`, parallel children via
    /// `par`. Panics if parallel siblings disagree, which the construction
    /// rules make impossible.
    pub fn fold(&self) -> CostVector {
        match self.kind {
            NodeKind::Base => self.local,
            NodeKind::NSplit => self
                .children
                .iter()
                .fold(self.local, |acc, c| acc.seq(c.fold())),
            NodeKind::KSplit | NodeKind::MmSplit(_) => {
                let a = self.children[0].fold();
                let b = self.children[1].fold();
                assert_eq!(a, b, "parallel siblings must be cost-equal");
                self.local.seq(a.par(b))
            }
        }
    }

    /// True iff every parallel split in the tree has cost-equal children.
    pub fn parallel_siblings_symmetric(&self) -> bool {
        let here = match self.kind {
            NodeKind::KSplit | NodeKind::MmSplit(_) => {
                self.children[0].fold() == self.children[1].fold()
            }
            _ => true,
        };
        here && self
            .children
            .iter()
            .all(RecursionTree::parallel_siblings_symmetric)
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(RecursionTree::node_count)
            .sum::<usize>()
    }

    /// Indented one-node-per-line rendering.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        let kind = match self.kind {
            NodeKind::Base => "Base".to_string(),
            NodeKind::KSplit => "KSplit".to_string(),
            NodeKind::NSplit => "NSplit".to_string(),
            NodeKind::MmSplit(d) => format!("MmSplit({:?})", d),
        };
        out.push_str(&format!(
            "{}{} {} local=(F={}, W={}, S={})\n",
            "  ".repeat(depth),
            kind,
            self.shape,
            self.local.flops,
            self.local.words,
            self.local.messages
        ));
        for c in &self.children {
            c.render_into(out, depth + 1);
        }
    }
}

/// Materializes the whole recursion tree for a shape.
pub fn expand_tree(shape: &ProblemShape, model: CommModel) -> Result<RecursionTree, SimError> {
    validate_sim_shape(shape)?;
    expand_trsm(shape.n, shape.k, shape.p, shape.n0, model)
}

fn expand_trsm(
    n: u64,
    k: u64,
    p: u64,
    n0: u64,
    model: CommModel,
) -> Result<RecursionTree, SimError> {
    let shape = NodeShape::Trsm { n, k, p };
    if p == 1 {
        return Ok(RecursionTree {
            kind: NodeKind::Base,
            shape,
            local: CostVector::new(prod_f64(n, n) * k as f64, 0.0, 0.0),
            children: Vec::new(),
        });
    }
    if k >= n && k >= 2 {
        return expand_ksplit(n, k, p, n0, model);
    }
    if n > n0 && n >= 2 {
        let top = expand_trsm(n / 2, k, p, n0, model)?;
        let update = expand_mm(n / 2, n / 2, k, p, model)?;
        let bottom = expand_trsm(n / 2, k, p, n0, model)?;
        return Ok(RecursionTree {
            kind: NodeKind::NSplit,
            shape,
            local: CostVector::ZERO,
            children: vec![top, update, bottom],
        });
    }
    if k >= 2 {
        return expand_ksplit(n, k, p, n0, model);
    }
    Err(SimError::OverDecomposed { n, k, p })
}

fn expand_ksplit(
    n: u64,
    k: u64,
    p: u64,
    n0: u64,
    model: CommModel,
) -> Result<RecursionTree, SimError> {
    let share = prod_f64(n, n) / (2 * p) as f64;
    // Both halves materialized independently.
    let left = expand_trsm(n, k / 2, p / 2, n0, model)?;
    let right = expand_trsm(n, k / 2, p / 2, n0, model)?;
    Ok(RecursionTree {
        kind: NodeKind::KSplit,
        shape: NodeShape::Trsm { n, k, p },
        local: halving_exchange(share, model),
        children: vec![left, right],
    })
}

fn expand_mm(m: u64, q: u64, r: u64, p: u64, model: CommModel) -> Result<RecursionTree, SimError> {
    let shape = NodeShape::Matmul { m, q, r, p };
    if p == 1 {
        return Ok(RecursionTree {
            kind: NodeKind::Base,
            shape,
            local: CostVector::new(2.0 * prod_f64(m, q) * r as f64, 0.0, 0.0),
            children: Vec::new(),
        });
    }
    let (dim, _) = mm_split_dim(m, q, r).ok_or(SimError::OverDecomposedMatmul { m, q, r, p })?;
    let (share, halves) = match dim {
        MmDim::M => (prod_f64(q, r), (m / 2, q, r)),
        MmDim::R => (prod_f64(m, q), (m, q, r / 2)),
        MmDim::Q => (prod_f64(m, r), (m, q / 2, r)),
    };
    let (hm, hq, hr) = halves;
    let left = expand_mm(hm, hq, hr, p / 2, model)?;
    let right = expand_mm(hm, hq, hr, p / 2, model)?;
    Ok(RecursionTree {
        kind: NodeKind::MmSplit(dim),
        shape,
        local: halving_exchange(share / p as f64, model),
        children: vec![left, right],
    })
}

/// Simulator output joined with regime classification and the bandwidth
/// bounds for the same shape.
#[derive(Debug, Clone, Serialize)]
pub struct SimReport {
    pub shape: ProblemShape,
    pub collective: CommModel,
    pub original: Classification,
    pub revised: Classification,
    pub cost: CostVector,
    pub bounds: BoundsReport,
    /// `W_sim / bound`; `None` (rendered "n/a") where the bound is 0.
    pub w_over_claimed_two: Option<f64>,
    pub w_over_corrected_two: Option<f64>,
    pub w_over_claimed_three: Option<f64>,
    pub w_over_corrected_three: Option<f64>,
    /// Data-layout discipline behind the charging rules.
    pub layout: &'static str,
}

fn w_ratio(w: f64, bound: f64) -> Option<f64> {
    if bound > 0.0 {
        Some(w / bound)
    } else {
        None
    }
}

pub fn format_ratio(r: Option<f64>) -> String {
    match r {
        Some(v) => v.to_string(),
        None => "n/a".to_string(),
    }
}

/// Runs the simulator on a shape and joins the result with both
/// classifications and the bound formulas.
pub fn compare_to_bounds(shape: &ProblemShape, model: CommModel) -> Result<SimReport, SimError> {
    let cost = trsm_cost(shape, model)?;
    let bounds = bounds_report(shape);
    Ok(SimReport {
        shape: *shape,
        collective: model,
        original: classify(shape, RuleSet::Original),
        revised: classify(shape, RuleSet::RevisedTwoLarge),
        cost,
        bounds,
        w_over_claimed_two: w_ratio(cost.words, bounds.claimed_two),
        w_over_corrected_two: w_ratio(cost.words, bounds.corrected_two),
        w_over_claimed_three: w_ratio(cost.words, bounds.claimed_three),
        w_over_corrected_three: w_ratio(cost.words, bounds.corrected_three),
        layout: "carma-owner-computes",
    })
}
