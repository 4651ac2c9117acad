//! Three-regime categorization of TRSM shapes and the coverage it leaves.
//!
//! A shape falls in a regime according to how the ratio `r = k/n` compares
//! with the processor count p:
//!
//! - one large dimension: `n < k/p` (r > p)
//! - two large dimensions: `n > k·sqrt(p)` (r < 1/sqrt(p)) under the
//!   original rules, `n < k·sqrt(p)` (r > 1/sqrt(p)) under the revised ones
//! - three large dimensions: `k/p < n < k/sqrt(p)` (sqrt(p) < r < p)
//!
//! All inequalities are strict, exactly as stated; ratios on a boundary fall
//! into a gap and are reported, not smoothed over. Under the original rules
//! the three conditions are pairwise disjoint but leave `[1/sqrt(p), sqrt(p)]`
//! and the point `{p}` uncovered; under the revised two-large condition the
//! gap moves to `(0, 1/sqrt(p)]` while `(sqrt(p), p)` and `(p, inf)` become
//! overlaps.
//!
//! [`classify`] evaluates the conditions on integer shapes with exact
//! cross-multiplied forms (`n^2 > k^2·p` instead of `n > k·sqrt(p)`), so no
//! float rounding can misclassify near a boundary. [`classify_ratio`] is the
//! float counterpart used for dense ratio sampling and region maps; it shares
//! the endpoint values `1/sqrt(p)`, `sqrt(p)`, `p` with [`gap_set`] and
//! [`overlap_set`], whose interval structure it is checked against. Interval
//! endpoints are f64 stand-ins for the exact reals `1/sqrt(p)`, `sqrt(p)`, `p`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cost::ProblemShape;

/// Which condition set governs the two-large-dimensions regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RuleSet {
    /// Two large dimensions when `n > k·sqrt(p)`.
    #[serde(rename = "original")]
    Original,
    /// Two large dimensions when `n < k·sqrt(p)`.
    #[serde(rename = "revised")]
    RevisedTwoLarge,
}

impl RuleSet {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleSet::Original => "original",
            RuleSet::RevisedTwoLarge => "revised",
        }
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Regime labels, ordered as they appear in classifications.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseLabel {
    OneLarge,
    TwoLarge,
    ThreeLarge,
}

impl CaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::OneLarge => "one-large",
            CaseLabel::TwoLarge => "two-large",
            CaseLabel::ThreeLarge => "three-large",
        }
    }

    /// Single-character legend used by region maps.
    pub fn symbol(self) -> char {
        match self {
            CaseLabel::OneLarge => '1',
            CaseLabel::TwoLarge => '2',
            CaseLabel::ThreeLarge => '3',
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The regimes a shape falls in, plus gap/overlap flags.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    /// Every case whose condition holds, in [`CaseLabel`] order.
    pub labels: Vec<CaseLabel>,
    /// The ratio `r = k/n`.
    pub ratio: f64,
    /// True iff no case matched.
    pub is_gap: bool,
    /// True iff at least two cases matched.
    pub is_overlap: bool,
}

impl Classification {
    fn from_labels(labels: Vec<CaseLabel>, ratio: f64) -> Self {
        let is_gap = labels.is_empty();
        let is_overlap = labels.len() >= 2;
        Classification {
            labels,
            ratio,
            is_gap,
            is_overlap,
        }
    }

    /// Map-legend symbol: the single case digit, `.` for a gap, `X` for an
    /// overlap.
    pub fn symbol(&self) -> char {
        if self.is_gap {
            '.'
        } else if self.is_overlap {
            'X'
        } else {
            self.labels[0].symbol()
        }
    }
}

/// An interval of the ratio axis, possibly degenerate or unbounded above.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioInterval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl RatioInterval {
    pub fn closed(lo: f64, hi: f64) -> Self {
        RatioInterval {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn open(lo: f64, hi: f64) -> Self {
        RatioInterval {
            lo,
            hi,
            lo_closed: false,
            hi_closed: false,
        }
    }

    /// A single ratio: `[x, x]`.
    pub fn point(x: f64) -> Self {
        Self::closed(x, x)
    }

    pub fn contains(&self, r: f64) -> bool {
        let above = if self.lo_closed {
            r >= self.lo
        } else {
            r > self.lo
        };
        let below = if self.hi_closed {
            r <= self.hi
        } else {
            r < self.hi
        };
        above && below
    }
}

impl fmt::Display for RatioInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi && self.lo_closed && self.hi_closed {
            return write!(f, "{{{}}}", self.lo);
        }
        let open = if self.lo_closed { '[' } else { '(' };
        let close = if self.hi_closed { ']' } else { ')' };
        if self.hi.is_infinite() {
            write!(f, "{}{}, \u{221e})", open, self.lo)
        } else {
            write!(f, "{}{}, {}{}", open, self.lo, self.hi, close)
        }
    }
}

/// Renders a list of intervals as a union, `"[0.25, 4] ∪ {16}"` style.
pub fn format_interval_union(intervals: &[RatioInterval]) -> String {
    if intervals.is_empty() {
        return "\u{2205}".to_string();
    }
    intervals
        .iter()
        .map(|iv| iv.to_string())
        .collect::<Vec<_>>()
        .join(" \u{222a} ")
}

/// Classifies an integer shape. Conditions are evaluated with exact
/// cross-multiplied integer forms in `u128`; `n0` plays no role here.
pub fn classify(shape: &ProblemShape, rules: RuleSet) -> Classification {
    let n = shape.n as u128;
    let k = shape.k as u128;
    let p = shape.p as u128;
    // k^2·p can exceed u128 only when it already dwarfs n^2 < 2^128, so a
    // saturating product preserves every comparison verdict.
    let n_sq = n * n;
    let k_sq_p = (k * k).saturating_mul(p);
    let n_sq_p = (n * n).saturating_mul(p);
    let k_sq = k * k;

    let one_large = n * p < k;
    let two_large = match rules {
        RuleSet::Original => n_sq > k_sq_p,
        RuleSet::RevisedTwoLarge => n_sq < k_sq_p,
    };
    let three_large = k < n * p && n_sq_p < k_sq;

    let mut labels = Vec::new();
    if one_large {
        labels.push(CaseLabel::OneLarge);
    }
    if two_large {
        labels.push(CaseLabel::TwoLarge);
    }
    if three_large {
        labels.push(CaseLabel::ThreeLarge);
    }
    Classification::from_labels(labels, shape.ratio())
}

/// Classifies a real-valued ratio `r = k/n` directly. Used for dense ratio
/// sampling and region maps; compares against the same f64 endpoint values
/// that [`gap_set`] and [`overlap_set`] report.
pub fn classify_ratio(r: f64, p: u64, rules: RuleSet) -> Classification {
    let pf = p as f64;
    let sqrt_p = pf.sqrt();
    let inv_sqrt_p = 1.0 / sqrt_p;

    let one_large = r > pf;
    let two_large = match rules {
        RuleSet::Original => r < inv_sqrt_p,
        RuleSet::RevisedTwoLarge => r > inv_sqrt_p,
    };
    let three_large = sqrt_p < r && r < pf;

    let mut labels = Vec::new();
    if one_large {
        labels.push(CaseLabel::OneLarge);
    }
    if two_large {
        labels.push(CaseLabel::TwoLarge);
    }
    if three_large {
        labels.push(CaseLabel::ThreeLarge);
    }
    Classification::from_labels(labels, r)
}

/// The exact set of ratios `r > 0` matched by no case.
///
/// Original rules: `[1/sqrt(p), sqrt(p)]` plus the isolated point `{p}`
/// (collapsing to `{1}` at p = 1). Revised rules: `(0, 1/sqrt(p)]`.
pub fn gap_set(p: u64, rules: RuleSet) -> Vec<RatioInterval> {
    let pf = p as f64;
    let sqrt_p = pf.sqrt();
    let inv_sqrt_p = 1.0 / sqrt_p;
    match rules {
        RuleSet::Original => {
            if p == 1 {
                vec![RatioInterval::point(1.0)]
            } else {
                vec![
                    RatioInterval::closed(inv_sqrt_p, sqrt_p),
                    RatioInterval::point(pf),
                ]
            }
        }
        RuleSet::RevisedTwoLarge => {
            vec![RatioInterval {
                lo: 0.0,
                hi: inv_sqrt_p,
                lo_closed: false,
                hi_closed: true,
            }]
        }
    }
}

/// The set of ratios where at least two cases hold: empty under the original
/// rules, `(sqrt(p), p) ∪ (p, inf)` under the revised rules.
pub fn overlap_set(p: u64, rules: RuleSet) -> Vec<RatioInterval> {
    match rules {
        RuleSet::Original => Vec::new(),
        RuleSet::RevisedTwoLarge => {
            let pf = p as f64;
            let sqrt_p = pf.sqrt();
            let mut out = Vec::new();
            if sqrt_p < pf {
                out.push(RatioInterval::open(sqrt_p, pf));
            }
            out.push(RatioInterval::open(pf, f64::INFINITY));
            out
        }
    }
}

/// Whether any ratio `r = k/n <= 1` satisfies the three-large condition
/// `sqrt(p) < r < p`. The intersection `(sqrt(p), min(p, 1)]` is empty for
/// every `p >= 1`, so this returns false throughout.
pub fn three_large_admits_k_le_n(p: u64) -> bool {
    let pf = p as f64;
    let sqrt_p = pf.sqrt();
    sqrt_p < pf.min(1.0)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegionMapError {
    #[error("p_values must be nonempty")]
    EmptyProcessorList,
    #[error("ratio range must satisfy 0 < r_lo < r_hi (got {lo}..{hi})")]
    BadRange { lo: f64, hi: f64 },
    #[error("need at least 2 columns (got {0})")]
    TooFewColumns(usize),
}

/// A grid of classifications sampled over (ratio, p).
#[derive(Debug, Clone)]
pub struct RegionMap {
    pub p_values: Vec<u64>,
    pub r_lo: f64,
    pub r_hi: f64,
    pub rules: RuleSet,
    midpoints: Vec<f64>,
    rows: Vec<Vec<Classification>>,
}

/// Geometric midpoints of a log-uniform partition of `[r_lo, r_hi]` into
/// `columns` cells. Sampling at midpoints keeps cells away from regime
/// boundaries.
pub fn log_cell_midpoints(r_lo: f64, r_hi: f64, columns: usize) -> Vec<f64> {
    let lg_lo = r_lo.log2();
    let step = (r_hi.log2() - lg_lo) / columns as f64;
    (0..columns)
        .map(|i| (lg_lo + (i as f64 + 0.5) * step).exp2())
        .collect()
}

/// Classifies the midpoint of every cell of a log-uniform `[r_lo, r_hi]`
/// partition, one row per processor count.
pub fn region_map(
    p_values: &[u64],
    r_lo: f64,
    r_hi: f64,
    columns: usize,
    rules: RuleSet,
) -> Result<RegionMap, RegionMapError> {
    if p_values.is_empty() {
        return Err(RegionMapError::EmptyProcessorList);
    }
    if !(r_lo > 0.0 && r_lo < r_hi && r_hi.is_finite()) {
        return Err(RegionMapError::BadRange { lo: r_lo, hi: r_hi });
    }
    if columns < 2 {
        return Err(RegionMapError::TooFewColumns(columns));
    }
    let midpoints = log_cell_midpoints(r_lo, r_hi, columns);
    let rows = p_values
        .iter()
        .map(|&p| {
            midpoints
                .iter()
                .map(|&r| classify_ratio(r, p, rules))
                .collect()
        })
        .collect();
    Ok(RegionMap {
        p_values: p_values.to_vec(),
        r_lo,
        r_hi,
        rules,
        midpoints,
        rows,
    })
}

impl RegionMap {
    pub fn midpoints(&self) -> &[f64] {
        &self.midpoints
    }

    pub fn rows(&self) -> &[Vec<Classification>] {
        &self.rows
    }

    /// The cell symbols of one row as a string.
    pub fn row_symbols(&self, row: usize) -> String {
        self.rows[row].iter().map(Classification::symbol).collect()
    }

    /// ASCII rendering: a header labeling the ratio axis, then one row per p
    /// prefixed `p=<value> `. Legend: 1=one-large 2=two-large 3=three-large
    /// .=gap X=overlap.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "r: {} .. {} ({} log-uniform cells, midpoints {} .. {})\n",
            self.r_lo,
            self.r_hi,
            self.midpoints.len(),
            self.midpoints.first().copied().unwrap_or(f64::NAN),
            self.midpoints.last().copied().unwrap_or(f64::NAN),
        ));
        for (i, p) in self.p_values.iter().enumerate() {
            out.push_str(&format!("p={} {}\n", p, self.row_symbols(i)));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn shape(n: u64, k: u64, p: u64) -> ProblemShape {
        ProblemShape::new(n, k, p, 1).unwrap()
    }

    #[test]
    fn classify_three_large_example() {
        let c = classify(&shape(10, 100, 16), RuleSet::Original);
        assert_eq!(c.labels, vec![CaseLabel::ThreeLarge]);
        assert!(!c.is_gap && !c.is_overlap);
    }

    #[test]
    fn classify_gap_at_unit_ratio() {
        let c = classify(&shape(10, 10, 4), RuleSet::Original);
        assert!(c.labels.is_empty());
        assert!(c.is_gap);
    }

    #[test]
    fn classify_revised_gap_below_inv_sqrt_p() {
        // k/n = 0.1 < 1/sqrt(4) = 0.5
        let c = classify(&shape(100, 10, 4), RuleSet::RevisedTwoLarge);
        assert!(c.is_gap);
    }

    #[test]
    fn classify_revised_overlap() {
        let c = classify(&shape(10, 100, 16), RuleSet::RevisedTwoLarge);
        assert_eq!(c.labels, vec![CaseLabel::TwoLarge, CaseLabel::ThreeLarge]);
        assert!(c.is_overlap);
    }

    #[test]
    fn classify_serial_equal_dims_is_gap() {
        let c = classify(&shape(5, 5, 1), RuleSet::Original);
        assert!(c.is_gap);
    }

    #[test]
    fn gap_set_original_p16() {
        let g = gap_set(16, RuleSet::Original);
        assert_eq!(
            g,
            vec![RatioInterval::closed(0.25, 4.0), RatioInterval::point(16.0)]
        );
        assert_eq!(format_interval_union(&g), "[0.25, 4] \u{222a} {16}");
    }

    #[test]
    fn gap_set_revised_p16() {
        let g = gap_set(16, RuleSet::RevisedTwoLarge);
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].lo, 0.0);
        assert_eq!(g[0].hi, 0.25);
        assert!(!g[0].lo_closed && g[0].hi_closed);
        assert_eq!(format_interval_union(&g), "(0, 0.25]");
    }

    #[test]
    fn gap_set_original_p1_is_single_point() {
        assert_eq!(
            gap_set(1, RuleSet::Original),
            vec![RatioInterval::point(1.0)]
        );
    }

    #[test]
    fn overlap_sets() {
        assert!(overlap_set(16, RuleSet::Original).is_empty());
        let o = overlap_set(16, RuleSet::RevisedTwoLarge);
        assert_eq!(
            o,
            vec![
                RatioInterval::open(4.0, 16.0),
                RatioInterval::open(16.0, f64::INFINITY)
            ]
        );
        assert_eq!(format_interval_union(&o), "(4, 16) \u{222a} (16, \u{221e})");
        let o1 = overlap_set(1, RuleSet::RevisedTwoLarge);
        assert_eq!(o1, vec![RatioInterval::open(1.0, f64::INFINITY)]);
    }

    #[test]
    fn three_large_never_admits_k_le_n() {
        for e in 0..=20u32 {
            assert!(!three_large_admits_k_le_n(1u64 << e));
        }
    }

    #[test]
    fn region_map_gap_cells_p16() {
        // 10 cells over [2^-5, 2^5]: midpoints 2^{-4.5} .. 2^{4.5}.
        let map = region_map(&[16], 1.0 / 32.0, 32.0, 10, RuleSet::Original).unwrap();
        assert_eq!(map.row_symbols(0), "222....331");
        for (r, c) in map.midpoints().iter().zip(&map.rows()[0]) {
            assert_eq!(c.is_gap, *r > 0.25 && *r < 4.0);
        }
    }

    #[test]
    fn region_map_p1_typically_no_gap() {
        let map = region_map(&[1], 0.5, 2.0, 10, RuleSet::Original).unwrap();
        assert!(!map.row_symbols(0).contains('.'));
    }

    #[test]
    fn region_map_gap_band_widens_with_p() {
        let map = region_map(&[4, 16, 64], 1.0 / 8.0, 8.0, 48, RuleSet::Original).unwrap();
        let counts: Vec<usize> = (0..3)
            .map(|i| map.row_symbols(i).matches('.').count())
            .collect();
        assert!(counts[0] <= counts[1] && counts[1] <= counts[2]);
        assert_eq!(counts, vec![16, 32, 48]);
    }

    #[test]
    fn region_map_rejects_bad_input() {
        assert!(region_map(&[], 0.1, 1.0, 4, RuleSet::Original).is_err());
        assert!(region_map(&[4], 1.0, 0.1, 4, RuleSet::Original).is_err());
        assert!(region_map(&[4], 0.1, 1.0, 1, RuleSet::Original).is_err());
    }

    #[test]
    fn render_has_header_and_prefixes() {
        let map = region_map(&[4, 16], 0.25, 4.0, 8, RuleSet::Original).unwrap();
        let text = map.render();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("r: 0.25 .. 4"));
        assert!(lines[1].starts_with("p=4 "));
        assert!(lines[2].starts_with("p=16 "));
    }

    #[test]
    fn dense_partition_consistency() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for p in [2u64, 4, 16, 64, 256] {
            let pf = p as f64;
            let span = (pf.powi(2) / pf.powi(-2)).log2();
            for rules in [RuleSet::Original, RuleSet::RevisedTwoLarge] {
                let gaps = gap_set(p, rules);
                let overlaps = overlap_set(p, rules);
                for _ in 0..10_000 {
                    let r = pf.powi(-2) * (rng.random::<f64>() * span).exp2();
                    let c = classify_ratio(r, p, rules);
                    let in_gap = gaps.iter().any(|iv| iv.contains(r));
                    let in_overlap = overlaps.iter().any(|iv| iv.contains(r));
                    assert_eq!(c.is_gap, in_gap, "p={p} r={r} rules={rules}");
                    assert_eq!(c.is_overlap, in_overlap, "p={p} r={r} rules={rules}");
                }
            }
        }
    }

    #[test]
    fn gap_nesting_in_p() {
        let ps: Vec<u64> = (0..=20).map(|e| 1u64 << e).collect();
        for &pa in &ps {
            for &pb in &ps {
                if pa >= pb {
                    let ga = gap_set(pa, RuleSet::Original)[0];
                    let gb = gap_set(pb, RuleSet::Original)[0];
                    assert!(ga.lo <= gb.lo && ga.hi >= gb.hi);
                }
            }
        }
    }

    fn pow2() -> impl Strategy<Value = u64> {
        (0u32..=20).prop_map(|e| 1u64 << e)
    }

    proptest! {
        #[test]
        fn original_labels_mutually_exclusive(n in 1u64..=1_000_000, k in 1u64..=1_000_000,
                                              p in 1u64..=1_000_000_000) {
            let c = classify(&shape(n, k, p), RuleSet::Original);
            prop_assert!(c.labels.len() <= 1);
        }

        #[test]
        fn classify_scale_invariant(n in 1u64..=1_000_000, k in 1u64..=1_000_000,
                                    p in pow2(), c in 1u64..=1000) {
            for rules in [RuleSet::Original, RuleSet::RevisedTwoLarge] {
                let a = classify(&shape(n, k, p), rules);
                let b = classify(&shape(c * n, c * k, p), rules);
                prop_assert_eq!(a, b);
            }
        }

        #[test]
        fn ratio_and_shape_routes_agree(n in 1u64..=100_000, k in 1u64..=100_000, p in pow2()) {
            // Ratios exactly representable as a float quotient keep the two
            // evaluation routes comparable away from boundaries; agreement on
            // gap/overlap flags is exercised densely in the acceptance suite.
            let r = k as f64 / n as f64;
            for rules in [RuleSet::Original, RuleSet::RevisedTwoLarge] {
                let via_shape = classify(&shape(n, k, p), rules);
                let via_ratio = classify_ratio(r, p, rules);
                // The float route may disagree only within rounding distance
                // of an endpoint; skip those samples.
                let pf = p as f64;
                let sp = pf.sqrt();
                let inv = 1.0 / sp;
                let near = |x: f64, e: f64| (x / e - 1.0).abs() < 1e-12;
                prop_assume!(!near(r, inv) && !near(r, sp) && !near(r, pf));
                prop_assert_eq!(via_shape.labels, via_ratio.labels);
            }
        }
    }
}
