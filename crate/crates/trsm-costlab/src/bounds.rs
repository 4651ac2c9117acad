//! Claimed and corrected bandwidth-bound expressions and their exact ratios.
//!
//! Asymptotic bounds are evaluated with constant factor 1 and logarithms in
//! base 2; only ratios, regimes, and growth exponents are asserted anywhere,
//! so the base and constants cancel out of every check.
//!
//! Two large dimensions: the claimed bound `n·k·log2(p)/sqrt(p)` against the
//! corrected `(n^2 + n·k)·log2(p)/sqrt(p)`; their ratio is exactly `1 + n/k`,
//! so the correction dominates whenever `n = Omega(k)`.
//!
//! Three large dimensions: the claimed `(n^2·k/p)^(2/3)` against the
//! corrected `(n·k^2/p)^(2/3)` obtained with the grid split `p_r^2 = n·p/k`;
//! their ratio is exactly `(k/n)^(2/3)`, which exceeds `p^(1/3)` throughout
//! the regime `k > n·sqrt(p)`.
//!
//! No bound is evaluated for the one-large-dimension regime; none is stated.

use serde::Serialize;

use crate::cost::ProblemShape;

/// Claimed two-large-dimensions bandwidth bound: `n·k·log2(p)/sqrt(p)`.
pub fn bw_two_large_claimed(n: u64, k: u64, p: u64) -> f64 {
    let pf = p as f64;
    (n as f64) * (k as f64) * pf.log2() / pf.sqrt()
}

/// Corrected two-large-dimensions bound: `(n^2 + n·k)·log2(p)/sqrt(p)`.
pub fn bw_two_large_corrected(n: u64, k: u64, p: u64) -> f64 {
    let nf = n as f64;
    let pf = p as f64;
    (nf * nf + nf * k as f64) * pf.log2() / pf.sqrt()
}

/// Claimed three-large-dimensions bound: `(n^2·k/p)^(2/3)`.
pub fn bw_three_large_claimed(n: u64, k: u64, p: u64) -> f64 {
    let nf = n as f64;
    (nf * nf * k as f64 / p as f64).powf(2.0 / 3.0)
}

/// Corrected three-large-dimensions bound: `(n·k^2/p)^(2/3)`.
pub fn bw_three_large_corrected(n: u64, k: u64, p: u64) -> f64 {
    let kf = k as f64;
    (n as f64 * kf * kf / p as f64).powf(2.0 / 3.0)
}

/// Row count of the proposed `p_r × p_c` processor grid: `sqrt(n·p/k)`.
pub fn grid_rows(n: u64, k: u64, p: u64) -> f64 {
    (n as f64 * p as f64 / k as f64).sqrt()
}

/// Claimed vs. corrected bounds for one shape, with exact ratios and regime
/// flags.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundsReport {
    pub claimed_two: f64,
    pub corrected_two: f64,
    /// `corrected_two / claimed_two`, algebraically `1 + n/k`; reported as 1
    /// when the claimed bound is 0 (p = 1 has no communication).
    pub ratio_two: f64,
    pub claimed_three: f64,
    pub corrected_three: f64,
    /// `corrected_three / claimed_three`, algebraically `(k/n)^(2/3)`.
    pub ratio_three: f64,
    /// Proposed grid rows `p_r = sqrt(n·p/k)`.
    pub p_r: f64,
    /// The corrected two-large bound dominates: `n >= k`.
    pub exceeds_two: bool,
    /// The corrected three-large bound dominates: `k > n·sqrt(p)`.
    pub exceeds_three: bool,
}

/// Evaluates every bound for a shape. Regime flags use exact integer
/// comparisons (`k > n·sqrt(p)` as `k^2 > n^2·p`).
pub fn bounds_report(shape: &ProblemShape) -> BoundsReport {
    let (n, k, p) = (shape.n, shape.k, shape.p);
    let claimed_two = bw_two_large_claimed(n, k, p);
    let corrected_two = bw_two_large_corrected(n, k, p);
    let ratio_two = if claimed_two > 0.0 {
        corrected_two / claimed_two
    } else {
        1.0
    };
    let claimed_three = bw_three_large_claimed(n, k, p);
    let corrected_three = bw_three_large_corrected(n, k, p);
    let ratio_three = if claimed_three > 0.0 {
        corrected_three / claimed_three
    } else {
        1.0
    };
    let exceeds_three = (k as u128) * (k as u128) > (n as u128) * (n as u128) * (p as u128);
    BoundsReport {
        claimed_two,
        corrected_two,
        ratio_two,
        claimed_three,
        corrected_three,
        ratio_three,
        p_r: grid_rows(n, k, p),
        exceeds_two: n >= k,
        exceeds_three,
    }
}

/// Least-squares slope of `y` against `x`. Used to measure growth exponents
/// on log-log data.
pub fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mean_x = points.iter().map(|(x, _)| x).sum::<f64>() / n;
    let mean_y = points.iter().map(|(_, y)| y).sum::<f64>() / n;
    let cov: f64 = points
        .iter()
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let var: f64 = points.iter().map(|(x, _)| (x - mean_x).powi(2)).sum();
    cov / var
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(a.abs())
    }

    fn shape(n: u64, k: u64, p: u64) -> ProblemShape {
        ProblemShape::new(n, k, p, 1).unwrap()
    }

    #[test]
    fn two_large_claimed_examples() {
        assert_eq!(bw_two_large_claimed(8, 8, 4), 64.0);
        assert_eq!(bw_two_large_claimed(123, 456, 1), 0.0);
        assert_eq!(bw_two_large_claimed(1, 1, 4), 1.0);
    }

    #[test]
    fn two_large_corrected_examples() {
        assert_eq!(bw_two_large_corrected(8, 8, 4), 128.0);
        assert_eq!(bw_two_large_corrected(123, 456, 1), 0.0);
        assert_eq!(bw_two_large_corrected(16, 1, 4), 272.0);
    }

    #[test]
    fn three_large_claimed_examples() {
        // 128^(2/3) = 2^(14/3)
        assert!(rel_close(
            bw_three_large_claimed(4, 32, 4),
            25.398416831491192,
            1e-12
        ));
        assert_eq!(bw_three_large_claimed(1, 1, 1), 1.0);
        assert!(rel_close(bw_three_large_claimed(8, 8, 8), 16.0, 1e-12));
    }

    #[test]
    fn three_large_corrected_examples() {
        // 1024^(2/3) = 2^(20/3)
        assert!(rel_close(
            bw_three_large_corrected(4, 32, 4),
            101.59366732596477,
            1e-12
        ));
        assert_eq!(bw_three_large_corrected(1, 1, 1), 1.0);
        assert!(rel_close(bw_three_large_corrected(8, 8, 8), 16.0, 1e-12));
    }

    #[test]
    fn grid_rows_examples() {
        assert_eq!(grid_rows(4, 16, 16), 2.0);
        assert_eq!(grid_rows(7, 7 * 5, 5), 1.0); // k = n·p
        assert_eq!(grid_rows(16, 1, 4), 8.0);
    }

    #[test]
    fn report_square_shape() {
        let r = bounds_report(&shape(8, 8, 4));
        assert!(rel_close(r.ratio_two, 2.0, 1e-12));
        assert!(r.exceeds_two);
        assert!(!r.exceeds_three);
    }

    #[test]
    fn report_tall_rhs_shape() {
        let r = bounds_report(&shape(4, 32, 4));
        assert!(rel_close(r.ratio_three, 4.0, 1e-12)); // (32/4)^(2/3)
        assert!(r.exceeds_three); // 32 > 4·2
    }

    #[test]
    fn report_serial_convention() {
        let r = bounds_report(&shape(6, 6, 1));
        assert_eq!(r.claimed_two, 0.0);
        assert_eq!(r.corrected_two, 0.0);
        assert_eq!(r.ratio_two, 1.0);
    }

    #[test]
    fn grid_rows_satisfies_its_defining_identity() {
        for (n, k, p) in [(4, 16, 16), (16, 1, 4), (9, 3, 27), (1000, 7, 512)] {
            let p_r = grid_rows(n, k, p);
            let lhs = p_r * p_r * k as f64;
            let rhs = n as f64 * p as f64;
            assert!(rel_close(lhs, rhs, 1e-12));
        }
    }

    #[test]
    fn slope_of_exact_line() {
        let pts: Vec<(f64, f64)> = (0..8).map(|i| (i as f64, 3.0 * i as f64 + 1.0)).collect();
        assert!((least_squares_slope(&pts) - 3.0).abs() < 1e-12);
    }

    fn pow2() -> impl Strategy<Value = u64> {
        (1u32..=20).prop_map(|e| 1u64 << e)
    }

    proptest! {
        #[test]
        fn ratio_two_identity(n in 1u64..=1_000_000, k in 1u64..=1_000_000, p in pow2()) {
            let r = bounds_report(&shape(n, k, p));
            let expected = 1.0 + n as f64 / k as f64;
            prop_assert!(rel_close(r.ratio_two, expected, 1e-12));
        }

        #[test]
        fn ratio_three_identity(n in 1u64..=1_000_000, k in 1u64..=1_000_000, p in pow2()) {
            let r = bounds_report(&shape(n, k, p));
            let expected = (k as f64 / n as f64).powf(2.0 / 3.0);
            prop_assert!(rel_close(r.ratio_three, expected, 1e-12));
        }

        #[test]
        fn exceedance_three(n in 1u64..=1000, p in pow2(), mult in 2u64..=16) {
            // Construct k > n·sqrt(p) directly; sqrt(p) <= 2^10 here.
            let sqrt_p = (p as f64).sqrt().ceil() as u64;
            let k = n * sqrt_p * mult;
            let r = bounds_report(&shape(n, k, p));
            prop_assert!(r.exceeds_three);
            prop_assert!(r.ratio_three > (p as f64).cbrt());
        }

        #[test]
        fn exceedance_two(k in 1u64..=100_000, extra in 0u64..=100_000, p in pow2()) {
            let n = k + extra; // n >= k
            let r = bounds_report(&shape(n, k, p));
            prop_assert!(r.exceeds_two);
            prop_assert!(r.ratio_two >= 2.0 - 1e-12);
        }

        #[test]
        fn degree_two_homogeneity(n in 1u64..=10_000, k in 1u64..=10_000,
                                  p in pow2(), c in 2u64..=32) {
            let base = bounds_report(&shape(n, k, p));
            let scaled = bounds_report(&shape(c * n, c * k, p));
            let c2 = (c * c) as f64;
            prop_assert!(rel_close(scaled.claimed_two, c2 * base.claimed_two, 1e-12));
            prop_assert!(rel_close(scaled.corrected_two, c2 * base.corrected_two, 1e-12));
            prop_assert!(rel_close(scaled.claimed_three, c2 * base.claimed_three, 1e-12));
            prop_assert!(rel_close(scaled.corrected_three, c2 * base.corrected_three, 1e-12));
            prop_assert!(rel_close(scaled.ratio_two, base.ratio_two, 1e-12));
            prop_assert!(rel_close(scaled.ratio_three, base.ratio_three, 1e-12));
        }
    }
}
