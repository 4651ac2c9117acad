//! Evaluate claimed vs. corrected bandwidth bounds and their exact ratios.
//!
//! The two-large ratio is 1 + n/k, so the correction dominates once n
//! reaches k; the three-large ratio is (k/n)^(2/3), which exceeds p^(1/3)
//! throughout the regime k > n·sqrt(p).
//!
//! Run with: cargo run --example bound_corrections

use trsm_costlab::bounds::bounds_report;
use trsm_costlab::cost::ProblemShape;

fn main() {
    let shapes = [
        (8u64, 8u64, 4u64),
        (16, 1, 4),
        (4, 32, 4),
        (256, 16, 64),
        (32, 4096, 16),
    ];
    println!(
        "{:>6} {:>6} {:>4} | {:>12} {:>12} {:>8} | {:>12} {:>12} {:>8} | {:>8} flags",
        "n",
        "k",
        "p",
        "claimed2",
        "corrected2",
        "ratio2",
        "claimed3",
        "corrected3",
        "ratio3",
        "p_r"
    );
    for (n, k, p) in shapes {
        let r = bounds_report(&ProblemShape::new(n, k, p, 1).unwrap());
        let mut flags = Vec::new();
        if r.exceeds_two {
            flags.push("exceeds-two");
        }
        if r.exceeds_three {
            flags.push("exceeds-three");
        }
        println!(
            "{n:>6} {k:>6} {p:>4} | {:>12.3} {:>12.3} {:>8.3} | {:>12.3} {:>12.3} {:>8.3} | {:>8.3} {}",
            r.claimed_two,
            r.corrected_two,
            r.ratio_two,
            r.claimed_three,
            r.corrected_three,
            r.ratio_three,
            r.p_r,
            flags.join(",")
        );
    }
}
