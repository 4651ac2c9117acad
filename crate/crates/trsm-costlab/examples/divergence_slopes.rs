//! Measure growth exponents of the two-large bounds on log-log data.
//!
//! With k fixed and n growing, the claimed bound n·k·log(p)/sqrt(p) is
//! linear in n while the corrected (n^2 + nk)·log(p)/sqrt(p) is quadratic:
//! the least-squares slopes of log2(bound) against log2(n) come out 1 and
//! about 2.
//!
//! Run with: cargo run --example divergence_slopes

use trsm_costlab::bounds::{bw_two_large_claimed, bw_two_large_corrected, least_squares_slope};

fn main() {
    let (p, k) = (64u64, 16u64);
    println!("p={p}, k={k}");
    println!("{:>6} {:>16} {:>16}", "n", "claimed", "corrected");
    let mut claimed_pts = Vec::new();
    let mut corrected_pts = Vec::new();
    for e in 8..=13u32 {
        let n = 1u64 << e;
        let claimed = bw_two_large_claimed(n, k, p);
        let corrected = bw_two_large_corrected(n, k, p);
        println!("{n:>6} {claimed:>16.1} {corrected:>16.1}");
        claimed_pts.push(((n as f64).log2(), claimed.log2()));
        corrected_pts.push(((n as f64).log2(), corrected.log2()));
    }
    println!();
    println!(
        "slope of log2(claimed)   vs log2(n): {:.6}",
        least_squares_slope(&claimed_pts)
    );
    println!(
        "slope of log2(corrected) vs log2(n): {:.6}",
        least_squares_slope(&corrected_pts)
    );
}
