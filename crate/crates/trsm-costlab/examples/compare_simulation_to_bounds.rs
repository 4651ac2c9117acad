//! Join simulated bandwidth with the bound formulas across a strip of
//! shapes, printing W_sim alongside each bound and the W_sim/bound ratios.
//!
//! Run with: cargo run --example compare_simulation_to_bounds

use trsm_costlab::cost::ProblemShape;
use trsm_costlab::sim::{compare_to_bounds, format_ratio, CommModel};

fn main() {
    println!(
        "{:>5} {:>6} {:>3} | {:>10} | {:>11} {:>11} {:>11} {:>11} | layout",
        "n", "k", "p", "W_sim", "W/claim2", "W/corr2", "W/claim3", "W/corr3"
    );
    for (n, k, p) in [
        (8u64, 8u64, 1u64),
        (8, 8, 4),
        (4, 32, 4),
        (64, 256, 16),
        (256, 1024, 64),
        (1024, 64, 16),
    ] {
        let shape = ProblemShape::new(n, k, p, 1).unwrap();
        let report = compare_to_bounds(&shape, CommModel::Pairwise).unwrap();
        println!(
            "{n:>5} {k:>6} {p:>3} | {:>10} | {:>11} {:>11} {:>11} {:>11} | {}",
            report.cost.words,
            trim(format_ratio(report.w_over_claimed_two)),
            trim(format_ratio(report.w_over_corrected_two)),
            trim(format_ratio(report.w_over_claimed_three)),
            trim(format_ratio(report.w_over_corrected_three)),
            report.layout
        );
    }
}

fn trim(s: String) -> String {
    if s.len() > 11 {
        s[..11].to_string()
    } else {
        s
    }
}
