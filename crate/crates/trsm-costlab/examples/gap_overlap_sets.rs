//! Print the exact gap and overlap regions of the ratio r = k/n for a few
//! processor counts, under both condition sets.
//!
//! Run with: cargo run --example gap_overlap_sets

use trsm_costlab::classify::{format_interval_union, gap_set, overlap_set, RuleSet};

fn main() {
    for rules in [RuleSet::Original, RuleSet::RevisedTwoLarge] {
        println!("--- rules: {rules} ---");
        for p in [1u64, 4, 16, 64, 256] {
            println!(
                "p={p:<4} gaps: {:<24} overlaps: {}",
                format_interval_union(&gap_set(p, rules)),
                format_interval_union(&overlap_set(p, rules)),
            );
        }
    }
    println!();
    println!("The original gap band [1/sqrt(p), sqrt(p)] widens with p;");
    println!("the revised condition closes it but uncovers (0, 1/sqrt(p)]");
    println!("and makes every ratio above sqrt(p) (except p itself) ambiguous.");
}
