//! Classify a handful of shapes under both regime condition sets.
//!
//! Run with: cargo run --example classify_regimes

use trsm_costlab::classify::{classify, RuleSet};
use trsm_costlab::cost::ProblemShape;

fn main() {
    let shapes = [
        (10u64, 100u64, 16u64), // tall RHS block
        (10, 10, 4),            // square: falls in the original gap
        (100, 10, 4),           // wide triangle
        (1024, 32, 64),         // strongly n-dominated
        (5, 5, 1),              // serial
    ];
    for rules in [RuleSet::Original, RuleSet::RevisedTwoLarge] {
        println!("--- rules: {rules} ---");
        for (n, k, p) in shapes {
            let shape = ProblemShape::new(n, k, p, 1).unwrap();
            let c = classify(&shape, rules);
            let cases = if c.labels.is_empty() {
                "-".to_string()
            } else {
                c.labels
                    .iter()
                    .map(|l| l.as_str())
                    .collect::<Vec<_>>()
                    .join(";")
            };
            println!(
                "n={n:<5} k={k:<5} p={p:<3} r={:<8.4} cases={cases:<22} gap={} overlap={}",
                c.ratio, c.is_gap, c.is_overlap
            );
        }
    }
}
