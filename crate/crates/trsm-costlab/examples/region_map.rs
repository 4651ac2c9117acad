//! Render ASCII regime maps over (ratio, p) for both condition sets.
//!
//! Legend: 1=one-large 2=two-large 3=three-large .=gap X=overlap
//!
//! Run with: cargo run --example region_map

use trsm_costlab::classify::{region_map, RuleSet};

fn main() {
    let p_values = [4u64, 16, 64, 256];
    for rules in [RuleSet::Original, RuleSet::RevisedTwoLarge] {
        println!("--- rules: {rules} ---");
        let map = region_map(&p_values, 1.0 / 64.0, 1024.0, 72, rules).unwrap();
        print!("{}", map.render());
        println!();
    }
}
