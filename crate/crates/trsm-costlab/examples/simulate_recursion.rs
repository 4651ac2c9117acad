//! Simulate the recursion for one shape: critical-path cost, total time on
//! a machine, and the materialized recursion tree.
//!
//! Run with: cargo run --example simulate_recursion

use trsm_costlab::cost::{MachineParams, ProblemShape};
use trsm_costlab::sim::{expand_tree, trsm_cost, CommModel};

fn main() {
    let shape = ProblemShape::new(8, 16, 4, 2).unwrap();
    let model = CommModel::Pairwise;
    let cost = trsm_cost(&shape, model).unwrap();
    println!(
        "shape: n={} k={} p={} n0={}",
        shape.n, shape.k, shape.p, shape.n0
    );
    println!(
        "critical path: F={} W={} S={}",
        cost.flops, cost.words, cost.messages
    );

    let machine = MachineParams::default();
    println!(
        "total time on default machine (alpha={}, beta={}, gamma={}): {:.3e} s",
        machine.alpha,
        machine.beta,
        machine.gamma,
        cost.total_time(&machine)
    );

    let tree = expand_tree(&shape, model).unwrap();
    println!();
    println!(
        "recursion tree ({} nodes), fold = trsm_cost:",
        tree.node_count()
    );
    assert_eq!(tree.fold(), cost);
    print!("{}", tree.render());
}
