//! Run a small ratio sweep and print the CSV to stdout.
//!
//! Each row samples a ratio r, realizes it as a power-of-two shape with
//! n fixed at n_scale, and records classification, bounds, and simulated
//! cost (empty when the shape over-decomposes, i.e. k < p).
//!
//! Run with: cargo run --example sweep_csv

use trsm_costlab::classify::RuleSet;
use trsm_costlab::sim::CommModel;
use trsm_costlab::sweep::{run_sweep, write_csv, SweepConfig};

fn main() {
    let cfg = SweepConfig {
        p_values: vec![4, 16, 64],
        r_min: 1.0 / 32.0,
        r_max: 32.0,
        samples: 12,
        n_scale: 256,
        n0: 1,
        rules: RuleSet::Original,
        collective: CommModel::Pairwise,
        seed: 42,
        simulate: true,
    };
    let rows = run_sweep(&cfg).unwrap();
    write_csv(&rows, std::io::stdout().lock()).unwrap();
}
