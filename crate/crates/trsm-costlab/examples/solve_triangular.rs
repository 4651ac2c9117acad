//! Solve a lower-triangular system both ways and compare: recursive solve
//! against forward substitution, with the scaled residual of each.
//!
//! Run with: cargo run --example solve_triangular

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use trsm_costlab::kernel::{
    residual, solve_forward, solve_recursive, DenseMatrix, TriangularMatrix,
};

fn main() {
    let seed = 7u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n, k, n0) = (64usize, 8usize, 4usize);
    let l = TriangularMatrix::well_conditioned_random(n, &mut rng);
    let b = DenseMatrix::random(n, k, &mut rng);

    let forward = solve_forward(&l, &b).unwrap();
    let recursive = solve_recursive(&l, &b, n0).unwrap();

    let rel_diff = recursive.max_abs_diff(&forward) / forward.max_norm();
    println!("seed={seed} n={n} k={k} n0={n0}");
    println!("max |recursive - forward| / max |forward| = {rel_diff:e}");
    println!("residual(forward)   = {:e}", residual(&l, &forward, &b));
    println!("residual(recursive) = {:e}", residual(&l, &recursive, &b));
}
