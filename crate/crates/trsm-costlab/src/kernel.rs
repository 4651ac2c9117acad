//! Numeric recursive TRSM validated against a forward-substitution oracle.
//!
//! [`solve_recursive`] mirrors the recursion the cost simulator charges for:
//! split `L` and `B` at `ceil(n/2)`, solve the top block, update the bottom
//! right-hand sides with `L21·X1`, solve the bottom block. [`solve_forward`]
//! is plain row-by-row forward substitution and serves as the independent
//! reference; the two must agree to 1e-10 relative on well-conditioned
//! inputs. Unlike the simulator, the kernel accepts any order `n >= 1`.
//!
//! No pivoting, no conditioning estimation, lower-triangular systems only.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("zero diagonal entry at row {0}")]
    ZeroDiagonal(usize),
    #[error("dimension mismatch: {what} (expected {expected}, got {got})")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("base-case order must be at least 1")]
    ZeroBaseCase,
}

/// Lower-triangular matrix of order n, stored packed row-major including the
/// diagonal: `n(n+1)/2` entries, `(i, j)` at `i(i+1)/2 + j` for `j <= i`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularMatrix {
    n: usize,
    data: Vec<f64>,
}

impl TriangularMatrix {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self, KernelError> {
        let expected = n * (n + 1) / 2;
        if data.len() != expected {
            return Err(KernelError::DimensionMismatch {
                what: "packed triangular length",
                expected,
                got: data.len(),
            });
        }
        Ok(TriangularMatrix { n, data })
    }

    pub fn identity(n: usize) -> Self {
        let mut m = TriangularMatrix {
            n,
            data: vec![0.0; n * (n + 1) / 2],
        };
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Diagonally dominant test matrix: `L_ii = n`, strict lower entries
    /// uniform in [-1, 1].
    pub fn well_conditioned_random<R: rand::Rng>(n: usize, rng: &mut R) -> Self {
        let mut m = TriangularMatrix {
            n,
            data: vec![0.0; n * (n + 1) / 2],
        };
        for i in 0..n {
            for j in 0..i {
                m.set(i, j, rng.random_range(-1.0..=1.0));
            }
            m.set(i, i, n as f64);
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        debug_assert!(j <= i && i < self.n);
        self.data[i * (i + 1) / 2 + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        debug_assert!(j <= i && i < self.n);
        self.data[i * (i + 1) / 2 + j] = v;
    }

    /// Index of the first exactly-zero diagonal entry, if any.
    fn zero_diagonal(&self) -> Option<usize> {
        (0..self.n).find(|&i| self.get(i, i) == 0.0)
    }

    pub fn max_norm(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Dense product `L·X`.
    pub fn mul(&self, x: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.n, x.rows);
        let mut out = DenseMatrix::zeros(self.n, x.cols);
        for i in 0..self.n {
            for j in 0..=i {
                let lij = self.get(i, j);
                for c in 0..x.cols {
                    *out.at_mut(i, c) += lij * x.at(j, c);
                }
            }
        }
        out
    }

    /// Splits at `mid = ceil(n/2)` into the leading block, the dense
    /// off-diagonal block `L21` ((n-mid) x mid), and the trailing block.
    fn split(&self) -> (TriangularMatrix, DenseMatrix, TriangularMatrix) {
        let mid = self.n.div_ceil(2);
        let rest = self.n - mid;
        let mut l11 = TriangularMatrix {
            n: mid,
            data: vec![0.0; mid * (mid + 1) / 2],
        };
        for i in 0..mid {
            for j in 0..=i {
                l11.set(i, j, self.get(i, j));
            }
        }
        let mut l21 = DenseMatrix::zeros(rest, mid);
        let mut l22 = TriangularMatrix {
            n: rest,
            data: vec![0.0; rest * (rest + 1) / 2],
        };
        for i in 0..rest {
            for j in 0..mid {
                *l21.at_mut(i, j) = self.get(mid + i, j);
            }
            for j in 0..=i {
                l22.set(i, j, self.get(mid + i, mid + j));
            }
        }
        (l11, l21, l22)
    }
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, KernelError> {
        if data.len() != rows * cols {
            return Err(KernelError::DimensionMismatch {
                what: "dense entry count",
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn random<R: rand::Rng>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols)
            .map(|_| rng.random_range(-1.0..=1.0))
            .collect();
        DenseMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }

    pub fn max_norm(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Copies rows `[from, to)`.
    fn row_slice(&self, from: usize, to: usize) -> DenseMatrix {
        DenseMatrix {
            rows: to - from,
            cols: self.cols,
            data: self.data[from * self.cols..to * self.cols].to_vec(),
        }
    }

    /// `self - a·b` where `a` is (rows x inner) and `b` is (inner x cols).
    fn sub_product(&self, a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
        assert_eq!(a.rows, self.rows);
        assert_eq!(a.cols, b.rows);
        assert_eq!(b.cols, self.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            for t in 0..a.cols {
                let ait = a.at(i, t);
                for j in 0..self.cols {
                    *out.at_mut(i, j) -= ait * b.at(t, j);
                }
            }
        }
        out
    }

    fn vstack(top: DenseMatrix, bottom: DenseMatrix) -> DenseMatrix {
        assert_eq!(top.cols, bottom.cols);
        let mut data = top.data;
        data.extend_from_slice(&bottom.data);
        DenseMatrix {
            rows: top.rows + bottom.rows,
            cols: top.cols,
            data,
        }
    }

    /// `max |self - other|` over all entries.
    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

fn check_system(l: &TriangularMatrix, b: &DenseMatrix) -> Result<(), KernelError> {
    if b.rows != l.n {
        return Err(KernelError::DimensionMismatch {
            what: "right-hand-side rows",
            expected: l.n,
            got: b.rows,
        });
    }
    if let Some(i) = l.zero_diagonal() {
        return Err(KernelError::ZeroDiagonal(i));
    }
    Ok(())
}

/// Forward substitution: row i of X is `(B_i - sum_{j<i} L_ij·X_j) / L_ii`
/// for each right-hand side. The independent reference for the recursive
/// solver.
pub fn solve_forward(l: &TriangularMatrix, b: &DenseMatrix) -> Result<DenseMatrix, KernelError> {
    check_system(l, b)?;
    let n = l.n;
    let mut x = b.clone();
    for i in 0..n {
        for j in 0..i {
            let lij = l.get(i, j);
            for c in 0..x.cols {
                *x.at_mut(i, c) -= lij * x.at(j, c);
            }
        }
        let diag = l.get(i, i);
        for c in 0..x.cols {
            *x.at_mut(i, c) /= diag;
        }
    }
    Ok(x)
}

/// Recursive solve: at or below order `n0` fall back to forward
/// substitution, otherwise solve the leading block, update the trailing
/// right-hand sides, and recurse on the trailing block.
pub fn solve_recursive(
    l: &TriangularMatrix,
    b: &DenseMatrix,
    n0: usize,
) -> Result<DenseMatrix, KernelError> {
    if n0 == 0 {
        return Err(KernelError::ZeroBaseCase);
    }
    check_system(l, b)?;
    solve_recursive_inner(l, b, n0)
}

fn solve_recursive_inner(
    l: &TriangularMatrix,
    b: &DenseMatrix,
    n0: usize,
) -> Result<DenseMatrix, KernelError> {
    if l.n <= n0 {
        return solve_forward(l, b);
    }
    let (l11, l21, l22) = l.split();
    let mid = l11.n;
    let b1 = b.row_slice(0, mid);
    let b2 = b.row_slice(mid, l.n);
    let x1 = solve_recursive_inner(&l11, &b1, n0)?;
    let b2_updated = b2.sub_product(&l21, &x1);
    let x2 = solve_recursive_inner(&l22, &b2_updated, n0)?;
    Ok(DenseMatrix::vstack(x1, x2))
}

/// Scaled residual `maxnorm(L·X - B) / (maxnorm(L)·maxnorm(X) + maxnorm(B))`;
/// 0 for exact solutions.
pub fn residual(l: &TriangularMatrix, x: &DenseMatrix, b: &DenseMatrix) -> f64 {
    let lx = l.mul(x);
    let num = lx.max_abs_diff(b);
    let denom = l.max_norm() * x.max_norm() + b.max_norm();
    if denom == 0.0 {
        return if num == 0.0 { 0.0 } else { f64::INFINITY };
    }
    num / denom
}

/// One instance of the seeded verification corpus.
#[derive(Debug, Clone, Serialize)]
pub struct CorpusInstance {
    pub n: usize,
    pub k: usize,
    pub n0: usize,
    /// `maxabs(recursive - forward) / maxabs(forward)`.
    pub rel_diff: f64,
    /// Scaled residual of the recursive solution.
    pub residual: f64,
}

/// Result of running the seeded oracle corpus.
#[derive(Debug, Clone, Serialize)]
pub struct CorpusReport {
    pub seed: u64,
    pub instances: Vec<CorpusInstance>,
    pub max_rel_diff: f64,
    pub max_residual: f64,
}

impl CorpusReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_rel_diff <= tol && self.max_residual <= tol
    }
}

/// Runs `count` random well-conditioned instances with `n` in {8, 16, 64,
/// 256}, `k` in {1, 4, 64}, `n0` in {1, 2, 8}, comparing the recursive solve
/// against forward substitution and checking residuals.
pub fn verify_corpus(seed: u64, count: usize) -> CorpusReport {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let orders = [8usize, 16, 64, 256];
    let rhs_counts = [1usize, 4, 64];
    let base_orders = [1usize, 2, 8];
    let mut instances = Vec::with_capacity(count);
    let mut max_rel_diff: f64 = 0.0;
    let mut max_residual: f64 = 0.0;
    for _ in 0..count {
        let n = orders[rng.random_range(0..orders.len())];
        let k = rhs_counts[rng.random_range(0..rhs_counts.len())];
        let n0 = base_orders[rng.random_range(0..base_orders.len())];
        let l = TriangularMatrix::well_conditioned_random(n, &mut rng);
        let b = DenseMatrix::random(n, k, &mut rng);
        let reference = solve_forward(&l, &b).expect("nonzero diagonal by construction");
        let solved = solve_recursive(&l, &b, n0).expect("nonzero diagonal by construction");
        let rel_diff = solved.max_abs_diff(&reference) / reference.max_norm();
        let res = residual(&l, &solved, &b);
        max_rel_diff = max_rel_diff.max(rel_diff);
        max_residual = max_residual.max(res);
        instances.push(CorpusInstance {
            n,
            k,
            n0,
            rel_diff,
            residual: res,
        });
    }
    CorpusReport {
        seed,
        instances,
        max_rel_diff,
        max_residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn forward_identity_system() {
        let l = TriangularMatrix::identity(3);
        let b = DenseMatrix::new(3, 2, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        assert_eq!(solve_forward(&l, &b).unwrap(), b);
    }

    #[test]
    fn forward_scalar_divide() {
        let l = TriangularMatrix::new(1, vec![2.0]).unwrap();
        let b = DenseMatrix::new(1, 1, vec![6.0]).unwrap();
        let x = solve_forward(&l, &b).unwrap();
        assert_eq!(x.at(0, 0), 3.0);
    }

    #[test]
    fn forward_two_by_two() {
        // [[2, 0], [1, 4]] · X = [[2], [9]]  =>  X = [[1], [2]]
        let l = TriangularMatrix::new(2, vec![2.0, 1.0, 4.0]).unwrap();
        let b = DenseMatrix::new(2, 1, vec![2.0, 9.0]).unwrap();
        let x = solve_forward(&l, &b).unwrap();
        assert_eq!(x, DenseMatrix::new(2, 1, vec![1.0, 2.0]).unwrap());
    }

    #[test]
    fn zero_diagonal_rejected() {
        let l = TriangularMatrix::new(2, vec![1.0, 3.0, 0.0]).unwrap();
        let b = DenseMatrix::zeros(2, 1);
        assert_eq!(
            solve_forward(&l, &b).unwrap_err(),
            KernelError::ZeroDiagonal(1)
        );
        assert_eq!(
            solve_recursive(&l, &b, 1).unwrap_err(),
            KernelError::ZeroDiagonal(1)
        );
    }

    #[test]
    fn recursive_base_case_is_forward() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let l = TriangularMatrix::well_conditioned_random(6, &mut rng);
        let b = DenseMatrix::random(6, 3, &mut rng);
        let fwd = solve_forward(&l, &b).unwrap();
        let rec = solve_recursive(&l, &b, 6).unwrap();
        assert_eq!(rec, fwd); // bit-identical passthrough at n <= n0
    }

    #[test]
    fn recursive_identity() {
        let l = TriangularMatrix::identity(4);
        let b = DenseMatrix::new(4, 1, vec![1.0, -2.0, 0.5, 8.0]).unwrap();
        assert_eq!(solve_recursive(&l, &b, 1).unwrap(), b);
    }

    #[test]
    fn recursive_matches_forward_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let l = TriangularMatrix::well_conditioned_random(8, &mut rng);
        let b = DenseMatrix::random(8, 4, &mut rng);
        let fwd = solve_forward(&l, &b).unwrap();
        let rec = solve_recursive(&l, &b, 2).unwrap();
        assert!(rec.max_abs_diff(&fwd) / fwd.max_norm() <= 1e-10);
    }

    #[test]
    fn recursive_handles_odd_orders() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for n in [3usize, 5, 7, 9, 31] {
            let l = TriangularMatrix::well_conditioned_random(n, &mut rng);
            let b = DenseMatrix::random(n, 2, &mut rng);
            let fwd = solve_forward(&l, &b).unwrap();
            let rec = solve_recursive(&l, &b, 1).unwrap();
            assert!(rec.max_abs_diff(&fwd) / fwd.max_norm() <= 1e-10);
        }
    }

    #[test]
    fn split_invariance_pure_recursion_vs_pure_substitution() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let n = 33;
        let l = TriangularMatrix::well_conditioned_random(n, &mut rng);
        let b = DenseMatrix::random(n, 3, &mut rng);
        let deep = solve_recursive(&l, &b, 1).unwrap();
        let flat = solve_recursive(&l, &b, n).unwrap();
        assert!(deep.max_abs_diff(&flat) / flat.max_norm() <= 1e-10);
    }

    #[test]
    fn determinism_bit_identical() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let l = TriangularMatrix::well_conditioned_random(16, &mut rng);
        let b = DenseMatrix::random(16, 4, &mut rng);
        let a = solve_recursive(&l, &b, 2).unwrap();
        let bb = solve_recursive(&l, &b, 2).unwrap();
        assert_eq!(a, bb);
    }

    #[test]
    fn residual_exact_identity_solve() {
        let l = TriangularMatrix::identity(3);
        let b = DenseMatrix::new(3, 1, vec![1.0, 0.5, -1.0]).unwrap();
        let x = solve_forward(&l, &b).unwrap();
        assert_eq!(residual(&l, &x, &b), 0.0);
    }

    #[test]
    fn residual_unit_perturbation() {
        // Identity system, maxnorm(B) = 1; bump one entry of X by +1.
        let l = TriangularMatrix::identity(3);
        let b = DenseMatrix::new(3, 1, vec![1.0, 0.5, -1.0]).unwrap();
        let mut x = solve_forward(&l, &b).unwrap();
        *x.at_mut(0, 0) += 1.0;
        let expected = 1.0 / (1.0 * x.max_norm() + 1.0);
        assert_eq!(residual(&l, &x, &b), expected);
    }

    #[test]
    fn residual_of_forward_solutions_is_tiny() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in [8usize, 64, 256] {
            let l = TriangularMatrix::well_conditioned_random(n, &mut rng);
            let b = DenseMatrix::random(n, 2, &mut rng);
            let x = solve_forward(&l, &b).unwrap();
            assert!(residual(&l, &x, &b) <= 1e-12);
        }
    }

    #[test]
    fn corpus_small_run_passes() {
        let report = verify_corpus(2024, 10);
        println!("corpus seed={}", report.seed);
        assert!(report.passed(1e-10), "report: {:?}", report);
    }
}
