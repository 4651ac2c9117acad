//! Parameter sweeps over (ratio, p) emitting CSV records.
//!
//! A sweep holds n fixed at `n_scale` and varies k to realize each sampled
//! ratio, rounding `r·n_scale` to the nearest power of two in log space so
//! the simulator's shape restriction is always met. The emitted row records
//! the realized n and k, so consumers recompute the true ratio `k/n` rather
//! than trusting the sampled one. Rows are sorted by (p, ratio) and the
//! sampler is seeded, so output is byte-deterministic for fixed arguments.

use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::bounds_report;
use crate::classify::{classify, CaseLabel, RuleSet};
use crate::cost::{CostVector, ProblemShape};
use crate::sim::{trsm_cost, CommModel};

/// Exact CSV column set, in order.
pub const CSV_HEADER: &str = "n,k,p,ratio,rules,cases,is_gap,is_overlap,claimed_two,\
corrected_two,claimed_three,corrected_three,w_sim,f_sim,s_sim";

/// One sampled shape with its classification, bounds, and (optionally)
/// simulated cost.
#[derive(Debug, Clone)]
pub struct SweepRecord {
    pub n: u64,
    pub k: u64,
    pub p: u64,
    /// Realized ratio `k/n` after power-of-two rounding.
    pub ratio: f64,
    pub rules: RuleSet,
    pub cases: Vec<CaseLabel>,
    pub is_gap: bool,
    pub is_overlap: bool,
    pub claimed_two: f64,
    pub corrected_two: f64,
    pub claimed_three: f64,
    pub corrected_three: f64,
    /// Simulator cost; `None` with `--no-sim` or when the shape
    /// over-decomposes (k < p).
    pub sim: Option<CostVector>,
}

impl SweepRecord {
    pub fn csv_row(&self) -> String {
        let cases = if self.cases.is_empty() {
            "-".to_string()
        } else {
            self.cases
                .iter()
                .map(|c| c.as_str())
                .collect::<Vec<_>>()
                .join(";")
        };
        let (w_sim, f_sim, s_sim) = match self.sim {
            Some(c) => (
                c.words.to_string(),
                c.flops.to_string(),
                c.messages.to_string(),
            ),
            None => (String::new(), String::new(), String::new()),
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.k,
            self.p,
            self.ratio,
            self.rules,
            cases,
            self.is_gap,
            self.is_overlap,
            self.claimed_two,
            self.corrected_two,
            self.claimed_three,
            self.corrected_three,
            w_sim,
            f_sim,
            s_sim
        )
    }
}

/// Sweep parameters. `p_values` are deduplicated and sorted.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub p_values: Vec<u64>,
    pub r_min: f64,
    pub r_max: f64,
    pub samples: usize,
    pub n_scale: u64,
    pub n0: u64,
    pub rules: RuleSet,
    pub collective: CommModel,
    pub seed: u64,
    pub simulate: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error("ratio range must satisfy 0 < r_min < r_max (got {min}..{max})")]
    BadRange { min: f64, max: f64 },
    #[error("samples must be at least 1")]
    NoSamples,
    #[error("p list must be nonempty")]
    NoProcessors,
    #[error("n_scale and n0 must be powers of two with 1 <= n0 <= n_scale (got n_scale={n_scale}, n0={n0})")]
    BadScale { n_scale: u64, n0: u64 },
}

/// Rounds to the nearest power of two in log space, never below 1.
pub fn round_to_pow2(x: f64) -> u64 {
    if x <= 1.0 {
        return 1;
    }
    let e = x.log2().round();
    if e >= 63.0 {
        1u64 << 63
    } else {
        1u64 << (e as u32)
    }
}

/// Runs the sweep, returning rows sorted by (p, ratio).
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRecord>, SweepError> {
    if !(cfg.r_min > 0.0 && cfg.r_min < cfg.r_max && cfg.r_max.is_finite()) {
        return Err(SweepError::BadRange {
            min: cfg.r_min,
            max: cfg.r_max,
        });
    }
    if cfg.samples == 0 {
        return Err(SweepError::NoSamples);
    }
    if cfg.p_values.is_empty() {
        return Err(SweepError::NoProcessors);
    }
    if !cfg.n_scale.is_power_of_two() || !cfg.n0.is_power_of_two() || cfg.n0 > cfg.n_scale {
        return Err(SweepError::BadScale {
            n_scale: cfg.n_scale,
            n0: cfg.n0,
        });
    }
    let mut p_values = cfg.p_values.clone();
    p_values.sort_unstable();
    p_values.dedup();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let log_span = (cfg.r_max / cfg.r_min).log2();
    let mut rows = Vec::with_capacity(p_values.len() * cfg.samples);
    for &p in &p_values {
        let mut per_p = Vec::with_capacity(cfg.samples);
        for _ in 0..cfg.samples {
            let u: f64 = rng.random();
            let r_sampled = cfg.r_min * (u * log_span).exp2();
            let n = cfg.n_scale;
            let k = round_to_pow2(r_sampled * n as f64);
            let shape = ProblemShape::new(n, k, p, cfg.n0).expect("validated dimensions");
            let classification = classify(&shape, cfg.rules);
            let bounds = bounds_report(&shape);
            let sim = if cfg.simulate {
                trsm_cost(&shape, cfg.collective).ok()
            } else {
                None
            };
            per_p.push(SweepRecord {
                n,
                k,
                p,
                ratio: k as f64 / n as f64,
                rules: cfg.rules,
                cases: classification.labels,
                is_gap: classification.is_gap,
                is_overlap: classification.is_overlap,
                claimed_two: bounds.claimed_two,
                corrected_two: bounds.corrected_two,
                claimed_three: bounds.claimed_three,
                corrected_three: bounds.corrected_three,
                sim,
            });
        }
        per_p.sort_by(|a, b| a.ratio.total_cmp(&b.ratio));
        rows.extend(per_p);
    }
    Ok(rows)
}

/// Writes header plus one row per record.
pub fn write_csv<W: Write>(records: &[SweepRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "{}", CSV_HEADER)?;
    for rec in records {
        writeln!(out, "{}", rec.csv_row())?;
    }
    Ok(())
}
