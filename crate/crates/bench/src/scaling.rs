//! Speedup and strong-scaling efficiency.

use crate::BenchError;

fn positive(name: &'static str, seconds: f64) -> Result<f64, BenchError> {
    if seconds > 0.0 && seconds.is_finite() {
        Ok(seconds)
    } else {
        Err(BenchError::NonPositiveTime { name, seconds })
    }
}

/// `t_serial / t_parallel`.
pub fn speedup(t_serial: f64, t_parallel: f64) -> Result<f64, BenchError> {
    Ok(positive("t_serial", t_serial)? / positive("t_parallel", t_parallel)?)
}

/// Percentage of ideal `p`-fold speedup: `100 * t1 / (p * tp)`.
///
/// Unrounded; reports format it to two decimals with [`round2`].
pub fn strong_scaling_efficiency(t1: f64, tp: f64, p: usize) -> Result<f64, BenchError> {
    if p == 0 {
        return Err(BenchError::InvalidWorkers);
    }
    Ok(100.0 * positive("t1", t1)? / (p as f64 * positive("tp", tp)?))
}

pub fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

/// One row of the scaling table.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingRow {
    pub nodes: usize,
    pub procs: usize,
    pub time_s: f64,
    pub speedup: f64,
    pub efficiency_pct: f64,
}

impl ScalingRow {
    pub fn new(nodes: usize, procs: usize, t1: f64, tp: f64) -> Result<ScalingRow, BenchError> {
        Ok(ScalingRow {
            nodes,
            procs,
            time_s: tp,
            speedup: speedup(t1, tp)?,
            efficiency_pct: strong_scaling_efficiency(t1, tp, procs)?,
        })
    }
}
