//! Subframe aggregation: collapsing the `K` subchannels of each subframe
//! into one macro-vertex weight.
//!
//! The macro-vertex weight is the limit of a log-sum-exp smooth maximum as
//! its sharpness grows. [`aggregate_max`] computes that limit directly (the
//! block maximum plus its argmax); [`smooth_aggregate`] evaluates the finite
//! sharpness form, which is used to audit the limit numerically.

use super::{ProblemInstance, WeightMatrix};
use crate::{Error, Result};

/// Per-subframe maxima `d[i][s]` and the subchannel that attains each.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregatedWeights {
    pub d: WeightMatrix,
    /// Row-major `N x S`, entries in `[0, K)`.
    argmax_slot: Vec<usize>,
    slots_per_subframe: usize,
}

impl AggregatedWeights {
    pub fn num_vehicles(&self) -> usize {
        self.d.rows()
    }

    pub fn num_subframes(&self) -> usize {
        self.d.cols()
    }

    pub fn slots_per_subframe(&self) -> usize {
        self.slots_per_subframe
    }

    pub fn value(&self, vehicle: usize, subframe: usize) -> f64 {
        self.d.get(vehicle, subframe)
    }

    pub fn argmax_slot(&self, vehicle: usize, subframe: usize) -> usize {
        self.argmax_slot[vehicle * self.d.cols() + subframe]
    }
}

/// Sharpness of the log-sum-exp smooth maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothMaxConfig {
    beta: f64,
}

impl SmoothMaxConfig {
    pub fn new(beta: f64) -> Result<Self> {
        if beta.is_finite() && beta > 0.0 {
            Ok(Self { beta })
        } else {
            Err(Error::InvalidBeta(beta))
        }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Block maxima with lowest-index tie-breaking.
pub fn aggregate_max(instance: &ProblemInstance) -> AggregatedWeights {
    let n = instance.num_vehicles();
    let s = instance.num_subframes();
    let mut d = Vec::with_capacity(n * s);
    let mut argmax_slot = Vec::with_capacity(n * s);
    for i in 0..n {
        for alpha in 0..s {
            let block = instance.block(i, alpha);
            let (best_k, best) = block
                .iter()
                .enumerate()
                .fold((0, block[0]), |(bk, bv), (k, &v)| if v > bv { (k, v) } else { (bk, bv) });
            d.push(best);
            argmax_slot.push(best_k);
        }
    }
    AggregatedWeights {
        d: WeightMatrix::new(n, s, d).expect("n*s entries"),
        argmax_slot,
        slots_per_subframe: instance.slots_per_subframe(),
    }
}

/// `(1/beta) * ln(sum_k exp(beta * w_k))` over each subframe block.
pub fn smooth_aggregate(instance: &ProblemInstance, config: SmoothMaxConfig) -> WeightMatrix {
    let n = instance.num_vehicles();
    let s = instance.num_subframes();
    let mut out = Vec::with_capacity(n * s);
    for i in 0..n {
        for alpha in 0..s {
            out.push(smooth_max(instance.block(i, alpha), config.beta));
        }
    }
    WeightMatrix::new(n, s, out).expect("n*s entries")
}

/// Log-sum-exp with the block maximum factored out, so every exponent is
/// `<= 0` and the sum lies in `[1, len]`.
pub fn smooth_max(block: &[f64], beta: f64) -> f64 {
    let m = block.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = block
        .iter()
        // the clamp keeps beta * (w - m) finite when beta * w alone would overflow
        .map(|&w| (beta * (w - m)).max(-f64::MAX).exp())
        .sum();
    m + sum.ln() / beta
}
