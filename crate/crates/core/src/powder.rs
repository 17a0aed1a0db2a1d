//! Deterministic orientation sampling and weighted ensemble averaging, shared
//! by powder averages, RF-inhomogeneity ensembles, and any other
//! parameter-distributed run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::constants::TAU;
use crate::propagate::TimeSeries;
use crate::solid::CrystalliteOrientation;

#[derive(Debug, Error)]
pub enum PowderError {
    #[error("orientation counts must be at least 1")]
    ZeroCount,
    #[error("ensemble members disagree on the time grid or channel layout")]
    GridMismatch,
    #[error("ensemble is empty")]
    Empty,
    #[error("member evaluation failed: {0}")]
    Member(String),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum OrientationScheme {
    /// Low-discrepancy Fibonacci lattice on (alpha, beta) crossed with a
    /// uniform gamma grid; fully deterministic.
    FibonacciGamma,
    /// Seeded uniform random Euler angles (alpha, cos beta, gamma).
    UniformRandom,
}

/// A weighted, deterministic set of crystallite orientations.
#[derive(Clone, Debug)]
pub struct OrientationSet {
    pub members: Vec<(CrystalliteOrientation, f64)>,
    pub scheme: String,
}

impl OrientationSet {
    pub fn single(orientation: CrystalliteOrientation) -> Self {
        Self {
            members: vec![(orientation, 1.0)],
            scheme: "single".into(),
        }
    }

    pub fn from_list(orients: &[CrystalliteOrientation]) -> Self {
        let w = 1.0 / orients.len() as f64;
        Self {
            members: orients.iter().map(|o| (*o, w)).collect(),
            scheme: format!("list:{}", orients.len()),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn weights_sum(&self) -> f64 {
        pairwise_sum(&self.members.iter().map(|(_, w)| *w).collect::<Vec<_>>())
    }
}

/// Build n_sphere x n_gamma equally weighted orientations. The seed only
/// affects the uniform-random scheme; the Fibonacci lattice is deterministic
/// by construction.
pub fn generate_orientations(
    scheme: OrientationScheme,
    n_sphere: usize,
    n_gamma: usize,
    seed: u64,
) -> Result<OrientationSet, PowderError> {
    if n_sphere == 0 || n_gamma == 0 {
        return Err(PowderError::ZeroCount);
    }
    let total = n_sphere * n_gamma;
    let weight = 1.0 / total as f64;
    let mut members = Vec::with_capacity(total);
    match scheme {
        OrientationScheme::FibonacciGamma => {
            let golden = (1.0 + 5.0_f64.sqrt()) / 2.0;
            for i in 0..n_sphere {
                let z = 1.0 - (2.0 * i as f64 + 1.0) / n_sphere as f64;
                let beta = z.clamp(-1.0, 1.0).acos();
                let alpha = (TAU * i as f64 / golden).rem_euclid(TAU);
                for j in 0..n_gamma {
                    let gamma = TAU * j as f64 / n_gamma as f64;
                    members.push((CrystalliteOrientation::new(alpha, beta, gamma), weight));
                }
            }
        }
        OrientationScheme::UniformRandom => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..total {
                let alpha = rng.gen::<f64>() * TAU;
                let beta = (1.0 - 2.0 * rng.gen::<f64>()).clamp(-1.0, 1.0).acos();
                let gamma = rng.gen::<f64>() * TAU;
                members.push((CrystalliteOrientation::new(alpha, beta, gamma), weight));
            }
        }
    }
    Ok(OrientationSet {
        members,
        scheme: match scheme {
            OrientationScheme::FibonacciGamma => format!("fibonacci:{n_sphere}x{n_gamma}"),
            OrientationScheme::UniformRandom => format!("random:{total}:seed={seed}"),
        },
    })
}

/// RF-amplitude scale factors with weights, for inhomogeneity ensembles.
#[derive(Clone, Debug, PartialEq)]
pub enum RfDistribution {
    /// Gaussian scale distribution of the given standard deviation,
    /// discretized on 21 equally spaced nodes over +-2.5 sigma.
    Gaussian,
    /// Uniform over +-width.
    Uniform,
}

pub fn rf_scale_nodes(fraction: f64, model: &RfDistribution) -> Vec<(f64, f64)> {
    if fraction == 0.0 {
        return vec![(1.0, 1.0)];
    }
    const NODES: usize = 21;
    match model {
        RfDistribution::Gaussian => {
            let sigma = fraction;
            let half = 2.5 * sigma;
            let mut nodes = Vec::with_capacity(NODES);
            let mut total = 0.0;
            for k in 0..NODES {
                let x = -half + 2.0 * half * k as f64 / (NODES - 1) as f64;
                let w = (-0.5 * (x / sigma).powi(2)).exp();
                nodes.push((1.0 + x, w));
                total += w;
            }
            for n in &mut nodes {
                n.1 /= total;
            }
            nodes
        }
        RfDistribution::Uniform => {
            let w = 1.0 / NODES as f64;
            (0..NODES)
                .map(|k| {
                    let x = -fraction + 2.0 * fraction * k as f64 / (NODES - 1) as f64;
                    (1.0 + x, w)
                })
                .collect()
        }
    }
}

/// Pairwise (tree) summation: deterministic and insensitive to evaluation
/// order of the ensemble members.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => pairwise_sum(&values[..n / 2]) + pairwise_sum(&values[n / 2..]),
    }
}

/// Weighted channel-wise mean of per-member series. Members are evaluated
/// concurrently; the reduction is a fixed-order pairwise sum, so results do
/// not depend on scheduling.
pub fn ensemble_average<M: Sync>(
    members: &[(M, f64)],
    evaluator: impl Fn(&M) -> Result<TimeSeries, String> + Sync,
) -> Result<TimeSeries, PowderError> {
    use rayon::prelude::*;
    if members.is_empty() {
        return Err(PowderError::Empty);
    }
    let series: Vec<(TimeSeries, f64)> = members
        .par_iter()
        .map(|(m, w)| evaluator(m).map(|ts| (ts, *w)))
        .collect::<Result<_, String>>()
        .map_err(PowderError::Member)?;
    let (first, _) = &series[0];
    for (ts, _) in &series[1..] {
        if ts.times.len() != first.times.len()
            || ts
                .times
                .iter()
                .zip(&first.times)
                .any(|(a, b)| (a - b).abs() > 1e-12 * b.abs().max(1e-30))
            || ts.channels.len() != first.channels.len()
            || ts
                .channels
                .iter()
                .zip(&first.channels)
                .any(|((na, _), (nb, _))| na != nb)
        {
            return Err(PowderError::GridMismatch);
        }
    }
    let n_t = first.times.len();
    let mut channels = Vec::with_capacity(first.channels.len());
    for (c, (name, _)) in first.channels.iter().enumerate() {
        let mut values = Vec::with_capacity(n_t);
        let mut buf = vec![0.0; series.len()];
        for t in 0..n_t {
            for (k, (ts, w)) in series.iter().enumerate() {
                buf[k] = w * ts.channels[c].1[t];
            }
            values.push(pairwise_sum(&buf));
        }
        channels.push((name.clone(), values));
    }
    Ok(TimeSeries {
        times: first.times.clone(),
        channels,
        metadata: first.metadata.clone(),
    })
}
