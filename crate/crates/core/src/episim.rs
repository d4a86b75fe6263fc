//! Discrete-time SIS epidemics and the `1/λ₁` threshold.
//!
//! Updates are synchronous: every vertex reads the infected set as it was
//! at the start of the step. A susceptible vertex with `c` infected
//! neighbors catches with probability `1 − (1 − β)^c`; a vertex infected at
//! the start of the step recovers with probability `δ`. Immunized vertices
//! are deleted from the graph before the first step.
//!
//! Trial `t` draws from ChaCha8 seeded with `seed` on stream `t`, so trials
//! are independent of each other and of execution order.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::spectral::{lambda1, PowerIteration};

/// Name of the generator behind every trial, for output metadata.
pub const RNG_NAME: &str = "ChaCha8 (rand_chacha 0.3), stream = trial index";

#[derive(Clone, Debug, PartialEq)]
pub enum InitialInfected {
    /// Fraction of surviving vertices, sampled uniformly without replacement
    /// per trial. Rounded to nearest, at least one when positive.
    Fraction(f64),
    /// Explicit vertices (indices of the input graph). Immunized members
    /// are ignored.
    Vertices(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SisConfig {
    pub beta: f64,
    pub delta: f64,
    pub steps: usize,
    pub trials: usize,
    pub seed: u64,
    pub initial_infected: InitialInfected,
}

impl Default for SisConfig {
    fn default() -> Self {
        SisConfig {
            beta: 0.1,
            delta: 0.2,
            steps: 100,
            trials: 20,
            seed: 0,
            initial_infected: InitialInfected::Fraction(0.1),
        }
    }
}

impl SisConfig {
    pub fn validate(&self) -> Result<()> {
        let prob = |name: &str, x: f64| {
            if (0.0..=1.0).contains(&x) {
                Ok(())
            } else {
                Err(Error::Argument(format!(
                    "{name} must lie in [0, 1], got {x}"
                )))
            }
        };
        prob("beta", self.beta)?;
        prob("delta", self.delta)?;
        if self.steps == 0 || self.trials == 0 {
            return Err(Error::Argument(
                "steps and trials must be at least 1".into(),
            ));
        }
        if let InitialInfected::Fraction(f) = self.initial_infected {
            prob("initial fraction", f)?;
        }
        Ok(())
    }
}

/// `β/δ` against the epidemic threshold of the simulated (residual) graph.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdRecord {
    pub beta_over_delta: f64,
    /// `1/λ₁`, infinite when the graph has no edges.
    pub threshold: f64,
}

impl ThresholdRecord {
    pub fn is_super_threshold(&self) -> bool {
        self.beta_over_delta > self.threshold
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SisResult {
    /// Mean infected count per step; index 0 is the initial state.
    pub infected_ts: Vec<f64>,
    pub min_ts: Vec<usize>,
    pub max_ts: Vec<usize>,
    /// Infected count at the final step of each trial.
    pub final_counts: Vec<usize>,
    pub final_mean: f64,
    pub threshold: ThresholdRecord,
}

impl SisResult {
    pub fn final_median(&self) -> f64 {
        median(
            &self
                .final_counts
                .iter()
                .map(|&c| c as f64)
                .collect::<Vec<_>>(),
        )
    }
}

pub(crate) fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    match v.len() {
        0 => f64::NAN,
        n if n % 2 == 1 => v[n / 2],
        n => 0.5 * (v[n / 2 - 1] + v[n / 2]),
    }
}

/// `1/λ₁(g)`; `f64::INFINITY` for a graph without edges.
pub fn epidemic_threshold(g: &Graph, opts: PowerIteration) -> Result<f64> {
    let lam = lambda1(g, opts)?.lambda1;
    Ok(if lam > 0.0 { 1.0 / lam } else { f64::INFINITY })
}

fn run_trial(g: &Graph, cfg: &SisConfig, initial: &[usize], trial: usize) -> Vec<usize> {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(trial as u64);

    let mut infected = vec![false; n];
    match cfg.initial_infected {
        InitialInfected::Fraction(f) => {
            let want = if f > 0.0 && n > 0 {
                ((f * n as f64).round() as usize).clamp(1, n)
            } else {
                0
            };
            for v in sample(&mut rng, n, want) {
                infected[v] = true;
            }
        }
        InitialInfected::Vertices(_) => {
            for &v in initial {
                infected[v] = true;
            }
        }
    }

    let mut counts = Vec::with_capacity(cfg.steps + 1);
    counts.push(infected.iter().filter(|&&i| i).count());
    let mut next = vec![false; n];
    for _ in 0..cfg.steps {
        for v in 0..n {
            next[v] = if infected[v] {
                !rng.gen_bool(cfg.delta)
            } else {
                let c = g.neighbors(v).iter().filter(|&&w| infected[w]).count();
                c > 0 && rng.gen::<f64>() < 1.0 - (1.0 - cfg.beta).powi(c as i32)
            };
        }
        std::mem::swap(&mut infected, &mut next);
        counts.push(infected.iter().filter(|&&i| i).count());
    }
    counts
}

/// Simulates SIS on `g − immunized`, averaging `cfg.trials` runs.
pub fn sis_simulate(g: &Graph, cfg: &SisConfig, immunized: &VertexSet) -> Result<SisResult> {
    sis_simulate_with(g, cfg, immunized, PowerIteration::default())
}

pub fn sis_simulate_with(
    g: &Graph,
    cfg: &SisConfig,
    immunized: &VertexSet,
    opts: PowerIteration,
) -> Result<SisResult> {
    cfg.validate()?;
    let (residual, original) = g.remove_vertices_mapped(immunized)?;

    let initial: Vec<usize> = match &cfg.initial_infected {
        InitialInfected::Vertices(vs) => {
            let mut new_index = vec![usize::MAX; g.n()];
            for (i, &o) in original.iter().enumerate() {
                new_index[o] = i;
            }
            let mut init = Vec::new();
            for &v in vs {
                g.check_vertex(v)?;
                if new_index[v] != usize::MAX {
                    init.push(new_index[v]);
                }
            }
            init
        }
        InitialInfected::Fraction(_) => Vec::new(),
    };

    let runs: Vec<Vec<usize>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(&residual, cfg, &initial, t))
        .collect();

    let steps = cfg.steps + 1;
    let mut infected_ts = vec![0.0; steps];
    let mut min_ts = vec![usize::MAX; steps];
    let mut max_ts = vec![0; steps];
    for run in &runs {
        for (t, &c) in run.iter().enumerate() {
            infected_ts[t] += c as f64;
            min_ts[t] = min_ts[t].min(c);
            max_ts[t] = max_ts[t].max(c);
        }
    }
    for x in &mut infected_ts {
        *x /= cfg.trials as f64;
    }
    let final_counts: Vec<usize> = runs.iter().map(|r| *r.last().unwrap()).collect();
    let final_mean = infected_ts[steps - 1];
    let beta_over_delta = if cfg.delta > 0.0 {
        cfg.beta / cfg.delta
    } else if cfg.beta > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    Ok(SisResult {
        infected_ts,
        min_ts,
        max_ts,
        final_counts,
        final_mean,
        threshold: ThresholdRecord {
            beta_over_delta,
            threshold: epidemic_threshold(&residual, opts)?,
        },
    })
}

/// Final mean infected with `s` immunized over the same without
/// immunization, both runs seeded identically. `0` when both are `0`.
pub fn save_ratio(g: &Graph, cfg: &SisConfig, s: &VertexSet) -> Result<f64> {
    let with = sis_simulate(g, cfg, s)?.final_mean;
    let without = sis_simulate(g, cfg, &VertexSet::new())?.final_mean;
    Ok(if with == 0.0 && without == 0.0 {
        0.0
    } else {
        with / without
    })
}
