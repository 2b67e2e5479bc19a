//! Sharded, seeded Monte-Carlo accumulation.
//!
//! Shard `s` draws from `ChaCha8(seed)` on stream `s`, and the shard
//! moments are merged in index order, so results do not depend on the
//! thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_SHARDS: usize = 64;

fn default_shards() -> usize {
    DEFAULT_SHARDS
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub samples: usize,
    pub seed: u64,
    #[serde(default = "default_shards")]
    pub shards: usize,
    /// Fail with `InsufficientSamples` when the standard error exceeds this.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_stderr: Option<f64>,
}

impl McConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self { samples, seed, shards: DEFAULT_SHARDS, max_stderr: None }
    }

    pub fn with_shards(self, shards: usize) -> Self {
        Self { shards, ..self }
    }

    pub fn with_max_stderr(self, max: f64) -> Self {
        Self { max_stderr: Some(max), ..self }
    }

    /// Same sizes, independent seed for sub-run `tag`.
    pub fn derived(&self, tag: u64) -> Self {
        Self { seed: splitmix(self.seed ^ splitmix(tag.wrapping_add(1))), ..*self }
    }

    fn validate(&self) -> Result<()> {
        if self.samples < 2 {
            return Err(Error::InvalidArgument(format!("need at least 2 samples, got {}", self.samples)));
        }
        if self.shards == 0 {
            return Err(Error::InvalidArgument("shard count must be positive".into()));
        }
        if let Some(m) = self.max_stderr {
            if !(m > 0.0) {
                return Err(Error::InvalidArgument(format!("requested standard error {m} must be positive")));
            }
        }
        Ok(())
    }

    pub(crate) fn check_stderr(&self, stderr: f64) -> Result<()> {
        match self.max_stderr {
            Some(m) if stderr > m => Err(Error::InsufficientSamples { stderr, requested: m }),
            _ => Ok(()),
        }
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Count, means and centred second moments of a vector-valued sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Moments {
    pub count: usize,
    pub mean: Vec<f64>,
    m2: Vec<f64>,
}

impl Moments {
    fn new(m: usize) -> Self {
        Self { count: 0, mean: vec![0.0; m], m2: vec![0.0; m] }
    }

    fn push(&mut self, x: &[f64]) {
        self.count += 1;
        let c = self.count as f64;
        for ((mu, m2), &v) in self.mean.iter_mut().zip(self.m2.iter_mut()).zip(x) {
            let d = v - *mu;
            *mu += d / c;
            *m2 += d * (v - *mu);
        }
    }

    fn merge(&mut self, o: &Moments) {
        if o.count == 0 {
            return;
        }
        let (na, nb) = (self.count as f64, o.count as f64);
        let n = na + nb;
        for k in 0..self.mean.len() {
            let d = o.mean[k] - self.mean[k];
            self.mean[k] += d * nb / n;
            self.m2[k] += o.m2[k] + d * d * na * nb / n;
        }
        self.count += o.count;
    }

    /// Standard error of each mean.
    pub fn stderr(&self) -> Vec<f64> {
        let n = self.count as f64;
        self.m2.iter().map(|m2| (m2 / (n - 1.0) / n).max(0.0).sqrt()).collect()
    }
}

/// Run `cfg.samples` draws of an `m`-vector sample.
pub fn run<F>(cfg: &McConfig, m: usize, sample: F) -> Result<Moments>
where
    F: Fn(&mut ChaCha8Rng, &mut [f64]) -> Result<()> + Sync,
{
    cfg.validate()?;
    let shards = cfg.shards.min(cfg.samples);
    let parts: Vec<Result<Moments>> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let count = cfg.samples / shards + usize::from(s < cfg.samples % shards);
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(s as u64);
            let mut acc = Moments::new(m);
            let mut x = vec![0.0; m];
            for _ in 0..count {
                x.fill(0.0);
                sample(&mut rng, &mut x)?;
                acc.push(&x);
            }
            Ok(acc)
        })
        .collect();
    let mut total = Moments::new(m);
    for p in parts {
        total.merge(&p?);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn uniform_mean_and_error() {
        let cfg = McConfig::new(40_000, 3);
        let r = run(&cfg, 2, |rng, x| {
            let u: f64 = rng.random();
            x[0] = u;
            x[1] = 2.0;
            Ok(())
        })
        .unwrap();
        assert_eq!(r.count, 40_000);
        assert!((r.mean[0] - 0.5).abs() < 4.0 * r.stderr()[0]);
        // sd of U(0,1) is 1/sqrt(12)
        let expect = (1.0f64 / 12.0 / 40_000.0).sqrt();
        assert!((r.stderr()[0] / expect - 1.0).abs() < 0.02);
        assert_eq!(r.mean[1], 2.0);
        assert_eq!(r.stderr()[1], 0.0);
    }

    #[test]
    fn merge_matches_single_pass() {
        let xs: Vec<f64> = (0..101).map(|i| ((i * 37) % 17) as f64 * 0.3).collect();
        let mut all = Moments::new(1);
        xs.iter().for_each(|x| all.push(&[*x]));
        let mut a = Moments::new(1);
        let mut b = Moments::new(1);
        xs[..40].iter().for_each(|x| a.push(&[*x]));
        xs[40..].iter().for_each(|x| b.push(&[*x]));
        a.merge(&b);
        assert!((a.mean[0] - all.mean[0]).abs() < 1e-13);
        assert!((a.stderr()[0] - all.stderr()[0]).abs() < 1e-13);
    }

    #[test]
    fn seeds_and_shards_are_deterministic() {
        let f = |rng: &mut ChaCha8Rng, x: &mut [f64]| {
            x[0] = rng.random::<f64>().powi(3);
            Ok(())
        };
        let a = run(&McConfig::new(5000, 11), 1, f).unwrap();
        let b = run(&McConfig::new(5000, 11), 1, f).unwrap();
        assert_eq!(a, b);
        let c = run(&McConfig::new(5000, 12), 1, f).unwrap();
        assert_ne!(a.mean, c.mean);
        assert_ne!(McConfig::new(1, 5).derived(0).seed, McConfig::new(1, 5).derived(1).seed);
    }

    #[test]
    fn errors_propagate() {
        let r = run(&McConfig::new(100, 0), 1, |_, _| Err(Error::EmptyPolytope));
        assert_eq!(r.unwrap_err(), Error::EmptyPolytope);
        assert!(run(&McConfig::new(1, 0), 1, |_, _| Ok(())).is_err());
    }
}
