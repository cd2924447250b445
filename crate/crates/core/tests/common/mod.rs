#![allow(dead_code)]

use rand::Rng;

/// Sample mean and its standard error.
#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub mean: f64,
    pub se: f64,
}

impl Estimate {
    pub fn within(&self, value: f64, k: f64) -> bool {
        (value - self.mean).abs() <= k * self.se + 1e-15
    }
}

/// Simulated period payoffs per unit of the risky bond: `1 - lgd` on
/// default (probability `q`), else 1.
pub struct DefaultSample {
    pub lgd: f64,
    pub n: u64,
    pub defaults: u64,
}

impl DefaultSample {
    pub fn draw<R: Rng>(rng: &mut R, lgd: f64, q: f64, n: u64) -> Self {
        let mut defaults = 0;
        for _ in 0..n {
            if rng.gen::<f64>() < q {
                defaults += 1;
            }
        }
        DefaultSample { lgd, n, defaults }
    }

    /// Mean and standard error of `a + b * X` over the paths.
    pub fn linear(&self, a: f64, b: f64) -> Estimate {
        let n = self.n as f64;
        let p = self.defaults as f64 / n;
        let mean_x = 1.0 - self.lgd * p;
        let var_x = self.lgd * self.lgd * p * (1.0 - p) * n / (n - 1.0);
        Estimate { mean: a + b * mean_x, se: b.abs() * (var_x / n).sqrt() }
    }

    /// `a / mean(X) + c` with a delta-method standard error.
    pub fn reciprocal(&self, a: f64, c: f64) -> Estimate {
        let x = self.linear(0.0, 1.0);
        Estimate { mean: a / x.mean + c, se: a.abs() * x.se / (x.mean * x.mean) }
    }
}
