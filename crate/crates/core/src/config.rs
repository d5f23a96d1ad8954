use crate::factor::FactorConfig;

/// Knobs shared across the engine: step/recursion guards and the seeded
/// factorization parameters. Every nondeterminism source is pinned here.
#[derive(Clone, Debug)]
pub struct Config {
    /// Reduction step limit for one Groebner basis computation.
    pub max_steps: usize,
    /// Recursion depth guard for the decomposition drivers.
    pub max_depth: usize,
    pub factor: FactorConfig,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_steps: 1_000_000,
            max_depth: 32,
            factor: FactorConfig::default(),
        }
    }
}

impl Config {
    pub fn with_seed(seed: u64) -> Self {
        let mut cfg = Config::default();
        cfg.factor.seed = seed;
        cfg
    }
}
