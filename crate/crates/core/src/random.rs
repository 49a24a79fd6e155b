//! Seeded Erdős–Rényi graphs.
//!
//! The generator is ChaCha8 seeded with `seed_from_u64(seed)`. For each pair
//! `i < j` in lexicographic order one value is drawn uniformly from
//! `0..den`, and the edge is kept when the value is below `num`. Every graph
//! in a batch consumes draws from the same stream, so instance `t` depends on
//! all earlier instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graphic::Graph;

pub const GENERATOR_NAME: &str = "ChaCha8Rng::seed_from_u64, one uniform draw in 0..den per vertex pair in lexicographic order";

/// Edge probability `num / den`, kept exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Probability {
    num: u64,
    den: u64,
}

impl Probability {
    /// Requires `den > 0` and `num <= den`.
    pub fn new(num: u64, den: u64) -> Option<Self> {
        (den > 0 && num <= den).then_some(Probability { num, den })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }
}

impl std::str::FromStr for Probability {
    type Err = String;

    /// Accepts `NUM/DEN` or a bare `0` / `1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (num, den) = s.split_once('/').unwrap_or((s, "1"));
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("`{s}` is not a probability NUM/DEN"))
        };
        let (num, den) = (parse(num)?, parse(den)?);
        Probability::new(num, den).ok_or_else(|| format!("`{s}` must satisfy 0 <= NUM/DEN <= 1"))
    }
}

impl std::fmt::Display for Probability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

pub struct GnpSampler {
    n: usize,
    p: Probability,
    rng: ChaCha8Rng,
}

impl GnpSampler {
    pub fn new(n: usize, p: Probability, seed: u64) -> Self {
        GnpSampler {
            n,
            p,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn sample(&mut self) -> Graph {
        let mut edges = Vec::new();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                if self.rng.gen_range(0..self.p.den) < self.p.num {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(self.n, edges).expect("sampled edges are simple")
    }
}

impl Iterator for GnpSampler {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        Some(self.sample())
    }
}
