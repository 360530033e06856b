//! Natural edge-probability functions `p(n) = n^{-g(n)}` and seeded
//! Erdős–Rényi sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

/// Identifies the pinned generator in experiment records.
pub const GENERATOR_ID: &str = "rand_chacha-0.3 ChaCha8Rng; seed_from_u64(seed), set_stream(stream_id); one f64 per vertex pair";

/// Closed set of edge-probability presets. The limit `c_g` of each kind is
/// known analytically and is never estimated from samples.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DistributionRepr", into = "DistributionRepr")]
pub enum NaturalDistribution {
    /// `p(n) = 0`; has no exponent function.
    Zero,
    /// `p(n) = p0` with `p0 ∈ (0, 1]`.
    Constant(f64),
    /// `p(n) = 1 / log2 n`.
    InverseLog,
    /// `p(n) = n^{-c}` with `c > 0`.
    PowerLaw(f64),
    /// `p(n) = n^{-2/(k0-1)}` with `k0 ≥ 3`, the window in which
    /// `k0`-cliques appear with probability bounded away from 0 and 1.
    CriticalWindow(u32),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum DistributionRepr {
    Zero,
    Constant { p: f64 },
    InverseLog,
    PowerLaw { c: f64 },
    CriticalWindow { k: u32 },
}

impl TryFrom<DistributionRepr> for NaturalDistribution {
    type Error = Error;

    fn try_from(r: DistributionRepr) -> Result<Self> {
        let d = match r {
            DistributionRepr::Zero => NaturalDistribution::Zero,
            DistributionRepr::Constant { p } => NaturalDistribution::Constant(p),
            DistributionRepr::InverseLog => NaturalDistribution::InverseLog,
            DistributionRepr::PowerLaw { c } => NaturalDistribution::PowerLaw(c),
            DistributionRepr::CriticalWindow { k } => NaturalDistribution::CriticalWindow(k),
        };
        d.validate()?;
        Ok(d)
    }
}

impl From<NaturalDistribution> for DistributionRepr {
    fn from(d: NaturalDistribution) -> Self {
        match d {
            NaturalDistribution::Zero => DistributionRepr::Zero,
            NaturalDistribution::Constant(p) => DistributionRepr::Constant { p },
            NaturalDistribution::InverseLog => DistributionRepr::InverseLog,
            NaturalDistribution::PowerLaw(c) => DistributionRepr::PowerLaw { c },
            NaturalDistribution::CriticalWindow(k) => DistributionRepr::CriticalWindow { k },
        }
    }
}

impl NaturalDistribution {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NaturalDistribution::Constant(p) if !(p > 0.0 && p <= 1.0) => {
                Err(Error::domain(format!("constant p must lie in (0, 1], got {p}")))
            }
            NaturalDistribution::PowerLaw(c) if !(c > 0.0 && c.is_finite()) => {
                Err(Error::domain(format!("power-law exponent must be positive, got {c}")))
            }
            NaturalDistribution::CriticalWindow(k) if k < 3 => {
                Err(Error::domain(format!("critical window needs k >= 3, got {k}")))
            }
            _ => Ok(()),
        }
    }

    /// Parses the JSON preset object, e.g. `{"kind":"power_law","c":0.5}`.
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// `p(n)` for `n ≥ 2`, clamped to `[0, 1]`.
    pub fn eval_p(&self, n: usize) -> Result<f64> {
        if n < 2 {
            return Err(Error::domain(format!("p(n) is defined for n >= 2, got n = {n}")));
        }
        let nf = n as f64;
        let p = match *self {
            NaturalDistribution::Zero => 0.0,
            NaturalDistribution::Constant(p) => p,
            NaturalDistribution::InverseLog => 1.0 / nf.log2(),
            NaturalDistribution::PowerLaw(c) => nf.powf(-c),
            NaturalDistribution::CriticalWindow(k) => nf.powf(-2.0 / (k as f64 - 1.0)),
        };
        Ok(p.clamp(0.0, 1.0))
    }

    /// `g(n) = -log_n p(n)`; `None` for [`NaturalDistribution::Zero`].
    pub fn g(&self, n: usize) -> Result<Option<f64>> {
        let p = self.eval_p(n)?;
        Ok(match *self {
            NaturalDistribution::Zero => None,
            NaturalDistribution::PowerLaw(c) => Some(c),
            NaturalDistribution::CriticalWindow(k) => Some(2.0 / (k as f64 - 1.0)),
            _ => Some((-p.ln() / (n as f64).ln()).max(0.0)),
        })
    }

    /// `c_g = lim g(n)`; `None` for [`NaturalDistribution::Zero`].
    pub fn c_g(&self) -> Option<f64> {
        match *self {
            NaturalDistribution::Zero => None,
            NaturalDistribution::Constant(_) | NaturalDistribution::InverseLog => Some(0.0),
            NaturalDistribution::PowerLaw(c) => Some(c),
            NaturalDistribution::CriticalWindow(k) => Some(2.0 / (k as f64 - 1.0)),
        }
    }

    /// `c_g = 0`.
    pub fn is_dense(&self) -> bool {
        self.c_g() == Some(0.0)
    }
}

/// Base seed plus per-trial stream index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSeed {
    pub seed: u64,
    pub stream: u64,
}

impl RngSeed {
    pub fn new(seed: u64, stream: u64) -> Self {
        RngSeed { seed, stream }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// Samples `G(n, p(n))`. Vertex pairs are visited in lexicographic order and
/// each consumes exactly one uniform variate.
pub fn sample_gnp(dist: &NaturalDistribution, n: usize, seed: RngSeed) -> Graph {
    let mut rng = seed.rng();
    sample_gnp_with(dist, n, &mut rng)
}

/// As [`sample_gnp`], drawing from a caller-owned generator so that the same
/// stream can continue to feed randomized solvers.
pub fn sample_gnp_with<R: Rng + ?Sized>(dist: &NaturalDistribution, n: usize, rng: &mut R) -> Graph {
    if n < 2 {
        return Graph::empty(n);
    }
    let p = dist.eval_p(n).expect("n >= 2");
    sample_with_p(n, p, rng)
}

pub(crate) fn sample_with_p<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                b.add_edge(u, v);
            }
        }
    }
    b.build()
}
