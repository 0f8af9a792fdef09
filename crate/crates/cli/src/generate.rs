//! Seeded random instances.

use colorcut_core::geom::general_position;
use colorcut_core::{Coloring, PointConfig, Rat};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Phi,
    Kirchberger,
    Main,
    Duality,
    EtaBound,
    TauBound,
    Shrink,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Phi => "phi",
            Suite::Kirchberger => "kirchberger",
            Suite::Main => "main",
            Suite::Duality => "duality",
            Suite::EtaBound => "eta-bound",
            Suite::TauBound => "tau-bound",
            Suite::Shrink => "shrink",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignSpec {
    pub suite: Suite,
    pub dim: usize,
    pub n: usize,
    /// Number of colors; 0 leaves instances uncolored.
    pub k: usize,
    pub trials: u32,
    pub seed: u64,
    /// Coordinates lie in `[-coord_range, coord_range]`.
    pub coord_range: i64,
    /// Largest denominator.
    pub denom: i64,
    pub degenerate: bool,
}

impl CampaignSpec {
    pub fn new(suite: Suite, dim: usize, n: usize, k: usize, trials: u32, seed: u64) -> CampaignSpec {
        CampaignSpec {
            suite,
            dim,
            n,
            k,
            trials,
            seed,
            coord_range: 8,
            denom: 4,
            degenerate: false,
        }
    }

    pub fn degenerate(mut self, on: bool) -> CampaignSpec {
        self.degenerate = on;
        self
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: &str| Err(CliError::Usage(m.to_string()));
        if self.trials == 0 {
            return bad("--trials must be at least 1");
        }
        if self.dim == 0 {
            return bad("--dim must be positive");
        }
        if self.n == 0 {
            return bad("--n must be positive");
        }
        if self.coord_range < 1 || self.denom < 1 {
            return bad("coordinate range and denominator bound must be positive");
        }
        if self.k > self.n {
            return bad("--colors cannot exceed --n");
        }
        if self.degenerate && self.dim >= 2 && self.n < 3 {
            return bad("degenerate mode needs at least 3 points");
        }
        Ok(())
    }
}

const MAX_RESAMPLES: u32 = 10_000;

fn coord(rng: &mut ChaCha8Rng, m: i64, d: i64) -> Rat {
    let q = rng.gen_range(1..=d);
    let p = rng.gen_range(-m * q..=m * q);
    Rat::new(p, q).expect("nonzero denominator")
}

/// Instance `trial` of a campaign: stream `trial` of the campaign seed.
pub fn generate_instance(spec: &CampaignSpec, trial: u32) -> Result<PointConfig, CliError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(trial as u64);
    let plant = spec.degenerate && spec.dim >= 2;
    for _ in 0..MAX_RESAMPLES {
        let mut coords: Vec<Vec<Rat>> = (0..spec.n)
            .map(|_| (0..spec.dim).map(|_| coord(&mut rng, spec.coord_range, spec.denom)).collect())
            .collect();
        if plant {
            // Midpoint of the first two points: a collinear triple.
            let mid = coords[0].iter().zip(&coords[1]).map(|(a, b)| (a + b) / Rat::from(2i64)).collect();
            coords[2] = mid;
        }
        let Ok(config) = PointConfig::from_coords(spec.dim, coords) else {
            continue;
        };
        // Degenerate instances keep the planted triple but are otherwise
        // generic: dropping its midpoint restores general position.
        let generic = if plant {
            let rest: Vec<_> = config.ids().filter(|id| id.0 != 2).collect();
            general_position(&config.subset(&rest).expect("ids from the configuration"))
        } else {
            general_position(&config)
        };
        if !generic {
            continue;
        }
        if spec.k == 0 {
            return Ok(config);
        }
        let mut colors: Vec<u32> = (0..spec.n).map(|i| (i % spec.k) as u32).collect();
        colors.shuffle(&mut rng);
        let coloring = Coloring::from_parts(config.ids(), colors);
        return Ok(config.with_coloring(coloring)?);
    }
    Err(CliError::Usage(format!(
        "no admissible instance after {MAX_RESAMPLES} samples; widen the coordinate range"
    )))
}
