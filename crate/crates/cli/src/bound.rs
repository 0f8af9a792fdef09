//! Empirical search for the subset size that forces partitionability.

use colorcut_core::colorful::{is_partitionable, smallest_nonpartitionable};
use colorcut_core::{counting, PointConfig};
use serde::Serialize;

use crate::campaign::EXHAUSTIVE_MAX_N;
use crate::error::CliError;
use crate::generate::{generate_instance, CampaignSpec};

#[derive(Clone, Debug, Serialize)]
pub struct GapRecord {
    pub trial: u32,
    /// Largest `m` with every `m`-subset partitionable.
    pub m_star: usize,
    /// `m_star + 1`, the size of a smallest non-partitionable subset.
    pub needed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub spec: CampaignSpec,
    pub bound: u64,
    pub partitionable_skipped: u32,
    pub instances: Vec<GapRecord>,
    /// Largest `needed` observed; an empirical lower estimate only.
    pub max_needed: Option<usize>,
    pub within_bound: bool,
}

/// `m*` of a non-partitionable configuration, by exhaustive subsets.
pub fn gap(config: &PointConfig) -> Result<Option<GapRecord>, CliError> {
    let Some(s) = smallest_nonpartitionable(config, config.len())? else {
        return Ok(None);
    };
    Ok(Some(GapRecord {
        trial: 0,
        m_star: s.len() - 1,
        needed: s.len(),
    }))
}

pub fn bound_search(spec: &CampaignSpec) -> Result<BoundReport, CliError> {
    spec.validate()?;
    if spec.k < 2 {
        return Err(CliError::Usage("bound search needs at least 2 colors".into()));
    }
    if spec.n > EXHAUSTIVE_MAX_N {
        return Err(CliError::Usage(format!(
            "bound search is exhaustive and limited to --n <= {EXHAUSTIVE_MAX_N}"
        )));
    }
    let bound = counting::bound(spec.dim as u64, spec.k as u64)?;
    let mut instances = Vec::new();
    let mut skipped = 0;
    for trial in 0..spec.trials {
        let config = generate_instance(spec, trial)?;
        if is_partitionable(&config)?.is_some() {
            skipped += 1;
            continue;
        }
        let mut record =
            gap(&config)?.ok_or_else(|| CliError::Verification("non-partitionable set without a witness subset".into()))?;
        record.trial = trial;
        instances.push(record);
    }
    let max_needed = instances.iter().map(|r| r.needed).max();
    Ok(BoundReport {
        spec: spec.clone(),
        bound,
        partitionable_skipped: skipped,
        within_bound: max_needed.is_none_or(|m| m as u64 <= bound),
        instances,
        max_needed,
    })
}
