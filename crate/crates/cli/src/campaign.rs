//! Verification campaigns over seeded instances.

use colorcut_core::colorful::{
    is_partitionable, is_partitionable_via_h, kirchberger_witness, separable_along_colors, small_subsets_separable,
    smallest_nonpartitionable, verify_main_theorem, HellyDual, TheoremCheck,
};
use colorcut_core::counting;
use colorcut_core::geom::general_position;
use colorcut_core::hdivision::{projective_flip, shrink_to_min};
use colorcut_core::{HDivision, PointConfig};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::format::ids_json;
use crate::generate::{generate_instance, CampaignSpec, Suite};

/// Largest instance on which subsets are searched exhaustively.
pub const EXHAUSTIVE_MAX_N: usize = 12;

#[derive(Clone, Debug, Serialize)]
pub struct TrialRecord {
    pub trial: u32,
    pub ok: bool,
    /// Failed checks, empty when `ok`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub spec: CampaignSpec,
    pub passed: u32,
    pub failed: u32,
    pub trials: Vec<TrialRecord>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Failed checks of one trial.
#[derive(Default)]
struct Checks(Vec<String>);

impl Checks {
    fn expect(&mut self, cond: bool, what: impl FnOnce() -> String) {
        if !cond {
            self.0.push(what());
        }
    }
}

pub fn run_suite(spec: &CampaignSpec) -> Result<SuiteReport, CliError> {
    spec.validate()?;
    if spec.n < 2 {
        return Err(CliError::Usage("campaigns need at least 2 points".into()));
    }
    if spec.suite == Suite::Kirchberger && spec.k != 2 {
        return Err(CliError::Usage("the kirchberger suite needs --colors 2".into()));
    }
    if spec.suite == Suite::Main && spec.k < 2 {
        return Err(CliError::Usage("the main suite needs at least 2 colors".into()));
    }
    let mut trials = Vec::with_capacity(spec.trials as usize);
    for trial in 0..spec.trials {
        let config = generate_instance(spec, trial)?;
        let mut checks = Checks::default();
        let detail = match run_trial(spec.suite, &config, &mut checks) {
            Ok(detail) => detail,
            Err(CliError::Verification(msg)) => {
                checks.0.push(msg);
                Value::Null
            }
            Err(e) => return Err(e),
        };
        trials.push(TrialRecord {
            trial,
            ok: checks.0.is_empty(),
            failures: checks.0,
            detail,
        });
    }
    let passed = trials.iter().filter(|t| t.ok).count() as u32;
    Ok(SuiteReport {
        suite: spec.suite.name(),
        spec: spec.clone(),
        passed,
        failed: spec.trials - passed,
        trials,
    })
}

fn run_trial(suite: Suite, config: &PointConfig, checks: &mut Checks) -> Result<Value, CliError> {
    let d = config.dim() as u64;
    let k = config.len() as u64;
    let gp = general_position(config);
    match suite {
        Suite::Phi => {
            let h = HDivision::enumerate(config).len() as u64;
            let phi = counting::phi(d, k)?;
            if gp {
                checks.expect(h == phi, || format!("|H(X)| = {h} differs from phi = {phi}"));
            } else {
                checks.expect(h <= phi, || format!("|H(X)| = {h} exceeds phi = {phi}"));
            }
            Ok(json!({ "h": h, "phi": phi, "general_position": gp }))
        }
        Suite::TauBound | Suite::EtaBound => {
            let hx = HDivision::enumerate(config);
            let mins = hx.division().minimal_transversals()?;
            let sizes: Vec<usize> = mins.iter().map(|m| m.cardinality()).collect();
            let (lo, hi) = (*sizes.iter().min().unwrap(), *sizes.iter().max().unwrap());
            let phi = counting::phi(d, k)?;
            checks.expect(hx.len() as u64 <= phi, || format!("|H(X)| = {} exceeds phi = {phi}", hx.len()));
            if suite == Suite::TauBound {
                let tau = counting::tau(d, k)?;
                checks.expect(gp, || "instance is not in general position".into());
                checks.expect(lo as u64 >= tau, || format!("a minimal transversal of size {lo} is below tau = {tau}"));
                Ok(json!({ "h": hx.len(), "min_transversal": lo, "tau": tau }))
            } else {
                let eta = counting::eta(d, k)?;
                checks.expect(hi as u64 <= eta, || format!("a minimal transversal of size {hi} exceeds eta = {eta}"));
                Ok(json!({ "h": hx.len(), "general_position": gp, "max_transversal": hi, "eta": eta }))
            }
        }
        Suite::Shrink => {
            let ids = config.sorted_ids();
            let s = shrink_to_min(config, ids[0], ids[1])?;
            checks.expect(s.sep_size as u64 == s.tau, || {
                format!("shrunk |sep| = {} differs from tau = {}", s.sep_size, s.tau)
            });
            Ok(json!({ "a": ids[0].0, "b": ids[1].0, "t": s.t.to_string(), "sep": s.sep_size, "tau": s.tau }))
        }
        Suite::Duality => {
            let ids = config.sorted_ids();
            let (a, b) = (ids[0], ids[1]);
            let hx = HDivision::enumerate(config);
            let sep = hx.sep(a, b)?;
            let phi = counting::phi(d, k)?;
            let mut after = Vec::new();
            for &m in &sep {
                let f = projective_flip(config, a, b, m)?;
                checks.expect(f.sep_before + f.sep_after == phi as usize, || {
                    format!("member {m}: {} + {} differs from phi = {phi}", f.sep_before, f.sep_after)
                });
                after.push(f.sep_after);
            }
            Ok(json!({ "a": a.0, "b": b.0, "sep": sep.len(), "sep_after": after, "phi": phi }))
        }
        Suite::Kirchberger => kirchberger_trial(config, checks),
        Suite::Main => main_trial(config, checks),
    }
}

fn kirchberger_trial(config: &PointConfig, checks: &mut Checks) -> Result<Value, CliError> {
    let dim = config.dim();
    let direct = separable_along_colors(config)?;
    let separable = direct.is_some();
    let coloring = config.require_coloring()?;

    checks.expect(small_subsets_separable(config, None)? == separable, || {
        "small-subset separability disagrees with direct separability".into()
    });
    let mut witness_sizes = Vec::new();
    for p in config.sorted_ids() {
        let small = small_subsets_separable(config, Some(p))?;
        checks.expect(!small || separable, || format!("all small subsets through {p} separate, X does not"));

        let dual = HellyDual::new(config, p)?;
        let common = dual.common_point();
        checks.expect(common.is_some() == separable, || format!("Helly dual at {p} disagrees with direct oracle"));
        if let Some(lambda) = &common {
            let h = dual.hyperplane(lambda)?;
            let own = coloring.color(p);
            let sides_ok = config
                .points()
                .iter()
                .all(|q| h.side(q.coords()) == if coloring.color(q.id()) == own { 1 } else { -1 });
            checks.expect(sides_ok, || format!("Helly dual hyperplane at {p} misplaces a point"));
        }

        match kirchberger_witness(config, p)? {
            None => checks.expect(separable, || format!("no witness through {p} for an inseparable set")),
            Some(w) => {
                checks.expect(!separable, || format!("witness through {p} for a separable set"));
                checks.expect(w.len() <= dim + 2 && w.contains(&p), || format!("bad witness {w:?} through {p}"));
                let sub = config.subset(&w)?;
                checks.expect(separable_along_colors(&sub)?.is_none(), || format!("witness {w:?} is separable"));
                witness_sizes.push(w.len());
            }
        }
    }
    let grouping = is_partitionable(config)?.is_some();
    let via_h = is_partitionable_via_h(config)?;
    checks.expect(grouping == via_h, || format!("grouping search says {grouping}, H(X) filter says {via_h}"));
    checks.expect(grouping == separable, || "two-color partitionability differs from separability".into());
    Ok(json!({
        "n": config.len(),
        "separable": separable,
        "max_witness": witness_sizes.iter().max(),
        "partitionable": grouping,
        "partitionable_via_h": via_h,
    }))
}

fn main_trial(config: &PointConfig, checks: &mut Checks) -> Result<Value, CliError> {
    let dim = config.dim() as u64;
    let k = config.require_coloring()?.k() as u64;
    let bound = counting::bound(dim, k)?;
    let grouping = is_partitionable(config)?;
    let via_h = is_partitionable_via_h(config)?;
    checks.expect(grouping.is_some() == via_h, || {
        format!("grouping search says {}, H(X) filter says {via_h}", grouping.is_some())
    });
    if let Some(cert) = &grouping {
        checks.expect(cert.verify(config)?, || "certificate fails re-verification".into());
    }
    let mut detail = json!({
        "n": config.len(),
        "k": k,
        "bound": bound,
        "partitionable": grouping.is_some(),
        "partitionable_via_h": via_h,
    });
    match verify_main_theorem(config)? {
        TheoremCheck::Partitionable(cert) => {
            detail["branch"] = json!("partitionable");
            detail["hyperplanes"] = json!(cert.len());
        }
        TheoremCheck::Witness(w) => {
            checks.expect(w.witness.len() as u64 <= bound, || format!("witness of {} points", w.witness.len()));
            let sub = config.subset(&w.witness)?;
            checks.expect(is_partitionable(&sub)?.is_none(), || "witness is partitionable".into());
            detail["branch"] = json!("witness");
            detail["witness"] = ids_json(&w.witness);
        }
    }
    if config.len() <= EXHAUSTIVE_MAX_N {
        // Smallest non-partitionable subset: every smaller subset is
        // partitionable, so this is the size the theorem speaks about.
        let smallest = smallest_nonpartitionable(config, config.len())?;
        checks.expect(smallest.is_some() == grouping.is_none(), || "exhaustion disagrees with the search".into());
        if let Some(s) = &smallest {
            checks.expect(s.len() as u64 <= bound, || format!("smallest non-partitionable subset has {}", s.len()));
            detail["smallest_nonpartitionable"] = ids_json(s);
        }
    }
    Ok(detail)
}
