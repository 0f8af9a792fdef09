//! Acceptance suite: one line per criterion, exit status 1 if any fails.
//!
//! Every check is exact. Instances come from the seeded generator, so a
//! failing line can be replayed with `colorcut verify` and the same seed.

use std::collections::BTreeSet;
use std::panic;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use colorcut::campaign::{run_suite, SuiteReport};
use colorcut::generate::{generate_instance, CampaignSpec, Suite};
use colorcut_core::counting::{eta, phi, tau};
use colorcut_core::geom::general_position;
use colorcut_core::hdivision::shrink_to_min;
use colorcut_core::reference::{pentagon_with_center, CENTER};
use colorcut_core::{HDivision, MemberSet, PointConfig, PointId};

const SEED: u64 = 20_241_014;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs the campaign and fails with the first failing trial.
fn campaign(spec: CampaignSpec) -> Result<SuiteReport, String> {
    let report = run_suite(&spec).map_err(|e| format!("{spec:?}: {e}"))?;
    if let Some(t) = report.trials.iter().find(|t| !t.ok) {
        return Err(format!(
            "{} dim {} n {} trial {}: {}",
            report.suite,
            spec.dim,
            spec.n,
            t.trial,
            t.failures.join("; ")
        ));
    }
    Ok(report)
}

fn campaigns(specs: impl IntoIterator<Item = CampaignSpec>) -> Result<Vec<SuiteReport>, String> {
    specs.into_iter().map(campaign).collect()
}

fn trial_count(reports: &[SuiteReport]) -> usize {
    reports.iter().map(|r| r.trials.len()).sum()
}

fn details(reports: &[SuiteReport]) -> impl Iterator<Item = &serde_json::Value> {
    reports.iter().flat_map(|r| r.trials.iter().map(|t| &t.detail))
}

fn phi_counts() -> Outcome {
    let start = Instant::now();
    let specs = (4..=8)
        .map(|k| CampaignSpec::new(Suite::Phi, 2, k, 0, 20, SEED))
        .chain((4..=6).map(|k| CampaignSpec::new(Suite::Phi, 3, k, 0, 20, SEED)));
    let reports = campaigns(specs)?;
    for d in details(&reports) {
        ensure(d["general_position"] == true, || "generated instance not in general position".into())?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} general-position instances, |H(X)| = phi_d(k) on all ({elapsed:.1?})",
        trial_count(&reports)
    ))
}

fn pentagon() -> Outcome {
    let start = Instant::now();
    let pent = pentagon_with_center();
    let hx = HDivision::enumerate(&pent);
    let sep = |a: u32, b: u32| hx.sep(PointId(a), PointId(b)).map(|s| s.len()).map_err(|e| e.to_string());
    let mut seen = BTreeSet::new();
    for v in 1..=5 {
        seen.insert(("center-vertex", sep(0, v)?));
        seen.insert(("adjacent", sep(v, v % 5 + 1)?));
        seen.insert(("non-adjacent", sep(v, (v + 1) % 5 + 1)?));
    }
    let want: BTreeSet<_> = [("center-vertex", 6), ("adjacent", 6), ("non-adjacent", 10)].into();
    ensure(seen == want, || format!("sep sizes {seen:?}"))?;
    ensure(hx.len() == 16, || format!("|H(X)| = {}", hx.len()))?;
    let t = hx.division().tau().map_err(|e| e.to_string())?;
    ensure(t == 6, || format!("tau(X) = {t}"))?;
    let step = phi(2, 6).unwrap() - phi(2, 5).unwrap();
    ensure(step == 5, || format!("phi_2(6) - phi_2(5) = {step}"))?;
    let s = shrink_to_min(&pent, CENTER, PointId(1)).map_err(|e| e.to_string())?;
    let t_after = HDivision::enumerate(&s.config).division().tau().map_err(|e| e.to_string())?;
    ensure(s.sep_size == 5 && t_after == 5, || format!("after shrinking: |sep| = {}, tau = {t_after}", s.sep_size))?;
    let eta_x = hx.division().eta().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "|H| = 16, sep 6/6/10, tau = 6, phi step 5, shrunk sep 5 and tau(X') = 5; eta(X) = {eta_x} ({elapsed:.1?})"
    ))
}

fn transversal_lower_bound() -> Outcome {
    let reports = campaigns([
        CampaignSpec::new(Suite::TauBound, 2, 8, 0, 25, SEED),
        CampaignSpec::new(Suite::TauBound, 3, 8, 0, 25, SEED),
    ])?;
    let smallest: Vec<u64> = details(&reports).map(|d| d["min_transversal"].as_u64().unwrap()).collect();
    Ok(format!(
        "{} instances, every minimal transversal >= tau (tau_2(8) = {}, tau_3(8) = {}; smallest seen {:?})",
        smallest.len(),
        tau(2, 8).unwrap(),
        tau(3, 8).unwrap(),
        smallest.iter().collect::<BTreeSet<_>>()
    ))
}

fn shrink_attains_tau() -> Outcome {
    let reports = campaigns([
        CampaignSpec::new(Suite::Shrink, 2, 7, 0, 25, SEED),
        CampaignSpec::new(Suite::Shrink, 3, 6, 0, 25, SEED),
        CampaignSpec::new(Suite::Shrink, 1, 5, 0, 10, SEED),
    ])?;
    Ok(format!("{} instances, |sep(c, b | X')| = tau_d(k) on all", trial_count(&reports)))
}

fn flip_duality() -> Outcome {
    let reports = campaigns([
        CampaignSpec::new(Suite::Duality, 2, 7, 0, 25, SEED),
        CampaignSpec::new(Suite::Duality, 3, 6, 0, 25, SEED),
    ])?;
    let flips: usize = details(&reports).map(|d| d["sep_after"].as_array().unwrap().len()).sum();
    Ok(format!(
        "{} instances, {flips} flips, |sep| + |sep'| = phi_d(k) on all",
        trial_count(&reports)
    ))
}

fn transversal_upper_bound() -> Outcome {
    let reports = campaigns([
        CampaignSpec::new(Suite::EtaBound, 2, 8, 0, 25, SEED).degenerate(true),
        CampaignSpec::new(Suite::EtaBound, 3, 7, 0, 25, SEED).degenerate(true),
    ])?;
    for d in details(&reports) {
        ensure(d["general_position"] == false, || "degenerate instance is in general position".into())?;
    }
    Ok(format!(
        "{} degenerate instances, every minimal transversal <= eta (eta_2(8) = {}, eta_3(7) = {})",
        trial_count(&reports),
        eta(2, 8).unwrap(),
        eta(3, 7).unwrap()
    ))
}

/// Small instances of the corpus: random, degenerate and hand-built.
fn small_corpus() -> Vec<PointConfig> {
    let mut out = Vec::new();
    for (dim, n, degenerate) in [
        (1, 3, false),
        (1, 6, false),
        (1, 12, false),
        (2, 3, false),
        (2, 4, false),
        (2, 5, false),
        (2, 4, true),
        (2, 5, true),
        (2, 6, true),
        (3, 4, false),
        (3, 5, true),
    ] {
        let spec = CampaignSpec::new(Suite::Phi, dim, n, 0, 6, SEED).degenerate(degenerate);
        out.extend((0..6).map(|t| generate_instance(&spec, t).unwrap()));
    }
    let fixed: [(usize, &[&[i64]]); 3] = [
        (2, &[&[0, 0], &[1, 0], &[2, 0], &[0, 1]]),
        (2, &[&[0, 0], &[1, 1], &[2, 2], &[3, 3], &[0, 5]]),
        (3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]),
    ];
    out.extend(fixed.iter().map(|(d, pts)| PointConfig::from_ints(*d, pts).unwrap()));
    out
}

fn minimal_transversals_exhaustive() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for config in small_corpus() {
        let hx = HDivision::enumerate(&config);
        let n = hx.len();
        if n > 12 {
            continue;
        }
        let d = hx.division();
        let is_t: Vec<bool> = (0u32..1 << n)
            .map(|mask| d.is_transversal(&(0..n).filter(|i| mask >> i & 1 == 1).collect()).unwrap())
            .collect();
        let by_subsets: BTreeSet<MemberSet> = (0u32..1 << n)
            .filter(|&m| is_t[m as usize] && (0..n).all(|i| m >> i & 1 == 0 || !is_t[(m & !(1 << i)) as usize]))
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect();
        let ids = config.sorted_ids();
        let seps: Vec<MemberSet> = ids
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| ids[i + 1..].iter().map(move |&b| (a, b)))
            .map(|(a, b)| hx.sep(a, b).unwrap())
            .collect();
        let minimal_seps: BTreeSet<MemberSet> = seps
            .iter()
            .filter(|s| !seps.iter().any(|o| o.len() < s.len() && o.is_subset(s)))
            .cloned()
            .collect();
        ensure(by_subsets == minimal_seps, || format!("mismatch on {config:?}"))?;
        checked += 1;
    }
    let elapsed = start.elapsed();
    ensure(checked >= 30, || format!("only {checked} configurations with |H| <= 12"))?;
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{checked} configurations with |H(X)| <= 12: minimal transversals by subset enumeration = minimal sep(a, b) ({elapsed:.1?})"
    ))
}

fn kirchberger_reports() -> &'static Result<Vec<SuiteReport>, String> {
    static CELL: OnceLock<Result<Vec<SuiteReport>, String>> = OnceLock::new();
    CELL.get_or_init(|| campaigns((2..=11).map(|n| CampaignSpec::new(Suite::Kirchberger, 2, n, 2, 20, SEED))))
}

fn main_reports() -> &'static Result<Vec<SuiteReport>, String> {
    static CELL: OnceLock<Result<Vec<SuiteReport>, String>> = OnceLock::new();
    CELL.get_or_init(|| campaigns((3..=12).map(|n| CampaignSpec::new(Suite::Main, 2, n, 3, 20, SEED))))
}

fn kirchberger_property() -> Outcome {
    let reports = kirchberger_reports().as_ref().map_err(Clone::clone)?;
    let inseparable = details(reports).filter(|d| d["separable"] == false).count();
    let largest = details(reports).filter_map(|d| d["max_witness"].as_u64()).max().unwrap_or(0);
    ensure(inseparable > 0, || "no inseparable instance generated".into())?;
    Ok(format!(
        "{} two-colored instances ({inseparable} inseparable): small subsets through every p decide separability, \
         witnesses contain p with size <= 4 (largest {largest}), Helly dual agrees with the direct oracle",
        trial_count(reports)
    ))
}

fn main_theorem() -> Outcome {
    let start = Instant::now();
    let reports = main_reports().as_ref().map_err(Clone::clone)?;
    let witnesses: Vec<usize> = details(reports)
        .filter_map(|d| d["witness"].as_array().map(Vec::len))
        .collect();
    let smallest = details(reports)
        .filter_map(|d| d["smallest_nonpartitionable"].as_array().map(Vec::len))
        .max();
    let exhausted = details(reports).filter(|d| d["n"].as_u64().unwrap() <= 12).count();
    ensure(exhausted == trial_count(reports), || "subset exhaustion skipped an instance".into())?;
    ensure(!witnesses.is_empty(), || "no non-partitionable instance generated".into())?;
    ensure(witnesses.iter().all(|&w| w <= 9), || format!("witness sizes {witnesses:?}"))?;
    Ok(format!(
        "{} three-colored instances, {} non-partitionable: verified witnesses of size <= 9 (largest {}), \
         smallest non-partitionable subset by exhaustion at most {} ({:.1?})",
        trial_count(reports),
        witnesses.len(),
        witnesses.iter().max().unwrap(),
        smallest.unwrap(),
        start.elapsed()
    ))
}

fn dual_implementations() -> Outcome {
    let mut total = 0;
    for cell in [kirchberger_reports(), main_reports()] {
        let reports = cell.as_ref().map_err(Clone::clone)?;
        for d in details(reports) {
            ensure(d["partitionable"] == d["partitionable_via_h"], || format!("disagreement on {d}"))?;
            total += 1;
        }
    }
    Ok(format!("grouping search = H(X) filter on all {total} instances of the two previous criteria"))
}

fn collinear_proper_subset() -> Outcome {
    let mut checked = 0;
    for dim in 2..=3 {
        let spec = CampaignSpec::new(Suite::EtaBound, dim, 6, 0, 20, SEED).degenerate(true);
        for t in 0..20 {
            // Point 2 is the midpoint of points 0 and 1.
            let config = generate_instance(&spec, t).unwrap();
            let hx = HDivision::enumerate(&config);
            let ac = hx.sep(PointId(0), PointId(2)).unwrap();
            let ab = hx.sep(PointId(0), PointId(1)).unwrap();
            ensure(ac.is_subset(&ab) && ac != ab, || format!("sep(a, c) not a proper subset on {config:?}"))?;
            checked += 1;
        }
    }
    if !general_position(&pentagon_with_center()) {
        return Err("reference configuration degenerated".into());
    }
    Ok(format!("{checked} configurations with c between a and b: sep(a, c) is a proper subset of sep(a, b)"))
}

fn panic_message(e: Box<dyn std::any::Any + Send>) -> String {
    match e.downcast::<String>() {
        Ok(s) => format!("panicked: {s}"),
        Err(e) => format!("panicked: {}", e.downcast_ref::<&str>().copied().unwrap_or("?")),
    }
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "hyperplane partition count", phi_counts),
        (2, "pentagon with center", pentagon),
        (3, "minimal transversal lower bound", transversal_lower_bound),
        (4, "moving a toward b attains tau", shrink_attains_tau),
        (5, "projective flip duality", flip_duality),
        (6, "minimal transversal upper bound", transversal_upper_bound),
        (7, "minimal transversals are minimal sep sets", minimal_transversals_exhaustive),
        (8, "Kirchberger property through a fixed point", kirchberger_property),
        (9, "small non-partitionable witnesses", main_theorem),
        (10, "two partitionability implementations agree", dual_implementations),
        (11, "collinear points give a proper subset", collinear_proper_subset),
    ];
    panic::set_hook(Box::new(|_| {}));
    let results: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, _, f)| s.spawn(move || panic::catch_unwind(f).unwrap_or_else(|e| Err(panic_message(e)))))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut failed = 0;
    for ((n, name, _), result) in criteria.iter().zip(results) {
        match result {
            Ok(msg) => println!("[PASS] criterion {n} ({name}): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] criterion {n} ({name}): {msg}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
