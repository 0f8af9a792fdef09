use std::ffi::OsString;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use colorcut_core::colorful::{
    is_partitionable, is_partitionable_via_h, kirchberger_witness, separable_along_colors, small_subsets_separable,
    verify_main_theorem, Certificate, HellyDual, TheoremCheck,
};
use colorcut_core::counting::{self, CountingTriple};
use colorcut_core::geom::general_position;
use colorcut_core::hdivision::{perturb, projective_flip, shrink_to_min};
use colorcut_core::reference::{pentagon_with_center, CENTER};
use colorcut_core::{HDivision, PointConfig, PointId};
use serde_json::{json, Value};

use crate::bound::bound_search;
use crate::campaign::run_suite;
use crate::error::CliError;
use crate::format::{blocks_json, hyperplane_json, ids_json, instance_to_file, parse_instance, rats, Instance};
use crate::generate::{CampaignSpec, Suite};

pub const MAX_N: usize = 16;
pub const MAX_DIM: usize = 3;
pub const MAX_COLORS: usize = 8;

#[derive(Parser, Debug)]
#[command(name = "colorcut", version, about = "Exact hyperplane partitions of colored point sets")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Lift the default caps on points, dimension and colors.
    #[arg(long, global = true)]
    unsafe_large: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All hyperplane partitions H(X), compared with phi.
    Enumerate {
        #[arg(long)]
        input: PathBuf,
    },
    /// Members of H(X) separating two points.
    Sep {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
    },
    /// Minimal transversals of the full subdivisions of H(X), with tau and eta.
    Transversals {
        #[arg(long)]
        input: PathBuf,
    },
    /// Projective transformation through a separating member.
    Flip {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        partition_index: usize,
    },
    /// Moves `a` toward `b` until |sep(a, b)| reaches tau.
    Shrink {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
    },
    /// Seeded perturbation into general position that keeps every member of H(X).
    Perturb {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Whether hyperplanes partition the set along its colors.
    Partitionable {
        #[arg(long)]
        input: PathBuf,
    },
    /// A certificate, or a small non-partitionable subset.
    Witness {
        #[arg(long)]
        input: PathBuf,
    },
    /// Two-color separability through a fixed point.
    Kirchberger {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        p: u32,
    },
    /// phi, tau, eta and the subset bound for given dimension and colors.
    Formulas {
        #[arg(long)]
        dim: u64,
        #[arg(long)]
        colors: u64,
    },
    /// Runs a seeded verification campaign.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 20)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 7)]
        n: usize,
        /// Defaults to 2 for kirchberger, 3 for main, none otherwise.
        #[arg(long)]
        colors: Option<usize>,
        #[arg(long)]
        degenerate: bool,
    },
    /// Built-in reference configurations.
    Demo {
        #[arg(value_enum)]
        name: Demo,
    },
    /// Smallest non-partitionable subset sizes over seeded instances.
    BoundSearch {
        #[arg(long, default_value_t = 20)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        colors: usize,
        #[arg(long)]
        degenerate: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Demo {
    Pentagon,
}

/// Runs the command line against stdout and stderr; returns the exit code.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stderr = std::io::stderr();
    let styled = stderr.is_terminal() && std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty());
    run_with(argv, &mut std::io::stdout().lock(), &mut stderr.lock(), styled)
}

/// Like [`run_command`] with explicit streams. `styled` enables ANSI colors
/// in the status line.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write, styled: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    // Failed campaigns still emit their report before exiting with 2.
    let result = execute(&cli).and_then(|outcome| {
        emit(&outcome.report, cli.output.as_deref(), out)?;
        match outcome.status {
            Ok(Some(line)) => {
                let _ = writeln!(err, "{}", paint(&line, true, styled));
                Ok(())
            }
            Ok(None) => Ok(()),
            Err(line) => Err(CliError::Verification(line)),
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{}", paint(&format!("error: {e}"), false, styled));
            e.exit_code()
        }
    }
}

fn paint(line: &str, good: bool, styled: bool) -> String {
    match (styled, good) {
        (false, _) => line.to_string(),
        (true, true) => format!("\x1b[32m{line}\x1b[0m"),
        (true, false) => format!("\x1b[31m{line}\x1b[0m"),
    }
}

fn emit(report: &Value, output: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    let (path, written) = match output {
        Some(path) => (path.display().to_string(), std::fs::write(path, text)),
        None => ("<stdout>".to_string(), out.write_all(text.as_bytes())),
    };
    written.map_err(|source| CliError::Io { path, source })
}

fn check_caps(dim: usize, n: usize, k: usize, unsafe_large: bool) -> Result<(), CliError> {
    if unsafe_large {
        return Ok(());
    }
    for (what, value, max) in [("points", n, MAX_N), ("dimension", dim, MAX_DIM), ("colors", k, MAX_COLORS)] {
        if value > max {
            return Err(CliError::Usage(format!(
                "{what} = {value} exceeds the default cap of {max}; pass --unsafe-large to proceed"
            )));
        }
    }
    Ok(())
}

fn load(path: &Path, unsafe_large: bool) -> Result<Instance, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let inst = parse_instance(&text)?;
    let c = &inst.config;
    check_caps(c.dim(), c.len(), c.coloring().map_or(0, |col| col.k()), unsafe_large)?;
    Ok(inst)
}

/// The same instance with moved points and unchanged color names.
fn with_config(inst: &Instance, config: PointConfig) -> Value {
    let moved = Instance {
        config,
        color_names: inst.color_names.clone(),
    };
    serde_json::to_value(instance_to_file(&moved)).expect("instance serializes")
}

fn certificate_json(cert: &Certificate) -> Value {
    Value::from(
        cert.family
            .iter()
            .map(|(h, p)| json!({ "hyperplane": hyperplane_json(h), "blocks": blocks_json(p) }))
            .collect::<Vec<_>>(),
    )
}

fn members_json(hx: &HDivision, members: impl IntoIterator<Item = usize>) -> Value {
    Value::from(
        members
            .into_iter()
            .map(|i| json!({ "index": i, "blocks": blocks_json(&hx.members()[i]) }))
            .collect::<Vec<_>>(),
    )
}

struct Outcome {
    report: Value,
    /// A status line for stderr, or the failure that makes the run exit 2.
    status: Result<Option<String>, String>,
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let big = cli.unsafe_large;
    let report = match &cli.command {
        Command::Enumerate { input } => {
            let inst = load(input, big)?;
            let c = &inst.config;
            let hx = HDivision::enumerate(c);
            let phi = counting::phi(c.dim() as u64, c.len() as u64)?;
            let gp = general_position(c);
            if gp && hx.len() as u64 != phi {
                return Err(CliError::Verification(format!("|H(X)| = {} but phi = {phi}", hx.len())));
            }
            let members: Vec<Value> = (0..hx.len())
                .map(|i| {
                    json!({
                        "index": i,
                        "blocks": blocks_json(&hx.members()[i]),
                        "hyperplane": hx.witness(i).map(hyperplane_json),
                    })
                })
                .collect();
            json!({ "count": hx.len(), "phi": phi, "general_position": gp, "members": members })
        }
        Command::Sep { input, a, b } => {
            let inst = load(input, big)?;
            let hx = HDivision::enumerate(&inst.config);
            let sep = hx.sep(PointId(*a), PointId(*b))?;
            json!({ "a": a, "b": b, "size": sep.len(), "members": members_json(&hx, sep) })
        }
        Command::Transversals { input } => {
            let inst = load(input, big)?;
            let c = &inst.config;
            let hx = HDivision::enumerate(c);
            let mins = hx.division().minimal_transversals()?;
            let minimal: Vec<Value> = mins
                .iter()
                .map(|m| {
                    json!({
                        "pairs": m.pairs.iter().map(|(a, b)| [a.0, b.0]).collect::<Vec<_>>(),
                        "members": m.members.iter().collect::<Vec<_>>(),
                        "size": m.cardinality(),
                    })
                })
                .collect();
            let mut report = json!({
                "count": hx.len(),
                "minimal_transversals": minimal,
                "tau": hx.division().tau()?,
                "eta": hx.division().eta()?,
            });
            if general_position(c) {
                let (d, k) = (c.dim() as u64, c.len() as u64);
                report["tau_formula"] = json!(counting::tau(d, k)?);
                report["eta_formula"] = json!(counting::eta(d, k)?);
            }
            report
        }
        Command::Flip {
            input,
            a,
            b,
            partition_index,
        } => {
            let inst = load(input, big)?;
            let f = projective_flip(&inst.config, PointId(*a), PointId(*b), *partition_index)?;
            json!({
                "sep_before": f.sep_before,
                "sep_after": f.sep_after,
                "phi": f.phi,
                "bijection": f.bijection,
                "instance": with_config(&inst, f.config),
            })
        }
        Command::Shrink { input, a, b } => {
            let inst = load(input, big)?;
            let s = shrink_to_min(&inst.config, PointId(*a), PointId(*b))?;
            json!({
                "moved": s.moved.0,
                "t": s.t.to_string(),
                "sep_size": s.sep_size,
                "tau": s.tau,
                "instance": with_config(&inst, s.config),
            })
        }
        Command::Perturb { input, seed } => {
            let inst = load(input, big)?;
            let p = perturb(&inst.config, *seed)?;
            json!({
                "seed": seed,
                "attempts": p.attempts,
                "h_before": p.h_before,
                "h_after": p.h_after,
                "instance": with_config(&inst, p.config),
            })
        }
        Command::Partitionable { input } => {
            let inst = load(input, big)?;
            let cert = is_partitionable(&inst.config)?;
            let via_h = is_partitionable_via_h(&inst.config)?;
            if cert.is_some() != via_h {
                return Err(CliError::Verification("grouping search and H(X) filter disagree".into()));
            }
            json!({ "partitionable": via_h, "certificate": cert.as_ref().map(certificate_json) })
        }
        Command::Witness { input } => {
            let inst = load(input, big)?;
            let c = &inst.config;
            let k = c.require_coloring()?.k() as u64;
            let bound = counting::bound(c.dim() as u64, k)?;
            match verify_main_theorem(c)? {
                TheoremCheck::Partitionable(cert) => json!({
                    "branch": "partitionable",
                    "bound": bound,
                    "certificate": certificate_json(&cert),
                }),
                TheoremCheck::Witness(w) => json!({
                    "branch": "witness",
                    "bound": bound,
                    "witness": ids_json(&w.witness),
                    "size": w.witness.len(),
                    "representatives": ids_json(&w.representatives),
                    "transversal": w.transversal.iter().map(blocks_json).collect::<Vec<_>>(),
                    "transversal_pairs": w.transversal_pairs.iter().map(|(a, b)| [a.0, b.0]).collect::<Vec<_>>(),
                    "per_member_sets": w.per_member_sets.iter()
                        .map(|(p, s)| json!({ "blocks": blocks_json(p), "set": ids_json(s) }))
                        .collect::<Vec<_>>(),
                }),
            }
        }
        Command::Kirchberger { input, p } => {
            let inst = load(input, big)?;
            let c = &inst.config;
            let p = PointId(*p);
            let direct = separable_along_colors(c)?;
            let dual = HellyDual::new(c, p)?;
            let common = dual.common_point();
            let small = small_subsets_separable(c, Some(p))?;
            if common.is_some() != direct.is_some() || (small && direct.is_none()) {
                return Err(CliError::Verification("separability oracles disagree".into()));
            }
            json!({
                "p": p.0,
                "separable": direct.is_some(),
                "hyperplane": direct.as_ref().map(hyperplane_json),
                "dual_point": common.as_deref().map(rats),
                "small_subsets_through_p_separable": small,
                "witness": kirchberger_witness(c, p)?.as_deref().map(ids_json),
            })
        }
        Command::Formulas { dim, colors } => {
            let t = CountingTriple::new(*dim, *colors)?;
            json!({ "dim": dim, "colors": colors, "phi": t.phi, "tau": t.tau, "eta": t.eta, "bound": t.bound })
        }
        Command::Verify {
            suite,
            trials,
            seed,
            dim,
            n,
            colors,
            degenerate,
        } => {
            let k = colors.unwrap_or(match suite {
                Suite::Kirchberger => 2,
                Suite::Main => 3,
                _ => 0,
            });
            check_caps(*dim, *n, k, big)?;
            let spec = CampaignSpec::new(*suite, *dim, *n, k, *trials, *seed).degenerate(*degenerate);
            let report = run_suite(&spec)?;
            let value = serde_json::to_value(&report).expect("reports serialize");
            let line = format!("{} {}/{} trials passed", report.suite, report.passed, spec.trials);
            return Ok(Outcome {
                report: value,
                status: if report.all_passed() { Ok(Some(line)) } else { Err(line) },
            });
        }
        Command::Demo { name: Demo::Pentagon } => pentagon_demo()?,
        Command::BoundSearch {
            trials,
            seed,
            dim,
            n,
            colors,
            degenerate,
        } => {
            check_caps(*dim, *n, *colors, big)?;
            let spec = CampaignSpec::new(Suite::Main, *dim, *n, *colors, *trials, *seed).degenerate(*degenerate);
            let report = bound_search(&spec)?;
            if !report.within_bound {
                return Err(CliError::Verification("a smallest witness exceeds the bound".into()));
            }
            serde_json::to_value(&report).expect("reports serialize")
        }
    };
    Ok(Outcome {
        report,
        status: Ok(None),
    })
}

fn pentagon_demo() -> Result<Value, CliError> {
    let pent = pentagon_with_center();
    let hx = HDivision::enumerate(&pent);
    let v = |i: u32| PointId(i);
    let center_vertex = hx.sep(CENTER, v(1))?.len();
    let adjacent = hx.sep(v(1), v(2))?.len();
    let non_adjacent = hx.sep(v(2), v(5))?.len();
    let tau = hx.division().tau()?;
    let phi_step = counting::phi(2, 6)? - counting::phi(2, 5)?;
    let s = shrink_to_min(&pent, CENTER, v(1))?;
    let tau_after = HDivision::enumerate(&s.config).division().tau()?;
    let expected = (16, 6, 6, 10, 6, 5, 5, 5);
    let got = (hx.len(), center_vertex, adjacent, non_adjacent, tau, phi_step, s.sep_size, tau_after);
    if got != expected {
        return Err(CliError::Verification(format!("pentagon values {got:?}, expected {expected:?}")));
    }
    Ok(json!({
        "h": hx.len(),
        "sep": { "center_vertex": center_vertex, "adjacent": adjacent, "non_adjacent": non_adjacent },
        "tau": tau,
        "eta": hx.division().eta()?,
        "phi_step": phi_step,
        "shrink": { "moved": s.moved.0, "t": s.t.to_string(), "sep_size": s.sep_size, "tau": tau_after },
        "instance": crate::format::instance_json(&pent),
    }))
}
