//! `hrns`: structure reports, isomorphism decisions, norm comparisons, and
//! character computations for higher-rank numerical semigroups.
//!
//! Exit codes: 0 success, 1 not isomorphic, 2 parse or validation error,
//! 3 hypothesis violation, 4 polynomial support outside the cone, 5 sample
//! data insufficient or inconsistent.

mod input;
mod report;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use hrns_core::{
    decide_algebra_isomorphism, extend_semicharacter, gcd_counterexample, minimal_generators,
    norm_gap_report, recover_point, CharError, ConeError, FockError, IsoError, LatticePoint,
    Seminormality,
};
use serde_json::{json, Map, Value};

use input::{load_cone, load_poly, load_sample, LoadedCone};
use report::{
    complex_value, fmt_complex, fmt_points, float_value, point_value, points_value, Failure,
    Report, EXIT_DATA, EXIT_HYPOTHESIS, EXIT_NOT_ISOMORPHIC, EXIT_PARSE, EXIT_SUPPORT,
};

#[derive(Parser)]
#[command(
    name = "hrns",
    version,
    about = "Exact combinatorics and operator-norm numerics for higher-rank numerical semigroups"
)]
struct Cli {
    /// Emit the report as JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a cone file and summarize its structure.
    Verify {
        /// Cone spec: {"rank": d, "generators": [[..], ..], "name": optional}.
        spec: PathBuf,
        /// Per-dimension box bound for the seminormality scan (default 12).
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Decide whether two cones are equal up to a coordinate permutation.
    Iso {
        spec_a: PathBuf,
        spec_b: PathBuf,
    },
    /// Compare truncated operator norms against the torus sup norm.
    Norm {
        spec: PathBuf,
        /// Polynomial file; see the README for both accepted shapes.
        poly: PathBuf,
        /// Comma-separated per-dimension box bounds (default 8,16,32,64).
        #[arg(long, value_delimiter = ',')]
        boxes: Option<Vec<i64>>,
        /// Relative tolerance for the norm power iteration.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Character-space computations on semicharacter samples.
    Char {
        #[command(subcommand)]
        action: CharAction,
    },
}

#[derive(Subcommand)]
enum CharAction {
    /// Recover the polydisc point of an evaluation semicharacter.
    Recover { spec: PathBuf, sample: PathBuf },
    /// Extend a sampled semicharacter to a target point, e.g. "[4]".
    Extend {
        spec: PathBuf,
        sample: PathBuf,
        /// Target point as a JSON integer list.
        target: String,
        /// Largest multiple of the target consulted during extension.
        #[arg(long, default_value_t = 16)]
        bound: u64,
    },
    /// Exhibit two distinct characters that agree on the whole cone
    /// (requires an axis section with gcd != 1).
    Counterexample { spec: PathBuf, axis: usize },
}

const ISO_YES: &str = "the cones are isomorphic, so their Fock representations generate \
     completely isometrically isomorphic operator algebras; every vacuum-preserving \
     isomorphism arises from the witness permutation composed with coordinatewise rotations";
const ISO_NO: &str = "no coordinate permutation matches the minimal generating sets, so the \
     generated operator algebras admit no vacuum-preserving completely isometric isomorphism";

fn main() {
    let cli = Cli::parse();
    let (command, inputs, outcome) = dispatch(&cli.command);
    let report = match outcome {
        Ok(body) => Report {
            command,
            inputs,
            results: body.results,
            diagnostics: body.diagnostics,
            exit_code: body.exit_code,
            human: body.human,
        },
        Err(failure) => Report::failure(command, inputs, failure),
    };
    report.emit(cli.json);
}

struct Body {
    results: Value,
    diagnostics: Vec<String>,
    exit_code: i32,
    human: String,
}

fn dispatch(command: &Command) -> (&'static str, Value, Result<Body, Failure>) {
    match command {
        Command::Verify { spec, bound } => (
            "verify",
            json!({ "spec": path_str(spec), "bound": bound }),
            run_verify(spec, *bound),
        ),
        Command::Iso { spec_a, spec_b } => (
            "iso",
            json!({ "spec_a": path_str(spec_a), "spec_b": path_str(spec_b) }),
            run_iso(spec_a, spec_b),
        ),
        Command::Norm { spec, poly, boxes, tol } => (
            "norm",
            json!({
                "spec": path_str(spec),
                "poly": path_str(poly),
                "boxes": boxes,
                "tol": tol,
            }),
            run_norm(spec, poly, boxes.as_deref(), *tol),
        ),
        Command::Char { action } => match action {
            CharAction::Recover { spec, sample } => (
                "char recover",
                json!({ "spec": path_str(spec), "sample": path_str(sample) }),
                run_recover(spec, sample),
            ),
            CharAction::Extend { spec, sample, target, bound } => (
                "char extend",
                json!({
                    "spec": path_str(spec),
                    "sample": path_str(sample),
                    "target": target,
                    "bound": bound,
                }),
                run_extend(spec, sample, target, *bound),
            ),
            CharAction::Counterexample { spec, axis } => (
                "char counterexample",
                json!({ "spec": path_str(spec), "axis": axis }),
                run_counterexample(spec, *axis),
            ),
        },
    }
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn cone_failure(e: ConeError) -> Failure {
    Failure::new(EXIT_PARSE, e.to_string())
}

fn iso_failure(e: IsoError) -> Failure {
    let code = match e {
        IsoError::HypothesisViolated { .. } => EXIT_HYPOTHESIS,
        _ => EXIT_PARSE,
    };
    Failure::new(code, e.to_string())
}

fn fock_failure(e: FockError) -> Failure {
    let code = match e {
        FockError::SupportEscapesCone { .. } => EXIT_SUPPORT,
        FockError::HypothesisViolated { .. } => EXIT_HYPOTHESIS,
        FockError::IterationBudgetExhausted { .. } => EXIT_DATA,
        _ => EXIT_PARSE,
    };
    Failure::new(code, e.to_string())
}

fn char_failure(e: CharError) -> Failure {
    let code = match e {
        CharError::HypothesisViolated { .. } | CharError::GcdIsOne { .. } => EXIT_HYPOTHESIS,
        CharError::RankMismatch { .. } | CharError::Overflow(_) | CharError::Cone(_) => EXIT_PARSE,
        _ => EXIT_DATA,
    };
    Failure::new(code, e.to_string())
}

fn cone_header(loaded: &LoadedCone) -> String {
    let mut out = String::new();
    if let Some(name) = &loaded.name {
        let _ = writeln!(out, "name: {name}");
    }
    let _ = writeln!(out, "rank: {}", loaded.cone.rank());
    let _ = writeln!(out, "generators: {}", fmt_points(loaded.cone.generators()));
    out
}

fn run_verify(spec: &Path, bound: Option<i64>) -> Result<Body, Failure> {
    let loaded = load_cone(spec)?;
    let cone = &loaded.cone;
    let per_dim = bound.unwrap_or(12);
    if per_dim < 1 {
        return Err(Failure::new(EXIT_PARSE, format!("bound must be positive, got {per_dim}")));
    }
    let (hr, profiles) = cone.is_higher_rank_numerical().map_err(cone_failure)?;
    let min_gens = minimal_generators(cone).map_err(cone_failure)?;
    let box_point = LatticePoint::new(vec![per_dim; cone.rank()]);
    let seminormality = cone.is_seminormal_in_box(&box_point).map_err(cone_failure)?;

    let axes: Vec<Value> = profiles
        .iter()
        .map(|p| {
            json!({
                "axis": p.axis,
                "gcd": p.gcd,
                "multiplicity": p.multiplicity,
                "conductor": p.conductor,
                "gaps": p.gaps,
            })
        })
        .collect();
    let sem_value = match &seminormality {
        Seminormality::Seminormal => json!({ "seminormal": true }),
        Seminormality::NotSeminormal { s, t } => json!({
            "seminormal": false,
            "s": point_value(s),
            "t": point_value(t),
        }),
    };
    let results = json!({
        "name": loaded.name,
        "rank": cone.rank(),
        "generators": points_value(cone.generators()),
        "higher_rank": hr,
        "axes": axes,
        "minimal_generators": points_value(&min_gens),
        "box": vec![per_dim; cone.rank()],
        "seminormality": sem_value,
    });

    let mut human = cone_header(&loaded);
    for p in &profiles {
        let conductor = p.conductor.map_or("none".to_string(), |c| c.to_string());
        let multiplicity = p.multiplicity.map_or("none".to_string(), |m| m.to_string());
        let _ = writeln!(
            human,
            "axis {}: gcd {}, multiplicity {}, conductor {}, gaps {:?}",
            p.axis, p.gcd, multiplicity, conductor, p.gaps
        );
    }
    let _ = writeln!(human, "higher-rank numerical semigroup: {hr}");
    let _ = writeln!(human, "minimal generators: {}", fmt_points(&min_gens));
    match &seminormality {
        Seminormality::Seminormal => {
            let _ = writeln!(human, "seminormal in box {box_point}: true");
        }
        Seminormality::NotSeminormal { s, t } => {
            let _ = writeln!(
                human,
                "seminormal in box {box_point}: false (violation s = {s}, t = {t})"
            );
        }
    }

    Ok(Body {
        results,
        diagnostics: vec![format!("seminormality scanned inside box {box_point}")],
        exit_code: 0,
        human,
    })
}

fn run_iso(spec_a: &Path, spec_b: &Path) -> Result<Body, Failure> {
    let first = load_cone(spec_a)?;
    let second = load_cone(spec_b)?;
    let witness = decide_algebra_isomorphism(&first.cone, &second.cone).map_err(iso_failure)?;

    let mut human = String::new();
    let _ = writeln!(human, "first:  {}", fmt_points(first.cone.generators()));
    let _ = writeln!(human, "second: {}", fmt_points(second.cone.generators()));
    match witness {
        Some(w) => {
            let _ = writeln!(human, "isomorphic: true");
            let _ = writeln!(human, "permutation: {:?}", w.permutation.images());
            let _ = writeln!(human, "interpretation: {ISO_YES}");
            let results = json!({
                "isomorphic": true,
                "permutation": w.permutation.images(),
                "interpretation": ISO_YES,
            });
            Ok(Body {
                results,
                diagnostics: vec![
                    "the permutation maps the second cone's coordinates onto the first".into(),
                    w.rotation_note.into(),
                ],
                exit_code: 0,
                human,
            })
        }
        None => {
            let _ = writeln!(human, "isomorphic: false");
            let _ = writeln!(human, "interpretation: {ISO_NO}");
            let results = json!({ "isomorphic": false, "interpretation": ISO_NO });
            Ok(Body {
                results,
                diagnostics: vec![],
                exit_code: EXIT_NOT_ISOMORPHIC,
                human,
            })
        }
    }
}

fn run_norm(spec: &Path, poly: &Path, boxes: Option<&[i64]>, tol: f64) -> Result<Body, Failure> {
    let loaded = load_cone(spec)?;
    let cone = &loaded.cone;
    let p = load_poly(poly)?;
    let per_dim: Vec<i64> = boxes.map_or_else(|| vec![8, 16, 32, 64], <[i64]>::to_vec);
    let schedule: Vec<LatticePoint> = per_dim
        .iter()
        .map(|&b| LatticePoint::new(vec![b; cone.rank()]))
        .collect();
    let report = norm_gap_report(cone, &p, &schedule, tol).map_err(fock_failure)?;

    let rows: Vec<Value> = report
        .schedule
        .iter()
        .zip(&report.fock_norms)
        .map(|(b, &n)| {
            json!({
                "bound": point_value(b),
                "fock_norm": float_value(n),
                "torus_norm": float_value(report.torus_value),
                "error_bound": float_value(report.torus_error_bound),
                "gap": float_value(report.torus_value - n),
            })
        })
        .collect();
    let results = json!({
        "rows": rows,
        "torus_norm": float_value(report.torus_value),
        "torus_error_bound": float_value(report.torus_error_bound),
        "grid_per_dim": report.grid_per_dim,
        "final_gap": float_value(report.gap),
    });

    let mut human = cone_header(&loaded);
    let _ = writeln!(
        human,
        "polynomial: {} terms, max total degree {}",
        p.len(),
        p.max_total_degree()
    );
    let _ = writeln!(human, "torus grid: {} points per dimension", report.grid_per_dim);
    let _ = writeln!(
        human,
        "{:<12} {:<16} {:<16} {:<16} gap",
        "bound", "fock norm", "torus norm", "error bound"
    );
    for (b, &n) in report.schedule.iter().zip(&report.fock_norms) {
        let _ = writeln!(
            human,
            "{:<12} {:<16.12} {:<16.12} {:<16.12} {:.12}",
            b.to_string(),
            n,
            report.torus_value,
            report.torus_error_bound,
            report.torus_value - n
        );
    }
    let _ = writeln!(human, "final gap: {:.12}", report.gap);

    Ok(Body {
        results,
        diagnostics: vec![
            format!("power iteration tolerance {tol:e}"),
            format!("torus grid {} points per dimension", report.grid_per_dim),
        ],
        exit_code: 0,
        human,
    })
}

fn run_recover(spec: &Path, sample: &Path) -> Result<Body, Failure> {
    let loaded = load_cone(spec)?;
    let chi = load_sample(&loaded.cone, sample)?;
    let point = recover_point(&loaded.cone, &chi).map_err(char_failure)?;

    let results = json!({
        "point": point.coords().iter().map(|&z| complex_value(z)).collect::<Vec<_>>(),
    });
    let mut human = cone_header(&loaded);
    let coords = point
        .coords()
        .iter()
        .map(|&z| fmt_complex(z))
        .collect::<Vec<_>>()
        .join(", ");
    let _ = writeln!(human, "recovered point: [{coords}]");
    Ok(Body {
        results,
        diagnostics: vec![format!("sample of {} values", chi.len())],
        exit_code: 0,
        human,
    })
}

fn run_extend(spec: &Path, sample: &Path, target: &str, bound: u64) -> Result<Body, Failure> {
    let loaded = load_cone(spec)?;
    let chi = load_sample(&loaded.cone, sample)?;
    let coords: Vec<i64> = serde_json::from_str(target)
        .map_err(|e| Failure::new(EXIT_PARSE, format!("target {target:?}: {e}")))?;
    let t = LatticePoint::new(coords);
    let value = extend_semicharacter(&loaded.cone, &chi, &t, bound).map_err(char_failure)?;

    let results = json!({
        "target": point_value(&t),
        "bound": bound,
        "value": complex_value(value),
    });
    let mut human = cone_header(&loaded);
    let _ = writeln!(human, "target: {t}");
    let _ = writeln!(human, "extended value: {}", fmt_complex(value));
    Ok(Body {
        results,
        diagnostics: vec![format!("multiples of the target consulted up to {bound}")],
        exit_code: 0,
        human,
    })
}

fn run_counterexample(spec: &Path, axis: usize) -> Result<Body, Failure> {
    let loaded = load_cone(spec)?;
    let profile = loaded.cone.axis_profile(axis).map_err(cone_failure)?;
    let (first, second) = gcd_counterexample(&loaded.cone, axis).map_err(char_failure)?;

    let as_value = |p: &hrns_core::CharacterPoint| {
        Value::Array(p.coords().iter().map(|&z| complex_value(z)).collect())
    };
    let mut results = Map::new();
    results.insert("axis".into(), Value::from(axis));
    results.insert("gcd".into(), Value::from(profile.gcd));
    results.insert("first".into(), as_value(&first));
    results.insert("second".into(), as_value(&second));
    let results = Value::Object(results);

    let fmt_pt = |p: &hrns_core::CharacterPoint| {
        p.coords().iter().map(|&z| fmt_complex(z)).collect::<Vec<_>>().join(", ")
    };
    let mut human = cone_header(&loaded);
    let _ = writeln!(human, "axis: {axis} (section gcd {})", profile.gcd);
    let _ = writeln!(human, "first:  [{}]", fmt_pt(&first));
    let _ = writeln!(human, "second: [{}]", fmt_pt(&second));
    let _ = writeln!(human, "the two characters evaluate identically on every member");
    Ok(Body {
        results,
        diagnostics: vec![
            "distinct polydisc points; their evaluations agree on the whole cone".into(),
        ],
        exit_code: 0,
        human,
    })
}
