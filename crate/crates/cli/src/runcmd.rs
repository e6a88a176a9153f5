//! The `run` subcommand: expand the sweep, execute every point, and write
//! a fixed-schema CSV plus a JSON summary. Artifacts are byte-identical
//! for identical (config, seed); timing goes to stderr only.

use std::path::Path;

use anyhow::Context;
use serde::Serialize;

use simjoin_core::covering::{
    greedy_covering_code, make_anchor_points, make_ball_covering, make_ball_hashing2,
    make_subcube_splitting, make_universal, CoveringSampler,
};
use simjoin_core::cube::ball_volume;
use simjoin_core::inputs::{GeneratorKind, InputGenerator};
use simjoin_core::metrics::{estimate_overhead, OverheadSummary};

use crate::config::{ExperimentConfig, SweepPoint};
use crate::par::par_map;

pub const VERSION_STRING: &str = concat!("simjoin ", env!("CARGO_PKG_VERSION"));

pub const CSV_HEADER: &str = "protocol,generator,d,r,n,p,k,delta,trials,mean_overhead,\
std_overhead,min_overhead,max_overhead,p50_overhead,p90_overhead,mean_coverage,min_coverage,\
full_coverage_fraction,mean_replication,max_replication,replication_exceed_fraction,\
theory_overhead_bound,theory_replication_bound,degenerate_trials";

#[derive(Clone, Debug, Serialize)]
pub struct ResultRow {
    pub protocol: String,
    pub generator: String,
    pub d: u32,
    pub r: u32,
    pub n: u64,
    /// Actual processor count (the universal scheme may round up).
    pub p: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    pub summary: OverheadSummary,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkippedPoint {
    pub d: u32,
    pub n: u64,
    pub p: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    pub reason: String,
}

#[derive(Serialize)]
pub struct RunSummary<'a> {
    pub version: &'static str,
    pub config: &'a ExperimentConfig,
    pub rows: &'a [ResultRow],
    pub skipped: &'a [SkippedPoint],
}

/// Resolved protocol parameters for one sweep point.
struct ResolvedPoint {
    sampler: CoveringSampler,
    k: Option<u32>,
    delta: Option<f64>,
}

/// Largest ball radius whose volume still fits the per-processor budget,
/// never below ⌈r/2⌉.
fn auto_ball_radius(d: u32, r: u32, n: u64, p: u32) -> u32 {
    let floor = r.div_ceil(2).min(d);
    let budget = (n / p.max(1) as u64) as u128;
    let mut best = floor;
    for k in floor..=d {
        match ball_volume(d, k) {
            Ok(v) if v <= budget => best = k,
            _ => break,
        }
    }
    best
}

fn resolve_protocol(
    cfg: &ExperimentConfig,
    pt: &SweepPoint,
) -> simjoin_core::Result<ResolvedPoint> {
    let r = cfg.r;
    let seed = cfg.base_seed;
    match cfg.protocol.kind.as_str() {
        "ball-covering" => {
            let k = pt.k.unwrap_or_else(|| auto_ball_radius(pt.d, r, pt.n, pt.p));
            let delta = pt.delta.unwrap_or(0.9);
            let sampler = make_ball_covering(pt.d, r, k, pt.p, delta, seed)?;
            Ok(ResolvedPoint {
                sampler,
                k: Some(k),
                delta: Some(delta),
            })
        }
        "universal" => Ok(ResolvedPoint {
            sampler: make_universal(pt.p, pt.d, seed)?,
            k: None,
            delta: None,
        }),
        "ball-hashing-2" => Ok(ResolvedPoint {
            sampler: make_ball_hashing2(pt.d, r, pt.p, seed)?,
            k: None,
            delta: None,
        }),
        "subcube-splitting" => {
            let k = pt.k.unwrap_or_else(|| {
                let per = (pt.n / pt.p.max(1) as u64).max(2);
                (64 - per.leading_zeros() - 1).clamp(1, pt.d.saturating_sub(1).max(1))
            });
            let sampler = make_subcube_splitting(pt.d, r, k, pt.p, seed)?;
            Ok(ResolvedPoint {
                sampler,
                k: Some(k),
                delta: None,
            })
        }
        "anchor-points" => {
            let code = greedy_covering_code(pt.d, r, seed ^ 0xc0de_0000)?;
            Ok(ResolvedPoint {
                sampler: make_anchor_points(pt.d, r, pt.p, code, seed)?,
                k: None,
                delta: None,
            })
        }
        other => Err(simjoin_core::Error::InvalidParameter(format!(
            "unknown protocol '{other}'"
        ))),
    }
}

fn resolve_generator(cfg: &ExperimentConfig, pt: &SweepPoint) -> InputGenerator {
    let kind = match cfg.generator.kind.as_str() {
        "hard" => GeneratorKind::Hard {
            n: pt.n,
            d: pt.d,
            r: cfg.r,
        },
        "single-ball-half" => GeneratorKind::SingleBallHalf { d: pt.d, r: cfg.r },
        "multi-ball-half" => GeneratorKind::MultiBallHalf {
            n: pt.n,
            d: pt.d,
            r: cfg.r,
        },
        _ => GeneratorKind::Uniform { n: pt.n, d: pt.d },
    };
    InputGenerator::new(kind, cfg.base_seed)
}

type PointOutcome = Result<(ResultRow, Option<CoveringSampler>), SkippedPoint>;

fn run_point(cfg: &ExperimentConfig, pt: &SweepPoint) -> PointOutcome {
    let skip = |reason: String| SkippedPoint {
        d: pt.d,
        n: pt.n,
        p: pt.p,
        k: pt.k,
        delta: pt.delta,
        reason,
    };
    let resolved = resolve_protocol(cfg, pt).map_err(|e| skip(e.to_string()))?;
    let generator = resolve_generator(cfg, pt);
    let summary = estimate_overhead(&resolved.sampler, &generator, cfg.r, cfg.trials)
        .map_err(|e| skip(e.to_string()))?;
    let row = ResultRow {
        protocol: cfg.protocol.kind.clone(),
        generator: cfg.generator.kind.clone(),
        d: pt.d,
        r: cfg.r,
        n: pt.n,
        p: resolved.sampler.processors(),
        k: resolved.k,
        delta: resolved.delta,
        summary,
    };
    let dump = cfg.dump_draws.map(|_| resolved.sampler);
    Ok((row, dump))
}

fn fmt_f64(v: f64) -> String {
    format!("{v:.6}")
}

fn fmt_opt_f64(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

pub fn csv_line(row: &ResultRow) -> String {
    let s = &row.summary;
    let frac = |num: u64| {
        if s.trials_used == 0 {
            "".to_string()
        } else {
            fmt_f64(num as f64 / s.trials_used as f64)
        }
    };
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        row.protocol,
        row.generator,
        row.d,
        row.r,
        row.n,
        row.p,
        row.k.map(|k| k.to_string()).unwrap_or_default(),
        fmt_opt_f64(row.delta),
        s.trials_used,
        fmt_f64(s.mean_overhead),
        fmt_f64(s.std_overhead),
        fmt_f64(s.min_overhead),
        fmt_f64(s.max_overhead),
        fmt_f64(s.p50_overhead),
        fmt_f64(s.p90_overhead),
        fmt_f64(s.mean_coverage),
        fmt_f64(s.min_coverage),
        frac(s.full_coverage_trials),
        fmt_f64(s.mean_replication),
        s.max_replication,
        frac(s.replication_exceed_trials),
        fmt_opt_f64(s.theory_overhead_bound),
        fmt_opt_f64(s.theory_replication_bound),
        s.degenerate_trials,
    )
}

pub fn execute(config_path: &Path, jobs: usize, out_dir: &Path) -> anyhow::Result<()> {
    let text = std::fs::read_to_string(config_path)
        .with_context(|| format!("cannot read config {}", config_path.display()))?;
    let cfg = ExperimentConfig::parse(&text)?;
    let points = cfg.sweep_points();
    eprintln!(
        "{}: {} sweep points, {} trials each, {jobs} jobs",
        VERSION_STRING,
        points.len(),
        cfg.trials
    );

    let started = std::time::Instant::now();
    let outcomes = par_map(points.len(), jobs, |i| {
        let t0 = std::time::Instant::now();
        let outcome = run_point(&cfg, &points[i]);
        (outcome, t0.elapsed())
    });

    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    let mut dumps = Vec::new();
    for (point, (outcome, elapsed)) in points.iter().zip(outcomes) {
        match outcome {
            Ok((row, sampler)) => {
                eprintln!(
                    "point {} (d={} n={} p={}): mean_overhead={:.3} mean_coverage={:.4} [{:.3}s, {:.4}s/trial]",
                    point.index,
                    row.d,
                    row.n,
                    row.p,
                    row.summary.mean_overhead,
                    row.summary.mean_coverage,
                    elapsed.as_secs_f64(),
                    elapsed.as_secs_f64() / cfg.trials.max(1) as f64,
                );
                if let Some(sampler) = sampler {
                    dumps.push((point.index, sampler));
                }
                rows.push(row);
            }
            Err(skip) => {
                eprintln!("point {} skipped: {}", point.index, skip.reason);
                skipped.push(skip);
            }
        }
    }

    std::fs::create_dir_all(out_dir)
        .with_context(|| format!("cannot create output dir {}", out_dir.display()))?;
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for row in &rows {
        csv.push_str(&csv_line(row));
        csv.push('\n');
    }
    let csv_path = out_dir.join("results.csv");
    std::fs::write(&csv_path, csv).with_context(|| format!("writing {}", csv_path.display()))?;

    let summary = RunSummary {
        version: VERSION_STRING,
        config: &cfg,
        rows: &rows,
        skipped: &skipped,
    };
    let json_path = out_dir.join("summary.json");
    let mut json = serde_json::to_string_pretty(&summary)?;
    json.push('\n');
    std::fs::write(&json_path, json).with_context(|| format!("writing {}", json_path.display()))?;

    if let Some(count) = cfg.dump_draws {
        for (index, sampler) in &dumps {
            for trial in 0..count {
                let draw = sampler.draw(trial);
                match draw.materialize() {
                    Ok(sets) => {
                        let dir = out_dir
                            .join("draws")
                            .join(format!("point{index}"))
                            .join(format!("trial{trial}"));
                        std::fs::create_dir_all(&dir)?;
                        for (i, set) in sets.iter().enumerate() {
                            std::fs::write(dir.join(format!("A_{i}")), set.render())?;
                        }
                    }
                    Err(e) => eprintln!("point {index} trial {trial}: draw dump skipped: {e}"),
                }
            }
        }
    }

    eprintln!(
        "wrote {} rows ({} skipped) to {} in {:.2}s",
        rows.len(),
        skipped.len(),
        out_dir.display(),
        started.elapsed().as_secs_f64()
    );
    Ok(())
}
