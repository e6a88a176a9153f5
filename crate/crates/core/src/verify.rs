//! Checkers for the combinatorial inequalities behind the protocols, and
//! the sweep suites that drive them.
//!
//! Exact checks cross-multiply 128-bit integers with zero tolerance.
//! Monte-Carlo checks fix their sample count and seed, use a 3-sigma
//! normal criterion, and report estimate and standard error as witness
//! values. A check whose hypotheses are unmet reports `not-applicable`,
//! never `fail`.

use crate::covering::{
    greedy_covering_code, make_anchor_points, make_ball_hashing2, make_subcube_splitting,
    make_universal,
};
use crate::cube::{
    ball_volume, binomial, checked_pow, cube_distinct_pairs_at_most, dist_words,
    edge_count_at_most, edge_count_exact, falling_factorial,
};
use crate::error::{Error, Result};
use crate::inputs::{radius_for, sample_in_ball, sample_uniform};
use crate::metrics::{covered_pair_union, prune, run_trial, PrunedTuple};
use crate::paths::{count_rb_paths, validate_path_args};
use crate::point::{BitPoint, CubeBitset, PointSet};
use crate::ratio::Ratio;
use crate::report::{CheckResult, CheckStatus, VerificationReport};
use crate::rng::SplitMix64;

const TAG_MC_SAMPLE: u64 = 0xd17a;

/// Sweep and Monte-Carlo budgets for a verification run. Defaults are the
/// declared desk-scale limits; byte-identical reports need an unchanged
/// seed.
#[derive(Clone, Copy, Debug)]
pub struct SuiteLimits {
    pub max_d: Option<u32>,
    pub seed: u64,
    pub samples: u64,
}

impl Default for SuiteLimits {
    fn default() -> Self {
        SuiteLimits {
            max_d: None,
            seed: 0xC0FFEE,
            samples: 1500,
        }
    }
}

/// Average degree of a radius-k ball in the distance-≤r graph is at least
/// half of C(k,⌈r/2⌉)·B(d−k,⌊r/2⌋); exact integer comparison.
pub fn verify_ball_degree(d: u32, k: u32, r: u32) -> Result<CheckResult> {
    if d == 0 || d > 14 {
        return Err(Error::GuardExceeded {
            what: "ball degree check dimension",
            limit: 14,
            actual: d as u64,
        });
    }
    if r == 0 || r > d || k > d || k < r.div_ceil(2) {
        return Err(Error::InvalidParameter(format!(
            "ball degree check needs ⌈r/2⌉ ≤ k ≤ d, 1 ≤ r ≤ d; got d={d}, k={k}, r={r}"
        )));
    }
    let edges = crate::cube::ball_edge_count_at_most(d, k, r)?;
    let volume = ball_volume(d, k)?;
    let bound = binomial(k, r.div_ceil(2))?
        .checked_mul(ball_volume(d - k, r / 2)?)
        .ok_or(Error::Overflow("ball degree bound"))?;
    // e_≤r(ball) ≥ bound/2  ⇔  2·edges ≥ bound·volume.
    let lhs = edges.checked_mul(2).ok_or(Error::Overflow("ball degree"))?;
    let rhs = bound
        .checked_mul(volume)
        .ok_or(Error::Overflow("ball degree"))?;
    let status = if lhs >= rhs {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    Ok(CheckResult::new(
        "ball-degree",
        format!("d={d} k={k} r={r}"),
        status,
        format!("2*edges={lhs}"),
        format!("C(k,ceil(r/2))*B(d-k,floor(r/2))*B(d,k)={rhs}"),
    ))
}

/// The cube-to-ball edge ratio is strictly below
/// (2d/k)^{⌈r/2⌉}·2^{d+1}/B(d,k); exact cross-multiplication.
pub fn verify_lk_bound(d: u32, k: u32, r: u32) -> Result<CheckResult> {
    if d == 0 || d > 14 {
        return Err(Error::GuardExceeded {
            what: "edge ratio check dimension",
            limit: 14,
            actual: d as u64,
        });
    }
    let c = r.div_ceil(2);
    if r == 0 || r > d || k < c || 2 * (k + c) > d {
        return Err(Error::InvalidParameter(format!(
            "edge ratio check needs ⌈r/2⌉ ≤ k ≤ d/2 − ⌈r/2⌉; got d={d}, k={k}, r={r}"
        )));
    }
    let cube_edges = crate::cube::cube_edge_count_at_most(d, r)?;
    let ball_edges = crate::cube::ball_edge_count_at_most(d, k, r)?;
    let lhs = cube_edges
        .checked_mul(checked_pow(k as u128, c)?)
        .ok_or(Error::Overflow("edge ratio"))?
        .checked_mul(ball_volume(d, k)?)
        .ok_or(Error::Overflow("edge ratio"))?;
    let rhs = ball_edges
        .checked_mul(checked_pow(2 * d as u128, c)?)
        .ok_or(Error::Overflow("edge ratio"))?
        .checked_mul(checked_pow(2, d + 1)?)
        .ok_or(Error::Overflow("edge ratio"))?;
    let status = if lhs < rhs {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    Ok(CheckResult::new(
        "lk-bound",
        format!("d={d} k={k} r={r}"),
        status,
        format!("cube_edges*k^{c}*B(d,k)={lhs}"),
        format!("ball_edges*(2d)^{c}*2^(d+1)={rhs}"),
    ))
}

fn sid_threshold(d: u32, big_r: u32, r: u32, b: u32, n: u128) -> Result<u128> {
    binomial(big_r - r, b + 1)?
        .checked_mul(binomial(d, r - b - 1)?)
        .ok_or(Error::Overflow("path precondition"))?
        .checked_mul(4)
        .ok_or(Error::Overflow("path precondition"))?
        .checked_mul(n)
        .ok_or(Error::Overflow("path precondition"))
}

/// Dense distance-r graphs contain many distance-growing paths:
/// if M/N ≥ 4·C(R−r,b+1)·C(d,r−b−1) then π ≥ N·(M/4N)^{R/r}.
pub fn verify_sid(a: &PointSet, big_r: u32, r: u32, b: u32) -> Result<CheckResult> {
    validate_path_args(big_r, r, b)?;
    let d = a.dim();
    let params = format!("d={d} |A|={} R={big_r} r={r} b={b}", a.len());
    if a.is_empty() {
        return Ok(CheckResult::new("path-sid", params, CheckStatus::NotApplicable, "-", "-")
            .with_note("empty set"));
    }
    let n = a.len() as u128;
    let m = edge_count_exact(a, r)?;
    let threshold = sid_threshold(d, big_r, r, b, n)?;
    if m < threshold {
        return Ok(CheckResult::new(
            "path-sid",
            params,
            CheckStatus::NotApplicable,
            format!("M={m}"),
            format!("4*N*C(R-r,b+1)*C(d,r-b-1)={threshold}"),
        )
        .with_note("precondition unmet"));
    }
    let steps = big_r / r;
    let paths = count_rb_paths(a, big_r, r, b)?.count;
    let lhs = paths
        .checked_mul(checked_pow(4 * n, steps)?)
        .ok_or(Error::Overflow("path count bound"))?;
    let rhs = n
        .checked_mul(checked_pow(m, steps)?)
        .ok_or(Error::Overflow("path count bound"))?;
    let status = if lhs >= rhs {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    Ok(CheckResult::new(
        "path-sid",
        params,
        status,
        format!("pi*(4N)^{steps}={lhs}"),
        format!("N*M^{steps}={rhs}"),
    ))
}

/// Each close pair admits at most R!·d^{bR/r} paths, so
/// |E_≤R(A)| ≥ π/(R!·d^{bR/r}); checked with the loop-inclusive count,
/// loop-free count reported alongside.
pub fn verify_paths_to_pairs(a: &PointSet, big_r: u32, r: u32, b: u32) -> Result<CheckResult> {
    validate_path_args(big_r, r, b)?;
    let d = a.dim();
    let params = format!("d={d} |A|={} R={big_r} r={r} b={b}", a.len());
    if a.is_empty() {
        return Ok(
            CheckResult::new("path-pairs", params, CheckStatus::Pass, "0", "0")
                .with_note("empty set: no paths"),
        );
    }
    let steps = big_r / r;
    let paths = count_rb_paths(a, big_r, r, b)?.count;
    let edges = edge_count_at_most(a, big_r.min(d))?;
    let scale = falling_factorial(big_r as u64, big_r)? // R!
        .checked_mul(checked_pow(d as u128, b * steps)?)
        .ok_or(Error::Overflow("paths-to-pairs"))?;
    let lhs = edges
        .checked_mul(scale)
        .ok_or(Error::Overflow("paths-to-pairs"))?;
    let status = if lhs >= paths {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    let loop_free = edges - a.len() as u128;
    Ok(CheckResult::new(
        "path-pairs",
        params,
        status,
        format!("E_leR*R!*d^(b*R/r)={lhs}"),
        format!("pi={paths}"),
    )
    .with_note(format!(
        "loop-inclusive E={edges}, loop-free E={loop_free}"
    )))
}

/// Composition of the two path bounds:
/// e_≤R(A) ≥ e_r(A)^{R/r} / (4^{R/r}·R!·d^{bR/r}) whenever the
/// distance-growing-path precondition holds.
pub fn verify_composed(a: &PointSet, big_r: u32, r: u32, b: u32) -> Result<CheckResult> {
    validate_path_args(big_r, r, b)?;
    let d = a.dim();
    let params = format!("d={d} |A|={} R={big_r} r={r} b={b}", a.len());
    if a.is_empty() {
        return Ok(CheckResult::new(
            "path-composed",
            params,
            CheckStatus::NotApplicable,
            "-",
            "-",
        )
        .with_note("empty set"));
    }
    let n = a.len() as u128;
    let m = edge_count_exact(a, r)?;
    let threshold = sid_threshold(d, big_r, r, b, n)?;
    if m < threshold {
        return Ok(CheckResult::new(
            "path-composed",
            params,
            CheckStatus::NotApplicable,
            format!("M={m}"),
            format!("threshold={threshold}"),
        )
        .with_note("precondition unmet"));
    }
    let steps = big_r / r;
    let edges = edge_count_at_most(a, big_r.min(d))?;
    // E·N^{s−1}·4^s·R!·d^{bs} ≥ M^s.
    let lhs = edges
        .checked_mul(checked_pow(n, steps - 1)?)
        .ok_or(Error::Overflow("composed bound"))?
        .checked_mul(checked_pow(4, steps)?)
        .ok_or(Error::Overflow("composed bound"))?
        .checked_mul(falling_factorial(big_r as u64, big_r)?)
        .ok_or(Error::Overflow("composed bound"))?
        .checked_mul(checked_pow(d as u128, b * steps)?)
        .ok_or(Error::Overflow("composed bound"))?;
    let rhs = checked_pow(m, steps)?;
    let status = if lhs >= rhs {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    Ok(CheckResult::new(
        "path-composed",
        params,
        status,
        format!("E_leR*N^(s-1)*4^s*R!*d^(b*s)={lhs}"),
        format!("M^s={rhs}"),
    ))
}

fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let t = values.len() as f64;
    let mean = values.iter().sum::<f64>() / t;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (t - 1.0);
    (mean, (var / t).sqrt())
}

/// Expected maximum intersection with a hard sub-sampled ball:
/// E[max_i |A_i ∩ S|] > B(d,R−r)·Σ|E_≤R(A_i)| / (2^{d−1}·B(d,R)·(B(d,r)−1))
/// for r-pruned tuples; Monte-Carlo estimate against the exact right side.
pub fn verify_max_to_er(
    tuple: &PrunedTuple,
    n: u64,
    d: u32,
    r: u32,
    samples: u64,
    seed: u64,
) -> Result<CheckResult> {
    let params = format!("d={d} r={r} n={n} p={} samples={samples}", tuple.sets.len());
    let big_r = match radius_for(n, d, r) {
        Ok(v) => v,
        Err(e) => {
            return Ok(CheckResult::new(
                "max-to-er",
                params,
                CheckStatus::NotApplicable,
                "-",
                "-",
            )
            .with_note(format!("no valid ball radius: {e}")))
        }
    };
    if big_r < 2 * r || 2 * big_r > d {
        return Ok(CheckResult::new(
            "max-to-er",
            params,
            CheckStatus::NotApplicable,
            format!("R={big_r}"),
            "need R = kr, k ≥ 2, R ≤ d/2",
        )
        .with_note("hypotheses unmet"));
    }
    for set in &tuple.sets {
        if set.dim() != d {
            return Err(Error::DimensionMismatch(set.dim(), d));
        }
    }
    // Exact right-hand side.
    let mut edge_sum: u128 = 0;
    for set in &tuple.sets {
        edge_sum = edge_sum
            .checked_add(edge_count_at_most(set, big_r)?)
            .ok_or(Error::Overflow("edge sum"))?;
    }
    let rhs_num = ball_volume(d, big_r - r)?
        .checked_mul(edge_sum)
        .ok_or(Error::Overflow("max-to-er rhs"))?;
    let rhs_den = checked_pow(2, d - 1)?
        .checked_mul(ball_volume(d, big_r)?)
        .ok_or(Error::Overflow("max-to-er rhs"))?
        .checked_mul(ball_volume(d, r)? - 1)
        .ok_or(Error::Overflow("max-to-er rhs"))?;
    let rhs = Ratio::new(rhs_num, rhs_den)?;

    let members: Vec<CubeBitset> = tuple
        .sets
        .iter()
        .map(CubeBitset::from_set)
        .collect::<Result<_>>()?;
    let mut maxima = Vec::with_capacity(samples as usize);
    for s in 0..samples {
        let mut rng = SplitMix64::for_trial(seed, s, TAG_MC_SAMPLE);
        let center = rng.next_point(d);
        let words = sample_in_ball(center, d, big_r, n, &mut rng)?;
        let max_hit = members
            .iter()
            .map(|m| words.iter().filter(|&&w| m.contains(w)).count())
            .max()
            .unwrap_or(0);
        maxima.push(max_hit as f64);
    }
    let (mean, se) = mean_and_se(&maxima);
    let rhs_f = rhs.to_f64();
    let (status, note) = if mean - 3.0 * se > rhs_f {
        (CheckStatus::Pass, "strict at 3 sigma".to_string())
    } else if mean + 3.0 * se >= rhs_f {
        (CheckStatus::Pass, "within statistical tolerance".to_string())
    } else {
        (CheckStatus::Fail, "below bound at 3 sigma".to_string())
    };
    Ok(CheckResult::new(
        "max-to-er",
        params,
        status,
        format!("mean={mean:.6} se={se:.6}"),
        format!("{rhs} ({rhs_f:.6})"),
    )
    .with_note(note))
}

/// Tuples covering a δ/2 fraction of the distance-≤r edge mass cover a
/// δ/4 fraction of the exact-distance-r edges. Exact set-union counts;
/// status gated on the implication's stated (r, δ) domain.
pub fn verify_exact_density(tuple: &[PointSet], d: u32, r: u32, delta: f64) -> Result<CheckResult> {
    let params = format!("d={d} r={r} delta={delta} p={}", tuple.len());
    let within = covered_pair_union(tuple, 1, r.max(1))?;
    let exact_count = within.count_at_distance(r);
    let mut union_points = CubeBitset::new(d)?;
    for set in tuple {
        for &w in set.words() {
            union_points.insert(w);
        }
    }
    // Loop-inclusive union, matching the degree-sum edge mass
    // B(d,r)·2^{d−1} that the hypothesis is stated against.
    let covered_mass = within.count() as f64 + union_points.count() as f64;
    let edge_mass = (ball_volume(d, r)?
        .checked_mul(checked_pow(2, d - 1)?)
        .ok_or(Error::Overflow("edge mass"))?) as f64;
    let exact_edges = exact_count as f64;
    let conclusion_rhs = (binomial(d, r)?
        .checked_mul(checked_pow(2, d - 1)?)
        .ok_or(Error::Overflow("exact edge mass"))?) as f64
        * delta
        / 4.0;
    let conclusion_holds = exact_edges >= conclusion_rhs;
    let lhs = format!("exact_edges={exact_count}");
    let rhs = format!("delta/4*C(d,r)*2^(d-1)={conclusion_rhs:.3}");

    let domain_ok = 2 * r * r <= d && delta >= 4.0 / (d as f64).sqrt();
    if !domain_ok {
        return Ok(CheckResult::new(
            "exact-density",
            params,
            CheckStatus::NotApplicable,
            lhs,
            rhs,
        )
        .with_note(format!(
            "outside stated domain (need r ≤ sqrt(d/2), delta ≥ 4/sqrt(d)); inequality {} anyway",
            if conclusion_holds { "holds" } else { "fails" }
        )));
    }
    let hypothesis_rhs = delta / 2.0 * edge_mass;
    if covered_mass < hypothesis_rhs {
        return Ok(CheckResult::new(
            "exact-density",
            params,
            CheckStatus::NotApplicable,
            format!("covered_mass={covered_mass}"),
            format!("delta/2*B(d,r)*2^(d-1)={hypothesis_rhs:.3}"),
        )
        .with_note("coverage hypothesis unmet"));
    }
    let status = if conclusion_holds {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    Ok(CheckResult::new("exact-density", params, status, lhs, rhs))
}

/// The hard distribution samples distance-≤r pairs uniformly (exact for
/// r ≤ 2 over distinct pairs): the covered-pair count of a fixed tuple
/// concentrates on α·E[|pairs(S)|] where α is the covered fraction.
pub fn verify_uniform_sampling(
    tuple: &[PointSet],
    n: u64,
    d: u32,
    r: u32,
    samples: u64,
    seed: u64,
) -> Result<CheckResult> {
    let params = format!("d={d} r={r} n={n} p={} samples={samples}", tuple.len());
    let big_r = match radius_for(n, d, r) {
        Ok(v) => v,
        Err(e) => {
            return Ok(CheckResult::new(
                "uniform-sampling",
                params,
                CheckStatus::NotApplicable,
                "-",
                "-",
            )
            .with_note(format!("no valid ball radius: {e}")))
        }
    };
    let covered = covered_pair_union(tuple, 1, r)?;
    let total = cube_distinct_pairs_at_most(d, r)?;
    let alpha = Ratio::new(covered.count() as u128, total)?;
    let alpha_f = alpha.to_f64();

    let mut residuals = Vec::with_capacity(samples as usize);
    for s in 0..samples {
        let mut rng = SplitMix64::for_trial(seed, s, TAG_MC_SAMPLE);
        let center = rng.next_point(d);
        let words = sample_in_ball(center, d, big_r, n, &mut rng)?;
        let mut pairs = 0u64;
        let mut hit = 0u64;
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                if dist_words(words[i], words[j]) <= r {
                    pairs += 1;
                    if covered.contains_pair(words[i], words[j]) {
                        hit += 1;
                    }
                }
            }
        }
        residuals.push(hit as f64 - alpha_f * pairs as f64);
    }
    let (mean, se) = mean_and_se(&residuals);
    let status = if mean.abs() <= 3.0 * se + 1e-9 {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    Ok(CheckResult::new(
        "uniform-sampling",
        params,
        status,
        format!("mean_residual={mean:.6} se={se:.6}"),
        "0",
    )
    .with_note(format!(
        "alpha={alpha} over distinct pairs (loops excluded); R={big_r}"
    )))
}

// ---------------------------------------------------------------------
// Sweep suites
// ---------------------------------------------------------------------

pub const SCOPES: &[&str] = &[
    "ball-ratio",
    "ball-degree",
    "lk-bound",
    "paths",
    "pruning",
    "max-to-er",
    "exact-density",
    "uniform-sampling",
    "exact-coverage",
];

pub fn run_scope(scope: &str, limits: &SuiteLimits) -> Result<VerificationReport> {
    match scope {
        "ball-ratio" => suite_ball_ratio(limits),
        "ball-degree" => suite_ball_degree(limits),
        "lk-bound" => suite_lk_bound(limits),
        "paths" => suite_path_bounds(limits),
        "pruning" => suite_pruning(limits),
        "max-to-er" => suite_max_to_er(limits),
        "exact-density" => suite_exact_density(limits),
        "uniform-sampling" => suite_uniform_sampling(limits),
        "exact-coverage" => suite_exact_coverage(limits),
        other => Err(Error::InvalidParameter(format!(
            "unknown verification scope '{other}' (known: {})",
            SCOPES.join(", ")
        ))),
    }
}

pub fn suite_ball_ratio(limits: &SuiteLimits) -> Result<VerificationReport> {
    let max_d = limits.max_d.unwrap_or(40).min(40);
    let mut report = VerificationReport::new();
    for d in 3..=max_d {
        for big_r in 2..=d.div_ceil(2) {
            for r in 1..big_r {
                report.push(crate::cube::ball_ratio_check(d, big_r, r)?);
            }
        }
    }
    Ok(report)
}

pub fn suite_ball_degree(limits: &SuiteLimits) -> Result<VerificationReport> {
    let max_d = limits.max_d.unwrap_or(12).min(14);
    let mut report = VerificationReport::new();
    for d in 1..=max_d {
        for r in 1..=d.min(4) {
            for k in r.div_ceil(2)..=d {
                report.push(verify_ball_degree(d, k, r)?);
            }
        }
    }
    Ok(report)
}

pub fn suite_lk_bound(limits: &SuiteLimits) -> Result<VerificationReport> {
    let max_d = limits.max_d.unwrap_or(14).min(14);
    let mut report = VerificationReport::new();
    for d in 2..=max_d {
        for r in 1..=d.min(4) {
            let c = r.div_ceil(2);
            for k in c..=d {
                if 2 * (k + c) <= d {
                    report.push(verify_lk_bound(d, k, r)?);
                }
            }
        }
    }
    Ok(report)
}

/// Test sets for the path-count checks: balls and random subsets at d ≤ 10.
fn path_instances(seed: u64, max_d: u32) -> Result<Vec<(String, PointSet)>> {
    let mut out = Vec::new();
    let mut rng = SplitMix64::for_trial(seed, 0, 0x9a7b);
    for d in 6..=max_d.clamp(6, 10) {
        out.push((format!("cube d={d}"), PointSet::full_cube(d)?));
        for k in [2u32, 3] {
            let center = BitPoint::new(rng.next_point(d), d)?;
            out.push((
                format!("ball d={d} k={k}"),
                crate::cube::enumerate_ball(center, k)?,
            ));
        }
        for (i, density) in [0.5f64, 0.55, 0.6, 0.65, 0.65, 0.7, 0.75, 0.8, 0.8, 0.85, 0.9, 0.95]
            .iter()
            .enumerate()
        {
            let n = ((1u64 << d) as f64 * density) as u64;
            let set = sample_uniform(n, d, rng.next_u64(), i as u64)?;
            out.push((format!("uniform d={d} rho={density}"), set));
        }
    }
    Ok(out)
}

/// Path-bound sweep: the distance-growing-path bound, the paths-to-pairs
/// bound, and their composition, gated on the former's precondition.
pub fn suite_path_bounds(limits: &SuiteLimits) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    let instances = path_instances(limits.seed, limits.max_d.unwrap_or(10))?;
    // (R, r, b): the r=2 rows are the preconditioned family; R=6 and b=0
    // rows document how the precondition gates at this scale.
    let shapes = [(4u32, 2u32, 1u32), (6, 2, 1), (4, 2, 0)];
    for (desc, set) in &instances {
        for &(big_r, r, b) in &shapes {
            let sid = verify_sid(set, big_r, r, b)?;
            let applicable = sid.status != CheckStatus::NotApplicable;
            report.push(CheckResult {
                params: format!("{} {}", desc, sid.params),
                ..sid
            });
            if applicable {
                let p2p = verify_paths_to_pairs(set, big_r, r, b)?;
                report.push(CheckResult {
                    params: format!("{} {}", desc, p2p.params),
                    ..p2p
                });
                let comp = verify_composed(set, big_r, r, b)?;
                report.push(CheckResult {
                    params: format!("{} {}", desc, comp.params),
                    ..comp
                });
            }
        }
    }
    Ok(report)
}

fn random_subset_tuple(
    d: u32,
    p: usize,
    density: f64,
    rng: &mut SplitMix64,
) -> Result<Vec<PointSet>> {
    (0..p)
        .map(|i| {
            let n = ((1u64 << d) as f64 * density) as u64;
            sample_uniform(n, d, rng.next_u64(), i as u64)
        })
        .collect()
}

fn ball_union_tuple(
    d: u32,
    p: usize,
    balls: usize,
    k: u32,
    rng: &mut SplitMix64,
) -> Result<Vec<PointSet>> {
    (0..p)
        .map(|_| {
            let mut words = Vec::new();
            for _ in 0..balls {
                let center = BitPoint::new(rng.next_point(d), d)?;
                words.extend_from_slice(crate::cube::enumerate_ball(center, k)?.words());
            }
            PointSet::new(d, words)
        })
        .collect()
}

/// Every cube point kept with probability 1/2, per set.
fn random_half_tuple(d: u32, p: usize, rng: &mut SplitMix64) -> Result<Vec<PointSet>> {
    (0..p)
        .map(|_| {
            let words: Vec<u64> = (0..1u64 << d).filter(|_| rng.next_bool()).collect();
            PointSet::new(d, words)
        })
        .collect()
}

/// Pruning sweep: random tuples of several shapes, re-verifying subset,
/// multiplicity, and covered-pair preservation from scratch.
pub fn suite_pruning(limits: &SuiteLimits) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    let mut rng = SplitMix64::for_trial(limits.seed, 0, 0x70f);
    let mut cases: Vec<(String, u32, u32, Vec<PointSet>)> = Vec::new();
    for d in [4u32, 5, 6, 7, 8] {
        for r in [1u32, 2, 3] {
            for p in [2usize, 3, 4] {
                for (v, density) in [0.15 + 0.1 * (p as f64), 0.6].into_iter().enumerate() {
                    cases.push((
                        format!("random d={d} r={r} p={p} v={v}"),
                        d,
                        r,
                        random_subset_tuple(d, p, density, &mut rng)?,
                    ));
                }
            }
            let t = ball_union_tuple(d, 3, 2, 2.min(d), &mut rng)?;
            cases.push((format!("balls d={d} r={r} p=3"), d, r, t));
        }
    }
    // Duplicate-set shapes: later copies should empty out.
    for d in [6u32, 8] {
        let base = sample_uniform(1 << (d - 2), d, rng.next_u64(), 0)?;
        cases.push((
            format!("duplicates d={d} r=2 p=2"),
            d,
            2,
            vec![base.clone(), base],
        ));
    }
    for (desc, d, r, tuple) in cases {
        let params = desc.clone();
        match prune(&tuple, r) {
            Ok(pruned) => {
                // Independent re-verification of the pruning contract.
                let mut ok = true;
                for (orig, slim) in tuple.iter().zip(&pruned.sets) {
                    if !slim.words().iter().all(|&w| orig.contains_word(w)) {
                        ok = false;
                    }
                }
                let before = covered_pair_union(&tuple, 1, r)?;
                let after = covered_pair_union(&pruned.sets, 1, r)?;
                if !before.same_pairs(&after) {
                    ok = false;
                }
                let bound = ball_volume(d, r)? - 1;
                for set in &pruned.sets {
                    for &x in set.words() {
                        if pruned.multiplicity(x) as u128 > bound {
                            ok = false;
                        }
                    }
                }
                let removed = pruned.removed.len();
                report.push(CheckResult::new(
                    "pruning",
                    params,
                    if ok { CheckStatus::Pass } else { CheckStatus::Fail },
                    format!("pairs={}", after.count()),
                    format!("pairs={} removed={removed}", before.count()),
                ));
            }
            Err(e) => {
                report.push(
                    CheckResult::new("pruning", params, CheckStatus::Fail, "-", "-")
                        .with_note(e.to_string()),
                );
            }
        }
    }
    Ok(report)
}

pub fn suite_max_to_er(limits: &SuiteLimits) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    let mut rng = SplitMix64::for_trial(limits.seed, 0, 0x3a3);
    let samples = limits.samples.max(1000);

    // Trivial single-set instance: the whole cube always intersects S in
    // all n points.
    let cube = PointSet::full_cube(8)?;
    let pruned = prune(&[cube], 2)?;
    report.push(verify_max_to_er(&pruned, 100, 8, 2, samples, rng.next_u64())?);

    let d = 10u32;
    let r = 2u32;
    for &n in &[80u64, 120, 200, 300, 350] {
        for variant in 0..4u32 {
            let tuple = match variant {
                0 => random_subset_tuple(d, 3, 0.3, &mut rng)?,
                1 => random_subset_tuple(d, 3, 0.5, &mut rng)?,
                2 => ball_union_tuple(d, 3, 3, 2, &mut rng)?,
                _ => ball_union_tuple(d, 3, 2, 3, &mut rng)?,
            };
            let pruned = prune(&tuple, r)?;
            report.push(verify_max_to_er(&pruned, n, d, r, samples, rng.next_u64())?);
        }
    }
    Ok(report)
}

pub fn suite_exact_density(limits: &SuiteLimits) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    let mut rng = SplitMix64::for_trial(limits.seed, 0, 0xed5);

    // d = 16 admits delta = 1 exactly; the full cube covers everything.
    let cube = PointSet::full_cube(16)?;
    report.push(verify_exact_density(&[cube], 16, 2, 1.0)?);
    for p in [4usize, 5, 6] {
        for _ in 0..3 {
            let tuple = random_half_tuple(16, p, &mut rng)?;
            report.push(verify_exact_density(&tuple, 16, 2, 1.0)?);
        }
    }
    // d = 18 admits delta slightly below 1.
    for p in [5usize, 6] {
        for _ in 0..5 {
            let tuple = random_half_tuple(18, p, &mut rng)?;
            report.push(verify_exact_density(&tuple, 18, 2, 0.95)?);
        }
    }
    // Domain gates, reported not-applicable.
    let small = random_half_tuple(8, 4, &mut rng)?;
    report.push(verify_exact_density(&small, 8, 2, 1.0)?);
    let low_delta = random_half_tuple(16, 4, &mut rng)?;
    report.push(verify_exact_density(&low_delta, 16, 2, 0.5)?);
    // Coverage-hypothesis gate: a sparse tuple covers far less than a
    // delta/2 fraction of the edge mass.
    let sparse = vec![sample_uniform(100, 16, rng.next_u64(), 0)?];
    report.push(verify_exact_density(&sparse, 16, 2, 1.0)?);
    Ok(report)
}

pub fn suite_uniform_sampling(limits: &SuiteLimits) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    let mut rng = SplitMix64::for_trial(limits.seed, 0, 0x05a);
    let samples = limits.samples.max(1500);
    let d = 10u32;
    let r = 2u32;
    let n = 120u64;

    let mut tuples: Vec<Vec<PointSet>> = vec![vec![PointSet::full_cube(d)?]];
    for density in [0.3f64, 0.5, 0.7] {
        tuples.push(random_subset_tuple(d, 3, density, &mut rng)?);
    }
    for (balls, k) in [(3usize, 2u32), (2, 3), (5, 2)] {
        tuples.push(ball_union_tuple(d, 3, balls, k, &mut rng)?);
    }
    tuples.push(ball_union_tuple(d, 2, 1, 2, &mut rng)?);
    tuples.push(random_subset_tuple(d, 2, 0.15, &mut rng)?);
    tuples.push(random_half_tuple(d, 4, &mut rng)?);
    for tuple in &tuples {
        report.push(verify_uniform_sampling(tuple, n, d, r, samples, rng.next_u64())?);
    }
    Ok(report)
}

/// Exhaustive co-location checks for the always-complete protocols, plus
/// sampled full-coverage trials.
pub fn suite_exact_coverage(limits: &SuiteLimits) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    let seed = limits.seed;
    let d = 8u32;
    for r in 1..=3u32 {
        let mut samplers = vec![
            ("universal", make_universal(6, d, seed)?),
            ("ball-hashing-2", make_ball_hashing2(d, r, 7, seed)?),
            ("subcube-splitting", make_subcube_splitting(d, r, 5, 7, seed)?),
        ];
        let code = greedy_covering_code(d, r, seed ^ 0xa)?;
        samplers.push(("anchor-points", make_anchor_points(d, r, 7, code, seed)?));
        for (name, sampler) in samplers {
            let draw = sampler.draw(0);
            let assigns: Vec<Vec<u32>> = (0..1u64 << d)
                .map(|w| draw.assign(BitPoint::new(w, d).unwrap()).unwrap())
                .collect();
            let mut missed = 0u64;
            for u in 0..1u64 << d {
                for v in u + 1..1u64 << d {
                    if dist_words(u, v) <= r
                        && !assigns[u as usize]
                            .iter()
                            .any(|i| assigns[v as usize].contains(i))
                    {
                        missed += 1;
                    }
                }
            }
            report.push(CheckResult::new(
                "exact-coverage",
                format!("{name} d={d} r={r} exhaustive"),
                if missed == 0 {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                },
                format!("missed={missed}"),
                "0",
            ));
        }
    }
    // Sampled inputs at d = 10: realized coverage must be exactly 1.
    let d = 10u32;
    let r = 2u32;
    let gens = [
        crate::inputs::InputGenerator::new(crate::inputs::GeneratorKind::Uniform { n: 200, d }, seed),
        crate::inputs::InputGenerator::new(
            crate::inputs::GeneratorKind::Hard { n: 200, d, r },
            seed,
        ),
    ];
    let mut samplers = vec![
        ("universal", make_universal(10, d, seed)?),
        ("ball-hashing-2", make_ball_hashing2(d, r, 16, seed)?),
        ("subcube-splitting", make_subcube_splitting(d, r, 6, 16, seed)?),
    ];
    let code = greedy_covering_code(d, r, seed ^ 0xb)?;
    samplers.push(("anchor-points", make_anchor_points(d, r, 16, code, seed)?));
    for (name, sampler) in &samplers {
        for gen in &gens {
            let mut bad_trials = 0u64;
            for t in 0..5u64 {
                let (set, _) = gen.generate(t)?;
                let m = run_trial(&sampler.draw(t), &set, r)?;
                if m.covered_pairs != m.total_pairs {
                    bad_trials += 1;
                }
            }
            report.push(CheckResult::new(
                "exact-coverage",
                format!("{name} d={d} r={r} {} trials=5", gen.kind_name()),
                if bad_trials == 0 {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                },
                format!("incomplete_trials={bad_trials}"),
                "0",
            ));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::enumerate_ball;

    #[test]
    fn ball_degree_examples() {
        let c = verify_ball_degree(8, 2, 2).unwrap();
        assert_eq!(c.status, CheckStatus::Pass);
        // Boundary k = ⌈r/2⌉.
        let c = verify_ball_degree(9, 2, 3).unwrap();
        assert_eq!(c.status, CheckStatus::Pass);
        assert!(verify_ball_degree(8, 1, 3).is_err()); // k < ⌈r/2⌉
        assert!(verify_ball_degree(15, 2, 2).is_err()); // guard
    }

    #[test]
    fn lk_bound_examples() {
        assert_eq!(verify_lk_bound(12, 3, 2).unwrap().status, CheckStatus::Pass);
        assert_eq!(verify_lk_bound(14, 5, 3).unwrap().status, CheckStatus::Pass);
        assert!(verify_lk_bound(12, 6, 2).is_err()); // k above the window
    }

    #[test]
    fn sid_examples() {
        // Full cube d=6, r=1, R=2, b=0: M/N = 3 < 4: precondition unmet.
        let cube6 = PointSet::full_cube(6).unwrap();
        let c = verify_sid(&cube6, 2, 1, 0).unwrap();
        assert_eq!(c.status, CheckStatus::NotApplicable);

        // Full cube d=10: M/N = 5 ≥ 4 and the bound holds.
        let cube10 = PointSet::full_cube(10).unwrap();
        let c = verify_sid(&cube10, 2, 1, 0).unwrap();
        assert_eq!(c.status, CheckStatus::Pass);

        // Two isolated points: no distance-r pairs, precondition unmet.
        let sparse = PointSet::new(10, [0, 0b1111111111]).unwrap();
        let c = verify_sid(&sparse, 4, 2, 0).unwrap();
        assert_eq!(c.status, CheckStatus::NotApplicable);
    }

    #[test]
    fn paths_to_pairs_examples() {
        // Ball(0,2) at d=8, r=2, R=4, b=1: holds.
        let ball = enumerate_ball(BitPoint::new(0, 8).unwrap(), 2).unwrap();
        let c = verify_paths_to_pairs(&ball, 4, 2, 1).unwrap();
        assert_eq!(c.status, CheckStatus::Pass);

        // No distance-r pairs: zero paths, trivially holds.
        let sparse = PointSet::new(10, [0, 0b1111111111]).unwrap();
        let c = verify_paths_to_pairs(&sparse, 4, 2, 0).unwrap();
        assert_eq!(c.status, CheckStatus::Pass);

        // r=1, R=r: the loop convention makes |E_≤1| = |A| + |E_1|, and
        // on dense sets the stated bound genuinely fails; the checker
        // reports it rather than masking it.
        let cube = PointSet::full_cube(6).unwrap();
        let c = verify_paths_to_pairs(&cube, 1, 1, 0).unwrap();
        let edges = edge_count_at_most(&cube, 1).unwrap();
        let paths = count_rb_paths(&cube, 1, 1, 0).unwrap().count;
        assert_eq!(
            c.status,
            if edges >= paths {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            }
        );
        assert_eq!(c.status, CheckStatus::Fail); // 64+192 < 384
    }

    #[test]
    fn composed_follows_its_parts() {
        let ball = enumerate_ball(BitPoint::new(0, 9).unwrap(), 3).unwrap();
        let sid = verify_sid(&ball, 4, 2, 1).unwrap();
        assert_eq!(sid.status, CheckStatus::Pass);
        let comp = verify_composed(&ball, 4, 2, 1).unwrap();
        assert_eq!(comp.status, CheckStatus::Pass);
    }

    #[test]
    fn max_to_er_trivial_instance() {
        let cube = PointSet::full_cube(8).unwrap();
        let pruned = prune(&[cube], 2).unwrap();
        let c = verify_max_to_er(&pruned, 100, 8, 2, 400, 11).unwrap();
        assert_eq!(c.status, CheckStatus::Pass);
    }

    #[test]
    fn max_to_er_gates_hypotheses() {
        let cube = PointSet::full_cube(8).unwrap();
        let pruned = prune(&[cube], 2).unwrap();
        // n = 30 gives R = 2 = r: k = 1 < 2.
        let c = verify_max_to_er(&pruned, 30, 8, 2, 100, 11).unwrap();
        assert_eq!(c.status, CheckStatus::NotApplicable);
    }

    #[test]
    fn max_to_er_with_empty_sets_in_the_tuple() {
        // Dead processors contribute nothing to the edge sum; the bound
        // still holds off the live sets.
        let ball = enumerate_ball(BitPoint::new(0, 8).unwrap(), 1).unwrap();
        let tuple = vec![PointSet::empty(8).unwrap(), ball];
        let pruned = prune(&tuple, 2).unwrap();
        assert!(pruned.sets[0].is_empty());
        let c = verify_max_to_er(&pruned, 100, 8, 2, 300, 11).unwrap();
        assert_eq!(c.status, CheckStatus::Pass);
    }

    #[test]
    fn exact_density_examples() {
        // Full cube at d=8, delta=1: outside the stated domain
        // (4/sqrt(8) > 1) but the inequality itself holds.
        let cube = PointSet::full_cube(8).unwrap();
        let c = verify_exact_density(&[cube], 8, 2, 1.0).unwrap();
        assert_eq!(c.status, CheckStatus::NotApplicable);
        assert!(c.note.as_deref().unwrap().contains("holds"));

        // delta below 4/sqrt(d) gates to not-applicable.
        let half = {
            let mut rng = SplitMix64::new(4);
            random_half_tuple(16, 4, &mut rng).unwrap()
        };
        let c = verify_exact_density(&half, 16, 2, 0.5).unwrap();
        assert_eq!(c.status, CheckStatus::NotApplicable);

        // Applicable and passing at d=16, delta=1.
        let cube16 = PointSet::full_cube(16).unwrap();
        let c = verify_exact_density(&[cube16], 16, 2, 1.0).unwrap();
        assert_eq!(c.status, CheckStatus::Pass);
    }

    #[test]
    fn uniform_sampling_alpha_one_is_exact() {
        let cube = PointSet::full_cube(10).unwrap();
        let c = verify_uniform_sampling(&[cube], 120, 10, 2, 200, 5).unwrap();
        assert_eq!(c.status, CheckStatus::Pass);
        assert!(c.lhs.contains("mean_residual=0.000000"));
    }

    #[test]
    fn unknown_scope_is_an_error() {
        assert!(run_scope("no-such-scope", &SuiteLimits::default()).is_err());
    }

    #[test]
    fn ball_ratio_suite_all_pass_small() {
        let limits = SuiteLimits {
            max_d: Some(12),
            ..Default::default()
        };
        let report = suite_ball_ratio(&limits).unwrap();
        assert!(report.failures() == 0 && !report.checks.is_empty());
    }
}
