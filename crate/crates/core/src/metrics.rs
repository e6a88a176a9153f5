//! Trial execution and measurement: per-processor loads, realized
//! overhead, pair coverage, replication, and the pruning transform that
//! strips redundant copies from explicit tuples.

use serde::Serialize;

use crate::covering::{CoveringDraw, CoveringSampler};
use crate::cube::{ball_volume, join_pair_indices};
use crate::error::{Error, Result};
use crate::inputs::InputGenerator;
use crate::point::{BitPoint, CubeBitset, PointSet};
use crate::ratio::Ratio;

/// Metrics of one (draw, input set) pair. Coverage counts distinct pairs
/// only: a join never outputs (x, x). Loop-inclusive counts used by the
/// verification checkers live in `verify`.
#[derive(Clone, Debug)]
pub struct TrialMetrics {
    pub trial: u64,
    /// |A_i ∩ S| per processor.
    pub loads: Vec<u64>,
    pub max_load: u64,
    /// max_i |A_i ∩ S| · p / |S|, exact.
    pub overhead: Ratio,
    pub covered_pairs: u64,
    pub total_pairs: u64,
    /// None (flagged) when the input has no close pairs at all.
    pub coverage: Option<Ratio>,
    /// |assign(x)| per point of S, in canonical point order.
    pub replication: Vec<u32>,
    pub max_replication: u32,
}

/// Run one trial: route every point of `s`, tally loads, and check which
/// close pairs were co-located. Coverage is exact, not sampled.
pub fn run_trial(draw: &CoveringDraw, s: &PointSet, r: u32) -> Result<TrialMetrics> {
    if s.dim() != draw.dim() {
        return Err(Error::DimensionMismatch(s.dim(), draw.dim()));
    }
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let p = draw.processors() as usize;
    let mut loads = vec![0u64; p];
    let mut assignments: Vec<Vec<u32>> = Vec::with_capacity(s.len());
    let mut replication = Vec::with_capacity(s.len());
    for &x in s.words() {
        let procs = draw.assign_word(x);
        for &i in &procs {
            loads[i as usize] += 1;
        }
        replication.push(procs.len() as u32);
        assignments.push(procs);
    }
    let pairs = join_pair_indices(s, r)?;
    let covered_pairs = pairs
        .iter()
        .filter(|(i, j)| intersects(&assignments[*i as usize], &assignments[*j as usize]))
        .count() as u64;
    let total_pairs = pairs.len() as u64;
    let max_load = loads.iter().copied().max().unwrap_or(0);
    let overhead = Ratio::new(max_load as u128 * p as u128, s.len() as u128)?;
    let coverage = if total_pairs == 0 {
        None
    } else {
        Some(Ratio::new(covered_pairs as u128, total_pairs as u128)?)
    };
    Ok(TrialMetrics {
        trial: draw.trial,
        max_load,
        loads,
        overhead,
        covered_pairs,
        total_pairs,
        coverage,
        replication: replication.clone(),
        max_replication: replication.iter().copied().max().unwrap_or(0),
    })
}

fn intersects(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Aggregate of `estimate_overhead` over paired (draw, input) trials.
#[derive(Clone, Debug, Serialize)]
pub struct OverheadSummary {
    pub trials_requested: u64,
    pub trials_used: u64,
    /// Trials whose generated set was empty and was skipped.
    pub degenerate_trials: u64,
    pub mean_n: f64,
    pub n_over_p: f64,
    pub mean_overhead: f64,
    pub std_overhead: f64,
    pub min_overhead: f64,
    pub max_overhead: f64,
    pub p50_overhead: f64,
    pub p90_overhead: f64,
    /// Over trials with at least one close pair.
    pub mean_coverage: f64,
    pub min_coverage: f64,
    pub defined_coverage_trials: u64,
    pub full_coverage_trials: u64,
    pub mean_replication: f64,
    pub max_replication: u32,
    pub mean_max_load: f64,
    pub theory_overhead_bound: Option<f64>,
    pub theory_replication_bound: Option<f64>,
    pub overhead_exceed_trials: u64,
    pub replication_exceed_trials: u64,
}

/// Run `trials` paired trials; draw t and input t share the trial index
/// so different protocols see identical inputs under one base seed.
pub fn estimate_overhead(
    sampler: &CoveringSampler,
    generator: &InputGenerator,
    r: u32,
    trials: u64,
) -> Result<OverheadSummary> {
    if sampler.dim() != generator.dim() {
        return Err(Error::DimensionMismatch(sampler.dim(), generator.dim()));
    }
    let p = sampler.processors();
    let overhead_bound = sampler.theory_overhead_bound();
    let replication_bound = sampler.theory_replication_bound();

    let mut overheads: Vec<f64> = Vec::with_capacity(trials as usize);
    let mut degenerate = 0u64;
    let mut sum_n = 0f64;
    let mut sum_cov = 0f64;
    let mut min_cov = f64::INFINITY;
    let mut defined_cov = 0u64;
    let mut full_cov = 0u64;
    let mut sum_repl = 0f64;
    let mut max_repl = 0u32;
    let mut sum_max_load = 0f64;
    let mut oh_exceed = 0u64;
    let mut repl_exceed = 0u64;

    for t in 0..trials {
        let (set, _prov) = generator.generate(t)?;
        if set.is_empty() {
            degenerate += 1;
            continue;
        }
        let draw = sampler.draw(t);
        let m = run_trial(&draw, &set, r)?;
        let oh = m.overhead.to_f64();
        overheads.push(oh);
        sum_n += set.len() as f64;
        sum_max_load += m.max_load as f64;
        if let Some(cov) = m.coverage {
            let c = cov.to_f64();
            sum_cov += c;
            min_cov = min_cov.min(c);
            defined_cov += 1;
            if m.covered_pairs == m.total_pairs {
                full_cov += 1;
            }
        }
        sum_repl +=
            m.replication.iter().map(|&x| x as f64).sum::<f64>() / m.replication.len() as f64;
        max_repl = max_repl.max(m.max_replication);
        if let Some(b) = overhead_bound {
            if oh > b {
                oh_exceed += 1;
            }
        }
        if let Some(b) = replication_bound {
            if m.max_replication as f64 > b {
                repl_exceed += 1;
            }
        }
    }

    let used = overheads.len() as u64;
    let mean = if used > 0 {
        overheads.iter().sum::<f64>() / used as f64
    } else {
        0.0
    };
    let std = if used > 1 {
        (overheads.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (used as f64 - 1.0)).sqrt()
    } else {
        0.0
    };
    let mut sorted = overheads.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let quantile = |q: f64| -> f64 {
        if sorted.is_empty() {
            0.0
        } else {
            sorted[((sorted.len() - 1) as f64 * q).round() as usize]
        }
    };
    let mean_n = if used > 0 { sum_n / used as f64 } else { 0.0 };
    Ok(OverheadSummary {
        trials_requested: trials,
        trials_used: used,
        degenerate_trials: degenerate,
        mean_n,
        n_over_p: mean_n / p as f64,
        mean_overhead: mean,
        std_overhead: std,
        min_overhead: sorted.first().copied().unwrap_or(0.0),
        max_overhead: sorted.last().copied().unwrap_or(0.0),
        p50_overhead: quantile(0.5),
        p90_overhead: quantile(0.9),
        mean_coverage: if defined_cov > 0 {
            sum_cov / defined_cov as f64
        } else {
            0.0
        },
        min_coverage: if defined_cov > 0 { min_cov } else { 0.0 },
        defined_coverage_trials: defined_cov,
        full_coverage_trials: full_cov,
        mean_replication: if used > 0 { sum_repl / used as f64 } else { 0.0 },
        max_replication: max_repl,
        mean_max_load: if used > 0 {
            sum_max_load / used as f64
        } else {
            0.0
        },
        theory_overhead_bound: overhead_bound,
        theory_replication_bound: replication_bound,
        overhead_exceed_trials: oh_exceed,
        replication_exceed_trials: repl_exceed,
    })
}

/// Guard for explicit-tuple operations (pruning, pair unions).
pub const TUPLE_DIM_GUARD: u32 = 20;
pub const TUPLE_SIZE_GUARD: u64 = 1 << 22;

/// Bit-addressed set of distinct cube pairs (x, x ^ m) with x < x ^ m and
/// weight(m) in a fixed band; used for exact covered-pair comparisons.
pub(crate) struct PairUnion {
    offsets: Vec<u64>,
    bits: Vec<u64>,
    count: u64,
    per_offset: Vec<u64>,
}

impl PairUnion {
    pub(crate) fn count(&self) -> u64 {
        self.count
    }

    /// Covered pairs whose endpoint distance is exactly `w`.
    pub(crate) fn count_at_distance(&self, w: u32) -> u64 {
        self.offsets
            .iter()
            .zip(&self.per_offset)
            .filter(|(m, _)| m.count_ones() == w)
            .map(|(_, &c)| c)
            .sum()
    }

    pub(crate) fn same_pairs(&self, other: &PairUnion) -> bool {
        self.offsets == other.offsets && self.bits == other.bits
    }

    pub(crate) fn contains_pair(&self, a: u64, b: u64) -> bool {
        let (x, y) = if a < b { (a, b) } else { (b, a) };
        match self.offsets.binary_search(&(x ^ y)) {
            Ok(rank) => {
                let slot = x as usize * self.offsets.len() + rank;
                self.bits[slot >> 6] & (1u64 << (slot & 63)) != 0
            }
            Err(_) => false,
        }
    }
}

/// Distinct pairs at distance in [lo, hi] covered by at least one set of
/// the tuple (both endpoints in the same set).
pub(crate) fn covered_pair_union(tuple: &[PointSet], lo: u32, hi: u32) -> Result<PairUnion> {
    let d = tuple_dim(tuple)?;
    let mut offsets = Vec::new();
    crate::cube::for_each_ball_word(d, 0, hi, |m| {
        if m.count_ones() >= lo {
            offsets.push(m);
        }
    });
    offsets.sort_unstable();
    let slots = (1u128 << d) * offsets.len() as u128;
    if slots > 1 << 28 {
        return Err(Error::GuardExceeded {
            what: "pair union footprint",
            limit: 1 << 28,
            actual: slots as u64,
        });
    }
    let mut bits = vec![0u64; (slots as usize).div_ceil(64)];
    let mut count = 0u64;
    let mut per_offset = vec![0u64; offsets.len()];
    for set in tuple {
        let members = CubeBitset::from_set(set)?;
        for &x in set.words() {
            for (rank, &m) in offsets.iter().enumerate() {
                let y = x ^ m;
                if y > x && members.contains(y) {
                    let slot = x as usize * offsets.len() + rank;
                    let word = &mut bits[slot >> 6];
                    let bit = 1u64 << (slot & 63);
                    if *word & bit == 0 {
                        *word |= bit;
                        count += 1;
                        per_offset[rank] += 1;
                    }
                }
            }
        }
    }
    Ok(PairUnion {
        offsets,
        bits,
        count,
        per_offset,
    })
}

/// Union of the distinct pairs at distance in [1, r] covered by the tuple.
pub fn covered_distinct_pairs(tuple: &[PointSet], r: u32) -> Result<u64> {
    Ok(covered_pair_union(tuple, 1, r)?.count())
}

fn tuple_dim(tuple: &[PointSet]) -> Result<u32> {
    let d = tuple
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty tuple".into()))?
        .dim();
    for set in tuple {
        if set.dim() != d {
            return Err(Error::DimensionMismatch(set.dim(), d));
        }
    }
    if d > TUPLE_DIM_GUARD {
        return Err(Error::GuardExceeded {
            what: "explicit tuple dimension",
            limit: TUPLE_DIM_GUARD as u64,
            actual: d as u64,
        });
    }
    let total: u64 = tuple.iter().map(|s| s.len() as u64).sum();
    if total > TUPLE_SIZE_GUARD {
        return Err(Error::GuardExceeded {
            what: "explicit tuple size",
            limit: TUPLE_SIZE_GUARD,
            actual: total,
        });
    }
    Ok(d)
}

#[derive(Clone, Debug)]
pub struct RemovedPoint {
    pub point: BitPoint,
    pub from_set: usize,
    /// The pivotal sets the point was retained in.
    pub kept_in: Vec<u32>,
}

/// An r-pruned tuple: every point appears in at most B(d,r)−1 sets, and
/// the covered distinct-pair set is unchanged.
#[derive(Clone, Debug)]
pub struct PrunedTuple {
    pub sets: Vec<PointSet>,
    pub removed: Vec<RemovedPoint>,
    /// B(d,r) − 1, the per-point multiplicity bound.
    pub witness_bound: u128,
}

impl PrunedTuple {
    /// Multiplicity of x across the pruned sets.
    pub fn multiplicity(&self, x: u64) -> u32 {
        self.sets.iter().filter(|s| s.contains_word(x)).count() as u32
    }
}

/// Keep each point only in its pivotal sets: set i is pivotal for x when
/// some close pair {x, y} appears together in A_i but in no earlier set.
/// The covered distinct-pair set is preserved exactly; both unions are
/// recomputed and compared as a postcondition.
pub fn prune(tuple: &[PointSet], r: u32) -> Result<PrunedTuple> {
    let d = tuple_dim(tuple)?;
    if r == 0 || r > d {
        return Err(Error::InvalidParameter(format!("r={r} outside 1..=d={d}")));
    }
    let p = tuple.len();
    let members: Vec<CubeBitset> = tuple
        .iter()
        .map(CubeBitset::from_set)
        .collect::<Result<_>>()?;

    let mut union_words: Vec<u64> = tuple.iter().flat_map(|s| s.words().iter().copied()).collect();
    union_words.sort_unstable();
    union_words.dedup();

    let mut offsets = Vec::new();
    crate::cube::for_each_ball_word(d, 0, r, |m| {
        if m != 0 {
            offsets.push(m);
        }
    });

    let bound = ball_volume(d, r)? - 1;
    let mut kept: Vec<Vec<u64>> = vec![Vec::new(); p];
    let mut removed = Vec::new();
    let mut pivotal = vec![false; p];
    for &x in &union_words {
        pivotal.iter_mut().for_each(|b| *b = false);
        for &m in &offsets {
            let y = x ^ m;
            // First set holding both endpoints owns the pair.
            for (i, mem) in members.iter().enumerate() {
                if mem.contains(x) && mem.contains(y) {
                    pivotal[i] = true;
                    break;
                }
            }
        }
        let kept_in: Vec<u32> = (0..p).filter(|&i| pivotal[i]).map(|i| i as u32).collect();
        if kept_in.len() as u128 > bound {
            return Err(Error::InvalidParameter(format!(
                "pruning invariant violated: point {x:#x} pivotal in {} sets",
                kept_in.len()
            )));
        }
        for (i, mem) in members.iter().enumerate() {
            if mem.contains(x) {
                if pivotal[i] {
                    kept[i].push(x);
                } else {
                    removed.push(RemovedPoint {
                        point: BitPoint::new(x, d)?,
                        from_set: i,
                        kept_in: kept_in.clone(),
                    });
                }
            }
        }
    }
    let sets: Vec<PointSet> = kept
        .into_iter()
        .map(|ws| PointSet::from_sorted_unchecked(d, ws))
        .collect();

    let before = covered_pair_union(tuple, 1, r)?;
    let after = covered_pair_union(&sets, 1, r)?;
    if !before.same_pairs(&after) {
        return Err(Error::InvalidParameter(
            "pruning changed the covered pair set".into(),
        ));
    }
    Ok(PrunedTuple {
        sets,
        removed,
        witness_bound: bound,
    })
}
