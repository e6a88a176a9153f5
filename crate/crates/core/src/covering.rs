//! One-round protocol constructors: who receives each input point.
//!
//! A sampler describes a distribution over p-tuples (A_1, …, A_p) of cube
//! subsets; a draw fixes the randomness for one trial and exposes
//! `assign(x)`, the non-empty set of processors point x is sent to. Five
//! protocols are provided:
//!
//! * ball covering: unions of randomly translated radius-k Hamming balls,
//!   dealt round-robin over the processors. The number of balls scales
//!   with the ratio of cube edges to ball edges, so a fixed fraction of
//!   close pairs lands inside a single ball.
//! * universal all-pairs: processors indexed by unordered pairs over `[q]`;
//!   x goes to the q−1 processors containing h(x). Covers every pair.
//! * ball-hashing-2: the cube is hash-partitioned; x goes to the owners of
//!   every point within ⌈r/2⌉, so any close pair meets at a midpoint.
//! * subcube splitting: a prefix grid; x goes to the owners of every
//!   prefix within r of its own.
//! * anchor points: a covering code of radius r, randomly dealt to
//!   processors; x goes to the owners of code points within ⌈3r/2⌉.

use std::sync::Arc;

use crate::cube::{
    ball_edge_count_at_most, ball_volume, cube_edge_count_at_most, dist_words, enumerate_ball,
    for_each_ball_word,
};
use crate::error::{Error, Result};
use crate::point::{BitPoint, CubeBitset, PointSet};
use crate::ratio::Ratio;
use crate::rng::{point_hash, SplitMix64};

const TAG_DRAW: u64 = 0x5105;

/// Exact edge-ratio computation is used up to this dimension; beyond it
/// the proven upper bound on the ratio stands in (larger ratios only add
/// balls, preserving the coverage direction).
pub const EXACT_RATIO_DIM: u32 = 20;

/// Greedy covering-code construction guard.
pub const CODE_DIM_GUARD: u32 = 16;

/// Ball-hashing exact-mode guard.
pub const BALL_HASH_DIM_GUARD: u32 = 24;

/// Draw materialization guard.
pub const MATERIALIZE_DIM_GUARD: u32 = 20;

/// ℓ_k: the ratio of loop-inclusive edge counts of the whole cube to a
/// radius-k ball, exact for d ≤ EXACT_RATIO_DIM, otherwise the closed
/// upper bound (2d/k)^{⌈r/2⌉}·2^{d+1}/B(d,k), clamped to ≥ 1.
pub fn edge_ratio(d: u32, r: u32, k: u32) -> Result<Ratio> {
    let ratio = if d <= EXACT_RATIO_DIM {
        Ratio::new(cube_edge_count_at_most(d, r)?, ball_edge_count_at_most(d, k, r)?)?
    } else {
        let half_up = r.div_ceil(2);
        let num = crate::cube::checked_pow(2 * d as u128, half_up)?
            .checked_mul(crate::cube::checked_pow(2, d + 1)?)
            .ok_or(Error::Overflow("edge ratio bound"))?;
        let den = crate::cube::checked_pow(k as u128, half_up)?
            .checked_mul(ball_volume(d, k)?)
            .ok_or(Error::Overflow("edge ratio bound"))?;
        Ratio::new(num, den)?
    };
    if ratio.checked_cmp(&Ratio::from_int(1))? == std::cmp::Ordering::Less {
        Ok(Ratio::from_int(1))
    } else {
        Ok(ratio)
    }
}

#[derive(Clone, Debug)]
pub struct BallCoveringParams {
    pub d: u32,
    pub r: u32,
    pub k: u32,
    pub p: u32,
    pub delta: f64,
    /// ℓ_k used for sizing (exact or bounded; see [`edge_ratio`]).
    pub ell_k: Ratio,
    /// Balls per processor: L = ⌈ln(1/(1−δ))·⌈ℓ_k/p⌉⌉.
    pub balls_per_processor: u64,
}

impl BallCoveringParams {
    pub fn total_balls(&self) -> u64 {
        self.balls_per_processor * self.p as u64
    }
}

#[derive(Clone, Debug)]
pub struct UniversalParams {
    pub d: u32,
    pub q: u32,
    pub p: u32,
}

#[derive(Clone, Debug)]
pub struct BallHashing2Params {
    pub d: u32,
    pub r: u32,
    pub p: u32,
    pub half_radius: u32,
}

#[derive(Clone, Debug)]
pub struct SubcubeParams {
    pub d: u32,
    pub r: u32,
    /// Subcube dimension; the prefix (subcube id) is the first d−k bits.
    pub k: u32,
    pub p: u32,
}

#[derive(Clone, Debug)]
pub struct AnchorParams {
    pub d: u32,
    pub r: u32,
    pub p: u32,
    pub reach: u32,
    pub code: Arc<CoveringCode>,
}

#[derive(Clone, Debug)]
pub enum SamplerKind {
    BallCovering(BallCoveringParams),
    Universal(UniversalParams),
    BallHashing2(BallHashing2Params),
    Subcube(SubcubeParams),
    Anchor(AnchorParams),
}

/// A seeded protocol description. `draw(t)` realizes the randomness of
/// trial t; equal (params, seed, t) gives bit-identical draws.
#[derive(Clone, Debug)]
pub struct CoveringSampler {
    pub kind: SamplerKind,
    pub base_seed: u64,
}

/// A point set within distance r of every point of the cube.
#[derive(Clone, Debug)]
pub struct CoveringCode {
    pub d: u32,
    pub r: u32,
    pub points: PointSet,
}

impl CoveringCode {
    /// Exhaustive coverage verification; enumeration scale only.
    pub fn verify_covers(&self) -> Result<()> {
        if self.d > MATERIALIZE_DIM_GUARD {
            return Err(Error::GuardExceeded {
                what: "covering code verification dimension",
                limit: MATERIALIZE_DIM_GUARD as u64,
                actual: self.d as u64,
            });
        }
        let mut covered = CubeBitset::new(self.d)?;
        for &c in self.points.words() {
            for_each_ball_word(self.d, c, self.r, |w| {
                covered.insert(w);
            });
        }
        if covered.count() != 1u64 << self.d {
            return Err(Error::InvalidParameter(format!(
                "code of radius {} misses {} cube points",
                self.r,
                (1u64 << self.d) - covered.count()
            )));
        }
        Ok(())
    }
}

/// Greedy covering code: visit the cube in seeded random order, keep any
/// point not yet covered within radius r. The result is verified to cover
/// the cube exhaustively.
pub fn greedy_covering_code(d: u32, r: u32, seed: u64) -> Result<CoveringCode> {
    if d == 0 || d > CODE_DIM_GUARD {
        return Err(Error::GuardExceeded {
            what: "greedy covering code dimension",
            limit: CODE_DIM_GUARD as u64,
            actual: d as u64,
        });
    }
    if r > d {
        return Err(Error::InvalidParameter(format!("code radius {r} > d={d}")));
    }
    let mut order: Vec<u64> = (0..1u64 << d).collect();
    let mut rng = SplitMix64::for_trial(seed, 0, 0x0c0de);
    rng.shuffle(&mut order);
    let mut covered = CubeBitset::new(d)?;
    let mut code_words = Vec::new();
    for x in order {
        if !covered.contains(x) {
            code_words.push(x);
            for_each_ball_word(d, x, r, |w| {
                covered.insert(w);
            });
        }
    }
    let code = CoveringCode {
        d,
        r,
        points: PointSet::new(d, code_words)?,
    };
    code.verify_covers()?;
    Ok(code)
}

/// Randomized ball edge-covering A_k(δ): Lp uniform centers, ball j owned
/// by processor j mod p.
pub fn make_ball_covering(
    d: u32,
    r: u32,
    k: u32,
    p: u32,
    delta: f64,
    seed: u64,
) -> Result<CoveringSampler> {
    if d == 0 || d > 64 {
        return Err(Error::InvalidDimension(d));
    }
    if r == 0 || r > d || k > d {
        return Err(Error::InvalidParameter(format!(
            "need 1 ≤ r ≤ d and k ≤ d, got r={r}, k={k}, d={d}"
        )));
    }
    if k < r.div_ceil(2) {
        return Err(Error::InvalidParameter(format!(
            "ball radius k={k} below ⌈r/2⌉ = {}",
            r.div_ceil(2)
        )));
    }
    if p == 0 {
        return Err(Error::InvalidParameter("p must be at least 1".into()));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!("δ={delta} outside (0,1)")));
    }
    let ell_k = edge_ratio(d, r, k)?;
    let per_proc = ell_k.div_int(p as u128)?.ceil();
    let factor = (1.0 / (1.0 - delta)).ln();
    let balls_per_processor = (factor * per_proc as f64).ceil() as u64;
    Ok(CoveringSampler {
        kind: SamplerKind::BallCovering(BallCoveringParams {
            d,
            r,
            k,
            p,
            delta,
            ell_k,
            balls_per_processor: balls_per_processor.max(1),
        }),
        base_seed: seed,
    })
}

/// Universal all-pairs: q chosen as the least integer with C(q,2) ≥
/// p_requested; the actual processor count is C(q,2).
pub fn make_universal(p_requested: u32, d: u32, seed: u64) -> Result<CoveringSampler> {
    if p_requested == 0 {
        return Err(Error::InvalidParameter("p must be at least 1".into()));
    }
    if d == 0 || d > 64 {
        return Err(Error::InvalidDimension(d));
    }
    let mut q = 2u32;
    while (q as u64 * (q as u64 - 1)) / 2 < p_requested as u64 {
        q += 1;
    }
    let p = (q * (q - 1)) / 2;
    Ok(CoveringSampler {
        kind: SamplerKind::Universal(UniversalParams { d, q, p }),
        base_seed: seed,
    })
}

pub fn make_ball_hashing2(d: u32, r: u32, p: u32, seed: u64) -> Result<CoveringSampler> {
    if d == 0 || d > BALL_HASH_DIM_GUARD {
        return Err(Error::GuardExceeded {
            what: "ball-hashing dimension",
            limit: BALL_HASH_DIM_GUARD as u64,
            actual: d as u64,
        });
    }
    if r == 0 || r > d {
        return Err(Error::InvalidParameter(format!("r={r} outside 1..=d={d}")));
    }
    if p == 0 {
        return Err(Error::InvalidParameter("p must be at least 1".into()));
    }
    Ok(CoveringSampler {
        kind: SamplerKind::BallHashing2(BallHashing2Params {
            d,
            r,
            p,
            half_radius: r.div_ceil(2),
        }),
        base_seed: seed,
    })
}

pub fn make_subcube_splitting(d: u32, r: u32, k: u32, p: u32, seed: u64) -> Result<CoveringSampler> {
    if d == 0 || d > 64 {
        return Err(Error::InvalidDimension(d));
    }
    if k == 0 || k >= d {
        return Err(Error::InvalidParameter(format!(
            "subcube dimension k={k} outside 1..d={d}"
        )));
    }
    if r == 0 || r > d {
        return Err(Error::InvalidParameter(format!("r={r} outside 1..=d={d}")));
    }
    if p == 0 {
        return Err(Error::InvalidParameter("p must be at least 1".into()));
    }
    Ok(CoveringSampler {
        kind: SamplerKind::Subcube(SubcubeParams { d, r, k, p }),
        base_seed: seed,
    })
}

pub fn make_anchor_points(
    d: u32,
    r: u32,
    p: u32,
    code: CoveringCode,
    seed: u64,
) -> Result<CoveringSampler> {
    if code.d != d || code.r != r {
        return Err(Error::InvalidParameter(format!(
            "code is (d={}, r={}), protocol wants (d={d}, r={r})",
            code.d, code.r
        )));
    }
    if p == 0 {
        return Err(Error::InvalidParameter("p must be at least 1".into()));
    }
    code.verify_covers()?;
    Ok(CoveringSampler {
        kind: SamplerKind::Anchor(AnchorParams {
            d,
            r,
            p,
            reach: (3 * r).div_ceil(2),
            code: Arc::new(code),
        }),
        base_seed: seed,
    })
}

impl CoveringSampler {
    pub fn dim(&self) -> u32 {
        self.kind.dim()
    }

    pub fn processors(&self) -> u32 {
        self.kind.processors()
    }

    pub fn kind_name(&self) -> &'static str {
        self.kind.name()
    }

    /// Overhead bound max{6·2^{⌈r/2⌉}·ln(1/(1−δ))·(d/k)^{⌈r/2⌉}, 9·log2 p}
    /// for the ball covering; other protocols have no such column.
    pub fn theory_overhead_bound(&self) -> Option<f64> {
        match &self.kind {
            SamplerKind::BallCovering(p) => {
                let c = p.r.div_ceil(2);
                let term = 6.0
                    * 2f64.powi(c as i32)
                    * (1.0 / (1.0 - p.delta)).ln()
                    * (p.d as f64 / p.k as f64).powi(c as i32);
                Some(term.max(9.0 * (p.p as f64).log2()))
            }
            _ => None,
        }
    }

    /// Per-point replication bound
    /// 7·max{d·ln 2, 6·2^{⌈r/2⌉}·ln(1/(1−δ))·(d/k)^{⌈r/2⌉}}.
    pub fn theory_replication_bound(&self) -> Option<f64> {
        match &self.kind {
            SamplerKind::BallCovering(p) => {
                let c = p.r.div_ceil(2);
                let term = 6.0
                    * 2f64.powi(c as i32)
                    * (1.0 / (1.0 - p.delta)).ln()
                    * (p.d as f64 / p.k as f64).powi(c as i32);
                Some(7.0 * term.max(p.d as f64 * std::f64::consts::LN_2))
            }
            _ => None,
        }
    }

    /// Realize trial `trial`'s randomness.
    pub fn draw(&self, trial: u64) -> CoveringDraw {
        let mut rng = SplitMix64::for_trial(self.base_seed, trial, TAG_DRAW);
        let rand = match &self.kind {
            SamplerKind::BallCovering(p) => {
                let total = p.total_balls();
                let centers: Vec<u64> = (0..total).map(|_| rng.next_point(p.d)).collect();
                let fallback_seed = rng.next_u64();
                DrawRandomness::BallCenters {
                    centers,
                    fallback_seed,
                }
            }
            SamplerKind::Universal(_) | SamplerKind::BallHashing2(_) | SamplerKind::Subcube(_) => {
                DrawRandomness::HashSeed(rng.next_u64())
            }
            SamplerKind::Anchor(p) => {
                let owners = (0..p.code.points.len())
                    .map(|_| rng.next_below(p.p as u64) as u32)
                    .collect();
                DrawRandomness::CodeOwners(owners)
            }
        };
        CoveringDraw {
            kind: self.kind.clone(),
            trial,
            rand,
        }
    }
}

impl SamplerKind {
    pub fn dim(&self) -> u32 {
        match self {
            SamplerKind::BallCovering(p) => p.d,
            SamplerKind::Universal(p) => p.d,
            SamplerKind::BallHashing2(p) => p.d,
            SamplerKind::Subcube(p) => p.d,
            SamplerKind::Anchor(p) => p.d,
        }
    }

    pub fn processors(&self) -> u32 {
        match self {
            SamplerKind::BallCovering(p) => p.p,
            SamplerKind::Universal(p) => p.p,
            SamplerKind::BallHashing2(p) => p.p,
            SamplerKind::Subcube(p) => p.p,
            SamplerKind::Anchor(p) => p.p,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SamplerKind::BallCovering(_) => "ball-covering",
            SamplerKind::Universal(_) => "universal",
            SamplerKind::BallHashing2(_) => "ball-hashing-2",
            SamplerKind::Subcube(_) => "subcube-splitting",
            SamplerKind::Anchor(_) => "anchor-points",
        }
    }
}

#[derive(Clone, Debug)]
pub enum DrawRandomness {
    BallCenters { centers: Vec<u64>, fallback_seed: u64 },
    HashSeed(u64),
    CodeOwners(Vec<u32>),
}

/// One realized tuple (A_1, …, A_p), stored implicitly through its
/// generating randomness.
#[derive(Clone, Debug)]
pub struct CoveringDraw {
    pub kind: SamplerKind,
    pub trial: u64,
    pub rand: DrawRandomness,
}

impl CoveringDraw {
    pub fn dim(&self) -> u32 {
        self.kind.dim()
    }

    pub fn processors(&self) -> u32 {
        self.kind.processors()
    }

    /// Processor indices x is sent to: sorted, deduplicated, never empty.
    pub fn assign(&self, x: BitPoint) -> Result<Vec<u32>> {
        let d = self.dim();
        if x.dim() != d {
            return Err(Error::DimensionMismatch(x.dim(), d));
        }
        Ok(self.assign_word(x.bits()))
    }

    pub(crate) fn assign_word(&self, x: u64) -> Vec<u32> {
        let mut procs = match (&self.kind, &self.rand) {
            (
                SamplerKind::BallCovering(p),
                DrawRandomness::BallCenters {
                    centers,
                    fallback_seed,
                },
            ) => {
                let mut procs: Vec<u32> = centers
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| dist_words(x, c) <= p.k)
                    .map(|(j, _)| (j % p.p as usize) as u32)
                    .collect();
                if procs.is_empty() {
                    // Every point must go somewhere; the fallback cannot
                    // lower pair coverage below the analyzed value.
                    procs.push((point_hash(*fallback_seed, x) % p.p as u64) as u32);
                }
                procs
            }
            (SamplerKind::Universal(p), DrawRandomness::HashSeed(seed)) => {
                let h = (point_hash(*seed, x) % p.q as u64) as u32;
                (0..p.q)
                    .filter(|&i| i != h)
                    .map(|i| pair_index(h.min(i), h.max(i), p.q))
                    .collect()
            }
            (SamplerKind::BallHashing2(p), DrawRandomness::HashSeed(seed)) => {
                let mut procs = Vec::with_capacity(16);
                for_each_ball_word(p.d, x, p.half_radius, |z| {
                    procs.push((point_hash(*seed, z) % p.p as u64) as u32);
                });
                procs
            }
            (SamplerKind::Subcube(p), DrawRandomness::HashSeed(seed)) => {
                let prefix_dim = p.d - p.k;
                let prefix = x >> p.k;
                let fan = p.r.min(prefix_dim);
                let mut procs = Vec::with_capacity(16);
                for_each_ball_word(prefix_dim, prefix, fan, |w| {
                    procs.push((point_hash(*seed, w) % p.p as u64) as u32);
                });
                procs
            }
            (SamplerKind::Anchor(p), DrawRandomness::CodeOwners(owners)) => p
                .code
                .points
                .words()
                .iter()
                .enumerate()
                .filter(|(_, &c)| dist_words(x, c) <= p.reach)
                .map(|(ci, _)| owners[ci])
                .collect(),
            _ => unreachable!("draw randomness matches its sampler kind"),
        };
        procs.sort_unstable();
        procs.dedup();
        debug_assert!(!procs.is_empty());
        procs
    }

    /// Explicit (A_1, …, A_p). For the ball covering this is exactly the
    /// union of each processor's assigned balls (the empty-assignment
    /// fallback is a routing rule, not part of the tuple). Other
    /// protocols materialize by scanning the cube.
    pub fn materialize(&self) -> Result<Vec<PointSet>> {
        let d = self.dim();
        if d > MATERIALIZE_DIM_GUARD {
            return Err(Error::GuardExceeded {
                what: "draw materialization dimension",
                limit: MATERIALIZE_DIM_GUARD as u64,
                actual: d as u64,
            });
        }
        let p = self.processors() as usize;
        if let (SamplerKind::BallCovering(params), DrawRandomness::BallCenters { centers, .. }) =
            (&self.kind, &self.rand)
        {
            let mut sets = vec![Vec::new(); p];
            for (j, &c) in centers.iter().enumerate() {
                let ball = enumerate_ball(BitPoint::new(c, d)?, params.k)?;
                sets[j % p].extend_from_slice(ball.words());
            }
            return sets.into_iter().map(|ws| PointSet::new(d, ws)).collect();
        }
        let mut sets = vec![Vec::new(); p];
        for x in 0..1u64 << d {
            for proc in self.assign_word(x) {
                sets[proc as usize].push(x);
            }
        }
        sets.into_iter().map(|ws| PointSet::new(d, ws)).collect()
    }
}

/// Canonical index of the unordered pair {a, b} (a < b) among the C(q,2)
/// pairs over [q].
fn pair_index(a: u32, b: u32, q: u32) -> u32 {
    debug_assert!(a < b && b < q);
    let a = a as u64;
    let b = b as u64;
    let q = q as u64;
    (a * (2 * q - a - 1) / 2 + (b - a - 1)) as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{brute_force_join, edge_count_at_most};

    #[test]
    fn pair_index_is_a_bijection() {
        for q in 2..=12u32 {
            let mut seen = std::collections::HashSet::new();
            for a in 0..q {
                for b in a + 1..q {
                    let idx = pair_index(a, b, q);
                    assert!(idx < q * (q - 1) / 2);
                    assert!(seen.insert(idx));
                }
            }
        }
    }

    #[test]
    fn universal_rounding_examples() {
        let s = make_universal(6, 10, 1).unwrap();
        match &s.kind {
            SamplerKind::Universal(p) => assert_eq!((p.q, p.p), (4, 6)),
            _ => unreachable!(),
        }
        let s = make_universal(7, 10, 1).unwrap();
        match &s.kind {
            SamplerKind::Universal(p) => assert_eq!((p.q, p.p), (5, 10)),
            _ => unreachable!(),
        }
        let s = make_universal(1, 10, 1).unwrap();
        assert_eq!(s.processors(), 1);
    }

    #[test]
    fn universal_assignment_shape() {
        let s = make_universal(3, 8, 42).unwrap();
        let draw = s.draw(0);
        for w in [0u64, 17, 255] {
            let procs = draw.assign(BitPoint::new(w, 8).unwrap()).unwrap();
            assert_eq!(procs.len(), 2); // q−1 pair processors
        }
        // With q = 3, a point hashing to 0 sits on pairs {0,1} and {0,2}.
        if let DrawRandomness::HashSeed(seed) = draw.rand {
            let x = (0..999u64)
                .find(|&w| point_hash(seed, w).is_multiple_of(3))
                .unwrap();
            let procs = draw.assign(BitPoint::new(x, 8).unwrap()).unwrap();
            assert_eq!(procs, vec![pair_index(0, 1, 3), pair_index(0, 2, 3)]);
        }
    }

    #[test]
    fn universal_covers_every_pair() {
        let s = make_universal(6, 8, 7).unwrap();
        let draw = s.draw(3);
        let set = crate::inputs::sample_uniform(50, 8, 1, 0).unwrap();
        for (a, b) in brute_force_join(&set, 8).unwrap() {
            let pa = draw.assign(a).unwrap();
            let pb = draw.assign(b).unwrap();
            assert!(pa.iter().any(|i| pb.contains(i)), "{a} {b}");
        }
    }

    #[test]
    fn ball_covering_sizing_follows_the_ratio() {
        let s = make_ball_covering(10, 2, 3, 4, 0.9, 5).unwrap();
        let params = match &s.kind {
            SamplerKind::BallCovering(p) => p.clone(),
            _ => unreachable!(),
        };
        let exact = Ratio::new(
            cube_edge_count_at_most(10, 2).unwrap(),
            ball_edge_count_at_most(10, 3, 2).unwrap(),
        )
        .unwrap();
        assert_eq!(
            params.ell_k.checked_cmp(&exact).unwrap(),
            std::cmp::Ordering::Equal
        );
        let expect_l =
            ((1.0f64 / 0.1).ln() * params.ell_k.div_int(4).unwrap().ceil() as f64).ceil() as u64;
        assert_eq!(params.balls_per_processor, expect_l);

        let draw = s.draw(0);
        match &draw.rand {
            DrawRandomness::BallCenters { centers, .. } => {
                assert_eq!(centers.len() as u64, params.total_balls());
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn ball_covering_error_free_delta_matches_ball_budget() {
        // δ = 1 − 1/n^3 makes the total ball count p·⌈3·ln n·⌈ℓ/p⌉⌉.
        let n: u64 = 1 << 8;
        let delta = 1.0 - 1.0 / (n as f64).powi(3);
        let s = make_ball_covering(10, 2, 3, 4, delta, 5).unwrap();
        let params = match &s.kind {
            SamplerKind::BallCovering(p) => p.clone(),
            _ => unreachable!(),
        };
        let per = params.ell_k.div_int(4).unwrap().ceil() as f64;
        let expect = (3.0 * (n as f64).ln() * per).ceil() as u64 * 4;
        assert_eq!(params.total_balls(), expect);
    }

    #[test]
    fn ball_covering_accepts_huge_balls() {
        // Even with B(d,k) > 2^d/2 the ratio stays ≥ 1 and L ≥ 1.
        let s = make_ball_covering(8, 2, 7, 2, 0.5, 1).unwrap();
        match &s.kind {
            SamplerKind::BallCovering(p) => {
                assert!(
                    p.ell_k.checked_cmp(&Ratio::from_int(1)).unwrap() != std::cmp::Ordering::Less
                );
                assert!(p.balls_per_processor >= 1);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn ball_covering_rejects_bad_params() {
        assert!(make_ball_covering(10, 3, 1, 4, 0.9, 5).is_err()); // k < ⌈r/2⌉
        assert!(make_ball_covering(10, 2, 3, 4, 0.0, 5).is_err());
        assert!(make_ball_covering(10, 2, 3, 4, 1.0, 5).is_err());
        assert!(make_ball_covering(10, 2, 3, 0, 0.9, 5).is_err());
    }

    #[test]
    fn draws_are_deterministic_per_trial() {
        let s = make_ball_covering(12, 2, 2, 8, 0.9, 77).unwrap();
        let a = s.draw(5);
        let b = s.draw(5);
        let x = BitPoint::new(0b1010, 12).unwrap();
        assert_eq!(a.assign(x).unwrap(), b.assign(x).unwrap());
        match (&a.rand, &b.rand) {
            (
                DrawRandomness::BallCenters { centers: ca, .. },
                DrawRandomness::BallCenters { centers: cb, .. },
            ) => assert_eq!(ca, cb),
            _ => unreachable!(),
        }
        let c = s.draw(6);
        match (&a.rand, &c.rand) {
            (
                DrawRandomness::BallCenters { centers: ca, .. },
                DrawRandomness::BallCenters { centers: cc, .. },
            ) => assert_ne!(ca, cc),
            _ => unreachable!(),
        }
    }

    #[test]
    fn ball_covering_fallback_is_singleton() {
        // k = 1 at d = 16 leaves most points outside every ball.
        let s = make_ball_covering(16, 2, 1, 4, 0.5, 3).unwrap();
        let draw = s.draw(0);
        let mut saw_fallback = false;
        for w in 0..200u64 {
            let procs = draw.assign(BitPoint::new(w, 16).unwrap()).unwrap();
            assert!(!procs.is_empty());
            if let DrawRandomness::BallCenters { centers, .. } = &draw.rand {
                if centers.iter().all(|&c| dist_words(w, c) > 1) {
                    assert_eq!(procs.len(), 1);
                    saw_fallback = true;
                }
            }
        }
        assert!(saw_fallback);
    }

    #[test]
    fn ball_covering_materialization_is_the_ball_union() {
        let s = make_ball_covering(8, 2, 2, 3, 0.7, 9).unwrap();
        let draw = s.draw(1);
        let sets = draw.materialize().unwrap();
        assert_eq!(sets.len(), 3);
        if let (SamplerKind::BallCovering(p), DrawRandomness::BallCenters { centers, .. }) =
            (&draw.kind, &draw.rand)
        {
            for (i, set) in sets.iter().enumerate() {
                let mut expect = Vec::new();
                for (j, &c) in centers.iter().enumerate() {
                    if j % p.p as usize == i {
                        let ball = enumerate_ball(BitPoint::new(c, 8).unwrap(), p.k).unwrap();
                        expect.extend_from_slice(ball.words());
                    }
                }
                assert_eq!(*set, PointSet::new(8, expect).unwrap());
            }
        } else {
            unreachable!()
        }
    }

    #[test]
    fn ball_hashing_replication_is_ball_limited() {
        let s = make_ball_hashing2(6, 2, 50, 11).unwrap();
        let draw = s.draw(0);
        for w in 0..64u64 {
            let procs = draw.assign(BitPoint::new(w, 6).unwrap()).unwrap();
            assert!(!procs.is_empty());
            assert!(procs.len() as u128 <= ball_volume(6, 1).unwrap()); // ≤ 7
        }
        let s = make_ball_hashing2(10, 2, 1000, 11).unwrap();
        let draw = s.draw(0);
        let max = (0..1024u64)
            .map(|w| draw.assign(BitPoint::new(w, 10).unwrap()).unwrap().len())
            .max()
            .unwrap();
        assert!(max as u128 <= ball_volume(10, 1).unwrap()); // ≤ 11

        let s1 = make_ball_hashing2(9, 1, 500, 2).unwrap();
        let d1 = s1.draw(0);
        for w in [0u64, 5, 100] {
            assert!(d1.assign(BitPoint::new(w, 9).unwrap()).unwrap().len() <= 10); // d+1
        }
    }

    #[test]
    fn ball_hashing_covers_all_close_pairs_exhaustively() {
        let s = make_ball_hashing2(8, 2, 7, 123).unwrap();
        let draw = s.draw(2);
        let assigns: Vec<Vec<u32>> = (0..256u64).map(|w| draw.assign_word(w)).collect();
        for u in 0..256u64 {
            for v in u + 1..256 {
                if dist_words(u, v) <= 2 {
                    assert!(
                        assigns[u as usize].iter().any(|i| assigns[v as usize].contains(i)),
                        "pair ({u},{v}) uncovered"
                    );
                }
            }
        }
    }

    #[test]
    fn subcube_splitting_replication_and_coverage() {
        let d = 9;
        let s = make_subcube_splitting(d, 1, d - 3, 5, 4).unwrap();
        let draw = s.draw(0);
        for w in 0..(1u64 << d) {
            let procs = draw.assign_word(w);
            assert!(!procs.is_empty());
            assert!(procs.len() as u128 <= ball_volume(3, 1).unwrap()); // B(3,1) = 4
        }
        // Pairs within r share a processor: prefixes differ in ≤ r bits.
        let s = make_subcube_splitting(8, 2, 5, 6, 4).unwrap();
        let draw = s.draw(1);
        let assigns: Vec<Vec<u32>> = (0..256u64).map(|w| draw.assign_word(w)).collect();
        for u in 0..256u64 {
            for v in u + 1..256 {
                if dist_words(u, v) <= 2 {
                    assert!(assigns[u as usize]
                        .iter()
                        .any(|i| assigns[v as usize].contains(i)));
                }
            }
        }
    }

    #[test]
    fn greedy_code_examples() {
        let c = greedy_covering_code(6, 6, 3).unwrap();
        assert_eq!(c.points.len(), 1); // r = d: one ball covers everything

        let c = greedy_covering_code(3, 1, 9).unwrap();
        assert!(c.points.len() <= 4);
        c.verify_covers().unwrap();
        // Exhaustive optimum at d=3, r=1 is 2 ({000, 111} is perfect).
        let two = CoveringCode {
            d: 3,
            r: 1,
            points: PointSet::new(3, [0b000, 0b111]).unwrap(),
        };
        two.verify_covers().unwrap();
        for w in 0..8u64 {
            let one = CoveringCode {
                d: 3,
                r: 1,
                points: PointSet::new(3, [w]).unwrap(),
            };
            assert!(one.verify_covers().is_err());
        }
    }

    #[test]
    fn greedy_code_is_seeded() {
        let a = greedy_covering_code(8, 2, 1).unwrap();
        let b = greedy_covering_code(8, 2, 1).unwrap();
        assert_eq!(a.points, b.points);
    }

    #[test]
    fn anchor_points_coverage_and_replication() {
        let code = greedy_covering_code(8, 2, 17).unwrap();
        let s = make_anchor_points(8, 2, 5, code.clone(), 21).unwrap();
        let draw = s.draw(0);
        let reach = 3; // ⌈3r/2⌉
        for w in 0..256u64 {
            let procs = draw.assign_word(w);
            assert!(!procs.is_empty());
            let hits = code
                .points
                .words()
                .iter()
                .filter(|&&c| dist_words(w, c) <= reach)
                .count();
            assert!(procs.len() <= hits);
        }
        // Exhaustive pair coverage at d=8, r=2.
        let assigns: Vec<Vec<u32>> = (0..256u64).map(|w| draw.assign_word(w)).collect();
        for u in 0..256u64 {
            for v in u + 1..256 {
                if dist_words(u, v) <= 2 {
                    assert!(assigns[u as usize]
                        .iter()
                        .any(|i| assigns[v as usize].contains(i)));
                }
            }
        }
    }

    #[test]
    fn anchor_points_validates_code() {
        let code = greedy_covering_code(8, 2, 17).unwrap();
        assert!(make_anchor_points(8, 3, 5, code.clone(), 1).is_err());
        let bad = CoveringCode {
            d: 8,
            r: 2,
            points: PointSet::new(8, [0]).unwrap(),
        };
        assert!(make_anchor_points(8, 2, 5, bad, 1).is_err());
    }

    #[test]
    fn edge_ratio_uses_bound_beyond_exact_guard() {
        let exact = edge_ratio(12, 2, 2).unwrap();
        let direct = Ratio::new(
            cube_edge_count_at_most(12, 2).unwrap(),
            ball_edge_count_at_most(12, 2, 2).unwrap(),
        )
        .unwrap();
        assert_eq!(exact.checked_cmp(&direct).unwrap(), std::cmp::Ordering::Equal);

        // Beyond the guard the bound must dominate the true ratio.
        let bounded = edge_ratio(24, 2, 4).unwrap();
        let truth = Ratio::new(
            cube_edge_count_at_most(24, 2).unwrap(),
            ball_edge_count_at_most(24, 4, 2).unwrap(),
        )
        .unwrap();
        assert_eq!(
            bounded.checked_cmp(&truth).unwrap(),
            std::cmp::Ordering::Greater
        );
    }

    #[test]
    fn materialized_sets_carry_their_edges() {
        let s = make_ball_covering(8, 2, 2, 2, 0.8, 33).unwrap();
        let draw = s.draw(4);
        for set in draw.materialize().unwrap() {
            if !set.is_empty() {
                assert!(edge_count_at_most(&set, 2).unwrap() >= set.len() as u128);
            }
        }
    }
}
