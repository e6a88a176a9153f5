//! Seeded input-set generators: uniform sets, the hard sub-sampled-ball
//! distribution, and two half-sampled-ball families used as worst-case
//! inputs.
//!
//! Generation is a pure function of `(params, base_seed, trial)`. Each
//! generator records its latent variables (ball center, radius, chosen
//! centers) in a [`Provenance`] sidecar so verification code can condition
//! on them.

use crate::cube::{ball_volume, enumerate_ball, for_each_ball_word};
use crate::error::{Error, Result};
use crate::point::{BitPoint, PointSet, ENUM_DIM_GUARD};
use crate::rng::SplitMix64;

const TAG_UNIFORM: u64 = 0x17;
const TAG_HARD: u64 = 0x23;
const TAG_SINGLE_BALL: u64 = 0x31;
const TAG_MULTI_BALL: u64 = 0x41;

/// Enumeration guard for hard-distribution ball materialization.
const HARD_ENUM_GUARD: u128 = 1 << 24;

/// Latent variables of one generated set.
#[derive(Clone, Debug, Default)]
pub struct Provenance {
    pub center: Option<BitPoint>,
    pub radius: Option<u32>,
    pub centers: Vec<BitPoint>,
}

/// The ball radius R = R(n, d, r): the unique positive multiple of r with
/// B(d, R−r) < n ≤ B(d, R).
pub fn radius_for(n: u64, d: u32, r: u32) -> Result<u32> {
    if d == 0 || d > 64 {
        return Err(Error::InvalidDimension(d));
    }
    if r == 0 || r > d {
        return Err(Error::InvalidParameter(format!("r={r} outside 1..=d={d}")));
    }
    if n < 2 {
        return Err(Error::NoValidRadius {
            n,
            d,
            r,
            side: "n < 2 leaves no radius with B(d,R-r) < n".into(),
        });
    }
    if (n as u128) > 1u128 << (d - 1) {
        return Err(Error::NoValidRadius {
            n,
            d,
            r,
            side: format!("n > 2^{} exceeds the supported range", d - 1),
        });
    }
    let mut big_r = r;
    loop {
        let upper = ball_volume(d, big_r.min(d))?;
        if (n as u128) <= upper {
            let lower = ball_volume(d, (big_r - r).min(d))?;
            if (n as u128) > lower {
                return Ok(big_r);
            }
            return Err(Error::NoValidRadius {
                n,
                d,
                r,
                side: format!("B(d,{}) = {lower} >= n", big_r - r),
            });
        }
        if big_r - r >= d {
            return Err(Error::NoValidRadius {
                n,
                d,
                r,
                side: format!("B(d,{}) = {upper} < n", big_r),
            });
        }
        big_r += r;
    }
}

/// Uniform n-subset of a fixed ball, given an explicit center. Splits on
/// ball size: enumerate-and-shuffle when the ball fits the guard,
/// shell-weighted rejection otherwise.
pub fn sample_in_ball(
    center: u64,
    d: u32,
    big_r: u32,
    n: u64,
    rng: &mut SplitMix64,
) -> Result<Vec<u64>> {
    let volume = ball_volume(d, big_r)?;
    if (n as u128) > volume {
        return Err(Error::InvalidParameter(format!(
            "cannot draw {n} distinct points from a ball of volume {volume}"
        )));
    }
    if volume <= HARD_ENUM_GUARD && d <= ENUM_DIM_GUARD {
        let mut words = Vec::with_capacity(volume as usize);
        for_each_ball_word(d, center, big_r, |w| words.push(w));
        // Partial Fisher-Yates: the first n slots become a uniform subset.
        for i in 0..n as usize {
            let j = i + rng.next_below((words.len() - i) as u64) as usize;
            words.swap(i, j);
        }
        words.truncate(n as usize);
        words.sort_unstable();
        Ok(words)
    } else {
        // Rejection mode: uniform ball point = shell weighted by C(d,i),
        // then a uniform weight-i flip mask.
        let mut shells = Vec::with_capacity(big_r as usize + 1);
        let mut cumulative = 0u128;
        for i in 0..=big_r {
            cumulative += crate::cube::binomial(d, i)?;
            shells.push(cumulative);
        }
        let mut seen = std::collections::HashSet::with_capacity(n as usize);
        let mut out = Vec::with_capacity(n as usize);
        while out.len() < n as usize {
            let t = rng.next_below_wide(volume) as u128;
            let shell = shells.partition_point(|&c| c <= t) as u32;
            let word = center ^ rng.position_mask(d, shell);
            if seen.insert(word) {
                out.push(word);
            }
        }
        out.sort_unstable();
        Ok(out)
    }
}

/// Hard input: a uniform random center x, then a uniform n-subset of
/// Ball(x, R) with R = radius_for(n, d, r).
pub fn sample_hard(n: u64, d: u32, r: u32, seed: u64, trial: u64) -> Result<(PointSet, Provenance)> {
    let big_r = radius_for(n, d, r)?;
    let mut rng = SplitMix64::for_trial(seed, trial, TAG_HARD);
    let center = rng.next_point(d);
    let words = sample_in_ball(center, d, big_r, n, &mut rng)?;
    Ok((
        PointSet::from_sorted_unchecked(d, words),
        Provenance {
            center: Some(BitPoint::new(center, d)?),
            radius: Some(big_r),
            centers: Vec::new(),
        },
    ))
}

/// n distinct uniform points of the cube, by Floyd sampling over the full
/// 2^d universe.
pub fn sample_uniform(n: u64, d: u32, seed: u64, trial: u64) -> Result<PointSet> {
    if d == 0 || d > 64 {
        return Err(Error::InvalidDimension(d));
    }
    let universe = 1u128 << d;
    if n as u128 > universe {
        return Err(Error::InvalidParameter(format!("n={n} > 2^{d}")));
    }
    let mut rng = SplitMix64::for_trial(seed, trial, TAG_UNIFORM);
    let words = rng.sample_distinct(universe, n);
    Ok(PointSet::from_sorted_unchecked(d, words))
}

/// One random ball of radius ⌊r/2⌋, each point kept with probability 1/2.
/// Every output pair is within distance r by the triangle inequality.
pub fn sample_single_ball_half(
    d: u32,
    r: u32,
    seed: u64,
    trial: u64,
) -> Result<(PointSet, Provenance)> {
    if d > ENUM_DIM_GUARD {
        return Err(Error::GuardExceeded {
            what: "half-ball generator dimension",
            limit: ENUM_DIM_GUARD as u64,
            actual: d as u64,
        });
    }
    if r > d {
        return Err(Error::InvalidParameter(format!("r={r} > d={d}")));
    }
    let mut rng = SplitMix64::for_trial(seed, trial, TAG_SINGLE_BALL);
    let center = rng.next_point(d);
    let ball = enumerate_ball(BitPoint::new(center, d)?, r / 2)?;
    let words: Vec<u64> = ball
        .words()
        .iter()
        .copied()
        .filter(|_| rng.next_bool())
        .collect();
    Ok((
        PointSet::from_sorted_unchecked(d, words),
        Provenance {
            center: Some(BitPoint::new(center, d)?),
            radius: Some(r / 2),
            centers: Vec::new(),
        },
    ))
}

/// ⌈n / B(d,⌊r/2⌋)⌉ random balls of radius ⌊r/2⌋, the union half-sampled
/// point by point. Returns the realized set; overlaps shrink it.
pub fn sample_multi_ball_half(
    n: u64,
    d: u32,
    r: u32,
    seed: u64,
    trial: u64,
) -> Result<(PointSet, Provenance)> {
    if d > ENUM_DIM_GUARD {
        return Err(Error::GuardExceeded {
            what: "half-ball generator dimension",
            limit: ENUM_DIM_GUARD as u64,
            actual: d as u64,
        });
    }
    if r > d {
        return Err(Error::InvalidParameter(format!("r={r} > d={d}")));
    }
    let volume = ball_volume(d, r / 2)? as u64;
    if n < volume {
        return Err(Error::InvalidParameter(format!(
            "multi-ball generator needs n >= B(d,r/2) = {volume}, got n={n} (zero balls)"
        )));
    }
    let ball_count = n.div_ceil(volume);
    let mut rng = SplitMix64::for_trial(seed, trial, TAG_MULTI_BALL);
    let mut centers = Vec::with_capacity(ball_count as usize);
    let mut union = std::collections::BTreeSet::new();
    for _ in 0..ball_count {
        let c = rng.next_point(d);
        centers.push(BitPoint::new(c, d)?);
        for_each_ball_word(d, c, r / 2, |w| {
            union.insert(w);
        });
    }
    let words: Vec<u64> = union.into_iter().filter(|_| rng.next_bool()).collect();
    Ok((
        PointSet::from_sorted_unchecked(d, words),
        Provenance {
            center: None,
            radius: Some(r / 2),
            centers,
        },
    ))
}

/// A named, seeded generator as used by the experiment harness.
#[derive(Clone, Debug)]
pub enum GeneratorKind {
    Uniform { n: u64, d: u32 },
    Hard { n: u64, d: u32, r: u32 },
    SingleBallHalf { d: u32, r: u32 },
    MultiBallHalf { n: u64, d: u32, r: u32 },
}

#[derive(Clone, Debug)]
pub struct InputGenerator {
    pub kind: GeneratorKind,
    pub base_seed: u64,
}

impl InputGenerator {
    pub fn new(kind: GeneratorKind, base_seed: u64) -> InputGenerator {
        InputGenerator { kind, base_seed }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            GeneratorKind::Uniform { .. } => "uniform",
            GeneratorKind::Hard { .. } => "hard",
            GeneratorKind::SingleBallHalf { .. } => "single-ball-half",
            GeneratorKind::MultiBallHalf { .. } => "multi-ball-half",
        }
    }

    pub fn dim(&self) -> u32 {
        match self.kind {
            GeneratorKind::Uniform { d, .. }
            | GeneratorKind::Hard { d, .. }
            | GeneratorKind::SingleBallHalf { d, .. }
            | GeneratorKind::MultiBallHalf { d, .. } => d,
        }
    }

    pub fn generate(&self, trial: u64) -> Result<(PointSet, Provenance)> {
        match self.kind {
            GeneratorKind::Uniform { n, d } => {
                Ok((sample_uniform(n, d, self.base_seed, trial)?, Provenance::default()))
            }
            GeneratorKind::Hard { n, d, r } => sample_hard(n, d, r, self.base_seed, trial),
            GeneratorKind::SingleBallHalf { d, r } => {
                sample_single_ball_half(d, r, self.base_seed, trial)
            }
            GeneratorKind::MultiBallHalf { n, d, r } => {
                sample_multi_ball_half(n, d, r, self.base_seed, trial)
            }
        }
    }
}
