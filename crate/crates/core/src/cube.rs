//! Exact combinatorics of the Hamming cube: distances, balls, binomials,
//! edge counts of the similarity graphs, and the brute-force join oracle.
//!
//! Two edge conventions coexist, both exposed explicitly. Edges at
//! distance at most `r` include one self-loop per point; edges at distance
//! exactly `r` (r ≥ 1) never contain loops. Verification routines state
//! which convention they use.

use crate::error::{Error, Result};
use crate::point::{BitPoint, CubeBitset, PointSet, ENUM_DIM_GUARD};
use crate::ratio::Ratio;
use crate::report::{CheckResult, CheckStatus};

/// Pairwise-scan guard for edge counting.
pub const PAIR_SCAN_GUARD: u64 = 1 << 20;

/// Quadratic-scan guard for the join oracle.
pub const JOIN_GUARD: u64 = 1 << 16;

#[inline]
pub(crate) fn dist_words(a: u64, b: u64) -> u32 {
    (a ^ b).count_ones()
}

/// Hamming distance between two points of equal dimension.
pub fn hamming_distance(u: BitPoint, v: BitPoint) -> Result<u32> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch(u.dim(), v.dim()));
    }
    Ok(dist_words(u.bits(), v.bits()))
}

/// Exact binomial coefficient C(n, k) for n ≤ 64.
pub fn binomial(n: u32, k: u32) -> Result<u128> {
    if n > 64 {
        return Err(Error::InvalidParameter(format!("binomial n={n} > 64")));
    }
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c
            .checked_mul((n - i) as u128)
            .ok_or(Error::Overflow("binomial"))?
            / (i as u128 + 1);
    }
    Ok(c)
}

/// Exact ball volume B(d, k) = Σ_{i ≤ min(k, d)} C(d, i). The degenerate
/// d = 0 cube has volume 1 at every radius.
pub fn ball_volume(d: u32, k: u32) -> Result<u128> {
    if d > 64 {
        return Err(Error::InvalidDimension(d));
    }
    let mut sum: u128 = 0;
    for i in 0..=k.min(d) {
        sum = sum
            .checked_add(binomial(d, i)?)
            .ok_or(Error::Overflow("ball volume"))?;
    }
    Ok(sum)
}

/// Falling factorial n·(n−1)···(n−r+1).
pub fn falling_factorial(n: u64, r: u32) -> Result<u128> {
    let mut out: u128 = 1;
    for i in 0..r as u64 {
        let term = (n as u128)
            .checked_sub(i as u128)
            .ok_or(Error::InvalidParameter(format!("falling factorial {n}^({r})")))?;
        out = out
            .checked_mul(term)
            .ok_or(Error::Overflow("falling factorial"))?;
    }
    Ok(out)
}

/// Checked integer power.
pub fn checked_pow(base: u128, exp: u32) -> Result<u128> {
    let mut out: u128 = 1;
    for _ in 0..exp {
        out = out.checked_mul(base).ok_or(Error::Overflow("power"))?;
    }
    Ok(out)
}

/// Visit every word at distance ≤ k from `center` in dimension `dim`.
/// Enumeration is by weight class using Gosper's hack; `dim ≤ 63`.
pub(crate) fn for_each_ball_word(dim: u32, center: u64, k: u32, mut f: impl FnMut(u64)) {
    debug_assert!((1..64).contains(&dim) && k <= dim);
    f(center);
    let limit = crate::rng::mask(dim);
    for w in 1..=k {
        let mut m: u64 = (1u64 << w) - 1;
        loop {
            f(center ^ m);
            let c = m & m.wrapping_neg();
            let r = m + c;
            if r > limit {
                break;
            }
            m = r | (((m ^ r) >> 2) / c);
        }
    }
}

/// All points at distance ≤ k from the center, as an explicit set.
pub fn enumerate_ball(center: BitPoint, k: u32) -> Result<PointSet> {
    let d = center.dim();
    if d > ENUM_DIM_GUARD {
        return Err(Error::GuardExceeded {
            what: "ball enumeration dimension",
            limit: ENUM_DIM_GUARD as u64,
            actual: d as u64,
        });
    }
    if k > d {
        return Err(Error::InvalidParameter(format!("ball radius {k} > d={d}")));
    }
    let mut words = Vec::with_capacity(ball_volume(d, k)? as usize);
    for_each_ball_word(d, center.bits(), k, |w| words.push(w));
    words.sort_unstable();
    Ok(PointSet::from_sorted_unchecked(d, words))
}

fn check_edge_args(a: &PointSet, r: u32) -> Result<()> {
    if r > a.dim() {
        return Err(Error::InvalidParameter(format!(
            "distance threshold {r} > d={}",
            a.dim()
        )));
    }
    if a.len() as u64 > PAIR_SCAN_GUARD {
        return Err(Error::GuardExceeded {
            what: "edge count set size",
            limit: PAIR_SCAN_GUARD,
            actual: a.len() as u64,
        });
    }
    Ok(())
}

/// Count unordered distinct pairs of `a` at distance in `[lo, hi]`.
/// Picks a ball walk over a membership bitmap when the ball is smaller
/// than the set, otherwise a pairwise scan.
fn distinct_pairs_between(a: &PointSet, lo: u32, hi: u32) -> Result<u128> {
    debug_assert!(lo >= 1 && lo <= hi);
    let d = a.dim();
    let n = a.len() as u128;
    let ball = ball_volume(d, hi.min(d))?;
    if d <= 26 && ball < n {
        let bits = CubeBitset::from_set(a)?;
        let mut count: u128 = 0;
        for &x in a.words() {
            for_each_ball_word(d, x, hi, |y| {
                if y > x && dist_words(x, y) >= lo && bits.contains(y) {
                    count += 1;
                }
            });
        }
        Ok(count)
    } else {
        let words = a.words();
        let mut count: u128 = 0;
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                let s = dist_words(words[i], words[j]);
                if s >= lo && s <= hi {
                    count += 1;
                }
            }
        }
        Ok(count)
    }
}

/// |E_≤r(A)|: unordered pairs at distance ≤ r, one self-loop per point.
pub fn edge_count_at_most(a: &PointSet, r: u32) -> Result<u128> {
    check_edge_args(a, r)?;
    let loops = a.len() as u128;
    if r == 0 {
        return Ok(loops);
    }
    Ok(loops + distinct_pairs_between(a, 1, r)?)
}

/// |E_r(A)|: unordered pairs at distance exactly r ≥ 1; never loops.
pub fn edge_count_exact(a: &PointSet, r: u32) -> Result<u128> {
    if r == 0 {
        return Err(Error::InvalidParameter("exact-distance edges need r ≥ 1".into()));
    }
    check_edge_args(a, r)?;
    distinct_pairs_between(a, r, r)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DensityMode {
    AtMost,
    Exact,
}

/// Average edge density |E(A)| / |A| as an exact rational.
pub fn edge_density(a: &PointSet, r: u32, mode: DensityMode) -> Result<Ratio> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let count = match mode {
        DensityMode::AtMost => edge_count_at_most(a, r)?,
        DensityMode::Exact => edge_count_exact(a, r)?,
    };
    Ratio::new(count, a.len() as u128)
}

/// Loop-inclusive edge count of the whole cube: 2^{d−1}(B(d,r)−1) + 2^d.
pub fn cube_edge_count_at_most(d: u32, r: u32) -> Result<u128> {
    let b = ball_volume(d, r)?;
    let half = checked_pow(2, d - 1)?;
    let pairs = (b - 1).checked_mul(half).ok_or(Error::Overflow("cube edges"))?;
    pairs
        .checked_add(checked_pow(2, d)?)
        .ok_or(Error::Overflow("cube edges"))
}

/// Distinct pairs of the whole cube at distance ≤ r: 2^{d−1}(B(d,r)−1).
pub fn cube_distinct_pairs_at_most(d: u32, r: u32) -> Result<u128> {
    let b = ball_volume(d, r)?;
    (b - 1)
        .checked_mul(checked_pow(2, d - 1)?)
        .ok_or(Error::Overflow("cube pairs"))
}

/// Edges of the whole cube at distance exactly r: C(d,r)·2^{d−1}.
pub fn cube_edge_count_exact(d: u32, r: u32) -> Result<u128> {
    binomial(d, r)?
        .checked_mul(checked_pow(2, d - 1)?)
        .ok_or(Error::Overflow("cube exact edges"))
}

/// |Ball(0,k) ∩ Ball(x,r)| for a point x of weight w, by flip counting:
/// clear a of the w ones and set b of the d−w zeros with a+b ≤ r and
/// resulting weight w−a+b ≤ k.
pub fn ball_intersection_by_weight(d: u32, k: u32, r: u32, w: u32) -> Result<u128> {
    let mut total: u128 = 0;
    for a in 0..=r.min(w) {
        for b in 0..=(r - a).min(d - w) {
            if w - a + b <= k {
                let term = binomial(w, a)?
                    .checked_mul(binomial(d - w, b)?)
                    .ok_or(Error::Overflow("ball intersection"))?;
                total = total
                    .checked_add(term)
                    .ok_or(Error::Overflow("ball intersection"))?;
            }
        }
    }
    Ok(total)
}

/// |Ball(u,ra) ∩ Ball(v,rb)| where dist(u,v) = s, independent of the
/// choice of u, v.
pub fn ball_intersection_volume(d: u32, ra: u32, rb: u32, s: u32) -> Result<u128> {
    if s > d {
        return Err(Error::InvalidParameter(format!("distance {s} > d={d}")));
    }
    let mut total: u128 = 0;
    for a in 0..=s {
        for c in 0..=(d - s) {
            if a + c <= ra && (s - a) + c <= rb {
                let term = binomial(s, a)?
                    .checked_mul(binomial(d - s, c)?)
                    .ok_or(Error::Overflow("ball intersection"))?;
                total = total
                    .checked_add(term)
                    .ok_or(Error::Overflow("ball intersection"))?;
            }
        }
    }
    Ok(total)
}

/// Loop-inclusive |E_≤r(Ball(0,k))| by per-weight degree summation;
/// exact for any d ≤ 64 without enumerating the ball.
pub fn ball_edge_count_at_most(d: u32, k: u32, r: u32) -> Result<u128> {
    if d == 0 || d > 64 {
        return Err(Error::InvalidDimension(d));
    }
    if k > d || r > d {
        return Err(Error::InvalidParameter(format!(
            "ball edge count: k={k}, r={r} must be ≤ d={d}"
        )));
    }
    let volume = ball_volume(d, k)?;
    let mut degree_sum: u128 = 0;
    for w in 0..=k {
        let inter = ball_intersection_by_weight(d, k, r, w)?;
        let term = binomial(d, w)?
            .checked_mul(inter - 1)
            .ok_or(Error::Overflow("ball edge count"))?;
        degree_sum = degree_sum
            .checked_add(term)
            .ok_or(Error::Overflow("ball edge count"))?;
    }
    debug_assert!(degree_sum.is_multiple_of(2));
    volume
        .checked_add(degree_sum / 2)
        .ok_or(Error::Overflow("ball edge count"))
}

/// Index pairs (i, j), i < j, of points of `s` at distance ≤ r, in
/// canonical (lexicographic by packed word) order.
pub fn join_pair_indices(s: &PointSet, r: u32) -> Result<Vec<(u32, u32)>> {
    if s.len() as u64 > JOIN_GUARD {
        return Err(Error::GuardExceeded {
            what: "join set size",
            limit: JOIN_GUARD,
            actual: s.len() as u64,
        });
    }
    if r > s.dim() {
        return Err(Error::InvalidParameter(format!(
            "distance threshold {r} > d={}",
            s.dim()
        )));
    }
    let words = s.words();
    let mut pairs = Vec::new();
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            if dist_words(words[i], words[j]) <= r {
                pairs.push((i as u32, j as u32));
            }
        }
    }
    Ok(pairs)
}

/// All distinct pairs of `s` at distance ≤ r. This is the correctness
/// oracle every protocol is judged against.
pub fn brute_force_join(s: &PointSet, r: u32) -> Result<Vec<(BitPoint, BitPoint)>> {
    Ok(join_pair_indices(s, r)?
        .into_iter()
        .map(|(i, j)| (s.point(i as usize), s.point(j as usize)))
        .collect())
}

/// Exact check of the ball-ratio bound
/// B(d,R)/B(d,R−r) ≤ (d+1)·d^{r−1}/R^{(r)} for r < R ≤ (d+1)/2,
/// by integer cross-multiplication.
pub fn ball_ratio_check(d: u32, big_r: u32, r: u32) -> Result<CheckResult> {
    if r == 0 || r >= big_r || 2 * big_r > d + 1 {
        return Err(Error::InvalidParameter(format!(
            "ball ratio check needs 1 ≤ r < R ≤ (d+1)/2, got d={d}, R={big_r}, r={r}"
        )));
    }
    let lhs = ball_volume(d, big_r)?
        .checked_mul(falling_factorial(big_r as u64, r)?)
        .ok_or(Error::Overflow("ball ratio lhs"))?;
    let rhs = ball_volume(d, big_r - r)?
        .checked_mul((d + 1) as u128)
        .ok_or(Error::Overflow("ball ratio rhs"))?
        .checked_mul(checked_pow(d as u128, r - 1)?)
        .ok_or(Error::Overflow("ball ratio rhs"))?;
    let status = if lhs <= rhs {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    Ok(CheckResult::new(
        "ball-ratio",
        format!("d={d} R={big_r} r={r}"),
        status,
        format!("B(d,R)*R^({r})={lhs}"),
        format!("B(d,R-r)*(d+1)*d^{}={rhs}", r - 1),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn pt(bits: u64, dim: u32) -> BitPoint {
        BitPoint::new(bits, dim).unwrap()
    }

    /// Independent coordinate-by-coordinate distance oracle.
    fn dist_oracle(a: u64, b: u64, d: u32) -> u32 {
        (0..d).filter(|&i| (a >> i) & 1 != (b >> i) & 1).count() as u32
    }

    /// Independent pairwise-scan edge oracle.
    fn pair_scan(a: &PointSet, r: u32, exact: bool) -> u128 {
        let w = a.words();
        let mut count = 0u128;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                let s = dist_words(w[i], w[j]);
                if (exact && s == r) || (!exact && s <= r) {
                    count += 1;
                }
            }
        }
        if exact {
            count
        } else {
            count + w.len() as u128
        }
    }

    #[test]
    fn hamming_identity_and_complement() {
        assert_eq!(hamming_distance(pt(0, 4), pt(0, 4)).unwrap(), 0);
        assert_eq!(hamming_distance(pt(0b0101, 4), pt(0b1010, 4)).unwrap(), 4);
        assert!(hamming_distance(pt(0, 4), pt(0, 5)).is_err());
    }

    #[test]
    fn hamming_matches_coordinate_oracle() {
        let mut rng = SplitMix64::new(0x5eed);
        for _ in 0..1000 {
            let a = rng.next_point(32);
            let b = rng.next_point(32);
            assert_eq!(
                hamming_distance(pt(a, 32), pt(b, 32)).unwrap(),
                dist_oracle(a, b, 32)
            );
        }
    }

    #[test]
    fn ball_volume_examples() {
        for d in 1..=64 {
            assert_eq!(ball_volume(d, 0).unwrap(), 1);
        }
        assert_eq!(ball_volume(3, 1).unwrap(), 4);
        assert_eq!(ball_volume(10, 3).unwrap(), 176); // 1+10+45+120
        assert_eq!(ball_volume(10, 10).unwrap(), 1 << 10);
        assert_eq!(ball_volume(64, 64).unwrap(), 1u128 << 64);
    }

    #[test]
    fn ball_volume_matches_pascal_triangle() {
        // Pascal-triangle oracle, no multiplication involved.
        let mut row = vec![1u128];
        for d in 1..=30u32 {
            let mut next = vec![1u128; d as usize + 1];
            for i in 1..d as usize {
                next[i] = row[i - 1] + row[i];
            }
            row = next;
            for k in 0..=d {
                let expect: u128 = row[..=k as usize].iter().sum();
                assert_eq!(ball_volume(d, k).unwrap(), expect, "B({d},{k})");
            }
        }
    }

    #[test]
    fn enumerate_ball_examples() {
        let ball = enumerate_ball(pt(0, 3), 1).unwrap();
        assert_eq!(ball.words(), &[0b000, 0b001, 0b010, 0b100]);

        let all = enumerate_ball(pt(0b1011, 4), 4).unwrap();
        assert_eq!(all.len(), 16);

        let b2 = enumerate_ball(pt(0, 4), 2).unwrap();
        assert_eq!(b2.len() as u128, ball_volume(4, 2).unwrap());
        assert_eq!(b2.len(), 11);
        // Filter-by-distance oracle over the full cube.
        let oracle: Vec<u64> = (0..16u64).filter(|&w| w.count_ones() <= 2).collect();
        assert_eq!(b2.words(), &oracle[..]);
    }

    #[test]
    fn enumerate_ball_guard() {
        let center = BitPoint::new(0, 25).unwrap();
        assert!(enumerate_ball(center, 1).is_err());
    }

    #[test]
    fn edge_count_examples() {
        let single = PointSet::new(6, [9]).unwrap();
        assert_eq!(edge_count_at_most(&single, 3).unwrap(), 1);
        assert_eq!(edge_count_exact(&single, 1).unwrap(), 0);

        let ball = enumerate_ball(pt(0, 4), 1).unwrap();
        assert_eq!(edge_count_at_most(&ball, 1).unwrap(), 9); // 4 pairs + 5 loops

        let cube3 = PointSet::full_cube(3).unwrap();
        assert_eq!(edge_count_at_most(&cube3, 1).unwrap(), 20); // 12 edges + 8 loops
        assert_eq!(edge_count_exact(&cube3, 1).unwrap(), 12);

        let tri = PointSet::new(3, [0b001, 0b010, 0b100]).unwrap();
        assert_eq!(edge_count_exact(&tri, 2).unwrap(), 3);
    }

    #[test]
    fn edge_count_matches_pair_scan() {
        let mut rng = SplitMix64::new(77);
        for d in [4u32, 6, 9] {
            for _ in 0..5 {
                let n = 1 + rng.next_below(1 << d.min(7)) as usize;
                let words: Vec<u64> = (0..n).map(|_| rng.next_point(d)).collect();
                let a = PointSet::new(d, words).unwrap();
                for r in 1..=d.min(4) {
                    assert_eq!(edge_count_at_most(&a, r).unwrap(), pair_scan(&a, r, false));
                    assert_eq!(edge_count_exact(&a, r).unwrap(), pair_scan(&a, r, true));
                }
            }
        }
    }

    #[test]
    fn cube_closed_forms() {
        for d in 2..=8u32 {
            let cube = PointSet::full_cube(d).unwrap();
            for r in 1..=d.min(3) {
                assert_eq!(
                    edge_count_at_most(&cube, r).unwrap(),
                    cube_edge_count_at_most(d, r).unwrap()
                );
                assert_eq!(
                    edge_count_exact(&cube, r).unwrap(),
                    cube_edge_count_exact(d, r).unwrap()
                );
                assert_eq!(
                    cube_distinct_pairs_at_most(d, r).unwrap() + (1u128 << d),
                    cube_edge_count_at_most(d, r).unwrap()
                );
            }
        }
    }

    #[test]
    fn ball_edge_count_matches_enumeration() {
        for d in 3..=10u32 {
            for k in 1..=d.min(5) {
                let ball = enumerate_ball(pt(0, d), k).unwrap();
                for r in 1..=d.min(4) {
                    assert_eq!(
                        ball_edge_count_at_most(d, k, r).unwrap(),
                        edge_count_at_most(&ball, r).unwrap(),
                        "d={d} k={k} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn density_examples() {
        let single = PointSet::new(5, [3]).unwrap();
        let d1 = edge_density(&single, 2, DensityMode::AtMost).unwrap();
        assert_eq!((d1.num(), d1.den()), (1, 1));

        let cube3 = PointSet::full_cube(3).unwrap();
        let d2 = edge_density(&cube3, 1, DensityMode::Exact).unwrap();
        assert_eq!((d2.num(), d2.den()), (3, 2));

        let ball = enumerate_ball(pt(0, 6), 2).unwrap();
        assert_eq!(ball.len(), 22);
        let d3 = edge_density(&ball, 2, DensityMode::AtMost).unwrap();
        let count = edge_count_at_most(&ball, 2).unwrap();
        assert_eq!(
            d3.checked_cmp(&Ratio::new(count, 22).unwrap()).unwrap(),
            std::cmp::Ordering::Equal
        );

        assert!(edge_density(&PointSet::empty(4).unwrap(), 1, DensityMode::AtMost).is_err());
    }

    #[test]
    fn join_examples() {
        let single = PointSet::new(8, [42]).unwrap();
        assert!(brute_force_join(&single, 8).unwrap().is_empty());

        let ball = enumerate_ball(pt(0, 3), 1).unwrap();
        assert_eq!(brute_force_join(&ball, 2).unwrap().len(), 6); // C(4,2)

        let anti = PointSet::new(8, [0, 0xFF]).unwrap();
        assert!(brute_force_join(&anti, 7).unwrap().is_empty());
        assert_eq!(brute_force_join(&anti, 8).unwrap().len(), 1);
    }

    #[test]
    fn join_is_canonically_ordered_and_correct() {
        let mut rng = SplitMix64::new(3);
        let words: Vec<u64> = (0..60).map(|_| rng.next_point(7)).collect();
        let s = PointSet::new(7, words).unwrap();
        let pairs = brute_force_join(&s, 2).unwrap();
        // Ordered, deduplicated, and complete against a rescan.
        let keys: Vec<(u64, u64)> = pairs.iter().map(|(a, b)| (a.bits(), b.bits())).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        let mut expect = 0;
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                let d = dist_words(s.words()[i], s.words()[j]);
                if d <= 2 {
                    expect += 1;
                    assert!(keys.contains(&(s.words()[i], s.words()[j])));
                }
            }
        }
        assert_eq!(pairs.len(), expect);
        for (a, b) in &pairs {
            assert!(hamming_distance(*a, *b).unwrap() <= 2);
        }
    }

    #[test]
    fn ball_ratio_examples() {
        let c = ball_ratio_check(9, 5, 1).unwrap();
        assert_eq!(c.status, CheckStatus::Pass);
        // B(9,5) = 382, B(9,4) = 256: lhs 382*5 = 1910, rhs 256*10 = 2560.
        assert!(c.lhs.contains("1910"), "{}", c.lhs);
        assert!(c.rhs.contains("2560"), "{}", c.rhs);

        assert_eq!(ball_ratio_check(41, 21, 1).unwrap().status, CheckStatus::Pass);
        assert_eq!(ball_ratio_check(20, 8, 4).unwrap().status, CheckStatus::Pass);
        assert!(ball_ratio_check(9, 5, 5).is_err());
        assert!(ball_ratio_check(9, 6, 1).is_err());
    }

    #[test]
    fn ball_intersection_volume_matches_enumeration() {
        for d in 3..=8u32 {
            for radius in 1..=d / 2 {
                for s in 0..=d {
                    let u = 0u64;
                    let v = crate::rng::mask(s) & crate::rng::mask(d);
                    let bu = enumerate_ball(pt(u, d), radius).unwrap();
                    let bv = enumerate_ball(pt(v, d), radius).unwrap();
                    let inter = bu.words().iter().filter(|w| bv.contains_word(**w)).count();
                    assert_eq!(
                        ball_intersection_volume(d, radius, radius, s).unwrap(),
                        inter as u128,
                        "d={d} radius={radius} s={s}"
                    );
                }
            }
        }
    }

    /// Pair-inclusion probability under a sub-sampled radius-R ball is
    /// proportional to |Ball(u,R) ∩ Ball(v,R)|; distance classes 1 and 2
    /// share that volume, which is what makes the r ≤ 2 uniform-sampling
    /// checks exact.
    #[test]
    fn distance_classes_one_and_two_share_intersection_volume() {
        for d in 4..=14u32 {
            for big_r in [2u32, 4, 6] {
                if big_r >= d {
                    continue;
                }
                assert_eq!(
                    ball_intersection_volume(d, big_r, big_r, 1).unwrap(),
                    ball_intersection_volume(d, big_r, big_r, 2).unwrap(),
                    "d={d} R={big_r}"
                );
            }
        }
    }
}
