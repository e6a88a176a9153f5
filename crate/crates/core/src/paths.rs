//! Counting directed step-r paths whose distance from the start point
//! grows by at least r−2b per step.
//!
//! A path is a sequence (v_0, …, v_{R/r}) with dist(v_{j−1}, v_j) = r and
//! dist(v_0, v_j) ≥ j·(r−2b) for every j. With b = 0 these are exactly the
//! shortest paths in the distance-r graph; growing b admits steps that
//! spend up to b coordinate flips backtracking.

use crate::cube::dist_words;
use crate::error::{Error, Result};
use crate::point::PointSet;

/// Enumeration guards.
pub const PATH_SET_GUARD: u64 = 1 << 12;
pub const PATH_STEPS_GUARD: u32 = 4;

#[derive(Clone, Copy, Debug)]
pub struct PathCount {
    pub big_r: u32,
    pub r: u32,
    pub b: u32,
    /// Number of directed paths with every vertex in the set.
    pub count: u128,
}

pub(crate) fn validate_path_args(big_r: u32, r: u32, b: u32) -> Result<()> {
    if r == 0 || big_r == 0 || !big_r.is_multiple_of(r) {
        return Err(Error::InvalidParameter(format!(
            "path counting needs r ≥ 1 dividing R, got R={big_r}, r={r}"
        )));
    }
    if b > r / 2 {
        return Err(Error::InvalidParameter(format!(
            "slack b={b} above ⌊r/2⌋ = {}",
            r / 2
        )));
    }
    Ok(())
}

/// Exact count of (R, b)-paths inside `a`, by per-start dynamic
/// programming over the distance-r adjacency of `a`.
pub fn count_rb_paths(a: &PointSet, big_r: u32, r: u32, b: u32) -> Result<PathCount> {
    validate_path_args(big_r, r, b)?;
    let steps = big_r / r;
    if steps > PATH_STEPS_GUARD {
        return Err(Error::GuardExceeded {
            what: "path length R/r",
            limit: PATH_STEPS_GUARD as u64,
            actual: steps as u64,
        });
    }
    if a.len() as u64 > PATH_SET_GUARD {
        return Err(Error::GuardExceeded {
            what: "path counting set size",
            limit: PATH_SET_GUARD,
            actual: a.len() as u64,
        });
    }
    let words = a.words();
    let n = words.len();
    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if dist_words(words[i], words[j]) == r {
                adjacency[i].push(j as u32);
                adjacency[j].push(i as u32);
            }
        }
    }
    let min_step = r.saturating_sub(2 * b);
    let mut total: u128 = 0;
    let mut cur = vec![0u128; n];
    let mut next = vec![0u128; n];
    for start in 0..n {
        if adjacency[start].is_empty() {
            continue;
        }
        cur.iter_mut().for_each(|c| *c = 0);
        cur[start] = 1;
        for j in 1..=steps {
            next.iter_mut().for_each(|c| *c = 0);
            let floor = (j * min_step) as u64;
            for u in 0..n {
                if cur[u] == 0 {
                    continue;
                }
                for &v in &adjacency[u] {
                    let v = v as usize;
                    if (dist_words(words[start], words[v]) as u64) >= floor {
                        next[v] = next[v]
                            .checked_add(cur[u])
                            .ok_or(Error::Overflow("path count"))?;
                    }
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        for &c in &cur {
            total = total.checked_add(c).ok_or(Error::Overflow("path count"))?;
        }
    }
    Ok(PathCount {
        big_r,
        r,
        b,
        count: total,
    })
}
