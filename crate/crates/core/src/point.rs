//! Points of the Hamming cube and deduplicated point sets.
//!
//! A point of `{0,1}^d` (d ≤ 64) is a packed bit word plus its dimension.
//! Coordinate 0 is the most significant of the `d` used bits, matching the
//! text format where a point is written as a `d`-character binary string,
//! most significant coordinate first.

use std::fmt;

use crate::error::{Error, Result};
use crate::rng::mask;

pub const MAX_DIM: u32 = 64;

/// Guard for operations that enumerate whole balls or cubes.
pub const ENUM_DIM_GUARD: u32 = 24;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BitPoint {
    bits: u64,
    dim: u32,
}

impl BitPoint {
    pub fn new(bits: u64, dim: u32) -> Result<BitPoint> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidDimension(dim));
        }
        if bits & !mask(dim) != 0 {
            return Err(Error::InvalidParameter(format!(
                "bits 0x{bits:x} exceed dimension {dim}"
            )));
        }
        Ok(BitPoint { bits, dim })
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Binary string, most significant coordinate first.
    pub fn to_binary_string(&self) -> String {
        (0..self.dim)
            .rev()
            .map(|i| if self.bits >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn from_binary_str(s: &str, dim: u32) -> Result<BitPoint> {
        if s.len() != dim as usize {
            return Err(Error::InvalidParameter(format!(
                "expected {dim} binary digits, got {}",
                s.len()
            )));
        }
        let mut bits = 0u64;
        for c in s.chars() {
            bits <<= 1;
            match c {
                '0' => {}
                '1' => bits |= 1,
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "invalid binary digit '{other}'"
                    )))
                }
            }
        }
        BitPoint::new(bits, dim)
    }
}

impl fmt::Display for BitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_binary_string())
    }
}

/// A deduplicated set of points of common dimension, stored sorted by
/// packed word value. The sorted order is the canonical order used for
/// all text output.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointSet {
    dim: u32,
    points: Vec<u64>,
}

impl PointSet {
    pub fn new(dim: u32, words: impl IntoIterator<Item = u64>) -> Result<PointSet> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidDimension(dim));
        }
        let m = mask(dim);
        let mut points: Vec<u64> = words.into_iter().collect();
        for &w in &points {
            if w & !m != 0 {
                return Err(Error::InvalidParameter(format!(
                    "word 0x{w:x} exceeds dimension {dim}"
                )));
            }
        }
        points.sort_unstable();
        points.dedup();
        Ok(PointSet { dim, points })
    }

    pub fn empty(dim: u32) -> Result<PointSet> {
        PointSet::new(dim, std::iter::empty())
    }

    /// All `2^dim` points; guarded to keep enumeration desk-scale.
    pub fn full_cube(dim: u32) -> Result<PointSet> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidDimension(dim));
        }
        if dim > ENUM_DIM_GUARD {
            return Err(Error::GuardExceeded {
                what: "full cube enumeration",
                limit: ENUM_DIM_GUARD as u64,
                actual: dim as u64,
            });
        }
        Ok(PointSet {
            dim,
            points: (0..1u64 << dim).collect(),
        })
    }

    pub(crate) fn from_sorted_unchecked(dim: u32, points: Vec<u64>) -> PointSet {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        PointSet { dim, points }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn words(&self) -> &[u64] {
        &self.points
    }

    pub fn contains_word(&self, w: u64) -> bool {
        self.points.binary_search(&w).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = BitPoint> + '_ {
        let dim = self.dim;
        self.points.iter().map(move |&bits| BitPoint { bits, dim })
    }

    pub fn point(&self, idx: usize) -> BitPoint {
        BitPoint {
            bits: self.points[idx],
            dim: self.dim,
        }
    }

    /// XOR-translate the whole set; translation is a cube automorphism so
    /// cardinality is preserved.
    pub fn translate(&self, t: u64) -> Result<PointSet> {
        if t & !mask(self.dim) != 0 {
            return Err(Error::InvalidParameter(format!(
                "translation word 0x{t:x} exceeds dimension {}",
                self.dim
            )));
        }
        PointSet::new(self.dim, self.points.iter().map(|&w| w ^ t))
    }

    /// Text format: first line `d=<dim>`, then one point per line as a
    /// binary string, most significant coordinate first, in canonical
    /// (sorted) order.
    pub fn render(&self) -> String {
        let mut out = format!("d={}\n", self.dim);
        for p in self.iter() {
            out.push_str(&p.to_binary_string());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<PointSet> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header line".into(),
        })?;
        let header = header.trim();
        let dim: u32 = header
            .strip_prefix("d=")
            .and_then(|v| v.parse().ok())
            .ok_or(Error::Parse {
                line: 1,
                msg: format!("expected 'd=<dim>', got '{header}'"),
            })?;
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Parse {
                line: 1,
                msg: format!("dimension {dim} outside 1..=64"),
            });
        }
        let mut words = Vec::new();
        for (idx, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let p = BitPoint::from_binary_str(line, dim).map_err(|e| Error::Parse {
                line: idx + 1,
                msg: e.to_string(),
            })?;
            words.push(p.bits());
        }
        let n = words.len();
        let set = PointSet::new(dim, words)?;
        if set.len() != n {
            return Err(Error::Parse {
                line: 1,
                msg: "duplicate points in input".into(),
            });
        }
        Ok(set)
    }
}

/// Dense membership bitmap over a whole cube, for O(1) lookups in edge
/// counting and pruning. Only sensible at enumeration scale.
#[derive(Clone)]
pub struct CubeBitset {
    dim: u32,
    words: Vec<u64>,
}

impl CubeBitset {
    pub fn new(dim: u32) -> Result<CubeBitset> {
        if dim == 0 || dim > 26 {
            return Err(Error::GuardExceeded {
                what: "cube bitset dimension",
                limit: 26,
                actual: dim as u64,
            });
        }
        let slots = 1usize << dim;
        Ok(CubeBitset {
            dim,
            words: vec![0; slots.div_ceil(64)],
        })
    }

    pub fn from_set(set: &PointSet) -> Result<CubeBitset> {
        let mut bs = CubeBitset::new(set.dim())?;
        for &w in set.words() {
            bs.insert(w);
        }
        Ok(bs)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    #[inline]
    pub fn insert(&mut self, w: u64) -> bool {
        let prev = self.words[(w >> 6) as usize] & (1u64 << (w & 63)) != 0;
        self.words[(w >> 6) as usize] |= 1u64 << (w & 63);
        !prev
    }

    #[inline]
    pub fn contains(&self, w: u64) -> bool {
        self.words[(w >> 6) as usize] & (1u64 << (w & 63)) != 0
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitpoint_validation() {
        assert!(BitPoint::new(0b1010, 4).is_ok());
        assert!(BitPoint::new(0b10100, 4).is_err());
        assert!(BitPoint::new(0, 0).is_err());
        assert!(BitPoint::new(0, 65).is_err());
        assert!(BitPoint::new(u64::MAX, 64).is_ok());
    }

    #[test]
    fn binary_string_msb_first() {
        let p = BitPoint::new(0b0011, 4).unwrap();
        assert_eq!(p.to_binary_string(), "0011");
        let q = BitPoint::from_binary_str("1000", 4).unwrap();
        assert_eq!(q.bits(), 0b1000);
    }

    #[test]
    fn pointset_dedups_and_sorts() {
        let s = PointSet::new(3, [5, 1, 5, 0]).unwrap();
        assert_eq!(s.words(), &[0, 1, 5]);
        assert!(s.contains_word(5));
        assert!(!s.contains_word(2));
    }

    #[test]
    fn text_roundtrip() {
        let s = PointSet::new(4, [0b0000, 0b1010, 0b0111]).unwrap();
        let text = s.render();
        assert_eq!(text, "d=4\n0000\n0111\n1010\n");
        let back = PointSet::parse(&text).unwrap();
        assert_eq!(back, s);

        let empty = PointSet::empty(6).unwrap();
        assert_eq!(PointSet::parse(&empty.render()).unwrap(), empty);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = PointSet::parse("d=3\n010\n01x\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other}"),
        }
        assert!(PointSet::parse("dim=3\n").is_err());
        assert!(PointSet::parse("d=3\n010\n010\n").is_err());
        assert!(PointSet::parse("d=3\n0101\n").is_err());
    }

    #[test]
    fn translate_preserves_cardinality() {
        let s = PointSet::new(4, [0, 1, 2, 9]).unwrap();
        let t = s.translate(0b1111).unwrap();
        assert_eq!(t.len(), s.len());
        assert!(t.contains_word(0b1111));
    }

    #[test]
    fn bitset_membership() {
        let s = PointSet::new(5, [0, 7, 31]).unwrap();
        let bs = CubeBitset::from_set(&s).unwrap();
        assert!(bs.contains(7));
        assert!(!bs.contains(8));
        assert_eq!(bs.count(), 3);
    }
}
