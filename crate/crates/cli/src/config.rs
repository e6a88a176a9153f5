//! Experiment configuration: a single JSON document with the protocol,
//! the input generator, the distance threshold, trial/seed bookkeeping,
//! and the sweep axes.

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

pub const PROTOCOL_KINDS: &[&str] = &[
    "ball-covering",
    "universal",
    "ball-hashing-2",
    "subcube-splitting",
    "anchor-points",
];

pub const GENERATOR_KINDS: &[&str] = &["uniform", "hard", "single-ball-half", "multi-ball-half"];

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub protocol: ProtocolSpec,
    pub generator: GeneratorSpec,
    pub r: u32,
    pub trials: u64,
    pub base_seed: u64,
    pub sweep: SweepSpec,
    /// Materialize this many trials' tuples per sweep point as PointSet
    /// files A_0 … A_{p−1} (small d only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dump_draws: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolSpec {
    pub kind: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub d: Vec<u32>,
    pub n: Vec<u64>,
    pub p: Vec<u32>,
    /// Ball radius (ball-covering) or subcube dimension (splitting).
    /// Omitted: resolved per sweep point by the protocol's rule.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<u32>>,
    /// Target coverage for the ball covering. Omitted: 0.9.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub kind: String,
}

/// One coordinate of the sweep, before protocol-specific resolution.
#[derive(Clone, Copy, Debug)]
pub struct SweepPoint {
    pub index: usize,
    pub d: u32,
    pub n: u64,
    pub p: u32,
    pub k: Option<u32>,
    pub delta: Option<f64>,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> anyhow::Result<ExperimentConfig> {
        let config: ExperimentConfig =
            serde_json::from_str(text).context("config does not match the expected schema")?;
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> anyhow::Result<()> {
        if !PROTOCOL_KINDS.contains(&self.protocol.kind.as_str()) {
            bail!(
                "unknown protocol kind '{}' (known: {})",
                self.protocol.kind,
                PROTOCOL_KINDS.join(", ")
            );
        }
        if !GENERATOR_KINDS.contains(&self.generator.kind.as_str()) {
            bail!(
                "unknown generator kind '{}' (known: {})",
                self.generator.kind,
                GENERATOR_KINDS.join(", ")
            );
        }
        if self.r == 0 {
            bail!("distance threshold r must be at least 1");
        }
        Ok(())
    }

    /// Cartesian product of the sweep axes in deterministic nested order
    /// d → n → p → k → delta.
    pub fn sweep_points(&self) -> Vec<SweepPoint> {
        let ks: Vec<Option<u32>> = match &self.sweep.k {
            Some(list) => list.iter().map(|&v| Some(v)).collect(),
            None => vec![None],
        };
        let deltas: Vec<Option<f64>> = match &self.sweep.delta {
            Some(list) => list.iter().map(|&v| Some(v)).collect(),
            None => vec![None],
        };
        let mut points = Vec::new();
        let mut index = 0;
        for &d in &self.sweep.d {
            for &n in &self.sweep.n {
                for &p in &self.sweep.p {
                    for &k in &ks {
                        for &delta in &deltas {
                            points.push(SweepPoint {
                                index,
                                d,
                                n,
                                p,
                                k,
                                delta,
                            });
                            index += 1;
                        }
                    }
                }
            }
        }
        points
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "protocol": {"kind": "ball-covering"},
        "generator": {"kind": "uniform"},
        "r": 2,
        "trials": 5,
        "base_seed": 7,
        "sweep": {"d": [10, 12], "n": [256], "p": [4, 8]}
    }"#;

    #[test]
    fn parses_and_expands() {
        let cfg = ExperimentConfig::parse(MINIMAL).unwrap();
        let points = cfg.sweep_points();
        assert_eq!(points.len(), 4);
        assert_eq!(points[0].d, 10);
        assert_eq!(points[3].p, 8);
        assert!(points.iter().all(|pt| pt.k.is_none() && pt.delta.is_none()));
    }

    #[test]
    fn rejects_unknown_kinds_and_fields() {
        let bad = MINIMAL.replace("ball-covering", "mystery");
        assert!(ExperimentConfig::parse(&bad).is_err());
        let extra = MINIMAL.replace("\"r\": 2", "\"r\": 2, \"zzz\": 1");
        assert!(ExperimentConfig::parse(&extra).is_err());
    }

    #[test]
    fn empty_axes_mean_empty_sweep() {
        let cfg = ExperimentConfig::parse(
            &MINIMAL.replace("\"d\": [10, 12]", "\"d\": []"),
        )
        .unwrap();
        assert!(cfg.sweep_points().is_empty());
    }
}
