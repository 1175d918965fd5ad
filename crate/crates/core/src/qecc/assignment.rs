use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::check_distance;
use crate::error::{Error, Result};
use crate::fault::SensitivityProfile;
use crate::sim::Circuit;

/// From `start_timestep` onward the qubit is protected at `distance`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub start_timestep: u64,
    pub distance: u32,
}

impl Segment {
    pub fn new(start_timestep: u64, distance: u32) -> Self {
        Self { start_timestep, distance }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AssignmentRepr")]
pub struct CodeAssignment {
    label: String,
    schedules: Vec<Vec<Segment>>,
}

#[derive(Deserialize)]
struct AssignmentRepr {
    label: String,
    schedules: Vec<Vec<Segment>>,
}

impl TryFrom<AssignmentRepr> for CodeAssignment {
    type Error = Error;
    fn try_from(r: AssignmentRepr) -> Result<Self> {
        CodeAssignment::new(r.label, r.schedules)
    }
}

impl CodeAssignment {
    /// Every qubit's schedule must start at timestep 0, with strictly
    /// increasing segment starts and odd distances ≥ 3 that never decrease.
    pub fn new(label: impl Into<String>, schedules: Vec<Vec<Segment>>) -> Result<Self> {
        for (q, segs) in schedules.iter().enumerate() {
            let first = segs.first().ok_or_else(|| {
                Error::Assignment(format!("qubit {q} has an empty distance schedule"))
            })?;
            if first.start_timestep != 0 {
                return Err(Error::Assignment(format!(
                    "qubit {q} schedule starts at timestep {} instead of 0",
                    first.start_timestep
                )));
            }
            for s in segs {
                check_distance(s.distance).map_err(|e| Error::Assignment(format!("qubit {q}: {e}")))?;
            }
            for w in segs.windows(2) {
                if w[1].start_timestep <= w[0].start_timestep {
                    return Err(Error::Assignment(format!(
                        "qubit {q} segment starts are not increasing"
                    )));
                }
                if w[1].distance < w[0].distance {
                    return Err(Error::Assignment(format!(
                        "qubit {q} distance decreases from {} to {}",
                        w[0].distance, w[1].distance
                    )));
                }
            }
        }
        Ok(Self { label: label.into(), schedules })
    }

    pub fn uniform(num_qubits: usize, d: u32) -> Result<Self> {
        check_distance(d)?;
        Self::new(DistanceConfig::Uniform(d).label(), vec![vec![Segment::new(0, d)]; num_qubits])
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn num_qubits(&self) -> usize {
        self.schedules.len()
    }

    pub fn schedule(&self, qubit: usize) -> &[Segment] {
        &self.schedules[qubit]
    }

    pub fn distance_at(&self, qubit: usize, timestep: u64) -> Result<u32> {
        let segs = self.schedules.get(qubit).ok_or_else(|| {
            Error::Assignment(format!("qubit {qubit} is not covered by assignment {}", self.label))
        })?;
        let idx = segs.partition_point(|s| s.start_timestep <= timestep);
        // Schedules start at 0, so idx ≥ 1 for every timestep.
        Ok(segs[idx - 1].distance)
    }

    /// Sum over every distance change of the larger of the two distances.
    pub fn resize_cost(&self) -> u64 {
        self.schedules
            .iter()
            .flat_map(|segs| segs.windows(2))
            .filter(|w| w[0].distance != w[1].distance)
            .map(|w| u64::from(w[0].distance.max(w[1].distance)))
            .sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("assignment serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// A uniform code distance, or a low/high pair escalated per qubit from a
/// sensitivity profile. Written as `3` or `3,5`; labels are `d=3`, `d=3,5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistanceConfig {
    Uniform(u32),
    TwoDistance(u32, u32),
}

impl DistanceConfig {
    pub fn label(&self) -> String {
        format!("d={self}")
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            DistanceConfig::Uniform(d) => check_distance(d),
            DistanceConfig::TwoDistance(lo, hi) => {
                check_distance(lo)?;
                check_distance(hi)?;
                if lo >= hi {
                    return Err(Error::InvalidArgument(format!(
                        "two-distance config needs low < high, got {lo},{hi}"
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn assignment(
        &self,
        profile: &SensitivityProfile,
        circuit: &Circuit,
        tau: f64,
    ) -> Result<CodeAssignment> {
        match *self {
            DistanceConfig::Uniform(d) => CodeAssignment::uniform(circuit.num_qubits(), d),
            DistanceConfig::TwoDistance(lo, hi) => assign_two_distance(profile, circuit, lo, hi, tau),
        }
    }
}

impl fmt::Display for DistanceConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceConfig::Uniform(d) => write!(f, "{d}"),
            DistanceConfig::TwoDistance(lo, hi) => write!(f, "{lo},{hi}"),
        }
    }
}

impl FromStr for DistanceConfig {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().strip_prefix("d=").unwrap_or(s.trim());
        let parse = |t: &str| {
            t.trim().parse::<u32>().map_err(|_| {
                Error::InvalidArgument(format!("bad distance config {s:?}"))
            })
        };
        let cfg = match body.split_once(',') {
            None => DistanceConfig::Uniform(parse(body)?),
            Some((lo, hi)) => DistanceConfig::TwoDistance(parse(lo)?, parse(hi)?),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl Serialize for DistanceConfig {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DistanceConfig {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Each qubit runs at `d_low` until the first timestep where one of its cells
/// has mean relative PST strictly below `tau`, and at `d_high` from there on.
/// A qubit whose very first gate is already sensitive starts at `d_high`.
pub fn assign_two_distance(
    profile: &SensitivityProfile,
    circuit: &Circuit,
    d_low: u32,
    d_high: u32,
    tau: f64,
) -> Result<CodeAssignment> {
    let config = DistanceConfig::TwoDistance(d_low, d_high);
    config.validate()?;
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::InvalidArgument(format!("tau must lie in [0, 1], got {tau}")));
    }
    profile.check_circuit(circuit)?;
    let schedules = (0..circuit.num_qubits())
        .map(|q| {
            let first_gate = circuit
                .ops()
                .iter()
                .find(|op| op.qubits.contains(&q))
                .map(|op| op.timestep);
            let escalation = profile
                .qubit_cells(q)
                .filter(|c| c.mean_relative_pst < tau)
                .map(|c| c.timestep)
                .min();
            match (escalation, first_gate) {
                (None, _) => vec![Segment::new(0, d_low)],
                (Some(t), Some(first)) if t <= first => vec![Segment::new(0, d_high)],
                (Some(0), None) => vec![Segment::new(0, d_high)],
                (Some(t), _) => vec![Segment::new(0, d_low), Segment::new(t, d_high)],
            }
        })
        .collect();
    CodeAssignment::new(config.label(), schedules)
}
