//! Source problems of the hardness reductions and their exact solvers.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::logic::{check_structure_type, Structure, StructureType};
use crate::modification::next_combination;
use crate::solvers::{Limits, Meter};

fn digest_of(value: &Value) -> String {
    hex::encode(Sha256::digest(value.to_string().as_bytes()))
}

/// Set-Cover in incidence form: a bipartite graph between sets and elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetCoverInstance {
    pub sets: Vec<String>,
    pub universe: Vec<String>,
    pub edges: Vec<(String, String)>,
    pub k: usize,
}

impl SetCoverInstance {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInstance(msg));
        if self.sets.is_empty() {
            return bad("at least one set is required".into());
        }
        let mut seen = HashSet::new();
        for id in self.sets.iter().chain(&self.universe) {
            if !seen.insert(id.as_str()) {
                return bad(format!("duplicate id `{id}`"));
            }
        }
        for (s, u) in &self.edges {
            if !self.sets.contains(s) {
                return bad(format!("edge references unknown set `{s}`"));
            }
            if !self.universe.contains(u) {
                return bad(format!("edge references unknown element `{u}`"));
            }
        }
        Ok(())
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let i: SetCoverInstance = serde_json::from_value(value.clone())?;
        i.validate()?;
        Ok(i)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }

    /// Incidences as `(set index, element index)`, deduplicated and sorted.
    pub fn incidences(&self) -> Vec<(usize, usize)> {
        let index =
            |list: &[String], id: &str| list.iter().position(|x| x == id).expect("validated");
        let mut out: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|(s, u)| (index(&self.sets, s), index(&self.universe, u)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn covers(&self, chosen: &[usize]) -> bool {
        let inc = self.incidences();
        (0..self.universe.len()).all(|u| inc.iter().any(|&(s, v)| v == u && chosen.contains(&s)))
    }

    /// A smallest cover of size at most `k`, if any.
    pub fn solve(&self, limits: Limits) -> Result<Option<Vec<usize>>> {
        let mut meter = Meter::new(limits);
        let n = self.sets.len();
        for size in 0..=self.k.min(n) {
            let mut chosen: Vec<usize> = (0..size).collect();
            loop {
                meter.tick()?;
                if self.covers(&chosen) {
                    return Ok(Some(chosen));
                }
                if !next_combination(&mut chosen, n) {
                    break;
                }
            }
        }
        Ok(None)
    }
}

/// Vertex-Cover on a basic graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCoverInstance {
    pub graph: Structure,
    pub k: usize,
}

impl VertexCoverInstance {
    pub fn new(graph: Structure, k: usize) -> Result<Self> {
        if !graph.vocabulary().is_graph() || !check_structure_type(&graph, StructureType::Basic) {
            return Err(Error::InvalidInstance(
                "vertex cover source must be a basic graph".into(),
            ));
        }
        Ok(VertexCoverInstance { graph, k })
    }

    /// The structure JSON with an extra integer field `k`.
    pub fn from_json(value: &Value) -> Result<Self> {
        let k = value
            .get("k")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::InvalidInstance("missing integer field `k`".into()))?;
        Self::new(Structure::from_json(value)?, k as usize)
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.graph.to_json();
        v["k"] = Value::from(self.k);
        v
    }

    pub fn edges(&self) -> Vec<(u32, u32)> {
        let n = self.graph.universe() as u32;
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.graph.holds(0, &[u, v]))
            .collect()
    }

    /// A smallest vertex cover of size at most `k`, if any.
    pub fn solve(&self, limits: Limits) -> Result<Option<Vec<u32>>> {
        let mut meter = Meter::new(limits);
        let n = self.graph.universe();
        let edges = self.edges();
        for size in 0..=self.k.min(n) {
            let mut chosen: Vec<usize> = (0..size).collect();
            loop {
                meter.tick()?;
                let inside = |v: u32| chosen.contains(&(v as usize));
                if edges.iter().all(|&(u, v)| inside(u) || inside(v)) {
                    return Ok(Some(chosen.iter().map(|&v| v as u32).collect()));
                }
                if !next_combination(&mut chosen, n) {
                    break;
                }
            }
        }
        Ok(None)
    }
}

/// Majority: are at least half of the bits ones?
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MajorityInstance {
    pub bits: String,
}

impl MajorityInstance {
    pub fn new(bits: impl Into<String>) -> Result<Self> {
        let i = MajorityInstance { bits: bits.into() };
        i.validate()?;
        Ok(i)
    }

    pub fn validate(&self) -> Result<()> {
        if self.bits.is_empty() || self.bits.len() % 2 == 1 {
            return Err(Error::InvalidInstance(format!(
                "bit string must have even, nonzero length (got {})",
                self.bits.len()
            )));
        }
        if !self.bits.chars().all(|c| c == '0' || c == '1') {
            return Err(Error::InvalidInstance(
                "bit string may only contain 0 and 1".into(),
            ));
        }
        Ok(())
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let i: MajorityInstance = serde_json::from_value(value.clone())?;
        i.validate()?;
        Ok(i)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn zeros(&self) -> usize {
        self.bits.chars().filter(|&c| c == '0').count()
    }

    /// `|s| / 2`, the budget of every Majority gadget.
    pub fn half(&self) -> usize {
        self.bits.len() / 2
    }

    pub fn solve(&self) -> bool {
        2 * (self.bits.len() - self.zeros()) >= self.bits.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceProblem {
    SetCover,
    VertexCover,
    Majority,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SourceInstance {
    SetCover(SetCoverInstance),
    VertexCover(VertexCoverInstance),
    Majority(MajorityInstance),
}

impl SourceInstance {
    pub fn problem(&self) -> SourceProblem {
        match self {
            SourceInstance::SetCover(_) => SourceProblem::SetCover,
            SourceInstance::VertexCover(_) => SourceProblem::VertexCover,
            SourceInstance::Majority(_) => SourceProblem::Majority,
        }
    }

    pub fn from_json(problem: SourceProblem, value: &Value) -> Result<Self> {
        Ok(match problem {
            SourceProblem::SetCover => {
                SourceInstance::SetCover(SetCoverInstance::from_json(value)?)
            }
            SourceProblem::VertexCover => {
                SourceInstance::VertexCover(VertexCoverInstance::from_json(value)?)
            }
            SourceProblem::Majority => {
                SourceInstance::Majority(MajorityInstance::from_json(value)?)
            }
        })
    }

    pub fn to_json(&self) -> Value {
        match self {
            SourceInstance::SetCover(i) => i.to_json(),
            SourceInstance::VertexCover(i) => i.to_json(),
            SourceInstance::Majority(i) => i.to_json(),
        }
    }

    /// SHA-256 of the compact JSON encoding.
    pub fn digest(&self) -> String {
        digest_of(&self.to_json())
    }
}

/// Exact decision of the source problem.
pub fn solve_source(instance: &SourceInstance, limits: Limits) -> Result<bool> {
    Ok(match instance {
        SourceInstance::SetCover(i) => i.solve(limits)?.is_some(),
        SourceInstance::VertexCover(i) => i.solve(limits)?.is_some(),
        SourceInstance::Majority(i) => i.solve(),
    })
}
