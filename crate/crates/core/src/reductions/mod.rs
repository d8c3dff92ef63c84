//! Hardness gadgets and an equivalence verifier.
//!
//! Every reduction maps a source instance (Set-Cover, Vertex-Cover or
//! Majority) to a modification instance. Reductions are never trusted: the
//! verifier decides both sides by brute force and compares.

mod gadgets;
mod source;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::modification::{Modulator, OperationKind};
use crate::solvers::{
    radius_at_most, solve_brute_force, solve_property_brute_force, Limits, SolveRequest,
    SolveResult,
};

pub use gadgets::{
    radius_formula, reduce_majority, reduce_setcover_aae_basic, reduce_setcover_ae_undir,
    reduce_setcover_aea_basic, reduce_setcover_aee_basic, reduce_setcover_eae_basic,
    reduce_vertexcover_aa_undir, reduce_vertexcover_eaa_basic,
};
pub use source::{
    solve_source, MajorityInstance, SetCoverInstance, SourceInstance, SourceProblem,
    VertexCoverInstance,
};

/// What the target structure must satisfy after modification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetProperty {
    /// The request's formula.
    Formula,
    /// Radius at most `r`, checked by breadth-first search. The request
    /// carries the equivalent walk formula.
    Radius(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub reduction: String,
    pub source_digest: String,
    pub anchor: String,
}

#[derive(Clone, Debug)]
pub struct ReductionOutput {
    /// Target instance; its `kind` is the first entry of `kinds`.
    pub target: SolveRequest,
    pub property: TargetProperty,
    pub kinds: Vec<OperationKind>,
    pub provenance: Provenance,
    pub directed: bool,
    /// Gadget label of every target element.
    pub labels: Vec<String>,
}

impl ReductionOutput {
    pub fn request(&self, kind: OperationKind) -> SolveRequest {
        SolveRequest {
            kind,
            ..self.target.clone()
        }
    }

    /// Decides the target for `kind` by brute force.
    pub fn solve_target(&self, kind: OperationKind, limits: Limits) -> Result<SolveResult> {
        let req = self.request(kind);
        match self.property {
            TargetProperty::Formula => solve_brute_force(&req, limits),
            TargetProperty::Radius(r) => {
                req.compile()?;
                let mut property = |s: &crate::Structure| radius_at_most(s, r);
                solve_property_brute_force(
                    &req.structure,
                    req.structure_type,
                    kind,
                    req.budget,
                    limits,
                    &mut property,
                )
            }
        }
    }

    pub fn meta_json(&self) -> Value {
        let property = match self.property {
            TargetProperty::Formula => json!("formula"),
            TargetProperty::Radius(r) => json!({ "radius": r }),
        };
        json!({
            "reduction": self.provenance.reduction,
            "anchor": self.provenance.anchor,
            "source_digest": self.provenance.source_digest,
            "directed": self.directed,
            "structure_type": self.target.structure_type.name(),
            "budget": self.target.budget,
            "kinds": self.kinds.iter().map(|k| k.name()).collect::<Vec<_>>(),
            "property": property,
            "pattern": self.target.pattern().as_str(),
            "vertices": self.target.structure.universe(),
            "labels": self.labels,
        })
    }

    /// Writes `structure.json`, `formula.fo` and `meta.json` into `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let pretty = |v: &Value| serde_json::to_string_pretty(v).expect("serializable") + "\n";
        std::fs::write(
            dir.join("structure.json"),
            pretty(&self.target.structure.to_json()),
        )?;
        std::fs::write(dir.join("formula.fo"), format!("{}\n", self.target.formula))?;
        std::fs::write(dir.join("meta.json"), pretty(&self.meta_json()))?;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MajorityVariant {
    UndirADel,
    BasicAeAdd,
    BasicEaAdd,
    BasicAa,
    MonadicDel,
}

impl MajorityVariant {
    pub const ALL: [MajorityVariant; 5] = [
        MajorityVariant::UndirADel,
        MajorityVariant::BasicAeAdd,
        MajorityVariant::BasicEaAdd,
        MajorityVariant::BasicAa,
        MajorityVariant::MonadicDel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MajorityVariant::UndirADel => "undir_a_del",
            MajorityVariant::BasicAeAdd => "basic_ae_add",
            MajorityVariant::BasicEaAdd => "basic_ea_add",
            MajorityVariant::BasicAa => "basic_aa",
            MajorityVariant::MonadicDel => "monadic_del",
        }
    }

    fn reduction_name(self) -> &'static str {
        match self {
            MajorityVariant::UndirADel => "majority_undir_a_del",
            MajorityVariant::BasicAeAdd => "majority_basic_ae_add",
            MajorityVariant::BasicEaAdd => "majority_basic_ea_add",
            MajorityVariant::BasicAa => "majority_basic_aa",
            MajorityVariant::MonadicDel => "majority_monadic_del",
        }
    }

    /// Variants whose equivalence is reported, not asserted: the ea formula
    /// needs a loop at the hub, and the aa formula needs deletions where the
    /// source construction names additions.
    pub fn is_flagged(self) -> bool {
        matches!(self, MajorityVariant::BasicEaAdd | MajorityVariant::BasicAa)
    }
}

impl FromStr for MajorityVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MajorityVariant::ALL
            .into_iter()
            .find(|v| v.name() == s || v.reduction_name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "majority variant",
                name: s.to_string(),
            })
    }
}

/// A named reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reduction {
    SetCoverAe,
    SetCoverAea,
    SetCoverAee,
    SetCoverAae,
    SetCoverEae,
    VertexCoverAa,
    VertexCoverEaa,
    Majority(MajorityVariant),
}

impl Reduction {
    pub fn all() -> Vec<Reduction> {
        let mut out = vec![
            Reduction::SetCoverAe,
            Reduction::SetCoverAea,
            Reduction::SetCoverAee,
            Reduction::SetCoverAae,
            Reduction::SetCoverEae,
            Reduction::VertexCoverAa,
            Reduction::VertexCoverEaa,
        ];
        out.extend(MajorityVariant::ALL.map(Reduction::Majority));
        out
    }

    pub fn name(self) -> &'static str {
        match self {
            Reduction::SetCoverAe => "ae_undir",
            Reduction::SetCoverAea => "aea_basic",
            Reduction::SetCoverAee => "aee_basic",
            Reduction::SetCoverAae => "aae_basic",
            Reduction::SetCoverEae => "eae_basic",
            Reduction::VertexCoverAa => "vertexcover_aa",
            Reduction::VertexCoverEaa => "vertexcover_eaa",
            Reduction::Majority(v) => v.reduction_name(),
        }
    }

    pub fn source_problem(self) -> SourceProblem {
        match self {
            Reduction::VertexCoverAa | Reduction::VertexCoverEaa => SourceProblem::VertexCover,
            Reduction::Majority(_) => SourceProblem::Majority,
            _ => SourceProblem::SetCover,
        }
    }

    pub fn supports_directed(self) -> bool {
        self.source_problem() == SourceProblem::SetCover
    }

    /// Whether verification failures are expected to be reported rather
    /// than asserted.
    pub fn is_flagged(self) -> bool {
        matches!(self, Reduction::Majority(v) if v.is_flagged())
    }

    pub fn build(
        self,
        source: &SourceInstance,
        options: &ReduceOptions,
    ) -> Result<ReductionOutput> {
        if options.directed && !self.supports_directed() {
            return Err(Error::InvalidInstance(format!(
                "reduction `{}` has no directed variant",
                self.name()
            )));
        }
        let d = options.directed;
        match (self, source) {
            (Reduction::SetCoverAe, SourceInstance::SetCover(i)) => reduce_setcover_ae_undir(i, d),
            (Reduction::SetCoverAea, SourceInstance::SetCover(i)) => {
                reduce_setcover_aea_basic(i, d)
            }
            (Reduction::SetCoverAee, SourceInstance::SetCover(i)) => {
                reduce_setcover_aee_basic(i, d)
            }
            (Reduction::SetCoverAae, SourceInstance::SetCover(i)) => {
                reduce_setcover_aae_basic(i, d)
            }
            (Reduction::SetCoverEae, SourceInstance::SetCover(i)) => {
                reduce_setcover_eae_basic(i, d, options.radius)
            }
            (Reduction::VertexCoverAa, SourceInstance::VertexCover(i)) => {
                reduce_vertexcover_aa_undir(i)
            }
            (Reduction::VertexCoverEaa, SourceInstance::VertexCover(i)) => {
                reduce_vertexcover_eaa_basic(i)
            }
            (Reduction::Majority(v), SourceInstance::Majority(i)) => {
                reduce_majority(i, v, options.kind)
            }
            _ => Err(Error::InvalidInstance(format!(
                "reduction `{}` expects a {:?} source",
                self.name(),
                self.source_problem()
            ))),
        }
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Reduction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let r = match s {
            "ae_undir" => Reduction::SetCoverAe,
            "aea_basic" => Reduction::SetCoverAea,
            "aee_basic" => Reduction::SetCoverAee,
            "aae_basic" => Reduction::SetCoverAae,
            "eae_basic" => Reduction::SetCoverEae,
            "vertexcover_aa" | "aa_undir" => Reduction::VertexCoverAa,
            "vertexcover_eaa" | "eaa_basic" => Reduction::VertexCoverEaa,
            other => match other.parse::<MajorityVariant>() {
                Ok(v) => Reduction::Majority(v),
                Err(_) => {
                    return Err(Error::UnknownName {
                        kind: "reduction",
                        name: s.to_string(),
                    })
                }
            },
        };
        Ok(r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReduceOptions {
    pub directed: bool,
    /// Radius bound of the eae gadget.
    pub radius: usize,
    /// Operation of the Majority aa gadget; deletion when unset.
    pub kind: Option<OperationKind>,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions {
            directed: false,
            radius: 2,
            kind: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KindReport {
    pub kind: OperationKind,
    pub source: Option<bool>,
    pub target: Option<bool>,
    pub equivalent: Option<bool>,
    pub witness: Option<Modulator>,
    /// Why a side is undecided.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inconclusive: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub reduction: String,
    pub source: Value,
    pub source_digest: String,
    pub source_decision: Option<bool>,
    pub target_vertices: usize,
    pub kinds: Vec<KindReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.kinds.iter().all(|k| k.equivalent == Some(true))
    }

    pub fn inconclusive(&self) -> bool {
        self.kinds.iter().any(|k| k.equivalent.is_none())
    }
}

/// Builds the target and decides both sides by brute force for each kind
/// (the reduction's claimed kinds when `kinds` is empty). Resource limits
/// mark a kind inconclusive.
pub fn verify_reduction(
    reduction: Reduction,
    source: &SourceInstance,
    options: &ReduceOptions,
    kinds: &[OperationKind],
    limits: Limits,
) -> Result<VerificationReport> {
    let out = reduction.build(source, options)?;
    let (source_decision, source_note) = match solve_source(source, limits) {
        Ok(d) => (Some(d), None),
        Err(e) if e.is_resource_limit() => (None, Some(format!("source: {e}"))),
        Err(e) => return Err(e),
    };
    let kinds = if kinds.is_empty() {
        &out.kinds[..]
    } else {
        kinds
    };
    let reports = kinds
        .iter()
        .map(|&kind| {
            let mut report = KindReport {
                kind,
                source: source_decision,
                target: None,
                equivalent: None,
                witness: None,
                inconclusive: source_note.clone(),
            };
            match out.solve_target(kind, limits) {
                Ok(res) => {
                    report.target = Some(res.decision);
                    report.witness = res.witness;
                }
                Err(e) if e.is_resource_limit() => {
                    report.inconclusive = Some(format!("target: {e}"));
                }
                Err(e) => return Err(e),
            }
            if let (Some(s), Some(t)) = (report.source, report.target) {
                report.equivalent = Some(s == t);
            }
            Ok(report)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport {
        reduction: reduction.name().to_string(),
        source: source.to_json(),
        source_digest: source.digest(),
        source_decision,
        target_vertices: out.target.structure.universe(),
        kinds: reports,
    })
}

/// Size limits of the exhaustive harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HarnessLimits {
    pub max_sets: usize,
    pub max_universe: usize,
    pub max_k: usize,
    pub max_vertices: usize,
    pub max_bits: usize,
}

impl Default for HarnessLimits {
    fn default() -> Self {
        HarnessLimits {
            max_sets: 3,
            max_universe: 2,
            max_k: 1,
            max_vertices: 4,
            max_bits: 6,
        }
    }
}

/// Every source instance within the limits, in canonical order: Set-Cover
/// with `1..=max_sets` sets, `0..=max_universe` elements and every incidence
/// relation; Vertex-Cover on every labelled basic graph with
/// `1..=max_vertices` vertices; Majority on every even-length bit string up
/// to `max_bits`.
pub fn enumerate_sources(problem: SourceProblem, limits: &HarnessLimits) -> Vec<SourceInstance> {
    let mut out = Vec::new();
    match problem {
        SourceProblem::SetCover => {
            for ns in 1..=limits.max_sets {
                for nu in 0..=limits.max_universe {
                    let sets: Vec<String> = (1..=ns).map(|j| format!("s{j}")).collect();
                    let universe: Vec<String> = (1..=nu).map(|j| format!("u{j}")).collect();
                    let cells: Vec<(String, String)> = sets
                        .iter()
                        .flat_map(|s| universe.iter().map(move |u| (s.clone(), u.clone())))
                        .collect();
                    for mask in 0u64..1 << cells.len() {
                        let edges: Vec<(String, String)> = cells
                            .iter()
                            .enumerate()
                            .filter(|(b, _)| mask >> b & 1 == 1)
                            .map(|(_, e)| e.clone())
                            .collect();
                        for k in 0..=limits.max_k {
                            out.push(SourceInstance::SetCover(SetCoverInstance {
                                sets: sets.clone(),
                                universe: universe.clone(),
                                edges: edges.clone(),
                                k,
                            }));
                        }
                    }
                }
            }
        }
        SourceProblem::VertexCover => {
            for n in 1..=limits.max_vertices as u32 {
                let pairs: Vec<(u32, u32)> = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .collect();
                for mask in 0u64..1 << pairs.len() {
                    let edges: Vec<(u32, u32)> = pairs
                        .iter()
                        .enumerate()
                        .filter(|(b, _)| mask >> b & 1 == 1)
                        .map(|(_, &e)| e)
                        .collect();
                    let g = crate::Structure::undirected_graph(n as usize, &edges).expect("valid");
                    for k in 0..=limits.max_k {
                        let i = VertexCoverInstance::new(g.clone(), k).expect("basic");
                        out.push(SourceInstance::VertexCover(i));
                    }
                }
            }
        }
        SourceProblem::Majority => {
            for len in (2..=limits.max_bits).step_by(2) {
                for mask in 0u64..1 << len {
                    let bits: String = (0..len)
                        .map(|b| {
                            if mask >> (len - 1 - b) & 1 == 1 {
                                '1'
                            } else {
                                '0'
                            }
                        })
                        .collect();
                    out.push(SourceInstance::Majority(MajorityInstance { bits }));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HarnessReport {
    pub reduction: String,
    pub directed: bool,
    pub flagged: bool,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
    pub reports: Vec<VerificationReport>,
}

impl HarnessReport {
    /// All equivalences hold; inconclusive instances count as failures.
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.inconclusive == 0
    }
}

/// Runs [`verify_reduction`] on every source instance within `sizes`,
/// spread over worker threads. Reports keep the canonical instance order.
pub fn verify_exhaustive(
    reduction: Reduction,
    options: &ReduceOptions,
    sizes: &HarnessLimits,
    limits: Limits,
) -> Result<HarnessReport> {
    let sources = enumerate_sources(reduction.source_problem(), sizes);
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(sources.len().max(1));
    let chunk = sources.len().div_ceil(workers).max(1);
    let results: Vec<Result<Vec<VerificationReport>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = sources
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .map(|src| verify_reduction(reduction, src, options, &[], limits))
                        .collect::<Result<Vec<_>>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut reports = Vec::with_capacity(sources.len());
    for part in results {
        reports.extend(part?);
    }
    let inconclusive = reports.iter().filter(|r| r.inconclusive()).count();
    let passed = reports.iter().filter(|r| r.passed()).count();
    Ok(HarnessReport {
        reduction: reduction.name().to_string(),
        directed: options.directed,
        flagged: reduction.is_flagged(),
        instances: reports.len(),
        passed,
        failed: reports.len() - passed - inconclusive,
        inconclusive,
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn set_cover(v: Value) -> SetCoverInstance {
        SetCoverInstance::from_json(&v).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for r in Reduction::all() {
            assert_eq!(r.name().parse::<Reduction>().unwrap(), r);
        }
        assert_eq!(
            "aa_undir".parse::<Reduction>().unwrap(),
            Reduction::VertexCoverAa
        );
        assert_eq!(
            "eaa_basic".parse::<Reduction>().unwrap(),
            Reduction::VertexCoverEaa
        );
        assert_eq!(
            "undir_a_del".parse::<Reduction>().unwrap(),
            Reduction::Majority(MajorityVariant::UndirADel)
        );
        assert!("nope".parse::<Reduction>().is_err());
    }

    #[test]
    fn radius_formula_matches_catalog() {
        let two = crate::logic::catalog::formula("radius-2");
        assert_eq!(radius_formula(2).pattern(), two.pattern());
        assert_eq!(radius_formula(3).pattern().as_str(), "eaee");
    }

    #[test]
    fn enumeration_sizes() {
        let sizes = HarnessLimits::default();
        // sum over |S| ≤ 3, |U| ≤ 2 of 2^{|S||U|}, times two budgets
        assert_eq!(
            enumerate_sources(SourceProblem::SetCover, &sizes).len(),
            2 * 101
        );
        assert_eq!(
            enumerate_sources(SourceProblem::Majority, &sizes).len(),
            4 + 16 + 64
        );
        // 1 + 2 + 8 + 64 labelled basic graphs, three budgets
        let vertex = HarnessLimits { max_k: 2, ..sizes };
        assert_eq!(
            enumerate_sources(SourceProblem::VertexCover, &vertex).len(),
            3 * 75
        );
    }

    #[test]
    fn writes_directory() {
        let i = set_cover(json!({"sets": ["s"], "universe": ["u"], "edges": [["s", "u"]], "k": 1}));
        let out = reduce_setcover_aea_basic(&i, true).unwrap();
        let dir = std::env::temp_dir().join(format!("relmod-reduce-{}", std::process::id()));
        out.write_to(&dir).unwrap();
        let meta: Value =
            serde_json::from_str(&std::fs::read_to_string(dir.join("meta.json")).unwrap()).unwrap();
        assert_eq!(meta["budget"], 2);
        assert_eq!(meta["directed"], true);
        let text = std::fs::read_to_string(dir.join("formula.fo")).unwrap();
        assert_eq!(
            text.trim().parse::<crate::Formula>().unwrap(),
            out.target.formula
        );
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn wrong_source_kind() {
        let m = SourceInstance::Majority(MajorityInstance::new("10").unwrap());
        assert!(Reduction::SetCoverAe
            .build(&m, &ReduceOptions::default())
            .is_err());
        let directed = ReduceOptions {
            directed: true,
            ..ReduceOptions::default()
        };
        assert!(Reduction::Majority(MajorityVariant::UndirADel)
            .build(&m, &directed)
            .is_err());
    }
}
