//! Gadget constructions.

use crate::error::{Error, Result};
use crate::logic::{catalog, Formula, Matrix, Quantifier, Structure, StructureType, Vocabulary};
use crate::modification::OperationKind;
use crate::reductions::source::{
    MajorityInstance, SetCoverInstance, SourceInstance, VertexCoverInstance,
};
use crate::reductions::{MajorityVariant, Provenance, ReductionOutput, TargetProperty};
use crate::solvers::SolveRequest;

use OperationKind::{Add, Del, Edit};

/// Labelled graph under construction.
#[derive(Default)]
struct Builder {
    labels: Vec<String>,
    arcs: Vec<(u32, u32)>,
}

impl Builder {
    fn vertex(&mut self, label: impl Into<String>) -> u32 {
        self.labels.push(label.into());
        (self.labels.len() - 1) as u32
    }

    fn arc(&mut self, u: u32, v: u32) {
        self.arcs.push((u, v));
    }

    fn edge(&mut self, u: u32, v: u32) {
        self.arcs.push((u, v));
        self.arcs.push((v, u));
    }

    fn looped(&mut self, v: u32) {
        self.arcs.push((v, v));
    }

    fn path(&mut self, from: u32, to: u32, inner: usize, label: &str) {
        let mut prev = from;
        for i in 1..=inner {
            let v = self.vertex(format!("{label}^{i}"));
            self.edge(prev, v);
            prev = v;
        }
        self.edge(prev, to);
    }

    fn build(self) -> Result<(Structure, Vec<String>)> {
        let s = Structure::graph(self.labels.len(), &self.arcs)?;
        Ok((s, self.labels))
    }
}

struct Target {
    reduction: &'static str,
    anchor: &'static str,
    source: SourceInstance,
    builder: Builder,
    structure_type: StructureType,
    formula: Formula,
    property: TargetProperty,
    budget: usize,
    kinds: Vec<OperationKind>,
    directed: bool,
}

impl Target {
    fn finish(self) -> Result<ReductionOutput> {
        let (structure, labels) = self.builder.build()?;
        let target = SolveRequest::new(
            structure,
            self.structure_type,
            self.formula,
            self.budget,
            self.kinds[0],
        );
        target.compile()?;
        Ok(ReductionOutput {
            target,
            property: self.property,
            kinds: self.kinds,
            provenance: Provenance {
                reduction: self.reduction.to_string(),
                source_digest: self.source.digest(),
                anchor: self.anchor.to_string(),
            },
            directed: self.directed,
            labels,
        })
    }
}

fn copies(b: &mut Builder, element: &str, count: usize) -> Vec<u32> {
    (1..=count)
        .map(|i| b.vertex(format!("{element}_{i}")))
        .collect()
}

fn graph_type(directed: bool, undirected: StructureType) -> StructureType {
    if directed {
        StructureType::Dir
    } else {
        undirected
    }
}

/// Loops on set vertices, `2k+1` copies of each element joined to its sets;
/// a set vertex losing its loop serves every copy adjacent to it.
pub fn reduce_setcover_ae_undir(i: &SetCoverInstance, directed: bool) -> Result<ReductionOutput> {
    i.validate()?;
    let mut b = Builder::default();
    let sets: Vec<u32> = i.sets.iter().map(|s| b.vertex(s.clone())).collect();
    for &s in &sets {
        b.looped(s);
    }
    let elements: Vec<Vec<u32>> = i
        .universe
        .iter()
        .map(|u| copies(&mut b, u, 2 * i.k + 1))
        .collect();
    for (s, u) in i.incidences() {
        for &c in &elements[u] {
            if directed {
                b.arc(c, sets[s]);
            } else {
                b.edge(c, sets[s]);
            }
        }
    }
    Target {
        reduction: "ae_undir",
        anchor: "Set-Cover to ae: self-loops on sets, 2k+1 copies per element; every loopless vertex needs a loopless neighbour",
        source: SourceInstance::SetCover(i.clone()),
        builder: b,
        structure_type: graph_type(directed, StructureType::Undir),
        formula: catalog::formula("setcover-ae"),
        property: TargetProperty::Formula,
        budget: i.k,
        kinds: vec![Del, Edit],
        directed,
    }
    .finish()
}

/// A 4-cycle per set; every copy of an element forms a triangle with
/// `s` and `s'` for each of its sets. Deleting `s - s'` picks `s`.
pub fn reduce_setcover_aea_basic(i: &SetCoverInstance, directed: bool) -> Result<ReductionOutput> {
    i.validate()?;
    let mut b = Builder::default();
    let mut heads = Vec::new();
    for s in &i.sets {
        let cycle: Vec<u32> = ["", "'", "''", "'''"]
            .iter()
            .map(|p| b.vertex(format!("{s}{p}")))
            .collect();
        for j in 0..4 {
            b.edge(cycle[j], cycle[(j + 1) % 4]);
        }
        heads.push((cycle[0], cycle[1]));
    }
    let elements: Vec<Vec<u32>> = i
        .universe
        .iter()
        .map(|u| copies(&mut b, u, 2 * i.k + 1))
        .collect();
    for (s, u) in i.incidences() {
        for &c in &elements[u] {
            b.edge(c, heads[s].0);
            b.edge(c, heads[s].1);
        }
    }
    Target {
        reduction: "aea_basic",
        anchor: "Set-Cover to aea: 4-cycle per set, 2k+1 copies per element on triangles with s and s'; every vertex needs a neighbour sharing no triangle",
        source: SourceInstance::SetCover(i.clone()),
        builder: b,
        structure_type: graph_type(directed, StructureType::Basic),
        formula: catalog::formula(if directed { "setcover-aea-dir" } else { "setcover-aea" }),
        property: TargetProperty::Formula,
        budget: if directed { 2 * i.k } else { i.k },
        kinds: vec![Del, Edit],
        directed,
    }
    .finish()
}

/// Two triangles per set; every copy of an element is joined to the first
/// vertex of both triangles of each of its sets. Adding `s_1 - s'_1` picks
/// the set.
pub fn reduce_setcover_aee_basic(i: &SetCoverInstance, directed: bool) -> Result<ReductionOutput> {
    i.validate()?;
    let mut b = Builder::default();
    let mut anchors = Vec::new();
    for s in &i.sets {
        let mut firsts = Vec::new();
        for side in ["", "'"] {
            let t: Vec<u32> = (1..=3)
                .map(|j| b.vertex(format!("{s}{side}_{j}")))
                .collect();
            b.edge(t[0], t[1]);
            b.edge(t[1], t[2]);
            b.edge(t[0], t[2]);
            firsts.push(t[0]);
        }
        anchors.push((firsts[0], firsts[1]));
    }
    let elements: Vec<Vec<u32>> = i
        .universe
        .iter()
        .map(|u| copies(&mut b, u, 2 * i.k + 1))
        .collect();
    for (s, u) in i.incidences() {
        for &c in &elements[u] {
            b.edge(c, anchors[s].0);
            b.edge(c, anchors[s].1);
        }
    }
    Target {
        reduction: "aee_basic",
        anchor: "Set-Cover to aee: two triangles per set, 2k+1 copies per element; every vertex must lie on a triangle",
        source: SourceInstance::SetCover(i.clone()),
        builder: b,
        structure_type: graph_type(directed, StructureType::Basic),
        formula: catalog::formula(if directed { "setcover-aee-dir" } else { "setcover-aee" }),
        property: TargetProperty::Formula,
        budget: i.k,
        kinds: vec![Add, Edit],
        directed,
    }
    .finish()
}

/// An edge `s - s'` per nonempty set, a hub `c` adjacent to every element
/// copy, and triangles `u_i, s, s'`. Adding `c - s` picks the set. Sets
/// without elements are dropped first, since their edge `s - s'` would lie
/// on no triangle.
pub fn reduce_setcover_aae_basic(i: &SetCoverInstance, directed: bool) -> Result<ReductionOutput> {
    i.validate()?;
    let incidences = i.incidences();
    let mut b = Builder::default();
    let hub = b.vertex("c");
    let mut pairs = vec![None; i.sets.len()];
    for (j, s) in i.sets.iter().enumerate() {
        if incidences.iter().any(|&(t, _)| t == j) {
            let head = b.vertex(s.clone());
            let tail = b.vertex(format!("{s}'"));
            b.edge(head, tail);
            pairs[j] = Some((head, tail));
        }
    }
    let elements: Vec<Vec<u32>> = i
        .universe
        .iter()
        .map(|u| copies(&mut b, u, 2 * i.k + 1))
        .collect();
    for copies in &elements {
        for &c in copies {
            b.edge(c, hub);
        }
    }
    for (s, u) in incidences {
        let (head, tail) = pairs[s].expect("set with an incidence");
        for &c in &elements[u] {
            b.edge(c, head);
            b.edge(c, tail);
        }
    }
    Target {
        reduction: "aae_basic",
        anchor: "Set-Cover to aae: edge s - s' per set, hub c adjacent to 2k+1 copies per element; every edge must lie on a triangle",
        source: SourceInstance::SetCover(i.clone()),
        builder: b,
        structure_type: graph_type(directed, StructureType::Basic),
        formula: catalog::formula(if directed { "setcover-aae-dir" } else { "triangle-edge-cover" }),
        property: TargetProperty::Formula,
        budget: if directed { 2 * i.k } else { i.k },
        kinds: vec![Add, Edit],
        directed,
    }
    .finish()
}

/// `∃c ∀x ∃y₁…∃y_{r-1}`: some vertex reaches `c` by a walk of length at most
/// `r` from every vertex.
pub fn radius_formula(r: usize) -> Formula {
    let ys: Vec<String> = (1..r).map(|i| format!("y{i}")).collect();
    let mut disjuncts = vec![Matrix::eq("x", "c"), Matrix::adj("x", "c")];
    for len in 2..=r {
        let walk: Vec<&str> = std::iter::once("x")
            .chain(ys[..len - 1].iter().map(String::as_str))
            .chain(std::iter::once("c"))
            .collect();
        disjuncts.push(Matrix::and(
            walk.windows(2).map(|w| Matrix::adj(w[0], w[1])),
        ));
    }
    let mut prefix = vec![(Quantifier::Exists, "c"), (Quantifier::Forall, "x")];
    prefix.extend(ys.iter().map(|y| (Quantifier::Exists, y.as_str())));
    Formula::with_prefix(&prefix, Matrix::or(disjuncts)).expect("well-formed")
}

/// Radius `r`: sets hang off a centre `c` by `c - s' - s`, `2k+1` pendant
/// chains of length `r` pin the centre to `c`, and `k+1` copies of each
/// element reach their sets by paths of length `r - 1`. Adding `c - s` picks
/// the set.
pub fn reduce_setcover_eae_basic(
    i: &SetCoverInstance,
    directed: bool,
    r: usize,
) -> Result<ReductionOutput> {
    i.validate()?;
    if r < 2 {
        return Err(Error::InvalidInstance(format!(
            "radius must be at least 2, got {r}"
        )));
    }
    let mut b = Builder::default();
    let centre = b.vertex("c");
    let mut sets = Vec::new();
    for s in &i.sets {
        let head = b.vertex(s.clone());
        let tail = b.vertex(format!("{s}'"));
        b.edge(head, tail);
        b.edge(tail, centre);
        sets.push(head);
    }
    for j in 1..=2 * i.k + 1 {
        let mut prev = centre;
        for depth in 1..=r {
            let v = b.vertex(format!("c_{j}^{depth}"));
            b.edge(prev, v);
            prev = v;
        }
    }
    let elements: Vec<Vec<u32>> = i
        .universe
        .iter()
        .map(|u| copies(&mut b, u, i.k + 1))
        .collect();
    for (s, u) in i.incidences() {
        for (m, &c) in elements[u].iter().enumerate() {
            let label = format!("{}_{}~{}", i.universe[u], m + 1, i.sets[s]);
            b.path(c, sets[s], r - 2, &label);
        }
    }
    let (formula, property) = if r == 2 {
        (catalog::formula("radius-2"), TargetProperty::Formula)
    } else {
        (radius_formula(r), TargetProperty::Radius(r))
    };
    Target {
        reduction: "eae_basic",
        anchor: "Set-Cover to eae: sets hang off a centre c, 2k+1 pendant chains fix the centre, k+1 copies per element; radius at most r",
        source: SourceInstance::SetCover(i.clone()),
        builder: b,
        structure_type: graph_type(directed, StructureType::Basic),
        formula,
        property,
        budget: i.k,
        kinds: vec![Add, Edit],
        directed,
    }
    .finish()
}

fn source_graph(i: &VertexCoverInstance, b: &mut Builder) -> Vec<u32> {
    let vs: Vec<u32> = (0..i.graph.universe())
        .map(|v| b.vertex(format!("v{v}")))
        .collect();
    for (u, v) in i.edges() {
        b.edge(vs[u as usize], vs[v as usize]);
    }
    vs
}

/// The source graph itself; a loop marks a cover vertex.
pub fn reduce_vertexcover_aa_undir(i: &VertexCoverInstance) -> Result<ReductionOutput> {
    let mut b = Builder::default();
    source_graph(i, &mut b);
    Target {
        reduction: "vertexcover_aa",
        anchor: "Vertex-Cover to aa: every edge must be incident to a vertex with a self-loop",
        source: SourceInstance::VertexCover(i.clone()),
        builder: b,
        structure_type: StructureType::Undir,
        formula: catalog::formula("vertexcover-aa"),
        property: TargetProperty::Formula,
        budget: i.k,
        kinds: vec![Add, Edit],
        directed: false,
    }
    .finish()
}

/// The source graph plus a vertex `c` adjacent to all of it and a clique of
/// size `k+2` also adjacent to all of it but not to `c`. Deleting `v - c`
/// puts `v` in the cover.
pub fn reduce_vertexcover_eaa_basic(i: &VertexCoverInstance) -> Result<ReductionOutput> {
    let mut b = Builder::default();
    let vs = source_graph(i, &mut b);
    let c = b.vertex("c");
    for &v in &vs {
        b.edge(v, c);
    }
    let clique: Vec<u32> = (1..=i.k + 2).map(|j| b.vertex(format!("K{j}"))).collect();
    for (a, &p) in clique.iter().enumerate() {
        for &q in &clique[a + 1..] {
            b.edge(p, q);
        }
        for &v in &vs {
            b.edge(p, v);
        }
    }
    Target {
        reduction: "vertexcover_eaa",
        anchor: "Vertex-Cover to eaa: hub c plus a (k+2)-clique joined to every vertex; no edge may have both endpoints adjacent to the chosen c",
        source: SourceInstance::VertexCover(i.clone()),
        builder: b,
        structure_type: StructureType::Basic,
        formula: catalog::formula("vertexcover-eaa"),
        property: TargetProperty::Formula,
        budget: i.k,
        kinds: vec![Del, Edit],
        directed: false,
    }
    .finish()
}

/// One gadget per 0-bit with budget `|s|/2`. An all-ones string gets one
/// neutral padding element so the universe is nonempty.
pub fn reduce_majority(
    i: &MajorityInstance,
    variant: MajorityVariant,
    kind: Option<OperationKind>,
) -> Result<ReductionOutput> {
    i.validate()?;
    let zeros = i.zeros();
    let mut b = Builder::default();
    let (structure_type, formula, kinds, anchor) = match variant {
        MajorityVariant::UndirADel => {
            for j in 1..=zeros {
                let v = b.vertex(format!("z{j}"));
                b.looped(v);
            }
            if zeros == 0 {
                b.vertex("pad");
            }
            (
                StructureType::Undir,
                catalog::formula("majority-a"),
                vec![Del],
                "Majority to a: a looped vertex per 0-bit, budget |s|/2",
            )
        }
        MajorityVariant::BasicAeAdd => {
            for j in 1..=zeros {
                b.vertex(format!("z{j}a"));
                b.vertex(format!("z{j}b"));
            }
            if zeros == 0 {
                let p = b.vertex("pad_a");
                let q = b.vertex("pad_b");
                b.edge(p, q);
            }
            (
                StructureType::Basic,
                catalog::formula("no-isolated"),
                vec![Add],
                "Majority to ae: two isolated vertices per 0-bit, budget |s|/2",
            )
        }
        MajorityVariant::BasicEaAdd => {
            let hub = b.vertex("c");
            for (j, bit) in i.bits.chars().enumerate() {
                let v = b.vertex(format!("b{}", j + 1));
                if bit == '1' {
                    b.edge(hub, v);
                }
            }
            (
                StructureType::Undir,
                catalog::formula("majority-ea"),
                vec![Add],
                "Majority to ea: a vertex per bit and a hub adjacent to the 1-bits, budget |s|/2",
            )
        }
        MajorityVariant::BasicAa => {
            for j in 1..=zeros {
                let p = b.vertex(format!("z{j}a"));
                let q = b.vertex(format!("z{j}b"));
                b.edge(p, q);
            }
            if zeros == 0 {
                b.vertex("pad");
            }
            (
                StructureType::Basic,
                catalog::formula("majority-aa"),
                vec![kind.unwrap_or(Del)],
                "Majority to aa: an edge per 0-bit, budget |s|/2",
            )
        }
        MajorityVariant::MonadicDel => {
            return reduce_majority_monadic(i);
        }
    };
    Target {
        reduction: variant.reduction_name(),
        anchor,
        source: SourceInstance::Majority(i.clone()),
        builder: b,
        structure_type,
        formula,
        property: TargetProperty::Formula,
        budget: i.half(),
        kinds,
        directed: false,
    }
    .finish()
}

fn reduce_majority_monadic(i: &MajorityInstance) -> Result<ReductionOutput> {
    let zeros = i.zeros();
    let n = zeros.max(1);
    let members: Vec<[u32; 1]> = (0..zeros as u32).map(|e| [e]).collect();
    let structure = Structure::from_tuples(Vocabulary::monadic(["R"])?, n, vec![members])?;
    let mut labels: Vec<String> = (1..=zeros).map(|j| format!("z{j}")).collect();
    if zeros == 0 {
        labels.push("pad".into());
    }
    let target = SolveRequest::new(
        structure,
        StructureType::Mon,
        catalog::formula("majority-monadic"),
        i.half(),
        Del,
    );
    target.compile()?;
    Ok(ReductionOutput {
        target,
        property: TargetProperty::Formula,
        kinds: vec![Del],
        provenance: Provenance {
            reduction: MajorityVariant::MonadicDel.reduction_name().to_string(),
            source_digest: SourceInstance::Majority(i.clone()).digest(),
            anchor: "Majority to monadic: an R-element per 0-bit, budget |s|/2".to_string(),
        },
        directed: false,
        labels,
    })
}
