//! Modulators: per-relation tuple sets applied by symmetric difference.
//!
//! Internally, solvers work with [`Slot`]s, the unit a modification is paid
//! for: a single tuple, or on undirected and basic graphs an unordered pair
//! `{u, v}` covering both orientations. One slot costs exactly one unit of
//! the type's norm, so a set of slots has norm equal to its size.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::{check_structure_type, Formula, Matrix, Structure, StructureType, Vocabulary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperationKind {
    Del,
    Add,
    Edit,
}

impl OperationKind {
    pub const ALL: [OperationKind; 3] =
        [OperationKind::Del, OperationKind::Add, OperationKind::Edit];

    pub fn name(self) -> &'static str {
        match self {
            OperationKind::Del => "del",
            OperationKind::Add => "add",
            OperationKind::Edit => "edit",
        }
    }
}

impl fmt::Display for OperationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OperationKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "operation",
                name: s.to_string(),
            })
    }
}

/// Tuples to toggle, keyed by symbol name.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Modulator {
    pub relations: BTreeMap<String, BTreeSet<Vec<u32>>>,
}

impl Modulator {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, symbol: &str, tuple: Vec<u32>) {
        self.relations
            .entry(symbol.to_string())
            .or_default()
            .insert(tuple);
    }

    /// Number of tuples over all relations.
    pub fn tuple_count(&self) -> usize {
        self.relations.values().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.tuple_count() == 0
    }

    /// Tuples of every symbol, resolved to vocabulary indices.
    fn resolved<'a>(&'a self, s: &Structure) -> Result<Vec<(usize, &'a Vec<u32>)>> {
        let mut out = Vec::new();
        for (name, tuples) in &self.relations {
            let sym = s
                .vocabulary()
                .index_of(name)
                .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
            for t in tuples {
                s.check_tuple(sym, t)
                    .map_err(|e| Error::InvalidModulator(e.to_string()))?;
                out.push((sym, t));
            }
        }
        Ok(out)
    }

    /// Expands a set of slots into the tuples they toggle.
    pub fn from_slots<'a>(
        vocabulary: &Vocabulary,
        ty: StructureType,
        slots: impl IntoIterator<Item = &'a Slot>,
    ) -> Self {
        let mut m = Modulator::empty();
        for slot in slots {
            let name = &vocabulary.symbols()[slot.symbol].name;
            for t in slot.tuples(ty) {
                m.insert(name, t);
            }
        }
        m
    }

    /// Decomposes the modulator into slots for the given type. Fails if a
    /// symmetric type receives an orientation without its mirror.
    pub fn to_slots(&self, s: &Structure, ty: StructureType) -> Result<Vec<Slot>> {
        let tuples = self.resolved(s)?;
        let mut out = BTreeSet::new();
        for (sym, t) in &tuples {
            let slot = Slot::canonical(ty, s.arity(*sym), *sym, t);
            if ty.is_symmetric() && t.len() == 2 && t[0] != t[1] {
                let mirror = vec![t[1], t[0]];
                let name = &s.vocabulary().symbols()[*sym].name;
                if !self.relations[name].contains(&mirror) {
                    return Err(Error::InvalidModulator(format!(
                        "tuple ({},{}) present without its mirror",
                        t[0], t[1]
                    )));
                }
            }
            out.insert(slot);
        }
        Ok(out.into_iter().collect())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("modulators serialize")
    }
}

/// The unit of modification.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub symbol: usize,
    /// Canonical tuple; on symmetric types binary tuples are stored with
    /// the smaller element first.
    pub tuple: Vec<u32>,
}

impl Slot {
    pub fn canonical(ty: StructureType, arity: usize, symbol: usize, tuple: &[u32]) -> Slot {
        let mut t = tuple.to_vec();
        if ty.is_symmetric() && arity == 2 && t[0] > t[1] {
            t.swap(0, 1);
        }
        Slot { symbol, tuple: t }
    }

    fn mirrored(&self, ty: StructureType) -> bool {
        ty.is_symmetric() && self.tuple.len() == 2 && self.tuple[0] != self.tuple[1]
    }

    /// The tuples this slot toggles.
    pub fn tuples(&self, ty: StructureType) -> Vec<Vec<u32>> {
        if self.mirrored(ty) {
            vec![self.tuple.clone(), vec![self.tuple[1], self.tuple[0]]]
        } else {
            vec![self.tuple.clone()]
        }
    }

    #[inline]
    pub fn toggle(&self, s: &mut Structure, ty: StructureType) {
        s.toggle(self.symbol, &self.tuple);
        if self.mirrored(ty) {
            s.toggle(self.symbol, &[self.tuple[1], self.tuple[0]]);
        }
    }

    /// Whether the slot's tuple is currently present. Symmetric structures
    /// hold both orientations or neither.
    #[inline]
    pub fn present(&self, s: &Structure) -> bool {
        s.holds(self.symbol, &self.tuple)
    }

    /// Loops are never legal slots on basic graphs.
    pub fn type_legal(&self, ty: StructureType) -> bool {
        !(ty == StructureType::Basic && self.tuple.len() == 2 && self.tuple[0] == self.tuple[1])
    }

    /// Kind and type legality against the *original* structure.
    #[inline]
    pub fn legal(&self, original: &Structure, ty: StructureType, kind: OperationKind) -> bool {
        self.type_legal(ty)
            && match kind {
                OperationKind::Del => self.present(original),
                OperationKind::Add => !self.present(original),
                OperationKind::Edit => true,
            }
    }
}

/// Every slot of `s` for type `ty`, in canonical order (symbol, then tuple).
pub fn all_slots(s: &Structure, ty: StructureType) -> Vec<Slot> {
    let mut out = Vec::new();
    for (sym, symbol) in s.vocabulary().symbols().iter().enumerate() {
        for t in s.all_tuples(symbol.arity) {
            let slot = Slot::canonical(ty, symbol.arity, sym, &t);
            if slot.tuple == t && slot.type_legal(ty) {
                out.push(slot);
            }
        }
    }
    out
}

/// Slots that a modulator of the given kind may use.
pub fn legal_slots(s: &Structure, ty: StructureType, kind: OperationKind) -> Vec<Slot> {
    all_slots(s, ty)
        .into_iter()
        .filter(|slot| slot.legal(s, ty, kind))
        .collect()
}

/// `s ▷ m`: per-relation symmetric difference.
pub fn apply(s: &Structure, m: &Modulator) -> Result<Structure> {
    let mut out = s.clone();
    for (sym, t) in m.resolved(s)? {
        out.toggle(sym, t);
    }
    Ok(out)
}

/// `‖m‖`: unordered pairs on undirected/basic graphs, tuples otherwise.
pub fn norm(m: &Modulator, t: StructureType) -> usize {
    if !t.is_symmetric() {
        return m.tuple_count();
    }
    m.relations
        .values()
        .map(|tuples| {
            tuples
                .iter()
                .map(|tup| {
                    let mut k = tup.clone();
                    if k.len() == 2 && k[0] > k[1] {
                        k.swap(0, 1);
                    }
                    k
                })
                .collect::<BTreeSet<_>>()
                .len()
        })
        .sum()
}

/// Kind legality plus type preservation of the result.
pub fn validate(s: &Structure, m: &Modulator, kind: OperationKind, t: StructureType) -> bool {
    let Ok(tuples) = m.resolved(s) else {
        return false;
    };
    let kind_ok = tuples.iter().all(|&(sym, tup)| match kind {
        OperationKind::Del => s.holds(sym, tup),
        OperationKind::Add => !s.holds(sym, tup),
        OperationKind::Edit => true,
    });
    if !kind_ok {
        return false;
    }
    match apply(s, m) {
        Ok(result) => check_structure_type(&result, t),
        Err(_) => false,
    }
}

/// Complement of every relation within `A^arity`; on basic graphs the
/// diagonal stays empty so the result is basic again.
pub fn complement_structure(s: &Structure, t: StructureType) -> Structure {
    let mut out = s.clone();
    for (sym, symbol) in s.vocabulary().symbols().iter().enumerate() {
        for tup in s.all_tuples(symbol.arity) {
            let diagonal = symbol.arity == 2 && tup[0] == tup[1];
            if t == StructureType::Basic && diagonal {
                continue;
            }
            out.toggle(sym, &tup);
        }
    }
    out
}

/// The sentence that the complement of a model satisfies: every atom is
/// negated; on basic graphs `x ~ y` becomes `¬(x = y) ∧ ¬(x ~ y)`.
pub fn complement_formula(f: &Formula, t: StructureType) -> Formula {
    let matrix = f.matrix().map_atoms(&|symbol, args| {
        let atom = Matrix::Atom {
            symbol: symbol.to_string(),
            args: args.to_vec(),
        };
        if t == StructureType::Basic && args.len() == 2 {
            Matrix::and([
                Matrix::not(Matrix::Eq(args[0].clone(), args[1].clone())),
                Matrix::not(atom),
            ])
        } else {
            Matrix::not(atom)
        }
    });
    f.with_matrix(matrix)
        .expect("complementing keeps the variables bound")
}

/// Lexicographic `r`-combinations of `0..n`, advanced in place.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let r = idx.len();
    let mut i = r;
    while i > 0 {
        i -= 1;
        if idx[i] < n - r + i {
            idx[i] += 1;
            for j in i + 1..r {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All valid modulators of norm at most `k`, by increasing norm and then
/// lexicographically over canonical slot order.
pub fn enumerate_modulators(
    s: &Structure,
    k: usize,
    kind: OperationKind,
    t: StructureType,
) -> impl Iterator<Item = Modulator> + '_ {
    let slots = legal_slots(s, t, kind);
    let n = slots.len();
    let max = k.min(n);
    (0..=max).flat_map(move |r| {
        let slots = slots.clone();
        let mut idx: Vec<usize> = (0..r).collect();
        let mut first = true;
        std::iter::from_fn(move || {
            if first {
                first = false;
            } else if !next_combination(&mut idx, n) {
                return None;
            }
            Some(Modulator::from_slots(
                s.vocabulary(),
                t,
                idx.iter().map(|&i| &slots[i]),
            ))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modulator(edges: &[(u32, u32)]) -> Modulator {
        let mut m = Modulator::empty();
        for &(u, v) in edges {
            m.insert("E", vec![u, v]);
        }
        m
    }

    #[test]
    fn apply_is_symmetric_difference() {
        let s = Structure::graph(3, &[(0, 1)]).unwrap();
        let r = apply(&s, &modulator(&[(0, 1), (1, 2)])).unwrap();
        assert_eq!(r, Structure::graph(3, &[(1, 2)]).unwrap());
        assert_eq!(apply(&s, &Modulator::empty()).unwrap(), s);
        let m = modulator(&[(2, 2), (0, 1)]);
        assert_eq!(apply(&apply(&s, &m).unwrap(), &m).unwrap(), s);
    }

    #[test]
    fn apply_rejects_out_of_range() {
        let s = Structure::graph(2, &[]).unwrap();
        assert!(apply(&s, &modulator(&[(0, 5)])).is_err());
        let mut bad = Modulator::empty();
        bad.insert("E", vec![0]);
        assert!(apply(&s, &bad).is_err());
    }

    #[test]
    fn norms() {
        assert_eq!(norm(&modulator(&[(0, 1), (1, 0)]), StructureType::Undir), 1);
        assert_eq!(norm(&modulator(&[(2, 2)]), StructureType::Undir), 1);
        assert_eq!(norm(&modulator(&[(0, 1), (1, 0)]), StructureType::Arb), 2);
        assert_eq!(norm(&Modulator::empty(), StructureType::Basic), 0);
    }

    #[test]
    fn validation() {
        let s = Structure::graph(3, &[]).unwrap();
        assert!(!validate(
            &s,
            &modulator(&[(0, 1)]),
            OperationKind::Del,
            StructureType::Dir
        ));
        assert!(!validate(
            &s,
            &modulator(&[(0, 1)]),
            OperationKind::Edit,
            StructureType::Basic
        ));
        assert!(validate(
            &s,
            &modulator(&[(0, 1), (1, 0)]),
            OperationKind::Add,
            StructureType::Basic
        ));
        assert!(!validate(
            &s,
            &modulator(&[(1, 1)]),
            OperationKind::Add,
            StructureType::Basic
        ));
        assert!(validate(
            &s,
            &modulator(&[(1, 1)]),
            OperationKind::Add,
            StructureType::Undir
        ));
    }

    #[test]
    fn complements() {
        let s = Structure::graph(2, &[(0, 1)]).unwrap();
        let c = complement_structure(&s, StructureType::Dir);
        assert_eq!(c, Structure::graph(2, &[(0, 0), (1, 0), (1, 1)]).unwrap());
        assert_eq!(complement_structure(&c, StructureType::Dir), s);
        let e = Structure::graph(2, &[]).unwrap();
        assert_eq!(
            complement_structure(&e, StructureType::Basic),
            Structure::graph(2, &[(0, 1), (1, 0)]).unwrap()
        );
    }

    #[test]
    fn complement_formulas() {
        let f: Formula = "forall x ~R(x)".parse().unwrap();
        let c = complement_formula(&f, StructureType::Arb);
        assert_eq!(
            c.matrix(),
            &Matrix::not(Matrix::not(Matrix::atom("R", &["x"])))
        );
        let g: Formula = "forall x exists y x ~ y".parse().unwrap();
        let want: Formula = "forall x exists y (~(x = y) & ~x ~ y)".parse().unwrap();
        assert_eq!(complement_formula(&g, StructureType::Basic), want);
        let h: Formula = "forall x forall y x = y".parse().unwrap();
        assert_eq!(complement_formula(&h, StructureType::Dir), h);
    }

    #[test]
    fn enumeration_examples() {
        let s = Structure::graph(2, &[]).unwrap();
        let zero: Vec<_> =
            enumerate_modulators(&s, 0, OperationKind::Edit, StructureType::Dir).collect();
        assert_eq!(zero, vec![Modulator::empty()]);
        let basic: Vec<_> =
            enumerate_modulators(&s, 1, OperationKind::Add, StructureType::Basic).collect();
        assert_eq!(
            basic,
            vec![Modulator::empty(), modulator(&[(0, 1), (1, 0)])]
        );
        // Independent count: 1 empty + |A^2| single toggles.
        let dir = enumerate_modulators(&s, 1, OperationKind::Edit, StructureType::Dir).count();
        let tuples = (0..2).flat_map(|u| (0..2).map(move |v| (u, v))).count();
        assert_eq!(dir, 1 + tuples);
        assert_eq!(dir, 5);
    }

    #[test]
    fn slots_round_trip_through_modulators() {
        let s = Structure::undirected_graph(3, &[(0, 1)]).unwrap();
        let slots = legal_slots(&s, StructureType::Undir, OperationKind::Edit);
        // pairs {u,v} with u <= v over 3 elements
        assert_eq!(slots.len(), 6);
        let m = Modulator::from_slots(s.vocabulary(), StructureType::Undir, &slots[..2]);
        assert_eq!(
            m.to_slots(&s, StructureType::Undir).unwrap(),
            slots[..2].to_vec()
        );
        assert!(modulator(&[(0, 2)])
            .to_slots(&s, StructureType::Undir)
            .is_err());
    }
}
