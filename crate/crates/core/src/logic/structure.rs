//! Relational vocabularies and finite ordered structures.
//!
//! Universe elements are the integers `0..n`; their numeric order is the order
//! every algorithm in this crate assumes. Relations are stored densely, one
//! bit per possible tuple, indexed in lexicographic tuple order.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

/// Largest number of candidate tuples a single relation may span.
const MAX_RELATION_CELLS: usize = 1 << 26;

/// Name of the edge symbol in the graph vocabulary.
pub const EDGE: &str = "E";

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

/// An ordered list of relation symbols. The position of a symbol is its index
/// `i` in `R_1, …, R_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vocabulary {
    symbols: Vec<Symbol>,
}

impl Vocabulary {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let mut out: Vec<Symbol> = Vec::new();
        for (name, arity) in symbols {
            let name = name.into();
            if name.is_empty() {
                return Err(Error::InvalidVocabulary("empty symbol name".into()));
            }
            if arity == 0 {
                return Err(Error::InvalidVocabulary(format!(
                    "symbol `{name}` has arity 0"
                )));
            }
            if out.iter().any(|s| s.name == name) {
                return Err(Error::InvalidVocabulary(format!(
                    "duplicate symbol `{name}`"
                )));
            }
            out.push(Symbol { name, arity });
        }
        Ok(Vocabulary { symbols: out })
    }

    /// The digraph vocabulary `{E/2}`.
    pub fn graph() -> Self {
        Vocabulary {
            symbols: vec![Symbol {
                name: EDGE.to_string(),
                arity: 2,
            }],
        }
    }

    /// A monadic vocabulary with the given unary symbols.
    pub fn monadic<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::new(names.into_iter().map(|n| (n, 1)))
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    pub fn is_monadic(&self) -> bool {
        self.symbols.iter().all(|s| s.arity == 1)
    }

    /// True if the vocabulary consists of exactly one binary symbol.
    pub fn is_graph(&self) -> bool {
        self.symbols.len() == 1 && self.symbols[0].arity == 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Relation {
    arity: usize,
    bits: Vec<bool>,
}

/// A finite relational structure over `0..universe`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Structure {
    vocabulary: Vocabulary,
    universe: usize,
    relations: Vec<Relation>,
}

impl Structure {
    /// An empty structure (all relations empty).
    pub fn empty(vocabulary: Vocabulary, universe: usize) -> Result<Self> {
        if universe == 0 {
            return Err(Error::InvalidStructure("universe must be nonempty".into()));
        }
        let mut relations = Vec::with_capacity(vocabulary.len());
        for sym in vocabulary.symbols() {
            let cells = checked_cells(universe, sym.arity).ok_or_else(|| {
                Error::InvalidStructure(format!(
                    "relation `{}` over {universe} elements is too large",
                    sym.name
                ))
            })?;
            relations.push(Relation {
                arity: sym.arity,
                bits: vec![false; cells],
            });
        }
        Ok(Structure {
            vocabulary,
            universe,
            relations,
        })
    }

    /// Builds a structure from per-symbol tuple lists, in vocabulary order.
    pub fn from_tuples<T>(
        vocabulary: Vocabulary,
        universe: usize,
        tuples: Vec<Vec<T>>,
    ) -> Result<Self>
    where
        T: AsRef<[u32]>,
    {
        if tuples.len() != vocabulary.len() {
            return Err(Error::InvalidStructure(format!(
                "expected {} relations, got {}",
                vocabulary.len(),
                tuples.len()
            )));
        }
        let mut s = Self::empty(vocabulary, universe)?;
        for (sym, list) in tuples.iter().enumerate() {
            for t in list {
                s.insert(sym, t.as_ref())?;
            }
        }
        Ok(s)
    }

    /// A graph over the vocabulary `{E/2}` with the given directed edges.
    pub fn graph(universe: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let tuples: Vec<[u32; 2]> = edges.iter().map(|&(u, v)| [u, v]).collect();
        Self::from_tuples(Vocabulary::graph(), universe, vec![tuples])
    }

    /// A graph where every listed pair is inserted in both orientations.
    pub fn undirected_graph(universe: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let both: Vec<(u32, u32)> = edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
        Self::graph(universe, &both)
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn arity(&self, symbol: usize) -> usize {
        self.relations[symbol].arity
    }

    fn index(&self, tuple: &[u32]) -> usize {
        tuple
            .iter()
            .fold(0usize, |acc, &e| acc * self.universe + e as usize)
    }

    fn decode(&self, mut index: usize, arity: usize) -> Vec<u32> {
        let mut t = vec![0u32; arity];
        for slot in t.iter_mut().rev() {
            *slot = (index % self.universe) as u32;
            index /= self.universe;
        }
        t
    }

    /// Checks that `tuple` fits symbol `symbol` of this structure.
    pub fn check_tuple(&self, symbol: usize, tuple: &[u32]) -> Result<()> {
        let rel = self
            .relations
            .get(symbol)
            .ok_or_else(|| Error::InvalidStructure(format!("no symbol with index {symbol}")))?;
        if tuple.len() != rel.arity {
            return Err(Error::ArityMismatch {
                symbol: self.vocabulary.symbols[symbol].name.clone(),
                expected: rel.arity,
                found: tuple.len(),
            });
        }
        if let Some(&bad) = tuple.iter().find(|&&e| e as usize >= self.universe) {
            return Err(Error::InvalidStructure(format!(
                "element {bad} outside universe of size {}",
                self.universe
            )));
        }
        Ok(())
    }

    /// Membership test. The tuple must be well-formed for the symbol.
    #[inline]
    pub fn holds(&self, symbol: usize, tuple: &[u32]) -> bool {
        self.relations[symbol].bits[self.index(tuple)]
    }

    /// Flips membership of one tuple.
    #[inline]
    pub fn toggle(&mut self, symbol: usize, tuple: &[u32]) {
        let i = self.index(tuple);
        let cell = &mut self.relations[symbol].bits[i];
        *cell = !*cell;
    }

    pub fn insert(&mut self, symbol: usize, tuple: &[u32]) -> Result<()> {
        self.check_tuple(symbol, tuple)?;
        let i = self.index(tuple);
        self.relations[symbol].bits[i] = true;
        Ok(())
    }

    pub fn remove(&mut self, symbol: usize, tuple: &[u32]) -> Result<()> {
        self.check_tuple(symbol, tuple)?;
        let i = self.index(tuple);
        self.relations[symbol].bits[i] = false;
        Ok(())
    }

    /// Tuples of one relation in lexicographic order.
    pub fn tuples(&self, symbol: usize) -> impl Iterator<Item = Vec<u32>> + '_ {
        let rel = &self.relations[symbol];
        rel.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(i, _)| self.decode(i, rel.arity))
    }

    /// Every tuple of `A^arity` in lexicographic order.
    pub fn all_tuples(&self, arity: usize) -> impl Iterator<Item = Vec<u32>> + '_ {
        let cells = checked_cells(self.universe, arity).unwrap_or(0);
        (0..cells).map(move |i| self.decode(i, arity))
    }

    pub fn relation_size(&self, symbol: usize) -> usize {
        self.relations[symbol].bits.iter().filter(|&&b| b).count()
    }

    /// Index of the single edge symbol when the vocabulary is a graph vocabulary.
    pub fn edge_symbol(&self) -> Option<usize> {
        self.vocabulary.is_graph().then_some(0)
    }

    /// Neighbours of `v` along the edge relation (out-neighbours for digraphs),
    /// excluding `v` itself.
    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        (0..self.universe as u32).filter(move |&w| w != v && self.holds(0, &[v, w]))
    }

    /// Applies a permutation of the universe: element `e` becomes `perm[e]`.
    pub fn permuted(&self, perm: &[u32]) -> Structure {
        assert_eq!(perm.len(), self.universe, "permutation has wrong length");
        let mut out = Structure {
            vocabulary: self.vocabulary.clone(),
            universe: self.universe,
            relations: self
                .relations
                .iter()
                .map(|r| Relation {
                    arity: r.arity,
                    bits: vec![false; r.bits.len()],
                })
                .collect(),
        };
        for sym in 0..self.relations.len() {
            for t in self.tuples(sym) {
                let mapped: Vec<u32> = t.iter().map(|&e| perm[e as usize]).collect();
                out.toggle(sym, &mapped);
            }
        }
        out
    }

    /// JSON form: `{"universe": n, "relations": {"E": {"arity": 2, "tuples": [[0,1]]}}}`.
    pub fn to_json(&self) -> Value {
        let mut rels = Map::new();
        for (i, sym) in self.vocabulary.symbols().iter().enumerate() {
            let tuples: Vec<Vec<u32>> = self.tuples(i).collect();
            rels.insert(
                sym.name.clone(),
                json!({"arity": sym.arity, "tuples": tuples}),
            );
        }
        json!({"universe": self.universe, "relations": rels})
    }

    /// SHA-256 of the compact JSON form, hex encoded.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        hex::encode(Sha256::digest(self.to_json().to_string().as_bytes()))
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::InvalidStructure("expected a JSON object".into()))?;
        let universe = obj
            .get("universe")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::InvalidStructure("missing integer field `universe`".into()))?
            as usize;
        let rels = match obj.get("relations") {
            Some(Value::Object(m)) => m.clone(),
            None => Map::new(),
            Some(_) => {
                return Err(Error::InvalidStructure(
                    "`relations` must be an object".into(),
                ))
            }
        };
        #[derive(Deserialize)]
        struct RelJson {
            arity: usize,
            #[serde(default)]
            tuples: Vec<Vec<u32>>,
        }
        let mut symbols = Vec::new();
        let mut tuples = Vec::new();
        for (name, body) in rels {
            let rel: RelJson = serde_json::from_value(body)?;
            symbols.push((name, rel.arity));
            tuples.push(rel.tuples);
        }
        let vocabulary = Vocabulary::new(symbols)?;
        Structure::from_tuples(vocabulary, universe, tuples)
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.universe)?;
        for (i, sym) in self.vocabulary.symbols().iter().enumerate() {
            write!(f, " {}={{", sym.name)?;
            for (j, t) in self.tuples(i).enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                let parts: Vec<String> = t.iter().map(u32::to_string).collect();
                write!(f, "({})", parts.join(","))?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

fn checked_cells(universe: usize, arity: usize) -> Option<usize> {
    let cells = universe.checked_pow(arity as u32)?;
    (cells <= MAX_RELATION_CELLS).then_some(cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vocabulary_rejects_bad_symbols() {
        assert!(Vocabulary::new([("E", 0)]).is_err());
        assert!(Vocabulary::new([("", 1)]).is_err());
        assert!(Vocabulary::new([("R", 1), ("R", 2)]).is_err());
        let v = Vocabulary::new([("P", 1), ("E", 2)]).unwrap();
        assert_eq!(v.index_of("E"), Some(1));
    }

    #[test]
    fn structure_rejects_out_of_range_tuples() {
        assert!(Structure::graph(2, &[(0, 2)]).is_err());
        assert!(Structure::empty(Vocabulary::graph(), 0).is_err());
    }

    #[test]
    fn tuples_come_out_sorted() {
        let s = Structure::graph(3, &[(2, 0), (0, 1), (1, 1)]).unwrap();
        let ts: Vec<_> = s.tuples(0).collect();
        assert_eq!(ts, vec![vec![0, 1], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn json_round_trip() {
        let v = Vocabulary::new([("P", 1), ("E", 2)]).unwrap();
        let s = Structure::from_tuples(v, 3, vec![vec![vec![2]], vec![vec![0, 1], vec![1, 0]]])
            .unwrap();
        let back = Structure::from_json(&s.to_json()).unwrap();
        assert_eq!(s, back);
        let text = r#"{"universe": 2, "relations": {"E": {"arity": 2, "tuples": [[0,1],[1,0]]}}}"#;
        let g = Structure::from_json(&serde_json::from_str(text).unwrap()).unwrap();
        assert!(g.holds(0, &[1, 0]));
        assert_eq!(g.relation_size(0), 2);
    }

    #[test]
    fn permutation_moves_tuples() {
        let s = Structure::graph(3, &[(0, 1)]).unwrap();
        let p = s.permuted(&[2, 0, 1]);
        assert!(p.holds(0, &[2, 0]));
        assert_eq!(p.relation_size(0), 1);
    }
}
