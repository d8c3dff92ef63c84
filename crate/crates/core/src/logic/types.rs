use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::structure::Structure;

/// Which structures an instance and its modified result may be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureType {
    /// Arbitrary relational structures.
    Arb,
    /// Directed graphs: one binary symbol.
    Dir,
    /// Directed graphs with a symmetric edge relation; self-loops allowed.
    Undir,
    /// Undirected graphs without self-loops.
    Basic,
    /// Structures over a monadic vocabulary.
    Mon,
}

impl StructureType {
    pub const ALL: [StructureType; 5] = [
        StructureType::Arb,
        StructureType::Dir,
        StructureType::Undir,
        StructureType::Basic,
        StructureType::Mon,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StructureType::Arb => "arb",
            StructureType::Dir => "dir",
            StructureType::Undir => "undir",
            StructureType::Basic => "basic",
            StructureType::Mon => "mon",
        }
    }

    /// Undirected and basic graphs count modifications by unordered pairs.
    pub fn is_symmetric(self) -> bool {
        matches!(self, StructureType::Undir | StructureType::Basic)
    }

    pub fn is_graph(self) -> bool {
        matches!(
            self,
            StructureType::Dir | StructureType::Undir | StructureType::Basic
        )
    }
}

impl fmt::Display for StructureType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StructureType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StructureType::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "structure type",
                name: s.to_string(),
            })
    }
}

/// Does `s` belong to the class of structures of type `t`?
pub fn check_structure_type(s: &Structure, t: StructureType) -> bool {
    match t {
        StructureType::Arb => true,
        StructureType::Mon => s.vocabulary().is_monadic(),
        StructureType::Dir => s.vocabulary().is_graph(),
        StructureType::Undir => s.vocabulary().is_graph() && is_symmetric(s),
        StructureType::Basic => s.vocabulary().is_graph() && is_symmetric(s) && is_irreflexive(s),
    }
}

fn is_symmetric(s: &Structure) -> bool {
    s.tuples(0).all(|t| s.holds(0, &[t[1], t[0]]))
}

fn is_irreflexive(s: &Structure) -> bool {
    (0..s.universe() as u32).all(|v| !s.holds(0, &[v, v]))
}
