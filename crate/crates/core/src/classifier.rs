//! Complexity landscape of relation modification problems by structure type,
//! operation and quantifier pattern.
//!
//! Verdicts describe the whole class of problems with a given pattern: a
//! hard bucket means the class *contains* a hard problem, an easy bucket
//! means every member is easy. The operation never changes the verdict.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::{Pattern, StructureType};
use crate::modification::OperationKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Setting {
    Classical,
    Parameterized,
}

impl Setting {
    pub const ALL: [Setting; 2] = [Setting::Classical, Setting::Parameterized];

    pub fn name(self) -> &'static str {
        match self {
            Setting::Classical => "classical",
            Setting::Parameterized => "parameterized",
        }
    }
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Setting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(Setting::Classical),
            "parameterized" | "param" => Ok(Setting::Parameterized),
            _ => Err(Error::UnknownName {
                kind: "setting",
                name: s.to_string(),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bucket {
    #[serde(rename = "AC0")]
    Ac0,
    #[serde(rename = "TC0_not_AC0")]
    Tc0NotAc0,
    #[serde(rename = "NPhard_containing")]
    NpHardContaining,
    #[serde(rename = "ParaAC0")]
    ParaAc0,
    #[serde(rename = "ParaAC0up")]
    ParaAc0Up,
    #[serde(rename = "W2hard_containing")]
    W2HardContaining,
}

impl Bucket {
    pub fn name(self) -> &'static str {
        match self {
            Bucket::Ac0 => "AC0",
            Bucket::Tc0NotAc0 => "TC0_not_AC0",
            Bucket::NpHardContaining => "NPhard_containing",
            Bucket::ParaAc0 => "ParaAC0",
            Bucket::ParaAc0Up => "ParaAC0up",
            Bucket::W2HardContaining => "W2hard_containing",
        }
    }

    pub fn setting(self) -> Setting {
        match self {
            Bucket::Ac0 | Bucket::Tc0NotAc0 | Bucket::NpHardContaining => Setting::Classical,
            _ => Setting::Parameterized,
        }
    }

    /// Position in the hardness order of its setting.
    pub fn rank(self) -> u8 {
        match self {
            Bucket::Ac0 | Bucket::ParaAc0 => 0,
            Bucket::Tc0NotAc0 | Bucket::ParaAc0Up => 1,
            Bucket::NpHardContaining | Bucket::W2HardContaining => 2,
        }
    }
}

impl fmt::Display for Bucket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A rule that fired: the pattern family that matched and where the result
/// comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub pattern: String,
    #[serde(rename = "ref")]
    pub reference: String,
}

impl Rule {
    fn new(pattern: &str, reference: &str) -> Rule {
        Rule {
            pattern: pattern.to_string(),
            reference: reference.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityVerdict {
    pub setting: Setting,
    pub bucket: Bucket,
    pub rules: Vec<Rule>,
}

impl ComplexityVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("verdicts serialize")
    }
}

impl fmt::Display for ComplexityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.bucket, self.setting)?;
        for r in &self.rules {
            write!(f, "\n  {}: {}", r.pattern, r.reference)?;
        }
        Ok(())
    }
}

const NP_BASIC: [&str; 6] = ["aea", "aee", "aae", "eae", "eaa", "aaa"];
const W2_BASIC: [&str; 4] = ["aea", "aee", "aae", "eae"];

const REF_E_STAR: &str = "existential prefix: enumerate assignments and local configurations";
const REF_E_STAR_A: &str =
    "certificate plus independent minimal local modulators, combined by counting";
const REF_MAJORITY: &str = "Majority reduces to the a fragment";
const REF_VERTEX_COVER: &str = "Vertex-Cover reduces to aa with loop additions";
const REF_SET_COVER_AE: &str = "Set-Cover reduces to ae via self-loops on set vertices";
const REF_SEARCH_TREE: &str = "bounded search tree over the first violated universal assignment";
const REF_BASIC_AE: &str = "basic ae: count isolated or universal vertices against 2k";
const REF_BASIC_AA: &str = "basic aa: only cliques and edgeless graphs are non-trivial";
const REF_BASIC_SMALL: &str = "basic graphs: a and e* prefixes fold to constant-size checks";
const REF_MONADIC_CLASSICAL: &str = "monadic: decide via the type histogram";
const REF_MONADIC_PARAM: &str = "monadic: finitely many lexicographically minimal type modulators";
const OPEN_A_STAR: &str =
    "membership of the a* fragment in ParaAC0 is open; ParaAC0up is the known bound";
const E_STAR_A_PARA: &str = "e*a is also in ParaAC0 as a consequence of the classical bound";

fn hard_basic_ref(word: &str) -> &'static str {
    match word {
        "aea" => "Set-Cover reduces to aea: edges outside triangles",
        "aee" => "Set-Cover reduces to aee: every vertex on a triangle",
        "aae" => "Set-Cover reduces to aae: every edge on a triangle",
        "eae" => "Set-Cover reduces to eae: radius at most two",
        "eaa" => "Vertex-Cover reduces to eaa with a hub vertex",
        _ => "cluster editing: cluster graphs are defined by an aaa sentence",
    }
}

fn embedded<'a>(p: &Pattern, words: &[&'a str]) -> Vec<&'a str> {
    words.iter().copied().filter(|w| p.contains(w)).collect()
}

/// p ⪯ w for one of the words.
fn below_any(p: &Pattern, words: &[&str]) -> bool {
    words.iter().any(|w| p.embeds_in(w))
}

/// Every bucket of the setting paired with whether its defining predicate
/// holds. Exactly one holds for every pattern; [`classify`] relies on it.
pub fn bucket_predicates(t: StructureType, setting: Setting, p: &Pattern) -> Vec<(Bucket, bool)> {
    use StructureType::*;
    match (setting, t) {
        (Setting::Classical, Arb | Dir | Undir) => vec![
            (Bucket::Ac0, p.in_e_star()),
            (Bucket::Tc0NotAc0, p.contains("a") && p.in_e_star_a()),
            (
                Bucket::NpHardContaining,
                p.contains("aa") || p.contains("ae"),
            ),
        ],
        (Setting::Classical, Basic) => vec![
            (Bucket::Ac0, p.in_e_star() || p.embeds_in("a")),
            (
                Bucket::Tc0NotAc0,
                !embedded(p, &["ea", "ae", "aa"]).is_empty()
                    && (p.in_e_star_a() || below_any(p, &["aa", "ae"])),
            ),
            (Bucket::NpHardContaining, !embedded(p, &NP_BASIC).is_empty()),
        ],
        (Setting::Classical, Mon) => vec![
            (Bucket::Ac0, p.in_e_star()),
            (Bucket::Tc0NotAc0, !p.in_e_star()),
        ],
        (Setting::Parameterized, Arb | Dir | Undir) => vec![
            (Bucket::ParaAc0Up, p.in_e_star_a_star()),
            (Bucket::W2HardContaining, p.contains("ae")),
        ],
        (Setting::Parameterized, Basic) => vec![
            (Bucket::ParaAc0Up, p.in_e_star_a_star() || p.embeds_in("ae")),
            (Bucket::W2HardContaining, !embedded(p, &W2_BASIC).is_empty()),
        ],
        (Setting::Parameterized, Mon) => vec![(Bucket::ParaAc0, true)],
    }
}

pub fn classify(t: StructureType, setting: Setting, p: &Pattern) -> ComplexityVerdict {
    let bucket = bucket_predicates(t, setting, p)
        .into_iter()
        .find(|&(_, holds)| holds)
        .map(|(b, _)| b)
        .expect("bucket predicates are total");
    ComplexityVerdict {
        setting,
        bucket,
        rules: rules(t, bucket, p),
    }
}

pub fn classify_classical(t: StructureType, _op: OperationKind, p: &Pattern) -> ComplexityVerdict {
    classify(t, Setting::Classical, p)
}

pub fn classify_parameterized(
    t: StructureType,
    _op: OperationKind,
    p: &Pattern,
) -> ComplexityVerdict {
    classify(t, Setting::Parameterized, p)
}

fn rules(t: StructureType, bucket: Bucket, p: &Pattern) -> Vec<Rule> {
    use StructureType::*;
    let basic = t == Basic;
    match bucket {
        Bucket::Ac0 if basic && !p.in_e_star() => vec![Rule::new("a", REF_BASIC_SMALL)],
        Bucket::Ac0 => vec![Rule::new("e*", REF_E_STAR)],
        Bucket::Tc0NotAc0 if t == Mon => vec![Rule::new("mon", REF_MONADIC_CLASSICAL)],
        Bucket::Tc0NotAc0 => {
            let mut out = Vec::new();
            if p.in_e_star_a() {
                out.push(Rule::new("e*a", REF_E_STAR_A));
            }
            if basic {
                if p.embeds_in("aa") {
                    out.push(Rule::new("aa", REF_BASIC_AA));
                }
                if p.embeds_in("ae") {
                    out.push(Rule::new("ae", REF_BASIC_AE));
                }
                out.push(Rule::new(
                    "ea|ae|aa",
                    "Majority reduces to ea, ae and aa on basic graphs",
                ));
            } else {
                out.push(Rule::new("a", REF_MAJORITY));
            }
            out
        }
        Bucket::NpHardContaining if basic => embedded(p, &NP_BASIC)
            .into_iter()
            .map(|w| Rule::new(w, hard_basic_ref(w)))
            .collect(),
        Bucket::NpHardContaining => {
            let mut out = Vec::new();
            if p.contains("aa") {
                out.push(Rule::new("aa", REF_VERTEX_COVER));
            }
            if p.contains("ae") {
                out.push(Rule::new("ae", REF_SET_COVER_AE));
            }
            out
        }
        Bucket::ParaAc0 => vec![Rule::new("mon", REF_MONADIC_PARAM)],
        Bucket::ParaAc0Up => {
            let mut out = Vec::new();
            if p.in_e_star_a_star() {
                out.push(Rule::new("e*a*", REF_SEARCH_TREE));
            } else {
                out.push(Rule::new("ae", REF_BASIC_AE));
            }
            if p.in_e_star_a() {
                out.push(Rule::new("e*a", E_STAR_A_PARA));
            } else if p.chars_all('a') {
                out.push(Rule::new("a*", OPEN_A_STAR));
            }
            out
        }
        Bucket::W2HardContaining if basic => embedded(p, &W2_BASIC)
            .into_iter()
            .map(|w| Rule::new(w, hard_basic_ref(w)))
            .collect(),
        Bucket::W2HardContaining => vec![Rule::new("ae", REF_SET_COVER_AE)],
    }
}

trait AllChars {
    fn chars_all(&self, c: char) -> bool;
}

impl AllChars for Pattern {
    fn chars_all(&self, c: char) -> bool {
        !self.is_empty() && self.as_str().chars().all(|x| x == c)
    }
}

/// One row of the landscape: every type and setting for a pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LandscapeRow {
    pub pattern: Pattern,
    pub structure_type: StructureType,
    pub classical: Bucket,
    pub parameterized: Bucket,
}

/// The landscape for all patterns up to `max_len`, ordered by length, then
/// pattern, then type.
pub fn landscape(max_len: usize) -> Vec<LandscapeRow> {
    let mut out = Vec::new();
    for p in Pattern::all_up_to(max_len) {
        for t in StructureType::ALL {
            out.push(LandscapeRow {
                classical: classify(t, Setting::Classical, &p).bucket,
                parameterized: classify(t, Setting::Parameterized, &p).bucket,
                pattern: p.clone(),
                structure_type: t,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        use StructureType::*;
        let c = |t, w| classify_classical(t, OperationKind::Edit, &p(w)).bucket;
        let q = |t, w| classify_parameterized(t, OperationKind::Del, &p(w)).bucket;
        assert_eq!(c(Undir, "a"), Bucket::Tc0NotAc0);
        assert_eq!(c(Basic, "eaa"), Bucket::NpHardContaining);
        assert_eq!(c(Mon, "eee"), Bucket::Ac0);
        assert_eq!(q(Dir, "ae"), Bucket::W2HardContaining);
        assert_eq!(q(Basic, "ae"), Bucket::ParaAc0Up);
        assert_eq!(q(Mon, "aeaeae"), Bucket::ParaAc0);
    }

    #[test]
    fn verdict_json_shape() {
        let v = classify(StructureType::Undir, Setting::Parameterized, &p("ae"));
        let j = v.to_json();
        assert_eq!(j["setting"], "parameterized");
        assert_eq!(j["bucket"], "W2hard_containing");
        assert_eq!(j["rules"][0]["pattern"], "ae");
        assert!(j["rules"][0]["ref"].is_string());
    }

    #[test]
    fn a_star_notes_open_status() {
        let v = classify(StructureType::Dir, Setting::Parameterized, &p("aaa"));
        assert_eq!(v.bucket, Bucket::ParaAc0Up);
        assert!(v.rules.iter().any(|r| r.reference.contains("open")));
    }

    #[test]
    fn every_verdict_has_rules() {
        for w in Pattern::all_up_to(4) {
            for t in StructureType::ALL {
                for s in Setting::ALL {
                    assert!(!classify(t, s, &w).rules.is_empty(), "{t} {s} {w}");
                }
            }
        }
    }
}
