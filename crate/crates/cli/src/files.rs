//! JSON oracle and list files.
//!
//! Oracle file:
//!
//! ```json
//! {"universe": "x1*x2 = 0 over Z", "equation": "x1*x2 = 0", "ring": "Z",
//!  "solutions": ["(0, 0)"], "infinite": true}
//! ```
//!
//! List file:
//!
//! ```json
//! {"universe": "x1^2 - a = 0 over Q", "ring": "Q",
//!  "equations": ["x1^2 - 2 = 0 @arity=2"],
//!  "validate": {"bound": 2000, "max_solutions": 2}}
//! ```

use std::fs;
use std::path::Path;

use h10::engines::{CuratedList, SolutionSet};
use h10::parser::{parse_equation, parse_tuple};
use h10::poly::Equation;
use h10::rings::RingSpec;
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct OracleDoc {
    #[serde(default)]
    universe: Option<String>,
    equation: String,
    ring: String,
    #[serde(default)]
    solutions: Vec<String>,
    #[serde(default)]
    infinite: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ListDoc {
    universe: String,
    ring: String,
    equations: Vec<String>,
    #[serde(default)]
    validate: Option<Validation>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Validation {
    bound: u64,
    max_solutions: usize,
}

pub struct OracleFile {
    pub universe: Option<String>,
    pub equation: Equation,
    pub ring: RingSpec,
    pub solutions: SolutionSet,
}

pub struct ListFile {
    pub ring: RingSpec,
    pub list: CuratedList,
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn equation(path: &Path, text: &str) -> Result<Equation, String> {
    parse_equation(text).map_err(|e| format!("{}: equation {text:?}: {}: {}", path.display(), e.diagnostic(), e.kind))
}

fn ring(path: &Path, text: &str) -> Result<RingSpec, String> {
    text.parse().map_err(|e| format!("{}: {e}", path.display()))
}

pub fn load_oracle(path: &Path) -> Result<OracleFile, String> {
    let doc: OracleDoc = serde_json::from_str(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut tuples = Vec::new();
    for text in &doc.solutions {
        let t = parse_tuple(text)
            .map_err(|e| format!("{}: tuple {text:?}: {}: {}", path.display(), e.diagnostic(), e.kind))?;
        tuples.push(t);
    }
    let solutions = if doc.infinite { SolutionSet::Infinite { samples: tuples } } else { SolutionSet::Finite(tuples) };
    Ok(OracleFile {
        universe: doc.universe,
        equation: equation(path, &doc.equation)?,
        ring: ring(path, &doc.ring)?,
        solutions,
    })
}

pub fn load_list(path: &Path) -> Result<ListFile, String> {
    let doc: ListDoc = serde_json::from_str(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    let ring = ring(path, &doc.ring)?;
    let equations = doc.equations.iter().map(|t| equation(path, t)).collect::<Result<Vec<_>, _>>()?;
    let list = CuratedList::new(doc.universe, equations).map_err(|e| format!("{}: {e}", path.display()))?;
    if let Some(v) = doc.validate {
        list.validate_by_search(&ring, v.bound, v.max_solutions).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(ListFile { ring, list })
}
