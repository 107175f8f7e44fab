//! Golden tables for A2 at levels 1, 2 and 4. The JSON files ship inside the
//! crate; setting `AFFSTR_FIXTURES` to a directory replaces them with every
//! `*.json` file found there.
//!
//! A value is either a bare integer or an annotation
//! `{"printed": v, "adjudicated": v', "note": ".."}` recording a printed value
//! that was corrected. Comparisons always use the adjudicated value.

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{big_number, FanEntry};

pub const FIXTURE_ENV: &str = "AFFSTR_FIXTURES";

const EMBEDDED: &[(&str, &str)] = &[
    ("a2-fan", include_str!("../fixtures/a2-fan.json")),
    (
        "a2-level1-eta",
        include_str!("../fixtures/a2-level1-eta.json"),
    ),
    (
        "a2-level1-folded-listing",
        include_str!("../fixtures/a2-level1-folded-listing.json"),
    ),
    (
        "a2-level1-strings",
        include_str!("../fixtures/a2-level1-strings.json"),
    ),
    (
        "a2-level2-class1-eta",
        include_str!("../fixtures/a2-level2-class1-eta.json"),
    ),
    (
        "a2-level2-class1-strings",
        include_str!("../fixtures/a2-level2-class1-strings.json"),
    ),
    (
        "a2-level2-class2-eta",
        include_str!("../fixtures/a2-level2-class2-eta.json"),
    ),
    (
        "a2-level2-class2-strings",
        include_str!("../fixtures/a2-level2-class2-strings.json"),
    ),
    (
        "a2-level2-class3-strings",
        include_str!("../fixtures/a2-level2-class3-strings.json"),
    ),
    (
        "a2-level4-class1-eta",
        include_str!("../fixtures/a2-level4-class1-eta.json"),
    ),
    (
        "a2-level4-mu-00-strings",
        include_str!("../fixtures/a2-level4-mu-00-strings.json"),
    ),
    (
        "a2-level4-mu-11-strings",
        include_str!("../fixtures/a2-level4-mu-11-strings.json"),
    ),
    (
        "a2-level4-mu-12-strings",
        include_str!("../fixtures/a2-level4-mu-12-strings.json"),
    ),
    (
        "a2-level4-mu-21-strings",
        include_str!("../fixtures/a2-level4-mu-21-strings.json"),
    ),
    (
        "a2-level4-mu-22-strings",
        include_str!("../fixtures/a2-level4-mu-22-strings.json"),
    ),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Plain(#[serde(with = "big_number")] BigInt),
    Annotated {
        #[serde(with = "big_number")]
        printed: BigInt,
        #[serde(with = "big_number")]
        adjudicated: BigInt,
        note: String,
    },
}

impl Entry {
    pub fn expected(&self) -> &BigInt {
        match self {
            Entry::Plain(v) => v,
            Entry::Annotated { adjudicated, .. } => adjudicated,
        }
    }

    pub fn printed(&self) -> &BigInt {
        match self {
            Entry::Plain(v) => v,
            Entry::Annotated { printed, .. } => printed,
        }
    }

    pub fn is_annotated(&self) -> bool {
        matches!(self, Entry::Annotated { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaRow {
    /// 1-based class members.
    pub base: usize,
    pub target: usize,
    /// `η(0), η(1), ..`
    pub eta: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringRow {
    pub xi: Vec<i64>,
    pub coeffs: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FixtureBody {
    Fan {
        algebra: String,
        cutoff: i64,
        vectors: Vec<FanEntry>,
    },
    FoldedFan {
        algebra: String,
        level: i64,
        /// Any member of the class, as Dynkin labels.
        mu: Vec<i64>,
        depth: usize,
        rows: Vec<EtaRow>,
    },
    Strings {
        algebra: String,
        level: i64,
        mu: Vec<i64>,
        depth: usize,
        strings: Vec<StringRow>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    #[serde(default)]
    pub description: String,
    #[serde(flatten)]
    pub body: FixtureBody,
}

impl Fixture {
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let mut fx: Fixture = serde_json::from_str(text)
            .map_err(|e| Error::config(format!("fixture {name}: {e}")))?;
        if fx.name.is_empty() {
            fx.name = name.to_string();
        }
        Ok(fx)
    }

    /// Number of annotated entries.
    pub fn annotations(&self) -> usize {
        match &self.body {
            FixtureBody::Fan { .. } => 0,
            FixtureBody::FoldedFan { rows, .. } => rows
                .iter()
                .flat_map(|r| &r.eta)
                .filter(|e| e.is_annotated())
                .count(),
            FixtureBody::Strings { strings, .. } => strings
                .iter()
                .flat_map(|r| &r.coeffs)
                .filter(|e| e.is_annotated())
                .count(),
        }
    }
}

pub fn embedded() -> Vec<Fixture> {
    EMBEDDED
        .iter()
        .map(|(name, text)| Fixture::parse(name, text).expect("embedded fixtures parse"))
        .collect()
}

/// Every `*.json` file of a directory, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<Fixture>> {
    let read = std::fs::read_dir(dir).map_err(|e| {
        Error::config(format!(
            "cannot read fixture directory {}: {e}",
            dir.display()
        ))
    })?;
    let mut paths: Vec<_> = read
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::config(format!("cannot read {}: {e}", p.display())))?;
            let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or("fixture");
            Fixture::parse(stem, &text)
        })
        .collect()
}

/// Fixtures from `AFFSTR_FIXTURES` when set, otherwise the embedded set.
pub fn load() -> Result<Vec<Fixture>> {
    match std::env::var_os(FIXTURE_ENV) {
        Some(dir) => load_dir(Path::new(&dir)),
        None => Ok(embedded()),
    }
}

/// Writes the embedded fixtures into a directory, e.g. as a starting point
/// for an override set.
pub fn export(dir: &Path) -> Result<()> {
    for (name, text) in EMBEDDED {
        std::fs::write(dir.join(format!("{name}.json")), text)
            .map_err(|e| Error::config(format!("cannot write fixture {name}: {e}")))?;
    }
    Ok(())
}
