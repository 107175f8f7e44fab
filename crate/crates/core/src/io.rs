//! JSON, CSV and plain-text renderings of fans, folded fans and string
//! tables, with parsers for the JSON forms. Class members are numbered from 1
//! in every external format.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{AffineWeight, AlgebraSpec};
use crate::error::{Error, Result};
use crate::fan::{Fan, FanVector};
use crate::folding::FoldedFan;
use crate::strings::StringTable;

/// Serde adapter writing big integers as bare JSON numbers.
pub mod big_number {
    use super::*;

    pub fn to_number(v: &BigInt) -> serde_json::Number {
        serde_json::Number::from_str(&v.to_string()).expect("integer literal is a JSON number")
    }

    pub fn from_number(n: &serde_json::Number) -> std::result::Result<BigInt, String> {
        BigInt::from_str(&n.to_string()).map_err(|_| format!("{n} is not an integer"))
    }

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        to_number(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        from_number(&n).map_err(serde::de::Error::custom)
    }
}

mod big_number_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
        let nums: Vec<serde_json::Number> = v.iter().map(big_number::to_number).collect();
        nums.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<BigInt>, D::Error> {
        let nums = Vec::<serde_json::Number>::deserialize(d)?;
        nums.iter()
            .map(|n| big_number::from_number(n).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanEntry {
    pub root: Vec<i64>,
    pub grade: i64,
    pub mult: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldedEntry {
    pub target: usize,
    pub grade: usize,
    pub eta: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldedFanDoc {
    pub base: usize,
    pub entries: Vec<FoldedEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringDoc {
    pub xi: Vec<i64>,
    #[serde(with = "big_number_vec")]
    pub coeffs: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StringTableDoc {
    pub mu: Vec<i64>,
    pub level: i64,
    pub cutoff: i64,
    pub strings: Vec<StringDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterEntry {
    pub labels: Vec<i64>,
    pub grade: i64,
    #[serde(with = "big_number")]
    pub mult: BigInt,
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes")
}

fn parse<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::config(format!("invalid {what} JSON: {e}")))
}

pub fn fan_entries(fan: &Fan) -> Vec<FanEntry> {
    fan.vectors
        .iter()
        .map(|v| FanEntry {
            root: v.root.clone(),
            grade: v.grade,
            mult: v.mult,
        })
        .collect()
}

pub fn fan_to_json(fan: &Fan) -> String {
    to_json(&fan_entries(fan))
}

/// Rebuilds a fan from its JSON form. The cutoff is taken to be the highest
/// grade present.
pub fn fan_from_json(alg: &AlgebraSpec, text: &str) -> Result<Fan> {
    let entries: Vec<FanEntry> = parse(text, "fan")?;
    let mut vectors = Vec::with_capacity(entries.len());
    for e in entries {
        if e.root.len() != alg.rank() {
            return Err(Error::config("fan entry rank does not match the algebra"));
        }
        vectors.push(FanVector {
            labels: alg.labels_of_root(&e.root),
            root: e.root,
            grade: e.grade,
            mult: e.mult,
        });
    }
    let cutoff = vectors.iter().map(|v| v.grade).max().unwrap_or(0);
    Ok(Fan {
        algebra: alg.clone(),
        cutoff,
        vectors,
    })
}

pub fn fan_to_csv(fan: &Fan) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let r = fan.algebra.rank();
    let mut header: Vec<String> = (1..=r).map(|i| format!("a{i}")).collect();
    header.extend(["grade".into(), "mult".into()]);
    w.write_record(&header).expect("in-memory write");
    for v in &fan.vectors {
        let mut row: Vec<String> = v.root.iter().map(i64::to_string).collect();
        row.push(v.grade.to_string());
        row.push(v.mult.to_string());
        w.write_record(&row).expect("in-memory write");
    }
    finish(w)
}

/// One line per vector as `(a_1, .., a_r, 0, n, s)`.
pub fn fan_to_text(fan: &Fan) -> String {
    let mut out = String::new();
    for v in &fan.vectors {
        let parts: Vec<String> = v.root.iter().map(i64::to_string).collect();
        out.push_str(&format!(
            "({}, 0, {}, {})\n",
            parts.join(", "),
            v.grade,
            v.mult
        ));
    }
    out
}

pub fn folded_doc(ff: &FoldedFan) -> FoldedFanDoc {
    FoldedFanDoc {
        base: ff.base_index + 1,
        entries: ff
            .entries
            .iter()
            .map(|(&(s, n), &eta)| FoldedEntry {
                target: s + 1,
                grade: n,
                eta,
            })
            .collect(),
    }
}

pub fn folded_to_json(ff: &FoldedFan) -> String {
    to_json(&folded_doc(ff))
}

pub fn folded_list_to_json(fans: &[FoldedFan]) -> String {
    to_json(&fans.iter().map(folded_doc).collect::<Vec<_>>())
}

/// Parses one folded fan; the cutoff is the highest grade present.
pub fn folded_from_json(text: &str) -> Result<FoldedFan> {
    let doc: FoldedFanDoc = parse(text, "folded fan")?;
    folded_from_doc(doc)
}

pub fn folded_from_doc(doc: FoldedFanDoc) -> Result<FoldedFan> {
    if doc.base == 0 {
        return Err(Error::config("folded fan indices start at 1"));
    }
    let mut entries = std::collections::BTreeMap::new();
    for e in &doc.entries {
        if e.target == 0 {
            return Err(Error::config("folded fan indices start at 1"));
        }
        entries.insert((e.target - 1, e.grade), e.eta);
    }
    let cutoff = doc.entries.iter().map(|e| e.grade).max().unwrap_or(0) as i64;
    Ok(FoldedFan {
        base_index: doc.base - 1,
        cutoff,
        entries,
    })
}

pub fn folded_to_csv(fans: &[FoldedFan]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["base", "target", "grade", "eta"])
        .expect("in-memory write");
    for ff in fans {
        for (&(s, n), eta) in &ff.entries {
            w.write_record([
                (ff.base_index + 1).to_string(),
                (s + 1).to_string(),
                n.to_string(),
                eta.to_string(),
            ])
            .expect("in-memory write");
        }
    }
    finish(w)
}

pub fn folded_to_text(alg: &AlgebraSpec, base: &[AffineWeight], fans: &[FoldedFan]) -> String {
    let mut out = String::new();
    for ff in fans {
        out.push_str(&format!(
            "xi_{} = {}\n",
            ff.base_index + 1,
            root_display(alg, &base[ff.base_index])
        ));
        for (&(s, n), eta) in &ff.entries {
            out.push_str(&format!(
                "  ({}; {}; {})\n",
                root_display(alg, &base[s]),
                n,
                eta
            ));
        }
    }
    out
}

pub fn table_doc(table: &StringTable) -> StringTableDoc {
    StringTableDoc {
        mu: table.mu().classical.clone(),
        level: table.level,
        cutoff: table.cutoff(),
        strings: table
            .base
            .iter()
            .zip(&table.coefficients)
            .map(|(xi, c)| StringDoc {
                xi: xi.classical.clone(),
                coeffs: c.clone(),
            })
            .collect(),
    }
}

pub fn table_to_json(table: &StringTable) -> String {
    to_json(&table_doc(table))
}

pub fn table_from_json(text: &str) -> Result<StringTableDoc> {
    parse(text, "string table")
}

/// One row per string and grade; `grade` is the weight grade `-n`.
pub fn table_to_csv(table: &StringTable) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["string", "xi", "grade", "mult"])
        .expect("in-memory write");
    for (s, (xi, coeffs)) in table.base.iter().zip(&table.coefficients).enumerate() {
        let labels: Vec<String> = xi.classical.iter().map(i64::to_string).collect();
        for (n, c) in coeffs.iter().enumerate() {
            w.write_record([
                (s + 1).to_string(),
                labels.join(" "),
                (-(n as i64)).to_string(),
                c.to_string(),
            ])
            .expect("in-memory write");
        }
    }
    finish(w)
}

pub fn table_to_text(table: &StringTable) -> String {
    let alg = &table.algebra;
    let mut out = format!(
        "{} level {}, mu = {}, cutoff {}\n",
        alg.label(),
        table.level,
        root_display(alg, table.mu()),
        table.cutoff()
    );
    for (s, (xi, coeffs)) in table.base.iter().zip(&table.coefficients).enumerate() {
        out.push_str(&format!(
            "sigma_{} {}: {}\n",
            s + 1,
            root_display(alg, xi),
            series_text(coeffs)
        ));
    }
    out
}

pub fn character_entries(entries: &[(AffineWeight, BigInt)]) -> Vec<CharacterEntry> {
    entries
        .iter()
        .map(|(w, m)| CharacterEntry {
            labels: w.classical.clone(),
            grade: w.grade,
            mult: m.clone(),
        })
        .collect()
}

pub fn character_to_json(entries: &[(AffineWeight, BigInt)]) -> String {
    to_json(&character_entries(entries))
}

pub fn character_to_csv(entries: &[(AffineWeight, BigInt)]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["labels", "grade", "mult"])
        .expect("in-memory write");
    for (wt, m) in entries {
        let labels: Vec<String> = wt.classical.iter().map(i64::to_string).collect();
        w.write_record([labels.join(" "), wt.grade.to_string(), m.to_string()])
            .expect("in-memory write");
    }
    finish(w)
}

pub fn character_to_text(alg: &AlgebraSpec, entries: &[(AffineWeight, BigInt)]) -> String {
    entries
        .iter()
        .map(|(w, m)| format!("{}  {}\n", root_display(alg, w), m))
        .collect()
}

/// `(c_1, .., c_r; k; n)` with simple-root coordinates.
pub fn root_display(alg: &AlgebraSpec, w: &AffineWeight) -> String {
    let coords: Vec<String> = alg.to_root_basis(w).iter().map(|c| c.to_string()).collect();
    format!("({}; {}; {})", coords.join(","), w.level, w.grade)
}

fn series_text(coeffs: &[BigInt]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| match n {
            0 => c.to_string(),
            1 => format!("{c} q"),
            _ => format!("{c} q^{n}"),
        })
        .collect();
    terms.join(" + ")
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    let bytes = w.into_inner().expect("in-memory flush");
    String::from_utf8(bytes).expect("csv output is UTF-8")
}
