//! The `afa-v1` JSON document.
//!
//! ```json
//! {
//!   "format": "afa-v1",
//!   "kind": "affine",
//!   "alphabet": ["a"],
//!   "states": 2,
//!   "initial": ["1", "0"],
//!   "accepting": [0],
//!   "transitions": {
//!     "a": [["1/2", "0"], ["1/2", "1"]]
//!   }
//! }
//! ```
//!
//! Grids are row-major and entry `[i][j]` is the flow from state `j` to
//! state `i`, so every column sums to 1. Numbers are strings holding an
//! integer, a fraction `p/q` or a finite decimal; bare JSON integers are
//! accepted too. A matrix may instead be given as
//! `{"entries": [[i, j, "x"], ...]}` listing its nonzero entries, which
//! [`serialize`] does above [`DENSE_LIMIT`] states.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::{self, Deserializer, MapAccess, SeqAccess, Visitor};
use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

use crate::automaton::{Afa, Kind, Violation};
use crate::linalg::{AffineMatrix, AffineVector};
use crate::projection::Projection;
use crate::rational::parse_rational;
use crate::Rational;

pub const FORMAT_TAG: &str = "afa-v1";

/// Written into the `comment` field by [`serialize`].
pub const LAYOUT_COMMENT: &str =
    "grids are row-major; entry [i][j] is the flow from state j to state i; every column sums to 1";

/// Largest state count written as dense grids.
pub const DENSE_LIMIT: usize = 32;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{path}: {message}")]
    Field { path: String, message: String },

    #[error("invalid automaton: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

fn field(path: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Field {
        path: path.into(),
        message: message.into(),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    format: String,
    #[serde(default, rename = "comment")]
    _comment: Option<String>,
    kind: String,
    alphabet: Vec<String>,
    states: usize,
    initial: Vec<Number>,
    accepting: Vec<usize>,
    transitions: BTreeMap<String, Grid>,
}

enum Number {
    Text(String),
    Integer(i64),
}

impl<'de> Deserialize<'de> for Number {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Number;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number string or an integer")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<Number, E> {
                Ok(Number::Text(s.to_string()))
            }
            fn visit_i64<E: de::Error>(self, n: i64) -> Result<Number, E> {
                Ok(Number::Integer(n))
            }
            fn visit_u64<E: de::Error>(self, n: u64) -> Result<Number, E> {
                i64::try_from(n)
                    .map(Number::Integer)
                    .map_err(|_| E::custom("integer too large, write it as a string"))
            }
        }
        d.deserialize_any(V)
    }
}

enum Grid {
    Dense(Vec<Vec<Number>>),
    Sparse(Vec<(usize, usize, Number)>),
}

impl<'de> Deserialize<'de> for Grid {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Grid;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a list of rows or an object with \"entries\"")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, seq: A) -> Result<Grid, A::Error> {
                Vec::deserialize(de::value::SeqAccessDeserializer::new(seq)).map(Grid::Dense)
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Grid, A::Error> {
                let mut entries = None;
                while let Some(key) = map.next_key::<String>()? {
                    if key != "entries" || entries.is_some() {
                        return Err(de::Error::custom(format!("unexpected key {key:?}")));
                    }
                    entries = Some(map.next_value()?);
                }
                entries.map(Grid::Sparse).ok_or_else(|| de::Error::missing_field("entries"))
            }
        }
        d.deserialize_any(V)
    }
}

fn number(n: &Number, path: impl FnOnce() -> String) -> Result<Rational, FormatError> {
    match n {
        Number::Integer(i) => Ok(Rational::from_integer((*i).into())),
        Number::Text(s) => parse_rational(s).map_err(|e| field(path(), e.to_string())),
    }
}

fn symbol(s: &str, path: impl FnOnce() -> String) -> Result<char, FormatError> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(field(path(), format!("symbol {s:?} is not a single character"))),
    }
}

fn matrix(grid: &Grid, k: usize, key: &str) -> Result<AffineMatrix, FormatError> {
    let base = format!("transitions.{key}");
    match grid {
        Grid::Dense(rows) => {
            if rows.len() != k {
                return Err(field(base, format!("expected {k} rows, found {}", rows.len())));
            }
            let rows = rows
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    if row.len() != k {
                        return Err(field(
                            format!("{base}[{i}]"),
                            format!("expected {k} entries, found {}", row.len()),
                        ));
                    }
                    row.iter()
                        .enumerate()
                        .map(|(j, x)| number(x, || format!("{base}[{i}][{j}]")))
                        .collect()
                })
                .collect::<Result<Vec<Vec<_>>, _>>()?;
            Ok(AffineMatrix::new_unchecked(rows).expect("grid is square"))
        }
        Grid::Sparse(entries) => {
            let mut columns = vec![Vec::new(); k];
            let mut seen = BTreeSet::new();
            for (n, (i, j, x)) in entries.iter().enumerate() {
                let path = || format!("{base}.entries[{n}]");
                if *i >= k || *j >= k {
                    return Err(field(path(), format!("index ({i}, {j}) outside {k} states")));
                }
                if !seen.insert((*i, *j)) {
                    return Err(field(path(), format!("entry ({i}, {j}) given twice")));
                }
                columns[*j].push((*i, number(x, path)?));
            }
            Ok(AffineMatrix::from_sparse_columns(k, columns))
        }
    }
}

/// Reads a document into an automaton without checking the automaton's
/// invariants; see [`Afa::validate`]. Structural problems such as ragged
/// grids or malformed numbers are still reported.
pub fn parse_unvalidated(text: &str) -> Result<Afa, FormatError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if doc.format != FORMAT_TAG {
        return Err(field("format", format!("expected {FORMAT_TAG:?}, found {:?}", doc.format)));
    }
    let kind = match doc.kind.as_str() {
        "affine" => Kind::Affine,
        "stochastic" => Kind::Stochastic,
        other => return Err(field("kind", format!("expected \"affine\" or \"stochastic\", found {other:?}"))),
    };
    let alphabet = doc
        .alphabet
        .iter()
        .enumerate()
        .map(|(n, s)| symbol(s, || format!("alphabet[{n}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let k = doc.states;
    if doc.initial.len() != k {
        return Err(field("initial", format!("expected {k} entries, found {}", doc.initial.len())));
    }
    let initial = doc
        .initial
        .iter()
        .enumerate()
        .map(|(n, x)| number(x, || format!("initial[{n}]")))
        .collect::<Result<Vec<_>, _>>()?;
    for (n, &s) in doc.accepting.iter().enumerate() {
        if s >= k {
            return Err(field(format!("accepting[{n}]"), format!("state {s} outside {k} states")));
        }
    }
    let accepting = Projection::new(k, doc.accepting.iter().copied()).expect("indices checked");
    let transitions = doc
        .transitions
        .iter()
        .map(|(key, grid)| {
            let c = symbol(key, || format!("transitions.{key}"))?;
            Ok((c, matrix(grid, k, key)?))
        })
        .collect::<Result<BTreeMap<_, _>, FormatError>>()?;
    Ok(Afa::new_unchecked(
        kind,
        alphabet,
        AffineVector::new_unchecked(initial),
        transitions,
        accepting,
    ))
}

/// Reads and validates a document.
pub fn parse(text: &str) -> Result<Afa, FormatError> {
    let afa = parse_unvalidated(text)?;
    let violations = afa.validate();
    if violations.is_empty() {
        Ok(afa)
    } else {
        Err(FormatError::Invalid(violations))
    }
}

/// Writes `a` as an `afa-v1` document. Fractions are reduced and integers
/// carry no denominator, so equal automata serialize identically.
pub fn serialize(a: &Afa) -> String {
    serialize_with_comment(a, Some(LAYOUT_COMMENT))
}

pub fn serialize_with_comment(a: &Afa, comment: Option<&str>) -> String {
    let k = a.state_count();
    let quote = |s: &str| Value::String(s.to_string()).to_string();
    let list = |items: Vec<String>| format!("[{}]", items.join(", "));
    let numbers = |xs: &[Rational]| list(xs.iter().map(|x| quote(&x.to_string())).collect());

    let mut out = String::from("{\n");
    out.push_str(&format!("  \"format\": {},\n", quote(FORMAT_TAG)));
    if let Some(c) = comment {
        out.push_str(&format!("  \"comment\": {},\n", quote(c)));
    }
    out.push_str(&format!("  \"kind\": {},\n", quote(a.kind().as_str())));
    let alphabet = a.alphabet().iter().map(|c| quote(&c.to_string())).collect();
    out.push_str(&format!("  \"alphabet\": {},\n", list(alphabet)));
    out.push_str(&format!("  \"states\": {k},\n"));
    out.push_str(&format!("  \"initial\": {},\n", numbers(a.initial().entries())));
    let accepting = a.accepting().accepting().iter().map(ToString::to_string).collect();
    out.push_str(&format!("  \"accepting\": {},\n", list(accepting)));
    out.push_str("  \"transitions\": {");
    for (n, (c, m)) in a.transitions().iter().enumerate() {
        out.push_str(if n == 0 { "\n" } else { ",\n" });
        out.push_str(&format!("    {}: ", quote(&c.to_string())));
        if k <= DENSE_LIMIT {
            let rows: Vec<String> = m.rows().iter().map(|row| format!("      {}", numbers(row))).collect();
            out.push_str(&format!("[\n{}\n    ]", rows.join(",\n")));
        } else {
            let mut entries: Vec<_> = m.entries().collect();
            entries.sort_by_key(|(i, j, _)| (*i, *j));
            let lines: Vec<String> = entries
                .iter()
                .map(|(i, j, x)| format!("        [{i}, {j}, {}]", quote(&x.to_string())))
                .collect();
            out.push_str(&format!("{{\n      \"entries\": [\n{}\n      ]\n    }}", lines.join(",\n")));
        }
    }
    out.push_str(if a.transitions().is_empty() { "}\n}\n" } else { "\n  }\n}\n" });
    out
}
