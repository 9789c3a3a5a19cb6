//! Text formats.
//!
//! Sequences: JSON `{"values": ["1", "1/2", ...], "offset": 1}` or CSV lines
//! `index,value` with indices exactly `1..=H` in any order. A construction
//! output (an object carrying a `"b"` array) is also accepted as a sequence.
//!
//! Error terms: a sequence document (validated non-negative and
//! non-decreasing) or a builtin spec `{"family": NAME, "params": {...}, "H": INT}`.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::Value;

use crate::domain::PairDomain;
use crate::error::{Error, Result};
use crate::error_term::{builtin_error_term, ErrorTerm, Family};
use crate::rational::Rational;
use crate::sequence::{SequenceDoc, SequencePrefix};

fn is_json(text: &str) -> bool {
    matches!(text.trim_start().chars().next(), Some('{') | Some('['))
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn parse_sequence(text: &str) -> Result<SequencePrefix> {
    if !is_json(text) {
        return SequencePrefix::new(parse_indexed_csv(text)?);
    }
    let value: Value = serde_json::from_str(text).map_err(json_err)?;
    match &value {
        Value::Object(map) if !map.contains_key("values") && map.contains_key("b") => {
            let b: Vec<Rational> = serde_json::from_value(map["b"].clone()).map_err(json_err)?;
            SequencePrefix::new(b)
        }
        _ => {
            let doc: SequenceDoc = serde_json::from_value(value).map_err(json_err)?;
            SequencePrefix::try_from(doc)
        }
    }
}

pub fn sequence_to_json(seq: &SequencePrefix) -> String {
    serde_json::to_string_pretty(seq).expect("sequence serializes")
}

pub fn sequence_to_csv(seq: &SequencePrefix) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for (i, v) in seq.values().iter().enumerate() {
        w.write_record([(i + 1).to_string(), v.to_string()])
            .expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("utf-8 csv")
}

fn csv_records(text: &str) -> Result<Vec<csv::StringRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        out.push(rec);
    }
    // tolerate a header row such as `index,value`
    if let Some(first) = out.first() {
        if first.get(0).is_some_and(|f| f.parse::<usize>().is_err()) {
            out.remove(0);
        }
    }
    Ok(out)
}

fn two_fields(rec: &csv::StringRecord) -> Result<(&str, &str)> {
    match (rec.len(), rec.get(0), rec.get(1)) {
        (2, Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::Parse(format!("expected two fields, got {rec:?}"))),
    }
}

fn parse_index(s: &str) -> Result<usize> {
    s.parse::<usize>()
        .ok()
        .filter(|&i| i >= 1)
        .ok_or_else(|| Error::Parse(format!("bad index {s:?}")))
}

/// CSV `index,value` lines into a dense 1-based vector.
fn parse_indexed_csv(text: &str) -> Result<Vec<Rational>> {
    let mut by_index = BTreeMap::new();
    for rec in csv_records(text)? {
        let (i, v) = two_fields(&rec)?;
        let i = parse_index(i)?;
        if by_index.insert(i, v.parse::<Rational>()?).is_some() {
            return Err(Error::DuplicateIndex(i));
        }
    }
    if by_index.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut values = Vec::with_capacity(by_index.len());
    for (expected, (i, v)) in (1..).zip(by_index) {
        if i != expected {
            return Err(Error::MissingIndex(expected));
        }
        values.push(v);
    }
    Ok(values)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BuiltinDoc {
    family: String,
    #[serde(default)]
    params: BTreeMap<String, Rational>,
    #[serde(rename = "H")]
    horizon: usize,
}

/// Parses an error-term document.
pub fn parse_error_term(text: &str) -> Result<ErrorTerm> {
    if is_json(text) {
        let value: Value = serde_json::from_str(text).map_err(json_err)?;
        if value.get("family").is_some() {
            let doc: BuiltinDoc = serde_json::from_value(value).map_err(json_err)?;
            let family = Family::from_name(&doc.family, &doc.params)?;
            return builtin_error_term(&family, doc.horizon);
        }
    }
    ErrorTerm::new(parse_sequence(text)?.into_values())
}

/// Parses `name` or `name,key=value,...`, e.g. `floor_power,c=1,delta=1/2`.
pub fn parse_family_spec(spec: &str) -> Result<Family> {
    let mut parts = spec.split(',').map(str::trim);
    let name = parts.next().unwrap_or_default();
    let mut params = BTreeMap::new();
    for kv in parts {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {kv:?}")))?;
        params.insert(k.trim().to_string(), v.parse::<Rational>()?);
    }
    Family::from_name(name, &params)
}

/// Explicit pair sets: JSON `[[n, m], ...]`, `{"pairs": [[n, m], ...]}`, or CSV `n,m` lines.
pub fn parse_pairs(text: &str) -> Result<PairDomain> {
    let pairs: Vec<(usize, usize)> = if is_json(text) {
        let value: Value = serde_json::from_str(text).map_err(json_err)?;
        let list = match value {
            Value::Object(mut map) => map
                .remove("pairs")
                .ok_or_else(|| Error::Parse("missing \"pairs\"".into()))?,
            other => other,
        };
        serde_json::from_value(list).map_err(json_err)?
    } else {
        csv_records(text)?
            .iter()
            .map(|rec| {
                let (n, m) = two_fields(rec)?;
                Ok((parse_index(n)?, parse_index(m)?))
            })
            .collect::<Result<_>>()?
    };
    PairDomain::explicit(pairs)
}
