//! Quote CSV: header `kind,key,value,tenor,asof`.
//!
//! Rates are written in percent, ECB amounts in EUR millions. Conversion to
//! fractions / EUR happens here and nowhere else.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use super::{EcbField, Quote, QuoteKind, QuoteSet};
use crate::error::{Error, Result};
use crate::temporal::{CivilDate, Tenor};

pub const QUOTE_HEADER: [&str; 5] = ["kind", "key", "value", "tenor", "asof"];

// File units per internal unit.
const PERCENT: f64 = 100.0;
const MILLIONS: f64 = 1.0e-6;

fn file_scale(kind: QuoteKind, key: &str) -> f64 {
    let amount = kind == QuoteKind::EcbFacility && EcbField::from_key(key).is_some_and(EcbField::is_amount);
    if amount {
        MILLIONS
    } else {
        PERCENT
    }
}

/// Reads every row into a [`Quote`], in file order.
pub fn read_quote_rows<R: Read>(source: R) -> Result<Vec<Quote>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .flexible(false)
        .from_reader(source);
    let headers = rdr
        .headers()
        .map_err(|e| Error::Parse { line: 1, message: e.to_string() })?
        .clone();
    if headers.is_empty() {
        return Ok(Vec::new());
    }
    let names: Vec<String> = headers.iter().map(|h| h.to_ascii_lowercase()).collect();
    if names != QUOTE_HEADER {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header {}, found {}", QUOTE_HEADER.join(","), names.join(",")),
        });
    }
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            Error::Parse { line, message: e.to_string() }
        })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let at = |message: String| Error::Parse { line, message };
        let kind: QuoteKind = rec[0].parse().map_err(|e: Error| at(e.to_string()))?;
        let key = &rec[1];
        let raw: f64 = rec[2].parse().map_err(|_| at(format!("bad value '{}'", &rec[2])))?;
        let tenor = match rec[3].trim() {
            "" => None,
            t => Some(t.parse::<Tenor>().map_err(|e| at(e.to_string()))?),
        };
        let asof: CivilDate = rec[4].parse().map_err(|e: Error| at(e.to_string()))?;
        let value = raw / file_scale(kind, key);
        let quote = Quote::new(kind, key, value, tenor, asof).map_err(|e| at(e.to_string()))?;
        out.push(quote);
    }
    Ok(out)
}

/// Loads a single-date quote file. An empty file gives an empty set.
pub fn load_quotes<R: Read>(source: R) -> Result<QuoteSet> {
    let mut set = QuoteSet::new();
    for q in read_quote_rows(source)? {
        set.insert(q)?;
    }
    Ok(set)
}

/// Loads a multi-date quote file, one [`QuoteSet`] per as-of date.
pub fn load_quote_history<R: Read>(source: R) -> Result<BTreeMap<CivilDate, QuoteSet>> {
    let mut by_date: BTreeMap<CivilDate, QuoteSet> = BTreeMap::new();
    for q in read_quote_rows(source)? {
        by_date.entry(q.asof).or_default().insert(q)?;
    }
    Ok(by_date)
}

/// Shortest decimal string `s` such that `parse(s) / scale == value`.
///
/// Values that were loaded from a decimal file therefore write back as the
/// same decimal and re-load bit-identically.
pub fn exact_decimal(value: f64, scale: f64) -> String {
    let scaled = value * scale;
    for digits in 1..=17 {
        let s = format!("{:.*e}", digits - 1, scaled);
        if let Ok(back) = s.parse::<f64>() {
            if back / scale == value {
                return plain_decimal(back);
            }
        }
    }
    plain_decimal(scaled)
}

/// Shortest round-trip representation, without exponent notation.
fn plain_decimal(x: f64) -> String {
    let s = format!("{x}");
    if s.contains('e') {
        format!("{x:.17}")
    } else {
        s
    }
}

pub fn write_quotes<W: Write>(set: &QuoteSet, sink: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(QUOTE_HEADER).map_err(io)?;
    for q in set.iter() {
        let value = exact_decimal(q.value, file_scale(q.kind, &q.key));
        let tenor = q.tenor.map(|t| t.to_string()).unwrap_or_default();
        w.write_record([q.kind.code(), &q.key, &value, &tenor, &q.asof.to_string()])
            .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}
