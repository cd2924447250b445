//! Curve dump: `# role=<role> asof=<date>` then `date,discount_factor`.

use std::io::{BufRead, BufReader, Read, Write};

use super::{Curve, CurveRole};
use crate::error::{Error, Result};
use crate::temporal::{CivilDate, DayCount};

/// Fixed-point rendering of `x` with `digits` significant digits.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.*}", digits.saturating_sub(1));
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Writes the reference date (factor 1) followed by every pillar.
pub fn write_curve<W: Write>(curve: &Curve, mut sink: W) -> Result<()> {
    writeln!(sink, "# role={} asof={}", curve.role(), curve.reference_date())?;
    writeln!(sink, "date,discount_factor")?;
    writeln!(sink, "{},{}", curve.reference_date(), format_significant(1.0, 15))?;
    for (d, df) in curve.pillars() {
        writeln!(sink, "{d},{}", format_significant(df, 15))?;
    }
    Ok(())
}

/// Reads a dump back. The dump does not record the day count, so the caller
/// supplies the one the curve was built with.
pub fn read_curve<R: Read>(source: R, day_count: DayCount) -> Result<Curve> {
    let mut lines = BufReader::new(source).lines().enumerate();
    let parse_err = |line: usize, message: String| Error::Parse { line: line + 1, message };
    let (i, header) = lines.next().ok_or_else(|| parse_err(0, "empty curve file".into()))?;
    let header = header?;
    let mut role = None;
    let mut asof = None;
    for field in header.trim_start_matches('#').split_whitespace() {
        match field.split_once('=') {
            Some(("role", v)) => role = Some(v.parse::<CurveRole>()?),
            Some(("asof", v)) => asof = Some(v.parse::<CivilDate>()?),
            _ => {}
        }
    }
    let (role, asof) = match (role, asof) {
        (Some(r), Some(a)) => (r, a),
        _ => return Err(parse_err(i, format!("bad curve header '{header}'"))),
    };
    let mut pillars = Vec::new();
    for (i, line) in lines {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with("date,") {
            continue;
        }
        let (d, v) = line.split_once(',').ok_or_else(|| parse_err(i, format!("bad row '{line}'")))?;
        let d: CivilDate = d.parse().map_err(|e: Error| parse_err(i, e.to_string()))?;
        let v: f64 = v.trim().parse().map_err(|_| parse_err(i, format!("bad factor '{v}'")))?;
        if d == asof {
            continue;
        }
        pillars.push((d, v));
    }
    Curve::new(asof, role, day_count, pillars)
}
