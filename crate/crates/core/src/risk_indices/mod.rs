//! Interbank stress indices: a trimmed-mean CDS index, the ECB liquidity
//! surplus, the rates-corridor check and a trailing moving average.

use std::io::Write;

use crate::error::{Error, Result};
use crate::market_data::{EcbSnapshot, QuoteKind, QuoteSet};
use crate::temporal::CivilDate;

/// Default share trimmed from each tail.
pub const TAIL_FRACTION: f64 = 0.15;

/// One date of bank CDS spreads (fractions).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PanelQuotes {
    pub date: Option<CivilDate>,
    pub quotes: Vec<(String, f64)>,
}

impl PanelQuotes {
    pub fn new(date: CivilDate, quotes: impl IntoIterator<Item = (String, f64)>) -> Self {
        PanelQuotes { date: Some(date), quotes: quotes.into_iter().collect() }
    }

    /// Every CDS quote in `q`.
    pub fn from_quotes(q: &QuoteSet) -> Self {
        PanelQuotes { date: q.asof(), quotes: q.of_kind(QuoteKind::Cds).map(|c| (c.key.clone(), c.value)).collect() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexPoint {
    pub date: Option<CivilDate>,
    pub value: f64,
    pub contributors: usize,
}

/// Quotes dropped from each tail: `tail * n` rounded half-up.
pub fn trim_count(n: usize, tail_fraction: f64) -> usize {
    (tail_fraction * n as f64 + 0.5 + 1e-9).floor() as usize
}

/// Mean of the panel after dropping `round(tail * N)` quotes at each end.
pub fn trimmed_mean_index(p: &PanelQuotes, tail_fraction: f64) -> Result<IndexPoint> {
    if !(0.0..0.5).contains(&tail_fraction) {
        return Err(Error::Configuration(format!("tail fraction {tail_fraction} outside [0, 0.5)")));
    }
    let n = p.quotes.len();
    if n < 3 {
        return Err(Error::Insufficient(format!("{n} quotes; at least 3 needed")));
    }
    let k = trim_count(n, tail_fraction);
    if n <= 2 * k {
        return Err(Error::Insufficient(format!("{n} quotes leave nothing after trimming {k} per tail")));
    }
    let mut values: Vec<f64> = p.quotes.iter().map(|(_, v)| *v).collect();
    values.sort_by(f64::total_cmp);
    let kept = &values[k..n - k];
    Ok(IndexPoint { date: p.date, value: kept.iter().sum::<f64>() / kept.len() as f64, contributors: kept.len() })
}

/// Deposit facility plus current-account holdings above the reserve requirement.
pub fn liquidity_surplus_index(s: &EcbSnapshot) -> IndexPoint {
    let excess = (s.current_account_amount - s.required_reserves).max(0.0);
    IndexPoint { date: Some(s.date), value: s.deposit_facility_amount + excess, contributors: 1 }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorridorCheck {
    pub date: CivilDate,
    pub inside: bool,
    pub detail: Option<String>,
}

/// Whether the overnight fixing sits within the standing-facility corridor
/// (boundaries included).
pub fn corridor_check(s: &EcbSnapshot) -> Result<CorridorCheck> {
    let (Some(df), Some(on), Some(ml)) = (s.deposit_facility_rate, s.eonia_fixing, s.marginal_lending_rate) else {
        return Err(Error::MissingQuote(format!("corridor rates incomplete on {}", s.date)));
    };
    let detail = if on < df {
        Some(format!("overnight {:.4}% below deposit facility {:.4}%", on * 100.0, df * 100.0))
    } else if on > ml {
        Some(format!("overnight {:.4}% above marginal lending {:.4}%", on * 100.0, ml * 100.0))
    } else {
        None
    };
    Ok(CorridorCheck { date: s.date, inside: detail.is_none(), detail })
}

/// Trailing mean over the last `window` observations; the first
/// `window - 1` dates have no value.
pub fn moving_average(series: &[(CivilDate, f64)], window: usize) -> Result<Vec<(CivilDate, f64)>> {
    if window == 0 {
        return Err(Error::Configuration("moving-average window must be at least 1".into()));
    }
    Ok(series
        .windows(window)
        .map(|w| (w[window - 1].0, w.iter().map(|(_, v)| v).sum::<f64>() / window as f64))
        .collect())
}

/// `date,value,contributors`; values printed in shortest round-trip form.
pub fn write_index_csv<W: Write>(points: &[IndexPoint], mut sink: W) -> Result<()> {
    writeln!(sink, "date,value,contributors")?;
    for p in points {
        let date = p.date.map(|d| d.to_string()).unwrap_or_default();
        writeln!(sink, "{date},{},{}", p.value, p.contributors)?;
    }
    Ok(())
}
