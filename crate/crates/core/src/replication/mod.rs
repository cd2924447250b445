//! Implied forwards from spot deposits and single-coupon OIS, the FRA
//! replication report, and spot-rate basis series.

use std::collections::BTreeMap;
use std::io::Write;

use crate::error::{Error, Result};
use crate::market_data::{QuoteKind, QuoteSet};
use crate::temporal::{year_fraction, CivilDate, DayCount, MarketConventions, Tenor};

/// Forward over `[T1, T2]` implied by two simple rates from a common start,
/// given the three year fractions directly.
pub fn forward_from_simple_rates(r_short: f64, tau_short: f64, r_long: f64, tau_long: f64, tau_fwd: f64) -> Result<f64> {
    if !(tau_fwd > 0.0) {
        return Err(Error::Ordering(format!("forward period has year fraction {tau_fwd}")));
    }
    Ok(((1.0 + r_long * tau_long) / (1.0 + r_short * tau_short) - 1.0) / tau_fwd)
}

fn implied_forward(r_short: f64, t1: CivilDate, r_long: f64, t2: CivilDate, t: CivilDate, dc: DayCount) -> Result<f64> {
    if t1 >= t2 {
        return Err(Error::Ordering(format!("forward start {t1} is not before end {t2}")));
    }
    let tau1 = year_fraction(t, t1, dc)?;
    let tau2 = year_fraction(t, t2, dc)?;
    forward_from_simple_rates(r_short, tau1, r_long, tau2, dc.fraction(t1, t2))
}

/// Forward implied by two deposits starting at `t` and maturing at `t1` and `t2`.
pub fn implied_forward_from_deposits(
    r_short: f64,
    t1: CivilDate,
    r_long: f64,
    t2: CivilDate,
    t: CivilDate,
    dc: DayCount,
) -> Result<f64> {
    implied_forward(r_short, t1, r_long, t2, t, dc)
}

/// Forward implied by two single-coupon OIS starting at `t`.
pub fn implied_forward_from_ois(r_short: f64, t1: CivilDate, r_long: f64, t2: CivilDate, t: CivilDate, dc: DayCount) -> Result<f64> {
    implied_forward(r_short, t1, r_long, t2, t, dc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReplicationRow {
    pub key: String,
    pub tenor: Tenor,
    pub quote: f64,
    pub replica: f64,
    /// `(replica - quote) * 1e4`.
    pub diff_bps: f64,
}

impl ReplicationRow {
    pub fn new(key: &str, tenor: Tenor, quote: f64, replica: f64) -> Self {
        ReplicationRow { key: key.to_string(), tenor, quote, replica, diff_bps: (replica - quote) * 1e4 }
    }

    /// True for overnight-indexed contracts.
    pub fn is_overnight(&self) -> bool {
        self.tenor.is_overnight()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReplicationReport {
    pub rows: Vec<ReplicationRow>,
    /// FRA key and tenor that could not be replicated, with the reason.
    pub errors: Vec<(String, Tenor, Error)>,
}

impl ReplicationReport {
    pub fn is_clean(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn row(&self, key: &str, tenor: Tenor) -> Option<&ReplicationRow> {
        self.rows.iter().find(|r| r.key == key && r.tenor == tenor)
    }

    pub fn write_csv<W: Write>(&self, mut sink: W) -> Result<()> {
        writeln!(sink, "key,tenor,quote_pct,replica_pct,diff_bps")?;
        for r in &self.rows {
            let tenor = match r.tenor.in_months() {
                _ if r.is_overnight() => "ON".to_string(),
                Some(m) => format!("{m}M"),
                None => r.tenor.to_string(),
            };
            writeln!(
                sink,
                "{},{},{},{},{}",
                r.key,
                tenor,
                fixed(r.quote * 100.0, 3),
                fixed(r.replica * 100.0, 3),
                fixed(r.diff_bps, 1)
            )?;
        }
        Ok(())
    }
}

/// Fixed-point text without a negative sign on values that round to zero.
pub(crate) fn fixed(x: f64, decimals: usize) -> String {
    let s = format!("{x:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Replicates every FRA quote in `q`. Overnight-indexed FRAs use the OIS
/// quotes to their start and end; all others use the deposits. FRA dates run
/// from spot + start to spot + end months.
pub fn replication_report(q: &QuoteSet, conv: &MarketConventions) -> ReplicationReport {
    let mut report = ReplicationReport::default();
    let Some(asof) = q.asof() else {
        return report;
    };
    let spot = conv.spot_date(asof);
    let mut fras: Vec<_> = q
        .of_kind(QuoteKind::Fra)
        .map(|f| (f.tenor, f.fra_period().ok().map(|(a, b)| (b, a)), f))
        .collect();
    fras.sort_by(|x, y| {
        let rank = |t: Option<Tenor>| t.map(|t| (!t.is_overnight(), Some(t)));
        (rank(x.0), x.1).cmp(&(rank(y.0), y.1)).then_with(|| x.2.key.cmp(&y.2.key))
    });

    for (tenor, _, fra) in fras {
        let tenor = tenor.unwrap_or(Tenor::OVERNIGHT);
        let row = (|| -> Result<ReplicationRow> {
            let (a, b) = fra.fra_period()?;
            let kind = if tenor.is_overnight() { QuoteKind::Ois } else { QuoteKind::Deposit };
            let leg = |m: Tenor| {
                q.by_maturity(kind, m)
                    .map(|x| x.value)
                    .ok_or_else(|| Error::MissingQuote(format!("{kind} {m} for FRA {}", fra.key)))
            };
            let (r1, r2) = (leg(a)?, leg(b)?);
            let t1 = conv.maturity(spot, a);
            let t2 = conv.maturity(spot, b);
            let f = implied_forward(r1, t1, r2, t2, spot, conv.day_count)?;
            Ok(ReplicationRow::new(&fra.key, tenor, fra.value, f))
        })();
        match row {
            Ok(r) => report.rows.push(r),
            Err(e) => report.errors.push((fra.key.clone(), tenor, e)),
        }
    }
    report
}

/// A named dated rate series.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RateSeries {
    pub key: String,
    pub values: BTreeMap<CivilDate, f64>,
}

impl RateSeries {
    pub fn new(key: &str, values: impl IntoIterator<Item = (CivilDate, f64)>) -> Self {
        RateSeries { key: key.to_string(), values: values.into_iter().collect() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasisPoint {
    pub date: CivilDate,
    pub long_key: String,
    pub short_key: String,
    pub spread: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BasisSeries {
    pub points: Vec<BasisPoint>,
    /// Dates present only in the long series.
    pub dropped_long: usize,
    /// Dates present only in the short series.
    pub dropped_short: usize,
}

impl BasisSeries {
    pub fn dropped(&self) -> usize {
        self.dropped_long + self.dropped_short
    }
}

/// Pointwise `long - short` on the dates both series share.
pub fn basis_series(long: &RateSeries, short: &RateSeries) -> BasisSeries {
    let mut out = BasisSeries::default();
    for (date, l) in &long.values {
        match short.values.get(date) {
            Some(s) => out.points.push(BasisPoint {
                date: *date,
                long_key: long.key.clone(),
                short_key: short.key.clone(),
                spread: l - s,
            }),
            None => out.dropped_long += 1,
        }
    }
    out.dropped_short = short.values.keys().filter(|d| !long.values.contains_key(d)).count();
    out
}
