use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::temporal::{CivilDate, DayCount, Tenor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveRole {
    Discounting,
    /// Projects forwards of the given index tenor.
    Forwarding(Tenor),
}

impl fmt::Display for CurveRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveRole::Discounting => f.write_str("discounting"),
            CurveRole::Forwarding(t) => write!(f, "forwarding({t})"),
        }
    }
}

impl FromStr for CurveRole {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("discounting") {
            return Ok(CurveRole::Discounting);
        }
        s.strip_prefix("forwarding(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Configuration(format!("unknown curve role {s}")))?
            .parse()
            .map(CurveRole::Forwarding)
    }
}

/// A dated term structure of discount factors.
///
/// `P(t, t) = 1` at the reference date `t`. Between pillars `ln P` is linear
/// in year-fraction time (piecewise-flat instantaneous forwards); past the
/// last pillar the last continuously-compounded zero rate is held flat.
/// Forwarding curves hold pseudo-discount factors, so the same forward
/// formula serves both roles.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    reference: CivilDate,
    role: CurveRole,
    day_count: DayCount,
    dates: Vec<CivilDate>,
    times: Vec<f64>,
    dfs: Vec<f64>,
    log_dfs: Vec<f64>,
}

impl Curve {
    pub fn new(
        reference: CivilDate,
        role: CurveRole,
        day_count: DayCount,
        pillars: impl IntoIterator<Item = (CivilDate, f64)>,
    ) -> Result<Self> {
        let mut curve = Curve {
            reference,
            role,
            day_count,
            dates: Vec::new(),
            times: Vec::new(),
            dfs: Vec::new(),
            log_dfs: Vec::new(),
        };
        for (d, df) in pillars {
            curve.push_pillar(d, df)?;
        }
        Ok(curve)
    }

    /// A curve with a single constant continuously-compounded zero rate,
    /// with one pillar at `horizon`.
    pub fn flat(reference: CivilDate, role: CurveRole, day_count: DayCount, zero_rate: f64, horizon: CivilDate) -> Result<Self> {
        let t = day_count.fraction(reference, horizon);
        Curve::new(reference, role, day_count, [(horizon, (-zero_rate * t).exp())])
    }

    pub(crate) fn push_pillar(&mut self, date: CivilDate, df: f64) -> Result<()> {
        if date <= self.last_date() {
            return Err(Error::Ordering(format!(
                "pillar {date} must be after {} on the {} curve",
                self.last_date(),
                self.role
            )));
        }
        if !(df.is_finite() && df > 0.0) {
            return Err(Error::Domain(format!("discount factor {df} at {date} must be positive")));
        }
        self.times.push(self.day_count.fraction(self.reference, date));
        self.dates.push(date);
        self.dfs.push(df);
        self.log_dfs.push(df.ln());
        Ok(())
    }

    pub(crate) fn pop_pillar(&mut self) {
        self.dates.pop();
        self.times.pop();
        self.dfs.pop();
        self.log_dfs.pop();
    }

    pub fn reference_date(&self) -> CivilDate {
        self.reference
    }

    pub fn role(&self) -> CurveRole {
        self.role
    }

    pub fn day_count(&self) -> DayCount {
        self.day_count
    }

    /// Same factors under a different role.
    pub fn with_role(&self, role: CurveRole) -> Self {
        Curve { role, ..self.clone() }
    }

    /// `(date, P)` pillars, excluding the implicit `(t, 1)`.
    pub fn pillars(&self) -> impl Iterator<Item = (CivilDate, f64)> + '_ {
        self.dates.iter().copied().zip(self.dfs.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.dates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dates.is_empty()
    }

    /// Last pillar date, or the reference date for an empty curve.
    pub fn last_date(&self) -> CivilDate {
        self.dates.last().copied().unwrap_or(self.reference)
    }

    pub fn time(&self, d: CivilDate) -> f64 {
        self.day_count.fraction(self.reference, d)
    }

    fn log_df_at(&self, t: f64) -> f64 {
        if t <= 0.0 || self.times.is_empty() {
            return 0.0;
        }
        let idx = self.times.partition_point(|&x| x < t);
        if idx < self.times.len() && self.times[idx] == t {
            return self.log_dfs[idx];
        }
        if idx == self.times.len() {
            let (tn, ln) = (self.times[idx - 1], self.log_dfs[idx - 1]);
            return ln * (t / tn);
        }
        let (t0, l0) = if idx == 0 { (0.0, 0.0) } else { (self.times[idx - 1], self.log_dfs[idx - 1]) };
        let (t1, l1) = (self.times[idx], self.log_dfs[idx]);
        let w = (t - t0) / (t1 - t0);
        l0 + w * (l1 - l0)
    }

    /// `P(t, T)`. Exact at pillars.
    pub fn discount_factor(&self, date: CivilDate) -> Result<f64> {
        if date < self.reference {
            return Err(Error::Ordering(format!(
                "discount factor requested at {date}, before the reference date {}",
                self.reference
            )));
        }
        if let Ok(i) = self.dates.binary_search(&date) {
            return Ok(self.dfs[i]);
        }
        Ok(self.log_df_at(self.time(date)).exp())
    }

    /// Continuously-compounded zero rate to `date` on the curve's time axis.
    pub fn zero_rate(&self, date: CivilDate) -> Result<f64> {
        let t = self.time(date);
        let df = self.discount_factor(date)?;
        Ok(if t > 0.0 { -df.ln() / t } else { 0.0 })
    }

    /// Simple forward `F = (P(t,T1)/P(t,T2) − 1) / τ(T1,T2)`.
    pub fn simple_forward(&self, t1: CivilDate, t2: CivilDate, dc: DayCount) -> Result<f64> {
        if t1 >= t2 {
            return Err(Error::Ordering(format!("forward period {t1}..{t2} is empty or reversed")));
        }
        let p1 = self.discount_factor(t1)?;
        let p2 = self.discount_factor(t2)?;
        Ok(forward_from_factors(p1, p2, dc.fraction(t1, t2)))
    }
}

/// The standard forward formula on two discount factors and an accrual.
pub fn forward_from_factors(p1: f64, p2: f64, tau: f64) -> f64 {
    (p1 / p2 - 1.0) / tau
}
