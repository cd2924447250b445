use super::{Adjustment, Calendar, CivilDate, DayCount, Tenor, TenorUnit};
use crate::error::{Error, Result};

/// Adjusted date grid `T_0 < T_1 < ... < T_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    dates: Vec<CivilDate>,
    frequency: Tenor,
    adjustment: Adjustment,
}

impl Schedule {
    pub fn dates(&self) -> &[CivilDate] {
        &self.dates
    }

    pub fn frequency(&self) -> Tenor {
        self.frequency
    }

    pub fn adjustment(&self) -> Adjustment {
        self.adjustment
    }

    pub fn start(&self) -> CivilDate {
        self.dates[0]
    }

    pub fn end(&self) -> CivilDate {
        *self.dates.last().expect("schedule has at least two dates")
    }

    pub fn num_periods(&self) -> usize {
        self.dates.len() - 1
    }

    /// Consecutive `(T_{i-1}, T_i)` accrual periods.
    pub fn periods(&self) -> impl Iterator<Item = (CivilDate, CivilDate)> + '_ {
        self.dates.windows(2).map(|w| (w[0], w[1]))
    }

    /// Builds a schedule from explicit dates (must be strictly increasing).
    pub fn from_dates(dates: Vec<CivilDate>, frequency: Tenor) -> Result<Self> {
        if dates.len() < 2 {
            return Err(Error::Schedule("a schedule needs at least two dates".into()));
        }
        if dates.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Schedule("schedule dates must be strictly increasing".into()));
        }
        Ok(Schedule { dates, frequency, adjustment: Adjustment::Unadjusted })
    }

    /// Sum of accrual fractions over all periods.
    pub fn total_accrual(&self, dc: DayCount) -> f64 {
        self.periods().map(|(a, b)| dc.fraction(a, b)).sum()
    }
}

/// Generates the date grid from `start` to `end` stepping by `freq`.
///
/// `start` and `end` are unadjusted; the span must be a whole number of
/// `freq` periods. Unadjusted dates are `start + k*freq` (never rolled from
/// the previous adjusted date, so month-ends do not drift). Day frequencies
/// step in business days.
pub fn build_schedule(
    start: CivilDate,
    end: CivilDate,
    freq: Tenor,
    cal: &Calendar,
    rule: Adjustment,
) -> Result<Schedule> {
    if start >= end {
        return Err(Error::Schedule(format!("start {start} must precede end {end}")));
    }
    if freq.is_zero() {
        return Err(Error::Schedule("zero frequency".into()));
    }
    let mut unadjusted = vec![start];
    let mut k = 1u32;
    loop {
        let next = match freq.unit() {
            TenorUnit::Days => cal.advance_business_days(start, i64::from(freq.length() * k)),
            TenorUnit::Weeks => start.add_days(7 * i64::from(freq.length() * k)),
            TenorUnit::Months => start.add_months((freq.length() * k) as i32),
        };
        if next > end {
            return Err(Error::Schedule(format!(
                "span {start}..{end} is not a whole number of {freq} periods"
            )));
        }
        unadjusted.push(next);
        if next == end {
            break;
        }
        k += 1;
    }
    let dates: Vec<CivilDate> = unadjusted.into_iter().map(|d| cal.adjust(d, rule)).collect();
    if dates.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Schedule("adjusted dates collide".into()));
    }
    Ok(Schedule { dates, frequency: freq, adjustment: rule })
}

/// Money-market conventions shared by bootstrapping, replication and pricing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarketConventions {
    pub calendar: Calendar,
    /// Money-market (deposit, OIS, FRA, floating leg) day count.
    pub day_count: DayCount,
    pub spot_lag: u32,
    pub adjustment: Adjustment,
    pub fixed_frequency: Tenor,
    pub fixed_day_count: DayCount,
}

impl MarketConventions {
    /// EUR money market: TARGET, ACT/360, T+2, modified following, annual fixed leg.
    pub fn eur() -> Self {
        MarketConventions {
            calendar: Calendar::target(),
            day_count: DayCount::Act360,
            spot_lag: 2,
            adjustment: Adjustment::ModifiedFollowing,
            fixed_frequency: Tenor::years(1),
            fixed_day_count: DayCount::Act360,
        }
    }

    pub fn spot_date(&self, trade_date: CivilDate) -> CivilDate {
        self.calendar.add_tenor(trade_date, Tenor::days(self.spot_lag), self.adjustment)
    }

    /// Adjusted `spot + tenor`.
    pub fn maturity(&self, spot: CivilDate, tenor: Tenor) -> CivilDate {
        self.calendar.add_tenor(spot, tenor, self.adjustment)
    }
}

impl Default for MarketConventions {
    fn default() -> Self {
        Self::eur()
    }
}
